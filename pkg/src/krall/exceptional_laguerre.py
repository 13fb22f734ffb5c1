"""Exceptional Laguerre polynomials built from Wronskian-type determinants, and
their weight x^(alpha+k) e^(-x) / Omega(x)^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Optional

import mpmath

from .classical import laguerre
from .exact import Poly, RatFunc, frac, polymat_det
from .exceptional_meixner import ExcMeixnerFamily, IndexNotInSigma
from .krall_meixner import admissible_meixner
from .measures import DEFAULT_NODES, ContinuousWeight, gauss_laguerre_inner
from .roots import count_real_roots
from .sets import PairSpec, downarrow, fset, s_of, sigma_of, u_of, vandermonde

X = Poly.x()
NEG_X = Poly([0, -1])


def _deriv_rows(p: Poly, width: int) -> list[Poly]:
    return [p.derivative(j) for j in range(width)]


def omega_laguerre(F1, F2, alpha) -> Poly:
    alpha = frac(alpha)
    F1, F2 = fset(F1), fset(F2)
    k = len(F1) + len(F2)
    rows = [_deriv_rows(laguerre(f, alpha), k) for f in F1]
    rows += [[laguerre(f, alpha + j)(NEG_X) for j in range(k)] for f in F2]
    return polymat_det(rows)


@dataclass(frozen=True)
class SecondOrderDifferentialOp:
    """x p'' + h1 p' + h0 p."""

    h1: RatFunc
    h0: RatFunc

    def apply(self, p: Poly) -> RatFunc:
        return RatFunc(X * p.derivative(2)) + self.h1 * p.derivative() + self.h0 * p


class ExcLaguerreFamily:
    def __init__(self, F1, F2, alpha_hat):
        self.F1, self.F2 = fset(F1), fset(F2)
        self.alpha = frac(alpha_hat)
        self._cache: dict[int, Poly] = {}

    def __repr__(self):
        return f"ExcLaguerreFamily(F1={list(self.F1)}, F2={list(self.F2)}, alpha_hat={self.alpha})"

    @property
    def k1(self) -> int:
        return len(self.F1)

    @property
    def k2(self) -> int:
        return len(self.F2)

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    @property
    def u(self) -> int:
        return u_of(self.F1, self.F2)

    def pair(self, a=Fraction(1, 2)) -> PairSpec:
        """The Meixner pair with c_hat = alpha_hat + 1."""
        return PairSpec(self.F1, self.F2, a, self.alpha + 1)

    @property
    def H(self):
        return self.pair().H

    def sigma(self, n_max: int) -> list[int]:
        return sigma_of(self.F1, self.F2, n_max)

    def in_sigma(self, n: int) -> bool:
        return n >= self.u and (n - self.u) not in self.F1

    def satisfies_hf2l(self) -> bool:
        return self.alpha.denominator == 1 and self.alpha <= -2 and self.pair().satisfies_hf2()

    @cached_property
    def omega(self) -> Poly:
        return omega_laguerre(self.F1, self.F2, self.alpha)

    def poly(self, n: int) -> Poly:
        if not self.in_sigma(n):
            raise IndexNotInSigma(f"n={n} is not in sigma_F (u_F={self.u})")
        if n in self._cache:
            return self._cache[n]
        k, al = self.k, self.alpha
        rows = [_deriv_rows(laguerre(n - self.u, al), k + 1)]
        rows += [_deriv_rows(laguerre(f, al), k + 1) for f in self.F1]
        rows += [[laguerre(f, al + j)(NEG_X) for j in range(k + 1)] for f in self.F2]
        p = polymat_det(rows)
        self._cache[n] = p
        return p

    def leading_coefficient(self, n: int) -> Fraction:
        u = self.u
        num = Fraction((-1) ** (n - u + sum(self.F1))) * vandermonde(self.F1) * vandermonde(self.F2)
        for f in self.F1:
            num *= f - n + u
        den = factorial(n - u)
        for f in self.F1 + self.F2:
            den *= factorial(f)
        return num / den

    @cached_property
    def operator(self) -> SecondOrderDifferentialOp:
        om = self.omega
        if om.is_zero():
            raise ValueError("Omega vanishes identically")
        d1 = RatFunc(om.derivative(), om)
        d2 = RatFunc(om.derivative(2), om)
        al, k = self.alpha, self.k
        h1 = RatFunc(Poly([al + k + 1, -1])) - d1 * (X * 2)
        h0 = RatFunc(Poly.const(-self.k1 - self.u)) + d1 * (X - al - k) + d2 * X
        return SecondOrderDifferentialOp(h1, h0)

    def eigen_ok(self, n: int) -> bool:
        p = self.poly(n)
        return (self.operator.apply(p) + p * n).is_zero()

    def reduced(self) -> "ExcLaguerreFamily":
        """alpha + s_F with the pair ((F1)_down, F2)."""
        s = s_of(self.F1)
        return ExcLaguerreFamily(downarrow(self.F1), self.F2, self.alpha + s)

    def rromh_ok(self) -> bool:
        s = s_of(self.F1)
        red = self.reduced()
        sign = (-1) ** (comb(s, 2) + s * self.k1)
        return self.poly(self.u) == red.omega * sign

    # weight ------------------------------------------------------------------
    def weight(self) -> ContinuousWeight:
        e = self.alpha + self.k
        if e.denominator != 1 or e < 0:
            raise ValueError(f"exponent alpha+k = {e} must be a nonnegative integer")
        return ContinuousWeight(int(e), self.omega * self.omega)

    def norm_closed_form(self, n: int) -> Fraction:
        out = Fraction(1)
        for h in self.H:
            out *= n - self.u - h
        return out


@dataclass
class QuadratureGram:
    indices: list[int]
    values: dict  # (n, m) -> mpf
    estimates: dict
    targets: dict

    def max_error(self):
        return max(abs(self.values[key] - self.targets[key]) for key in self.values)

    def ok(self, tol=1e-9) -> bool:
        return all(abs(self.values[key] - self.targets[key]) < tol * max(1, abs(self.targets[key])) for key in self.values)


def quadrature_gram(fam: ExcLaguerreFamily, indices, nodes: int = DEFAULT_NODES, precision: Optional[int] = None) -> QuadratureGram:
    w = fam.weight()
    polys = {n: fam.poly(n) for n in indices}
    vals, ests, tg = {}, {}, {}
    for i, n in enumerate(indices):
        for m in indices[i:]:
            r = gauss_laguerre_inner(w, polys[n], polys[m], nodes, precision)
            vals[(n, m)] = r.value
            ests[(n, m)] = r.estimate
            tg[(n, m)] = fam.norm_closed_form(n) if n == m else 0
    return QuadratureGram(list(indices), vals, ests, tg)


# admissibility ----------------------------------------------------------------


@dataclass
class PositivityReport:
    admissible: bool
    nonnegative_roots: int
    chain: list = field(default_factory=list)
    chain_ok: bool = True

    @property
    def agree(self) -> bool:
        return self.admissible == (self.nonnegative_roots == 0)


def ppt_chain(fam: ExcLaguerreFamily, max_steps: int = 20) -> tuple[list, bool]:
    """Follow the reduction (alpha, F) -> (alpha + s_F, F_down) while admissible.

    Records each step and whether the inherited admissibility statements hold.
    """
    steps, ok = [], True
    cur = fam
    for _ in range(max_steps):
        s = s_of(cur.F1)
        nxt = cur.alpha + s
        if nxt == -1:
            steps.append((str(cur.alpha), list(cur.F1), list(cur.F2), "alpha+s = -1"))
            return steps, False
        red = cur.reduced()
        if nxt <= -2:
            good = red.satisfies_hf2l() and admissible_meixner(red.pair()).admissible
            steps.append((str(nxt), list(red.F1), list(red.F2), "negative", good))
            ok = ok and good
            if not good:
                return steps, ok
            cur = red
            continue
        good = _nonneg_on_naturals(red.F1, red.F2, int(nxt + 1))
        steps.append((str(nxt), list(red.F1), list(red.F2), "nonnegative", good))
        return steps, ok and good
    return steps, ok


def _nonneg_on_naturals(U1, U2, d: int) -> bool:
    """prod(x-f) prod(x+d+f) Gamma(x+d) >= 0 on the naturals for a positive integer d."""
    top = max(list(U1) + [0]) + 1
    for x in range(top + 1):
        v = 1
        for f in U1:
            v *= x - f
        if v < 0:
            return False
    return True


def positivity_equivalence_check(fam: ExcLaguerreFamily) -> PositivityReport:
    if not fam.satisfies_hf2l():
        raise ValueError(f"{fam} does not satisfy the containment condition")
    adm = admissible_meixner(fam.pair()).admissible
    roots = count_real_roots(fam.omega, 0, None)
    rep = PositivityReport(adm, roots)
    if adm:
        rep.chain, rep.chain_ok = ppt_chain(fam)
    return rep


# limits ------------------------------------------------------------------------


@dataclass
class LimitTable:
    errors: list[Fraction]

    @property
    def ratios(self) -> list[float]:
        return [float(self.errors[i] / self.errors[i - 1]) if self.errors[i - 1] else 0.0 for i in range(1, len(self.errors))]

    def halving(self, lo=0.4, hi=0.6, last: int = 6) -> bool:
        r = self.ratios[-last:]
        return len(r) == last and all(lo <= v <= hi for v in r)


def _coef_error(p: Poly, q: Poly) -> Fraction:
    d = p - q
    return max((abs(c) for c in d.coeffs), default=Fraction(0))


def limit_from_meixner(fam: ExcLaguerreFamily, n: int, steps: int = 7, t0: int = 4) -> LimitTable:
    """Scaled exceptional Meixner polynomials at a = 1 - 2^-t against the Laguerre limit."""
    target = fam.poly(n) * ((-1) ** (comb(fam.k + 1, 2) + sum(fam.F2)))
    errs = []
    e = n - (fam.k1 + 1) * fam.k2
    for t in range(t0, t0 + steps):
        a = 1 - Fraction(1, 2**t)
        m = ExcMeixnerFamily(PairSpec(fam.F1, fam.F2, a, fam.alpha + 1)).poly(n)
        scaled = m.scale_x(1 / (1 - a)) * (a - 1) ** e
        errs.append(_coef_error(scaled, target))
    return LimitTable(errs)


def leading_coefficient_limit_ok(fam: ExcLaguerreFamily, n: int, t: int = 30) -> bool:
    """The Meixner leading-coefficient formula, scaled, tends to the Laguerre one (error O(1-a))."""
    a = 1 - Fraction(1, 2**t)
    em = ExcMeixnerFamily(PairSpec(fam.F1, fam.F2, a, fam.alpha + 1))
    e = n - (fam.k1 + 1) * fam.k2
    scaled = em.leading_coefficient(n) * (a - 1) ** e / (1 - a) ** n
    target = fam.leading_coefficient(n) * (-1) ** (comb(fam.k + 1, 2) + sum(fam.F2))
    return abs(scaled - target) <= abs(target) * Fraction(64, 2**t) + Fraction(64, 2**t)


def quadrature_value_float(x) -> float:
    return float(mpmath.mpf(x))
