"""Exceptional Meixner polynomials, their second-order difference operator and
orthogonality weight.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Optional

from .classical import meixner
from .exact import Poly, RatFunc, frac, polymat_det, rising_poly
from .krall_meixner import admissible_meixner, omega_meixner
from .measures import DiscreteMeasure, TailBound, inner_product_bounded
from .sets import NotRepresentable, PairSpec, downarrow, fset, s_of, sigma_of, u_of, vandermonde

X = Poly.x()


class IndexNotInSigma(ValueError):
    pass


def lambda_det(F1, F2, a, c) -> Poly:
    """Casorati-type determinant with column offsets 0..k-2 and k (offset k-1 skipped).

    For k == 1 the offsets reduce to the single column {1}; for k == 0 the
    determinant is taken as 0 so that it drops out of the operator.
    """
    a, c = frac(a), frac(c)
    F1, F2 = fset(F1), fset(F2)
    k = len(F1) + len(F2)
    if k == 0:
        return Poly()
    offs = list(range(k - 1)) + [k]
    rows = [[meixner(f, a, c).shift(o) for o in offs] for f in F1]
    rows += [[meixner(f, 1 / a, c).shift(o) / a**o for o in offs] for f in F2]
    return polymat_det(rows)


@dataclass(frozen=True)
class SecondOrderDifferenceOp:
    """h_{-1}(x) p(x-1) + h_0(x) p(x) + h_1(x) p(x+1)."""

    hm: RatFunc
    h0: RatFunc
    hp: RatFunc

    def apply(self, p: Poly) -> RatFunc:
        return self.hm * p.shift(-1) + self.h0 * p + self.hp * p.shift(1)

    def eigen_defect(self, p: Poly, lam) -> RatFunc:
        return self.apply(p) - p * frac(lam)


@dataclass
class ExcMeixnerFamily:
    spec: PairSpec

    def __post_init__(self):
        if self.spec.a in (0, 1):
            raise ValueError("a must differ from 0 and 1")
        self._cache: dict[int, Poly] = {}

    @property
    def a(self) -> Fraction:
        return self.spec.a

    @property
    def c_hat(self) -> Fraction:
        return self.spec.c_hat

    @property
    def k1(self) -> int:
        return self.spec.k1

    @property
    def k2(self) -> int:
        return self.spec.k2

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def u(self) -> int:
        return u_of(self.spec.F1, self.spec.F2)

    def sigma(self, n_max: int) -> list[int]:
        return sigma_of(self.spec.F1, self.spec.F2, n_max)

    def in_sigma(self, n: int) -> bool:
        return n >= self.u and (n - self.u) not in self.spec.F1

    @cached_property
    def omega(self) -> Poly:
        return omega_meixner(self.spec.F1, self.spec.F2, self.a, self.c_hat)

    @cached_property
    def lam(self) -> Poly:
        return lambda_det(self.spec.F1, self.spec.F2, self.a, self.c_hat)

    def _check(self, n: int) -> None:
        if not self.in_sigma(n):
            raise IndexNotInSigma(f"n={n} is not in sigma_F (u_F={self.u}, F1={list(self.spec.F1)})")

    def poly(self, n: int) -> Poly:
        """Casorati determinant with shifted columns."""
        self._check(n)
        if n in self._cache:
            return self._cache[n]
        a, c, k = self.a, self.c_hat, self.k
        rows = [[meixner(n - self.u, a, c).shift(j) for j in range(k + 1)]]
        rows += [[meixner(f, a, c).shift(j) for j in range(k + 1)] for f in self.spec.F1]
        rows += [[meixner(f, 1 / a, c).shift(j) / a**j for j in range(k + 1)] for f in self.spec.F2]
        p = polymat_det(rows)
        self._cache[n] = p
        return p

    def poly_alt(self, n: int) -> Poly:
        """Same polynomial from the column-combined form with raised parameters."""
        self._check(n)
        a, c, k = self.a, self.c_hat, self.k
        rows = [[meixner(n - self.u - j, a, c + j) for j in range(k + 1)]]
        rows += [[meixner(f - j, a, c + j) for j in range(k + 1)] for f in self.spec.F1]
        rows += [[((1 - a) / a) ** j * meixner(f, 1 / a, c + j) for j in range(k + 1)] for f in self.spec.F2]
        return polymat_det(rows)

    def leading_coefficient(self, n: int) -> Fraction:
        a, k1, k2, u = self.a, self.k1, self.k2, self.u
        F1, F2 = self.spec.F1, self.spec.F2
        num = Fraction((-1) ** (k2 * (k1 + 1))) * (a - 1) ** (k2 * (k1 + 1)) * vandermonde(F1) * vandermonde(F2)
        for f in F1:
            num *= f - n + u
        den = a ** (k2 * k1 + comb(k2 + 1, 2)) * factorial(n - u)
        for f in F1 + F2:
            den *= factorial(f)
        return num / den

    @cached_property
    def operator(self) -> SecondOrderDifferenceOp:
        a, c, k, u = self.a, self.c_hat, self.k, self.u
        om = self.omega
        if om.is_zero():
            raise ValueError("Omega vanishes identically")
        om1 = om.shift(1)
        hm = RatFunc(X * om1, om * (a - 1))
        g = RatFunc((X + c + k - 1) * self.lam * a, om * (a - 1))
        h0 = RatFunc(-((1 + a) * (X + k) + a * c) / (a - 1) + u) + g.delta()
        hp = RatFunc((X + c + k) * om * a, om1 * (a - 1))
        return SecondOrderDifferenceOp(hm, h0, hp)

    def eigen_ok(self, n: int) -> bool:
        return self.operator.eigen_defect(self.poly(n), n).is_zero()

    # orthogonality ------------------------------------------------------------
    def _require_weight(self) -> None:
        s = self.spec
        if not s.integral_c or s.c_hat > -1 or not s.satisfies_hf2():
            raise NotRepresentable("the orthogonality weight needs c_hat <= -1 and the containment condition")

    def weight_ratfunc(self) -> RatFunc:
        self._require_weight()
        e = int(self.c_hat) + self.k - 1
        if e < 0:
            raise NotRepresentable("c_hat + k must be at least 1")
        return RatFunc(rising_poly(X + 1, e), self.omega * self.omega.shift(1))

    def measure(self, check_admissible: bool = True) -> DiscreteMeasure:
        if check_admissible and not admissible_meixner(self.spec).admissible:
            raise NotRepresentable(f"{self.spec.to_json()} is not admissible; the weight is not positive")
        return DiscreteMeasure(a=self.a, weight=self.weight_ratfunc(), label=f"omega({self.spec.to_json()})")

    def norm_closed_form(self, n: int) -> Fraction:
        a, u, k1, k, c = self.a, self.u, self.k1, self.k, int(self.c_hat)
        out = a ** (n - u + k1 - 2 * k) / (1 - a) ** (c + 2 * n - 2 * u - k)
        for h in self.spec.H:
            out *= n - u - h
        return out


@dataclass
class NormCheck:
    n: int
    m: int
    target: Fraction
    tail: TailBound

    @property
    def ok(self) -> bool:
        return self.tail.covers(self.target)


def bounded_gram(fam: ExcMeixnerFamily, n_max: int, X0: Optional[int] = None, tol=Fraction(1, 10**20)) -> list[NormCheck]:
    """Inner products of m_n, n in sigma_F up to n_max, against omega.

    Without an explicit X0 the truncation point is doubled until every bound
    is below ``tol`` times the size of its target.
    """
    mu = fam.measure()
    idx = fam.sigma(n_max)
    polys = {n: fam.poly(n) for n in idx}
    out = []
    for i, n in enumerate(idx):
        for m in idx[i:]:
            target = fam.norm_closed_form(n) if n == m else Fraction(0)
            if X0 is not None:
                tb = inner_product_bounded(mu, polys[n], polys[m], X0)
            else:
                x0 = 40
                while True:
                    tb = inner_product_bounded(mu, polys[n], polys[m], x0)
                    if tb.bound < tol * max(1, abs(target)):
                        break
                    x0 *= 2
            out.append(NormCheck(n, m, target, tb))
    return out


# reduction of degenerate parameters -------------------------------------------


def reduced_pair(spec: PairSpec) -> PairSpec:
    """(c_hat, F) with zeros in F mapped to (c_hat + s1 + s2, U)."""
    c = spec.c_hat
    U = []
    for F in (spec.F1, spec.F2):
        if 0 in F:
            c += s_of(F)
            U.append(downarrow(F))
        else:
            U.append(F)
    return PairSpec(U[0], U[1], spec.a, c)


@dataclass
class ReductionReport:
    original: PairSpec
    reduced: PairSpec
    ratios: dict = field(default_factory=dict)  # n -> constant or None when not proportional

    @property
    def ok(self) -> bool:
        return all(r is not None for r in self.ratios.values())


def reduction_identity_check(spec: PairSpec, count: int = 6) -> ReductionReport:
    red = reduced_pair(spec)
    f_orig, f_red = ExcMeixnerFamily(spec), ExcMeixnerFamily(red)
    rep = ReductionReport(spec, red)
    lo = max(f_orig.u, f_red.u, 0)
    n = lo
    while len(rep.ratios) < count:
        if f_orig.in_sigma(n) and f_red.in_sigma(n):
            p, q = f_orig.poly(n), f_red.poly(n)
            if q.is_zero() or p.is_zero() or p * q.lc != q * p.lc:
                rep.ratios[n] = None
            else:
                rep.ratios[n] = p.lc / q.lc
        n += 1
    return rep
