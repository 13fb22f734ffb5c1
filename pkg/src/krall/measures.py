"""Inner products against discrete and continuous weights.

Discrete masses are r(x) * a**x (optionally times an extra rational factor)
on the nonnegative integers minus an excluded set, or an explicit finite
table.  Polynomial r with 0 < |a| < 1 gives exact sums; rational r is
handled by a partial sum plus an exact rational tail bound.
"""
from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath

from .exact import Poly, RatFunc, format_rational, frac
from .roots import has_nonnegative_root, root_bound


class DivergentSum(ValueError):
    pass


class InvalidTruncation(ValueError):
    pass


class InvalidWeight(ValueError):
    pass


class NotExactlySummable(TypeError):
    pass


def geometric_poly_sum(p: Poly, a) -> Fraction:
    """sum_{x>=0} p(x) a^x in closed form.

    Writes p in the falling-factorial basis (Newton forward differences) and
    uses sum_x x(x-1)...(x-j+1) a^x = j! a^j / (1-a)^(j+1).
    """
    a = frac(a)
    if not abs(a) < 1:
        raise DivergentSum(f"geometric sum diverges for a = {a}")
    if p.is_zero():
        return Fraction(0)
    vals = [p(i) for i in range(p.degree + 1)]
    total = Fraction(0)
    q = 1 / (1 - a)
    term = q
    for j in range(len(vals)):
        total += vals[0] * term
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
        term *= a * q
    return total


@dataclass(frozen=True)
class DiscreteMeasure:
    a: Optional[Fraction] = None
    weight: Union[Poly, RatFunc, None] = None
    excluded: frozenset = frozenset()
    table: Optional[tuple] = None
    factor: Optional[Callable[[int], Fraction]] = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.a is not None:
            object.__setattr__(self, "a", frac(self.a))
        object.__setattr__(self, "excluded", frozenset(int(e) for e in self.excluded))
        if self.table is None and (self.a is None or self.weight is None):
            raise ValueError("need either a finite table or a geometric weight")

    @property
    def finite(self) -> bool:
        return self.table is not None

    def support_end(self) -> Optional[int]:
        return len(self.table) - 1 if self.finite else None

    def mass(self, x: int) -> Fraction:
        if x < 0 or x in self.excluded:
            return Fraction(0)
        if self.finite:
            return frac(self.table[x]) if x < len(self.table) else Fraction(0)
        out = self.weight(x) * self.a**x
        if self.factor is not None:
            out *= self.factor(x)
        return out

    def masses(self, stop: int) -> list[Fraction]:
        return [self.mass(x) for x in range(stop + 1)]

    def exactly_summable(self) -> bool:
        return self.finite or (isinstance(self.weight, Poly) and self.factor is None)

    def without(self, points) -> DiscreteMeasure:
        return DiscreteMeasure(
            self.a, self.weight, self.excluded | set(points), self.table, self.factor, self.label
        )


def inner_product_exact(mu: DiscreteMeasure, p: Poly, q: Poly) -> Fraction:
    if mu.finite:
        return sum((mu.mass(x) * p(x) * q(x) for x in range(len(mu.table))), Fraction(0))
    if not mu.exactly_summable():
        raise NotExactlySummable(f"{mu.label or 'measure'} has no closed-form moments; use inner_product_bounded")
    f = mu.weight * p * q
    total = geometric_poly_sum(f, mu.a)
    for x in mu.excluded:
        if x >= 0:
            total -= f(x) * mu.a**x
    return total


@dataclass(frozen=True)
class TailBound:
    X0: int
    bound: Fraction
    partial: Fraction

    def covers(self, target) -> bool:
        return abs(self.partial - frac(target)) <= self.bound

    def to_json(self) -> dict:
        return {"partial": format_rational(self.partial), "bound": format_rational(self.bound), "X0": self.X0}


def _abs_tail_sum(deg: int, a: Fraction, start: int) -> Fraction:
    """Exact sum_{x >= start} x^deg |a|^x."""
    a = abs(a)
    shifted = (Poly.x() + start) ** deg
    return a**start * geometric_poly_sum(shifted, a)


def default_truncation(f: RatFunc) -> int:
    return 10 + 2 * max(root_bound(f.den), root_bound(f.num))


def tail_majorant(f: RatFunc, a: Fraction, X0: int) -> Fraction:
    """Rigorous bound for sum_{x > X0} |f(x)| |a|^x.

    For x >= X0+1 >= 1:  |num(x)| <= x^dn * sum |n_i| (X0+1)^(i-dn)  and
    |den(x)| >= x^dd * (|lc| - sum_{i<dd} |d_i| (X0+1)^(i-dd)).
    """
    if f.is_zero():
        return Fraction(0)
    if X0 < 0:
        raise InvalidTruncation("truncation point must be nonnegative")
    t = X0 + 1
    num, den = f.num, f.den
    dn, dd = num.degree, den.degree
    top = sum((abs(c) * Fraction(t) ** (i - dn) for i, c in enumerate(num.coeffs)), Fraction(0))
    low = abs(den.lc) - sum((abs(c) * Fraction(t) ** (i - dd) for i, c in enumerate(den.coeffs[:-1])), Fraction(0))
    if low <= 0:
        raise InvalidTruncation(f"X0={X0} is not beyond the denominator's roots")
    const = top / low
    deg = dn - dd
    if deg < 0:
        const *= Fraction(t) ** deg
        deg = 0
    return const * _abs_tail_sum(deg, a, t)


def inner_product_bounded(mu: DiscreteMeasure, p: Poly, q: Poly, X0: Optional[int] = None) -> TailBound:
    """Partial sum up to X0 plus an exact bound on the remainder."""
    if mu.finite:
        return TailBound(mu.support_end(), Fraction(0), inner_product_exact(mu, p, q))
    if mu.factor is not None:
        raise NotExactlySummable("extra mass factors are not supported by the tail bound")
    f = RatFunc.coerce(mu.weight) * (p * q)
    if X0 is None:
        X0 = default_truncation(f)
    if f.is_zero():
        return TailBound(X0, Fraction(0), Fraction(0))
    partial = Fraction(0)
    apow = Fraction(1)
    for x in range(X0 + 1):
        if x not in mu.excluded:
            partial += f(x) * apow
        apow *= mu.a
    return TailBound(X0, tail_majorant(f, mu.a, X0), partial)


# continuous weights ---------------------------------------------------------

DEFAULT_NODES = 128
DEFAULT_PRECISION = 256


def precision_bits() -> int:
    return int(os.environ.get("KRALL_PRECISION_BITS", DEFAULT_PRECISION))


@dataclass(frozen=True)
class ContinuousWeight:
    """x^exponent e^{-x} / denominator(x) on [0, inf)."""

    exponent: int
    denominator: Poly

    def __post_init__(self):
        if self.exponent < 0:
            raise InvalidWeight("exponent must be nonnegative")
        if self.denominator.is_zero():
            raise InvalidWeight("zero denominator")
        if has_nonnegative_root(self.denominator):
            raise InvalidWeight(f"denominator {self.denominator} vanishes on [0, inf)")
        if self.denominator(0) < 0:
            raise InvalidWeight("denominator is negative on [0, inf)")


@dataclass(frozen=True)
class QuadratureResult:
    value: object  # mpf
    estimate: object  # |I_n - I_{n/2}|
    nodes: int
    precision: int


_node_cache: dict = {}
_node_lock = threading.Lock()


def _laguerre_nodes(n: int, prec: int):
    with mpmath.workprec(prec):
        xs, ws = [], []
        tol = mpmath.mpf(2) ** (16 - prec)
        z = mpmath.mpf(0)
        for i in range(n):
            # standard asymptotic starting guesses, refined by Newton
            if i == 0:
                z = mpmath.mpf(3) / (1 + mpmath.mpf("2.4") * n)
            elif i == 1:
                z += 15 / (1 + mpmath.mpf("2.5") * n)
            else:
                ai = i - 1
                z += ((1 + mpmath.mpf("2.55") * ai) / (mpmath.mpf("1.9") * ai)) * (z - xs[i - 2])
            for _ in range(200):
                p1, p2 = mpmath.mpf(1), mpmath.mpf(0)
                for j in range(1, n + 1):
                    p3, p2 = p2, p1
                    p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j
                pp = n * (p1 - p2) / z
                z1, z = z, z - p1 / pp
                if abs(z - z1) <= tol * abs(z):
                    break
            xs.append(z)
            ws.append(-1 / (pp * n * p2))
        return tuple(xs), tuple(ws)


def laguerre_nodes(n: int, prec: Optional[int] = None):
    prec = prec or precision_bits()
    key = (n, prec)
    got = _node_cache.get(key)
    if got is not None:
        return got
    with _node_lock:
        if key not in _node_cache:
            _node_cache[key] = _laguerre_nodes(n, prec)
        return _node_cache[key]


def _quad(w: ContinuousWeight, f: Poly, n: int, prec: int):
    xs, ws = laguerre_nodes(n, prec)
    with mpmath.workprec(prec):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in f.coeffs]
        ds = [mpmath.mpf(c.numerator) / c.denominator for c in w.denominator.coeffs]

        def horner(coeffs, t):
            out = mpmath.mpf(0)
            for c in reversed(coeffs):
                out = out * t + c
            return out

        return mpmath.fsum(
            wt * horner(cs, t) * t**w.exponent / horner(ds, t) for t, wt in zip(xs, ws)
        )


def gauss_laguerre_inner(
    w: ContinuousWeight, p: Poly, q: Poly, nodes: int = DEFAULT_NODES, precision: Optional[int] = None
) -> QuadratureResult:
    prec = precision or precision_bits()
    f = p * q
    if f.is_zero():
        return QuadratureResult(mpmath.mpf(0), mpmath.mpf(0), nodes, prec)
    full = _quad(w, f, nodes, prec)
    half = _quad(w, f, max(nodes // 2, 1), prec)
    with mpmath.workprec(prec):
        return QuadratureResult(full, abs(full - half), nodes, prec)
