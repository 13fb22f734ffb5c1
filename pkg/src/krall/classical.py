"""Meixner, Laguerre, Hahn and dual Hahn polynomials and their measures.

Meixner polynomials use the normalization

    m_n^{a,c}(x) = (a/(1-a))^n sum_j a^{-j} C(x, j) C(-x-c, n-j)

and every measure here has its Gamma constants divided out so that masses
are exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import (
    Poly,
    ScalarLike,
    binom_poly,
    binom_scalar,
    frac,
    pochhammer,
    rising_poly,
)

X = Poly.x()


class DegenerateParameter(ValueError):
    pass


@dataclass(frozen=True)
class MeixnerParams:
    a: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", frac(self.a))
        object.__setattr__(self, "c", frac(self.c))
        if self.a in (0, 1):
            raise DegenerateParameter("Meixner parameter a must differ from 0 and 1")


@dataclass(frozen=True)
class HahnParams:
    a: Fraction
    b: Fraction
    N: Fraction

    def __post_init__(self):
        for name in ("a", "b", "N"):
            object.__setattr__(self, name, frac(getattr(self, name)))


def _is_nonpositive_int(q: Fraction) -> bool:
    return q.denominator == 1 and q <= 0


def _is_negative_int(q: Fraction) -> bool:
    return q.denominator == 1 and q < 0


@lru_cache(maxsize=4096)
def _meixner(n: int, a: Fraction, c: Fraction) -> Poly:
    if n < 0:
        return Poly()
    if a in (0, 1):
        raise DegenerateParameter("Meixner parameter a must differ from 0 and 1")
    total = Poly()
    neg = Poly([-c, -1])  # -x - c
    for j in range(n + 1):
        total = total + binom_poly(X, j) * binom_poly(neg, n - j) * (a ** -j)
    return total * (a / (1 - a)) ** n


def meixner(n: int, a: ScalarLike, c: ScalarLike) -> Poly:
    """m_n^{a,c}; the zero polynomial for negative n."""
    return _meixner(n, frac(a), frac(c))


def meixner_value(n: int, a: ScalarLike, c: ScalarLike, x: ScalarLike) -> Fraction:
    return meixner(n, a, c)(x)


def meixner_norm(n: int, a: ScalarLike, c: ScalarLike) -> Fraction:
    """Squared norm of m_n divided by Gamma(c)(1-a)^{-c}."""
    a, c = frac(a), frac(c)
    if _is_nonpositive_int(c):
        raise DegenerateParameter(f"Meixner norm undefined for c = {c}")
    return a**n * pochhammer(c, n) / (factorial(n) * (1 - a) ** (2 * n))


def meixner_packing_check(n: int, a: ScalarLike, c: int) -> bool:
    """For c in {0,-1,...} and n >= 1-c, m_n^{a,c} splits off the factor prod (x-j)."""
    c = int(c)
    if c > 0 or n < -c + 1:
        raise ValueError("packing identity needs c <= 0 and n >= 1 - c")
    lhs = meixner(n, a, c) * _prod_int(n - j for j in range(0, -c + 1))
    rhs = Poly.from_roots(range(0, -c + 1)) * meixner(n + c - 1, a, 2 - c).shift(c - 1)
    return lhs == rhs


def _prod_int(it) -> int:
    out = 1
    for v in it:
        out *= v
    return out


@lru_cache(maxsize=4096)
def _laguerre(n: int, alpha: Fraction) -> Poly:
    if n < 0:
        return Poly()
    coeffs = []
    for j in range(n + 1):
        coeffs.append(Fraction((-1) ** j, factorial(j)) * binom_scalar(n + alpha, n - j))
    return Poly(coeffs)


def laguerre(n: int, alpha: ScalarLike) -> Poly:
    return _laguerre(n, frac(alpha))


def _check_hahn(a: Fraction, b: Fraction, N: Fraction) -> None:
    if _is_negative_int(a + b + 1) or _is_negative_int(a + b + N + 1):
        raise DegenerateParameter(f"Hahn polynomials undefined for a={a}, b={b}, N={N}")


@lru_cache(maxsize=4096)
def _hahn(n: int, a: Fraction, b: Fraction, N: Fraction) -> Poly:
    if n < 0:
        return Poly()
    _check_hahn(a, b, N)
    den = pochhammer(2 + a + b + N, n)
    if not den:
        raise DegenerateParameter(f"(2+a+b+N)_n vanishes for n={n}")
    total = Poly()
    for j in range(n + 1):
        c = (
            pochhammer(N - n + 1, n - j)
            * pochhammer(a + b + 1, j + n)
            * pochhammer(a + j + 1, n - j)
            / (factorial(n - j) * factorial(j))
        )
        if c:
            total = total + rising_poly(-X, j) * c
    return total / den


def hahn(n: int, p: HahnParams) -> Poly:
    return _hahn(n, p.a, p.b, p.N)


@lru_cache(maxsize=4096)
def _dual_hahn(n: int, a: Fraction, b: Fraction, N: Fraction) -> Poly:
    total = Poly()
    lattice = Poly.const(1)
    for j in range(n + 1):
        if j:
            i = j - 1
            lattice = lattice * (X - i * (i + a + b + 1))
        c = pochhammer(-n, j) * pochhammer(-N + j, n - j) * pochhammer(a + j + 1, n - j)
        c /= (-1) ** j * factorial(j)
        total = total + lattice * c
    return total


def dual_hahn(n: int, p: HahnParams) -> Poly:
    return _dual_hahn(n, p.a, p.b, p.N)


def meixner_measure(p: MeixnerParams):
    """Masses (c)_x a^x / x!; exactly summable when c is a positive integer."""
    from .measures import DiscreteMeasure

    a, c = p.a, p.c
    if not 0 < abs(a) < 1:
        raise DegenerateParameter("Meixner measure needs 0 < |a| < 1")
    if _is_nonpositive_int(c):
        raise DegenerateParameter(f"Meixner measure undefined for c = {c}")
    if c.denominator == 1:
        # (c)_x / x! = (x+1)_{c-1} / (c-1)!
        weight = rising_poly(X + 1, int(c) - 1) / factorial(int(c) - 1)
        return DiscreteMeasure(a=a, weight=weight, label=f"meixner(a={a}, c={c})")
    return DiscreteMeasure(
        a=a,
        weight=Poly.const(1),
        factor=lambda x, c=c: pochhammer(c, x) / factorial(x),
        label=f"meixner(a={a}, c={c})",
    )


def hahn_measure(p: HahnParams):
    """Masses (a+1)_x (b+1)_{N-x} / (x! (N-x)!) on {0..N}."""
    from .measures import DiscreteMeasure

    a, b, N = p.a, p.b, p.N
    if N.denominator != 1 or N < 1:
        raise DegenerateParameter("Hahn measure needs a positive integer N")
    n = int(N)
    if (_is_negative_int(a) and a >= -n) or (_is_negative_int(b) and b >= -n):
        raise DegenerateParameter(f"Hahn measure undefined for a={a}, b={b}")
    if _is_negative_int(a + b) and a + b >= -2 * n - 1:
        raise DegenerateParameter(f"Hahn measure undefined for a+b={a + b}")
    table = tuple(
        pochhammer(a + 1, x) * pochhammer(b + 1, n - x) / (factorial(x) * factorial(n - x))
        for x in range(n + 1)
    )
    return DiscreteMeasure(table=table, label=f"hahn(a={a}, b={b}, N={n})")


def hahn_is_positive(p: HahnParams) -> bool:
    return (p.a > -1 and p.b > -1) or (p.a < -p.N and p.b < -p.N)


def meixner_laguerre_errors(n: int, c: ScalarLike, steps: int = 7, t0: int = 4) -> list[Fraction]:
    """Max coefficient gap between (a-1)^n m_n^{a,c}(x/(1-a)) and L_n^{c-1}(x), a = 1 - 2^-t."""
    c = frac(c)
    target = laguerre(n, c - 1)
    out = []
    for t in range(t0, t0 + steps):
        a = 1 - Fraction(1, 2**t)
        scaled = meixner(n, a, c).scale_x(1 / (1 - a)) * (a - 1) ** n
        diff = scaled - target
        out.append(max((abs(v) for v in diff.coeffs), default=Fraction(0)))
    return out
