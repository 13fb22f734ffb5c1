"""Exact real-root counting with Sturm sequences."""
from __future__ import annotations

from fractions import Fraction
from .exact import Poly, frac


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _at_infinity(seq: list[Poly], positive: bool = True) -> int:
    out = []
    for s in seq:
        sg = _sign(s.lc)
        if not positive and s.degree % 2:
            sg = -sg
        out.append(sg)
    return _variations(out)


def _squarefree(p: Poly) -> Poly:
    from .exact import poly_gcd

    g = poly_gcd(p, p.derivative())
    return p.exact_div(g) if g.degree > 0 else p


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the closed interval [lo, hi].

    ``None`` stands for -inf (lo) or +inf (hi).
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    q = _squarefree(p)
    extra = 0
    if lo is not None:
        lo = frac(lo)
        if q(lo) == 0:
            extra += 1
            q = q.exact_div(Poly([-lo, 1]))
    if hi is not None:
        hi = frac(hi)
        if (lo is None or hi != lo) and q.degree > 0 and q(hi) == 0:
            extra += 1
            q = q.exact_div(Poly([-hi, 1]))
    if q.degree <= 0:
        return extra
    seq = sturm_sequence(q)
    v_lo = _at_infinity(seq, positive=False) if lo is None else _variations([_sign(s(lo)) for s in seq])
    v_hi = _at_infinity(seq, positive=True) if hi is None else _variations([_sign(s(hi)) for s in seq])
    return v_lo - v_hi + extra


def has_nonnegative_root(p: Poly) -> bool:
    return count_real_roots(p, 0, None) > 0


def _int_root_ceil(q: Fraction, k: int) -> int:
    """Smallest integer b >= 0 with b**k >= q (binary search, exact)."""
    lo, hi = 0, 1
    while Fraction(hi) ** k < q:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= q:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(p: Poly) -> int:
    """Integer Fujiwara bound: every complex root has modulus at most it."""
    if p.degree <= 0:
        return 0
    n, lc = p.degree, abs(p.lc)
    return 2 * max(_int_root_ceil(abs(c) / lc, n - i) for i, c in enumerate(p.coeffs[:-1]))
