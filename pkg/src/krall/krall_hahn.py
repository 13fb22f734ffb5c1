"""Krall-Hahn polynomials for Hahn parameters at negative integers.

The polynomials are (m+1)x(m+1) determinants whose first row holds shifted
Hahn polynomials and whose other rows are scalars depending on n.  The
scalar rows are built as rational functions of a formal variable standing
for n, so that the normalizing factor is cancelled symbolically before n is
substituted.  This keeps q_n well defined at the n where the normalizer and
some rows vanish together.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Optional

from .classical import DegenerateParameter, HahnParams, dual_hahn, hahn
from .exact import Poly, RatFunc, ScalarLike, frac, pochhammer, polymat_det, rising_poly
from .measures import DiscreteMeasure, inner_product_exact
from .sets import NotRepresentable, QuartetSpec, contains_lattice, fset, hset, involution_I, smax

NU = Poly.x()


def _is_negative_int(q: Fraction) -> bool:
    return q.denominator == 1 and q < 0


def theta(n: ScalarLike, u: ScalarLike):
    """n(n+u+1); works for scalars and polynomials alike."""
    return n * (n + u + 1)


def psi(r: int, u: ScalarLike, x):
    out = 1
    for h in range(1, r):
        for i in range(1, h + 1):
            out = out * (x * 2 + u - i - h)
    return out


def phi(r: int, r1: int, a: ScalarLike, x):
    out = 1
    for i in range(1, r1):
        base = x + a - r + 1
        if isinstance(base, Poly):
            out = out * rising_poly(base, r1 - i)
        else:
            out = out * pochhammer(base, r1 - i)
    return out


def _rising(x, j: int):
    return rising_poly(x, j) if isinstance(x, Poly) else pochhammer(x, j)


def xi_parts(h: int, x, j: int, a, b, N):
    """Numerator and denominator of the four D-operator factors."""
    one = Poly.const(1) if isinstance(x, Poly) else Fraction(1)
    sign = -1 if j % 2 else 1
    if h == 1:
        return _rising(x - j - N, j) * _rising(x - j + a + 1, j) * sign, _rising(x - j + a + b + N + 2, j)
    if h == 2:
        return _rising(x - j + b + 1, j) * _rising(x - j - N, j), _rising(x - j + a + b + N + 2, j)
    if h == 3:
        return _rising(x - j + a + 1, j), one
    if h == 4:
        return _rising(x - j + b + 1, j) * sign, one
    raise ValueError(f"h must be 1..4, got {h}")


def xi(h: int, x: ScalarLike, j: int, a, b, N) -> Fraction:
    num, den = xi_parts(h, frac(x), j, frac(a), frac(b), frac(N))
    if not den:
        raise DegenerateParameter(f"xi denominator vanishes at x={x}, j={j}")
    return num / den


@dataclass
class KrallHahnFamily:
    spec: QuartetSpec

    def __post_init__(self):
        s = self.spec
        if not (_is_negative_int(s.a_hat) or _is_negative_int(s.b_hat)):
            raise NotRepresentable("at least one of a_hat, b_hat must be a negative integer")
        if 2 * smax(s.F3) >= s.N or 2 * smax(s.F4) >= s.N:
            raise NotRepresentable("max F3 and max F4 must be below N/2")
        if self.Nt < -2 - self.a - self.b:
            raise DegenerateParameter("N too small: need N >= -2-a-b")
        self._cof: Optional[list[RatFunc]] = None
        self._cache: dict[int, Poly] = {}

    @property
    def a(self) -> Fraction:
        s = self.spec
        return s.a_hat + smax(s.F2) + smax(s.F4) + 2

    @property
    def b(self) -> Fraction:
        s = self.spec
        return s.b_hat + smax(s.F1) + smax(s.F3) + 2

    @property
    def Nt(self) -> int:
        s = self.spec
        return s.N - smax(s.F3) - smax(s.F4) - 2

    @property
    def G(self) -> tuple:
        return tuple(involution_I(F) for F in self.spec.sets)

    @property
    def ms(self) -> tuple:
        return tuple(len(g) for g in self.G)

    @property
    def m(self) -> int:
        return sum(self.ms)

    @property
    def top(self) -> int:
        """Largest index of the orthogonal family."""
        return self.Nt + self.ms[2] + self.ms[3]

    @property
    def shift(self) -> int:
        return smax(self.spec.F4) + 1

    def band_radius(self) -> int:
        return 1 + sum(sum(F) - comb(len(F), 2) for F in self.spec.sets)

    def _row_params(self) -> list:
        a, b, N = self.a, self.b, self.Nt
        return [(-b, -a, a + b + N), (-a, -b, a + b + N), (-b, -a, -2 - N), (-a, -b, -2 - N)]

    def normalizer(self, x=NU):
        m, ms = self.m, self.ms
        return phi(m, ms[0] + ms[2], self.a, x) * phi(m, ms[1] + ms[3], self.b, x) * psi(m, self.a + self.b, x)

    def _block(self, ncols: int, x_off: int, j_off: int, t_off: int) -> tuple[list[list[Poly]], list[Poly]]:
        """Scalar rows as polynomials in NU, with each column's xi denominator cleared."""
        a, b, N = self.a, self.b, self.Nt
        pars = self._row_params()
        cols = range(1, ncols + 1)
        dens = []
        for j in cols:
            jj = self.m - j + j_off
            dens.append(rising_poly(NU - j + x_off - jj + a + b + N + 2, jj))
        rows = []
        for h in range(4):
            for g in self.G[h]:
                R = dual_hahn(g, HahnParams(*pars[h]))
                row = []
                for j, d in zip(cols, dens):
                    num, den = xi_parts(h + 1, NU - j + x_off, self.m - j + j_off, a, b, N)
                    th = theta(NU * -1 + j + t_off, -a - b)
                    entry = num * R.compose(th)
                    if den.degree <= 0:
                        entry = entry * d / den.coeff(0)
                    else:
                        entry = entry * d.exact_div(den)
                    row.append(entry)
                rows.append(row)
        return rows, dens

    def cofactors(self) -> list[RatFunc]:
        """cof_j(NU): minors of the scalar rows, over the normalizer."""
        if self._cof is None:
            rows, dens = self._block(self.m + 1, 1, 1, -2)
            norm = self.normalizer()
            out = []
            for j in range(self.m + 1):
                minor = [r[:j] + r[j + 1:] for r in rows]
                den = norm
                for c, d in enumerate(dens):
                    if c != j:
                        den = den * d
                out.append(RatFunc(polymat_det(minor), den))
            self._cof = out
        return self._cof

    @cached_property
    def omega_ratfunc(self) -> RatFunc:
        if self.m == 0:
            return RatFunc(Poly.const(1))
        rows, dens = self._block(self.m, 0, 0, -1)
        den = self.normalizer()
        for d in dens:
            den = den * d
        return RatFunc(polymat_det(rows), den)

    def omega(self, n: int) -> Fraction:
        try:
            return self.omega_ratfunc(n)
        except ZeroDivisionError as exc:
            raise DegenerateParameter(f"Omega has a pole at n={n}") from exc

    def poly(self, n: int) -> Poly:
        if n in self._cache:
            return self._cache[n]
        p = HahnParams(self.a, self.b, self.Nt)
        total = Poly()
        for j, cof in enumerate(self.cofactors()):
            if n - j < 0:
                continue
            try:
                c = cof(n)
            except ZeroDivisionError as exc:
                raise DegenerateParameter(f"normalized cofactor {j} has a pole at n={n}") from exc
            if c:
                total = total + hahn(n - j, p).shift(-self.shift) * c
        self._cache[n] = total
        return total

    def hypothesis_ok(self) -> bool:
        """Omega(n) != 0 for n = 0..top+1."""
        return all(self.omega(n) != 0 for n in range(self.top + 2))


def _mirror(spec: QuartetSpec) -> QuartetSpec:
    return QuartetSpec(spec.F2, spec.F1, spec.F4, spec.F3, spec.b_hat, spec.a_hat, spec.N)


def _one_sided_masses(spec: QuartetSpec) -> list[Fraction]:
    """Masses with a_hat a negative integer and b_hat not, Gamma(b_hat+1) divided out."""
    N, bh = spec.N, spec.b_hat
    u = int(-spec.a_hat - 1)
    if not contains_lattice(u, spec.F4, spec.F2):
        raise NotRepresentable("the containment condition for a_hat fails")
    H = hset(u, spec.F4, spec.F2)
    out = []
    for x in range(N + 1):
        if x in spec.F4:
            out.append(Fraction(0))
            continue
        v = pochhammer(bh + 1, N - x) / factorial(N - x)
        for h in H:
            v *= x - h
        for f in spec.F1:
            v *= N - x + bh + 1 + f
        for f in spec.F3:
            v *= N - f - x
        out.append(v)
    return out


def nu_hahn(spec: QuartetSpec) -> DiscreteMeasure:
    """The orthogonality measure on {0..N} for the three sign configurations."""
    N = spec.N
    a_neg, b_neg = _is_negative_int(spec.a_hat), _is_negative_int(spec.b_hat)
    if a_neg and not b_neg:
        table = _one_sided_masses(spec)
    elif b_neg and not a_neg:
        table = _one_sided_masses(_mirror(spec))[::-1]
    elif a_neg and b_neg:
        ua, ub = int(-spec.a_hat - 1), int(-spec.b_hat - 1)
        if not (contains_lattice(ua, spec.F4, spec.F2) and contains_lattice(ub, spec.F3, spec.F1)):
            raise NotRepresentable("a containment condition fails")
        Hp, Hi = hset(ua, spec.F4, spec.F2), hset(ub, spec.F3, spec.F1)
        table = []
        for x in range(N + 1):
            if x in spec.F4 or (N - x) in spec.F3:
                table.append(Fraction(0))
                continue
            v = Fraction(1)
            for h in Hp:
                v *= x - h
            for h in Hi:
                v *= N - x - h
            table.append(v)
    else:
        raise NotRepresentable("at least one of a_hat, b_hat must be a negative integer")
    return DiscreteMeasure(table=tuple(table), label=f"nu_hahn({spec.to_json()})")


# deleted mass points ----------------------------------------------------------


def _deletion_sets(A, c: int) -> tuple[Fraction, tuple]:
    """(hat parameter, companion set) representing removal of A from (x+1)_c / x!."""
    A = fset(A)
    u = max(A)
    X = [u - p for p in range(1, u + 1) if p not in A]
    if 0 not in A:
        X.append(u)
    Y = [u + i for i in range(1, c + 1)]
    return Fraction(-u - 1), fset(X + Y)


def deleted_mass_quartet(A, c: int, d: ScalarLike, N: int, B=()) -> QuartetSpec:
    """Quartet whose measure is the Hahn measure rho_{c,d,N} with masses at A (and N-B) removed."""
    A, B = fset(A), fset(B)
    if not A:
        raise ValueError("A must be nonempty")
    if int(c) != c or c < 0:
        raise ValueError("c must be a nonnegative integer")
    a_hat, F2 = _deletion_sets(A, int(c))
    if not B:
        return QuartetSpec((), F2, (), A, a_hat, d, N)
    d = frac(d)
    if d.denominator != 1 or d < 0:
        raise ValueError("two-sided deletion needs a nonnegative integer d")
    b_hat, F1 = _deletion_sets(B, int(d))
    return QuartetSpec(F1, F2, B, A, a_hat, b_hat, N)


def deleted_hahn_masses(A, c: int, d: ScalarLike, N: int, B=()) -> list[Fraction]:
    """Hahn masses (x+1)_c (d+1)_{N-x} / (N-x)! with the points of A and N-B removed."""
    d = frac(d)
    return [
        Fraction(0) if x in A or (N - x) in B
        else pochhammer(x + 1, int(c)) * pochhammer(d + 1, N - x) / factorial(N - x)
        for x in range(N + 1)
    ]


def proportional(u: list[Fraction], v: list[Fraction]) -> Optional[Fraction]:
    """The constant k with u == k v, or None."""
    k = None
    for p, q in zip(u, v):
        if (p == 0) != (q == 0):
            return None
        if q:
            r = p / q
            if k is None:
                k = r
            elif r != k:
                return None
    return k


# verification -----------------------------------------------------------------


@dataclass
class HahnGram:
    indices: list
    degrees: dict
    diagonal: dict
    offdiagonal: dict = field(default_factory=dict)  # only nonzero entries are kept

    @property
    def ok(self) -> bool:
        return (
            not self.offdiagonal
            and all(self.degrees[n] == n for n in self.indices)
            and all(v != 0 for v in self.diagonal.values())
        )

    @property
    def positive(self) -> bool:
        return all(v > 0 for v in self.diagonal.values())


def hahn_orthogonality_check(fam: KrallHahnFamily, mu: Optional[DiscreteMeasure] = None, n_max: Optional[int] = None) -> HahnGram:
    mu = mu or nu_hahn(fam.spec)
    top = fam.top if n_max is None else min(n_max, fam.top)
    idx = list(range(top + 1))
    polys = {n: fam.poly(n) for n in idx}
    rep = HahnGram(idx, {n: polys[n].degree for n in idx}, {})
    for i in idx:
        for j in idx[i:]:
            v = inner_product_exact(mu, polys[i], polys[j])
            if i == j:
                rep.diagonal[i] = v
            elif v:
                rep.offdiagonal[(i, j)] = v
    return rep


def mirror_check(spec: QuartetSpec) -> bool:
    """Swapping the two sides and reflecting x -> N-x maps one measure onto the other."""
    return list(nu_hahn(_mirror(spec)).table) == list(nu_hahn(spec).table)[::-1]
