"""Exact rational scalars, dense univariate polynomials, rational functions and
polynomial determinants.

Everything here works over ``fractions.Fraction``; nothing is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


class DimensionError(ValueError):
    pass


def frac(value: ScalarLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: ScalarLike) -> str:
    q = frac(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pochhammer(q: ScalarLike, n: int) -> Fraction:
    """Rising factorial q(q+1)...(q+n-1); 1 when n == 0."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    q = frac(q)
    out = Fraction(1)
    for i in range(n):
        out *= q + i
        if not out:
            break
    return out


def binom_scalar(z: ScalarLike, k: int) -> Fraction:
    """Generalised binomial coefficient z(z-1)...(z-k+1)/k!, 0 for k < 0."""
    if k < 0:
        return Fraction(0)
    z = frac(z)
    out = Fraction(1)
    for i in range(k):
        out *= z - i
    return out / factorial(k)


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c: ScalarLike) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def linear(cls, shift: ScalarLike, scale: ScalarLike = 1) -> Poly:
        """scale*x + shift."""
        return cls([shift, scale])

    @classmethod
    def from_roots(cls, roots: Iterable[ScalarLike], lead: ScalarLike = 1) -> Poly:
        out = cls.const(lead)
        for r in roots:
            out = out * cls([-frac(r), 1])
        return out

    @classmethod
    def from_json(cls, data: Sequence[ScalarLike]) -> Poly:
        return cls(frac(c) for c in data)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = format_rational(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = frac(other)
            return Poly(c * a for a in self.coeffs) if c else Poly()
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> Poly:
        if isinstance(other, Poly):
            return self.exact_div(other)
        c = frac(other)
        return Poly(a / c for a in self.coeffs)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        oc = other.coeffs
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c:
                quo[i - dq] = c
                for j in range(dq + 1):
                    rem[i - dq + j] -= c * oc[j]
        return Poly(quo), Poly(rem[:dq])

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self / self.lc

    # evaluation and transforms
    def __call__(self, v):
        if isinstance(v, Poly):
            return self.compose(v)
        v = frac(v)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def eval_float(self, v):
        """Horner evaluation for non-rational arguments (mpf, float)."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def compose(self, inner: Poly) -> Poly:
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def shift(self, l: ScalarLike) -> Poly:
        """q(x) = p(x + l), via the Taylor shift."""
        l = frac(l)
        if not l or len(self.coeffs) < 2:
            return self
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += l * cs[j + 1]
        return Poly(cs)

    def scale_x(self, s: ScalarLike) -> Poly:
        """q(x) = p(s*x)."""
        s = frac(s)
        out, power = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * power)
            power *= s
        return Poly(out)

    def derivative(self, k: int = 1) -> Poly:
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Poly(cs)

    def content(self) -> Fraction:
        """Positive rational c with p/c primitive integral."""
        from math import gcd, lcm

        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> Poly:
        if not self.coeffs:
            return self
        p = self / self.content()
        return -p if p.lc < 0 else p


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while q:
        p, q = q, (p % q).primitive()
    return p.monic()


def poly_shift(p: Poly, l: int) -> Poly:
    return p.shift(l)


def poly_derivative(p: Poly, k: int) -> Poly:
    return p.derivative(k)


def falling_poly(x: Poly, j: int) -> Poly:
    """x(x-1)...(x-j+1) for a polynomial argument."""
    out = Poly.const(1)
    for i in range(j):
        out = out * (x - i)
    return out


def rising_poly(x: Poly, j: int) -> Poly:
    """(x)_j = x(x+1)...(x+j-1) for a polynomial argument."""
    out = Poly.const(1)
    for i in range(j):
        out = out * (x + i)
    return out


def binom_poly(x: Poly, j: int) -> Poly:
    """binomial(x, j) with a polynomial top argument; zero for j < 0."""
    if j < 0:
        return Poly()
    return falling_poly(x, j) / factorial(j)


class RatFunc:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lead = den.lc
        self.num, self.den = num / lead, den / lead

    @classmethod
    def coerce(cls, v) -> RatFunc:
        if isinstance(v, RatFunc):
            return v
        return cls(v)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RatFunc, Poly, int, Fraction)):
            return NotImplemented
        other = RatFunc.coerce(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_poly():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    __str__ = __repr__

    def __add__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> RatFunc:
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> RatFunc:
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) / self

    def __call__(self, v):
        d = self.den(v)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {v}")
        return self.num(v) / d

    def shift(self, l: ScalarLike) -> RatFunc:
        return RatFunc(self.num.shift(l), self.den.shift(l), reduced=True)

    def derivative(self) -> RatFunc:
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def delta(self) -> RatFunc:
        """Forward difference f(x+1) - f(x)."""
        return self.shift(1) - self


class PolyMatrix:
    """Rectangular grid of Poly entries; scalars are promoted."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[e if isinstance(e, Poly) else Poly.const(e) for e in row] for row in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise DimensionError("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else 0

    def det(self) -> Poly:
        return polymat_det(self)


def _entries_scalar(rows) -> bool:
    return all(e.degree <= 0 for row in rows for e in row)


def det_scalar(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Gaussian elimination over Q."""
    m = [[frac(e) for e in row] for row in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of a non-square matrix")
    sign = 1
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        out *= pk
        for i in range(k + 1, n):
            f = m[i][k]
            if f:
                f /= pk
                ri, rk = m[i], m[k]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return sign * out


def det_leibniz(rows: Sequence[Sequence]) -> Poly:
    """Permutation-sum determinant; only for small test oracles."""
    n = len(rows)
    total = Poly()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.const(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            e = rows[i][j]
            term = term * (e if isinstance(e, Poly) else Poly.const(e))
            if not term:
                break
        total = total + term
    return total


def _det_cofactor(rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly()
    for j, e in enumerate(rows[0]):
        if not e:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = e * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows: list[list[Poly]]) -> Poly:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Poly()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pk * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
        prev = pk
    return m[n - 1][n - 1] * sign


def polymat_det(M) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion below size 5, fraction-free Bareiss elimination
    above; all-constant matrices go through plain Gaussian elimination.
    """
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M)
    if M.nrows != M.ncols:
        raise DimensionError(f"determinant of a {M.nrows}x{M.ncols} matrix")
    if M.nrows == 0:
        return Poly.const(1)
    if _entries_scalar(M.rows):
        return Poly.const(det_scalar([[e.coeff(0) for e in r] for r in M.rows]))
    if M.nrows < 5:
        return _det_cofactor(M.rows)
    return _det_bareiss(M.rows)


def expand_first_row(first: Sequence[Poly], rest: Sequence[Sequence[Fraction]]) -> Poly:
    """Determinant whose first row holds polynomials and remaining rows scalars.

    Expands along the first row so only scalar minors are needed.
    """
    n = len(first)
    if any(len(r) != n for r in rest) or len(rest) != n - 1:
        raise DimensionError("expected an (m+1)x(m+1) layout")
    total = Poly()
    for j, e in enumerate(first):
        if not e:
            continue
        minor = [r[:j] + r[j + 1:] for r in rest]
        c = det_scalar(minor) if minor else Fraction(1)
        if c:
            total = total + e * (c if j % 2 == 0 else -c)
    return total


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix (reduced row echelon)."""
    m = [[frac(e) for e in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                m[i] = [a - f * b for a, b in zip(mi, mr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def primitive_vector(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    from math import gcd, lcm

    den = 1
    for e in v:
        den = lcm(den, e.denominator)
    ints = [int(e * den) for e in v]
    g = 0
    for e in ints:
        g = gcd(g, e)
    if g == 0:
        return [Fraction(0)] * len(v)
    lead = next(e for e in ints if e)
    s = g if lead > 0 else -g
    return [Fraction(e, s) for e in ints]


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)
