"""Finite-set combinatorics on index sets of nonnegative integers.

Sets are plain sorted tuples of ints.  Empty sets follow the convention
max(()) = min(()) = -1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exact import binomial, frac, format_rational

FiniteSet = tuple[int, ...]


class NotRepresentable(ValueError):
    """A pair/quartet does not satisfy the containment condition it needs."""


def fset(items: Iterable[int] = ()) -> FiniteSet:
    return tuple(sorted(set(int(i) for i in items)))


def smax(F: Iterable[int]) -> int:
    F = tuple(F)
    return max(F) if F else -1


def involution_I(F: Iterable[int]) -> FiniteSet:
    F = fset(F)
    if not F:
        return ()
    top = F[-1]
    drop = {top - f for f in F}
    return tuple(i for i in range(1, top + 1) if i not in drop)


def s_of(F: Iterable[int]) -> int:
    F = tuple(f for f in fset(F) if f != 0)
    if not F:
        return 1
    if F == tuple(range(1, len(F) + 1)):
        return len(F) + 1
    # F[s-1] is the s-th element
    return next(s for s in range(1, len(F) + 1) if s < F[s - 1])


def downarrow(F: Iterable[int]) -> FiniteSet:
    F = tuple(f for f in fset(F) if f != 0)
    if not F or F == tuple(range(1, len(F) + 1)):
        return ()
    s = s_of(F)
    return tuple(f - s for f in F[s - 1:])


def reconstruct(F: Iterable[int]) -> FiniteSet:
    """Rebuild F from s_F and F_down; the identity F == reconstruct(F) always holds."""
    F = fset(F)
    s = s_of(F)
    head = range(0 if 0 in F else 1, s)
    return fset(list(head) + [s + f for f in downarrow(F)])


def vandermonde(F: Iterable[int]) -> int:
    F = fset(F)
    out = 1
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            out *= F[j] - F[i]
    return out


def hset(u: int, I: Iterable[int], J: Iterable[int]) -> FiniteSet:
    """[[I | (u - J)] minus {0..u}] | [I & (u - J)]."""
    I = set(I)
    uJ = {u - j for j in J}
    low = set(range(0, u + 1))
    return fset(((I | uJ) - low) | (I & uJ))


def contains_lattice(u: int, I: Iterable[int], J: Iterable[int]) -> bool:
    """{0, ..., u} subset of I | (u - J)."""
    cover = set(I) | {u - j for j in J}
    return all(i in cover for i in range(0, u + 1))


def u_of(F1: Iterable[int], F2: Iterable[int]) -> int:
    F1, F2 = fset(F1), fset(F2)
    return sum(F1) + sum(F2) - binomial(len(F1) + 1, 2) - binomial(len(F2), 2)


def sigma_of(F1: Iterable[int], F2: Iterable[int], n_max: int) -> list[int]:
    u = u_of(F1, F2)
    gaps = {u + f for f in F1}
    return [n for n in range(u, n_max + 1) if n not in gaps]


@dataclass(frozen=True)
class PairSpec:
    """A pair (F1, F2) with Meixner parameter a and the (possibly integer) c_hat."""

    F1: FiniteSet
    F2: FiniteSet
    a: Fraction = Fraction(1, 2)
    c_hat: Fraction = Fraction(-1)

    def __post_init__(self):
        object.__setattr__(self, "F1", fset(self.F1))
        object.__setattr__(self, "F2", fset(self.F2))
        object.__setattr__(self, "a", frac(self.a))
        object.__setattr__(self, "c_hat", frac(self.c_hat))
        if any(f < 0 for f in self.F1 + self.F2):
            raise ValueError("sets must hold nonnegative integers")

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

    @property
    def integral_c(self) -> bool:
        return self.c_hat.denominator == 1

    @property
    def H(self) -> FiniteSet:
        return hset(-int(self.c_hat), self.F1, self.F2)

    def sigma(self, n_max: int) -> list[int]:
        return sigma_of(self.F1, self.F2, n_max)

    def satisfies_hf2(self) -> bool:
        if not self.integral_c or self.c_hat > 0:
            return False
        return contains_lattice(-int(self.c_hat), self.F1, self.F2)

    def is_canonical(self) -> bool:
        return self.c_hat <= -1 and 0 not in self.F1 and 0 not in self.F2

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "c_hat": format_rational(self.c_hat),
            "F1": list(self.F1),
            "F2": list(self.F2),
        }


@dataclass(frozen=True)
class QuartetSpec:
    """Four index sets plus Hahn parameters a_hat, b_hat and the support size N."""

    F1: FiniteSet
    F2: FiniteSet
    F3: FiniteSet
    F4: FiniteSet
    a_hat: Fraction
    b_hat: Fraction
    N: int

    def __post_init__(self):
        for name in ("F1", "F2", "F3", "F4"):
            object.__setattr__(self, name, fset(getattr(self, name)))
        object.__setattr__(self, "a_hat", frac(self.a_hat))
        object.__setattr__(self, "b_hat", frac(self.b_hat))
        if self.N < 1:
            raise ValueError("N must be a positive integer")

    @property
    def sets(self) -> tuple[FiniteSet, FiniteSet, FiniteSet, FiniteSet]:
        return (self.F1, self.F2, self.F3, self.F4)

    def to_json(self) -> dict:
        return {
            "a_hat": format_rational(self.a_hat),
            "b_hat": format_rational(self.b_hat),
            "N": self.N,
            "F1": list(self.F1),
            "F2": list(self.F2),
            "F3": list(self.F3),
            "F4": list(self.F4),
        }


@dataclass(frozen=True)
class NormalizedPair:
    """Result of normalize_pair.

    ``kind`` is "nu" when the canonical measure is nu^a_{c';U} with c' <= -1,
    or "christoffel" when it is the Christoffel transform rho^U_{a,d} with a
    positive integer d (stored in spec.c_hat).  The original measure equals
    a**scale_exp times the canonical one translated by ``shift``, where the
    Christoffel form keeps the raw Gamma(x+d)/x! factor.
    """

    kind: str
    spec: PairSpec
    shift: int
    scale_exp: int
    steps: tuple[str, ...] = field(default=())


def _remp(spec: PairSpec, shift: int, exp: int, steps: list[str]) -> NormalizedPair:
    F1, F2, a = spec.F1, spec.F2, spec.a
    if 0 in F1:
        s1 = s_of(F1)
        U1 = downarrow(F1)
        if 0 not in F2:
            U2, d = F2, s1
        else:
            U2, d = downarrow(F2), s1 + s_of(F2)
        steps.append(f"remp: 0 in F1, s={s1}, d={d}")
        return NormalizedPair("christoffel", PairSpec(U1, U2, a, d), shift + s1, exp + s1, tuple(steps))
    s2 = s_of(F2)
    steps.append(f"remp: 0 in F2 only, d={s2}")
    return NormalizedPair("christoffel", PairSpec(F1, downarrow(F2), a, s2), shift, exp, tuple(steps))


def normalize_pair(spec: PairSpec) -> NormalizedPair:
    """Bring (c_hat, F) to canonical form, chaining both reductions as needed."""
    if not spec.satisfies_hf2():
        raise NotRepresentable(
            f"{{0..{-spec.c_hat}}} is not contained in F1 | (-c_hat - F2) for {spec.to_json()}"
        )
    shift, exp = 0, 0
    steps: list[str] = []
    cur = spec
    while True:
        if cur.c_hat == 0:
            return _remp(cur, shift, exp, steps)
        if cur.is_canonical():
            return NormalizedPair("nu", cur, shift, exp, tuple(steps))
        c = int(cur.c_hat)
        F1, F2, a = cur.F1, cur.F2, cur.a
        if 0 in F1:
            s1 = s_of(F1)
            if s1 <= -c:
                steps.append(f"rems: 0 in F1, s={s1} <= {-c}")
                cur = PairSpec(downarrow(F1), F2, a, c + s1)
                shift, exp = shift + s1, exp + s1
            else:
                steps.append(f"rems: 0 in F1, s={s1} > {-c}")
                U1 = fset(list(range(0, s1 + c)) + [s1 + c + f for f in downarrow(F1)])
                cur = PairSpec(U1, F2, a, 0)
                shift, exp = shift - c, exp - c
        else:
            s2 = s_of(F2)
            if s2 <= -c:
                steps.append(f"rems: 0 in F2, s={s2} <= {-c}")
                cur = PairSpec(F1, downarrow(F2), a, c + s2)
            else:
                steps.append(f"rems: 0 in F2, s={s2} > {-c}")
                U2 = fset(list(range(0, s2 + c)) + [s2 + c + f for f in downarrow(F2)])
                cur = PairSpec(F1, U2, a, 0)
