"""Recovering banded difference operators sum_l h_l(x) p(x+l) that have a given
polynomial family as eigenfunctions, by exact linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Poly, format_rational, frac, nullspace, primitive_vector


@dataclass(frozen=True)
class BandedDifferenceOperator:
    r: int
    coeffs: dict  # l -> Poly, for l in -r..r

    def __post_init__(self):
        full = {l: self.coeffs.get(l, Poly()) for l in range(-self.r, self.r + 1)}
        object.__setattr__(self, "coeffs", full)

    @classmethod
    def identity(cls, r: int = 0) -> "BandedDifferenceOperator":
        return cls(r, {0: Poly.const(1)})

    def __call__(self, p: Poly) -> Poly:
        return apply_operator(self, p)

    def is_zero(self) -> bool:
        return all(h.is_zero() for h in self.coeffs.values())

    def is_identity_multiple(self) -> bool:
        return all(h.is_zero() for l, h in self.coeffs.items() if l) and self.coeffs[0].degree <= 0

    @property
    def effective_radius(self) -> int:
        nz = [abs(l) for l, h in self.coeffs.items() if not h.is_zero()]
        return max(nz, default=0)

    def eigenvalue(self, p: Poly) -> Fraction:
        return apply_operator(self, p).coeff(p.degree) / p.lc

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": {str(l): self.coeffs[l].to_json() for l in range(-self.r, self.r + 1)}}

    @classmethod
    def from_json(cls, data: dict) -> "BandedDifferenceOperator":
        return cls(int(data["r"]), {int(l): Poly.from_json(c) for l, c in data["coeffs"].items()})


def apply_operator(L: BandedDifferenceOperator, p: Poly) -> Poly:
    out = Poly()
    for l, h in L.coeffs.items():
        if not h.is_zero():
            out = out + h * p.shift(l)
    return out


def _check_family(polys: Sequence[Poly]) -> None:
    if not polys:
        raise ValueError("need at least one polynomial")
    degs = [p.degree for p in polys]
    if any(d < 0 for d in degs) or any(b <= a for a, b in zip(degs, degs[1:])):
        raise ValueError(f"degrees must be nonnegative and strictly increasing, got {degs}")


def _equations(polys: Sequence[Poly], r: int, D: int) -> list[list[Fraction]]:
    """Rows of the homogeneous system; one unknown per coefficient of each h_l."""
    ncols = (2 * r + 1) * (D + 1)
    rows = []
    for p in polys:
        n = p.degree
        # images of the basis operators x^i Sh_l
        images = []
        for l in range(-r, r + 1):
            ps = p.shift(l)
            for i in range(D + 1):
                images.append(ps * Poly([0] * i + [1]))
        top = n + D
        lead = [img.coeff(n) / p.lc for img in images]
        for k in range(top + 1):
            if k == n:
                continue
            pk = p.coeff(k)
            row = [img.coeff(k) - pk * lam for img, lam in zip(images, lead)]
            if any(row):
                rows.append(row)
    assert all(len(r_) == ncols for r_ in rows)
    return rows


def _vector_to_operator(v: Sequence[Fraction], r: int, D: int) -> BandedDifferenceOperator:
    coeffs = {}
    for idx, l in enumerate(range(-r, r + 1)):
        coeffs[l] = Poly(v[idx * (D + 1):(idx + 1) * (D + 1)])
    return BandedDifferenceOperator(r, coeffs)


def solution_space(polys: Sequence[Poly], r: int, D: int) -> list[list[Fraction]]:
    _check_family(polys)
    ncols = (2 * r + 1) * (D + 1)
    return nullspace(_equations(polys, r, D), ncols)


def find_operator(polys: Sequence[Poly], r: int, D: int) -> list[BandedDifferenceOperator]:
    """Basis (primitive integer form) of operators with band radius <= r and deg h_l <= D."""
    return [_vector_to_operator(primitive_vector(v), r, D) for v in solution_space(polys, r, D)]


@dataclass
class OperatorSearch:
    r: int
    D: int
    fitted: int
    extra: int
    dimension: int
    dimension_with_extra: int
    operator: Optional[BandedDifferenceOperator] = None
    eigenvalues: list = field(default_factory=list)

    @property
    def nontrivial(self) -> bool:
        return self.operator is not None

    @property
    def out_of_sample_ok(self) -> bool:
        """Members held out of the fit impose no new constraint."""
        return self.dimension == self.dimension_with_extra

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "D": self.D,
            "fitted": self.fitted,
            "extra": self.extra,
            "dimension": self.dimension,
            "dimension_with_extra": self.dimension_with_extra,
            "out_of_sample_ok": self.out_of_sample_ok,
            "operator": self.operator.to_json() if self.operator else None,
            "eigenvalues": [format_rational(v) for v in self.eigenvalues],
        }


def _non_identity(basis: list[BandedDifferenceOperator], D: int) -> Optional[BandedDifferenceOperator]:
    """The widest basis element outside the span of the identity, with h_0(0) = 0 and primitive coefficients."""
    for L in sorted(basis, key=lambda op: -op.effective_radius):
        if L.is_identity_multiple():
            continue
        coeffs = dict(L.coeffs)
        coeffs[0] = coeffs[0] - coeffs[0].coeff(0)
        v = [coeffs[l].coeff(i) for l in range(-L.r, L.r + 1) for i in range(D + 1)]
        return _vector_to_operator(primitive_vector(v), L.r, D)
    return None


def search_operator(polys: Sequence[Poly], r: int, D: int, extra: int = 2) -> OperatorSearch:
    """Fit on all but the last ``extra`` members, then confirm on those."""
    if extra >= len(polys):
        raise ValueError("not enough members left to fit")
    fit = list(polys[: len(polys) - extra])
    space = solution_space(fit, r, D)
    full = solution_space(polys, r, D) if extra else space
    basis = [_vector_to_operator(primitive_vector(v), r, D) for v in full]
    rep = OperatorSearch(r, D, len(fit), extra, len(space), len(full))
    L = _non_identity(basis, D)
    if L is not None:
        rep.operator = L
        rep.eigenvalues = [L.eigenvalue(p) for p in polys]
    return rep


@dataclass
class EigenCheck:
    eigenvalues: list
    failures: list  # indices whose eigen-relation fails

    @property
    def ok(self) -> bool:
        return not self.failures


def eigencheck_operator(L: BandedDifferenceOperator, polys: Sequence[Poly]) -> EigenCheck:
    lams, bad = [], []
    for i, p in enumerate(polys):
        lam = L.eigenvalue(p)
        lams.append(lam)
        if apply_operator(L, p) != p * lam:
            bad.append(i)
    return EigenCheck(lams, bad)


def eigenvalue_fit_degree(lams: Sequence[Fraction]) -> int:
    """Degree of the interpolating polynomial through (n, lambda_n), via finite differences."""
    diffs = [frac(v) for v in lams]
    deg = -1
    for k in range(len(diffs)):
        if any(diffs):
            deg = k
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if not diffs:
            break
    return deg


def search_ladder(polys: Sequence[Poly], r: int, degrees: Sequence[int], extra: int = 2) -> OperatorSearch:
    """Try each degree cap in turn; the first confirmed nontrivial result wins, else the last attempt."""
    rep = None
    for D in degrees:
        rep = search_operator(polys, r, D, extra)
        if rep.nontrivial and rep.out_of_sample_ok:
            return rep
    if rep is None:
        raise ValueError("empty degree ladder")
    return rep
