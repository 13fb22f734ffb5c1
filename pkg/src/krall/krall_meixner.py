"""Krall-Meixner families: Christoffel transforms of the Meixner weight with a
nonpositive integer parameter and the polynomials orthogonal to them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Optional

import mpmath

from .classical import DegenerateParameter, meixner
from .exact import Poly, expand_first_row, frac, polymat_det, pochhammer, rising_poly
from .measures import DiscreteMeasure, inner_product_exact
from .roots import count_real_roots, root_bound
from .sets import (
    NormalizedPair,
    NotRepresentable,
    PairSpec,
    fset,
    involution_I,
    normalize_pair,
    smax,
)

X = Poly.x()


class DegenerateFamily(ValueError):
    pass


def omega_meixner(F1, F2, a, c) -> Poly:
    """Casorati determinant of Meixner polynomials indexed by F1 and (1/a) F2."""
    a, c = frac(a), frac(c)
    F1, F2 = fset(F1), fset(F2)
    k = len(F1) + len(F2)
    rows = [[meixner(f, a, c).shift(j) for j in range(k)] for f in F1]
    rows += [[meixner(f, 1 / a, c).shift(j) / a**j for j in range(k)] for f in F2]
    return polymat_det(rows)


def omega_degree(F1, F2) -> int:
    F1, F2 = fset(F1), fset(F2)
    return sum(F1) + sum(F2) - len(F1) * (len(F1) - 1) // 2 - len(F2) * (len(F2) - 1) // 2


def band_radius(*sets) -> int:
    """1 + sum_i (sum F_i - C(k_i, 2)), the order parameter of the higher-order operator."""
    return 1 + sum(sum(F) - len(F) * (len(F) - 1) // 2 for F in sets)


def _gamma_ratio_poly(d: int) -> Poly:
    # Gamma(x+d)/x! for a positive integer d
    return rising_poly(X + 1, d - 1)


def christoffel_meixner_measure(a, d, F1=(), F2=(), normalized: bool = True) -> DiscreteMeasure:
    """Masses prod(x-f) prod(x+d+f) a^x Gamma(x+d)/x!.

    With ``normalized`` the constant Gamma(d) is divided out; otherwise the
    raw Gamma(x+d)/x! factor is kept (exactly rational for integer d).
    """
    a, d = frac(a), frac(d)
    if d.denominator == 1 and d <= 0:
        raise DegenerateParameter(f"d = {d} is a nonpositive integer; use nu_measure")
    poly = Poly.from_roots(list(fset(F1)) + [-d - f for f in fset(F2)])
    label = f"rho(a={a}, d={d}, F=({list(F1)},{list(F2)}))"
    if d.denominator == 1:
        w = poly * _gamma_ratio_poly(int(d))
        if normalized:
            w = w / factorial(int(d) - 1)
        return DiscreteMeasure(a=a, weight=w, label=label)
    if normalized:
        return DiscreteMeasure(a=a, weight=poly, factor=lambda x, d=d: pochhammer(d, x) / factorial(x), label=label)
    raise NotImplementedError("raw Gamma factors for non-integer d are not rational; use christoffel_mass_mp")


def christoffel_mass_mp(a, d, F1, F2, x: int):
    """Raw mass of rho^F_{a,d} at x as an mpmath number (any real non-pole d)."""
    a = mpmath.mpf(frac(a).numerator) / frac(a).denominator
    d = mpmath.mpf(frac(d).numerator) / frac(d).denominator if not isinstance(d, mpmath.mpf) else d
    out = a**x * mpmath.gamma(x + d) / mpmath.factorial(x)
    for f in F1:
        out *= x - f
    for f in F2:
        out *= x + d + f
    return out


def nu_mass(spec: PairSpec, x: int) -> Fraction:
    """prod_{h in H}(x-h) a^x off F1; zero on F1 and at negative x."""
    if x < 0 or x in spec.F1:
        return Fraction(0)
    out = spec.a**x
    for h in spec.H:
        out *= x - h
    return out


def nu_measure(spec: PairSpec) -> DiscreteMeasure:
    if not spec.satisfies_hf2():
        raise NotRepresentable(f"containment condition fails for {spec.to_json()}")
    return DiscreteMeasure(
        a=spec.a,
        weight=Poly.from_roots(spec.H),
        excluded=frozenset(spec.F1),
        label=f"nu(a={spec.a}, c_hat={spec.c_hat}, F=({list(spec.F1)},{list(spec.F2)}))",
    )


def canonical_mass(np_: NormalizedPair, y: int) -> Fraction:
    if y < 0:
        return Fraction(0)
    s = np_.spec
    if np_.kind == "nu":
        return nu_mass(s, y)
    d = int(s.c_hat)
    out = s.a**y * _gamma_ratio_poly(d)(y)
    for f in s.F1:
        out *= y - f
    for f in s.F2:
        out *= y + d + f
    return out


def normalization_mismatches(spec: PairSpec, x_max: int = 50) -> list[int]:
    """Points where the original measure differs from the renormalized canonical one."""
    np_ = normalize_pair(spec)
    bad = []
    for x in range(x_max + 1):
        lhs = nu_mass(spec, x)
        rhs = spec.a**np_.scale_exp * canonical_mass(np_, x - np_.shift)
        if lhs != rhs:
            bad.append(x)
    return bad


def removed_points_pair(A, d: int, a=Fraction(1, 2)) -> PairSpec:
    """Pair representing the Meixner weight Gamma(x+d)/x! a^x with the masses at A removed."""
    A = fset(A)
    if not A or d < 1:
        raise ValueError("need a nonempty A and a positive integer d")
    top = A[-1]
    Ac = [b for b in range(1, top + 1) if b not in A]
    Xs = [top - b for b in Ac] + ([] if 0 in A else [top])
    Ys = [top + i for i in range(1, d)]
    return PairSpec(A, fset(Xs + Ys), a, -top)


def rm1_premise(spec: PairSpec) -> dict:
    """The contradiction in the never-Christoffel argument needs -c_hat in H; report both facts."""
    t = -int(spec.c_hat)
    return {"minus_c_in_F1": t in spec.F1, "minus_c_in_H": t in spec.H}


@dataclass
class KrallMeixnerFamily:
    spec: PairSpec

    def __post_init__(self):
        s = self.spec
        if not s.integral_c or s.c_hat > -1:
            raise NotRepresentable("Krall-Meixner families need c_hat in {-1,-2,...}")
        if 0 in s.F1 or 0 in s.F2:
            raise NotRepresentable("sets must hold positive integers; normalize the pair first")
        if not s.satisfies_hf2():
            raise NotRepresentable(f"containment condition fails for {s.to_json()}")
        self._polys: dict[int, Poly] = {}

    @property
    def a(self) -> Fraction:
        return self.spec.a

    @property
    def c(self) -> int:
        s = self.spec
        return int(s.c_hat) + smax(s.F1) + smax(s.F2) + 2

    @property
    def G1(self):
        return involution_I(self.spec.F1)

    @property
    def G2(self):
        return involution_I(self.spec.F2)

    @property
    def m(self) -> int:
        return len(self.G1) + len(self.G2)

    @property
    def H(self):
        return self.spec.H

    @cached_property
    def omega(self) -> Poly:
        return omega_meixner(self.spec.F1, self.spec.F2, self.a, self.spec.c_hat)

    @property
    def r(self) -> int:
        return band_radius(self.spec.F1, self.spec.F2)

    def measure(self) -> DiscreteMeasure:
        return nu_measure(self.spec)

    def scalar_rows(self, n: int) -> list[list[Fraction]]:
        a, c, m = self.a, self.c, self.m
        rows = [[meixner(g, a, 2 - c)(-n + j - 1) for j in range(m + 1)] for g in self.G1]
        rows += [[meixner(g, 1 / a, 2 - c)(-n + j - 1) / a**j for j in range(m + 1)] for g in self.G2]
        return rows

    def poly(self, n: int) -> Poly:
        if n in self._polys:
            return self._polys[n]
        if not self.omega(n):
            raise DegenerateFamily(f"Omega vanishes at n={n}; q_{n} has degree below {n}")
        a, c, m = self.a, self.c, self.m
        shift = -smax(self.spec.F1) - 1
        first = [meixner(n - j, a, c).shift(shift) / (a - 1) ** j for j in range(m + 1)]
        p = expand_first_row(first, self.scalar_rows(n))
        if p.degree != n:
            raise DegenerateFamily(f"q_{n} has degree {p.degree}")
        self._polys[n] = p
        return p

    def norm_reference(self, n: int) -> Fraction:
        """a^n (n+k+c_hat-1)! Omega(n) Omega(n+1) / ((1-a)^(2n+c_hat) n!)."""
        a, ch, k = self.a, int(self.spec.c_hat), self.spec.k
        return a**n * factorial(n + k + ch - 1) * self.omega(n) * self.omega(n + 1) / ((1 - a) ** (2 * n + ch) * factorial(n))


def orthogonality_defects(fam: KrallMeixnerFamily, n_max: int) -> list[tuple[int, int, Fraction]]:
    mu = fam.measure()
    qs = [fam.poly(n) for n in range(n_max + 1)]
    out = []
    for i in range(n_max + 1):
        for j in range(i + 1, n_max + 1):
            v = inner_product_exact(mu, qs[i], qs[j])
            if v:
                out.append((i, j, v))
    return out


@dataclass
class NormLawReport:
    ratios: list[Fraction]
    norms: list[Fraction]

    @property
    def constant(self) -> bool:
        return len(set(self.ratios)) == 1

    @property
    def C_F(self) -> Optional[Fraction]:
        return self.ratios[0] if self.constant else None

    @property
    def ok(self) -> bool:
        return self.constant and self.ratios[0] > 0


def norm_law_check(fam: KrallMeixnerFamily, n_max: int = 8) -> NormLawReport:
    mu = fam.measure()
    norms, ratios = [], []
    for n in range(n_max + 1):
        q = fam.poly(n)
        v = inner_product_exact(mu, q, q)
        norms.append(v)
        ratios.append(v / fam.norm_reference(n))
    return NormLawReport(ratios, norms)


# admissibility ---------------------------------------------------------------


def _nu_sign_scan(spec: PairSpec) -> Optional[int]:
    """First support point where prod_{h in H}(x-h) < 0, or None."""
    top = max([h for h in spec.H] + [0]) + 1
    for x in range(top + 1):
        if x in spec.F1:
            continue
        v = 1
        for h in spec.H:
            v *= x - h
        if v < 0:
            return x
    return None


def omega_sign_scan(omega: Poly, extra_factor=None, n_check: int = 30) -> Optional[int]:
    """First n with Omega(n) Omega(n+1) <= 0 (times an optional sign factor).

    Scans n_check points, and keeps going to the root bound only when a
    Sturm count finds real roots further right, so the answer is decisive.
    """
    top = n_check
    if count_real_roots(omega, n_check, None):
        top = max(n_check, root_bound(omega) + 1)
    for n in range(top + 1):
        v = omega(n) * omega(n + 1)
        if extra_factor is not None:
            v *= extra_factor(n)
        if v <= 0:
            return n
    return None


@dataclass
class AdmissibilityReport:
    admissible: bool
    omega_condition: bool
    nu_witness: Optional[int] = None
    omega_witness: Optional[int] = None

    @property
    def agree(self) -> bool:
        return self.admissible == self.omega_condition


def admissible_meixner(spec: PairSpec, n_check: int = 30) -> AdmissibilityReport:
    if not spec.satisfies_hf2():
        raise NotRepresentable(f"containment condition fails for {spec.to_json()}")
    w = _nu_sign_scan(spec)
    om = omega_meixner(spec.F1, spec.F2, spec.a, spec.c_hat)
    ow = omega_sign_scan(om, n_check=n_check)
    return AdmissibilityReport(w is None, ow is None, w, ow)


def _gamma_sign(t: Fraction) -> int:
    if t > 0:
        return 1
    if t.denominator == 1:
        raise DegenerateParameter("Gamma pole")
    k = -(t.numerator // t.denominator)  # ceil(-t)
    return -1 if k % 2 else 1


def christoffel_positive(a, d, F1, F2, slack: int = 50) -> bool:
    """Positivity of rho^F_{a,d} for non-integer d, decided by exact signs."""
    d = frac(d)
    roots = [abs(f) for f in F1] + [abs(d) + f for f in F2] + [abs(d)]
    top = int(max(roots)) + slack
    for x in range(top + 1):
        v = Fraction(_gamma_sign(x + d))
        for f in F1:
            v *= x - f
        for f in F2:
            v *= x + d + f
        if v < 0:
            return False
    return True


def christoffel_omega_condition(a, d, F1, F2, n_check: int = 30) -> bool:
    d = frac(d)
    k = len(F1) + len(F2)
    om = omega_meixner(F1, F2, a, d)
    return omega_sign_scan(om, lambda n: _gamma_sign(n + d + k), n_check) is None


# limits -------------------------------------------------------------------------


@dataclass
class LimitReport:
    steps: list[int]
    errors: list[list]  # errors[x][t]
    ratios: list[list]
    positive: list[bool] = field(default_factory=list)

    def ratios_within(self, lo=0.4, hi=0.6, last: int = 6) -> bool:
        for row in self.ratios:
            tail = [r for r in row[-last:] if r is not None]
            if any(not (lo <= r <= hi) for r in tail):
                return False
        return True


def limit_experiment(spec: PairSpec, steps: int = 12, x_max: int = 20, prec: int = 200) -> LimitReport:
    """Masses of rho^F_{a, c_hat + 2^-t} against nu^a_{c_hat;F}, x = 0..x_max."""
    if not spec.satisfies_hf2():
        raise NotRepresentable(f"containment condition fails for {spec.to_json()}")
    ch = spec.c_hat
    errors, ratios = [], []
    positive = []
    with mpmath.workprec(prec):
        for x in range(x_max + 1):
            target = mpmath.mpf(nu_mass(spec, x).numerator) / nu_mass(spec, x).denominator
            row = []
            for t in range(1, steps + 1):
                d = mpmath.mpf(ch.numerator) / ch.denominator + mpmath.mpf(2) ** -t
                row.append(abs(christoffel_mass_mp(spec.a, d, spec.F1, spec.F2, x) - target))
            errors.append(row)
            ratios.append([None if not row[i - 1] else float(row[i] / row[i - 1]) for i in range(1, len(row))])
        for t in range(1, steps + 1):
            cs = ch + Fraction(1, 2**t)
            positive.append(christoffel_positive(spec.a, cs, spec.F1, spec.F2))
    return LimitReport(list(range(1, steps + 1)), errors, ratios, positive)


# catalog -------------------------------------------------------------------------

MEIXNER_CATALOG = [
    ((1,), (1,), -1),
    ((1,), (1, 2), -1),
    ((1,), (1, 3), -1),
    ((1, 2), (1,), -1),
    ((1, 3), (1,), -1),
    ((2,), (1, 2), -2),
    ((1, 2), (2,), -2),
    ((1, 2), (2, 3), -2),
    ((1, 2), (1, 2), -2),
    ((2, 3), (1, 2), -2),
    ((1, 3), (1, 3), -3),
    ((1, 2, 3), (3,), -3),
]


def meixner_pair_catalog(a=Fraction(1, 2)) -> list[PairSpec]:
    return [PairSpec(F1, F2, a, ch) for F1, F2, ch in MEIXNER_CATALOG]
