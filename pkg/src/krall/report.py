"""Verification suites per family type, and the report format they share."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

import mpmath

from .classical import DegenerateParameter, MeixnerParams, meixner, meixner_measure, meixner_norm
from .exact import Poly, RatFunc, format_rational
from .exceptional_laguerre import ExcLaguerreFamily, positivity_equivalence_check, quadrature_gram
from .exceptional_meixner import ExcMeixnerFamily, bounded_gram
from .krall_hahn import (
    KrallHahnFamily,
    deleted_hahn_masses,
    deleted_mass_quartet,
    hahn_orthogonality_check,
    mirror_check,
    nu_hahn,
    proportional,
)
from .krall_meixner import (
    DegenerateFamily,
    KrallMeixnerFamily,
    admissible_meixner,
    norm_law_check,
    normalization_mismatches,
    orthogonality_defects,
    removed_points_pair,
)
from .measures import inner_product_exact
from .sets import NotRepresentable, PairSpec, QuartetSpec

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# errors that mean "the family is degenerate", as opposed to a failed check
DEGENERACY = (DegenerateParameter, DegenerateFamily, NotRepresentable, ZeroDivisionError)


class SpecError(ValueError):
    """The spec file does not match its family schema."""


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    runtime_ms: Optional[float] = None

    def to_json(self, deterministic: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "witness": self.witness}
        if not deterministic and self.runtime_ms is not None:
            out["runtime_ms"] = round(self.runtime_ms, 1)
        return out


@dataclass
class VerificationReport:
    spec: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def run(self, name: str, fn: Callable[[], tuple]) -> Check:
        """fn returns (ok, witness); ok None marks the check skipped."""
        t = time.perf_counter()
        ok, witness = fn()
        status = SKIPPED if ok is None else (PASS if ok else FAIL)
        c = Check(name, status, _jsonable(witness), (time.perf_counter() - t) * 1000)
        self.checks.append(c)
        return c

    def to_json(self, deterministic: bool = False) -> dict:
        return {
            "spec": self.spec,
            "status": PASS if self.passed else FAIL,
            "checks": [c.to_json(deterministic) for c in self.checks],
        }

    def dumps(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_json(deterministic), sort_keys=True, indent=2) + "\n"

    def table(self, deterministic: bool = False) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"family: {json.dumps(self.spec, sort_keys=True)}"]
        for c in self.checks:
            w = c.witness if isinstance(c.witness, str) else json.dumps(c.witness, sort_keys=True)
            t = "" if deterministic or c.runtime_ms is None else f"  ({c.runtime_ms:.0f} ms)"
            lines.append(f"{c.name.ljust(width)}  {c.status.upper():7}  {w}{t}")
        lines.append(f"overall: {PASS.upper() if self.passed else FAIL.upper()}")
        return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, RatFunc):
        return str(v.num) if v.is_poly() else f"({v.num}) / ({v.den})"
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 15)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# spec parsing -------------------------------------------------------------------


def _get(d: dict, key: str, default=None, required: bool = True):
    if key not in d:
        if required and default is None:
            raise SpecError(f"missing field {key!r}")
        return default
    return d[key]


def _intset(d: dict, key: str) -> tuple:
    v = d.get(key, [])
    if not isinstance(v, list) or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in v):
        raise SpecError(f"{key} must be a list of nonnegative integers")
    if any(b <= a for a, b in zip(v, v[1:])):
        raise SpecError(f"{key} must be strictly increasing")
    return tuple(v)


def _rat(d: dict, key: str, default=None) -> Fraction:
    v = _get(d, key, default)
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{key}={v!r} is not a rational number") from exc


def _posint(d: dict, key: str) -> int:
    v = _get(d, key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise SpecError(f"{key} must be a nonnegative integer")
    return v


def pair_from(d: dict) -> PairSpec:
    return PairSpec(_intset(d, "F1"), _intset(d, "F2"), _rat(d, "a", "1/2"), _rat(d, "c_hat"))


def quartet_from(d: dict) -> QuartetSpec:
    b = d.get("b_hat", d.get("b"))
    if b is None:
        raise SpecError("missing field 'b_hat'")
    N = _posint(d, "N")
    if N < 1:
        raise SpecError("N must be positive")
    return QuartetSpec(*(_intset(d, k) for k in ("F1", "F2", "F3", "F4")), _rat(d, "a_hat"), Fraction(str(b)), N)


FAMILIES = (
    "meixner",
    "krall-meixner",
    "meixner-normalize",
    "meixner-deleted",
    "exceptional-meixner",
    "exceptional-laguerre",
    "krall-hahn",
    "hahn-deleted",
)


def validate(d: dict) -> None:
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    fam = d.get("family")
    if fam not in FAMILIES:
        raise SpecError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    try:
        if fam == "meixner":
            MeixnerParams(_rat(d, "a"), _rat(d, "c"))
        elif fam in ("krall-meixner", "meixner-normalize", "exceptional-meixner"):
            pair_from(d)
        elif fam == "meixner-deleted":
            _intset(d, "A"), _posint(d, "d")
        elif fam == "exceptional-laguerre":
            _intset(d, "F1"), _intset(d, "F2"), _rat(d, "alpha_hat")
        elif fam == "krall-hahn":
            quartet_from(d)
        elif fam == "hahn-deleted":
            _intset(d, "A"), _intset(d, "B"), _posint(d, "c"), _rat(d, "d"), _posint(d, "N")
            if not d["A"]:
                raise SpecError("A must be nonempty")
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from exc


# suites ---------------------------------------------------------------------------


def suite_meixner(d: dict, n_max: int, **_) -> VerificationReport:
    p = MeixnerParams(_rat(d, "a"), _rat(d, "c"))
    rep = VerificationReport(d)
    mu = meixner_measure(p)
    polys = [meixner(n, p.a, p.c) for n in range(n_max + 1)]

    def gram():
        base = inner_product_exact(mu, Poly.const(1), Poly.const(1)) / meixner_norm(0, p.a, p.c)
        bad = []
        for i in range(n_max + 1):
            for j in range(i, n_max + 1):
                v = inner_product_exact(mu, polys[i], polys[j])
                want = meixner_norm(i, p.a, p.c) * base if i == j else 0
                if v != want:
                    bad.append([i, j, v])
        return not bad, {"defects": bad, "n_max": n_max}

    rep.run("orthogonality", gram)
    return rep


def suite_krall_meixner(d: dict, n_max: int, expect_inadmissible: bool = False, **_) -> VerificationReport:
    spec = pair_from(d)
    rep = VerificationReport(d)
    rep.run("containment", lambda: (spec.satisfies_hf2(), {"H": list(spec.H)}))
    adm = admissible_meixner(spec)
    witness = {
        "admissible": adm.admissible,
        "omega_condition": adm.omega_condition,
        "nu_witness": adm.nu_witness,
        "omega_witness": adm.omega_witness,
    }
    if expect_inadmissible:
        rep.run("inadmissible", lambda: (not adm.admissible and adm.agree, witness))
        return rep
    rep.run("admissibility", lambda: (adm.admissible and adm.agree, witness))
    if not adm.admissible:
        return rep
    fam = KrallMeixnerFamily(spec)

    def degrees():
        degs = {n: fam.poly(n).degree for n in range(n_max + 1)}
        return all(v == n for n, v in degs.items()), degs

    rep.run("degrees", degrees)

    def orth():
        bad = orthogonality_defects(fam, n_max)
        return not bad, {"defects": [list(b) for b in bad]}

    rep.run("orthogonality", orth)

    def norms():
        r = norm_law_check(fam, n_max)
        return r.ok, {"C_F": r.C_F, "ratios": r.ratios}

    rep.run("norm-law", norms)
    return rep


def suite_meixner_normalize(d: dict, **_) -> VerificationReport:
    spec = pair_from(d)
    rep = VerificationReport(d)

    def run():
        bad = normalization_mismatches(spec, 50)
        return not bad, {"mismatches": bad, "x_max": 50}

    rep.run("normalization", run)
    return rep


def suite_meixner_deleted(d: dict, **_) -> VerificationReport:
    A, dd = _intset(d, "A"), _posint(d, "d")
    rep = VerificationReport(d)
    spec = removed_points_pair(A, dd, _rat(d, "a", "1/2"))
    want = list(range(-dd + 1, 0))
    rep.run("H", lambda: (list(spec.H) == want, {"H": list(spec.H), "expected": want, "pair": spec.to_json()}))
    rep.run("containment", lambda: (spec.satisfies_hf2(), spec.to_json()))
    return rep


def suite_exceptional_meixner(d: dict, n_max: int, **_) -> VerificationReport:
    spec = pair_from(d)
    fam = ExcMeixnerFamily(spec)
    rep = VerificationReport(d)
    idx = fam.sigma(fam.u + n_max)

    def forms():
        bad = [n for n in idx if fam.poly(n) != fam.poly_alt(n)]
        return not bad, {"indices": idx, "mismatches": bad}

    def lead():
        bad = [n for n in idx if fam.poly(n).degree != n or fam.poly(n).lc != fam.leading_coefficient(n)]
        return not bad, {"mismatches": bad}

    def eig():
        bad = [n for n in idx if not fam.eigen_ok(n)]
        return not bad, {"failures": bad}

    rep.run("determinant-forms", forms)
    rep.run("leading-coefficient", lead)
    rep.run("eigen", eig)

    def gram():
        if not (spec.integral_c and spec.c_hat <= -1 and spec.satisfies_hf2()):
            return None, "no orthogonality weight for these parameters"
        if not admissible_meixner(spec).admissible:
            return None, "not admissible"
        top = fam.sigma(fam.u + min(n_max, 6))[-1]
        checks = bounded_gram(fam, top)
        bad = [[c.n, c.m] for c in checks if not c.ok]
        worst = max(c.tail.bound for c in checks)
        return not bad, {"failures": bad, "max_bound": float(worst), "pairs": len(checks)}

    rep.run("bounded-gram", gram)
    return rep


def suite_exceptional_laguerre(d: dict, n_max: int, **_) -> VerificationReport:
    fam = ExcLaguerreFamily(_intset(d, "F1"), _intset(d, "F2"), _rat(d, "alpha_hat"))
    rep = VerificationReport(d)
    idx = fam.sigma(fam.u + n_max)
    rep.run("omega-degree", lambda: (fam.omega.degree == fam.u + fam.k1, {"omega": fam.omega}))
    rep.run("eigen", lambda: (all(fam.eigen_ok(n) for n in idx), {"indices": idx}))
    rep.run("rromh", lambda: (fam.rromh_ok(), None))

    def pos():
        if not fam.satisfies_hf2l():
            return None, "containment condition fails"
        r = positivity_equivalence_check(fam)
        return r.agree and r.chain_ok, {"admissible": r.admissible, "nonnegative_roots": r.nonnegative_roots}

    rep.run("positivity", pos)

    def gram():
        if not fam.satisfies_hf2l() or not positivity_equivalence_check(fam).admissible:
            return None, "weight not positive"
        g = quadrature_gram(fam, idx[:3])
        return g.ok(1e-9), {"max_error": float(g.max_error()), "indices": idx[:3]}

    rep.run("quadrature-gram", gram)
    return rep


def _hahn_checks(rep: VerificationReport, fam: KrallHahnFamily) -> None:
    rep.run("omega-nonvanishing", lambda: (fam.hypothesis_ok(), {"range": [0, fam.top + 1]}))

    def gram():
        g = hahn_orthogonality_check(fam)
        return g.ok, {
            "top": fam.top,
            "offdiagonal": [[i, j, v] for (i, j), v in g.offdiagonal.items()],
            "positive": g.positive,
        }

    rep.run("gram", gram)
    rep.run("mirror", lambda: (mirror_check(fam.spec), None))


def suite_krall_hahn(d: dict, **_) -> VerificationReport:
    rep = VerificationReport(d)
    _hahn_checks(rep, KrallHahnFamily(quartet_from(d)))
    return rep


def suite_hahn_deleted(d: dict, **_) -> VerificationReport:
    A, B = _intset(d, "A"), _intset(d, "B")
    c, dd, N = _posint(d, "c"), _rat(d, "d"), _posint(d, "N")
    q = deleted_mass_quartet(A, c, dd, N, B)
    rep = VerificationReport(d)

    def repr_():
        k = proportional(deleted_hahn_masses(A, c, dd, N, B), list(nu_hahn(q).table))
        return k is not None, {"quartet": q.to_json(), "ratio": k}

    rep.run("representation", repr_)
    _hahn_checks(rep, KrallHahnFamily(q))
    return rep


SUITES = {
    "meixner": suite_meixner,
    "krall-meixner": suite_krall_meixner,
    "meixner-normalize": suite_meixner_normalize,
    "meixner-deleted": suite_meixner_deleted,
    "exceptional-meixner": suite_exceptional_meixner,
    "exceptional-laguerre": suite_exceptional_laguerre,
    "krall-hahn": suite_krall_hahn,
    "hahn-deleted": suite_hahn_deleted,
}


def verify_spec(d: dict, n_max: Optional[int] = None, expect_inadmissible: bool = False) -> VerificationReport:
    validate(d)
    return SUITES[d["family"]](d, n_max=8 if n_max is None else n_max, expect_inadmissible=expect_inadmissible)


# the worked exceptional Laguerre example ------------------------------------------------

X = Poly.x()
EXPECTED_OMEGA = X * X + 1
EXPECTED_H1 = RatFunc(1 - X) - RatFunc(X * X * 4, EXPECTED_OMEGA)
EXPECTED_H0 = RatFunc(Poly.const(-2)) + RatFunc(X * 2 + X * X * 2, EXPECTED_OMEGA)
EXPECTED_SIGMA_PREFIX = [1, 3, 4, 5]


def reproduce_laguerre_example(n_max: int = 6) -> VerificationReport:
    spec = {"family": "exceptional-laguerre", "alpha_hat": -2, "F1": [1], "F2": [1]}
    fam = ExcLaguerreFamily((1,), (1,), -2)
    rep = VerificationReport(spec)
    om = fam.omega
    rep.run("omega", lambda: (om in (EXPECTED_OMEGA, -EXPECTED_OMEGA), {"computed": om, "expected": "+-(x^2 + 1)"}))

    def weight():
        w = fam.weight()
        ok = w.exponent == 0 and w.denominator == EXPECTED_OMEGA * EXPECTED_OMEGA
        return ok, {"computed": f"x^{w.exponent} e^(-x) / ({w.denominator})", "expected": "e^(-x) / (x^2 + 1)^2"}

    rep.run("weight", weight)

    def operator():
        op = fam.operator
        return op.h1 == EXPECTED_H1 and op.h0 == EXPECTED_H0, {
            "h1": op.h1,
            "h0": op.h0,
            "expected_h1": "1 - x - 4x^2/(x^2 + 1)",
            "expected_h0": "-2 + (2x + 2x^2)/(x^2 + 1)",
        }

    rep.run("operator", operator)
    idx = fam.sigma(max(n_max, 5))
    rep.run("index-set", lambda: (idx[:4] == EXPECTED_SIGMA_PREFIX, {"computed": idx, "expected": "1, 3, 4, 5, ..."}))
    rep.run("eigen", lambda: (all(fam.eigen_ok(n) for n in fam.sigma(n_max)), {"indices": fam.sigma(n_max)}))

    def norms():
        g = quadrature_gram(fam, fam.sigma(n_max))
        diag = {str(n): g.values[(n, n)] for n in g.indices}
        return not fam.H and g.ok(1e-9), {"H": list(fam.H), "diagonal": diag, "max_error": mpmath.nstr(g.max_error(), 3), "expected": "1"}

    rep.run("norm", norms)
    return rep
