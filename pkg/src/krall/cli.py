"""Command-line driver: verify, reproduce, find-operator, list-examples."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .classical import MeixnerParams, meixner
from .exact import format_rational
from .krall_hahn import KrallHahnFamily, deleted_mass_quartet
from .krall_meixner import KrallMeixnerFamily
from .operators import search_ladder
from .report import DEGENERACY, SpecError, VerificationReport, pair_from, quartet_from, reproduce_laguerre_example, validate, verify_spec

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_DEGENERATE = 0, 1, 2, 3


def catalog_dir():
    return resources.files("krall") / "catalog"


def catalog_names() -> list[str]:
    return sorted(p.name[:-5] for p in catalog_dir().iterdir() if p.name.endswith(".json"))


def load_spec(path: str) -> dict:
    """Read a spec file; a bare name (or missing path) falls back to the bundled catalog by stem."""
    p = Path(path)
    if p.is_file():
        text = p.read_text()
    else:
        entry = catalog_dir() / f"{p.stem}.json"
        if not entry.is_file():
            raise SpecError(f"no such spec file or catalog entry: {path}")
        text = entry.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(rep: VerificationReport, args) -> str:
    return rep.dumps(args.deterministic) if args.json else rep.table(args.deterministic)


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    validate(spec)
    rep = verify_spec(spec, args.n_max, args.expect_inadmissible)
    _emit(_render(rep, args), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_reproduce(args) -> int:
    rep = reproduce_laguerre_example(6 if args.n_max is None else args.n_max)
    _emit(_render(rep, args), args.out)
    if not rep.passed:
        bad = ", ".join(c.name for c in rep.checks if c.status == "fail")
        print(f"mismatch against the reference example: {bad}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _q(v) -> Fraction:
    return Fraction(str(v))


def family_for_operator(spec: dict, n_max: int):
    """(polynomials, predicted band radius) for the family in ``spec``."""
    fam = spec["family"]
    if fam == "meixner":
        p = MeixnerParams(_q(spec["a"]), _q(spec["c"]))
        return [meixner(n, p.a, p.c) for n in range(n_max + 3)], 1
    if fam == "krall-meixner":
        f = KrallMeixnerFamily(pair_from(spec))
        return [f.poly(n) for n in range(n_max + 3)], f.r
    if fam in ("krall-hahn", "hahn-deleted"):
        if fam == "krall-hahn":
            q = quartet_from(spec)
        else:
            q = deleted_mass_quartet(spec["A"], spec["c"], _q(spec["d"]), spec["N"], spec.get("B", []))
        f = KrallHahnFamily(q)
        return [f.poly(n) for n in range(f.top + 1)], f.band_radius()
    raise SpecError(f"find-operator does not support family {fam!r}")


def cmd_find_operator(args) -> int:
    spec = load_spec(args.spec)
    validate(spec)
    polys, r_predicted = family_for_operator(spec, 8 if args.n_max is None else args.n_max)
    r = r_predicted if args.r is None else args.r
    ladder = [args.D] if args.D is not None else list(range(1, 2 * r + 3))
    rep = search_ladder(polys, r, ladder)
    data = {"spec": spec, "predicted_r": r_predicted, **rep.to_json()}
    if rep.operator is not None:
        data["effective_radius"] = rep.operator.effective_radius
    if args.json:
        text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    else:
        lines = [
            f"family: {json.dumps(spec, sort_keys=True)}",
            f"band radius r={r} (predicted: {r_predicted}), degree cap D={rep.D}",
            f"fitted members: {rep.fitted}, held out: {rep.extra}",
            f"solution space dimension: {rep.dimension} (with held-out members: {rep.dimension_with_extra})",
        ]
        if rep.operator is None:
            lines.append("only multiples of the identity")
        else:
            lines.append(f"non-identity operator, effective radius {rep.operator.effective_radius}:")
            for l, h in rep.operator.coeffs.items():
                lines.append(f"  h[{l:+d}] = {h}")
            lines.append("eigenvalues: " + ", ".join(format_rational(v) for v in rep.eigenvalues))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if rep.operator is None or not rep.out_of_sample_ok:
        hint = "raise --D or --r" if rep.operator is None else "add members with --n-max or lower --D"
        print(f"no confirmed operator at r={r}; {hint}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_list_examples(args) -> int:
    rows = []
    for name in catalog_names():
        spec = json.loads((catalog_dir() / f"{name}.json").read_text())
        rows.append((name, spec.get("family", "?")))
    if args.json:
        text = json.dumps([{"name": n, "family": f} for n, f in rows], indent=2) + "\n"
    else:
        w = max(len(n) for n, _ in rows)
        text = "".join(f"{n.ljust(w)}  {f}\n" for n, f in rows)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--deterministic", action="store_true", help="omit timings so output is byte-stable")
    common.add_argument("--n-max", type=int, default=None, help="largest index to check")

    p = argparse.ArgumentParser(prog="krall", description="Verify Krall and exceptional polynomial families.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the checks for a family spec")
    v.add_argument("spec", help="spec file, or the name of a bundled example")
    v.add_argument("--expect-inadmissible", action="store_true", help="pass when the family is inadmissible")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reproduce", parents=[common], help="rebuild a reference worked example")
    r.add_argument("target", choices=["laguerre-example"])
    r.set_defaults(func=cmd_reproduce)

    f = sub.add_parser("find-operator", parents=[common], help="search for a banded difference operator")
    f.add_argument("spec")
    f.add_argument("--r", type=int, default=None, help="band radius (default: the predicted value)")
    f.add_argument("--D", type=int, default=None, help="degree cap of the coefficients (default: a ladder)")
    f.set_defaults(func=cmd_find_operator)

    lst = sub.add_parser("list-examples", parents=[common], help="list the bundled specs")
    lst.set_defaults(func=cmd_list_examples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except DEGENERACY as exc:
        print(f"degenerate family: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
