"""Dimension of the operator solution space over a grid of band radii and degree caps."""
import argparse
from fractions import Fraction

from krall.krall_hahn import KrallHahnFamily, deleted_mass_quartet
from krall.krall_meixner import KrallMeixnerFamily
from krall.operators import search_operator
from krall.sets import PairSpec


def families():
    km = KrallMeixnerFamily(PairSpec((1,), (1,), Fraction(1, 2), -1))
    yield "krall-meixner {1},{1}", [km.poly(n) for n in range(11)], km.r
    for label, args in [("hahn A={0}", ((0,), 1, 1, 8)), ("hahn A=B={0}", ((0,), 1, 1, 12, (0,)))]:
        f = KrallHahnFamily(deleted_mass_quartet(*args))
        yield label, [f.poly(n) for n in range(f.top + 1)], f.band_radius()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-D", type=int, default=6)
    args = ap.parse_args()
    for label, polys, r_thm in families():
        print(f"{label}: {len(polys)} members, predicted radius {r_thm}")
        for r in range(1, r_thm + 1):
            cells = []
            for D in range(1, args.max_D + 1):
                rep = search_operator(polys, r, D)
                mark = "*" if rep.nontrivial and rep.out_of_sample_ok else " "
                cells.append(f"D={D}:{rep.dimension}{mark}")
            print(f"  r={r}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
