"""Error ratios of the three limit experiments; each should settle near 1/2."""
from fractions import Fraction

from krall.classical import meixner_laguerre_errors
from krall.exceptional_laguerre import ExcLaguerreFamily, limit_from_meixner
from krall.krall_meixner import limit_experiment
from krall.sets import PairSpec


def fmt(rs):
    return " ".join(f"{float(r):.4f}" for r in rs)


def main():
    print("Meixner -> Laguerre, coefficientwise")
    for n in range(1, 5):
        e = meixner_laguerre_errors(n, 3)
        print(f"  n={n}: {fmt(e[i] / e[i - 1] for i in range(1, len(e)))}")
    fam = ExcLaguerreFamily((1,), (1,), -2)
    print("exceptional Meixner -> exceptional Laguerre")
    for n in fam.sigma(4):
        print(f"  n={n}: {fmt(limit_from_meixner(fam, n).ratios)}")
    rep = limit_experiment(PairSpec((1,), (1,), Fraction(1, 2), -1), steps=12, x_max=20)
    print("Christoffel masses -> limit masses (last six halvings)")
    for x in (0, 1, 2, 5, 10, 20):
        tail = [r for r in rep.ratios[x][-6:] if r is not None]
        print(f"  x={x:2d}: {fmt(tail) if tail else 'no mass at this point in either measure'}")


if __name__ == "__main__":
    main()
