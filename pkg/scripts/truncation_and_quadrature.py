"""Where the fixed truncation point 80 and the 64/128 node comparison fall short."""
from fractions import Fraction

import mpmath

from krall.exact import Poly
from krall.exceptional_meixner import ExcMeixnerFamily, bounded_gram
from krall.measures import ContinuousWeight, gauss_laguerre_inner
from krall.sets import PairSpec


def main():
    fam = ExcMeixnerFamily(PairSpec((1,), (1,), Fraction(1, 2), -1))
    top = fam.u + 8
    fixed = bounded_gram(fam, top, X0=80)
    adaptive = bounded_gram(fam, top)
    print("tail bounds on <m_n, m_m>, fixed X0=80 vs adaptive")
    for f, a in zip(fixed, adaptive):
        if f.n == f.m or f.tail.bound > Fraction(1, 10**20):
            print(f"  ({f.n},{f.m}) X0=80: {float(f.tail.bound):.2e}   X0={a.tail.X0}: {float(a.tail.bound):.2e}")
    X = Poly.x()
    w = ContinuousWeight(0, (X * X + 1) ** 2)
    with mpmath.workprec(256):
        ref = mpmath.quad(lambda t: mpmath.exp(-t) / (t * t + 1) ** 2, [0, 1, 10, mpmath.inf])
    print("int e^-x/(x^2+1)^2 by Gauss-Laguerre")
    for n in (32, 64, 128, 256):
        r = gauss_laguerre_inner(w, Poly.const(1), Poly.const(1), nodes=n)
        print(f"  nodes={n:3d}: error {mpmath.nstr(abs(r.value - ref), 3)}, halving estimate {mpmath.nstr(r.estimate, 3)}")


if __name__ == "__main__":
    main()
