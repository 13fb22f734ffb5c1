"""Admissibility of every catalog pair: mass-sign scan vs Omega-sign scan, and the
Laguerre positivity test on the same pairs with alpha = c_hat - 1."""
from krall.exceptional_laguerre import ExcLaguerreFamily, positivity_equivalence_check
from krall.krall_meixner import admissible_meixner, meixner_pair_catalog


def main():
    print(f"{'F1':>10} {'F2':>10} {'c':>3}  masses  omega  laguerre  roots>=0")
    for s in meixner_pair_catalog():
        rep = admissible_meixner(s)
        pos = positivity_equivalence_check(ExcLaguerreFamily(s.F1, s.F2, s.c_hat - 1))
        print(
            f"{str(s.F1):>10} {str(s.F2):>10} {int(s.c_hat):>3}  {rep.admissible!s:6}  "
            f"{rep.omega_condition!s:5}  {pos.admissible!s:8}  {pos.nonnegative_roots}"
        )


if __name__ == "__main__":
    main()
