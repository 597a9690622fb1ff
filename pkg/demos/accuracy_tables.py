"""
Accuracy of ESDG-O2 and ESDG-O3 on smooth problems
===================================================

Refines the two smooth test problems from 32 to 512 elements and prints the
density errors with their observed orders.
"""

from tmdg import convergence_study

grids = [32, 64, 128, 256, 512]

for case in ("smooth", "smooth_source"):
    for order in (2, 3):
        report = convergence_study(case, order, grids)
        print(f"\n{case}, ESDG-O{order}")
        print(f"{'N':>5} {'L1':>11} {'order':>6} {'Linf':>11} {'order':>6}")
        for n, l1, o1, linf, o2 in report.rows():
            print(f"{n:>5d} {l1:11.3e} {o1:6.2f} {linf:11.3e} {o2:6.2f}")

# The L1 column sums dx |e| over every node of an element. Passing
# l1="quadrature" integrates |e| with the Gauss-Lobatto rule instead, which
# halves the constants but leaves the orders unchanged.
