"""Brauer groups of small Real groupoids, from cohomology up.

The group is assembled from three cohomology groups: a Z8 part on
objects, a Z2 grading part, and a circle-valued twisting part, glued by
a cup product.
"""

from realbrauer.brauer_groupoid import (
    brauer_group,
    odd_decomposition_check,
    split_sequence_check,
    two_torsion_check,
)
from realbrauer.groupoid_core import abelian_group, build_double, cyclic_group, inflate, point, s01
from realbrauer.real_cohomology import cohomology, mu, s1_cohomology

SAMPLES = [
    ("point", point()),
    ("S01", s01()),
    ("Z2", cyclic_group(2)),
    ("Z4 with g -> -g", cyclic_group(4, "neg")),
    ("Z2 x Z2", abelian_group([2, 2])),
]


def table():
    print(f"{'groupoid':18} {'BrR*':22} {'Br':18}")
    for name, G in SAMPLES:
        real = brauer_group(G, "BrR_star").group
        cplx = brauer_group(G, "Br_complex").group
        print(f"{name:18} {str(real):22} {str(cplx):18}")


def circle_tower():
    # the circle is approximated by roots of unity until the image stops changing
    G = abelian_group([3, 3])
    print(f"H^2(Z3xZ3, mu_3) = {cohomology(G, 2, mu(3), real=False).group}")
    S = s1_cohomology(G, 2, real=False)
    for line in S.transcript:
        print("  " + line)
    print(f"H^2(Z3xZ3, S1) = {S.group}  (the Schur multiplier)")


def comparisons():
    for line in two_torsion_check(cyclic_group(2)).lines:
        print("  " + line)
    for line in odd_decomposition_check(build_double(abelian_group([3, 3]))).lines:
        print("  " + line)
    print("  " + split_sequence_check(cyclic_group(2)).lines[0])
    G = cyclic_group(2)
    same = brauer_group(G).group == brauer_group(inflate(G, 3)).group
    print(f"  Z2 and Z2 x pair(3) agree: {same}")


if __name__ == "__main__":
    table()
    print()
    circle_tower()
    print()
    comparisons()
