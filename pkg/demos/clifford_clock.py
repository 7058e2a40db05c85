"""Walk around the eight-hour clock of Real graded Clifford algebras.

Each Cl(p,q) lands on hour q - p; tensoring moves the hand, and eight
copies of Cl(0,1) bring it back to noon.
"""

from realbrauer.brauer_point import (
    STANDARD_ANTIUNITARIES,
    BrauerType,
    classify,
    classify_clifford,
    real_cl2_probe,
    real_form_invariants,
    type_add,
    verify_product_even,
)
from realbrauer.graded_algebra import conjugate, graded_tensor, make_clifford, matrix_model, tensor_power


def hours():
    print("Cl(p,q) by hour")
    for n in range(5):
        row = []
        for p in range(n + 1):
            t = classify_clifford(p, n - p)
            row.append(f"Cl({p},{n - p})->{t.z8}")
        print("  " + "  ".join(row))


def anatomy():
    # the quaternions hide inside Cl(2,0), real 2x2 matrices inside Cl(0,2)
    for p, q in ((2, 0), (0, 2)):
        A = make_clifford(p, q)
        inv = real_form_invariants(A)
        m = matrix_model(A)
        print(
            f"Cl({p},{q}): parity {m.parity}, N={m.N}, real form dim {inv.real_dim}, "
            f"center {inv.center_kind}, idempotent {inv.has_idempotent}"
        )


def moving_the_hand():
    one = make_clifford(0, 1)
    A = one
    for k in range(2, 9):
        A = graded_tensor(A, one)
        print(f"Cl(0,1)^{k} -> {classify(A, check=False)}")
    law = type_add(BrauerType.from_z8(3), BrauerType.from_z8(6))
    print(f"label law 3 + 6 -> {law}")
    print(f"conjugate of Cl(0,3) -> {classify(conjugate(make_clifford(0, 3)), check=False)}")
    assert classify(tensor_power(one, 8), check=False).z8 == 0


def two_quaternionic_structures():
    probe = real_cl2_probe()
    print(f"M2(C) with (x,y) -> (conj y, -conj x): {probe['H']}")
    print(f"M2(C) with (x,y) -> (conj y,  conj x): {probe['R']}")
    print(f"Cl(2,0) itself:                       {probe['cl_2_0']}")
    J = STANDARD_ANTIUNITARIES
    for version in ("proof", "statement"):
        bad = [(a, b) for a in J for b in J if not verify_product_even(J[a], J[b], version)]
        print(f"product anti-unitary, {version} exponents: failing pairs {bad}")


if __name__ == "__main__":
    hours()
    print()
    anatomy()
    print()
    moving_the_hand()
    print()
    two_quaternionic_structures()
