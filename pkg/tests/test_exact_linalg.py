import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realbrauer.exact_linalg import (
    FGAbelianGroup,
    FiniteSubgroup,
    GaussianRational,
    Homomorphism,
    Presentation,
    cokernel,
    mat_mul,
    nullspace,
    parse_scalar,
    format_scalar,
    smith_normal_form,
    solve_integer,
    subquotient,
    symmetric_signature,
)


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1 :] for r in M[1:]]) for j in range(n))


def _check_snf(M):
    sf = smith_normal_form(M)
    assert mat_mul(mat_mul(sf.U, M), sf.V) == sf.S
    assert abs(_det(sf.U)) == 1 and abs(_det(sf.V)) == 1
    d = sf.diagonal
    for a, b in zip(d, d[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    for i, row in enumerate(sf.S):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    return d


@pytest.mark.parametrize(
    "M, diag",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[0, 0], [0, 0]], [0, 0]),
        ([[2, 4], [-2, 6]], [2, 10]),
    ],
)
def test_smith_examples(M, diag):
    assert [abs(x) for x in _check_snf(M)] == diag


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_factorization(M):
    _check_snf(M)


def test_cokernel_examples():
    assert cokernel([[1, 0], [0, 6]]) == FGAbelianGroup(0, (6,))
    assert cokernel([[0, 0]]).free_rank == 2
    assert cokernel([[2, 0], [0, 4]]).invariant_factors == (2, 4)


def test_cokernel_matches_enumeration():
    # Z^2 / <(2,0),(0,4)> has 8 elements
    M = [[2, 0], [0, 4]]
    seen = {(x % 2, y % 4) for x in range(8) for y in range(8)}
    assert len(seen) == cokernel(M).order


def test_subquotient_trivial_cases():
    z2cubed, zero = Presentation((2, 2, 2)), Presentation(())
    sq = subquotient(Homomorphism(z2cubed, zero, ()), Homomorphism(zero, z2cubed, ((), (), ())))
    assert sq.group == FGAbelianGroup(0, (2, 2, 2))
    Z = Presentation((0,))
    sq = subquotient(Homomorphism(Z, zero, ()), Homomorphism(Z, Z, ((2,),)))
    assert sq.group == FGAbelianGroup(0, (2,))
    assert sq.same_class([3], [1]) and not sq.same_class([1], [0])


def test_subquotient_bar_complex_z2():
    # C^1 -> C^2 -> C^3 for the group Z2 with Z2 coefficients, cochains on all tuples
    from realbrauer.groupoid_core import cyclic_group, nerve
    from realbrauer.real_cohomology import differential_rows

    G = cyclic_group(2)
    n1, n2, n3 = (len(nerve(G, k)) for k in (1, 2, 3))

    def hom(n, src, tgt):
        rows = differential_rows(G, n)
        M = tuple(tuple(rows[i].get(j, 0) for j in range(src)) for i in range(tgt))
        return Homomorphism(Presentation((2,) * src), Presentation((2,) * tgt), M)

    sq = subquotient(hom(2, n2, n3), hom(1, n1, n2))
    assert sq.group == FGAbelianGroup(0, (2,))


def test_group_from_orders():
    g = FGAbelianGroup.from_element_orders([1, 2, 4, 4, 2, 4, 4, 2])
    assert g == FGAbelianGroup(0, (2, 4))
    assert FGAbelianGroup.from_cyclic_orders([6, 4]).invariant_factors == (2, 12)
    assert str(FGAbelianGroup(0, (2, 4))) == "Z/2 x Z/4"
    assert FGAbelianGroup(0, (8,)).short() == "Z8"
    assert FGAbelianGroup(0, (3, 6)).odd_part() == FGAbelianGroup(0, (3, 3))


def test_solve_integer():
    M = [[2, 0], [0, 3]]
    assert solve_integer(M, [4, 9]) == [2, 3]
    assert solve_integer(M, [1, 0]) is None


def test_finite_subgroup():
    H = FiniteSubgroup((4, 2), [[2, 0], [0, 1]])
    assert H.order == 4
    assert [2, 1] in H
    assert [1, 0] not in H


def test_nullspace_and_signature():
    rows = [{0: GaussianRational(1), 1: GaussianRational(-1)}]
    ns = nullspace(rows, 2)
    assert len(ns) == 1
    assert symmetric_signature([[1, 0], [0, -1]])[:2] == (1, 1)


def test_scalar_round_trip():
    z = GaussianRational(1, 2) * parse_scalar("3/4-2i")
    assert parse_scalar(format_scalar(z)) == z
    assert math.isclose(float(GaussianRational(3, 0).re), 3.0)
