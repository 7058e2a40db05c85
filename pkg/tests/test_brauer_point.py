import itertools

import pytest

from realbrauer.brauer_point import (
    REPRESENTATIVES,
    STANDARD_ANTIUNITARIES,
    TABLE_1,
    BrauerType,
    classify,
    classify_clifford,
    operator_algebra,
    product_operator,
    real_cl2_probe,
    real_form_invariants,
    representative,
    type_add,
    type_from_real_form,
    type_neg,
    verify_product_even,
    verify_products,
    verify_table,
)
from realbrauer.errors import NotRealStructure
from realbrauer.exact_linalg import I
from realbrauer.graded_algebra import conjugate, make_clifford, tensor_power

LABELS = {
    0: "[0;0,+]", 1: "[1;0,+]", 2: "[0;1,+]", 3: "[1;1,-]",
    4: "[0;0,-]", 5: "[1;0,-]", 6: "[0;1,-]", 7: "[1;1,+]",
}


def test_table_labels():
    for n, label in LABELS.items():
        assert BrauerType.from_z8(n).label == label
        assert BrauerType.parse(label).z8 == n
        assert BrauerType.parse(str(n)).z8 == n


@pytest.mark.parametrize("n", range(8))
def test_representatives(n):
    assert classify(representative(n)).z8 == n
    p, q = REPRESENTATIVES[n]
    assert (q - p) % 8 == n


def test_clifford_up_to_four_generators():
    for p, q, t, expected in verify_table():
        assert t.z8 == expected, (p, q)


def test_type_add_examples():
    assert type_add(BrauerType.from_z8(2), BrauerType.from_z8(2)).label == "[0;0,-]"
    assert type_add(BrauerType.from_z8(1), BrauerType.from_z8(1)).label == "[0;1,+]"
    for n in range(8):
        t = BrauerType.from_z8(n)
        assert type_add(t, BrauerType.from_z8(0)) == t


def test_type_add_is_z8():
    for a, b, c in itertools.product(range(8), repeat=3):
        A, B, C = (BrauerType.from_z8(x) for x in (a, b, c))
        assert type_add(A, B).z8 == (a + b) % 8
        assert type_add(type_add(A, B), C) == type_add(A, type_add(B, C))
        assert type_add(A, B) == type_add(B, A)


def test_type_neg():
    assert type_neg(BrauerType.from_z8(1)).z8 == 7
    assert type_neg(BrauerType.from_z8(0)).z8 == 0
    assert type_neg(BrauerType.from_z8(4)).z8 == 4


def test_all_products():
    for n1, n2, t, law, z8 in verify_products():
        assert t == law and t.z8 == z8, (n1, n2)


@pytest.mark.parametrize("n", range(8))
def test_real_form_oracle(n):
    assert type_from_real_form(real_form_invariants(representative(n))) == n


def test_real_form_invariants_examples():
    inv = real_form_invariants(make_clifford(0, 1))
    assert (inv.real_dim, inv.center_dim) == (2, 2)


def test_classify_rejects_non_real():
    A = make_clifford(0, 2)
    sigma = [{k: (c * I if A.degrees[k] else c) for k, c in img.items()} for img in A.sigma_images]
    with pytest.raises(NotRealStructure):
        classify(A.with_real_structure(sigma))


@pytest.mark.parametrize("q", range(4))
def test_conjugate_clifford_in_range(q):
    t = classify(conjugate(make_clifford(0, q)), check=False)
    assert t.z8 in {q % 8, (8 - q) % 8}


def test_table_1_matches_labels():
    assert set(TABLE_1) == set(range(8))


def test_operator_algebras_classify_to_their_type():
    for n, J in STANDARD_ANTIUNITARIES.items():
        assert classify(operator_algebra(J)).z8 == n


def test_real_cl2_probe():
    probe = real_cl2_probe()
    assert probe["H"] == probe["cl_2_0"] == BrauerType.from_z8(6)
    assert probe["R"] == BrauerType.from_z8(2)


def test_even_product_operator():
    J = STANDARD_ANTIUNITARIES
    for a, b in itertools.product(J, repeat=2):
        assert verify_product_even(J[a], J[b], "proof"), (a, b)
        assert classify(operator_algebra(product_operator(J[a], J[b]))).z8 == (a + b) % 8
    bad = [(a, b) for a, b in itertools.product(J, repeat=2) if not verify_product_even(J[a], J[b], "statement")]
    assert bad == [(0, 2), (0, 6), (4, 2), (4, 6)]


def test_periodicity():
    assert classify(tensor_power(make_clifford(0, 1), 8), check=False) == BrauerType.from_z8(0)


def test_classify_clifford_five_generators():
    assert classify_clifford(1, 4).z8 == 3
