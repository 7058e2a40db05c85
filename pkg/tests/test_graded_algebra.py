import pytest

from realbrauer.exact_linalg import I, ONE
from realbrauer.graded_algebra import (
    check_algebra,
    conjugate,
    dumps,
    graded_tensor,
    is_real_structure,
    loads,
    make_clifford,
    matrix_model,
    tensor_power,
)
from realbrauer.brauer_point import real_form_invariants


def test_clifford_shapes():
    A = make_clifford(0, 1)
    assert len(A.degrees) == 2 and A.degrees == (0, 1)
    assert real_form_invariants(A).center_dim == 2
    B = make_clifford(0, 0)
    assert B.degrees == (0,)
    assert B.sigma({0: I}) == {0: -I}


def test_cl20_is_quaternions():
    inv = real_form_invariants(make_clifford(2, 0))
    assert inv.real_dim == 4 and inv.center_dim == 1 and not inv.has_idempotent


def test_cl02_is_real_matrices():
    inv = real_form_invariants(make_clifford(0, 2))
    assert inv.real_dim == 4 and inv.center_dim == 1 and inv.has_idempotent


def test_generator_squares():
    A = make_clifford(1, 1)
    e1, e2 = {1: ONE}, {2: ONE}
    assert A.mul(e1, e1) == {0: -ONE}
    assert A.mul(e2, e2) == {0: ONE}
    assert A.mul(e1, e2) == {k: -c for k, c in A.mul(e2, e1).items()}


def test_max_generators():
    with pytest.raises(Exception):
        make_clifford(4, 4)
    assert len(make_clifford(4, 3, max_generators=7).degrees) == 128


@pytest.mark.parametrize("p,q", [(0, 1), (1, 0), (1, 1), (0, 2)])
def test_algebra_axioms(p, q):
    A = make_clifford(p, q)
    assert check_algebra(A)
    assert is_real_structure(A)


def test_tensor_of_clifford_lines():
    T = graded_tensor(make_clifford(0, 1), make_clifford(0, 1))
    assert len(T.degrees) == 4
    assert check_algebra(T)
    assert matrix_model(T).parity == 0 and matrix_model(T).N == 2


def test_tensor_unit():
    A = make_clifford(1, 1)
    assert graded_tensor(A, make_clifford(0, 0)).structure_equal(A)


def test_conjugate_involutive():
    A = make_clifford(1, 2)
    assert conjugate(conjugate(A)).structure_equal(A)
    assert conjugate(make_clifford(0, 0)).structure_equal(make_clifford(0, 0))


@pytest.mark.parametrize(
    "p,q,parity,N", [(0, 2, 0, 2), (0, 1, 1, 1), (0, 4, 0, 4), (2, 0, 0, 2), (0, 3, 1, 2)]
)
def test_matrix_model(p, q, parity, N):
    m = matrix_model(make_clifford(p, q))
    assert (m.parity, m.N) == (parity, N)


def test_broken_real_structure_has_witness():
    A = make_clifford(0, 2)
    sigma = [{k: (c * I if A.degrees[k] else c) for k, c in img.items()} for img in A.sigma_images]
    v = is_real_structure(A.with_real_structure(sigma))
    assert not v
    assert v.witness is not None and v.reason


def test_serialization_round_trip():
    A = graded_tensor(make_clifford(1, 0), make_clifford(0, 1))
    assert loads(dumps(A)).structure_equal(A)
    assert dumps(loads(dumps(A))) == dumps(A)


def test_tensor_power_dimension():
    assert len(tensor_power(make_clifford(0, 1), 3).degrees) == 8
