import itertools

import pytest

from realbrauer.errors import InvalidGroupoid, NotFree, SizeExceeded
from realbrauer.groupoid_core import (
    FiniteRealGroupoid,
    abelian_group,
    build_action,
    build_double,
    build_group,
    build_pair,
    cyclic_group,
    dumps,
    face,
    from_shorthand,
    inflate,
    loads,
    nerve,
    nerve_count,
    point,
    product_s01,
    quotient_by_involution,
    rho_on_tuple,
    s01,
    validate,
)

SAMPLES = {
    "point": point(),
    "s01": s01(),
    "Z2": cyclic_group(2),
    "Z4neg": cyclic_group(4, "neg"),
    "pair2": build_pair(2),
    "pair2swap": build_pair(2, [1, 0]),
    "double": build_double(cyclic_group(2)),
    "Z3xS01": product_s01(cyclic_group(3)),
}


@pytest.mark.parametrize("name", SAMPLES)
def test_samples_validate(name):
    assert validate(SAMPLES[name])


def test_nonassociative_group_table():
    # identity 0, every element its own inverse, but (1*2)*3 != 1*(2*3)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InvalidGroupoid) as err:
        build_group(table)
    assert "associative" in str(err.value)
    assert len(err.value.witness) == 3


def test_bad_involution():
    with pytest.raises(InvalidGroupoid):
        build_group([[(a + b) % 3 for b in range(3)] for a in range(3)], [0, 2, 2])


def test_builders():
    assert build_pair(1).n_arrows == 1 and build_pair(1).n_objects == 1
    D = build_double(cyclic_group(2))
    assert (D.n_objects, D.n_arrows) == (2, 4)
    assert D.rho_is_free
    S = product_s01(point())
    assert (S.n_objects, S.n_arrows) == (2, 2) and S.rho_is_free
    assert inflate(cyclic_group(2), 3).n_arrows == 18


def test_action_groupoid():
    Z2 = cyclic_group(2)
    G = build_action(["a", "b"], Z2, lambda g, x: (x + g) % 2)
    assert validate(G)
    assert (G.n_objects, G.n_arrows) == (2, 4)


def test_quotient():
    q = quotient_by_involution(s01())
    assert (q.n_objects, q.n_arrows) == (1, 1)
    q = quotient_by_involution(build_double(abelian_group([3, 3])))
    assert q.n_arrows == 9
    with pytest.raises(NotFree):
        quotient_by_involution(cyclic_group(2))


def test_nerve_counts():
    assert len(nerve(cyclic_group(5), 2)) == 25
    assert len(nerve(build_pair(3), 1)) == 9
    assert len(nerve(s01(), 2)) == 2
    for G in SAMPLES.values():
        for n in range(4):
            assert nerve_count(G, n) == len(nerve(G, n))


def test_nerve_cap(monkeypatch):
    monkeypatch.setenv("REALBRAUER_NERVE_CAP", "10")
    with pytest.raises(SizeExceeded):
        nerve(cyclic_group(7), 2)


@pytest.mark.parametrize("name", SAMPLES)
def test_rho_commutes_with_faces(name):
    G = SAMPLES[name]
    for n in range(1, 4):
        for t in nerve(G, n).tuples:
            rt = rho_on_tuple(G, t, n)
            for i in range(n + 1):
                assert face(G, rt, i) == rho_on_tuple(G, face(G, t, i), n - 1)


def test_simplicial_identities():
    G = abelian_group([2, 2])
    for t in nerve(G, 3).tuples:
        for i, j in itertools.combinations(range(4), 2):
            assert face(G, face(G, t, j), i) == face(G, face(G, t, i), j - 1)


@pytest.mark.parametrize("name", SAMPLES)
def test_text_round_trip(name):
    G = SAMPLES[name]
    H = loads(dumps(G))
    assert dumps(H) == dumps(G)


def test_loads_reports_line():
    with pytest.raises(InvalidGroupoid, match="line 3"):
        loads("objects: x\narrows:\n  e x\n")


def test_shorthand():
    assert from_shorthand("Z3xZ3").n_arrows == 9
    assert from_shorthand("Z4:neg").rho_arrows == (0, 3, 2, 1)
    assert from_shorthand("pair2").n_objects == 2
    with pytest.raises(ValueError):
        from_shorthand("klein")
