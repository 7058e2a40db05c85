import itertools
import random

import pytest

from realbrauer.errors import MixedContext, NotCocycle, NotReal, OddOrder
from realbrauer.extensions import (
    build_extension,
    coboundary_isomorphism,
    dd_class,
    dd_context,
    dumps,
    inverse_extension,
    is_trivial,
    loads,
    section_cocycle,
    tensor_extensions,
    trivial_extension,
)
from realbrauer.groupoid_core import abelian_group, cyclic_group, nerve, s01, validate
from realbrauer.real_cohomology import Z2, brute_force_cohomology, cup11, differential, mu

Z2G = cyclic_group(2)
S01 = s01()
V4 = abelian_group([2, 2])


def cocycle_pairs(G, m):
    ds = brute_force_cohomology(G, 1, Z2, real=True).cocycles
    ws = brute_force_cohomology(G, 2, mu(m), real=True).cocycles
    return list(itertools.product(ds, ws))


def cup_example():
    return build_extension(Z2G, 4, (0, 0), cup11(Z2G, (0, 1), (0, 1), 4))


def test_direct_product():
    E = trivial_extension(Z2G, 4)
    assert E.total.n_arrows == 8
    assert validate(E.total)
    ctx = dd_context(Z2G, 4)
    assert dd_class(E).d == ctx.D.zero() and dd_class(E).w == ctx.W.zero()
    t = is_trivial(E)
    assert t and not any(t.theta)


def test_cup_extension():
    E = cup_example()
    assert E.total.n_arrows == 8
    assert E.mul((1, 0), (1, 0)) == (0, 2)
    dd = dd_class(E)
    ctx = dd_context(Z2G, 4)
    assert dd.d == ctx.D.zero()
    assert dd.w != ctx.W.zero() and ctx.W.add(dd.w, dd.w) == ctx.W.zero()
    assert not is_trivial(E)


def test_graded_trivial():
    E = build_extension(Z2G, 4, (0, 1), (0, 0, 0, 0))
    assert E.grading(E.arrow(1, 3)) == 1 and E.grading(E.arrow(0, 3)) == 0
    assert not is_trivial(E)


def test_build_errors():
    with pytest.raises(OddOrder):
        trivial_extension(Z2G, 3)
    with pytest.raises(NotCocycle) as err:
        build_extension(Z2G, 4, (1, 0), (0, 0, 0, 0))
    assert err.value.witness == (0, 0)
    # constant cocycles are closed, but 1 != -1 in mu_4
    with pytest.raises(NotReal):
        build_extension(Z2G, 4, (0, 0), (1, 1, 1, 1))
    with pytest.raises(ValueError):
        build_extension(Z2G, 4, (0,), (0, 0, 0, 0))


@pytest.mark.parametrize("G", [Z2G, S01], ids=["Z2", "s01"])
def test_round_trip_all_cocycles(G):
    ctx = dd_context(G, 4)
    for delta, omega in cocycle_pairs(G, 4):
        E = build_extension(G, 4, delta, omega)
        dd = dd_class(E)
        assert dd.d == ctx.D.class_of(delta)
        assert dd.w == ctx.w_class(omega, 4)
        assert bool(is_trivial(E)) == (dd.d == ctx.D.zero() and dd.w == ctx.W.zero())


@pytest.mark.parametrize("G", [Z2G, S01, V4], ids=["Z2", "s01", "V4"])
@pytest.mark.parametrize("m", [2, 4])
def test_additivity(G, m):
    ctx = dd_context(G, m)
    pairs = cocycle_pairs(G, m)
    rng = random.Random(7)
    sample = pairs if len(pairs) <= 24 else rng.sample(pairs, 12)
    for (d1, w1), (d2, w2) in itertools.product(sample, repeat=2):
        E1, E2 = build_extension(G, m, d1, w1), build_extension(G, m, d2, w2)
        assert dd_class(tensor_extensions(E1, E2)) == ctx.add(dd_class(E1), dd_class(E2))


def test_dd_bijective_on_classes():
    # every (d, w) pair is hit, and extensions with equal dd differ by a Real coboundary
    for G, m in ((Z2G, 4), (S01, 4), (Z2G, 2)):
        ctx = dd_context(G, m)
        seen = {}
        for delta, omega in cocycle_pairs(G, m):
            E = build_extension(G, m, delta, omega)
            seen.setdefault((dd_class(E).d, dd_class(E).w), E)
        # classes reachable with mu_m coefficients
        for key, E in seen.items():
            for delta, omega in cocycle_pairs(G, m):
                F = build_extension(G, m, delta, omega)
                same = (dd_class(F).d, dd_class(F).w) == key
                if same:
                    assert is_trivial(tensor_extensions(F, inverse_extension(E)))


def test_tensor_unit_and_inverse():
    E = cup_example()
    T = trivial_extension(Z2G, 4)
    assert dd_class(tensor_extensions(E, T)) == dd_class(E)
    assert is_trivial(tensor_extensions(E, inverse_extension(E)))
    ctx = dd_context(Z2G, 4)
    EE = dd_class(tensor_extensions(E, E))
    assert EE.w == ctx.W.zero()


def test_tensor_mixed_context():
    with pytest.raises(MixedContext):
        tensor_extensions(trivial_extension(Z2G, 4), trivial_extension(Z2G, 2))
    with pytest.raises(MixedContext):
        tensor_extensions(trivial_extension(Z2G, 4), trivial_extension(S01, 4))


def test_coboundary_isomorphism():
    E = cup_example()
    theta = (0, 2)
    E2 = coboundary_isomorphism(E, theta)
    assert dd_class(E2) == dd_class(E)
    with pytest.raises(NotReal):
        coboundary_isomorphism(E, (0, 1))


def test_section_cocycle():
    E = cup_example()
    omega = section_cocycle(E, (0, 2))
    assert omega == tuple((a + b) % 4 for a, b in zip(E.omega, differential(Z2G, 1, mu(4))((0, 2))))
    assert dd_class(E, section=(0, 2)) == dd_class(E)
    with pytest.raises(NotReal):
        section_cocycle(E, (0, 1))


def test_serialization():
    E = build_extension(Z2G, 4, (0, 1), cup11(Z2G, (0, 1), (0, 1), 4))
    F = loads(dumps(E))
    assert (F.m, F.delta, F.omega) == (E.m, E.delta, E.omega)
    assert dumps(F) == dumps(E)
    assert len(nerve(F.base, 2)) == 4
