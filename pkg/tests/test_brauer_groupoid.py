import pytest

from realbrauer.brauer_groupoid import (
    brauer_add,
    brauer_group,
    hat_tau,
    odd_decomposition_check,
    oriented_subgroup,
    split_sequence_check,
    tau_fixed_subgroup,
    two_torsion_check,
)
from realbrauer.errors import MixedContext, NontrivialInvolution, NotFree
from realbrauer.exact_linalg import FGAbelianGroup
from realbrauer.groupoid_core import (
    abelian_group,
    build_double,
    cyclic_group,
    inflate,
    point,
    product_s01,
    s01,
)


def Zs(*orders):
    return FGAbelianGroup.from_cyclic_orders(orders)


def test_point_groups():
    assert brauer_group(point(), "BrR_star").group == Zs(8)
    assert brauer_group(point(), "brR", m=4).group == Zs(8)
    assert brauer_group(point(), "Br_complex").group == Zs(2)


def test_bro_of_z2():
    B = brauer_group(cyclic_group(2), "BrO")
    assert B.size == 32
    ok, witness = B.check_axioms(full_limit=32)
    assert ok, witness


def test_bro_needs_trivial_involution():
    with pytest.raises(NontrivialInvolution):
        brauer_group(cyclic_group(4, "neg"), "BrO")


def test_unknown_flavor_and_mode():
    with pytest.raises(ValueError):
        brauer_group(point(), "BrX")
    with pytest.raises(ValueError):
        brauer_group(point(), t_mode="sideways")


def test_twisted_addition_on_z2():
    B = brauer_group(cyclic_group(2), "BrR_star")
    d = (1,)
    x = B.make(d=d)
    s = brauer_add(x, x)
    assert s.d == B.D.zero() and s.t == B.T.zero()
    assert s.w != B.W.zero()
    assert brauer_add(x, B.zero) == x
    assert x + (-x) == B.zero


@pytest.mark.parametrize(
    "G, flavor",
    [
        (point(), "BrR_star"),
        (s01(), "BrR_star"),
        (cyclic_group(2), "BrR_star"),
        (cyclic_group(2), "Br_complex"),
        (cyclic_group(4), "BrR_star"),
        (abelian_group([2, 2]), "BrR_star"),
        (cyclic_group(4, "neg"), "BrR_star"),
    ],
    ids=["point", "s01", "Z2", "Z2-complex", "Z4", "Z2xZ2", "Z4neg"],
)
def test_group_axioms(G, flavor):
    ok, witness = brauer_group(G, flavor).check_axioms(full_limit=64)
    assert ok, witness


def test_mixed_context():
    a = brauer_group(point()).zero
    b = brauer_group(cyclic_group(2)).zero
    with pytest.raises(MixedContext):
        brauer_add(a, b)


def test_hat_tau():
    B = brauer_group(cyclic_group(2), "Br_complex")
    for x in B.elements():
        assert hat_tau(x) == -x
    D = brauer_group(build_double(cyclic_group(2)), "Br_complex")
    for x in D.elements():
        assert hat_tau(hat_tau(x)) == x
        for y in D.elements()[:8]:
            assert hat_tau(x + y) == hat_tau(x) + hat_tau(y)
    assert tau_fixed_subgroup(D).order <= D.group.order
    with pytest.raises(MixedContext):
        hat_tau(brauer_group(point()).zero)


def test_odd_decomposition():
    r = odd_decomposition_check(build_double(point()))
    assert r.ok and r.data["Br"].is_trivial
    r = odd_decomposition_check(build_double(abelian_group([3, 3])))
    assert r.ok
    assert 3 in r.data["Br_quotient"].invariant_factors
    assert odd_decomposition_check(product_s01(cyclic_group(3))).ok
    with pytest.raises(NotFree):
        odd_decomposition_check(cyclic_group(2))


def test_two_torsion():
    r = two_torsion_check(point())
    assert r.ok and r.data["HR1"].is_trivial and r.data["HR2"].is_trivial
    r = two_torsion_check(cyclic_group(2))
    assert r.ok and r.data["HR2"] == Zs(2)
    r = two_torsion_check(cyclic_group(4))
    assert r.ok and r.data["HR1"] == Zs(2)
    with pytest.raises(NontrivialInvolution):
        two_torsion_check(s01())


def test_oriented_subgroup():
    assert oriented_subgroup(point()).group.is_trivial
    assert oriented_subgroup(cyclic_group(2)).group == Zs(2)
    assert 3 in oriented_subgroup(build_double(abelian_group([3, 3]))).group.odd_part().invariant_factors


def test_split_sequence():
    r = split_sequence_check(point())
    assert r.ok and r.data["t"] == Zs(8) and r.data["dw"].is_trivial
    assert split_sequence_check(s01()).ok
    r = split_sequence_check(cyclic_group(2))
    assert r.ok and r.data["total"].order == 32


@pytest.mark.parametrize("G", [cyclic_group(2), s01()], ids=["Z2", "s01"])
@pytest.mark.parametrize("k", [2, 3])
def test_morita_invariance(G, k):
    assert brauer_group(G).group == brauer_group(inflate(G, k)).group


def test_s01_t_modes_agree():
    for mode in ("negation", "invariant"):
        assert brauer_group(s01(), t_mode=mode).group == Zs(8)


def test_describe_is_stable():
    B = brauer_group(cyclic_group(2))
    assert B.describe() == brauer_group(cyclic_group(2)).describe()
