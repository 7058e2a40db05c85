"""Graded Brauer groups of finite Real groupoids from their cohomology.

An element is a triple (t, d, w) of class coordinates: t in degree 0 with
Z8 (Real flavor) or Z2 (complex flavor) coefficients, d in degree 1 with Z2
coefficients and w in degree 2 with circle coefficients. Addition twists the
w-component by the cup product of the gradings:

    (t, d, w) + (t', d', w') = (t + t', d + d', w + w' + [d u d']).

>>> from realbrauer.groupoid_core import point
>>> str(brauer_group(point(), "BrR_star").group)
'Z/8'
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import MixedContext, NontrivialInvolution, NotFree, SizeExceeded
from .exact_linalg import FGAbelianGroup
from .groupoid_core import FiniteRealGroupoid, quotient_by_involution
from .real_cohomology import (
    RealCoefficientModule,
    Z2,
    Z8,
    cohomology,
    cup11,
    pullback_rho,
    s1_cohomology,
)

MATERIALIZE_LIMIT = 1 << 14

FLAVORS = {
    "BrR_star": "BrR_star",
    "brR": "BrR_star",
    "BrR": "BrR_star",
    "Br_complex": "Br_complex",
    "br": "Br_complex",
    "Br": "Br_complex",
    "BrO": "BrO",
    "brO": "BrO",
}

T_MODES = ("negation", "invariant")

Z8_NEG = RealCoefficientModule("Z8-", 8, -1)


@dataclass(frozen=True)
class BrauerClass:
    t: tuple
    d: tuple
    w: tuple
    context: "BrauerGroup" = field(compare=False, repr=False, hash=False)

    def key(self) -> tuple:
        return (self.t, self.d, self.w)

    def __add__(self, other):
        return brauer_add(self, other)

    def __neg__(self):
        return self.context.neg(self)

    def __eq__(self, other):
        return isinstance(other, BrauerClass) and self.context is other.context and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return f"(t={list(self.t)}, d={list(self.d)}, w={list(self.w)})"


def _cyclic_elements(orders):
    return [tuple(e) for e in itertools.product(*[range(o) for o in orders])]


class BrauerGroup:
    """One of the three Brauer groups of G, with classes as coordinate triples.

    ``m`` is the user's root-of-unity order for the circle tower; it is
    combined with the exponent of G so that all torsion primes are seen.
    """

    def __init__(self, G: FiniteRealGroupoid, flavor: str = "BrR_star", m: int | None = None, t_mode: str = "negation"):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if t_mode not in T_MODES:
            raise ValueError(f"unknown t_mode {t_mode!r}")
        self.G = G
        self.flavor = FLAVORS[flavor]
        self.t_mode = t_mode
        if self.flavor == "BrO":
            if not G.rho_is_trivial:
                raise NontrivialInvolution("BrO needs a trivial involution")
            self.T = cohomology(G, 0, Z8, real=False)
            self.D = cohomology(G, 1, Z2, real=False)
            self.W = cohomology(G, 2, Z2, real=False)
            self.M = 2
            self.m = 2
        else:
            real = self.flavor == "BrR_star"
            if real:
                tcoef = Z8_NEG if (t_mode == "negation" and not G.rho_is_trivial) else Z8
                self.T = cohomology(G, 0, tcoef, real=True)
            else:
                self.T = cohomology(G, 0, Z2, real=False)
            self.D = cohomology(G, 1, Z2, real=real)
            self.W = s1_cohomology(G, 2, real=real, m0=m)
            self.M = self.W.M
            self.m = self.W.m0
        for H in (self.T, self.D, self.W):
            if any(o == 0 for o in H.generator_orders):
                raise SizeExceeded("infinite component")
        self._d_elems = _cyclic_elements(self.D.generator_orders)
        self._d_reps = {d: self.D.element(d) for d in self._d_elems}
        self._cup = {}
        for d1 in self._d_elems:
            for d2 in self._d_elems:
                self._cup[(d1, d2)] = self.cup_class(self._d_reps[d1], self._d_reps[d2])

    # -- components

    def cup_class(self, c1, c2) -> tuple:
        """Class in W of the cup product of two Z2 1-cocycles."""
        return self.W.class_of(cup11(self.G, c1, c2, self.M))

    @property
    def size(self) -> int:
        return self.T.group.order * self.D.group.order * self.W.group.order

    def make(self, t=None, d=None, w=None) -> BrauerClass:
        t = tuple(t) if t is not None else self.T.zero()
        d = tuple(d) if d is not None else self.D.zero()
        w = tuple(w) if w is not None else self.W.zero()
        return BrauerClass(t, d, w, self)

    def from_cocycles(self, t_cochain, d_cocycle, w_cocycle) -> BrauerClass:
        return self.make(self.T.class_of(t_cochain), self.D.class_of(d_cocycle), self.W.class_of(w_cocycle))

    @property
    def zero(self) -> BrauerClass:
        return self.make()

    def add(self, x: BrauerClass, y: BrauerClass) -> BrauerClass:
        if x.context is not self or y.context is not self:
            raise MixedContext("classes from different Brauer groups")
        w = self.W.add(self.W.add(x.w, y.w), self._cup[(x.d, y.d)])
        return BrauerClass(self.T.add(x.t, y.t), self.D.add(x.d, y.d), w, self)

    def neg(self, x: BrauerClass) -> BrauerClass:
        # x + (-t, -d, -w - c(d, -d)) = 0
        nd = self.D.neg(x.d)
        w = self.W.neg(self.W.add(x.w, self._cup[(x.d, nd)]))
        return BrauerClass(self.T.neg(x.t), nd, w, self)

    def order_of(self, x: BrauerClass) -> int:
        y, k = x, 1
        zero = self.zero
        while y != zero:
            y = self.add(y, x)
            k += 1
        return k

    # -- materialization

    def elements(self) -> list[BrauerClass]:
        if self.size > MATERIALIZE_LIMIT:
            raise SizeExceeded(f"{self.size} classes exceed {MATERIALIZE_LIMIT}")
        return [
            BrauerClass(t, d, w, self)
            for t in _cyclic_elements(self.T.generator_orders)
            for d in self._d_elems
            for w in _cyclic_elements(self.W.generator_orders)
        ]

    def order_spectrum(self) -> dict:
        spec: dict = {}
        for x in self.elements():
            o = self.order_of(x)
            spec[o] = spec.get(o, 0) + 1
        return dict(sorted(spec.items()))

    @property
    def group(self) -> FGAbelianGroup:
        if not hasattr(self, "_group"):
            orders = []
            for o, c in self.order_spectrum().items():
                orders += [o] * c
            self._group = FGAbelianGroup.from_element_orders(orders)
        return self._group

    def dw_group(self) -> FGAbelianGroup:
        """The (d, w) part with the twisted law, on its own."""
        orders = []
        for d in self._d_elems:
            for w in _cyclic_elements(self.W.generator_orders):
                orders.append(self.order_of(BrauerClass(self.T.zero(), d, w, self)))
        return FGAbelianGroup.from_element_orders(orders)

    def check_axioms(self, full_limit: int = 256):
        """Verify commutativity, associativity, unit and inverses.

        The law is (T + W-valued factor set on D), so the reduced check on
        the factor set c(d, d') is exhaustive: symmetry gives commutativity
        and the cocycle identity gives associativity. Small groups are also
        checked on the full Cayley table.
        """
        D, W, c = self.D, self.W, self._cup
        for a in self._d_elems:
            for b in self._d_elems:
                if c[(a, b)] != c[(b, a)]:
                    return False, ("not commutative", a, b)
                for e in self._d_elems:
                    lhs = W.add(c[(a, b)], c[(D.add(a, b), e)])
                    rhs = W.add(c[(b, e)], c[(a, D.add(b, e))])
                    if lhs != rhs:
                        return False, ("not associative", a, b, e)
        zero = self.zero
        elems = self.elements()
        for x in elems:
            if self.add(x, zero) != x or self.add(x, self.neg(x)) != zero:
                return False, ("unit or inverse fails", x.key())
        if len(elems) <= full_limit:
            for x in elems:
                for y in elems:
                    if self.add(x, y) != self.add(y, x):
                        return False, ("not commutative", x.key(), y.key())
                    for z in elems:
                        if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)):
                            return False, ("not associative", x.key(), y.key(), z.key())
        return True, None

    def describe(self) -> str:
        return f"{self.flavor}: T={self.T.group} D={self.D.group} W={self.W.group} total={self.group}"


def brauer_group(G: FiniteRealGroupoid, flavor: str = "BrR_star", m: int | None = None, t_mode: str = "negation"):
    return BrauerGroup(G, flavor, m, t_mode)


def brauer_add(x: BrauerClass, y: BrauerClass) -> BrauerClass:
    if x.context is not y.context:
        raise MixedContext("classes from different Brauer groups")
    return x.context.add(x, y)


# ---------------------------------------------------------------------------
# The involution on the complex Brauer group


def hat_tau(x: BrauerClass) -> BrauerClass:
    """x -> -rho* x on the complex Brauer group."""
    B = x.context
    if B.flavor != "Br_complex":
        raise MixedContext("hat_tau acts on the complex flavor")
    G = B.G
    t = B.T.class_of(pullback_rho(G, 0, B.T.element(x.t)))
    d = B.D.class_of(pullback_rho(G, 1, B.D.element(x.d)))
    w = B.W.class_of(pullback_rho(G, 2, B.W.element(x.w)))
    return B.neg(BrauerClass(t, d, w, B))


def tau_fixed_subgroup(B: BrauerGroup) -> FGAbelianGroup:
    fixed = [x for x in B.elements() if hat_tau(x) == x]
    return FGAbelianGroup.from_element_orders([B.order_of(x) for x in fixed])


# ---------------------------------------------------------------------------
# Comparison reports


@dataclass
class Report:
    ok: bool
    lines: list
    data: dict

    def __bool__(self):
        return self.ok

    def text(self) -> str:
        return "\n".join(self.lines)


def odd_decomposition_check(G: FiniteRealGroupoid, m: int | None = None) -> Report:
    """odd(Br G) = odd(BrR G) + odd(Br G/tau) for a free involution."""
    if not G.rho_is_free:
        raise NotFree("involution has fixed points")
    Q = quotient_by_involution(G)
    br = brauer_group(G, "Br_complex", m).group.odd_part()
    brr = brauer_group(G, "BrR_star", m).group.odd_part()
    brq = brauer_group(Q, "Br_complex", m).group.odd_part()
    ok = br == brr.direct_sum(brq)
    lines = [
        f"odd(Br(G))     = {br}",
        f"odd(BrR(G))    = {brr}",
        f"odd(Br(G/tau)) = {brq}",
        f"decomposition {'holds' if ok else 'FAILS'}",
    ]
    return Report(ok, lines, {"Br": br, "BrR": brr, "Br_quotient": brq})


def two_torsion_check(G: FiniteRealGroupoid, m: int | None = None) -> Report:
    """Trivial involution: Real degree 1 and 2 classes have order <= 2 and
    HR^n(S1) matches H^n(Z2). The BrR order spectrum is reported only."""
    if not G.rho_is_trivial:
        raise NontrivialInvolution("two-torsion comparison needs a trivial involution")
    ok = True
    lines = []
    data = {}
    d1 = cohomology(G, 1, Z2, real=True)
    for n in (1, 2):
        hr = s1_cohomology(G, n, real=True, m0=m)
        h = cohomology(G, n, Z2, real=False)
        exp_ok = all(o <= 2 for o in hr.generator_orders)
        iso = hr.group == h.group
        ok &= exp_ok and iso
        lines.append(f"HR^{n}(S1) = {hr.group}, H^{n}(Z2) = {h.group}: {'iso' if iso else 'DIFFER'}, exponent<=2 {exp_ok}")
        data[f"HR{n}"] = hr.group
        data[f"H{n}"] = h.group
    d_ok = all(o <= 2 for o in d1.generator_orders)
    ok &= d_ok
    lines.append(f"HR^1(Z2) = {d1.group}: exponent<=2 {d_ok}")
    B = brauer_group(G, "BrR_star", m)
    spec = B.order_spectrum() if B.size <= MATERIALIZE_LIMIT else None
    lines.append(f"BrR* order spectrum (report only) = {spec}")
    data["spectrum"] = spec
    return Report(ok, lines, data)


def oriented_subgroup(G: FiniteRealGroupoid, m: int | None = None):
    """The classes (0, 0, w): the stabilized HR^2(G, S1) with representatives."""
    return s1_cohomology(G, 2, real=True, m0=m)


def split_sequence_check(G: FiniteRealGroupoid, m: int | None = None, t_mode: str = "negation") -> Report:
    """t -> (t, 0, 0) is a homomorphic section of the projection to t, and
    BrR* is the direct sum of the t-part and the (d, w)-part."""
    B = brauer_group(G, "BrR_star", m, t_mode)
    ts = _cyclic_elements(B.T.generator_orders)
    ok_hom = all(B.add(B.make(t=a), B.make(t=b)) == B.make(t=B.T.add(a, b)) for a in ts for b in ts)
    ok_proj = all(B.make(t=a).t == a for a in ts)
    ok_proj_hom = all(B.add(x, y).t == B.T.add(x.t, y.t) for x in B.elements()[:64] for y in B.elements())
    dw = B.dw_group()
    ok_sum = B.group == B.T.group.direct_sum(dw)
    ok = ok_hom and ok_proj and ok_proj_hom and ok_sum
    lines = [
        f"t-part = {B.T.group}, (d,w)-part = {dw}, total = {B.group}",
        f"section homomorphism {ok_hom}, projection homomorphism {ok_proj_hom}, projection o section = id {ok_proj}",
        f"direct sum {'holds' if ok_sum else 'FAILS'}",
    ]
    return Report(ok, lines, {"t": B.T.group, "dw": dw, "total": B.group})
