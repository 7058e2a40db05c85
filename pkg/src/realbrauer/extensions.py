"""Graded Real central extensions of a finite Real groupoid by mu_m.

mu_m is written additively as Z/m (lambda stands for exp(2 pi i lambda / m)),
so complex conjugation is negation. An extension in normal form is the data
(delta, omega) on the base: arrows are pairs (g, lam), composed by

    (g, lam) (h, mu) = (gh, lam + mu + omega(g, h)),

with involution (g, lam) -> (rho g, -lam) and grading delta(g).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import MixedContext, NotCocycle, NotReal, OddOrder
from .groupoid_core import FiniteRealGroupoid, nerve, validate
from .real_cohomology import (
    Z2,
    bounding_cochain,
    cohomology,
    cup11,
    differential,
    include_mu,
    is_real,
    mu,
    s1_cohomology,
)


@dataclass(frozen=True)
class CentralExtension:
    base: FiniteRealGroupoid
    m: int
    delta: tuple
    omega: tuple

    def arrow(self, g: int, lam: int) -> int:
        return g * self.m + lam % self.m

    def unpack(self, a: int) -> tuple[int, int]:
        return divmod(a, self.m)

    def mul(self, x: tuple, y: tuple) -> tuple:
        (g, lam), (h, mu_) = x, y
        idx = nerve(self.base, 2).index
        return (self.base.mul(g, h), (lam + mu_ + self.omega[idx[(g, h)]]) % self.m)

    def grading(self, a: int) -> int:
        return self.delta[self.unpack(a)[0]]

    @cached_property
    def total(self) -> FiniteRealGroupoid:
        """The total groupoid, arrow (g, lam) numbered g * m + lam."""
        G, m = self.base, self.m
        names = [f"{G.arrow_names[g]}|{lam}" for g in range(G.n_arrows) for lam in range(m)]
        src = [G.src[g] for g in range(G.n_arrows) for _ in range(m)]
        tgt = [G.tgt[g] for g in range(G.n_arrows) for _ in range(m)]
        compose = {}
        for (g, h) in nerve(G, 2).tuples:
            for lam in range(m):
                for mu_ in range(m):
                    compose[(self.arrow(g, lam), self.arrow(h, mu_))] = self.arrow(*self.mul((g, lam), (h, mu_)))
        rho_arrows = [self.arrow(G.rho_arrows[g], -lam) for g in range(G.n_arrows) for lam in range(m)]
        return FiniteRealGroupoid(G.object_names, names, src, tgt, compose, G.rho_objects, rho_arrows)


def _check_m(m: int):
    if m < 2 or m % 2:
        raise OddOrder(f"m = {m} must be even")


def build_extension(base: FiniteRealGroupoid, m: int, delta: Sequence[int], omega: Sequence[int]) -> CentralExtension:
    """Extension from a Real Z2 1-cocycle delta and a Real mu_m 2-cocycle omega."""
    _check_m(m)
    delta = tuple(int(x) % 2 for x in delta)
    omega = tuple(int(x) % m for x in omega)
    N1, N2 = nerve(base, 1), nerve(base, 2)
    if len(delta) != len(N1) or len(omega) != len(N2):
        raise ValueError("cochain lengths do not match the nerve")
    for k, v in enumerate(differential(base, 1, Z2)(delta)):
        if v:
            raise NotCocycle("delta is not a cocycle", witness=N2.tuples[k])
    if not is_real(base, 1, Z2, delta):
        bad = next(t for t in N1.tuples if delta[N1.index[(base.rho_arrows[t[0]],)]] != delta[N1.index[t]])
        raise NotReal("delta is not Real", witness=bad)
    A = mu(m)
    for k, v in enumerate(differential(base, 2, A)(omega)):
        if v:
            raise NotCocycle("omega is not a cocycle", witness=nerve(base, 3).tuples[k])
    for t in N2.tuples:
        r = tuple(base.rho_arrows[a] for a in t)
        if (omega[N2.index[r]] + omega[N2.index[t]]) % m:
            raise NotReal("omega is not Real", witness=t)
    E = CentralExtension(base, m, delta, omega)
    v = validate(E.total)
    if not v:
        raise NotCocycle(v.reason, witness=v.witness)
    return E


def trivial_extension(base: FiniteRealGroupoid, m: int) -> CentralExtension:
    return build_extension(base, m, [0] * len(nerve(base, 1)), [0] * len(nerve(base, 2)))


# ---------------------------------------------------------------------------
# Dixmier-Douady class


@dataclass(frozen=True)
class DDClass:
    d: tuple  # class of delta in HR^1(Z2)
    w: tuple  # class of omega in the stabilized HR^2(S1)


class DDContext:
    """Class groups used for dd over a fixed base and m."""

    def __init__(self, base: FiniteRealGroupoid, m: int, real: bool = True):
        self.base, self.m, self.real = base, m, real
        self.D = cohomology(base, 1, Z2, real=real)
        self.W = s1_cohomology(base, 2, real=real, m0=m)
        self.M = self.W.M

    def w_class(self, omega: Sequence[int], m: int) -> tuple:
        return self.W.class_of(include_mu(omega, m, self.M))

    def add(self, x: DDClass, y: DDClass) -> DDClass:
        """The twisted law on (d, w)."""
        c = self.W.class_of(cup11(self.base, self.D.element(x.d), self.D.element(y.d), self.M))
        return DDClass(self.D.add(x.d, y.d), self.W.add(self.W.add(x.w, y.w), c))


_DD_CONTEXTS: dict = {}


def dd_context(base: FiniteRealGroupoid, m: int, real: bool = True) -> DDContext:
    key = (id(base), m, real)
    hit = _DD_CONTEXTS.get(key)
    if hit is None or hit.base is not base:
        hit = _DD_CONTEXTS[key] = DDContext(base, m, real)
    return hit


def section_cocycle(E: CentralExtension, section: Sequence[int]) -> tuple:
    """2-cocycle of the section g -> (g, section[g]).

    s(g) s(h) = (1, omega'(g, h)) s(gh), so omega' = s_g + s_h + omega - s_gh.
    """
    G, m = E.base, E.m
    N1 = nerve(G, 1).index
    s = [int(section[N1[(g,)]]) % m for g in range(G.n_arrows)]
    for g in range(G.n_arrows):
        if (s[G.rho_arrows[g]] + s[g]) % m:
            raise NotReal("section is not Real", witness=g)
    idx = nerve(G, 2).index
    return tuple(
        (s[g] + s[h] + E.omega[idx[(g, h)]] - s[G.mul(g, h)]) % m for g, h in nerve(G, 2).tuples
    )


def dd_class(E: CentralExtension, section: Sequence[int] | None = None, real: bool = True) -> DDClass:
    """(delta, [omega]) read off through the normal-form section or a given Real one."""
    ctx = dd_context(E.base, E.m, real)
    omega = E.omega if section is None else section_cocycle(E, section)
    return DDClass(ctx.D.class_of(E.delta), ctx.w_class(omega, E.m))


# ---------------------------------------------------------------------------
# Tensor product


def tensor_cocycle(E1: CentralExtension, E2: CentralExtension) -> tuple:
    """omega1 + omega2 + i(delta2 u delta1): the Koszul sign of the graded product."""
    return tuple(
        (a + b + c) % E1.m for a, b, c in zip(E1.omega, E2.omega, cup11(E1.base, E2.delta, E1.delta, E1.m))
    )


def tensor_extensions(E1: CentralExtension, E2: CentralExtension) -> CentralExtension:
    """Graded tensor product over the base.

    Pairs ((g, lam), (g, mu)) modulo the antidiagonal (lam + k, mu - k) are
    represented by (g, lam + mu); the product of pairs picks up
    (-1)^{delta2(g) delta1(h)} when the middle factors are swapped. The
    identification with the normal-form extension is checked on every
    composable pair.
    """
    if E1.base is not E2.base:
        raise MixedContext("extensions over different bases")
    if E1.m != E2.m:
        raise MixedContext(f"m differs: {E1.m} vs {E2.m}")
    G, m = E1.base, E1.m
    delta = tuple((a + b) % 2 for a, b in zip(E1.delta, E2.delta))
    E = build_extension(G, m, delta, tensor_cocycle(E1, E2))
    half = m // 2
    N1 = nerve(G, 1).index
    for g, h in nerve(G, 2).tuples:
        for lam, mu_, lam2, mu2 in ((0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0)):
            a1, a2 = E1.mul((g, lam), (h, lam2)), E2.mul((g, mu_), (h, mu2))
            sign = half * E2.delta[N1[(g,)]] * E1.delta[N1[(h,)]]
            lhs = (a1[0], (a1[1] + a2[1] + sign) % m)
            rhs = E.mul((g, lam + mu_), (h, lam2 + mu2))
            if lhs != rhs:
                raise AssertionError(f"tensor identification fails at {(g, h)}")
    return E


def inverse_extension(E: CentralExtension) -> CentralExtension:
    """Extension with class -(delta, omega) under the twisted law."""
    cup = cup11(E.base, E.delta, E.delta, E.m)
    return build_extension(E.base, E.m, E.delta, [(-a - c) % E.m for a, c in zip(E.omega, cup)])


# ---------------------------------------------------------------------------
# Triviality


@dataclass
class Triviality:
    trivial: bool
    theta: tuple | None = None  # Real 1-cochain with d theta = omega (in mu_M)
    beta: tuple | None = None  # Real Z2 0-cochain with d beta = delta
    M: int = 0

    def __bool__(self):
        return self.trivial


def is_trivial(E: CentralExtension, real: bool = True) -> Triviality:
    """Trivial iff delta bounds and omega bounds with circle coefficients.

    The circle is modeled by mu_M for the stabilized M of the base, so theta
    is a cochain with values in Z/M.
    """
    ctx = dd_context(E.base, E.m, real)
    beta = bounding_cochain(E.base, 1, Z2, E.delta, real)
    if beta is None:
        return Triviality(False, M=ctx.M)
    omega = include_mu(E.omega, E.m, ctx.M)
    theta = bounding_cochain(E.base, 2, mu(ctx.M), omega, real)
    if theta is None:
        return Triviality(False, beta=beta, M=ctx.M)
    return Triviality(True, theta, beta, ctx.M)


def coboundary_isomorphism(E: CentralExtension, theta: Sequence[int]) -> CentralExtension:
    """Extension with omega + d theta, checked isomorphic to E via (g, lam) -> (g, lam - theta(g))."""
    G, m = E.base, E.m
    d = differential(G, 1, mu(m))(theta)
    E2 = build_extension(G, m, E.delta, [(a + b) % m for a, b in zip(E.omega, d)])
    N1 = nerve(G, 1).index
    th = [int(theta[N1[(g,)]]) for g in range(G.n_arrows)]

    def phi(x):
        return (x[0], (x[1] - th[x[0]]) % m)

    for g, h in nerve(G, 2).tuples:
        for lam in range(m):
            x, y = (g, lam), (h, 0)
            if phi(E.mul(x, y)) != E2.mul(phi(x), phi(y)):
                raise AssertionError(f"coboundary map fails at {(g, h)}")
    # phi commutes with the involutions exactly when theta is Real
    for g in range(G.n_arrows):
        if (th[G.rho_arrows[g]] + th[g]) % m:
            raise NotReal("theta is not Real", witness=g)
    return E2


# ---------------------------------------------------------------------------
# Serialization: groupoid text + m + delta and omega tables


def dumps(E: CentralExtension) -> str:
    from .groupoid_core import dumps as gdumps

    G = E.base
    lines = ["extension", f"m {E.m}", "delta"]
    for (g,), v in zip(nerve(G, 1).tuples, E.delta):
        lines.append(f"  {G.arrow_names[g]} {v}")
    lines.append("omega")
    for (g, h), v in zip(nerve(G, 2).tuples, E.omega):
        lines.append(f"  {G.arrow_names[g]} {G.arrow_names[h]} {v}")
    lines.append("groupoid")
    return "\n".join(lines) + "\n" + gdumps(G)


def loads(text: str) -> CentralExtension:
    from .groupoid_core import loads as gloads

    head, _, gtext = text.partition("\ngroupoid\n")
    G = gloads(gtext)
    m = None
    section = None
    dvals, wvals = {}, {}
    for raw in head.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line == "extension":
            continue
        if line.startswith("m "):
            m = int(line.split()[1])
        elif line in ("delta", "omega"):
            section = line
        elif section == "delta":
            a, v = line.split()
            dvals[(G.arrow_id(a),)] = int(v)
        elif section == "omega":
            a, b, v = line.split()
            wvals[(G.arrow_id(a), G.arrow_id(b))] = int(v)
    if m is None:
        raise ValueError("missing m")
    delta = [dvals.get(t, 0) for t in nerve(G, 1).tuples]
    omega = [wvals.get(t, 0) for t in nerve(G, 2).tuples]
    return build_extension(G, m, delta, omega)
