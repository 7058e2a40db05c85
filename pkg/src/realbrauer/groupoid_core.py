"""Finite Real groupoids: structure, validation, builders and nerves.

Objects and arrows are integer ids 0..n-1 with display names. ``compose``
maps a composable pair (a, b), meaning a o b with src(a) = tgt(b), to an
arrow id.

>>> G = cyclic_group(2)
>>> len(nerve(G, 2))
4
>>> len(nerve(product_s01(point()), 2))
2
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .errors import InvalidGroupoid, NotFree, SizeExceeded
from .graded_algebra import Verdict

NERVE_CAP_ENV = "REALBRAUER_NERVE_CAP"
DEFAULT_NERVE_CAP = 200_000


def nerve_cap() -> int:
    return int(os.environ.get(NERVE_CAP_ENV, DEFAULT_NERVE_CAP))


class FiniteRealGroupoid:
    """Finite groupoid with an involutive automorphism rho."""

    def __init__(
        self,
        object_names: Sequence[str],
        arrow_names: Sequence[str],
        src: Sequence[int],
        tgt: Sequence[int],
        compose: dict,
        rho_objects: Sequence[int] | None = None,
        rho_arrows: Sequence[int] | None = None,
    ):
        self.object_names = tuple(object_names)
        self.arrow_names = tuple(arrow_names)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.compose = dict(compose)
        n_obj, n_arr = len(self.object_names), len(self.arrow_names)
        self.rho_objects = tuple(rho_objects) if rho_objects is not None else tuple(range(n_obj))
        self.rho_arrows = tuple(rho_arrows) if rho_arrows is not None else tuple(range(n_arr))
        if len(self.src) != n_arr or len(self.tgt) != n_arr:
            raise InvalidGroupoid("src/tgt tables do not cover all arrows")
        # units are the idempotent loops
        unit = [None] * n_obj
        for a in range(n_arr):
            if self.src[a] == self.tgt[a] and self.compose.get((a, a)) == a:
                unit[self.src[a]] = a
        if any(u is None for u in unit):
            raise InvalidGroupoid("some object has no identity arrow", witness=unit.index(None))
        self.unit = tuple(unit)
        inv = [None] * n_arr
        for (a, b), c in self.compose.items():
            if c == self.unit[self.src[b]] and self.src[b] == self.tgt[a]:
                inv[b] = a
        if any(x is None for x in inv):
            raise InvalidGroupoid("some arrow has no inverse", witness=inv.index(None))
        self.inv = tuple(inv)

    @property
    def n_objects(self) -> int:
        return len(self.object_names)

    @property
    def n_arrows(self) -> int:
        return len(self.arrow_names)

    def mul(self, a: int, b: int) -> int:
        return self.compose[(a, b)]

    @cached_property
    def arrows_from(self) -> tuple:
        """arrows_from[x] = arrows with source x."""
        out = [[] for _ in range(self.n_objects)]
        for a in range(self.n_arrows):
            out[self.src[a]].append(a)
        return tuple(tuple(v) for v in out)

    @cached_property
    def arrows_into(self) -> tuple:
        out = [[] for _ in range(self.n_objects)]
        for a in range(self.n_arrows):
            out[self.tgt[a]].append(a)
        return tuple(tuple(v) for v in out)

    @property
    def rho_is_trivial(self) -> bool:
        return all(i == r for i, r in enumerate(self.rho_objects)) and all(
            i == r for i, r in enumerate(self.rho_arrows)
        )

    @property
    def rho_is_free(self) -> bool:
        return all(i != r for i, r in enumerate(self.rho_objects)) and all(
            i != r for i, r in enumerate(self.rho_arrows)
        )

    def arrow_order(self, a: int):
        """Order of a loop, None for arrows between distinct objects."""
        if self.src[a] != self.tgt[a]:
            return None
        u = self.unit[self.src[a]]
        k, x = 1, a
        while x != u:
            x = self.compose[(x, a)]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*[o for a in range(self.n_arrows) if (o := self.arrow_order(a))])

    def arrow_id(self, name: str) -> int:
        return self.arrow_names.index(name)

    def object_id(self, name: str) -> int:
        return self.object_names.index(name)

    def with_rho(self, rho_objects, rho_arrows) -> "FiniteRealGroupoid":
        return FiniteRealGroupoid(
            self.object_names, self.arrow_names, self.src, self.tgt, self.compose, rho_objects, rho_arrows
        )

    def __repr__(self):
        return f"FiniteRealGroupoid(objects={self.n_objects}, arrows={self.n_arrows})"


def validate(G: FiniteRealGroupoid) -> Verdict:
    """Category axioms, inverses and rho being an involutive automorphism."""
    n = G.n_arrows
    for a in range(n):
        for b in G.arrows_into[G.src[a]]:
            c = G.compose.get((a, b))
            if c is None:
                return Verdict(False, "composable pair without a composite", (a, b))
            if G.src[c] != G.src[b] or G.tgt[c] != G.tgt[a]:
                return Verdict(False, "composite has wrong endpoints", (a, b))
    for (a, b) in G.compose:
        if G.src[a] != G.tgt[b]:
            return Verdict(False, "composite defined on a non-composable pair", (a, b))
    for a in range(n):
        if G.compose[(a, G.unit[G.src[a]])] != a or G.compose[(G.unit[G.tgt[a]], a)] != a:
            return Verdict(False, "unit is not neutral", a)
        if G.compose[(a, G.inv[a])] != G.unit[G.tgt[a]] or G.compose[(G.inv[a], a)] != G.unit[G.src[a]]:
            return Verdict(False, "inverse is not two-sided", a)
    for a in range(n):
        for b in G.arrows_into[G.src[a]]:
            ab = G.compose[(a, b)]
            for c in G.arrows_into[G.src[b]]:
                if G.compose[(ab, c)] != G.compose[(a, G.compose[(b, c)])]:
                    return Verdict(False, "composition is not associative", (a, b, c))
    ro, ra = G.rho_objects, G.rho_arrows
    if sorted(ro) != list(range(G.n_objects)) or sorted(ra) != list(range(n)):
        return Verdict(False, "rho is not a bijection", None)
    for x in range(G.n_objects):
        if ro[ro[x]] != x:
            return Verdict(False, "rho is not an involution on objects", x)
    for a in range(n):
        if ra[ra[a]] != a:
            return Verdict(False, "rho is not an involution on arrows", a)
        if G.src[ra[a]] != ro[G.src[a]] or G.tgt[ra[a]] != ro[G.tgt[a]]:
            return Verdict(False, "rho does not commute with src/tgt", a)
    for (a, b), c in G.compose.items():
        if G.compose[(ra[a], ra[b])] != ra[c]:
            return Verdict(False, "rho is not multiplicative", (a, b))
    return Verdict(True)


def _checked(G: FiniteRealGroupoid) -> FiniteRealGroupoid:
    v = validate(G)
    if not v:
        raise InvalidGroupoid(v.reason, witness=v.witness)
    return G


# ---------------------------------------------------------------------------
# Builders


def build_group(table: Sequence[Sequence[int]], involution: Sequence[int] | None = None, names=None):
    """One-object groupoid from a multiplication table table[g][h] = g*h."""
    n = len(table)
    names = list(names) if names is not None else [f"g{i}" for i in range(n)]
    e = next((g for g in range(n) if all(table[g][h] == h for h in range(n))), None)
    if e is None:
        raise InvalidGroupoid("multiplication table has no identity")
    compose = {(g, h): table[g][h] for g in range(n) for h in range(n)}
    G = FiniteRealGroupoid(["*"], names, [0] * n, [0] * n, compose, [0], involution)
    return _checked(G)


def cyclic_group(n: int, involution: str = "id") -> FiniteRealGroupoid:
    """Z/n as a one-object groupoid; involution "id" or "neg" (g -> -g)."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    rho = list(range(n)) if involution == "id" else [(-a) % n for a in range(n)]
    return build_group(table, rho, [str(a) for a in range(n)])


def abelian_group(orders: Sequence[int], involution: str = "id") -> FiniteRealGroupoid:
    """Z/n1 x Z/n2 x ... with elements in lexicographic order."""
    elems = list(itertools.product(*[range(o) for o in orders]))
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[tuple((x + y) % o for x, y, o in zip(g, h, orders))] for h in elems] for g in elems]
    if involution == "id":
        rho = list(range(len(elems)))
    else:
        rho = [index[tuple((-x) % o for x, o in zip(g, orders))] for g in elems]
    names = [",".join(map(str, g)) if len(g) > 1 else str(g[0]) for g in elems]
    return build_group(table, rho, names)


def point() -> FiniteRealGroupoid:
    return build_pair(1)


def build_pair(k: int, object_involution: Sequence[int] | None = None) -> FiniteRealGroupoid:
    """Pair groupoid on k objects: one arrow x <- y for every ordered pair."""
    arrows = [(x, y) for x in range(k) for y in range(k)]
    index = {a: i for i, a in enumerate(arrows)}
    compose = {}
    for (x, y) in arrows:
        for (y2, z) in arrows:
            if y2 == y:
                compose[(index[(x, y)], index[(y, z)])] = index[(x, z)]
    ro = list(object_involution) if object_involution is not None else list(range(k))
    ra = [index[(ro[x], ro[y])] for (x, y) in arrows]
    names = [f"{x}<-{y}" for x, y in arrows]
    return _checked(
        FiniteRealGroupoid([str(x) for x in range(k)], names, [y for _, y in arrows], [x for x, _ in arrows], compose, ro, ra)
    )


def build_action(
    X: Sequence[str],
    group: FiniteRealGroupoid,
    action: Callable[[int, int], int],
    object_involution: Sequence[int] | None = None,
) -> FiniteRealGroupoid:
    """Transformation groupoid X x| G: arrows (x, g) from x to g.x.

    ``action(g, x)`` gives g.x for group element g and point x; the involution
    on arrows is (x, g) -> (rho x, rho g), which must be compatible.
    """
    if group.n_objects != 1:
        raise InvalidGroupoid("action requires a group")
    nx, ng = len(X), group.n_arrows
    arrows = [(x, g) for x in range(nx) for g in range(ng)]
    index = {a: i for i, a in enumerate(arrows)}
    src = [x for x, _ in arrows]
    tgt = [action(g, x) for x, g in arrows]
    compose = {}
    for (x, g) in arrows:
        y = action(g, x)
        for h in range(ng):
            compose[(index[(y, h)], index[(x, g)])] = index[(x, group.mul(h, g))]
    ro = list(object_involution) if object_involution is not None else list(range(nx))
    ra = [index[(ro[x], group.rho_arrows[g])] for x, g in arrows]
    names = [f"({X[x]},{group.arrow_names[g]})" for x, g in arrows]
    return _checked(FiniteRealGroupoid(list(X), names, src, tgt, compose, ro, ra))


def disjoint_union(G: FiniteRealGroupoid, H: FiniteRealGroupoid) -> FiniteRealGroupoid:
    no, na = G.n_objects, G.n_arrows
    compose = dict(G.compose)
    compose.update({(a + na, b + na): c + na for (a, b), c in H.compose.items()})
    return FiniteRealGroupoid(
        [f"{x}.0" for x in G.object_names] + [f"{x}.1" for x in H.object_names],
        [f"{a}.0" for a in G.arrow_names] + [f"{a}.1" for a in H.arrow_names],
        list(G.src) + [s + no for s in H.src],
        list(G.tgt) + [t + no for t in H.tgt],
        compose,
        list(G.rho_objects) + [r + no for r in H.rho_objects],
        list(G.rho_arrows) + [r + na for r in H.rho_arrows],
    )


def build_double(G: FiniteRealGroupoid) -> FiniteRealGroupoid:
    """G disjoint union G with rho swapping the copies."""
    D = disjoint_union(G.with_rho(None, None), G.with_rho(None, None))
    no, na = G.n_objects, G.n_arrows
    ro = [x + no for x in range(no)] + list(range(no))
    ra = [a + na for a in range(na)] + list(range(na))
    return _checked(D.with_rho(ro, ra))


def product(G: FiniteRealGroupoid, H: FiniteRealGroupoid) -> FiniteRealGroupoid:
    """Product groupoid with the product involution."""
    no = [(x, y) for x in range(G.n_objects) for y in range(H.n_objects)]
    oi = {o: i for i, o in enumerate(no)}
    na = [(a, b) for a in range(G.n_arrows) for b in range(H.n_arrows)]
    ai = {a: i for i, a in enumerate(na)}
    compose = {}
    for (a1, a2), c in G.compose.items():
        for (b1, b2), d in H.compose.items():
            compose[(ai[(a1, b1)], ai[(a2, b2)])] = ai[(c, d)]
    return _checked(
        FiniteRealGroupoid(
            [f"({G.object_names[x]},{H.object_names[y]})" for x, y in no],
            [f"({G.arrow_names[a]},{H.arrow_names[b]})" for a, b in na],
            [oi[(G.src[a], H.src[b])] for a, b in na],
            [oi[(G.tgt[a], H.tgt[b])] for a, b in na],
            compose,
            [oi[(G.rho_objects[x], H.rho_objects[y])] for x, y in no],
            [ai[(G.rho_arrows[a], H.rho_arrows[b])] for a, b in na],
        )
    )


def s01() -> FiniteRealGroupoid:
    """Two points {+1, -1} exchanged by rho, with identity arrows only."""
    return _checked(FiniteRealGroupoid(["+1", "-1"], ["1+", "1-"], [0, 1], [0, 1], {(0, 0): 0, (1, 1): 1}, [1, 0], [1, 0]))


def product_s01(G: FiniteRealGroupoid) -> FiniteRealGroupoid:
    """G x S^{0,1} with rho(g, +-1) = (rho g, -+1)."""
    return product(G, s01())


build_product_S01 = product_s01


def inflate(G: FiniteRealGroupoid, k: int) -> FiniteRealGroupoid:
    """G x pair(k), Morita equivalent to G."""
    return product(G, build_pair(k))


def quotient_by_involution(G: FiniteRealGroupoid) -> FiniteRealGroupoid:
    """Orbit groupoid of a free involution, with trivial rho."""
    if not G.rho_is_free:
        fixed_o = [x for x in range(G.n_objects) if G.rho_objects[x] == x]
        fixed_a = [a for a in range(G.n_arrows) if G.rho_arrows[a] == a]
        raise NotFree("rho has fixed points", witness={"objects": fixed_o, "arrows": fixed_a})
    orep = sorted({min(x, G.rho_objects[x]) for x in range(G.n_objects)})
    oid = {x: orep.index(min(x, G.rho_objects[x])) for x in range(G.n_objects)}
    arep = sorted({min(a, G.rho_arrows[a]) for a in range(G.n_arrows)})
    aid = {a: arep.index(min(a, G.rho_arrows[a])) for a in range(G.n_arrows)}
    compose = {}
    for (a, b), c in G.compose.items():
        key = (aid[a], aid[b])
        if key in compose and compose[key] != aid[c]:
            raise InvalidGroupoid("orbit composition is not well defined", witness=(a, b))
        compose[key] = aid[c]
    q = FiniteRealGroupoid(
        [G.object_names[x] for x in orep],
        [G.arrow_names[a] for a in arep],
        [oid[G.src[a]] for a in arep],
        [oid[G.tgt[a]] for a in arep],
        compose,
    )
    return _checked(q)


# ---------------------------------------------------------------------------
# Nerve


@dataclass(frozen=True)
class Nerve:
    """Composable n-tuples (g1, ..., gn) with src(g_i) = tgt(g_{i+1}).

    Level 0 lists the objects as 1-tuples.
    """

    level: int
    tuples: tuple

    def __len__(self):
        return len(self.tuples)

    @cached_property
    def index(self) -> dict:
        return {t: i for i, t in enumerate(self.tuples)}


_NERVE_CACHE: dict = {}


def nerve(G: FiniteRealGroupoid, n: int, cap: int | None = None) -> Nerve:
    cap = nerve_cap() if cap is None else cap
    key = (id(G), n)
    hit = _NERVE_CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    if n == 0:
        out = Nerve(0, tuple((x,) for x in range(G.n_objects)))
    else:
        count = nerve_count(G, n)
        if count > cap:
            raise SizeExceeded(f"nerve level {n} has {count} tuples, above the cap {cap}")
        tuples = [(a,) for a in range(G.n_arrows)]
        for _ in range(n - 1):
            tuples = [t + (b,) for t in tuples for b in G.arrows_into[G.src[t[-1]]]]
        out = Nerve(n, tuple(tuples))
    _NERVE_CACHE[key] = (G, out)
    return out


def nerve_count(G: FiniteRealGroupoid, n: int) -> int:
    """Number of composable n-tuples, by a transfer-matrix count."""
    if n == 0:
        return G.n_objects
    # ways[x] = number of composable chains whose last arrow has source x
    ways = [0] * G.n_objects
    for a in range(G.n_arrows):
        ways[G.src[a]] += 1
    for _ in range(n - 1):
        nxt = [0] * G.n_objects
        for b in range(G.n_arrows):
            nxt[G.src[b]] += ways[G.tgt[b]]
        ways = nxt
    return sum(ways)


def rho_on_tuple(G: FiniteRealGroupoid, t: tuple, level: int) -> tuple:
    if level == 0:
        return (G.rho_objects[t[0]],)
    return tuple(G.rho_arrows[a] for a in t)


def face(G: FiniteRealGroupoid, t: tuple, i: int) -> tuple:
    """i-th face of an n-tuple (n >= 1), landing in level n-1."""
    n = len(t)
    if n == 1:
        # d0 (g) = src g, d1 (g) = tgt g
        return (G.src[t[0]],) if i == 0 else (G.tgt[t[0]],)
    if i == 0:
        return t[1:]
    if i == n:
        return t[:-1]
    return t[: i - 1] + (G.compose[(t[i - 1], t[i])],) + t[i + 1 :]


# ---------------------------------------------------------------------------
# Text format


def dumps(G: FiniteRealGroupoid) -> str:
    lines = ["objects: " + " ".join(G.object_names), "arrows:"]
    for a in range(G.n_arrows):
        lines.append(f"  {G.arrow_names[a]} {G.object_names[G.src[a]]} {G.object_names[G.tgt[a]]}")
    lines.append("compose:")
    for (a, b), c in sorted(G.compose.items()):
        lines.append(f"  {G.arrow_names[a]} {G.arrow_names[b]} -> {G.arrow_names[c]}")
    lines.append("inv:")
    for a in range(G.n_arrows):
        lines.append(f"  {G.arrow_names[a]} -> {G.arrow_names[G.inv[a]]}")
    lines.append("rho:")
    for x in range(G.n_objects):
        lines.append(f"  {G.object_names[x]} -> {G.object_names[G.rho_objects[x]]}")
    for a in range(G.n_arrows):
        lines.append(f"  {G.arrow_names[a]} -> {G.arrow_names[G.rho_arrows[a]]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> FiniteRealGroupoid:
    """Parse the line-oriented groupoid format (names must not contain spaces)."""
    objects: list[str] = []
    arrows: list[tuple] = []
    compose_lines, inv_lines, rho_lines = [], [], []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head in ("objects", "arrows", "compose", "inv", "rho") and (not rest or rest[0] == " "):
            section = head
            line = rest.strip()
            if not line:
                continue
        if section == "objects":
            objects.extend(line.split())
        elif section == "arrows":
            parts = line.split()
            if len(parts) != 3:
                raise InvalidGroupoid(f"line {lineno}: expected 'name src tgt'")
            arrows.append(tuple(parts))
        elif section == "compose":
            compose_lines.append((lineno, line))
        elif section == "inv":
            inv_lines.append((lineno, line))
        elif section == "rho":
            rho_lines.append((lineno, line))
        else:
            raise InvalidGroupoid(f"line {lineno}: content outside a section")
    oid = {o: i for i, o in enumerate(objects)}
    aid = {a[0]: i for i, a in enumerate(arrows)}

    def lookup(table, name, lineno):
        if name not in table:
            raise InvalidGroupoid(f"line {lineno}: unknown name {name!r}")
        return table[name]

    compose = {}
    for lineno, line in compose_lines:
        lhs, _, rhs = line.partition("->")
        a, b = lhs.split()
        compose[(lookup(aid, a, lineno), lookup(aid, b, lineno))] = lookup(aid, rhs.strip(), lineno)
    ro, ra = list(range(len(objects))), list(range(len(arrows)))
    for lineno, line in rho_lines:
        lhs, _, rhs = line.partition("->")
        lhs, rhs = lhs.strip(), rhs.strip()
        if lhs in oid:
            ro[oid[lhs]] = lookup(oid, rhs, lineno)
        else:
            ra[lookup(aid, lhs, lineno)] = lookup(aid, rhs, lineno)
    G = FiniteRealGroupoid(
        objects,
        [a[0] for a in arrows],
        [lookup(oid, a[1], 0) for a in arrows],
        [lookup(oid, a[2], 0) for a in arrows],
        compose,
        ro,
        ra,
    )
    for lineno, line in inv_lines:
        lhs, _, rhs = line.partition("->")
        if G.inv[lookup(aid, lhs.strip(), lineno)] != lookup(aid, rhs.strip(), lineno):
            raise InvalidGroupoid(f"line {lineno}: declared inverse disagrees with the compose table")
    return _checked(G)


def from_shorthand(spec: str) -> FiniteRealGroupoid:
    """Builders by name: point, s01, Z<n>, Z<n>xZ<m>..., pair<k>, with ':neg' for g -> -g."""
    spec = spec.strip()
    inv = "id"
    if spec.endswith(":neg"):
        spec, inv = spec[:-4], "neg"
    low = spec.lower()
    if low == "point":
        return point()
    if low in ("s01", "s^{0,1}"):
        return s01()
    if low.startswith("pair"):
        return build_pair(int(low[4:]))
    parts = low.split("x")
    if all(p.startswith("z") and p[1:].isdigit() for p in parts):
        orders = [int(p[1:]) for p in parts]
        return cyclic_group(orders[0], inv) if len(orders) == 1 else abelian_group(orders, inv)
    raise ValueError(f"unknown groupoid shorthand {spec!r}")
