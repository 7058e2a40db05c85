"""Real and plain cohomology of finite Real groupoids with cyclic coefficients.

Cochains of degree n are integer tuples indexed by ``nerve(G, n)`` and
reduced modulo the coefficient order. A Real cochain satisfies
phi(rho t) = alpha * phi(t), where alpha is the coefficient involution.

>>> from realbrauer.groupoid_core import cyclic_group
>>> str(cohomology(cyclic_group(2), 2, parse_coefficients("Z2"), real=False).group)
'Z/2'
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import NotStabilized, OddOrder, SizeExceeded
from .exact_linalg import FGAbelianGroup, FiniteSubgroup, diagonalize_columns, smith_normal_form, solve_integer
from .groupoid_core import FiniteRealGroupoid, face, nerve, rho_on_tuple

# ---------------------------------------------------------------------------
# Coefficients


@dataclass(frozen=True)
class RealCoefficientModule:
    """Cyclic group Z/r (r = 0 for Z) with involution x -> alpha * x."""

    name: str
    r: int
    alpha: int

    @property
    def group(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_cyclic_orders([self.r])

    def reduce(self, x: int) -> int:
        return x % self.r if self.r else x

    def __str__(self):
        return self.name


def parse_coefficients(spec: str) -> RealCoefficientModule:
    """``Z2``, ``Z8``, ``Z<n>``, ``Z``, ``mu:m`` (inversion) or ``Zsign`` (negation on Z)."""
    s = spec.strip()
    if s == "Zsign":
        return RealCoefficientModule("Zsign", 0, -1)
    if s == "Z":
        return RealCoefficientModule("Z", 0, 1)
    if s.startswith("mu:"):
        m = int(s[3:])
        if m < 1:
            raise ValueError("mu:m needs m >= 1")
        return RealCoefficientModule(f"mu:{m}", m, -1)
    if s.startswith("Z") and s[1:].isdigit():
        return RealCoefficientModule(s, int(s[1:]), 1)
    raise ValueError(f"unknown coefficient spec {spec!r}")


Z2 = RealCoefficientModule("Z2", 2, 1)
Z8 = RealCoefficientModule("Z8", 8, 1)


def mu(m: int) -> RealCoefficientModule:
    return RealCoefficientModule(f"mu:{m}", m, -1)


# ---------------------------------------------------------------------------
# Real condition. A degree-dependent sign twist is a one-line change here.


_TWIST: list = [lambda n: 1]


def real_sign(n: int) -> int:
    """Extra sign in the Real condition phi(rho t) = real_sign(n) * alpha * phi(t)."""
    return _TWIST[-1](n)


@contextlib.contextmanager
def real_condition_twist(fn: Callable[[int], int]):
    """Temporarily replace :func:`real_sign` (used to probe alternative conventions)."""
    _TWIST.append(fn)
    _CACHE.clear()
    try:
        yield
    finally:
        _TWIST.pop()
        _CACHE.clear()


# ---------------------------------------------------------------------------
# Matrices (cached per groupoid)

_CACHE: dict = {}


def _cached(G, key, build):
    full = (id(G),) + key
    hit = _CACHE.get(full)
    if hit is not None and hit[0] is G:
        return hit[1]
    val = build()
    _CACHE[full] = (G, val)
    return val


def clear_cache() -> None:
    _CACHE.clear()


def differential_rows(G: FiniteRealGroupoid, n: int) -> list[dict]:
    """Sparse rows of d: C^n -> C^{n+1}, one per (n+1)-tuple."""

    def build():
        src = nerve(G, n).index
        rows = []
        for t in nerve(G, n + 1).tuples:
            row: dict = {}
            for i in range(n + 2):
                j = src[face(G, t, i)]
                row[j] = row.get(j, 0) + (-1) ** i
            rows.append({j: v for j, v in row.items() if v})
        return rows

    return _cached(G, ("d", n), build)


def rho_permutation(G: FiniteRealGroupoid, n: int) -> tuple:
    def build():
        N = nerve(G, n)
        return tuple(N.index[rho_on_tuple(G, t, n)] for t in N.tuples)

    return _cached(G, ("rho", n), build)


def _real_rows(G: FiniteRealGroupoid, n: int, alpha: int) -> list[dict]:
    perm = rho_permutation(G, n)
    a = alpha * real_sign(n)
    rows, seen = [], set()
    for i, p in enumerate(perm):
        key = (min(i, p), max(i, p))
        if key in seen:
            continue
        seen.add(key)
        row: dict = {}
        row[p] = row.get(p, 0) + 1
        row[i] = row.get(i, 0) - a
        row = {j: v for j, v in row.items() if v}
        if row:
            rows.append(row)
    return rows


def _cocycle_diag(G, n, alpha, real):
    def build():
        rows = list(differential_rows(G, n))
        if real:
            rows += _real_rows(G, n, alpha)
        return diagonalize_columns(rows, len(nerve(G, n)))

    return _cached(G, ("Z", n, alpha if real else 0, real, real_sign(n) if real else 0), build)


def _real_diag(G, n, alpha):
    return _cached(
        G, ("R", n, alpha, real_sign(n)), lambda: diagonalize_columns(_real_rows(G, n, alpha), len(nerve(G, n)))
    )


# ---------------------------------------------------------------------------
# Cochain operations


class CochainMap:
    """The differential C^n -> C^{n+1} for given coefficients."""

    def __init__(self, G: FiniteRealGroupoid, n: int, A: RealCoefficientModule):
        self.G, self.n, self.A = G, n, A
        self.rows = differential_rows(G, n)

    def __call__(self, phi: Sequence[int]) -> tuple:
        red = self.A.reduce
        return tuple(red(sum(v * phi[j] for j, v in row.items())) for row in self.rows)


def differential(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule) -> CochainMap:
    return CochainMap(G, n, A)


def is_real(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule, phi: Sequence[int]) -> bool:
    a = A.alpha * real_sign(n)
    perm = rho_permutation(G, n)
    return all(A.reduce(phi[p] - a * phi[i]) == 0 for i, p in enumerate(perm))


def pullback_rho(G: FiniteRealGroupoid, n: int, phi: Sequence[int]) -> tuple:
    """(rho* phi)(t) = phi(rho t)."""
    perm = rho_permutation(G, n)
    return tuple(phi[p] for p in perm)


def cochain_from_function(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule, fn) -> tuple:
    """Tabulate fn(*tuple) over nerve level n (level 0 passes the object)."""
    return tuple(A.reduce(fn(*t)) for t in nerve(G, n).tuples)


@dataclass
class RealCochains:
    """The Real subgroup of C^n: lattice generators and its isomorphism type."""

    group: FGAbelianGroup
    generators: list

    def __len__(self):
        return len(self.generators)


def real_subcomplex(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule) -> RealCochains:
    """Cochains with phi(rho t) = alpha phi(t), as a subgroup of C^n."""
    diag = _real_diag(G, n, A.alpha)
    gens, orders = [], []
    r = A.r
    for j, t in diag.kernel_mod(r):
        col = diag.V_cols[j]
        v = [0] * diag.ncols
        for i, x in col.items():
            v[i] = A.reduce(x * t)
        order = r // t if r else 0
        if order != 1:
            gens.append(tuple(v))
            orders.append(order)
    return RealCochains(FGAbelianGroup.from_cyclic_orders(orders), gens)


# ---------------------------------------------------------------------------
# Cohomology


class CohomologyGroup:
    """H^n as a finitely generated abelian group with cocycle representatives.

    ``generators[i]`` is a cocycle whose class has order
    ``generator_orders[i]`` (0 for infinite order); classes are coordinate
    tuples in these generators.
    """

    def __init__(self, G, n, A, real, diag, keep, orders_K, sf, offset):
        self.G, self.degree, self.coefficients, self.real = G, n, A, real
        self._diag = diag
        self._keep = keep  # list of (column j, scale t, relation order)
        self._sf = sf
        self._offset = offset
        diagv = sf.diagonal + [0] * (len(keep) - len(sf.diagonal))
        self.generator_orders = diagv[offset:]
        self.group = FGAbelianGroup(
            sum(1 for d in self.generator_orders if d == 0), tuple(d for d in self.generator_orders if d)
        )
        self.generators = [self._cochain_from_k([sf.U_inv[i][k] for i in range(len(keep))]) for k in range(offset, len(keep))]

    def _cochain_from_k(self, zk) -> tuple:
        N = self._diag.ncols
        x = [0] * N
        for (j, t, _), z in zip(self._keep, zk):
            if z:
                for i, v in self._diag.V_cols[j].items():
                    x[i] += v * t * z
        return tuple(self.coefficients.reduce(v) for v in x)

    def _k_coords(self, phi: Sequence[int]):
        """Coordinates of phi in the kept cocycle basis, or None if not a cocycle."""
        d = self._diag
        A = self.coefficients
        r = A.r
        # pivot columns outside the lattice must vanish; all pivots need divisibility
        for j, p in d.pivots.items():
            y = sum(v * phi[i] for i, v in d.V_inv_rows[j].items())
            t = (r // math.gcd(r, p)) if r else 0
            if t == 0:
                if y:
                    return None
            elif y % t:
                return None
        out = []
        for j, t, _ in self._keep:
            y = sum(v * phi[i] for i, v in d.V_inv_rows[j].items())
            out.append(y // t)
        return out

    def is_cocycle(self, phi: Sequence[int]) -> bool:
        return self._k_coords(phi) is not None

    def class_of(self, phi: Sequence[int]) -> tuple:
        z = self._k_coords(phi)
        if z is None:
            raise ValueError("not a (Real) cocycle")
        w = [sum(a * b for a, b in zip(row, z)) for row in self._sf.U][self._offset:]
        return tuple(x % o if o else x for x, o in zip(w, self.generator_orders))

    def zero(self) -> tuple:
        return tuple(0 for _ in self.generator_orders)

    def add(self, a, b) -> tuple:
        return tuple((x + y) % o if o else x + y for x, y, o in zip(a, b, self.generator_orders))

    def neg(self, a) -> tuple:
        return tuple((-x) % o if o else -x for x, o in zip(a, self.generator_orders))

    def scale(self, k: int, a) -> tuple:
        return tuple((k * x) % o if o else k * x for x, o in zip(a, self.generator_orders))

    def element(self, coords: Sequence[int]) -> tuple:
        """A cocycle representing the class with the given coordinates."""
        x = [0] * self._diag.ncols
        for c, g in zip(coords, self.generators):
            if c:
                for i, v in enumerate(g):
                    x[i] += c * v
        return tuple(self.coefficients.reduce(v) for v in x)

    def elements(self):
        """All classes (finite groups only) in a deterministic order."""
        if self.group.free_rank:
            raise ValueError("infinite group")
        out = [()]
        for o in self.generator_orders:
            out = [e + (k,) for e in out for k in range(o)]
        return out

    def __repr__(self):
        kind = "HR" if self.real else "H"
        return f"{kind}^{self.degree}({self.coefficients}) = {self.group}"


def cohomology(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule, real: bool = True) -> CohomologyGroup:
    """H^n (real=False) or HR^n (real=True) of G with coefficients A."""
    r = A.r
    diag = _cocycle_diag(G, n, A.alpha, real)
    keep = []
    for j, t in diag.kernel_mod(r):
        o = r // t if r else 0
        if o != 1:
            keep.append((j, t, o))
    # boundary generators: d applied to (Real) (n-1)-cochains
    bcols = []
    if n > 0:
        if real:
            rdiag = _real_diag(G, n - 1, A.alpha)
            src_gens = [{i: v * t for i, v in rdiag.V_cols[j].items()} for j, t in rdiag.kernel_mod(r)]
        else:
            src_gens = [{j: 1} for j in range(len(nerve(G, n - 1)))]
        rows = differential_rows(G, n - 1)
        # transpose access: column j of D_{n-1}
        cols: dict = {}
        for i, row in enumerate(rows):
            for j, v in row.items():
                cols.setdefault(j, []).append((i, v))
        for g in src_gens:
            b: dict = {}
            for j, c in g.items():
                for i, v in cols.get(j, ()):
                    b[i] = b.get(i, 0) + c * v
            b = {i: v for i, v in b.items() if v}
            if not b:
                continue
            coords = []
            for j, t, _ in keep:
                y = sum(v * b.get(i, 0) for i, v in diag.V_inv_rows[j].items())
                if y % t:
                    raise AssertionError("the Real condition is not preserved by the differential")
                coords.append(y // t)
            if any(coords):
                bcols.append(coords)
    k = len(keep)
    rel = [[keep[i][2] if i == c else 0 for i in range(k)] for c in range(k) if keep[c][2]]
    cols_all = rel + bcols
    M = [[col[i] for col in cols_all] for i in range(k)]
    if k and cols_all:
        sf = smith_normal_form(M)
    else:
        sf = smith_normal_form([[0] for _ in range(k)] if k else [], 1)
    diagv = sf.diagonal + [0] * (k - len(sf.diagonal))
    offset = sum(1 for d in diagv if d == 1)
    return CohomologyGroup(G, n, A, real, diag, keep, None, sf, offset)


def bounding_cochain(G: FiniteRealGroupoid, n: int, A: RealCoefficientModule, phi: Sequence[int], real: bool = True):
    """A (Real) (n-1)-cochain theta with d theta = phi, or None."""
    N = len(nerve(G, n))
    if n == 0:
        return () if all(A.reduce(x) == 0 for x in phi) else None
    if real:
        rdiag = _real_diag(G, n - 1, A.alpha)
        gens = []
        for j, t in rdiag.kernel_mod(A.r):
            v = [0] * rdiag.ncols
            for i, x in rdiag.V_cols[j].items():
                v[i] = x * t
            gens.append(v)
    else:
        M0 = len(nerve(G, n - 1))
        gens = [[int(i == j) for i in range(M0)] for j in range(M0)]
    rows = differential_rows(G, n - 1)
    cols = [[sum(v * g[j] for j, v in row.items()) for row in rows] for g in gens]
    if A.r:
        cols += [[A.r if i == k else 0 for i in range(N)] for k in range(N)]
    if not cols:
        return None if any(A.reduce(x) for x in phi) else tuple(0 for _ in nerve(G, n - 1).tuples)
    M = [[c[i] for c in cols] for i in range(N)]
    x = solve_integer(M, [int(v) for v in phi])
    if x is None:
        return None
    theta = [0] * len(nerve(G, n - 1))
    for c, g in zip(x, gens):
        for i, v in enumerate(g):
            theta[i] += c * v
    return tuple(A.reduce(v) for v in theta)


# ---------------------------------------------------------------------------
# Cup product of Z2 1-cocycles into mu_m


def cup11(G: FiniteRealGroupoid, c: Sequence[int], c2: Sequence[int], m: int) -> tuple:
    """(c u c')(g1, g2) = (m/2) c(g1) c'(g2) in Z/m, i.e. -1 in mu_m when both are 1."""
    if m % 2:
        raise OddOrder(f"m = {m} is odd")
    idx1 = nerve(G, 1).index
    half = m // 2
    return tuple((half * (c[idx1[(g1,)]] % 2) * (c2[idx1[(g2,)]] % 2)) % m for g1, g2 in nerve(G, 2).tuples)


def include_mu(phi: Sequence[int], m: int, M: int) -> tuple:
    """Push a mu_m cochain into mu_M along the inclusion (m | M)."""
    if M % m:
        raise ValueError(f"{m} does not divide {M}")
    k = M // m
    return tuple((k * x) % M for x in phi)


# ---------------------------------------------------------------------------
# Circle coefficients as a colimit of roots of unity


def default_m0(G: FiniteRealGroupoid) -> int:
    return 2 * G.exponent


class StableCohomology:
    """Stable image of HR^n(mu_m) in the tower m0 | m0^2 | m0^3 | ...

    Classes live in ``ambient`` = H^n(mu_M) with M = m0^2: the subgroup is the
    image of H^n(mu_m0), which maps isomorphically along the rest of the tower.
    """

    def __init__(self, G, n, real, m0, levels, ambient, subgroup, transcript):
        self.G, self.degree, self.real, self.m0 = G, n, real, m0
        self.levels = levels
        self.ambient = ambient
        self.M = ambient.coefficients.r
        self._sub = subgroup
        self.transcript = transcript
        self.group = subgroup.group
        self.generator_orders = subgroup.generator_orders
        self.generators = [ambient.element(g) for g in subgroup.generators]

    def class_of(self, phi: Sequence[int]) -> tuple:
        """Class of a mu_M cocycle lying in the stable image."""
        c = self._sub.coordinates(list(self.ambient.class_of(phi)))
        if c is None:
            raise ValueError("cocycle is not in the stable image")
        return c

    def is_cocycle(self, phi) -> bool:
        return self.ambient.is_cocycle(phi)

    def contains(self, phi) -> bool:
        return self.ambient.is_cocycle(phi) and self._sub.coordinates(list(self.ambient.class_of(phi))) is not None

    def element(self, coords) -> tuple:
        x = [0] * len(nerve(self.G, self.degree))
        for c, g in zip(coords, self.generators):
            for i, v in enumerate(g):
                x[i] += c * v
        return tuple(v % self.M for v in x)

    def zero(self):
        return tuple(0 for _ in self.generator_orders)

    def add(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.generator_orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.generator_orders))

    def elements(self):
        out = [()]
        for o in self.generator_orders:
            out = [e + (k,) for e in out for k in range(o)]
        return out

    def __repr__(self):
        kind = "HR" if self.real else "H"
        return f"{kind}^{self.degree}(S1) = {self.group}"


def _image(H_from: CohomologyGroup, H_to: CohomologyGroup, factor: int) -> FiniteSubgroup:
    gens = [H_to.class_of(tuple((factor * x) % H_to.coefficients.r for x in g)) for g in H_from.generators]
    return FiniteSubgroup(H_to.generator_orders, gens)


def s1_cohomology(
    G: FiniteRealGroupoid, n: int, real: bool = True, m0: int | None = None, max_levels: int = 6
) -> StableCohomology:
    """HR^n(G, S^1) (or H^n) through stable images of the mu_m tower."""
    if m0 is not None and (m0 % 2 or m0 < 2):
        raise OddOrder(f"m0 = {m0} must be even")
    # every prime dividing the exponent of G must divide m0
    m0 = default_m0(G) if m0 is None else math.lcm(m0, default_m0(G))
    levels = [m0]
    H = [cohomology(G, n, mu(m0), real)]
    transcript = [f"m={m0}: H = {H[0].group}"]
    images = []  # images[k] = image of H_k in H_{k+1}
    for k in range(max_levels):
        levels.append(levels[-1] * m0)
        H.append(cohomology(G, n, mu(levels[-1]), real))
        img = _image(H[k], H[k + 1], m0)
        images.append(img)
        transcript.append(f"m={levels[-1]}: H = {H[-1].group}; image of m={levels[k]} has order {img.order}")
        if k >= 2:
            # I_{k-2} -> I_{k-1} -> I_k isomorphisms
            two = _image(H[k - 2], H[k], m0 * m0)
            three = _image(H[k - 1], H[k + 1], m0 * m0)
            ok = images[k - 2].order == two.order == images[k - 1].order == three.order == images[k].order
            transcript.append(
                f"check m={levels[k - 2]}..{levels[k + 1]}: orders {images[k - 2].order}, {two.order}, "
                f"{images[k - 1].order}, {three.order}, {images[k].order}"
                + (" -> stable" if ok else "")
            )
            if ok:
                return StableCohomology(G, n, real, m0, levels, H[k - 1], images[k - 2], transcript)
    raise NotStabilized("image tower did not stabilize; raise m0", witness=transcript)


# ---------------------------------------------------------------------------
# Brute-force oracle


@dataclass
class BruteForceCohomology:
    group: FGAbelianGroup
    cocycles: list
    coboundaries: set = field(repr=False)
    order: int = 0

    def same_class(self, a, b, r: int) -> bool:
        return tuple((x - y) % r for x, y in zip(a, b)) in self.coboundaries


def _enumerate_cochains(G, n, A, real, normalized=False):
    N = nerve(G, n)
    r = A.r
    units = set(G.unit)
    free_slots = []  # (index, partner or None, allowed values)
    assigned = set()
    a = A.alpha * real_sign(n)
    for i, t in enumerate(N.tuples):
        if i in assigned:
            continue
        if normalized and n > 0 and any(g in units for g in t):
            assigned.add(i)
            continue
        if real:
            p = N.index[rho_on_tuple(G, t, n)]
            assigned.update({i, p})
            if p == i:
                vals = [v for v in range(r) if (v - a * v) % r == 0]
                free_slots.append((i, None, vals))
            else:
                free_slots.append((i, p, list(range(r))))
        else:
            assigned.add(i)
            free_slots.append((i, None, list(range(r))))
    total = math.prod(len(s[2]) for s in free_slots)
    if total > 1 << 20:
        raise SizeExceeded(f"{total} cochains exceed the enumeration bound")
    out = []

    def rec(k, cur):
        if k == len(free_slots):
            out.append(tuple(cur))
            return
        i, p, vals = free_slots[k]
        for v in vals:
            cur[i] = v
            if p is not None:
                cur[p] = (a * v) % r
            rec(k + 1, cur)
        cur[i] = 0
        if p is not None:
            cur[p] = 0

    rec(0, [0] * len(N))
    return out


def _literal_d(G, n, r, d0_sign=1):
    """d by the face formula, independent of the cached matrices."""
    src = nerve(G, n).index
    terms = []
    for t in nerve(G, n + 1).tuples:
        row = []
        for i in range(n + 2):
            sign = (-1) ** i * (d0_sign if n == 0 else 1)
            row.append((src[face(G, t, i)], sign))
        terms.append(row)

    def d(phi):
        return tuple(sum(sg * phi[k] for k, sg in row) % r for row in terms)

    return d


def brute_force_cohomology(
    G: FiniteRealGroupoid,
    n: int,
    A: RealCoefficientModule,
    real: bool = True,
    normalized: bool = False,
    d0_sign: int = 1,
) -> BruteForceCohomology:
    """Enumerate all (Real) cochains; finite coefficients only."""
    if not A.r:
        raise SizeExceeded("enumeration needs finite coefficients")
    r = A.r
    cochains = _enumerate_cochains(G, n, A, real, normalized)
    zero_next = tuple(0 for _ in nerve(G, n + 1).tuples)
    d_n = _literal_d(G, n, r, d0_sign)
    Z = [phi for phi in cochains if d_n(phi) == zero_next]
    if n == 0:
        B = {tuple(0 for _ in nerve(G, 0).tuples)}
    else:
        d_prev = _literal_d(G, n - 1, r, d0_sign)
        B = {d_prev(psi) for psi in _enumerate_cochains(G, n - 1, A, real, normalized)}
    order = len(Z) // len(B)
    # |H[k]| for k | exponent gives the invariant factors
    orders = []
    Bset = B
    cache = {}
    for z in Z:
        k = 1
        while tuple((k * x) % r for x in z) not in Bset:
            k += 1
        orders.append(k)
    for o in orders:
        cache[o] = cache.get(o, 0) + 1
    element_orders = []
    for o, c in cache.items():
        element_orders += [o] * (c // len(B))
    group = FGAbelianGroup.from_element_orders(element_orders)
    return BruteForceCohomology(group, Z, B, order)
