"""Finite-dimensional Z2-graded *-algebras with anti-linear Real structures.

An algebra is stored on a homogeneous basis b_0..b_{n-1}: sparse structure
constants, a degree per basis element, and the images of each basis element
under the anti-linear maps star and sigma. Elements are sparse dicts
``{index: GaussianRational}``.

>>> A = make_clifford(0, 1)
>>> A.dim, A.degrees
(2, (0, 1))
>>> matrix_model(A).parity
1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import gmpy2
from gmpy2 import mpq
from sympy import Poly, QQ_I, symbols

from .errors import NonScalarSquare, NotElementary, NotRealStructure, SizeExceeded
from .exact_linalg import (
    ONE,
    ZERO,
    EchelonBasis,
    GaussianRational,
    format_scalar,
    mat_inverse,
    nullspace,
    parse_scalar,
)

Vec = dict


def _vec(pairs) -> dict:
    return {k: GaussianRational.coerce(c) for k, c in pairs if c}


def _add_into(acc: dict, k: int, c) -> None:
    nv = acc.get(k, ZERO) + c
    if nv:
        acc[k] = nv
    else:
        acc.pop(k, None)


def vec_add(x: dict, y: dict, scale=ONE) -> dict:
    out = dict(x)
    for k, c in y.items():
        _add_into(out, k, scale * c)
    return out


def vec_scale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural check; falsy on failure, with a witness."""

    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


class GradedBasisAlgebra:
    """Z2-graded complex *-algebra with Real structure on an explicit basis.

    ``table[i][j]`` is a tuple of ``(k, coeff)`` with b_i b_j = sum coeff b_k.
    ``star_images[i]`` and ``sigma_images[i]`` are the images of b_i; both
    maps are extended anti-linearly.
    """

    def __init__(self, degrees, table, unit, star_images, sigma_images, labels=None):
        self.degrees = tuple(int(d) % 2 for d in degrees)
        n = len(self.degrees)
        self.table = tuple(
            tuple(tuple((int(k), GaussianRational.coerce(c)) for k, c in entry if c) for entry in row)
            for row in table
        )
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("structure constant table has the wrong shape")
        self.unit = _vec(unit.items() if isinstance(unit, dict) else unit)
        self.star_images = tuple(_vec(v.items() if isinstance(v, dict) else v) for v in star_images)
        self.sigma_images = tuple(_vec(v.items() if isinstance(v, dict) else v) for v in sigma_images)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def basis(self, i: int) -> dict:
        return {i: ONE}

    # -- arithmetic ---------------------------------------------------------

    def mul(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        table = self.table
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    _add_into(acc, k, ab * c)
        return acc

    def _anti(self, images, x: dict) -> dict:
        acc: dict = {}
        for i, a in x.items():
            ca = a.conjugate()
            for k, c in images[i].items():
                _add_into(acc, k, ca * c)
        return acc

    def star(self, x: dict) -> dict:
        return self._anti(self.star_images, x)

    def sigma(self, x: dict) -> dict:
        return self._anti(self.sigma_images, x)

    def grading(self, x: dict) -> dict:
        return {k: (-c if self.degrees[k] else c) for k, c in x.items()}

    def homogeneous_part(self, x: dict, degree: int) -> dict:
        return {k: c for k, c in x.items() if self.degrees[k] == degree}

    def degree_of(self, x: dict):
        """0 or 1 for nonzero homogeneous x, None otherwise."""
        ds = {self.degrees[k] for k in x}
        return ds.pop() if len(ds) == 1 else None

    # -- derived data -------------------------------------------------------

    @cached_property
    def is_monomial(self) -> bool:
        return all(len(e) <= 1 for row in self.table for e in row)

    @cached_property
    def trace_functional(self) -> tuple:
        """t[j] = trace of left multiplication by b_j."""
        t = []
        for j in range(self.dim):
            s = ZERO
            row = self.table[j]
            for i in range(self.dim):
                for k, c in row[i]:
                    if k == i:
                        s = s + c
            t.append(s)
        return tuple(t)

    def trace(self, x: dict) -> GaussianRational:
        t = self.trace_functional
        s = ZERO
        for k, c in x.items():
            s = s + c * t[k]
        return s

    @cached_property
    def generators(self) -> tuple:
        """Basis indices generating the algebra (a small set for monomial algebras)."""
        if not self.is_monomial:
            return tuple(range(self.dim))
        unit_idx = next(iter(self.unit)) if len(self.unit) == 1 else None
        if unit_idx is None:
            return tuple(range(self.dim))
        reach = {unit_idx}
        gens: list[int] = []
        for i in range(self.dim):
            if i in reach:
                continue
            gens.append(i)
            frontier = set(reach)
            while frontier:
                new = set()
                for s in frontier:
                    for g in gens:
                        for k, _ in self.table[s][g]:
                            if k not in reach:
                                new.add(k)
                reach |= new
                frontier = new
        return tuple(gens)

    def center(self, degree=None) -> list[dict]:
        """Basis of the (ungraded) center, optionally of one homogeneous degree."""
        gens = self.generators
        n = self.dim
        rows = []
        for g in gens:
            per_k: dict = {}
            for i in range(n):
                for k, c in self.table[i][g]:
                    per_k.setdefault(k, {})
                    _add_into(per_k[k], i, c)
                for k, c in self.table[g][i]:
                    per_k.setdefault(k, {})
                    _add_into(per_k[k], i, -c)
            rows.extend(r for r in per_k.values() if r)
        if degree is not None:
            rows.extend({i: ONE} for i in range(n) if self.degrees[i] != degree)
        return [dict(v) for v in nullspace(rows, n)]

    def structure_equal(self, other: "GradedBasisAlgebra") -> bool:
        return (
            self.degrees == other.degrees
            and [[dict(e) for e in r] for r in self.table] == [[dict(e) for e in r] for r in other.table]
            and self.unit == other.unit
            and self.star_images == other.star_images
            and self.sigma_images == other.sigma_images
        )

    def with_real_structure(self, sigma_images) -> "GradedBasisAlgebra":
        return GradedBasisAlgebra(self.degrees, self.table, self.unit, self.star_images, sigma_images, self.labels)

    def __repr__(self):
        return f"GradedBasisAlgebra(dim={self.dim})"


# ---------------------------------------------------------------------------
# Constructions


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _clifford_sign(a: int, b: int, p: int) -> int:
    swaps, t = 0, a >> 1
    while t:
        swaps += _popcount(t & b)
        t >>= 1
    sign = -1 if swaps & 1 else 1
    common = a & b
    for i in range(p):
        if common >> i & 1:
            sign = -sign
    return sign


def make_clifford(p: int, q: int, max_generators: int = 6) -> GradedBasisAlgebra:
    """Complex Clifford algebra with p generators squaring to -1 and q to +1.

    sigma fixes every monomial; generators squaring to +1 are self-adjoint,
    those squaring to -1 skew-adjoint.
    """
    n = p + q
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    if n > max_generators:
        raise SizeExceeded(f"{n} generators exceeds the bound {max_generators}")
    size = 1 << n
    table = [[((a ^ b, _clifford_sign(a, b, p)),) for b in range(size)] for a in range(size)]
    star = []
    for a in range(size):
        k = _popcount(a)
        s = -1 if (k * (k - 1) // 2) & 1 else 1
        s *= (-1) ** _popcount(a & ((1 << p) - 1))
        star.append({a: s})
    labels = ["".join(f"e{i + 1}" for i in range(n) if a >> i & 1) or "1" for a in range(size)]
    return GradedBasisAlgebra(
        [_popcount(a) for a in range(size)], table, {0: 1}, star, [{a: 1} for a in range(size)], labels
    )


def graded_tensor(A: GradedBasisAlgebra, B: GradedBasisAlgebra) -> GradedBasisAlgebra:
    """Graded tensor product with the Koszul sign (-1)^{|b||a'|}."""
    nb = B.dim
    degrees = [(da + db) % 2 for da in A.degrees for db in B.degrees]
    table = []
    for i, da in enumerate(A.degrees):
        for j, db in enumerate(B.degrees):
            row = []
            for i2, da2 in enumerate(A.degrees):
                ta = A.table[i][i2]
                neg = db & da2
                for j2 in range(nb):
                    tb = B.table[j][j2]
                    entry = []
                    for ka, ca in ta:
                        for kb, cb in tb:
                            c = ca * cb
                            entry.append((ka * nb + kb, -c if neg else c))
                    row.append(tuple(entry))
            table.append(row)

    def pair_map(xa: dict, xb: dict, sign: int) -> dict:
        out = {}
        for ka, ca in xa.items():
            for kb, cb in xb.items():
                _add_into(out, ka * nb + kb, ca * cb * sign)
        return out

    star, sigma = [], []
    for i, da in enumerate(A.degrees):
        for j, db in enumerate(B.degrees):
            star.append(pair_map(A.star_images[i], B.star_images[j], -1 if da & db else 1))
            sigma.append(pair_map(A.sigma_images[i], B.sigma_images[j], 1))
    unit = pair_map(A.unit, B.unit, 1)
    labels = [f"{la}|{lb}" for la in A.labels for lb in B.labels]
    return GradedBasisAlgebra(degrees, table, unit, star, sigma, labels)


def tensor_power(A: GradedBasisAlgebra, k: int) -> GradedBasisAlgebra:
    out = make_clifford(0, 0)
    for _ in range(k):
        out = graded_tensor(out, A)
    return out


def conjugate(A: GradedBasisAlgebra) -> GradedBasisAlgebra:
    """Conjugate algebra: same set and maps, scalars acting through conjugation."""

    def cv(v: dict) -> dict:
        return {k: c.conjugate() for k, c in v.items()}

    table = [[tuple((k, c.conjugate()) for k, c in e) for e in row] for row in A.table]
    return GradedBasisAlgebra(
        A.degrees,
        table,
        cv(A.unit),
        [cv(v) for v in A.star_images],
        [cv(v) for v in A.sigma_images],
        A.labels,
    )


# ---------------------------------------------------------------------------
# Checks


def check_algebra(A: GradedBasisAlgebra, max_triples: int = 1 << 16) -> Verdict:
    """Associativity, graded multiplication, unit and star axioms on basis elements.

    Associativity is checked on all triples when there are at most
    ``max_triples`` of them, otherwise on triples of generators.
    """
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k, _ in A.table[i][j]:
                if A.degrees[k] != (A.degrees[i] + A.degrees[j]) % 2:
                    return Verdict(False, "degrees are not additive", (i, j))
    for i in range(n):
        b = A.basis(i)
        if A.mul(A.unit, b) != b or A.mul(b, A.unit) != b:
            return Verdict(False, "unit is not neutral", i)
    idx = range(n) if n**3 <= max_triples else A.generators
    for i in idx:
        for j in idx:
            ij = A.mul(A.basis(i), A.basis(j))
            for k in idx:
                if A.mul(ij, A.basis(k)) != A.mul(A.basis(i), A.mul(A.basis(j), A.basis(k))):
                    return Verdict(False, "multiplication is not associative", (i, j, k))
    for i in range(n):
        b = A.basis(i)
        if A.star(A.star(b)) != b:
            return Verdict(False, "star is not an involution", i)
        if A.degree_of(A.star(b)) not in (None, A.degrees[i]) or not A.star(b):
            return Verdict(False, "star does not preserve degree", i)
    for i in range(n):
        for j in range(n):
            bi, bj = A.basis(i), A.basis(j)
            if A.star(A.mul(bi, bj)) != A.mul(A.star(bj), A.star(bi)):
                return Verdict(False, "star is not anti-multiplicative", (i, j))
    return Verdict(True)


def is_real_structure(A: GradedBasisAlgebra) -> Verdict:
    """Check that sigma is an involutive, grading preserving *-automorphism."""
    n = A.dim
    for i in range(n):
        b = A.basis(i)
        s = A.sigma(b)
        if A.sigma(s) != b:
            return Verdict(False, "sigma^2 != 1", i)
        if any(A.degrees[k] != A.degrees[i] for k in s):
            return Verdict(False, "sigma does not preserve the grading", i)
        if A.sigma(A.star(b)) != A.star(s):
            return Verdict(False, "sigma does not commute with star", i)
    for i in range(n):
        si = A.sigma(A.basis(i))
        for j in range(n):
            lhs = A.sigma(A.mul(A.basis(i), A.basis(j)))
            if lhs != A.mul(si, A.sigma(A.basis(j))):
                return Verdict(False, "sigma is not multiplicative", (i, j))
    return Verdict(True)


# ---------------------------------------------------------------------------
# Serialization


def dumps(A: GradedBasisAlgebra) -> str:
    def q(x):
        return format_scalar(GaussianRational(x)).replace("i", "")

    lines = ["rg-algebra", f"dim {A.dim}", "degrees " + " ".join(map(str, A.degrees))]
    lines.append("labels " + " ".join(A.labels))
    lines.append("unit " + " ".join(f"{k}:{format_scalar(c)}" for k, c in sorted(A.unit.items())))
    lines.append("mult")
    for i, row in enumerate(A.table):
        for j, entry in enumerate(row):
            for k, c in entry:
                lines.append(f"{i} {j} {k} {q(c.re)} {q(c.im)}")
    for name, imgs in (("star", A.star_images), ("sigma", A.sigma_images)):
        lines.append(name)
        for i, v in enumerate(imgs):
            for k, c in sorted(v.items()):
                lines.append(f"{i} {k} {q(c.re)} {q(c.im)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str) -> GradedBasisAlgebra:
    section = None
    dim = 0
    degrees: list = []
    labels = None
    unit: dict = {}
    table = None
    star: list = []
    sigma: list = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line == "rg-algebra":
            continue
        head, _, rest = line.partition(" ")
        if head == "dim":
            dim = int(rest)
            table = [[[] for _ in range(dim)] for _ in range(dim)]
            star = [{} for _ in range(dim)]
            sigma = [{} for _ in range(dim)]
        elif head == "degrees":
            degrees = [int(x) for x in rest.split()]
        elif head == "labels":
            labels = rest.split()
        elif head == "unit":
            for tok in rest.split():
                k, c = tok.split(":")
                unit[int(k)] = parse_scalar(c)
        elif line in ("mult", "star", "sigma", "end"):
            section = line
        elif section == "mult":
            i, j, k, re, im = line.split()
            table[int(i)][int(j)].append((int(k), GaussianRational(mpq(re), mpq(im))))
        elif section in ("star", "sigma"):
            i, k, re, im = line.split()
            target = star if section == "star" else sigma
            target[int(i)][int(k)] = GaussianRational(mpq(re), mpq(im))
        else:
            raise ValueError(f"cannot parse line: {raw!r}")
    return GradedBasisAlgebra(degrees, table, unit, star, sigma, labels)


# ---------------------------------------------------------------------------
# Matrix models


@dataclass(frozen=True)
class AntiLinearOperator:
    """x -> C conj(x) on C^N."""

    C: tuple

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(tuple(GaussianRational.coerce(x) for x in r) for r in self.C))

    def __call__(self, x):
        return [sum((c * v.conjugate() for c, v in zip(row, x)), ZERO) for row in self.C]

    def compose(self, other: "AntiLinearOperator") -> list:
        """Matrix of the linear map self o other, i.e. C1 conj(C2)."""
        return _matmul(self.C, [[x.conjugate() for x in r] for r in other.C])

    def square(self) -> list:
        return self.compose(self)


def _matmul(A, B):
    n, m = len(A), len(B[0]) if B else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k, a in enumerate(Ai):
            if not a:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(m):
                if Bk[j]:
                    row[j] = row[j] + a * Bk[j]
    return out


def _conj_mat(A):
    return [[x.conjugate() for x in r] for r in A]


@dataclass
class MatrixModel:
    """Explicit matrix form of an elementary Real graded algebra.

    Even parity: A = M_N(C) graded by the diagonal sign vector ``S``, with
    sigma(T) = C conj(T) C^-1. Odd parity: A = M_N(C) + M_N(C) with the swap
    grading; ``structure`` is 0 when sigma preserves each summand and 1 when
    it swaps them, and ``J`` implements the induced Real structure on one
    summand. ``scalar`` is c with C conj(C) = c Id.
    """

    parity: int
    N: int
    J: AntiLinearOperator
    scalar: object
    S: tuple | None = None
    structure: int | None = None
    _rep: Callable = field(default=None, repr=False)
    _idempotent: dict = field(default=None, repr=False)

    @property
    def epsilon(self) -> int:
        if self.parity == 1:
            return self.structure
        C = self.J.C
        S = self.S
        degs = {0 if S[i] == S[j] else 1 for i in range(self.N) for j in range(self.N) if C[i][j]}
        return degs.pop()

    @property
    def eta(self) -> int:
        return 1 if self.scalar > 0 else -1

    def represent(self, x: dict):
        """Matrix (even parity) or pair of matrices (odd parity) of x."""
        return self._rep(x)


def _rational_sqrt(x):
    x = mpq(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if not (gmpy2.is_square(n) and gmpy2.is_square(d)):
        return None
    return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))


def gaussian_sqrt(c: GaussianRational):
    """An exact square root in Q(i), or None."""
    a, b = c.re, c.im
    r = _rational_sqrt(a * a + b * b)
    if r is None:
        return None
    x = _rational_sqrt((a + r) / 2)
    if x is None:
        return None
    if x:
        return GaussianRational(x, b / (2 * x))
    y = _rational_sqrt((r - a) / 2)
    return None if y is None else GaussianRational(0, y)


_X = symbols("x")


def _to_qqi(c: GaussianRational):
    return QQ_I(c.re, c.im)


def _from_qqi(z) -> GaussianRational:
    x, y = z.x, z.y
    return GaussianRational(mpq(int(x.numerator), int(x.denominator)), mpq(int(y.numerator), int(y.denominator)))


def _minimal_polynomial(A: GradedBasisAlgebra, e: dict, y: dict) -> list:
    """Monic minimal polynomial (ascending coefficients) of y in the corner eAe."""
    powers = [e]
    basis = EchelonBasis()
    basis.add(e)
    while True:
        nxt = A.mul(powers[-1], y)
        coords = basis.coordinates(nxt)
        if coords is not None:
            d = len(powers)
            return [-coords.get(i, ZERO) for i in range(d)] + [ONE]
        basis.add(nxt)
        powers.append(nxt)


def _eval_poly(A: GradedBasisAlgebra, coeffs, e: dict, y: dict) -> dict:
    out: dict = {}
    for c in reversed(coeffs):
        out = vec_add(A.mul(out, y), e, c)
    return out


def _split(A: GradedBasisAlgebra, e: dict, y: dict):
    """Idempotent E with 0 < E < e from a factorization of y's minimal polynomial."""
    coeffs = _minimal_polynomial(A, e, y)
    if len(coeffs) <= 2:
        return None
    f = Poly([_to_qqi(c) for c in reversed(coeffs)], _X, domain=QQ_I)
    _, factors = f.factor_list()
    if len(factors) < 2:
        return None
    g0, a0 = factors[0]
    P = g0**a0
    Q = f.exquo(P)
    s, t, h = P.gcdex(Q)
    proj = (t * Q).rem(f)
    pc = [_from_qqi(QQ_I.from_sympy(c)) for c in reversed(proj.all_coeffs())]
    return _eval_poly(A, pc, e, y)


def _primitive_idempotent(A: GradedBasisAlgebra, unit: dict, candidates, N: int) -> dict:
    def rank(x):
        r = A.trace(x) / N
        if r.im or r.re.denominator != 1:
            raise NotElementary("trace of an idempotent is not a multiple of N")
        return int(r.re)

    e = unit
    r = rank(e)
    while r > 1:
        for b in candidates:
            y = A.mul(A.mul(e, b), e)
            if not y:
                continue
            E = _split(A, e, y)
            if E is None:
                continue
            rE = rank(E)
            if rE <= 0 or rE >= r:
                continue
            if 2 * rE > r:
                E, rE = vec_add(e, E, -ONE), r - rE
            e, r = E, rE
            break
        else:
            raise NotElementary("no splitting element found for an idempotent of rank %d" % r)
    return e


class _Module:
    """The left ideal A e with a basis v_j = b_{k_j} e (homogeneous when e is even)."""

    def __init__(self, A: GradedBasisAlgebra, e: dict, N: int, left_unit: dict):
        self.A = A
        self.e = e
        self.ech = EchelonBasis()
        self.kernel_indices = []
        self.vectors = []
        for k in range(A.dim):
            v = A.mul(A.mul(A.basis(k), left_unit), e)
            if v and self.ech.add(v):
                self.kernel_indices.append(k)
                self.vectors.append(v)
                if len(self.vectors) == N:
                    break
        if len(self.vectors) != N:
            raise NotElementary("left ideal of a primitive idempotent has the wrong dimension")
        self.N = N
        self.left_unit = left_unit

    def coords(self, w: dict) -> list:
        c = self.ech.coordinates(w)
        if c is None:
            raise NotElementary("module is not closed under multiplication")
        return [c.get(j, ZERO) for j in range(self.N)]

    def act(self, x: dict, col: Sequence) -> list:
        """Coordinates of x . (sum col_j v_j)."""
        w: dict = {}
        for j, c in enumerate(col):
            if c:
                w = vec_add(w, self.vectors[j], c)
        return self.coords(self.A.mul(x, w))

    def matrix(self, x: dict) -> list:
        cols = [self.coords(self.A.mul(x, v)) for v in self.vectors]
        return [[cols[j][i] for j in range(self.N)] for i in range(self.N)]


def _intertwiner(module: _Module, sigma0: Callable, gens: Sequence[dict]):
    """C with pi(sigma0(x)) C = C conj(pi(x)) for x in gens, and c with C conj(C) = c."""
    A, N = module.A, module.N
    # rho(x) = conj(pi(sigma0(x))) is equivalent to pi; T = conj(C) intertwines pi with rho
    s_e = sigma0(module.e)
    x0 = None
    for l in range(N):
        col = module.coords(A.mul(s_e, module.vectors[l]))
        if any(col):
            x0 = [c.conjugate() for c in col]
            break
    if x0 is None:
        raise NotElementary("sigma maps the primitive idempotent to zero")
    cols = []
    for k in module.kernel_indices:
        b = A.mul(A.basis(k), module.left_unit)
        y = module.act(sigma0(b), [c.conjugate() for c in x0])
        cols.append([c.conjugate() for c in y])
    T = [[cols[j][i] for j in range(N)] for i in range(N)]
    C = _conj_mat(T)
    try:
        mat_inverse(C)
    except ZeroDivisionError:
        raise NotElementary("intertwiner is singular") from None
    for g in gens:
        lhs = _matmul(module.matrix(sigma0(g)), C)
        rhs = _matmul(C, _conj_mat(module.matrix(g)))
        if lhs != rhs:
            raise NotRealStructure("sigma is not implemented by an anti-linear operator", witness=g)
    sq = _matmul(C, _conj_mat(C))
    c = sq[0][0]
    if any(sq[i][j] != (c if i == j else ZERO) for i in range(N) for j in range(N)):
        raise NonScalarSquare("J^2 is not scalar", witness=sq)
    if c.im or not c.re:
        raise NonScalarSquare(f"J^2 = {c} is not a nonzero real scalar", witness=c)
    return C, c.re


def _center_shape(A: GradedBasisAlgebra):
    center = A.center()
    if len(center) == 1:
        return 0, None
    if len(center) == 2:
        odd = A.center(degree=1)
        if len(odd) == 1:
            return 1, odd[0]
    raise NotElementary(f"center of dimension {len(center)} with this grading is not elementary")


def _int_sqrt(n: int):
    r = math.isqrt(n)
    return r if r * r == n else None


def matrix_model(A: GradedBasisAlgebra) -> MatrixModel:
    """Irreducible representation with transported grading and Real structure."""
    if not A.unit:
        raise NotElementary("zero algebra")
    parity, z = _center_shape(A)
    gens = [A.basis(g) for g in A.generators]
    if parity == 0:
        N = _int_sqrt(A.dim)
        if N is None:
            raise NotElementary(f"dimension {A.dim} is not a square")
        even = [A.basis(i) for i in range(A.dim) if A.degrees[i] == 0]
        e = _primitive_idempotent(A, A.unit, even, N)
        mod = _Module(A, e, N, A.unit)
        S = tuple(-1 if A.degrees[k] else 1 for k in mod.kernel_indices)
        for g in gens:
            lhs = mod.matrix(A.grading(g))
            M = mod.matrix(g)
            if lhs != [[S[i] * M[i][j] * S[j] for j in range(N)] for i in range(N)]:
                raise NotElementary("grading is not implemented by S")
        C, c = _intertwiner(mod, A.sigma, gens)
        model = MatrixModel(0, N, AntiLinearOperator(C), c, S=S, _rep=mod.matrix, _idempotent=e)
        model.epsilon  # raises if J is not homogeneous
        return model
    N = _int_sqrt(A.dim // 2) if A.dim % 2 == 0 else None
    if N is None:
        raise NotElementary(f"dimension {A.dim} is not twice a square")
    zz = A.mul(z, z)
    k0, u0 = next(iter(A.unit.items()))
    c = zz.get(k0, ZERO) / u0
    if not c or vec_scale(A.unit, c) != zz:
        raise NotElementary("odd central element does not square to a nonzero scalar")
    s = gaussian_sqrt(c)
    if s is None:
        raise NotElementary(f"square root of {c} is not a Gaussian rational")
    half = GaussianRational(mpq(1, 2))
    f1 = vec_scale(vec_add(A.unit, z, ONE / s), half)
    f2 = vec_add(A.unit, f1, -ONE)
    sf1 = A.sigma(f1)
    if sf1 == f1:
        structure, sigma0 = 0, A.sigma
    elif sf1 == f2:
        structure = 1

        def sigma0(x):
            return A.grading(A.sigma(x))
    else:
        raise NotRealStructure("sigma neither fixes nor swaps the simple summands")
    cand = [A.basis(i) for i in range(A.dim)]
    e = _primitive_idempotent(A, f1, cand, N)
    mod = _Module(A, e, N, f1)
    bgens = [A.mul(g, f1) for g in gens] + [f1]
    C, cval = _intertwiner(mod, sigma0, bgens)

    def rep(x):
        return mod.matrix(A.mul(x, f1)), mod.matrix(A.mul(A.grading(x), f1))

    return MatrixModel(1, N, AntiLinearOperator(C), cval, structure=structure, _rep=rep, _idempotent=e)
