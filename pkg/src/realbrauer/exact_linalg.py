"""Exact arithmetic kernels.

Gaussian rationals, elimination over a field on sparse rows, integer Smith
normal forms (dense with full transforms, sparse with column transforms),
lattices in Z^n and finitely generated abelian groups.

>>> smith_normal_form([[2, 0], [0, 3]]).diagonal
[1, 6]
>>> str(cokernel([[2, 0], [0, 4]]))
'Z/2 x Z/4'
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import CompositionNotZero

_MPQ = type(mpq(0))


# ---------------------------------------------------------------------------
# Gaussian rationals


def _q(x) -> _MPQ:
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussianRational:
    """Exact complex number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point values are not exact")
        return cls(x, 0)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re + other.re, self.im + other.im)
        return GaussianRational._raw(self.re + _q(other), self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re - other.re, self.im - other.im)
        return GaussianRational._raw(self.re - _q(other), self.im)

    def __rsub__(self, other):
        return GaussianRational._raw(_q(other) - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        o = _q(other)
        return GaussianRational._raw(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero")
        c, d = other.re / n, -other.im / n
        a, b = self.re, self.im
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return (ONE / self) ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, _MPQ)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> _MPQ:
        """|z|^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


def _fmt_q(x) -> str:
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical text form, e.g. ``3/2-i``; inverse of :func:`parse_scalar`."""
    re, im = z.re, z.im
    if not im:
        return _fmt_q(re)
    if im == 1:
        tail = "i"
    elif im == -1:
        tail = "-i"
    else:
        tail = _fmt_q(im) + "i"
    if not re:
        return tail
    if not tail.startswith("-"):
        tail = "+" + tail
    return _fmt_q(re) + tail


def parse_scalar(text: str) -> GaussianRational:
    s = text.strip().replace(" ", "")
    if not s.endswith("i"):
        return GaussianRational(mpq(s), 0)
    body = s[:-1]
    # split at the last sign that is not the leading one
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut > 0 and body[cut - 1] not in "eE/":
        re_part, im_part = body[:cut], body[cut:]
    else:
        re_part, im_part = "0", body
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return GaussianRational(mpq(re_part), mpq(im_part.lstrip("+")))


# ---------------------------------------------------------------------------
# Elimination over a field (sparse rows as dicts column -> value)


def _inv(x):
    if isinstance(x, GaussianRational):
        return ONE / x
    return 1 / _q(x)


def _axpy(target: dict, coeff, source: dict) -> None:
    """target += coeff * source, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k, 0) + coeff * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class EchelonBasis:
    """Incremental echelon basis of a subspace, with coordinates.

    Vectors are dicts index -> field element. Every inserted independent vector
    gets an index; ``coordinates`` expresses a vector in those vectors.
    """

    def __init__(self):
        self._rows = []  # (pivot, row, combo)
        self.vectors = []

    def __len__(self):
        return len(self.vectors)

    def _reduce(self, vec: dict, track: bool):
        v = dict(vec)
        combo = {} if track else None
        for pivot, row, rc in self._rows:
            c = v.get(pivot)
            if c:
                _axpy(v, -c, row)
                if track:
                    _axpy(combo, -c, rc)
        return v, combo

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return False (and do nothing) if it is dependent."""
        v, combo = self._reduce(vec, True)
        if not v:
            return False
        idx = len(self.vectors)
        self.vectors.append(dict(vec))
        _axpy(combo, 1, {idx: 1})
        pivot = min(v)
        inv = _inv(v[pivot])
        row = {k: x * inv for k, x in v.items()}
        combo = {k: x * inv for k, x in combo.items()}
        self._rows.append((pivot, row, combo))
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec, False)[0]

    def coordinates(self, vec: dict):
        """Coefficients c with vec = sum c[k] * vectors[k], or None."""
        v, combo = self._reduce(vec, True)
        if v:
            return None
        return {k: -x for k, x in combo.items() if x}

    def residual(self, vec: dict) -> dict:
        return self._reduce(vec, False)[0]


def rref(rows: Sequence[dict]):
    """Reduced row echelon form; returns list of (pivot, row) with unit pivots."""
    out = []
    for r in rows:
        v = dict(r)
        for p, row in out:
            c = v.get(p)
            if c:
                _axpy(v, -c, row)
        if not v:
            continue
        p = min(v)
        inv = _inv(v[p])
        v = {k: x * inv for k, x in v.items()}
        for q, row in out:
            c = row.get(p)
            if c:
                _axpy(row, -c, v)
        out.append((p, v))
    out.sort(key=lambda t: t[0])
    return out


def nullspace(rows: Sequence[dict], ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, as sparse dicts."""
    red = rref(rows)
    pivots = {p for p, _ in red}
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = {f: 1}
        for p, row in red:
            c = row.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def mat_inverse(M: Sequence[Sequence]) -> list[list]:
    """Inverse of a square matrix over a field (Gauss-Jordan)."""
    n = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        inv = _inv(piv)
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def symmetric_signature(M: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Exact congruence diagonalization (Sylvester's law of inertia).
    """
    A = [[_q(x) for x in row] for row in M]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            # all diagonal entries vanish: combine two coordinates
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            continue
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / d
            if f:
                for k in range(n):
                    A[i][k] -= f * A[piv][k]
                for k in range(n):
                    A[k][i] -= f * A[k][piv]
    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# Integer Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = S with S diagonal (d1 | d2 | ...), U and V unimodular."""

    S: list
    U: list
    V: list
    U_inv: list
    V_inv: list

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return [self.S[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with both transforms and their inverses.

    ``ncols`` is needed only when ``M`` has no rows.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    A = [[int(x) for x in row] for row in M]
    U, Ui, V, Vi = identity(m), identity(m), identity(n), identity(n)

    def row_add(dst, src, q):  # row_dst += q * row_src
        if not q:
            return
        Ad, As = A[dst], A[src]
        for j in range(n):
            if As[j]:
                Ad[j] += q * As[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            if Us[j]:
                Ud[j] += q * Us[j]
        for row in Ui:  # Ui col_src -= q col_dst
            if row[dst]:
                row[src] -= q * row[dst]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if not q:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]
        Vs, Vd = Vi[src], Vi[dst]  # Vi row_src -= q row_dst
        for j in range(n):
            if Vd[j]:
                Vs[j] -= q * Vd[j]

    def row_swap(a, b):
        if a != b:
            A[a], A[b] = A[b], A[a]
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def col_swap(a, b):
        if a != b:
            for row in A:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
    return SmithForm(A, U, V, Ui, Vi)


def invariant_factors(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    return smith_normal_form(M, ncols).diagonal


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """An integer solution x of M x = b, or None."""
    sf = smith_normal_form(M, ncols)
    n = len(sf.V)
    c = [sum(u * v for u, v in zip(row, b)) for row in sf.U]
    diag = sf.diagonal
    y = [0] * n
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return [sum(sf.V[i][j] * y[j] for j in range(n)) for i in range(n)]


@dataclass
class ColumnDiagonalization:
    """Result of :func:`diagonalize_columns`.

    For some unimodular U, ``U * A * V`` has a single nonzero entry ``d`` in
    each pivot column ``j`` (pairs ``(j, d)`` in ``pivots``) and zero columns
    elsewhere. ``V`` is stored as sparse columns, ``V_inv`` as sparse rows.
    """

    ncols: int
    pivots: dict
    V_cols: list
    V_inv_rows: list

    def kernel_mod(self, r: int) -> list[tuple[dict, int]]:
        """Basis of {x in Z^n : A x = 0 mod r} as (column of V, scale t) pairs.

        The lattice is spanned by ``t * V[:, j]``; r = 0 gives the plain kernel.
        """
        out = []
        for j in range(self.ncols):
            d = self.pivots.get(j)
            if d is None:
                t = 1
            elif r == 0:
                continue
            else:
                t = r // math.gcd(r, d)
            out.append((j, t))
        return out


def diagonalize_columns(rows: Iterable[dict], ncols: int) -> ColumnDiagonalization:
    """Sparse integer diagonalization tracking only column operations.

    ``rows`` are dicts column -> int. Pivots are chosen by minimal absolute
    value to limit coefficient growth.
    """
    R = {}
    colidx = {j: set() for j in range(ncols)}
    for i, r in enumerate(rows):
        r = {j: int(v) for j, v in r.items() if v}
        if r:
            R[i] = r
            for j in r:
                colidx[j].add(i)
    V = [{j: 1} for j in range(ncols)]
    Vi = [{j: 1} for j in range(ncols)]
    pivots = {}

    def set_entry(i, j, v):
        if v:
            R[i][j] = v
            colidx[j].add(i)
        else:
            R[i].pop(j, None)
            colidx[j].discard(i)

    while R:
        best = None
        for i, r in R.items():
            for j, v in r.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best[0] == 1:
                break
        _, pi, pj = best
        while True:
            d = R[pi][pj]
            leftover = []
            for k in list(colidx[pj]):
                if k == pi:
                    continue
                q = R[k][pj] // d
                rk = R[k]
                for j, v in list(R[pi].items()):
                    set_entry(k, j, rk.get(j, 0) - q * v)
                if rk.get(pj):
                    leftover.append(k)
                if not rk:
                    del R[k]
            if leftover:
                pi = min(leftover, key=lambda k: abs(R[k][pj]))
                continue
            row = R[pi]
            leftover = []
            for j in list(row):
                if j == pj:
                    continue
                q = row[j] // d
                if q:
                    # col_j -= q col_pj; column pj is zero outside row pi
                    set_entry(pi, j, row[j] - q * d)
                    _axpy(V[j], -q, V[pj])
                    _axpy(Vi[pj], q, Vi[j])
                if row.get(j):
                    leftover.append(j)
            if leftover:
                pj = min(leftover, key=lambda j: abs(row[j]))
                continue
            break
        pivots[pj] = R[pi][pj]
        colidx[pj].discard(pi)
        del R[pi]
    return ColumnDiagonalization(ncols, pivots, V, Vi)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and each di >= 2."""

    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(d < 2 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not a divisibility chain: {f}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        """Normalize a direct sum of cyclic groups (0 meaning Z)."""
        orders = [abs(int(o)) for o in orders]
        free = sum(1 for o in orders if o == 0)
        finite = [o for o in orders if o > 1]
        if not finite:
            return cls(free, ())
        primes: dict[int, list[int]] = {}
        for o in finite:
            for p, e in _factor(o).items():
                primes.setdefault(p, []).append(p**e)
        k = max(len(v) for v in primes.values())
        factors = [1] * k
        for p, powers in primes.items():
            powers.sort()
            for idx, pw in enumerate(powers):
                factors[k - len(powers) + idx] *= pw
        return cls(free, tuple(f for f in factors if f > 1))

    @classmethod
    def from_element_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        """Recover a finite abelian group from the multiset of element orders."""
        orders = list(orders)
        n = len(orders)
        cyclic = []
        for p in _factor(n):
            a_prev, k = 0, 1
            counts = []
            while True:
                size = sum(1 for o in orders if (p**k) % o == 0)
                a = round(math.log(size, p))
                if p**a != size:
                    raise ValueError("order data is not that of an abelian group")
                counts.append(a - a_prev)
                if size == p ** _factor(n).get(p, 0):
                    break
                a_prev, k = a, k + 1
            # counts[k-1] = number of cyclic factors of exponent >= k
            for k, c in enumerate(counts, start=1):
                nxt = counts[k] if k < len(counts) else 0
                cyclic += [p**k] * (c - nxt)
        return cls.from_cyclic_orders(cyclic)

    @property
    def order(self):
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.free_rank and not self.invariant_factors

    @property
    def exponent(self):
        if self.free_rank:
            return 0
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def primary_part(self, keep) -> "FGAbelianGroup":
        """Torsion subgroup supported on primes p with keep(p)."""
        cyc = []
        for d in self.invariant_factors:
            cyc += [p**e for p, e in _factor(d).items() if keep(p)]
        return FGAbelianGroup.from_cyclic_orders(cyc)

    def odd_part(self) -> "FGAbelianGroup":
        return self.primary_part(lambda p: p != 2)

    def two_part(self) -> "FGAbelianGroup":
        return self.primary_part(lambda p: p == 2)

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_cyclic_orders(
            [0] * (self.free_rank + other.free_rank) + list(self.invariant_factors) + list(other.invariant_factors)
        )

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " x ".join(parts) if parts else "0"

    def short(self) -> str:
        """Compact name, e.g. Z8 or Z2xZ2."""
        if self.is_trivial:
            return "0"
        return str(self).replace("Z/", "Z").replace(" x ", "x")


def cokernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> FGAbelianGroup:
    """Z^ncols modulo the span of the rows of M."""
    n = len(M[0]) if M else (ncols or 0)
    diag = invariant_factors(M, n) if M else []
    rank = sum(1 for d in diag if d)
    return FGAbelianGroup.from_cyclic_orders([d for d in diag if d] + [0] * (n - rank))


# ---------------------------------------------------------------------------
# Lattices and subquotients


class Lattice:
    """Sublattice of Z^dim spanned by integer column vectors."""

    def __init__(self, generators: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        gens = [list(map(int, g)) for g in generators]
        # matrix with generators as columns
        G = [[g[i] for g in gens] for i in range(dim)] if gens else [[] for _ in range(dim)]
        if gens:
            sf = smith_normal_form(G)
            self._U = sf.U
            self._diag = sf.diagonal
            r = sf.rank
            GV = mat_mul(G, sf.V)
            self.basis = [[GV[i][j] for i in range(dim)] for j in range(r)]
        else:
            self._U = identity(dim)
            self._diag = []
            self.basis = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]):
        """Integer coordinates of v in ``basis``, or None if v is not in the lattice."""
        Uv = [sum(a * int(b) for a, b in zip(row, v)) for row in self._U]
        r = self.rank
        coords = []
        for i, x in enumerate(Uv):
            if i < r:
                d = self._diag[i]
                if x % d:
                    return None
                coords.append(x // d)
            elif x:
                return None
        return coords

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None


@dataclass(frozen=True)
class Presentation:
    """Z^k modulo diag(relations); a relation 0 leaves that generator free."""

    relations: tuple

    @property
    def ngens(self) -> int:
        return len(self.relations)

    def reduce(self, v):
        return [x % r if r else x for x, r in zip(v, self.relations)]


@dataclass(frozen=True)
class Homomorphism:
    """Integer matrix (target gens x source gens) between presentations."""

    source: Presentation
    target: Presentation
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        if len(M) != self.target.ngens or any(len(r) != self.source.ngens for r in M):
            raise ValueError("matrix shape does not match presentations")
        for k, r in enumerate(self.source.relations):
            if r and any((r * M[i][k]) % t if t else r * M[i][k] for i, t in enumerate(self.target.relations)):
                raise ValueError(f"generator {k} of the source is not mapped compatibly")

    def __call__(self, v):
        w = [sum(a * b for a, b in zip(row, v)) for row in self.matrix]
        return self.target.reduce(w)


@dataclass
class Subquotient:
    """ker(d_out) / im(d_in) with canonical generators and class lookup."""

    group: FGAbelianGroup
    generators: list
    _z: Lattice = field(repr=False)
    _b_sf: SmithForm = field(repr=False)
    generator_orders: list
    _offset: int = field(repr=False)
    _out: Homomorphism = field(repr=False)

    def lift(self, k: int):
        return self.generators[k]

    def is_cycle(self, v) -> bool:
        return self._out is None or not any(self._out(v))

    def class_of(self, v) -> tuple:
        c = self._z.coordinates(v)
        if c is None:
            raise ValueError("not a cycle")
        w = [sum(a * b for a, b in zip(row, c)) for row in self._b_sf.U]
        w = w[self._offset:]
        return tuple(x % o if o else x for x, o in zip(w, self.generator_orders))

    def same_class(self, u, v) -> bool:
        return self.class_of([a - b for a, b in zip(u, v)]) == tuple(0 for _ in self.generator_orders)


def subquotient(d_out: Homomorphism, d_in: Homomorphism) -> Subquotient:
    """Homology ker(d_out)/im(d_in) of a composable pair of homomorphisms."""
    mid = d_in.target
    if d_out.source != mid:
        raise ValueError("homomorphisms are not composable")
    g = mid.ngens
    for k in range(d_in.source.ngens):
        e = [1 if i == k else 0 for i in range(d_in.source.ngens)]
        if any(d_out(d_in(e))):
            raise CompositionNotZero(f"d_out(d_in(e_{k})) != 0")
    # lifts of cycles: kernel of [d_out | diag(target relations)] projected to Z^g
    tgt = d_out.target
    rel_cols = [i for i, r in enumerate(tgt.relations) if r]
    big = [list(row) + [tgt.relations[i] if i == c else 0 for c in rel_cols] for i, row in enumerate(d_out.matrix)]
    width = g + len(rel_cols)
    if big:
        sf = smith_normal_form(big, width)
        r = sf.rank
        ker = [[sf.V[i][j] for i in range(g)] for j in range(r, width)]
    else:
        ker = [[1 if i == j else 0 for i in range(g)] for j in range(g)]
    Z = Lattice(ker, g)
    bgens = [[row[k] for row in d_in.matrix] for k in range(d_in.source.ngens)]
    bgens += [[r if i == k else 0 for i in range(g)] for k, r in enumerate(mid.relations) if r]
    coords = []
    for b in bgens:
        c = Z.coordinates(b)
        if c is None:
            raise CompositionNotZero("boundary outside the cycle lattice")
        coords.append(c)
    rz = Z.rank
    C = [[c[i] for c in coords] for i in range(rz)]  # rz x (#boundary gens)
    if coords and rz:
        bsf = smith_normal_form(C)
        diag = bsf.diagonal + [0] * (rz - len(bsf.diagonal))
    else:
        bsf = smith_normal_form([[0] for _ in range(rz)] if rz else [], 1)
        diag = [0] * rz
    offset = sum(1 for d in diag if d == 1)
    orders = diag[offset:]
    group = FGAbelianGroup(sum(1 for d in orders if d == 0), tuple(d for d in orders if d))
    # generator k of the subquotient is U^{-1} e_{offset+k} in Z-coordinates
    gens = []
    for k in range(offset, rz):
        zc = [bsf.U_inv[i][k] for i in range(rz)]
        v = [sum(Z.basis[j][i] * zc[j] for j in range(rz)) for i in range(g)]
        gens.append(mid.reduce(v))
    return Subquotient(group, gens, Z, bsf, orders, offset, d_out)


class FiniteSubgroup:
    """Subgroup generated by ``generators`` inside Z/o_1 + ... + Z/o_k.

    An order 0 stands for a copy of Z. ``group`` is the isomorphism type,
    ``generators`` are canonical generators (ambient vectors) matching
    ``generator_orders``, and ``coordinates`` solves for a member.
    """

    def __init__(self, orders: Sequence[int], generators: Sequence[Sequence[int]]):
        self.orders = tuple(int(o) for o in orders)
        k = len(self.orders)
        rel = [[o if i == j else 0 for i in range(k)] for j, o in enumerate(self.orders) if o]
        gens = [list(map(int, g)) for g in generators]
        self._lat = Lattice(gens + rel, k)
        r = self._lat.rank
        coords = [self._lat.coordinates(v) for v in rel]
        if r and coords:
            R = [[c[i] for c in coords] for i in range(r)]
            sf = smith_normal_form(R)
            diag = sf.diagonal + [0] * (r - len(sf.diagonal))
        else:
            sf = smith_normal_form([[0] for _ in range(r)] if r else [], 1)
            diag = [0] * r
        self._sf = sf
        self._offset = sum(1 for d in diag if d == 1)
        self.generator_orders = diag[self._offset:]
        self.group = FGAbelianGroup(
            sum(1 for d in self.generator_orders if d == 0), tuple(d for d in self.generator_orders if d)
        )
        self.generators = []
        for j in range(self._offset, r):
            c = [sf.U_inv[i][j] for i in range(r)]
            v = [sum(self._lat.basis[b][i] * c[b] for b in range(r)) for i in range(k)]
            self.generators.append([x % o if o else x for x, o in zip(v, self.orders)])

    @property
    def order(self):
        return self.group.order

    def coordinates(self, v: Sequence[int]):
        """Coordinates in ``generators`` (mod ``generator_orders``), or None."""
        c = self._lat.coordinates(v)
        if c is None:
            return None
        w = [sum(a * b for a, b in zip(row, c)) for row in self._sf.U][self._offset:]
        return tuple(x % o if o else x for x, o in zip(w, self.generator_orders))

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None
