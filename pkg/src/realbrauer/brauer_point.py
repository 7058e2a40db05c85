"""The eight types [p; eps, eta] of Real graded elementary algebras.

>>> type_add(BrauerType.from_z8(2), BrauerType.from_z8(2)).label
'[0;0,-]'
>>> classify(make_clifford(0, 2)).z8
2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from sympy import Poly, QQ

from .errors import NotRealStructure
from .exact_linalg import ONE, ZERO, EchelonBasis, GaussianRational, nullspace, symmetric_signature
from .graded_algebra import (
    GradedBasisAlgebra,
    _minimal_polynomial,
    _X,
    _conj_mat,
    _matmul,
    graded_tensor,
    is_real_structure,
    make_clifford,
    matrix_model,
    vec_add,
    Verdict,
)

# z8 -> (parity, epsilon, eta)
TABLE_1 = {
    0: (0, 0, 1),
    1: (1, 0, 1),
    2: (0, 1, 1),
    3: (1, 1, -1),
    4: (0, 0, -1),
    5: (1, 0, -1),
    6: (0, 1, -1),
    7: (1, 1, 1),
}
_FROM_LABEL = {v: k for k, v in TABLE_1.items()}

# Clifford representatives (p, q) of the eight types, indexed by z8
REPRESENTATIVES = {0: (0, 0), 1: (0, 1), 2: (0, 2), 3: (0, 3), 4: (0, 4), 5: (3, 0), 6: (2, 0), 7: (1, 0)}


@dataclass(frozen=True)
class BrauerType:
    parity: int
    epsilon: int
    eta: int

    def __post_init__(self):
        if (self.parity, self.epsilon, self.eta) not in _FROM_LABEL:
            raise ValueError(f"not a type: {(self.parity, self.epsilon, self.eta)}")

    @classmethod
    def from_z8(cls, n: int) -> "BrauerType":
        return cls(*TABLE_1[n % 8])

    @classmethod
    def parse(cls, text: str) -> "BrauerType":
        """Accept a z8 value ``5`` or a label ``[1;0,-]``."""
        t = text.strip()
        if t.lstrip("-").isdigit():
            return cls.from_z8(int(t))
        body = t.strip("[]").replace(" ", "")
        p, rest = body.split(";")
        e, s = rest.split(",")
        return cls(int(p), int(e), 1 if s in ("+", "+1", "1") else -1)

    @property
    def z8(self) -> int:
        return _FROM_LABEL[(self.parity, self.epsilon, self.eta)]

    @property
    def label(self) -> str:
        return f"[{self.parity};{self.epsilon},{'+' if self.eta > 0 else '-'}]"

    def __str__(self):
        return f"type={self.z8} label={self.label}"


def type_add(t1: BrauerType, t2: BrauerType) -> BrauerType:
    """Product law on labels."""
    if t1.parity == 1 and t2.parity == 0:
        t1, t2 = t2, t1
    e1, e2 = t1.epsilon, t2.epsilon
    sign = t1.eta * t2.eta
    if t1.parity == 0 and t2.parity == 0:
        return BrauerType(0, (e1 + e2) % 2, sign * (-1) ** (e1 * e2))
    if t1.parity == 0:
        return BrauerType(1, (e1 + e2) % 2, sign * (-1) ** (e1 + e1 * e2))
    return BrauerType(0, (1 + e1 + e2) % 2, sign * (-1) ** (e1 * e2))


def type_neg(t: BrauerType) -> BrauerType:
    return BrauerType.from_z8(-t.z8)


def classify(A: GradedBasisAlgebra, check: bool = True) -> BrauerType:
    """Type of a Real graded elementary algebra."""
    if check:
        v = is_real_structure(A)
        if not v:
            raise NotRealStructure(v.reason, witness=v.witness)
    m = matrix_model(A)
    return BrauerType(m.parity, m.epsilon, m.eta)


def classify_clifford(p: int, q: int) -> BrauerType:
    return classify(make_clifford(p, q, max_generators=8))


def representative(n: int) -> GradedBasisAlgebra:
    return make_clifford(*REPRESENTATIVES[n % 8])


# ---------------------------------------------------------------------------
# Independent oracle through the sigma-fixed real algebra


@dataclass(frozen=True)
class RealFormInvariants:
    real_dim: int
    center_dim: int
    center_kind: str  # "R", "RR" (split) or "C"
    signature: tuple  # inertia of x -> Tr(L_{x^2}) on the real form
    even_center_dim: int
    even_center_kind: str
    even_signature: tuple
    has_idempotent: bool

    @property
    def idempotent_profile(self) -> str:
        return "split" if self.has_idempotent else "none-found"


def _real_basis(A: GradedBasisAlgebra, indices) -> list[dict]:
    """Q-basis of the sigma-fixed vectors supported on ``indices``."""
    ech = EchelonBasis()
    out = []
    for i in indices:
        b = A.basis(i)
        ib = {i: GaussianRational(0, 1)}
        for v in (vec_add(b, A.sigma(b)), vec_add(ib, A.sigma(ib))):
            if not v:
                continue
            key = {}
            for k, c in v.items():
                if c.re:
                    key[2 * k] = c.re
                if c.im:
                    key[2 * k + 1] = c.im
            if ech.add(key):
                out.append(v)
    return out


def _real_center(A: GradedBasisAlgebra, basis: list[dict], test: list[dict]) -> list[dict]:
    """Real combinations of ``basis`` commuting with every element of ``test``."""
    rows = []
    for t in test:
        comm = [vec_add(A.mul(b, t), A.mul(t, b), -ONE) for b in basis]
        keys = {k for c in comm for k in c}
        for k in keys:
            rows.append({j: c[k].re for j, c in enumerate(comm) if k in c and c[k].re})
            rows.append({j: c[k].im for j, c in enumerate(comm) if k in c and c[k].im})
    rows = [r for r in rows if r]
    sol = nullspace(rows, len(basis))
    out = []
    for s in sol:
        v: dict = {}
        for j, c in s.items():
            v = vec_add(v, basis[j], GaussianRational(c))
        out.append(v)
    return out


def _center_kind(A: GradedBasisAlgebra, center: list[dict], unit: dict) -> str:
    if len(center) == 1:
        return "R"
    if len(center) != 2:
        return f"dim{len(center)}"
    ech = EchelonBasis()
    ech.add(unit)
    z = next(v for v in center if ech.add(v))
    z2 = A.mul(z, z)
    ech2 = EchelonBasis()
    ech2.add(unit)
    ech2.add(z)
    co = ech2.coordinates(z2)
    a, b = co.get(0, ZERO).re, co.get(1, ZERO).re
    disc = b * b + 4 * a
    return "RR" if disc > 0 else ("C" if disc < 0 else "degenerate")


def _trace_signature(A: GradedBasisAlgebra, basis: list[dict], even_only: bool) -> tuple:
    if even_only:
        t = []
        for j in range(A.dim):
            s = ZERO
            if A.degrees[j] == 0:
                for i in range(A.dim):
                    if A.degrees[i] == 0:
                        for k, c in A.table[j][i]:
                            if k == i:
                                s = s + c
            t.append(s)
    else:
        t = A.trace_functional
    n = len(basis)
    M = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            p = A.mul(basis[i], basis[j])
            s = ZERO
            for k, c in p.items():
                s = s + c * t[k]
            M[i][j] = M[j][i] = s.re
    return symmetric_signature(M)


def _has_real_idempotent(A: GradedBasisAlgebra, basis: list[dict], unit: dict) -> bool:
    """Search for a nontrivial idempotent by splitting minimal polynomials over Q."""
    for y in basis:
        coeffs = _minimal_polynomial(A, unit, y)
        if len(coeffs) <= 2:
            continue
        f = Poly([QQ(int(c.re.numerator), int(c.re.denominator)) for c in reversed(coeffs)], _X, domain=QQ)
        _, factors = f.factor_list()
        if len(factors) >= 2:
            return True
    for a in basis:
        for b in basis:
            y = vec_add(a, b)
            if y:
                coeffs = _minimal_polynomial(A, unit, y)
                if len(coeffs) > 2:
                    f = Poly(
                        [QQ(int(c.re.numerator), int(c.re.denominator)) for c in reversed(coeffs)], _X, domain=QQ
                    )
                    if len(f.factor_list()[1]) >= 2:
                        return True
    return False


def real_form_invariants(A: GradedBasisAlgebra) -> RealFormInvariants:
    """Invariants of the real algebra of sigma-fixed points."""
    basis = _real_basis(A, range(A.dim))
    even_idx = [i for i in range(A.dim) if A.degrees[i] == 0]
    even_basis = _real_basis(A, even_idx)
    center = _real_center(A, basis, basis)
    even_center = _real_center(A, even_basis, even_basis)
    return RealFormInvariants(
        real_dim=len(basis),
        center_dim=len(center),
        center_kind=_center_kind(A, center, A.unit),
        signature=_trace_signature(A, basis, False),
        even_center_dim=len(even_center),
        even_center_kind=_center_kind(A, even_center, A.unit),
        even_signature=_trace_signature(A, even_basis, True),
        has_idempotent=_has_real_idempotent(A, basis, A.unit),
    )


def type_from_real_form(inv: RealFormInvariants):
    """z8 type read off from real-form invariants, or None if undecided.

    The integer signature pos - neg of the trace form is positive on real
    matrix algebras, negative on quaternionic ones and zero on complex ones.
    A complex center means a summand-swapping structure (types 3 and 7, told
    apart by the even part). A split center means a summand-preserving one
    (types 1 and 5). A real center is parity 0, where a complex center of the
    even part marks an odd implementing operator.
    """

    def sign(sig):
        d = sig[0] - sig[1]
        return (d > 0) - (d < 0)

    s, s0 = sign(inv.signature), sign(inv.even_signature)
    if inv.center_kind == "C":
        return {1: 7, -1: 3}.get(s0)
    if inv.center_kind == "RR":
        return {1: 1, -1: 5}.get(s)
    if inv.center_kind == "R":
        odd = inv.even_center_kind == "C"
        if s > 0:
            return 2 if odd else 0
        if s < 0:
            return 6 if odd else 4
    return None


def verify_table(pairs: Iterable[tuple[int, int]] | None = None) -> list[tuple]:
    """(p, q, classified type, expected z8) for Clifford models."""
    if pairs is None:
        pairs = [(p, q) for n in range(5) for p in range(n + 1) for q in [n - p]]
    out = []
    for p, q in pairs:
        t = classify_clifford(p, q)
        out.append((p, q, t, (q - p) % 8))
    return out


def verify_products(types: Iterable[int] = range(8)) -> list[tuple]:
    """(n1, n2, classify(tensor), type_add, (n1+n2) mod 8) for representative pairs."""
    reps = {n: representative(n) for n in types}
    out = []
    for n1 in reps:
        for n2 in reps:
            t = classify(graded_tensor(reps[n1], reps[n2]), check=False)
            out.append((n1, n2, t, type_add(BrauerType.from_z8(n1), BrauerType.from_z8(n2)), (n1 + n2) % 8))
    return out


# ---------------------------------------------------------------------------
# Graded anti-unitaries J = C o conj on C^(p|q)


def _kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def _adjoint(A):
    return [[A[j][i].conjugate() for j in range(len(A))] for i in range(len(A[0]))]


def _identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class GradedAntiUnitary:
    """Anti-unitary x -> C conj(x) on a graded space with diagonal grading ``S``."""

    S: tuple
    C: tuple

    def __post_init__(self):
        C = tuple(tuple(GaussianRational.coerce(x) for x in r) for r in self.C)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "S", tuple(int(s) for s in self.S))
        if _matmul(C, _adjoint(C)) != _identity(len(C)):
            raise ValueError("C is not unitary")
        if self.degree is None:
            raise ValueError("J is not homogeneous")

    @property
    def N(self) -> int:
        return len(self.S)

    @property
    def degree(self):
        degs = {0 if self.S[i] == self.S[j] else 1 for i in range(self.N) for j in range(self.N) if self.C[i][j]}
        return degs.pop() if len(degs) == 1 else None

    @property
    def square(self):
        """c with J^2 = c Id, or None when J^2 is not scalar."""
        sq = _matmul(self.C, _conj_mat(self.C))
        c = sq[0][0]
        return c if sq == [[c if i == j else ZERO for j in range(self.N)] for i in range(self.N)] else None

    def ad(self, T):
        """J T J^-1 as a matrix."""
        return _matmul(_matmul(self.C, _conj_mat(T)), _adjoint(self.C))

    def times_grading(self, k: int) -> "GradedAntiUnitary":
        """J g^k."""
        if k % 2 == 0:
            return self
        return GradedAntiUnitary(self.S, [[c * s for c, s in zip(row, self.S)] for row in self.C])


# the four even types realised on C^(p|q)
STANDARD_ANTIUNITARIES = {
    0: GradedAntiUnitary((1,), ((1,),)),
    4: GradedAntiUnitary((1, 1), ((0, -1), (1, 0))),
    2: GradedAntiUnitary((1, -1), ((0, 1), (1, 0))),
    6: GradedAntiUnitary((1, -1), ((0, 1), (-1, 0))),
}


def operator_algebra(J: GradedAntiUnitary) -> GradedBasisAlgebra:
    """M_N(C) on matrix units, graded by S, with sigma = Ad_J."""
    N = J.N
    idx = lambda i, j: i * N + j
    degrees = [0 if J.S[i] == J.S[j] else 1 for i in range(N) for j in range(N)]
    table = [
        [((idx(i, l), ONE),) if j == k else () for k in range(N) for l in range(N)]
        for i in range(N)
        for j in range(N)
    ]
    unit = {idx(i, i): ONE for i in range(N)}
    star = [{idx(j, i): ONE} for i in range(N) for j in range(N)]
    sigma = []
    for i in range(N):
        for j in range(N):
            E = [[ONE if (a, b) == (i, j) else ZERO for b in range(N)] for a in range(N)]
            img = J.ad(E)
            sigma.append({idx(a, b): img[a][b] for a in range(N) for b in range(N) if img[a][b]})
    labels = [f"E{i}{j}" for i in range(N) for j in range(N)]
    return GradedBasisAlgebra(degrees, table, unit, star, sigma, labels)


def _koszul_kron(T1, T2, deg2: int, S1):
    """Matrix of T1 (x) T2 acting by x1 (x) x2 -> (-1)^(|T2||x1|) T1 x1 (x) T2 x2."""
    n2 = len(T2)
    signs = [(-1) ** (deg2 * (s < 0)) for s in S1 for _ in range(n2)]
    K = _kron(T1, T2)
    return [[c * signs[j] for j, c in enumerate(row)] for row in K]


def product_operator(J1: GradedAntiUnitary, J2: GradedAntiUnitary, version: str = "proof") -> GradedAntiUnitary:
    """J1 g1^a (x) J2 g2^b on the graded tensor product.

    ``proof``: a = eps2, b = eps1. ``statement``: a = b = eps2.
    """
    e1, e2 = J1.degree, J2.degree
    a, b = (e2, e1) if version == "proof" else (e2, e2)
    K1, K2 = J1.times_grading(a), J2.times_grading(b)
    C = _koszul_kron(K1.C, K2.C, K2.degree, J1.S)
    S = tuple(s1 * s2 for s1 in J1.S for s2 in J2.S)
    return GradedAntiUnitary(S, C)


def verify_product_even(J1: GradedAntiUnitary, J2: GradedAntiUnitary, version: str = "proof") -> Verdict:
    """Ad_J agrees with Ad_J1 (x) Ad_J2 on matrix units, and J^2 has the predicted sign."""
    J = product_operator(J1, J2, version)
    N1, N2 = J1.N, J2.N

    def deg(S, i, j):
        return 0 if S[i] == S[j] else 1

    def unit(N, i, j):
        return [[ONE if (a, b) == (i, j) else ZERO for b in range(N)] for a in range(N)]

    for i1 in range(N1):
        for j1 in range(N1):
            T1 = unit(N1, i1, j1)
            for i2 in range(N2):
                for j2 in range(N2):
                    T2 = unit(N2, i2, j2)
                    d2 = deg(J2.S, i2, j2)
                    lhs = J.ad(_koszul_kron(T1, T2, d2, J1.S))
                    rhs = _koszul_kron(J1.ad(T1), J2.ad(T2), d2, J1.S)
                    if lhs != rhs:
                        return Verdict(False, "Ad_J differs from the tensor Real structure", ((i1, j1), (i2, j2)))
    e1, e2 = J1.degree, J2.degree
    expected = (-1) ** (e1 * e2) * (1 if J1.square == ONE else -1) * (1 if J2.square == ONE else -1)
    if J.square != GaussianRational.coerce(expected):
        return Verdict(False, "J^2 has the wrong sign", (J.square, expected))
    return Verdict(True)


def real_cl2_probe() -> dict:
    """Classify M_2(C) with even grading under the two candidate anti-unitaries.

    ``H``: (x, y) -> (conj y, -conj x). ``R``: (x, y) -> (conj y, conj x).
    Also reports the type of the Clifford algebra with two positive generators.
    """
    out = {name: classify(operator_algebra(STANDARD_ANTIUNITARIES[n])) for name, n in (("H", 6), ("R", 2))}
    out["cl_2_0"] = classify_clifford(2, 0)
    return out

__all__ = [
    "BrauerType",
    "TABLE_1",
    "REPRESENTATIVES",
    "type_add",
    "type_neg",
    "classify",
    "classify_clifford",
    "representative",
    "real_form_invariants",
    "RealFormInvariants",
    "type_from_real_form",
    "verify_table",
    "verify_products",
    "GradedAntiUnitary",
    "STANDARD_ANTIUNITARIES",
    "operator_algebra",
    "product_operator",
    "verify_product_even",
    "real_cl2_probe",
]
