"""Weighing, Hadamard and conference matrices, RSHCDs and their graph bridges.

Every constructor re-verifies its output before returning it.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import InputError, VerificationError
from .field import gf_from_order
from .graphs import Graph, NotStronglyRegular, NotVklGraph, verify_srg, verify_vkl
from .matrix import IntMatrix, NotSquare, kronecker

MAX_SYLVESTER_ORDER = 1024


class BadEntries(InputError):
    pass


class NotWeighing(VerificationError):
    pass


class TooLarge(InputError):
    pass


class BadResidue(InputError):
    pass


class NotNormalized(InputError):
    pass


class NotSymmetric(VerificationError):
    pass


class VerifyFailed(VerificationError):
    pass


class NotHadamard(VerificationError):
    pass


class HadamardNotRegular(VerificationError):
    pass


class DiagonalNotConstant(VerificationError):
    pass


class NotConference(VerificationError):
    pass


class NotConferenceGraph(VerificationError):
    pass


class DesignCheckFailed(VerificationError):
    pass


@dataclass(frozen=True, eq=False)
class WeighingMatrix:
    m: IntMatrix
    n: int
    w: int


@dataclass(frozen=True, eq=False)
class RSHCD:
    h: IntMatrix
    n: int
    a: int
    e: int

    @property
    def eps(self) -> int:
        return 1 if self.a * self.e > 0 else -1

    @property
    def u(self) -> int:
        return abs(self.a) // 2


@dataclass(frozen=True, eq=False)
class ConferenceMatrix:
    c: IntMatrix
    n: int
    symmetric: bool
    normalized: bool

    @property
    def core(self) -> IntMatrix:
        if not self.normalized:
            raise NotNormalized("core is defined for normalised conference matrices")
        return self.c.submatrix(range(1, self.n), range(1, self.n))


def _check_square(m: IntMatrix):
    if not m.is_square:
        raise NotSquare(f"shape {m.shape}")


def _first_mismatch(actual: np.ndarray, expected: np.ndarray):
    bad = np.argwhere(actual != expected)
    if bad.size:
        return tuple(int(x) for x in bad[0])
    return None


def verify_weighing(m: IntMatrix) -> WeighingMatrix:
    """Check m m^T = w I with entries in {-1, 0, 1}; w is read off the diagonal."""
    _check_square(m)
    a = m.array
    bad = np.argwhere((a != 0) & (a != 1) & (a != -1))
    if bad.size:
        raise BadEntries("entries must lie in {-1,0,1}", witness=tuple(int(x) for x in bad[0]))
    n = m.rows
    gram = (m @ m.T).array
    w = int(gram[0, 0]) if n else 0
    where = _first_mismatch(gram, w * np.eye(n, dtype=np.int64))
    if where is not None:
        i, j = where
        raise NotWeighing(f"rows {i},{j}: inner product {int(gram[i, j])}, expected {w if i == j else 0}", witness=where)
    return WeighingMatrix(m, n, w)


def hadamard_sylvester(k: int) -> IntMatrix:
    if k < 0:
        raise InputError("exponent must be non-negative")
    if 2**k > MAX_SYLVESTER_ORDER:
        raise TooLarge(f"order 2^{k} exceeds {MAX_SYLVESTER_ORDER}")
    base = IntMatrix([[1, 1], [1, -1]])
    h = IntMatrix([[1]])
    for _ in range(k):
        h = kronecker(h, base)
    wm = verify_weighing(h)
    if wm.w != wm.n:
        raise VerifyFailed("Sylvester product is not Hadamard")  # pragma: no cover
    return h


def verify_conference(m: IntMatrix) -> ConferenceMatrix:
    """Zero diagonal and C C^T = (n-1) I."""
    _check_square(m)
    n = m.rows
    diag = m.diagonal()
    nz = [i for i, x in enumerate(diag) if x]
    if nz:
        raise NotConference("non-zero diagonal entry", witness=nz[0])
    try:
        wm = verify_weighing(m)
    except NotWeighing as exc:
        raise NotConference(str(exc), witness=exc.witness) from None
    if wm.w != n - 1:
        raise NotConference(f"weight {wm.w}, expected {n - 1}")
    a = m.array
    normalized = n > 0 and bool(np.all(a[0, 1:] == 1) and np.all(a[1:, 0] == 1))
    return ConferenceMatrix(m, n, m.is_symmetric(), normalized)


def conference_paley(q: int) -> ConferenceMatrix:
    """Symmetric normalised conference matrix of order q+1 from quadratic residues of GF(q).

    Row/column 0 is the point at infinity, then field elements in code order.
    """
    F = gf_from_order(q)
    if q % 4 != 1:
        raise BadResidue(f"q = {q} is not 1 mod 4")
    add, mul, neg = F.tables()
    squares = np.zeros(q, dtype=bool)
    squares[np.diag(mul)] = True
    chi = np.where(squares, 1, -1)
    chi[0] = 0
    diff = add[:, neg]  # diff[x, y] = x - y
    c = np.ones((q + 1, q + 1), dtype=np.int64)
    c[0, 0] = 0
    c[1:, 1:] = chi[diff]
    conf = verify_conference(IntMatrix(c))
    if not (conf.symmetric and conf.normalized):
        raise VerifyFailed("Paley matrix is not symmetric and normalised")  # pragma: no cover
    return conf


def _border(core: IntMatrix) -> IntMatrix:
    v = core.rows
    return IntMatrix.block(
        [[IntMatrix.zeros(1), IntMatrix.ones(1, v)], [IntMatrix.ones(v, 1), core]]
    )


def conference_square(c: ConferenceMatrix) -> ConferenceMatrix:
    """Border S(x)S + I(x)J - J(x)I, S the core of order v; the result has order v^2 + 1."""
    if not c.symmetric:
        raise NotSymmetric("input conference matrix must be symmetric")
    if not c.normalized:
        raise NotNormalized("input conference matrix must be normalised")
    s = c.core
    v = s.rows
    I, J = IntMatrix.identity(v), IntMatrix.ones(v)
    new_core = kronecker(s, s) + kronecker(I, J) - kronecker(J, I)
    try:
        out = verify_conference(_border(new_core))
    except VerificationError as exc:
        raise VerifyFailed(f"squared matrix failed verification: {exc}") from None
    if out.c @ out.c.T != (v * v) * IntMatrix.identity(v * v + 1):
        raise VerifyFailed("C C^T != v^2 I")  # pragma: no cover
    return out


# -- regular symmetric Hadamard matrices with constant diagonal -------------------------

def verify_rshcd(m: IntMatrix) -> RSHCD:
    _check_square(m)
    a = m.array
    bad = np.argwhere((a != 1) & (a != -1))
    if bad.size:
        raise BadEntries("entries must be +-1", witness=tuple(int(x) for x in bad[0]))
    where = _first_mismatch(a, a.T)
    if where is not None:
        raise NotSymmetric("matrix is not symmetric", witness=where)
    try:
        wm = verify_weighing(m)
    except NotWeighing as exc:
        raise NotHadamard(str(exc), witness=exc.witness) from None
    if wm.w != wm.n:
        raise NotHadamard(f"weight {wm.w} != order {wm.n}")  # pragma: no cover
    sums = m.row_sums()
    for i, s in enumerate(sums):
        if s != sums[0]:
            raise HadamardNotRegular(f"row {i} sums to {s}, row 0 to {sums[0]}", witness=(0, i))
    diag = m.diagonal()
    for i, x in enumerate(diag):
        if x != diag[0]:
            raise DiagonalNotConstant(f"diagonal entry {i} is {x}, entry 0 is {diag[0]}", witness=i)
    return RSHCD(m, m.rows, sums[0], diag[0])


# order 4, positive type, +1 diagonal
_RSHCD4_POSITIVE = IntMatrix([[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]])


def rshcd_base(eps: int, diag: int) -> RSHCD:
    """Order-4 RSHCD of the requested type and constant diagonal."""
    if eps not in (1, -1) or diag not in (1, -1):
        raise InputError("eps and diag must be +1 or -1")
    if eps == 1:
        h = _RSHCD4_POSITIVE
    else:
        h = IntMatrix.ones(4) - 2 * IntMatrix.identity(4)
    base_diag = h[0, 0]
    if diag != base_diag:
        h = -h
    out = verify_rshcd(h)
    assert out.eps == eps and out.e == diag
    return out


def rshcd_kronecker(h1: RSHCD, h2: RSHCD) -> RSHCD:
    try:
        out = verify_rshcd(kronecker(h1.h, h2.h))
    except VerificationError as exc:
        raise VerifyFailed(f"Kronecker product failed: {exc}") from None
    if out.eps != h1.eps * h2.eps:
        raise VerifyFailed("type of product is not the product of types")  # pragma: no cover
    return out


def rshcd_of_order(n: int, eps: int, diag: int) -> RSHCD:
    """RSHCD of order n = 4^j built as a Kronecker power of order-4 bases."""
    j, m = 0, n
    while m > 1 and m % 4 == 0:
        m //= 4
        j += 1
    if m != 1 or j == 0:
        raise InputError(f"order {n} is not a positive power of 4")
    h = rshcd_base(eps, diag)
    for _ in range(j - 1):
        h = rshcd_kronecker(rshcd_base(1, 1), h)
    return h


def rshcd_to_graph(h: RSHCD) -> Graph:
    """A = (J - eH)/2, a (4u^2, 2u^2 - eps*u, u^2 - eps*u)-graph."""
    n = h.n
    A = (IntMatrix.ones(n) - h.e * h.h).half()
    g = Graph(A)
    u, eps = h.u, h.eps
    expected = (4 * u * u, 2 * u * u - eps * u, u * u - eps * u)
    got = verify_vkl(g)
    if got != expected:
        raise VerifyFailed(f"graph parameters {got}, expected {expected}")
    return g


def graph_to_rshcd(g: Graph, e: int) -> RSHCD:
    """H = e(J - 2A) for a (4u^2, 2u^2 - eps*u, u^2 - eps*u)-graph."""
    if e not in (1, -1):
        raise InputError("e must be +1 or -1")
    v, k, lam = verify_vkl(g)
    u2 = v // 4
    u = isqrt(u2)
    if v % 4 or u * u != u2 or u == 0:
        raise NotVklGraph(f"v = {v} is not 4u^2")
    eps = {2 * u2 - u: 1, 2 * u2 + u: -1}.get(k)
    if eps is None or lam != u2 - eps * u:
        raise NotVklGraph(f"({v},{k},{lam}) is not a (4u^2, 2u^2 -+ u, u^2 -+ u) graph")
    out = verify_rshcd(e * (IntMatrix.ones(v) - 2 * g.adj))
    if out.e != e or out.eps != eps:
        raise VerifyFailed("recovered RSHCD has the wrong diagonal or type")  # pragma: no cover
    return out


def rshcd_graph_convert(obj, e: int | None = None):
    """Graph from an RSHCD, or (given a graph and a diagonal sign) the RSHCD back."""
    if isinstance(obj, RSHCD):
        return rshcd_to_graph(obj)
    if e is None:
        raise InputError("diagonal sign e required for the graph -> RSHCD direction")
    return graph_to_rshcd(obj, e)


def menon_check(h: RSHCD) -> tuple[int, int, int]:
    """Check N = (J+H)/2 is a square (4u^2, 2u^2 + du, u^2 + du) design, d = sign(a)."""
    if h.n <= 1:
        raise InputError("Menon designs need order > 1")
    n = h.n
    u = h.u
    d = 1 if h.a > 0 else -1
    v, k, lam = 4 * u * u, 2 * u * u + d * u, u * u + d * u
    N = (IntMatrix.ones(n) + h.h).half()
    gram = N @ N.T
    expected = (k - lam) * IntMatrix.identity(n) + lam * IntMatrix.ones(n)
    where = _first_mismatch(gram.array, expected.array)
    if v != n or where is not None:
        raise DesignCheckFailed(f"N N^T is not ({k - lam})I + {lam}J", witness=where)
    sums = N.row_sums()
    if any(s != k for s in sums):
        raise DesignCheckFailed("block size is not constant")  # pragma: no cover
    return v, k, lam


# -- conference graphs ------------------------------------------------------------------

def graph_to_conference(g: Graph) -> ConferenceMatrix:
    """Border the Seidel matrix J - I - 2A of an SRG(4t+1, 2t, t-1, t)."""
    try:
        v, k, lam, mu = verify_srg(g)
    except NotStronglyRegular as exc:
        raise NotConferenceGraph(f"not strongly regular: {exc}") from None
    t = (v - 1) // 4
    if (v, k, lam, mu) != (4 * t + 1, 2 * t, t - 1, t):
        raise NotConferenceGraph(f"parameters ({v},{k},{lam},{mu}) are not (4t+1,2t,t-1,t)")
    seidel = IntMatrix.ones(v) - IntMatrix.identity(v) - 2 * g.adj
    out = verify_conference(_border(seidel))
    if not (out.symmetric and out.normalized):
        raise VerifyFailed("bordered Seidel matrix is not symmetric normalised")  # pragma: no cover
    return out


def conference_to_graph(c: ConferenceMatrix | IntMatrix) -> Graph:
    """Strip the border of a symmetric normalised conference matrix, A = (J - I - S)/2."""
    if isinstance(c, IntMatrix):
        c = verify_conference(c)
    if not c.symmetric:
        raise NotConference("conference matrix is not symmetric")
    if not c.normalized:
        raise NotConference("conference matrix is not normalised")
    s = c.core
    v = s.rows
    g = Graph((IntMatrix.ones(v) - IntMatrix.identity(v) - s).half())
    params = verify_srg(g)
    t = (v - 1) // 4
    if tuple(params) != (4 * t + 1, 2 * t, t - 1, t):
        raise VerifyFailed(f"recovered graph has parameters {params}")  # pragma: no cover
    return g


def conference_graph_bridge(direction: str, obj):
    if direction == "to-conference":
        return graph_to_conference(obj)
    if direction == "to-graph":
        return conference_to_graph(obj)
    raise InputError(f"unknown direction {direction!r}")


def two_squares_check(v: int) -> bool:
    """True iff v = a^2 + b^2 with integers a, b >= 0."""
    if v < 0:
        return False
    for a in range(isqrt(v) + 1):
        r = v - a * a
        if isqrt(r) ** 2 == r:
            return True
    return False
