"""Thin divisible design graphs and their (R, Q) matrix pairs.

A thin DDG on 2m vertices with canonical classes {i, i+m} has adjacency matrix

    A = 1/2 [[R + Q, R - Q],
             [R - Q, R + Q]]

where R is the quotient matrix of the class partition and Q its partner
weighing matrix.  This module assembles A from (R, Q), takes it apart again,
verifies DDG parameters by brute force and builds the construction families
(complete multipartite / bipartite signings, pair of cliques, PS22) together
with the two RSHCD recursions they induce.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .designs import (
    RSHCD,
    ConferenceMatrix,
    NotWeighing,
    conference_paley,
    hadamard_sylvester,
    rshcd_of_order,
    verify_conference,
    verify_rshcd,
    verify_weighing,
)
from .errors import InputError, VerificationError
from .graphs import Graph, NotEquitable, Partition, check_regular, quotient_equitable
from .matrix import IntMatrix, char_poly, detect_alpha_beta, kronecker, mod2_congruent, poly_mul

PROPER = "proper"
ALMOST_PROPER = "almost-proper"
IMPROPER = "improper"


class NotDDG(VerificationError):
    pass


class UnequalClasses(InputError):
    pass


class VerifyFailed(VerificationError):
    pass


class ParameterMismatch(VerificationError):
    pass


class BadBlockForm(VerificationError):
    pass


class PartnerNotWeighing(VerificationError):
    pass


# validate_rq_pair: one subclass per hypothesis
class ValidationFailed(VerificationError):
    pass


class QNotSymmetric(ValidationFailed):
    pass


class QNotWeighing(ValidationFailed):
    pass


class QDiagonalHasOne(ValidationFailed):
    pass


class RNotSymmetric(ValidationFailed):
    pass


class RBadEntries(ValidationFailed):
    pass


class DiagonalHasTwo(ValidationFailed):
    pass


class NotCongruentMod2(ValidationFailed):
    pass


class RSquareNotAlphaBeta(ValidationFailed):
    pass


class BetaOdd(ValidationFailed):
    pass


class NotPerfectSquare(ValidationFailed):
    pass


# construction input errors
class BadDiagonal(InputError):
    pass


class TypeMismatch(InputError):
    pass


class AlphaBetaFailed(VerificationError):
    pass


class BadConferenceOrder(InputError):
    pass


class NotSymmetric(InputError):
    pass


class DiagonalViolation(InputError):
    pass


class InputConstraintViolated(InputError):
    pass


@dataclass(frozen=True)
class DDGParameters:
    v: int
    k: int
    lambda1: int
    lambda2: int
    m: int
    n: int
    classification: str = IMPROPER

    def astuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.v, self.k, self.lambda1, self.lambda2, self.m, self.n)

    @property
    def proper(self) -> bool:
        return self.classification == PROPER

    @property
    def thin(self) -> bool:
        return self.n == 2

    def as_json(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "m": self.m,
            "n": self.n,
            "classification": self.classification,
        }

    def __str__(self):
        return "(" + ",".join(map(str, self.astuple())) + ")"


@dataclass(frozen=True, eq=False)
class RQPair:
    R: IntMatrix
    Q: IntMatrix
    alpha: int
    beta: int
    w: int

    @property
    def m(self) -> int:
        return self.R.rows


@dataclass(frozen=True, eq=False)
class ThinDDG:
    graph: Graph
    partition: Partition
    params: DDGParameters

    @property
    def classification(self) -> str:
        return self.params.classification


def verify_ddg(g: Graph, p: Partition) -> DDGParameters:
    """Brute-force DDG parameters of (g, p) and their proper/almost-proper classification."""
    if p.n != g.n:
        raise UnequalClasses(f"partition covers {p.n} vertices, graph has {g.n}")
    sizes = set(p.sizes())
    if len(sizes) != 1:
        raise UnequalClasses(f"class sizes {sorted(sizes)}")
    n = sizes.pop()
    m = len(p)
    k = check_regular(g)
    lab = p.class_of()
    a2 = (g.adj @ g.adj).array
    same = lab[:, None] == lab[None, :]
    np.fill_diagonal(same, False)
    cross = lab[:, None] != lab[None, :]

    def constant(mask, name):
        idx = np.argwhere(mask)
        if idx.size == 0:
            return None
        first = a2[tuple(idx[0])]
        bad = np.argwhere(mask & (a2 != first))
        if bad.size:
            x, y = (int(t) for t in bad[0])
            raise NotDDG(f"{name}: pair ({x},{y}) has {int(a2[x, y])} common neighbours, expected {int(first)}", witness=(x, y))
        return int(first)

    lam1 = constant(same, "lambda1")
    lam2 = constant(cross, "lambda2")
    # a single class size or a single class leaves one parameter vacuous
    if lam1 is None:
        lam1 = lam2
    if lam2 is None:
        lam2 = lam1
    if lam1 != lam2 and m > 1 and n > 1:
        cls = PROPER
    elif m > 1 and n > 1:
        try:
            quotient_equitable(g, p)
            cls = ALMOST_PROPER
        except NotEquitable:
            cls = IMPROPER
    else:
        cls = IMPROPER
    return DDGParameters(g.n, k, lam1, lam2, m, n, cls)


def canonical_layout(g: Graph, p: Partition) -> tuple[Graph, Partition, list[int]]:
    """Relabel a thin DDG so class i becomes {i, i+m}; returns the vertex order used."""
    if set(p.sizes()) != {2}:
        raise UnequalClasses("canonical layout needs classes of size 2")
    order = [c[0] for c in p.classes] + [c[1] for c in p.classes]
    m = len(p)
    return Graph(g.adj.permute(order)), Partition([(i, i + m) for i in range(m)]), order


# -- (R, Q) validation ------------------------------------------------------------------

def _witness(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(int(x) for x in idx[0]) if idx.size else None


def _check_alpha_beta(R: IntMatrix) -> tuple[int, int]:
    R2 = R @ R
    ab = detect_alpha_beta(R2)
    if ab is None:
        a = R2.array
        off = a[~np.eye(R.rows, dtype=bool)]
        where = _witness(a != a[0, 1]) if R.rows > 1 else None
        raise RSquareNotAlphaBeta(f"R^2 is not alpha*I + beta*J (off-diagonal values {sorted(set(off.tolist()))})", witness=where)
    alpha, beta = ab
    if beta % 2:
        raise BetaOdd(f"beta = {beta} is odd")
    return alpha, beta


def validate_rq_pair(R: IntMatrix, Q: IntMatrix) -> RQPair:
    """Check every hypothesis of the (R, Q) characterisation of thin DDGs."""
    if not Q.is_square or not R.is_square or R.shape != Q.shape:
        raise ValidationFailed(f"R {R.shape} and Q {Q.shape} must be square of equal order")
    m = R.rows
    where = _witness(Q.array != Q.array.T)
    if where:
        raise QNotSymmetric("Q is not symmetric", witness=where)
    try:
        w = verify_weighing(Q).w
    except (NotWeighing, InputError) as exc:
        raise QNotWeighing(f"Q is not a weighing matrix: {exc}", witness=exc.witness) from None
    ones = [i for i, x in enumerate(Q.diagonal()) if x == 1]
    if ones:
        raise QDiagonalHasOne("Q has a diagonal entry 1", witness=ones[0])
    where = _witness(R.array != R.array.T)
    if where:
        raise RNotSymmetric("R is not symmetric", witness=where)
    where = _witness((R.array < 0) | (R.array > 2))
    if where:
        raise RBadEntries("R must be a (0,1,2)-matrix", witness=where)
    twos = [i for i, x in enumerate(R.diagonal()) if x == 2]
    if twos:
        raise DiagonalHasTwo("R has a diagonal entry 2", witness=twos[0])
    if not mod2_congruent(R, Q):
        raise NotCongruentMod2("R and Q differ mod 2", witness=_witness((R.array - Q.array) % 2 != 0))
    alpha, beta = _check_alpha_beta(R)
    k2 = alpha + m * beta
    if k2 < 0 or isqrt(k2) ** 2 != k2:
        raise NotPerfectSquare(f"alpha + m*beta = {k2} is not a perfect square")
    return RQPair(R, Q, alpha, beta, w)


def assemble_from_rq(pair: RQPair) -> ThinDDG:
    pair = validate_rq_pair(pair.R, pair.Q)
    R, Q, m = pair.R, pair.Q, pair.m
    A = IntMatrix.block([[R + Q, R - Q], [R - Q, R + Q]]).half()
    g = Graph(A)
    p = Partition([(i, i + m) for i in range(m)])
    k = isqrt(pair.alpha + m * pair.beta)
    expected = (2 * m, k, k - pair.w, pair.beta // 2, m, 2)
    got = verify_ddg(g, p)
    if got.astuple() != expected:
        raise VerifyFailed(f"assembled graph has parameters {got}, expected {expected}")
    if got.classification == IMPROPER and m > 1:
        raise VerifyFailed("assembled partition is not equitable")  # pragma: no cover
    return ThinDDG(g, p, got)


def thin_ddg(g: Graph, p: Partition) -> ThinDDG:
    """Wrap a graph and partition after verifying DDG parameters and thinness."""
    params = verify_ddg(g, p)
    if params.n != 2:
        raise UnequalClasses(f"class size {params.n}, thin DDGs have classes of size 2")
    return ThinDDG(g, p, params)


def decompose_to_rq(d: ThinDDG) -> RQPair:
    """Quotient R = a + b and partner Q = a - b of the 2x2 blocks [[a, b], [b, a]]."""
    g, _, _ = canonical_layout(d.graph, d.partition)
    m = g.n // 2
    a = g.a
    X, Y = a[:m, :m], a[:m, m:]
    for blk, ref, name in ((a[m:, m:], X, "lower-right"), (a[m:, :m], Y, "lower-left")):
        where = _witness(blk != ref)
        if where:
            i, j = where
            raise BadBlockForm(
                f"block ({i},{j}) between classes {d.partition.classes[i]} and "
                f"{d.partition.classes[j]} is not of the form [[a,b],[b,a]] ({name} differs)",
                witness=(i, j),
            )
    R = IntMatrix(X + Y)
    Q = IntMatrix(X - Y)
    k, lam1 = d.params.k, d.params.lambda1
    where = _witness((Q @ Q).array != (k - lam1) * np.eye(m, dtype=np.int64))
    if where:
        raise PartnerNotWeighing(f"Q^2 != {k - lam1} I", witness=where)
    alpha, beta = _check_alpha_beta(R)
    return RQPair(R, Q, alpha, beta, k - lam1)


def spectrum_factorization_check(d: ThinDDG) -> bool:
    """charpoly(A) == charpoly(R) * charpoly(Q) as integer polynomials."""
    pair = decompose_to_rq(d)
    g, _, _ = canonical_layout(d.graph, d.partition)
    return char_poly(g.adj) == poly_mul(char_poly(pair.R), char_poly(pair.Q))


# -- matrices R ---------------------------------------------------------------------------

def _order_to_u(n: int) -> int:
    u = isqrt(n // 4)
    if n % 4 or 4 * u * u != n:
        raise InputError(f"order {n} is not of the form 4u^2")
    return u


def _as_rshcd(h) -> RSHCD:
    return h if isinstance(h, RSHCD) else verify_rshcd(IntMatrix(h))


def _require_alpha_beta(R: IntMatrix, alpha: int, beta: int):
    got = detect_alpha_beta(R @ R)
    if got != (alpha, beta):
        raise AlphaBetaFailed(f"R^2 gives (alpha, beta) = {got}, expected {(alpha, beta)}")


def build_R_multipartite(hs) -> tuple[IntMatrix, int, int]:
    """Complete t-partite adjacency with diagonal blocks replaced by H_i + J."""
    hs = [_as_rshcd(h) for h in hs]
    t = len(hs)
    if t < 2:
        raise InputError("need at least two RSHCDs")
    n = hs[0].n
    eps = hs[0].eps
    for i, h in enumerate(hs):
        if h.n != n:
            raise InputError(f"RSHCD {i} has order {h.n}, expected {n}")
        if h.eps != eps:
            raise TypeMismatch(f"RSHCD {i} has type {h.eps}, expected {eps}")
        if h.e != -1:
            raise BadDiagonal(f"RSHCD {i} has diagonal {h.e}, expected -1")
    u = _order_to_u(n)
    J = IntMatrix.ones(n)
    R = IntMatrix.block([[hs[i].h + J if i == j else J for j in range(t)] for i in range(t)])
    alpha, beta = 4 * u * u, 4 * t * u * u - 4 * eps * u
    _require_alpha_beta(R, alpha, beta)
    return R, alpha, beta


def _regular_hadamard(h: IntMatrix) -> tuple[int, int]:
    """Return (u, delta) for a regular Hadamard matrix with row sum 2*delta*u."""
    wm = verify_weighing(h)
    if wm.w != wm.n:
        raise InputConstraintViolated("H is not a Hadamard matrix")
    sums = h.row_sums()
    if len(set(sums)) != 1:
        raise InputConstraintViolated("H is not regular", witness=sums.index(next(s for s in sums if s != sums[0])))
    u = _order_to_u(h.rows)
    if abs(sums[0]) != 2 * u:
        raise InputConstraintViolated(f"row sum {sums[0]} is not +-2u")  # pragma: no cover
    return u, 1 if sums[0] > 0 else -1


def build_R_bipartite_menon(h: IntMatrix) -> tuple[IntMatrix, int, int]:
    """[[J, J + H], [(J + H)^T, J]] for a regular Hadamard H with row sum 2*delta*u."""
    u, delta = _regular_hadamard(h)
    J = IntMatrix.ones(h.rows)
    R = IntMatrix.block([[J, J + h], [(J + h).T, J]])
    alpha, beta = 4 * u * u, 8 * u * u + 4 * delta * u
    _require_alpha_beta(R, alpha, beta)
    return R, alpha, beta


def _check_zero_blocks(Q: IntMatrix, size: int):
    a = Q.array
    for s in range(0, Q.rows, size):
        blk = a[s : s + size, s : s + size]
        if np.any(blk):
            raise DiagonalViolation(f"diagonal block at {s} is not zero", witness=s)


def build_R_ps22(Q: IntMatrix, variant: str) -> tuple[IntMatrix, int, int]:
    """|Q| + 2 I_t (x) (J4 - I4)  (variant 'a') or |Q| + 2 I_2t (x) (J2 - I2)  (variant 'b')."""
    if not Q.is_symmetric():
        raise NotSymmetric("Q must be symmetric")
    wm = verify_weighing(Q)
    if wm.n % 4:
        raise InputError(f"order {wm.n} is not 4t")
    t = wm.n // 4
    if wm.w != 4 * (t - 1):
        raise InputError(f"weight {wm.w}, expected 4(t-1) = {4 * (t - 1)}")
    _check_zero_blocks(Q, 4)
    if variant == "a":
        blocks, size = t, 4
    elif variant == "b":
        blocks, size = 2 * t, 2
    else:
        raise InputError(f"unknown PS22 variant {variant!r}")
    R = Q.abs() + 2 * kronecker(IntMatrix.identity(blocks), IntMatrix.ones(size) - IntMatrix.identity(size))
    ab = detect_alpha_beta(R @ R)
    if ab is None:
        raise AlphaBetaFailed("R^2 is not of the form alpha*I + beta*J")
    return R, ab[0], ab[1]


def build_R(variant: str, *args, **kwargs) -> tuple[IntMatrix, int, int]:
    if variant == "multipartite":
        return build_R_multipartite(*args, **kwargs)
    if variant == "bipartite-menon":
        return build_R_bipartite_menon(*args, **kwargs)
    if variant in ("ps22-a", "ps22-b"):
        return build_R_ps22(*args, variant=variant[-1], **kwargs)
    raise InputError(f"unknown R variant {variant!r}")


# -- partner weighing matrices Q ------------------------------------------------------------

def _symmetric_hadamard(h: IntMatrix) -> int:
    if not h.is_symmetric():
        raise NotSymmetric("Hadamard matrix must be symmetric")
    wm = verify_weighing(h)
    if wm.w != wm.n:
        raise InputError("not a Hadamard matrix")
    return wm.n


def build_Q_kronecker(c, h: IntMatrix) -> IntMatrix:
    """C (x) H: symmetric weighing matrix of order yt and weight y(t-1) with t zero blocks."""
    conf = c if isinstance(c, ConferenceMatrix) else verify_conference(IntMatrix(c))
    if not conf.symmetric:
        raise NotSymmetric("conference matrix must be symmetric")
    t = conf.n
    if t % 4 != 2:
        raise BadConferenceOrder(f"conference order {t} is not 2 mod 4")
    y = _symmetric_hadamard(h)
    Q = kronecker(conf.c, h)
    wm = verify_weighing(Q)
    if not Q.is_symmetric() or wm.w != y * (t - 1):
        raise VerifyFailed("Kronecker product is not a symmetric W(yt, y(t-1))")  # pragma: no cover
    _check_zero_blocks(Q, y)
    return Q


def build_Q_bipartite(h: IntMatrix) -> IntMatrix:
    """[[O, H], [H^T, O]], an orthogonal signing of K_{y,y}."""
    wm = verify_weighing(h)
    if wm.w != wm.n:
        raise InputError("not a Hadamard matrix")
    y = wm.n
    O = IntMatrix.zeros(y)
    Q = IntMatrix.block([[O, h], [h.T, O]])
    if verify_weighing(Q).w != y or not Q.is_symmetric():
        raise VerifyFailed("bipartite signing is not a symmetric W(2y, y)")  # pragma: no cover
    if any(Q.diagonal()):
        raise DiagonalViolation("diagonal is not zero")  # pragma: no cover
    return Q


def build_Q_block_diagonal(h1: IntMatrix, h2: IntMatrix) -> IntMatrix:
    """diag(H1, H2) for symmetric Hadamard H1, H2 with all diagonal entries -1."""
    for i, h in enumerate((h1, h2), start=1):
        _symmetric_hadamard(h)
        if any(x != -1 for x in h.diagonal()):
            raise DiagonalViolation(f"H{i} must have -1 on the diagonal")
    if h1.rows != h2.rows:
        raise InputError("H1 and H2 must have equal order")
    O = IntMatrix.zeros(h1.rows)
    Q = IntMatrix.block([[h1, O], [O, h2]])
    if verify_weighing(Q).w != h1.rows:
        raise VerifyFailed("block-diagonal matrix is not a weighing matrix")  # pragma: no cover
    return Q


def build_Q(variant: str, *args, **kwargs) -> IntMatrix:
    if variant == "kronecker":
        return build_Q_kronecker(*args, **kwargs)
    if variant == "bipartite":
        return build_Q_bipartite(*args, **kwargs)
    if variant == "block-diagonal":
        return build_Q_block_diagonal(*args, **kwargs)
    raise InputError(f"unknown Q variant {variant!r}")


# -- families ---------------------------------------------------------------------------------

def symmetric_conference(t: int) -> ConferenceMatrix:
    """Symmetric normalised conference matrix of order t (t = 2, or t - 1 a prime power = 1 mod 4)."""
    if t == 2:
        return verify_conference(IntMatrix([[0, 1], [1, 0]]))
    if t % 4 != 2:
        raise BadConferenceOrder(f"order {t} is not 2 mod 4")
    return conference_paley(t - 1)


def sylvester_of_order(n: int) -> IntMatrix:
    k = n.bit_length() - 1
    if n < 1 or 1 << k != n:
        raise InputError(f"no Sylvester Hadamard matrix of order {n}")
    return hadamard_sylvester(k)


def _block4(rows) -> IntMatrix:
    return IntMatrix.block(rows)


def bipartite_display(h1: IntMatrix, h2: IntMatrix, h: IntMatrix) -> IntMatrix:
    """The 4x4-block adjacency matrix printed for the complete-bipartite family."""
    J = IntMatrix.ones(h.rows)
    return _block4(
        [
            [J + h1, J - h, J + h1, J + h],
            [(J - h).T, J + h2, (J + h).T, J + h2],
            [J + h1, J + h, J + h1, J - h],
            [(J + h).T, J + h2, (J - h).T, J + h2],
        ]
    ).half()


def pair_of_cliques_display(h1: IntMatrix, h2: IntMatrix, h: IntMatrix) -> IntMatrix:
    J = IntMatrix.ones(h.rows)
    return _block4(
        [
            [J + h1, J + h, J - h1, J + h],
            [(J + h).T, J + h2, (J + h).T, J - h2],
            [J - h1, J + h, J + h1, J + h],
            [(J + h).T, J - h2, (J + h).T, J + h2],
        ]
    ).half()


def family_parameters(family: str, **p) -> tuple[int, ...]:
    """Closed-form DDG parameters claimed for each construction family."""
    if family == "multipartite":
        t, u, e = p["t"], p["u"], p["eps"]
        return (8 * t * u * u, 4 * t * u * u - 2 * e * u, 4 * u * u - 2 * e * u, 2 * t * u * u - 2 * e * u, 4 * t * u * u, 2)
    if family == "bipartite":
        u, e = p["u"], p["eps"]
        lam = 4 * u * u - 2 * e * u
        return (16 * u * u, 8 * u * u - 2 * e * u, lam, lam, 8 * u * u, 2)
    if family == "pair-of-cliques":
        u, d = p["u"], p["delta"]
        lam = 4 * u * u + 2 * d * u
        return (16 * u * u, 8 * u * u + 2 * d * u, lam, lam, 8 * u * u, 2)
    if family == "ps22-a":
        t = p["t"]
        return (8 * t, 4 * t + 2, 6, 2 * t + 2, 4 * t, 2)
    if family == "ps22-b":
        t = p["t"]
        return (8 * t, 4 * t - 2, 2, 2 * t - 2, 4 * t, 2)
    raise InputError(f"unknown family {family!r}")


def family_rq(family: str, **p) -> tuple[IntMatrix, IntMatrix]:
    """The (R, Q) inputs each family feeds to the assembly."""
    if family == "multipartite":
        t, u, eps = p["t"], p["u"], p["eps"]
        if t < 3:
            raise InputError("the multipartite family needs t >= 3")
        n = 4 * u * u
        hs = p.get("hs") or [rshcd_of_order(n, eps, -1)] * t
        R, _, _ = build_R_multipartite(hs)
        Q = build_Q_kronecker(p.get("conference") or symmetric_conference(t), p.get("h") or sylvester_of_order(n))
        return R, Q
    if family == "bipartite":
        u, eps = p["u"], p["eps"]
        n = 4 * u * u
        h1 = p.get("h1") or rshcd_of_order(n, eps, -1)
        h2 = p.get("h2") or h1
        R, _, _ = build_R_multipartite([h1, h2])
        Q = build_Q_bipartite(p.get("h") or sylvester_of_order(n))
        return R, Q
    if family == "pair-of-cliques":
        u, delta = p["u"], p["delta"]
        n = 4 * u * u
        h = p.get("h") or rshcd_of_order(n, -delta, -1).h
        R, _, _ = build_R_bipartite_menon(h)
        if _regular_hadamard(h)[1] != delta:
            raise InputConstraintViolated("row sum of H does not match delta")
        h1 = p.get("h1") or h
        h2 = p.get("h2") or h1
        return R, build_Q_block_diagonal(h1, h2)
    if family in ("ps22-a", "ps22-b"):
        t = p["t"]
        Q = p.get("q_matrix") or build_Q_kronecker(symmetric_conference(t), sylvester_of_order(4))
        R, _, _ = build_R_ps22(Q, family[-1])
        return R, Q
    raise InputError(f"unknown family {family!r}")


def construct_ddg_family(family: str, **p) -> ThinDDG:
    """Build a family member, assemble it and insist on the closed-form parameters.

    Families: ``multipartite`` (t, u, eps), ``bipartite`` (u, eps),
    ``pair-of-cliques`` (u, delta), ``ps22-a`` / ``ps22-b`` (t).  Optional
    keyword overrides supply explicit input matrices.
    """
    R, Q = family_rq(family, **p)
    pair = validate_rq_pair(R, Q)
    d = assemble_from_rq(pair)
    expected = family_parameters(family, **p)
    if d.params.astuple() != expected:
        raise ParameterMismatch(f"{family}: got {d.params}, formula gives {expected}")
    if family == "multipartite" and d.params.lambda1 == d.params.lambda2:
        raise ParameterMismatch("multipartite family with t >= 3 must be proper")
    if family in ("bipartite", "pair-of-cliques"):
        if d.classification != ALMOST_PROPER:
            raise ParameterMismatch(f"{family} output is {d.classification}, expected almost-proper")
        n = R.rows // 2
        blocks = lambda M, i, j: M.submatrix(range(i * n, (i + 1) * n), range(j * n, (j + 1) * n))
        if family == "bipartite":
            h1, h2, h = blocks(R, 0, 0) - IntMatrix.ones(n), blocks(R, 1, 1) - IntMatrix.ones(n), blocks(Q, 0, 1)
            # printed display uses the opposite sign for H relative to Q
            display = bipartite_display(h1, h2, -h)
        else:
            h = blocks(R, 0, 1) - IntMatrix.ones(n)
            display = pair_of_cliques_display(blocks(Q, 0, 0), blocks(Q, 1, 1), h)
        if d.graph.adj != display:
            raise ParameterMismatch(f"{family}: adjacency differs from the block display")
    return d


# -- RSHCD recursions --------------------------------------------------------------------------

def rshcd_recursion_a(h1, h2, h: IntMatrix) -> RSHCD:
    """Order-16u^2 RSHCD of type eps from two type-eps RSHCDs with -1 diagonal and any Hadamard H."""
    h1, h2 = _as_rshcd(h1), _as_rshcd(h2)
    n = h1.n
    if h2.n != n or h.rows != n:
        raise InputConstraintViolated("inputs must share the order 4u^2")
    _order_to_u(n)
    if h1.eps != h2.eps:
        raise InputConstraintViolated("H1 and H2 must have the same type")
    if h1.e != -1 or h2.e != -1:
        raise InputConstraintViolated("H1 and H2 must have -1 on the diagonal")
    wm = verify_weighing(h)
    if wm.w != n:
        raise InputConstraintViolated("H is not a Hadamard matrix")
    H1, H2, Ht = h1.h, h2.h, h.T
    big = _block4(
        [
            [H1, -h, H1, h],
            [-Ht, H2, Ht, H2],
            [H1, h, H1, -h],
            [Ht, H2, -Ht, H2],
        ]
    )
    try:
        out = verify_rshcd(big)
    except VerificationError as exc:
        raise VerifyFailed(f"recursion A output is not an RSHCD: {exc}") from None
    if out.eps != h1.eps:
        raise VerifyFailed(f"type {out.eps}, expected {h1.eps}")
    return out


def rshcd_recursion_b(h: IntMatrix, h1: IntMatrix, h2: IntMatrix) -> RSHCD:
    """Order-16u^2 RSHCD of type -delta from a regular Hadamard H (row sum 2*delta*u)."""
    _, delta = _regular_hadamard(h)
    for i, x in enumerate((h1, h2), start=1):
        if x.rows != h.rows:
            raise InputConstraintViolated(f"H{i} has the wrong order")
        try:
            _symmetric_hadamard(x)
        except InputError as exc:
            raise InputConstraintViolated(f"H{i}: {exc}") from None
        if any(e != -1 for e in x.diagonal()):
            raise InputConstraintViolated(f"H{i} must have -1 on the diagonal")
    Ht = h.T
    big = _block4(
        [
            [h1, h, -h1, h],
            [Ht, h2, Ht, -h2],
            [-h1, h, h1, h],
            [Ht, -h2, Ht, h2],
        ]
    )
    try:
        out = verify_rshcd(big)
    except VerificationError as exc:
        raise VerifyFailed(f"recursion B output is not an RSHCD: {exc}") from None
    if out.eps != -delta:
        raise VerifyFailed(f"type {out.eps}, expected {-delta}")
    return out


def rshcd_recursion(variant: str, *args) -> RSHCD:
    if variant == "A":
        return rshcd_recursion_a(*args)
    if variant == "B":
        return rshcd_recursion_b(*args)
    raise InputError(f"unknown recursion variant {variant!r}")
