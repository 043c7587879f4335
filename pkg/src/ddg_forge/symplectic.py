"""Symplectic graphs Sp(2t, q), the GF(q^2) model of Sp(4, q), and Mathon graphs.

Vertex labellings are deterministic: orbit representatives are the minimum
of their orbit under the integer key ``code(z1) * order + code(z2)``, and
vertices are listed in increasing key order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ddg import (
    ALMOST_PROPER,
    ParameterMismatch,
    ThinDDG,
    decompose_to_rq,
    verify_ddg,
)
from .errors import InputError, VerificationError
from .field import (
    FieldCtx,
    QuadExt,
    gf_from_order,
    prime_power,
    quad_ext_build,
    quad_ext_isomorphism,
    subgroup_elements,
)
from .graphs import (
    Graph,
    IntersectionArray,
    Partition,
    antipodal_classes,
    complement,
    involution_analyze,
    verify_distance_regular,
    verify_srg,
)
from .matrix import IntMatrix

MAX_VERTICES = 1500


class TooLarge(InputError):
    pass


class EvenQ(InputError):
    pass


class BadParameters(InputError):
    pass


class SrgCheckFailed(VerificationError):
    pass


class SpreadCheckFailed(VerificationError):
    pass


class InvolutionCheckFailed(VerificationError):
    pass


class DRGCheckFailed(VerificationError):
    pass


class CorrespondenceFailed(VerificationError):
    pass


class CongruenceFailed(VerificationError):
    pass


class NotOrthogonalSigning(VerificationError):
    pass


def sp_parameters(t: int, q: int) -> tuple[int, int, int, int]:
    v = (q ** (2 * t) - 1) // (q - 1)
    k = q * (q ** (2 * t - 2) - 1) // (q - 1)
    lam = q * q * (q ** (2 * t - 4) - 1) // (q - 1) + q - 1
    mu = (q ** (2 * t - 2) - 1) // (q - 1)
    return v, k, lam, mu


def sp_complement_parameters(t: int, q: int) -> tuple[int, int, int]:
    return (q ** (2 * t) - 1) // (q - 1), q ** (2 * t - 1), (q - 1) * q ** (2 * t - 2)


def sp4_ddg_parameters(q: int) -> tuple[int, ...]:
    v = q**3 + q**2 + q + 1
    return (v, q**3, q * q * (q - 1), q * q * (q - 1), v // 2, 2)


# -- standard model ---------------------------------------------------------------------

def projective_points(F: FieldCtx, dim: int) -> np.ndarray:
    """Vectors whose first non-zero coordinate is 1, in lexicographic order."""
    pts = [v for v in product(range(F.order), repeat=dim) if any(v) and next(c for c in v if c) == 1]
    return np.array(pts, dtype=np.int64).reshape(-1, dim)


def sp_graph(t: int, q: int) -> Graph:
    """Sp(2t, q): projective points, [x] ~ [y] iff the standard alternating form vanishes."""
    if t < 2:
        raise InputError("t must be at least 2")
    F = gf_from_order(q)
    v = (q ** (2 * t) - 1) // (q - 1)
    if v > MAX_VERTICES:
        raise TooLarge(f"{v} vertices exceeds {MAX_VERTICES}")
    add, mul, neg = F.tables()
    X = projective_points(F, 2 * t)
    form = np.zeros((v, v), dtype=np.int64)
    for i in range(t):
        a, b = X[:, 2 * i], X[:, 2 * i + 1]
        term = add[mul[a[:, None], b[None, :]], neg[mul[b[:, None], a[None, :]]]]
        form = add[form, term]
    adj = (form == 0).astype(np.int64)
    np.fill_diagonal(adj, 0)
    g = Graph(adj)
    got = tuple(verify_srg(g))
    if got != sp_parameters(t, q):
        raise SrgCheckFailed(f"Sp({2 * t},{q}) has parameters {got}, expected {sp_parameters(t, q)}")
    return g


# -- orbit enumeration ----------------------------------------------------------------------

def _orbit_labels(order: int, mul: np.ndarray, scalars) -> tuple[np.ndarray, np.ndarray]:
    """Orbits of a scalar group acting on non-zero pairs in F^2.

    Returns (reps, orbit_of): reps is a (count, 2) array of minimal
    representatives in increasing key order, orbit_of maps every key to its
    orbit index (-1 for the zero vector).
    """
    scalars = np.asarray(list(scalars), dtype=np.int64)
    orbit_of = np.full(order * order, -1, dtype=np.int64)
    reps = []
    for key in range(1, order * order):
        if orbit_of[key] >= 0:
            continue
        z1, z2 = divmod(key, order)
        keys = mul[scalars, z1] * order + mul[scalars, z2]
        orbit_of[keys] = len(reps)
        reps.append((z1, z2))
    return np.array(reps, dtype=np.int64), orbit_of


@dataclass(frozen=True, eq=False)
class ExtModel:
    """Sp(4, q) on F_q^*-orbits of GF(q^2)^2 with its bookkeeping."""

    q: int
    ext: QuadExt
    graph: Graph
    labels: np.ndarray  # (v, 2) extension codes of the canonical representatives
    orbit_of: np.ndarray  # key -> vertex index
    det: np.ndarray  # det[x, y] = z1 z2' - z2 z1' (extension code)

    def vertex(self, z1: int, z2: int) -> int:
        return int(self.orbit_of[z1 * self.ext.order + z2])


def _odd_q(q: int):
    p, _ = prime_power(q)
    if p == 2:
        raise EvenQ(f"q = {q} is even; the GF(q^2) model needs odd q")


def sp4_extension_model(q: int) -> ExtModel:
    _odd_q(q)
    v = q**3 + q**2 + q + 1
    if v > MAX_VERTICES:
        raise TooLarge(f"{v} vertices exceeds {MAX_VERTICES}")
    ext = quad_ext_build(gf_from_order(q))
    add, mul, neg = ext.tables()
    reps, orbit_of = _orbit_labels(ext.order, mul, range(1, q))
    if len(reps) != v:
        raise SrgCheckFailed(f"{len(reps)} orbits, expected {v}")  # pragma: no cover
    z1, z2 = reps[:, 0], reps[:, 1]
    det = add[mul[z1[:, None], z2[None, :]], neg[mul[z2[:, None], z1[None, :]]]]
    adj = (det < q).astype(np.int64)  # codes below q are exactly F_q
    np.fill_diagonal(adj, 0)
    g = Graph(adj)
    got = tuple(verify_srg(g))
    if got != sp_parameters(2, q):
        raise SrgCheckFailed(f"extension model has parameters {got}, expected {sp_parameters(2, q)}")
    det.setflags(write=False)
    return ExtModel(q, ext, g, reps, orbit_of, det)


def _model(q_or_model) -> ExtModel:
    return q_or_model if isinstance(q_or_model, ExtModel) else sp4_extension_model(q_or_model)


def sp4_involution(q_or_model) -> list[int]:
    """The map (z1, z2) -> (i z1, i z2) as a permutation of vertex indices.

    It is checked to be a fixed-point-free involutive automorphism whose
    2-orbits are all edges.
    """
    model = _model(q_or_model)
    ext = model.ext
    _, mul, _ = ext.tables()
    i = ext.i
    reps = model.labels
    perm = [model.vertex(int(mul[i, z1]), int(mul[i, z2])) for z1, z2 in reps]
    report = involution_analyze(model.graph, perm)
    if not report.fixed_free:
        raise InvolutionCheckFailed("f has fixed points", witness=report.fixed_points[0])
    if report.nonedge_orbits:
        raise InvolutionCheckFailed(f"{report.nonedge_orbits} orbits are non-edges")
    return perm


def involution_partition(perm) -> Partition:
    return Partition([(x, int(y)) for x, y in enumerate(perm) if x < y])


def sp4_complement_ddg(q_or_model) -> ThinDDG:
    model = _model(q_or_model)
    q = model.q
    part = involution_partition(sp4_involution(model))
    g = complement(model.graph)
    params = verify_ddg(g, part)
    expected = sp4_ddg_parameters(q)
    if params.astuple() != expected or params.classification != ALMOST_PROPER:
        raise ParameterMismatch(f"complement DDG is {params} ({params.classification}), expected {expected} almost-proper")
    return ThinDDG(g, part, params)


@dataclass(frozen=True, eq=False)
class StarGraph:
    graph: Graph
    spread: Partition
    array: IntersectionArray


def sp4_star(q_or_model) -> StarGraph:
    """Delete the determinant-zero edges (a spread of q^2+1 cliques of size q+1)."""
    model = _model(q_or_model)
    q = model.q
    det = model.det
    zero = det == 0
    # the relation det == 0 (reflexive) must be an equivalence with the spread as classes
    rel = zero.astype(np.int64)
    bad = np.argwhere(((rel @ rel) > 0) & ~zero)
    if bad.size:
        raise SpreadCheckFailed("determinant-zero relation is not transitive", witness=tuple(int(x) for x in bad[0]))
    classes, seen = [], set()
    for x in range(len(det)):
        if x not in seen:
            cls = [int(y) for y in np.flatnonzero(zero[x])]
            seen.update(cls)
            classes.append(cls)
    sizes = {len(c) for c in classes}
    if sizes != {q + 1} or len(classes) != q * q + 1:
        raise SpreadCheckFailed(f"{len(classes)} classes of sizes {sorted(sizes)}, expected {q * q + 1} of size {q + 1}")
    spread = Partition(classes)
    adj = model.graph.a.copy()
    removed = adj & zero
    off_zero = zero.copy()
    np.fill_diagonal(off_zero, False)
    if not np.array_equal(removed.astype(bool), off_zero):
        raise SpreadCheckFailed("spread pairs are not all edges of Sp(4,q)")  # pragma: no cover
    adj[zero] = 0
    g = Graph(adj)
    k_sp = sp_parameters(2, q)[1]
    if any(d != k_sp - q for d in g.degrees()):
        raise SpreadCheckFailed(f"valency is not {k_sp} - {q}")
    arr = verify_distance_regular(g)
    if arr.d != 3:
        raise DRGCheckFailed(f"diameter {arr.d}, expected 3")
    anti = antipodal_classes(g, arr)
    if anti.as_sets() != spread.as_sets():
        raise DRGCheckFailed("antipodal classes differ from the spread")
    return StarGraph(g, spread, arr)


def mathon_shape_s(arr: IntersectionArray) -> int | None:
    """s with arr = {Q, Q-s-1, 1; 1, s, Q}, or None if arr has another shape."""
    if arr.d != 3:
        return None
    Q = arr.b[0]
    s = arr.c[1]
    if arr.b == (Q, Q - s - 1, 1) and arr.c == (1, s, Q):
        return s
    return None


# -- Mathon graphs ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MathonGraph:
    field: FieldCtx
    r: int
    b: int
    subgroup: tuple[int, ...]
    graph: Graph
    labels: np.ndarray
    orbit_of: np.ndarray
    array: IntersectionArray
    antipodal: Partition

    def vertex(self, x1: int, x2: int) -> int:
        return int(self.orbit_of[x1 * self.field.order + x2])


def mathon_graph(q_size: int, r: int, b: int = 1) -> MathonGraph:
    """Orbits Kx of the index-r subgroup K on GF(q)^2 \\ {0}; Kx ~ Ky iff x1 y2 - x2 y1 lies in bK."""
    F = gf_from_order(q_size)
    p, _ = prime_power(q_size)
    if r <= 1 or (q_size - 1) % r:
        raise BadParameters(f"r = {r} must exceed 1 and divide {q_size - 1}")
    m = (q_size - 1) // r
    if m % 2 and p != 2:
        raise BadParameters(f"m = {m} is odd and {q_size} is not a power of 2")
    if r * (q_size + 1) > MAX_VERTICES:
        raise BadParameters(f"{r * (q_size + 1)} vertices exceeds {MAX_VERTICES}")
    if not 0 < b < q_size:
        raise BadParameters("b must be a non-zero field element")
    add, mul, neg = F.tables()
    K = subgroup_elements(F, m)
    in_bK = np.zeros(q_size, dtype=bool)
    in_bK[mul[b, K]] = True
    reps, orbit_of = _orbit_labels(q_size, mul, K)
    x1, x2 = reps[:, 0], reps[:, 1]
    form = add[mul[x1[:, None], x2[None, :]], neg[mul[x2[:, None], x1[None, :]]]]
    adj = in_bK[form].astype(np.int64)
    np.fill_diagonal(adj, 0)
    g = Graph(adj)
    if g.n != r * (q_size + 1):
        raise DRGCheckFailed(f"{g.n} vertices, expected {r * (q_size + 1)}")  # pragma: no cover
    arr = verify_distance_regular(g)
    if arr.d != 3 or arr.valency != q_size:
        raise DRGCheckFailed(f"intersection array {arr}: expected diameter 3 and valency {q_size}")
    anti = antipodal_classes(g, arr)
    return MathonGraph(F, r, b, tuple(K), g, reps, orbit_of, arr, anti)


def mathon_quotient_check(q: int) -> dict:
    """Compare the quotient/partner pair of the complement DDG with M(q^2).

    The DDG class {v, iv} is matched with the Mathon vertex K'v, where K' is
    the subgroup of order 2(q-1) of GF(q^2)^*, transported through an explicit
    field isomorphism between the pair model and GF(q^2).
    """
    _odd_q(q)
    model = sp4_extension_model(q)
    ddg = sp4_complement_ddg(model)
    pair = decompose_to_rq(ddg)
    R, Q = pair.R.array, pair.Q.array
    mg = mathon_graph(q * q, (q + 1) // 2, 1)
    phi = quad_ext_isomorphism(model.ext, mg.field)

    ext = model.ext
    _, emul, _ = ext.tables()
    k_prime = set(range(1, q)) | {int(emul[ext.i, a]) for a in range(1, q)}
    if {int(phi[z]) for z in k_prime} != set(mg.subgroup):
        raise CorrespondenceFailed("F_q^* u iF_q^* does not map onto the subgroup of order 2(q-1)")

    m = len(ddg.partition)
    perm = np.empty(m, dtype=np.int64)
    for c, (x, y) in enumerate(ddg.partition.classes):
        targets = {mg.vertex(int(phi[z1]), int(phi[z2])) for z1, z2 in model.labels[[x, y]]}
        if len(targets) != 1:
            raise CorrespondenceFailed(f"class {c} splits across Mathon vertices {sorted(targets)}", witness=c)
        perm[c] = targets.pop()
    if sorted(perm.tolist()) != list(range(mg.graph.n)):
        raise CorrespondenceFailed("class -> Mathon vertex map is not a bijection")
    B = mg.graph.a[np.ix_(perm, perm)]

    for name, X, Y in (("B vs R", B, R), ("R vs Q", R, Q)):
        bad = np.argwhere((X - Y) % 2 != 0)
        if bad.size:
            raise CongruenceFailed(f"{name} differ mod 2", witness=tuple(int(t) for t in bad[0]))
    if np.any(np.diagonal(Q)):
        raise NotOrthogonalSigning("Q has a non-zero diagonal entry")
    Qm = IntMatrix(Q)
    if Qm @ Qm != (q * q) * IntMatrix.identity(m):
        raise NotOrthogonalSigning(f"Q^2 != {q * q} I")
    bad = np.argwhere(np.abs(Q) != B)
    if bad.size:
        raise NotOrthogonalSigning("|Q| differs from the Mathon adjacency", witness=tuple(int(t) for t in bad[0]))
    return {
        "q": q,
        "ddg_vertices": ddg.graph.n,
        "ddg_parameters": list(ddg.params.astuple()),
        "mathon_vertices": mg.graph.n,
        "mathon_r": mg.r,
        "mathon_intersection_array": str(mg.array),
        "checks": {
            "B = R = Q (mod 2)": True,
            "Q zero diagonal": True,
            f"Q^2 = {q * q} I": True,
            "|Q| = B": True,
        },
        "partner_weight": pair.w,
    }
