"""Brute-force verification of graph properties and a few named graphs.

Every check is exhaustive over vertex pairs (or triples) and reports the first
violation it finds as a witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError, VerificationError
from .matrix import IntMatrix, format_matrix, parse_matrix


class NotAGraph(InputError):
    pass


class BadPartition(InputError):
    pass


class NotRegular(VerificationError):
    pass


class NotStronglyRegular(VerificationError):
    pass


class NotVklGraph(NotStronglyRegular):
    pass


class DegenerateGraph(NotStronglyRegular):
    """Complete or edgeless: one of the SRG parameters is vacuous."""


class CompleteGraph(DegenerateGraph):
    pass


class EdgelessGraph(DegenerateGraph):
    pass


class NotEquitable(VerificationError):
    pass


class NotConnected(VerificationError):
    pass


class NotDistanceRegular(VerificationError):
    pass


class NotAntipodal(VerificationError):
    pass


class NotInvolution(VerificationError):
    pass


class NotAutomorphism(VerificationError):
    pass


class Graph:
    """Simple undirected graph given by a symmetric 0/1 zero-diagonal matrix."""

    __slots__ = ("adj",)

    def __init__(self, adj):
        adj = IntMatrix(adj)
        a = adj.array
        if not adj.is_square:
            raise NotAGraph(f"adjacency matrix has shape {adj.shape}")
        bad = np.argwhere((a != 0) & (a != 1))
        if bad.size:
            raise NotAGraph("entries must be 0/1", witness=tuple(int(x) for x in bad[0]))
        if np.any(np.diagonal(a)):
            raise NotAGraph("loop", witness=int(np.flatnonzero(np.diagonal(a))[0]))
        asym = np.argwhere(a != a.T)
        if asym.size:
            raise NotAGraph("not symmetric", witness=tuple(int(x) for x in asym[0]))
        self.adj = adj

    @property
    def n(self) -> int:
        return self.adj.rows

    @property
    def a(self) -> np.ndarray:
        return self.adj.array

    def degrees(self) -> list[int]:
        return self.adj.row_sums()

    def neighbours(self, x: int) -> list[int]:
        return [int(y) for y in np.flatnonzero(self.a[x])]

    def edge_count(self) -> int:
        return int(self.a.sum()) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def graph_from_edges(n: int, edges) -> Graph:
    a = np.zeros((n, n), dtype=np.int64)
    for x, y in edges:
        a[x, y] = a[y, x] = 1
    return Graph(a)


class Partition:
    """Ordered sequence of disjoint vertex classes covering 0..n-1."""

    __slots__ = ("classes",)

    def __init__(self, classes, n: int | None = None):
        self.classes = tuple(tuple(int(x) for x in c) for c in classes)
        seen = [x for c in self.classes for x in c]
        total = len(seen) if n is None else n
        if any(len(c) == 0 for c in self.classes):
            raise BadPartition("empty class")
        if sorted(seen) != list(range(total)):
            raise BadPartition(f"classes do not partition 0..{total - 1}")

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=np.int64)
        for i, c in enumerate(self.classes):
            lab[list(c)] = i
        return lab

    def as_sets(self) -> set[frozenset]:
        return {frozenset(c) for c in self.classes}

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classes == other.classes

    __hash__ = None

    def __repr__(self):
        return f"Partition({[list(c) for c in self.classes]})"


def format_partition(p: Partition) -> str:
    return "".join(" ".join(str(x) for x in c) + "\n" for c in p.classes)


def parse_partition(text: str) -> Partition:
    classes = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    return Partition(classes)


def read_graph(path) -> Graph:
    return Graph(parse_matrix(Path(path).read_text()))


def write_graph(path, g: Graph, comments=()) -> None:
    Path(path).write_text(format_matrix(g.adj, comments))


def read_partition(path) -> Partition:
    return parse_partition(Path(path).read_text())


def write_partition(path, p: Partition) -> None:
    Path(path).write_text(format_partition(p))


# -- regularity and strong regularity ---------------------------------------------

class SRGParameters(NamedTuple):
    v: int
    k: int
    lam: int
    mu: int

    def __str__(self):
        return f"({self.v},{self.k},{self.lam},{self.mu})"


def check_regular(g: Graph) -> int:
    deg = g.degrees()
    if not deg:
        raise NotRegular("graph has no vertices")
    for x, d in enumerate(deg):
        if d != deg[0]:
            raise NotRegular(f"degree {d} != {deg[0]}", witness=(0, x))
    return deg[0]


def _constant_on(values: np.ndarray, mask: np.ndarray, what: str, exc):
    idx = np.argwhere(mask)
    if idx.size == 0:
        return None
    first = values[tuple(idx[0])]
    bad = np.argwhere(mask & (values != first))
    if bad.size:
        x, y = (int(t) for t in bad[0])
        raise exc(
            f"{what}: pair ({x},{y}) has {int(values[x, y])}, expected {int(first)}",
            witness=(x, y),
        )
    return int(first)


def _common_neighbour_counts(g: Graph):
    k = check_regular(g)
    a = g.a
    a2 = (g.adj @ g.adj).array
    off = ~np.eye(g.n, dtype=bool)
    lam = _constant_on(a2, (a == 1), "adjacent common neighbours", NotStronglyRegular)
    mu = _constant_on(a2, (a == 0) & off, "non-adjacent common neighbours", NotStronglyRegular)
    return k, lam, mu


def verify_srg(g: Graph) -> SRGParameters:
    """Return (v, k, lambda, mu); complete and edgeless graphs are rejected."""
    if g.n == 0:
        raise NotStronglyRegular("empty graph")
    k, lam, mu = _common_neighbour_counts(g)
    if mu is None:
        raise CompleteGraph(f"K_{g.n}: mu is vacuous")
    if lam is None:
        raise EdgelessGraph(f"edgeless graph on {g.n} vertices: lambda is vacuous")
    return SRGParameters(g.n, k, lam, mu)


def verify_vkl(g: Graph) -> tuple[int, int, int]:
    """Return (v, k, lambda) for a graph in which every pair has lambda common neighbours.

    Complete graphs count (K_v is a (v, v-1, v-2)-graph).
    """
    if g.n < 2:
        raise NotVklGraph("need at least two vertices")
    k, lam, mu = _common_neighbour_counts(g)
    if lam is None:
        raise NotVklGraph("edgeless graph")
    if mu is not None and mu != lam:
        raise NotVklGraph(f"lambda={lam} but mu={mu}")
    return g.n, k, lam


# -- equitable partitions -----------------------------------------------------------

def quotient_equitable(g: Graph, p: Partition) -> IntMatrix:
    """Quotient matrix of an equitable partition (row i: neighbours of a class-i vertex per class)."""
    if p.n != g.n:
        raise BadPartition(f"partition covers {p.n} vertices, graph has {g.n}")
    lab = p.class_of()
    m = len(p)
    ind = np.zeros((g.n, m), dtype=np.int64)
    ind[np.arange(g.n), lab] = 1
    counts = g.a @ ind
    R = np.zeros((m, m), dtype=np.int64)
    for i, cls in enumerate(p.classes):
        rows = counts[list(cls)]
        bad = np.argwhere(rows != rows[0])
        if bad.size:
            r, j = (int(t) for t in bad[0])
            raise NotEquitable(
                f"vertex {cls[r]} has {int(rows[r, j])} neighbours in class {j}, "
                f"vertex {cls[0]} has {int(rows[0, j])}",
                witness=(cls[r], j),
            )
        R[i] = rows[0]
    return IntMatrix(R)


# -- distance-regularity ------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.c)

    @property
    def valency(self) -> int:
        return self.b[0]

    @property
    def a(self) -> tuple[int, ...]:
        k = self.b[0]
        bs = self.b + (0,)
        cs = (0,) + self.c
        return tuple(k - bs[j] - cs[j] for j in range(self.d + 1))

    def sphere_sizes(self) -> list[int]:
        sizes = [1]
        for j in range(self.d):
            sizes.append(sizes[-1] * self.b[j] // self.c[j])
        return sizes

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    dist = shortest_path(csr_matrix(g.a), method="D", unweighted=True, directed=False)
    out = np.where(np.isinf(dist), -1, dist).astype(np.int64)
    return out


def verify_distance_regular(g: Graph) -> IntersectionArray:
    k = check_regular(g)
    dist = distance_matrix(g)
    if np.any(dist < 0):
        x, y = (int(t) for t in np.argwhere(dist < 0)[0])
        raise NotConnected(f"no path between {x} and {y}", witness=(x, y))
    d = int(dist.max())
    a = g.a
    spheres = [(dist == j).astype(np.int64) for j in range(d + 2)]
    b, c = [], []
    for j in range(d + 1):
        mask = spheres[j] == 1
        # entry [x, y] = number of neighbours of y at distance l from x
        if j < d:
            b.append(_constant_on(spheres[j + 1] @ a, mask, f"b_{j}", NotDistanceRegular))
        if j > 0:
            c.append(_constant_on(spheres[j - 1] @ a, mask, f"c_{j}", NotDistanceRegular))
    arr = IntersectionArray(tuple(b), tuple(c))
    if b and b[0] != k:
        raise NotDistanceRegular("b_0 differs from the valency")  # pragma: no cover
    return arr


def antipodal_classes(g: Graph, arr: IntersectionArray | None = None) -> Partition:
    """Classes of the relation 'equal or at distance d'."""
    if arr is None:
        arr = verify_distance_regular(g)
    dist = distance_matrix(g)
    rel = ((dist == 0) | (dist == arr.d)).astype(np.int64)
    two_step = rel @ rel
    bad = np.argwhere((two_step > 0) & (rel == 0))
    if bad.size:
        x, z = (int(t) for t in bad[0])
        y = int(np.flatnonzero(rel[x] & rel[:, z])[0])
        raise NotAntipodal(
            f"{x}~{y} and {y}~{z} under the antipodal relation but d({x},{z})={dist[x, z]}",
            witness=(x, y, z),
        )
    classes, seen = [], set()
    for x in range(g.n):
        if x not in seen:
            cls = [int(y) for y in np.flatnonzero(rel[x])]
            seen.update(cls)
            classes.append(cls)
    return Partition(classes)


# -- involutions --------------------------------------------------------------------

@dataclass(frozen=True)
class InvolutionReport:
    fixed_points: tuple[int, ...]
    edge_orbits: int
    nonedge_orbits: int
    orbits: Partition

    @property
    def fixed_free(self) -> bool:
        return not self.fixed_points


def involution_analyze(g: Graph, perm) -> InvolutionReport:
    perm = np.asarray(list(perm), dtype=np.int64)
    n = g.n
    if perm.shape != (n,) or sorted(perm.tolist()) != list(range(n)):
        raise NotInvolution("not a permutation of the vertex set")
    back = np.flatnonzero(perm[perm] != np.arange(n))
    if back.size:
        x = int(back[0])
        raise NotInvolution(f"pi(pi({x})) = {int(perm[perm[x]])}", witness=x)
    a = g.a
    moved = a[np.ix_(perm, perm)]
    bad = np.argwhere(moved != a)
    if bad.size:
        x, y = (int(t) for t in bad[0])
        raise NotAutomorphism(f"adjacency of ({x},{y}) not preserved", witness=(x, y))
    fixed = tuple(int(x) for x in np.flatnonzero(perm == np.arange(n)))
    orbits, edges, nonedges = [], 0, 0
    for x in range(n):
        y = int(perm[x])
        if x == y:
            orbits.append((x,))
        elif x < y:
            orbits.append((x, y))
            if a[x, y]:
                edges += 1
            else:
                nonedges += 1
    return InvolutionReport(fixed, edges, nonedges, Partition(orbits))


# -- constructions ------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    n = g.n
    return Graph(IntMatrix.ones(n) - IntMatrix.identity(n) - g.adj)


def lattice_graph(n: int) -> Graph:
    """Rook's graph on [n]^2: (i, j) ~ (i', j') iff exactly one coordinate agrees.  Row-major."""
    if n < 2:
        raise InputError("lattice graph needs side >= 2")
    cells = [(i, j) for i in range(n) for j in range(n)]
    edges = [
        (x, y)
        for (x, (i, j)), (y, (k, l)) in combinations(enumerate(cells), 2)
        if (i == k) != (j == l)
    ]
    return graph_from_edges(n * n, edges)


def lattice_involution(n: int) -> list[int]:
    """(i, j) -> (s(i), s(j)) with s swapping 2r and 2r+1; n must be even."""
    if n % 2:
        raise InputError("coordinate involution needs an even side")
    s = [x ^ 1 for x in range(n)]
    return [s[i] * n + s[j] for i in range(n) for j in range(n)]


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(x, (x + 1) % n) for x in range(n)])


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(x, x + 1) for x in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, combinations(range(n), 2))


def hypercube_graph(d: int) -> Graph:
    n = 1 << d
    return graph_from_edges(n, [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, outer + spokes + inner)
