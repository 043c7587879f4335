import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddg_forge.graphs import (
    BadPartition,
    CompleteGraph,
    EdgelessGraph,
    Graph,
    IntersectionArray,
    NotAGraph,
    NotAntipodal,
    NotAutomorphism,
    NotConnected,
    NotDistanceRegular,
    NotEquitable,
    NotInvolution,
    NotRegular,
    NotStronglyRegular,
    NotVklGraph,
    Partition,
    antipodal_classes,
    complement,
    complete_graph,
    cycle_graph,
    format_partition,
    graph_from_edges,
    hypercube_graph,
    involution_analyze,
    lattice_graph,
    lattice_involution,
    parse_partition,
    path_graph,
    petersen_graph,
    quotient_equitable,
    read_graph,
    read_partition,
    verify_distance_regular,
    verify_srg,
    verify_vkl,
    write_graph,
    write_partition,
)
from ddg_forge.matrix import IntMatrix

from oracles import intersection_array, srg_parameters


def random_graphs(max_n=9):
    return st.integers(2, max_n).flatmap(
        lambda n: st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
            lambda bits: _from_bits(n, bits)
        )
    )


def _from_bits(n, bits):
    a = np.zeros((n, n), dtype=np.int64)
    it = iter(bits)
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = a[j, i] = int(next(it))
    return Graph(a)


# -- Graph / Partition basics ---------------------------------------------------------------

def test_graph_validation():
    with pytest.raises(NotAGraph):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(NotAGraph):
        Graph([[1, 0], [0, 0]])
    with pytest.raises(NotAGraph):
        Graph([[0, 2], [2, 0]])
    with pytest.raises(NotAGraph):
        Graph([[0, 1, 0]])


def test_partition_validation():
    assert Partition([[0, 2], [1, 3]]).sizes() == [2, 2]
    with pytest.raises(BadPartition):
        Partition([[0, 1], [1, 2]])
    with pytest.raises(BadPartition):
        Partition([[0], []])
    with pytest.raises(BadPartition):
        Partition([[0, 2]])


def test_partition_text_round_trip(tmp_path):
    p = Partition([[3, 1], [0, 2]])
    assert format_partition(p) == "3 1\n0 2\n"
    assert parse_partition(format_partition(p)) == p
    write_partition(tmp_path / "p.txt", p)
    assert read_partition(tmp_path / "p.txt") == p


def test_graph_file_round_trip(tmp_path):
    g = petersen_graph()
    write_graph(tmp_path / "g.mat", g)
    assert read_graph(tmp_path / "g.mat") == g


# -- strong regularity ----------------------------------------------------------------------

def test_srg_examples():
    assert verify_srg(cycle_graph(5)) == (5, 2, 0, 1)
    assert tuple(verify_srg(lattice_graph(4))) == (16, 6, 2, 2)
    assert str(verify_srg(petersen_graph())) == "(10,3,0,1)"
    with pytest.raises(NotRegular):
        verify_srg(path_graph(3))
    with pytest.raises(NotStronglyRegular) as exc:
        verify_srg(cycle_graph(6))
    assert exc.value.witness is not None


def test_degenerate_graphs_are_reported_distinctly():
    with pytest.raises(CompleteGraph):
        verify_srg(complete_graph(4))
    with pytest.raises(EdgelessGraph):
        verify_srg(Graph(IntMatrix.zeros(4)))


def test_vkl_graphs():
    assert verify_vkl(lattice_graph(4)) == (16, 6, 2)
    assert verify_vkl(complete_graph(4)) == (4, 3, 2)
    with pytest.raises(NotVklGraph):
        verify_vkl(cycle_graph(5))


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_srg_agrees_with_pairwise_oracle(g):
    want = srg_parameters(g.adj)
    try:
        got = tuple(verify_srg(g))
    except (NotRegular, NotStronglyRegular):
        got = None
    if want is not None and (want[2] is None or want[3] is None):
        want = None  # complete or edgeless
    assert got == want


def test_srg_with_equal_lambda_mu_satisfies_matrix_identity():
    g = lattice_graph(4)
    _, k, lam, mu = verify_srg(g)
    assert lam == mu
    n = g.n
    J, I = IntMatrix.ones(n), IntMatrix.identity(n)
    assert g.adj @ g.adj == (k - lam) * I + lam * J


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lattice_graphs(n):
    g = lattice_graph(n)
    if n == 2:
        # C4 as (0,0)-(0,1)-(1,1)-(1,0)
        assert g == graph_from_edges(4, [(0, 1), (1, 3), (3, 2), (2, 0)])
    else:
        assert tuple(verify_srg(g)) == (n * n, 2 * (n - 1), n - 2, 2)


def test_lattice_vertex_order_is_row_major():
    g = lattice_graph(3)
    # vertex 0 = (0,0) is adjacent to (0,1), (0,2), (1,0), (2,0)
    assert g.neighbours(0) == [1, 2, 3, 6]


# -- complement -----------------------------------------------------------------------------

def test_complement_examples():
    assert complement(complete_graph(4)) == Graph(IntMatrix.zeros(4))
    assert verify_srg(complement(cycle_graph(5))) == (5, 2, 0, 1)


@given(random_graphs())
@settings(max_examples=40, deadline=None)
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g


@pytest.mark.parametrize("g", [petersen_graph(), lattice_graph(3), lattice_graph(5), cycle_graph(5)])
def test_complement_srg_formula(g):
    v, k, lam, mu = verify_srg(g)
    assert tuple(verify_srg(complement(g))) == (v, v - k - 1, v - 2 - 2 * k + mu, v - 2 * k + lam)


# -- equitable partitions -------------------------------------------------------------------

def test_quotient_examples():
    c4 = cycle_graph(4)
    assert quotient_equitable(c4, Partition([[0, 2], [1, 3]])).tolist() == [[0, 2], [2, 0]]
    assert quotient_equitable(c4, Partition([[0, 1], [2, 3]])).tolist() == [[1, 1], [1, 1]]
    with pytest.raises(NotEquitable) as exc:
        quotient_equitable(c4, Partition([[0], [1, 2, 3]]))
    assert exc.value.witness is not None
    with pytest.raises(NotEquitable):
        quotient_equitable(path_graph(4), Partition([[0, 1], [2, 3]]))


def test_quotient_row_sums_equal_valency():
    g = lattice_graph(4)
    p = involution_analyze(g, lattice_involution(4)).orbits
    q = quotient_equitable(g, p)
    assert set(q.row_sums()) == {6}


# -- distance regularity --------------------------------------------------------------------

def test_distance_regular_examples():
    assert str(verify_distance_regular(cycle_graph(6))) == "{2,1,1;1,1,2}"
    k4 = verify_distance_regular(complete_graph(4))
    assert (k4.b, k4.c, k4.d) == ((3,), (1,), 1)
    assert str(verify_distance_regular(hypercube_graph(3))) == "{3,2,1;1,2,3}"
    assert str(verify_distance_regular(petersen_graph())) == "{3,2;1,1}"


def test_distance_regular_failures():
    with pytest.raises(NotConnected):
        verify_distance_regular(graph_from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(NotRegular):
        verify_distance_regular(path_graph(4))
    # the 3-prism is regular and connected but not distance-regular
    prism = graph_from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    with pytest.raises(NotDistanceRegular) as exc:
        verify_distance_regular(prism)
    assert exc.value.witness is not None


@pytest.mark.parametrize(
    "g", [cycle_graph(7), cycle_graph(8), hypercube_graph(4), petersen_graph(), lattice_graph(3), complete_graph(5)]
)
def test_intersection_array_matches_bfs_oracle(g):
    arr = verify_distance_regular(g)
    assert (arr.b, arr.c) == intersection_array(g.adj)


@pytest.mark.parametrize("g", [cycle_graph(9), hypercube_graph(4), petersen_graph(), lattice_graph(4)])
def test_array_invariants(g):
    arr = verify_distance_regular(g)
    assert arr.b[0] == arr.valency
    assert arr.c[0] == 1
    k = arr.b[0]
    bs, cs = arr.b + (0,), (0,) + arr.c
    assert all(a + bs[j] + cs[j] == k for j, a in enumerate(arr.a))
    assert sum(arr.sphere_sizes()) == g.n


def test_intersection_array_string():
    assert str(IntersectionArray((9, 6, 1), (1, 2, 9))) == "{9,6,1;1,2,9}"


# -- antipodality ---------------------------------------------------------------------------

def test_antipodal_examples():
    c6 = antipodal_classes(cycle_graph(6))
    assert c6.as_sets() == {frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5})}
    cube = antipodal_classes(hypercube_graph(3))
    assert sorted(cube.sizes()) == [2, 2, 2, 2]
    with pytest.raises(NotAntipodal) as exc:
        antipodal_classes(petersen_graph())
    assert len(exc.value.witness) == 3


# -- involutions ----------------------------------------------------------------------------

def test_involution_examples():
    rep = involution_analyze(cycle_graph(4), [2, 3, 0, 1])
    assert rep.fixed_free and rep.nonedge_orbits == 2 and rep.edge_orbits == 0
    rep = involution_analyze(lattice_graph(4), lattice_involution(4))
    assert rep.fixed_free and rep.nonedge_orbits == 8 and rep.edge_orbits == 0
    assert set(rep.orbits.sizes()) == {2}


def test_involution_failures():
    with pytest.raises(NotInvolution):
        involution_analyze(cycle_graph(4), [1, 2, 3, 0])
    with pytest.raises(NotInvolution):
        involution_analyze(cycle_graph(4), [0, 0, 1, 2])
    with pytest.raises(NotAutomorphism) as exc:
        involution_analyze(path_graph(4), [1, 0, 2, 3])
    assert exc.value.witness is not None


def test_involution_fixed_points_reported():
    rep = involution_analyze(path_graph(3), [2, 1, 0])
    assert rep.fixed_points == (1,)
    assert not rep.fixed_free
    assert rep.nonedge_orbits == 1
