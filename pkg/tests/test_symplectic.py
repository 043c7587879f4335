import numpy as np
import pytest

from ddg_forge.ddg import ALMOST_PROPER, decompose_to_rq, spectrum_factorization_check
from ddg_forge.designs import verify_weighing
from ddg_forge.graphs import (
    antipodal_classes,
    complement,
    involution_analyze,
    verify_srg,
)
from ddg_forge.symplectic import (
    BadParameters,
    EvenQ,
    TooLarge,
    mathon_graph,
    mathon_quotient_check,
    mathon_shape_s,
    sp4_complement_ddg,
    sp4_extension_model,
    sp4_involution,
    sp4_star,
    sp_graph,
    sp_parameters,
)

from oracles import ddg_parameters, intersection_array, srg_parameters


@pytest.fixture(scope="module")
def model3():
    return sp4_extension_model(3)


@pytest.fixture(scope="module")
def model5():
    return sp4_extension_model(5)


# -- standard model -------------------------------------------------------------------------

@pytest.mark.parametrize("t,q,want", [(2, 2, (15, 6, 1, 3)), (2, 3, (40, 12, 2, 4)), (3, 2, (63, 30, 13, 15))])
def test_sp_graph_parameters(t, q, want):
    g = sp_graph(t, q)
    assert tuple(verify_srg(g)) == want
    assert sp_parameters(t, q) == want


def test_sp_graph_against_pair_counting_oracle():
    assert srg_parameters(sp_graph(2, 2).adj) == (15, 6, 1, 3)


def test_sp_graph_size_cap():
    with pytest.raises(TooLarge):
        sp_graph(3, 5)


def test_sp_complement():
    g = complement(sp_graph(2, 3))
    v, k, lam, mu = verify_srg(g)
    assert (v, k, lam) == (40, 27, 18)
    assert lam == mu


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_lambda_is_mu_minus_two_and_mu_is_k_over_q(q):
    _, k, lam, mu = sp_parameters(2, q)
    assert mu * q == k and lam == mu - 2


# -- extension model ------------------------------------------------------------------------

def test_extension_model_q3(model3):
    assert model3.graph.n == 40
    assert tuple(verify_srg(model3.graph)) == (40, 12, 2, 4)
    assert srg_parameters(model3.graph.adj) == (40, 12, 2, 4)


def test_extension_model_q5(model5):
    assert tuple(verify_srg(model5.graph)) == (156, 30, 4, 6)


def test_extension_model_rejects_even_q():
    with pytest.raises(EvenQ):
        sp4_extension_model(4)


def test_extension_vertices_are_orbit_invariant(model3):
    ext = model3.ext
    _, mul, _ = ext.tables()
    for z1, z2 in model3.labels:
        for a in range(1, 3):
            assert model3.vertex(int(mul[a, z1]), int(mul[a, z2])) == model3.vertex(int(z1), int(z2))


# -- involution and complement DDG ----------------------------------------------------------

@pytest.mark.parametrize("fixture,orbits", [("model3", 20), ("model5", 78)])
def test_involution_orbits_are_edges(request, fixture, orbits):
    model = request.getfixturevalue(fixture)
    perm = sp4_involution(model)
    rep = involution_analyze(model.graph, perm)
    assert rep.fixed_free
    assert rep.edge_orbits == orbits and rep.nonedge_orbits == 0
    assert all(perm[perm[x]] == x for x in range(len(perm)))


def test_complement_ddg_q3(model3):
    d = sp4_complement_ddg(model3)
    assert d.params.astuple() == (40, 27, 18, 18, 20, 2)
    assert d.classification == ALMOST_PROPER
    assert ddg_parameters(d.graph.adj, d.partition.classes) == (40, 27, 18, 18, 20, 2)
    rq = decompose_to_rq(d)
    wm = verify_weighing(rq.Q)
    assert (wm.n, wm.w) == (20, 9)
    assert rq.Q.is_symmetric() and not any(rq.Q.diagonal())


def test_complement_ddg_q5(model5):
    d = sp4_complement_ddg(model5)
    assert d.params.astuple() == (156, 125, 100, 100, 78, 2)
    assert d.classification == ALMOST_PROPER


def test_complement_ddg_spectrum(model3):
    assert spectrum_factorization_check(sp4_complement_ddg(model3))


# -- spread deletion ------------------------------------------------------------------------

def test_star_q3(model3):
    star = sp4_star(model3)
    assert star.graph.n == 40
    assert set(star.graph.degrees()) == {9}
    assert sorted(star.spread.sizes()) == [4] * 10
    assert str(star.array) == "{9,6,1;1,2,9}"
    assert intersection_array(star.graph.adj) == ((9, 6, 1), (1, 2, 9))
    assert antipodal_classes(star.graph).as_sets() == star.spread.as_sets()
    # valency drops by exactly q
    assert [a - b for a, b in zip(model3.graph.degrees(), star.graph.degrees())] == [3] * 40


def test_star_q5(model5):
    star = sp4_star(model5)
    assert star.graph.n == 156
    assert set(antipodal_classes(star.graph).sizes()) == {6}
    assert set(star.graph.degrees()) == {30 - 5}


def test_star_removes_only_spread_edges(model3):
    star = sp4_star(model3)
    removed = model3.graph.a - star.graph.a
    assert removed.min() == 0
    lab = star.spread.class_of()
    same = lab[:, None] == lab[None, :]
    np.fill_diagonal(same, False)
    assert np.array_equal(removed.astype(bool), same)


# -- Mathon graphs --------------------------------------------------------------------------

def test_mathon_m9_r4_matches_sp43_star(model3):
    mg = mathon_graph(9, 4)
    assert mg.graph.n == 40 and mg.array.valency == 9
    assert mg.array == sp4_star(model3).array


def test_mathon_m9_r2():
    mg = mathon_graph(9, 2)
    assert mg.graph.n == 20
    assert str(mg.array) == "{9,4,1;1,4,9}"
    assert set(mg.antipodal.sizes()) == {2}
    assert intersection_array(mg.graph.adj) == ((9, 4, 1), (1, 4, 9))


@pytest.mark.parametrize("q,r", [(7, 3), (8, 7), (4, 3), (9, 4), (13, 3), (5, 2)])
def test_mathon_counts_and_observed_s(q, r):
    mg = mathon_graph(q, r)
    assert mg.graph.n == r * (q + 1)
    assert mg.array.valency == q
    assert set(mg.antipodal.sizes()) == {r}
    # the second-column parameter is read off the computed array, never assumed
    assert mathon_shape_s(mg.array) == mg.array.c[1]


def test_mathon_rejections():
    with pytest.raises(BadParameters):
        mathon_graph(7, 2)  # m = 3 odd, 7 not a power of 2
    with pytest.raises(BadParameters):
        mathon_graph(7, 1)
    with pytest.raises(BadParameters):
        mathon_graph(7, 4)
    with pytest.raises(BadParameters):
        mathon_graph(9, 2, b=0)


def test_mathon_other_b():
    mg = mathon_graph(9, 2, b=2)
    assert mg.graph.n == 20 and mg.array.d == 3


# -- quotient check -------------------------------------------------------------------------

def test_quotient_check_q3():
    rep = mathon_quotient_check(3)
    assert rep["mathon_vertices"] == 20 and rep["partner_weight"] == 9
    assert all(rep["checks"].values())


def test_quotient_check_q5():
    rep = mathon_quotient_check(5)
    assert rep["mathon_vertices"] == 78 and rep["partner_weight"] == 25
    assert rep["ddg_parameters"] == [156, 125, 100, 100, 78, 2]


def test_quotient_check_rejects_even_q():
    with pytest.raises(EvenQ):
        mathon_quotient_check(4)
