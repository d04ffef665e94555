"""Closed-form blocks, dispatch, and Kirchhoff formulas against the oracle."""

import random

import numpy as np
import numpy.testing as npt
import pytest

from coronakit import closed_form as cf
from coronakit.corona import r_edge_corona, r_vertex_corona
from coronakit.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    laplacian,
    path_graph,
    star_graph,
)
from coronakit.linalg import max_abs, verify_one_inverse
from coronakit.resistance import (
    DisconnectedGraphError,
    kirchhoff_index,
    resistance_from_one_inverse,
    resistance_matrix,
)
from coronakit.suite import random_connected_graph, random_crowns

K1 = Graph(1, ())
K2 = complete_graph(2)
PAIR_TOL = 1e-8


def pendant_pair_example():
    """K2 with one pendant crown vertex on each host: 5 vertices, 5 edges."""
    return K2, (K1, K1)


def test_worked_example_resistances():
    g, crowns = pendant_pair_example()
    r = cf.rv_resistance_matrix(g, crowns)
    # vertex ids: 0,1 original; 2 edge-vertex; 3,4 pendant crown vertices
    assert r[0, 1] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert r[0, 3] == pytest.approx(1.0, abs=1e-12)
    assert r[0, 4] == pytest.approx(5.0 / 3.0, abs=1e-12)
    assert r[3, 4] == pytest.approx(8.0 / 3.0, abs=1e-12)
    oracle = resistance_matrix(r_vertex_corona(g, crowns).graph)
    npt.assert_allclose(r, oracle, atol=1e-12)


def test_worked_example_kirchhoff():
    g, crowns = pendant_pair_example()
    breakdown = cf.rv_kirchhoff_terms(g, crowns)
    assert breakdown.value == pytest.approx(40.0 / 3.0, abs=1e-9)
    assert breakdown.expanded == pytest.approx(40.0 / 3.0, abs=1e-9)
    assert breakdown.deviation <= 1e-9
    oracle = kirchhoff_index(r_vertex_corona(g, crowns).graph)
    assert breakdown.value == pytest.approx(oracle, abs=1e-9)


def test_edge_corona_crown_pair_resistance():
    # two isolated crown vertices on the single edge of K2: their resistance
    # is exactly 2 (two disjoint 2-ohm paths through the anchor... it is the
    # series pair of unit edges meeting at the anchor).
    g = K2
    crowns = (Graph(2, ()),)
    built = r_edge_corona(g, crowns)
    r = cf.re_resistance_matrix(g, crowns)
    a, b = built.partition.crowns[0]
    assert r[a, b] == pytest.approx(2.0, abs=1e-12)
    npt.assert_allclose(r, resistance_matrix(built.graph), atol=1e-10)


def test_one_inverse_on_named_instances():
    named = [
        ("r_vertex", K2, (K1, K1)),
        ("r_vertex", path_graph(3), (complete_graph(2), K1, empty_graph(0))),
        ("r_vertex", complete_graph(3), (empty_graph(0),) * 3),
        ("r_edge", K2, (Graph(2, ()),)),
        ("r_edge", path_graph(3), (complete_graph(2), empty_graph(0))),
        ("r_edge", cycle_graph(4), (K1, empty_graph(0), Graph(3, ((0, 1),)), K1)),
    ]
    for kind, g, crowns in named:
        if kind == "r_vertex":
            x = cf.rv_one_inverse(g, crowns)
            built = r_vertex_corona(g, crowns)
        else:
            x = cf.re_one_inverse(g, crowns)
            built = r_edge_corona(g, crowns)
        lap = laplacian(built.graph)
        assert verify_one_inverse(lap, x) <= 1e-10 * max(1.0, max_abs(lap))
        npt.assert_allclose(x, x.T, atol=1e-12)


def test_internal_identities():
    g = path_graph(4)
    crowns_v = (K1, Graph(2, ((0, 1),)), empty_graph(0), Graph(3, ()))
    blocks_v = cf.rv_blocks(g, crowns_v)
    assert blocks_v.schur_defect <= 1e-12
    npt.assert_allclose(blocks_v.schur, 1.5 * laplacian(g), atol=1e-12)

    crowns_e = (Graph(2, ()), K1, Graph(3, ((0, 1), (1, 2))))
    blocks_e = cf.re_blocks(g, crowns_e)
    assert blocks_e.schur_defect <= 1e-12
    assert blocks_e.complement_defect <= 1e-12


def test_crown_block_spectral_traces():
    # tr of each vertex-corona crown block inverse is the sum of 1/(mu+1)
    # over that crown's Laplacian spectrum; the edge-corona variant adds
    # t/2 because the rank-one shift moves the all-ones eigenvalue from 1
    # to 2/(2+t), and 1/(2/(2+t)) - 1/1 = t/2.
    crowns = (Graph(2, ()), Graph(3, ((0, 1), (0, 2))), K1)
    g = complete_graph(3)
    blocks_v = cf.rv_blocks(g, crowns)
    want = sum(cf.crown_eigen_sum(c) for c in crowns)
    assert np.trace(blocks_v.t_inv) == pytest.approx(want, abs=1e-10)

    blocks_e = cf.re_blocks(g, crowns)
    want_e = sum(cf.crown_eigen_sum(c) + c.n / 2.0 for c in crowns)
    assert np.trace(blocks_e.s_inv) == pytest.approx(want_e, abs=1e-10)

    # all-ones quadratic form of each shifted crown inverse is t(2+t)/2
    off = 0
    for c in crowns:
        block = blocks_e.s_inv[off : off + c.n, off : off + c.n]
        ones = np.ones(c.n)
        assert ones @ block @ ones == pytest.approx(
            c.n * (2.0 + c.n) / 2.0, abs=1e-10
        )
        off += c.n


def test_empty_crown_trace_needs_the_shift():
    # two isolated crown vertices: bare spectral sum gives 2, the true
    # trace of the shifted inverse is 3.
    crown = Graph(2, ())
    blocks = cf.re_blocks(K2, (crown,))
    assert np.trace(blocks.s_inv) == pytest.approx(3.0, abs=1e-12)
    assert cf.crown_eigen_sum(crown) == pytest.approx(2.0, abs=1e-12)


def test_dispatch_matches_oracle_on_structured_instances():
    instances = [
        ("r_vertex", path_graph(3), (complete_graph(2), K1, empty_graph(0))),
        ("r_vertex", star_graph(3), (K1, empty_graph(0), Graph(2, ()), K1)),
        ("r_vertex", cycle_graph(4), (Graph(3, ((0, 1),)), empty_graph(0), K1, Graph(2, ()))),
        ("r_edge", path_graph(3), (complete_graph(2), empty_graph(0))),
        ("r_edge", complete_graph(3), (Graph(2, ()), K1, Graph(3, ((0, 1), (1, 2))))),
        ("r_edge", star_graph(4), (K1, K1, empty_graph(0), Graph(2, ()))),
    ]
    for kind, g, crowns in instances:
        if kind == "r_vertex":
            closed = cf.rv_resistance_matrix(g, crowns)
            built = r_vertex_corona(g, crowns)
        else:
            closed = cf.re_resistance_matrix(g, crowns)
            built = r_edge_corona(g, crowns)
        oracle = resistance_matrix(built.graph)
        assert max_abs(closed - oracle) <= PAIR_TOL


def test_dispatch_matches_one_inverse_readout():
    g = path_graph(3)
    crowns = (Graph(2, ((0, 1),)), K1, empty_graph(0))
    x = cf.rv_one_inverse(g, crowns)
    r = cf.rv_resistance_matrix(g, crowns)
    total = r.shape[0]
    for u in range(total):
        for v in range(total):
            assert resistance_from_one_inverse(x, u, v) == pytest.approx(
                r[u, v], abs=1e-10
            )


def test_single_pair_entry_points():
    g, crowns = pendant_pair_example()
    assert cf.rv_resistance(g, crowns, 3, 4) == pytest.approx(8.0 / 3.0, abs=1e-12)
    assert cf.rv_resistance(g, crowns, 2, 2) == 0.0
    ge, crowns_e = K2, (Graph(2, ()),)
    built = r_edge_corona(ge, crowns_e)
    a, b = built.partition.crowns[0]
    assert cf.re_resistance(ge, crowns_e, a, b) == pytest.approx(2.0, abs=1e-12)


def test_original_pairs_scale_base_resistance_by_two_thirds():
    # the original-corner combination is crown-independent: whatever hangs
    # off the skeleton, two original vertices sit at 2/3 of their base-graph
    # resistance.
    rng = random.Random(123)
    for _ in range(5):
        g = random_connected_graph(rng, 2, 5)
        r_base = resistance_matrix(g)
        crowns_v = random_crowns(rng, g.n, 3)
        r_v = cf.rv_resistance_matrix(g, crowns_v)
        npt.assert_allclose(r_v[: g.n, : g.n], (2.0 / 3.0) * r_base, atol=PAIR_TOL)
        crowns_e = random_crowns(rng, g.m, 3)
        r_e = cf.re_resistance_matrix(g, crowns_e)
        npt.assert_allclose(r_e[: g.n, : g.n], (2.0 / 3.0) * r_base, atol=PAIR_TOL)


def test_all_empty_crowns_reduce_to_skeleton():
    for g in (path_graph(4), complete_graph(3), star_graph(3)):
        crowns_v = tuple(empty_graph(0) for _ in range(g.n))
        crowns_e = tuple(empty_graph(0) for _ in range(g.m))
        built = r_vertex_corona(g, crowns_v)
        oracle = resistance_matrix(built.graph)
        npt.assert_allclose(cf.rv_resistance_matrix(g, crowns_v), oracle, atol=PAIR_TOL)
        npt.assert_allclose(cf.re_resistance_matrix(g, crowns_e), oracle, atol=PAIR_TOL)


def test_kirchhoff_three_way_agreement_random():
    rng = random.Random(321)
    for _ in range(8):
        g = random_connected_graph(rng, 2, 5)
        crowns_v = random_crowns(rng, g.n, 3)
        breakdown = cf.rv_kirchhoff_terms(g, crowns_v)
        oracle = kirchhoff_index(r_vertex_corona(g, crowns_v).graph)
        assert breakdown.value == pytest.approx(oracle, rel=1e-9, abs=1e-9)
        assert breakdown.deviation <= 1e-9

        crowns_e = random_crowns(rng, g.m, 3)
        breakdown_e = cf.re_kirchhoff_terms(g, crowns_e)
        oracle_e = kirchhoff_index(r_edge_corona(g, crowns_e).graph)
        assert breakdown_e.value == pytest.approx(oracle_e, rel=1e-9, abs=1e-9)
        assert breakdown_e.deviation <= 1e-9


def test_kirchhoff_term_names_are_stable():
    g, crowns = pendant_pair_example()
    terms = cf.rv_kirchhoff_terms(g, crowns).terms
    assert set(terms) == {
        "trace_base",
        "trace_edge_const",
        "trace_degree",
        "trace_tree_const",
        "trace_crown_eigen",
        "trace_crown_host",
        "ones_edge_const",
        "ones_degree_quad",
        "ones_degree_crown",
        "ones_crown_count",
        "ones_crown_quad",
    }
    terms_e = cf.re_kirchhoff_terms(K2, (Graph(2, ()),)).terms
    assert set(terms_e) == {
        "trace_base",
        "trace_edge_const",
        "trace_degree",
        "trace_tree_const",
        "trace_crown_eigen",
        "trace_crown_edge",
        "ones_edge_const",
        "ones_degree_quad",
        "ones_degree_crown",
        "ones_crown_count",
        "ones_crown_shift",
        "ones_crown_quad",
    }


def test_random_sweep_both_kinds():
    rng = random.Random(777)
    for _ in range(10):
        g = random_connected_graph(rng, 2, 5, m_max=8)
        crowns_v = random_crowns(rng, g.n, 3)
        built_v = r_vertex_corona(g, crowns_v)
        x_v = cf.rv_one_inverse(g, crowns_v)
        lap_v = laplacian(built_v.graph)
        assert verify_one_inverse(lap_v, x_v) <= PAIR_TOL * max(1.0, max_abs(lap_v))
        assert (
            max_abs(cf.rv_resistance_matrix(g, crowns_v) - resistance_matrix(built_v.graph))
            <= PAIR_TOL
        )

        crowns_e = random_crowns(rng, g.m, 3)
        built_e = r_edge_corona(g, crowns_e)
        x_e = cf.re_one_inverse(g, crowns_e)
        lap_e = laplacian(built_e.graph)
        assert verify_one_inverse(lap_e, x_e) <= PAIR_TOL * max(1.0, max_abs(lap_e))
        assert (
            max_abs(cf.re_resistance_matrix(g, crowns_e) - resistance_matrix(built_e.graph))
            <= PAIR_TOL
        )


def test_input_validation():
    disconnected = Graph(4, ((0, 1), (2, 3)))
    with pytest.raises(DisconnectedGraphError):
        cf.rv_blocks(disconnected, (empty_graph(0),) * 4)
    with pytest.raises(ValueError, match="crowns"):
        cf.rv_blocks(path_graph(3), (K1,))
    with pytest.raises(ValueError, match="crowns"):
        cf.re_blocks(path_graph(3), (K1,) * 3)
    with pytest.raises(ValueError):
        cf.rv_blocks(empty_graph(0), ())
