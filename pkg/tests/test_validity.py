import json

import pytest
from hypothesis import given, settings, strategies as st

from fatfill.constructions import chain, gamma_example, gamma_remark5
from fatfill.core import FatGraph, NotDecorated, invariants, standard_cycles
from fatfill.enumeration import SearchSpec, enumerate_graphs
from fatfill.io import loads
from fatfill.validity import (
    EmptySubset,
    MinimalPositionUnknown,
    NotSimpleCurve,
    annulus_between,
    are_homotopic,
    disc_bounded_by,
    face_profile,
    is_filling_system,
    self_crossings,
    subsurface,
)

# witnesses taken from the V <= 4 census
HOMOTOPIC_PAIR = '{"edges":4,"sigma0":[[0,2,1,4],[3,6,5,7]]}'
SELF_CROSSING = '{"edges":6,"sigma0":[[0,2,1,4],[3,5,6,8],[7,10,9,11]]}'
BIGONS = '{"edges":6,"sigma0":[[0,2,4,6],[1,3,8,10],[5,11,9,7]]}'
MONOGONS = '{"edges":2,"sigma0":[[0,1,2,3]]}'
SPHERE_TWO_CURVES = '{"edges":4,"sigma0":[[0,2,4,6],[1,7,5,3]]}'
TORUS = FatGraph([1, 2, 3, 0], [2, 3, 0, 1])


def kinds(G):
    return [f.kind for f in is_filling_system(G).failures]


def test_example_is_valid():
    rep = is_filling_system(gamma_example())
    assert rep.is_valid
    assert rep.invariants.as_tuple() == (2, 1, 3)
    assert rep.curve_lengths == (3, 2, 1)
    assert rep.face_lengths == (12,)


def test_torus_meridian_longitude():
    rep = is_filling_system(TORUS)
    assert rep.is_valid and rep.face_lengths == (4,)


def test_chain_of_three_has_homotopic_ends():
    rep = is_filling_system(chain(3))
    assert [f.kind for f in rep.failures] == ["HomotopicPair"]
    f = rep.failures[0]
    sc = standard_cycles(chain(3))
    assert sorted(sc.lengths) == [1, 1, 2]
    assert sc.cycles[f.curve_i] and len(sc.cycles[f.curve_i]) == len(sc.cycles[f.curve_j]) == 1


def test_homotopic_pair_witness():
    assert kinds(loads(HOMOTOPIC_PAIR)) == ["HomotopicPair"]


def test_self_crossing_witness():
    G = loads(SELF_CROSSING)
    assert kinds(G) == ["SelfCrossing"]
    assert [(c.vertex, c.curve) for c in self_crossings(G)] == [(1, 1)]


def test_bigon_witness():
    G = loads(BIGONS)
    rep = is_filling_system(G)
    assert [f.kind for f in rep.failures] == ["Bigon", "Bigon"]
    assert rep.face_lengths == (8, 2, 2)


def test_monogons_on_one_vertex():
    assert sorted(kinds(loads(MONOGONS))) == ["Bigon", "Monogon", "Monogon", "SelfCrossing"]


def test_curves_on_sphere_bound_discs():
    G = loads(SPHERE_TWO_CURVES)
    rep = is_filling_system(G)
    assert rep.invariants.genus == 0
    null = [f for f in rep.failures if f.kind == "NullHomotopic"]
    assert {f.curve for f in null} == {0, 1}
    for f in null:
        assert disc_bounded_by(G, f.curve) == f.faces


def test_disconnected_and_undecorated():
    U = FatGraph([1, 0, 3, 2], [1, 0, 3, 2])
    assert kinds(U) == ["Disconnected"]
    tri = FatGraph([1, 2, 0, 4, 5, 3])
    assert kinds(tri) == ["NotDecorated", "NotDecorated"]


def test_five_vertex_single_boundary_graph_is_valid():
    rep = is_filling_system(gamma_remark5())
    assert rep.is_valid
    assert rep.invariants.as_tuple() == (3, 1, 6)
    assert rep.face_lengths == (20,)


def test_report_json_is_stable():
    rep = is_filling_system(loads(BIGONS))
    d = json.loads(rep.to_json())
    assert list(d) == ["is_valid", "invariants", "curve_lengths", "face_lengths", "failures"]
    assert d["failures"][0] == {"kind": "Bigon", "face": 1}
    assert rep.to_json() == is_filling_system(loads(BIGONS)).to_json()


def test_face_profile():
    assert face_profile(loads(BIGONS)).face_lengths == (8, 2, 2)
    assert face_profile(loads(BIGONS)).total == 12


# ---------------------------------------------------------------------------
# subsurfaces


def test_all_faces_give_the_closed_surface():
    for G in (gamma_example(), gamma_remark5(), chain(5), TORUS):
        S = subsurface(G, range(G.num_boundaries()))
        inv = invariants(G)
        assert S.boundary_count == 0 and S.connected
        assert S.genus == inv.genus
        assert S.euler == 2 - 2 * inv.genus


def test_single_face_of_embedded_square_is_a_disc():
    # the four bigon-free faces of two curves on the sphere each abut distinct edges
    G = loads(SPHERE_TWO_CURVES)
    for f in range(G.num_boundaries()):
        S = subsurface(G, [f])
        assert (S.euler, S.boundary_count) == (1, 1)


def test_self_abutting_face_is_not_a_disc():
    # the torus has one face glued to itself along both edges
    S = subsurface(TORUS, [0])
    assert S.euler == 0 and S.boundary_count == 0 and S.genus == 1


def test_empty_subset_rejected():
    with pytest.raises(EmptySubset):
        subsurface(TORUS, [])


# ---------------------------------------------------------------------------
# homotopy


def test_are_homotopic_errors():
    with pytest.raises(ValueError):
        are_homotopic(TORUS, 0, 0)
    with pytest.raises(NotSimpleCurve):
        G = loads(SELF_CROSSING)
        are_homotopic(G, 1, 0)
    with pytest.raises(MinimalPositionUnknown):
        are_homotopic(loads(BIGONS), 0, 1)
    with pytest.raises(NotDecorated):
        are_homotopic(FatGraph([1, 2, 0, 4, 5, 3]), 0, 1)


def test_homotopic_pair_agrees_with_annulus():
    G = loads(HOMOTOPIC_PAIR)
    assert are_homotopic(G, 0, 2)
    assert annulus_between(G, 0, 2) == (0,)
    assert not are_homotopic(G, 0, 1)


def test_crossing_curves_are_not_homotopic():
    assert not are_homotopic(TORUS, 0, 1)


_CENSUS = [e for V in (2, 3, 4) for e in enumerate_graphs(SearchSpec(V)).representatives]


@given(st.sampled_from(_CENSUS), st.data())
@settings(max_examples=150, deadline=None)
def test_are_homotopic_is_symmetric(entry, data):
    G = entry.graph
    k = len(standard_cycles(G))
    bad = {c.curve for c in self_crossings(G)}
    simple = [c for c in range(k) if c not in bad]
    if len(simple) < 2:
        return
    i, j = data.draw(st.permutations(simple))[:2]

    def answer(a, b):
        try:
            return are_homotopic(G, a, b)
        except MinimalPositionUnknown:
            return "unknown"

    assert answer(i, j) == answer(j, i)


@given(st.sampled_from([e for e in _CENSUS if e.report.is_valid]))
@settings(max_examples=50, deadline=None)
def test_valid_fillings_respect_size_bound(entry):
    g, b, s = entry.report.invariants.as_tuple()
    assert s <= 2 * g + b - 1
    assert min(entry.report.face_lengths) >= 3
