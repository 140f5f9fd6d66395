import random

import pytest
from hypothesis import given, settings, strategies as st

from fatfill.constructions import chain, gamma_example, gamma_g_b, gamma_remark5
from fatfill.core import DisconnectedGraph, FatGraph, disjoint_union, mirror, relabel
from fatfill.isomorphism import (
    CanonicalCode,
    IsomorphismWitness,
    are_isomorphic,
    canonical_form,
    isomorphism,
)

import oracles


def shuffled(G, rng):
    perm = list(range(G.dart_count))
    rng.shuffle(perm)
    return relabel(G, perm)


def test_chain_code():
    assert canonical_form(chain(2)).values == (4, 2, 3, 0, 1)


def test_relabelled_graphs_are_isomorphic_with_witness():
    rng = random.Random(7)
    G = gamma_remark5()
    H = shuffled(G, rng)
    w = isomorphism(G, H)
    assert w is not None and w.check(G, H)
    assert not w.reverses_orientation or canonical_form(G, False) != canonical_form(H, False)


def test_mirror_needs_reflection():
    # an orientation-reversing map exists for every graph; it is a witness only with reflections
    G = gamma_example()
    M = mirror(G)
    assert are_isomorphic(G, M)
    w = isomorphism(G, M)
    assert w.check(G, M)


def test_chiral_pair_in_small_census():
    # 36 orientation classes but 33 up to reflection at three vertices: some graphs are chiral
    from fatfill.enumeration import SearchSpec, enumerate_graphs

    reps = enumerate_graphs(SearchSpec(3, allow_reflection=False)).representatives
    chiral = [e.graph for e in reps if not are_isomorphic(e.graph, mirror(e.graph), allow_reflection=False)]
    assert len(chiral) == 6
    for G in chiral:
        assert are_isomorphic(G, mirror(G))


def test_distinct_fillings_are_not_isomorphic():
    assert not are_isomorphic(gamma_remark5(), chain(6))
    assert isomorphism(gamma_example(), chain(4)) is None
    assert isomorphism(chain(2), chain(3)) is None


def test_different_families_agree():
    assert are_isomorphic(chain(4), gamma_g_b(2, 1).graph)


def test_disconnected_rejected():
    T = FatGraph([1, 2, 3, 0], [2, 3, 0, 1])
    with pytest.raises(DisconnectedGraph):
        canonical_form(disjoint_union(T, T))


def test_code_serialization():
    c = canonical_form(chain(2))
    assert c.to_bytes()[0] == 1
    assert len(c.hexdigest()) == 64
    assert c.hexdigest() != CanonicalCode(c.values, False).hexdigest()


def test_bad_witness_is_rejected():
    G = gamma_example()
    ident = IsomorphismWitness(range(G.dart_count), False)
    assert ident.check(G, G)
    swapped = list(range(G.dart_count))
    swapped[0], swapped[2] = swapped[2], swapped[0]
    assert not IsomorphismWitness(swapped, False).check(G, G)


@st.composite
def maps(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return FatGraph(*oracles.random_connected_map(random.Random(seed), 5, 5))


@given(maps(), st.randoms(use_true_random=False), st.booleans())
@settings(max_examples=150, deadline=None)
def test_code_is_relabel_invariant(G, rnd, refl):
    H = shuffled(G, rnd)
    assert canonical_form(G, refl) == canonical_form(H, refl)
    w = isomorphism(G, H, refl)
    assert w is not None and w.check(G, H)


@given(maps())
@settings(max_examples=100, deadline=None)
def test_reflection_code_is_mirror_invariant(G):
    assert canonical_form(G) == canonical_form(mirror(G))
