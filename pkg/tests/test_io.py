import re

import pytest

from fatfill.constructions import gamma_g_b, gamma_remark5
from fatfill.core import FatGraphError, from_vertex_cycles
from fatfill.io import GraphFormatError, dumps, loads, read_graph, to_dot, write_graph
from fatfill.isomorphism import canonical_form


def test_round_trip(tmp_path):
    G = gamma_g_b(3, 4).graph
    path = tmp_path / "g.json"
    write_graph(G, path)
    H = read_graph(path)
    assert H == G.normalized()
    assert dumps(H) == path.read_text()


def test_serialization_is_label_independent():
    from fatfill.core import relabel

    G = gamma_remark5()
    perm = list(range(G.dart_count))[::-1]
    assert canonical_form(loads(dumps(relabel(G, perm)))) == canonical_form(G)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"edges": 2}',
        '{"edges": -1, "sigma0": []}',
        '{"edges": 1, "sigma0": [[0, 5]]}',
        '{"edges": 1, "sigma0": [0, 1]}',
        '{"edges": 2, "sigma0": [[0, 1, 2]]}',
        '{"edges": 1, "sigma0": [[0, 0, 1]]}',
        '{"edges": true, "sigma0": [[0, 1]]}',
    ],
)
def test_bad_input(text):
    with pytest.raises(FatGraphError):
        loads(text)


def test_dot_reconstructs_rotation():
    G = gamma_remark5()
    text = to_dot(G)
    N = G.normalized()
    cycles = N.vertex_cycles()
    # rebuild the rotation from the edge lines alone
    rot = [[None] * len(c) for c in cycles]
    for va, vb, key, ka, kb in re.findall(
            r'(?m)^  v(\d+) -- v(\d+) \[key=(\d+) taillabel="(\d+)" headlabel="(\d+)"\];$', text):
        i = int(key)
        rot[int(va)][int(ka)] = 2 * i
        rot[int(vb)][int(kb)] = 2 * i + 1
    assert from_vertex_cycles(N.num_edges(), rot) == N
    assert text == to_dot(G)


def test_format_errors_are_specific():
    with pytest.raises(GraphFormatError, match="not valid JSON"):
        loads("{")
    with pytest.raises(GraphFormatError, match="dart 5"):
        loads('{"edges": 1, "sigma0": [[0, 5]]}')
