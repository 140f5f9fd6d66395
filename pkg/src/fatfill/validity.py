"""
Deciding whether a decorated fat graph is a filling system.

The curves are the standard cycles, the complementary discs are the faces
(boundary cycles).  A graph is accepted when it is connected and decorated,
every curve is simple, no face is a monogon or a bigon, no curve bounds a
disc and no two disjoint curves cobound an annulus.

Homotopy between two disjoint curves is decided on the components of the
surface cut along both curves: a region cobounded by the two curves is a
union of such components and, being connected, exactly one of them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    FatGraph,
    NotDecorated,
    SurfaceInvariants,
    invariants,
    is_connected,
    is_decorated,
    standard_cycles,
)


class EmptySubset(ValueError):
    pass


class NotSimpleCurve(ValueError):
    pass


class MinimalPositionUnknown(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# failure witnesses


@dataclass(frozen=True)
class Failure:
    kind = "failure"

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        d.update(self.__dict__)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.__dict__.items())
        return f"{self.kind}({args})"


@dataclass(frozen=True)
class Disconnected(Failure):
    kind = "Disconnected"


@dataclass(frozen=True)
class NotDecoratedVertex(Failure):
    vertex: int
    degree: int
    kind = "NotDecorated"


@dataclass(frozen=True)
class SelfCrossing(Failure):
    vertex: int
    curve: int
    kind = "SelfCrossing"


@dataclass(frozen=True)
class Monogon(Failure):
    face: int
    kind = "Monogon"


@dataclass(frozen=True)
class Bigon(Failure):
    face: int
    kind = "Bigon"


@dataclass(frozen=True)
class NullHomotopic(Failure):
    curve: int
    faces: tuple[int, ...]
    kind = "NullHomotopic"


@dataclass(frozen=True)
class HomotopicPair(Failure):
    curve_i: int
    curve_j: int
    faces: tuple[int, ...]
    kind = "HomotopicPair"


@dataclass(frozen=True)
class FaceProfile:
    face_lengths: tuple[int, ...]   # sorted decreasing

    @property
    def total(self) -> int:
        return sum(self.face_lengths)


@dataclass
class ValidityReport:
    failures: list[Failure] = field(default_factory=list)
    invariants: SurfaceInvariants | None = None
    curve_lengths: tuple[int, ...] | None = None
    face_lengths: tuple[int, ...] | None = None

    @property
    def is_valid(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "invariants": self.invariants.to_dict() if self.invariants else None,
            "curve_lengths": list(self.curve_lengths) if self.curve_lengths is not None else None,
            "face_lengths": list(self.face_lengths) if self.face_lengths is not None else None,
            "failures": [f.to_dict() for f in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------


def face_profile(G: FatGraph) -> FaceProfile:
    return FaceProfile(tuple(sorted((len(f) for f in G.face_cycles()), reverse=True)))


def self_crossings(G: FatGraph) -> list[SelfCrossing]:
    """Vertices where one curve passes through two of the strands."""
    if not is_decorated(G):
        raise NotDecorated()
    curve = standard_cycles(G).dart_curve
    out = []
    for vi, cyc in enumerate(G.vertex_cycles()):
        h = len(cyc) // 2
        seen = set()
        for d in cyc[:h]:
            c = curve[d]
            if c in seen:
                out.append(SelfCrossing(vi, c))
                break
            seen.add(c)
    return out


def has_simple_curves(G: FatGraph) -> bool:
    return not self_crossings(G)


@dataclass(frozen=True)
class Subsurface:
    """Compact surface obtained by gluing a set of faces along shared edges."""

    faces: tuple[int, ...]
    vertices: int
    edges: int
    face_count: int
    boundary: tuple[tuple[int, ...], ...]
    connected: bool

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.face_count

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    @property
    def genus(self) -> int | None:
        if not self.connected:
            return None
        return (2 - self.euler - self.boundary_count) // 2

    def boundary_edges(self, G: FatGraph) -> frozenset[int]:
        el = G.edge_of()
        return frozenset(el[d] for cyc in self.boundary for d in cyc)


def subsurface(G: FatGraph, faces: Iterable[int]) -> Subsurface:
    """
    Glue the chosen faces along every edge having both sides among them.

    Vertices of the result are the groups of consecutive chosen corners around
    each vertex of ``G``; boundary circles are reported as dart cycles, each
    dart lying on the chosen side of a boundary edge.
    """
    R = frozenset(faces)
    if not R:
        raise EmptySubset("face subset is empty")
    fl = G.face_of()
    s0, s1 = G.sigma0, G.sigma1
    n = G.dart_count
    inside = [fl[d] in R for d in range(n)]
    glued = [inside[d] and inside[s1[d]] for d in range(n)]

    in_darts = sum(inside)
    glued_darts = sum(glued)
    edges = glued_darts // 2 + (in_darts - glued_darts)

    # the corner between d and sigma0(d) lies in the face of sigma1(d)
    vertices = 0
    for cyc in G.vertex_cycles():
        corners = sum(1 for d in cyc if inside[s1[d]])
        if not corners:
            continue
        joins = sum(1 for d in cyc if glued[d])
        vertices += max(corners - joins, 1)

    # boundary darts: chosen side in R, other side not
    bnext = {}
    for d in range(n):
        if inside[d] and not glued[d]:
            x = s0[s1[d]]
            while glued[x]:
                x = s0[x]
            bnext[d] = x
    boundary = []
    done = set()
    for d in sorted(bnext):
        if d in done:
            continue
        cyc = []
        x = d
        while x not in done:
            done.add(x)
            cyc.append(x)
            x = bnext[x]
        boundary.append(tuple(cyc))

    parent = {f: f for f in R}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for d in range(n):
        if glued[d]:
            a, b = find(fl[d]), find(fl[s1[d]])
            if a != b:
                parent[a] = b
    connected = len({find(f) for f in R}) == 1
    return Subsurface(tuple(sorted(R)), vertices, edges, len(R), tuple(boundary), connected)


def _cut_components(G: FatGraph, cut_edges: frozenset[int]) -> list[tuple[int, ...]]:
    """Face sets of the components of the surface cut along ``cut_edges``."""
    fl = G.face_of()
    el = G.edge_of()
    s1 = G.sigma1
    nf = G.num_boundaries()
    parent = list(range(nf))

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for d in range(G.dart_count):
        if el[d] not in cut_edges:
            a, b = find(fl[d]), find(fl[s1[d]])
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for f in range(nf):
        comps.setdefault(find(f), []).append(f)
    return sorted(tuple(c) for c in comps.values())


def _curve_edges(G: FatGraph, i: int) -> frozenset[int]:
    el = G.edge_of()
    return frozenset(el[d] for d in standard_cycles(G).cycles[i])


def _curve_vertices(G: FatGraph, i: int) -> frozenset[int]:
    vl = G.vertex_of()
    s1 = G.sigma1
    return frozenset(vl[x] for d in standard_cycles(G).cycles[i] for x in (d, s1[d]))


def disc_bounded_by(G: FatGraph, i: int) -> tuple[int, ...] | None:
    """Faces of a disc whose boundary is curve ``i``, if there is one."""
    edges = _curve_edges(G, i)
    for comp in _cut_components(G, edges):
        S = subsurface(G, comp)
        if S.connected and S.euler == 1 and S.boundary_count == 1 and S.boundary_edges(G) == edges:
            return comp
    return None


def annulus_between(G: FatGraph, i: int, j: int) -> tuple[int, ...] | None:
    """Faces of an annulus cobounded by the disjoint curves ``i`` and ``j``, if any."""
    ei, ej = _curve_edges(G, i), _curve_edges(G, j)
    cut = ei | ej
    for comp in _cut_components(G, cut):
        S = subsurface(G, comp)
        if S.connected and S.euler == 0 and S.boundary_count == 2 and S.boundary_edges(G) == cut:
            return comp
    return None


def are_homotopic(G: FatGraph, i: int, j: int) -> bool:
    """
    Whether the simple curves ``i`` and ``j`` (indices into the standard cycles)
    are freely homotopic.

    Intersecting curves are decided by the bigon criterion, which needs every
    face touching only these two curves to have length at least 3.
    """
    if i == j:
        raise ValueError("curves must be distinct")
    if not is_decorated(G):
        raise NotDecorated()
    bad = {c.curve for c in self_crossings(G)}
    for c in (i, j):
        if c in bad:
            raise NotSimpleCurve(f"curve {c} crosses itself")
    if _curve_vertices(G, i) & _curve_vertices(G, j):
        curve = standard_cycles(G).dart_curve
        for fi, face in enumerate(G.face_cycles()):
            if len(face) <= 2 and all(curve[d] in (i, j) for d in face):
                raise MinimalPositionUnknown(f"face {fi} is a monogon or bigon of curves {i}, {j}")
        return False
    return annulus_between(G, i, j) is not None


def is_filling_system(G: FatGraph) -> ValidityReport:
    rep = ValidityReport()
    if not is_connected(G):
        rep.failures.append(Disconnected())
        return rep
    rep.face_lengths = face_profile(G).face_lengths
    if not is_decorated(G):
        for vi, cyc in enumerate(G.vertex_cycles()):
            if len(cyc) < 4 or len(cyc) % 2:
                rep.failures.append(NotDecoratedVertex(vi, len(cyc)))
        rep.invariants = invariants(G)
        return rep
    rep.invariants = invariants(G)
    sc = standard_cycles(G)
    rep.curve_lengths = sc.lengths

    crossings = self_crossings(G)
    rep.failures.extend(crossings)
    for fi, face in enumerate(G.face_cycles()):
        if len(face) == 1:
            rep.failures.append(Monogon(fi))
        elif len(face) == 2:
            rep.failures.append(Bigon(fi))

    simple = [c for c in range(len(sc)) if c not in {x.curve for x in crossings}]
    for c in simple:
        disc = disc_bounded_by(G, c)
        if disc is not None:
            rep.failures.append(NullHomotopic(c, disc))

    verts = {c: _curve_vertices(G, c) for c in simple}
    for a_idx, i in enumerate(simple):
        for j in simple[a_idx + 1:]:
            if verts[i] & verts[j]:
                continue
            ann = annulus_between(G, i, j)
            if ann is not None:
                rep.failures.append(HomotopicPair(i, j, ann))
    return rep
