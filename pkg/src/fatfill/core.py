"""
Dart-based fat graphs (ribbon graphs).

A fat graph on ``n`` darts is a pair of permutations of ``range(n)``:

* ``sigma1``, a fixed-point-free involution pairing each dart with its
  reversal (one pair per undirected edge);
* ``sigma0``, whose cycles are the vertices, each listing its outgoing darts
  in cyclic order.

Boundary components are the cycles of ``sigma_inf = sigma0 o sigma1``
(apply ``sigma1`` first, then ``sigma0``).  Graphs built through
:func:`from_permutations` follow the edge convention: edge ``i`` owns darts
``2i`` and ``2i + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


class FatGraphError(ValueError):
    """Base class for malformed fat graph input."""


class DuplicateDart(FatGraphError):
    def __init__(self, dart):
        super().__init__(f"dart {dart!r} appears more than once")
        self.dart = dart


class UncoveredDart(FatGraphError):
    def __init__(self, dart):
        super().__init__(f"dart {dart!r} is not covered by both the vertex cycles and the edge pairs")
        self.dart = dart


class FixedPointInInvolution(FatGraphError):
    def __init__(self, dart):
        super().__init__(f"dart {dart!r} is paired with itself")
        self.dart = dart


class EmptyGraph(FatGraphError):
    def __init__(self):
        super().__init__("a fat graph needs at least one edge")


class DisconnectedGraph(FatGraphError):
    def __init__(self):
        super().__init__("fat graph is not connected")


class NotDecorated(FatGraphError):
    def __init__(self, vertex=None):
        msg = "fat graph is not decorated"
        if vertex is not None:
            msg += f" (vertex {vertex} has odd degree or degree < 4)"
        super().__init__(msg)
        self.vertex = vertex


class NonIntegerGenus(AssertionError):
    pass


# ---------------------------------------------------------------------------
# permutation helpers on lists


def perm_cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``p``, each starting at its smallest element, sorted by that element."""
    n = len(p)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


def perm_num_cycles(p: Sequence[int]) -> int:
    n = len(p)
    seen = bytearray(n)
    k = 0
    for i in range(n):
        if seen[i]:
            continue
        k += 1
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
    return k


def perm_invert(p: Sequence[int]) -> list[int]:
    q = [0] * len(p)
    for i, j in enumerate(p):
        q[j] = i
    return q


def perm_compose(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """Return ``p o q``, i.e. ``i -> p[q[i]]``."""
    return [p[j] for j in q]


def _check_perm(p: Sequence[int], n: int, what: str) -> None:
    if len(p) != n:
        raise FatGraphError(f"{what} has length {len(p)}, expected {n}")
    seen = [False] * n
    for d in p:
        if not isinstance(d, int) or not 0 <= d < n:
            raise UncoveredDart(d)
        if seen[d]:
            raise DuplicateDart(d)
        seen[d] = True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceInvariants:
    vertices: int
    edges: int
    boundary: int
    euler: int
    genus: int
    curves: int | None = None

    def as_tuple(self):
        return (self.genus, self.boundary, self.curves)

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "boundary": self.boundary,
            "euler": self.euler,
            "genus": self.genus,
            "curves": self.curves,
        }


@dataclass(frozen=True)
class StandardCycleDecomposition:
    """Curves of a decorated fat graph.

    ``cycles[i]`` is the dart sequence of curve ``i`` (the direction containing
    its smallest dart, starting there); ``dart_curve[d]`` is the curve through
    dart ``d`` in either direction.
    """

    cycles: tuple[tuple[int, ...], ...]
    dart_curve: tuple[int, ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    def __len__(self):
        return len(self.cycles)


class FatGraph:
    r"""
    Immutable fat graph given by its vertex rotation ``sigma0`` and edge
    involution ``sigma1`` (both stored as tuples indexed by dart).

    ``labels`` optionally names the darts (used for readable output only and
    ignored by equality).

    >>> G = FatGraph([2, 3, 1, 0], [1, 0, 3, 2])
    >>> G.num_vertices(), G.num_edges(), G.num_boundaries()
    (1, 2, 1)
    """

    __slots__ = ("sigma0", "sigma1", "labels", "_cache")

    def __init__(self, sigma0: Sequence[int], sigma1: Sequence[int] | None = None,
                 labels: Sequence[str] | None = None, check: bool = True):
        n = len(sigma0)
        if sigma1 is None:
            sigma1 = [d ^ 1 for d in range(n)]
        sigma0 = tuple(sigma0)
        sigma1 = tuple(sigma1)
        if check:
            if n == 0:
                raise EmptyGraph()
            _check_perm(sigma0, n, "sigma0")
            _check_perm(sigma1, n, "sigma1")
            for d in range(n):
                if sigma1[d] == d:
                    raise FixedPointInInvolution(d)
                if sigma1[sigma1[d]] != d:
                    raise FatGraphError(f"sigma1 is not an involution at dart {d}")
            if labels is not None and len(labels) != n:
                raise FatGraphError("labels must have one entry per dart")
        object.__setattr__(self, "sigma0", sigma0)
        object.__setattr__(self, "sigma1", sigma1)
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("FatGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, FatGraph):
            return NotImplemented
        return self.sigma0 == other.sigma0 and self.sigma1 == other.sigma1

    def __hash__(self):
        return hash((self.sigma0, self.sigma1))

    def __repr__(self):
        return f"FatGraph(vertices={self.vertex_cycles()!r}, sigma1={self.sigma1!r})"

    @property
    def dart_count(self) -> int:
        return len(self.sigma0)

    def _cached(self, key, fn):
        cache = self._cache
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    def sigma_inf(self) -> tuple[int, ...]:
        s0, s1 = self.sigma0, self.sigma1
        return self._cached("sinf", lambda: tuple(s0[s1[d]] for d in range(len(s0))))

    def vertex_cycles(self) -> list[tuple[int, ...]]:
        return self._cached("vcyc", lambda: perm_cycles(self.sigma0))

    def vertex_of(self) -> tuple[int, ...]:
        """Index (into :meth:`vertex_cycles`) of the vertex of each dart."""
        def build():
            vl = [0] * self.dart_count
            for i, cyc in enumerate(self.vertex_cycles()):
                for d in cyc:
                    vl[d] = i
            return tuple(vl)
        return self._cached("vl", build)

    def face_cycles(self) -> list[tuple[int, ...]]:
        return self._cached("fcyc", lambda: perm_cycles(self.sigma_inf()))

    def face_of(self) -> tuple[int, ...]:
        def build():
            fl = [0] * self.dart_count
            for i, cyc in enumerate(self.face_cycles()):
                for d in cyc:
                    fl[d] = i
            return tuple(fl)
        return self._cached("fl", build)

    def edge_of(self) -> tuple[int, ...]:
        """Index of the undirected edge of each dart, edges numbered by smallest dart."""
        def build():
            el = [-1] * self.dart_count
            k = 0
            for d in range(self.dart_count):
                if el[d] == -1:
                    el[d] = el[self.sigma1[d]] = k
                    k += 1
            return tuple(el)
        return self._cached("el", build)

    def num_vertices(self) -> int:
        return len(self.vertex_cycles())

    def num_edges(self) -> int:
        return self.dart_count // 2

    def num_boundaries(self) -> int:
        return len(self.face_cycles())

    def degrees(self) -> list[int]:
        return [len(c) for c in self.vertex_cycles()]

    def label(self, d: int) -> str:
        return self.labels[d] if self.labels is not None else str(d)

    def normalized(self) -> "FatGraph":
        """Relabel darts so that edge ``i`` owns darts ``2i`` and ``2i + 1``."""
        n = self.dart_count
        new = [-1] * n
        k = 0
        for d in range(n):
            if new[d] == -1:
                new[d] = k
                new[self.sigma1[d]] = k + 1
                k += 2
        return relabel(self, new)


# ---------------------------------------------------------------------------
# construction


def from_permutations(sigma0_cycles: Iterable[Sequence[Hashable]],
                      sigma1_pairs: Iterable[Sequence[Hashable]]) -> FatGraph:
    """
    Build a fat graph from vertex cycles and edge pairs over arbitrary dart labels.

    Pair ``i`` becomes darts ``2i`` (first element) and ``2i + 1`` (second).

    >>> G = from_permutations([["a", "b", "A", "B"]], [("a", "A"), ("b", "B")])
    >>> G.sigma0
    (2, 3, 1, 0)
    """
    index: dict = {}
    labels: list = []
    for pair in sigma1_pairs:
        if len(pair) != 2:
            raise FatGraphError(f"edge pair {pair!r} does not have two darts")
        a, b = pair
        if a == b:
            raise FixedPointInInvolution(a)
        for x in (a, b):
            if x in index:
                raise DuplicateDart(x)
            index[x] = len(labels)
            labels.append(x)
    n = len(labels)
    if n == 0:
        raise EmptyGraph()
    sigma0 = [-1] * n
    seen = set()
    for cyc in sigma0_cycles:
        cyc = list(cyc)
        for x in cyc:
            if x in seen:
                raise DuplicateDart(x)
            if x not in index:
                raise UncoveredDart(x)
            seen.add(x)
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            sigma0[index[x]] = index[y]
    for x in labels:
        if x not in seen:
            raise UncoveredDart(x)
    return FatGraph(sigma0, labels=[str(x) for x in labels])


def from_vertex_cycles(edges: int, sigma0_cycles: Iterable[Sequence[int]]) -> FatGraph:
    """Build from integer vertex cycles with the edge convention ``sigma1(2i) = 2i + 1``."""
    pairs = [(2 * i, 2 * i + 1) for i in range(edges)]
    G = from_permutations(sigma0_cycles, pairs)
    return FatGraph(G.sigma0, check=False)


def relabel(G: FatGraph, perm: Sequence[int]) -> FatGraph:
    """Conjugate ``G`` by the dart bijection ``perm`` (old dart ``d`` becomes ``perm[d]``)."""
    n = G.dart_count
    _check_perm(perm, n, "relabelling")
    s0 = [0] * n
    s1 = [0] * n
    for d in range(n):
        s0[perm[d]] = perm[G.sigma0[d]]
        s1[perm[d]] = perm[G.sigma1[d]]
    labels = None
    if G.labels is not None:
        labels = [""] * n
        for d in range(n):
            labels[perm[d]] = G.labels[d]
    return FatGraph(s0, s1, labels=labels, check=False)


def mirror(G: FatGraph) -> FatGraph:
    """Orientation reversal: every vertex rotation is inverted."""
    return FatGraph(perm_invert(G.sigma0), G.sigma1, labels=G.labels, check=False)


def disjoint_union(G: FatGraph, H: FatGraph) -> FatGraph:
    n = G.dart_count
    s0 = list(G.sigma0) + [n + d for d in H.sigma0]
    s1 = list(G.sigma1) + [n + d for d in H.sigma1]
    return FatGraph(s0, s1, check=False)


# ---------------------------------------------------------------------------
# invariants


def boundary_cycles(G: FatGraph) -> list[tuple[int, ...]]:
    """Cycles of ``d -> sigma0(sigma1(d))``; one per boundary component."""
    return list(G.face_cycles())


def is_connected(G: FatGraph) -> bool:
    n = G.dart_count
    seen = bytearray(n)
    seen[0] = 1
    todo = deque([0])
    count = 1
    while todo:
        d = todo.popleft()
        for e in (G.sigma0[d], G.sigma1[d]):
            if not seen[e]:
                seen[e] = 1
                count += 1
                todo.append(e)
    return count == n


def is_decorated(G: FatGraph) -> bool:
    return all(k >= 4 and k % 2 == 0 for k in G.degrees())


def opposite(G: FatGraph, d: int) -> int:
    """The dart facing ``d`` across its vertex, ``sigma0^(deg/2)(d)``."""
    return _opposite_table(G)[d]


def _opposite_table(G: FatGraph) -> tuple[int, ...]:
    def build():
        opp = [0] * G.dart_count
        for vi, cyc in enumerate(G.vertex_cycles()):
            k = len(cyc)
            if k < 4 or k % 2:
                raise NotDecorated(vi)
            h = k // 2
            for i, d in enumerate(cyc):
                opp[d] = cyc[(i + h) % k]
        return tuple(opp)
    return G._cached("opp", build)


def standard_cycles(G: FatGraph) -> StandardCycleDecomposition:
    """
    Curves of a decorated graph: cycles of ``d -> opposite(sigma1(d))``.

    Each curve shows up twice, once per direction; only the direction holding
    the smallest dart is kept.
    """
    def build():
        opp = _opposite_table(G)
        s1 = G.sigma1
        n = G.dart_count
        curve = [-1] * n
        cycles = []
        for d in range(n):
            if curve[d] != -1:
                continue
            k = len(cycles)
            cyc = []
            e = d
            while curve[e] == -1:
                cyc.append(e)
                curve[e] = k
                curve[s1[e]] = k
                e = opp[s1[e]]
            cycles.append(tuple(cyc))
        return StandardCycleDecomposition(tuple(cycles), tuple(curve))
    return G._cached("curves", build)


def invariants(G: FatGraph) -> SurfaceInvariants:
    if not is_connected(G):
        raise DisconnectedGraph()
    V = G.num_vertices()
    E = G.num_edges()
    b = G.num_boundaries()
    chi = V - E
    twice_g = 2 - b - chi
    if twice_g % 2 or twice_g < 0:
        raise NonIntegerGenus(f"2 - b - chi = {twice_g}")
    s = len(standard_cycles(G)) if is_decorated(G) else None
    return SurfaceInvariants(V, E, b, chi, twice_g // 2, s)
