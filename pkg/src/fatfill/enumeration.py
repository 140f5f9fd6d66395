"""
Exhaustive generation of connected 4-regular fat graphs up to isomorphism.

Vertex ``k`` owns darts ``4k .. 4k+3`` with rotation ``(4k, 4k+1, 4k+2, 4k+3)``,
so only the edge matching ``sigma1`` is searched.  The lowest unmatched dart
of an already reached vertex is matched either to a later unmatched dart of a
reached vertex or to the first dart of the next unreached vertex.  Every
completed matching is therefore labelled in breadth-first order from dart 0,
i.e. each rooted map is produced exactly once; a leaf is kept only when root 0
gives the smallest breadth-first code, which leaves one matching per
isomorphism class (orientation preserving).  Classes are merged under
reflection afterwards.

Partial curve and face counts are kept in union-find structures with undo and
prune branches that can no longer meet the requested counts.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import FatGraph, invariants
from .isomorphism import CanonicalCode, bfs_code, canonical_form
from .validity import ValidityReport, is_filling_system

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
MAX_VERTICES = 8


class BudgetExceeded(RuntimeError):
    def __init__(self, census):
        super().__init__(f"search budget of {census.spec.budget} expansions exhausted")
        self.census = census


@dataclass(frozen=True)
class SearchSpec:
    vertices: int
    genus: int | None = None
    boundary: int | None = None
    curves: int | None = None
    require_valid_filling: bool = False
    budget: int = DEFAULT_BUDGET
    allow_reflection: bool = True
    prune: bool = True
    allow_large: bool = False

    def __post_init__(self):
        V = self.vertices
        if V < 1:
            raise ValueError("need at least one vertex")
        if V > MAX_VERTICES and not self.allow_large:
            raise ValueError(f"{V} vertices is beyond the guard of {MAX_VERTICES}; pass allow_large")
        if self.genus is not None and self.boundary is not None:
            if V != 2 * self.genus + self.boundary - 2:
                raise ValueError(f"a 4-regular graph of genus {self.genus} with {self.boundary} "
                                 f"boundaries has {2*self.genus+self.boundary-2} vertices, not {V}")

    @property
    def target_boundary(self) -> int | None:
        # V - 2V = 2 - 2g - b
        if self.boundary is not None:
            return self.boundary
        if self.genus is not None:
            return self.vertices + 2 - 2 * self.genus
        return None

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "genus": self.genus,
            "boundary": self.boundary,
            "curves": self.curves,
            "require_valid_filling": self.require_valid_filling,
            "budget": self.budget,
            "allow_reflection": self.allow_reflection,
            "prune": self.prune,
        }


@dataclass
class CensusEntry:
    graph: FatGraph
    code: CanonicalCode
    report: ValidityReport

    def to_dict(self) -> dict:
        G = self.graph
        return {
            "code": self.code.hexdigest(),
            "edges": G.num_edges(),
            "sigma0": [list(c) for c in G.vertex_cycles()],
            "report": self.report.to_dict(),
        }


@dataclass
class CensusResult:
    spec: SearchSpec
    representatives: list[CensusEntry] = field(default_factory=list)
    expanded: int = 0
    pruned: int = 0
    found: int = 0              # rooted leaves meeting the count filters
    oriented_classes: int = 0   # classes without reflections, before validity filtering
    reflection_classes: int = 0
    exhausted: bool = True

    @property
    def codes(self) -> list[CanonicalCode]:
        return [e.code for e in self.representatives]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "counters": {
                "expanded": self.expanded,
                "pruned": self.pruned,
                "found": self.found,
                "oriented_classes": self.oriented_classes,
                "reflection_classes": self.reflection_classes,
            },
            "exhausted": self.exhausted,
            "representatives": [e.to_dict() for e in self.representatives],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# search


class _Search:
    def __init__(self, spec: SearchSpec, budget: int):
        V = self.V = spec.vertices
        n = self.n = 4 * V
        self.s0 = [4 * (d // 4) + (d + 1) % 4 for d in range(n)]
        self.s1 = [-1] * n
        self.nv = 1
        self.prune = spec.prune
        self.target_curves = spec.curves
        self.target_faces = spec.target_boundary
        self.budget = budget
        self.expanded = 0
        self.pruned = 0
        self.out_of_budget = False
        self.leaves: list[tuple[int, ...]] = []
        # curves: union-find over strands (dart d lies on strand 2*(d//4) + d%2)
        self.cp = list(range(2 * V))
        self.cs = [1] * (2 * V)
        self.c_comps = 2 * V
        self.c_closed = 0
        # faces: union-find over darts along d -> sigma0(sigma1(d))
        self.fp = list(range(n))
        self.fs = [1] * n
        self.f_comps = n
        self.f_closed = 0
        self.undo: list = []

    # union-find with undo; no path compression
    @staticmethod
    def _find(p, x):
        while p[x] != x:
            x = p[x]
        return x

    def _link_curve(self, d, e):
        p = self.cp
        a = self._find(p, 2 * (d >> 2) + (d & 1))
        b = self._find(p, 2 * (e >> 2) + (e & 1))
        if a == b:
            self.c_closed += 1
            self.undo.append(("cc",))
        else:
            if self.cs[a] < self.cs[b]:
                a, b = b, a
            p[b] = a
            self.cs[a] += self.cs[b]
            self.c_comps -= 1
            self.undo.append(("cu", a, b))

    def _link_face(self, x, y):
        p = self.fp
        a = self._find(p, x)
        b = self._find(p, y)
        if a == b:
            self.f_closed += 1
            self.undo.append(("fc",))
        else:
            if self.fs[a] < self.fs[b]:
                a, b = b, a
            p[b] = a
            self.fs[a] += self.fs[b]
            self.f_comps -= 1
            self.undo.append(("fu", a, b))

    def _rollback(self, mark):
        u = self.undo
        while len(u) > mark:
            op = u.pop()
            t = op[0]
            if t == "cc":
                self.c_closed -= 1
            elif t == "cu":
                _, a, b = op
                self.cp[b] = b
                self.cs[a] -= self.cs[b]
                self.c_comps += 1
            elif t == "fc":
                self.f_closed -= 1
            else:
                _, a, b = op
                self.fp[b] = b
                self.fs[a] -= self.fs[b]
                self.f_comps += 1

    def _match(self, d, e):
        s0 = self.s0
        self.s1[d] = e
        self.s1[e] = d
        self._link_curve(d, e)
        self._link_face(d, s0[e])
        self._link_face(e, s0[d])

    def _feasible(self) -> bool:
        tc = self.target_curves
        if tc is not None:
            # open strand paths can at best each close on their own
            if self.c_closed > tc or self.c_comps < tc:
                return False
        tf = self.target_faces
        if tf is not None:
            if self.f_closed > tf or self.f_comps < tf:
                return False
        return True

    def _leaf_ok(self) -> bool:
        tc, tf = self.target_curves, self.target_faces
        if tc is not None and self.c_closed != tc:
            return False
        if tf is not None and self.f_closed != tf:
            return False
        return True

    def run(self, start: int = 0):
        self._dfs(start)

    def _dfs(self, d):
        s1 = self.s1
        n_reached = 4 * self.nv
        while d < n_reached and s1[d] != -1:
            d += 1
        if d == n_reached:
            if self.nv == self.V and self._leaf_ok():
                self.leaves.append(tuple(s1))
            return
        self.expanded += 1
        if self.expanded > self.budget:
            self.out_of_budget = True
            return
        cands = [e for e in range(d + 1, n_reached) if s1[e] == -1]
        if self.nv < self.V:
            cands.append(n_reached)
        for e in cands:
            mark = len(self.undo)
            new_vertex = e == n_reached
            if new_vertex:
                self.nv += 1
            self._match(d, e)
            if not self.prune or self._feasible():
                self._dfs(d + 1)
            else:
                self.pruned += 1
            s1[d] = s1[e] = -1
            self._rollback(mark)
            if new_vertex:
                self.nv -= 1
            if self.out_of_budget:
                return


def _root_is_minimal(s0, s1) -> bool:
    """Whether root 0 gives the smallest breadth-first code among all roots."""
    code0, _ = bfs_code(s0, s1, 0)
    for r in range(1, len(s0)):
        res = bfs_code(s0, s1, r, code0)
        if res is not None and res[0] < code0:
            return False
    return True


def _subtree_task(args):
    spec, prefix, budget = args
    S = _Search(spec, budget)
    d = 0
    for a, b in prefix:
        if b == 4 * S.nv:
            S.nv += 1
        S._match(a, b)
        d = a + 1
    if not spec.prune or S._feasible():
        S.run(d)
    kept = [s1 for s1 in S.leaves if _root_is_minimal(S.s0, s1)]
    return kept, S.expanded, S.pruned, len(S.leaves), S.out_of_budget


def _top_prefixes(spec: SearchSpec):
    """First-level branches: partner of dart 0."""
    V = spec.vertices
    out = [[(0, e)] for e in range(1, 4)]
    if V > 1:
        out.append([(0, 4)])
    return out


def enumerate_graphs(spec: SearchSpec, jobs: int = 1) -> CensusResult:
    """
    Census of connected 4-regular fat graphs with ``spec.vertices`` vertices
    meeting the requested genus, boundary and curve counts.

    Representatives are sorted by canonical code; their number does not depend
    on ``jobs``.
    """
    result = CensusResult(spec)
    prefixes = _top_prefixes(spec)
    if jobs > 1:
        # workers cannot share a counter; each gets the whole budget and the
        # summed count is checked below
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outs = list(ex.map(_subtree_task, [(spec, p, spec.budget) for p in prefixes]))
    else:
        outs = []
        left = spec.budget
        for p in prefixes:
            out = _subtree_task((spec, p, left))
            outs.append(out)
            left -= out[1]
            if out[4]:
                break

    s0 = [4 * (d // 4) + (d + 1) % 4 for d in range(4 * spec.vertices)]
    oriented = []
    for kept, expanded, pruned, found, oob in outs:
        result.expanded += expanded
        result.pruned += pruned
        result.found += found
        result.exhausted &= not oob
        oriented.extend(kept)
    if result.expanded > spec.budget:
        result.exhausted = False

    result.oriented_classes = len(oriented)
    by_code: dict[CanonicalCode, FatGraph] = {}
    for s1 in oriented:
        G = FatGraph(s0, s1, check=False)
        code = canonical_form(G, spec.allow_reflection)
        if code not in by_code:
            by_code[code] = G
    reflect_codes = {canonical_form(G, True) for G in by_code.values()}
    result.reflection_classes = len(reflect_codes)

    for code in sorted(by_code):
        G = by_code[code].normalized()
        rep = is_filling_system(G)
        if not _matches_spec(G, spec, rep):
            raise AssertionError(f"generator emitted a graph outside the spec: {G!r}")
        if spec.require_valid_filling and not rep.is_valid:
            continue
        result.representatives.append(CensusEntry(G, code, rep))
    log.info("census V=%d: %d expanded, %d pruned, %d classes", spec.vertices,
             result.expanded, result.pruned, len(by_code))
    return result


def _matches_spec(G: FatGraph, spec: SearchSpec, rep: ValidityReport) -> bool:
    inv = invariants(G)
    if inv.vertices != spec.vertices or any(k != 4 for k in G.degrees()):
        return False
    if spec.genus is not None and inv.genus != spec.genus:
        return False
    if spec.boundary is not None and inv.boundary != spec.boundary:
        return False
    if spec.curves is not None and inv.curves != spec.curves:
        return False
    return True


def max_filling_size(g: int, b: int, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                     allow_large: bool = False) -> tuple[int, CensusResult]:
    """
    Largest number of curves in a valid filling of genus ``g`` whose
    complement has ``b`` discs, searched downward from ``2g + b - 1``.  Returns ``(size, census at that size)``;
    size 0 means no filling was found at any size.
    """
    V = 2 * g + b - 2
    last = None
    for s in range(2 * g + b - 1, 0, -1):
        spec = SearchSpec(V, genus=g, boundary=b, curves=s, require_valid_filling=True,
                          budget=budget, allow_large=allow_large)
        census = enumerate_graphs(spec, jobs=jobs)
        if not census.exhausted:
            raise BudgetExceeded(census)
        if census.representatives:
            return s, census
        last = census
    return 0, last


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    val = os.environ.get("FATFILL_BUDGET")
    return int(val) if val else default
