"""
Explicit fat graphs realizing filling systems of maximum size.

Rotation tables are written with signed edge tokens: ``("e", 3, +1)`` is the
dart of edge ``e3`` pointing forward, ``("e", 3, -1)`` its reversal.  Darts are
labelled ``"e3"`` and ``"~e3"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import FatGraph, SurfaceInvariants, from_permutations, invariants
from .partitions import PartitionClass

Token = tuple[str, int, int]


class ConstructionMismatch(RuntimeError):
    def __init__(self, claimed, computed, detail=""):
        msg = f"construction gave {computed}, expected {claimed}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.claimed = claimed
        self.computed = computed


class OutOfRange(ValueError):
    pass


class ShapeInvariantViolated(ValueError):
    pass


def _dart_name(tok: Token) -> str:
    name, i, sign = tok
    return f"{name}{i}" if sign > 0 else f"~{name}{i}"


def from_rotation_table(rotations: list[list[Token]]) -> FatGraph:
    """Fat graph from per-vertex lists of signed edge tokens."""
    edges = []
    seen = set()
    for rot in rotations:
        for name, i, _ in rot:
            if (name, i) not in seen:
                seen.add((name, i))
                edges.append((name, i))
    edges.sort(key=lambda t: (t[0], t[1]))
    pairs = [(_dart_name((n, i, 1)), _dart_name((n, i, -1))) for n, i in edges]
    cycles = [[_dart_name(t) for t in rot] for rot in rotations]
    return from_permutations(cycles, pairs)


@dataclass
class ConstructionReport:
    graph: FatGraph
    claimed: SurfaceInvariants
    computed: SurfaceInvariants
    notes: list[str] = field(default_factory=list)
    validity: object = None

    @property
    def matches(self) -> bool:
        c, k = self.claimed, self.computed
        return (c.genus, c.boundary, c.curves) == (k.genus, k.boundary, k.curves)

    @property
    def valid(self) -> bool:
        return self.validity is not None and self.validity.is_valid

    def to_dict(self) -> dict:
        return {
            "claimed": self.claimed.to_dict(),
            "computed": self.computed.to_dict(),
            "matches": self.matches,
            "valid": self.valid,
            "notes": list(self.notes),
        }


def _claim(g: int, b: int, s: int) -> SurfaceInvariants:
    V = 2 * g + b - 2
    return SurfaceInvariants(V, 2 * V, b, -V, g, s)


def _report(G: FatGraph, claimed: SurfaceInvariants, notes, check: bool) -> ConstructionReport:
    from .validity import is_filling_system

    rep = ConstructionReport(G, claimed, invariants(G), list(notes))
    rep.validity = is_filling_system(G)
    if check and not (rep.matches and rep.valid):
        detail = "; ".join(f.describe() for f in rep.validity.failures)
        raise ConstructionMismatch(claimed.as_tuple(), rep.computed.as_tuple(), detail)
    return rep


# ---------------------------------------------------------------------------
# chains


def chain(n: int) -> FatGraph:
    """
    Chain of ``n`` curves where ``c_i`` crosses ``c_{i+1}`` exactly once.

    Vertex ``v_i`` (``1 <= i < n``) is the crossing of ``c_i`` and ``c_{i+1}``,
    with rotation ``(out c_i, out c_{i+1}, in c_i, in c_{i+1})``.
    """
    if n < 2:
        raise OutOfRange(f"chain needs at least 2 curves, got {n}")
    # slot -> token at each vertex, vertices 1..n-1
    rot = {i: [None] * 4 for i in range(1, n)}
    rot[1][0] = ("c", 1, 1)
    rot[1][2] = ("c", 1, -1)
    for i in range(2, n):
        # c_i leaves v_{i-1} through slot 1 and returns through slot 3
        rot[i - 1][1] = ("a", i, 1)
        rot[i][2] = ("a", i, -1)
        rot[i][0] = ("b", i, 1)
        rot[i - 1][3] = ("b", i, -1)
    rot[n - 1][1] = ("c", n, 1)
    rot[n - 1][3] = ("c", n, -1)
    return from_rotation_table([rot[i] for i in range(1, n)])


def central_with_tails(tails: list[int], flips: int = 0) -> FatGraph:
    """
    A central curve through ``len(tails)`` vertices with a chain hanging off each.

    The chain at the ``i``-th central vertex has ``tails[i]`` curves of length
    two followed by one curve of length one.  Bit ``i`` of ``flips`` swaps the
    two tail darts at the ``i``-th central vertex.
    """
    L = len(tails)
    if L < 1 or any(m < 0 for m in tails):
        raise ShapeInvariantViolated(f"bad tail list {tails}")
    rotations: list[list] = []
    for i in range(L):
        rotations.append([None] * 4)
    # central curve: leaves u_i through slot 0, enters u_{i+1} through slot 2
    for i in range(L):
        rotations[i][0] = ("C", i, 1)
        rotations[(i + 1) % L][2] = ("C", i, -1)
    for i, m in enumerate(tails):
        prev = rotations[i]
        for j in range(1, m + 1):
            w = [None] * 4
            rotations.append(w)
            prev[1] = ("x", 1000 * i + j, 1)
            w[2] = ("x", 1000 * i + j, -1)
            w[0] = ("y", 1000 * i + j, 1)
            prev[3] = ("y", 1000 * i + j, -1)
            prev = w
        prev[1] = ("z", i, 1)
        prev[3] = ("z", i, -1)
        if flips >> i & 1:
            r = rotations[i]
            r[1], r[3] = r[3], r[1]
    return from_rotation_table(rotations)


# ---------------------------------------------------------------------------
# printed examples


def _e(i, s=1):
    return ("e", i, s)


def _f(j, s=1):
    return ("f", j, s)


def gamma_example() -> FatGraph:
    """Minimal filling triple of genus 2: three vertices, curves of lengths 3, 2, 1."""
    return from_rotation_table([
        [_e(1), _f(2, -1), _e(3, -1), _f(1)],
        [_e(2), _f(1, -1), _e(1, -1), _f(2)],
        [_e(3), _f(3, -1), _e(2, -1), _f(3)],
    ])


def gamma_remark5() -> FatGraph:
    """Five-vertex graph with six curves and a single boundary component of length 20."""
    return from_rotation_table([
        [_e(1), _f(1, -1), _e(3, -1), _f(1)],
        [_e(2), _f(3, -1), _e(1, -1), _f(2)],
        [_e(3), _f(6, -1), _e(2, -1), _f(5)],
        [_f(2, -1), _f(4), _f(3), _f(4, -1)],
        [_f(5, -1), _f(7), _f(6), _f(7, -1)],
    ])


# ---------------------------------------------------------------------------
# maximum-size families


def _table_case1(g: int, k: int) -> tuple[list[list[Token]], list[str]]:
    """
    Rotation table for genus ``g`` with ``b = g - 1 + k`` boundaries, ``0 <= k <= g - 1``.

    ``k = 0`` is the ``b = g - 1`` graph.  The central ``e``-curve runs through
    ``v_1 .. v_{2g-2}``; odd vertices carry a loop, the first ``k`` even
    vertices carry a two-curve tail (vertices ``A_j``, ``B_j``) and the
    remaining even vertices a one-curve tail (vertex ``C_l``).
    """
    notes = []
    n_e = 2 * g - 2
    rot: dict[str, list[Token]] = {}

    def e_in(i):
        # incoming e dart at v_i is the reversal of e_{i-1}; v_1 closes the cycle
        return _e(n_e if i == 1 else i - 1, -1)

    for j in range(1, k + 1):
        loop = 6 * j - 5
        rot[f"v{2*j-1}"] = [_e(2 * j - 1), _f(loop, -1), e_in(2 * j - 1), _f(loop)]
        rot[f"v{2*j}"] = [_e(2 * j), _f(6 * j - 3, -1), e_in(2 * j), _f(6 * j - 4)]
        rot[f"A{j}"] = [_f(6 * j - 4, -1), _f(6 * j - 2), _f(6 * j - 3), _f(6 * j - 1, -1)]
        rot[f"B{j}"] = [_f(6 * j - 2, -1), _f(6 * j), _f(6 * j - 1), _f(6 * j, -1)]
    for l in range(1, g - k):
        base = 6 * k + 4 * l
        i = 2 * k + 2 * l
        rot[f"v{i-1}"] = [_e(i - 1), _f(base - 3, -1), e_in(i - 1), _f(base - 3)]
        rot[f"v{i}"] = [_e(i), _f(base - 1, -1), e_in(i), _f(base - 2)]
        rot[f"C{l}"] = [_f(base - 2, -1), _f(base), _f(base - 1), _f(base, -1)]
    if k:
        notes.append("even e-vertices v_2j (j<=k) read as (e_2j, ~f_{6j-3}, ~e_{2j-1}, f_{6j-4}); "
                     "the printed rows for v_2k and v_2k-1 both describe odd vertices")
        notes.append("loop at odd vertex v_2j-1 is f_{6j-5}; the printed v_2k row is its j+1 shift")
    if g - 1 - k > 0 and k:
        notes.append("last entry of the C_n row read as ~f_{6k+4n} (printed index m)")
    order = sorted(rot, key=lambda s: (s[0] != "v", s[0], int(s[1:])))
    return [rot[name] for name in order], notes


def _table_case2(g: int, b: int) -> tuple[list[list[Token]], list[str]]:
    """Rotation table for ``3 <= b <= g - 2``: central e-cycle of length ``2b``."""
    notes = [
        f"e-edges indexed 1..2b (2b = {2*b}); the printed range 1..2g-4 agrees only when b = g-2",
        "fourth entry of v_{2b+j} read as ~f_{4j} (printed f_{4j} twice)",
        "second entry of v_{3b-1+l} read as f_{4b+2l-2} (printed index 4i+2b-2)",
    ]
    rot = []

    def e_in(i):
        return _e(2 * b if i == 1 else i - 1, -1)

    for i in range(1, b + 1):
        rot.append([_e(2 * i - 1), _f(4 * i - 3, -1), e_in(2 * i - 1), _f(4 * i - 3)])
        rot.append([_e(2 * i), _f(4 * i - 1, -1), e_in(2 * i), _f(4 * i - 2)])
    for j in range(1, b):
        rot.append([_f(4 * j - 2, -1), _f(4 * j), _f(4 * j - 1), _f(4 * j, -1)])
    for l in range(1, 2 * g - 2 * b - 1):
        rot.append([_f(4 * b + 2 * l - 4, -1), _f(4 * b + 2 * l - 2), _f(4 * b + 2 * l - 3),
                    _f(4 * b + 2 * l - 1, -1)])
    rot.append([_f(4 * g - 6, -1), _f(4 * g - 4), _f(4 * g - 5), _f(4 * g - 4, -1)])
    return rot, notes


def gamma_g_b(g: int, b: int, check: bool = True) -> ConstructionReport:
    """
    Filling of genus ``g`` with ``b`` discs and ``2g + b - 1`` curves.

    Dispatch: ``b = 1`` chain of ``2g`` curves, ``b = 2`` chain of ``2g + 1``,
    ``g - 1 <= b <= 2g - 2`` the central-cycle family with ``k = b - g + 1``,
    ``3 <= b <= g - 2`` the long-tail family.
    """
    if g < 2 or not 1 <= b <= 2 * g - 2:
        raise OutOfRange(f"need g >= 2 and 1 <= b <= 2g - 2, got g={g}, b={b}")
    notes: list[str] = []
    if b == 1:
        G = chain(2 * g)
        notes.append(f"chain of {2*g} curves")
    elif b == 2:
        G = chain(2 * g + 1)
        notes.append(f"chain of {2*g+1} curves")
    elif b >= g - 1:
        table, notes = _table_case1(g, b - g + 1)
        G = from_rotation_table(table)
    else:
        table, notes = _table_case2(g, b)
        G = from_rotation_table(table)
    return _report(G, _claim(g, b, 2 * g + b - 1), notes, check)


# ---------------------------------------------------------------------------
# orbit representatives


class UnrealizableShape(ShapeInvariantViolated):
    """The shape satisfies the counting invariants but has no chain layout."""


@dataclass(frozen=True)
class OrbitShape:
    """
    Layout label of a maximum-size filling: boundary count ``b`` and a
    partition with ``s`` parts.

    The central curve has length ``s`` when ``b <= 2`` and ``2b`` otherwise;
    see :func:`orbit_tails` for how parts become chain lengths.
    """

    b: int
    s: int
    partition: PartitionClass

    @property
    def central_length(self) -> int:
        return self.s if self.b <= 2 else 2 * self.b

    def validate(self, g: int) -> None:
        b, s, p = self.b, self.s, self.partition
        if p.length != s:
            raise ShapeInvariantViolated(f"partition {p} should have {s} parts")
        if b == 1:
            ok = 2 <= s <= g and p.total == g - s
        elif b == 2:
            ok = 2 <= s <= g + 1 and p.total == g - s + 1
        elif 3 <= b <= g - 2:
            ok = s == b and p.total == g - 1
        else:
            ok = False
        if not ok:
            raise ShapeInvariantViolated(f"shape b={b}, s={s}, partition {p} is not admissible for g={g}")

    def __str__(self):
        return f"b={self.b} s={self.s} partition=({self.partition})"


def orbit_tails(shape: OrbitShape) -> list[int]:
    """
    Number of length-two curves in the chain at each central vertex.

    ``b = 1``: the largest part ``N`` gives an even chain ``2N``, every other
    part an odd chain ``2N + 1``.  ``b = 2``: the two largest parts give even
    chains.  ``b >= 3``: central vertices alternate a bare loop and an odd chain
    ``2N - 1``, so every part must be positive.
    """
    N = shape.partition.parts
    if shape.b == 1:
        return [2 * N[0]] + [2 * x + 1 for x in N[1:]]
    if shape.b == 2:
        return [2 * N[0], 2 * N[1]] + [2 * x + 1 for x in N[2:]]
    if min(N) == 0:
        raise UnrealizableShape(
            f"partition ({shape.partition}) has a zero part; an odd chain of 2N-1 curves needs N >= 1")
    tails = []
    for x in N:
        tails += [0, 2 * x - 1]
    return tails


def _layouts(shape: OrbitShape, tails: list[int]):
    """Candidate tail orders around the central curve, preferred first."""
    if shape.b != 2 or len(tails) <= 2:
        yield tails, "standard layout"
        return
    evens, odds = tails[:2], tails[2:]
    L = len(tails)
    seconds = sorted(range(1, L), key=lambda p: (abs(p - L // 2), p))
    for p in seconds:
        layout = [None] * L
        layout[0], layout[p] = evens
        it = iter(odds)
        layout = [x if x is not None else next(it) for x in layout]
        yield layout, f"even chains at central positions 0 and {p}"


def orbit_representative(g: int, shape: OrbitShape, check: bool = True) -> ConstructionReport:
    """
    Filling of genus ``g`` with ``shape.b`` discs and ``2g + b - 1`` curves laid
    out as a central curve with a chain of curves hanging off every vertex.

    Layouts and single attachment flips are tried in a fixed order until the
    result verifies; the accepted layout is recorded in the report notes.
    """
    shape.validate(g)
    tails = orbit_tails(shape)
    claimed = _claim(g, shape.b, 2 * g + shape.b - 1)
    notes = [f"central length {shape.central_length}, chain sizes {tails}"]
    last = None
    L = len(tails)
    for layout, why in _layouts(shape, tails):
        for flips in [0] + [1 << i for i in range(L)]:
            G = central_with_tails(layout, flips)
            rep = _report(G, claimed, notes, check=False)
            if rep.matches and rep.valid:
                rep.notes.append(why if not flips else f"{why}, flipped attachment {flips.bit_length() - 1}")
                rep.notes.append(f"layout {layout}")
                return rep
            if last is None:
                last = rep
            notes_retry = f"{why}, flips {flips:b}: rejected"
            notes.append(notes_retry)
    if check:
        detail = "; ".join(f.describe() for f in last.validity.failures)
        raise ConstructionMismatch(claimed.as_tuple(), last.computed.as_tuple(), detail)
    last.notes = notes
    return last


def orbit_shapes_for(g: int, b: int) -> list[OrbitShape]:
    from .partitions import enumerate_partitions, orbit_shapes

    shapes = []
    for s, n, k in orbit_shapes(g, b):
        for p in enumerate_partitions(n, k):
            shapes.append(OrbitShape(b, k, p))
    return shapes


@dataclass
class OrbitCensus:
    """Representatives built for every shape of one ``(g, b)``."""

    g: int
    b: int
    expected: int
    built: list[tuple[OrbitShape, ConstructionReport]] = field(default_factory=list)
    failed: list[tuple[OrbitShape, str]] = field(default_factory=list)
    collisions: list[tuple[OrbitShape, OrbitShape]] = field(default_factory=list)
    distinct: int = 0
    gamma_is_new: bool | None = None

    @property
    def complete(self) -> bool:
        """Every shape built, no two isomorphic, and the count equals the bound."""
        return not self.failed and not self.collisions and self.distinct == self.expected

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "b": self.b,
            "expected": self.expected,
            "built": len(self.built),
            "distinct": self.distinct,
            "failed": [{"shape": str(s), "reason": r} for s, r in self.failed],
            "collisions": [[str(s), str(t)] for s, t in self.collisions],
            "gamma_is_new": self.gamma_is_new,
            "complete": self.complete,
        }


def orbit_census(g: int, b: int, compare_gamma: bool = True) -> OrbitCensus:
    from .isomorphism import canonical_form
    from .partitions import orbit_lower_bound

    census = OrbitCensus(g, b, orbit_lower_bound(g, b).total)
    first_by_code: dict = {}
    for shape in orbit_shapes_for(g, b):
        try:
            rep = orbit_representative(g, shape)
        except (ShapeInvariantViolated, ConstructionMismatch) as exc:
            census.failed.append((shape, str(exc)))
            continue
        census.built.append((shape, rep))
        code = canonical_form(rep.graph)
        if code in first_by_code:
            census.collisions.append((first_by_code[code], shape))
        else:
            first_by_code[code] = shape
    census.distinct = len(first_by_code)
    if compare_gamma:
        census.gamma_is_new = canonical_form(gamma_g_b(g, b).graph) not in first_by_code
    return census
