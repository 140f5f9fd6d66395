"""
Canonical forms and isomorphism of fat graphs.

From a root dart the darts are relabelled breadth first: the root vertex is
labelled along its rotation starting at the root, then darts are scanned in
label order and the vertex across each edge, when new, is labelled along its
rotation starting at the arriving dart.  The code lists, in label order, the
label across each edge (preceded by the degree whenever a vertex is first
reached).  The canonical code is the smallest code over all roots, and over
both orientations when reflections are allowed.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import Sequence

from .core import DisconnectedGraph, FatGraph, is_connected, perm_invert


@dataclass(frozen=True, order=True)
class CanonicalCode:
    values: tuple[int, ...]
    allow_reflection: bool = True

    def to_bytes(self) -> bytes:
        return struct.pack(f">?{len(self.values)}H", self.allow_reflection, *self.values)

    def hexdigest(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()

    def __str__(self):
        return self.hexdigest()


def bfs_code(s0: Sequence[int], s1: Sequence[int], root: int, bound=None):
    """
    Code of the breadth-first relabelling from ``root``.

    Returns ``(code, labels)``, or ``None`` as soon as the code is known to be
    strictly larger than ``bound``.  ``labels[d]`` is the new label of ``d``.
    """
    n = len(s0)
    lab = [-1] * n
    order = []
    code = []
    # cmp: 0 while equal to the bound prefix, -1 once smaller
    cmp = 0 if bound is not None else -1

    def emit(x):
        nonlocal cmp
        if cmp == 0:
            k = len(code)
            b = bound[k]
            if x > b:
                return False
            if x < b:
                cmp = -1
        code.append(x)
        return True

    def take_vertex(d):
        x = d
        k = 0
        while True:
            lab[x] = len(order)
            order.append(x)
            k += 1
            x = s0[x]
            if x == d:
                return k

    if not emit(take_vertex(root)):
        return None
    i = 0
    while i < len(order):
        p = s1[order[i]]
        if lab[p] == -1:
            if not emit(len(order)):
                return None
            if not emit(take_vertex(p)):
                return None
        elif not emit(lab[p]):
            return None
        i += 1
    if len(order) != n:
        raise DisconnectedGraph()
    return tuple(code), lab


def _canonical(G: FatGraph, allow_reflection: bool):
    if not is_connected(G):
        raise DisconnectedGraph()
    s1 = G.sigma1
    modes = [(False, G.sigma0)]
    if allow_reflection:
        modes.append((True, tuple(perm_invert(G.sigma0))))
    best = None
    best_lab = None
    best_mirror = False
    for mirrored, s0 in modes:
        for r in range(G.dart_count):
            res = bfs_code(s0, s1, r, best)
            if res is None:
                continue
            code, lab = res
            if best is None or code < best:
                best, best_lab, best_mirror = code, lab, mirrored
    return best, best_lab, best_mirror


def canonical_form(G: FatGraph, allow_reflection: bool = True) -> CanonicalCode:
    """
    >>> from fatfill.constructions import chain
    >>> canonical_form(chain(2)).values
    (4, 2, 3, 0, 1)
    """
    code, _, _ = _canonical(G, allow_reflection)
    return CanonicalCode(code, allow_reflection)


class IsomorphismWitness:
    """Dart bijection ``w`` with ``w o sigma1 = sigma1' o w`` and
    ``w o sigma0 = sigma0'^(+-1) o w`` (the sign recorded in ``reverses_orientation``)."""

    def __init__(self, mapping, reverses_orientation):
        self.mapping = tuple(mapping)
        self.reverses_orientation = reverses_orientation

    def check(self, G: FatGraph, H: FatGraph) -> bool:
        w = self.mapping
        t0 = perm_invert(H.sigma0) if self.reverses_orientation else H.sigma0
        return (sorted(w) == list(range(H.dart_count))
                and all(w[G.sigma1[d]] == H.sigma1[w[d]] for d in range(G.dart_count))
                and all(w[G.sigma0[d]] == t0[w[d]] for d in range(G.dart_count)))


def isomorphism(G: FatGraph, H: FatGraph, allow_reflection: bool = True) -> IsomorphismWitness | None:
    """A verified isomorphism from ``G`` to ``H``, or ``None``."""
    if G.dart_count != H.dart_count:
        if not is_connected(G) or not is_connected(H):
            raise DisconnectedGraph()
        return None
    cg, lg, mg = _canonical(G, allow_reflection)
    ch, lh, mh = _canonical(H, allow_reflection)
    if cg != ch:
        return None
    inv_h = perm_invert(lh)
    w = IsomorphismWitness([inv_h[lg[d]] for d in range(G.dart_count)], mg != mh)
    if not w.check(G, H):
        raise AssertionError("canonical codes agree but the witness does not conjugate")
    return w


def are_isomorphic(G: FatGraph, H: FatGraph, allow_reflection: bool = True) -> bool:
    return isomorphism(G, H, allow_reflection) is not None
