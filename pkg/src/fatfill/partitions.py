"""Integer partitions into a bounded number of parts, and orbit lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class PartitionClass:
    """Weakly decreasing tuple of non-negative integers (zero padded)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"not a weakly decreasing non-negative sequence: {p}")

    @classmethod
    def from_parts(cls, parts) -> "PartitionClass":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


@lru_cache(maxsize=None)
def count_partitions_at_most(n: int, k: int) -> int:
    """Number of partitions of ``n`` into at most ``k`` positive parts.

    >>> count_partitions_at_most(4, 4)
    5
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if n == 0:
        return 1
    if k == 0:
        return 0
    if k > n:
        return count_partitions_at_most(n, n)
    return count_partitions_at_most(n, k - 1) + count_partitions_at_most(n - k, k)


def enumerate_partitions(n: int, k: int) -> list[PartitionClass]:
    """All partitions of ``n`` into at most ``k`` parts, padded to length ``k``,
    in lexicographically decreasing order of parts.

    >>> [str(p) for p in enumerate_partitions(2, 3)]
    ['2,0,0', '1,1,0']
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    out = []

    def rec(rest, maxpart, acc):
        if len(acc) == k:
            if rest == 0:
                out.append(PartitionClass(tuple(acc)))
            return
        for x in range(min(rest, maxpart), -1, -1):
            rec(rest - x, x, acc + [x])

    rec(n, n, [])
    return out


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class OrbitBound:
    g: int
    b: int
    counts: tuple[tuple[int, int], ...]   # (s, number of classes)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def bound(self) -> int:
        return self.total + 1

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "b": self.b,
            "counts": [{"s": s, "classes": c} for s, c in self.counts],
            "total": self.total,
            "bound": self.bound,
        }


def orbit_shapes(g: int, b: int) -> list[tuple[int, int, int]]:
    """``(s, n, k)`` triples: central parameter ``s`` and partitions of ``n`` into ``k`` parts."""
    if g < 2:
        raise OutOfRange(f"genus must be at least 2, got {g}")
    if b == 1:
        return [(s, g - s, s) for s in range(2, g + 1)]
    if b == 2:
        return [(s, g - s + 1, s) for s in range(2, g + 2)]
    if 3 <= b <= g - 2:
        return [(b, g - 1, b)]
    raise OutOfRange(f"orbit bound needs b = 1, b = 2 or 3 <= b <= g - 2; got g={g}, b={b}")


def orbit_lower_bound(g: int, b: int) -> OrbitBound:
    """
    >>> orbit_lower_bound(5, 1).bound
    7
    """
    counts = tuple((s, count_partitions_at_most(n, k)) for s, n, k in orbit_shapes(g, b))
    return OrbitBound(g, b, counts)
