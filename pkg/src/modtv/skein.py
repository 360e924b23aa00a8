"""Dual colored graphs of decorated surfaces and intersection pairings.

The dual graph has one vertex per triangle and one edge per primal edge.
The dual edge crossing primal edge ``k`` is stored with a *head side*:
an oriented primal edge ``(k, s)`` such that the dual edge points into the
triangle lying to the left of ``(k, s)``.  Walking along ``(k, t)`` then
crosses the dual edge positively exactly when ``t == s``, because the
walking direction followed by the dual direction is a positive frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .decor import GroupoidRep, IdealSurfaceTriangulation, OEdge, validate_rep
from .errors import InvariantViolation
from .gcore import FiniteGroup


@dataclass(frozen=True)
class DualEdge:
    crosses: int
    head_side: int  # +1 or -1, see module docstring
    color: Hashable

    def tail_head(self, tri: IdealSurfaceTriangulation) -> tuple[int, int]:
        k, s = self.crosses, self.head_side
        return tri.triangle_of((k, -s)), tri.triangle_of((k, s))


@dataclass(frozen=True, eq=False)
class GSkein:
    """A G-colored graph dual to the triangulation; colors are group element indices."""

    tri: IdealSurfaceTriangulation
    group: FiniteGroup
    edges: tuple[DualEdge, ...]

    def __post_init__(self):
        seen = sorted(e.crosses for e in self.edges)
        if seen != list(range(len(self.tri.edges))):
            raise InvariantViolation("every primal edge must be crossed by exactly one dual edge", seen)

    def dual_edge(self, k: int) -> DualEdge:
        return self.edges[k] if self.edges[k].crosses == k else next(e for e in self.edges if e.crosses == k)

    def reversed_edge(self, k: int) -> "GSkein":
        """Same skein with dual edge ``k`` reversed (and its color inverted)."""
        out = []
        for e in self.edges:
            if e.crosses == k:
                e = DualEdge(k, -e.head_side, self.group.inv[e.color])
            out.append(e)
        return GSkein(self.tri, self.group, tuple(out))


def dual_graph_rep(rho: GroupoidRep) -> GSkein:
    """The dual skein of a representation: the edge crossing ``k`` carries ``rho(k)``."""
    return GSkein(rho.tri, rho.group, tuple(DualEdge(k, 1, g) for k, g in enumerate(rho.labels)))


def crossings(path: Sequence[OEdge], skein_edges: Callable[[int], DualEdge]) -> list[tuple[Hashable, int]]:
    return [(d.color, oe[1] * d.head_side) for oe in path for d in (skein_edges(oe[0]),)]


def intersect_path(path: Sequence[OEdge], t: GSkein) -> int:
    """Ordered product of crossing colors, each raised to its crossing sign."""
    if path:
        t.tri.check_path(path)
    G = t.group
    out = G.identity
    for color, sign in crossings(path, t.dual_edge):
        out = G.mul(out, color if sign > 0 else G.inv[color])
    return out


def skein_to_rep(t: GSkein) -> GroupoidRep:
    """Inverse of :func:`dual_graph_rep`: pair the skein with every primal edge."""
    return validate_rep(t.tri, {k: intersect_path([(k, 1)], t) for k in range(len(t.tri.edges))}, t.group)


@dataclass(frozen=True, eq=False)
class ColoredSkein:
    """Dual graph colored by object symbols, with a degree map into G."""

    tri: IdealSurfaceTriangulation
    group: FiniteGroup
    edges: tuple[DualEdge, ...]
    degree: Callable[[Hashable], int]

    def dual_edge(self, k: int) -> DualEdge:
        return next(e for e in self.edges if e.crosses == k)

    def underlying(self) -> GSkein:
        return GSkein(self.tri, self.group,
                      tuple(DualEdge(e.crosses, e.head_side, self.degree(e.color)) for e in self.edges))


def intersect_colored(path: Sequence[OEdge], t: ColoredSkein) -> tuple[list[tuple[Hashable, int]], int]:
    """Tensor word of crossed objects with +-1 exponents (-1 meaning the dual object), and its degree.

    An empty word stands for the unit object, of degree the identity.
    """
    if path:
        t.tri.check_path(path)
    word = crossings(path, t.dual_edge)
    G = t.group
    deg = G.identity
    for sym, sign in word:
        g = t.degree(sym)
        deg = G.mul(deg, g if sign > 0 else G.inv[g])
    return word, deg


def format_word(word: Sequence[tuple[Hashable, int]]) -> str:
    if not word:
        return "1"
    return " (x) ".join(f"{s}" if e > 0 else f"{s}*" for s, e in word)
