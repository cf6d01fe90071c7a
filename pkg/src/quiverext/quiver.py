"""Quivers, integer weight vectors, and paths.

Grading groups are free abelian Z^k (k = 0 gives the trivial group), so a
weight is a length-k tuple of ints.  Paths store their arrows in function
composition order: the RIGHTMOST arrow acts first, matching the convention
that the product p*q means "first q, then p".
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite quiver: ordered vertices and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        if not self.vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset:
                raise ValueError("arrow %s has unknown source %r" % (a.name, a.source))
            if a.target not in vset:
                raise ValueError("arrow %s has unknown target %r" % (a.name, a.target))
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.arrows_from = {v: [] for v in self.vertices}
        self.arrows_into = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_from[a.source].append(a)
            self.arrows_into[a.target].append(a)

    def opposite(self):
        """Same vertex and arrow names, every arrow reversed."""
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))


def wzero(k):
    return (0,) * k


def wadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def wneg(a):
    return tuple(-x for x in a)


def wsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Path:
    """A path in a quiver, arrows in composition order (rightmost first).

    Length-0 paths are vertices; their weight is the identity (zero vector).
    """

    arrows: tuple
    source: str
    target: str
    weight: tuple

    @property
    def length(self):
        return len(self.arrows)

    @property
    def is_vertex(self):
        return not self.arrows

    def name(self):
        if self.is_vertex:
            return "e_" + self.source
        return "".join(self.arrows)

    def __repr__(self):
        return self.name()


def vertex_path(vertex, k):
    return Path((), vertex, vertex, wzero(k))


def arrow_path(arrow, weight):
    return Path((arrow.name,), arrow.source, arrow.target, tuple(weight))


def compose(p, q):
    """The path p*q: first traverse q, then p.  Requires q.target == p.source."""
    if q.target != p.source:
        raise ValueError("paths do not compose: %r * %r" % (p, q))
    if p.is_vertex:
        return q
    if q.is_vertex:
        return p
    return Path(p.arrows + q.arrows, q.source, p.target, wadd(p.weight, q.weight))


def interior_vertices(path, quiver):
    """Vertices strictly inside the walk of a path (length >= 2 to be nonempty)."""
    inner = []
    arrows = list(reversed(path.arrows))  # traversal order
    for name in arrows[:-1]:
        inner.append(quiver.arrow_by_name[name].target)
    return inner
