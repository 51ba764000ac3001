"""Newton polytopes of finite lattice point sets and their face lattices.

Faces are described by the generators they contain.  A face is the set on
which a linear functional attains its *minimum*; facet normals are inner
normals, primitive in the dual lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple[int, ...]

MAX_DIMENSION = 6


class PolytopeError(ValueError):
    pass


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Sequence[Fraction | int]) -> tuple[int, ...]:
    den = reduce(math.lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    return tuple(x // g for x in ints) if g else tuple(ints)


def nullspace(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Integer (primitive) basis of the rational nullspace of ``rows``."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][free]
        basis.append(_primitive(v))
    return basis


def rank(rows: Sequence[Sequence[int]], n: int) -> int:
    return n - len(nullspace(rows, n)) if rows else 0


def affine_dimension(points: Iterable[Point]) -> int:
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    return rank(diffs, len(base)) if diffs else 0


@dataclass(frozen=True, eq=False)
class NewtonPolytope:
    """Convex hull of a finite point set in Z^n.

    ``facets`` holds (inner normal, offset) pairs with ``<normal, p> >= offset``
    for every generator.  When the hull is not full-dimensional the normals
    are taken inside the direction space of its affine hull, and
    ``equations`` lists integer normals of that hull.
    """

    ambient_dim: int
    generators: frozenset[Point]
    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[Point, int], ...]
    equations: tuple[Point, ...]
    _faces: list = field(default_factory=list, repr=False, compare=False)

    def minimum(self, v: Sequence[int]) -> int:
        return min(_dot(v, p) for p in self.generators)

    def argmin(self, v: Sequence[int]) -> frozenset[Point]:
        m = self.minimum(v)
        return frozenset(p for p in self.generators if _dot(v, p) == m)

    def contains(self, point: Sequence[int]) -> bool:
        """Membership of a rational point in the hull."""
        base = next(iter(self.generators))
        if any(_dot(e, point) != _dot(e, base) for e in self.equations):
            return False
        return all(_dot(nrm, point) >= off for nrm, off in self.facets)

    def faces(self) -> list[Face]:
        if not self._faces:
            self._faces.extend(_enumerate_faces(self))
        return list(self._faces)


@dataclass(frozen=True, eq=False)
class Face:
    polytope: NewtonPolytope
    dim: int
    support_points: frozenset[Point]
    defining_normal: Point

    @property
    def is_improper(self) -> bool:
        return self.support_points == self.polytope.generators

    def sorted_points(self) -> list[Point]:
        return sorted(self.support_points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Face):
            return NotImplemented
        return (
            self.polytope.generators == other.polytope.generators
            and self.support_points == other.support_points
        )

    def __hash__(self) -> int:
        return hash((self.polytope.generators, self.support_points))

    def __repr__(self) -> str:
        pts = ", ".join("(" + ",".join(map(str, p)) + ")" for p in self.sorted_points())
        return f"Face(dim={self.dim}, points=[{pts}])"


def newton_polytope(points: Iterable[Sequence[int]]) -> NewtonPolytope:
    """Vertices and facet inequalities of the convex hull of ``points``."""
    pts = frozenset(tuple(int(x) for x in p) for p in points)
    if not pts:
        raise PolytopeError("empty point set")
    n = len(next(iter(pts)))
    if any(len(p) != n for p in pts):
        raise PolytopeError("points of different dimensions")
    if n > MAX_DIMENSION:
        raise PolytopeError(f"ambient dimension {n} exceeds the supported maximum {MAX_DIMENSION}")
    ordered = sorted(pts)
    base = ordered[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in ordered[1:]]
    equations = tuple(nullspace(diffs, n)) if diffs else tuple(
        tuple(int(i == j) for j in range(n)) for i in range(n)
    )
    d = n - len(equations)

    facets: dict[Point, int] = {}
    if d >= 1:
        # a facet hyperplane (inside the affine hull) passes through d
        # affinely independent generators
        for subset in combinations(ordered, d):
            sd = [tuple(a - b for a, b in zip(p, subset[0])) for p in subset[1:]]
            normals = nullspace(list(sd) + list(equations), n)
            if len(normals) != 1:
                continue
            for sign in (1, -1):
                v = tuple(sign * x for x in normals[0])
                if v in facets:
                    continue
                level = _dot(v, subset[0])
                if all(_dot(v, p) >= level for p in ordered):
                    facets[v] = level
    facet_list = tuple(sorted(facets.items()))
    if d == 0:
        vertices = (base,)
    else:
        vertices = tuple(p for p in ordered if _is_vertex(p, facet_list, d))
    return NewtonPolytope(n, pts, d, vertices, facet_list, equations)


def _is_vertex(p: Point, facets, d: int) -> bool:
    tight = [nrm for nrm, off in facets if _dot(nrm, p) == off]
    return rank(tight, len(p)) >= d if tight else False


def _enumerate_faces(poly: NewtonPolytope) -> list[Face]:
    """Every face, proper and improper, sorted by (dim, points)."""
    gens = poly.generators
    facet_sets = [
        (nrm, frozenset(p for p in gens if _dot(nrm, p) == off)) for nrm, off in poly.facets
    ]
    # proper faces are exactly the nonempty intersections of facets; the
    # normal sum over the facets containing a face lies in the relative
    # interior of its normal cone
    found = {s for _, s in facet_sets}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for _, t in facet_sets:
                u = s & t
                if u and u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    faces = []
    zero = (0,) * poly.ambient_dim
    for s in found:
        normal = tuple(
            sum(col)
            for col in zip(zero, *(nrm for nrm, t in facet_sets if s <= t))
        )
        faces.append(Face(poly, affine_dimension(s), s, normal))
    faces.append(Face(poly, poly.dim, gens, zero))
    faces.sort(key=lambda f: (f.dim, sorted(f.support_points)))
    return faces


def all_faces(poly: NewtonPolytope) -> list[Face]:
    return poly.faces()


def face_of_direction(poly: NewtonPolytope, v: Sequence[int]) -> Face:
    """The face on which ``<v, .>`` is minimal."""
    v = tuple(int(x) for x in v)
    if len(v) != poly.ambient_dim:
        raise PolytopeError("direction has wrong dimension")
    if not any(v):
        raise PolytopeError("zero direction")
    support = poly.argmin(v)
    return Face(poly, affine_dimension(support), support, v)


def face_id(face: Face) -> int:
    """Position of ``face`` in the canonical ordering of its polytope's faces."""
    return face.polytope.faces().index(face)
