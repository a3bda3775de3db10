"""Exact polytopes with both a vertex and an inequality description.

An inequality ``(normal, rhs)`` always means ``<x, normal> >= rhs`` with
``normal`` a primitive integer vector (inner normal) and ``rhs`` a Fraction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, factorial, floor
from typing import Iterable, Iterator, Sequence

from .arith import clear_denominators, determinant, dot, rank, vector_gcd
from .dd import affine_hull, extreme_rays, lcm_denominators, placing_triangulation

Inequality = tuple[tuple[int, ...], Fraction]


def _as_fraction_point(p: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in p)


def _homogenize(point: Sequence[Fraction]) -> tuple[int, ...]:
    """Integer vector on the ray through ``(point, 1)``."""
    L = lcm_denominators(point)
    return tuple(int(x * L) for x in point) + (L,)


def normalize_inequality(normal: Sequence, rhs) -> Inequality:
    """Scale ``<x, normal> >= rhs`` so that the normal is primitive integral."""
    normal = [Fraction(x) for x in normal]
    L = lcm_denominators(normal)
    scaled = [int(x * L) for x in normal]
    g = vector_gcd(scaled)
    if g == 0:
        raise ValueError("inequality has a zero normal vector")
    return tuple(x // g for x in scaled), Fraction(rhs) * L / g


def _facets_of_points(points: list[tuple[Fraction, ...]]) -> tuple[list, list[Inequality]]:
    """Vertices and an irredundant inequality description of ``conv(points)``.

    Lower-dimensional hulls get their affine hull as pairs of opposite
    inequalities in addition to the facets inside the hull.
    """
    d = len(points[0])
    k, coords, equations = affine_hull(points)
    h_rep: list[Inequality] = []
    for e, c in equations:
        n = clear_denominators(e)
        value = dot(n, points[0])
        h_rep.append((n, Fraction(value)))
        h_rep.append((tuple(-x for x in n), Fraction(-value)))
    if k == 0:
        return [points[0]], h_rep
    proj = [tuple(p[c] for c in coords) for p in points]
    rows = [_homogenize(q) for q in proj]
    facets = []
    for ray in extreme_rays(rows, k + 1):
        a, c = ray[:-1], ray[-1]
        g = vector_gcd(a)
        normal_k = tuple(x // g for x in a)
        rhs = Fraction(-c, g)
        facets.append((normal_k, rhs))
    vertices = []
    for p, q in zip(points, proj):
        tight = [n for n, r in facets if dot(n, q) == r]
        if len(tight) >= k and rank(tight) == k:
            vertices.append(p)
    for normal_k, rhs in facets:
        lifted = [0] * d
        for c, x in zip(coords, normal_k):
            lifted[c] = x
        h_rep.append((tuple(lifted), rhs))
    return vertices, h_rep


def _vertices_of_inequalities(h_rep: Sequence[Inequality], d: int):
    """Vertices and recession rays of ``{x : <x, n> >= r}``.

    The normals must span ``R^d`` (the polyhedron is then pointed).
    """
    rows = []
    for n, r in h_rep:
        r = Fraction(r)
        rows.append(tuple(r.denominator * x for x in n) + (-r.numerator,))
    rows.append((0,) * d + (1,))
    # rank(rows) = rank(normals) + 1, so the DD rank check covers the normals
    try:
        extreme = extreme_rays(rows, d + 1)
    except ValueError:
        raise ValueError("inequality normals do not span the ambient space") from None
    vertices, rays = [], []
    for ray in extreme:
        t = ray[-1]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in ray[:-1]))
        else:
            rays.append(ray[:-1])
    return vertices, rays


class Polytope:
    """A rational polytope (possibly empty) in ``R^ambient_dim``.

    Use :meth:`from_points` or :meth:`from_inequalities`; the constructor
    trusts its arguments.
    """

    def __init__(self, ambient_dim: int, vertices: Iterable, h_rep: Iterable[Inequality]):
        self.ambient_dim = ambient_dim
        self.vertices = tuple(sorted(set(self._coerce(v) for v in vertices)))
        self.h_rep = tuple(sorted(set((tuple(n), Fraction(r)) for n, r in h_rep)))

    @staticmethod
    def _coerce(v):
        return _as_fraction_point(v)

    @classmethod
    def from_points(cls, points: Iterable) -> "Polytope":
        pts = sorted(set(_as_fraction_point(p) for p in points))
        if not pts:
            raise ValueError("convex hull of an empty point set")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points have different dimensions")
        vertices, h_rep = _facets_of_points(pts)
        return Polytope(len(pts[0]), vertices, h_rep)

    @classmethod
    def from_inequalities(cls, inequalities: Iterable, ambient_dim: int) -> "Polytope":
        h_rep = [normalize_inequality(n, r) for n, r in inequalities]
        vertices, rays = _vertices_of_inequalities(h_rep, ambient_dim)
        if rays and vertices:
            raise ValueError("inequalities define an unbounded polyhedron")
        return Polytope(ambient_dim, vertices, h_rep)

    @classmethod
    def empty(cls, ambient_dim: int, h_rep: Iterable[Inequality] = ()) -> "Polytope":
        return Polytope(ambient_dim, (), h_rep)

    # basic properties

    def __repr__(self):
        verts = [[str(x) for x in v] for v in self.vertices]
        return f"{type(self).__name__}(dim={self.dim}, vertices={verts})"

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        return affine_hull(self.vertices)[0]

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def facets(self) -> tuple[Inequality, ...]:
        """Irredundant inequality description recomputed from the vertices."""
        if self.is_empty:
            return ()
        return tuple(sorted(set(_facets_of_points(list(self.vertices))[1])))

    @cached_property
    def _scaled_vertices(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        # common denominator L and the integer points L * v
        L = lcm_denominators(x for v in self.vertices for x in v)
        return L, tuple(tuple(int(x * L) for x in v) for v in self.vertices)

    def _extremes(self, nu: Sequence) -> tuple[Fraction, Fraction]:
        key = tuple(nu)
        cache = self.__dict__.setdefault("_support_cache", {})
        hit = cache.get(key)
        if hit is None:
            if self.is_empty:
                raise ValueError("support function of an empty polytope")
            L, pts = self._scaled_vertices
            values = [sum(a * b for a, b in zip(v, key)) for v in pts]
            hit = (Fraction(min(values), L), Fraction(max(values), L))
            cache[key] = hit
        return hit

    def support_min(self, nu: Sequence) -> Fraction:
        """``Min_P(nu)``: the minimum of ``<x, nu>`` over the polytope."""
        return self._extremes(nu)[0]

    def support_max(self, nu: Sequence) -> Fraction:
        return self._extremes(nu)[1]

    def contains_point(self, x: Sequence, strict: bool = False) -> bool:
        if self.is_empty:
            return False
        if strict:
            return all(dot(n, x) > r for n, r in self.h_rep)
        return all(dot(n, x) >= r for n, r in self.h_rep)

    def contains(self, other: "Polytope") -> bool:
        return all(self.contains_point(v) for v in other.vertices)

    def as_lattice(self) -> "LatticePolytope":
        if self.is_empty or not self.is_lattice:
            raise ValueError("polytope does not have integral vertices")
        return LatticePolytope([[int(x) for x in v] for v in self.vertices])

    # lattice points

    def _integer_rows(self, strict: bool) -> list[tuple[tuple[int, ...], int]]:
        rows = []
        for n, r in self.h_rep:
            bound = floor(r) + 1 if strict else ceil(r)
            rows.append((n, bound))
        return rows

    def _scan(self, strict: bool) -> Iterator[tuple[int, ...]]:
        if self.is_empty:
            return
        d = self.ambient_dim
        rows = self._integer_rows(strict)
        lo = [ceil(min(v[i] for v in self.vertices)) for i in range(d)]
        hi = [floor(max(v[i] for v in self.vertices)) for i in range(d)]
        last = [(n, b) for n, b in rows if n[-1] != 0]
        other = [(n, b) for n, b in rows if n[-1] == 0]

        def rec(prefix):
            i = len(prefix)
            if i == d - 1:
                a, b = lo[-1], hi[-1]
                for n, bound in last:
                    rest = bound - sum(x * y for x, y in zip(n, prefix))
                    c = n[-1]
                    if c > 0:
                        a = max(a, -((-rest) // c))
                    else:
                        b = min(b, rest // c)
                    if a > b:
                        return
                for n, bound in other:
                    if sum(x * y for x, y in zip(n, prefix)) < bound:
                        return
                for t in range(a, b + 1):
                    yield prefix + (t,)
                return
            for t in range(lo[i], hi[i] + 1):
                yield from rec(prefix + (t,))

        yield from rec(())

    def lattice_points(self) -> list[tuple[int, ...]]:
        return list(self._scan(strict=False))

    def interior_lattice_points(self) -> list[tuple[int, ...]]:
        """Lattice points satisfying every inequality strictly."""
        return list(self._scan(strict=True))

    # volume

    def volume(self) -> Fraction:
        """Euclidean volume, exact, from a placing triangulation."""
        d = self.ambient_dim
        if not self.is_full_dimensional:
            warnings.warn("volume of a lower-dimensional polytope is 0", stacklevel=2)
            return Fraction(0)
        rows = [_homogenize(v) for v in self.vertices]
        total = Fraction(0)
        for simplex in placing_triangulation(rows):
            mat = [list(self.vertices[i]) + [Fraction(1)] for i in simplex]
            total += abs(determinant(mat))
        return total / factorial(d)

    # transformations

    def scale(self, factor) -> "Polytope":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        return Polytope(self.ambient_dim,
                        [tuple(factor * x for x in v) for v in self.vertices],
                        [(n, factor * r) for n, r in self.h_rep])

    def translate(self, shift: Sequence) -> "Polytope":
        shift = _as_fraction_point(shift)
        if len(shift) != self.ambient_dim:
            raise ValueError("translation vector has the wrong length")
        return Polytope(self.ambient_dim,
                        [tuple(a + b for a, b in zip(v, shift)) for v in self.vertices],
                        [(n, r + dot(n, shift)) for n, r in self.h_rep])


class LatticePolytope(Polytope):
    """Convex hull of finitely many points of ``Z^d``.

    >>> LatticePolytope([(0, 0), (2, 0), (0, 2), (1, 1)]).vertices
    ((0, 0), (0, 2), (2, 0))
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = []
        for p in points:
            q = _as_fraction_point(p)
            if any(x.denominator != 1 for x in q):
                raise ValueError(f"point {p!r} is not a lattice point")
            pts.append(q)
        hull = Polytope.from_points(pts)
        super().__init__(hull.ambient_dim, hull.vertices, hull.h_rep)

    @staticmethod
    def _coerce(v):
        return tuple(int(x) for x in v)

    def lattice_translate(self, shift: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([[a + b for a, b in zip(v, shift)] for v in self.vertices])

    def dilate(self, k: int) -> "LatticePolytope":
        if k <= 0:
            raise ValueError("dilation factor must be positive")
        return LatticePolytope([[k * x for x in v] for v in self.vertices])


def convex_hull(points: Iterable) -> Polytope:
    """Convex hull with both descriptions; a :class:`LatticePolytope` when
    every point is integral."""
    pts = [_as_fraction_point(p) for p in points]
    if pts and all(x.denominator == 1 for p in pts for x in p):
        return LatticePolytope(pts)
    return Polytope.from_points(pts)


def support_min(P: Polytope, nu: Sequence) -> Fraction:
    return P.support_min(nu)


def scale(P: Polytope, factor) -> Polytope:
    return P.scale(factor)


def translate(P: Polytope, shift: Sequence) -> Polytope:
    return P.translate(shift)


def normalized_volume(P: Polytope) -> Fraction:
    """Euclidean volume of ``P`` (0 with a warning if not full-dimensional)."""
    return P.volume()


def polar_dual(Q: Polytope) -> Polytope:
    """``Q* = {x : <x, y> >= -1 for all y in Q}``; needs 0 in the interior."""
    if not Q.is_full_dimensional or not all(r < 0 for n, r in Q.facets):
        raise ValueError("polar dual requires 0 in interior")
    return Polytope.from_inequalities([(y, -1) for y in Q.vertices], Q.ambient_dim)


@dataclass(frozen=True)
class NormalFan:
    """One maximal cone per vertex, generated by the primitive inner normals
    of the facets through that vertex."""

    maximal_cones: tuple[tuple[tuple, tuple[tuple[int, ...], ...]], ...]

    @property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted({g for _, gens in self.maximal_cones for g in gens}))


def normal_fan(P: Polytope) -> NormalFan:
    if P.is_empty or not P.is_full_dimensional:
        raise ValueError("normal fan requires full-dimensional polytope")
    cones = []
    for v in P.vertices:
        gens = tuple(sorted(n for n, r in P.facets if dot(n, v) == r))
        cones.append((v, gens))
    return NormalFan(tuple(cones))
