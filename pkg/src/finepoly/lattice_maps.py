"""Lattice projections, lattice width and affine unimodular normal forms."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .arith import determinant, elementary_divisors, hermite_normal_form, primitive, rank
from .polytope import LatticePolytope, Polytope

# vertex count above which affine_normal_form refuses to run
NORMAL_FORM_VERTEX_CAP = 10
# largest (2w+1)^d enumeration used to certify a width result
WIDTH_CERTIFICATE_CAP = 200_000


@dataclass(frozen=True)
class ProjectionMap:
    """Affine map ``x -> matrix @ x + offset`` from ``Z^d`` to ``Z^k``."""
    matrix: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        object.__setattr__(self, "offset", tuple(int(x) for x in self.offset))
        if len(self.offset) != len(self.matrix):
            raise ValueError("offset length must equal the number of matrix rows")

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def is_surjective(self) -> bool:
        return all(e == 1 for e in elementary_divisors([list(r) for r in self.matrix]))

    def __call__(self, x: Sequence) -> tuple:
        return tuple(sum(a * b for a, b in zip(row, x)) + c
                     for row, c in zip(self.matrix, self.offset))


def apply_projection(P: Polytope, pi: ProjectionMap) -> LatticePolytope:
    if not pi.matrix or pi.source_dim != P.ambient_dim:
        raise ValueError("projection does not match the polytope's ambient dimension")
    if not pi.is_surjective():
        raise ValueError("not a lattice projection")
    Q = P.as_lattice()
    return LatticePolytope([pi(v) for v in Q.vertices])


@dataclass(frozen=True)
class WidthResult:
    width: int
    directions: tuple[tuple[int, ...], ...]
    exhaustive: bool


def width_in_direction(P: Polytope, nu: Sequence[int]):
    return P.support_max(nu) - P.support_min(nu)


def _box_directions(d: int, bound: int):
    """Primitive vectors in ``[-bound, bound]^d``, one per sign class."""
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        first = next((x for x in v if x), 0)
        if first > 0 and primitive(v) == v:
            yield v


def _difference_frame(P: Polytope):
    """``d`` linearly independent integer edge-like vectors of ``P``."""
    verts = P.as_lattice().vertices
    d = P.ambient_dim
    base = verts[0]
    frame = []
    for v in verts[1:]:
        e = tuple(a - b for a, b in zip(v, base))
        if rank(frame + [e]) > len(frame):
            frame.append(e)
            if len(frame) == d:
                break
    return frame


def directions_of_width_at_most(P: Polytope, w: int) -> list[tuple[int, ...]]:
    """Every primitive ``nu`` (up to sign) with ``width_nu(P) <= w``.

    If ``E`` has rows ``e_i`` that are differences of points of ``P`` then
    ``|<e_i, nu>| <= w``, so ``nu = E^-1 t`` for an integer ``|t_i| <= w``.
    """
    d = P.ambient_dim
    E = _difference_frame(P)
    det = determinant(E)
    adj = [[(-1) ** (i + j) * determinant([r[:i] + r[i + 1:] for k, r in enumerate(E) if k != j])
            for j in range(d)] for i in range(d)]
    found = set()
    for t in itertools.product(range(-w, w + 1), repeat=d):
        num = [sum(a * b for a, b in zip(row, t)) for row in adj]
        if not any(num) or any(x % det for x in num):
            continue
        nu = tuple(x // det for x in num)
        if primitive(nu) != nu:
            continue
        if next(x for x in nu if x) < 0:
            nu = tuple(-x for x in nu)
        if width_in_direction(P, nu) <= w:
            found.add(nu)
    return sorted(found)


def lattice_width(P: Polytope, bound: int = 6) -> WidthResult:
    """Minimal width over primitive directions in ``[-bound, bound]^d``.

    ``exhaustive`` is true when an enumeration over all directions of width at
    most the box minimum confirmed that no direction outside the box does
    better, so ``width`` is then the exact lattice width.
    """
    if not P.is_full_dimensional:
        raise ValueError("lattice width requires a full-dimensional polytope")
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    d = P.ambient_dim
    best = None
    dirs: list[tuple[int, ...]] = []
    for nu in _box_directions(d, bound):
        w = width_in_direction(P, nu)
        if best is None or w < best:
            best, dirs = w, [nu]
        elif w == best:
            dirs.append(nu)
    w = int(best) if best.denominator == 1 else best
    exhaustive = False
    wi = best.numerator // best.denominator
    if P.is_lattice and (2 * wi + 1) ** d <= WIDTH_CERTIFICATE_CAP:
        exhaustive = all(width_in_direction(P, nu) >= best
                         for nu in directions_of_width_at_most(P, wi))
    return WidthResult(w, tuple(dirs), exhaustive)


def width_one_directions(P: Polytope) -> list[tuple[int, ...]]:
    """All directions (up to sign) in which a lattice polytope has width 1."""
    return [nu for nu in directions_of_width_at_most(P, 1) if width_in_direction(P, nu) == 1]


@dataclass(frozen=True)
class NormalFormKey:
    ambient_dim: int
    canonical_vertices: tuple[tuple[int, ...], ...]

    def digest(self) -> str:
        payload = json.dumps([self.ambient_dim, [list(v) for v in self.canonical_vertices]])
        return hashlib.sha256(payload.encode()).hexdigest()


def _hnf_columns(cols: list[tuple[int, ...]], d: int) -> tuple[tuple[int, ...], ...]:
    A = [[c[i] for c in cols] for i in range(d)]
    H, _ = hermite_normal_form(A)
    return tuple(tuple(H[i][j] for i in range(d)) for j in range(len(cols)))


def affine_normal_form(P: Polytope, vertex_cap: int | None = None) -> NormalFormKey:
    """Canonical representative of the affine unimodular class of ``P``.

    For a base vertex ``v0`` and an ordering of the rest, the columns
    ``v_i - v0`` are brought to row Hermite normal form, which is invariant
    under ``GL(d, Z)``.  The key is the lexicographically least result.  The
    first ``j`` columns of an HNF are the HNF of the first ``j`` columns, so
    orderings are grown column by column keeping only minimal prefixes.
    """
    cap = NORMAL_FORM_VERTEX_CAP if vertex_cap is None else vertex_cap
    Q = P.as_lattice()
    verts = list(Q.vertices)
    n, d = len(verts), Q.ambient_dim
    if n > cap:
        raise ValueError(f"normal form limited to {cap} vertices, got {n}")
    if n == 1:
        return NormalFormKey(d, ((0,) * d,))
    states = []
    for b, base in enumerate(verts):
        diffs = [tuple(x - y for x, y in zip(v, base)) for k, v in enumerate(verts) if k != b]
        states.append(((), diffs))
    best: tuple = ()
    for step in range(n - 1):
        candidates = []
        for chosen, rest in states:
            for k, c in enumerate(rest):
                cols = list(chosen) + [c]
                key = _hnf_columns(cols, d)
                candidates.append((key, tuple(cols), rest[:k] + rest[k + 1:]))
        best = min(c[0] for c in candidates)
        seen = set()
        states = []
        for key, cols, rest in candidates:
            if key == best:
                sig = (cols, tuple(sorted(rest)))
                if sig not in seen:
                    seen.add(sig)
                    states.append((cols, rest))
    return NormalFormKey(d, ((0,) * d,) + best)


def unimodular_equivalent(P1: Polytope, P2: Polytope) -> bool:
    if P1.ambient_dim != P2.ambient_dim:
        raise ValueError("polytopes live in lattices of different dimension")
    if len(P1.vertices) != len(P2.vertices):
        return False
    return affine_normal_form(P1) == affine_normal_form(P2)


__all__ = [
    "NormalFormKey", "ProjectionMap", "WidthResult", "affine_normal_form", "apply_projection",
    "directions_of_width_at_most", "lattice_width", "unimodular_equivalent",
    "width_in_direction", "width_one_directions",
]
