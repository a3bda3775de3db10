"""Fine interior ``F(lambda P)``, its certifying candidate set and support set.

The candidate set of ``P`` is the union of the Hilbert bases of a simplicial
subdivision of every maximal cone of the normal fan.  Inside one such
simplicial cone ``Min_P`` is linear, so for ``nu = sum l_i h_i`` (``h_i`` in the
Hilbert basis, ``l_i >= 0`` integers) the inequality for ``nu`` follows from
those of the ``h_i`` with slack ``sum l_i - 1``.  Hence the candidate
inequalities cut out ``F(P)`` exactly, and any ``nu`` that is tight on ``F(P)``
is itself a candidate.  Since ``lambda P`` has the same normal fan as ``P`` the
candidate set is shared by all dilates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from operator import ge
from typing import Sequence

from .arith import determinant, primitive, rank, saturate, smith_normal_form, solve_linear
from .dd import placing_triangulation
from .polytope import Polytope, _vertices_of_inequalities, normal_fan

# simplicial cones with at most this many parallelepiped points are
# enumerated directly; larger ones are subdivided first
PARALLELEPIPED_LIMIT = 256


@dataclass(frozen=True)
class SimplicialCone:
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("a simplicial cone needs at least one generator")
        if rank(gens) != len(gens):
            raise ValueError("cone generators are linearly dependent")
        object.__setattr__(self, "generators", tuple(primitive(g) for g in gens))

    @property
    def is_full_dimensional(self) -> bool:
        return len(self.generators) == len(self.generators[0])


@dataclass(frozen=True)
class CandidateSet:
    vectors: tuple[tuple[int, ...], ...]
    # vector -> simplicial cones (as generator tuples) whose Hilbert basis contains it
    provenance: dict = field(compare=False, repr=False)

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, v):
        return tuple(v) in self.provenance


@dataclass(frozen=True)
class SupportSet:
    vectors: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


@dataclass(frozen=True)
class CPolytope:
    bounded: bool
    polytope: Polytope | None


def _coordinates(gens):
    """``(D, adj)`` with ``adj @ g_i == D * e_i`` and ``D = |det| > 0``."""
    n = len(gens)
    A = [[gens[j][i] for j in range(n)] for i in range(n)]  # columns are generators
    det = determinant(A)
    sign = 1 if det > 0 else -1
    adj = [[sign * (-1) ** (i + j) * determinant([row[:i] + row[i + 1:]
                                                   for k, row in enumerate(A) if k != j])
            for j in range(n)] for i in range(n)]
    return abs(det), adj


def _apply(adj, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in adj)


def _point(gens, coeffs, D):
    n = len(gens)
    return tuple(sum(coeffs[j] * gens[j][i] for j in range(n)) // D for i in range(n))


def _group_elements(gens, limit=None):
    """Lattice points of the half-open fundamental parallelepiped, via the
    Smith normal form of the generator matrix."""
    n = len(gens)
    A = [[gens[j][i] for j in range(n)] for i in range(n)]
    S, U, _ = smith_normal_form(A)
    # Z^n / A Z^n is generated by the columns of U^-1 with orders S[i][i]
    Uinv = _integer_inverse(U)
    D, adj = _coordinates(gens)
    orders = [S[i][i] for i in range(n)]
    cols = [[Uinv[r][i] for r in range(n)] for i in range(n)]
    base = [_apply(adj, c) for c in cols]
    # only the non-trivial cyclic factors contribute
    factors = [(o, b) for o, b in zip(orders, base) if o > 1]
    points = [(0,) * n]
    for order, b in reversed(factors):
        grown = []
        for k in range(order):
            step = tuple(k * x for x in b)
            grown.extend(tuple((x + y) % D for x, y in zip(p, step)) for p in points)
            if limit is not None and len(grown) >= limit:
                break
        points = grown
    return D, adj, points[:limit] if limit is not None else points


def _integer_inverse(U):
    n = len(U)
    det = determinant(U)
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(U) if k != j]
            row.append((-1) ** (i + j) * determinant(minor) // det)
        inv.append(row)
    return inv


def _irreducible(elements: Sequence[tuple[int, ...]], adj) -> list[tuple[int, ...]]:
    """Elements not of the form ``y + w`` with ``y`` another element and ``w``
    a nonzero lattice point of the cone."""
    coords = sorted((sum(c), c, x) for x in set(elements) for c in [_apply(adj, x)])
    kept = []
    for i, (sx, cx, x) in enumerate(coords):
        for sy, cy, _ in coords[:i]:
            if sy >= sx:
                kept.append(x)
                break
            if all(map(ge, cx, cy)):
                break
        else:
            kept.append(x)
    return kept


@lru_cache(maxsize=4096)
def _hilbert_full(gens: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    D, adj = _coordinates(gens)
    if D == 1:
        return tuple(sorted(gens))
    if D <= PARALLELEPIPED_LIMIT:
        _, _, coeffs = _group_elements(gens)
        pts = [_point(gens, c, D) for c in coeffs if any(c)]
        return tuple(sorted(_irreducible(list(gens) + pts, adj)))
    # subdivide at a parallelepiped point with small coordinates
    _, _, coeffs = _group_elements(gens, limit=4 * PARALLELEPIPED_LIMIT)
    best = min((c for c in coeffs if any(c)), key=lambda c: (max(c), sum(c), c))
    x = primitive(_point(gens, best, D))
    cx = _apply(adj, x)
    union = set()
    for i in range(len(gens)):
        if cx[i] > 0:
            sub = tuple(sorted(gens[:i] + (x,) + gens[i + 1:]))
            union.update(_hilbert_full(sub))
    return tuple(sorted(_irreducible(list(union), adj)))


def hilbert_basis(cone: SimplicialCone) -> list[tuple[int, ...]]:
    """Minimal generating set of the monoid of lattice points of ``cone``."""
    gens = cone.generators
    d = len(gens[0])
    if len(gens) == d:
        return list(_hilbert_full(tuple(sorted(gens))))
    # lower-dimensional: work in the saturated lattice spanned by the cone
    basis = saturate(gens)
    k = len(basis)
    B = [[basis[i][j] for i in range(k)] for j in range(d)]
    local = [tuple(int(c) for c in solve_linear(B, g)) for g in gens]
    hb = _hilbert_full(tuple(sorted(local)))
    return sorted(tuple(sum(c[i] * basis[i][j] for i in range(k)) for j in range(d))
                  for c in hb)


def _candidate_set(ambient_dim: int, vertices) -> CandidateSet:
    P = Polytope.from_points(vertices)
    provenance: dict[tuple[int, ...], list] = {}
    for vertex, gens in normal_fan(P).maximal_cones:
        gens = sorted(gens)
        for simplex in placing_triangulation(gens):
            sub = tuple(gens[i] for i in simplex)
            for h in hilbert_basis(SimplicialCone(sub)):
                provenance.setdefault(h, []).append(sub)
    return CandidateSet(tuple(sorted(provenance)), provenance)


_candidate_cache = lru_cache(maxsize=1024)(_candidate_set)


def candidate_set(P: Polytope, use_cache: bool = True) -> CandidateSet:
    """Finite set of primitive dual vectors whose inequalities cut out
    ``F(lambda P)`` for every ``lambda > 0``."""
    if P.is_empty or not P.is_full_dimensional:
        raise ValueError("normal fan requires full-dimensional polytope")
    if use_cache:
        return _candidate_cache(P.ambient_dim, P.vertices)
    return _candidate_set(P.ambient_dim, P.vertices)


@lru_cache(maxsize=2048)
def _fine_interior(ambient_dim: int, vertices, lam: Fraction) -> Polytope:
    P = Polytope(ambient_dim, vertices, ())
    ineqs = [(nu, lam * P.support_min(nu) + 1) for nu in _candidate_cache(ambient_dim, vertices)]
    return Polytope.from_inequalities(ineqs, ambient_dim)


def clear_caches() -> None:
    """Drop memoized Hilbert bases, candidate sets and Fine interiors."""
    _hilbert_full.cache_clear()
    _candidate_cache.cache_clear()
    _fine_interior.cache_clear()


def fine_interior(P: Polytope, lam=1) -> Polytope:
    """``F(lam * P)``, cut out by ``<x, nu> >= lam * Min_P(nu) + 1`` over the
    candidate set of ``P``."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    candidate_set(P)  # validates P
    return _fine_interior(P.ambient_dim, P.vertices, lam)


def is_f_hollow(P: Polytope) -> bool:
    return fine_interior(P, 1).is_empty


def support_set(P: Polytope, lam=1) -> SupportSet:
    """``S_F(lam * P)``: dual vectors whose Fine-interior inequality is tight."""
    lam = Fraction(lam)
    F = fine_interior(P, lam)
    if F.is_empty:
        raise ValueError("support set undefined for empty Fine interior")
    tight = tuple(nu for nu in candidate_set(P)
                  if F.support_min(nu) == lam * P.support_min(nu) + 1)
    return SupportSet(tight)


def c_polytope(P: Polytope, lam) -> CPolytope:
    """Region cut out by the support-set inequalities at the levels of ``lam * P``."""
    lam = Fraction(lam)
    S = support_set(P, lam)
    ineqs = [(nu, lam * P.support_min(nu)) for nu in S]
    if rank(list(S.vectors)) < P.ambient_dim:
        return CPolytope(False, None)
    vertices, rays = _vertices_of_inequalities(ineqs, P.ambient_dim)
    if rays:
        return CPolytope(False, None)
    return CPolytope(True, Polytope(P.ambient_dim, vertices, ineqs))


def min_additivity_holds(P: Polytope, nu: Sequence[int], cone: Sequence[Sequence[int]]) -> bool:
    """Check ``Min_P(nu) == sum l_i Min_P(g_i)`` for ``nu = sum l_i g_i``."""
    d = len(nu)
    A = [[cone[j][i] for j in range(len(cone))] for i in range(d)]
    coeffs = solve_linear(A, list(nu))
    if coeffs is None:
        return False
    return P.support_min(nu) == sum(c * P.support_min(g) for c, g in zip(coeffs, cone))


__all__ = [
    "CandidateSet", "CPolytope", "SimplicialCone", "SupportSet", "c_polytope",
    "candidate_set", "clear_caches", "fine_interior", "hilbert_basis", "is_f_hollow",
    "min_additivity_holds", "support_set",
]
