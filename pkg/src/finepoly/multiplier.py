"""Minimal multiplier, classification and the data attached to each class.

``mu(P)`` is the least ``lambda`` with ``F(lambda P)`` non-empty.  Because the
candidate set does not depend on ``lambda`` it is one LP in ``(x, lambda)``.
F-hollow polytopes (``mu > 1``) split into weakly sporadic ones, where
``F(mu P)`` is a point and yields a canonical Fano polytope, and projectable
ones, where ``F(mu P)`` is positive-dimensional and its direction space gives
a canonical lattice projection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import clear_denominators, rank, saturated_kernel, smith_normal_form
from .fine import SupportSet, candidate_set, fine_interior, support_set
from .lattice_maps import (ProjectionMap, affine_normal_form, apply_projection,
                           width_in_direction, width_one_directions)
from .lp import OPTIMAL, lp_minimize, lp_minimize_generated
from .polytope import LatticePolytope, Polytope, convex_hull, polar_dual

NOT_F_HOLLOW = "NOT_F_HOLLOW"
WEAKLY_SPORADIC = "WEAKLY_SPORADIC"
PROJECTABLE = "PROJECTABLE"

SPORADIC = "SPORADIC"
NOT_SPORADIC = "NOT_SPORADIC"
UNDETERMINED = "UNDETERMINED"

NEG_INFINITY = "NEG_INFINITY"

DEFAULT_BOUND = 6
# cap on direction tuples tried per target dimension k >= 3
TUPLE_SEARCH_CAP = 20_000


class InternalConsistencyError(RuntimeError):
    """A computed object violates a property that must hold; indicates a bug."""


@dataclass(frozen=True)
class CanonicalFanoData:
    p: tuple[Fraction, ...]
    q_polytope: LatticePolytope
    q_dual: Polytope
    adjunction_coefficient: Fraction


@dataclass(frozen=True)
class MultiplierReport:
    mu: Fraction
    fine_at_mu: Polytope
    dim_fine_at_mu: int
    support_at_mu: SupportSet
    classification: str
    fine_at_one: Polytope
    kodaira: int | str
    fano: CanonicalFanoData | None = None
    projection: tuple[ProjectionMap, LatticePolytope] | None = None


@dataclass(frozen=True)
class SporadicityResult:
    status: str
    witness: ProjectionMap | None = None
    image: LatticePolytope | None = None
    certified: bool = True
    notes: tuple[str, ...] = field(default=())
    # claims taken from the literature rather than computed here
    asserted: tuple[str, ...] = field(default=())


def _require_full(P: Polytope) -> None:
    if P.is_empty or not P.is_full_dimensional:
        raise ValueError("polytope must be full-dimensional")


def _multiplier_lp(P: Polytope):
    d = P.ambient_dim
    cands = candidate_set(P).vectors
    cons = [(tuple(nu) + (-P.support_min(nu),), 1) for nu in cands]
    cons.append(((0,) * d + (1,), 0))
    # facet normals (rays of the normal fan) are candidates and bound the relaxation
    normals = {nu for nu, _ in P.facets}
    seed = [i for i, nu in enumerate(cands) if nu in normals] + [len(cands)]
    return lp_minimize_generated((0,) * d + (1,), cons, seed)


def minimal_multiplier(P: Polytope) -> Fraction:
    """Least ``lambda`` with non-empty ``F(lambda P)``, as an exact rational."""
    _require_full(P)
    res = _multiplier_lp(P)
    if res.status != OPTIMAL:
        raise InternalConsistencyError(f"multiplier LP is {res.status}")
    mu = res.optimum
    # the candidate set is shared by all dilates because the normal fan is
    if {nu for nu, _ in P.scale(mu).facets} != {nu for nu, _ in P.facets}:
        raise InternalConsistencyError("dilation changed the facet normals")
    return mu


def affine_dimension(F: Polytope) -> int:
    return -1 if F.is_empty else F.dim


def implicit_equalities(P: Polytope, lam) -> list[tuple[int, ...]]:
    """Candidate normals whose Fine-interior inequality is tight on all of
    ``F(lam P)``, found by maximizing each slack with an LP."""
    lam = Fraction(lam)
    cands = list(candidate_set(P))
    rows = [(nu, lam * P.support_min(nu) + 1) for nu in cands]
    tight = []
    for nu, rhs in rows:
        res = lp_minimize(tuple(-x for x in nu), rows)
        if res.status != OPTIMAL:
            raise ValueError("Fine interior is empty")
        if -res.optimum == rhs:
            tight.append(nu)
    return tight


def dimension_from_equalities(P: Polytope, lam) -> int:
    eq = implicit_equalities(P, lam)
    return P.ambient_dim - rank(eq) if eq else P.ambient_dim


def kodaira_dimension(P: Polytope) -> int | str:
    """``NEG_INFINITY`` if ``F(P)`` is empty, else ``min(d - 1, dim F(P))``."""
    _require_full(P)
    F = fine_interior(P, 1)
    if F.is_empty:
        return NEG_INFINITY
    return min(P.ambient_dim - 1, F.dim)


def adjunction_coefficient(mu) -> Fraction:
    mu = Fraction(mu)
    return (mu - 1) / mu


def _build_fano(P: Polytope, mu: Fraction, F: Polytope, S: SupportSet) -> CanonicalFanoData:
    d = P.ambient_dim
    p = F.vertices[0]
    Q = convex_hull(S.vectors)
    if not Q.is_full_dimensional:
        raise InternalConsistencyError("hull of the support set is not full-dimensional")
    if Q.interior_lattice_points() != [(0,) * d]:
        raise InternalConsistencyError("hull of the support set has interior points other than 0")
    Qd = polar_dual(Q)
    shifted = P.scale(mu).translate([-x for x in p])
    if not Qd.contains(shifted):
        raise InternalConsistencyError("mu P - p is not contained in the polar dual")
    return CanonicalFanoData(p, Q.as_lattice(), Qd, adjunction_coefficient(mu))


def _projection_rows(F: Polytope, d: int, method: str) -> list[tuple[int, ...]]:
    w0 = F.vertices[0]
    diffs = [clear_denominators([a - b for a, b in zip(w, w0)]) for w in F.vertices[1:]]
    diffs = [v for v in diffs if any(v)]
    if method == "hnf":
        return saturated_kernel(diffs, d)
    if method == "snf":
        # kernel columns of V, where S = U A V
        S, _, V = smith_normal_form(diffs)
        r = sum(1 for i in range(min(len(S), d)) if S[i][i])
        return [tuple(V[i][j] for i in range(d)) for j in range(r, d)]
    raise ValueError("method must be 'hnf' or 'snf'")


def _normalized_projection(P: Polytope, rows) -> tuple[ProjectionMap, LatticePolytope]:
    raw = ProjectionMap(rows, (0,) * len(rows))
    image = apply_projection(P, raw)
    offset = tuple(-min(v[i] for v in image.vertices) for i in range(len(rows)))
    pi = ProjectionMap(rows, offset)
    return pi, apply_projection(P, pi)


def _build_projection(P: Polytope, mu: Fraction, F: Polytope, method: str = "hnf"):
    d = P.ambient_dim
    rows = _projection_rows(F, d, method)
    if len(rows) != d - F.dim:
        raise InternalConsistencyError("kernel rank differs from d - dim F(mu P)")
    pi, image = _normalized_projection(P, rows)
    if not fine_interior(image, 1).is_empty:
        raise InternalConsistencyError("projected polytope is not F-hollow")
    mu_image = minimal_multiplier(image)
    if mu_image != mu:
        raise InternalConsistencyError(f"projection changed mu from {mu} to {mu_image}")
    if fine_interior(image, mu).dim != 0:
        raise InternalConsistencyError("Fine interior of mu P' is not a point")
    return pi, image


def classify(P: Polytope) -> MultiplierReport:
    _require_full(P)
    mu = minimal_multiplier(P)
    F = fine_interior(P, mu)
    if F.is_empty:
        raise InternalConsistencyError("F(mu P) is empty at the LP optimum")
    dim = F.dim
    if dim >= P.ambient_dim:
        raise InternalConsistencyError("F(mu P) is full-dimensional")
    S = support_set(P, mu)
    F1 = F if mu == 1 else fine_interior(P, 1)
    kod = NEG_INFINITY if F1.is_empty else min(P.ambient_dim - 1, F1.dim)
    if mu <= 1:
        return MultiplierReport(mu, F, dim, S, NOT_F_HOLLOW, F1, kod)
    if dim == 0:
        fano = _build_fano(P, mu, F, S)
        return MultiplierReport(mu, F, dim, S, WEAKLY_SPORADIC, F1, kod, fano=fano)
    proj = _build_projection(P, mu, F)
    return MultiplierReport(mu, F, dim, S, PROJECTABLE, F1, kod, projection=proj)


def canonical_fano(P: Polytope, report: MultiplierReport | None = None) -> CanonicalFanoData:
    report = report or classify(P)
    if report.classification != WEAKLY_SPORADIC:
        raise ValueError(f"canonical Fano data needs a weakly sporadic polytope, got {report.classification}")
    return report.fano


def canonical_projection(P: Polytope, method: str = "hnf",
                         report: MultiplierReport | None = None) -> tuple[ProjectionMap, LatticePolytope]:
    """Lattice projection along the direction space of ``F(mu P)``.

    The sublattice ``N'`` of dual vectors constant on ``F(mu P)`` is saturated
    by construction, so its basis gives a surjection ``Z^d -> Z^k``.
    """
    report = report or classify(P)
    if report.classification != PROJECTABLE:
        raise ValueError(f"canonical projection needs a projectable polytope, got {report.classification}")
    if method == "hnf":
        return report.projection
    return _build_projection(P, report.mu, report.fine_at_mu, method)


def _delpezzo_note(P: Polytope) -> tuple[str, ...]:
    from .fixtures import delpezzo
    if P.ambient_dim != 3 or len(P.vertices) != 4:
        return ()
    key = affine_normal_form(P)
    for i in (1, 2, 3):
        if affine_normal_form(delpezzo(i)) == key:
            return (f"equivalent to del Pezzo simplex {i}; sporadicity is asserted by an "
                    "external classification and is not certified here",)
    return ()


def _f_hollow_image(P: Polytope, rows) -> tuple[ProjectionMap, LatticePolytope] | None:
    pi, image = _normalized_projection(P, rows)
    if fine_interior(image, 1).is_empty:
        return pi, image
    return None


def _search_projections(P: Polytope, k: int, bound: int):
    """Look for a saturated ``k``-tuple of directions with an F-hollow image.

    For ``k = 2`` an F-hollow image of width at least 2 has width exactly 2
    in both coordinate directions of a suitable basis, so only width-2
    directions are paired.  For larger ``k`` directions of width at most
    ``k`` are tried in order of width, up to ``TUPLE_SEARCH_CAP`` tuples.
    """
    d = P.ambient_dim
    pool = []
    for nu in itertools.product(range(-bound, bound + 1), repeat=d):
        first = next((x for x in nu if x), 0)
        if first <= 0:
            continue
        w = width_in_direction(P, nu)
        if (k == 2 and w == 2) or (k > 2 and w <= k):
            pool.append((w, nu))
    pool.sort()
    vecs = [nu for _, nu in pool]
    tried = 0
    for combo in itertools.combinations(vecs, k):
        if k > 2 and tried >= TUPLE_SEARCH_CAP:
            break
        tried += 1
        pi = ProjectionMap(combo, (0,) * k)
        if not pi.is_surjective():
            continue
        found = _f_hollow_image(P, list(combo))
        if found:
            return found
    return None


def sporadicity_check(P: Polytope, bound: int = DEFAULT_BOUND,
                      report: MultiplierReport | None = None) -> SporadicityResult:
    """Search for a lattice projection of an F-hollow ``P`` whose image is
    F-hollow and of lower dimension.  Complete in dimension at most 2."""
    _require_full(P)
    if not fine_interior(P, 1).is_empty:
        raise ValueError("sporadicity check requires an F-hollow polytope")
    d = P.ambient_dim
    if d == 1:
        return SporadicityResult(SPORADIC, notes=("no lower-dimensional F-hollow target exists",))
    ones = width_one_directions(P)
    if ones:
        pi, image = _normalized_projection(P, [ones[0]])
        return SporadicityResult(NOT_SPORADIC, pi, image)
    if d == 2:
        return SporadicityResult(SPORADIC)
    report = report or classify(P)
    if report.classification == PROJECTABLE:
        pi, image = report.projection
        return SporadicityResult(NOT_SPORADIC, pi, image)
    for k in range(2, d):
        found = _search_projections(P, k, bound)
        if found:
            return SporadicityResult(NOT_SPORADIC, found[0], found[1])
    notes = (f"no F-hollow projection found with direction bound {bound}",)
    return SporadicityResult(UNDETERMINED, certified=False, notes=notes,
                             asserted=_delpezzo_note(P))


__all__ = [
    "CanonicalFanoData", "InternalConsistencyError", "MultiplierReport", "SporadicityResult",
    "NEG_INFINITY", "NOT_F_HOLLOW", "NOT_SPORADIC", "PROJECTABLE", "SPORADIC", "UNDETERMINED",
    "WEAKLY_SPORADIC", "adjunction_coefficient", "affine_dimension", "canonical_fano",
    "canonical_projection", "classify", "dimension_from_equalities", "implicit_equalities",
    "kodaira_dimension", "minimal_multiplier", "sporadicity_check",
]
