"""Double description method and placing triangulations on integer cones.

Everything here works on homogenized integer data: a cone is either given by
inequality rows ``r . y >= 0`` or by generating vectors.  Rays are kept as
primitive integer vectors so no rational arithmetic is needed.
"""

from math import gcd
from typing import Sequence

from .arith import determinant, rank, rational_kernel, row_reduce, vector_gcd


def _normalize(v: list[int]) -> tuple[int, ...]:
    g = vector_gcd(v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _initial_basis(rows: Sequence[Sequence[int]], dim: int) -> list[int]:
    """Indices of ``dim`` linearly independent rows, chosen greedily."""
    chosen: list[int] = []
    basis: list[Sequence[int]] = []
    for i, r in enumerate(rows):
        if not any(r):
            continue
        if rank(basis + [r]) > len(basis):
            basis.append(r)
            chosen.append(i)
            if len(chosen) == dim:
                break
    return chosen


def _adjugate_columns(B: list[list[int]]) -> list[tuple[int, ...]]:
    """Columns ``c_j`` with ``B[i] . c_j = 0`` for ``i != j`` and ``> 0`` for ``i == j``."""
    n = len(B)
    det = determinant(B)
    sign = 1 if det > 0 else -1
    cols = []
    for j in range(n):
        # column j of adj(B): cofactors of row j
        col = []
        for k in range(n):
            minor = [row[:k] + row[k + 1:] for i, row in enumerate(B) if i != j]
            col.append(sign * (-1) ** (j + k) * determinant(minor))
        cols.append(_normalize(col))
    return cols


def extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y in R^dim : r . y >= 0}``.

    ``rows`` must contain ``dim`` linearly independent vectors, which makes
    the cone pointed.  The result is empty when the cone is ``{0}``.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    start = _initial_basis(rows, dim)
    if len(start) < dim:
        raise ValueError("inequality system does not have full rank")
    B = [list(rows[i]) for i in start]
    rays = _adjugate_columns(B)
    # zero sets as bitmasks over row indices
    zeros = []
    for j in range(dim):
        mask = 0
        for pos, i in enumerate(start):
            if pos != j:
                mask |= 1 << i
        zeros.append(mask)
    done = set(start)
    for i, a in enumerate(rows):
        if i in done:
            continue
        done.add(i)
        bit = 1 << i
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        for k in zer:
            zeros[k] |= bit
        if not neg:
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        new_rays = []
        new_zeros = []
        need = dim - 2
        for p in pos:
            zp = zeros[p]
            for n in neg:
                common = zp & zeros[n]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != n and zeros[k] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], -vals[n]
                ray = [vp * y + vn * x for x, y in zip(rays[p], rays[n])]
                new_rays.append(_normalize(ray))
                new_zeros.append(common | bit)
        keep = pos + zer
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] for k in keep] + new_zeros
    return sorted(set(rays))


def orthogonal_normal(vectors: Sequence[Sequence[int]], dim: int) -> tuple[int, ...]:
    """Integer normal vector of the hyperplane spanned by ``dim - 1`` vectors."""
    normal = []
    for k in range(dim):
        minor = [list(v[:k]) + list(v[k + 1:]) for v in vectors]
        normal.append((-1) ** k * determinant(minor))
    return tuple(normal)


def placing_triangulation(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation of a full-dimensional pointed cone.

    ``generators`` must be the extreme rays of the cone (integer vectors).
    They are placed in the given order; the result is a sorted list of index
    tuples into ``generators``, one per maximal simplicial cone.
    """
    gens = [tuple(g) for g in generators]
    dim = len(gens[0])
    if dim == 1:
        return [(0,)]
    first = []
    for i, g in enumerate(gens):
        if rank([gens[j] for j in first] + [g]) > len(first):
            first.append(i)
            if len(first) == dim:
                break
    if len(first) < dim:
        raise ValueError("generators do not span the ambient space")
    simplices = [tuple(first)]
    for i, g in enumerate(gens):
        if i in first:
            continue
        # boundary facets: (dim-1)-subsets lying in exactly one simplex
        facet_owner: dict[tuple[int, ...], tuple[int, ...] | None] = {}
        for s in simplices:
            for drop in range(dim):
                f = s[:drop] + s[drop + 1:]
                if f in facet_owner:
                    facet_owner[f] = None
                else:
                    facet_owner[f] = s
        added = []
        for f, s in facet_owner.items():
            if s is None:
                continue
            apex = next(x for x in s if x not in f)
            n = orthogonal_normal([gens[x] for x in f], dim)
            side = sum(a * b for a, b in zip(n, gens[apex]))
            if side < 0:
                n = tuple(-x for x in n)
            if sum(a * b for a, b in zip(n, g)) < 0:
                added.append(tuple(sorted(f + (i,))))
        if not added:
            raise ValueError("generator lies inside the cone of earlier generators")
        simplices.extend(added)
    return sorted(simplices)


def affine_hull(points: Sequence[Sequence]) -> tuple[int, list[int], list[list]]:
    """Affine dimension of a point set, a maximal set of independent
    coordinates on its affine hull, and a rational basis of equations.

    Returns ``(k, coords, equations)`` where projecting onto ``coords``
    (``k`` of them) is injective on the affine hull and each equation
    ``(e, c)`` means ``e . x == c`` on the hull.
    """
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    d = len(base)
    if not diffs or not any(any(x for x in v) for v in diffs):
        k, pivots = 0, []
    else:
        R, pivots = row_reduce(diffs)
        k = len(pivots)
    eqs = rational_kernel(diffs, d) if diffs else rational_kernel([], d)
    equations = [(e, sum(a * b for a, b in zip(e, base))) for e in eqs]
    return k, pivots, equations


def lcm_denominators(values) -> int:
    m = 1
    for v in values:
        den = getattr(v, "denominator", 1)
        m = m * den // gcd(m, den)
    return m
