"""Named lattice polytopes used as fixtures and by ``finepoly gen``.

Polygons drawn at arbitrary offsets are stored as the drawn coordinates or a
normalized translate; the normal form makes the choice immaterial.
"""

from __future__ import annotations

from .polytope import LatticePolytope


def unit_simplex(d: int) -> LatticePolytope:
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = [tuple(0 for _ in range(d))]
    pts += [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return LatticePolytope(pts)


def scaled_simplex(d: int, k: int) -> LatticePolytope:
    if k < 1:
        raise ValueError("scale factor must be a positive integer")
    return unit_simplex(d).dilate(k)


def klein(d: int) -> LatticePolytope:
    """Newton simplex of ``t1^2 + t1 t2^2 + ... + t_d t_{d+1}^2 + t_{d+1}``.

    It lives in dimension ``d + 1``.
    """
    if d < 1:
        raise ValueError("klein fixture needs d >= 1")
    n = d + 1

    def vec(entries):
        v = [0] * n
        for i, e in entries:
            v[i] = e
        return tuple(v)

    pts = [vec([(0, 2)])]
    for i in range(d):
        pts.append(vec([(i, 1), (i + 1, 2)]))
    pts.append(vec([(n - 1, 1)]))
    return LatticePolytope(pts)


_DELPEZZO = {
    1: [(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 6)],
    2: [(0, 0, 0), (2, 0, 0), (0, 4, 0), (0, 0, 4)],
    3: [(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)],
}


def delpezzo(i: int) -> LatticePolytope:
    if i not in _DELPEZZO:
        raise ValueError("delpezzo index must be 1, 2 or 3")
    return LatticePolytope(_DELPEZZO[i])


_POLYGONS = {
    # the three weakly sporadic polygons that are not sporadic
    1: [(0, 0), (1, 0), (0, 1), (1, 1)],
    2: [(0, 0), (2, 0), (0, 1)],
    3: [(0, 0), (1, 0), (0, 1)],
    # translate of 2 * unit triangle as drawn
    4: [(1, -1), (-1, 1), (-1, -1)],
    # projectable quadrilateral with a one-dimensional F(2P)
    5: [(-4, -2), (0, -2), (-2, -1), (-4, -1)],
    # width-1 strip
    6: [(0, 0), (4, 0), (0, 1)],
    # F-hollow quadrilateral of width 1
    7: [(-2, -1), (1, -1), (3, -2), (-2, -2)],
}


def named_polygon(n: int) -> LatticePolytope:
    if n not in _POLYGONS:
        raise ValueError(f"polygon index must be one of {sorted(_POLYGONS)}")
    return LatticePolytope(_POLYGONS[n])


def prism_over_2simplex() -> LatticePolytope:
    """``[0,1] x 2 * unit triangle``."""
    tri = [(0, 0), (2, 0), (0, 2)]
    return LatticePolytope([(t,) + p for t in (0, 1) for p in tri])


GENERATORS = {
    "unit-simplex": (unit_simplex, 1),
    "scaled-simplex": (scaled_simplex, 2),
    "klein": (klein, 1),
    "delpezzo": (delpezzo, 1),
    "polygon": (named_polygon, 1),
}


def generate(name: str, params: list[int]) -> LatticePolytope:
    """Build a fixture by its command-line name."""
    if name not in GENERATORS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(GENERATORS)}")
    func, arity = GENERATORS[name]
    if len(params) != arity:
        raise ValueError(f"fixture {name!r} takes {arity} integer parameter(s)")
    return func(*params)


def fixture_name(name: str, params: list[int]) -> str:
    return " ".join([name] + [str(p) for p in params])
