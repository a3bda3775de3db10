"""Acceptance criteria 1-10, all with exact rational equality.

Run ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from corpus import classified_corpus, corpus, weakly_sporadic_sample
from finepoly.arith import vector_gcd
from finepoly.fine import candidate_set, clear_caches, fine_interior
from finepoly.fixtures import (delpezzo, klein, named_polygon, scaled_simplex, unit_simplex)
from finepoly.lattice_maps import (affine_normal_form, apply_projection, lattice_width,
                                   unimodular_equivalent, width_one_directions)
from finepoly.multiplier import (NEG_INFINITY, NOT_SPORADIC, PROJECTABLE, SPORADIC,
                                 WEAKLY_SPORADIC, canonical_fano, classify, kodaira_dimension,
                                 minimal_multiplier, sporadicity_check)
from finepoly.polytope import LatticePolytope, convex_hull
from finepoly.records import PolytopeDocument

F = Fraction
ROOT = Path(__file__).resolve().parents[1]


# 1. minimal multipliers of the named fixtures

MU_FIXTURES = [
    ("delpezzo-1", lambda: delpezzo(1), F(7, 6)),
    ("delpezzo-2", lambda: delpezzo(2), F(5, 4)),
    ("delpezzo-3", lambda: delpezzo(3), F(4, 3)),
    ("two-triangle", lambda: scaled_simplex(2, 2), F(3, 2)),
    ("unit-simplex-1", lambda: unit_simplex(1), F(2)),
    ("unit-simplex-2", lambda: unit_simplex(2), F(3)),
    ("unit-simplex-3", lambda: unit_simplex(3), F(4)),
    ("unit-simplex-4", lambda: unit_simplex(4), F(5)),
    ("klein-P3", lambda: klein(2), F(4, 3)),
    ("klein-P4", lambda: klein(3), F(5, 3)),
]


@pytest.mark.criterion(1)
@pytest.mark.parametrize("name,make,expected", MU_FIXTURES, ids=[m[0] for m in MU_FIXTURES])
def test_c1_multiplier_fixtures(name, make, expected):
    P = make()
    clear_caches()
    start = time.perf_counter()
    mu = minimal_multiplier(P)
    elapsed = time.perf_counter() - start
    assert mu == expected
    assert elapsed < 1.0


# 2. the three weakly sporadic polygons that are not sporadic

@pytest.mark.criterion(2)
@pytest.mark.parametrize("n,mu", [(1, F(2)), (2, F(2)), (3, F(3))])
def test_c2_weakly_sporadic_polygons(n, mu):
    P = named_polygon(n)
    report = classify(P)
    assert report.classification == WEAKLY_SPORADIC
    assert report.mu == mu
    assert width_one_directions(P)
    assert lattice_width(P, 6).width == 1
    assert sporadicity_check(P).status == NOT_SPORADIC


@pytest.mark.criterion(2)
def test_c2_polygons_pairwise_inequivalent():
    polys = [named_polygon(n) for n in (1, 2, 3)]
    for A, B in itertools.combinations(polys, 2):
        assert not unimodular_equivalent(A, B)


# 3. the sporadic polygon 2 * Delta^2

@pytest.mark.criterion(3)
def test_c3_sporadic_polygon():
    P = scaled_simplex(2, 2)
    assert fine_interior(P, 1).is_empty
    w = lattice_width(P, 6)
    assert w.width == 2 and w.exhaustive
    assert sporadicity_check(P).status == SPORADIC
    assert affine_normal_form(named_polygon(4)) == affine_normal_form(P)


# 4. Case-1 projection of the quadrilateral

@pytest.mark.criterion(4)
def test_c4_case1_projection():
    P = named_polygon(5)
    report = classify(P)
    assert report.classification == PROJECTABLE
    assert report.mu == 2
    assert fine_interior(P, 2).dim == 1
    pi, image = report.projection
    assert apply_projection(P, pi) == image
    assert unimodular_equivalent(image, LatticePolytope([(0,), (1,)]))
    assert minimal_multiplier(image) == 2
    assert fine_interior(image, 2).dim == 0


# 5. canonical Fano invariants

WS_FIXTURES = [named_polygon(1), named_polygon(2), named_polygon(3), named_polygon(4),
               scaled_simplex(2, 2), delpezzo(1), delpezzo(2), delpezzo(3),
               unit_simplex(1), unit_simplex(2), unit_simplex(3), unit_simplex(4), klein(3)]


def _check_fano(P, report):
    assert report.classification == WEAKLY_SPORADIC
    data = canonical_fano(P, report)
    Q, Qd = data.q_polytope, data.q_dual
    d = P.ambient_dim
    assert Q.is_full_dimensional
    assert Q.interior_lattice_points() == [(0,) * d]
    # mu P - p inside Q* checked against the definition of the polar
    shifted = P.scale(report.mu).translate([-x for x in data.p])
    for x in shifted.vertices:
        for y in Q.vertices:
            assert sum(a * b for a, b in zip(x, y)) >= -1
    assert Qd.contains(shifted)
    assert Qd.volume() > P.volume()


@pytest.mark.criterion(5)
@pytest.mark.parametrize("P", WS_FIXTURES, ids=lambda P: str(P.vertices))
def test_c5_fano_fixtures(P):
    _check_fano(P, classify(P))


@pytest.mark.criterion(5)
def test_c5_fano_random_weakly_sporadic():
    sample = weakly_sporadic_sample(200)
    assert len(sample) == 200
    assert {P.ambient_dim for P, _ in sample} == {2, 3}
    for P, report in sample:
        _check_fano(P, report)


# 6. Fine interior against the box oracle

def _box(d, B=8):
    return [v for v in itertools.product(range(-B, B + 1), repeat=d) if vector_gcd(v) == 1]


BOXES = {d: _box(d) for d in (1, 2, 3)}


def _satisfies_box(P, Fp):
    """Every vertex of Fp obeys <x, nu> >= Min_P(nu) + 1 for all nu in the box."""
    verts = [tuple(int(x) for x in v) for v in P.vertices]
    L = 1
    for w in Fp.vertices:
        for x in w:
            L = L * x.denominator // __import__("math").gcd(L, x.denominator)
    fverts = [tuple(int(x * L) for x in w) for w in Fp.vertices]
    for nu in BOXES[P.ambient_dim]:
        m = min(sum(a * b for a, b in zip(v, nu)) for v in verts)
        bound = (m + 1) * L
        for w in fverts:
            if sum(a * b for a, b in zip(w, nu)) < bound:
                return False
    return True


@pytest.mark.criterion(6)
def test_c6_candidate_sufficiency():
    data = classified_corpus()
    assert len(data) == 500
    for P, report in data:
        Fp = report.fine_at_one
        # the box only adds inequalities, so F is unchanged iff its vertices satisfy them
        assert _satisfies_box(P, Fp)


@pytest.mark.criterion(6)
def test_c6_augmented_recomputation_low_dim():
    from finepoly.polytope import Polytope
    for P, report in classified_corpus():
        if P.ambient_dim > 2:
            continue
        nus = set(candidate_set(P)) | set(BOXES[P.ambient_dim])
        aug = Polytope.from_inequalities([(nu, P.support_min(nu) + 1) for nu in nus],
                                         P.ambient_dim)
        assert aug.vertices == report.fine_at_one.vertices


@pytest.mark.criterion(6)
def test_c6_low_dim_equals_interior_hull():
    for P, report in classified_corpus():
        if P.ambient_dim > 2:
            continue
        pts = P.interior_lattice_points()
        Fp = report.fine_at_one
        if not pts:
            assert Fp.is_empty
        else:
            assert Fp.vertices == convex_hull(pts).vertices


# 7. multiplier trichotomy

@pytest.mark.criterion(7)
def test_c7_trichotomy():
    for P, report in classified_corpus():
        d, mu = P.ambient_dim, report.mu
        assert fine_interior(P, mu * (1 - F(1, 3))).is_empty
        assert 0 <= report.dim_fine_at_mu <= d - 1
        assert fine_interior(P, mu).dim == report.dim_fine_at_mu
        assert fine_interior(P, mu + 1).dim == d
        assert mu <= d + 1


# 8. heredity and Kodaira dimension

@pytest.mark.criterion(8)
def test_c8_f_hollow_implies_hollow_and_kodaira():
    for P, report in classified_corpus():
        kod = kodaira_dimension(P)
        if fine_interior(P, 1).is_empty:
            assert P.interior_lattice_points() == []
        assert (kod == NEG_INFINITY) == (report.mu > 1)


@pytest.mark.criterion(8)
def test_c8_kodaira_of_dilated_triangles():
    assert kodaira_dimension(scaled_simplex(2, 4)) == 1
    assert kodaira_dimension(scaled_simplex(2, 3)) == 0


# 9. width parity of Klein simplices

@pytest.mark.criterion(9)
def test_c9_klein_widths():
    assert lattice_width(klein(2), 4).width == 1
    w4 = lattice_width(klein(3), 4)
    assert w4.width == 2
    assert width_one_directions(klein(3)) == []


# 10. batch determinism

def _batch_documents():
    polys = corpus(40, seed=424242)
    polys += [P for P, _ in weakly_sporadic_sample(6, seed=11)]
    polys += [scaled_simplex(2, 2), named_polygon(5), delpezzo(3), klein(2)]
    return [PolytopeDocument.from_polytope(P, f"batch-{i}").serialize()
            for i, P in enumerate(polys)]


def _run_batch(path, parallel):
    cmd = [sys.executable, "-m", "finepoly", "batch", "--input", str(path),
           "--parallel", str(parallel)]
    return subprocess.run(cmd, capture_output=True, cwd=ROOT, check=False)


@pytest.mark.criterion(10)
def test_c10_batch_parallel_byte_identical(tmp_path):
    docs = _batch_documents()
    assert len(docs) == 50
    path = tmp_path / "corpus.ndjson"
    path.write_text("\n".join(docs) + "\n")
    serial = _run_batch(path, 1)
    parallel = _run_batch(path, 8)
    assert serial.returncode == 0, serial.stderr.decode()
    assert parallel.returncode == 0, parallel.stderr.decode()
    assert serial.stdout == parallel.stdout
    lines = serial.stdout.decode().splitlines()
    assert len(lines) == 51
    summary = json.loads(lines[-1])["summary"]
    assert summary["records"] == 50 and summary["errors"] == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
