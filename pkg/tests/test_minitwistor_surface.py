import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minitwistor.errors import NotInFamily
from minitwistor.hyperelliptic_curve import G2, G3, circle_zw
from minitwistor.minitwistor_surface import (
    QuadricCover,
    SurfacePoint,
    boundary_hyperplane,
    boundary_section,
    build_line,
    ew_coordinates,
    intersection_points,
    lift_to_T,
    line_contains,
    line_points,
    projective_distance,
    pullback,
    s1_act,
    section_rank,
)
from minitwistor.seifert import BoundaryData, all_boundary_data

angles = st.floats(-np.pi, np.pi, allow_nan=False)
complexes = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


@given(complexes, complexes)
def test_lift_lies_on_surface(z, w):
    for p in lift_to_T(G2, z, w):
        assert p.residual(G2) < 1e-10
        assert abs(p.u * p.v + G2.f(z)) < 1e-9 * (1 + abs(G2.f(z)))


@given(complexes, complexes, angles)
def test_circle_action_preserves_surface_and_incidence(z, w, theta):
    p = lift_to_T(G2, z, w)[0]
    q = s1_act(theta, p)
    assert q.residual(G2) < 1e-10
    assert q.u == pytest.approx(np.exp(1j * theta) * p.u, abs=1e-9 * (1 + abs(p.u)))
    H = np.random.default_rng(0).normal(size=6)
    scale = np.linalg.norm(p.monomials(2))
    assert abs(s1_act(theta, H) @ q.monomials(2) - H @ p.monomials(2)) < 1e-12 * scale


def test_real_structure_is_an_involution():
    p = lift_to_T(G2, 0.3 + 0.4j, 1.2 - 0.5j)[0]
    q = p.sigma().sigma()
    assert (q.z, q.w, q.y) == (p.z, p.w, p.y)
    assert SurfacePoint.at_infinity().sigma().chart == "p_inf_bar"
    assert SurfacePoint(1.5 + 0j, 0.1 + 0j, 0.2 + 0j).is_real()
    with pytest.raises(ValueError):
        SurfacePoint.at_infinity("nowhere")


def test_from_uv_round_trip():
    p = SurfacePoint.from_uv(0.5, 2 + 1j, -1j)
    assert p.u == pytest.approx(2 + 1j) and p.v == pytest.approx(-1j)


def test_projective_distance_ignores_scale_and_sign():
    a = np.array([1.0, 2.0, 3.0])
    assert projective_distance(a, -3 * a) < 1e-15
    assert pullback(a)[-1] == 0 and len(pullback(a)) == 4


@settings(max_examples=25)
@given(angles, angles, angles, st.integers(1, 2))
def test_seifert_hyperplanes_give_regular_lines(solver2, s, t, theta, kk):
    if abs(np.sin((t - s) / 2)) < 0.05 or abs(np.sin((t + s) / 2)) < 0.05:
        return
    k = BoundaryData.from_k(2, kk)
    c, _ = solver2.hyperplane(k, s, t)
    H = s1_act(theta, pullback(c))
    line = build_line(G2, H, solver2)
    assert line.kind == "regular"
    assert len(line.nodes) == 2
    assert line.k == kk
    u, v, th = line.chart
    ref = ew_coordinates(s, t, theta)
    assert abs(np.exp(1j * u) - np.exp(1j * ref[0])) < 1e-6 or abs(np.exp(1j * u) + np.exp(1j * ref[0])) < 1e-6
    zs = sorted(float(circle_zw(G2, 2, a)[0]) for a in (s, t))
    np.testing.assert_allclose(line.arc, zs, atol=1e-7)
    # nodes next to ramification points are found less accurately
    for row in line.real_circle:
        p = SurfacePoint(complex(row[0]), complex(row[1]), complex(row[2]))
        assert p.residual(G2) < 1e-6 and line_contains(G2, line.hyperplane, p, 1e-8)


def test_nodes_are_singular_points_of_the_section(solver2):
    c, _ = solver2.hyperplane(BoundaryData.from_k(2, 1), 0.4, 2.2)
    line = build_line(G2, pullback(c))
    for i, node in enumerate(line.nodes):
        lo, hi = G2.interval(i)
        assert lo <= node.z.real <= hi
        assert line_contains(G2, line.hyperplane, node)


def test_random_hyperplanes_are_rejected(rng):
    for _ in range(20):
        with pytest.raises(NotInFamily):
            build_line(G2, rng.normal(size=6))


def test_irregular_lines_detect_axes():
    for choices, axis in [((0, 0), "I"), ((1, 0), "I'")]:
        ram = [G2.interval(i)[c] for i, c in enumerate(choices)] + [1.5]
        H = np.concatenate([np.polynomial.polynomial.polyfromroots(ram), [0.0, 0.0]])
        line = build_line(G2, H)
        assert line.kind == "irregular" and line.axis == axis
        assert len(line.components) == 5
        assert line.k == BoundaryData.from_choices(choices).k


def test_intersection_count_and_rank(rng):
    H1, H2 = rng.normal(size=6), rng.normal(size=6)
    assert len(intersection_points(G2, H1, H2)) == 6
    pts = line_points(G2, H1, rng.normal(size=4) + 1j * rng.normal(size=4))
    assert section_rank(G2, pts) == 5
    free = [lift_to_T(G2, z, w)[0] for z, w in rng.normal(size=(8, 2))]
    assert section_rank(G2, free) == 6


def test_quadric_cover_ramification_images():
    for k in all_boundary_data(2):
        for hatted in (False, True):
            qc = QuadricCover(G2, k, hatted)
            B, Bp = qc._sets()
            for b in B:
                assert qc.project_affine(SurfacePoint(complex(b), 0j, 0j)) == (0, complex("inf"))
            for b in Bp:
                assert qc.project_affine(SurfacePoint(complex(b), 0j, 0j)) == (complex("inf"), 0)
            assert qc.project_affine(SurfacePoint.at_infinity()) == (0, 0)


@given(complexes.filter(lambda z: 0.05 < abs(z) < 5))
def test_real_fiber_has_one_point_per_sphere(Z):
    qc = QuadricCover(G2, BoundaryData.from_k(2, 2))
    pts = qc.real_fiber(Z)
    assert len(pts) == 3
    for i, p in enumerate(pts):
        lo, hi = G2.interval(i)
        assert lo - 1e-9 <= p.z.real <= hi + 1e-9
        assert p.residual(G2) < 1e-9
        a, b = qc.project_affine(p)
        assert abs(a - Z) < 1e-7 * (1 + abs(Z))


@pytest.mark.parametrize("hatted", [False, True])
def test_boundary_sections_match_seifert_diagonal(solver2, hatted):
    k = BoundaryData.from_k(2, 1)
    qc = QuadricCover(G2, k, hatted)
    for s in (0.3, 1.9, -2.5):
        z, w = circle_zw(G2, 2, s)
        p = SurfacePoint(complex(z), complex(w), 0j)
        Z = qc.project_affine(p)[0]
        c, _ = solver2.hyperplane(k, s, s + (2 * np.pi if hatted else 0.0))
        assert projective_distance(boundary_hyperplane(qc, Z), pullback(c)) < 1e-9
        line = boundary_section(qc, Z)
        assert line.kind == "boundary" and len(line.nodes) == 3


def test_genus_three_lines(solver3):
    for k in all_boundary_data(3):
        c, _ = solver3.hyperplane(k, -0.7, 1.3)
        line = build_line(G3, pullback(c), solver3)
        assert line.kind == "regular" and len(line.nodes) == 3 and line.k == k.k
