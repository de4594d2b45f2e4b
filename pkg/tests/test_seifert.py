import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minitwistor.errors import WrongComponent
from minitwistor.hyperelliptic_curve import G2, G3, circle_point, circle_zw, monomials
from minitwistor.jacobian import JacPoint, _wrap
from minitwistor.seifert import (
    BoundaryData,
    all_boundary_data,
    boundary_circle,
    boundary_circle_formula,
    circle_intersections,
    grid_angles,
    hyperplane_from_divisor,
    min_circle_distance,
    sample_surface,
    seifert_point,
)

angles = st.floats(-np.pi, np.pi, allow_nan=False)


def test_boundary_data_numbering():
    ks = all_boundary_data(3)
    assert [k.k for k in ks] == [1, 2, 3, 4]
    assert len({k.choices for k in ks}) == 4
    for k in ks:
        assert k.choices[0] == 0
        comp = tuple(1 - c for c in k.choices)
        assert BoundaryData.from_choices(comp).k == k.k
    with pytest.raises(ValueError):
        BoundaryData.from_k(2, 3)


def test_grid_is_symmetric():
    a = grid_angles(16)
    np.testing.assert_allclose(np.sort(-a), a, atol=1e-15)


def test_origin_is_real_half_period(solver2):
    for k in all_boundary_data(2):
        o = solver2.origin(k)
        assert o.scale(2).norm() < 1e-9
        assert (o - solver2.origin_prime(k)).scale(2).norm() < 1e-9


def _tangency_check(cfg, k, c, phis, s, t):
    g = cfg.genus
    for i in range(g):
        z, w = circle_zw(cfg, i, phis[i])
        m = monomials(g, z, w)
        assert abs(c @ m) < 1e-9 * np.linalg.norm(m)
    for a in (s, t):
        z, w = circle_zw(cfg, g, a)
        m = monomials(g, z, w)
        assert abs(c @ m) < 1e-9 * np.linalg.norm(m)


@settings(max_examples=25)
@given(angles, angles, st.integers(0, 1), st.integers(1, 2))
def test_hyperplane_is_tangent_and_passes_outer_points(solver2, s, t, branch, kk):
    k = BoundaryData.from_k(2, kk)
    t = t + 2 * np.pi * branch
    c, resid, gap, ok, phis = solver2.hyperplanes(k, s, t)
    if not ok[0]:
        return
    _tangency_check(G2, k, c[0], phis[0], s, t)


@settings(max_examples=20)
@given(angles, angles)
def test_abel_constraint_on_solution(solver2, s, t):
    k = BoundaryData.from_k(2, 2)
    phis = solver2.solve(k, s, t)[0]
    ra = solver2.real_abel
    total = sum((ra.point(i, phis[i]) for i in range(2)), JacPoint.origin(2)).scale(2)
    total = total + ra.point(2, s) + ra.point(2, t)
    assert total.norm() < 1e-9


def test_full_turn_of_both_angles_gives_same_hyperplane(solver2):
    k = BoundaryData.from_k(2, 1)
    c0, _ = solver2.hyperplane(k, 0.3, 1.1)
    c1, _ = solver2.hyperplane(k, 0.3 + 2 * np.pi, 1.1 + 2 * np.pi)
    assert min(np.linalg.norm(c0 - c1), np.linalg.norm(c0 + c1)) < 1e-9


def test_singular_point_hits_rho(solver2):
    k = BoundaryData.from_k(2, 2)
    phis = solver2.solve(k, 0.7, -0.7)[0]
    np.testing.assert_allclose(np.mod(phis, 2 * np.pi), np.mod(k.angles, 2 * np.pi), atol=1e-9)


def test_seifert_point_and_divisor(solver2):
    k = BoundaryData.from_k(2, 1)
    xi, eta = circle_point(G2, 2, 0.4), circle_point(G2, 2, 2.0)
    sp = seifert_point(solver2, k, xi, eta)
    assert sp.kind == "interior"
    h = hyperplane_from_divisor(solver2, sp)
    assert h.gap_ratio > 1e4
    sing = seifert_point(solver2, k, xi, circle_point(G2, 2, -0.4))
    assert sing.kind == "singular"
    h = hyperplane_from_divisor(solver2, sing, lam=1.5)
    assert h.coeffs[-1] == 0.0


def test_wrong_component_is_reported(solver2, monkeypatch):
    monkeypatch.setattr("minitwistor.seifert.LAT_TOL", -1.0)
    with pytest.raises(WrongComponent):
        seifert_point(solver2, BoundaryData.from_k(2, 1), circle_point(G2, 2, 0.4), circle_point(G2, 2, 2.0))


@pytest.mark.parametrize("last", ["r", "r'"])
def test_boundary_circle_pencil_matches_formula(solver2, last):
    for k in all_boundary_data(2):
        bc = boundary_circle(solver2, k, last, samples=64)
        ref = boundary_circle_formula(solver2, k, last, bc.outer_angles)
        assert np.max(np.abs(_wrap(bc.re - ref))) < 1e-9


def test_boundary_circle_rejects_bad_label(solver2):
    with pytest.raises(ValueError):
        boundary_circle(solver2, BoundaryData.from_k(2, 1), "x")


@pytest.mark.parametrize("kk", [1, 2])
def test_boundary_circles_of_one_surface_meet_twice(solver2, kk):
    k = BoundaryData.from_k(2, kk)
    hits = circle_intersections(solver2, k, "r", k, "r'")
    assert len(hits) == 2
    phi = np.array([h[0] for h in hits])
    pts = boundary_circle_formula(solver2, k, "r", phi)
    ends = [solver2.origin(k).re_array, solver2.origin_prime(k).re_array]
    for p in pts:
        assert min(np.linalg.norm(_wrap(p - e)) for e in ends) < 1e-9


def test_circles_of_different_surfaces_are_disjoint(solver2):
    k1, k2 = all_boundary_data(2)
    assert circle_intersections(solver2, k1, "r", k2, "r") == []
    phi = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    a = boundary_circle_formula(solver2, k1, "r", phi)
    b = boundary_circle_formula(solver2, k2, "r", phi)
    assert min_circle_distance(a, b) > 1e-3


def test_sample_surface_success(solver2):
    surf = sample_surface(solver2, BoundaryData.from_k(2, 1), grid=16)
    assert surf.success_rate >= 0.99
    assert surf.coeffs.shape == (2 * 16 * 16, 5)


def test_genus_three_tangency(solver3):
    for k in all_boundary_data(3):
        c, phis = solver3.hyperplane(k, -0.5, 1.7)
        _tangency_check(G3, k, c, phis, -0.5, 1.7)


@settings(max_examples=20)
@given(angles, angles)
def test_restricted_section_has_double_roots_at_tangencies(solver2, s, t):
    if abs(np.sin((t - s) / 2)) < 0.05 or abs(np.sin((t + s) / 2)) < 0.05:
        return
    P = np.polynomial.polynomial
    c, phis = solver2.hyperplane(BoundaryData.from_k(2, 1), s, t)
    N = P.polyadd(P.polymul(c[:4], c[:4]), c[4] ** 2 * G2.f_poly())
    zp = [float(circle_zw(G2, i, phis[i])[0]) for i in range(2)]
    zo = [float(circle_zw(G2, 2, a)[0]) for a in (s, t)]
    q, r = P.polydiv(N, P.polyfromroots(zp + zp + zo))
    assert np.max(np.abs(r)) < 1e-8 * np.max(np.abs(N))
    assert len(P.polytrim(q, 1e-12)) == 1
    dN = P.polyder(N)
    assert min(abs(P.polyval(z, dN)) for z in zo) > 1e-8 * np.max(np.abs(N))
