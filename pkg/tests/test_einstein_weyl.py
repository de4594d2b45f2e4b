import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minitwistor.einstein_weyl import (
    EWPoint,
    _rotation,
    anchor_lift,
    axis_hyperplane,
    chart_many,
    conformal_metric,
    curve_is_simple,
    ew_chart,
    foliation_check,
    geodesic_spacelike,
    null_defect,
    null_surface,
    random_anchors,
    timelike_geodesic,
    zoll_suite,
)
from minitwistor.errors import DegenerateAnchor, DegeneratePoint
from minitwistor.hyperelliptic_curve import G2, circle_zw, disk_point
from minitwistor.minitwistor_surface import SurfacePoint, build_line, projective_distance
from minitwistor.seifert import BoundaryData

K1 = BoundaryData.from_k(2, 1)
K2 = BoundaryData.from_k(2, 2)


def test_point_coordinates():
    p = EWPoint(K1, 1.0, 0.5, 0.2)
    assert (p.s, p.t) == (0.5, 1.5) and not p.is_axis
    q = EWPoint.on_axis(K1, "I'", 1.5)
    assert q.is_axis and q.u == np.pi
    with pytest.raises(ValueError):
        EWPoint.on_axis(K1, "J", 1.5)


def test_chart_round_trip_through_build_line(solver2, rng):
    for k in (K1, K2):
        for _ in range(5):
            u, v, th = rng.uniform(0.2, 2 * np.pi - 0.2), rng.uniform(0.2, np.pi - 0.2), rng.uniform(-3, 3)
            if abs(np.sin(u)) < 0.1:
                continue
            line = build_line(G2, ew_chart(solver2, EWPoint(k, u, v, th)), solver2)
            assert line.k == k.k
            back = ew_chart(solver2, EWPoint(k, *line.chart))
            assert projective_distance(back, line.hyperplane) < 1e-7


def test_half_turn_identification(solver2):
    a = ew_chart(solver2, EWPoint(K1, 0.8, 1.1, 0.3))
    b = ew_chart(solver2, EWPoint(K1, -0.8, 1.1, 0.3 + np.pi))
    assert projective_distance(a, b) < 1e-9


def test_axis_points_give_irregular_lines(solver2):
    for axis in ("I", "I'"):
        H = ew_chart(solver2, EWPoint.on_axis(K2, axis, 1.4))
        line = build_line(G2, H)
        assert line.kind == "irregular" and line.axis == axis and line.k == 2
    np.testing.assert_allclose(axis_hyperplane(G2, K1, "I", 1.4)[-2:], 0)


def test_chart_limits_toward_axis(solver2):
    H = axis_hyperplane(G2, K1, "I", float(circle_zw(G2, 2, 0.9)[0]))
    near = ew_chart(solver2, EWPoint(K1, 1e-7, 0.9))
    assert projective_distance(near, H) < 1e-5


def test_vectorized_chart_matches_single(solver2):
    u, v = np.array([0.5, 2.0]), np.array([0.7, 1.9])
    c, _ = chart_many(solver2, K1, u, v, 0.4)
    for n in range(2):
        assert projective_distance(c[n], ew_chart(solver2, EWPoint(K1, u[n], v[n], 0.4))) < 1e-9


def test_anchor_lift_rejects_boundary():
    z, w = circle_zw(G2, 2, 0.3)
    with pytest.raises(DegenerateAnchor):
        anchor_lift(G2, (z, w))
    x, y = anchor_lift(G2, disk_point(G2, 0.1, 0.2))
    assert x.y == -y.y and x.residual(G2) < 1e-12


def test_curve_is_simple_detects_self_crossing():
    t = np.linspace(0, 2 * np.pi, 301)
    assert curve_is_simple(t, 1 + 0.5 * np.sin(t))[0]
    # u backtracks, so the curve loops over itself
    assert not curve_is_simple(t + 2 * np.sin(t), 1 + 0.5 * np.cos(t))[0]


@pytest.mark.parametrize("k", [K1, K2])
def test_geodesics_close_and_cross_each_axis_once(solver2, rng, k):
    for d in random_anchors(G2, 3, rng):
        geo = geodesic_spacelike(solver2, k, d, steps=256)
        assert geo.closure_gap < 1e-6
        assert geo.simple
        assert geo.crossings == {"I": 1, "I'": 1}
        assert geo.transversality > 1e-3


def test_geodesic_lines_pass_through_anchor(solver2, rng):
    d = random_anchors(G2, 1, rng)[0]
    geo = geodesic_spacelike(solver2, K1, d, steps=64)
    x, y = anchor_lift(G2, d)
    for c in geo.coeffs[::8]:
        for p in (x, y):
            m = np.real(p.monomials(2))
            assert abs(c @ m) < 1e-9 * np.linalg.norm(m)


def test_zoll_suite_is_seeded(solver2):
    a = zoll_suite(solver2, K1, trials=2, seed=5, steps=128)
    b = zoll_suite(solver2, K1, trials=2, seed=5, steps=128)
    assert [g["anchor"] for g in a["geodesics"]] == [g["anchor"] for g in b["geodesics"]]
    assert a["all_simple"] and a["all_cross_axes_once"]


@pytest.mark.parametrize("lap", [0, 1])
def test_foliation_small_grid(solver2, lap):
    rep = foliation_check(solver2, K1, 0.7, lap, grid=60, arcs=24, fiber=128)
    assert rep.crossings == 0 and rep.multiple == 0.0
    assert rep.coverage >= 0.999
    assert rep.min_separation > 1e-4


@settings(max_examples=15)
@given(st.floats(0.3, 2 * np.pi - 0.3), st.floats(0.2, np.pi - 0.2), st.floats(-np.pi, np.pi), st.integers(1, 2))
def test_metric_is_lorentzian(solver2, u, v, th, kk):
    if abs(np.sin(u)) < 0.2:
        return
    cm = conformal_metric(solver2, EWPoint(BoundaryData.from_k(2, kk), u, v, th))
    assert cm.is_lorentzian


def test_metric_refuses_axis(solver2):
    with pytest.raises(DegeneratePoint):
        conformal_metric(solver2, EWPoint(K1, 0.0, 1.0))


def test_null_cone_rotates_with_circle_action(solver2):
    p = EWPoint(K2, 1.2, 1.3, 0.0)
    q = EWPoint(K2, 1.2, 1.3, 0.9)
    a, b = conformal_metric(solver2, p), conformal_metric(solver2, q)
    R = _rotation(2, 0.9)
    Qa = a.matrix
    ev, vec = np.linalg.eigh(Qa)
    neg, pos = vec[:, ev < 0][:, 0], vec[:, ev > 0]
    for ang in np.linspace(0, 2 * np.pi, 7):
        x = pos @ (np.array([np.cos(ang), np.sin(ang)]) / np.sqrt(ev[ev > 0])) + neg / np.sqrt(-ev[ev < 0][0])
        delta = x @ a.basis
        assert abs(a.form(delta)) < 1e-9 * np.linalg.norm(a.linear @ delta) ** 2
        rot = R @ delta
        rot = rot - (rot @ b.hyperplane) * b.hyperplane
        assert abs(b.form(rot)) < 1e-8 * np.linalg.norm(b.linear @ rot) ** 2


def test_null_surface_is_null(solver2):
    z, w = disk_point(G2, 0.3, -0.2)
    x = anchor_lift(G2, (z, w))[0]
    surf = null_surface(solver2, K1, x, n_theta=4, n_s=32)
    vals = []
    for j in range(4):
        for i in (5, 13, 21):
            try:
                vals.append(null_defect(solver2, surf, j, i))
            except DegeneratePoint:
                pass
    assert vals and max(abs(v) for v in vals) < 1e-5


def test_timelike_curve_has_negative_form(solver2):
    p = EWPoint(K1, 1.3, 1.2, 0.0)
    lo, hi = G2.interval(1)
    curve = timelike_geodesic(solver2, p, complex(0.5 * (lo + hi)), steps=3, h=0.01)
    assert len(curve.points) == 7
    assert np.all(curve.forms < 0)
