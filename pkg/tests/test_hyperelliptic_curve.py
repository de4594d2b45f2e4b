import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minitwistor.errors import ConfigError, RamificationPoint
from minitwistor.hyperelliptic_curve import (
    G1,
    G2,
    G3,
    BranchConfig,
    CurvePoint,
    circle_angle,
    circle_index,
    circle_point,
    circle_zw,
    continue_w,
    curve_point,
    cycle,
    disk_coords,
    disk_point,
    embed,
    eval_w,
    holomorphic_basis,
    hyperplane_section,
    integrate_basis,
    ramification_point,
    sheet_of,
)

angles = st.floats(-np.pi, np.pi, allow_nan=False)


def test_config_validation():
    with pytest.raises(ConfigError):
        BranchConfig.from_points([])
    with pytest.raises(ConfigError):
        BranchConfig.from_points([0.0, 1.0, 1.0, 2.0])
    with pytest.raises(ConfigError):
        BranchConfig(2, (0.0, 1.0, 2.0, 3.0))
    assert BranchConfig.from_points(G2.branch_points) == G2


def test_text_round_trip():
    assert BranchConfig.from_text(G3.to_text()) == G3


def test_intervals_and_gaps():
    assert G2.interval(2) == (1.0, 2.0)
    assert G2.gap(0) == (-4.0, -2.0)
    assert circle_index(G2, 1.5) == 2
    assert circle_index(G2, 0.0) == -1


@pytest.mark.parametrize("cfg", [G1, G2, G3])
def test_w_squares_to_minus_f(cfg, rng):
    z = rng.normal(size=50) * 4 + 1j * rng.normal(size=50)
    for sheet in (1, -1):
        w = eval_w(cfg, z, sheet)
        np.testing.assert_allclose(w**2, -cfg.f(z), rtol=1e-12)


def test_real_w_on_outer_interval():
    w = eval_w(G2, 1.5, 1)
    assert abs(w.imag) == 0 and w.real > 0
    assert sheet_of(G2, 1.5, w) == 1
    assert sheet_of(G2, 1.5, -w) == -1


def test_gap_value_is_imaginary():
    w = eval_w(G2, 0.0, 1)
    assert abs(w.real) < 1e-12
    assert abs(w.imag) == pytest.approx(np.sqrt(80.0))


def test_basis_at_zero():
    p = curve_point(G2, 0.0)
    np.testing.assert_allclose(holomorphic_basis(p, 2), [1 / p.w, 0.0])


def test_ramification_basis_raises():
    with pytest.raises(RamificationPoint):
        holomorphic_basis(ramification_point(G2, 0), 2)


def test_involution_and_residual():
    p = curve_point(G2, 0.3 + 0.7j)
    q = p.involution()
    assert q.w == -p.w and q.sheet == -p.sheet
    assert p.residual(G2) < 1e-14


def test_continuation_follows_branch():
    zs = 0.5 + np.exp(1j * np.linspace(0, np.pi, 200)) * 0.2
    w = continue_w(G2, zs, eval_w(G2, zs[0], 1))
    np.testing.assert_allclose(w**2, -G2.f(zs), rtol=1e-12)
    assert np.max(np.abs(np.diff(w))) < 0.5


@given(angles)
def test_circle_angle_inverts_parameterization(phi):
    for i in range(G2.genus + 1):
        z, w = circle_zw(G2, i, phi)
        assert circle_angle(G2, i, z, w) == pytest.approx(phi, abs=1e-9)
        assert abs(w**2 + G2.f(z)) < 1e-9 * (1 + abs(G2.f(z)))


@given(st.floats(0, 0.999), angles)
def test_disk_coordinates_round_trip(r, a):
    x, y = r * np.cos(a), r * np.sin(a)
    z, w = disk_point(G2, x, y)
    xx, yy = disk_coords(G2, z, w)
    assert xx == pytest.approx(x, abs=1e-12) and yy == pytest.approx(y, abs=1e-12)
    assert w**2 <= -G2.f(z) + 1e-12


def test_circle_endpoints_are_ramification_points():
    for i in range(3):
        assert circle_point(G2, i, 0.0).z.real == pytest.approx(G2.lower[i])
        assert circle_point(G2, i, np.pi).z.real == pytest.approx(G2.upper[i])


def test_embedding_ambients():
    p = curve_point(G2, 1.5)
    assert len(embed(p, 2).coords) == 5
    assert embed(p, 2, "CP_{g+3}").coords[-1] == 0
    with pytest.raises(ValueError):
        embed(p, 2, "CP_1")


@pytest.mark.parametrize("cfg", [G1, G2, G3])
def test_hyperplane_section_has_2g_plus_2_points(cfg, rng):
    c = rng.normal(size=cfg.genus + 3)
    pts = hyperplane_section(cfg, c)
    assert len(pts) == 2 * cfg.genus + 2
    for p in pts:
        m = np.concatenate([p.z ** np.arange(cfg.genus + 2), [p.w]])
        assert abs(c @ m) < 1e-8 * np.linalg.norm(m)
        assert p.residual(cfg) < 1e-8


@pytest.mark.parametrize("cfg", [G2, G3])
def test_cycle_periods_are_real_or_imaginary(cfg):
    for i in range(cfg.genus):
        circ = integrate_basis(cfg, cycle(cfg, "circle", i))
        gap = integrate_basis(cfg, cycle(cfg, "gap", i))
        assert np.linalg.norm(circ.imag) < 1e-12 * np.linalg.norm(circ)
        assert np.linalg.norm(gap.real) < 1e-12 * np.linalg.norm(gap)


def test_cycle_rejects_bad_index():
    with pytest.raises(ValueError):
        cycle(G2, "gap", 2)
    with pytest.raises(ValueError):
        cycle(G2, "loop", 0)


def test_point_from_other_sheet():
    p = curve_point(G2, 0.2 + 0.1j, -1)
    assert isinstance(p, CurvePoint) and p.sheet == -1
