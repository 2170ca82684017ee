"""Chart, embeddings, distances and metric"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ChartDomainError, ChartSingularityError, DomainError, InvalidInputError
from src.mechanics.geometry import (
    ChartPoint,
    ChordalPoint,
    Frame,
    ManifoldSpec,
    chart_to_extrinsic,
    chart_to_planar,
    chord_to_geodesic,
    chordal_distance,
    chordal_to_chart,
    christoffel_closed,
    geodesic_distance,
    geodesic_distance_chart,
    geodesic_to_chord,
    max_chart_radius,
    metric,
    pair_distance,
    planar_to_chart,
    pullback_metric,
)
from src.mechanics.ktrig import csn, sn

POINTS_2D = [ChartPoint(0.4, 0.3), ChartPoint(1.1, 2.5), ChartPoint(0.9, -1.7)]
POINTS_3D = [ChartPoint(0.4, 0.5, 0.3), ChartPoint(1.1, 2.0, 2.5), ChartPoint(0.9, 1.3, -1.7)]


def test_manifold_validation():
    with pytest.raises(InvalidInputError):
        ManifoldSpec(4, 1.0)
    with pytest.raises(InvalidInputError):
        ManifoldSpec(2, math.nan)
    assert ManifoldSpec(2, 0.0).radius is None
    assert ManifoldSpec(3, 0.25).radius == pytest.approx(2.0)
    assert ManifoldSpec(2, -1.0).sigma == -1


def test_chart_point_from_array():
    assert ChartPoint.from_array([1.0, 2.0]) == ChartPoint(1.0, 2.0)
    assert ChartPoint.from_array([1.0, 2.0, 3.0]).dim == 3
    with pytest.raises(InvalidInputError):
        ChartPoint.from_array([1.0])


@pytest.mark.parametrize("kappa", [1.0, -1.0, 0.0, 0.3])
@pytest.mark.parametrize("dim", [2, 3])
def test_pole_maps_to_origin(kappa, dim):
    pole = ChartPoint(0.0, 0.7, 0.2 if dim == 3 else None)
    coords = chart_to_extrinsic(ManifoldSpec(dim, kappa), pole).vector
    np.testing.assert_allclose(coords, np.zeros(dim + 1), atol=1e-15)


@pytest.mark.parametrize("kappa", [1.0, -1.0, 4.0, -0.25])
def test_center_origin_points_lie_on_the_manifold(kappa):
    m = ManifoldSpec(3, kappa)
    for p in POINTS_3D:
        q = chart_to_extrinsic(m, p, Frame.CENTER_ORIGIN).vector
        norm = float(np.dot(q[:-1], q[:-1]) + m.sigma * q[-1] ** 2)
        assert norm == pytest.approx(1.0 / kappa, rel=1e-12)


@pytest.mark.parametrize("kappa", [1.0, -1.0])
def test_frames_differ_by_a_constant_shift(kappa):
    m = ManifoldSpec(2, kappa)
    for p in POINTS_2D:
        centered = chart_to_extrinsic(m, p, Frame.CENTER_ORIGIN).vector
        shifted = chart_to_extrinsic(m, p).vector
        np.testing.assert_allclose(centered[:-1], shifted[:-1], atol=1e-15)
        assert centered[-1] - shifted[-1] == pytest.approx(1.0 / math.sqrt(abs(kappa)), rel=1e-12)


def test_center_origin_undefined_when_flat():
    with pytest.raises(InvalidInputError):
        chart_to_extrinsic(ManifoldSpec(2, 0.0), ChartPoint(1.0, 0.0), Frame.CENTER_ORIGIN)


def test_chordal_distance_rejects_mixed_frames():
    m = ManifoldSpec(2, 1.0)
    a = chart_to_extrinsic(m, POINTS_2D[0])
    b = chart_to_extrinsic(m, POINTS_2D[1], Frame.CENTER_ORIGIN)
    with pytest.raises(InvalidInputError):
        chordal_distance(a, b)


def test_quarter_circle_on_unit_sphere():
    m = ManifoldSpec(2, 1.0)
    d = geodesic_distance(m, ChartPoint(math.pi / 2, 0.0), ChartPoint(math.pi / 2, math.pi / 2))
    assert d == pytest.approx(math.pi / 2, rel=1e-12)


@pytest.mark.parametrize("kappa", [1.0, -1.0, 0.2, -3.0])
@pytest.mark.parametrize("points", [POINTS_2D, POINTS_3D])
def test_distance_forms_agree(kappa, points):
    m = ManifoldSpec(points[0].dim, kappa)
    for a in points:
        for b in points:
            if a == b:
                continue
            d = geodesic_distance(m, a, b)
            assert geodesic_distance_chart(m, a, b) == pytest.approx(d, rel=1e-10)
            chord, via_chord = pair_distance(m, a, b)
            assert via_chord == pytest.approx(d, rel=1e-10)
            assert chord == pytest.approx(geodesic_to_chord(kappa, d), rel=1e-10)


curvatures = st.builds(
    lambda magnitude, sign: sign * magnitude,
    st.floats(min_value=0.05, max_value=2.0),
    st.sampled_from([1.0, -1.0]),
)
radii = st.floats(min_value=0.1, max_value=1.0)
angles = st.floats(min_value=-math.pi, max_value=math.pi)


@given(kappa=curvatures, s_a=radii, s_b=radii, phi_a=angles, phi_b=angles)
@settings(max_examples=200, deadline=None)
def test_distance_forms_agree_on_random_pairs(kappa, s_a, s_b, phi_a, phi_b):
    m = ManifoldSpec(2, kappa)
    a, b = ChartPoint(s_a, phi_a), ChartPoint(s_b, phi_b)
    d = geodesic_distance(m, a, b)
    assert geodesic_distance_chart(m, a, b) == pytest.approx(d, abs=1e-6)
    assert pair_distance(m, a, b)[1] == pytest.approx(d, abs=1e-6)


@given(kappa=st.floats(min_value=-4.0, max_value=4.0), s=st.floats(min_value=0.01, max_value=1.5))
@settings(max_examples=300, deadline=None)
def test_chord_geodesic_round_trip_property(kappa, s):
    assert chord_to_geodesic(kappa, geodesic_to_chord(kappa, s)) == pytest.approx(s, rel=1e-10)


def test_flat_distance_is_euclidean():
    m = ManifoldSpec(2, 0.0)
    a, b = POINTS_2D[0], POINTS_2D[1]
    expected = float(np.linalg.norm(chart_to_planar(a) - chart_to_planar(b)))
    assert geodesic_distance(m, a, b) == pytest.approx(expected, rel=1e-14)
    assert pair_distance(m, a, b)[0] == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("kappa", [1.0, -1.0, 1e-8, 0.0])
def test_chord_geodesic_round_trip(kappa):
    for s in (0.1, 0.8, 1.5):
        assert chord_to_geodesic(kappa, geodesic_to_chord(kappa, s)) == pytest.approx(s, rel=1e-12)


def test_chord_beyond_diameter():
    with pytest.raises(DomainError):
        chord_to_geodesic(1.0, 3.0)
    with pytest.raises(InvalidInputError):
        chordal_to_chart(1.0, ChordalPoint(-0.1, 0.0))


def test_chordal_to_chart_keeps_angles():
    p = chordal_to_chart(-1.0, ChordalPoint(0.8, 1.0, 2.0))
    assert (p.phi, p.theta) == (1.0, 2.0)
    assert p.s == pytest.approx(2.0 * math.asinh(0.4), rel=1e-14)


@pytest.mark.parametrize("kappa", [1.0, -1.0, 0.0])
@pytest.mark.parametrize("point", [POINTS_2D[1], POINTS_3D[1]])
def test_closed_metric_matches_pullback(kappa, point):
    m = ManifoldSpec(point.dim, kappa)
    g, g_inv = metric(m, point)
    np.testing.assert_allclose(pullback_metric(m, point.as_array()), g, atol=1e-13)
    np.testing.assert_allclose(g @ g_inv, np.eye(point.dim), atol=1e-14)


def test_metric_chart_singularities():
    with pytest.raises(ChartSingularityError) as excinfo:
        metric(ManifoldSpec(2, 1.0), ChartPoint(0.0, 1.0))
    assert excinfo.value.coordinate == "s"
    with pytest.raises(ChartSingularityError) as excinfo:
        metric(ManifoldSpec(3, -1.0), ChartPoint(0.5, 0.0, 1.0))
    assert excinfo.value.coordinate == "phi"
    with pytest.raises(ChartSingularityError):
        metric(ManifoldSpec(2, 1.0), ChartPoint(math.pi, 1.0))


def test_points_outside_the_chart_are_rejected():
    sphere = ManifoldSpec(2, 1.0)
    with pytest.raises(ChartDomainError) as excinfo:
        metric(sphere, ChartPoint(-0.5, 0.3))
    assert excinfo.value.bound == 0.0
    with pytest.raises(ChartDomainError) as excinfo:
        chart_to_extrinsic(sphere, ChartPoint(4.0, 0.3))
    assert excinfo.value.bound == pytest.approx(math.pi)
    with pytest.raises(ChartDomainError):
        geodesic_distance(ManifoldSpec(3, 4.0), ChartPoint(1.6, 1.0, 0.0), POINTS_3D[0])
    with pytest.raises(InvalidInputError):
        christoffel_closed(ManifoldSpec(2, -1.0), ChartPoint(-1e-3, 0.3))

    assert max_chart_radius(4.0) == pytest.approx(math.pi / 2)
    assert max_chart_radius(0.0) == math.inf
    hyperbolic = chart_to_extrinsic(ManifoldSpec(2, -1.0), ChartPoint(4.0, 0.3)).vector
    assert hyperbolic[-1] == pytest.approx(math.cosh(4.0) - 1.0, rel=1e-12)


def test_christoffel_closed_entries():
    kappa, p = 0.5, ChartPoint(0.9, 1.1, 0.4)
    gamma = christoffel_closed(ManifoldSpec(3, kappa), p)
    np.testing.assert_array_equal(gamma, np.swapaxes(gamma, 1, 2))
    assert gamma[0, 1, 1] == pytest.approx(-sn(kappa, 0.9) * csn(kappa, 0.9))
    assert gamma[1, 2, 2] == pytest.approx(-math.sin(1.1) * math.cos(1.1))
    assert gamma[2, 1, 2] == pytest.approx(1.0 / math.tan(1.1))
    assert gamma[0, 0, 0] == 0.0


def test_planar_round_trip():
    for p in (ChartPoint(1.3, 2.0), ChartPoint(1.2, 0.8, 2.0)):
        back = planar_to_chart(chart_to_planar(p))
        np.testing.assert_allclose(back.as_array(), p.as_array(), rtol=1e-14)


def test_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        chart_to_extrinsic(ManifoldSpec(3, 1.0), ChartPoint(0.5, 0.5))
