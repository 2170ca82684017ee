"""Cotangent and Newtonian potentials, gradients and the singular set"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import InvalidInputError, SingularConfigurationError
from src.mechanics.benchmarks import three_body_chordal
from src.mechanics.convergence import geometric_kappas
from src.mechanics.geometry import ManifoldSpec
from src.mechanics.oracle import fd_gradient
from src.mechanics.potentials import (
    ANTIPODAL,
    COLLISION,
    BodySystem,
    CotangentPotential,
    FreePotential,
    NewtonPotential,
    detect_singularities,
    get_potential,
    grad_chart,
    newton_potential_cartesian,
    potential_continuity,
    u_cotangent,
    u_newton,
)

MASSES = [1.0, 2.0, 1.5]
CONFIG_2D = np.array([[0.5, 0.0], [0.7, 2.0], [0.6, 4.2]])
CONFIG_3D = np.array([[0.5, 1.0, 0.0], [0.7, 1.4, 2.0], [0.6, 2.0, 4.2]])


def system(dim, kappa, positions=None):
    positions = (CONFIG_2D if dim == 2 else CONFIG_3D) if positions is None else positions
    return BodySystem(ManifoldSpec(dim, kappa), MASSES, positions)


def test_body_system_validation():
    with pytest.raises(InvalidInputError):
        BodySystem(ManifoldSpec(2, 1.0), [1.0, 2.0], CONFIG_2D)
    with pytest.raises(InvalidInputError):
        BodySystem(ManifoldSpec(3, 1.0), MASSES, CONFIG_2D)
    with pytest.raises(InvalidInputError, match="body 1"):
        BodySystem(ManifoldSpec(2, 1.0), [1.0, -2.0, 1.0], CONFIG_2D)


@pytest.mark.parametrize("dim", [2, 3])
def test_flat_cotangent_is_newtonian(dim):
    flat = system(dim, 0.0)
    assert u_cotangent(flat) == pytest.approx(u_newton(flat), rel=1e-14)
    assert NewtonPotential().value(flat) == pytest.approx(CotangentPotential().value(flat), rel=1e-14)


def test_newton_cartesian_pair():
    assert newton_potential_cartesian([2.0, 3.0], [[0.0, 0.0], [3.0, 4.0]]) == pytest.approx(-6.0 / 5.0)


@pytest.mark.parametrize("kappa", [1.0, -1.0, 0.3, -2.0])
@pytest.mark.parametrize("dim", [2, 3])
def test_three_forms_agree(kappa, dim):
    s = system(dim, kappa)
    chordal = u_cotangent(s, "chordal")
    assert u_cotangent(s, "geodesic") == pytest.approx(chordal, rel=1e-12)
    assert u_cotangent(s, "ambient") == pytest.approx(chordal, rel=1e-12)


def test_forms_need_curvature():
    with pytest.raises(InvalidInputError):
        u_cotangent(system(2, 0.0), "geodesic")
    with pytest.raises(InvalidInputError):
        u_cotangent(system(2, 1.0), "bogus")


@pytest.mark.parametrize("kappa", [1.0, -1.0, 0.0, 0.05])
@pytest.mark.parametrize("dim", [2, 3])
def test_gradient_matches_finite_differences(kappa, dim):
    s = system(dim, kappa)
    analytic = grad_chart(s)
    numeric = fd_gradient(lambda p: u_cotangent(s.with_positions(p)), s.positions)
    np.testing.assert_allclose(analytic, numeric, rtol=1e-6, atol=1e-7)


def test_gradient_sums_to_zero_in_angle():
    # rotating every body about the pole leaves U unchanged
    grad = grad_chart(system(2, 1.0))
    assert abs(grad[:, 1].sum()) < 1e-12


def test_antipodal_pair_on_unit_sphere():
    s = BodySystem(ManifoldSpec(2, 1.0), [1.0, 1.0], [[math.pi / 2, 0.0], [math.pi / 2, math.pi]])
    reports = detect_singularities(s)
    assert [(r.i, r.j, r.kind) for r in reports] == [(0, 1, ANTIPODAL)]
    with pytest.raises(SingularConfigurationError) as excinfo:
        u_cotangent(s)
    assert excinfo.value.reports[0].kind == ANTIPODAL


def test_collision():
    s = BodySystem(ManifoldSpec(3, -1.0), [1.0, 1.0], [[0.5, 1.0, 1.0], [0.5, 1.0, 1.0]])
    reports = detect_singularities(s)
    assert reports[0].kind == COLLISION
    assert reports[0].to_dict()["pair"] == [0, 1]
    with pytest.raises(SingularConfigurationError):
        grad_chart(s)


def test_hyperbolic_has_no_antipodes():
    s = BodySystem(ManifoldSpec(2, -1.0), [1.0, 1.0], [[2.0, 0.0], [2.0, math.pi]])
    assert detect_singularities(s) == []


def test_potential_strategies():
    flat = system(2, 0.0)
    assert isinstance(get_potential("cotangent"), CotangentPotential)
    assert FreePotential().value(flat) == 0.0
    np.testing.assert_array_equal(get_potential("none").gradient(flat), np.zeros((3, 2)))
    with pytest.raises(InvalidInputError):
        NewtonPotential().value(system(2, 1.0))
    with pytest.raises(InvalidInputError):
        get_potential("yukawa")


@pytest.mark.parametrize("dim", [2, 3])
def test_potential_continuity_is_first_order(dim):
    masses, chordal = three_body_chordal(dim)
    report = potential_continuity(chordal, masses, geometric_kappas(range(-1, -7, -1)))

    assert report.name == "potential"
    assert not report.failures
    for side in report.sides():
        assert side.fit.slope == pytest.approx(1.0, abs=0.1)
    u_zero = report.metadata["u_zero"]
    smallest = min((row for row in report.rows if row.kappa > 0), key=lambda row: row.kappa)
    assert smallest.error <= 1e-5 * abs(u_zero)


def test_potential_continuity_rejects_zero_curvature():
    masses, chordal = three_body_chordal(2)
    with pytest.raises(InvalidInputError):
        potential_continuity(chordal, masses, [0.1, 0.0])


@pytest.mark.parametrize(
    "separation, expected",
    [(math.pi / 2, 0.0), (math.pi / 4, -1.0)],
)
def test_equatorial_pair_values(separation, expected):
    s = BodySystem(ManifoldSpec(2, 1.0), [1.0, 1.0], [[math.pi / 2, 0.0], [math.pi / 2, separation]])
    for form in ("chordal", "geodesic", "ambient"):
        assert u_cotangent(s, form) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "masses, positions, expected",
    [
        ([1.0, 1.0], [[1.0, 0.0], [1.0, math.pi]], -0.5),
        ([2.0, 3.0], [[0.5, 0.0], [0.5, math.pi]], -6.0),
        ([1.0, 1.0, 1.0], [[1.0 / math.sqrt(3.0), k * 2.0 * math.pi / 3.0] for k in range(3)], -3.0),
    ],
)
def test_newton_values(masses, positions, expected):
    flat = BodySystem(ManifoldSpec(2, 0.0), masses, positions)
    assert u_newton(flat) == pytest.approx(expected, rel=1e-12)
    assert u_cotangent(flat) == pytest.approx(expected, rel=1e-12)


def test_equatorial_right_angle_gradient():
    s = BodySystem(ManifoldSpec(2, 1.0), [1.0, 1.0], [[math.pi / 2, 0.0], [math.pi / 2, math.pi / 2]])
    np.testing.assert_allclose(grad_chart(s), [[0.0, -1.0], [0.0, 1.0]], atol=1e-12)


radii = st.floats(min_value=0.3, max_value=1.2)
shifts = st.floats(min_value=-10.0, max_value=10.0)


@given(
    kappa=st.sampled_from([1.0, -1.0, 0.4, -2.5, 0.0]),
    s=st.tuples(radii, radii, radii),
    base=shifts,
    shift=shifts,
)
@settings(max_examples=100, deadline=None)
def test_potential_is_invariant_under_a_common_rotation_2d(kappa, s, base, shift):
    angles = np.array([0.0, 2.0, 4.0]) + base
    before = np.column_stack([s, angles])
    after = np.column_stack([s, angles + shift])
    m = ManifoldSpec(2, kappa)
    assert u_cotangent(BodySystem(m, MASSES, after)) == pytest.approx(
        u_cotangent(BodySystem(m, MASSES, before)), rel=1e-13, abs=1e-13
    )


@given(
    kappa=st.sampled_from([1.0, -1.0, 0.4, -2.5, 0.0]),
    s=st.tuples(radii, radii, radii),
    phi=st.tuples(*[st.floats(min_value=0.4, max_value=2.7)] * 3),
    base=shifts,
    shift=shifts,
)
@settings(max_examples=100, deadline=None)
def test_potential_is_invariant_under_a_common_rotation_3d(kappa, s, phi, base, shift):
    azimuths = np.array([0.0, 2.0, 4.0]) + base
    before = np.column_stack([s, phi, azimuths])
    after = np.column_stack([s, phi, azimuths + shift])
    m = ManifoldSpec(3, kappa)
    assert u_cotangent(BodySystem(m, MASSES, after)) == pytest.approx(
        u_cotangent(BodySystem(m, MASSES, before)), rel=1e-13, abs=1e-13
    )
