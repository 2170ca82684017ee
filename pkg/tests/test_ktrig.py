"""Unified trigonometry"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DomainError, PoleError
from src.mechanics.ktrig import SERIES_THRESHOLD, asn, csn, ctn, d_csn, d_sn, sigma, sn, tn

kappas = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def test_flat_values():
    assert sn(0.0, 1.7) == 1.7
    assert csn(0.0, 1.7) == 1.0
    assert tn(0.0, 1.7) == 1.7
    assert ctn(0.0, 2.0) == 0.5


def test_circular_and_hyperbolic_closed_forms():
    assert sn(4.0, 0.3) == pytest.approx(math.sin(0.6) / 2.0, rel=1e-15)
    assert csn(4.0, 0.3) == pytest.approx(math.cos(0.6), rel=1e-15)
    assert sn(-4.0, 0.3) == pytest.approx(math.sinh(0.6) / 2.0, rel=1e-15)
    assert csn(-4.0, 0.3) == pytest.approx(math.cosh(0.6), rel=1e-15)


def test_sigma():
    assert sigma(1.0) == 1
    assert sigma(0.0) == 1
    assert sigma(-0.5) == -1


@given(kappa=kappas, u=unit)
@settings(max_examples=500, deadline=None)
def test_pythagorean_identity(kappa, u):
    bound = math.pi if kappa > 0 else 3.0
    s = u * bound / math.sqrt(max(abs(kappa), 1e-12))
    residual = abs(kappa * sn(kappa, s) ** 2 + csn(kappa, s) ** 2 - 1.0)
    assert residual <= 1e-12 * (1.0 + abs(kappa) * s * s)


@given(s=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
def test_continuity_at_zero_curvature(s):
    for kappa in (1e-12, -1e-12):
        assert abs(sn(kappa, s) - s) <= 1e-10
        assert abs(csn(kappa, s) - 1.0) <= 1e-10


@pytest.mark.parametrize("kappa", [1.0, -1.0])
def test_series_branch_joins_closed_form(kappa):
    edge = math.sqrt(SERIES_THRESHOLD / abs(kappa))
    below, above = edge * (1.0 - 1e-9), edge * (1.0 + 1e-9)
    assert sn(kappa, below) == pytest.approx(sn(kappa, above), rel=1e-8)
    assert csn(kappa, below) == pytest.approx(csn(kappa, above), rel=1e-14)
    closed = math.sin(below) if kappa > 0 else math.sinh(below)
    assert sn(kappa, below) == pytest.approx(closed, rel=1e-14)


@given(kappa=kappas, u=unit)
@settings(max_examples=300, deadline=None)
def test_asn_inverts_sn(kappa, u):
    s = 1.4 * u / math.sqrt(max(abs(kappa), 1.0))
    assert asn(kappa, sn(kappa, s)) == pytest.approx(s, abs=1e-10)


def test_asn_domain():
    with pytest.raises(DomainError):
        asn(1.0, 1.5)
    assert asn(1.0, 1.0 + 1e-13) == pytest.approx(math.pi / 2, rel=1e-12)
    assert asn(-1.0, 5.0) == pytest.approx(math.asinh(5.0), rel=1e-15)


def test_poles():
    with pytest.raises(PoleError) as excinfo:
        ctn(1.0, 0.0)
    assert excinfo.value.function == "ctn"
    with pytest.raises(PoleError):
        tn(1.0, math.pi / 2)
    with pytest.raises(PoleError):
        ctn(0.0, 0.0)


def test_derivatives():
    s = 0.7
    assert d_sn(2.0, s) == csn(2.0, s)
    assert d_csn(2.0, s) == pytest.approx(-2.0 * sn(2.0, s), rel=1e-15)
    h = 1e-6
    assert d_csn(-3.0, s) == pytest.approx((csn(-3.0, s + h) - csn(-3.0, s - h)) / (2 * h), rel=1e-8)


def test_array_and_scalar_results():
    s = np.linspace(0.0, 1.0, 5)
    values = sn(1.0, s)
    assert isinstance(values, np.ndarray)
    assert values.shape == (5,)
    assert isinstance(sn(1.0, 0.5), float)
    with pytest.raises(PoleError):
        ctn(1.0, s)
