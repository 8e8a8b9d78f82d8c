import json
import math

import numpy as np
import pytest
from scipy import integrate, special

import oracles
from superosc import approx, basis, cylindrical
from superosc.approx import TargetFunction
from superosc.cylindrical import RadialSpectrum
from superosc.errors import DomainError, NodeError

NUS = np.arange(1, 10) / 10


def _random_radial(rng, M):
    return RadialSpectrum((rng.normal(size=M) + 1j * rng.normal(size=M)) / math.sqrt(2))


# real-space and spectral values -----------------------------------------------


def test_radial_signal_examples():
    one = RadialSpectrum([1])
    assert cylindrical.radial_signal(one, 0.0) == 0.5
    assert cylindrical.radial_signal(one, 1e-8) == pytest.approx(0.5, abs=1e-15)
    assert cylindrical.radial_signal(RadialSpectrum([0, 1]), 0.0) == 0
    assert cylindrical.radial_signal(one, 2.0) == pytest.approx(basis.bessel_j(1, 2.0) / 2, abs=1e-15)
    rho = np.array([0.0, 0.5, 3.0])
    assert cylindrical.radial_signal(RadialSpectrum([1, 2, 3]), rho).shape == (3,)


def test_radial_signal_sign_convention():
    rho = np.linspace(0.1, 8, 20)
    a = RadialSpectrum([0.3, -1.2, 2j])
    ref = sum((-1) ** n * c * special.jv(2 * n + 1, rho) / rho for n, c in enumerate(a.coefficients))
    assert np.allclose(cylindrical.radial_signal(a, rho), ref, atol=1e-15)


def test_zernike_spectrum_examples():
    nu = np.linspace(0, 1, 7)
    assert np.allclose(cylindrical.zernike_spectrum_value(RadialSpectrum([1]), nu), 1)
    assert cylindrical.zernike_spectrum_value(RadialSpectrum([0, 1]), 1.0) == pytest.approx(1.0)
    assert cylindrical.zernike_spectrum_value(RadialSpectrum([1, 1]), 0.0) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        cylindrical.zernike_spectrum_value(RadialSpectrum([1]), 1.2)
    with pytest.raises(DomainError):
        cylindrical.zernike_spectrum_value(RadialSpectrum([1]), -0.1)


def test_radial_spectrum_validation_and_json():
    with pytest.raises(ValueError):
        RadialSpectrum([])
    a = RadialSpectrum([1 + 1j, -2])
    d = json.loads(json.dumps(a.to_dict()))
    assert set(d) == {"coefficients"}
    assert np.array_equal(RadialSpectrum.from_dict(d).coefficients, a.coefficients)
    fit = approx.approximate_radial(TargetFunction.radial_cosine(10), 0.5, 1.5, 4)
    assert np.array_equal(cylindrical.radial_spectrum_from_fit(fit).coefficients, fit.coefficients)
    with pytest.raises(ValueError):
        cylindrical.radial_spectrum_from_fit(approx.approximate_line(TargetFunction.cosine(1), -1, 1, 3))


# Hankel transform -------------------------------------------------------------------


def test_hankel_examples():
    assert cylindrical.hankel_transform(lambda r: np.zeros_like(r), 0.5) == 0
    h1 = lambda r: special.j1(r) / r  # noqa: E731
    inside = cylindrical.hankel_transform(h1, NUS, 2000.0, edge=1.0)
    assert np.abs(inside - 1).max() < 1e-4
    outside = cylindrical.hankel_transform(h1, np.array([1.5, 2.0, 3.0]), 2000.0, edge=1.0)
    assert np.abs(outside).max() < 1e-4
    a = RadialSpectrum([0, 1])
    got = cylindrical.radial_hankel(a, NUS)
    assert np.abs(got - basis.zernike_radial(2, NUS)).max() < 1e-4


def test_hankel_matches_scipy_quad():
    # independent oracle: adaptive quadrature over the first few oscillations
    h = lambda r: special.j1(r) / r * np.exp(-0.01 * r * r)  # noqa: E731
    for nu in (0.0, 0.4, 1.3):
        ref = integrate.quad(lambda r: r * h(r) * special.j0(nu * r), 0, 60, limit=400)[0]
        assert cylindrical.hankel_transform(h, nu, 60.0) == pytest.approx(ref, abs=1e-10)


def test_hard_truncation_error_is_the_predicted_tail():
    a = RadialSpectrum([0.7, -0.2, 0.4j])
    h = lambda r: cylindrical.radial_signal(a, r)  # noqa: E731
    edge = complex(np.sum(a.coefficients))
    ref = cylindrical.zernike_spectrum_value(a, NUS)
    hard = cylindrical.hankel_transform(h, NUS, 2000.0)
    corrected = cylindrical.hankel_transform(h, NUS, 2000.0, edge=edge)
    assert np.abs(hard - ref).max() < 5e-3
    assert np.abs(corrected - ref).max() < 1e-4
    tail = cylindrical._asymptotic_tail(edge, NUS, 2000.0)
    assert np.abs(hard + tail - ref).max() < 1e-4


def test_transform_pair_roundtrip(rng):
    for _ in range(10):
        a = _random_radial(rng, int(rng.integers(1, 5)))
        got = cylindrical.radial_hankel(a, NUS)
        assert np.abs(got - cylindrical.zernike_spectrum_value(a, NUS)).max() < 2e-3


def test_bandlimit(rng):
    for _ in range(5):
        a = _random_radial(rng, int(rng.integers(1, 5)))
        out = cylindrical.radial_hankel(a, np.array([1.5, 2.0, 3.0]))
        assert np.abs(out).max() < 2e-3


# Zernike normalization ------------------------------------------------------------------


def test_zernike_norms():
    G = cylindrical.zernike_norms(12)
    off = G - np.diag(np.diag(G))
    assert np.abs(off).max() < 1e-10
    order = 2 * np.arange(13)
    assert np.allclose(np.diag(G) * (2 * order + 2), 1, atol=1e-10)
    # the constant 1/(2 order + 1) does not fit beyond order 0
    assert np.all(np.abs(np.diag(G)[1:] * (2 * order[1:] + 1) - 1) > 0.01)
    ref = integrate.quad(lambda v: v * basis.zernike_radial(2, v) ** 2, 0, 1)[0]
    assert ref == pytest.approx(1 / 6, abs=1e-14)


# generalized rates ------------------------------------------------------------------------


def test_outgoing_wave_rate():
    k = 10.0
    rho = 2.0
    rate = cylindrical.generalized_rates(
        lambda r: np.cos(k * r) / np.sqrt(r), lambda r: np.sin(k * r) / np.sqrt(r), rho
    )
    # laplacian(h) / h = -k^2 + 1 / (4 rho^2) exactly
    exact = math.sqrt(k * k - 1 / (4 * rho * rho))
    assert abs(rate.k - k) / k < 0.02
    assert rate.k == pytest.approx(exact, rel=1e-4)
    assert rate.kappa < 1e-2


def test_real_field_rates():
    h = lambda r: np.cosh(3 * r)  # noqa: E731
    rate = cylindrical.generalized_rates(h, lambda r: 0.0 * r, 1.5)
    A = (9 * math.cosh(4.5) + 3 * math.sinh(4.5) / 1.5) / math.cosh(4.5)
    assert rate.k == 0.0
    assert rate.ratio.imag == 0.0
    assert rate.kappa == pytest.approx(math.sqrt(A), rel=1e-6)


def test_rate_identity(rng):
    for _ in range(20):
        a = _random_radial(rng, 5)
        for rho in (0.7, 2.3, 6.0):
            r = cylindrical.generalized_rates_series(a, rho)
            A, B = r.ratio.real, r.ratio.imag
            assert abs(r.kappa**2 - r.k**2 - A) <= 1e-8 * max(1.0, abs(A))
            assert abs((2 * r.kappa * r.k) ** 2 - B * B) <= 1e-8 * max(1.0, B * B)


def test_series_rates_match_finite_differences(rng):
    a = _random_radial(rng, 4)
    for rho in (0.8, 2.0, 5.0):
        exact = cylindrical.generalized_rates_series(a, rho)
        fd = cylindrical.generalized_rates(
            lambda r: cylindrical.radial_signal(a, r).real,
            lambda r: cylindrical.radial_signal(a, r).imag,
            rho,
        )
        assert fd.ratio == pytest.approx(exact.ratio, rel=1e-5, abs=1e-6)


def test_supergrowing_radial_fit_rate():
    fit = approx.approximate_radial(TargetFunction.radial_exponential(10), 0.5, 1.5, 10)
    a = cylindrical.radial_spectrum_from_fit(fit)
    rate = cylindrical.generalized_rates_series(a, 1.0)
    h = lambda r: approx.fit_values(fit, r)  # noqa: E731
    d1 = oracles.richardson_derivative(h, 1.0)
    d2 = oracles.richardson_derivative(lambda r: oracles.richardson_derivative(h, r), 1.0)
    fd = (d2 + d1) / h(1.0)
    assert rate.ratio == pytest.approx(fd, rel=1e-5)
    # for exp(10 rho) / sqrt(rho) the exact ratio is 100 + 1 / (4 rho^2)
    assert rate.kappa == pytest.approx(math.sqrt(100.25), rel=1e-3)
    assert abs(rate.kappa - 10) < 0.05
    assert rate.k < 1e-3


def test_rate_errors():
    one = RadialSpectrum([1])
    zero = special.jn_zeros(1, 1)[0]
    with pytest.raises(NodeError):
        cylindrical.generalized_rates_series(one, zero)
    with pytest.raises(DomainError):
        cylindrical.generalized_rates_series(one, 0.0)
    with pytest.raises(DomainError):
        cylindrical.radial_laplacian(np.cos, -1.0)
    with pytest.raises(ValueError):
        cylindrical.radial_laplacian(np.cos, 1.0, step=0.0)
