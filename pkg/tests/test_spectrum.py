import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_coefficients
from superosc import basis, spectrum
from superosc.errors import DegenerateSpectrumError, InvalidBandError
from superosc.spectrum import LegendreSpectrum

ROOT_2_PI = math.sqrt(2 / math.pi)


def test_rescale_examples():
    assert spectrum.rescale_to_unit_band(-1, 1, 0.7) == (pytest.approx(0.7), pytest.approx(1.0))
    tp, phase = spectrum.rescale_to_unit_band(0, 2, 1.0)
    assert tp == 1.0 and phase == pytest.approx(cmath.exp(1j))
    assert spectrum.rescale_to_unit_band(-3, -1, 0.0) == (0.0, 1.0)
    with pytest.raises(InvalidBandError):
        spectrum.rescale_to_unit_band(1, 1, 0.0)


def test_band_properties_and_validation():
    s = LegendreSpectrum([1, 2], band=(2.0, 6.0))
    assert s.bandwidth == 4.0 and s.center == 4.0
    with pytest.raises(InvalidBandError):
        LegendreSpectrum([1], band=(3.0, 1.0))
    with pytest.raises(ValueError):
        LegendreSpectrum([])


def test_spectrum_is_immutable():
    s = LegendreSpectrum([1, 2])
    with pytest.raises(ValueError):
        s.coefficients[0] = 5


def test_json_roundtrip():
    s = LegendreSpectrum([1 + 2j, -0.5, 3j], band=(-2.0, 4.0))
    d = json.loads(json.dumps(s.to_dict()))
    assert d["band"] == [-2.0, 4.0]
    back = LegendreSpectrum.from_dict(d)
    assert np.array_equal(back.coefficients, s.coefficients) and back.band == s.band
    assert LegendreSpectrum.from_dict({"band": None, "coefficients": [[1, 0]]}).band is None


# evaluation -------------------------------------------------------------------


def test_evaluate_examples():
    assert spectrum.evaluate(LegendreSpectrum([1]), 0.0) == pytest.approx(ROOT_2_PI)
    assert spectrum.evaluate(LegendreSpectrum([0, 1]), 0.0) == 0
    # c_1 = -3 i z c_0 sets the rate z; the sign follows g'(0)/g(0) = i c_1 / (3 c_0)
    z0 = 5.0
    s = LegendreSpectrum([1, -3j * z0])
    ratio = oracles.richardson_derivative(lambda t: spectrum.evaluate(s, t), 0.0) / spectrum.evaluate(s, 0.0)
    assert ratio == pytest.approx(z0, rel=1e-9)
    s_flip = LegendreSpectrum([1, 3j * z0])
    assert spectrum.local_rate(s_flip) == pytest.approx(-z0)


def test_evaluate_matches_frequency_quadrature(rng):
    s = LegendreSpectrum(random_coefficients(rng, 7))
    x, w = np.polynomial.legendre.leggauss(200)
    dens = spectrum.spectral_density(s, x)
    for t in (-7.0, -0.3, 0.0, 1.1, 12.0):
        ref = np.sum(w * np.exp(1j * x * t) * dens) / math.sqrt(2 * math.pi)
        assert abs(spectrum.evaluate(s, t) - ref) < 1e-13


def test_evaluate_array_shape():
    s = LegendreSpectrum([1, 2, 3])
    assert spectrum.evaluate(s, np.zeros((4, 2))).shape == (4, 2)
    assert isinstance(spectrum.evaluate(s, 0.5), complex)


def test_taylor_examples(rng):
    s = LegendreSpectrum([1])
    assert spectrum.evaluate_taylor(s, 0.0, 3) == pytest.approx(ROOT_2_PI)
    assert abs(spectrum.evaluate_taylor(s, 1.0, 20) - ROOT_2_PI * math.sin(1.0)) < 1e-12
    for M in (1, 4, 10):
        s = LegendreSpectrum(random_coefficients(rng, M))
        t = np.linspace(-2, 2, 21)
        assert np.abs(spectrum.evaluate_taylor(s, t, 40) - spectrum.evaluate(s, t)).max() < 1e-10
    with pytest.raises(ValueError):
        spectrum.evaluate_taylor(s, 0.0, 0)


# moments and cumulants ----------------------------------------------------------


def test_moment_examples():
    c0, c1, c2 = 0.7 - 0.2j, 1.3j, -0.4
    assert spectrum.moment(LegendreSpectrum([c0]), 0) == pytest.approx(2 * c0)
    assert spectrum.moment(LegendreSpectrum([c0, c1]), 1) == pytest.approx(2 / 3 * c1)
    assert spectrum.moment(LegendreSpectrum([c0, 0, c2]), 2) == pytest.approx(2 / 3 * c0 + 4 / 15 * c2)


def test_moment_identity(rng):
    for M in (3, 10):
        s = LegendreSpectrum(random_coefficients(rng, M))
        for m in range(9):
            deriv = spectrum.evaluate_derivative(s, m, 0.0)
            assert abs(spectrum.moment(s, m) - (-1j) ** m * deriv * math.sqrt(2 * math.pi)) < 1e-9


def test_moment_matches_quadrature(rng):
    s = LegendreSpectrum(random_coefficients(rng, 6))
    x, w = np.polynomial.legendre.leggauss(40)
    dens = spectrum.spectral_density(s, x)
    for m in range(12):
        assert abs(spectrum.moment(s, m) - np.sum(w * x**m * dens)) < 1e-13


def test_cumulant_examples():
    c0, c1, c2 = 1.5, 0.4 + 2j, -0.7j
    assert spectrum.cumulant(LegendreSpectrum([c0, c1]), 1) == pytest.approx(c1 / (3 * c0))
    z = 1j * c1 / (3 * c0)
    expected = 1 / 3 + 2 * c2 / (15 * c0) + z * z
    assert spectrum.cumulant(LegendreSpectrum([c0, c1, c2]), 2) == pytest.approx(expected)
    assert spectrum.cumulant(LegendreSpectrum([1, 0, 1]), 1) == 0


def test_cumulants_match_log_derivatives(rng):
    # i^-n d^n/dt^n ln g(0) from analytic derivatives of g
    s = LegendreSpectrum(random_coefficients(rng, 8, min_c0=0.5))
    d = [spectrum.evaluate_derivative(s, m, 0.0) for m in range(5)]
    g0, g1, g2, g3, g4 = d
    l1 = g1 / g0
    l2 = g2 / g0 - l1**2
    l3 = g3 / g0 - 3 * (g2 / g0) * l1 + 2 * l1**3
    l4 = (g4 / g0 - 4 * (g3 / g0) * l1 - 3 * (g2 / g0) ** 2
          + 12 * (g2 / g0) * l1**2 - 6 * l1**4)
    logs = [l1, l2, l3, l4]
    cums = spectrum.cumulants(s, 4)
    for n in range(4):
        assert cums[n] == pytest.approx(logs[n] / 1j ** (n + 1), rel=1e-9, abs=1e-10)


def test_cumulant_errors():
    with pytest.raises(DegenerateSpectrumError):
        spectrum.cumulant(LegendreSpectrum([1e-15, 1]), 1)
    with pytest.raises(ValueError):
        spectrum.cumulants(LegendreSpectrum([1, 1]), 9)
    assert spectrum.cumulants(LegendreSpectrum([1, 1]), 9, max_order=10).size == 9
    with pytest.raises(ValueError):
        spectrum.cumulant(LegendreSpectrum([1]), 0)


def test_local_rate_examples():
    assert spectrum.local_rate(LegendreSpectrum([1, 30])) == pytest.approx(10j)
    assert spectrum.local_rate(LegendreSpectrum([1, 30j])) == pytest.approx(-10)
    assert spectrum.local_rate(LegendreSpectrum([1, 0])) == 0
    assert spectrum.local_rate(LegendreSpectrum([2])) == 0
    with pytest.raises(DegenerateSpectrumError):
        spectrum.local_rate(LegendreSpectrum([0, 1]))


def test_rate_identity(rng):
    for _ in range(10):
        s = LegendreSpectrum(random_coefficients(rng, 8))
        ratio = spectrum.evaluate_derivative(s, 1, 0.0) / spectrum.evaluate(s, 0.0)
        assert abs(ratio - 1j * spectrum.moment(s, 1) / spectrum.moment(s, 0)) < 1e-9
        assert ratio == pytest.approx(spectrum.local_rate(s), rel=1e-12)


def test_parseval(rng):
    s = LegendreSpectrum(random_coefficients(rng, 9))
    x, w = np.polynomial.legendre.leggauss(30)
    quad = np.sum(w * np.abs(spectrum.spectral_density(s, x)) ** 2)
    n = np.arange(9)
    assert abs(np.sum(2 * np.abs(s.coefficients) ** 2 / (2 * n + 1)) - quad) < 1e-10


# prescription ---------------------------------------------------------------------


def test_prescribe_examples():
    s = spectrum.prescribe_rate(10j)
    assert np.allclose(s.coefficients, [1, 30])
    s0 = spectrum.prescribe_rate(0)
    assert np.allclose(s0.coefficients, [1, 0])
    t = np.linspace(0.1, 5, 7)
    assert np.allclose(spectrum.evaluate(s0, t), ROOT_2_PI * np.sin(t) / t)
    with pytest.raises(DegenerateSpectrumError):
        spectrum.prescribe_rate(1j, c0=0)


def test_prescribe_roundtrip(rng):
    for _ in range(100):
        z = complex(*rng.uniform(-20, 20, 2))
        tail = rng.normal(size=rng.integers(0, 6)) * (1 + 1j)
        s = spectrum.prescribe_rate(z, tail, c0=complex(*rng.normal(size=2)))
        assert spectrum.local_rate(s) == pytest.approx(z, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False),
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), max_size=6),
    st.complex_numbers(min_magnitude=0.01, max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_prescribe_rate_any_tail(z, tail, c0):
    s = spectrum.prescribe_rate(z, tail, c0)
    assert abs(spectrum.local_rate(s) - z) <= 1e-12 * max(1.0, abs(z))


def test_superoscillate_everywhere_coefficients():
    root = math.sqrt(math.pi / 2)
    for s_ in (1.5, 2.0, 3.0):
        c = spectrum.superoscillate_everywhere(s_, 3).coefficients
        assert abs(c[0] - root) < 1e-12
        assert abs(c[1] - 3 * s_ * root) < 1e-12
        assert abs(c[2] - 7.5 * (s_**2 - 1 / 3) * root) < 1e-12
    with pytest.raises(ValueError):
        spectrum.superoscillate_everywhere(2.0, 0)


def test_superoscillate_everywhere_derivatives():
    s = spectrum.superoscillate_everywhere(2.0, 12)
    for N in range(12):
        d = spectrum.evaluate_derivative(s, N, 0.0)
        assert abs(d - (2j) ** N) <= 1e-6 * 2**N
    # the analytic derivatives agree with finite differences of lower orders
    for N in range(1, 4):
        fd = oracles.richardson_derivative(lambda t: spectrum.evaluate_derivative(s, N - 1, t), 0.0)
        assert abs(fd - (2j) ** N) <= 1e-6 * 2**N


def test_evaluate_derivative_matches_finite_differences(rng):
    s = LegendreSpectrum(random_coefficients(rng, 6))
    for t in (-1.0, 0.0, 2.3):
        fd = oracles.richardson_derivative(lambda x: spectrum.evaluate(s, x), t)
        assert abs(spectrum.evaluate_derivative(s, 1, t) - fd) < 1e-9


def test_spectral_density_edges():
    s = LegendreSpectrum([1, 2, 3])
    assert spectrum.spectral_density(s, 1.0) == pytest.approx(6)
    assert spectrum.spectral_density(s, -1.0) == pytest.approx(2)
    assert basis.legendre(2, 0.0) == -0.5
