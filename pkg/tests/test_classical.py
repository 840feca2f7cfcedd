import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitcycle import classical
from limitcycle.errors import IntegrationFailureError, InvalidParameterError


def test_origin_is_fixed_point():
    cp = classical.ClassicalParams.rvdp(0.5, 0.1)
    assert classical.grvdp_rhs((0.0, 0.0), cp) == (0.0, 0.0)


def test_harmonic_energy_conservation():
    cp = classical.ClassicalParams(epsilon=0.0, gamma2=0.0, eta=0.0, zeta=0.0)
    times = np.linspace(0, 2 * math.pi, 101)
    path = classical.integrate((1.0, 0.0), cp, times, dt=0.01)
    energy = 0.5 * (path[:, 0] ** 2 + path[:, 1] ** 2)
    assert np.max(np.abs(energy - energy[0])) < 1e-8


def test_rvdp_circular_orbit_is_exact():
    # x = A_c cos(t) solves the equation identically for eta = zeta = 1
    eps, g2 = 0.7, 0.35
    a_c = math.sqrt(eps / g2)
    cp = classical.ClassicalParams.rvdp(eps, g2)
    for t in np.linspace(0, 2 * math.pi, 17):
        x, v = a_c * math.cos(t), -a_c * math.sin(t)
        dx, dv = classical.grvdp_rhs((x, v), cp)
        assert dx == pytest.approx(v, abs=1e-14)
        # acceleration must equal -x exactly on the circular solution
        assert dv == pytest.approx(-x, abs=1e-12)


def test_vdp_amplitude_quick():
    cp = classical.ClassicalParams.vdp(0.1, 0.1)  # A_c = 1
    times = np.concatenate([[0.0], np.arange(280.0, 300.0, 0.02)])
    path = classical.integrate((0.5, 0.0), cp, times, dt=0.01)
    amp = np.abs(path[1:, 0]).max()
    assert amp == pytest.approx(2.0, rel=0.02)


def test_rayleigh_amplitude_quick():
    cp = classical.ClassicalParams.rayleigh(0.1, 0.1)
    times = np.concatenate([[0.0], np.arange(280.0, 300.0, 0.02)])
    path = classical.integrate((0.5, 0.0), cp, times, dt=0.01)
    assert np.abs(path[1:, 0]).max() == pytest.approx(2.0 / math.sqrt(3), rel=0.02)


def test_subthreshold_decay():
    cp = classical.ClassicalParams.rvdp(-0.2, 0.1)
    times = np.linspace(0, 80, 81)
    path = classical.integrate((1.0, 0.5), cp, times, dt=0.01)
    energy = path[:, 0] ** 2 + path[:, 1] ** 2
    assert energy[-1] < 1e-4 * energy[0]


def test_integrate_divergence_guard():
    cp = classical.ClassicalParams(epsilon=8.0, gamma2=0.0, eta=0.0, zeta=0.0)
    with pytest.raises(IntegrationFailureError):
        classical.integrate((1.0, 0.0), cp, np.linspace(0, 10, 11), dt=0.01)


def test_integrate_rejects_large_step():
    cp = classical.ClassicalParams.rvdp(0.1, 0.1)
    with pytest.raises(InvalidParameterError):
        classical.integrate((1.0, 0.0), cp, [0.0, 1.0], dt=0.05)


def test_noiseless_ensemble_follows_deterministic():
    cp = classical.ClassicalParams.vdp(0.1, 0.1)
    e0 = classical.EnsembleState(time=0.0, x=np.array([0.4, 1.2]),
                                 v=np.array([0.1, -0.3]))
    states = classical.ensemble_evolve(e0, cp, [0.0, 5.0], seed=1, dt=1e-3)
    for i in range(2):
        path = classical.integrate((e0.x[i], e0.v[i]), cp, [0.0, 5.0], dt=0.001)
        assert states[-1].x[i] == pytest.approx(path[-1, 0], abs=2e-2)
        assert states[-1].v[i] == pytest.approx(path[-1, 1], abs=2e-2)


def test_ensemble_reproducible():
    cp = classical.ClassicalParams.vdp(0.1, 0.1, noise_temp=0.01,
                                       noise_coupling=1.0)
    e0 = classical.gaussian_cloud((0.5, 0.5), 0.1, 64, seed=5)
    a = classical.ensemble_evolve(e0, cp, [0.0, 3.0], seed=9, dt=1e-3)
    b = classical.ensemble_evolve(e0, cp, [0.0, 3.0], seed=9, dt=1e-3)
    assert np.array_equal(a[-1].x, b[-1].x)
    assert np.array_equal(a[-1].v, b[-1].v)
    c = classical.ensemble_evolve(e0, cp, [0.0, 3.0], seed=10, dt=1e-3)
    assert not np.array_equal(a[-1].x, c[-1].x)


def test_subthreshold_noise_variance_monotone():
    # below threshold the stationary spread grows with temperature
    spreads = []
    for temp in (0.005, 0.05):
        cp = classical.ClassicalParams.rvdp(-0.5, 0.1, noise_temp=temp,
                                            noise_coupling=1.0)
        e0 = classical.gaussian_cloud((0.0, 0.0), 0.01, 2000, seed=3)
        states = classical.ensemble_evolve(e0, cp, [0.0, 40.0], seed=4, dt=1e-3)
        spreads.append(np.mean(states[-1].x ** 2))
    assert spreads[1] > spreads[0]


def test_slow_amplitude_fixed_points():
    cp = classical.ClassicalParams(epsilon=0.4, gamma2=0.1, eta=1.0, zeta=0.0)
    a_star = 2.0 * cp.a_c() / math.sqrt(cp.eta_eff)
    assert abs(classical.slow_amplitude_flow(a_star, cp)) < 1e-14
    assert classical.slow_amplitude_flow(0.0, cp) == 0.0


@given(phi=st.floats(0, 2 * math.pi), mag=st.floats(0.1, 3.0))
@settings(max_examples=25, deadline=None)
def test_slow_amplitude_phase_covariance(phi, mag):
    cp = classical.ClassicalParams.rayleigh(0.3, 0.1)
    base = classical.slow_amplitude_flow(mag, cp)
    rotated = classical.slow_amplitude_flow(mag * np.exp(1j * phi), cp)
    assert rotated == pytest.approx(base * np.exp(1j * phi), rel=1e-12)


def test_meanfield_rvdp_ring():
    cp = classical.ClassicalParams.rvdp(0.4, 0.1)
    alpha = cp.a_c() / math.sqrt(2)
    flow = classical.meanfield_flow(alpha, cp, "rvdp")
    # on the ring the radial component vanishes; rotation remains
    assert (np.conj(alpha) * flow).real == pytest.approx(0.0, abs=1e-14)


@given(re=st.floats(-2, 2), im=st.floats(-2, 2))
@settings(max_examples=30, deadline=None)
def test_meanfield_realimag_decomposition(re, im):
    # the complex flow must reproduce the coupled (x, p) mean-field equations
    alpha = complex(re, im)
    eps, g2 = 0.3, 0.12
    a_c2 = eps / g2
    cp = classical.ClassicalParams(epsilon=eps, gamma2=g2, eta=1.0, zeta=1.0)
    x, p = math.sqrt(2) * re, math.sqrt(2) * im
    for variant, bracket in (
            ("rvdp", 1.0 - (x * x + p * p) / a_c2),
            ("vdp", 1.0 - x * x / (2 * a_c2)),
            ("rayleigh", 1.0 - (x * x + 2 * p * p) / (2 * a_c2))):
        flow = classical.meanfield_flow(alpha, cp, variant)
        x_dot = math.sqrt(2) * flow.real
        p_dot = math.sqrt(2) * flow.imag
        assert x_dot == pytest.approx(0.5 * eps * bracket * x + p, abs=1e-12)
        assert p_dot == pytest.approx(0.5 * eps * bracket * p - x, abs=1e-12)


def test_meanfield_zero_drive_rotates():
    cp = classical.ClassicalParams(epsilon=0.0, gamma2=0.0, eta=1.0, zeta=0.0)
    flow = classical.meanfield_flow(1.0 + 0.5j, cp, "vdp")
    assert flow == pytest.approx(-1j * (1.0 + 0.5j), abs=1e-15)


def test_circular_statistics():
    ring = classical.EnsembleState(
        time=0.0,
        x=np.cos(np.linspace(0, 2 * math.pi, 200, endpoint=False)),
        v=np.sin(np.linspace(0, 2 * math.pi, 200, endpoint=False)))
    assert classical.circular_variance(ring) == pytest.approx(1.0, abs=1e-12)
    assert classical.median_radius(ring) == pytest.approx(1.0, abs=1e-12)
    point = classical.EnsembleState(time=0.0, x=np.ones(5), v=np.ones(5))
    assert classical.circular_variance(point) == pytest.approx(0.0, abs=1e-12)
