"""Classical generalized Rayleigh-van der Pol dynamics.

Deterministic trajectories (RK4), noisy ensembles (Euler-Maruyama with
additive velocity noise), and the slow-amplitude / mean-field flows that
connect the classical equation to the quantum models. The equation of
motion in scaled units is

    x'' + x = epsilon x' - gamma2 (eta x^2 + zeta x'^2) x'

with eta = zeta = 1 the RvdP oscillator (circular limit cycles at any
drive), eta = 1, zeta = 0 van der Pol and eta = 0, zeta = 1 Rayleigh.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import IntegrationFailureError, InvalidParameterError

__all__ = [
    "ClassicalParams", "EnsembleState", "grvdp_rhs", "integrate",
    "ensemble_evolve", "gaussian_cloud", "slow_amplitude_flow",
    "meanfield_flow", "median_radius", "circular_variance",
]

DIVERGENCE_LIMIT = 1e6


@dataclass(frozen=True)
class ClassicalParams:
    """Parameters of the generalized equation plus optional thermal noise.

    noise_temp is the dimensionless temperature; noise enters the velocity
    additively with intensity D = 2 * noise_coupling * noise_temp.
    """

    epsilon: float
    gamma2: float
    eta: float = 1.0
    zeta: float = 1.0
    noise_temp: float = 0.0
    noise_coupling: float = 1.0

    def __post_init__(self):
        if self.gamma2 < 0 or self.eta < 0 or self.zeta < 0:
            raise InvalidParameterError("gamma2, eta, zeta must be >= 0")
        if self.noise_temp < 0 or self.noise_coupling < 0:
            raise InvalidParameterError("noise parameters must be >= 0")

    @classmethod
    def vdp(cls, epsilon, gamma2, **kw):
        return cls(epsilon=epsilon, gamma2=gamma2, eta=1.0, zeta=0.0, **kw)

    @classmethod
    def rayleigh(cls, epsilon, gamma2, **kw):
        return cls(epsilon=epsilon, gamma2=gamma2, eta=0.0, zeta=1.0, **kw)

    @classmethod
    def rvdp(cls, epsilon, gamma2, **kw):
        return cls(epsilon=epsilon, gamma2=gamma2, eta=1.0, zeta=1.0, **kw)

    @property
    def eta_eff(self):
        return self.eta + 3.0 * self.zeta

    def a_c(self):
        if self.epsilon <= 0 or self.gamma2 <= 0:
            raise InvalidParameterError("A_c requires epsilon > 0 and gamma2 > 0")
        return math.sqrt(self.epsilon / self.gamma2)

    @property
    def noise_intensity(self):
        return 2.0 * self.noise_coupling * self.noise_temp

    def with_(self, **kw):
        return replace(self, **kw)


def grvdp_rhs(state, params: ClassicalParams):
    """(dx/dt, dv/dt) of the deterministic equation; works on arrays."""
    x, v = state
    dv = (-x + params.epsilon * v
          - params.gamma2 * (params.eta * x * x + params.zeta * v * v) * v)
    return v, dv


def _rk4_step(x, v, h, params):
    k1x, k1v = grvdp_rhs((x, v), params)
    k2x, k2v = grvdp_rhs((x + 0.5 * h * k1x, v + 0.5 * h * k1v), params)
    k3x, k3v = grvdp_rhs((x + 0.5 * h * k2x, v + 0.5 * h * k2v), params)
    k4x, k4v = grvdp_rhs((x + h * k3x, v + h * k3v), params)
    return (x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x),
            v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v))


def integrate(s0, params: ClassicalParams, times, dt=0.01):
    """Deterministic RK4 path through the given times; shape (len(times), 2)."""
    if dt > 0.01:
        raise InvalidParameterError("deterministic integration requires dt <= 0.01")
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) <= 0):
        raise InvalidParameterError("times must be strictly increasing")
    x, v = float(s0[0]), float(s0[1])
    out = np.empty((times.size, 2))
    out[0] = x, v
    for i, (t0, t1) in enumerate(zip(times[:-1], times[1:]), start=1):
        span = t1 - t0
        nsub = max(1, int(np.ceil(span / dt - 1e-12)))
        h = span / nsub
        for _ in range(nsub):
            x, v = _rk4_step(x, v, h, params)
        if abs(x) > DIVERGENCE_LIMIT or abs(v) > DIVERGENCE_LIMIT:
            raise IntegrationFailureError(f"trajectory diverged by t = {t1:g}")
        out[i] = x, v
    return out


@dataclass(frozen=True)
class EnsembleState:
    """Positions and velocities of an oscillator ensemble at one time."""

    time: float
    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if self.x.shape != self.v.shape:
            raise InvalidParameterError("x and v must have matching shapes")

    @property
    def size(self):
        return self.x.size


def gaussian_cloud(center, sigma, n, seed, time=0.0):
    """Isotropic Gaussian initial ensemble around (x0, v0)."""
    rng = np.random.default_rng(seed)
    x0, v0 = center
    return EnsembleState(time=time,
                         x=x0 + sigma * rng.standard_normal(n),
                         v=v0 + sigma * rng.standard_normal(n))


def ensemble_evolve(e0: EnsembleState, params: ClassicalParams, times, seed,
                    dt=1e-3):
    """Euler-Maruyama evolution of the ensemble through the given times.

    Additive Gaussian noise of intensity D = 2 * noise_coupling * noise_temp
    acts on the velocity (kick variance D * dt per step); the drift is
    exactly grvdp_rhs. A fixed seed makes the run bit-reproducible: noise is
    drawn from a single PCG64 stream in lockstep over the whole ensemble.
    """
    times = np.asarray(times, dtype=float)
    if times[0] != e0.time:
        raise InvalidParameterError("times must start at the ensemble's time")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise InvalidParameterError("times must be strictly increasing")
    rng = np.random.default_rng(seed)
    x = e0.x.astype(float).copy()
    v = e0.v.astype(float).copy()
    n = x.size
    noisy = params.noise_intensity > 0
    out = [EnsembleState(time=times[0], x=x.copy(), v=v.copy())]
    for t0, t1 in zip(times[:-1], times[1:]):
        span = t1 - t0
        nsub = max(1, int(np.ceil(span / dt - 1e-12)))
        h = span / nsub
        kick = math.sqrt(params.noise_intensity * h) if noisy else 0.0
        for _ in range(nsub):
            dv = (-x + params.epsilon * v
                  - params.gamma2 * (params.eta * x * x + params.zeta * v * v) * v)
            x += h * v
            v += h * dv
            if noisy:
                v += kick * rng.standard_normal(n)
        m = max(np.abs(x).max(), np.abs(v).max())
        if not np.isfinite(m) or m > DIVERGENCE_LIMIT:
            raise IntegrationFailureError(f"ensemble diverged by t = {t1:g}")
        out.append(EnsembleState(time=t1, x=x.copy(), v=v.copy()))
    return out


def median_radius(state: EnsembleState):
    return float(np.median(np.hypot(state.x, state.v)))


def circular_variance(state: EnsembleState):
    """1 - |mean resultant| of the phase angles atan2(v, x); 1 = uniform."""
    phases = np.arctan2(state.v, state.x)
    return float(1.0 - np.abs(np.exp(1j * phases).mean()))


def slow_amplitude_flow(amplitude, params: ClassicalParams):
    """dA/dT of the secular amplitude equation (T = epsilon * t slow time)."""
    a_c2 = params.a_c() ** 2
    return 0.5 * (1.0 - params.eta_eff * abs(amplitude) ** 2 / (4.0 * a_c2)) * amplitude


def meanfield_flow(alpha, params: ClassicalParams, variant):
    """d<a>/dt of the semiclassical mean-field equation for each quantum model.

    Expressed through epsilon and gamma2 directly, so it is defined on both
    sides of the bifurcation.
    """
    eps, g2 = params.epsilon, params.gamma2
    alpha = complex(alpha)
    base = -1j * alpha + 0.5 * eps * alpha
    if variant == "rvdp":
        return base - g2 * abs(alpha) ** 2 * alpha
    if variant == "vdp":
        return base - 0.5 * g2 * alpha.real ** 2 * alpha
    if variant == "rayleigh":
        return base - 0.5 * g2 * (alpha.real ** 2 + 2.0 * alpha.imag ** 2) * alpha
    raise InvalidParameterError(f"unknown variant {variant!r}")
