"""Lindblad models for the three oscillator variants, and rate utilities.

The master equations all share the rotating Hamiltonian H = a^dag a and
differ in their dissipation channels:

* RvdP (any temperature): channels a^dag, a, a^2, a^dag^2 with the four
  temperature-dependent effective rates K1_t, Gamma1_t, Gamma2_t, K2_t.
* vdP (T = 0 only): the two-phonon channel is replaced by x a at rate
  gamma2/2, breaking phase-space rotation symmetry.
* Rayleigh (T = 0 only): channels x a at gamma2/2 plus p a at gamma2.

Rates are dimensionless (units of the oscillator frequency); conversion
from physical parameters lives in ScalingParams / scale_physical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import fock
from .errors import InvalidParameterError, UnsupportedRegimeError

__all__ = [
    "RateSet", "EffectiveRates", "LindbladModel", "ScalingParams", "ScaledRates",
    "bose_einstein", "effective_rates", "build_rvdp", "build_vdp",
    "build_rayleigh", "dissipator", "master_rhs", "scale_physical",
    "physical_rates",
]


def bose_einstein(omega, temperature):
    """Mean thermal occupation 1/(exp(omega/T) - 1); zero at T = 0."""
    if omega <= 0:
        raise InvalidParameterError(f"frequency must be > 0, got {omega}")
    if temperature < 0:
        raise InvalidParameterError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    ratio = omega / temperature
    if ratio > 700:          # occupation underflows float64
        return 0.0
    return 1.0 / math.expm1(ratio)


@dataclass(frozen=True)
class RateSet:
    """Dimensionless pump/damping rates of the generalized model.

    kappa1:  single-phonon pump rate
    gamma1:  single-phonon damping rate
    gamma2:  two-phonon damping rate
    kappa2:  two-phonon pump rate
    temperature: bath temperature in units of hbar*omega/k_B
    delta1, delta2: pump detunings at which the bath occupation is
        evaluated for the single- and two-phonon pumps
    """

    kappa1: float
    gamma1: float = 0.0
    gamma2: float = 0.0
    kappa2: float = 0.0
    temperature: float = 0.0
    delta1: float = 0.1
    delta2: float = 0.1

    def __post_init__(self):
        for name in ("kappa1", "gamma1", "gamma2", "kappa2", "temperature"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("delta1", "delta2"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def epsilon(self):
        """Bifurcation parameter kappa1 - gamma1."""
        return self.kappa1 - self.gamma1

    def a_c(self):
        """Characteristic amplitude sqrt(epsilon/gamma2); requires epsilon, gamma2 > 0."""
        if self.epsilon <= 0 or self.gamma2 <= 0:
            raise InvalidParameterError("A_c requires epsilon > 0 and gamma2 > 0")
        return math.sqrt(self.epsilon / self.gamma2)

    def with_(self, **kwargs):
        return replace(self, **kwargs)


@dataclass(frozen=True)
class EffectiveRates:
    """Temperature-dressed rates; reduce to the bare rates at T = 0."""

    Gamma1: float
    K1: float
    Gamma2: float
    K2: float


def effective_rates(rates: RateSet) -> EffectiveRates:
    """Dress the bare rates with Bose-Einstein occupations (omega = 1)."""
    n_w = bose_einstein(1.0, rates.temperature)
    n_2w = bose_einstein(2.0, rates.temperature)
    n_d1 = bose_einstein(rates.delta1, rates.temperature)
    n_d2 = bose_einstein(rates.delta2, rates.temperature)
    return EffectiveRates(
        Gamma1=(1.0 + n_w) * rates.gamma1 + n_d1 * rates.kappa1,
        K1=(1.0 + n_d1) * rates.kappa1 + n_w * rates.gamma1,
        Gamma2=(1.0 + n_2w) * rates.gamma2 + n_d2 * rates.kappa2,
        K2=(1.0 + n_d2) * rates.kappa2 + n_2w * rates.gamma2,
    )


@dataclass(frozen=True)
class LindbladModel:
    """Hamiltonian plus ordered (rate, collapse operator) channels."""

    hamiltonian: np.ndarray
    channels: tuple
    label: str = "custom"

    def __post_init__(self):
        n = self.hamiltonian.shape[0]
        for rate, op in self.channels:
            if rate < 0:
                raise InvalidParameterError(f"channel rate must be >= 0, got {rate}")
            if op.shape != (n, n):
                raise InvalidParameterError("all channel operators must share the Hamiltonian cutoff")

    @property
    def cutoff(self):
        return self.hamiltonian.shape[0]


def build_rvdp(rates: RateSet, cutoff) -> LindbladModel:
    """RvdP master equation at any temperature.

    Channel order is fixed: pump a^dag, linear damping a, two-phonon
    damping a^2, two-phonon pump a^dag^2, with the effective rates
    (K1_t, Gamma1_t, Gamma2_t, K2_t).
    """
    eff = effective_rates(rates)
    a = fock.annihilation(cutoff)
    adag = a.conj().T
    return LindbladModel(
        hamiltonian=fock.number(cutoff),
        channels=(
            (eff.K1, adag),
            (eff.Gamma1, a),
            (eff.Gamma2, a @ a),
            (eff.K2, adag @ adag),
        ),
        label="rvdp",
    )


def _check_zero_t(rates: RateSet, which):
    if rates.temperature > 0 or rates.kappa2 > 0:
        raise UnsupportedRegimeError(
            f"the {which} master equation is defined only at T = 0 with kappa2 = 0")


def build_vdp(rates: RateSet, cutoff) -> LindbladModel:
    """van der Pol master equation (T = 0): nonlinear channel x a at gamma2/2."""
    _check_zero_t(rates, "vdP")
    a = fock.annihilation(cutoff)
    adag = a.conj().T
    x = fock.position(cutoff)
    return LindbladModel(
        hamiltonian=fock.number(cutoff),
        channels=(
            (rates.kappa1, adag),
            (rates.gamma1, a),
            (rates.gamma2 / 2.0, x @ a),
        ),
        label="vdp",
    )


def build_rayleigh(rates: RateSet, cutoff) -> LindbladModel:
    """Rayleigh master equation (T = 0): channels x a at gamma2/2 and p a at gamma2."""
    _check_zero_t(rates, "Rayleigh")
    a = fock.annihilation(cutoff)
    adag = a.conj().T
    x = fock.position(cutoff)
    p = fock.momentum(cutoff)
    return LindbladModel(
        hamiltonian=fock.number(cutoff),
        channels=(
            (rates.kappa1, adag),
            (rates.gamma1, a),
            (rates.gamma2 / 2.0, x @ a),
            (rates.gamma2, p @ a),
        ),
        label="rayleigh",
    )


def dissipator(c_op, rho):
    """Lindblad dissipator D[C]rho = C rho C^dag - {C^dag C, rho}/2."""
    c_op = np.asarray(c_op)
    rho = np.asarray(rho)
    if c_op.shape != rho.shape:
        raise InvalidParameterError(
            f"cutoff mismatch: operator {c_op.shape} vs state {rho.shape}")
    cdc = c_op.conj().T @ c_op
    return c_op @ rho @ c_op.conj().T - 0.5 * (cdc @ rho + rho @ cdc)


def master_rhs(model: LindbladModel, rho):
    """Right-hand side -i[H, rho] + sum_k rate_k D[C_k] rho, computed directly."""
    h = model.hamiltonian
    out = -1j * (h @ rho - rho @ h)
    for rate, op in model.channels:
        if rate != 0.0:
            out = out + rate * dissipator(op, rho)
    return out


# ---------------------------------------------------------------------------
# physical <-> scaled parameter conversion


@dataclass(frozen=True)
class ScalingParams:
    """Physical oscillator parameters before nondimensionalization.

    mass, omega: effective mass and angular frequency
    kappa1, gamma1: physical pump/damping coefficients (force per velocity)
    eta, zeta: physical nonlinear damping coefficients
    hbar: action unit (defaults to SI-free 1.0)
    """

    mass: float
    omega: float
    kappa1: float = 0.0
    gamma1: float = 0.0
    eta: float = 0.0
    zeta: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass <= 0 or self.omega <= 0:
            raise InvalidParameterError("mass and omega must be > 0")


@dataclass(frozen=True)
class ScaledRates:
    """Dimensionless rates: gamma2 carries the overall nonlinear scale,
    eta and zeta the relative vdP/Rayleigh contributions (larger one = 1)."""

    kappa1: float
    gamma1: float
    gamma2: float
    eta: float
    zeta: float


def scale_physical(p: ScalingParams) -> ScaledRates:
    """Map physical parameters onto the dimensionless equation of motion.

    kappa1 = kappa1~/(m w), gamma1 = gamma1~/(m w),
    gamma2*eta = hbar eta~/(m^2 w^2), gamma2*zeta = hbar zeta~/m^2.
    """
    kappa1 = p.kappa1 / (p.mass * p.omega)
    gamma1 = p.gamma1 / (p.mass * p.omega)
    g2_eta = p.hbar * p.eta / (p.mass ** 2 * p.omega ** 2)
    g2_zeta = p.hbar * p.zeta / (p.mass ** 2)
    gamma2 = max(g2_eta, g2_zeta)
    if gamma2 == 0.0:
        return ScaledRates(kappa1, gamma1, 0.0, 0.0, 0.0)
    return ScaledRates(kappa1, gamma1, gamma2, g2_eta / gamma2, g2_zeta / gamma2)


def physical_rates(s: ScaledRates, mass, omega, hbar=1.0) -> ScalingParams:
    """Inverse of scale_physical for the given mass/omega/hbar."""
    if mass <= 0 or omega <= 0:
        raise InvalidParameterError("mass and omega must be > 0")
    return ScalingParams(
        mass=mass,
        omega=omega,
        kappa1=s.kappa1 * mass * omega,
        gamma1=s.gamma1 * mass * omega,
        eta=s.gamma2 * s.eta * mass ** 2 * omega ** 2 / hbar,
        zeta=s.gamma2 * s.zeta * mass ** 2 / hbar,
        hbar=hbar,
    )
