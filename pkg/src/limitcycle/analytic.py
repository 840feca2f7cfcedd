"""Exact steady-state Fock distribution of the RvdP oscillator.

The diagonal rate equations telescope into a first-order ODE for the
generating function A(x) = sum P_n x^n whose solution is a Gauss
hypergeometric function of a Moebius-transformed argument. The Fock
probabilities follow from an exact finite sum,

    P_n = C (-a)^n sum_k  C(n,k) [(b)_k/(c)_k] (2(a-1)/(1+a))^k
                          2F1(1+k, b+k; c+k; 2a/(1+a)),

with a = sqrt(K2), b = (a Gamma1 + K1)/(2a(1-a)), c = (Gamma1+K1)/(1-a^2)
and all rates scaled by the effective two-phonon damping. The sum
alternates and cancels catastrophically for large n, so the float64 path
carries a compensated-summation error estimate and retries in extended
precision (mpmath) when the estimated absolute error exceeds the target.

At K2 = 0 the solution degenerates to the confluent (Kummer) form, which
is a cancellation-free positive series.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy.special import gammaln

from .errors import (InvalidParameterError, PrecisionFailureError,
                     TruncationWarning, UnsupportedRegimeError)
from .models import EffectiveRates, RateSet, effective_rates

__all__ = [
    "hyp2f1", "hyp1f1", "GenFunParams", "steady_probs", "kummer_probs",
    "genfun_value", "ratio_R", "quantum_limit_rho", "limit_amplitude",
    "rvdp_corr_decay",
]

MAX_TERMS = 1_000_000
#: target absolute accuracy of each P_n; triggers the extended-precision retry
PN_ABS_TOL = 1e-13


def _check_gamma_param(gamma):
    if gamma <= 0 and float(gamma).is_integer():
        raise InvalidParameterError(
            f"series parameter gamma = {gamma} is a nonpositive integer")


def _series(ratio_fn, dps=None):
    """Sum 1 + sum_j prod ratio_fn with Neumaier compensation.

    Converged when three consecutive terms fall below 1e-17 |sum|.
    """
    if dps is not None:
        with mp.workdps(dps):
            total = mp.mpf(1)
            term = mp.mpf(1)
            small = 0
            for j in range(MAX_TERMS):
                term = term * ratio_fn(j)
                total += term
                if abs(term) < mp.eps * abs(total):
                    small += 1
                    if small >= 3:
                        return float(total)
                else:
                    small = 0
            raise PrecisionFailureError("hypergeometric series did not converge")
    total = 1.0
    comp = 0.0
    term = 1.0
    small = 0
    for j in range(MAX_TERMS):
        term *= ratio_fn(j)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        if abs(term) < 1e-17 * abs(total + comp):
            small += 1
            if small >= 3:
                return total + comp
        else:
            small = 0
    raise PrecisionFailureError("hypergeometric series did not converge "
                                f"within {MAX_TERMS} terms")


def hyp2f1(alpha, beta, gamma, z, dps=None):
    """Gauss hypergeometric series for real z with |z| < 1.

    ``dps`` switches the accumulation to extended precision with that many
    significant digits.
    """
    if abs(z) >= 1:
        raise InvalidParameterError(f"hyp2f1 series requires |z| < 1, got z = {z}")
    _check_gamma_param(gamma)
    if dps is not None:
        with mp.workdps(dps):
            aa, bb, cc, zz = (mp.mpf(v) for v in (alpha, beta, gamma, z))
        return _series(lambda j: (aa + j) * (bb + j) / ((cc + j) * (1 + j)) * zz,
                       dps=dps)
    return _series(lambda j: (alpha + j) * (beta + j) / ((gamma + j) * (1 + j)) * z)


def hyp1f1(alpha, gamma, z, dps=None):
    """Confluent hypergeometric series; entire in z."""
    _check_gamma_param(gamma)
    if dps is not None:
        with mp.workdps(dps):
            aa, cc, zz = (mp.mpf(v) for v in (alpha, gamma, z))
        return _series(lambda j: (aa + j) / ((cc + j) * (1 + j)) * zz, dps=dps)
    return _series(lambda j: (alpha + j) / ((gamma + j) * (1 + j)) * z)


def _ln_hyp2f1_pos(alpha, beta, gamma, z):
    """log of 2F1 for positive parameters and 0 <= z < 1 (positive terms).

    Rescales on the fly, so values far beyond float64 range are fine.
    """
    total = 1.0
    term = 1.0
    offset = 0.0
    j = 0
    while j < MAX_TERMS:
        ratio = (alpha + j) * (beta + j) / ((gamma + j) * (1.0 + j)) * z
        term *= ratio
        total += term
        if total > 1e280:
            total *= 1e-280
            term *= 1e-280
            offset += 280.0 * math.log(10.0)
        if ratio < 0.9999 and term < 1e-18 * total:
            return math.log(total) + offset
        j += 1
    raise PrecisionFailureError("log-scaled 2F1 series did not converge")


def _hyp2f1_mp(alpha, beta, gamma, z):
    """2F1 as an mpf at the current working precision (positive real z < 1)."""
    total = mp.mpf(1)
    term = mp.mpf(1)
    j = 0
    while j < MAX_TERMS:
        term = term * (alpha + j) * (beta + j) / ((gamma + j) * (1 + j)) * z
        total += term
        if term < mp.eps * total:
            return total
        j += 1
    raise PrecisionFailureError("extended-precision 2F1 did not converge")


@dataclass(frozen=True)
class GenFunParams:
    """Scaled rates and derived constants of the generating-function solution."""

    Gamma1: float
    K1: float
    K2: float
    a: float
    b: float
    c: float

    @classmethod
    def from_effective(cls, eff: EffectiveRates):
        if eff.Gamma2 <= 0:
            raise InvalidParameterError("generating-function solution needs Gamma2 > 0")
        g1 = eff.Gamma1 / eff.Gamma2
        k1 = eff.K1 / eff.Gamma2
        k2 = eff.K2 / eff.Gamma2
        if k2 >= 1:
            raise UnsupportedRegimeError(
                f"no steady state: nonlinear gain/damping ratio K2 = {k2:.4g} >= 1")
        a = math.sqrt(k2)
        if a == 0.0:
            return cls(Gamma1=g1, K1=k1, K2=0.0, a=0.0, b=math.inf,
                       c=g1 + k1)
        b = (a * g1 + k1) / (2 * a * (1 - a))
        c = (g1 + k1) / (1 - a * a)
        if c <= 1:
            raise UnsupportedRegimeError(
                f"c = {c:.4g} <= 1: the bounded-solution selection is not "
                "defined in this regime")
        return cls(Gamma1=g1, K1=k1, K2=k2, a=a, b=b, c=c)

    def z_of(self, x):
        return 2 * self.a / (1 + self.a) * (1 + x) / (1 + self.a * x)


def kummer_probs(Gamma1, K1, n_max):
    """Steady probabilities in the K2 = 0 (Kummer) regime; positive series."""
    if Gamma1 < 0 or K1 < 0:
        raise InvalidParameterError("scaled rates must be >= 0")
    n_max = int(n_max)
    p = np.zeros(n_max)
    if K1 == 0.0:
        p[0] = 1.0
        return p
    denom = hyp1f1(1.0, K1 + Gamma1, 2.0 * K1)
    prefactor = 1.0
    for n in range(n_max):
        if n > 0:
            prefactor *= K1 / (K1 + Gamma1 + n - 1)
            if prefactor == 0.0:
                break
        p[n] = prefactor * hyp1f1(1.0 + n, K1 + Gamma1 + n, K1) / denom
    return p


def _neumaier(values):
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def steady_probs(rates: EffectiveRates, n_max):
    """Fock probabilities P_0..P_{n_max-1} from the analytic solution.

    Falls back to extended precision element by element when the estimated
    float64 cancellation error exceeds PN_ABS_TOL. Warns if the truncated
    sum misses more than 1e-9 of the probability mass.
    """
    n_max = int(n_max)
    params = GenFunParams.from_effective(rates)
    if params.K2 == 0.0:
        p = kummer_probs(params.Gamma1, params.K1, n_max)
        _check_mass(p)
        return p
    a, b, c = params.a, params.b, params.c
    z0 = 2 * a / (1 + a)
    zc = 4 * a / (1 + a) ** 2
    ln_q = math.log(2 * (1 - a) / (1 + a))
    ln_a = math.log(a)
    ln_c_norm = math.log1p(a) - _ln_hyp2f1_pos(1.0, b, c, zc)

    ln_f = np.empty(n_max)
    for k in range(n_max):
        ln_f[k] = _ln_hyp2f1_pos(1.0 + k, b + k, c + k, z0)
    ks = np.arange(n_max)
    ln_poch = np.concatenate(([0.0], np.cumsum(np.log(b + ks[:-1]) - np.log(c + ks[:-1]))))
    lgam = gammaln(np.arange(n_max + 1) + 1.0)

    p = np.zeros(n_max)
    retry = []
    worst_lost = 0.0
    for n in range(n_max):
        k = ks[: n + 1]
        ln_terms = (lgam[n] - lgam[k] - lgam[n - k]
                    + ln_poch[: n + 1] + k * ln_q + ln_f[: n + 1])
        peak = ln_terms.max()
        w = np.exp(ln_terms - peak)
        signed = np.where(k % 2 == 0, w, -w)
        s = _neumaier(signed)
        s_abs = w.sum()
        ln_pref = ln_c_norm + n * ln_a + peak
        # expected sign: (-a)^n * (-1)^n = +1
        value = math.copysign(1.0, s) * (-1.0) ** n
        ln_abs_err = ln_pref + math.log(s_abs) + math.log(2e-16)
        if ln_abs_err > math.log(PN_ABS_TOL) or s == 0.0:
            retry.append(n)
            worst_lost = max(worst_lost, (ln_pref + math.log(s_abs)) / math.log(10.0))
        else:
            p[n] = value * math.exp(ln_pref + math.log(abs(s)))
    if retry:
        p = _steady_probs_mp(params, n_max, retry, worst_lost, p)
    if p.min() < -1e-12:
        raise PrecisionFailureError(
            f"negative probability {p.min():.3e} after extended-precision pass")
    p = np.clip(p, 0.0, None)
    _check_mass(p)
    return p


def _f_table_mp(b, c, z0, n_max):
    """Table 2F1(1+k, b+k; c+k; z0), k < n_max, at the working precision.

    u_k = F^{(k)}(z0) obeys the three-term recurrence obtained by
    differentiating the hypergeometric ODE,

        z(1-z) u_{k+2} = (k+1)(k+b) u_k - (k(1-2z) + c - (b+2)z) u_{k+1},

    and F_k = u_k (c)_k / (k! (b)_k). The upward direction is stable here
    (both ODE solutions are singular at z = 1, so their derivative
    sequences grow at the same dominant rate); a spot check against the
    direct series guards the degenerate cases and triggers a per-k
    fallback.
    """
    u = [mp.mpf(0)] * max(n_max, 2)
    u[0] = _hyp2f1_mp(mp.mpf(1), b, c, z0)
    u[1] = (b / c) * _hyp2f1_mp(mp.mpf(2), b + 1, c + 1, z0)
    denom = z0 * (1 - z0)
    for k in range(n_max - 2):
        u[k + 2] = ((k + 1) * (k + b) * u[k]
                    - (k * (1 - 2 * z0) + c - (b + 2) * z0) * u[k + 1]) / denom
    f_tab = [mp.mpf(0)] * n_max
    ratio = mp.mpf(1)                      # (c)_k / (k! (b)_k)
    for k in range(n_max):
        if k > 0:
            ratio *= (c + k - 1) / (k * (b + k - 1))
        f_tab[k] = u[k] * ratio
    for k in {n_max // 2, n_max - 1} - {0, 1}:
        direct = _hyp2f1_mp(mp.mpf(1 + k), b + k, c + k, z0)
        if abs(f_tab[k] - direct) > mp.mpf(10) ** (-mp.mp.dps // 3) * abs(direct):
            # recurrence degenerated; fall back to direct summation
            return [_hyp2f1_mp(mp.mpf(1 + k), b + k, c + k, z0)
                    for k in range(n_max)]
    return f_tab


def _steady_probs_mp(params, n_max, retry, worst_lost_digits, p):
    """Recompute the marked P_n with mpmath at a precision set by the
    estimated number of digits lost to cancellation."""
    dps = int(worst_lost_digits - math.log10(PN_ABS_TOL)) + 25
    with mp.workdps(dps):
        a = mp.sqrt(mp.mpf(params.K2))
        b = (a * params.Gamma1 + params.K1) / (2 * a * (1 - a))
        c = (params.Gamma1 + params.K1) / (1 - a * a)
        z0 = 2 * a / (1 + a)
        q = 2 * (a - 1) / (1 + a)
        c_norm = (1 + a) / _hyp2f1_mp(mp.mpf(1), b, c, 4 * a / (1 + a) ** 2)
        f_tab = _f_table_mp(b, c, z0, n_max)
        weight = [mp.mpf(0)] * n_max       # (b)_k/(c)_k * q^k * F_k
        pochq = mp.mpf(1)
        for k in range(n_max):
            if k > 0:
                pochq = pochq * (b + k - 1) / (c + k - 1) * q
            weight[k] = pochq * f_tab[k]
        for n in retry:
            s = mp.mpf(0)
            binom = mp.mpf(1)
            for k in range(n + 1):
                if k > 0:
                    binom = binom * (n - k + 1) / k
                s += binom * weight[k]
            p[n] = float(c_norm * (-a) ** n * s)
    return p


def _check_mass(p):
    total = p.sum()
    if total < 1.0 - 1e-9:
        warnings.warn(
            f"truncated probability mass {total:.12f} < 1 - 1e-9; "
            "increase n_max", TruncationWarning, stacklevel=3)


def genfun_value(rates: EffectiveRates, x):
    """Generating function A(x) for x in (-1, 1]."""
    if not -1.0 < x <= 1.0:
        raise InvalidParameterError(f"generating function defined on (-1, 1], got {x}")
    params = GenFunParams.from_effective(rates)
    if params.K2 == 0.0:
        g1, k1 = params.Gamma1, params.K1
        if k1 == 0.0:
            return 1.0
        return hyp1f1(1.0, k1 + g1, k1 * (1.0 + x)) / hyp1f1(1.0, k1 + g1, 2.0 * k1)
    a, b, c = params.a, params.b, params.c
    norm = (1 + a) / hyp2f1(1.0, b, c, 4 * a / (1 + a) ** 2)
    return norm * hyp2f1(1.0, b, c, params.z_of(x)) / (1 + a * x)


def ratio_R(rates: RateSet):
    """Temperature-dependent damping/pump ratio Gamma1_t / K1_t."""
    eff = effective_rates(rates)
    if eff.K1 <= 0:
        raise InvalidParameterError("ratio undefined: effective pump rate K1 = 0")
    return eff.Gamma1 / eff.K1


def quantum_limit_rho(ratio):
    """Two-state steady density matrix diag((2+R)/(3+R), 1/(3+R))."""
    if ratio < 0:
        raise InvalidParameterError(f"ratio must be >= 0, got {ratio}")
    rho = np.diag([(2.0 + ratio) / (3.0 + ratio), 1.0 / (3.0 + ratio)]).astype(complex)
    rho.flags.writeable = False
    return rho


def limit_amplitude(ratio):
    """Limit-cycle amplitude sqrt((1-R)/2) in the infinite-damping limit.

    Above threshold (R > 1) the circular Wigner maximum sits at the
    origin, so the amplitude is reported as 0.
    """
    if ratio < 0:
        raise InvalidParameterError(f"ratio must be >= 0, got {ratio}")
    if ratio >= 1.0:
        return 0.0
    return math.sqrt((1.0 - ratio) / 2.0)


def rvdp_corr_decay(kappa1, gamma1):
    """Quantum-limit decay rate (3 kappa1 + gamma1)/2 of the slowest coherence."""
    if not (kappa1 >= gamma1 >= 0) or kappa1 <= 0:
        raise InvalidParameterError(
            "requires kappa1 >= gamma1 >= 0 with kappa1 > 0 (at or above threshold)")
    return (3.0 * kappa1 + gamma1) / 2.0
