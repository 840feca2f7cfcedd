"""Steady-state two-time correlations via the quantum regression theorem.

<A(t) B(0)> = Tr[A e^{Lt}(B rho_ss)]: the operator B rho_ss is propagated
by the same Liouvillian as a density matrix would be, but without
Hermitization or trace fixing (it is not a state). Spectra are two-sided
discrete Fourier transforms built from the t >= 0 series by conjugate
reflection.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import (DurationWarning, InvalidParameterError,
                     PrecisionFailureError)
from .liouville import liouvillian, propagate, steady_state
from .models import LindbladModel

__all__ = ["CorrelationSeries", "Spectrum", "two_time_corr", "spectrum",
           "preset_correlators", "matched_gamma2", "decay_rate"]


@dataclass(frozen=True)
class CorrelationSeries:
    times: np.ndarray
    values: np.ndarray
    labels: tuple

    @property
    def dt(self):
        steps = np.diff(self.times)
        if steps.size and not np.allclose(steps, steps[0], rtol=1e-9):
            raise InvalidParameterError("series is not uniformly sampled")
        return float(steps[0]) if steps.size else 0.0


@dataclass(frozen=True)
class Spectrum:
    freqs: np.ndarray
    values: np.ndarray

    def peak_freq(self, fmin=None, fmax=None):
        sel = np.ones_like(self.freqs, dtype=bool)
        if fmin is not None:
            sel &= self.freqs >= fmin
        if fmax is not None:
            sel &= self.freqs <= fmax
        idx = np.nonzero(sel)[0]
        return float(self.freqs[idx[np.argmax(self.values[idx])]])


def two_time_corr(model: LindbladModel, a_op, b_op, times, dt=0.01,
                  rho_ss=None, labels=("A", "B")) -> CorrelationSeries:
    """Correlation series Tr[A Lambda(t)] with Lambda(0) = B rho_ss."""
    a_op = np.asarray(a_op, dtype=complex)
    b_op = np.asarray(b_op, dtype=complex)
    n = model.cutoff
    if a_op.shape != (n, n) or b_op.shape != (n, n):
        raise InvalidParameterError("operator cutoffs must match the model")
    if rho_ss is None:
        rho_ss = steady_state(model)
    lind = liouvillian(model)
    lam = propagate(lind, b_op @ rho_ss, times, dt=dt)
    values = np.array([np.einsum("ij,ji->", a_op, mat) for mat in lam])
    return CorrelationSeries(times=np.asarray(times, dtype=float),
                             values=values, labels=tuple(labels))


def spectrum(series: CorrelationSeries, window="none") -> Spectrum:
    """Two-sided spectral distribution S(w) = integral C(t) e^{i w t} dt.

    The negative-time half is the conjugate reflection of the series.
    Frequencies are angular, in scaled units (oscillator frequency = 1).
    """
    if window not in ("none", "hann"):
        raise InvalidParameterError(f"unknown window {window!r}")
    dt = series.dt
    if dt <= 0:
        raise InvalidParameterError("spectrum needs at least two samples")
    c = series.values
    if abs(c[-1]) > 0.01 * abs(c[0]):
        warnings.warn(
            f"series magnitude at final time is {abs(c[-1]) / abs(c[0]):.2%} "
            "of its initial value; the spectrum will show truncation ringing",
            DurationWarning, stacklevel=2)
    full = np.concatenate([np.conj(c[:0:-1]), c])
    if window == "hann":
        full = full * np.hanning(full.size)
    n = full.size
    ordered = np.fft.ifftshift(full)
    vals = np.fft.ifft(ordered) * n * dt
    freqs = 2.0 * math.pi * np.fft.fftfreq(n, d=dt)
    order = np.argsort(freqs)
    return Spectrum(freqs=freqs[order], values=vals.real[order])


def matched_gamma2(variant, gamma2_rvdp):
    """gamma2 for each model giving the same limit-cycle amplitude as RvdP."""
    table = {"rvdp": 1.0, "vdp": 4.0, "rayleigh": 4.0 / 3.0}
    if variant not in table:
        raise InvalidParameterError(f"unknown variant {variant!r}")
    return table[variant] * gamma2_rvdp


def preset_correlators(model: LindbladModel, times, dt=0.01, rho_ss=None):
    """The three standard correlators: xx, x^2 x^2, and a^dag^2 a^2."""
    n = model.cutoff
    x = fock.position(n)
    a = fock.annihilation(n)
    if rho_ss is None:
        rho_ss = steady_state(model)
    x2 = x @ x
    a2 = a @ a
    ad2 = a2.conj().T
    return {
        "xx": two_time_corr(model, x, x, times, dt=dt, rho_ss=rho_ss,
                            labels=("x", "x")),
        "x2x2": two_time_corr(model, x2, x2, times, dt=dt, rho_ss=rho_ss,
                              labels=("x^2", "x^2")),
        "a2a2": two_time_corr(model, ad2, a2, times, dt=dt, rho_ss=rho_ss,
                              labels=("adag^2", "a^2")),
    }


def decay_rate(series: CorrelationSeries, lo=1e-3, hi=1e-1, period=2 * math.pi):
    """Exponential decay rate fitted to log|C(t)|.

    |C| oscillates under the free rotation, so the fit uses the running
    maximum of |C| over one oscillation period (an envelope whose log is
    offset by a constant, leaving the slope unbiased), restricted to the
    window where it lies in [lo, hi] * |C(0)|.
    """
    from scipy.ndimage import maximum_filter1d

    c0 = abs(series.values[0])
    if c0 == 0:
        raise InvalidParameterError("series starts at zero; no decay to fit")
    dt = series.dt
    if dt <= 0:
        raise InvalidParameterError("series too short to fit a decay rate")
    size = max(1, int(round(period / dt)))
    env = maximum_filter1d(np.abs(series.values), size=size, mode="nearest")
    sel = (env >= lo * c0) & (env <= hi * c0)
    if sel.sum() < max(3, size // 2):
        raise PrecisionFailureError(
            "too few envelope points inside the fit window "
            f"[{lo:g}, {hi:g}] x |C(0)|; extend the series")
    slope, _ = np.polyfit(series.times[sel], np.log(env[sel]), 1)
    return -float(slope)
