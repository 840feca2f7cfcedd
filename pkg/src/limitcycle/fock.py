"""Truncated Fock-space operators and canonical states.

Everything lives on the basis |0>, ..., |N-1> for a cutoff N and is
represented by plain complex numpy arrays. Scaled units are used
throughout: hbar = m = omega = 1, so x = (a + a^dag)/sqrt(2) and
p = i(a^dag - a)/sqrt(2). Arrays returned by the constructors here are
marked read-only; treat them as immutable values.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.special import gammaln

from .errors import InvalidParameterError, TruncationWarning

__all__ = [
    "annihilation", "creation", "number", "position", "momentum", "identity",
    "fock_state", "coherent_state", "thermal_state", "density_from_state",
    "validate_state", "validate_density", "check_positive", "dag",
]

#: Tolerances used by the density-matrix validators.
HERM_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_TOL = 1e-8


def _check_cutoff(cutoff):
    if not isinstance(cutoff, (int, np.integer)) or cutoff < 2:
        raise InvalidParameterError(f"cutoff must be an integer >= 2, got {cutoff!r}")
    return int(cutoff)


def _freeze(arr):
    arr.flags.writeable = False
    return arr


def annihilation(cutoff):
    """Annihilation operator a with a|n> = sqrt(n)|n-1>."""
    n = _check_cutoff(cutoff)
    a = np.zeros((n, n), dtype=complex)
    ladder = np.sqrt(np.arange(1, n))
    a[np.arange(n - 1), np.arange(1, n)] = ladder
    return _freeze(a)


def creation(cutoff):
    """Creation operator a^dag, the conjugate transpose of annihilation."""
    return _freeze(annihilation(cutoff).conj().T.copy())


def number(cutoff):
    """Number operator a^dag a with diagonal (0, 1, ..., N-1)."""
    n = _check_cutoff(cutoff)
    return _freeze(np.diag(np.arange(n, dtype=float)).astype(complex))


def identity(cutoff):
    n = _check_cutoff(cutoff)
    return _freeze(np.eye(n, dtype=complex))


def position(cutoff):
    """x = (a + a^dag)/sqrt(2); Hermitian."""
    a = annihilation(cutoff)
    return _freeze((a + a.conj().T) / math.sqrt(2))


def momentum(cutoff):
    """p = i(a^dag - a)/sqrt(2); Hermitian."""
    a = annihilation(cutoff)
    return _freeze(1j * (a.conj().T - a) / math.sqrt(2))


def dag(op):
    """Conjugate transpose."""
    return op.conj().T


def fock_state(n, cutoff):
    """Basis state |n> as a unit vector."""
    dim = _check_cutoff(cutoff)
    if not 0 <= n < dim:
        raise InvalidParameterError(f"Fock index {n} outside basis of size {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[n] = 1.0
    return _freeze(psi)


def coherent_state(alpha, cutoff, strict=False):
    """Coherent state |alpha> truncated to the basis and renormalized.

    Amplitudes are alpha^n / sqrt(n!) up to normalization. The truncation
    is considered adequate when |alpha|^2 <= cutoff/4; beyond that a
    TruncationWarning is emitted, or InvalidParameterError is raised when
    ``strict`` is set.
    """
    dim = _check_cutoff(cutoff)
    alpha = complex(alpha)
    if abs(alpha) ** 2 > dim / 4:
        msg = (f"|alpha|^2 = {abs(alpha)**2:.3g} exceeds cutoff/4 = {dim / 4:.3g}; "
               "truncated coherent state may be inaccurate")
        if strict:
            raise InvalidParameterError(msg)
        warnings.warn(msg, TruncationWarning, stacklevel=2)
    ns = np.arange(dim)
    # log-space magnitudes avoid factorial overflow at large cutoff
    if alpha == 0:
        return fock_state(0, dim)
    logmag = ns * math.log(abs(alpha)) - 0.5 * gammaln(ns + 1.0)
    logmag -= logmag.max()
    phase = np.exp(1j * ns * np.angle(alpha))
    psi = np.exp(logmag) * phase
    psi /= np.linalg.norm(psi)
    return _freeze(psi)


def thermal_state(nbar, cutoff):
    """Thermal density matrix with mean occupation nbar, renormalized on the basis."""
    dim = _check_cutoff(cutoff)
    if nbar < 0:
        raise InvalidParameterError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0:
        probs = np.zeros(dim)
        probs[0] = 1.0
    else:
        ratio = nbar / (1.0 + nbar)
        probs = ratio ** np.arange(dim)
        probs /= probs.sum()
    return _freeze(np.diag(probs).astype(complex))


def density_from_state(psi):
    """Rank-one density matrix |psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return _freeze(np.outer(psi, psi.conj()))


def validate_state(psi, tol=1e-12):
    """Check unit norm; raise InvalidParameterError otherwise."""
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise InvalidParameterError(f"state norm {norm!r} deviates from 1 by more than {tol}")


def validate_density(rho, herm_tol=HERM_TOL, trace_tol=TRACE_TOL):
    """Check Hermiticity and unit trace; raise InvalidParameterError otherwise.

    Positivity is checked separately by :func:`check_positive` because it
    needs an eigensolve.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidParameterError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise InvalidParameterError(f"density matrix not Hermitian: max|rho - rho^dag| = {herm:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise InvalidParameterError(f"trace {tr!r} deviates from 1 by more than {trace_tol}")


def check_positive(rho, tol=EIG_TOL):
    """Check positive semidefiniteness up to -tol; raise otherwise."""
    w = np.linalg.eigvalsh(np.asarray(rho))
    if w.min() < -tol:
        raise InvalidParameterError(f"density matrix has eigenvalue {w.min():.3e} below -{tol}")
    return w
