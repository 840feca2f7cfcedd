"""Vectorized Liouvillian, time evolution, and steady-state solvers.

Vectorization convention (fixed so results are bit-reproducible): rho is
column-stacked, vec(rho) = rho.reshape(-1, order='F'), so that
vec(A rho B) = kron(B.T, A) vec(rho) and

    L = -i (I (x) H  -  H.T (x) I)
        + sum_k rate_k (conj(C) (x) C - I (x) C^dag C / 2 - (C^dag C).T (x) I / 2)

with (x) the Kronecker product whose first factor carries the column
index. Element rho_{n, n+m} sits at vec index n + (n+m) * N and belongs
to the off-diagonality block m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import solve_banded
from scipy.special import gammaln

from . import fock
from .errors import (DegenerateSteadyStateError, IntegrationFailureError,
                     InvalidParameterError, ResourceLimitError)
from .models import EffectiveRates, LindbladModel, effective_rates

__all__ = [
    "vec", "unvec", "liouvillian", "coupling_offsets", "block_matrix",
    "Trajectory", "evolve", "propagate", "steady_state", "rvdp_diag_steady",
    "choose_cutoff", "expectation", "TransformedMatrix", "transform_elements",
]

#: Dense LU is used for the bordered steady-state solve up to this cutoff;
#: above it SuperLU exploits the Liouvillian's block sparsity (orders of
#: magnitude faster already at cutoff ~40).
DENSE_CUTOFF = 16

#: Relative magnitude below which steady-state elements are treated as
#: solver noise and zeroed (keeps structurally decoupled blocks exactly 0).
STEADY_CLAMP = 1e-13


def vec(rho):
    """Column-stack a matrix into a vector."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v, cutoff):
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((cutoff, cutoff), order="F")


def liouvillian(model: LindbladModel):
    """Assemble the sparse N^2 x N^2 generator of the master equation."""
    n = model.cutoff
    if n * n > 2 ** 24:
        raise ResourceLimitError(f"cutoff {n} gives a {n*n}-dimensional "
                                 "Liouville space; refusing to assemble")
    eye = sp.identity(n, dtype=complex, format="csr")
    h = sp.csr_matrix(model.hamiltonian)
    lind = -1j * (sp.kron(eye, h) - sp.kron(h.T, eye))
    for rate, op in model.channels:
        if rate == 0.0:
            continue
        c = sp.csr_matrix(op)
        cdc = (c.conj().T @ c).tocsr()
        lind = lind + rate * (
            sp.kron(c.conj(), c)
            - 0.5 * sp.kron(eye, cdc)
            - 0.5 * sp.kron(cdc.T, eye)
        )
    lind = lind.tocsr()
    lind.eliminate_zeros()
    lind.sort_indices()
    return lind


def _block_index(cutoff):
    """m = column - row for every vec index."""
    idx = np.arange(cutoff * cutoff)
    return idx // cutoff - idx % cutoff


def coupling_offsets(lind, cutoff):
    """Sorted set of off-diagonality changes m_target - m_source with nonzero coupling."""
    coo = lind.tocoo()
    mask = coo.data != 0
    m = _block_index(cutoff)
    return sorted(set((m[coo.row[mask]] - m[coo.col[mask]]).tolist()))


def block_matrix(lind, cutoff, m):
    """Dense sub-generator acting within the off-diagonality block m."""
    sel = np.nonzero(_block_index(cutoff) == m)[0]
    return np.asarray(lind[np.ix_(sel, sel)].todense())


# ---------------------------------------------------------------------------
# time evolution


@dataclass(frozen=True)
class Trajectory:
    """Times, density matrices, and the drift log of one evolution.

    trace_drift and herm_drift record |tr(rho) - 1| and max|rho - rho^dag|
    of the raw integrator output before the per-snapshot correction.
    """

    times: np.ndarray
    states: list
    trace_drift: np.ndarray
    herm_drift: np.ndarray = None

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise InvalidParameterError("times and states length mismatch")
        if np.any(np.diff(self.times) <= 0):
            raise InvalidParameterError("times must be strictly increasing")

    def expect(self, op):
        return np.array([expectation(rho, op) for rho in self.states])


def _rk4(lind, v, h, nsteps):
    for _ in range(nsteps):
        k1 = lind @ v
        k2 = lind @ (v + (0.5 * h) * k1)
        k3 = lind @ (v + (0.5 * h) * k2)
        k4 = lind @ (v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return v


def propagate(lind, mat0, times, dt=0.01, method="rk4"):
    """Raw linear propagation of a matrix under the generator; no corrections.

    Used both for density matrices and for the non-Hermitian operators of
    the regression theorem. Output times must start at times[0] = 0 and be
    strictly increasing. ``method`` is "rk4" (fixed substeps of size <= dt
    landing on each output time exactly) or "adaptive" (scipy RK45 with
    tight tolerances).
    """
    times = np.asarray(times, dtype=float)
    if times[0] != 0.0:
        raise InvalidParameterError("times must start at 0")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise InvalidParameterError("times must be strictly increasing")
    n = mat0.shape[0]
    v = vec(mat0)
    if method == "adaptive":
        from scipy.integrate import solve_ivp
        sol = solve_ivp(lambda _t, y: lind @ y, (times[0], times[-1]), v,
                        t_eval=times, method="RK45", rtol=1e-8, atol=1e-10)
        if not sol.success:
            raise IntegrationFailureError(f"adaptive integration failed: {sol.message}")
        return [unvec(sol.y[:, k].copy(), n) for k in range(times.size)]
    if method != "rk4":
        raise InvalidParameterError(f"unknown method {method!r}")
    out = [unvec(v.copy(), n)]
    for t0, t1 in zip(times[:-1], times[1:]):
        span = t1 - t0
        nsub = max(1, int(np.ceil(span / dt - 1e-12)))
        v = _rk4(lind, v, span / nsub, nsub)
        if not np.all(np.isfinite(v)):
            raise IntegrationFailureError(
                f"non-finite state at t = {t1:g} (step {span / nsub:g}); "
                "reduce the step size")
        out.append(unvec(v.copy(), n))
    return out


def evolve(model: LindbladModel, rho0, times, dt=0.01, method="rk4") -> Trajectory:
    """Integrate the master equation from rho0 through the given times.

    Each output state is re-Hermitized ((rho + rho^dag)/2) and trace
    renormalized; the drift before correction is logged on the returned
    Trajectory. Trace drift above 1e-6 per unit time signals instability.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (model.cutoff, model.cutoff):
        raise InvalidParameterError(
            f"cutoff mismatch: state {rho0.shape} vs model cutoff {model.cutoff}")
    lind = liouvillian(model)
    raw = propagate(lind, rho0, times, dt=dt, method=method)
    times = np.asarray(times, dtype=float)
    states, drifts, herms = [], [], []
    for t, mat in zip(times, raw):
        tr = np.trace(mat).real
        herm = np.max(np.abs(mat - mat.conj().T))
        drift = abs(tr - 1.0)
        if t > 0 and drift / t > 1e-6:
            raise IntegrationFailureError(
                f"trace drift {drift:.3e} by t = {t:g} exceeds 1e-6 per unit time "
                f"(hermiticity drift {herm:.3e}); the step dt = {dt:g} is unstable "
                "for this model")
        drifts.append(drift)
        herms.append(herm)
        mat = 0.5 * (mat + mat.conj().T)
        states.append(mat / np.trace(mat).real)
    return Trajectory(times=times, states=states,
                      trace_drift=np.array(drifts), herm_drift=np.array(herms))


# ---------------------------------------------------------------------------
# steady states


def _kernel_dimension(dense_l, tol):
    svals = np.linalg.svd(dense_l, compute_uv=False)
    scale = svals.max() if svals.max() > 0 else 1.0
    return int(np.sum(svals < tol * scale)), svals


def steady_state(model: LindbladModel, clamp=STEADY_CLAMP):
    """Unique steady state of the master equation via a bordered solve.

    One row of the (rate-normalized) Liouvillian is replaced by the trace
    functional and the resulting system solved directly (dense LU up to
    cutoff 64, sparse LU above). The residual ||L rho||_inf, measured in
    units of the largest Liouvillian entry, must come out below 1e-9.
    Elements below ``clamp`` relative to the largest are zeroed, so blocks
    that decouple structurally are exactly zero in the result.
    """
    if not any(rate > 0 for rate, _ in model.channels):
        raise DegenerateSteadyStateError(
            "model has no dissipative channel; steady state is not unique")
    n = model.cutoff
    lind = liouvillian(model)
    scale = max(np.abs(lind.data).max(), 1.0) if lind.nnz else 1.0
    lind_s = lind / scale
    dim = n * n
    trace_cols = np.arange(n) * (n + 1)
    rhs = np.zeros(dim, dtype=complex)
    rhs[0] = 1.0
    if n <= DENSE_CUTOFF:
        a = lind_s.toarray()
        a[0, :] = 0.0
        a[0, trace_cols] = 1.0
        try:
            x = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError:
            x = None
    else:
        drop_row0 = sp.diags(np.concatenate(([0.0], np.ones(dim - 1))))
        trace_row = sp.csr_matrix(
            (np.ones(n), (np.zeros(n, dtype=int), trace_cols)), shape=(dim, dim))
        a = (drop_row0 @ lind_s + trace_row).tocsc()
        try:
            x = spla.spsolve(a, rhs)
        except RuntimeError:
            x = None

    def _diagnose(reason):
        if dim <= 4096:
            kdim, svals = _kernel_dimension(lind_s.toarray(), tol=1e-12)
            if kdim != 1:
                raise DegenerateSteadyStateError(
                    f"Liouvillian kernel dimension {kdim} "
                    f"(two smallest singular values {svals[-2]:.2e}, {svals[-1]:.2e})")
        raise DegenerateSteadyStateError(reason)

    if x is None or not np.all(np.isfinite(x)):
        _diagnose("bordered steady-state solve failed (singular system)")
    rho = unvec(x, n)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    resid = np.max(np.abs(lind_s @ vec(rho)))
    if resid > 1e-9:
        _diagnose(f"steady-state residual {resid:.3e} exceeds 1e-9 in scaled units")
    if clamp:
        rho = np.where(np.abs(rho) < clamp * np.abs(rho).max(), 0.0, rho)
        rho /= np.trace(rho).real
    fock.validate_density(rho)
    return rho


def _pentadiagonal_bands(eff: EffectiveRates, n):
    """LAPACK band storage (l=2, u=2) of the diagonal-block rate equations.

    Rates are scaled by Gamma2; boundary rows follow the truncated-operator
    convention (pump transitions that would leave the basis are dropped
    together with their loss terms), which makes the matrix the exact m = 0
    block of the truncated Liouvillian and keeps column sums zero.
    """
    if eff.Gamma2 <= 0:
        raise InvalidParameterError("rvdp_diag_steady requires Gamma2 > 0")
    k1 = eff.K1 / eff.Gamma2
    g1 = eff.Gamma1 / eff.Gamma2
    k2 = eff.K2 / eff.Gamma2
    ns = np.arange(n, dtype=float)
    diag = -(g1 * ns + ns * (ns - 1.0))
    diag[:-1] -= k1 * (ns[:-1] + 1.0)          # pump loss, absent at the top level
    diag[:-2] -= k2 * (ns[:-2] + 1.0) * (ns[:-2] + 2.0)
    upper1 = g1 * ns[1:]                        # M[n, n+1] = Gamma1 (n+1)
    upper2 = ns[2:] * (ns[2:] - 1.0)            # M[n, n+2] = (n+2)(n+1)
    lower1 = k1 * ns[1:]                        # M[n, n-1] = K1 n
    lower2 = k2 * ns[2:] * (ns[2:] - 1.0)       # M[n, n-2] = K2 n (n-1)
    ab = np.zeros((5, n))
    ab[0, 2:] = upper2
    ab[1, 1:] = upper1
    ab[2, :] = diag
    ab[3, :-1] = lower1
    ab[4, :-2] = lower2
    return ab


def _bands_matvec(ab, p):
    n = p.size
    out = ab[2] * p
    out[:-1] += ab[1, 1:] * p[1:]
    out[:-2] += ab[0, 2:] * p[2:]
    out[1:] += ab[3, :-1] * p[:-1]
    out[2:] += ab[4, :-2] * p[:-2]
    return out


def rvdp_diag_steady(eff: EffectiveRates, cutoff):
    """Steady Fock occupations of the RvdP model from the banded rate equations.

    Solves the pentadiagonal system with sum(P) = 1. The normalization is
    imposed by pinning P_0 = 1 in the banded solve and rescaling, which is
    algebraically identical to the bordered system (Sherman-Morrison) but
    keeps the matrix banded. Falls back to a dense bordered solve if the
    banded path degenerates.
    """
    n = int(cutoff)
    if n < 3:
        raise InvalidParameterError("cutoff must be >= 3")
    ab = _pentadiagonal_bands(eff, n)
    rhs = np.zeros(n)
    rhs[0] = 1.0
    ab_pinned = ab.copy()
    # row 0 -> e_0 in band storage: entries (0,0), (0,1), (0,2)
    ab_pinned[2, 0] = 1.0
    ab_pinned[1, 1] = 0.0
    ab_pinned[0, 2] = 0.0
    try:
        y = solve_banded((2, 2), ab_pinned, rhs)
    except np.linalg.LinAlgError:
        y = None
    if y is None or not np.all(np.isfinite(y)) or y.sum() <= 0:
        dense = (np.diag(ab[2])
                 + np.diag(ab[1, 1:], k=1) + np.diag(ab[0, 2:], k=2)
                 + np.diag(ab[3, :-1], k=-1) + np.diag(ab[4, :-2], k=-2))
        dense[-1, :] = 1.0
        rhs_d = np.zeros(n)
        rhs_d[-1] = 1.0
        try:
            y = np.linalg.solve(dense, rhs_d)
        except np.linalg.LinAlgError as exc:
            raise DegenerateSteadyStateError(
                "diagonal steady-state system is singular") from exc
    p = y / y.sum()
    p = np.where(np.abs(p) < 1e-300, 0.0, p)
    resid = np.max(np.abs(_bands_matvec(ab, p)))
    if resid > 1e-8 * max(1.0, np.max(np.abs(ab))):
        raise DegenerateSteadyStateError(
            f"diagonal steady state residual {resid:.3e} too large")
    if p.min() < -1e-10:
        raise DegenerateSteadyStateError(
            f"diagonal steady state has negative probability {p.min():.3e}")
    return np.clip(p, 0.0, None) / np.clip(p, 0.0, None).sum()


def choose_cutoff(rates_or_eff, tail=1e-10, start=16, cap=4096):
    """Smallest cutoff at which the diagonal steady state's tail P_{n-1} < tail."""
    eff = rates_or_eff
    if not isinstance(eff, EffectiveRates):
        eff = effective_rates(eff)
    n = max(8, int(start))
    while n <= cap:
        p = rvdp_diag_steady(eff, n)
        if p[-1] < tail and p[-3:].sum() < 10 * tail:
            return n
        n = int(np.ceil(n * 1.5))
    raise InvalidParameterError(
        f"no adequate cutoff below {cap}; the distribution tail is too heavy")


# ---------------------------------------------------------------------------
# expectation values and the off-diagonality transform


def expectation(rho, op):
    """Tr(rho O)."""
    rho = np.asarray(rho)
    op = np.asarray(op)
    if rho.shape != op.shape:
        raise InvalidParameterError(
            f"cutoff mismatch: state {rho.shape} vs operator {op.shape}")
    return complex(np.einsum("ij,ji->", rho, op))


@dataclass(frozen=True)
class TransformedMatrix:
    """Density-matrix elements relabeled by off-diagonality m.

    entries[n, n+m] holds rho~_{n,m} = exp(i m t) sqrt((n+m)!/n!) rho_{n,n+m};
    the factorial ratio is evaluated in log space, so any desk-scale cutoff
    is safe.
    """

    entries: np.ndarray
    time: float

    @property
    def cutoff(self):
        return self.entries.shape[0]

    def block(self, m):
        """1-D array of rho~_{n,m} over valid n."""
        return np.diagonal(self.entries, offset=m)

    def max_block_abs(self, ms):
        return max(np.max(np.abs(self.block(m))) for m in ms) if ms else 0.0


def transform_elements(rho, t=0.0) -> TransformedMatrix:
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    idx = np.arange(n)
    lg = gammaln(idx + 1.0)
    factor = np.exp(0.5 * (lg[None, :] - lg[:, None]))
    phase = np.exp(1j * t * (idx[None, :] - idx[:, None]))
    return TransformedMatrix(entries=rho * factor * phase, time=float(t))
