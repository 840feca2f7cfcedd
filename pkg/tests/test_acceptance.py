"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v`. The slowest cases (long
time evolution, the 1e4-member ensemble) carry the `slow` marker; the
full module takes ~10 minutes on a fast desktop, several times that on a
throttled container.
"""

import math
import time

import numpy as np
import pytest

from limitcycle import (analytic, classical, correlations, fock, liouville,
                        models, phasespace)


# -- 1 ----------------------------------------------------------------------

def test_c01_classical_amplitudes(report):
    eps = 0.01
    gamma2 = eps  # A_c = 1
    window = np.concatenate([[0.0], np.arange(1990.0, 2000.0001, 0.02)])
    targets = {
        "vdp": (classical.ClassicalParams.vdp(eps, gamma2), 2.0),
        "rayleigh": (classical.ClassicalParams.rayleigh(eps, gamma2),
                     2.0 / math.sqrt(3.0)),
        "rvdp": (classical.ClassicalParams.rvdp(eps, gamma2), 1.0),
    }
    details = []
    ok = True
    for name, (params, expected) in targets.items():
        path = classical.integrate((0.5, 0.0), params, window, dt=0.01)
        amp = np.abs(path[1:, 0]).max()
        rel = abs(amp - expected) / expected
        ok &= rel < 0.01
        details.append(f"{name} {amp:.4f} (target {expected:.4f}, {rel:.2%})")
    orbit_times = np.concatenate([[0.0], np.arange(200.0, 200.0 + 2 * math.pi, 0.01)])
    orbit = classical.integrate(
        (0.5, 0.0), classical.ClassicalParams.rvdp(2.0, 2.0), orbit_times, dt=0.005)
    radius_std = np.hypot(orbit[1:, 0], orbit[1:, 1]).std()
    ok &= radius_std < 1e-3
    details.append(f"rvdp eps=2 radius std {radius_std:.1e}")
    report("C01 classical saturated amplitudes", ok, "; ".join(details))


# -- 2 ----------------------------------------------------------------------

def test_c02_triple_steady_state_agreement(report):
    started = time.time()
    worst = 0.0
    cases = []
    for kappa1, kappa2 in ((20.0, 0.0), (3.0, 0.5)):
        for temp in (0.0, 2.0, 4.0):
            rs = models.RateSet(kappa1=kappa1, kappa2=kappa2, gamma1=1.0,
                                gamma2=1.0, temperature=temp,
                                delta1=1.0, delta2=2.0)
            eff = models.effective_rates(rs)
            cutoff = liouville.choose_cutoff(eff, tail=1e-10)
            p_banded = liouville.rvdp_diag_steady(eff, cutoff)
            p_analytic = analytic.steady_probs(eff, cutoff)
            rho = liouville.steady_state(models.build_rvdp(rs, cutoff))
            p_full = np.diagonal(rho).real
            d1 = np.max(np.abs(p_banded - p_analytic))
            d2 = np.max(np.abs(p_banded - p_full))
            worst = max(worst, d1, d2)
            cases.append(f"k1={kappa1:g},k2={kappa2:g},T={temp:g}:n={cutoff}")
    elapsed = time.time() - started
    ok = worst < 1e-8 and elapsed < 60.0
    report("C02 triple steady-state agreement", ok,
           f"worst elementwise diff {worst:.2e}, {elapsed:.0f}s "
           f"({'; '.join(cases)})")


# -- 3 ----------------------------------------------------------------------

def test_c03_kummer_reduction(report):
    worst_gen, worst_banded = 0.0, 0.0
    for kappa1 in (0.1, 1.0, 20.0):
        rs = models.RateSet(kappa1=kappa1, gamma1=1.0, gamma2=1.0)
        eff = models.effective_rates(rs)
        cutoff = liouville.choose_cutoff(eff)
        p_kummer = analytic.kummer_probs(eff.Gamma1 / eff.Gamma2,
                                         eff.K1 / eff.Gamma2, cutoff)
        small_k2 = models.EffectiveRates(Gamma1=eff.Gamma1, K1=eff.K1,
                                         Gamma2=eff.Gamma2, K2=1e-12)
        worst_gen = max(worst_gen, np.max(np.abs(
            p_kummer - analytic.steady_probs(small_k2, cutoff))))
        worst_banded = max(worst_banded, np.max(np.abs(
            p_kummer - liouville.rvdp_diag_steady(eff, cutoff))))
    ok = worst_gen < 1e-6 and worst_banded < 1e-9
    report("C03 Kummer reduction", ok,
           f"vs K2=1e-12 {worst_gen:.2e} (tol 1e-6), "
           f"vs banded {worst_banded:.2e} (tol 1e-9)")


# -- 4 ----------------------------------------------------------------------

def test_c04_quantum_limit_occupation(report):
    worst = 0.0
    for kappa1 in (0.0, 0.1, 0.5, 1.0, 3.0, 10.0):
        rs = models.RateSet(kappa1=kappa1, gamma1=1.0, gamma2=1e5)
        eff = models.effective_rates(rs)
        cutoff = liouville.choose_cutoff(eff)
        p = liouville.rvdp_diag_steady(eff, cutoff)
        n_mean = float(p @ np.arange(cutoff))
        expected = 0.0 if kappa1 == 0 else 1.0 / (3.0 + 1.0 / kappa1)
        worst = max(worst, abs(n_mean - expected))
    ok = worst < 1e-4
    report("C04 quantum-limit occupation", ok,
           f"worst |<N> - 1/(3+r)| = {worst:.2e} (tol 1e-4)")


# -- 5 ----------------------------------------------------------------------

def test_c05_quantum_bifurcation_amplitude(report):
    grid = phasespace.PhaseGrid.symmetric(4.5, 321)
    details = []
    ok = True
    for kappa1, gamma1, r in ((1.0, 0.0, 0.0), (2.0, 1.0, 0.5),
                              (10.0 / 9.0, 1.0, 0.9)):
        rs = models.RateSet(kappa1=kappa1, gamma1=gamma1, gamma2=1e5)
        eff = models.effective_rates(rs)
        cutoff = liouville.choose_cutoff(eff)
        rho = np.diag(liouville.rvdp_diag_steady(eff, cutoff)).astype(complex)
        peak = phasespace.peak_radius(phasespace.wigner(rho, grid))
        expected = math.sqrt((1.0 - r) / 2.0)
        rel = abs(peak - expected) / expected
        ok &= rel < 0.02
        details.append(f"r={r}: A={peak:.4f} ({rel:.2%})")
    # r = 1: no ring, maximum at the origin
    rs = models.RateSet(kappa1=1.0, gamma1=1.0, gamma2=1e5)
    eff = models.effective_rates(rs)
    rho = np.diag(liouville.rvdp_diag_steady(eff, 16)).astype(complex)
    peak1 = phasespace.peak_radius(phasespace.wigner(rho, grid))
    ok &= peak1 == 0.0
    details.append(f"r=1: peak at {peak1}")
    report("C05 quantum bifurcation amplitude", ok, "; ".join(details))


# -- 6 ----------------------------------------------------------------------

def test_c06_temperature_smearing(report):
    grid = phasespace.PhaseGrid.symmetric(4.5, 321)
    worst = 0.0
    for r in (0.1, 0.5):
        for temp in (0.1, 0.25, 0.5):
            rs = models.RateSet(kappa1=1.0, gamma1=r, gamma2=1e5,
                                temperature=temp, delta1=0.1, delta2=0.1)
            eff = models.effective_rates(rs)
            cutoff = liouville.choose_cutoff(eff)
            rho = np.diag(liouville.rvdp_diag_steady(eff, cutoff)).astype(complex)
            peak = phasespace.peak_radius(phasespace.wigner(rho, grid))
            expected = analytic.limit_amplitude(analytic.ratio_R(rs))
            worst = max(worst, abs(peak - expected) / expected)
    ok = worst < 0.05
    report("C06 temperature smearing of the amplitude", ok,
           f"worst relative deviation {worst:.2%} (tol 5%)")


# -- 7 ----------------------------------------------------------------------

def test_c07_block_structure(report):
    rs = models.RateSet(kappa1=1.0, gamma1=0.0, gamma2=0.25)  # eps=1, A_c=2
    cutoff = 26
    offs_rvdp = liouville.coupling_offsets(
        liouville.liouvillian(models.build_rvdp(rs, cutoff)), cutoff)
    offs_vdp = liouville.coupling_offsets(
        liouville.liouvillian(models.build_vdp(rs, cutoff)), cutoff)
    rho_vdp = liouville.steady_state(models.build_vdp(rs, cutoff))
    tm = liouville.transform_elements(rho_vdp)
    odd = max(np.max(np.abs(tm.block(m))) for m in range(1, cutoff, 2))
    even = max(np.max(np.abs(tm.block(m))) for m in range(2, cutoff, 2))
    ok = (offs_rvdp == [0] and offs_vdp == [-2, 0, 2]
          and odd < 1e-8 and even > 1e-3)
    report("C07 block structure", ok,
           f"rvdp offsets {offs_rvdp}, vdp offsets {offs_vdp}, "
           f"odd max {odd:.1e}, even max {even:.1e}")


# -- 8 ----------------------------------------------------------------------

def test_c08_rvdp_circularity_and_epsilon_independence(report):
    diagonals = []
    worst_offdiag = 0.0
    cutoff = 56
    for eps in (0.01, 0.3, 1.0):
        rs = models.RateSet(kappa1=eps, gamma1=0.0, gamma2=eps / 16.0)  # A_c=4
        rho = liouville.steady_state(models.build_rvdp(rs, cutoff))
        offdiag = np.abs(rho - np.diag(np.diagonal(rho))).max()
        worst_offdiag = max(worst_offdiag, offdiag)
        diagonals.append(np.diagonal(rho).real)
    spread = max(np.max(np.abs(diagonals[0] - d)) for d in diagonals[1:])
    ok = worst_offdiag < 1e-8 and spread < 1e-8
    report("C08 rvdp circular steady state", ok,
           f"max off-diagonal {worst_offdiag:.1e}, "
           f"P_n spread across eps {spread:.1e} (tol 1e-8)")


# -- 9 ----------------------------------------------------------------------

@pytest.mark.slow
def test_c09_semiclassical_correspondence(report):
    a_c, eps = 8.0, 0.1
    rs = models.RateSet(kappa1=eps, gamma1=0.0, gamma2=eps / a_c ** 2)
    cutoff = 112
    model = models.build_rvdp(rs, cutoff)
    alpha0 = (1 + 1j) * a_c / 4
    rho0 = fock.density_from_state(fock.coherent_state(alpha0, cutoff))
    # mean-trajectory gate over one relaxation time 1/eps
    t_relax = 1.0 / eps
    times = np.linspace(0.0, t_relax, 51)
    traj = liouville.evolve(model, rho0, times, dt=0.01)
    qx = traj.expect(fock.position(cutoff)).real
    qp = traj.expect(fock.momentum(cutoff)).real
    cl = classical.integrate((qx[0], qp[0]),
                             classical.ClassicalParams.rvdp(eps, rs.gamma2),
                             times, dt=0.005)
    deviation = np.hypot(qx - cl[:, 0], qp - cl[:, 1]).max()
    ok = deviation < 0.05 * a_c
    # long-time ring: continue to t = 2000 pi with a coarser stable step
    t_end = 2000.0 * math.pi
    traj2 = liouville.evolve(model, traj.states[-1],
                             np.array([0.0, t_end - t_relax]), dt=0.02)
    field = phasespace.wigner(traj2.states[-1],
                              phasespace.PhaseGrid.for_state(traj2.states[-1]))
    asym = phasespace.angular_variation(field)
    peak = phasespace.peak_radius(field)
    ok &= asym < 0.05 and abs(peak - a_c) / a_c < 0.03
    report("C09 semiclassical correspondence", ok,
           f"max deviation {deviation:.3f} over t=1/eps (tol {0.05 * a_c}); "
           f"t=2000pi ring radius {peak:.3f} (target 8 +/- 3%), "
           f"angular variation {asym:.1e}")


# -- 10 ---------------------------------------------------------------------

def test_c10_correlation_decay(report):
    details = []
    ok = True
    rvdp_rate = None
    for r in (0.0, 0.5):
        kappa1 = 0.01 / (1.0 - r)
        gamma1 = r * kappa1
        rs = models.RateSet(kappa1=kappa1, gamma1=gamma1, gamma2=1.0)
        model = models.build_rvdp(rs, 15)
        x = fock.position(15)
        expected = (0.01 / 2.0) * (3.0 + r) / (1.0 - r)
        times = np.linspace(0.0, math.log(2000.0) / expected, 2001)
        series = correlations.two_time_corr(model, x, x, times, dt=0.005)
        rate = correlations.decay_rate(series)
        rel = abs(rate - expected) / expected
        ok &= rel < 0.10
        if r == 0.0:
            rvdp_rate = expected
        details.append(f"r={r}: rate {rate:.5f} vs {expected:.5f} ({rel:.1%})")
    for variant, build in (("vdp", models.build_vdp),
                           ("rayleigh", models.build_rayleigh)):
        rs = models.RateSet(kappa1=0.01, gamma1=0.0,
                            gamma2=correlations.matched_gamma2(variant, 1.0))
        model = build(rs, 15)
        x = fock.position(15)
        series = correlations.two_time_corr(model, x, x,
                                            np.linspace(0.0, 40.0, 2001),
                                            dt=0.005)
        rate = correlations.decay_rate(series)
        ok &= rate >= 10.0 * rvdp_rate
        details.append(f"{variant}: rate {rate:.3f} (>= {10 * rvdp_rate:.3f})")
    report("C10 correlation decay rates", ok, "; ".join(details))


# -- 11 ---------------------------------------------------------------------

@pytest.mark.slow
def test_c11_spectral_peaks_and_plateaus(report):
    eps = 0.05
    details = []
    ok = True
    plateaus = {}
    for variant, build in (("rvdp", models.build_rvdp),
                           ("vdp", models.build_vdp),
                           ("rayleigh", models.build_rayleigh)):
        rs = models.RateSet(kappa1=eps, gamma1=0.0,
                            gamma2=correlations.matched_gamma2(variant, eps / 10))
        cutoff = 26
        model = build(rs, cutoff)
        rho = liouville.steady_state(model)
        times = np.arange(0.0, 600.0001, 0.05)
        x = fock.position(cutoff)
        ser_x = correlations.two_time_corr(model, x, x, times, dt=0.01,
                                           rho_ss=rho)
        spec_x = correlations.spectrum(ser_x, window="hann")
        x2 = x @ x
        ser_x2 = correlations.two_time_corr(model, x2, x2, times, dt=0.01,
                                            rho_ss=rho)
        spec_x2 = correlations.spectrum(ser_x2, window="hann")
        binw = 2.0 * math.pi / (2.0 * times[-1])
        p_x = spec_x.peak_freq(fmin=0.2)
        p_x_neg = spec_x.peak_freq(fmax=-0.2)
        p_0 = spec_x2.peak_freq(fmin=-0.5, fmax=0.5)
        p_2 = spec_x2.peak_freq(fmin=1.0)
        ok &= (abs(p_x - 1.0) <= binw and abs(p_x_neg + 1.0) <= binw
               and abs(p_0) <= binw and abs(p_2 - 2.0) <= binw)
        details.append(f"{variant}: Sxx at {p_x:.4f}/{p_x_neg:.4f}, "
                       f"Sx2x2 at {p_0:.4f},{p_2:.4f} (bin {binw:.4f})")
        # two-phonon plateau: duration set by the slowest m=2 eigenvalue
        a2 = fock.annihilation(cutoff) @ fock.annihilation(cutoff)
        ad2 = a2.conj().T
        lind = liouville.liouvillian(model)
        blocks = [liouville.block_matrix(lind, cutoff, m) for m in (2,)] \
            if variant == "rvdp" else \
            [liouville.block_matrix(lind, cutoff, m) for m in (0, 2)]
        ev = np.concatenate([np.linalg.eigvals(b) for b in blocks])
        slow = -np.max(ev.real[ev.real < -1e-10])
        t_end = math.log(1e9) / slow
        ser_a2 = correlations.two_time_corr(model, ad2, a2,
                                            [0.0, t_end / 2, t_end],
                                            dt=0.01, rho_ss=rho)
        plateaus[variant] = (ser_a2.values[-1],
                             liouville.expectation(rho, ad2)
                             * liouville.expectation(rho, a2))
    measured, predicted = plateaus["rvdp"]
    ok &= abs(measured) < 1e-6
    details.append(f"rvdp plateau {abs(measured):.1e} (< 1e-6)")
    measured_v, predicted_v = plateaus["vdp"]
    ok &= abs(measured_v - predicted_v) < 1e-6 and abs(predicted_v) > 1e-4
    details.append(f"vdp plateau {measured_v.real:.6f} vs "
                   f"<adag2><a2> {predicted_v.real:.6f}")
    report("C11 spectral peaks and plateaus", ok, "; ".join(details))


# -- 12 ---------------------------------------------------------------------

@pytest.mark.slow
def test_c12_classical_ensemble_milestones(report):
    a_c = 1.0
    params = classical.ClassicalParams.vdp(
        epsilon=0.1, gamma2=0.1, noise_temp=0.01 * a_c ** 2,
        noise_coupling=0.5)
    cloud = classical.gaussian_cloud((a_c / 2, a_c / 2), 0.1 * a_c, 10_000,
                                     seed=2026)
    t_mid = 200.0 * math.pi
    t_end = 2000.0 * math.pi
    first = classical.ensemble_evolve(cloud, params, [0.0, t_mid], seed=7,
                                      dt=2e-3)
    median_mid = classical.median_radius(first[-1])
    second = classical.ensemble_evolve(first[-1], params, [t_mid, t_end],
                                       seed=8, dt=0.01)
    circ_var = classical.circular_variance(second[-1])
    ok = abs(median_mid - 2.0 * a_c) / (2.0 * a_c) < 0.05 and circ_var > 0.9
    report("C12 classical ensemble milestones", ok,
           f"median radius at 200pi {median_mid:.3f} (target 2 +/- 5%), "
           f"circular variance at 2000pi {circ_var:.3f} (> 0.9)")


# -- 13 ---------------------------------------------------------------------

def test_c13_wigner_fundamentals(report):
    grid = phasespace.PhaseGrid.symmetric(4.5, 201)
    worst_identity = 0.0
    for ratio in (0.0, 0.3, 0.9, 1.5):
        direct = phasespace.wigner(analytic.quantum_limit_rho(ratio), grid)
        closed = phasespace.wigner_two_state(ratio, grid)
        worst_identity = max(worst_identity,
                             np.max(np.abs(direct.values - closed.values)))
    # representative steady-state fields: quantum limit, classical ring, thermal
    fields = []
    for rs in (models.RateSet(kappa1=2.0, gamma1=1.0, gamma2=1e5),
               models.RateSet(kappa1=0.1, gamma1=0.0, gamma2=0.1 / 16),
               models.RateSet(kappa1=3.0, kappa2=0.5, gamma1=1.0, gamma2=1.0,
                              temperature=2.0, delta1=1.0, delta2=2.0)):
        eff = models.effective_rates(rs)
        cutoff = liouville.choose_cutoff(eff)
        rho = np.diag(liouville.rvdp_diag_steady(eff, cutoff)).astype(complex)
        fields.append(phasespace.wigner(
            rho, phasespace.PhaseGrid.for_state(rho, points=201)))
    min_value = min(f.values.min() for f in fields)
    worst_norm = max(abs(f.norm() - 1.0) for f in fields)
    ok = worst_identity < 1e-10 and min_value > -1e-6 and worst_norm < 1e-3
    report("C13 Wigner fundamentals", ok,
           f"kernel identity {worst_identity:.1e} (tol 1e-10), "
           f"min value {min_value:.1e} (> -1e-6), "
           f"worst norm error {worst_norm:.1e} (tol 1e-3)")
