"""Command-line front end.

    limitcycle <task> --config FILE [--set key=value]... [--out DIR]
               [--seed N] [--jobs K]
    limitcycle <task> --preset NAME ...
    limitcycle presets

Tasks: steady, evolve, wigner, analytic, classical-ensemble, correlate,
sweep. Configs are JSON with nested sections; unknown keys are rejected.
--set overrides use dotted paths (e.g. --set rates.kappa1=2.5) and JSON
literals for values. Every run writes a manifest.json (config echo,
provenance, error log) plus one or more CSV payloads; each CSV embeds the
config that produced it as a comment header. Column contracts are
documented in docs/formats.md. Exit codes: 0 success, 2 validation
failure, 3 numerical failure, 4 resource limit.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

import numpy as np

from . import __version__, analytic, classical, correlations, fock, liouville, models, phasespace
from .errors import (DegenerateSteadyStateError, IntegrationFailureError,
                     InvalidParameterError, LimitCycleError,
                     PrecisionFailureError, ResourceLimitError,
                     UnsupportedRegimeError)

TASKS = ("steady", "evolve", "wigner", "analytic", "classical-ensemble",
         "correlate", "sweep")

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_RESOURCE = 4


class ConfigError(InvalidParameterError):
    pass


# ---------------------------------------------------------------------------
# schema validation

_RATES_KEYS = {"kappa1": float, "gamma1": float, "gamma2": float,
               "kappa2": float, "temperature": float,
               "delta1": float, "delta2": float}
_CLASSICAL_KEYS = {"epsilon": float, "gamma2": float, "eta": float,
                   "zeta": float, "noise_temp": float,
                   "noise_coupling": float}

_SCHEMAS = {
    "steady": {
        "task": str, "model": str, "rates": _RATES_KEYS,
        "cutoff": (int, str), "seed": int,
        "steady": {"temperatures": list, "compare_banded": bool,
                   "compare_analytic": bool},
    },
    "evolve": {
        "task": str, "model": str, "rates": _RATES_KEYS,
        "cutoff": (int, str), "seed": int,
        "evolve": {"initial": {"type": str, "alpha_re": float,
                               "alpha_im": float, "n": int, "nbar": float},
                   "t_final": float, "snapshots": int, "times": list,
                   "dt": float, "wigner_snapshots": bool, "points": int},
    },
    "wigner": {
        "task": str, "model": str, "rates": _RATES_KEYS,
        "cutoff": (int, str), "seed": int,
        "wigner": {"points": int, "extent": float},
    },
    "analytic": {
        "task": str, "model": str, "rates": _RATES_KEYS,
        "cutoff": (int, str), "seed": int,
        "analytic": {"n_max": int, "compare_banded": bool},
    },
    "classical-ensemble": {
        "task": str, "model": str, "classical": _CLASSICAL_KEYS, "seed": int,
        "ensemble": {"n_members": int, "center": list, "sigma": float,
                     "times": list, "dt": float, "store_members": bool},
    },
    "correlate": {
        "task": str, "model": str, "rates": _RATES_KEYS,
        "cutoff": (int, str), "seed": int,
        "correlate": {"which": str, "t_final": float, "sample_dt": float,
                      "dt": float, "window": str},
    },
}
_SCHEMAS["sweep"] = {
    "task": str, "seed": int,
    "sweep": {"product": dict, "zip": dict, "inner": dict},
}


def _validate_section(section, schema, path):
    if not isinstance(section, dict):
        raise ConfigError(f"section {path or '<root>'} must be an object")
    for key, value in section.items():
        if key not in schema:
            raise ConfigError(f"unknown key {path + key!r}")
        expected = schema[key]
        if isinstance(expected, dict):
            _validate_section(value, expected, path + key + ".")
        elif expected is float:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{path + key} must be a number")
        elif expected is int:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{path + key} must be an integer")
        elif isinstance(expected, tuple):
            if not isinstance(value, expected) or isinstance(value, bool):
                raise ConfigError(f"{path + key} has the wrong type")
        elif not isinstance(value, expected):
            raise ConfigError(f"{path + key} must be of type {expected.__name__}")


def validate_config(config):
    task = config.get("task")
    if task not in TASKS:
        raise ConfigError(f"task must be one of {TASKS}, got {task!r}")
    _validate_section(config, _SCHEMAS[task], "")
    if task == "sweep":
        inner = config.get("sweep", {}).get("inner")
        if not isinstance(inner, dict):
            raise ConfigError("sweep.inner config is required")
        if inner.get("task") == "sweep":
            raise ConfigError("nested sweeps are not supported")
        validate_config(inner)
    elif task == "classical-ensemble":
        if config.get("model", "classical") != "classical":
            raise ConfigError("classical-ensemble requires model = 'classical'")
    else:
        model = config.get("model")
        if model not in ("rvdp", "vdp", "rayleigh"):
            raise ConfigError(f"model must be rvdp/vdp/rayleigh, got {model!r}")
    return config


def set_by_path(config, dotted, value):
    parts = dotted.split(".")
    node = config
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"cannot descend into {dotted!r}")
    node[parts[-1]] = value


def parse_set_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


# ---------------------------------------------------------------------------
# model construction helpers

_BUILDERS = {"rvdp": models.build_rvdp, "vdp": models.build_vdp,
             "rayleigh": models.build_rayleigh}


def _rates_from(config):
    section = dict(config.get("rates", {}))
    if "kappa1" not in section:
        raise ConfigError("rates.kappa1 is required")
    return models.RateSet(**section)


def _resolve_cutoff(config, rates):
    cutoff = config.get("cutoff", "auto")
    if cutoff == "auto":
        if config["model"] == "rvdp":
            return liouville.choose_cutoff(rates)
        a_c = rates.a_c()
        amp = {"vdp": 2 * a_c, "rayleigh": 2 * a_c / math.sqrt(3)}[config["model"]]
        ring = amp * amp / 2
        return int(math.ceil(ring + 8 * math.sqrt(ring + 1) + 10))
    if not isinstance(cutoff, int) or cutoff < 2:
        raise ConfigError("cutoff must be 'auto' or an integer >= 2")
    return cutoff


def _build_model(config, rates, cutoff):
    return _BUILDERS[config["model"]](rates, cutoff)


# ---------------------------------------------------------------------------
# CSV output

def _config_header(config):
    return "# limitcycle-config: " + json.dumps(config, sort_keys=True)


def write_csv(path, columns, config):
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[n])) for n in names]
    length = max(a.size for a in arrays)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_config_header(config) + "\n")
        fh.write(",".join(names) + "\n")
        for i in range(length):
            row = []
            for arr in arrays:
                if i < arr.size:
                    v = arr[i]
                    row.append(str(v) if isinstance(v, (str, np.str_)) else f"{v:.12g}")
                else:
                    row.append("")
            fh.write(",".join(row) + "\n")
    return path


# ---------------------------------------------------------------------------
# task runners: each returns (summary_dict, payload_writer(outdir, config))


def _run_steady(config):
    rates = _rates_from(config)
    section = config.get("steady", {})
    temperatures = section.get("temperatures") or [rates.temperature]
    compare_banded = section.get("compare_banded", True)
    compare_analytic = section.get("compare_analytic",
                                   config["model"] == "rvdp")
    tables = []
    summary = {}
    for temp in temperatures:
        rs = rates.with_(temperature=float(temp))
        cutoff = _resolve_cutoff(config, models.effective_rates(rs)
                                 if config["model"] == "rvdp" else rs)
        model = _build_model(config, rs, cutoff)
        rho = liouville.steady_state(model)
        probs = np.diagonal(rho).real.copy()
        cols = {"n": np.arange(cutoff), "p_full": probs}
        if config["model"] == "rvdp":
            eff = models.effective_rates(rs)
            if compare_banded:
                cols["p_banded"] = liouville.rvdp_diag_steady(eff, cutoff)
            if compare_analytic:
                cols["p_analytic"] = analytic.steady_probs(eff, cutoff)
        summary[f"n_mean_T{temp:g}"] = float(probs @ np.arange(cutoff))
        summary[f"cutoff_T{temp:g}"] = cutoff
        tables.append((temp, cols))

    def writer(outdir, full_config):
        paths = []
        for temp, cols in tables:
            name = f"steady_T{temp:g}.csv" if len(tables) > 1 else "steady.csv"
            paths.append(write_csv(os.path.join(outdir, name), cols, full_config))
        return paths

    return summary, writer


def _initial_state(section, cutoff):
    init = section.get("initial", {"type": "coherent", "alpha_re": 1.0,
                                   "alpha_im": 0.0})
    kind = init.get("type", "coherent")
    if kind == "coherent":
        alpha = complex(init.get("alpha_re", 0.0), init.get("alpha_im", 0.0))
        return fock.density_from_state(fock.coherent_state(alpha, cutoff))
    if kind == "fock":
        return fock.density_from_state(fock.fock_state(init.get("n", 0), cutoff))
    if kind == "thermal":
        return np.asarray(fock.thermal_state(init.get("nbar", 0.0), cutoff))
    raise ConfigError(f"unknown initial state type {kind!r}")


def _run_evolve(config):
    rates = _rates_from(config)
    section = config.get("evolve", {})
    cutoff = _resolve_cutoff(config, rates if config["model"] != "rvdp"
                             else models.effective_rates(rates))
    model = _build_model(config, rates, cutoff)
    rho0 = _initial_state(section, cutoff)
    dt = section.get("dt", 0.01)
    if "times" in section:
        times = np.asarray(section["times"], dtype=float)
    else:
        times = np.linspace(0.0, section.get("t_final", 2 * math.pi),
                            section.get("snapshots", 51))
    traj = liouville.evolve(model, rho0, times, dt=dt)
    a = fock.annihilation(cutoff)
    ea = traj.expect(a)
    ex = traj.expect(fock.position(cutoff)).real
    ep = traj.expect(fock.momentum(cutoff)).real
    en = traj.expect(fock.number(cutoff)).real
    cols = {"t": times, "re_a": ea.real, "im_a": ea.imag, "x": ex, "p": ep,
            "n": en, "trace_drift": traj.trace_drift}
    summary = {"cutoff": cutoff, "final_n": float(en[-1]),
               "max_trace_drift": float(traj.trace_drift.max())}
    fields = []
    if section.get("wigner_snapshots", False):
        points = section.get("points", 201)
        for t, rho in zip(times, traj.states):
            grid = phasespace.PhaseGrid.for_state(rho, points=points)
            fields.append((t, phasespace.wigner(rho, grid)))

    def writer(outdir, full_config):
        paths = [write_csv(os.path.join(outdir, "expectations.csv"), cols,
                           full_config)]
        for t, field in fields:
            paths.append(_write_wigner(
                os.path.join(outdir, f"wigner_t{t:g}.csv"), field, full_config))
        return paths

    return summary, writer


def _write_wigner(path, field, config):
    xg, pg = np.meshgrid(field.grid.x, field.grid.p, indexing="ij")
    cols = {"x": xg.ravel(), "p": pg.ravel(), "w": field.values.ravel()}
    return write_csv(path, cols, config)


def _run_wigner(config):
    rates = _rates_from(config)
    section = config.get("wigner", {})
    cutoff = _resolve_cutoff(config, rates if config["model"] != "rvdp"
                             else models.effective_rates(rates))
    model = _build_model(config, rates, cutoff)
    rho = liouville.steady_state(model)
    points = section.get("points", 201)
    extent = section.get("extent")
    if extent:
        grid = phasespace.PhaseGrid.symmetric(extent, points)
    else:
        grid = phasespace.PhaseGrid.for_state(rho, points=points)
    field = phasespace.wigner(rho, grid)
    radii, profile = phasespace.radial_profile(field)
    summary = {"cutoff": cutoff, "norm": field.norm(),
               "n_mean": float(np.diagonal(rho).real @ np.arange(cutoff)),
               "angular_variation": phasespace.angular_variation(field),
               "grid_points": int(grid.x.size),
               "grid_extent": float(grid.x.max()),
               "grid_dx": float(grid.dx)}
    try:
        summary["peak_radius"] = phasespace.peak_radius(field)
    except LimitCycleError:
        summary["peak_radius"] = float("nan")
    if config["model"] == "rvdp":
        try:
            summary["two_state_amplitude"] = analytic.limit_amplitude(
                analytic.ratio_R(rates))
        except LimitCycleError:
            pass

    def writer(outdir, full_config):
        return [
            _write_wigner(os.path.join(outdir, "wigner.csv"), field, full_config),
            write_csv(os.path.join(outdir, "radial.csv"),
                      {"r": radii, "w_mean": profile}, full_config),
        ]

    return summary, writer


def _run_analytic(config):
    if config["model"] != "rvdp":
        raise ConfigError("the analytic solution exists for the rvdp model only")
    rates = _rates_from(config)
    eff = models.effective_rates(rates)
    section = config.get("analytic", {})
    n_max = section.get("n_max") or _resolve_cutoff(config, eff)
    probs = analytic.steady_probs(eff, n_max)
    cols = {"n": np.arange(n_max), "p_analytic": probs}
    if section.get("compare_banded", True):
        cols["p_banded"] = liouville.rvdp_diag_steady(eff, n_max)
    summary = {"n_max": n_max,
               "n_mean": float(probs @ np.arange(n_max)),
               "ratio_R": analytic.ratio_R(rates) if eff.K1 > 0 else float("nan")}
    if eff.K1 > 0:
        summary["two_state_amplitude"] = analytic.limit_amplitude(summary["ratio_R"])

    def writer(outdir, full_config):
        return [write_csv(os.path.join(outdir, "analytic.csv"), cols, full_config)]

    return summary, writer


def _run_ensemble(config):
    section = config.get("ensemble", {})
    params = classical.ClassicalParams(**config.get("classical", {}))
    n_members = section.get("n_members", 10_000)
    if n_members > 1_000_000:
        raise ResourceLimitError("ensembles above 1e6 members are not supported")
    seed = config.get("seed", 0)
    center = section.get("center", [params.a_c() / 2, params.a_c() / 2]
                         if params.epsilon > 0 and params.gamma2 > 0 else [1.0, 0.0])
    sigma = section.get("sigma", 1.0 / math.sqrt(2.0))
    times = section.get("times", [0.0, 20 * math.pi])
    dt = section.get("dt", 1e-3)
    cloud = classical.gaussian_cloud(tuple(center), sigma, n_members, seed=seed)
    states = classical.ensemble_evolve(cloud, params, times, seed=seed + 1, dt=dt)
    rows = {"t": [s.time for s in states],
            "median_radius": [classical.median_radius(s) for s in states],
            "circular_variance": [classical.circular_variance(s) for s in states],
            "mean_x": [float(s.x.mean()) for s in states],
            "mean_v": [float(s.v.mean()) for s in states]}
    summary = {"n_members": n_members,
               "final_median_radius": rows["median_radius"][-1],
               "final_circular_variance": rows["circular_variance"][-1]}
    store = section.get("store_members", True)

    def writer(outdir, full_config):
        paths = [write_csv(os.path.join(outdir, "ensemble_summary.csv"), rows,
                           full_config)]
        if store:
            t_col, id_col, x_col, v_col = [], [], [], []
            for s in states:
                t_col.append(np.full(s.size, s.time))
                id_col.append(np.arange(s.size))
                x_col.append(s.x)
                v_col.append(s.v)
            paths.append(write_csv(
                os.path.join(outdir, "ensemble_members.csv"),
                {"t": np.concatenate(t_col), "member_id": np.concatenate(id_col),
                 "x": np.concatenate(x_col), "v": np.concatenate(v_col)},
                full_config))
        return paths

    return summary, writer


def _run_correlate(config):
    rates = _rates_from(config)
    section = config.get("correlate", {})
    which = section.get("which", "xx")
    if which not in ("xx", "x2x2", "a2a2"):
        raise ConfigError("correlate.which must be xx, x2x2, or a2a2")
    cutoff = _resolve_cutoff(config, rates if config["model"] != "rvdp"
                             else models.effective_rates(rates))
    model = _build_model(config, rates, cutoff)
    rho = liouville.steady_state(model)
    t_final = section.get("t_final", 200.0)
    sample_dt = section.get("sample_dt", 0.05)
    dt = section.get("dt", 0.01)
    times = np.arange(0.0, t_final + sample_dt / 2, sample_dt)
    n = cutoff
    x = fock.position(n)
    ops = {"xx": (x, x), "x2x2": (x @ x, x @ x),
           "a2a2": (fock.creation(n) @ fock.creation(n),
                    fock.annihilation(n) @ fock.annihilation(n))}
    a_op, b_op = ops[which]
    series = correlations.two_time_corr(model, a_op, b_op, times, dt=dt,
                                        rho_ss=rho, labels=(which, which))
    spec = correlations.spectrum(series, window=section.get("window", "hann"))
    summary = {"cutoff": cutoff, "c0": float(series.values[0].real),
               "plateau": float(abs(series.values[-1]))}
    try:
        summary["decay_rate"] = correlations.decay_rate(series)
    except LimitCycleError:
        summary["decay_rate"] = float("nan")

    def writer(outdir, full_config):
        return [
            write_csv(os.path.join(outdir, f"corr_{which}.csv"),
                      {"t": series.times, "re": series.values.real,
                       "im": series.values.imag}, full_config),
            write_csv(os.path.join(outdir, f"spectrum_{which}.csv"),
                      {"omega": spec.freqs, "s": spec.values}, full_config),
        ]

    return summary, writer


_RUNNERS = {"steady": _run_steady, "evolve": _run_evolve,
            "wigner": _run_wigner, "analytic": _run_analytic,
            "classical-ensemble": _run_ensemble, "correlate": _run_correlate}


# ---------------------------------------------------------------------------
# sweep


def _sweep_points(section):
    product = section.get("product", {})
    zipped = section.get("zip", {})
    zip_len = None
    for key, values in zipped.items():
        if not isinstance(values, list):
            raise ConfigError(f"sweep.zip.{key} must be a list")
        if zip_len is None:
            zip_len = len(values)
        elif len(values) != zip_len:
            raise ConfigError("sweep.zip lists must share one length")
    prod_keys = list(product)
    for key in prod_keys:
        if not isinstance(product[key], list):
            raise ConfigError(f"sweep.product.{key} must be a list")
    points = []
    zip_range = range(zip_len) if zip_len else [None]

    def rec(i, assignment):
        if i == len(prod_keys):
            for zi in zip_range:
                point = dict(assignment)
                if zi is not None:
                    for key, values in zipped.items():
                        point[key] = values[zi]
                points.append(point)
            return
        for value in product[prod_keys[i]]:
            rec(i + 1, {**assignment, prod_keys[i]: value})

    rec(0, {})
    if not points:
        raise ConfigError("sweep grid is empty")
    return points


def _run_sweep_point(args):
    index, inner, point = args
    config = copy.deepcopy(inner)
    for key, value in point.items():
        set_by_path(config, key, value)
    try:
        validate_config(config)
        summary, _ = _RUNNERS[config["task"]](config)
        summary["status"] = "ok"
    except LimitCycleError as exc:
        summary = {"status": f"error:{type(exc).__name__}"}
    except Exception as exc:  # noqa: BLE001 - recorded per row, sweep continues
        summary = {"status": f"error:{type(exc).__name__}"}
    return index, point, summary


def _run_sweep(config, jobs):
    section = config["sweep"]
    inner = section["inner"]
    points = _sweep_points(section)
    tasks = [(i, inner, p) for i, p in enumerate(points)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_sweep_point, tasks))
    else:
        results = [_run_sweep_point(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    keys = list(points[0])
    summary_keys = []
    for _, _, summary in results:
        for k in summary:
            if k not in summary_keys:
                summary_keys.append(k)
    cols = {k.replace(".", "_"): [] for k in keys}
    for k in summary_keys:
        cols[k] = []
    for _, point, summary in results:
        for k in keys:
            cols[k.replace(".", "_")].append(point[k])
        for k in summary_keys:
            cols[k].append(summary.get(k, float("nan")))
    n_err = sum(1 for _, _, s in results if s.get("status") != "ok")
    top = {"points": len(results), "errors": n_err}

    def writer(outdir, full_config):
        return [write_csv(os.path.join(outdir, "sweep.csv"), cols, full_config)]

    return top, writer


# ---------------------------------------------------------------------------
# presets and entry point


def preset_names():
    root = resources.files("limitcycle").joinpath("presets")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset(name):
    path = resources.files("limitcycle").joinpath("presets", name + ".json")
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}")


def run(config, out_dir, jobs=1):
    """Execute a validated config; write payloads + manifest into out_dir."""
    validate_config(config)
    started = time.time()
    if config["task"] == "sweep":
        summary, writer = _run_sweep(config, jobs)
    else:
        summary, writer = _RUNNERS[config["task"]](config)
    os.makedirs(out_dir, exist_ok=True)
    paths = writer(out_dir, config)
    manifest = {
        "version": __version__,
        "config": config,
        "seed": config.get("seed"),
        "started_unix": started,
        "finished_unix": time.time(),
        "outputs": [os.path.basename(p) for p in paths],
        "summary": summary,
        "errors": [],
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    return manifest


def build_parser():
    parser = argparse.ArgumentParser(
        prog="limitcycle",
        description="Quantum and classical limit-cycle simulations")
    parser.add_argument("task", choices=TASKS + ("presets",))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--preset", help="named built-in config")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config entry (dotted path, JSON value)")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--jobs", type=int,
                        default=int(os.environ.get("LIMITCYCLE_JOBS", "1")),
                        help="parallel workers for sweeps "
                             "(default $LIMITCYCLE_JOBS or 1)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.task == "presets":
        for name in preset_names():
            print(name)
        return 0
    try:
        if args.config and args.preset:
            raise ConfigError("give either --config or --preset, not both")
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        elif args.preset:
            config = load_preset(args.preset)
        else:
            raise ConfigError("a --config file or --preset name is required")
        config["task"] = args.task if config.get("task") in (None, args.task) \
            else config["task"]
        if config["task"] != args.task:
            raise ConfigError(
                f"config is for task {config['task']!r}, invoked as {args.task!r}")
        for override in args.set:
            if "=" not in override:
                raise ConfigError(f"--set needs KEY=VALUE, got {override!r}")
            key, _, value = override.partition("=")
            set_by_path(config, key, parse_set_value(value))
        if args.seed is not None:
            config["seed"] = args.seed
        manifest = run(config, args.out, jobs=max(1, args.jobs))
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"error (validation): {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InvalidParameterError, UnsupportedRegimeError) as exc:
        print(f"error (validation): {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (MemoryError, ResourceLimitError) as exc:
        print(f"error (resource): {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PrecisionFailureError, IntegrationFailureError,
            DegenerateSteadyStateError, LimitCycleError) as exc:
        print(f"error (numerical): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(json.dumps(manifest["summary"], indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
