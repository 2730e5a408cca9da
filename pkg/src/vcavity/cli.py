"""Command-line interface.

Subcommands: ``populations``, ``dressed``, ``rates``, ``spectrum``,
``absorption``, ``validate``, ``manifest``.  Configuration is a flat
``key=value`` text file (``--config``) plus repeatable ``--set key=value``
overrides; all frequencies are in units of gamma, relative to the drive.

Exit codes: 0 success, 1 validation/manifest check failure, 2 configuration
error, 3 solver failure (more than 1% of sweep points, or an aborted
spectrum solve).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dressed import (
    dressed_populations_exact,
    dressed_populations_rate_eq,
    secular_rates,
    transition_rates,
)
from .errors import ConfigError, VCavityError
from .manifests import manifest_ids, run_manifest
from .model import SystemParams
from .output import write_csv, write_svg_polyline
from .spectra import (
    absorption_spectrum,
    default_frequency_grid,
    fluorescence_qrt,
    fluorescence_secular,
)
from .steady import steady_state_for
from .validate import report_lines, run_suite

__all__ = ["main", "parse_config", "RunConfig"]

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_CONFIG = 2
_EXIT_SOLVER = 3

_PARAM_KEYS = ("gamma", "g", "kappa", "omega21", "rabi", "delta")
_VARIANTS = ("corrected", "paper-exact")
_SWEEP_VARS = ("delta", "rabi", "omega21")


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    variable: str = "delta"

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    sweep: GridSpec | None
    spectrum: GridSpec | None
    beta_variant: str
    gamma5_variant: str
    out: str


def _parse_kv_file(path: str) -> dict:
    pairs = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
                key, value = line.split("=", 1)
                pairs[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return pairs


def _grid_from(pairs: dict, prefix: str, allow_variable: bool) -> GridSpec | None:
    keys = [k for k in pairs if k.startswith(prefix + ".")]
    if not keys:
        return None
    spec = {}
    for k in keys:
        field = k.split(".", 1)[1]
        if field not in ("start", "stop", "count", "variable"):
            raise ConfigError(f"unknown configuration key {k!r}")
        spec[field] = pairs[k]
    missing = [f for f in ("start", "stop", "count") if f not in spec]
    if missing:
        raise ConfigError(f"{prefix} grid missing {', '.join(prefix + '.' + m for m in missing)}")
    try:
        start = float(spec["start"])
        stop = float(spec["stop"])
        count = int(spec["count"])
    except ValueError as exc:
        raise ConfigError(f"bad {prefix} grid value: {exc}") from exc
    variable = spec.get("variable", "delta")
    if not allow_variable and "variable" in spec:
        raise ConfigError(f"{prefix}.variable is not a recognised key")
    if variable not in _SWEEP_VARS:
        raise ConfigError(f"{prefix}.variable must be one of {', '.join(_SWEEP_VARS)}")
    if not (2 <= count <= 10**6):
        raise ConfigError(f"{prefix}.count must lie in [2, 1e6], got {count}")
    if not start < stop:
        raise ConfigError(f"{prefix} grid needs start < stop, got [{start:g}, {stop:g}]")
    return GridSpec(start=start, stop=stop, count=count, variable=variable)


def parse_config(path: str | None, sets, out_override=None,
                 beta_override=None) -> RunConfig:
    """Assemble a RunConfig from an optional file plus --set overrides."""
    pairs = _parse_kv_file(path) if path else {}
    for item in sets or ():
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        pairs[key.strip()] = value.strip()

    known_scalar = set(_PARAM_KEYS) | {"beta_variant", "gamma5_variant", "out"}
    for key in pairs:
        base = key.split(".", 1)[0]
        if key not in known_scalar and base not in ("sweep", "spectrum"):
            raise ConfigError(f"unknown configuration key {key!r}")

    kwargs = {}
    for key in _PARAM_KEYS:
        if key in pairs:
            try:
                kwargs[key] = float(pairs[key])
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {pairs[key]!r}") from exc
    try:
        params = SystemParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    beta = beta_override or pairs.get("beta_variant", "corrected")
    gamma5 = pairs.get("gamma5_variant", "corrected")
    for label, value in (("beta_variant", beta), ("gamma5_variant", gamma5)):
        if value not in _VARIANTS:
            raise ConfigError(f"{label} must be one of {', '.join(_VARIANTS)}")

    return RunConfig(
        params=params,
        sweep=_grid_from(pairs, "sweep", allow_variable=True),
        spectrum=_grid_from(pairs, "spectrum", allow_variable=False),
        beta_variant=beta,
        gamma5_variant=gamma5,
        out=out_override or pairs.get("out", "."),
    )


def _out_path(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


def _sweep_points(cfg: RunConfig):
    """(variable, values, params list) for the configured sweep.

    Without a sweep block the run is a single point at the configured
    parameters, reported under the swept-variable column ``delta``.
    """
    if cfg.sweep is None:
        return "delta", np.array([cfg.params.delta]), [cfg.params]
    values = cfg.sweep.values()
    var = cfg.sweep.variable
    return var, values, [replace(cfg.params, **{var: float(v)}) for v in values]


def _solve_many(points, solve, threads: int):
    """Apply ``solve`` per point, recording failures as None entries."""
    results = [None] * len(points)

    def attempt(i):
        try:
            results[i] = solve(points[i])
        except VCavityError:
            results[i] = None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(attempt, range(len(points))))
    else:
        for i in range(len(points)):
            attempt(i)
    failures = sum(r is None for r in results)
    return results, failures


def _too_many_failures(failures: int, total: int) -> bool:
    return failures > 0.01 * total


def cmd_populations(cfg: RunConfig, threads: int, svg: bool) -> int:
    var, values, points = _sweep_points(cfg)
    results, failures = _solve_many(
        points, lambda p: steady_state_for(p, variant=cfg.beta_variant), threads
    )
    nan = float("nan")
    rows = []
    for v, ss in zip(values, results):
        if ss is None:
            rows.append((float(v),) + (nan,) * 10)
            continue
        r = ss.rho
        rows.append((float(v), r[0, 0].real, r[1, 1].real, r[2, 2].real,
                     r[1, 0].real, r[1, 0].imag, r[2, 0].real, r[2, 0].imag,
                     r[2, 1].real, r[2, 1].imag, ss.residual))
    header = [var, "rho00", "rho11", "rho22", "re_rho10", "im_rho10",
              "re_rho20", "im_rho20", "re_rho21", "im_rho21", "residual"]
    cols = [np.array([row[i] for row in rows]) for i in range(len(header))]
    path = _out_path(cfg, "populations.csv")
    write_csv(path, header, cols)
    if svg:
        write_svg_polyline(path[:-4] + ".svg", cols[0], cols[1],
                           title="ground population", x_label=var, y_label="rho00")
    print(path)
    return _EXIT_SOLVER if _too_many_failures(failures, len(points)) else _EXIT_OK


def cmd_dressed(cfg: RunConfig, threads: int, svg: bool) -> int:
    var, values, points = _sweep_points(cfg)

    def solve(p):
        ss = steady_state_for(p, variant=cfg.beta_variant)
        exact = dressed_populations_exact(ss)
        rates = transition_rates(p)
        rate = dressed_populations_rate_eq(rates)
        return exact, rate, rates

    results, failures = _solve_many(points, solve, threads)
    nan = float("nan")
    rows = []
    for v, res in zip(values, results):
        if res is None:
            rows.append((float(v),) + (nan,) * 12)
            continue
        exact, rate, rates = res
        rows.append((float(v), exact.p_aa, exact.p_bb, exact.p_cc,
                     rate.p_aa, rate.p_bb, rate.p_cc,
                     rates.R_ab, rates.R_ba, rates.R_ac,
                     rates.R_ca, rates.R_bc, rates.R_cb))
    header = [var, "p_aa", "p_bb", "p_cc", "p_aa_rate", "p_bb_rate", "p_cc_rate",
              "R_ab", "R_ba", "R_ac", "R_ca", "R_bc", "R_cb"]
    cols = [np.array([row[i] for row in rows]) for i in range(len(header))]
    path = _out_path(cfg, "dressed.csv")
    write_csv(path, header, cols)
    if svg:
        write_svg_polyline(path[:-4] + ".svg", cols[0], cols[2],
                           title="dressed population b", x_label=var, y_label="p_bb")
    print(path)
    return _EXIT_SOLVER if _too_many_failures(failures, len(points)) else _EXIT_OK


def cmd_rates(cfg: RunConfig, threads: int, svg: bool) -> int:
    var, values, points = _sweep_points(cfg)
    rows = []
    for v, p in zip(values, points):
        tr = transition_rates(p)
        sr = secular_rates(p, variant=cfg.gamma5_variant)
        rows.append((float(v), tr.R_ab, tr.R_ba, tr.R_ac, tr.R_ca, tr.R_bc, tr.R_cb,
                     sr.Gamma_1a, sr.Gamma_1b, sr.Gamma_2a, sr.Gamma_2b,
                     sr.Gamma_3a, sr.Gamma_3b, sr.Gamma_4, sr.Gamma_5,
                     sr.Omega_3, sr.Omega_4, sr.Omega_5))
    header = [var, "R_ab", "R_ba", "R_ac", "R_ca", "R_bc", "R_cb",
              "Gamma_1a", "Gamma_1b", "Gamma_2a", "Gamma_2b",
              "Gamma_3a", "Gamma_3b", "Gamma_4", "Gamma_5",
              "Omega_3", "Omega_4", "Omega_5"]
    cols = [np.array([row[i] for row in rows]) for i in range(len(header))]
    path = _out_path(cfg, "rates.csv")
    write_csv(path, header, cols)
    if svg:
        write_svg_polyline(path[:-4] + ".svg", cols[0], cols[3],
                           title="downward outer transition rate", x_label=var,
                           y_label="R_ac")
    print(path)
    return _EXIT_OK


def _spectrum_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.spectrum is not None:
        return cfg.spectrum.values()
    return default_frequency_grid(cfg.params)


def cmd_spectrum(cfg: RunConfig, kind: str, threads: int, svg: bool) -> int:
    grid = _spectrum_grid(cfg)
    p = cfg.params
    try:
        if kind == "fluorescence":
            series = fluorescence_qrt(p, grid, variant=cfg.beta_variant)
            header = ["freq", "value"]
            cols = [series.freqs, series.values]
            stem = "spectrum-fluorescence"
        elif kind == "fluorescence-secular":
            comp = fluorescence_secular(p, grid, variant=cfg.gamma5_variant)
            header = ["freq", "central", "inner_low", "inner_high",
                      "outer_low", "outer_high", "total"]
            cols = [comp.freqs, comp.central, comp.inner_low, comp.inner_high,
                    comp.outer_low, comp.outer_high, comp.total]
            stem = "spectrum-fluorescence-secular"
        else:
            series = absorption_spectrum(p, grid, variant=cfg.beta_variant)
            header = ["freq", "value"]
            cols = [series.freqs, series.values]
            stem = "absorption"
    except VCavityError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return _EXIT_SOLVER
    path = _out_path(cfg, stem + ".csv")
    write_csv(path, header, cols)
    if svg:
        y = cols[-1] if kind == "fluorescence-secular" else cols[1]
        write_svg_polyline(path[:-4] + ".svg", cols[0], y, title=stem,
                           x_label="freq", y_label=header[-1])
    print(path)
    return _EXIT_OK


def cmd_validate(level: str, beta_variant: str) -> int:
    try:
        results = run_suite(level=level, beta_variant=beta_variant)
    except VCavityError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return _EXIT_SOLVER
    for line in report_lines(results):
        print(line)
    return _EXIT_OK if all(r.passed for r in results) else _EXIT_CHECK_FAILED


def cmd_manifest(fig_id: str, cfg: RunConfig, threads: int, svg: bool) -> int:
    ids = manifest_ids() if fig_id == "all" else [fig_id]
    unknown = [f for f in ids if f not in manifest_ids()]
    if unknown:
        print(f"unknown manifest id {unknown[0]!r}; known: "
              f"{', '.join(manifest_ids())}", file=sys.stderr)
        return _EXIT_CONFIG
    any_failed = False
    for fid in ids:
        try:
            run = run_manifest(fid, variant=cfg.beta_variant, threads=threads)
        except VCavityError as exc:
            print(f"{fid}: solver failure: {exc}", file=sys.stderr)
            return _EXIT_SOLVER
        path = _out_path(cfg, f"{fid}.csv")
        run.write(path)
        if svg:
            run.write_svg(path[:-4] + ".svg")
        for chk in run.checks:
            status = "PASS" if chk.passed else "FAIL"
            print(f"{fid} {chk.name}: measured={chk.measured:.6g} "
                  f"bound={chk.bound:.6g} {status}")
        for note in run.manifest.notes:
            print(f"{fid} note: {note}")
        print(path)
        any_failed = any_failed or not run.all_passed
    return _EXIT_CHECK_FAILED if any_failed else _EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="flat key=value configuration file")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        help="override a configuration key (repeatable)")
    common.add_argument("--out", metavar="DIR", default=None,
                        help="output directory (default: config 'out' or '.')")
    common.add_argument("--beta-variant", choices=_VARIANTS, default=None,
                        help="dyad-coefficient table variant for the filtered "
                             "lowering operator")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker threads for sweeps")
    common.add_argument("--svg", action="store_true",
                        help="also write a quick-look SVG next to the CSV")

    parser = argparse.ArgumentParser(
        prog="vcavity",
        description="Cavity-modified fluorescence of a driven V-type atom "
                    "in the bad-cavity limit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("populations", parents=[common],
                   help="steady-state bare populations over a sweep")
    sub.add_parser("dressed", parents=[common],
                   help="dressed-state populations (exact and rate-equation)")
    sub.add_parser("rates", parents=[common],
                   help="dressed transition and secular decay rates")
    spect = sub.add_parser("spectrum", parents=[common],
                           help="emission or absorption spectrum")
    spect.add_argument("--kind", choices=("fluorescence", "fluorescence-secular",
                                          "absorption"),
                       default="fluorescence")
    sub.add_parser("absorption", parents=[common],
                   help="weak-probe absorption spectrum")
    val = sub.add_parser("validate", parents=[common],
                         help="run the oracle suite")
    val.add_argument("--level", choices=("fast", "full"), default="fast")
    man = sub.add_parser("manifest", parents=[common],
                         help="reproduce a figure frame and run its checks")
    man.add_argument("fig_id", metavar="FIG-ID",
                     help="figure frame id (fig2a..fig10f) or 'all'")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, args.set, out_override=args.out,
                           beta_override=args.beta_variant)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    if args.threads < 1:
        print("configuration error: --threads must be >= 1", file=sys.stderr)
        return _EXIT_CONFIG

    if args.command == "populations":
        return cmd_populations(cfg, args.threads, args.svg)
    if args.command == "dressed":
        return cmd_dressed(cfg, args.threads, args.svg)
    if args.command == "rates":
        return cmd_rates(cfg, args.threads, args.svg)
    if args.command == "spectrum":
        return cmd_spectrum(cfg, args.kind, args.threads, args.svg)
    if args.command == "absorption":
        return cmd_spectrum(cfg, "absorption", args.threads, args.svg)
    if args.command == "validate":
        return cmd_validate(args.level, cfg.beta_variant)
    return cmd_manifest(args.fig_id, cfg, args.threads, args.svg)


if __name__ == "__main__":
    sys.exit(main())
