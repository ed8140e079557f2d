"""Command-line front end.

Subcommands map one-to-one onto the library's capabilities:

  coeffs      expansion coefficients of a coherent state      -> CSV
  snapshot    |chi|^2 at chosen fractions of the revival time -> CSV
  carpet      space-time density raster                       -> CSV or PGM
  autocorr    autocorrelation series                          -> CSV
  fractional  sub-packet amplitudes at t = (r/s) t_rev        -> stdout/CSV
  xpect       mean position of a general-well packet          -> CSV
  classical   classical bounce trajectory                     -> CSV

Settings resolve in three layers: built-in defaults, then a --config file of
key=value lines, then explicit command-line flags.  Exit status is 0 on
success, 2 for argument or domain errors, 3 for numerical failures
(non-convergent series, inverse-trig domain breaches).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import io
from .coherent import (ConvergenceError, Family, aocs_coeffs, distribution_stats,
                       docs_coeffs, pt_docs_coeffs)
from .dynamics import (TimeSeries, TrajectoryDomainError, autocorrelation, carpet,
                       classical_params, classical_trajectory, evolve,
                       expectation_x_arcsin_quadrature, expectation_x_closed,
                       expectation_x_quadrature, fractional_decomposition,
                       mean_energy, revival_time)
from .eigensystem import PtParams, SptParams, gauss_grid, uniform_grid

__all__ = ["RunConfig", "parse_config", "run", "main"]


@dataclass
class RunConfig:
    """Fully resolved settings of one invocation."""

    subcommand: str
    family: str | None = None
    alpha: float = 2.0
    rho: float = 10.0
    k: float | None = None
    mass: float = 1.0
    beta: float = 0.8
    tol: float = 1e-8
    times: str = "0,0.125,0.25,0.5"
    nx: int = 512
    nt: int = 512
    t_max: float = 1.0
    r: int | None = None
    s: int | None = None
    ec: float | None = None
    a: float | None = None
    method: str = "closed"
    kind: str = "abs2"
    format: str = "csv"
    output: str | None = None


_SUBCOMMANDS = ("coeffs", "snapshot", "carpet", "autocorr", "fractional",
                "xpect", "classical")

# which settings each subcommand accepts (beyond --config/--output)
_ALLOWED = {
    "coeffs": {"family", "alpha", "rho", "k", "mass", "beta", "tol"},
    "snapshot": {"family", "alpha", "rho", "k", "mass", "beta", "tol",
                 "times", "nx"},
    "carpet": {"family", "alpha", "rho", "k", "mass", "beta", "tol",
               "nx", "nt", "t_max", "format"},
    "autocorr": {"family", "alpha", "rho", "k", "mass", "beta", "tol",
                 "nt", "t_max", "kind"},
    "fractional": {"r", "s"},
    "xpect": {"alpha", "rho", "k", "mass", "beta", "tol", "nt", "t_max",
              "method", "nx"},
    "classical": {"alpha", "rho", "k", "mass", "beta", "tol", "ec", "a",
                  "nt", "t_max"},
}

_SUBCOMMAND_DEFAULTS = {
    "xpect": {"rho": 5.0, "k": 5.0, "beta": 0.1},
    "classical": {"rho": 5.0, "k": 5.0, "beta": 0.1},
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptrevival",
        description="Coherent states of trigonometric Poschl-Teller wells "
                    "and their revival dynamics.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value settings file")
        p.add_argument("--output", help="destination path")
        allowed = _ALLOWED[name]
        if "family" in allowed:
            p.add_argument("--family",
                           choices=["spt-docs", "spt-aocs", "pt-docs"])
        for opt, typ, help_ in [
            ("alpha", float, "inverse length scale of the well"),
            ("rho", float, "wall strength rho > 1"),
            ("k", float, "second wall strength k > 1 (general well)"),
            ("mass", float, "particle mass"),
            ("beta", float, "coherence parameter (displacement beta or "
                            "annihilation eigenvalue)"),
            ("tol", float, "series truncation tolerance"),
            ("times", str, "comma-separated times in revival units"),
            ("nx", int, "position samples"),
            ("nt", int, "time samples"),
            ("t_max", float, "last sample time in revival units"),
            ("r", int, "fractional-revival numerator"),
            ("s", int, "fractional-revival denominator"),
            ("ec", float, "classical energy (default: packet mean energy)"),
            ("a", float, "orbit length scale (default 1/(2 alpha))"),
        ]:
            if opt in allowed:
                p.add_argument("--" + opt.replace("_", "-"), type=typ,
                               default=None, help=help_)
        if "method" in allowed:
            p.add_argument("--method", choices=["closed", "quadrature",
                                                "arcsin-quadrature"])
        if "kind" in allowed:
            p.add_argument("--kind", choices=["abs2", "complex"])
        if "format" in allowed:
            p.add_argument("--format", choices=["csv", "pgm"])
        return p

    add("coeffs", "write the expansion coefficients of a coherent state")
    add("snapshot", "write density snapshots at chosen revival fractions")
    add("carpet", "write a space-time density raster")
    add("autocorr", "write the autocorrelation series")
    add("fractional", "print sub-packet amplitudes at t = (r/s) t_rev")
    add("xpect", "write the mean-position series of a general-well packet")
    add("classical", "write the classical bounce trajectory")
    return parser


_INT_KEYS = {"nx", "nt", "r", "s"}
_FLOAT_KEYS = {"alpha", "rho", "k", "mass", "beta", "tol", "t_max", "ec", "a"}


def _read_config_file(path, subcommand):
    settings = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}")
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "subcommand":
            if value != subcommand:
                raise ValueError(
                    f"{path}:{ln}: config is for subcommand {value!r}, "
                    f"not {subcommand!r}")
            continue
        if key == "output":
            settings[key] = value
            continue
        if key not in _ALLOWED[subcommand]:
            raise ValueError(f"{path}:{ln}: unknown setting {key!r} "
                             f"for subcommand {subcommand!r}")
        if key in _INT_KEYS:
            settings[key] = int(value)
        elif key in _FLOAT_KEYS:
            settings[key] = float(value)
        else:
            settings[key] = value
    return settings


def parse_config(argv) -> RunConfig:
    """Resolve argv (plus any --config file) into a RunConfig.

    Precedence: explicit flags > config file > defaults.
    """
    ns = _build_parser().parse_args(argv)
    sub = ns.subcommand
    cfg = RunConfig(subcommand=sub)
    for key, value in _SUBCOMMAND_DEFAULTS.get(sub, {}).items():
        setattr(cfg, key, value)
    if ns.config:
        for key, value in _read_config_file(ns.config, sub).items():
            setattr(cfg, key, value)
    for key, value in vars(ns).items():
        if key in ("subcommand", "config") or value is None:
            continue
        setattr(cfg, key, value)
    return cfg


def _well_params(cfg: RunConfig, general: bool):
    if general:
        if cfg.k is None:
            raise ValueError("the general well needs --k")
        return PtParams(alpha=cfg.alpha, rho=cfg.rho, k=cfg.k, mass=cfg.mass)
    if cfg.k is not None:
        raise ValueError("--k is only meaningful for the general well")
    return SptParams(alpha=cfg.alpha, rho=cfg.rho, mass=cfg.mass)


def _coefficients(cfg: RunConfig):
    family = Family(cfg.family or "spt-docs")
    if family is Family.PT_DOCS:
        params = _well_params(cfg, general=True)
        return pt_docs_coeffs(cfg.beta, params, tol=cfg.tol)
    params = _well_params(cfg, general=False)
    if family is Family.SPT_AOCS:
        return aocs_coeffs(cfg.beta, params, tol=cfg.tol)
    return docs_coeffs(cfg.beta, params, tol=cfg.tol)


def _parse_times(text: str) -> np.ndarray:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"cannot parse times {text!r}")
    if not values:
        raise ValueError("need at least one time")
    return np.asarray(values)


def _time_axis(cfg: RunConfig) -> np.ndarray:
    if cfg.nt < 2:
        raise ValueError("--nt must be at least 2")
    if not cfg.t_max > 0.0:
        raise ValueError("--t-max must be positive")
    return np.linspace(0.0, cfg.t_max, cfg.nt)


def _packet_summary(cs) -> str:
    stats = distribution_stats(cs)
    return (f"family={cs.family.value} param={cs.coherence_param:g} "
            f"nbar={stats.nbar:.4f} N={cs.nmax}")


def _cmd_coeffs(cfg: RunConfig):
    cs = _coefficients(cfg)
    out = cfg.output or "coeffs.csv"
    io.write_coefficients_csv(cs, out)
    return f"{_packet_summary(cs)} wrote {out}"


def _cmd_snapshot(cfg: RunConfig):
    cs = _coefficients(cfg)
    times = _parse_times(cfg.times)
    if cfg.nx < 2:
        raise ValueError("--nx must be at least 2")
    grid = uniform_grid(cs.params, cfg.nx)
    t_rev = revival_time(cs.params)
    densities = [evolve(cs, grid, t * t_rev).density() for t in times]
    out = cfg.output or "snapshot.csv"
    io.write_snapshot_csv(grid.points, densities, times, out)
    return f"{_packet_summary(cs)} wrote {out}"


def _cmd_carpet(cfg: RunConfig):
    cs = _coefficients(cfg)
    if cfg.nx < 2:
        raise ValueError("--nx must be at least 2")
    grid = uniform_grid(cs.params, cfg.nx)
    raster = carpet(cs, grid, _time_axis(cfg))
    out = cfg.output or f"carpet.{cfg.format}"
    if cfg.format == "pgm":
        io.write_carpet_pgm(raster, out)
    else:
        io.write_carpet_csv(raster, out)
    return f"{_packet_summary(cs)} wrote {out}"


def _cmd_autocorr(cfg: RunConfig):
    cs = _coefficients(cfg)
    series = autocorrelation(cs, _time_axis(cfg))
    if cfg.kind == "abs2":
        series = TimeSeries(times=series.times,
                            values=np.abs(series.values) ** 2)
    out = cfg.output or "autocorr.csv"
    io.write_timeseries_csv(series, out)
    return f"{_packet_summary(cs)} wrote {out}"


def _cmd_fractional(cfg: RunConfig):
    if cfg.r is None or cfg.s is None:
        raise ValueError("fractional needs --r and --s")
    fr = fractional_decomposition(cfg.r, cfg.s)
    lines = [f"r/s={fr.r}/{fr.s} l={fr.l}"]
    for p, amp in enumerate(fr.amplitudes):
        lines.append(f"a_{p} = {amp.real:+.12f} {amp.imag:+.12f}i  "
                     f"|a|^2 = {abs(amp) ** 2:.12f}")
    print("\n".join(lines))
    if cfg.output:
        ts = TimeSeries(times=np.arange(fr.l, dtype=float), values=fr.amplitudes)
        io.write_timeseries_csv(ts, cfg.output)
        return f"l={fr.l} wrote {cfg.output}"
    return f"l={fr.l}"


def _cmd_xpect(cfg: RunConfig):
    cfg.k = cfg.k if cfg.k is not None else cfg.rho
    params = _well_params(cfg, general=True)
    cs = pt_docs_coeffs(cfg.beta, params, tol=cfg.tol)
    tau = _time_axis(cfg)
    t_abs = tau * revival_time(params)
    if cfg.method == "closed":
        x = expectation_x_closed(cs, t_abs)
    else:
        grid = gauss_grid(params)
        fn = (expectation_x_quadrature if cfg.method == "quadrature"
              else expectation_x_arcsin_quadrature)
        x = fn(cs, grid, t_abs)
    out = cfg.output or "xpect.csv"
    io.write_timeseries_csv(TimeSeries(times=tau, values=np.asarray(x)), out)
    return f"{_packet_summary(cs)} method={cfg.method} wrote {out}"


def _cmd_classical(cfg: RunConfig):
    cfg.k = cfg.k if cfg.k is not None else cfg.rho
    params = _well_params(cfg, general=True)
    if cfg.ec is None:
        cs = pt_docs_coeffs(cfg.beta, params, tol=cfg.tol)
        e_c = mean_energy(cs)
        origin = f"ec={e_c:.6g} (mean energy, beta={cfg.beta:g})"
    else:
        e_c = cfg.ec
        origin = f"ec={e_c:.6g}"
    cp = classical_params(params, e_c, a=cfg.a)
    tau = _time_axis(cfg)
    x = classical_trajectory(cp, params, tau * revival_time(params))
    out = cfg.output or "classical.csv"
    io.write_timeseries_csv(TimeSeries(times=tau, values=x), out)
    period = 2.0 * np.pi * cp.a * np.sqrt(params.mass / (2.0 * e_c))
    return f"{origin} period={period:.6g} wrote {out}"


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "snapshot": _cmd_snapshot,
    "carpet": _cmd_carpet,
    "autocorr": _cmd_autocorr,
    "fractional": _cmd_fractional,
    "xpect": _cmd_xpect,
    "classical": _cmd_classical,
}


def run(cfg: RunConfig) -> int:
    """Execute one resolved invocation; returns the process exit status."""
    start = time.perf_counter()
    try:
        summary = _COMMANDS[cfg.subcommand](cfg)
    except (ValueError, TypeError, OSError) as exc:
        print(f"ptrevival {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, TrajectoryDomainError, ZeroDivisionError) as exc:
        print(f"ptrevival {cfg.subcommand}: numerical failure: {exc}",
              file=sys.stderr)
        return 3
    elapsed_ms = 1e3 * (time.perf_counter() - start)
    print(f"{cfg.subcommand}: {summary} ({elapsed_ms:.1f} ms)")
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except ValueError as exc:
        print(f"ptrevival: error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
