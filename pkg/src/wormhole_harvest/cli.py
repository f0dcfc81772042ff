"""Command-line entry points: sweeps, regime ladders, feasibility, flux tables.

Exit codes: 0 success, 2 configuration error, 3 when any grid point failed.
"""

from __future__ import annotations

import argparse
import math
import sys

from .config import ConfigError, SweepConfig, load_config
from .geometry import WormholeGeometry
from .squid_map import (
    DEFAULT_B0_MAX,
    DEFAULT_EPSILON_B_TARGET,
    ArraySpec,
    feasibility,
    write_flux_table,
)
from .sweep import classify_regimes, emit_outputs, run_ladder, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_POINT_FAILURES = 3


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"grid must be 'min,max,steps', got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    overrides: dict = {}
    if args.engine:
        overrides["engine"] = args.engine
    if args.out:
        overrides["out_dir"] = args.out
    if args.distance is not None:
        overrides["rho_x_over_lambda"] = args.distance
    if args.coupling is not None:
        overrides["coupling"] = args.coupling
    if args.grid_xi:
        overrides["xi_min"], overrides["xi_max"], overrides["xi_steps"] = _parse_grid(args.grid_xi)
    if args.grid_eb:
        overrides["eb_min"], overrides["eb_max"], overrides["eb_steps"] = _parse_grid(args.grid_eb)
    if args.dump_states:
        overrides["dump_states"] = True
    if args.config:
        return load_config(args.config, overrides)
    return SweepConfig(**overrides)


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument("--engine", choices=("perturbative", "oracle", "both"))
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--distance", type=float, help="rho_x in qubit wavelengths")
    parser.add_argument("--coupling", type=float, help="dimensionless coupling K")
    parser.add_argument("--grid-xi", help="xi_x grid as 'min,max,steps'")
    parser.add_argument("--grid-eb", help="epsilon_b grid as 'min,max,steps'")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument(
        "--dump-states", action="store_true",
        help="write reduced density matrices per oracle point",
    )


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _sweep_config(args)
    result = run_sweep(config, jobs=args.jobs)
    paths = emit_outputs(result)
    for path in paths:
        print(path)
    if result.failed:
        print(f"{result.metadata['n_failed']} point(s) failed", file=sys.stderr)
        return EXIT_POINT_FAILURES
    return EXIT_OK


def _cmd_regimes(args: argparse.Namespace) -> int:
    config = _sweep_config(args)
    distances = tuple(float(d) for d in args.distances.split(","))
    results, labels = run_ladder(config, distances=distances, jobs=args.jobs)
    for label in labels:
        print(
            f"rho_x/lambda = {label.rho_x_over_lambda:g}: {label.label} "
            f"(flat peak {label.flat_peak:.3e}, "
            f"throat peak {label.curved_peak:.3e}, "
            f"non-converged {label.non_converged_fraction:.1%})"
        )
    if any(r.failed for r in results):
        return EXIT_POINT_FAILURES
    return EXIT_OK


def _cmd_feasibility(args: argparse.Namespace) -> int:
    omega = 2.0 * math.pi * args.freq_ghz * 1e9
    geom = WormholeGeometry(b0=args.b0, c_flat=args.speed)
    report = feasibility(
        geom, omega, args.rho_x, args.temperature_mk * 1e-3,
        epsilon_b_target=args.epsilon_b_target, b0_max=args.b0_max,
    )
    print(f"qubit wavelength      {report.wavelength:.6e} m")
    print(f"epsilon_b             {report.epsilon_b:.6e}")
    print(f"throat radius         {report.b0:.6e} m")
    print(f"speed for rho_x = wavelength  {report.speed_required:.6e} m/s")
    print(f"thermal photons at {args.temperature_mk:g} mK  {report.thermal_occupation:.6e}")
    # the low-noise claim is usually quoted at these two temperatures
    for t_mk in (5.0, 30.0):
        if t_mk == args.temperature_mk:
            continue
        occ = feasibility(geom, omega, args.rho_x, t_mk * 1e-3).thermal_occupation
        print(f"thermal photons at {t_mk:g} mK  {occ:.6e}")
    print(f"flat spacetime        {report.flat}")
    print(f"feasible              {report.feasible}")
    return EXIT_OK


def _cmd_flux_table(args: argparse.Namespace) -> int:
    geom = WormholeGeometry(b0=args.b0, c_flat=1.0)   # profile needs b0 only
    array = ArraySpec(cell_pitch=args.pitch, n_cells=args.cells)
    write_flux_table(args.out, geom, array)
    print(args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wormhole-harvest",
        description="Vacuum entanglement extraction on an analogue-wormhole line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="concurrence over a (xi_x, epsilon_b) grid")
    _add_sweep_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_reg = sub.add_parser("regimes", help="sweep a distance ladder and classify it")
    _add_sweep_flags(p_reg)
    p_reg.add_argument("--distances", default="0.05,0.3,1.0",
                       help="comma-separated rho_x/lambda ladder")
    p_reg.set_defaults(func=_cmd_regimes)

    p_feas = sub.add_parser("feasibility", help="experimental feasibility numbers")
    p_feas.add_argument("--b0", type=float, default=2.5e-4, help="throat radius [m]")
    p_feas.add_argument("--speed", type=float, default=1e6, help="line speed [m/s]")
    p_feas.add_argument("--freq-ghz", type=float, default=10.0, help="qubit frequency [GHz]")
    p_feas.add_argument("--rho-x", type=float, default=1e-4, help="qubit separation [m]")
    p_feas.add_argument("--temperature-mk", type=float, default=30.0)
    p_feas.add_argument("--epsilon-b-target", type=float, default=DEFAULT_EPSILON_B_TARGET)
    p_feas.add_argument("--b0-max", type=float, default=DEFAULT_B0_MAX)
    p_feas.set_defaults(func=_cmd_feasibility)

    p_flux = sub.add_parser("flux-table", help="per-cell SQUID bias table")
    p_flux.add_argument("--b0", type=float, required=True, help="throat radius [m]")
    p_flux.add_argument("--pitch", type=float, required=True, help="cell pitch [m]")
    p_flux.add_argument("--cells", type=int, required=True, help="number of cells")
    p_flux.add_argument("--out", default="flux_table.txt")
    p_flux.set_defaults(func=_cmd_flux_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
