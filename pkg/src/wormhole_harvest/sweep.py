"""Grid sweeps of concurrence over (xi_x, epsilon_b), outputs, and regimes.

A sweep fixes the qubit distance in wavelength units and the coupling K,
then evaluates the extracted concurrence on a light-cone-parameter vs
throat-ratio grid.  Points are pure functions of the configuration, so a
sweep is deterministic, restartable (per-point cache keyed by config hash)
and trivially parallel.

Internal unit system: c = 1, Omega = 2 pi, so lengths are in qubit
wavelengths and times in wavelength crossings.
"""

from __future__ import annotations

import json
import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .config import ConfigError, SweepConfig
from .field_model import build_mode_set, doubled, sized_mode_set
from .geometry import WormholeGeometry
from .kinematics import QubitPairConfig, light_travel_time
from .oracle import (
    build_hamiltonian,
    build_space,
    concurrence_wootters,
    evolve,
    reduce_to_qubits,
    write_density_matrix,
)
from .perturbation import (
    amplitudes,
    concurrence_perturbative,
    interaction_for_pair,
)

OMEGA = 2.0 * math.pi   # qubit frequency in wavelength units (c = 1)

CSV_HEADER = "xi_x,epsilon_b,concurrence,engine,valid,converged"

# Fraction of non-converged points above which a classification is refused.
INCONCLUSIVE_FRACTION = 0.2
# Columns whose peaks differ by less than this fraction count as equal.
INSENSITIVE_RTOL = 0.25
# A column counts as suppressed below this fraction of the other's peak.
SUPPRESSION_FRACTION = 0.1


@dataclass(frozen=True)
class PointRecord:
    index: int
    xi_x: float
    epsilon_b: float
    concurrence: float
    engine: str
    valid: bool
    converged: bool
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    records: tuple[PointRecord, ...]
    metadata: dict

    @property
    def failed(self) -> bool:
        return any(r.error is not None for r in self.records)


@dataclass(frozen=True)
class RegimeLabel:
    rho_x_over_lambda: float
    label: str                 # insensitive | detrimental | enabling | inconclusive
    flat_peak: float
    curved_peak: float
    non_converged_fraction: float


def grid_values(config: SweepConfig) -> tuple[np.ndarray, np.ndarray]:
    """(xi values, epsilon_b values); point index = i_eb * len(xi) + i_xi."""
    xi = np.linspace(config.xi_min, config.xi_max, config.xi_steps)
    eb = np.linspace(config.eb_min, config.eb_max, config.eb_steps)
    return xi, eb


class _PointEvaluator:
    """Shared immutable context (mode sets, oracle space) for one sweep."""

    def __init__(self, config: SweepConfig):
        self.config = config
        self.xi, self.eb = grid_values(config)
        self.x_b = 0.5 * config.rho_x_over_lambda
        rho_l_max = config.rho_x_over_lambda * math.sqrt(1.0 + 2.0 * config.eb_max)
        t_max = config.xi_max * rho_l_max   # t_AB = rho_l at c = 1
        if config.engine == "perturbative":
            base = sized_mode_set(
                1.0, OMEGA, t_max, rho_l_max,
                box_factor=config.box_factor,
                cutoff_factor=config.cutoff_factor,
            )
            self.modes = (base, doubled(base))
            self.space = None
        else:
            base = build_mode_set(config.box_length_oracle, config.n_modes_oracle, 1.0)
            self.modes = (base, doubled(base))
            self.space = build_space(base, config.n_max)

    def point(self, index: int) -> list[PointRecord]:
        cfgs = self.config
        i_eb, i_xi = divmod(index, len(self.xi))
        xi_x = float(self.xi[i_xi])
        eb = float(self.eb[i_eb])
        geom = WormholeGeometry(b0=eb * self.x_b, c_flat=1.0)
        t = xi_x * light_travel_time(geom, self.x_b)
        records = []
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # validity is recorded, not printed
                pair = QubitPairConfig(
                    x_B=self.x_b, omega=OMEGA, coupling=cfgs.coupling, t=t
                )
            valid = pair.perturbatively_valid(cfgs.validity_bound)
            spec = interaction_for_pair(geom, pair) if t > 0.0 else None
            if cfgs.engine in ("perturbative", "both"):
                records.append(self._perturbative_record(index, xi_x, eb, spec, valid))
            if cfgs.engine in ("oracle", "both"):
                records.append(self._oracle_record(index, xi_x, eb, spec, t, valid))
        except Exception as exc:  # recorded, not fatal: the sweep continues
            records.append(
                PointRecord(
                    index=index, xi_x=xi_x, epsilon_b=eb, concurrence=float("nan"),
                    engine=cfgs.engine, valid=False, converged=False, error=str(exc),
                )
            )
        return records

    def _perturbative_record(self, index, xi_x, eb, spec, valid) -> PointRecord:
        if spec is None:
            return PointRecord(index, xi_x, eb, 0.0, "perturbative", valid, True)
        coarse = concurrence_perturbative(amplitudes(spec, self.modes[0]))
        fine = concurrence_perturbative(amplitudes(spec, self.modes[1]))
        tol = self.config.convergence_rtol
        converged = abs(coarse - fine) <= max(
            tol * max(coarse, fine), tol * self.config.coupling
        )
        value = fine
        if value > 1.0:   # perturbative estimate left the physical range
            value, valid = 1.0, False
        return PointRecord(index, xi_x, eb, value, "perturbative", valid, converged)

    def _oracle_record(self, index, xi_x, eb, spec, t, valid) -> PointRecord:
        if spec is None:
            return PointRecord(index, xi_x, eb, 0.0, "oracle", valid, True)
        h = build_hamiltonian(self.space, spec)
        state = evolve(self.space, h, t)
        rho = reduce_to_qubits(self.space, state)
        if self.config.dump_states:
            directory = os.path.join(self.config.out_dir, "states")
            os.makedirs(directory, exist_ok=True)
            write_density_matrix(
                os.path.join(directory, f"point_{index:05d}.txt"), rho
            )
        return PointRecord(
            index, xi_x, eb, concurrence_wootters(rho), "oracle", valid, True
        )


_WORKER_EVALUATOR: _PointEvaluator | None = None


def _worker_init(config_dict: dict) -> None:
    global _WORKER_EVALUATOR
    _WORKER_EVALUATOR = _PointEvaluator(SweepConfig(**config_dict))


def _worker_point(index: int) -> list[dict]:
    assert _WORKER_EVALUATOR is not None
    return [asdict(r) for r in _WORKER_EVALUATOR.point(index)]


def _cache_dir(config: SweepConfig) -> str:
    return os.path.join(config.out_dir, "cache", config.content_hash())


def _cache_path(config: SweepConfig, index: int) -> str:
    return os.path.join(_cache_dir(config), f"point_{index:05d}.json")


def run_sweep(config: SweepConfig, jobs: int = 1) -> SweepResult:
    """Evaluate every grid point, reusing cached points from earlier runs.

    Per-point failures are recorded in the result rather than raised; only
    configuration problems abort.  Results are merged by grid index, so the
    outcome is independent of worker count and completion order.
    """
    if jobs < 1:
        raise ConfigError("jobs must be >= 1")
    started = time.monotonic()
    xi, eb = grid_values(config)
    n_points = len(xi) * len(eb)
    os.makedirs(_cache_dir(config), exist_ok=True)

    records_by_index: dict[int, list[PointRecord]] = {}
    pending: list[int] = []
    for index in range(n_points):
        path = _cache_path(config, index)
        if os.path.exists(path):
            with open(path, "r", encoding="ascii") as fh:
                records_by_index[index] = [PointRecord(**d) for d in json.load(fh)]
        else:
            pending.append(index)
    cache_hits = n_points - len(pending)

    if pending:
        if jobs == 1:
            evaluator = _PointEvaluator(config)
            computed = {i: evaluator.point(i) for i in pending}
        else:
            computed = {}
            with ProcessPoolExecutor(
                max_workers=jobs,
                initializer=_worker_init,
                initargs=(config.as_dict(),),
            ) as pool:
                for index, dicts in zip(pending, pool.map(_worker_point, pending)):
                    computed[index] = [PointRecord(**d) for d in dicts]
        for index, recs in computed.items():
            with open(_cache_path(config, index), "w", encoding="ascii") as fh:
                json.dump([asdict(r) for r in recs], fh)
            records_by_index[index] = recs

    records = tuple(
        rec
        for index in range(n_points)
        for rec in sorted(records_by_index[index], key=lambda r: r.engine)
    )
    import scipy

    metadata = {
        "config_hash": config.content_hash(),
        "package_version": __version__,
        "numpy_version": np.__version__,
        "scipy_version": scipy.__version__,
        "n_points": n_points,
        "cache_hits": cache_hits,
        "n_failed": sum(1 for r in records if r.error is not None),
        "seed": config.seed,
        "timing_seconds": time.monotonic() - started,
    }
    return SweepResult(config=config, records=records, metadata=metadata)


def _csv_bool(flag: bool) -> str:
    return "true" if flag else "false"


def emit_outputs(
    result: SweepResult, formats: tuple[str, ...] = ("csv", "json", "svg")
) -> list[str]:
    """Write sweep artifacts into the configured output directory.

    csv: one `%.12e` row per record under the fixed header (byte-stable
    across reruns).  json: records plus config and provenance metadata.
    svg: one static linear-scale heatmap per engine.
    """
    out_dir = result.config.out_dir
    os.makedirs(out_dir, exist_ok=True)
    written = []
    try:
        if "csv" in formats:
            path = os.path.join(out_dir, "sweep.csv")
            with open(path, "w", encoding="ascii", newline="\n") as fh:
                fh.write(CSV_HEADER + "\n")
                for r in result.records:
                    fh.write(
                        "%.12e,%.12e,%.12e,%s,%s,%s\n"
                        % (
                            r.xi_x, r.epsilon_b, r.concurrence,
                            r.engine, _csv_bool(r.valid), _csv_bool(r.converged),
                        )
                    )
            written.append(path)
        if "json" in formats:
            path = os.path.join(out_dir, "sweep.json")
            payload = {
                "config": result.config.as_dict(),
                "metadata": result.metadata,
                "records": [asdict(r) for r in result.records],
            }
            with open(path, "w", encoding="ascii") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
                fh.write("\n")
            written.append(path)
        if "svg" in formats:
            written.extend(_emit_heatmaps(result))
    except OSError as exc:
        raise OSError(f"writing sweep outputs under {out_dir!r}: {exc}") from exc
    return written


def _emit_heatmaps(result: SweepResult) -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xi, eb = grid_values(result.config)
    written = []
    engines = sorted({r.engine for r in result.records})
    for engine in engines:
        grid = np.full((len(eb), len(xi)), np.nan)
        for r in result.records:
            if r.engine == engine:
                i_eb, i_xi = divmod(r.index, len(xi))
                grid[i_eb, i_xi] = r.concurrence
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        top = np.nanmax(grid)
        mesh = ax.pcolormesh(
            xi, eb, grid, shading="nearest", vmin=0.0,
            vmax=top if top > 0 else 1e-12, cmap="viridis", rasterized=False,
        )
        fig.colorbar(mesh, ax=ax, label="concurrence")
        ax.set_xlabel(r"light-cone parameter $\xi_x$")
        ax.set_ylabel(r"throat ratio $\varepsilon_b$")
        ax.set_title(
            f"{engine}: rho_x = {result.config.rho_x_over_lambda:g} wavelengths, "
            f"K = {result.config.coupling:g}"
        )
        fig.tight_layout()
        name = "heatmap.svg" if len(engines) == 1 else f"heatmap_{engine}.svg"
        path = os.path.join(result.config.out_dir, name)
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written


def _column_peak(result: SweepResult, eb_value: float) -> tuple[float, int, int]:
    """Largest converged concurrence in one epsilon_b column."""
    peak, n_col, n_bad = 0.0, 0, 0
    for r in result.records:
        if r.epsilon_b == eb_value and r.engine != "oracle":
            n_col += 1
            if not r.converged or r.error is not None:
                n_bad += 1
            elif not math.isnan(r.concurrence):
                peak = max(peak, r.concurrence)
    return peak, n_col, n_bad


def classify_regimes(results: list[SweepResult]) -> list[RegimeLabel]:
    """Label each distance by comparing the flat and strongest-throat columns.

    Thresholds (fractions of the larger peak) are module constants:
    columns within INSENSITIVE_RTOL of each other, or both below the zero
    floor, mean the wormhole changed nothing; a column suppressed below
    SUPPRESSION_FRACTION of a positive partner is detrimental or enabling
    depending on direction.  Sweeps with too many non-converged points are
    inconclusive, as are sweeps whose flat column is missing.
    """
    labels = []
    for result in results:
        cfg = result.config
        floor = 1e-3 * cfg.coupling   # concurrence below this counts as zero
        flat_peak, n_flat, bad_flat = _column_peak(result, 0.0)
        curved_peak, n_curved, bad_curved = _column_peak(result, cfg.eb_max)
        total = len(result.records)
        n_bad = sum(1 for r in result.records if not r.converged or r.error)
        frac_bad = n_bad / total if total else 1.0
        if n_flat == 0 or n_curved == 0 or frac_bad > INCONCLUSIVE_FRACTION:
            label = "inconclusive"
        elif flat_peak <= floor and curved_peak <= floor:
            label = "insensitive"
        elif flat_peak > floor and curved_peak <= max(floor, SUPPRESSION_FRACTION * flat_peak):
            label = "detrimental"
        elif curved_peak > floor and flat_peak <= max(floor, SUPPRESSION_FRACTION * curved_peak):
            label = "enabling"
        elif abs(curved_peak - flat_peak) <= INSENSITIVE_RTOL * max(curved_peak, flat_peak):
            label = "insensitive"
        else:
            label = "inconclusive"
        labels.append(
            RegimeLabel(
                rho_x_over_lambda=cfg.rho_x_over_lambda,
                label=label,
                flat_peak=flat_peak,
                curved_peak=curved_peak,
                non_converged_fraction=frac_bad,
            )
        )
    return labels


def run_ladder(
    base: SweepConfig,
    distances: tuple[float, ...] = (0.05, 0.3, 1.0),
    jobs: int = 1,
    emit: bool = True,
) -> tuple[list[SweepResult], list[RegimeLabel]]:
    """Sweep a ladder of qubit distances and classify each rung."""
    results = []
    for d in distances:
        cfg = base.replace(
            rho_x_over_lambda=d,
            out_dir=os.path.join(base.out_dir, f"distance_{d:g}"),
        )
        result = run_sweep(cfg, jobs=jobs)
        if emit:
            emit_outputs(result)
        results.append(result)
    return results, classify_regimes(results)
