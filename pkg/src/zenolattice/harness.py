"""Batch runner: alternate exact evolution with measurement, record, emit CSV."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .channels import (
    DampingKernel,
    PointerSpec,
    RegionPartition,
    kernel_channel,
    make_regions,
    pointer_kernel,
    pvm_channel,
)
from .lattice import (
    DensityMatrix,
    LatticeConfig,
    density_to_momentum,
    density_to_position,
    evolve_density,
)
from .observables import (
    ObservableRecord,
    position_distribution,
    purity,
    region_masses,
    signed_momentum_values,
)
from .scenario import (
    CustomKernelSpec,
    MeasurementSpec,
    NoMeasurement,
    RegionPvmSpec,
    Scenario,
    ScenarioError,
)
from .states import GaussianPacketSpec, PositionEigenstateSpec, build_initial_state, density_from_pure

__all__ = [
    "ConvergenceReport",
    "build_channel",
    "emit_csv",
    "grid_doubling_check",
    "run_and_emit",
    "run_schedule",
]

Channel = Callable[[DensityMatrix], DensityMatrix]


def build_channel(
    measurement: MeasurementSpec, n_sites: int
) -> tuple[Channel | None, RegionPartition | None]:
    """Turn a measurement spec into a channel callable.

    Returns (channel, partition); channel is None for an unmeasured run and
    partition is None unless the measurement is a region PVM.
    """
    if isinstance(measurement, NoMeasurement):
        return None, None
    if isinstance(measurement, RegionPvmSpec):
        partition = make_regions(n_sites, measurement.m_regions)
        return (lambda rho: pvm_channel(rho, partition)), partition
    if isinstance(measurement, PointerSpec):
        kernel = pointer_kernel(measurement, n_sites)
        return (lambda rho: kernel_channel(rho, kernel)), None
    if isinstance(measurement, CustomKernelSpec):
        kernel = DampingKernel(np.asarray(measurement.values), measurement.distance_convention)
        return (lambda rho: kernel_channel(rho, kernel)), None
    raise TypeError(f"unknown measurement spec {type(measurement).__name__}")


def _advance(rho: DensityMatrix, lattice: LatticeConfig, display_dt: float) -> DensityMatrix:
    """One free-evolution leg: to momentum basis, phase, back to position."""
    if display_dt <= 0:
        return rho
    t = lattice.to_natural_time(display_dt)
    return density_to_position(evolve_density(density_to_momentum(rho), t))


def _snapshot(
    rho: DensityMatrix,
    lattice: LatticeConfig,
    display_time: float,
    partition: RegionPartition | None,
) -> ObservableRecord:
    pos = position_distribution(rho)
    mom = np.diagonal(density_to_momentum(rho).entries).real.copy()
    for name, dist in (("position", pos), ("momentum", mom)):
        total = float(dist.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"{name} distribution sums to {total!r} at t={display_time}")
        if float(dist.min()) < -1e-12:
            raise ValueError(f"{name} distribution has entry {dist.min():.3e} at t={display_time}")
    signed = signed_momentum_values(mom.size)
    mean = float(signed @ mom)
    variance = float(((signed - mean) ** 2) @ mom)
    negative = float(mom[signed < 0].sum())
    masses = region_masses(pos, partition) if partition is not None else np.empty(0)
    return ObservableRecord(
        time_natural=lattice.to_natural_time(display_time),
        time_display=float(display_time),
        position_dist=pos,
        momentum_dist=mom,
        purity=purity(rho),
        expected_momentum_signed=mean,
        momentum_variance=variance,
        region_masses=masses,
        negative_momentum_fraction=negative,
    )


def run_schedule(scenario: Scenario) -> list[ObservableRecord]:
    """Run one scenario and return a record per scheduled record time.

    Each measurement step is: transform to the momentum basis, evolve one
    interval, transform back, apply the channel. Measurements fall at
    interval, 2*interval, ... up to total_time; nothing is applied at time
    zero. Record times may fall anywhere (evolution is exact for arbitrary
    sub-interval durations) and recording is passive. When a record time
    coincides with a measurement time the measurement is applied first.
    """
    lattice = scenario.lattice
    rho = density_from_pure(build_initial_state(scenario.state, lattice.n_sites))
    rho.validate()
    channel, partition = build_channel(scenario.measurement, lattice.n_sites)
    schedule = scenario.schedule
    interval = schedule.measurement_interval if channel is not None else None
    snap = 1e-9 * (interval if interval is not None else 1.0)

    records = []
    now = 0.0
    applied = 0
    for target in schedule.record_times:
        if interval is not None:
            while True:
                due = (applied + 1) * interval
                if due > schedule.total_time + snap or due > target + snap:
                    break
                rho = _advance(rho, lattice, due - now)
                rho = channel(rho)
                now = due
                applied += 1
        if target - now > snap:
            rho = _advance(rho, lattice, target - now)
            now = target
        records.append(_snapshot(rho, lattice, target, partition))
    return records


@dataclass
class ConvergenceReport:
    """Coarse-versus-doubled-grid agreement at each record time."""

    n_sites: int
    record_times_display: tuple[float, ...]
    position_max_diff: tuple[float, ...]
    momentum_max_diff: tuple[float, ...]

    @property
    def worst_position_diff(self) -> float:
        return max(self.position_max_diff)

    @property
    def worst_momentum_diff(self) -> float:
        return max(self.momentum_max_diff)

    def at_time(self, display_time: float) -> tuple[float, float]:
        """(position diff, momentum diff) at one record time."""
        for t, p, m in zip(self.record_times_display, self.position_max_diff, self.momentum_max_diff):
            if t == display_time:
                return p, m
        raise ValueError(f"{display_time} is not a record time of this report")


def _double_scenario(scenario: Scenario) -> Scenario:
    state = scenario.state
    if isinstance(state, PositionEigenstateSpec):
        raise ScenarioError(
            "position eigenstate occupies every momentum; grid doubling cannot "
            "make the two runs comparable"
        )
    assert isinstance(state, GaussianPacketSpec)
    doubled_state = replace(state, center=state.center * 2, width=state.width * 2)
    measurement = scenario.measurement
    if isinstance(measurement, CustomKernelSpec):
        raise ScenarioError("custom kernels have a fixed length and cannot be rescaled")
    if isinstance(measurement, PointerSpec):
        measurement = replace(measurement, alpha=measurement.alpha / 2.0)
    lattice = replace(scenario.lattice, n_sites=scenario.lattice.n_sites * 2)
    return replace(scenario, lattice=lattice, state=doubled_state, measurement=measurement)


def grid_doubling_check(scenario: Scenario) -> ConvergenceReport:
    """Run the scenario and its doubled-grid counterpart and compare records.

    Doubling maps site n to 2n: the packet centre and width double, the
    momentum index stays, a pointer's width in sites doubles (alpha halves)
    and the region count is unchanged. The 2N-point position distribution is
    binned pairwise down to N points; momentum distributions are compared at
    the indices the grids share, |signed k| < N/2.
    """
    coarse = run_schedule(scenario)
    fine = run_schedule(_double_scenario(scenario))
    n = scenario.lattice.n_sites
    signed = signed_momentum_values(n)
    keep = np.abs(signed) < n // 2
    fine_index = signed[keep] % (2 * n)
    position_diffs = []
    momentum_diffs = []
    for rec_coarse, rec_fine in zip(coarse, fine):
        binned = rec_fine.position_dist.reshape(n, 2).sum(axis=1)
        position_diffs.append(float(np.max(np.abs(binned - rec_coarse.position_dist))))
        momentum_diffs.append(
            float(np.max(np.abs(rec_fine.momentum_dist[fine_index] - rec_coarse.momentum_dist[keep])))
        )
    return ConvergenceReport(
        n_sites=n,
        record_times_display=tuple(r.time_display for r in coarse),
        position_max_diff=tuple(position_diffs),
        momentum_max_diff=tuple(momentum_diffs),
    )


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def emit_csv(records: list[ObservableRecord], out_dir: str | Path) -> tuple[Path, Path, Path]:
    """Write positions.csv, momenta.csv and summary.csv under out_dir.

    Output is deterministic: rows ordered by record time then index, values
    formatted with 17 significant digits. Distribution entries that round-off
    pushed slightly negative are clamped to 0 here (and only here).
    """
    if not records:
        raise ValueError("no records to write")
    region_count = records[0].region_masses.size
    if any(r.region_masses.size != region_count for r in records):
        raise ValueError("records disagree on region count")

    out = Path(out_dir)
    positions_path = out / "positions.csv"
    momenta_path = out / "momenta.csv"
    summary_path = out / "summary.csv"
    try:
        out.mkdir(parents=True, exist_ok=True)

        with open(positions_path, "w") as handle:
            handle.write("time_display,n,p_x\n")
            for rec in records:
                t = _fmt(rec.time_display)
                for n, p in enumerate(rec.position_dist):
                    handle.write(f"{t},{n},{_fmt(max(p, 0.0))}\n")

        with open(momenta_path, "w") as handle:
            handle.write("time_display,k,signed_k,p_k\n")
            for rec in records:
                t = _fmt(rec.time_display)
                signed = signed_momentum_values(rec.momentum_dist.size)
                for k, p in enumerate(rec.momentum_dist):
                    handle.write(f"{t},{k},{signed[k]},{_fmt(max(p, 0.0))}\n")

        with open(summary_path, "w") as handle:
            head = "time_display,purity,expected_momentum,momentum_variance,negative_momentum_fraction"
            head += "".join(f",region_mass_{i}" for i in range(region_count))
            handle.write(head + "\n")
            for rec in records:
                row = [
                    _fmt(rec.time_display),
                    _fmt(rec.purity),
                    _fmt(rec.expected_momentum_signed),
                    _fmt(rec.momentum_variance),
                    _fmt(rec.negative_momentum_fraction),
                ]
                row.extend(_fmt(m) for m in rec.region_masses)
                handle.write(",".join(row) + "\n")
    except OSError as err:
        raise OSError(f"writing CSV output under {out}: {err}") from err
    return positions_path, momenta_path, summary_path


def run_and_emit(
    scenario: Scenario, out_dir: str | Path | None = None
) -> tuple[list[ObservableRecord], tuple[Path, Path, Path]]:
    """Convenience wrapper: run the schedule and write the CSV files."""
    records = run_schedule(scenario)
    paths = emit_csv(records, out_dir if out_dir is not None else scenario.output_dir)
    return records, paths
