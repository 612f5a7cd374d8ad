"""Distributions and scalar summaries recorded during runs."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .channels import RegionPartition
from .lattice import Basis, DensityMatrix, _require_basis, density_to_momentum, density_to_position

__all__ = [
    "ObservableRecord",
    "circular_distance",
    "circular_mean",
    "circular_variance",
    "expected_momentum",
    "momentum_distribution",
    "momentum_variance",
    "negative_momentum_fraction",
    "position_distribution",
    "purity",
    "region_mass",
    "region_masses",
    "signed_momentum_index",
    "signed_momentum_values",
]


@dataclass
class ObservableRecord:
    """One snapshot of everything the simulator reports at a record time."""

    time_natural: float
    time_display: float
    position_dist: np.ndarray
    momentum_dist: np.ndarray
    purity: float
    expected_momentum_signed: float
    momentum_variance: float
    region_masses: np.ndarray
    negative_momentum_fraction: float


def position_distribution(rho: DensityMatrix) -> np.ndarray:
    """Real parts of the diagonal of a position-basis density matrix."""
    _require_basis(rho, Basis.POSITION, "position_distribution")
    diag = np.diagonal(rho.entries)
    worst = float(np.max(np.abs(diag.imag)))
    if worst > 1e-12:
        raise ValueError(f"diagonal has imaginary parts up to {worst:.3e}")
    return diag.real.copy()


def momentum_distribution(rho: DensityMatrix) -> np.ndarray:
    """Diagonal of the momentum-basis form; position input is transformed."""
    if rho.basis is Basis.POSITION:
        rho = density_to_momentum(rho)
    return np.diagonal(rho.entries).real.copy()


def signed_momentum_index(k: int, n_sites: int) -> int:
    """Signed momentum of DFT index k: +k up to N/2, k - N beyond."""
    if not 0 <= k < n_sites:
        raise ValueError(f"momentum index {k} outside [0, {n_sites})")
    return k if k <= n_sites // 2 else k - n_sites


@functools.lru_cache(maxsize=None)
def signed_momentum_values(n_sites: int) -> np.ndarray:
    """Signed momentum for every DFT index; cached and read-only."""
    k = np.arange(n_sites)
    signed = np.where(k <= n_sites // 2, k, k - n_sites)
    signed.flags.writeable = False
    return signed


def expected_momentum(rho: DensityMatrix) -> float:
    dist = momentum_distribution(rho)
    return float(signed_momentum_values(dist.size) @ dist)


def momentum_variance(rho: DensityMatrix) -> float:
    dist = momentum_distribution(rho)
    signed = signed_momentum_values(dist.size)
    mean = float(signed @ dist)
    return float(((signed - mean) ** 2) @ dist)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); basis independent, between 1/N and 1."""
    return float(np.vdot(rho.entries, rho.entries).real)


def negative_momentum_fraction(rho: DensityMatrix) -> float:
    dist = momentum_distribution(rho)
    return float(dist[signed_momentum_values(dist.size) < 0].sum())


def region_masses(position_dist: np.ndarray, partition: RegionPartition) -> np.ndarray:
    """Probability mass inside each region of the partition."""
    if position_dist.size != partition.n_sites:
        raise ValueError("distribution length does not match the partition")
    return np.add.reduceat(position_dist, partition.boundaries)


def region_mass(rho: DensityMatrix, partition: RegionPartition, region_id: int) -> float:
    if not 0 <= region_id < partition.n_regions:
        raise ValueError(f"region id {region_id} outside [0, {partition.n_regions})")
    if rho.basis is Basis.MOMENTUM:
        rho = density_to_position(rho)
    start, end = partition.region_range(region_id)
    return float(np.sum(position_distribution(rho)[start:end]))


def circular_mean(position_dist: np.ndarray) -> float:
    """Mean site on the ring from the first trigonometric moment, in [0, N).

    Meaningless for distributions with no circular concentration (the first
    moment vanishes for the uniform distribution).
    """
    n = position_dist.size
    z = np.sum(position_dist * np.exp(2j * np.pi * np.arange(n) / n))
    return float((np.angle(z) * n / (2.0 * np.pi)) % n)


def circular_variance(position_dist: np.ndarray) -> float:
    """Mean squared minimal-image displacement from the circular mean."""
    n = position_dist.size
    mean = circular_mean(position_dist)
    disp = (np.arange(n) - mean + n / 2.0) % n - n / 2.0
    return float(np.sum(position_dist * disp**2))


def circular_distance(a: float, b: float, n_sites: int) -> float:
    """Minimal-image separation of two ring positions."""
    d = (a - b) % n_sites
    return float(min(d, n_sites - d))
