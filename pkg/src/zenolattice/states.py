"""Initial states: Gaussian wavepackets and position eigenstates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import Basis, DensityMatrix, StateVector

__all__ = [
    "GaussianPacketSpec",
    "PositionEigenstateSpec",
    "build_gaussian_packet",
    "build_initial_state",
    "build_position_eigenstate",
    "density_from_pure",
]


@dataclass
class GaussianPacketSpec:
    """Gaussian envelope exp(-(n - center)^2 / width^2) carrying a plane-wave
    phase exp(2*pi*i*momentum_index*n/N).

    The displacement in the envelope uses the minimal image, so the packet
    respects the ring topology; momentum_index is signed and must lie in
    (-N/2, N/2].
    """

    center: int
    width: float
    momentum_index: int = 0

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValueError("width must be positive")


@dataclass
class PositionEigenstateSpec:
    """A single occupied site; site=None means the middle of the lattice."""

    site: int | None = None


def build_gaussian_packet(spec: GaussianPacketSpec, n_sites: int) -> StateVector:
    if not 0 <= spec.center < n_sites:
        raise ValueError(f"center {spec.center} outside [0, {n_sites})")
    half = n_sites // 2
    if not -half < spec.momentum_index <= half:
        raise ValueError(f"momentum_index {spec.momentum_index} outside ({-half}, {half}]")
    n = np.arange(n_sites)
    dist = np.abs(n - spec.center)
    dist = np.minimum(dist, n_sites - dist).astype(float)
    amplitudes = np.exp(-(dist**2) / spec.width**2) * np.exp(
        2j * np.pi * spec.momentum_index * n / n_sites
    )
    amplitudes /= np.linalg.norm(amplitudes)
    return StateVector(amplitudes, Basis.POSITION)


def build_position_eigenstate(site: int, n_sites: int) -> StateVector:
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} outside [0, {n_sites})")
    amplitudes = np.zeros(n_sites, dtype=np.complex128)
    amplitudes[site] = 1.0
    return StateVector(amplitudes, Basis.POSITION)


def build_initial_state(
    spec: GaussianPacketSpec | PositionEigenstateSpec, n_sites: int
) -> StateVector:
    """Build the state a parameter object describes; scenario files select
    the kinds by name."""
    if isinstance(spec, GaussianPacketSpec):
        return build_gaussian_packet(spec, n_sites)
    if isinstance(spec, PositionEigenstateSpec):
        site = n_sites // 2 if spec.site is None else spec.site
        return build_position_eigenstate(site, n_sites)
    raise TypeError(f"unknown state spec {type(spec).__name__}")


def density_from_pure(state: StateVector) -> DensityMatrix:
    """rho = |psi><psi|, keeping the basis tag of the input."""
    norm2 = float(np.sum(np.abs(state.amplitudes) ** 2))
    if abs(norm2 - 1.0) > 1e-12:
        raise ValueError(f"state is not normalized: |amplitudes|^2 = {norm2}")
    return DensityMatrix(np.outer(state.amplitudes, state.amplitudes.conj()), state.basis)
