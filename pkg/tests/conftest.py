"""Shared builders for randomized states and density matrices."""

import numpy as np

from zenolattice import Basis, DensityMatrix, StateVector


def make_random_state(n_sites: int, rng: np.random.Generator) -> StateVector:
    amp = rng.standard_normal(n_sites) + 1j * rng.standard_normal(n_sites)
    amp /= np.linalg.norm(amp)
    return StateVector(amp, Basis.POSITION)


def make_random_density(n_sites: int, rng: np.random.Generator, rank: int = 4) -> DensityMatrix:
    """Random mixture of `rank` pure states: Hermitian, PSD, trace one."""
    weights = rng.random(rank)
    weights /= weights.sum()
    rho = np.zeros((n_sites, n_sites), dtype=np.complex128)
    for weight in weights:
        vec = rng.standard_normal(n_sites) + 1j * rng.standard_normal(n_sites)
        vec /= np.linalg.norm(vec)
        rho += weight * np.outer(vec, vec.conj())
    return DensityMatrix(rho, Basis.POSITION)
