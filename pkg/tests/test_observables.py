"""Scalar reductions and distributions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_random_density
from zenolattice import (
    Basis,
    BasisError,
    DensityMatrix,
    GaussianPacketSpec,
    build_gaussian_packet,
    build_position_eigenstate,
    circular_distance,
    circular_mean,
    circular_variance,
    density_from_pure,
    density_to_momentum,
    evolve_density,
    expected_momentum,
    make_regions,
    momentum_distribution,
    momentum_variance,
    negative_momentum_fraction,
    position_distribution,
    purity,
    region_mass,
    region_masses,
    signed_momentum_index,
    signed_momentum_values,
)


class TestDistributions:
    def test_position_delta(self):
        rho = density_from_pure(build_position_eigenstate(5, 32))
        dist = position_distribution(rho)
        assert dist[5] == 1.0 and dist.sum() == 1.0

    def test_position_maximally_mixed(self):
        rho = DensityMatrix(np.eye(32) / 32, Basis.POSITION)
        np.testing.assert_allclose(position_distribution(rho), 1 / 32)

    def test_position_requires_position_basis(self):
        rho = DensityMatrix(np.eye(32) / 32, Basis.MOMENTUM)
        with pytest.raises(BasisError):
            position_distribution(rho)

    def test_momentum_projector(self):
        entries = np.zeros((32, 32), dtype=complex)
        entries[7, 7] = 1.0
        dist = momentum_distribution(DensityMatrix(entries, Basis.MOMENTUM))
        assert dist[7] == 1.0

    def test_momentum_of_position_eigenstate_is_uniform(self):
        rho = density_from_pure(build_position_eigenstate(21, 256))
        np.testing.assert_allclose(momentum_distribution(rho), 1 / 256, atol=1e-14)

    def test_momentum_invariant_under_evolution(self):
        rho = density_to_momentum(make_random_density(32, np.random.default_rng(0)))
        before = momentum_distribution(rho)
        after = momentum_distribution(evolve_density(rho, 0.8))
        np.testing.assert_array_equal(before, after)


class TestSignedIndex:
    def test_positive_branch(self):
        assert signed_momentum_index(31, 256) == 31

    def test_negative_branch(self):
        assert signed_momentum_index(225, 256) == -31

    def test_boundary_is_positive(self):
        assert signed_momentum_index(128, 256) == 128

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            signed_momentum_index(256, 256)

    @given(st.sampled_from([8, 32, 256]), st.data())
    def test_vector_matches_scalar(self, n, data):
        k = data.draw(st.integers(min_value=0, max_value=n - 1))
        assert signed_momentum_values(n)[k] == signed_momentum_index(k, n)

    @given(st.sampled_from([8, 32, 256]))
    def test_signed_values_are_a_permutation_of_the_physical_range(self, n):
        signed = signed_momentum_values(n)
        assert set(signed.tolist()) == set(range(-(n // 2) + 1, n // 2 + 1))


class TestReductions:
    def test_momentum_projector_moments(self):
        entries = np.zeros((256, 256), dtype=complex)
        entries[31, 31] = 1.0
        rho = DensityMatrix(entries, Basis.MOMENTUM)
        assert expected_momentum(rho) == 31.0
        assert momentum_variance(rho) == 0.0

    def test_maximally_mixed_negative_fraction(self):
        rho = DensityMatrix(np.eye(256) / 256, Basis.POSITION)
        assert negative_momentum_fraction(rho) == pytest.approx(127 / 256, abs=1e-12)

    def test_expected_momentum_constant_under_free_evolution(self):
        rho = density_to_momentum(
            density_from_pure(build_gaussian_packet(GaussianPacketSpec(8, 8.0, 31), 256))
        )
        before = expected_momentum(rho)
        after = expected_momentum(evolve_density(rho, 0.4))
        assert abs(after - before) < 1e-12

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_purity_bounds(self, seed):
        rho = make_random_density(32, np.random.default_rng(seed))
        assert 1 / 32 - 1e-12 <= purity(rho) <= 1 + 1e-12

    def test_purity_of_maximally_mixed(self):
        rho = DensityMatrix(np.eye(64) / 64, Basis.POSITION)
        assert purity(rho) == pytest.approx(1 / 64, abs=1e-14)


class TestRegionMass:
    def test_masses_sum_to_one(self):
        rho = make_random_density(256, np.random.default_rng(1))
        part = make_regions(256, 6)
        masses = region_masses(position_distribution(rho), part)
        assert masses.size == 7
        assert masses.sum() == pytest.approx(1.0, abs=1e-12)

    def test_single_region_mass(self):
        rho = density_from_pure(build_gaussian_packet(GaussianPacketSpec(20, 2.0, 0), 256))
        part = make_regions(256, 6)
        assert region_mass(rho, part, 0) == pytest.approx(1.0, abs=1e-10)
        assert region_mass(rho, part, 3) == pytest.approx(0.0, abs=1e-10)

    def test_momentum_basis_input_is_transformed(self):
        rho = density_from_pure(build_gaussian_packet(GaussianPacketSpec(20, 2.0, 0), 256))
        part = make_regions(256, 6)
        assert region_mass(density_to_momentum(rho), part, 0) == pytest.approx(
            region_mass(rho, part, 0), abs=1e-12
        )

    def test_bad_region_id(self):
        rho = make_random_density(64, np.random.default_rng(2))
        with pytest.raises(ValueError):
            region_mass(rho, make_regions(64, 4), 4)


class TestCircularStatistics:
    def test_mean_of_narrow_packet(self):
        state = build_gaussian_packet(GaussianPacketSpec(100, 4.0, 0), 256)
        dist = np.abs(state.amplitudes) ** 2
        assert circular_mean(dist) == pytest.approx(100.0, abs=1e-9)

    def test_mean_respects_the_seam(self):
        state = build_gaussian_packet(GaussianPacketSpec(2, 4.0, 0), 256)
        dist = np.abs(state.amplitudes) ** 2
        assert circular_distance(circular_mean(dist), 2.0, 256) < 1e-9

    def test_variance_of_delta_is_zero(self):
        dist = np.zeros(64)
        dist[10] = 1.0
        assert circular_variance(dist) == pytest.approx(0.0, abs=1e-18)

    def test_variance_matches_plain_variance_away_from_seam(self):
        state = build_gaussian_packet(GaussianPacketSpec(128, 8.0, 0), 256)
        dist = np.abs(state.amplitudes) ** 2
        n = np.arange(256)
        plain = float(np.sum(dist * (n - np.sum(dist * n)) ** 2))
        assert circular_variance(dist) == pytest.approx(plain, rel=1e-9)

    def test_circular_distance(self):
        assert circular_distance(255.0, 1.0, 256) == 2.0
        assert circular_distance(1.0, 255.0, 256) == 2.0
        assert circular_distance(10.0, 10.0, 256) == 0.0
