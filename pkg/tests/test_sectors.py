import math

import numpy as np
import pytest

from sbmlab.bath import BathSpec, DiscretizationSpec, DiscretizedBath, discretize, prefactor
from sbmlab.errors import SolverError
from sbmlab.fockspace import enumerate_basis, parity_phase
from sbmlab.sectors import (
    DENSE_CUTOFF,
    ModelParams,
    Sector,
    SectorMatrix,
    assemble_sector,
    ground_state,
    sector_gap,
)


def single_mode(q, omega=1.0):
    return DiscretizedBath.from_modes((omega,), (q * omega,))


def silent_bath(*omegas):
    return DiscretizedBath.from_modes(tuple(omegas), (0.0,) * len(omegas))


# ---------------------------------------------------------------- assembly


def test_assemble_zero_coupling_is_diagonal_with_parity_split():
    bath = silent_bath(1.0, 0.5)
    basis = enumerate_basis(2, 4)
    delta = 0.3
    even = assemble_sector(bath, ModelParams(delta), basis, Sector.EVEN)
    omega = np.array(bath.omega)
    for i, n in enumerate(basis):
        expected = float(np.array(n) @ omega) - (delta / 2) * parity_phase(n)
        assert even.entries[i, i] == pytest.approx(expected, rel=1e-15)
    off = even.entries - np.diag(np.diag(even.entries))
    assert np.all(off == 0.0)


def test_assemble_delta_zero_sectors_identical():
    bath = single_mode(0.4)
    basis = enumerate_basis(1, 6)
    even = assemble_sector(bath, ModelParams(0.0), basis, Sector.EVEN)
    odd = assemble_sector(bath, ModelParams(0.0), basis, Sector.ODD)
    assert np.array_equal(even.entries, odd.entries)
    q2 = bath.q[0] ** 2
    expected_diag = [n[0] * 1.0 - q2 for n in basis]
    assert np.allclose(np.diag(even.entries), expected_diag, rtol=1e-15)
    assert np.all(even.entries == np.diag(np.diag(even.entries)))


@pytest.mark.parametrize("sector,sign", [(Sector.EVEN, -1.0), (Sector.ODD, 1.0)])
def test_assemble_single_mode_vacuum_to_one_entry(sector, sign):
    q, delta = 0.3, 1.0
    bath = single_mode(q)
    basis = enumerate_basis(1, 6)
    matrix = assemble_sector(bath, ModelParams(delta), basis, sector)
    expected = sign * (delta / 2) * math.exp(-2 * q * q) * (2 * q)
    assert matrix.entries[0, 1] == pytest.approx(expected, rel=1e-14)
    assert np.array_equal(matrix.entries, matrix.entries.T)


def test_assemble_rejects_nonzero_epsilon():
    with pytest.raises(ValueError):
        assemble_sector(
            single_mode(0.3), ModelParams(0.1, epsilon=0.2), enumerate_basis(1, 4), Sector.EVEN
        )


def test_assemble_rejects_mode_mismatch():
    with pytest.raises(ValueError):
        assemble_sector(single_mode(0.3), ModelParams(0.1), enumerate_basis(2, 4), Sector.EVEN)


# ---------------------------------------------------------------- ground states


def test_ground_state_zero_coupling_even():
    bath = silent_bath(1.0, 0.5)
    basis = enumerate_basis(2, 5)
    result = ground_state(assemble_sector(bath, ModelParams(0.3), basis, Sector.EVEN))
    assert result.energy == pytest.approx(-0.15, abs=1e-14)
    vacuum = np.zeros(basis.dim)
    vacuum[0] = 1.0
    assert np.allclose(result.coefficients, vacuum, atol=1e-12)


def test_ground_state_zero_coupling_odd_small_delta():
    # vacuum stays lowest in the odd sector while delta < min omega
    bath = silent_bath(1.0, 0.5)
    basis = enumerate_basis(2, 5)
    result = ground_state(assemble_sector(bath, ModelParams(0.3), basis, Sector.ODD))
    assert result.energy == pytest.approx(0.15, abs=1e-14)
    assert result.coefficients[0] == pytest.approx(1.0, abs=1e-12)


def test_ground_state_zero_coupling_odd_large_delta_moves_off_vacuum():
    bath = silent_bath(1.0, 0.5)
    basis = enumerate_basis(2, 5)
    result = ground_state(assemble_sector(bath, ModelParams(1.2), basis, Sector.ODD))
    # one boson in the soft mode beats the vacuum: 0.5 - 0.6 < 0.6
    assert result.energy == pytest.approx(0.5 - 0.6, abs=1e-14)


def test_ground_state_dimension_one():
    bath = single_mode(0.7)
    basis = enumerate_basis(1, 0)
    result = ground_state(assemble_sector(bath, ModelParams(0.4), basis, Sector.EVEN))
    expected = -bath.q[0] ** 2 - 0.2 * math.exp(-2 * bath.q[0] ** 2)
    assert result.energy == pytest.approx(expected, rel=1e-14)
    assert result.coefficients[0] == 1.0


def test_ground_state_normalization_residual_and_sign():
    bath = DiscretizedBath.from_modes((1.0, 0.4), (0.5, 0.24))
    basis = enumerate_basis(2, 8)
    for sector in Sector:
        result = ground_state(assemble_sector(bath, ModelParams(0.7), basis, sector), tol=1e-10)
        assert abs(np.linalg.norm(result.coefficients) - 1.0) < 1e-12
        assert result.coefficients[0] >= 0.0
        matrix = assemble_sector(bath, ModelParams(0.7), basis, sector).entries
        explicit = np.linalg.norm(
            matrix @ result.coefficients - result.energy * result.coefficients
        )
        assert result.residual <= 1e-10
        assert explicit <= 1e-10


def test_lanczos_path_matches_dense():
    basis = enumerate_basis(2, 31)  # dim 528 > DENSE_CUTOFF
    assert basis.dim > DENSE_CUTOFF
    bath = DiscretizedBath.from_modes((1.0, 0.4), (0.35, 0.2))
    matrix = assemble_sector(bath, ModelParams(0.4), basis, Sector.EVEN)
    result = ground_state(matrix, tol=1e-10)
    reference = np.linalg.eigvalsh(matrix.entries)[0]
    assert result.iterations > 0
    assert result.energy == pytest.approx(reference, abs=1e-10)
    assert result.residual <= 1e-10


def test_lanczos_iteration_budget_enforced():
    basis = enumerate_basis(2, 31)
    bath = DiscretizedBath.from_modes((1.0, 0.4), (0.35, 0.2))
    matrix = assemble_sector(bath, ModelParams(0.4), basis, Sector.EVEN)
    with pytest.raises(SolverError, match="residual"):
        ground_state(matrix, tol=1e-13, max_iter=3)


def test_variational_monotonicity_in_nmax():
    bath = single_mode(0.6)
    params = ModelParams(0.7)
    for sector in Sector:
        energies = [
            ground_state(assemble_sector(bath, params, enumerate_basis(1, n), sector)).energy
            for n in range(2, 11)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))


def test_variational_monotonicity_two_modes():
    bath = DiscretizedBath.from_modes((1.0, 0.5), (0.45, 0.3))
    params = ModelParams(0.5)
    energies = [
        ground_state(
            assemble_sector(bath, params, enumerate_basis(2, n), Sector.EVEN)
        ).energy
        for n in range(1, 9)
    ]
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))


def test_delta_negation_swaps_sectors_exactly():
    bath = DiscretizedBath.from_modes((1.0, 0.3), (0.4, 0.15))
    basis = enumerate_basis(2, 6)
    even_neg = assemble_sector(bath, ModelParams(-0.6), basis, Sector.EVEN)
    odd_pos = assemble_sector(bath, ModelParams(0.6), basis, Sector.ODD)
    assert np.array_equal(even_neg.entries, odd_pos.entries)
    assert ground_state(even_neg).energy == ground_state(odd_pos).energy


# ---------------------------------------------------------------- sector gap


def test_gap_zero_coupling_is_delta():
    bath = silent_bath(1.0, 0.5)
    basis = enumerate_basis(2, 4)
    assert sector_gap(bath, ModelParams(0.3), basis) == pytest.approx(0.3, abs=1e-14)


def test_gap_negates_with_delta():
    bath = DiscretizedBath.from_modes((1.0, 0.4), (0.3, 0.2))
    basis = enumerate_basis(2, 6)
    forward = sector_gap(bath, ModelParams(0.45), basis)
    backward = sector_gap(bath, ModelParams(-0.45), basis)
    assert backward == pytest.approx(-forward, rel=1e-12)


def test_gap_requires_nonzero_delta():
    with pytest.raises(ValueError):
        sector_gap(single_mode(0.3), ModelParams(0.0), enumerate_basis(1, 4))


def test_gap_positive_and_shrinking_with_mode_count():
    # sub-ohmic bath: every added mode increases sum q**2 and squeezes the gap
    spec = BathSpec(s=0.1, alpha=0.05, omega_c=1.0, omega1=1e-4)
    params = ModelParams(0.1)
    gaps = []
    for N in range(5):
        bath = discretize(spec, DiscretizationSpec(Lambda=2.0, N=N))
        basis = enumerate_basis(bath.mode_count, 6)
        gaps.append(sector_gap(bath, params, basis))
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_gap_nondegenerate_random_suite():
    rng = np.random.default_rng(20260815)
    for _ in range(24):
        s = rng.choice([0.1, 0.5, 1.0, 2.0])
        alpha = rng.uniform(0.0, 0.5)
        delta = rng.uniform(0.05, 1.0)
        N = int(rng.integers(0, 3))
        n_max = int(rng.integers(2, 7))
        spec = BathSpec(s=float(s), alpha=float(alpha), omega_c=1.0, omega1=1e-4)
        bath = discretize(spec, DiscretizationSpec(Lambda=2.0, N=N))
        basis = enumerate_basis(bath.mode_count, n_max)
        even = ground_state(assemble_sector(bath, ModelParams(delta), basis, Sector.EVEN))
        odd = ground_state(assemble_sector(bath, ModelParams(delta), basis, Sector.ODD))
        gap = odd.energy - even.energy
        scale = max(abs(even.energy), abs(odd.energy))
        assert abs(gap) > 1e-13 * scale


def test_gap_tracks_prefactor_at_weak_tunneling():
    # to first order in delta the gap is delta * e^{-2 sum q^2} * <0|L|0>-ish;
    # at small delta the ratio gap/delta approaches the vacuum D element
    bath = DiscretizedBath.from_modes((1.0, 0.5), (0.3, 0.1))
    basis = enumerate_basis(2, 8)
    delta = 1e-6
    gap = sector_gap(bath, ModelParams(delta), basis, tol=1e-12)
    assert gap / delta == pytest.approx(prefactor(bath), rel=1e-4)
