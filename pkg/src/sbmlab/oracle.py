"""Dense full-space cross-checks in the spin (x) Fock product basis.

Everything here is brute force on purpose: the Hamiltonian

    H = (epsilon/2) sigma_z - (delta/2) sigma_x
        + sum_k omega_k a'_k a_k + sum_k lambda_k (a'_k + a_k) sigma_z

is assembled as a dense symmetric matrix over the undisplaced number
basis (spin-up block first) and diagonalized completely.  The parity
operator Pi = sigma_x (x) exp(i pi sum a'a) commutes with H exactly when
epsilon = 0, and the rotation U of the 2x2 block form

    U = (1/sqrt 2) [[I, P], [-P, I]],   P = diag boson parity

block-diagonalizes the truncated H exactly: the boson-number-parity
grading survives truncation, so the off-diagonal blocks of U H U' vanish
to rounding, not merely to truncation accuracy.

The displaced-basis sector matrices of :mod:`sbmlab.sectors` span a
different truncated subspace than the blocks above, so their spectra
agree with the dense ones only where the truncation has converged (the
low end); comparisons at the spectrum top are meaningless at any fixed
cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sbmlab.bath import DiscretizedBath
from sbmlab.errors import AccuracyError, CapacityError
from sbmlab.fockspace import BasisEnumeration, parity_phase
from sbmlab.sectors import GroundStateResult, ModelParams, Sector

DENSE_DIM_CAP = 2000

# ground_parity returns +1, -1, or this marker when |<Pi>| is not close to 1
MIXED = 0


@dataclass(frozen=True, eq=False)
class FullModel:
    params: ModelParams
    bath: DiscretizedBath
    enumeration: BasisEnumeration
    hamiltonian: np.ndarray

    @property
    def dim(self) -> int:
        """Fock-space dimension; the Hamiltonian is twice this size."""
        return self.enumeration.dim


def _boson_energy_diagonal(bath: DiscretizedBath, enumeration: BasisEnumeration) -> np.ndarray:
    return enumeration.occupation_array() @ np.asarray(bath.omega)


def _coupling_matrix(bath: DiscretizedBath, enumeration: BasisEnumeration) -> np.ndarray:
    """sum_k lambda_k (a'_k + a_k) truncated to the enumeration."""
    dim = enumeration.dim
    V = np.zeros((dim, dim))
    for i, n in enumerate(enumeration):
        total = sum(n)
        if total == enumeration.n_max:
            continue  # raising leaves the truncated space
        for k, lam_k in enumerate(bath.lam):
            raised = list(n)
            raised[k] += 1
            j = enumeration.index_of(tuple(raised))
            element = lam_k * math.sqrt(n[k] + 1)
            V[j, i] += element
            V[i, j] += element
    return V


def assemble_full(
    params: ModelParams, bath: DiscretizedBath, enumeration: BasisEnumeration
) -> FullModel:
    """Dense H over spin (x) Fock, spin-up block first."""
    if enumeration.mode_count != bath.mode_count:
        raise ValueError(
            f"enumeration mode count {enumeration.mode_count} does not match "
            f"bath mode count {bath.mode_count}"
        )
    if enumeration.dim > DENSE_DIM_CAP:
        raise CapacityError(
            f"dense path caps at Fock dimension {DENSE_DIM_CAP}, "
            f"got {enumeration.dim}"
        )
    dim = enumeration.dim
    boson = np.diag(_boson_energy_diagonal(bath, enumeration))
    V = _coupling_matrix(bath, enumeration)
    half_eps = params.epsilon / 2.0
    half_delta = params.delta / 2.0
    H = np.zeros((2 * dim, 2 * dim))
    H[:dim, :dim] = boson + V + half_eps * np.eye(dim)
    H[dim:, dim:] = boson - V - half_eps * np.eye(dim)
    H[:dim, dim:] = -half_delta * np.eye(dim)
    H[dim:, :dim] = -half_delta * np.eye(dim)
    return FullModel(params=params, bath=bath, enumeration=enumeration, hamiltonian=H)


def _boson_parity_diagonal(enumeration: BasisEnumeration) -> np.ndarray:
    return np.array([float(parity_phase(n)) for n in enumeration])


def parity_matrix(enumeration: BasisEnumeration) -> np.ndarray:
    """Pi = sigma_x (x) diag((-1)**total). Involutory and symmetric."""
    dim = enumeration.dim
    phases = np.diag(_boson_parity_diagonal(enumeration))
    Pi = np.zeros((2 * dim, 2 * dim))
    Pi[:dim, dim:] = phases
    Pi[dim:, :dim] = phases
    return Pi


def unitary_U(enumeration: BasisEnumeration) -> np.ndarray:
    """Block rotation (1/sqrt 2) [[I, P], [-P, I]] used to decouple the sectors."""
    dim = enumeration.dim
    P = np.diag(_boson_parity_diagonal(enumeration))
    eye = np.eye(dim)
    U = np.empty((2 * dim, 2 * dim))
    U[:dim, :dim] = eye
    U[:dim, dim:] = P
    U[dim:, :dim] = -P
    U[dim:, dim:] = eye
    return U / math.sqrt(2.0)


def sector_blocks(model: FullModel) -> tuple[np.ndarray, np.ndarray, float]:
    """(upper, lower, off-diagonal norm) of U H U'.

    With epsilon = 0 the off-diagonal norm is rounding noise; the upper
    block is the even-parity Hamiltonian in the undisplaced basis and the
    lower block the odd one.
    """
    U = unitary_U(model.enumeration)
    rotated = U @ model.hamiltonian @ U.T
    dim = model.enumeration.dim
    upper = rotated[:dim, :dim]
    lower = rotated[dim:, dim:]
    off = float(np.linalg.norm(rotated[:dim, dim:]))
    return upper, lower, off


def dense_spectrum(model: FullModel) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of the dense Hamiltonian."""
    return np.linalg.eigh(model.hamiltonian)


def ground_parity(model: FullModel, gap_floor: float = 1e-12) -> int:
    """Parity label of the dense ground state: +1, -1, or MIXED.

    MIXED (|<Pi>| not within 1e-8 of 1) must never occur at epsilon = 0
    with delta != 0; it is the expected outcome once epsilon breaks the
    symmetry.  A dense gap below gap_floor signals a truncation pathology
    rather than physics and raises AccuracyError.
    """
    vals, vecs = dense_spectrum(model)
    if vals[1] - vals[0] < gap_floor:
        raise AccuracyError(
            f"dense ground state numerically degenerate: gap {vals[1] - vals[0]:.3e}"
        )
    psi = vecs[:, 0]
    expectation = float(psi @ parity_matrix(model.enumeration) @ psi)
    if expectation > 1.0 - 1e-8:
        return 1
    if expectation < -(1.0 - 1e-8):
        return -1
    return MIXED


def ground_sigma_z(model: FullModel) -> float:
    """<sigma_z> of the dense ground state."""
    vals, vecs = dense_spectrum(model)
    psi = vecs[:, 0]
    dim = model.enumeration.dim
    return float(psi[:dim] @ psi[:dim] - psi[dim:] @ psi[dim:])


def parity_commutator_norm(model: FullModel) -> float:
    """Spectral norm of [H, Pi]; equals |epsilon| exactly."""
    Pi = parity_matrix(model.enumeration)
    H = model.hamiltonian
    return float(np.linalg.norm(H @ Pi - Pi @ H, 2))


def parity_overlap(plus: GroundStateResult, minus: GroundStateResult) -> float:
    """Boson-parity overlap between the two sector ground states.

    In the displaced representation of the even sector and the rotated
    displaced representation of the odd one, the operator insertion
    exp(i pi sum a'a) is absorbed by the basis change and the overlap
    collapses to the plain inner product of coefficient vectors.
    """
    if plus.sector is not Sector.EVEN or minus.sector is not Sector.ODD:
        raise ValueError(
            f"expected (even, odd) ground states, got ({plus.sector.value}, {minus.sector.value})"
        )
    if plus.coefficients.shape != minus.coefficients.shape:
        raise ValueError(
            "ground states live on different enumerations: "
            f"{plus.coefficients.shape} vs {minus.coefficients.shape}"
        )
    return float(plus.coefficients @ minus.coefficients)


def magnetization(theta: float, plus: GroundStateResult, minus: GroundStateResult) -> float:
    """M(theta) = -sin(2 theta) * <even ground | boson parity | odd ground>."""
    return -math.sin(2.0 * theta) * parity_overlap(plus, minus)


def frozen_spin_check(bath: DiscretizedBath, enumeration: BasisEnumeration) -> float:
    """Norm of [H', sigma_z (x) I] for the delta = 0 Hamiltonian; structurally zero.

    With no tunneling both spin blocks are closed, so the commutator
    vanishes identically rather than to rounding.
    """
    model = assemble_full(ModelParams(delta=0.0, epsilon=0.0), bath, enumeration)
    dim = enumeration.dim
    sz = np.zeros((2 * dim, 2 * dim))
    sz[:dim, :dim] = np.eye(dim)
    sz[dim:, dim:] = -np.eye(dim)
    H = model.hamiltonian
    return float(np.linalg.norm(H @ sz - sz @ H, 2))
