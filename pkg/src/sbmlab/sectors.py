"""Parity-sector Hamiltonians in the displaced number basis.

At zero local field the model splits into two decoupled blocks labelled by
the parity of sigma_x together with the total boson number.  In the
displaced basis D(-q)|n> both blocks have the same diagonal,
sum_k omega_k (n_k - q_k**2), and a dense tunneling block proportional to
the displaced parity table D_{m,n}:

    even block:  diag - (delta/2) D
    odd block:   diag + (delta/2) D

The odd block is represented in the boson-parity-rotated basis, under
which it differs from the even block only by the sign of the tunneling
term.  Both sectors therefore share a single D table, and negating delta
exchanges the two matrices exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal

from sbmlab.bath import DiscretizedBath
from sbmlab.errors import SolverError
from sbmlab.fockspace import BasisEnumeration, dmn_table

DENSE_CUTOFF = 512


@dataclass(frozen=True)
class ModelParams:
    """Spin parameters: tunneling delta and local field epsilon.

    delta = 0 is allowed (used by frozen-spin cross-checks) but makes the
    sector gap meaningless; epsilon must vanish for the sector
    decomposition to exist at all.
    """

    delta: float
    epsilon: float = 0.0


class Sector(Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def tunneling_sign(self) -> float:
        return -1.0 if self is Sector.EVEN else 1.0


@dataclass(frozen=True, eq=False)
class SectorMatrix:
    sector: Sector
    enumeration: BasisEnumeration
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    energy: float
    coefficients: np.ndarray
    residual: float
    sector: Sector
    iterations: int


def assemble_sector(
    bath: DiscretizedBath,
    params: ModelParams,
    enumeration: BasisEnumeration,
    sector: Sector,
) -> SectorMatrix:
    """diag(sum omega(n - q**2)) -+ (delta/2) D over the enumeration."""
    if params.epsilon != 0.0:
        raise ValueError(
            "sector decomposition requires epsilon = 0; "
            f"got epsilon={params.epsilon} (use the dense oracle instead)"
        )
    if enumeration.mode_count != bath.mode_count:
        raise ValueError(
            f"enumeration mode count {enumeration.mode_count} does not match "
            f"bath mode count {bath.mode_count}"
        )
    omega = np.asarray(bath.omega)
    q = np.asarray(bath.q)
    diagonal = enumeration.occupation_array() @ omega - float(omega @ (q * q))
    entries = sector.tunneling_sign * (params.delta / 2.0) * dmn_table(bath, enumeration)
    entries[np.diag_indices_from(entries)] += diagonal
    return SectorMatrix(sector=sector, enumeration=enumeration, entries=entries)


def _lowest_ritz(alphas: np.ndarray, betas: np.ndarray) -> tuple[float, np.ndarray]:
    vals, vecs = eigh_tridiagonal(alphas, betas, select="i", select_range=(0, 0))
    return float(vals[0]), vecs[:, 0]


def _fresh_direction(V: np.ndarray, start: int) -> np.ndarray | None:
    """First coordinate vector with a usable component outside span(V rows)."""
    n = V.shape[1]
    for idx in range(n):
        w = np.zeros(n)
        w[(start + idx) % n] = 1.0
        w -= (V @ w) @ V
        norm = np.linalg.norm(w)
        if norm > 1e-6:
            return w / norm
    return None


def _lanczos_lowest(
    H: np.ndarray, tol: float, max_iter: int
) -> tuple[float, np.ndarray, int, float]:
    """Lowest eigenpair by Lanczos with full reorthogonalization.

    Deterministic all-ones start vector; the Ritz residual is verified by
    an explicit matrix-vector product before convergence is declared.
    """
    n = H.shape[0]
    kmax = max(1, min(n, max_iter))
    V = np.empty((kmax, n))
    alphas = np.empty(kmax)
    betas = np.empty(max(kmax - 1, 1))
    v = np.ones(n) / math.sqrt(n)
    V[0] = v
    w = H @ v
    alphas[0] = v @ w
    w = w - alphas[0] * v
    best: tuple[float, np.ndarray, int, float] | None = None
    for k in range(1, kmax + 1):
        theta, y = _lowest_ritz(alphas[:k], betas[: k - 1])
        x = y @ V[:k]
        x /= np.linalg.norm(x)
        residual = float(np.linalg.norm(H @ x - theta * x))
        if best is None or residual < best[3]:
            best = (theta, x, k, residual)
        if residual <= tol:
            return theta, x, k, residual
        if k == kmax:
            break
        beta = float(np.linalg.norm(w))
        scale = float(np.abs(alphas[:k]).max())
        if beta <= 1e-13 * max(1.0, scale):
            # Krylov space became invariant without containing the target;
            # continue from a deterministic fresh direction
            fresh = _fresh_direction(V[:k], k)
            if fresh is None:
                break
            v_next = fresh
            beta = 0.0
        else:
            v_next = w / beta
            for _ in range(2):
                v_next -= (V[:k] @ v_next) @ V[:k]
            norm = np.linalg.norm(v_next)
            if norm <= 1e-10:
                fresh = _fresh_direction(V[:k], k)
                if fresh is None:
                    break
                v_next = fresh
                beta = 0.0
            else:
                v_next = v_next / norm
        V[k] = v_next
        betas[k - 1] = beta
        w = H @ v_next
        alphas[k] = v_next @ w
        w = w - alphas[k] * v_next - beta * V[k - 1]
    assert best is not None
    raise SolverError(
        f"Lanczos did not reach residual {tol} within {kmax} iterations; "
        f"best residual {best[3]:.3e} at energy {best[0]:.12g}"
    )


def ground_state(
    matrix: SectorMatrix, tol: float = 1e-10, max_iter: int = 500
) -> GroundStateResult:
    """Lowest eigenpair of a sector matrix.

    Dense diagonalization below DENSE_CUTOFF, Lanczos above.  Either way
    the residual is recomputed explicitly and must meet tol, the vector is
    normalized, and the vacuum coefficient is made nonnegative.
    """
    H = matrix.entries
    dim = H.shape[0]
    if dim <= DENSE_CUTOFF:
        vals, vecs = np.linalg.eigh(H)
        energy = float(vals[0])
        vector = vecs[:, 0]
        iterations = 0
        residual = float(np.linalg.norm(H @ vector - energy * vector))
        if residual > tol:
            raise SolverError(
                f"dense path residual {residual:.3e} exceeds tol {tol}; "
                "the matrix is likely ill-conditioned"
            )
    else:
        energy, vector, iterations, residual = _lanczos_lowest(H, tol, max_iter)
    vector = vector / np.linalg.norm(vector)
    nonzero = np.nonzero(vector)[0]
    if vector[0] < 0.0 or (vector[0] == 0.0 and nonzero.size and vector[nonzero[0]] < 0.0):
        vector = -vector
    return GroundStateResult(
        energy=energy,
        coefficients=vector,
        residual=residual,
        sector=matrix.sector,
        iterations=iterations,
    )


def sector_gap(
    bath: DiscretizedBath,
    params: ModelParams,
    enumeration: BasisEnumeration,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> float:
    """E_odd - E_even from two independent ground-state solves."""
    if params.delta == 0.0:
        raise ValueError("sector gap is undefined at delta = 0")
    even = ground_state(assemble_sector(bath, params, enumeration, Sector.EVEN), tol, max_iter)
    odd = ground_state(assemble_sector(bath, params, enumeration, Sector.ODD), tol, max_iter)
    return odd.energy - even.energy
