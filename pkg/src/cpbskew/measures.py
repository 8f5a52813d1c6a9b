"""Skew information, concurrence and related qubit diagnostics.

The headline quantity is S_I = 1 + C², which ranges over [1, 2]. The raw
Pauli variance sum (2 + C² for the qubit side) and the Wigner-Yanase skew
information of the reduced qubit state are kept as separate diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.stats

from .quantum import (
    PSD_TOL,
    InvalidDimensionError,
    QubitFockState,
    check_density_matrix,
    expectation_and_variance,
    pauli_matrices,
    psd_sqrt,
    reduced_qubit_state,
)


def _traced(a, b):
    """Tr(a @ b) over the last two axes."""
    return np.einsum("...ij,...ji->...", a, b)


def _check_observable(rho, H):
    H = np.asarray(H, dtype=complex)
    if H.shape != rho.shape[-2:]:
        raise InvalidDimensionError(f"observable shape {H.shape} does not match {rho.shape[-2:]}")
    return H


def _clamp(value):
    if np.min(value) < -PSD_TOL:
        raise ValueError(f"skew information came out negative ({np.min(value):.3e})")
    value = np.clip(value, 0.0, None)
    return float(value) if np.ndim(value) == 0 else value


def skew_information_wy(rho, H):
    """Wigner-Yanase skew information Tr(ρH²) - Tr(√ρ H √ρ H)."""
    rho = check_density_matrix(rho)
    H = _check_observable(rho, H)
    root = psd_sqrt(rho)
    value = _traced(rho, H @ H).real - _traced(root @ H, root @ H).real
    return _clamp(value)


def skew_information_commutator(rho, H):
    """Same quantity written as -½ Tr([√ρ, H]²)."""
    rho = check_density_matrix(rho)
    H = _check_observable(rho, H)
    root = psd_sqrt(rho)
    comm = root @ H - H @ root
    return _clamp(-0.5 * _traced(comm, comm).real)


def concurrence_pure(state):
    """Concurrence of a pure qubit ⊗ field state.

    Uses C = 2√det(ρ_q), equal to √(2(1 - Tr ρ_q²)) for a unit-trace 2×2
    matrix and exactly zero on product states.
    """
    rho_q = reduced_qubit_state(state)
    det = (rho_q[..., 0, 0] * rho_q[..., 1, 1]).real - np.abs(rho_q[..., 0, 1]) ** 2
    c = np.clip(2.0 * np.sqrt(np.clip(det, 0.0, None)), 0.0, 1.0)
    return float(c) if np.ndim(c) == 0 else c


def spin_flip(rho4):
    """R = ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)."""
    _, sy, _ = pauli_matrices()
    yy = np.kron(sy, sy)
    return rho4 @ yy @ rho4.conj() @ yy


def wootters_roots(rho4) -> np.ndarray:
    """√η_i, the square roots of the eigenvalues of R, in descending order.

    Computed as singular values of τ = Wᵀ(σ_y⊗σ_y)W with ρ = WW†, which
    avoids taking square roots of round-off sized eigenvalues of R.
    """
    _, sy, _ = pauli_matrices()
    vals, vecs = np.linalg.eigh(rho4)
    W = vecs * np.sqrt(np.clip(vals, 0.0, None))
    tau = W.T @ np.kron(sy, sy).real @ W
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_wootters(rho4) -> float:
    """Two-qubit concurrence max(0, √η₁ - √η₂ - √η₃ - √η₄)."""
    rho4 = check_density_matrix(rho4)
    if rho4.shape != (4, 4):
        raise InvalidDimensionError(f"Wootters concurrence needs a 4x4 matrix, got {rho4.shape}")
    roots = wootters_roots(rho4)
    return float(np.clip(roots[0] - roots[1:].sum(), 0.0, 1.0))


def two_level_joint_density(state, levels=(0, 1), tol=1e-12) -> np.ndarray:
    """4×4 joint density matrix of a state supported on two Fock levels.

    Product basis ordering is (e,k0), (e,k1), (g,k0), (g,k1).
    """
    amps = state.amplitudes if isinstance(state, QubitFockState) else np.asarray(state, dtype=complex)
    psi = amps.reshape(2, -1)
    kept = psi[:, list(levels)]
    leak = np.linalg.norm(psi) ** 2 - np.linalg.norm(kept) ** 2
    if leak > tol:
        raise ValueError(f"state has weight {leak:.3e} outside Fock levels {levels}")
    vec = kept.reshape(4)
    return np.outer(vec, vec.conj())


def skew_from_concurrence(C):
    """S_I = 1 + C²."""
    C_arr = np.asarray(C, dtype=float)
    if np.any((C_arr < 0) | (C_arr > 1)):
        raise ValueError(f"concurrence must lie in [0, 1], got {C}")
    value = 1.0 + C_arr**2
    return float(value) if value.ndim == 0 else value


def bloch_vector(rho_q) -> np.ndarray:
    """(<σ_x>, <σ_y>, <σ_z>) of a qubit density matrix."""
    return np.stack([expectation_and_variance(rho_q, s)[0] for s in pauli_matrices()], axis=-1)


def variance_sum_qubit(state):
    """Σ_i Δσ_i² over the Pauli set for the qubit; equals 3 - |r|²."""
    rho_q = reduced_qubit_state(state)
    total = sum(expectation_and_variance(rho_q, s)[1] for s in pauli_matrices())
    return float(total) if np.ndim(total) == 0 else total


def wy_sum_qubit(state):
    """Wigner-Yanase skew information of ρ_q summed over σ_x, σ_y, σ_z."""
    rho_q = reduced_qubit_state(state)
    total = sum(skew_information_wy(rho_q, s) for s in pauli_matrices())
    return float(total) if np.ndim(total) == 0 else total


def purity(rho):
    value = _traced(rho, rho).real
    return float(value) if np.ndim(value) == 0 else value


def von_neumann_entropy(rho):
    """Entropy in bits; 0·log 0 is taken as 0."""
    eigs = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    value = scipy.stats.entropy(np.moveaxis(eigs, -1, 0), base=2)
    return float(value) if np.ndim(value) == 0 else value


def diagnostics(state):
    """Return ``(purity, entropy)`` of the reduced qubit state."""
    rho_q = reduced_qubit_state(state)
    return purity(rho_q), von_neumann_entropy(rho_q)


@dataclass(frozen=True)
class MeasureReport:
    S_I_from_concurrence: float
    S_I_wy_qubit: float
    variance_sum_qubit: float
    concurrence: float
    purity_qubit: float
    entropy_qubit: float


def measure_report(state) -> MeasureReport:
    c = concurrence_pure(state)
    p, s = diagnostics(state)
    return MeasureReport(
        S_I_from_concurrence=skew_from_concurrence(c),
        S_I_wy_qubit=wy_sum_qubit(state),
        variance_sum_qubit=variance_sum_qubit(state),
        concurrence=c,
        purity_qubit=p,
        entropy_qubit=s,
    )
