"""Brute-force evolution: build H on the truncated space and exponentiate it."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .propagator import default_cutoff, evolve_initial, initial_state
from .quantum import HERMITIAN_TOL, NotHermitianError, QubitFockState, build_operators


@dataclass(frozen=True)
class TruncatedHamiltonian:
    matrix: np.ndarray
    cutoff: int
    Delta: float
    Omega: float
    _eig: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise NotHermitianError("Hamiltonian is not Hermitian")
        object.__setattr__(self, "_eig", np.linalg.eigh(m))

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self._eig[1]


def build_jc_hamiltonian(Delta, Omega, cutoff: int) -> TruncatedHamiltonian:
    """H = Ω(Δσ_z + σ_+ a + σ_- a†) on qubit ⊗ N Fock levels."""
    if cutoff < 2:
        raise ValueError(f"Hamiltonian needs a Fock cutoff >= 2, got {cutoff}")
    ops = build_operators(cutoff)
    h = Delta * ops.joint(qubit_op=ops.sigma_z)
    h = h + np.kron(ops.sigma_plus, ops.a) + np.kron(ops.sigma_minus, ops.a_dagger)
    return TruncatedHamiltonian(Omega * h, cutoff, float(Delta), float(Omega))


def exact_evolve(H: TruncatedHamiltonian, psi0, T):
    """exp(-iHT)|psi0> through the eigendecomposition of H.

    ``T`` may be an array; the result then holds one state per time.
    """
    amps = psi0.amplitudes if isinstance(psi0, QubitFockState) else np.asarray(psi0, dtype=complex)
    if amps.shape[-1] != H.matrix.shape[0]:
        raise ValueError(f"state dimension {amps.shape[-1]} != Hamiltonian dimension {H.matrix.shape[0]}")
    vals, vecs = H.eigenvalues, H.eigenvectors
    coeffs = vecs.conj().T @ amps
    T = np.asarray(T, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(T, vals))
    out = (phases * coeffs) @ vecs.T
    out[T == 0] = amps
    return QubitFockState(out)


def phase_aligned_distance(a, b) -> np.ndarray:
    """min over unit scalars z of ||a - z b||, row-wise."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    overlap = np.einsum("...i,...i->...", b.conj(), a)
    mag = np.abs(overlap)
    z = np.where(mag > 0, overlap / np.where(mag > 0, mag, 1), 1.0)
    return np.linalg.norm(a - z[..., None] * b, axis=-1)


def closed_vs_oracle_deviation(n: int, Delta, Omega, times, cutoff: int | None = None) -> float:
    """Largest phase-aligned distance between closed-form and exact states."""
    cutoff = default_cutoff(n) if cutoff is None else cutoff
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _, closed = evolve_initial(n, Delta, Omega, times, cutoff)
    H = build_jc_hamiltonian(Delta, Omega, cutoff)
    exact = exact_evolve(H, initial_state(n, cutoff), times)
    return float(np.max(phase_aligned_distance(closed.amplitudes, exact.amplitudes)))
