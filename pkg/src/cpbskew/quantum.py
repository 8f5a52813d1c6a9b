"""Truncated qubit ⊗ Fock substrate: states, operators, reduced states.

Joint basis ordering is fixed as

    (e,0), (e,1), ..., (e,N-1), (g,0), ..., (g,N-1)

which is ``np.kron(qubit, field)`` with the qubit basis ``(e, g)``. The
closed-form propagator and the eigendecomposition oracle both rely on it.

Functions that take density matrices or amplitude vectors broadcast over
leading axes, so a whole time series can be processed in one call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class InvalidDimensionError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class QubitFockState:
    """Pure state of qubit ⊗ truncated Fock space.

    ``amplitudes`` has shape ``(..., 2N)``; a leading axis holds a batch of
    states (e.g. one per sampled time).
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim == 0 or amps.shape[-1] < 2 or amps.shape[-1] % 2:
            raise InvalidDimensionError(
                f"amplitude vector length must be 2N with N >= 1, got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[-1] // 2

    @property
    def norm(self):
        return np.linalg.norm(self.amplitudes, axis=-1)

    def component(self, qubit: str, k: int):
        """Amplitude of ``|qubit, k>`` where qubit is ``"e"`` or ``"g"``."""
        return self.amplitudes[..., basis_index(qubit, k, self.cutoff)]

    @classmethod
    def basis(cls, qubit: str, k: int, cutoff: int) -> "QubitFockState":
        amps = np.zeros(2 * cutoff, dtype=complex)
        amps[basis_index(qubit, k, cutoff)] = 1.0
        return cls(amps)

    @classmethod
    def from_components(cls, components: dict, cutoff: int) -> "QubitFockState":
        """Build from ``{("e", k): amp, ...}``; no normalization is applied."""
        amps = np.zeros(2 * cutoff, dtype=complex)
        for (qubit, k), value in components.items():
            amps[basis_index(qubit, k, cutoff)] = value
        return cls(amps)


def basis_index(qubit: str, k: int, cutoff: int) -> int:
    if qubit not in ("e", "g"):
        raise ValueError(f"qubit level must be 'e' or 'g', got {qubit!r}")
    if not 0 <= k < cutoff:
        raise InvalidDimensionError(f"photon number {k} outside [0, {cutoff})")
    return k if qubit == "e" else cutoff + k


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, QubitFockState):
        return state.amplitudes
    return QubitFockState(state).amplitudes


@dataclass(frozen=True)
class Operators:
    a: np.ndarray
    a_dagger: np.ndarray
    sigma_x: np.ndarray
    sigma_y: np.ndarray
    sigma_z: np.ndarray
    identity: np.ndarray

    @property
    def sigma_plus(self) -> np.ndarray:
        return (self.sigma_x + 1j * self.sigma_y) / 2

    @property
    def sigma_minus(self) -> np.ndarray:
        return (self.sigma_x - 1j * self.sigma_y) / 2

    def joint(self, qubit_op=None, field_op=None) -> np.ndarray:
        """Embed a qubit and/or field operator in the 2N-dimensional space."""
        q = np.eye(2) if qubit_op is None else qubit_op
        f = self.identity if field_op is None else field_op
        return np.kron(q, f)

    @property
    def number(self) -> np.ndarray:
        """a†a, built from integers so the diagonal is exact."""
        return np.diag(np.arange(len(self.identity), dtype=float)).astype(complex)

    def excitation_number(self) -> np.ndarray:
        """``a†a + |e><e|`` on the joint space."""
        excited = np.diag([1.0, 0.0])
        return self.joint(field_op=self.number) + self.joint(qubit_op=excited)


def pauli_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """σ_x, σ_y, σ_z in the (e, g) basis, with σ_z|e> = +|e>."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return sx, sy, sz


def build_operators(cutoff: int) -> Operators:
    """Ladder operators on N Fock levels and the qubit Pauli set.

    The creation operator is truncated: ``a†|N-1> = 0``, so ``[a, a†] = I``
    holds on the lowest N-1 levels only.
    """
    if int(cutoff) != cutoff or cutoff < 1:
        raise InvalidDimensionError(f"Fock cutoff must be a positive integer, got {cutoff}")
    cutoff = int(cutoff)
    a = np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)
    sx, sy, sz = pauli_matrices()
    return Operators(a=a, a_dagger=a.conj().T, sigma_x=sx, sigma_y=sy, sigma_z=sz,
                     identity=np.eye(cutoff, dtype=complex))


def check_density_matrix(rho) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return as complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
        raise InvalidDimensionError(f"density matrix must be square, got {rho.shape}")
    herm = np.max(np.abs(rho - np.swapaxes(rho.conj(), -1, -2)))
    if herm > HERMITIAN_TOL:
        raise NotHermitianError(f"density matrix not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.max(np.abs(tr - 1)) > TRACE_TOL:
        raise NormalizationError(f"density matrix trace deviates from 1 by {np.max(np.abs(tr - 1)):.3e}")
    lowest = np.min(np.linalg.eigvalsh(rho))
    if lowest < -PSD_TOL:
        raise NotPSDError(f"density matrix has eigenvalue {lowest:.3e}")
    return rho


def _check_normalized(amps: np.ndarray) -> None:
    err = np.max(np.abs(np.linalg.norm(amps, axis=-1) - 1))
    if err > NORM_TOL:
        raise NormalizationError(f"state norm deviates from 1 by {err:.3e}")


def _split(state) -> np.ndarray:
    amps = _amplitudes(state)
    _check_normalized(amps)
    return amps.reshape(amps.shape[:-1] + (2, amps.shape[-1] // 2))


def reduced_qubit_state(state) -> np.ndarray:
    """Partial trace over the field: ``rho_q[i, j] = sum_k psi(i,k) psi(j,k)*``."""
    psi = _split(state)
    return np.einsum("...ik,...jk->...ij", psi, psi.conj())


def reduced_field_state(state) -> np.ndarray:
    """Partial trace over the qubit, an N×N matrix."""
    psi = _split(state)
    return np.einsum("...ik,...il->...kl", psi, psi.conj())


def psd_sqrt(rho) -> np.ndarray:
    """Principal square root of a density matrix via Hermitian eigendecomposition.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero; anything more
    negative raises :class:`NotPSDError`. Eigenvalues below the solver's
    resolution (dim·eps·λ_max) are zeroed too, otherwise a pure state would
    acquire spurious ~1e-8 components from the square root of round-off.
    """
    rho = check_density_matrix(rho)
    vals, vecs = np.linalg.eigh(rho)
    resolution = rho.shape[-1] * np.finfo(float).eps * vals[..., -1:]
    vals = np.where(vals < resolution, 0.0, vals)
    return (vecs * np.sqrt(vals)[..., None, :]) @ np.swapaxes(vecs.conj(), -1, -2)


def _as_density(state_or_rho) -> np.ndarray:
    if isinstance(state_or_rho, QubitFockState):
        amps = state_or_rho.amplitudes
    else:
        arr = np.asarray(state_or_rho, dtype=complex)
        if arr.ndim >= 2 and arr.shape[-1] == arr.shape[-2]:
            return arr
        amps = arr
    _check_normalized(amps)
    return np.einsum("...i,...j->...ij", amps, amps.conj())


def expectation_and_variance(state_or_rho, observable):
    """Mean ``Tr(rho A)`` and variance ``Tr(rho A²) - mean²`` of an observable.

    Accepts a state vector or a density matrix. Small negative variances
    (above -1e-10) are clamped to zero.
    """
    rho = _as_density(state_or_rho)
    obs = np.asarray(observable, dtype=complex)
    if obs.shape != rho.shape[-2:]:
        raise InvalidDimensionError(
            f"observable shape {obs.shape} does not match state dimension {rho.shape[-2:]}")
    mean = np.einsum("...ij,ji->...", rho, obs)
    second = np.einsum("...ij,ji->...", rho, obs @ obs)
    if np.max(np.abs(mean.imag)) > 1e-10:
        raise NotHermitianError("expectation value has a non-negligible imaginary part")
    mean = mean.real
    var = second.real - mean**2
    if np.min(var) < -PSD_TOL:
        raise NotPSDError(f"negative variance {np.min(var):.3e}")
    var = np.clip(var, 0.0, None)
    if np.ndim(mean) == 0:
        return float(mean), float(var)
    return mean, var
