"""Closed-form propagator of the detuned Jaynes-Cummings interaction.

In the interaction frame the Hamiltonian ``Ω(Δσ_z + σ_+a + σ_-a†)`` only
couples the pair {|e,m>, |g,m+1>}. With r_k = √(Δ² + k),

    C_k = cos(ΩT r_k),    S_k = sin(ΩT r_k) / r_k,

the sector block for k = m + 1 is

    [[C_k - iΔS_k,  -i√k S_k],
     [-i√k S_k,     C_k + iΔS_k]]

and the uncoupled |g,0> picks up C_0 + iΔS_0 = exp(iΩΔT).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quantum import QubitFockState

DEFAULT_MARGIN = 5


class CutoffError(ValueError):
    pass


def default_cutoff(n: int) -> int:
    return n + DEFAULT_MARGIN


def rabi_coefficients(m, Delta, Omega, T):
    """Return ``(C_m, S_m)``; broadcasts over array arguments.

    S_m is written as ΩT·sinc so the resonant vacuum limit (Δ = m = 0)
    evaluates to ΩT without a special case.
    """
    r = np.sqrt(np.square(Delta) + np.asarray(m, dtype=float))
    phase = np.asarray(Omega, dtype=float) * np.asarray(T, dtype=float)
    c = np.cos(phase * r)
    s = phase * np.sinc(phase * r / np.pi)
    if np.ndim(c) == 0:
        return float(c), float(s)
    return c, s


@dataclass(frozen=True)
class PropagatorCoefficients:
    """Per-level C_m, S_m for m = 0..N-1 at one (Δ, Ω, T)."""

    Delta: float
    C: np.ndarray
    S: np.ndarray

    def B1(self, m):
        """Diagonal factor on |e,m>."""
        k = np.asarray(m) + 1
        return self.C[k] - 1j * self.Delta * self.S[k]

    def B4(self, m):
        """Diagonal factor on |g,m>."""
        return self.C[m] + 1j * self.Delta * self.S[m]

    def B2(self, m):
        """Amplitude |e,m-1> <- |g,m> (B₂ ∝ S a)."""
        return -1j * np.sqrt(m) * self.S[m]

    def B3(self, m):
        """Amplitude |g,m+1> <- |e,m> (B₃ ∝ S a†)."""
        k = np.asarray(m) + 1
        return -1j * np.sqrt(k) * self.S[k]


def propagator_coefficients(Delta, Omega, T, levels: int) -> PropagatorCoefficients:
    c, s = rabi_coefficients(np.arange(levels + 1), Delta, Omega, T)
    return PropagatorCoefficients(Delta=float(Delta), C=c, S=s)


def propagator_matrix(Delta, Omega, T, cutoff: int) -> np.ndarray:
    """Unitary U(T) on the 2N-dimensional truncated space.

    The top state |e,N-1> has no partner inside the truncation; it is left
    uncoupled with phase exp(-iΩΔT), matching the truncated Hamiltonian.
    """
    if cutoff < 2:
        raise CutoffError(f"propagator needs a Fock cutoff >= 2, got {cutoff}")
    N = cutoff
    coef = propagator_coefficients(Delta, Omega, T, N)
    U = np.zeros((2 * N, 2 * N), dtype=complex)
    for m in range(N - 1):
        e, g = m, N + m + 1
        U[e, e] = coef.B1(m)
        U[g, g] = coef.B4(m + 1)
        U[g, e] = coef.B3(m)
        U[e, g] = coef.B2(m + 1)
    U[N, N] = coef.B4(0)
    U[N - 1, N - 1] = coef.C[0] - 1j * coef.Delta * coef.S[0]
    return U


@dataclass(frozen=True)
class EvolvedAmplitudes:
    """Amplitudes of |e,n>, |g,n+1>, |e,n-1>, |g,n> after evolution."""

    n: int
    A1: complex
    A2: complex
    A3: complex
    A4: complex

    @property
    def norm_squared(self):
        return abs(self.A1)**2 + abs(self.A2)**2 + abs(self.A3)**2 + abs(self.A4)**2


def evolved_amplitudes(n: int, Delta, Omega, T) -> np.ndarray:
    """A₁..A₄ for the initial state (|e,n> + |g,n>)/√2 as a ``(4, ...)`` array.

    Broadcasts over ``T`` (and the other float arguments).
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"photon number must be a non-negative integer, got {n}")
    c_up, s_up = rabi_coefficients(n + 1, Delta, Omega, T)
    h = 1 / np.sqrt(2)
    a1 = h * (c_up - 1j * Delta * s_up)
    a2 = -1j * h * np.sqrt(n + 1) * s_up
    if n == 0:
        # |e,-1> does not exist; |g,0> is the dark state.
        c0, s0 = rabi_coefficients(0, Delta, Omega, T)
        a3 = np.zeros_like(a1)
        a4 = h * (c0 + 1j * Delta * s0)
    else:
        c_dn, s_dn = rabi_coefficients(n, Delta, Omega, T)
        a3 = -1j * h * np.sqrt(n) * s_dn
        a4 = h * (c_dn + 1j * Delta * s_dn)
    return np.array(np.broadcast_arrays(a1, a2, a3, a4))


def initial_state(n: int, cutoff: int | None = None) -> QubitFockState:
    cutoff = default_cutoff(n) if cutoff is None else cutoff
    return QubitFockState.from_components({("e", n): 1 / np.sqrt(2), ("g", n): 1 / np.sqrt(2)}, cutoff)


def amplitudes_to_state(n: int, amps: np.ndarray, cutoff: int | None = None) -> QubitFockState:
    """Place A₁..A₄ (shape ``(4, ...)``) into full 2N amplitude vectors."""
    cutoff = default_cutoff(n) if cutoff is None else cutoff
    if cutoff < n + 2:
        raise CutoffError(f"cutoff {cutoff} too small for n = {n}; need at least {n + 2}")
    amps = np.asarray(amps)
    out = np.zeros(amps.shape[1:] + (2 * cutoff,), dtype=complex)
    out[..., n] = amps[0]
    out[..., cutoff + n + 1] = amps[1]
    if n > 0:
        out[..., n - 1] = amps[2]
    out[..., cutoff + n] = amps[3]
    return QubitFockState(out)


def evolve_initial(n: int, Delta, Omega, T, cutoff: int | None = None):
    """Evolve (|e,n> + |g,n>)/√2 to time T.

    Returns ``(EvolvedAmplitudes, QubitFockState)`` for scalar T. For array T
    the first element is the raw ``(4, len(T))`` amplitude array and the
    state holds one vector per time.
    """
    amps = evolved_amplitudes(n, Delta, Omega, T)
    state = amplitudes_to_state(n, amps, cutoff)
    if np.ndim(T) == 0:
        return EvolvedAmplitudes(n, *(complex(a) for a in amps)), state
    return amps, state
