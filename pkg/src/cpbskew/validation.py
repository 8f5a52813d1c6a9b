"""Self-checks run by ``cpbskew validate``: oracle agreement and invariants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cpb import effective_rabi
from .measures import concurrence_pure, skew_from_concurrence, variance_sum_qubit
from .oracle import closed_vs_oracle_deviation
from .propagator import evolve_initial, propagator_matrix
from .quantum import build_operators, reduced_qubit_state

ORACLE_N = (0, 1, 2, 5, 8)
ORACLE_DELTA = (0.0, 0.3, 0.9)
ORACLE_GAMMA = (1 / 4, 1 / 6, 1 / 8, 4.0, 6.0, 8.0)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.value <= self.tolerance

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.value:.3e} (tol {self.tolerance:g})"


def oracle_deviation(t_max=25.0, points=500) -> float:
    times = np.linspace(0.0, t_max, points)
    return max(
        closed_vs_oracle_deviation(n, d, effective_rabi(g), times)
        for n in ORACLE_N for d in ORACLE_DELTA for g in ORACLE_GAMMA
    )


def invariant_errors(draws=1000, seed=0) -> dict[str, float]:
    """Worst-case errors over random (Δ, Ω, T, N) draws."""
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(("unitarity", "norm", "excitation", "skew_range", "skew_at_zero",
                           "concurrence_purity", "variance_sum"), 0.0)
    for _ in range(draws):
        N = int(rng.integers(2, 13))
        n = int(rng.integers(0, N - 1))
        Delta = rng.uniform(0, 2)
        Omega = rng.uniform(1e-3, 0.5)
        T = rng.uniform(0, 50)
        U = propagator_matrix(Delta, Omega, T, N)
        worst["unitarity"] = max(worst["unitarity"], np.max(np.abs(U.conj().T @ U - np.eye(2 * N))))
        exc = build_operators(N).excitation_number()
        worst["excitation"] = max(worst["excitation"], np.max(np.abs(U @ exc - exc @ U)))

        _, state = evolve_initial(n, Delta, Omega, T, N)
        worst["norm"] = max(worst["norm"], abs(state.norm - 1))
        c = concurrence_pure(state)
        s = skew_from_concurrence(c)
        worst["skew_range"] = max(worst["skew_range"], 1 - s, s - 2)
        p = np.trace(reduced_qubit_state(state) @ reduced_qubit_state(state)).real
        worst["concurrence_purity"] = max(worst["concurrence_purity"], abs(c**2 - 2 * (1 - p)))
        worst["variance_sum"] = max(worst["variance_sum"], abs(variance_sum_qubit(state) - 2 - c**2))

        _, state0 = evolve_initial(n, Delta, Omega, 0.0, N)
        worst["skew_at_zero"] = max(worst["skew_at_zero"], abs(skew_from_concurrence(concurrence_pure(state0)) - 1))
    return worst


TOLERANCES = {
    "unitarity": 1e-12,
    "norm": 1e-12,
    "excitation": 1e-10,
    "skew_range": 0.0,
    "skew_at_zero": 0.0,
    "concurrence_purity": 1e-10,
    "variance_sum": 1e-10,
}


def run_validation(draws=1000, seed=0) -> list[Check]:
    checks = [Check("closed form vs eigendecomposition oracle", oracle_deviation(), 1e-9)]
    for name, err in invariant_errors(draws, seed).items():
        checks.append(Check(name, float(err), TOLERANCES[name]))
    return checks
