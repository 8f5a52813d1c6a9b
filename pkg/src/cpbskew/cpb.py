"""Cooper pair box circuit parameters and the effective quantities they set.

Units: ħ = 1 and capacitances normalised to the gate capacitance, so the
only knobs the dynamics see are the capacitance ratio γ = C_j/C_g (through
the effective Rabi scale) and the scaled detuning Δ = δ/2g.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

# E_j/E_c above this counts as leaving the charge regime.
CHARGE_REGIME_RATIO = 0.1


class ChargeRegimeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CPBParameters:
    E_c: float
    E_j: float
    n_g: float
    C_j: float
    C_g: float
    omega: float
    delta: float
    g: float

    def __post_init__(self):
        for name in ("E_c", "C_j", "C_g", "omega", "g"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if abs(self.E_j) > CHARGE_REGIME_RATIO * self.E_c:
            warnings.warn(
                f"E_j/E_c = {abs(self.E_j) / self.E_c:.3g}; the two-level reduction "
                "assumes E_j << E_c", ChargeRegimeWarning, stacklevel=3)

    @property
    def gamma(self) -> float:
        return self.C_j / self.C_g


@dataclass(frozen=True)
class EffectiveParameters:
    omega_c: float
    theta: float
    mu: float
    gamma: float
    Omega: float
    Delta: float


def transition_frequency(p: CPBParameters) -> float:
    """Qubit transition frequency sqrt(E_j² + 16 E_c² (2n_g - 1)²)."""
    return math.hypot(p.E_j, 4.0 * p.E_c * (2.0 * p.n_g - 1.0))


def mixing_angle(p: CPBParameters) -> float:
    """θ = -arctan(E_j / (E_c (2n_g - 1))).

    At the degeneracy point n_g = ½ the limit value -sign(E_j)·π/2 is returned.
    """
    bias = 2.0 * p.n_g - 1.0
    if bias == 0.0:
        return -math.copysign(math.pi / 2, p.E_j) if p.E_j else 0.0
    return -math.atan(p.E_j / (p.E_c * bias))


def effective_rabi(gamma: float) -> float:
    """Ω(γ) = √γ / (1 + γ); maximal (½) at γ = 1."""
    if not gamma > 0:
        raise ValueError(f"capacitance ratio must be positive, got {gamma}")
    return math.sqrt(gamma) / (1.0 + gamma)


def scaled_detuning(delta: float, g: float) -> float:
    if not g > 0:
        raise ValueError(f"coupling g must be positive, got {g}")
    return delta / (2.0 * g)


def effective_parameters(p: CPBParameters) -> EffectiveParameters:
    return EffectiveParameters(
        omega_c=transition_frequency(p),
        theta=mixing_angle(p),
        mu=1.0 - p.n_g,
        gamma=p.gamma,
        Omega=effective_rabi(p.gamma),
        Delta=scaled_detuning(p.delta, p.g),
    )
