"""Skew information dynamics of a Cooper pair box coupled to a cavity mode."""

from .cpb import CPBParameters, EffectiveParameters, effective_parameters, effective_rabi, scaled_detuning
from .measures import (
    MeasureReport,
    concurrence_pure,
    concurrence_wootters,
    measure_report,
    skew_from_concurrence,
    skew_information_wy,
)
from .oracle import build_jc_hamiltonian, closed_vs_oracle_deviation, exact_evolve
from .propagator import evolve_initial, propagator_matrix, rabi_coefficients
from .quantum import QubitFockState, build_operators, reduced_field_state, reduced_qubit_state
from .sweep import TracePoint, find_extrema, reproduce_figures, run_trace

__version__ = "0.1.0"
