"""Simulator and analytic toolkit for chained individual attacks on
four-state quantum key distribution.

The statevector route (:mod:`eavesim.attack`, :mod:`eavesim.analysis`) and
the closed-form route (:mod:`eavesim.closedform`) compute the same
quantities independently; :mod:`eavesim.verify` and the test suite hold them
against each other.
"""

__version__ = "0.1.0"

from .analysis import (
    AnalysisReport,
    alice_bob_information,
    analyze,
    bob_error_rate,
    conditional_disturbance,
    gamma_operator,
    mutual_information,
    outcome_table,
    povm_for_eve,
)
from .attack import (
    AttackScenario,
    EveParams,
    JointSignalStates,
    build_joint_states,
    d_from_delta,
    delta_from_d,
    probe_state,
    symmetric_scenario,
)
from .closedform import (
    bob_error_product,
    bob_error_recursive,
    bob_error_substitution,
    crossover_disturbance,
    gains,
    mutual_informations,
    optimal_information,
    phi,
)
from .statevector import (
    StateVector,
    apply_basis_change,
    apply_cnot_uv,
    apply_cnot_xy,
    inner_product,
    measure_projector,
    partial_trace,
    tensor,
)

__all__ = [
    "AnalysisReport",
    "AttackScenario",
    "EveParams",
    "JointSignalStates",
    "StateVector",
    "alice_bob_information",
    "analyze",
    "apply_basis_change",
    "apply_cnot_uv",
    "apply_cnot_xy",
    "bob_error_product",
    "bob_error_recursive",
    "bob_error_substitution",
    "bob_error_rate",
    "build_joint_states",
    "conditional_disturbance",
    "crossover_disturbance",
    "d_from_delta",
    "delta_from_d",
    "gains",
    "gamma_operator",
    "inner_product",
    "measure_projector",
    "mutual_information",
    "mutual_informations",
    "optimal_information",
    "outcome_table",
    "partial_trace",
    "phi",
    "povm_for_eve",
    "probe_state",
    "symmetric_scenario",
    "tensor",
]
