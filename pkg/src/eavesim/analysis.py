"""Measurement statistics, information quantities, and receiver error rates.

Everything in this module is computed numerically from post-attack joint
states; the matching closed-form expressions live in
:mod:`eavesim.closedform` and are only consulted for the reference section of
a report, never for the simulated quantities themselves.

Probability conventions, for attacker j with outcome label lambda and the two
signal symbols i of a basis:

* ``P[lambda][i]`` -- detection probability ``<I| 1 (x) E_lambda |I>``,
* ``q[lambda] = (P[lambda][0] + P[lambda][1]) / 2`` -- outcome marginal
  under equiprobable symbols,
* ``Q[i][lambda] = P[lambda][i] / (2 q[lambda])`` -- posterior on the symbol,
* ``G[lambda] = |Q[0][lambda] - Q[1][lambda]|`` -- per-outcome information
  gain.

Outcomes with q = 0 are unreachable; they are flagged and excluded from all
entropy sums (0 log 0 := 0 throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections.abc import Sequence

import numpy as np

from . import closedform
from .attack import (
    AttackScenario,
    CONJUGATE_BASIS,
    BASIS_SYMBOLS,
    JointSignalStates,
    build_joint_states,
    conjugate_images,
)
from .statevector import (
    StateVector,
    measure_projector,
    partial_trace,
    project_raw,
)

from .closedform import alice_bob_information  # noqa: F401  (public surface)

DEGENERACY_GAP = 1e-9

# Single-qubit symbol projectors in x-y matrix representation.
_SYMBOL_PROJECTORS = {
    "x": np.array([[1.0, 0.0], [0.0, 0.0]]),
    "y": np.array([[0.0, 0.0], [0.0, 1.0]]),
    "u": np.array([[0.5, 0.5], [0.5, 0.5]]),
    "v": np.array([[0.5, -0.5], [-0.5, 0.5]]),
}


def pair_projectors(basis: str) -> tuple[np.ndarray, ...]:
    """Rank-one projectors on a probe pair, labelled 00, 01, 10, 11.

    Label order follows (e, f) with e the first probe qubit, i.e. xx, xy,
    yx, yy for the x-y frame and uu, uv, vu, vv for the u-v frame.  The
    register convention stores e as the low bit of the pair index, so label
    ``2*e + f`` projects onto pair index ``e + 2*f``.
    """
    single = {"xy": (_SYMBOL_PROJECTORS["x"], _SYMBOL_PROJECTORS["y"]),
              "uv": (_SYMBOL_PROJECTORS["u"], _SYMBOL_PROJECTORS["v"])}[basis]
    out = []
    for label in range(4):
        e_bit, f_bit = label >> 1, label & 1
        out.append(np.kron(single[f_bit], single[e_bit]))  # f is the high bit
    return tuple(out)


@dataclass(frozen=True)
class PovmSet:
    """Complete projector family for one attacker's probe pair.

    ``degenerate_gamma`` records whether the discriminating operator had a
    (near-)degenerate spectrum, in which case the eigenvector cross-check is
    skipped and ``eigencheck_residual`` is None.
    """

    eve_index: int
    qubits: tuple[int, int]
    projectors: tuple[np.ndarray, ...]
    degenerate_gamma: bool
    eigencheck_residual: float | None


def gamma_operator(states: JointSignalStates, eve_index: int) -> np.ndarray:
    """Difference of the two reduced probe-pair matrices; symmetric, traceless."""
    qubits = states.scenario.probe_qubits(eve_index)
    rho_a = partial_trace(states.states[0], qubits)
    rho_b = partial_trace(states.states[1], qubits)
    return rho_a - rho_b


def povm_for_eve(states: JointSignalStates, eve_index: int) -> PovmSet:
    """Fixed signal-frame projector family for one attacker.

    The family is always the computational family of the signal frame (x-y
    projectors for x-y signals, u-v projectors for u-v signals).  When the
    discriminating operator has a nondegenerate spectrum, each projector is
    additionally checked to span one of its eigenspaces; with a degenerate
    spectrum the family is still used but the check is skipped.
    """
    qubits = states.scenario.probe_qubits(eve_index)
    projectors = pair_projectors(states.basis)
    gamma = gamma_operator(states, eve_index)
    eigenvalues = np.sort(np.linalg.eigvalsh(gamma))
    degenerate = bool(np.min(np.diff(eigenvalues)) < DEGENERACY_GAP)
    residual: float | None = None
    if not degenerate:
        residual = 0.0
        for proj in projectors:
            vec = proj[:, int(np.argmax(np.diag(proj) > 0.0))]
            vec = vec / np.linalg.norm(vec)
            image = gamma @ vec
            residual = max(residual,
                           float(np.linalg.norm(image - (vec @ image) * vec)))
    return PovmSet(eve_index=eve_index, qubits=qubits, projectors=projectors,
                   degenerate_gamma=degenerate, eigencheck_residual=residual)


@dataclass(frozen=True)
class EveOutcomeTable:
    """Detection probabilities and posteriors for one attacker.

    Array shapes: ``detection[lambda, i]``, ``outcome_prob[lambda]``,
    ``posterior[i, lambda]``, ``gain[lambda]``, ``reachable[lambda]``.
    Posterior and gain entries are NaN on unreachable outcomes.
    """

    eve_index: int
    detection: np.ndarray
    outcome_prob: np.ndarray
    posterior: np.ndarray
    gain: np.ndarray
    reachable: np.ndarray


def outcome_table(states: JointSignalStates, povm: PovmSet) -> EveOutcomeTable:
    """Full outcome statistics of one attacker's measurement."""
    detection = np.empty((4, 2))
    for lam, proj in enumerate(povm.projectors):
        for i, state in enumerate(states.states):
            detection[lam, i] = measure_projector(state, proj, povm.qubits)
    outcome_prob = 0.5 * (detection[:, 0] + detection[:, 1])
    reachable = outcome_prob > 0.0
    posterior = np.full((2, 4), np.nan)
    posterior[:, reachable] = (
        detection[reachable].T / (2.0 * outcome_prob[reachable]))
    gain = np.abs(posterior[0] - posterior[1])
    return EveOutcomeTable(eve_index=povm.eve_index, detection=detection,
                           outcome_prob=outcome_prob, posterior=posterior,
                           gain=gain, reachable=reachable)


def mutual_information(table: EveOutcomeTable) -> float:
    """Information (bits) between the sender's symbol and the outcome.

    Computed directly from the posterior table as
    ``sum_lambda q[lambda] sum_i Q[i][lambda] log2(2 Q[i][lambda])``,
    skipping unreachable outcomes.
    """
    total = 0.0
    for lam in range(4):
        if not table.reachable[lam]:
            continue
        q = float(table.outcome_prob[lam])
        for i in range(2):
            p = float(table.posterior[i, lam])
            if p > 0.0:
                total += q * p * math.log2(2.0 * p)
    return total


def _measured_pair(states: JointSignalStates,
                   measure_basis: str) -> tuple[tuple[StateVector, StateVector],
                                                tuple[str, str]]:
    if measure_basis not in BASIS_SYMBOLS:
        raise ValueError(f"measure_basis must be 'xy' or 'uv', got {measure_basis!r}")
    if measure_basis == states.basis:
        return states.states, states.symbols
    return conjugate_images(states), BASIS_SYMBOLS[measure_basis]


def bob_error_rate(states: JointSignalStates, measure_basis: str) -> float:
    """Receiver error rate for the given basis, probes marginalized out.

    For the basis the circuit was built in this reads the stored images; for
    the conjugate basis the images are first formed as the +/- combinations
    of the stored ones (the circuit is linear).
    """
    pair, symbols = _measured_pair(states, measure_basis)
    err = 0.0
    for state, symbol in zip(pair, symbols):
        proj = _SYMBOL_PROJECTORS[symbol]
        err += 1.0 - measure_projector(state, proj, (0,))
    return 0.5 * err


def conditional_disturbance(states: JointSignalStates,
                            outcomes: Sequence[int],
                            symbol: str) -> float | None:
    """Receiver error probability conditioned on one outcome per attacker.

    ``symbol`` must belong to the basis conjugate to the circuit's signal
    basis; ``outcomes`` lists one projector label per attacker.  Returns None
    when the conditioning event has probability zero.
    """
    scenario = states.scenario
    if len(outcomes) != scenario.n:
        raise ValueError(
            f"need one outcome per attacker ({scenario.n}), got {len(outcomes)}")
    conj = CONJUGATE_BASIS[states.basis]
    conj_symbols = BASIS_SYMBOLS[conj]
    if symbol not in conj_symbols:
        raise ValueError(
            f"symbol must be one of {conj_symbols} for a {states.basis} circuit, "
            f"got {symbol!r}")
    signal = conjugate_images(states)[conj_symbols.index(symbol)]
    projectors = pair_projectors(states.basis)

    n = signal.num_qubits
    amps = signal.amplitudes
    for j, lam in enumerate(outcomes, start=1):
        if not 0 <= int(lam) <= 3:
            raise ValueError(f"outcome label {lam!r} not in 0..3")
        amps = project_raw(amps, n, projectors[int(lam)],
                           scenario.probe_qubits(j))
    denominator = float(signal.amplitudes @ amps)
    if denominator <= 0.0:
        return None

    # numerator adds the receiver's correct-symbol projector on the signal qubit
    numerator = float(signal.amplitudes @ project_raw(
        amps, n, _SYMBOL_PROJECTORS[symbol], (0,)))
    return 1.0 - numerator / denominator


@dataclass(frozen=True)
class EveReport:
    """Numeric per-attacker summary (statevector provenance)."""

    index: int
    gain: float
    gain_spread: float
    mutual_information: float
    degenerate_gamma: bool


@dataclass(frozen=True)
class ClosedFormReference:
    """Analytic values for a symmetric scenario (closed-form provenance)."""

    gains: tuple[float, ...]
    mutual_informations: tuple[float, ...]
    error_rate: float


@dataclass(frozen=True)
class AnalysisReport:
    """Full numeric report for one scenario.

    ``error_rate`` is the rate in the basis conjugate to the signal basis --
    the quantity the chained closed forms describe; both per-basis rates are
    kept alongside.  ``optimal_information`` is None when the error rate
    exceeds 1/2 (outside the reference curve's domain).
    """

    scenario: AttackScenario
    eves: tuple[EveReport, ...]
    error_rate_xy: float
    error_rate_uv: float
    error_rate: float
    receiver_information: float
    optimal_information: float | None
    closed_form: ClosedFormReference | None

    def to_dict(self) -> dict:
        return {
            "input": {
                "basis": self.scenario.signal_basis,
                "eavesdroppers": [
                    {"delta_uv": e.delta_uv, "d_xy": e.d_xy,
                     "symmetric": e.is_symmetric}
                    for e in self.scenario.eves
                ],
            },
            "eavesdroppers": [
                {"index": e.index, "gain": e.gain, "gain_spread": e.gain_spread,
                 "mutual_information_bits": e.mutual_information,
                 "degenerate_gamma": e.degenerate_gamma,
                 "provenance": "statevector"}
                for e in self.eves
            ],
            "receiver": {
                "error_rate_xy": self.error_rate_xy,
                "error_rate_uv": self.error_rate_uv,
                "error_rate": self.error_rate,
                "mutual_information_bits": self.receiver_information,
                "provenance": "statevector",
            },
            "reference": {
                "optimal_information_bits": self.optimal_information,
                "closed_form": None if self.closed_form is None else {
                    "gains": list(self.closed_form.gains),
                    "mutual_informations_bits": list(
                        self.closed_form.mutual_informations),
                    "error_rate": self.closed_form.error_rate,
                },
                "provenance": "closed-form",
            },
        }


def _weighted_gain(table: EveOutcomeTable) -> tuple[float, float]:
    """Outcome-probability-weighted mean gain and max-min spread."""
    reachable = table.reachable
    gains = table.gain[reachable]
    weights = table.outcome_prob[reachable]
    if gains.size == 0:  # pragma: no cover - requires an empty table
        return 0.0, 0.0
    mean = float(gains @ weights / np.sum(weights))
    return mean, float(np.max(gains) - np.min(gains))


def analyze_states(states: JointSignalStates) -> AnalysisReport:
    """Numeric report from already-built joint states."""
    scenario = states.scenario
    eves = []
    for j in range(1, scenario.n + 1):
        povm = povm_for_eve(states, j)
        table = outcome_table(states, povm)
        gain, spread = _weighted_gain(table)
        eves.append(EveReport(index=j, gain=gain, gain_spread=spread,
                              mutual_information=mutual_information(table),
                              degenerate_gamma=povm.degenerate_gamma))
    err_xy = bob_error_rate(states, "xy")
    err_uv = bob_error_rate(states, "uv")
    err = err_uv if scenario.signal_basis == "xy" else err_xy
    optimal = (closedform.optimal_information(err)
               if err <= 0.5 + closedform.RANGE_TOL else None)

    reference = None
    if scenario.is_symmetric:
        # effective disturbance per attacker in the conjugate basis: d_xy for
        # x-y circuits, its dual (= delta_uv for a symmetric strategy) for u-v
        effective = tuple(
            e.d_xy if scenario.signal_basis == "xy" else e.delta_uv
            for e in scenario.eves)
        reference = ClosedFormReference(
            gains=closedform.gains(effective),
            mutual_informations=closedform.mutual_informations(effective),
            error_rate=closedform.bob_error_recursive(effective),
        )
    return AnalysisReport(
        scenario=scenario,
        eves=tuple(eves),
        error_rate_xy=err_xy,
        error_rate_uv=err_uv,
        error_rate=err,
        receiver_information=alice_bob_information(err),
        optimal_information=optimal,
        closed_form=reference,
    )


def analyze(scenario: AttackScenario) -> AnalysisReport:
    """Build the scenario's joint states and produce the full numeric report."""
    return analyze_states(build_joint_states(scenario))
