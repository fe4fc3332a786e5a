"""Probe preparation and construction of chained eavesdropping circuits.

Each eavesdropper couples a two-qubit probe to the transmitted qubit: a CNOT
copies the signal onto her first probe qubit (e), then a CNOT from her second
probe qubit (f) kicks a disturbance back onto the signal.  With the signal in
the u-v basis both gates act with control and target exchanged.  Attackers
act in order, each on the qubit the previous one released, so the register
layout is fixed: qubit 0 is the signal, attacker j owns qubits (2j-1, 2j).

A strategy is parametrized by the probe mixings ``delta_uv`` (probe e) and
``d_xy`` (probe f).  The two are tied by the self-inverse map
``p -> 1/2 - sqrt(p(1-p))``; a strategy is called symmetric when it disturbs
both conjugate bases equally, i.e. ``d_xy`` equals the dual of ``delta_uv``.

Note on the attack coefficients: the image of |x> under a single attack is
``a0|xxx> + a1|yxy> + a2|xyx> + a3|yyy>`` with ``a3 = sqrt(delta_uv * d_xy)``
-- all four coefficients carry the f-probe mixing ``d_xy``, anything else
would break normalization.  Amplitudes here are always produced by running
the circuit, never by transcribing coefficient formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .statevector import (
    DEFAULT_QUBIT_CEILING,
    StateVector,
    apply_cnot_uv,
    apply_cnot_xy,
    tensor,
)

SYMMETRY_TOL = 1e-12

#: Valid signal bases and the symbol labels of each.
BASIS_SYMBOLS = {"xy": ("x", "y"), "uv": ("u", "v")}

#: The conjugate partner of each basis.
CONJUGATE_BASIS = {"xy": "uv", "uv": "xy"}


def _check_unit_interval(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def delta_from_d(d: float) -> float:
    """Dual probe mixing 1/2 - sqrt(d(1-d)); self-inverse on [0, 1/2]."""
    d = _check_unit_interval(d, "d")
    return 0.5 - math.sqrt(d * (1.0 - d))


def d_from_delta(delta: float) -> float:
    """Inverse of :func:`delta_from_d` on [0, 1/2] (the same formula)."""
    delta = _check_unit_interval(delta, "delta")
    return 0.5 - math.sqrt(delta * (1.0 - delta))


@dataclass(frozen=True)
class EveParams:
    """One attacker's strategy: probe-e mixing ``delta_uv``, probe-f mixing ``d_xy``."""

    delta_uv: float
    d_xy: float

    def __post_init__(self) -> None:
        _check_unit_interval(self.delta_uv, "delta_uv")
        _check_unit_interval(self.d_xy, "d_xy")

    @property
    def d_uv(self) -> float:
        """Disturbance in the u-v basis implied by the probe-e mixing."""
        return d_from_delta(self.delta_uv)

    @property
    def is_symmetric(self) -> bool:
        """True when both conjugate bases are disturbed equally."""
        return abs(self.d_xy - self.d_uv) <= SYMMETRY_TOL

    @classmethod
    def symmetric(cls, d: float) -> "EveParams":
        """Symmetric strategy with disturbance ``d`` in both bases (d <= 1/2)."""
        d = float(d)
        if not 0.0 <= d <= 0.5:
            raise ValueError(
                f"symmetric strategies require d in [0, 1/2], got {d!r}; "
                "the delta/d duality is only a bijection on that branch")
        return cls(delta_uv=delta_from_d(d), d_xy=d)


@dataclass(frozen=True)
class AttackScenario:
    """An ordered chain of attackers plus the basis the signal is sent in."""

    eves: tuple[EveParams, ...]
    signal_basis: str = "xy"

    def __post_init__(self) -> None:
        object.__setattr__(self, "eves", tuple(self.eves))
        if self.signal_basis not in BASIS_SYMBOLS:
            raise ValueError(
                f"signal_basis must be 'xy' or 'uv', got {self.signal_basis!r}")

    @property
    def n(self) -> int:
        return len(self.eves)

    @property
    def num_qubits(self) -> int:
        return 1 + 2 * self.n

    @property
    def is_symmetric(self) -> bool:
        return all(e.is_symmetric for e in self.eves)

    def probe_qubits(self, eve_index: int) -> tuple[int, int]:
        """Register qubits (e, f) owned by 1-based attacker ``eve_index``."""
        if not 1 <= eve_index <= self.n:
            raise ValueError(
                f"eve_index {eve_index} out of range for {self.n} attacker(s)")
        return 2 * eve_index - 1, 2 * eve_index


def symmetric_scenario(d: tuple[float, ...] | list[float],
                       signal_basis: str = "xy") -> AttackScenario:
    """Scenario in which attacker j plays the symmetric strategy d[j-1]."""
    return AttackScenario(tuple(EveParams.symmetric(x) for x in d),
                          signal_basis=signal_basis)


def probe_state(mixing: float) -> StateVector:
    """Single probe qubit sqrt(1-mixing)|x> + sqrt(mixing)|y>.

    Re-expressed in the u-v basis the coefficients are sqrt(1-q), sqrt(q)
    with q the dual mixing of :func:`delta_from_d` (for mixing <= 1/2).
    """
    mixing = _check_unit_interval(mixing, "mixing")
    return StateVector.qubit(math.sqrt(1.0 - mixing), math.sqrt(mixing))


_SIGNAL_AMPS = {
    "x": (1.0, 0.0),
    "y": (0.0, 1.0),
    "u": (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)),
    "v": (1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0)),
}


@dataclass(frozen=True)
class JointSignalStates:
    """Post-attack images of the two signal symbols of one basis."""

    scenario: AttackScenario
    states: tuple[StateVector, StateVector]

    @property
    def basis(self) -> str:
        return self.scenario.signal_basis

    @property
    def symbols(self) -> tuple[str, str]:
        return BASIS_SYMBOLS[self.basis]


def run_attack_circuit(scenario: AttackScenario, signal: str, *,
                       ceiling: int = DEFAULT_QUBIT_CEILING,
                       miswire: bool = False) -> StateVector:
    """Send one symbol (any of x/y/u/v) through the scenario's circuit.

    ``miswire`` swaps control and target on every gate; it exists purely as a
    negative control for the verification suite and must stay off otherwise.
    """
    if signal not in _SIGNAL_AMPS:
        raise ValueError(f"unknown signal symbol {signal!r}")
    if scenario.num_qubits > ceiling:
        raise ValueError(
            f"register ceiling exceeded: {scenario.n} attacker(s) need "
            f"{scenario.num_qubits} qubits, ceiling is {ceiling}")
    factors = [StateVector.qubit(*_SIGNAL_AMPS[signal])]
    for eve in scenario.eves:
        factors.append(probe_state(eve.delta_uv))
        factors.append(probe_state(eve.d_xy))
    state = tensor(*factors, ceiling=ceiling)

    gate = apply_cnot_xy if scenario.signal_basis == "xy" else apply_cnot_uv
    for j in range(1, scenario.n + 1):
        e, f = scenario.probe_qubits(j)
        if miswire:
            state = gate(state, e, 0)
            state = gate(state, 0, f)
        else:
            state = gate(state, 0, e)
            state = gate(state, f, 0)
    return state


def build_joint_states(scenario: AttackScenario, *,
                       ceiling: int = DEFAULT_QUBIT_CEILING,
                       miswire: bool = False) -> JointSignalStates:
    """Post-attack images of both symbols of the scenario's signal basis."""
    s0, s1 = BASIS_SYMBOLS[scenario.signal_basis]
    return JointSignalStates(
        scenario=scenario,
        states=(run_attack_circuit(scenario, s0, ceiling=ceiling, miswire=miswire),
                run_attack_circuit(scenario, s1, ceiling=ceiling, miswire=miswire)),
    )


def conjugate_images(states: JointSignalStates) -> tuple[StateVector, StateVector]:
    """Images of the conjugate-basis symbols under the same circuit.

    The circuit is linear, so the image of (|s0> +/- |s1>)/sqrt(2) is the
    matching combination of the two stored images.
    """
    a, b = states.states
    ceiling = a.num_qubits
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    plus = StateVector((a.amplitudes + b.amplitudes) * inv_sqrt2, ceiling=ceiling)
    minus = StateVector((a.amplitudes - b.amplitudes) * inv_sqrt2, ceiling=ceiling)
    return plus, minus
