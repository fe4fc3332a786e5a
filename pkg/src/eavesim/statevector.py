"""Exact real-amplitude statevector simulation of small qubit registers.

States live in registers of up to ``DEFAULT_QUBIT_CEILING`` qubits, with the
convention that bit ``k`` of a computational-basis index encodes qubit ``k``
(qubit 0 is the least significant bit).  The computational basis is written
``x = 0``, ``y = 1``; the conjugate basis is ``u = (x + y)/sqrt(2)``,
``v = (x - y)/sqrt(2)``.

All circuits used here are chains of CNOT gates acting on states prepared
with nonnegative real coefficients, so amplitudes are kept as real float64
throughout.  CNOTs are applied as index permutations (bit manipulation), not
matrix products: applying the same gate twice restores the original
amplitudes bit-for-bit, which the test suite relies on.

Density matrices and projectors are plain symmetric numpy arrays; reduced
matrices returned by :func:`partial_trace` are validated for unit trace and
symmetry on the way out.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

# Register size guard: 21 qubits keeps one state under ~17 MB and a full
# analysis (a handful of live states) comfortably in memory.
DEFAULT_QUBIT_CEILING = 21

# Tolerance for identities that hold exactly up to float rounding
# (normalization, trace of a reduced matrix, projector idempotence).
NORM_TOL = 1e-12

# Orthogonal change of basis between {x, y} and {u, v}; its own inverse.
BASIS_CHANGE = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


class StateVector:
    """Normalized real-amplitude pure state on ``num_qubits`` qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes: Sequence[float] | np.ndarray, *,
                 ceiling: int = DEFAULT_QUBIT_CEILING) -> None:
        amps = np.asarray(amplitudes, dtype=np.float64).reshape(-1)
        dim = amps.size
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"amplitude vector length {dim} is not a power of two >= 2")
        n = dim.bit_length() - 1
        if n > ceiling:
            raise ValueError(
                f"register ceiling exceeded: {n} qubits requested, ceiling is {ceiling}")
        norm_sq = float(amps @ amps)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum of squares = {norm_sq!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        self.num_qubits = n
        self.amplitudes = amps

    @classmethod
    def computational(cls, num_qubits: int, index: int, *,
                      ceiling: int = DEFAULT_QUBIT_CEILING) -> "StateVector":
        """Basis state |index> where bit k of ``index`` is qubit k."""
        if not 0 <= index < (1 << num_qubits):
            raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(1 << num_qubits)
        amps[index] = 1.0
        return cls(amps, ceiling=ceiling)

    @classmethod
    def qubit(cls, amp_x: float, amp_y: float) -> "StateVector":
        """Single-qubit state amp_x|x> + amp_y|y>."""
        return cls([amp_x, amp_y])

    def norm_squared(self) -> float:
        return float(self.amplitudes @ self.amplitudes)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"StateVector(num_qubits={self.num_qubits})"


def tensor(*states: StateVector, ceiling: int = DEFAULT_QUBIT_CEILING) -> StateVector:
    """Tensor product; the first factor occupies the lowest qubit indices."""
    if not states:
        raise ValueError("tensor() needs at least one state")
    amps = states[0].amplitudes
    for s in states[1:]:
        # kron(high, low): combined index = high_index << low_qubits | low_index
        amps = np.kron(s.amplitudes, amps)
    return StateVector(amps, ceiling=ceiling)


def _check_qubit(state: StateVector, qubit: int, role: str) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(
            f"{role} qubit {qubit} out of range for a {state.num_qubits}-qubit register")


def apply_cnot_xy(state: StateVector, control: int, target: int) -> StateVector:
    """CNOT in the x-y basis: flips the target bit where the control bit is y.

    Implemented as an exact index permutation of the amplitude vector.
    """
    _check_qubit(state, control, "control")
    _check_qubit(state, target, "target")
    if control == target:
        raise ValueError(f"control and target coincide (qubit {control})")
    idx = np.arange(state.amplitudes.size)
    perm = idx ^ (((idx >> control) & 1) << target)
    return StateVector(state.amplitudes[perm], ceiling=state.num_qubits)


def apply_cnot_uv(state: StateVector, control: int, target: int) -> StateVector:
    """CNOT whose control/target roles are read in the u-v basis.

    A CNOT expressed in the conjugate basis exchanges its control with its
    target: flipping the target's u-v component where the control's u-v
    component is v is, amplitude for amplitude, the x-y CNOT with the two
    roles swapped.
    """
    return apply_cnot_xy(state, target, control)


def apply_basis_change(state: StateVector, qubit: int) -> StateVector:
    """Rotate one qubit between the x-y and u-v frames (self-inverse)."""
    _check_qubit(state, qubit, "rotated")
    n = state.num_qubits
    axis = n - 1 - qubit  # C-order reshape puts qubit n-1 on axis 0
    tens = state.amplitudes.reshape([2] * n)
    tens = np.moveaxis(np.tensordot(BASIS_CHANGE, tens, axes=(1, axis)), 0, axis)
    return StateVector(tens.reshape(-1), ceiling=n)


def inner_product(a: StateVector, b: StateVector) -> float:
    """Real inner product <a|b>."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits")
    return float(a.amplitudes @ b.amplitudes)


def _split_axes(n: int, front: Sequence[int]) -> list[int]:
    """Tensor axes reordered so ``front`` qubits (descending) come first.

    Flattening the leading axes then yields a row index whose bit j encodes
    the j-th smallest qubit of ``front``, matching the register convention.
    """
    rest = [q for q in range(n) if q not in front]
    order = [n - 1 - q for q in sorted(front, reverse=True)]
    order += [n - 1 - q for q in sorted(rest, reverse=True)]
    return order


def _as_matrix(state: StateVector, qubits: Sequence[int]) -> np.ndarray:
    """Amplitudes as a (2^k, 2^(n-k)) matrix with ``qubits`` indexing rows."""
    n = state.num_qubits
    k = len(qubits)
    tens = state.amplitudes.reshape([2] * n)
    tens = np.transpose(tens, _split_axes(n, qubits))
    return tens.reshape(1 << k, -1)


def _validated_qubit_set(num_qubits: int, qubits: Iterable[int],
                         what: str) -> list[int]:
    qs = sorted(set(int(q) for q in qubits))
    if not qs:
        raise ValueError(f"{what} qubit set is empty")
    if qs[0] < 0 or qs[-1] >= num_qubits:
        raise ValueError(
            f"{what} qubit set {qs} out of range for a {num_qubits}-qubit register")
    return qs


def partial_trace(state: StateVector, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix over ``keep``, in register bit order.

    Bit j of the reduced index encodes the j-th smallest kept qubit.  The
    result is validated to have unit trace and to be symmetric within
    ``NORM_TOL``.
    """
    kept = _validated_qubit_set(state.num_qubits, keep, "kept")
    mat = _as_matrix(state, kept)
    rho = mat @ mat.T
    trace = float(np.trace(rho))
    if abs(trace - 1.0) > NORM_TOL:
        raise ValueError(f"reduced matrix trace {trace!r} deviates from 1")
    if np.max(np.abs(rho - rho.T)) > NORM_TOL:
        raise ValueError("reduced matrix is not symmetric")
    return rho


def _check_projector(projector: np.ndarray, dim: int) -> np.ndarray:
    proj = np.asarray(projector, dtype=np.float64)
    if proj.shape != (dim, dim):
        raise ValueError(f"projector shape {proj.shape} does not match dimension {dim}")
    if np.max(np.abs(proj - proj.T)) > NORM_TOL:
        raise ValueError("projector is not symmetric")
    if np.max(np.abs(proj @ proj - proj)) > NORM_TOL:
        raise ValueError("projector is not idempotent")
    return proj


def project_raw(amplitudes: np.ndarray, num_qubits: int, projector: np.ndarray,
                on: Iterable[int]) -> np.ndarray:
    """Apply ``1 (x) projector`` to a raw amplitude vector.

    The input need not be normalized (conditioning chains shrink the norm);
    the projector must be an orthogonal projector (symmetric, idempotent
    within ``NORM_TOL``) on the qubits listed in ``on``, indexed with the
    same bit convention as :func:`partial_trace`.
    """
    qs = _validated_qubit_set(num_qubits, on, "measured")
    proj = _check_projector(projector, 1 << len(qs))
    tens = amplitudes.reshape([2] * num_qubits)
    order = _split_axes(num_qubits, qs)
    mat = proj @ np.transpose(tens, order).reshape(1 << len(qs), -1)
    inverse = np.argsort(order)
    return np.transpose(mat.reshape([2] * num_qubits), inverse).reshape(-1)


def measure_projector(state: StateVector, projector: np.ndarray,
                      on: Iterable[int]) -> float:
    """Outcome probability ``<state| 1 (x) projector |state>``."""
    projected = project_raw(state.amplitudes, state.num_qubits, projector, on)
    return float(state.amplitudes @ projected)
