"""Exact dense statevector simulation of Clifford+T circuits.

Convention, stated once and tested: qubit q corresponds to bit q of the
amplitude index, so qubit 0 is the least significant bit and amplitudes[i]
is the coefficient of |b_{n-1} ... b_1 b_0> with i = sum_q b_q 2^q.

All kernels act in place on a (2**n,) complex128 array via reshaped views;
every gate in the set is unitary, so the norm is preserved up to rounding.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# 22 qubits = 64 MiB of complex128 per state; hard cap against runaway memory.
MAX_QUBITS = 22

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_T_PHASE = complex(_INV_SQRT2, _INV_SQRT2)  # exp(i pi / 4)


class GateKind(enum.Enum):
    H = "H"
    S = "S"
    SDG = "SDG"
    T = "T"
    TDG = "TDG"
    X = "X"
    Y = "Y"
    Z = "Z"
    CNOT = "CNOT"
    SWAP = "SWAP"
    CPAULI = "CPAULI"


class ControlPolarity(enum.Enum):
    NONE = "none"
    ON_ONE = "on1"
    ON_ZERO = "on0"


PAULI_KINDS = (GateKind.X, GateKind.Y, GateKind.Z)

_SINGLE_QUBIT = frozenset(
    {GateKind.H, GateKind.S, GateKind.SDG, GateKind.T, GateKind.TDG,
     GateKind.X, GateKind.Y, GateKind.Z}
)
_TWO_QUBIT = frozenset({GateKind.CNOT, GateKind.SWAP, GateKind.CPAULI})

_INVERSE_KIND = {
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
}


@dataclass(frozen=True)
class Gate:
    """One gate application; two-qubit gates list the control first.

    `pauli` names which Pauli a CPAULI gate applies to its target and must be
    set exactly for that kind; `control_polarity` says whether the Pauli fires
    on the control being |1> or |0>.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    control_polarity: ControlPolarity = ControlPolarity.NONE
    pauli: GateKind | None = None

    def __post_init__(self):
        arity = 1 if self.kind in _SINGLE_QUBIT else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} takes {arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit indices in {self.kind.value} gate: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index: {self.qubits}")
        if self.kind is GateKind.CPAULI:
            if self.pauli not in PAULI_KINDS:
                raise ValueError("CPAULI requires pauli in {X, Y, Z}")
            if self.control_polarity is ControlPolarity.NONE:
                raise ValueError("CPAULI requires an explicit control polarity")
        else:
            if self.pauli is not None:
                raise ValueError(f"pauli field is only valid for CPAULI, not {self.kind.value}")
            if self.control_polarity is not ControlPolarity.NONE:
                raise ValueError(f"control_polarity is only valid for CPAULI, not {self.kind.value}")

    def inverse(self) -> "Gate":
        """The inverse gate: S<->SDG, T<->TDG, everything else self-inverse."""
        kind = _INVERSE_KIND.get(self.kind, self.kind)
        return Gate(kind, self.qubits, self.control_polarity, self.pauli)


# Terse constructors; circuits read much better with these.
def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def s(q: int) -> Gate:
    return Gate(GateKind.S, (q,))


def sdg(q: int) -> Gate:
    return Gate(GateKind.SDG, (q,))


def t(q: int) -> Gate:
    return Gate(GateKind.T, (q,))


def tdg(q: int) -> Gate:
    return Gate(GateKind.TDG, (q,))


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def y(q: int) -> Gate:
    return Gate(GateKind.Y, (q,))


def z(q: int) -> Gate:
    return Gate(GateKind.Z, (q,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


def controlled_pauli(
    pauli: GateKind,
    control: int,
    target: int,
    polarity: ControlPolarity = ControlPolarity.ON_ONE,
) -> Gate:
    return Gate(GateKind.CPAULI, (control, target), polarity, pauli)


@dataclass
class StateVector:
    """Dense n-qubit state; amplitudes owned exclusively during mutation."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"amplitude array must have length 2**{self.n_qubits}, "
                f"got shape {self.amplitudes.shape}"
            )

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        """The all-zeros computational basis state |0...0>."""
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


# ---------------------------------------------------------------------------
# gate kernels
# ---------------------------------------------------------------------------

def _halves(amps: np.ndarray, q: int):
    """Views of the bit-q = 0 and bit-q = 1 halves of the amplitude array."""
    m = amps.reshape(-1, 2, 1 << q)
    return m[:, 0, :], m[:, 1, :]


def _apply_single(amps: np.ndarray, kind: GateKind, q: int) -> None:
    lo, hi = _halves(amps, q)
    if kind is GateKind.H:
        a = lo.copy()
        np.add(a, hi, out=lo)
        lo *= _INV_SQRT2
        np.subtract(a, hi, out=hi)
        hi *= _INV_SQRT2
    elif kind is GateKind.S:
        hi *= 1j
    elif kind is GateKind.SDG:
        hi *= -1j
    elif kind is GateKind.T:
        hi *= _T_PHASE
    elif kind is GateKind.TDG:
        hi *= _T_PHASE.conjugate()
    elif kind is GateKind.Z:
        hi *= -1.0
    elif kind is GateKind.X:
        a = lo.copy()
        lo[...] = hi
        hi[...] = a
    elif kind is GateKind.Y:
        a = lo.copy()
        np.multiply(hi, -1j, out=lo)
        np.multiply(a, 1j, out=hi)
    else:  # pragma: no cover - guarded by Gate validation
        raise ValueError(f"not a single-qubit kind: {kind}")


def _fixed_bit_selector(n: int, fixed: dict[int, int]) -> tuple:
    """Index tuple into the (2,)*n tensor view fixing the given qubit bits."""
    sel: list[object] = [slice(None)] * n
    for q, bit in fixed.items():
        sel[n - 1 - q] = bit
    return tuple(sel)


def _apply_pauli_on_slices(view: np.ndarray, s0: tuple, s1: tuple, pauli: GateKind) -> None:
    if pauli is GateKind.X:
        a = view[s0].copy()
        view[s0] = view[s1]
        view[s1] = a
    elif pauli is GateKind.Y:
        a = view[s0].copy()
        view[s0] = view[s1] * (-1j)
        view[s1] = a * 1j
    else:  # Z
        view[s1] *= -1.0


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place; returns the same state for chaining."""
    n = state.n_qubits
    if any(q >= n for q in gate.qubits):
        raise ValueError(f"gate {gate.kind.value} on {gate.qubits} out of range for {n} qubits")
    amps = state.amplitudes
    if gate.kind in _SINGLE_QUBIT:
        _apply_single(amps, gate.kind, gate.qubits[0])
        return state

    view = amps.reshape((2,) * n)
    if gate.kind is GateKind.CNOT:
        control, target = gate.qubits
        s0 = _fixed_bit_selector(n, {control: 1, target: 0})
        s1 = _fixed_bit_selector(n, {control: 1, target: 1})
        _apply_pauli_on_slices(view, s0, s1, GateKind.X)
    elif gate.kind is GateKind.SWAP:
        a, b = gate.qubits
        s01 = _fixed_bit_selector(n, {a: 0, b: 1})
        s10 = _fixed_bit_selector(n, {a: 1, b: 0})
        tmp = view[s01].copy()
        view[s01] = view[s10]
        view[s10] = tmp
    else:  # CPAULI
        control, target = gate.qubits
        cbit = 1 if gate.control_polarity is ControlPolarity.ON_ONE else 0
        s0 = _fixed_bit_selector(n, {control: cbit, target: 0})
        s1 = _fixed_bit_selector(n, {control: cbit, target: 1})
        _apply_pauli_on_slices(view, s0, s1, gate.pauli)
    return state


def apply_circuit(state: StateVector, circuit) -> StateVector:
    """Apply a layered circuit in layer order, then intra-layer list order.

    The circuit may act on fewer qubits than the state holds (ancilla
    workflows apply an n-qubit circuit to an (n+1)-qubit register).
    """
    if circuit.n_qubits > state.n_qubits:
        raise ValueError(
            f"circuit on {circuit.n_qubits} qubits cannot act on a "
            f"{state.n_qubits}-qubit state"
        )
    for layer in circuit.layers:
        for gate in layer.gates:
            apply_gate(state, gate)
    return state


# ---------------------------------------------------------------------------
# state preparation and measurement
# ---------------------------------------------------------------------------

def prepare_t_state_product(n: int) -> StateVector:
    """(T H)^{tensor n} |0...0>: every qubit in (|0> + e^{i pi/4}|1>)/sqrt(2)."""
    if n < 1:
        raise ValueError("need at least one qubit")
    state = StateVector.zero(n)
    for q in range(n):
        apply_gate(state, h(q))
        apply_gate(state, t(q))
    return state


def entanglement_spectrum(state: StateVector, partition_size: int) -> np.ndarray:
    """Eigenvalues of the reduced density matrix of the low-index block, descending.

    The partition is the contiguous block of the `partition_size`
    lowest-indexed qubits.  Eigenvalues are the squared singular values of
    the amplitude array reshaped to 2**(n-k) x 2**k (k low bits as columns),
    zero-padded to the full 2**k count when the partition is the larger half.
    """
    n = state.n_qubits
    if not 1 <= partition_size < n:
        raise ValueError(f"partition_size must be in [1, {n - 1}], got {partition_size}")
    k = partition_size
    matrix = state.amplitudes.reshape(1 << (n - k), 1 << k)
    singular = np.linalg.svd(matrix, compute_uv=False)
    eigenvalues = np.zeros(1 << k)
    eigenvalues[: singular.size] = singular**2
    if eigenvalues.min() < -1e-12:
        raise ValueError(f"reduced density matrix eigenvalue below -1e-12: {eigenvalues.min()}")
    np.maximum(eigenvalues, 0.0, out=eigenvalues)
    eigenvalues[::-1].sort()
    return eigenvalues


def pauli_expectation(state: StateVector, pauli: GateKind, qubit: int) -> float:
    """<psi| P_qubit |psi> for P in {X, Y, Z}; always real."""
    if pauli not in PAULI_KINDS:
        raise ValueError(f"pauli must be one of X, Y, Z, got {pauli}")
    if not 0 <= qubit < state.n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    lo, hi = _halves(state.amplitudes, qubit)
    if pauli is GateKind.Z:
        return float(np.sum(np.abs(lo) ** 2) - np.sum(np.abs(hi) ** 2))
    cross = np.sum(np.conj(lo) * hi)
    if pauli is GateKind.X:
        return float(2.0 * cross.real)
    return float(2.0 * cross.imag)
