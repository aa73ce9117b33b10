"""Independent oracles for the test suite.

Everything here recomputes expected results from first principles (dense
matrix algebra, exhaustive path enumeration, literal compare-exchange runs)
and deliberately shares no code with the package kernels it checks.
"""
from __future__ import annotations

import numpy as np

from ctchaos.sim import ControlPolarity, Gate, GateKind

_SQ = 1.0 / np.sqrt(2.0)

MATRIX_1Q = {
    GateKind.H: np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    GateKind.S: np.diag([1.0, 1.0j]),
    GateKind.SDG: np.diag([1.0, -1.0j]),
    GateKind.T: np.diag([1.0, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1.0, np.exp(-1j * np.pi / 4)]),
    GateKind.X: np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    GateKind.Y: np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    GateKind.Z: np.diag([1.0, -1.0]).astype(complex),
}

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)


def embed_1q(u: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Lift a 2x2 operator to the full register; qubit 0 is the least significant bit."""
    full = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        full = np.kron(full, u if q == qubit else np.eye(2, dtype=complex))
    return full


def dense_gate_unitary(gate: Gate, n: int) -> np.ndarray:
    """Full 2^n x 2^n unitary of one gate, built from projectors and krons."""
    if gate.kind in MATRIX_1Q:
        return embed_1q(MATRIX_1Q[gate.kind], gate.qubits[0], n)
    if gate.kind is GateKind.CNOT:
        control, target = gate.qubits
        return embed_1q(_P0, control, n) + embed_1q(_P1, control, n) @ embed_1q(
            MATRIX_1Q[GateKind.X], target, n
        )
    if gate.kind is GateKind.SWAP:
        a, b = gate.qubits
        total = np.zeros((1 << n, 1 << n), dtype=complex)
        for i in range(1 << n):
            bit_a = (i >> a) & 1
            bit_b = (i >> b) & 1
            j = i & ~(1 << a) & ~(1 << b) | (bit_b << a) | (bit_a << b)
            total[j, i] = 1.0
        return total
    # CPAULI
    control, target = gate.qubits
    fire = _P1 if gate.control_polarity is ControlPolarity.ON_ONE else _P0
    rest = _P0 if gate.control_polarity is ControlPolarity.ON_ONE else _P1
    return embed_1q(rest, control, n) + embed_1q(fire, control, n) @ embed_1q(
        MATRIX_1Q[gate.pauli], target, n
    )


def dense_circuit_unitary(circuit, n: int | None = None) -> np.ndarray:
    """Matrix-chain product of all gates in application order."""
    n = circuit.n_qubits if n is None else n
    total = np.eye(1 << n, dtype=complex)
    for layer in circuit.layers:
        for gate in layer.gates:
            total = dense_gate_unitary(gate, n) @ total
    return total


def dense_reduced_density_matrix(amplitudes: np.ndarray, n: int, k: int) -> np.ndarray:
    """Partial trace over the high-index qubits via the explicit outer product."""
    rho = np.outer(amplitudes, amplitudes.conj())
    dim_a, dim_b = 1 << k, 1 << (n - k)
    # index i = hi * 2^k + lo, so reshape to (hi, lo, hi', lo') and trace hi.
    rho = rho.reshape(dim_b, dim_a, dim_b, dim_a)
    return np.einsum("hahb->ab", rho)


def dense_otoc(circuit, v: tuple[GateKind, int], w: tuple[GateKind, int]) -> complex:
    """<psi| W_t^dag V^dag W_t V |psi> with W_t = U^dag W U on |0...0>, dense."""
    n = circuit.n_qubits
    u = dense_circuit_unitary(circuit)
    v_full = embed_1q(MATRIX_1Q[v[0]], v[1], n)
    w_full = embed_1q(MATRIX_1Q[w[0]], w[1], n)
    w_t = u.conj().T @ w_full @ u
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    return complex(psi.conj() @ (w_t.conj().T @ v_full.conj().T @ w_t @ v_full @ psi))


# ---------------------------------------------------------------------------
# causal cover by exhaustive time-respecting path enumeration
# ---------------------------------------------------------------------------

def brute_force_covered_pairs(ms) -> set[tuple[int, int]]:
    """All ordered pairs joined by a path with strictly increasing step indices."""
    steps = [sorted(step) for step in ms.steps]
    n_steps = len(steps)
    covered: set[tuple[int, int]] = set()

    def walk(source: int, vertex: int, from_step: int) -> None:
        for t in range(from_step, n_steps):
            for a, b in steps[t]:
                if a == vertex or b == vertex:
                    other = b if a == vertex else a
                    covered.add((source, other))
                    walk(source, other, t + 1)
                    break  # a matching touches each vertex at most once per step

    for u in range(ms.n_vertices):
        walk(u, u, 0)
    return {(u, v) for u, v in covered if u != v}


# ---------------------------------------------------------------------------
# sorting-network semantics
# ---------------------------------------------------------------------------

def run_comparators(stages, values) -> list:
    """Apply compare-exchange stages to a value list and return the result."""
    out = list(values)
    for stage in stages:
        for lo, hi, ascending in stage:
            if (out[lo] > out[hi]) == ascending:
                out[lo], out[hi] = out[hi], out[lo]
    return out


def matching_as_function(n: int, matching) -> list[int]:
    """A matching of disjoint transpositions as an image list (involution)."""
    image = list(range(n))
    for u, v in matching:
        image[u], image[v] = image[v], image[u]
    return image


def compose_matchings(n: int, first, second) -> list[int]:
    """Image list of (second after first), both matchings of transpositions."""
    f = matching_as_function(n, first)
    s = matching_as_function(n, second)
    return [s[f[i]] for i in range(n)]
