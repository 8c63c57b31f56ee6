"""Dense state-vector simulation of Pauli sums and exponentiated generators.

Index convention (pinned by tests): qubit ``q`` is bit ``q`` of the amplitude
index, i.e. qubit 0 is the least significant bit.  Occupation-style labels
such as ``"1100"`` are read with qubit 0 as the *first* character, matching
the occupied-first ordering of reference states like ``|1...10...0>``.

Exponentials of pool generators are applied through the closed forms

    exp(-i t B) = cos(t) I - i sin(t) B              for involutory B (B^2 = I)
    exp(-i t B) = I + (cos(t) - 1) B^2 - i sin(t) B  for tripotent B (B^3 = B)

by repeated Pauli-sum application; the generator matrix is never formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, PauliSum

DENSE_DIAGONALIZATION_LIMIT = 12
MAX_SIMULATOR_QUBITS = 24
NORM_TOLERANCE = 1e-10

INVOLUTORY = "involutory"
TRIPOTENT = "tripotent"

_HAVE_BITCOUNT = hasattr(np, "bitwise_count")
_INDEX_CACHE: dict[int, np.ndarray] = {}


def _indices(n_qubits: int) -> np.ndarray:
    idx = _INDEX_CACHE.get(n_qubits)
    if idx is None:
        idx = np.arange(1 << n_qubits, dtype=np.int64)
        idx.setflags(write=False)
        _INDEX_CACHE[n_qubits] = idx
    return idx


def _parity(mask: int, idx: np.ndarray) -> np.ndarray:
    """Parity of ``popcount(mask & idx)`` per element, as 0/1 int8."""
    if _HAVE_BITCOUNT:
        return (np.bitwise_count(idx & mask) & 1).astype(np.int8)
    out = np.zeros(idx.shape, dtype=np.int8)
    m = mask
    while m:
        b = (m & -m).bit_length() - 1
        out ^= ((idx >> b) & 1).astype(np.int8)
        m &= m - 1
    return out


class StateVector:
    """2**n complex amplitudes; value-semantic and internally read-only."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes: np.ndarray, copy: bool = True):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size & (amps.size - 1) or amps.size == 1:
            raise ValueError(f"amplitude vector length {amps.size} is not 2**n, n>=1")
        if copy:
            amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "n_qubits", amps.size.bit_length() - 1)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


def basis_state(n_qubits: int, index: int) -> StateVector:
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, copy=False)


def occupation_index(occupations: str) -> int:
    """Amplitude index of an occupation label (qubit 0 = first character)."""
    if not all(ch in "01" for ch in occupations):
        raise ValueError(f"occupation string must be over 0/1, got {occupations!r}")
    return sum(1 << q for q, ch in enumerate(occupations) if ch == "1")


def occupation_basis_state(occupations: str) -> StateVector:
    return basis_state(len(occupations), occupation_index(occupations))


def uniform_minus_state(n_qubits: int) -> StateVector:
    """|->^n, the ground state of the non-interacting term sum_p X_p."""
    idx = _indices(n_qubits)
    signs = 1.0 - 2.0 * _parity((1 << n_qubits) - 1, idx)
    amps = signs.astype(np.complex128) / np.sqrt(1 << n_qubits)
    return StateVector(amps, copy=False)


def apply_pauli_string(
    state: StateVector, ps: PauliString, coeff: complex = 1.0
) -> StateVector:
    if ps.n_qubits != state.n_qubits:
        raise ValueError(f"size mismatch: {ps.n_qubits} vs {state.n_qubits} qubits")
    idx = _indices(state.n_qubits)
    phase = coeff * (1j) ** (ps.n_y % 4)
    signs = 1.0 - 2.0 * _parity(ps.z, idx)
    out = np.empty_like(state.amplitudes)
    out[idx ^ ps.x] = (phase * signs) * state.amplitudes
    return StateVector(out, copy=False)


def apply_pauli_sum(state: StateVector, h: PauliSum) -> StateVector:
    """Return ``h |state>`` (not normalized in general)."""
    if h.n_qubits != state.n_qubits:
        raise ValueError(f"size mismatch: {h.n_qubits} vs {state.n_qubits} qubits")
    idx = _indices(state.n_qubits)
    out = np.zeros_like(state.amplitudes)
    for ps, coeff in h:
        phase = coeff * (1j) ** (ps.n_y % 4)
        signs = 1.0 - 2.0 * _parity(ps.z, idx)
        # idx ^ x is a permutation, so fancy-indexed += has no collisions.
        out[idx ^ ps.x] += (phase * signs) * state.amplitudes
    return StateVector(out, copy=False)


def apply_one_qubit_gate(state: StateVector, gate: np.ndarray, qubit: int) -> StateVector:
    """Apply a 2x2 gate on one qubit (used for measurement basis changes)."""
    n = state.n_qubits
    arr = state.amplitudes.reshape([2] * n)
    # numpy reshape of the little-endian index puts qubit n-1 on axis 0.
    axis = n - 1 - qubit
    arr = np.moveaxis(arr, axis, -1)
    arr = arr @ np.asarray(gate, dtype=np.complex128).T
    arr = np.moveaxis(arr, -1, axis)
    return StateVector(arr.reshape(-1))


def expectation(state: StateVector, h: PauliSum) -> float:
    """``<state| h |state>`` for hermitian ``h``."""
    if not h.is_hermitian():
        raise ValueError("expectation requires a hermitian Pauli sum")
    value = np.vdot(state.amplitudes, apply_pauli_sum(state, h).amplitudes)
    if abs(value.imag) > NORM_TOLERANCE:
        raise AssertionError(f"imaginary residue {value.imag:g} in expectation")
    return float(value.real)


def inner_product(a: StateVector, b: StateVector) -> complex:
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"size mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(inner_product(a, b)) ** 2


def to_dense_matrix(h: PauliSum, limit: int = DENSE_DIAGONALIZATION_LIMIT) -> np.ndarray:
    """Dense matrix of a Pauli sum (small registers only)."""
    n = h.n_qubits
    if n > limit:
        raise ValueError(f"{n} qubits exceeds the dense limit ({limit})")
    idx = _indices(n)
    mat = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for ps, coeff in h:
        phase = coeff * (1j) ** (ps.n_y % 4)
        signs = 1.0 - 2.0 * _parity(ps.z, idx)
        mat[idx ^ ps.x, idx] += phase * signs
    return mat


def exact_ground_state(
    h: PauliSum, dense_limit: int = DENSE_DIAGONALIZATION_LIMIT
) -> tuple[float, StateVector]:
    """Lowest eigenvalue and eigenvector of the dense hermitian matrix of h.

    The eigenvector phase is fixed (largest-magnitude amplitude real and
    positive) so repeated calls are bit-identical.
    """
    if h.n_qubits > dense_limit:
        raise ValueError(f"{h.n_qubits} qubits exceeds the dense limit ({dense_limit})")
    if not h.is_hermitian():
        raise ValueError("exact_ground_state requires a hermitian Pauli sum")
    eigvals, eigvecs = np.linalg.eigh(to_dense_matrix(h, limit=dense_limit))
    vec = eigvecs[:, 0]
    pivot = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[pivot]) / vec[pivot])
    return float(eigvals[0]), StateVector(vec)


# ---------------------------------------------------------------------------
# Generators and ansatz replay
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """A pool element: hermitian Pauli sum plus its algebraic class.

    ``angle_scale`` absorbs any scalar prefactor of the printed generator so
    that ``body`` itself satisfies B^2 = I or B^3 = B exactly; the unitary
    applied for a step angle t is exp(-i * angle_scale * t * body).
    """

    gid: int
    label: str
    body: PauliSum
    kind: str  # INVOLUTORY or TRIPOTENT
    angle_scale: float = 1.0

    def __post_init__(self):
        if self.kind not in (INVOLUTORY, TRIPOTENT):
            raise ValueError(f"unknown algebraic class {self.kind!r}")


def apply_exp_generator(state: StateVector, gen: Generator, theta: float) -> StateVector:
    """Apply ``exp(-i * theta * angle_scale * body)`` via the closed form."""
    if gen.body.n_qubits != state.n_qubits:
        raise ValueError(
            f"size mismatch: {gen.body.n_qubits} vs {state.n_qubits} qubits"
        )
    t = gen.angle_scale * theta
    psi = state.amplitudes
    b_psi = apply_pauli_sum(state, gen.body).amplitudes
    if gen.kind == INVOLUTORY:
        out = np.cos(t) * psi - 1j * np.sin(t) * b_psi
    else:
        b2_psi = apply_pauli_sum(StateVector(b_psi, copy=False), gen.body).amplitudes
        out = psi + (np.cos(t) - 1.0) * b2_psi - 1j * np.sin(t) * b_psi
    result = StateVector(out, copy=False)
    if abs(state.norm() - 1.0) < 1e-9 and abs(result.norm() - 1.0) > NORM_TOLERANCE:
        raise AssertionError(
            f"norm drifted to {result.norm():.12g}; generator {gen.label} misclassified?"
        )
    return result


# ---------------------------------------------------------------------------
# Ansatz
# ---------------------------------------------------------------------------

_WRAP = 2.0 * np.pi


def wrap_angle(theta: float) -> float:
    """Map an angle into [-pi, pi)."""
    return float((theta + np.pi) % _WRAP - np.pi)


@dataclass(frozen=True)
class InitialState:
    """Named state preparation: computational basis string, |->^n, or custom."""

    kind: str  # "basis" | "uniform-minus" | "custom"
    occupations: str | None = None
    vector: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "basis":
            if self.occupations is None:
                raise ValueError("basis initial state needs an occupation string")
        elif self.kind == "custom":
            if self.vector is None:
                raise ValueError("custom initial state needs an amplitude vector")
        elif self.kind != "uniform-minus":
            raise ValueError(f"unknown initial state kind {self.kind!r}")

    def prepare(self, n_qubits: int) -> StateVector:
        if self.kind == "basis":
            if len(self.occupations) != n_qubits:
                raise ValueError(
                    f"occupation string {self.occupations!r} is not {n_qubits} qubits"
                )
            return occupation_basis_state(self.occupations)
        if self.kind == "uniform-minus":
            return uniform_minus_state(n_qubits)
        state = StateVector(self.vector)
        if state.n_qubits != n_qubits:
            raise ValueError(f"custom vector is {state.n_qubits} qubits, need {n_qubits}")
        return state

    def describe(self) -> str:
        if self.kind == "basis":
            return f"basis:{self.occupations}"
        if self.kind == "uniform-minus":
            return "uniform-minus"
        return "custom"


@dataclass(frozen=True)
class Ansatz:
    """Ordered product of exponentiated pool generators on an initial state.

    Steps are ``(generator_id, angle)`` stored verbatim; replaying the steps
    on the initial state is deterministic bit-for-bit.  Drivers append
    canonical angles in [-pi, pi); angles are never wrapped here because a
    2*pi shift changes the unitary of a generator with a fractional angle
    scale.
    """

    n_qubits: int
    initial: InitialState
    steps: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "steps",
            tuple((int(g), float(t)) for g, t in self.steps),
        )

    def extended(self, gid: int, theta: float) -> "Ansatz":
        return Ansatz(self.n_qubits, self.initial, self.steps + ((gid, theta),))

    def with_angle(self, position: int, theta: float) -> "Ansatz":
        steps = list(self.steps)
        steps[position] = (steps[position][0], float(theta))
        return Ansatz(self.n_qubits, self.initial, tuple(steps))


def replay(ansatz: Ansatz, generators_by_id: dict[int, Generator]) -> StateVector:
    """Apply the ansatz steps in order to its initial state."""
    state = ansatz.initial.prepare(ansatz.n_qubits)
    for gid, theta in ansatz.steps:
        state = apply_exp_generator(state, generators_by_id[gid], theta)
    return state


def inverse_steps(ansatz: Ansatz) -> tuple[tuple[int, float], ...]:
    """Steps realizing the adjoint circuit: reversed order, negated angles."""
    return tuple((gid, -theta) for gid, theta in reversed(ansatz.steps))


def ansatz_to_text(ansatz: Ansatz, pool_name: str = "custom") -> str:
    """Serialize an ansatz (named preparations only) for replay elsewhere."""
    if ansatz.initial.kind == "custom":
        raise ValueError("custom initial vectors have no text form")
    lines = [
        "# ansatz v1",
        f"n_qubits {ansatz.n_qubits}",
        f"pool {pool_name}",
        f"initial {ansatz.initial.describe()}",
    ]
    for gid, theta in ansatz.steps:
        lines.append(f"step {gid} {theta:.17g}")
    return "\n".join(lines) + "\n"


def ansatz_from_text(text: str) -> tuple[Ansatz, str]:
    """Parse the ansatz text format; returns ``(ansatz, pool_name)``."""
    n_qubits = None
    pool_name = "custom"
    initial: InitialState | None = None
    steps: list[tuple[int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "n_qubits":
                n_qubits = int(tokens[1])
            elif tokens[0] == "pool":
                pool_name = tokens[1]
            elif tokens[0] == "initial":
                initial = parse_initial_state(tokens[1])
            elif tokens[0] == "step":
                steps.append((int(tokens[1]), float(tokens[2])))
            else:
                raise ValueError(f"unknown directive {tokens[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n_qubits is None or initial is None:
        raise ValueError("ansatz text must declare n_qubits and initial")
    return Ansatz(n_qubits, initial, tuple(steps)), pool_name


def parse_initial_state(spec: str) -> InitialState:
    """Parse ``basis:<bits>`` or ``uniform-minus`` descriptors."""
    if spec == "uniform-minus":
        return InitialState("uniform-minus")
    if spec.startswith("basis:"):
        return InitialState("basis", occupations=spec.split(":", 1)[1])
    raise ValueError(f"unknown initial state spec {spec!r}")
