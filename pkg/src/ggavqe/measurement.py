"""Expectation backends, commuting-group measurement plans, and overlap
estimation.

Measurement convention (pinned): a string is estimated in the computational
basis after rotating each of its qubits, with H for an X letter and S-dagger
followed by H for a Y letter; Z letters need no rotation.  A plan group is a
per-qubit basis assignment plus the member strings measurable under it, so a
group costs one circuit regardless of how many members it carries.

Accounting counts one circuit-equivalent per (group, state) evaluation; an
unplanned exact expectation counts as a single evaluation and an unplanned
sampled expectation builds a deterministic greedy qubit-wise grouping and
counts its groups.  This makes the five-circuit Ising claim and the 2M+1 /
4M+1 screening totals machine-checkable from the run trace.

Sampled mode is deterministic given the seed: every evaluation derives its
own RNG stream from the seed plus the caller-supplied context tuple (purpose,
iteration, generator, ...), so parallel screening cannot reorder draws.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliString, PauliSum, qubitwise_commutes
from .simulator import (
    Generator,
    Ansatz,
    StateVector,
    apply_exp_generator,
    apply_one_qubit_gate,
    inner_product,
    replay,
    inverse_steps,
    expectation as exact_expectation,
    _indices,
    _parity,
)

MAX_SWAP_REGISTER = 24
DEFAULT_SHOTS = 2500

_H_GATE = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
_SDG_GATE = np.array([[1.0, 0.0], [0.0, -1.0j]], dtype=np.complex128)

# Context tags for RNG substreams.
CTX_ENERGY = 0
CTX_SCREEN = 1
CTX_PLAN = 2
CTX_OVERLAP = 3
CTX_SWEEP = 4
CTX_PAIR = 5


@dataclass(frozen=True)
class MeasurementGroup:
    """Strings measurable together under one per-qubit basis assignment."""

    basis: tuple[tuple[int, str], ...]  # (qubit, letter) for rotated qubits
    members: tuple[PauliString, ...]

    def basis_map(self) -> dict[int, str]:
        return dict(self.basis)

    def rotation_description(self) -> dict[int, str]:
        gates = {"X": "H", "Y": "Sdg;H", "Z": "none"}
        return {q: gates[letter] for q, letter in self.basis}


@dataclass(frozen=True)
class MeasurementPlan:
    n_qubits: int
    groups: tuple[MeasurementGroup, ...]

    def strings(self) -> set[PauliString]:
        out: set[PauliString] = set()
        for group in self.groups:
            out.update(group.members)
        return out

    def covers(self, h: PauliSum) -> bool:
        have = self.strings()
        return all(ps.is_identity() or ps in have for ps in h.strings())

    def validate(self) -> None:
        seen: set[PauliString] = set()
        for group in self.groups:
            basis = group.basis_map()
            for ps in group.members:
                if ps in seen:
                    raise ValueError(f"string {ps.label()} appears in two groups")
                seen.add(ps)
                for q in range(ps.n_qubits):
                    letter = ps.letter(q)
                    if letter != "I" and basis.get(q) != letter:
                        raise ValueError(
                            f"string {ps.label()} incompatible with group basis"
                        )
            for i, a in enumerate(group.members):
                for b in group.members[i + 1:]:
                    if not qubitwise_commutes(a, b):
                        raise ValueError(
                            f"{a.label()} and {b.label()} do not qubit-wise commute"
                        )


def group_from_members(n_qubits: int, members: list[PauliString]) -> MeasurementGroup:
    basis: dict[int, str] = {}
    for ps in members:
        for q in range(n_qubits):
            letter = ps.letter(q)
            if letter == "I":
                continue
            if basis.setdefault(q, letter) != letter:
                raise ValueError("members do not share a measurement basis")
    return MeasurementGroup(tuple(sorted(basis.items())), tuple(members))


def greedy_qubitwise_plan(h: PauliSum) -> MeasurementPlan:
    """Deterministic first-fit grouping of a sum's strings (canonical order)."""
    groups: list[list[PauliString]] = []
    for ps in h.strings():
        if ps.is_identity():
            continue
        for group in groups:
            if all(qubitwise_commutes(ps, member) for member in group):
                group.append(ps)
                break
        else:
            groups.append([ps])
    return MeasurementPlan(
        h.n_qubits, tuple(group_from_members(h.n_qubits, g) for g in groups)
    )


# ---------------------------------------------------------------------------
# Screening plans for spin chains
# ---------------------------------------------------------------------------


def plan_ising_screening(n_qubits: int) -> MeasurementPlan:
    """The five-circuit plan covering every screening observable of the
    transverse-field Ising chain with the minimal pool.

    Groups: (1) all-Z strings, (2) all-X strings, (3) Y_p Y_{p+1} pairs,
    (4)/(5) strings with a single X at even/odd position p flanked by Z
    letters (X_p Z_{p+1}, Z_{p-1} X_p, Z_{p-1} X_p Z_{p+1}).
    """
    if n_qubits < 3:
        raise ValueError("the Ising screening plan needs at least 3 qubits")
    n = n_qubits

    def s(ops: list[tuple[int, str]]) -> PauliString:
        return PauliString.from_ops(n, ops)

    all_z = [s([(p, "Z")]) for p in range(n - 1)]
    all_z += [s([(p, "Z"), (p + 1, "Z")]) for p in range(n - 1)]
    all_x = [s([(p, "X")]) for p in range(n)]
    all_y = [s([(p, "Y"), (p + 1, "Y")]) for p in range(n - 1)]
    parity_members: dict[int, list[PauliString]] = {0: [], 1: []}
    for q in range(n - 1):
        parity_members[q % 2].append(s([(q, "X"), (q + 1, "Z")]))
    for q in range(1, n - 1):
        parity_members[q % 2].append(s([(q - 1, "Z"), (q, "X")]))
        parity_members[q % 2].append(s([(q - 1, "Z"), (q, "X"), (q + 1, "Z")]))
    groups = [
        group_from_members(n, all_z),
        group_from_members(n, all_x),
        group_from_members(n, all_y),
        group_from_members(n, parity_members[0]),
        group_from_members(n, parity_members[1]),
    ]
    plan = MeasurementPlan(n, tuple(groups))
    plan.validate()
    return plan


def plan_general_chain_screening(
    n_qubits: int,
    has_hx: bool = True,
    has_hz: bool = True,
    has_jx: bool = True,
    has_jy: bool = True,
    has_jz: bool = True,
) -> MeasurementPlan:
    """Screening plan for general spin chains; at most ten circuits.

    Besides the all-Z/all-X/all-Y groups, strings with a single X flanked by
    Z letters (including the three-site Z_{p-2} Z_{p-1} X_p form) alternate
    over the X position modulo 3, and likewise for the X-with-Y-neighbours
    forms; residue classes keep overlapping three-site supports apart, which
    even/odd alternation cannot.  Empty groups (absent couplings for this
    instance) are dropped.
    """
    if n_qubits < 3:
        raise ValueError("the general-chain screening plan needs at least 3 qubits")
    n = n_qubits

    def s(ops: list[tuple[int, str]]) -> PauliString:
        return PauliString.from_ops(n, ops)

    def add_range(target: dict[int, set], lo: int, hi: int) -> None:
        for q in range(lo, hi):
            target.setdefault(q, set())

    # Per-form needed X positions, keyed by source couplings.
    z_singles: set[int] = set()
    if has_hz:
        z_singles.update(range(n))
    if has_hx:
        z_singles.update(range(n - 1))
    zz_bonds = set(range(n - 1)) if (has_jz or has_hx) else set()
    x_singles: set[int] = set()
    if has_hx:
        x_singles.update(range(n))
    if has_hz or has_jy:
        x_singles.update(range(n - 1))
    if has_jz:
        x_singles.update(range(1, n))
    xx_bonds = set(range(n - 1)) if has_jx else set()
    yy_bonds = set(range(n - 1)) if (has_jy or has_hx) else set()

    xz_right: set[int] = set()  # X_q Z_{q+1}
    xz_left: set[int] = set()  # Z_{q-1} X_q
    zxz: set[int] = set()  # Z_{q-1} X_q Z_{q+1}
    zzx: set[int] = set()  # Z_{q-2} Z_{q-1} X_q
    if has_jz:
        xz_right.update(range(n - 1))
        xz_left.update(range(1, n - 1))
        zxz.update(range(1, n - 1))
    if has_jx:
        xz_right.update(range(n - 2))
        xz_left.update(range(1, n))
        zzx.update(range(2, n))
    if has_hz:
        xz_left.update(range(1, n))
    xyy: set[int] = set(range(n - 2)) if has_jx else set()  # X_q Y_{q+1} Y_{q+2}
    yxy: set[int] = set(range(1, n - 1)) if has_jy else set()  # Y_{q-1} X_q Y_{q+1}

    groups: list[MeasurementGroup] = []
    members = [s([(q, "Z")]) for q in sorted(z_singles)]
    members += [s([(q, "Z"), (q + 1, "Z")]) for q in sorted(zz_bonds)]
    if members:
        groups.append(group_from_members(n, members))
    members = [s([(q, "X")]) for q in sorted(x_singles)]
    members += [s([(q, "X"), (q + 1, "X")]) for q in sorted(xx_bonds)]
    if members:
        groups.append(group_from_members(n, members))
    members = [s([(q, "Y"), (q + 1, "Y")]) for q in sorted(yy_bonds)]
    if members:
        groups.append(group_from_members(n, members))
    for residue in range(3):
        members = []
        for q in sorted(xz_right):
            if q % 3 == residue:
                members.append(s([(q, "X"), (q + 1, "Z")]))
        for q in sorted(xz_left):
            if q % 3 == residue:
                members.append(s([(q - 1, "Z"), (q, "X")]))
        for q in sorted(zxz):
            if q % 3 == residue:
                members.append(s([(q - 1, "Z"), (q, "X"), (q + 1, "Z")]))
        for q in sorted(zzx):
            if q % 3 == residue:
                members.append(s([(q - 2, "Z"), (q - 1, "Z"), (q, "X")]))
        if members:
            groups.append(group_from_members(n, members))
    for residue in range(3):
        members = []
        for q in sorted(xyy):
            if q % 3 == residue:
                members.append(s([(q, "X"), (q + 1, "Y"), (q + 2, "Y")]))
        for q in sorted(yxy):
            if q % 3 == residue:
                members.append(s([(q - 1, "Y"), (q, "X"), (q + 1, "Y")]))
        if members:
            groups.append(group_from_members(n, members))
    plan = MeasurementPlan(n, tuple(groups))
    plan.validate()
    return plan


# ---------------------------------------------------------------------------
# Backends
# ---------------------------------------------------------------------------


@dataclass
class Accounting:
    circuits: int = 0
    shots: int = 0
    clamp_warnings: int = 0

    def snapshot(self) -> dict[str, int]:
        return {
            "circuits": self.circuits,
            "shots": self.shots,
            "clamp_warnings": self.clamp_warnings,
        }


class ExpectationBackend:
    """Exact or shot-sampled evaluation of expectations and probabilities.

    Exact mode is deterministic; sampled mode is deterministic given the
    seed.  Accounting is monotone and thread-safe.
    """

    def __init__(self, mode: str = "exact", shots: int = DEFAULT_SHOTS, seed: int = 0):
        if mode not in ("exact", "sampled"):
            raise ValueError(f"unknown backend mode {mode!r}")
        if mode == "sampled" and shots <= 0:
            raise ValueError("sampled mode needs a positive shot count")
        self.mode = mode
        self.shots = shots
        self.seed = seed
        self.accounting = Accounting()
        self._lock = threading.Lock()
        self._counter = 0
        self._auto_plans: dict[tuple, MeasurementPlan] = {}

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    def describe(self) -> dict:
        out = {"mode": self.mode}
        if self.mode == "sampled":
            out["shots"] = self.shots
            out["seed"] = self.seed
        return out

    # -- internals ---------------------------------------------------------

    def _rng(self, context: tuple[int, ...]) -> np.random.Generator:
        if not context:
            with self._lock:
                self._counter += 1
                context = (0xADD0C, self._counter)
        key = tuple(int(c) & 0xFFFFFFFF for c in context)
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=key))

    def _count(self, circuits: int, shots: int = 0) -> None:
        with self._lock:
            self.accounting.circuits += circuits
            self.accounting.shots += shots

    def _auto_plan(self, h: PauliSum) -> MeasurementPlan:
        key = h.cache_key()
        plan = self._auto_plans.get(key)
        if plan is None:
            plan = greedy_qubitwise_plan(h)
            self._auto_plans[key] = plan
        return plan

    # -- expectations ------------------------------------------------------

    def expectation(
        self,
        state: StateVector,
        h: PauliSum,
        plan: MeasurementPlan | None = None,
        context: tuple[int, ...] = (),
    ) -> float:
        """<state| h |state>, through the plan when one is given."""
        if plan is None and self.is_exact:
            self._count(1)
            return exact_expectation(state, h)
        if not h.is_hermitian():
            raise ValueError("expectation requires a hermitian Pauli sum")
        if plan is None:
            plan = self._auto_plan(h)
        if not plan.covers(h):
            missing = [
                ps.label() for ps in h.strings()
                if not ps.is_identity() and ps not in plan.strings()
            ]
            raise ValueError(f"plan does not cover {missing}")
        values = self.measure_strings(state, plan, context=context)
        total = 0.0
        for ps, coeff in h:
            total += coeff.real * (1.0 if ps.is_identity() else values[ps])
        return total

    def measure_strings(
        self,
        state: StateVector,
        plan: MeasurementPlan,
        context: tuple[int, ...] = (),
    ) -> dict[PauliString, float]:
        """Estimate every member string of the plan on one state.

        Costs ``len(plan.groups)`` circuit-equivalents (times ``shots``
        samples each in sampled mode).
        """
        values: dict[PauliString, float] = {}
        for gidx, group in enumerate(plan.groups):
            rotated = state
            for q, letter in group.basis:
                if letter == "X":
                    rotated = apply_one_qubit_gate(rotated, _H_GATE, q)
                elif letter == "Y":
                    rotated = apply_one_qubit_gate(rotated, _SDG_GATE, q)
                    rotated = apply_one_qubit_gate(rotated, _H_GATE, q)
            probs = np.abs(rotated.amplitudes) ** 2
            if self.is_exact:
                weights = probs
            else:
                rng = self._rng(context + (gidx,))
                counts = rng.multinomial(self.shots, probs / probs.sum())
                weights = counts / float(self.shots)
            idx = _indices(state.n_qubits)
            for ps in group.members:
                signs = 1.0 - 2.0 * _parity(ps.support, idx)
                values[ps] = float(np.dot(weights, signs))
        self._count(
            len(plan.groups),
            0 if self.is_exact else self.shots * len(plan.groups),
        )
        return values

    def estimate_probability(self, p: float, context: tuple[int, ...] = ()) -> float:
        """One circuit whose outcome frequency estimates probability ``p``."""
        p = min(max(p, 0.0), 1.0)
        if self.is_exact:
            self._count(1)
            return p
        rng = self._rng(context)
        hits = rng.binomial(self.shots, p)
        self._count(1, self.shots)
        return hits / float(self.shots)

    def note_clamp(self) -> None:
        with self._lock:
            self.accounting.clamp_warnings += 1


def measure_expectation(
    backend: ExpectationBackend,
    state: StateVector,
    h: PauliSum,
    plan: MeasurementPlan | None = None,
    context: tuple[int, ...] = (),
) -> float:
    """Module-level convenience wrapper around ``backend.expectation``."""
    return backend.expectation(state, h, plan=plan, context=context)


# ---------------------------------------------------------------------------
# Overlap estimation
# ---------------------------------------------------------------------------


def overlap_compute_uncompute(
    backend: ExpectationBackend,
    ansatz_a: Ansatz,
    ansatz_b: Ansatz,
    generators_by_id: dict[int, Generator],
    context: tuple[int, ...] = (),
) -> float:
    """|<a|b>|^2 as the all-zeros probability of the compute-uncompute circuit.

    Simulates the inverse of ``ansatz_a`` applied to the replayed
    ``ansatz_b`` and projects on the initial state of ``ansatz_a``.
    """
    if ansatz_a.n_qubits != ansatz_b.n_qubits:
        raise ValueError("compute-uncompute needs equal register sizes")
    state = replay(ansatz_b, generators_by_id)
    for gid, theta in inverse_steps(ansatz_a):
        state = apply_exp_generator(state, generators_by_id[gid], theta)
    reference = ansatz_a.initial.prepare(ansatz_a.n_qubits)
    p_zero = abs(inner_product(reference, state)) ** 2
    return backend.estimate_probability(p_zero, context=context)


def overlap_swap_test(
    backend: ExpectationBackend,
    ansatz_a: Ansatz,
    ansatz_b: Ansatz,
    generators_by_id: dict[int, Generator],
    context: tuple[int, ...] = (),
) -> float:
    """|<a|b>|^2 via the ancilla SWAP test: p(0) = (1 + overlap) / 2.

    Builds the (2N+1)-qubit register |0> (x) |a> (x) |b>, applies H on the
    ancilla, the N controlled swaps, and H again; sampled estimates are
    clamped to [0, 1] with a warning counted on the backend.
    """
    n = ansatz_a.n_qubits
    if n != ansatz_b.n_qubits:
        raise ValueError("swap test needs equal register sizes")
    if 2 * n + 1 > MAX_SWAP_REGISTER:
        raise ValueError(
            f"swap test register 2*{n}+1 exceeds the simulator limit "
            f"({MAX_SWAP_REGISTER})"
        )
    phi = replay(ansatz_a, generators_by_id).amplitudes
    psi = replay(ansatz_b, generators_by_id).amplitudes
    # Ancilla is the top qubit: full index = anc*2^(2N) + i_phi*2^N + i_psi.
    joint = np.kron(phi, psi)
    dim = joint.size
    block0 = joint / np.sqrt(2.0)  # after H: (|0> + |1>)/sqrt(2) tensor joint
    block1_swapped = (
        joint.reshape(1 << n, 1 << n).T.reshape(dim) / np.sqrt(2.0)
    )  # controlled swap exchanges the two registers in the anc=1 block
    out0 = (block0 + block1_swapped) / np.sqrt(2.0)  # final H on the ancilla
    p_zero = float(np.vdot(out0, out0).real)
    p_est = backend.estimate_probability(p_zero, context=context)
    overlap = 2.0 * p_est - 1.0
    if overlap < 0.0 or overlap > 1.0:
        if not backend.is_exact:
            backend.note_clamp()
        overlap = min(max(overlap, 0.0), 1.0)
    return overlap


def overlap_exact(
    ansatz_a: Ansatz,
    ansatz_b: Ansatz,
    generators_by_id: dict[int, Generator],
) -> float:
    """Fidelity straight from the state vectors (the test oracle path)."""
    a = replay(ansatz_a, generators_by_id)
    b = replay(ansatz_b, generators_by_id)
    return abs(inner_product(a, b)) ** 2
