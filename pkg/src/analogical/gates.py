"""Reversible-gate engine over classical bit registers.

This engine reproduces the pointer-counting prediction with nothing but
reversible gates (NOT, CNOT, Toffoli) acting on registers whose bits are
strictly 0 or 1.  Pair arrays V2 (subcontext difference), W2 (outcome
difference), and P2 (both differ) are built once; then, for every
supracontext mask, the circuit builds the containment array C2, the
heterogeneity array H2, scans the negated H2 for zeros to decide
homogeneity, conditionally copies C2 into the analogy array A2, and
uncomputes every scratch register back to its preset.

Each per-mask circuit applies the identical operator sequence from
beginning to end: the homogeneity scan never exits early, because a
heterogeneous supracontext must run the same gates as a homogeneous one.
Masks are evaluated one at a time; results are independent of the order.

Matrix registers are kept flat in row-major order: entry (j, j') of an
m x m array lives at position k = (j - 1) * m + j', with j, j' and k
1-based.  All composite operators (the register comparator behind V2/W2,
the containment test, the homogeneity scan) are exact palindromes around
one flag-flipping gate, so applying the same gate sequence again is the
inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import (
    DEFAULT_N_CAP,
    Bits,
    Dataset,
    bits_to_str,
    check_lattice_size,
    difference_vector,
    int_to_bits,
    iter_masks,
)
from .homogeneity import AnalogicalSet, SupracontextVerdict

_fresh = itertools.count()


class BitRegister:
    """A named, fixed-length register of classical bits (strictly 0 or 1)."""

    __slots__ = ("name", "_bits")

    def __init__(self, name: str, bits: Sequence[int]):
        self.name = name
        checked = []
        for b in bits:
            if b != 0 and b != 1:
                raise ValueError(f"register {name!r}: bit value {b!r} is not 0 or 1")
            checked.append(int(b))
        self._bits = checked

    @classmethod
    def zeros(cls, name: str, length: int) -> "BitRegister":
        return cls(name, [0] * length)

    @classmethod
    def ones(cls, name: str, length: int) -> "BitRegister":
        return cls(name, [1] * length)

    @property
    def bits(self) -> Bits:
        return tuple(self._bits)

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, i: int) -> int:
        return self._bits[i]

    def __setitem__(self, i: int, value: int) -> None:
        if value != 0 and value != 1:
            raise ValueError(f"register {self.name!r}: bit value {value!r} is not 0 or 1")
        self._bits[i] = int(value)

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __repr__(self) -> str:
        return f"BitRegister({self.name!r}, {bits_to_str(self._bits)})"


@dataclass(frozen=True)
class GateStep:
    """One applied primitive: controls first, target last, with target snapshots."""

    op: str  # "not" | "cnot" | "ccnot"
    operands: tuple[tuple[str, int], ...]
    target_before: int
    target_after: int


class GateTrace:
    """Ordered log of applied primitives, replayable forward and backward.

    Registers are snapshotted when first tracked; :meth:`replay` reapplies
    every step to the snapshots and yields the final state, while
    :meth:`replay_inverse` applies the steps in reverse order (every
    primitive is its own inverse) and restores the initial state.  Capture
    is bounded by ``max_steps``; a truncated trace refuses to replay.
    """

    def __init__(self, max_steps: int = 200_000):
        self.max_steps = max_steps
        self.steps: list[GateStep] = []
        self.truncated = False
        self.initial: dict[str, Bits] = {}

    def track(self, reg: BitRegister) -> None:
        if reg.name not in self.initial:
            self.initial[reg.name] = reg.bits

    def record(self, op: str, operands: tuple[tuple[str, int], ...], before: int, after: int) -> None:
        if len(self.steps) >= self.max_steps:
            self.truncated = True
            return
        self.steps.append(GateStep(op, operands, before, after))

    def _apply(self, state: dict[str, list[int]], step: GateStep) -> None:
        target_name, target_idx = step.operands[-1]
        controls = step.operands[:-1]
        if all(state[name][idx] for name, idx in controls):
            state[target_name][target_idx] ^= 1

    def replay(self) -> dict[str, list[int]]:
        if self.truncated:
            raise RuntimeError("trace was truncated at max_steps and cannot replay")
        state = {name: list(bits) for name, bits in self.initial.items()}
        for step in self.steps:
            self._apply(state, step)
        return state

    def replay_inverse(self, state: dict[str, list[int]] | None = None) -> dict[str, list[int]]:
        if self.truncated:
            raise RuntimeError("trace was truncated at max_steps and cannot replay")
        if state is None:
            state = self.replay()
        else:
            state = {name: list(bits) for name, bits in state.items()}
        for step in reversed(self.steps):
            self._apply(state, step)
        return state


# --- primitive gates -------------------------------------------------------

def _not(reg: BitRegister, i: int, trace: GateTrace | None) -> None:
    before = reg._bits[i]
    reg._bits[i] = before ^ 1
    if trace is not None:
        trace.record("not", ((reg.name, i),), before, before ^ 1)


def _cnot(creg: BitRegister, ci: int, treg: BitRegister, ti: int, trace: GateTrace | None) -> None:
    before = treg._bits[ti]
    after = before ^ creg._bits[ci]
    treg._bits[ti] = after
    if trace is not None:
        trace.record("cnot", ((creg.name, ci), (treg.name, ti)), before, after)


def _ccnot(
    areg: BitRegister, ai: int,
    breg: BitRegister, bi: int,
    treg: BitRegister, ti: int,
    trace: GateTrace | None,
) -> None:
    before = treg._bits[ti]
    after = before ^ (areg._bits[ai] & breg._bits[bi])
    treg._bits[ti] = after
    if trace is not None:
        trace.record("ccnot", ((areg.name, ai), (breg.name, bi), (treg.name, ti)), before, after)


def _not_all(reg: BitRegister, trace: GateTrace | None) -> None:
    for i in range(len(reg)):
        _not(reg, i, trace)


def _check_bit(value: int, what: str) -> int:
    if value != 0 and value != 1:
        raise ValueError(f"{what} must be 0 or 1, got {value!r}")
    return int(value)


def gate_not(r) -> BitRegister:
    """NOT applied to every bit; involutive."""
    reg = r if isinstance(r, BitRegister) else BitRegister(f"r{next(_fresh)}", r)
    return BitRegister(reg.name, [b ^ 1 for b in reg])


def gate_ccnot(a: int, b: int, target: int) -> int:
    """Toffoli on plain bits: flip target iff both controls are 1."""
    a = _check_bit(a, "control a")
    b = _check_bit(b, "control b")
    target = _check_bit(target, "target")
    return target ^ (a & b)


# --- composite comparators --------------------------------------------------
#
# Both IDENTITY and INCLUSION share one reversible skeleton: compute one
# scratch bit per position (XOR of the operands for identity, AND for
# inclusion), negate the scratch, sweep an AND chain seeded by the ancilla
# across it, flip the flag off the chain end, then uncompute everything.
# The gate sequence is an exact palindrome around the flag flip, so running
# it a second time is the inverse.

def _comparator_apply(
    mode: str,
    u: BitRegister,
    v: BitRegister,
    ancilla: int,
    flag_reg: BitRegister,
    flag_idx: int,
    trace: GateTrace | None,
) -> int:
    """Apply the comparator skeleton; returns the ancilla after the op.

    mode "xor": flag flips iff u == v (bitwise equal).
    mode "and": flag flips iff u AND v is all zeros.
    Scratch and chain registers are created fresh, used, and uncomputed;
    the chain's seed slot holds the ancilla and is never written.
    """
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    n = len(u)
    uid = next(_fresh)
    scratch = BitRegister.zeros(f"cmp{uid}.scratch", n)
    chain = BitRegister(f"cmp{uid}.chain", [_check_bit(ancilla, "ancilla")] + [0] * n)
    if trace is not None:
        trace.track(u)
        trace.track(v)
        trace.track(flag_reg)
        trace.track(scratch)
        trace.track(chain)

    if mode == "xor":
        for i in range(n):
            _cnot(u, i, scratch, i, trace)
            _cnot(v, i, scratch, i, trace)
    else:
        for i in range(n):
            _ccnot(u, i, v, i, scratch, i, trace)
    _not_all(scratch, trace)
    for i in range(n):
        _ccnot(scratch, i, chain, i, chain, i + 1, trace)
    _cnot(chain, n, flag_reg, flag_idx, trace)
    for i in reversed(range(n)):
        _ccnot(scratch, i, chain, i, chain, i + 1, trace)
    _not_all(scratch, trace)
    if mode == "xor":
        for i in reversed(range(n)):
            _cnot(v, i, scratch, i, trace)
            _cnot(u, i, scratch, i, trace)
    else:
        for i in reversed(range(n)):
            _ccnot(u, i, v, i, scratch, i, trace)

    if any(scratch) or any(chain[i] for i in range(1, n + 1)):
        raise AssertionError(f"comparator scratch not uncomputed for {scratch.name}")
    return chain[0]


def _as_register(bits_or_reg, name: str) -> BitRegister:
    if isinstance(bits_or_reg, BitRegister):
        return bits_or_reg
    return BitRegister(name, bits_or_reg)


def gate_identity(u, v, ancilla: int = 1, flag: int = 1, trace: GateTrace | None = None) -> tuple[int, int]:
    """Reversible comparator: flag flips iff u equals v bitwise.

    With the presets (ancilla 1, flag 1) the returned flag is 0 when the
    registers are equal and 1 when they differ.  Returns (flag, ancilla);
    the ancilla always comes back restored.
    """
    uid = next(_fresh)
    u_reg = _as_register(u, f"id{uid}.u")
    v_reg = _as_register(v, f"id{uid}.v")
    flag_reg = BitRegister(f"id{uid}.flag", [_check_bit(flag, "flag")])
    ancilla_out = _comparator_apply("xor", u_reg, v_reg, ancilla, flag_reg, 0, trace)
    return flag_reg[0], ancilla_out


def gate_inclusion(mask, d, ancilla: int = 1, flag: int = 0, trace: GateTrace | None = None) -> tuple[int, int]:
    """Reversible containment test: flag flips iff mask AND d is all zeros.

    With the presets (ancilla 1, flag 0) the returned flag is 1 exactly
    when an exemplar with difference vector ``d`` lies in the supracontext
    selected by ``mask``.  Returns (flag, ancilla).
    """
    uid = next(_fresh)
    mask_reg = _as_register(mask, f"incl{uid}.mask")
    d_reg = _as_register(d, f"incl{uid}.d")
    flag_reg = BitRegister(f"incl{uid}.flag", [_check_bit(flag, "flag")])
    ancilla_out = _comparator_apply("and", mask_reg, d_reg, ancilla, flag_reg, 0, trace)
    return flag_reg[0], ancilla_out


def gate_inclusion_inverse(mask, d, ancilla: int, flag: int, trace: GateTrace | None = None) -> tuple[int, int]:
    """Undo :func:`gate_inclusion`: restores (ancilla, flag) to their presets.

    The containment circuit is its own mirror image, so the inverse applies
    the same gate sequence; flipping the flag by the same condition twice
    cancels.
    """
    return gate_inclusion(mask, d, ancilla, flag, trace)


# --- array builders ---------------------------------------------------------

def _flat_index(j: int, jp: int, m: int) -> int:
    # 1-based (j, j') row-major; 0-based into the flat register
    return (j - 1) * m + jp - 1


def _register_to_matrix(reg: BitRegister, m: int, offset: int = 0) -> np.ndarray:
    flat = np.array(reg.bits[offset:offset + m * m], dtype=np.uint8)
    return flat.reshape(m, m)


def _matrix_register(name: str, matrix, trace: GateTrace | None) -> tuple[BitRegister, int]:
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square bit matrix, got shape {arr.shape}")
    reg = BitRegister(name, [int(b) for b in arr.reshape(-1)])
    if trace is not None:
        trace.track(reg)
    return reg, arr.shape[0]


def _containment_scan(
    s_reg: BitRegister,
    d_regs: Sequence[BitRegister],
    y_reg: BitRegister,
    z_reg: BitRegister,
    c2_reg: BitRegister,
    trace: GateTrace | None,
) -> bool:
    """Fill C2 via nested containment tests, uncomputing each test after use.

    C2(j, j') becomes 1 iff both difference vectors are in the supracontext.
    Returns True when every ancilla and both flag registers came back to
    their presets.
    """
    m = len(d_regs)
    restored = True
    for j in range(1, m + 1):
        anc = _comparator_apply("and", s_reg, d_regs[j - 1], 1, y_reg, 0, trace)
        restored &= anc == 1
        for jp in range(1, m + 1):
            anc = _comparator_apply("and", s_reg, d_regs[jp - 1], 1, z_reg, 0, trace)
            restored &= anc == 1
            _ccnot(y_reg, 0, z_reg, 0, c2_reg, _flat_index(j, jp, m), trace)
            anc = _comparator_apply("and", s_reg, d_regs[jp - 1], 1, z_reg, 0, trace)
            restored &= anc == 1 and z_reg[0] == 0
        anc = _comparator_apply("and", s_reg, d_regs[j - 1], 1, y_reg, 0, trace)
        restored &= anc == 1 and y_reg[0] == 0
    return restored


def build_containment_array(
    ds: Dataset, given: Sequence[str], mask: Sequence[int], trace: GateTrace | None = None
) -> np.ndarray:
    """C2 for one supracontext: C2(j, j') = contained(j) AND contained(j')."""
    uid = next(_fresh)
    pfx = f"cont{uid}."
    s_reg = BitRegister(pfx + "S", mask)
    d_regs = [
        BitRegister(f"{pfx}D[{e.index}]", difference_vector(e.context, given))
        for e in ds.exemplars
    ]
    y_reg = BitRegister.zeros(pfx + "Y", 1)
    z_reg = BitRegister.zeros(pfx + "Z", 1)
    c2_reg = BitRegister.zeros(pfx + "C2", ds.m * ds.m)
    if trace is not None:
        for reg in (s_reg, *d_regs, y_reg, z_reg, c2_reg):
            trace.track(reg)
    _containment_scan(s_reg, d_regs, y_reg, z_reg, c2_reg, trace)
    return _register_to_matrix(c2_reg, ds.m)


def build_heterogeneity_array(c2, p2, trace: GateTrace | None = None) -> np.ndarray:
    """H2 = C2 AND P2 elementwise, via one Toffoli per entry."""
    uid = next(_fresh)
    c2_reg, m = _matrix_register(f"het{uid}.C2", c2, trace)
    p2_reg, m2 = _matrix_register(f"het{uid}.P2", p2, trace)
    if m != m2:
        raise ValueError(f"dimension mismatch: {m}x{m} vs {m2}x{m2}")
    h2_reg = BitRegister.zeros(f"het{uid}.H2", m * m)
    if trace is not None:
        trace.track(h2_reg)
    for k in range(m * m):
        _ccnot(c2_reg, k, p2_reg, k, h2_reg, k, trace)
    return _register_to_matrix(h2_reg, m)


def _ones_scan(h_reg: BitRegister, f_reg: BitRegister, trace: GateTrace | None, inverse: bool = False) -> None:
    # f_reg[0] is the trigger; positions 1..m^2 mirror h_reg positions 0..m^2-1
    m2 = len(h_reg)
    ks = range(m2, 0, -1) if inverse else range(1, m2 + 1)
    for k in ks:
        _ccnot(h_reg, k - 1, f_reg, k - 1, f_reg, k, trace)


def gate_ones(h_negated, trigger: int = 1, trace: GateTrace | None = None) -> tuple[int, np.ndarray]:
    """Conjunction sweep over an already-negated H2, with no early exit.

    Chains F(k) = h_negated(k) AND F(k-1) across all m^2 positions in
    row-major order, F(0) being the trigger.  The final bit is 1 exactly
    when every bit of ``h_negated`` is 1, i.e. when the original H2 held
    no heterogeneous pointer.  Returns (final flag, F as an m x m matrix).
    """
    uid = next(_fresh)
    h_reg, m = _matrix_register(f"ones{uid}.H", h_negated, trace)
    f_reg = BitRegister(f"ones{uid}.F", [_check_bit(trigger, "trigger")] + [0] * (m * m))
    if trace is not None:
        trace.track(f_reg)
    _ones_scan(h_reg, f_reg, trace)
    return f_reg[m * m], _register_to_matrix(f_reg, m, offset=1)


def gate_ones_inverse(h_negated, f, trigger: int = 1, trace: GateTrace | None = None) -> tuple[int, np.ndarray]:
    """Undo :func:`gate_ones` given the same negated H2 and the F state it left."""
    uid = next(_fresh)
    h_reg, m = _matrix_register(f"ones{uid}.H", h_negated, trace)
    f_arr = np.asarray(f).reshape(-1)
    f_reg = BitRegister(
        f"ones{uid}.F", [_check_bit(trigger, "trigger")] + [int(b) for b in f_arr]
    )
    if trace is not None:
        trace.track(f_reg)
    _ones_scan(h_reg, f_reg, trace, inverse=True)
    return f_reg[0], _register_to_matrix(f_reg, m, offset=1)


def build_analogy_array(c2, homog_flag, trace: GateTrace | None = None) -> np.ndarray:
    """A2 = C2 when the homogeneity flag is set, all zeros otherwise."""
    uid = next(_fresh)
    c2_reg, m = _matrix_register(f"ana{uid}.C2", c2, trace)
    flag_reg = BitRegister(f"ana{uid}.flag", [_check_bit(int(homog_flag), "flag")])
    a2_reg = BitRegister.zeros(f"ana{uid}.A2", m * m)
    if trace is not None:
        trace.track(flag_reg)
        trace.track(a2_reg)
    for k in range(m * m):
        _ccnot(c2_reg, k, flag_reg, 0, a2_reg, k, trace)
    return _register_to_matrix(a2_reg, m)


# --- the full pipeline ------------------------------------------------------

@dataclass(frozen=True)
class SupracontextCircuitResult:
    """Per-mask circuit outputs; the flag uses 1 = homogeneous."""

    mask: Bits
    c2: np.ndarray
    h2: np.ndarray
    homogeneous: bool
    a2: np.ndarray
    ancillas_restored: bool


@dataclass(frozen=True)
class CircuitRun:
    """Shared pair arrays plus one circuit result per supracontext mask."""

    v2: np.ndarray
    w2: np.ndarray
    p2: np.ndarray
    results: tuple[SupracontextCircuitResult, ...]

    def __iter__(self) -> Iterator[SupracontextCircuitResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __getitem__(self, i: int) -> SupracontextCircuitResult:
        return self.results[i]


def _outcome_codes(ds: Dataset) -> dict[str, Bits]:
    """Fixed-width binary code per outcome label, first appearance first."""
    order = ds.outcome_order
    width = max(1, (len(order) - 1).bit_length())
    return {o: int_to_bits(i, width) for i, o in enumerate(order)}


def run_qam_circuit(
    ds: Dataset,
    given: Sequence[str],
    *,
    n_cap: int = DEFAULT_N_CAP,
    trace: GateTrace | None = None,
) -> CircuitRun:
    """Run the full gate pipeline over all 2^n supracontexts.

    Builds V2, W2, P2 once, then per mask: C2 through nested containment
    tests, H2 = C2 AND P2, negate H2, sweep for the homogeneity flag,
    conditionally copy C2 into A2, then reverse the sweep and the negation
    so every scratch register ends at its preset.
    """
    check_lattice_size(ds.n, n_cap)
    m = ds.m
    codes = _outcome_codes(ds)

    d_regs = [
        BitRegister(f"D[{e.index}]", difference_vector(e.context, given))
        for e in ds.exemplars
    ]
    o_regs = [BitRegister(f"O[{e.index}]", codes[e.outcome]) for e in ds.exemplars]
    v2_reg = BitRegister.ones("V2", m * m)
    w2_reg = BitRegister.ones("W2", m * m)
    p2_reg = BitRegister.zeros("P2", m * m)
    if trace is not None:
        for reg in (*d_regs, *o_regs, v2_reg, w2_reg, p2_reg):
            trace.track(reg)

    for j in range(1, m + 1):
        for jp in range(1, m + 1):
            _comparator_apply("xor", d_regs[j - 1], d_regs[jp - 1], 1, v2_reg,
                              _flat_index(j, jp, m), trace)
    for j in range(1, m + 1):
        for jp in range(1, m + 1):
            _comparator_apply("xor", o_regs[j - 1], o_regs[jp - 1], 1, w2_reg,
                              _flat_index(j, jp, m), trace)
    for k in range(m * m):
        _ccnot(v2_reg, k, w2_reg, k, p2_reg, k, trace)

    results = []
    f_preset = (1,) + (0,) * (m * m)
    for mask in iter_masks(ds.n):
        pfx = f"m{bits_to_str(mask)}."
        s_reg = BitRegister(pfx + "S", mask)
        y_reg = BitRegister.zeros(pfx + "Y", 1)
        z_reg = BitRegister.zeros(pfx + "Z", 1)
        c2_reg = BitRegister.zeros(pfx + "C2", m * m)
        h2_reg = BitRegister.zeros(pfx + "H2", m * m)
        f_reg = BitRegister(pfx + "F", list(f_preset))
        a2_reg = BitRegister.zeros(pfx + "A2", m * m)
        if trace is not None:
            for reg in (s_reg, y_reg, z_reg, c2_reg, h2_reg, f_reg, a2_reg):
                trace.track(reg)

        restored = _containment_scan(s_reg, d_regs, y_reg, z_reg, c2_reg, trace)
        for k in range(m * m):
            _ccnot(c2_reg, k, p2_reg, k, h2_reg, k, trace)
        _not_all(h2_reg, trace)
        _ones_scan(h2_reg, f_reg, trace)
        homogeneous = f_reg[m * m] == 1
        for k in range(m * m):
            _ccnot(c2_reg, k, f_reg, m * m, a2_reg, k, trace)
        _ones_scan(h2_reg, f_reg, trace, inverse=True)
        _not_all(h2_reg, trace)

        restored &= f_reg.bits == f_preset
        results.append(
            SupracontextCircuitResult(
                mask=mask,
                c2=_register_to_matrix(c2_reg, m),
                h2=_register_to_matrix(h2_reg, m),
                homogeneous=homogeneous,
                a2=_register_to_matrix(a2_reg, m),
                ancillas_restored=bool(restored),
            )
        )

    return CircuitRun(
        v2=_register_to_matrix(v2_reg, m),
        w2=_register_to_matrix(w2_reg, m),
        p2=_register_to_matrix(p2_reg, m),
        results=tuple(results),
    )


def to_analogical_set(run: CircuitRun, ds: Dataset) -> AnalogicalSet:
    """Read the circuit outputs back into the pointer-counting vocabulary.

    Members come off the C2 diagonal, homogeneity off the circuit flag, and
    pointer counts off the surviving A2 entries (column j' targets the
    outcome of exemplar j').
    """
    outcomes = [e.outcome for e in ds.exemplars]
    counts: dict[str, int] = {o: 0 for o in ds.outcome_order}
    total = 0
    verdicts = []
    for r in run.results:
        members = tuple(j for j in range(1, ds.m + 1) if r.c2[j - 1, j - 1])
        verdicts.append(
            SupracontextVerdict(
                mask=r.mask,
                members=members,
                member_outcomes=tuple(outcomes[j - 1] for j in members),
                homogeneous=r.homogeneous,
                m=ds.m,
            )
        )
        total += int(r.a2.sum())
        for jp in range(1, ds.m + 1):
            counts[outcomes[jp - 1]] += int(r.a2[:, jp - 1].sum())
    return AnalogicalSet(verdicts=tuple(verdicts), outcome_counts=counts, total_pointers=total)
