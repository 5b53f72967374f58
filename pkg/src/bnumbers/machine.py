"""Deterministic single-tape Turing machines over {0, 1, blank}.

Text format, one item per line, ``#`` starts a comment::

    states: q0 q1 qa qr
    start: q0
    accept: qa
    reject: qr
    q0 0 -> q0 0 R
    ...

Canonical bit layout (most significant bit first)::

    [num_states:8][start:8][accept:8][reject:8][num_transitions:16]
    per transition: [state:8][read:2][next:8][write:2][move:2]

A computation ``C = (T, b, o)`` is the machine bits, a 16-bit payload
length, the binary payload of the input and the output bit in last (sign)
position.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from bnumbers.encoding import Convention, Scheme, encode
from bnumbers.entropy import UncertaintyBounds, binary_entropy, entropy_bounds
from bnumbers.errors import (
    CapacityError,
    DeterminismError,
    DomainError,
    MachineError,
    MachineSyntaxError,
    MalformedRepresentationError,
)

BLANK = "_"
SYMBOLS = ("0", "1", BLANK)
MOVES = ("L", "R", "S")
SYMBOL_CODES = {"0": "00", "1": "01", BLANK: "10"}
MOVE_CODES = {"L": "00", "R": "01", "S": "10"}

MAX_STATES = 256
HEADER_BITS = 48
TRANSITION_BITS = 22
INPUT_LENGTH_BITS = 16
DEFAULT_STEP_LIMIT = 10**6
EXHAUSTIVE_LIMIT = 16

M1_DESCRIPTION = """\
# M1: accepts inputs whose last bit is 1
states: q0 q1 qa qr
start: q0
accept: qa
reject: qr
q0 0 -> q0 0 R
q0 1 -> q0 1 R
q0 _ -> q1 _ L
q1 1 -> qa 1 S
q1 0 -> qr 0 S
q1 _ -> qr _ S
"""

Transition = tuple[str, str, str]  # (next state, write symbol, move)


@dataclass(frozen=True)
class TuringMachine:
    states: tuple[str, ...]
    start: str
    accept: str
    reject: str
    transitions: dict[tuple[str, str], Transition] = field(hash=False)

    def __post_init__(self):
        declared = set(self.states)
        if len(declared) != len(self.states):
            raise MachineError("duplicate state names")
        for role in ("start", "accept", "reject"):
            if getattr(self, role) not in declared:
                raise MachineError(f"{role} state {getattr(self, role)!r} is not declared")
        if self.accept == self.reject:
            raise MachineError("accept and reject states must differ")
        for (state, symbol), (nxt, write, move) in self.transitions.items():
            if state not in declared or nxt not in declared:
                missing = state if state not in declared else nxt
                raise MachineError(f"transition uses undeclared state {missing!r}")
            if state in (self.accept, self.reject):
                raise MachineError(f"halting state {state!r} has an outgoing transition")
            if symbol not in SYMBOLS or write not in SYMBOLS:
                raise MachineError(f"unknown tape symbol in transition from {state!r}")
            if move not in MOVES:
                raise MachineError(f"unknown move {move!r}")

    def index(self, state: str) -> int:
        return self.states.index(state)

    def canonical_transitions(self) -> list[tuple[int, str, int, str, str]]:
        """Transitions as state indices, sorted by (state index, symbol code)."""
        pos = {s: i for i, s in enumerate(self.states)}
        rows = [
            (pos[state], symbol, pos[nxt], write, move)
            for (state, symbol), (nxt, write, move) in self.transitions.items()
        ]
        rows.sort(key=lambda r: (r[0], SYMBOL_CODES[r[1]]))
        return rows

    def equivalent(self, other: TuringMachine) -> bool:
        """Equal transition tables up to renaming states by position."""
        return (
            len(self.states) == len(other.states)
            and self.index(self.start) == other.index(other.start)
            and self.index(self.accept) == other.index(other.accept)
            and self.index(self.reject) == other.index(other.reject)
            and self.canonical_transitions() == other.canonical_transitions()
        )


def parse_machine(text: str) -> TuringMachine:
    header: dict[str, tuple[str, int]] = {}
    states: list[str] | None = None
    transitions: dict[tuple[str, str], Transition] = {}
    lines: dict[tuple[str, str], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            lhs, _, rhs = line.partition("->")
            left, right = lhs.split(), rhs.split()
            if len(left) != 2 or len(right) != 3:
                raise MachineSyntaxError("expected 'state symbol -> state symbol move'", lineno)
            state, symbol = left
            nxt, write, move = right
            if symbol not in SYMBOLS or write not in SYMBOLS:
                raise MachineSyntaxError(f"tape symbols are 0, 1 and {BLANK}", lineno)
            if move not in MOVES:
                raise MachineSyntaxError(f"move must be one of L, R, S, got {move!r}", lineno)
            if (state, symbol) in transitions:
                raise DeterminismError(
                    f"second rule for ({state}, {symbol}); first on line {lines[state, symbol]}",
                    lineno,
                )
            transitions[state, symbol] = (nxt, write, move)
            lines[state, symbol] = lineno
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("states", "start", "accept", "reject"):
            raise MachineSyntaxError(f"unrecognised line {raw.strip()!r}", lineno)
        if key in header or (key == "states" and states is not None):
            raise MachineSyntaxError(f"{key!r} given twice", lineno)
        if key == "states":
            states = value.split()
            if not states:
                raise MachineSyntaxError("empty state list", lineno)
        else:
            names = value.split()
            if len(names) != 1:
                raise MachineSyntaxError(f"{key!r} takes exactly one state", lineno)
            header[key] = (names[0], lineno)

    if states is None:
        raise MachineSyntaxError("missing 'states' line")
    for key in ("start", "accept", "reject"):
        if key not in header:
            raise MachineSyntaxError(f"missing {key!r} line")
    declared = set(states)
    for key, (name, lineno) in header.items():
        if name not in declared:
            raise MachineSyntaxError(f"{key} state {name!r} is not declared", lineno)
    for key, (nxt, _, _) in transitions.items():
        for name in (key[0], nxt):
            if name not in declared:
                raise MachineSyntaxError(f"undeclared state {name!r}", lines[key])

    try:
        return TuringMachine(
            states=tuple(states),
            start=header["start"][0],
            accept=header["accept"][0],
            reject=header["reject"][0],
            transitions=transitions,
        )
    except MachineError as exc:
        raise MachineSyntaxError(str(exc)) from None


def render_machine(m: TuringMachine) -> str:
    lines = [
        "states: " + " ".join(m.states),
        f"start: {m.start}",
        f"accept: {m.accept}",
        f"reject: {m.reject}",
    ]
    for i, symbol, j, write, move in m.canonical_transitions():
        lines.append(f"{m.states[i]} {symbol} -> {m.states[j]} {write} {move}")
    return "\n".join(lines) + "\n"


def serialize_machine(m: TuringMachine) -> str:
    """Canonical bit serialization; a 256-state machine stores 0 as its count."""
    if len(m.states) > MAX_STATES:
        raise CapacityError(f"{len(m.states)} states exceed the {MAX_STATES}-state layout")
    rows = m.canonical_transitions()
    parts = [
        format(len(m.states) % MAX_STATES, "08b"),
        format(m.index(m.start), "08b"),
        format(m.index(m.accept), "08b"),
        format(m.index(m.reject), "08b"),
        format(len(rows), "016b"),
    ]
    for i, symbol, j, write, move in rows:
        parts.append(
            format(i, "08b") + SYMBOL_CODES[symbol] + format(j, "08b")
            + SYMBOL_CODES[write] + MOVE_CODES[move]
        )
    return "".join(parts)


_SYMBOL_DECODE = {v: k for k, v in SYMBOL_CODES.items()}
_MOVE_DECODE = {v: k for k, v in MOVE_CODES.items()}


def _read_machine(bits: str, pos: int = 0) -> tuple[TuringMachine, int]:
    def take(width: int) -> str:
        nonlocal pos
        chunk = bits[pos:pos + width]
        if len(chunk) != width:
            raise MalformedRepresentationError("machine code is truncated")
        pos += width
        return chunk

    count = int(take(8), 2) or MAX_STATES
    start, accept, reject = (int(take(8), 2) for _ in range(3))
    n_rows = int(take(16), 2)
    if len(bits) - pos < n_rows * TRANSITION_BITS:
        raise MalformedRepresentationError("machine code is truncated")
    names = tuple(f"q{i}" for i in range(count))
    transitions: dict[tuple[str, str], Transition] = {}
    try:
        for _ in range(n_rows):
            i, symbol, j = int(take(8), 2), _SYMBOL_DECODE[take(2)], int(take(8), 2)
            write, move = _SYMBOL_DECODE[take(2)], _MOVE_DECODE[take(2)]
            if (names[i], symbol) in transitions:
                raise MalformedRepresentationError("machine code repeats a transition")
            transitions[names[i], symbol] = (names[j], write, move)
        machine = TuringMachine(names, names[start], names[accept], names[reject], transitions)
    except (KeyError, IndexError, MachineError) as exc:
        raise MalformedRepresentationError(f"invalid machine code: {exc}") from None
    return machine, pos


def deserialize_machine(bits: str) -> TuringMachine:
    machine, end = _read_machine(bits)
    if end != len(bits):
        raise MalformedRepresentationError(f"{len(bits) - end} trailing bits after machine code")
    return machine


class Verdict(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    STEP_LIMIT = "StepLimit"


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    steps: int
    final_tape: str

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT


def run(m: TuringMachine, input: str, step_limit: int = DEFAULT_STEP_LIMIT) -> RunResult:
    """Simulate *m* on a right-infinite tape holding *input* at cells 0..n-1.

    A left move at cell 0 stays put.  A missing transition halts with
    Reject.  Non-termination shows up as StepLimit, which never accepts.
    """
    if step_limit < 1:
        raise DomainError("step limit must be at least 1")
    if input.strip("01"):
        raise DomainError(f"input must be a bit string, got {input!r}")
    tape = list(input) or [BLANK]
    delta = m.transitions
    state, head, steps = m.start, 0, 0
    while True:
        if state == m.accept:
            verdict = Verdict.ACCEPT
            break
        if state == m.reject:
            verdict = Verdict.REJECT
            break
        if steps >= step_limit:
            verdict = Verdict.STEP_LIMIT
            break
        rule = delta.get((state, tape[head]))
        if rule is None:
            verdict = Verdict.REJECT
            break
        state, tape[head], move = rule
        steps += 1
        if move == "R":
            head += 1
            if head == len(tape):
                tape.append(BLANK)
        elif move == "L" and head > 0:
            head -= 1
    return RunResult(verdict, steps, "".join(tape).rstrip(BLANK))


@dataclass(frozen=True)
class WorstCase:
    n: int
    t_max: int
    witness: str
    hit_limit: bool = False


def _inputs(n: int, start: int = 0, stop: int | None = None):
    stop = 2**n if stop is None else stop
    for k in range(start, stop):
        yield format(k, f"0{n}b") if n else ""


def _chunk_max(args) -> tuple[int, int, bool]:
    m, n, start, stop, step_limit = args
    best, best_k, limited = -1, start, False
    for k, w in zip(range(start, stop), _inputs(n, start, stop)):
        r = run(m, w, step_limit)
        limited |= r.verdict is Verdict.STEP_LIMIT
        if r.steps > best:
            best, best_k = r.steps, k
    return best, best_k, limited


def worst_case_time(
    m: TuringMachine,
    n: int,
    step_limit: int = DEFAULT_STEP_LIMIT,
    *,
    parallel: bool = False,
    max_workers: int | None = None,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> WorstCase:
    """Maximum step count over all 2**n inputs of length n, by brute force.

    The witness is the lexicographically first input attaining the maximum,
    so parallel and sequential evaluation return identical results.
    """
    if n < 0:
        raise DomainError("input length must be a natural number")
    if n > exhaustive_limit:
        raise CapacityError(f"n={n} exceeds the exhaustive limit {exhaustive_limit}")
    total = 2**n
    if not parallel or total < 2:
        chunks = [_chunk_max((m, n, 0, total, step_limit))]
    else:
        workers = max_workers or min(8, os.cpu_count() or 1)
        size = -(-total // workers)
        jobs = [(m, n, s, min(s + size, total), step_limit) for s in range(0, total, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_chunk_max, jobs))
    best, best_k, limited = -1, 0, False
    for steps, k, lim in chunks:
        limited |= lim
        if steps > best:
            best, best_k = steps, k
    witness = format(best_k, f"0{n}b") if n else ""
    return WorstCase(n, best, witness, limited)


def runs_in_polynomial_time(worst: list[WorstCase], k: int) -> bool:
    """Check ``T(n) <= n**k + k`` on the measured worst cases."""
    return all(not w.hit_limit and w.t_max <= w.n**k + k for w in worst)


@dataclass(frozen=True)
class Computation:
    """The triple ``C = (T, b, o)`` flattened into one bit string."""

    machine_bits: str
    input_payload: str
    output_bit: str

    def __post_init__(self):
        if self.output_bit not in ("0", "1"):
            raise DomainError(f"output bit must be '0' or '1', got {self.output_bit!r}")
        if len(self.input_payload) >= 2**INPUT_LENGTH_BITS:
            raise CapacityError(
                f"input payload of {len(self.input_payload)} bits exceeds the 16-bit length field"
            )

    @property
    def combined(self) -> str:
        return (
            self.machine_bits
            + format(len(self.input_payload), f"0{INPUT_LENGTH_BITS}b")
            + self.input_payload
            + self.output_bit
        )

    @property
    def machine(self) -> TuringMachine:
        return deserialize_machine(self.machine_bits)


def encode_computation(m: TuringMachine, input_value: int, o: int | str) -> Computation:
    """Concatenate machine code, length-prefixed binary input and output bit.

    The output bit is taken as given; it is not checked against a run.
    """
    if input_value < 0:
        raise DomainError("input value must be a natural number")
    payload = encode(input_value, Scheme.BINARY, Convention.NORMAL).payload
    return Computation(serialize_machine(m), payload, str(o))


def decode_computation(combined: str) -> Computation:
    if combined.strip("01"):
        raise MalformedRepresentationError("computation encoding must be a bit string")
    _, pos = _read_machine(combined)
    length_field = combined[pos:pos + INPUT_LENGTH_BITS]
    if len(length_field) != INPUT_LENGTH_BITS:
        raise MalformedRepresentationError("computation encoding is truncated")
    length = int(length_field, 2)
    body = combined[pos + INPUT_LENGTH_BITS:]
    if len(body) != length + 1:
        raise MalformedRepresentationError(
            f"input length field says {length} bits, {len(body) - 1} present"
        )
    return Computation(combined[:pos], body[:-1], body[-1])


def computation_for(m: TuringMachine, input_value: int, step_limit: int = DEFAULT_STEP_LIMIT) -> Computation:
    """Encode *m* on *input_value* with the output bit obtained by running it."""
    payload = encode(input_value, Scheme.BINARY, Convention.NORMAL).payload
    o = "1" if run(m, payload, step_limit).accepted else "0"
    return encode_computation(m, input_value, o)


@dataclass(frozen=True)
class ComputationUncertainty:
    """Uncertainty of an encoded computation.

    ``entropy`` is I(1/(L+1)) for the L payload bits in front of the output
    bit.  ``extremes`` are the two bounds for the number L itself, whose
    lower end coincides with ``entropy``.
    """

    payload_length: int
    entropy: float
    extremes: UncertaintyBounds


def computation_uncertainty(c) -> ComputationUncertainty:
    """Uncertainty of anything exposing a ``combined`` bit string."""
    length = len(c.combined) - 1
    if length < 1:
        raise DomainError("a computation needs at least one bit before its output bit")
    return ComputationUncertainty(length, binary_entropy(1 / (length + 1)), entropy_bounds(length))


def load_m1() -> TuringMachine:
    return parse_machine(M1_DESCRIPTION)
