"""Entropy reduction by padding.

A representation ``payload|sign`` is re-encoded as::

    [original payload length: 32 bits][payload][padding][sign]

with enough padding bits that the flip probability 1/(L + 1) of the
padded payload region falls to the target.  The padding repeats the bit
that codes zero under the sign's convention, or cycles through a supplied
bit pattern such as the machine's own code.  The length header makes the
padding removable, so the mapping has an exact inverse on its image.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import cycle, islice

from bnumbers.encoding import BitString, Convention
from bnumbers.entropy import binary_entropy, inverse_entropy
from bnumbers.errors import (
    CapacityError,
    DomainError,
    MalformedPaddingError,
    UnreachableTargetError,
)
from bnumbers.machine import (
    DEFAULT_STEP_LIMIT,
    Computation,
    RunResult,
    computation_uncertainty,
    decode_computation,
    run,
)

LENGTH_HEADER_BITS = 32
CONSTANT_FILL = "constant"
PROGRAM_FILL = "program"


def _check_epsilon(epsilon: float) -> None:
    if epsilon <= 0:
        raise UnreachableTargetError(
            f"uncertainty target {epsilon} is not positive; finite padding never removes all uncertainty"
        )
    if epsilon > 1:
        raise DomainError(f"binary entropy is at most 1, got target {epsilon}")


def required_region(epsilon: float) -> int:
    """Smallest payload length L >= 1 with I(1/(L + 1)) <= epsilon."""
    _check_epsilon(epsilon)
    p_star = inverse_entropy(epsilon)
    if p_star <= 0 or not math.isfinite(1 / p_star):
        raise UnreachableTargetError(f"uncertainty target {epsilon} is below float resolution")
    total = max(2, math.ceil(1 / p_star))
    # inverse_entropy is only accurate to rounding; settle the boundary on I itself
    while total > 2 and binary_entropy(1 / (total - 1)) <= epsilon:
        total -= 1
    while binary_entropy(1 / total) > epsilon:
        total += 1
    return total - 1


def padding_bits_needed(current_payload_length: int, epsilon: float) -> int:
    """Minimal number of bits to append so the payload reaches the target ratio."""
    if current_payload_length < 0:
        raise DomainError("payload length must be a natural number")
    return max(0, required_region(epsilon) - current_payload_length)


@dataclass(frozen=True)
class PaddingPlan:
    target_epsilon: float
    p_star: float
    original_length: int
    bits_to_add: int
    fill_pattern: str = CONSTANT_FILL

    @property
    def padded_length(self) -> int:
        return self.original_length + self.bits_to_add


def plan_padding(payload_length: int, epsilon: float, fill_pattern: str = CONSTANT_FILL) -> PaddingPlan:
    return PaddingPlan(
        target_epsilon=epsilon,
        p_star=inverse_entropy(epsilon) if 0 < epsilon <= 1 else 0.0,
        original_length=payload_length,
        bits_to_add=padding_bits_needed(payload_length, epsilon),
        fill_pattern=fill_pattern,
    )


@dataclass(frozen=True)
class PaddedString:
    bits: BitString
    length_header: int
    padding: int | None = None

    @classmethod
    def from_bits(cls, bits: BitString | str) -> PaddedString:
        if not isinstance(bits, BitString):
            bits = BitString.parse(bits)
        header = bits.bits[:LENGTH_HEADER_BITS]
        if len(header) < LENGTH_HEADER_BITS:
            raise MalformedPaddingError("padded string is shorter than its length header")
        return cls(bits, int(header, 2))

    def __str__(self) -> str:
        return str(self.bits)


def _fill(sign: str, count: int, pattern: str | None) -> str:
    if pattern is None:
        return Convention.from_sign(sign).zero_bit * count
    if not pattern or pattern.strip("01"):
        raise DomainError("fill pattern must be a non-empty bit string")
    return "".join(islice(cycle(pattern), count))


def apply_mapping(
    bits: BitString, epsilon: float, fill: str | None = None
) -> PaddedString:
    """Pad *bits* until its uncertainty is at most *epsilon*.

    *fill* is an optional bit pattern cycled through for the padding; the
    default repeats the zero code of the sign's convention.
    """
    _check_epsilon(epsilon)
    payload, sign = bits.payload, bits.sign
    if len(payload) >= 2**LENGTH_HEADER_BITS:
        raise CapacityError("payload does not fit the 32-bit length header")
    k = padding_bits_needed(len(payload), epsilon)
    header = format(len(payload), f"0{LENGTH_HEADER_BITS}b")
    out = header + payload + _fill(sign, k, fill) + sign
    return PaddedString(BitString(out), len(payload), k)


def invert_mapping(p: PaddedString) -> BitString:
    """Strip header and padding, returning the original representation."""
    raw = p.bits.bits
    if len(raw) < LENGTH_HEADER_BITS + 1:
        raise MalformedPaddingError("padded string is shorter than its length header")
    header = int(raw[:LENGTH_HEADER_BITS], 2)
    if header != p.length_header:
        raise MalformedPaddingError(
            f"embedded header {header} disagrees with recorded length {p.length_header}"
        )
    region = raw[LENGTH_HEADER_BITS:-1]
    if header > len(region):
        raise MalformedPaddingError(
            f"header claims {header} payload bits but the region holds {len(region)}"
        )
    if p.padding is not None and len(region) - header != p.padding:
        raise MalformedPaddingError(
            f"expected {p.padding} padding bits, found {len(region) - header}"
        )
    return BitString(region[:header] + raw[-1])


@dataclass(frozen=True)
class ReducedComputation:
    """``C' = (T', M(b), o)``: a computation whose encoding was padded.

    ``T'`` is realised operationally: strip the padding, then run ``T``.
    """

    padded: PaddedString
    plan: PaddingPlan

    @property
    def combined(self) -> str:
        return self.padded.bits.bits

    @property
    def output_bit(self) -> str:
        return self.padded.bits.sign

    def recover(self) -> Computation:
        return decode_computation(invert_mapping(self.padded).bits)


def reduce_computation(
    c: Computation, epsilon: float, fill_pattern: str = CONSTANT_FILL
) -> tuple[Computation | ReducedComputation, PaddingPlan]:
    """An equivalent computation whose uncertainty is strictly below *epsilon*.

    When *c* already meets the target strictly it is returned unchanged.
    Otherwise the encoding is padded; the length header itself adds bits,
    so meeting the ratio with equality still ends strictly below *epsilon*.
    """
    if fill_pattern not in (CONSTANT_FILL, PROGRAM_FILL):
        raise DomainError(f"unknown fill pattern {fill_pattern!r}")
    _check_epsilon(epsilon)
    bits = BitString(c.combined)
    plan = plan_padding(len(bits.payload), epsilon, fill_pattern)
    if plan.bits_to_add == 0 and computation_uncertainty(c).entropy < epsilon:
        return c, plan
    fill = c.machine_bits if fill_pattern == PROGRAM_FILL else None
    reduced = ReducedComputation(apply_mapping(bits, epsilon, fill), plan)
    return reduced, plan


def execute(c: Computation | ReducedComputation, step_limit: int = DEFAULT_STEP_LIMIT) -> RunResult:
    """Run the machine encoded in *c* on its input, removing padding first."""
    if isinstance(c, ReducedComputation):
        c = c.recover()
    return run(c.machine, c.input_payload, step_limit)
