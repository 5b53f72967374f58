"""Binary entropy, the uncertainty bounds of b-numbers and entropy inversion."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from bnumbers.errors import DomainError

MAX_BISECTION_STEPS = 200

_I_FORM = re.compile(r"^I\(\s*1\s*/\s*(\d+)\s*\)$")


def binary_entropy(p: float) -> float:
    """Entropy in bits of a two-outcome event with probability *p*.

    ``0 * log2(0)`` is taken to be 0, so ``binary_entropy(0) == 0``.
    """
    if not 0 <= p <= 1:
        raise DomainError(f"probability must lie in [0, 1], got {p}")
    if p == 0 or p == 1:
        return 0.0
    p = float(p)
    q = 1.0 - p
    return -p * math.log2(p) - q * math.log2(q)


def payload_bits(b: int) -> int:
    """Length of the shortest binary payload of *b*, i.e. ceil(log2(b + 1))."""
    return b.bit_length()


@dataclass(frozen=True)
class UncertaintyBounds:
    b: int
    lower: float
    upper: float

    def __iter__(self):
        yield self.lower
        yield self.upper


def entropy_bounds(b: int) -> UncertaintyBounds:
    """Uncertainty range of the b-number *b* between its two extreme codings.

    The lower end is the length code (all doubt in the payload), the upper
    end the binary code (all doubt in the sign bit).
    """
    if b < 1:
        raise DomainError(f"uncertainty bounds need b >= 1, got {b}")
    return UncertaintyBounds(
        b=b,
        lower=binary_entropy(1 / (b + 1)),
        upper=binary_entropy(1 / (payload_bits(b) + 1)),
    )


def inverse_entropy(e: float) -> float:
    """The probability p in [0, 0.5] with ``binary_entropy(p) == e``.

    Bisection on [0, 0.5], where the entropy is continuous and strictly
    increasing.  Stops when the bracket can no longer be split or after
    MAX_BISECTION_STEPS halvings.
    """
    if not 0 <= e <= 1:
        raise DomainError(f"binary entropy lies in [0, 1], got {e}")
    if e == 0:
        return 0.0
    if e == 1:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(MAX_BISECTION_STEPS):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if binary_entropy(mid) < e:
            lo = mid
        else:
            hi = mid
    if abs(binary_entropy(lo) - e) <= abs(binary_entropy(hi) - e):
        return lo
    return hi


def split_uncertainty(certain_bits: int, uncertain_group_size: int) -> float:
    """Entropy of deciding which of two bit groups has to be flipped.

    One group is a single bit (the sign, or the payload's lone partner), so
    the flip probability is 1/(L + 1) with L = total - 1 the payload length.
    """
    if certain_bits < 0 or uncertain_group_size < 0:
        raise DomainError("bit group sizes are natural numbers")
    total = certain_bits + uncertain_group_size
    if total == 0:
        raise DomainError("a representation has at least one bit")
    return binary_entropy(1 / total)


def parse_entropy(text: str) -> float:
    """Read an entropy value given as a decimal, a fraction or ``I(1/K)``.

    ``I(1/K)`` is evaluated by the same code path as the thresholds used
    internally, so ``parse_entropy("I(1/9)") == binary_entropy(1/9)``.
    """
    text = text.strip()
    m = _I_FORM.match(text)
    if m:
        k = int(m.group(1))
        if k == 0:
            raise DomainError("I(1/0) is undefined")
        return binary_entropy(1 / k)
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not an entropy value: {text!r}") from None
    return value


def parse_probability(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a probability: {text!r}") from None
