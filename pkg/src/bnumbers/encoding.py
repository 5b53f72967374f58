"""B-numbers: natural numbers written as ``payload|sign``.

The sign is the last bit and records how the root number zero is coded.
A sign of 1 means a 0 bit stands for zero (the normal convention), a sign
of 0 means a 1 bit stands for zero (the flipped convention).  A value can be
written either with the most efficient binary code, where only the sign is
in doubt, or with a length code, where only the number of payload bits
matters.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from bnumbers.errors import CapacityError, DomainError, MalformedRepresentationError

_COMPLEMENT = str.maketrans("01", "10")

# von Neumann terms roughly double in size with every step.
VON_NEUMANN_LIMIT = 16


class Scheme(enum.Enum):
    BINARY = "binary"
    LENGTH = "length"


class Convention(enum.Enum):
    NORMAL = "normal"
    FLIPPED = "flipped"

    @property
    def sign_bit(self) -> str:
        return _SIGN_BIT[self]

    @property
    def zero_bit(self) -> str:
        """The bit that codes the root number under this convention."""
        return _ZERO_BIT[self]

    @classmethod
    def from_sign(cls, sign: str) -> Convention:
        return cls.NORMAL if sign == "1" else cls.FLIPPED


_SIGN_BIT = {Convention.NORMAL: "1", Convention.FLIPPED: "0"}
_ZERO_BIT = {Convention.NORMAL: "0", Convention.FLIPPED: "1"}


def complement(bits: str) -> str:
    return bits.translate(_COMPLEMENT)


class BitString:
    """An immutable, non-empty string of bits whose last bit is the sign.

    ``str()`` renders the payload and sign separated by ``|``.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: str):
        if not bits:
            raise MalformedRepresentationError("empty bit string has no sign bit")
        if bits.strip("01"):
            raise MalformedRepresentationError(f"not a bit string: {bits!r}")
        self.bits = bits

    @classmethod
    def parse(cls, text: str) -> BitString:
        """Parse ``"101|1"``; without a ``|`` the last digit is the sign."""
        text = text.strip()
        if "|" in text:
            payload, sep, sign = text.rpartition("|")
            if len(sign) != 1 or "|" in payload:
                raise MalformedRepresentationError(f"expected 'payload|sign', got {text!r}")
            text = payload + sign
        return cls(text)

    @property
    def payload(self) -> str:
        return self.bits[:-1]

    @property
    def sign(self) -> str:
        return self.bits[-1]

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BitString):
            return self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        return f"{self.bits[:-1]}|{self.bits[-1]}"

    def __repr__(self) -> str:
        return f"BitString('{self}')"


_new = object.__new__
_BINARY, _LENGTH = Scheme.BINARY, Scheme.LENGTH
_FLIPPED = Convention.FLIPPED


def _bits(bits: str) -> BitString:
    # unchecked: caller guarantees a non-empty string over {0, 1}
    obj = _new(BitString)
    obj.bits = bits
    return obj


def encode(n: int, scheme: Scheme, convention: Convention) -> BitString:
    """Write the natural number *n* as ``payload ++ sign``."""
    if n < 0:
        raise DomainError(f"b-numbers are natural numbers, got {n}")
    if scheme is _BINARY:
        if convention is _FLIPPED:
            return _bits(bin(n)[2:].translate(_COMPLEMENT) + "0")
        return _bits(bin(n)[2:] + "1")
    return _bits(_ZERO_BIT[convention] * n + _SIGN_BIT[convention])


def decode(bits: BitString | str, scheme: Scheme) -> int:
    if not isinstance(bits, BitString):
        bits = BitString.parse(bits)
    raw = bits.bits
    if scheme is _LENGTH:
        return len(raw) - 1
    if len(raw) < 2:
        raise MalformedRepresentationError("binary b-numbers carry at least one payload bit")
    if raw[-1] == "0":
        return int(raw[:-1].translate(_COMPLEMENT), 2)
    return int(raw[:-1], 2)


def possible_encodings(n: int, scheme: Scheme) -> tuple[BitString, BitString]:
    """Both representations of *n*, one per belief about the root number."""
    return encode(n, scheme, Convention.NORMAL), encode(n, scheme, Convention.FLIPPED)


def dual(bits: BitString) -> BitString:
    return _bits(bits.bits.translate(_COMPLEMENT))


def increment(bits: BitString, scheme: Scheme) -> BitString:
    """Successor computed on the representation itself.

    Under the flipped convention the increment runs in the complemented
    domain: trailing 0s (ones) turn into 1s (zeros) and the carry lands on
    the first 1 (a zero), or a new leading 0 is prepended.
    """
    convention = Convention.from_sign(bits.sign)
    payload = bits.payload
    if scheme is Scheme.LENGTH:
        return BitString(payload + convention.zero_bit + bits.sign)
    if not payload:
        raise MalformedRepresentationError("binary b-numbers carry at least one payload bit")
    zero, one = convention.zero_bit, complement(convention.zero_bit)
    stem = payload.rstrip(one)
    carried = zero * (len(payload) - len(stem))
    if stem:
        payload = stem[:-1] + one + carried
    else:
        payload = one + carried
    return BitString(payload + bits.sign)


@dataclass(frozen=True)
class BNumber:
    value: int
    scheme: Scheme = Scheme.BINARY
    convention: Convention = Convention.NORMAL

    def __post_init__(self):
        if self.value < 0:
            raise DomainError(f"b-numbers are natural numbers, got {self.value}")

    @classmethod
    def parse(cls, text: str, scheme: Scheme) -> BNumber:
        bits = BitString.parse(text)
        return cls(decode(bits, scheme), scheme, Convention.from_sign(bits.sign))

    @property
    def bits(self) -> BitString:
        return encode(self.value, self.scheme, self.convention)

    def successor(self) -> BNumber:
        return successor(self)

    def __str__(self) -> str:
        return str(self.bits)


def successor(b: BNumber) -> BNumber:
    """The relaxed-Peano successor; scheme and convention are kept."""
    return BNumber(b.value + 1, b.scheme, b.convention)


@dataclass(frozen=True)
class SetTerm:
    """Nested-brace rendering of a von Neumann ordinal."""

    text: str
    ascii: bool = False

    def elements(self) -> list[str]:
        """Top-level members, split on commas at brace depth one."""
        empty = "{}" if self.ascii else "∅"
        if self.text == empty:
            return []
        inner = self.text[1:-1]
        members, depth, start = [], 0, 0
        for i, ch in enumerate(inner):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            elif ch == "," and depth == 0:
                members.append(inner[start:i])
                start = i + 1
        members.append(inner[start:])
        return members

    def __str__(self) -> str:
        return self.text


def von_neumann(n: int, ascii: bool = False, limit: int = VON_NEUMANN_LIMIT) -> SetTerm:
    """Render ``n = (n-1) ∪ {n-1}`` starting from ``0 = ∅``."""
    if n < 0:
        raise DomainError(f"ordinals are natural numbers, got {n}")
    if n > limit:
        raise CapacityError(f"von Neumann term for {n} exceeds the display limit {limit}")
    terms = ["{}" if ascii else "∅"]
    for _ in range(n):
        terms.append("{" + ",".join(terms) + "}")
    return SetTerm(terms[n], ascii)
