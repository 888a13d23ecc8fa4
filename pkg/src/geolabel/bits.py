"""Bit strings, fixed-width fields and Elias-gamma codes.

Labels are stored as a pair ``(value, length)`` where ``value`` is a Python
int whose binary expansion, left padded to ``length`` digits, is the bit
string read MSB first.
"""

from __future__ import annotations

from dataclasses import dataclass


class DecodeError(ValueError):
    """A label does not parse under its scheme's grammar."""


def clog2(n: int) -> int:
    """Return ceil(log2(n)) for n >= 1 (0 for n == 1)."""
    if n < 1:
        raise ValueError("clog2 needs n >= 1")
    return (n - 1).bit_length()


def gamma_length(x: int) -> int:
    return 2 * x.bit_length() - 1


@dataclass(frozen=True)
class Label:
    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError("label value does not fit its length")

    def __len__(self) -> int:
        return self.length

    def to_str(self) -> str:
        """Binary string, MSB first."""
        return format(self.bits, "b").zfill(self.length) if self.length else ""

    def flip(self, pos: int) -> "Label":
        """Copy with bit ``pos`` (0 = first/MSB) inverted."""
        if not 0 <= pos < self.length:
            raise IndexError(pos)
        return Label(self.bits ^ (1 << (self.length - 1 - pos)), self.length)

    def dump(self) -> str:
        width = (self.length + 3) // 4
        body = format(self.bits, "x").zfill(width) if width else ""
        return f"{self.length}:{body}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        try:
            length_s, body = text.strip().split(":")
            length = int(length_s)
            bits = int(body, 16) if body else 0
            return cls(bits, length)
        except ValueError as exc:
            raise DecodeError(f"bad label line {text!r}") from exc


class BitWriter:
    def __init__(self):
        self._value = 0
        self._length = 0

    def write(self, value: int, width: int) -> None:
        if width < 0 or value < 0 or value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        self._value = (self._value << width) | value
        self._length += width

    def bit(self, b: bool | int) -> None:
        self.write(1 if b else 0, 1)

    def gamma(self, x: int) -> None:
        """Elias-gamma code of x >= 1."""
        if x < 1:
            raise ValueError("gamma codes need x >= 1")
        nb = x.bit_length()
        self.write(0, nb - 1)
        self.write(x, nb)

    def label(self, lab: Label) -> None:
        self.write(lab.bits, lab.length)

    def finish(self) -> Label:
        return Label(self._value, self._length)


class BitReader:
    def __init__(self, label: Label):
        self._bits = label.bits
        self._length = label.length
        self.pos = 0

    @property
    def remaining(self) -> int:
        return self._length - self.pos

    def read(self, width: int) -> int:
        if width > self.remaining:
            raise DecodeError("label truncated")
        shift = self._length - self.pos - width
        self.pos += width
        return (self._bits >> shift) & ((1 << width) - 1)

    def bit(self) -> int:
        return self.read(1)

    def gamma(self) -> int:
        zeros = 0
        while True:
            if self.remaining == 0:
                raise DecodeError("unterminated gamma code")
            if self.read(1):
                break
            zeros += 1
        return (1 << zeros) | self.read(zeros)

    def label(self, length: int) -> Label:
        return Label(self.read(length), length)

    def done(self) -> None:
        if self.remaining:
            raise DecodeError(f"{self.remaining} trailing bits")
