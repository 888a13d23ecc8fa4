"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError("exponent tuple length != nvars")
            c = _frac(c)
            if c:
                self.terms[tuple(exps)] = c

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.terms!r})"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __call__(self, values: Sequence) -> Fraction:
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        total = Fraction(0)
        for exps, c in self.terms.items():
            t = c
            for v, k in zip(values, exps):
                if k:
                    t *= v ** k
            total += t
        return total

    def substitute(self, fixed: Mapping[int, Fraction]) -> "Poly":
        """Plug in values for some variables; the result keeps the others, in order."""
        keep = [i for i in range(self.nvars) if i not in fixed]
        out: dict[tuple, Fraction] = {}
        for exps, c in self.terms.items():
            for i, v in fixed.items():
                if exps[i]:
                    c = c * _frac(v) ** exps[i]
            e = tuple(exps[i] for i in keep)
            out[e] = out.get(e, 0) + c
        return Poly(len(keep), out)

    def to_json(self) -> list:
        return [[list(e), [c.numerator, c.denominator]] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, nvars: int, data: list) -> "Poly":
        return cls(nvars, {tuple(e): Fraction(c[0], c[1]) for e, c in data})
