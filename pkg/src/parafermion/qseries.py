"""Truncated integer q-series with a rational exponent offset."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple


def fmt_q(x) -> str:
    """Exact rational as ``"p/q"`` in lowest terms with ``q > 0``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class FormalQSeries:
    """``q^offset * sum_{j=0}^{cutoff} coeffs[j] q^j``.

    Coefficients beyond ``cutoff`` are unknown, not zero; arithmetic keeps
    only the range that is determined by both operands.
    """

    offset: Fraction
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least one known coefficient")

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    @property
    def max_exponent(self) -> Fraction:
        return self.offset + self.cutoff

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j]

    def coefficient_at(self, exponent) -> int:
        j = Fraction(exponent) - self.offset
        if j.denominator != 1 or j > self.cutoff:
            raise KeyError(f"exponent {exponent} outside the known range")
        return 0 if j < 0 else self.coeffs[int(j)]

    def first_nonzero(self) -> Optional[int]:
        return next((j for j, c in enumerate(self.coeffs) if c), None)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, cutoff: int) -> "FormalQSeries":
        if cutoff > self.cutoff:
            raise ValueError(f"cannot extend a series known to {self.cutoff} up to {cutoff}")
        return FormalQSeries(self.offset, self.coeffs[: cutoff + 1])

    def truncate_at_exponent(self, exponent) -> "FormalQSeries":
        j = Fraction(exponent) - self.offset
        if j.denominator != 1:
            raise ValueError("exponent not aligned with the series")
        return self.truncate(int(j))

    def shift(self, by) -> "FormalQSeries":
        return FormalQSeries(self.offset + Fraction(by), self.coeffs)

    def realign(self, offset) -> "FormalQSeries":
        """Same series written with a (smaller or equal) ``offset``."""
        d = self.offset - Fraction(offset)
        if d.denominator != 1 or d < 0:
            raise ValueError("realignment must lower the offset by an integer")
        d = int(d)
        return FormalQSeries(offset, (0,) * d + self.coeffs)

    def normalized(self) -> "FormalQSeries":
        """Move the offset to the first nonzero coefficient (zero series unchanged)."""
        j = self.first_nonzero()
        if not j:
            return self
        return FormalQSeries(self.offset + j, self.coeffs[j:])

    def __add__(self, other: "FormalQSeries") -> "FormalQSeries":
        off = min(self.offset, other.offset)
        top = min(self.max_exponent, other.max_exponent)
        if top < off:
            raise ValueError("no overlapping known range")
        a, b = self.realign(off), other.realign(off)
        n = int(top - off) + 1
        return FormalQSeries(off, tuple(a.coeffs[j] + b.coeffs[j] for j in range(n)))

    def __neg__(self) -> "FormalQSeries":
        return FormalQSeries(self.offset, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "FormalQSeries") -> "FormalQSeries":
        return self + (-other)

    def __mul__(self, other) -> "FormalQSeries":
        if isinstance(other, int):
            return FormalQSeries(self.offset, tuple(other * c for c in self.coeffs))
        n = min(self.cutoff, other.cutoff) + 1
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return FormalQSeries(self.offset + other.offset, tuple(out))

    __rmul__ = __mul__

    def same_as(self, other: "FormalQSeries") -> bool:
        """Agreement on the common known range, offsets included."""
        d = self.offset - other.offset
        if d.denominator != 1:
            return self.is_zero() and other.is_zero()
        lo = min(self.offset, other.offset)
        hi = min(self.max_exponent, other.max_exponent)
        e = lo
        while e <= hi:
            if self.coefficient_at(e) != other.coefficient_at(e):
                return False
            e += 1
        return True

    def to_json(self) -> Dict:
        return {"offset": fmt_q(self.offset), "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, doc: Dict) -> "FormalQSeries":
        return cls(parse_q(doc["offset"]), tuple(doc["coeffs"]))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], offset=0) -> "FormalQSeries":
        return cls(Fraction(offset), tuple(coeffs))

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}q^{j}" if j else str(c))
        body = " + ".join(terms) or "0"
        return f"q^({self.offset}) * ({body} + O(q^{self.cutoff + 1}))"


def euler_power(exponent: int, cutoff: int) -> FormalQSeries:
    """``prod_{n>=1} (1 - q^n)^exponent`` truncated at ``q^cutoff``.

    Negative exponents give colored partition counts.
    """
    c = [0] * (cutoff + 1)
    c[0] = 1
    if exponent >= 0:
        for _ in range(exponent):
            for n in range(1, cutoff + 1):
                for j in range(cutoff, n - 1, -1):
                    c[j] -= c[j - n]
    else:
        for _ in range(-exponent):
            for n in range(1, cutoff + 1):
                for j in range(n, cutoff + 1):
                    c[j] += c[j - n]
    return FormalQSeries(Fraction(0), tuple(c))


def series_sum(items: Sequence[FormalQSeries]) -> FormalQSeries:
    total = items[0]
    for s in items[1:]:
        total = total + s
    return total
