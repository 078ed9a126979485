"""Truncated power series with exact rational coefficients.

A :class:`RationalSeries` holds coefficients c_0..c_N of a series truncated
at a fixed order N; all arithmetic stays inside ``fractions.Fraction``.  The
compositional inverse is solved order by order (the linear coefficient of the
unknown enters each new coefficient only through the invertible c_1), which
is all the transform calculus downstream needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError, OrderMismatch, VanishingFirstMoment

Rat = int | Fraction


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_fraction(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"cannot parse rational {text!r}") from None


def format_fraction(x: Fraction) -> str:
    """Render a fraction as "p/q" (or "p" when integral)."""
    return str(x)


@dataclass(frozen=True, slots=True)
class RationalSeries:
    """Coefficients (c_0, ..., c_N) of a series truncated at order N."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable[Rat]) -> "RationalSeries":
        return RationalSeries(tuple(_frac(v) for v in values))

    @staticmethod
    def zero(order: int) -> "RationalSeries":
        return RationalSeries((Fraction(0),) * (order + 1))

    @staticmethod
    def identity(order: int) -> "RationalSeries":
        """The series z."""
        c = [Fraction(0)] * (order + 1)
        if order >= 1:
            c[1] = Fraction(1)
        return RationalSeries(tuple(c))

    @staticmethod
    def constant(value: Rat, order: int) -> "RationalSeries":
        c = [Fraction(0)] * (order + 1)
        c[0] = _frac(value)
        return RationalSeries(tuple(c))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def _match(self, other: "RationalSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        self._match(other)
        return RationalSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        self._match(other)
        return RationalSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(tuple(-a for a in self.coeffs))

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        self._match(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return RationalSeries(tuple(out))

    def scale(self, factor: Rat) -> "RationalSeries":
        f = _frac(factor)
        return RationalSeries(tuple(f * a for a in self.coeffs))

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1])

    def shift_up(self) -> "RationalSeries":
        """Multiply by z (same truncation order; top coefficient drops off)."""
        return RationalSeries((Fraction(0),) + self.coeffs[:-1])

    def shift_down(self) -> "RationalSeries":
        """Divide by z; requires zero constant term.  Order drops by one."""
        if self.coeffs[0]:
            raise FormatError("cannot divide by z: nonzero constant term")
        return RationalSeries(self.coeffs[1:])

    def reciprocal(self) -> "RationalSeries":
        """1 / f for f with nonzero constant term."""
        if not self.coeffs[0]:
            raise VanishingFirstMoment("reciprocal needs a nonzero constant term")
        n = self.order
        inv0 = 1 / self.coeffs[0]
        out = [Fraction(0)] * (n + 1)
        out[0] = inv0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out[k] = -inv0 * acc
        return RationalSeries(tuple(out))

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """f(g) for g with zero constant term (Horner over truncated series)."""
        self._match(inner)
        if inner.coeffs[0]:
            raise FormatError("composition needs inner constant term zero")
        n = self.order
        out = RationalSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            out = out * inner + RationalSeries.constant(self.coeffs[k], n)
        return out

    def compositional_inverse(self) -> "RationalSeries":
        """The series h with f(h(z)) = z, for f = c_1 z + ... with c_1 != 0.

        Solved degree by degree: the degree-n coefficient of f(h) is
        c_1 h_n plus terms from lower-degree coefficients of h.
        """
        if self.coeffs[0]:
            raise FormatError("compositional inverse needs zero constant term")
        if not self.coeffs[1]:
            raise VanishingFirstMoment("compositional inverse needs c_1 != 0")
        n = self.order
        h = [Fraction(0)] * (n + 1)
        if n >= 1:
            h[1] = 1 / self.coeffs[1]
        for k in range(2, n + 1):
            cur = self.compose(RationalSeries(tuple(h))).coeffs[k]
            h[k] = -cur / self.coeffs[1]
        return RationalSeries(tuple(h))

    def derivative(self) -> "RationalSeries":
        """Termwise derivative (order drops by one)."""
        return RationalSeries(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def __str__(self) -> str:
        return "[" + ", ".join(format_fraction(c) for c in self.coeffs) + "]"


def series_compositional_inverse(f: RationalSeries) -> RationalSeries:
    """Module-level alias for :meth:`RationalSeries.compositional_inverse`."""
    return f.compositional_inverse()


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated list of "p/q" rationals."""
    items = text.split(",")
    if any(not t.strip() for t in items):
        raise FormatError(f"cannot parse rational list {text!r}")
    return tuple(parse_fraction(t) for t in items)


def lagrange_inverse_coefficient(f: RationalSeries, n: int) -> Fraction:
    """Degree-n coefficient of the compositional inverse via Lagrange inversion:
    n [z^n] f^{(-1)} = [z^{n-1}] (z / f(z))^n.

    Independent of the triangular solve; used as a cross-check.
    """
    if n < 1 or n > f.order:
        raise OrderMismatch(f"need 1 <= n <= {f.order}")
    base = RationalSeries(f.coeffs[1:] + (Fraction(0),)).reciprocal()
    power = RationalSeries.constant(1, f.order)
    for _ in range(n):
        power = power * base
    return power.coeffs[n - 1] / n
