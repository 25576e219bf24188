"""Exact scalar arithmetic: rationals and truncated power series in the
deformation parameter h.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
An `HSeries` holds the coefficients of h^0 .. h^N for a fixed truncation
order N; every operation discards powers beyond N.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ConfigurationError, NotInvertible

DEFAULT_TRUNCATION = 4

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text) -> Fraction:
    """Parse "p" or "p/q" (exact integers only, no decimals)."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ConfigurationError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(q)


class HSeries:
    """Polynomial in h truncated at a fixed order, with Fraction coefficients.

    Immutable; arithmetic requires equal truncation orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ConfigurationError("HSeries needs at least the h^0 coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("HSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_TRUNCATION) -> "HSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int = DEFAULT_TRUNCATION) -> "HSeries":
        return cls.constant(Fraction(1), order)

    @classmethod
    def constant(cls, value, order: int = DEFAULT_TRUNCATION) -> "HSeries":
        cs = [Fraction(0)] * (order + 1)
        cs[0] = Fraction(value)
        return cls(cs)

    @classmethod
    def monomial(cls, power: int, value=1, order: int = DEFAULT_TRUNCATION) -> "HSeries":
        """value * h^power, or zero if power exceeds the truncation order."""
        cs = [Fraction(0)] * (order + 1)
        if 0 <= power <= order:
            cs[power] = Fraction(value)
        return cls(cs)

    @classmethod
    def from_strings(cls, items, order: int = DEFAULT_TRUNCATION) -> "HSeries":
        """Series from a list of rational strings indexed by h-power."""
        cs = [Fraction(0)] * (order + 1)
        for power, text in enumerate(items):
            q = parse_rational(text)
            if power <= order:
                cs[power] = q
        return cls(cs)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "HSeries") -> None:
        if self.order != other.order:
            raise ConfigurationError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        return HSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        return HSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return HSeries(-a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HSeries(a * other for a in self.coeffs)
        if not isinstance(other, HSeries):
            return NotImplemented
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return HSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "HSeries":
        """Multiplicative inverse up to the truncation order.

        Solved order by order from the Cauchy product; needs a nonzero
        constant term.
        """
        if not self.coeffs[0]:
            raise NotInvertible("constant term is zero")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -acc / self.coeffs[0]
        return HSeries(out)

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HSeries.constant(other, self.order)
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_strings(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        return f"HSeries({list(self.coeffs)!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(format_rational(c))
            else:
                h = "h" if k == 1 else f"h^{k}"
                if c == 1:
                    parts.append(h)
                elif c == -1:
                    parts.append(f"-{h}")
                else:
                    parts.append(f"{format_rational(c)}*{h}")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text
