"""Graded tensor powers of the enveloping superalgebra (2 or 3 legs).

Multiplication carries the sign rule (a1 (x) a2)(b1 (x) b2) =
(-1)^{|a2||b1|} a1 b1 (x) a2 b2, generalized to n legs by the crossing
count; the leg swap carries (-1)^{|x||y|}.  Leg entries are stored per
homogeneous normal-ordered monomial, so every sign is determined
termwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .errors import ConfigurationError, NotInvertible
from .scalar import HSeries
from .enveloping import (UNIT_MONOMIAL, PBWMonomial, UEAElement,
                         monomial_parity, monomial_product)

MAX_LEGS = 3


class TensorElement:
    """Sparse element of U(g)^{(x) legs}, truncated in h."""

    __slots__ = ("algebra", "legs", "order", "terms")

    def __init__(self, algebra, legs, order, terms=None):
        if not 2 <= legs <= MAX_LEGS:
            raise ConfigurationError(f"unsupported leg count: {legs}")
        self.algebra = algebra
        self.legs = legs
        self.order = order
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, algebra, legs, order):
        return cls(algebra, legs, order, {})

    @classmethod
    def unit(cls, algebra, legs, order, coeff=1):
        key = (UNIT_MONOMIAL,) * legs
        return cls(algebra, legs, order, {key: HSeries.constant(coeff, order)})

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ConfigurationError("tensors over different algebras")
        if self.legs != other.legs:
            raise ConfigurationError(
                f"leg counts differ: {self.legs} vs {other.legs}")
        if self.order != other.order:
            raise ConfigurationError(
                f"truncation orders differ: {self.order} vs {other.order}")

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            terms[k] = c if s is None else s + c
        return TensorElement(self.algebra, self.legs, self.order, terms)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.algebra, self.legs, self.order,
                             {k: -c for k, c in self.terms.items()})

    def scale(self, factor) -> "TensorElement":
        if not isinstance(factor, HSeries):
            factor = HSeries.constant(factor, self.order)
        return TensorElement(self.algebra, self.legs, self.order,
                             {k: c * factor for k, c in self.terms.items()})

    # -- ring structure ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        alg = self.algebra
        out: dict = {}
        for ka, ca in self.terms.items():
            pa = [monomial_parity(alg, m) for m in ka]
            for kb, cb in other.terms.items():
                pb = [monomial_parity(alg, m) for m in kb]
                cross = sum(pa[j] * pb[i]
                            for i in range(self.legs)
                            for j in range(i + 1, self.legs))
                c = ca * cb
                if cross % 2:
                    c = -c
                if c.is_zero():
                    continue
                factors = [monomial_product(alg, ka[l], kb[l])
                           for l in range(self.legs)]
                for combo in iproduct(*factors):
                    q = Fraction(1)
                    for _, f in combo:
                        q *= f
                    key = tuple(m for m, _ in combo)
                    t = c * q
                    s = out.get(key)
                    out[key] = t if s is None else s + t
        return TensorElement(self.algebra, self.legs, self.order, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        return NotImplemented

    def inverse(self) -> "TensorElement":
        """Inverse of 1 + O(h) by the truncated Neumann series."""
        unit_key = (UNIT_MONOMIAL,) * self.legs
        if self.hbar_slice(0) != {unit_key: Fraction(1)}:
            raise NotInvertible("order-0 part is not the unit tensor")
        one = TensorElement.unit(self.algebra, self.legs, self.order)
        x = one - self
        acc, power = one, one
        for _ in range(self.order):
            power = power * x
            if not power.terms:
                break
            acc = acc + power
        return acc

    # -- leg operations ------------------------------------------------------

    def swap_legs(self, i: int = 1) -> "TensorElement":
        """Graded transposition of the adjacent legs (i, i+1), 1-based."""
        if i < 1 or i + 1 > self.legs:
            raise ConfigurationError(f"no adjacent pair at leg {i}")
        alg = self.algebra
        out: dict = {}
        a, b = i - 1, i
        for k, c in self.terms.items():
            sign = monomial_parity(alg, k[a]) * monomial_parity(alg, k[b])
            key = k[:a] + (k[b], k[a]) + k[i + 1:]
            t = -c if sign % 2 else c
            s = out.get(key)
            out[key] = t if s is None else s + t
        return TensorElement(alg, self.legs, self.order, out)

    def embed(self, positions, total: int = 3) -> "TensorElement":
        """Insert units so legs (p, q) of the result carry this 2-leg tensor."""
        if self.legs != 2:
            raise ConfigurationError("embed is defined for 2-leg tensors")
        p, q = positions
        if not (1 <= p < q <= total) or total > MAX_LEGS:
            raise ConfigurationError(f"bad embedding positions {positions}")
        out: dict = {}
        for (m1, m2), c in self.terms.items():
            key = [UNIT_MONOMIAL] * total
            key[p - 1] = m1
            key[q - 1] = m2
            out[tuple(key)] = c
        return TensorElement(self.algebra, total, self.order, out)

    def apply_leg_map(self, which: int, fn, extra_legs: int) -> "TensorElement":
        """Replace leg `which` (1-based) of every term through a degree-zero
        linear map given on monomials.

        `fn(monomial)` must return a TensorElement with 1 + extra_legs legs
        (extra_legs = 1 for a coproduct-type map).  Degree-zero maps splice
        without Koszul signs.
        """
        if not 1 <= which <= self.legs:
            raise ConfigurationError(f"bad leg index {which}")
        new_legs = self.legs + extra_legs
        out = TensorElement.zero(self.algebra, new_legs, self.order)
        acc: dict = {}
        for k, c in self.terms.items():
            image = fn(k[which - 1])
            for ik, ic in image.terms.items():
                key = k[:which - 1] + ik + k[which:]
                t = c * ic
                if t.is_zero():
                    continue
                s = acc.get(key)
                acc[key] = t if s is None else s + t
        out.terms = {k: c for k, c in acc.items() if not c.is_zero()}
        return out

    def coproduct_leg(self, which: int) -> "TensorElement":
        """Apply the undeformed coproduct to one leg (2-leg -> 3-leg)."""
        if self.legs != 2:
            raise ConfigurationError("coproduct_leg expects a 2-leg tensor")
        order = self.order

        def fn(m):
            return _monomial_coproduct(self.algebra, m, order)

        return self.apply_leg_map(which, fn, 1)

    def counit_leg(self, which: int) -> UEAElement:
        """Apply the counit to one leg of a 2-leg tensor."""
        if self.legs != 2:
            raise ConfigurationError("counit_leg expects a 2-leg tensor")
        if which not in (1, 2):
            raise ConfigurationError(f"bad leg index {which}")
        out: dict = {}
        for (m1, m2), c in self.terms.items():
            dropped, kept = (m1, m2) if which == 1 else (m2, m1)
            if not dropped.is_unit():
                continue
            s = out.get(kept)
            out[kept] = c if s is None else s + c
        return UEAElement(self.algebra, self.order, out)

    def antipode_legs(self) -> "TensorElement":
        """Legwise antipode (the map is even: no crossing signs)."""
        out = TensorElement.zero(self.algebra, self.legs, self.order)
        acc: dict = {}
        for k, c in self.terms.items():
            pieces = []
            for m in k:
                el = UEAElement(self.algebra, self.order,
                                {m: HSeries.one(self.order)})
                pieces.append(el.antipode().terms.items())
            for combo in iproduct(*pieces):
                key = tuple(m for m, _ in combo)
                t = c
                for _, q in combo:
                    t = t * q
                if t.is_zero():
                    continue
                s = acc.get(key)
                acc[key] = t if s is None else s + t
        out.terms = {k: c for k, c in acc.items() if not c.is_zero()}
        return out

    def multiply_legs(self) -> UEAElement:
        """Collapse a 2-leg tensor through the product map m(a (x) b) = ab."""
        if self.legs != 2:
            raise ConfigurationError("multiply_legs expects a 2-leg tensor")
        out = UEAElement.zero(self.algebra, self.order)
        for (m1, m2), c in self.terms.items():
            for m, q in monomial_product(self.algebra, m1, m2):
                el = UEAElement(self.algebra, self.order, {m: c * q})
                out = out + el
        return out

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.algebra is other.algebra and self.legs == other.legs
                and self.order == other.order and self.terms == other.terms)

    def hbar_slice(self, k: int) -> dict:
        out = {}
        for key, c in self.terms.items():
            if k <= c.order and c.coeffs[k]:
                out[key] = c.coeffs[k]
        return out

    def is_even(self) -> bool:
        alg = self.algebra
        return all(
            sum(monomial_parity(alg, m) for m in k) % 2 == 0
            for k in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: tuple(m.sort_key() for m in kv[0]))

    def format_key(self, key) -> str:
        return "(x)".join(m.format(self.algebra) for m in key)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.format_key(k)}"
                          for k, c in self.sorted_terms())

    def __repr__(self):
        return f"TensorElement<{self.legs} legs: {self}>"


def outer(a: UEAElement, b: UEAElement) -> TensorElement:
    """Elementary tensor a (x) b (bilinear; no signs arise in formation)."""
    if a.algebra is not b.algebra or a.order != b.order:
        raise ConfigurationError("outer factors must share algebra and order")
    terms = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            terms[(ma, mb)] = ca * cb
    return TensorElement(a.algebra, 2, a.order, terms)


def _monomial_coproduct(algebra, m: PBWMonomial, order) -> TensorElement:
    out = TensorElement.unit(algebra, 2, order)
    for i in m.letters():
        x = UEAElement.generator(algebra, i, order)
        one = UEAElement.unit(algebra, order)
        out = out * (outer(x, one) + outer(one, x))
    return out


def coproduct0(x: UEAElement) -> TensorElement:
    """x (x) 1 + 1 (x) x on generators, extended as an algebra morphism."""
    out = TensorElement.zero(x.algebra, 2, x.order)
    for m, c in x.terms.items():
        out = out + _monomial_coproduct(x.algebra, m, x.order).scale(c)
    return out
