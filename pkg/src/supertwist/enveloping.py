"""The universal enveloping superalgebra, truncated in h.

Elements are linear combinations of normal-ordered monomials: even
generators first (arbitrary exponents), then odd generators (exponents 0
or 1), each block in declaration order.  Products of free words reduce to
this basis by the local rewriting rule

    x y  ->  (-1)^{|x||y|} y x + [x, y]        (x after y in the order)
    p p  ->  (1/2) [p, p]                      (p odd)

applied until no reducible pair remains.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigurationError, DegreeCapExceeded, NotInvertible
from .scalar import HSeries

DEGREE_CAP = 12


class PBWMonomial:
    """Normal-ordered word, stored as ((basis index, exponent), ...)."""

    __slots__ = ("word", "_hash")

    def __init__(self, word=()):
        w = tuple((int(i), int(e)) for i, e in word)
        object.__setattr__(self, "word", w)
        object.__setattr__(self, "_hash", hash(w))

    def __setattr__(self, name, value):
        raise AttributeError("PBWMonomial is immutable")

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.word)

    def letters(self) -> tuple:
        """Expanded index sequence, one entry per letter."""
        out = []
        for i, e in self.word:
            out.extend([i] * e)
        return tuple(out)

    def is_unit(self) -> bool:
        return not self.word

    def sort_key(self):
        return (self.degree, self.word)

    def __eq__(self, other):
        return isinstance(other, PBWMonomial) and self.word == other.word

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PBWMonomial({self.word!r})"

    def format(self, algebra) -> str:
        if not self.word:
            return "1"
        parts = []
        for i, e in self.word:
            name = algebra.names[i]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


UNIT_MONOMIAL = PBWMonomial()


def monomial_parity(algebra, m: PBWMonomial) -> int:
    return sum(algebra.parities[i] * e for i, e in m.word) % 2


def _compress(letters) -> PBWMonomial:
    word = []
    for i in letters:
        if word and word[-1][0] == i:
            word[-1][1] += 1
        else:
            word.append([i, 1])
    return PBWMonomial(tuple((i, e) for i, e in word))


def normalize_word(algebra, letters, pick=None, degree_cap=DEGREE_CAP):
    """Reduce a free word of basis indices to the normal-ordered basis.

    Returns a dict PBWMonomial -> Fraction.  `pick`, given the list of
    reducible positions of a word, selects which one to rewrite next
    (default: leftmost); any choice yields the same result.
    """
    letters = tuple(int(i) for i in letters)
    for i in letters:
        if not 0 <= i < algebra.dim:
            raise ConfigurationError(f"basis index out of range: {i}")
    if len(letters) > degree_cap:
        raise DegreeCapExceeded(
            f"word of length {len(letters)} exceeds cap {degree_cap}")
    if pick is None and letters in algebra._nf_cache:
        return dict(algebra._nf_cache[letters])

    key = algebra.pbw_key
    parity = algebra.parities
    pending = {letters: Fraction(1)}
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        reducible = [p for p in range(len(w) - 1)
                     if key(w[p]) > key(w[p + 1])
                     or (w[p] == w[p + 1] and parity[w[p]])]
        if not reducible:
            m = _compress(w)
            done[m] = done.get(m, Fraction(0)) + c
            continue
        p = reducible[0] if pick is None else pick(reducible)
        x, y = w[p], w[p + 1]
        head, tail = w[:p], w[p + 2:]
        if x == y:
            # odd square: p*p = (1/2)[p, p]
            for k, cc in algebra.bracket_terms(x, y):
                nw = head + (k,) + tail
                pending[nw] = pending.get(nw, Fraction(0)) + c * cc / 2
        else:
            sign = -1 if parity[x] and parity[y] else 1
            sw = head + (y, x) + tail
            pending[sw] = pending.get(sw, Fraction(0)) + c * sign
            for k, cc in algebra.bracket_terms(x, y):
                nw = head + (k,) + tail
                pending[nw] = pending.get(nw, Fraction(0)) + c * cc

    result = {m: q for m, q in done.items() if q}
    if pick is None:
        algebra._nf_cache[letters] = tuple(result.items())
    return result


def monomial_product(algebra, a: PBWMonomial, b: PBWMonomial):
    """Normal form of a*b as a dict PBWMonomial -> Fraction (cached)."""
    cache = algebra._product_cache
    ck = (a, b)
    hit = cache.get(ck)
    if hit is None:
        hit = tuple(normalize_word(algebra, a.letters() + b.letters()).items())
        cache[ck] = hit
    return hit


def pbw_normalize(algebra, letters, order=None, pick=None) -> "UEAElement":
    """Normal form of a free word as an element (HSeries coefficients)."""
    if order is None:
        order = algebra.default_order
    terms = {m: HSeries.constant(q, order)
             for m, q in normalize_word(algebra, letters, pick=pick).items()}
    return UEAElement(algebra, order, terms)


class UEAElement:
    """Sparse element of the truncated enveloping superalgebra."""

    __slots__ = ("algebra", "order", "terms")

    def __init__(self, algebra, order, terms=None):
        self.algebra = algebra
        self.order = order
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, algebra, order):
        return cls(algebra, order, {})

    @classmethod
    def unit(cls, algebra, order, coeff=1):
        return cls(algebra, order, {UNIT_MONOMIAL: HSeries.constant(coeff, order)})

    @classmethod
    def generator(cls, algebra, i, order, coeff=1):
        if not 0 <= i < algebra.dim:
            raise ConfigurationError(f"basis index out of range: {i}")
        m = PBWMonomial(((i, 1),))
        return cls(algebra, order, {m: HSeries.constant(coeff, order)})

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ConfigurationError("elements over different algebras")
        if self.order != other.order:
            raise ConfigurationError(
                f"truncation orders differ: {self.order} vs {other.order}")

    # -- linear structure ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return UEAElement(self.algebra, self.order, terms)

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return UEAElement(self.algebra, self.order,
                          {m: -c for m, c in self.terms.items()})

    def scale(self, factor) -> "UEAElement":
        """Multiply by an HSeries or rational scalar."""
        if not isinstance(factor, HSeries):
            factor = HSeries.constant(factor, self.order)
        return UEAElement(self.algebra, self.order,
                          {m: c * factor for m, c in self.terms.items()})

    # -- ring structure -------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                c = ca * cb
                if c.is_zero():
                    continue
                for m, q in monomial_product(self.algebra, ma, mb):
                    s = out.get(m)
                    t = c * q
                    out[m] = t if s is None else s + t
        return UEAElement(self.algebra, self.order, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        return NotImplemented

    def inverse(self) -> "UEAElement":
        """Inverse of 1 + O(h) by the truncated Neumann series."""
        if self.hbar_slice(0) != {UNIT_MONOMIAL: Fraction(1)}:
            raise NotInvertible("order-0 part is not the unit")
        one = UEAElement.unit(self.algebra, self.order)
        x = one - self
        acc, power = one, one
        for _ in range(self.order):
            power = power * x
            if not power.terms:
                break
            acc = acc + power
        return acc

    # -- Hopf structure --------------------------------------------------

    def antipode(self) -> "UEAElement":
        """Graded antimorphism with S(x) = -x on generators."""
        parities = self.algebra.parities
        out = UEAElement.zero(self.algebra, self.order)
        for m, c in self.terms.items():
            ls = m.letters()
            d = len(ls)
            cross = 0
            for i in range(d):
                if parities[ls[i]]:
                    cross += sum(parities[ls[j]] for j in range(i + 1, d))
            sign = -1 if (d + cross) % 2 else 1
            nf = normalize_word(self.algebra, tuple(reversed(ls)))
            piece = UEAElement(self.algebra, self.order,
                               {mm: c * (q * sign) for mm, q in nf.items()})
            out = out + piece
        return out

    def counit(self) -> HSeries:
        """Coefficient of the unit monomial."""
        return self.terms.get(UNIT_MONOMIAL, HSeries.zero(self.order))

    def coproduct(self):
        """Undeformed coproduct into the graded tensor square."""
        from .tensor import coproduct0
        return coproduct0(self)

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return (self.algebra is other.algebra and self.order == other.order
                and self.terms == other.terms)

    def hbar_slice(self, k: int) -> dict:
        """Fraction coefficients of h^k, keyed by monomial."""
        out = {}
        for m, c in self.terms.items():
            if k <= c.order and c.coeffs[k]:
                out[m] = c.coeffs[k]
        return out

    def parity(self) -> int | None:
        """0 or 1 if homogeneous, None if mixed or zero."""
        ps = {monomial_parity(self.algebra, m) for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def is_even(self) -> bool:
        return all(monomial_parity(self.algebra, m) == 0 for m in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"({c})*{m.format(self.algebra)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UEAElement<{self}>"
