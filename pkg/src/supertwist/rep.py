"""Graded matrix representations: push the quasitriangular element to a
matrix on W (x) W, check the signed component super Yang-Baxter identity
in two independent formulations, and build the braid matrix S = P.R.

Basis order on tensor squares/cubes is row-major: (i, j) -> i*dim + j.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .errors import ConfigurationError, EvennessViolation, SchemaError
from .report import ValidationReport
from .scalar import HSeries
from .enveloping import PBWMonomial
from .twist import Twist, compute_R


class GradedSpace:
    """W^(n|m): n even basis vectors followed by m odd ones."""

    def __init__(self, n_even: int, m_odd: int):
        if n_even < 0 or m_odd < 0 or n_even + m_odd < 1:
            raise SchemaError("graded space needs dimension >= 1")
        self.n_even = n_even
        self.m_odd = m_odd

    @property
    def dim(self) -> int:
        return self.n_even + self.m_odd

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise SchemaError(f"vector index out of range: {i}")
        return 0 if i < self.n_even else 1

    @property
    def parities(self) -> tuple:
        return tuple(self.parity(i) for i in range(self.dim))

    def __repr__(self):
        return f"GradedSpace({self.n_even}|{self.m_odd})"


def pair_parities(space: GradedSpace) -> tuple:
    """Row-major parities of W (x) W."""
    return tuple((space.parity(i) + space.parity(j)) % 2
                 for i in range(space.dim) for j in range(space.dim))


class GradedMatrix:
    """Dense matrix with HSeries entries and a parity per row/column."""

    __slots__ = ("parities", "order", "rows")

    def __init__(self, parities, order, rows):
        self.parities = tuple(int(p) for p in parities)
        self.order = order
        n = len(self.parities)
        rows = [list(r) for r in rows]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ConfigurationError("matrix shape does not match parities")
        for r in rows:
            for c in r:
                if not isinstance(c, HSeries) or c.order != order:
                    raise ConfigurationError("entries must be HSeries at the "
                                             "matrix truncation order")
        self.rows = rows

    @property
    def dim(self) -> int:
        return len(self.parities)

    @classmethod
    def zeros(cls, parities, order):
        n = len(parities)
        z = HSeries.zero(order)
        return cls(parities, order, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, parities, order):
        n = len(parities)
        z, o = HSeries.zero(order), HSeries.one(order)
        return cls(parities, order,
                   [[o if i == j else z for j in range(n)] for i in range(n)])

    def _check(self, other):
        if self.parities != other.parities or self.order != other.order:
            raise ConfigurationError("incompatible matrices")

    def __add__(self, other):
        self._check(other)
        return GradedMatrix(self.parities, self.order,
                            [[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return GradedMatrix(self.parities, self.order,
                            [[a - b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return GradedMatrix(self.parities, self.order,
                            [[-a for a in r] for r in self.rows])

    def scale(self, factor):
        if not isinstance(factor, HSeries):
            factor = HSeries.constant(factor, self.order)
        return GradedMatrix(self.parities, self.order,
                            [[a * factor for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HSeries)):
            return self.scale(other)
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check(other)
        n = self.dim
        z = HSeries.zero(self.order)
        out = [[z] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                a = self.rows[i][k]
                if a.is_zero():
                    continue
                for j in range(n):
                    b = other.rows[k][j]
                    if not b.is_zero():
                        out[i][j] = out[i][j] + a * b
        return GradedMatrix(self.parities, self.order, out)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.parities == other.parities and self.order == other.order
                and self.rows == other.rows)

    def is_zero(self) -> bool:
        return all(c.is_zero() for r in self.rows for c in r)

    def homogeneous_parity(self):
        """0 or 1 if all nonzero entries share parity(row)+parity(col);
        None for zero or mixed matrices."""
        seen = set()
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if not c.is_zero():
                    seen.add((self.parities[i] + self.parities[j]) % 2)
        return seen.pop() if len(seen) == 1 else None

    def is_even(self) -> bool:
        hp = self.homogeneous_parity()
        return hp == 0 or (hp is None and self.is_zero())

    def entry(self, i, j) -> HSeries:
        return self.rows[i][j]

    def __repr__(self):
        return f"GradedMatrix(dim={self.dim}, order={self.order})"


class Representation:
    """Images of the basis generators as graded matrices on W."""

    def __init__(self, space: GradedSpace, images: dict, order):
        self.space = space
        self.order = order
        self.images = dict(images)
        self._monomial_cache: dict = {}

    def image(self, i: int) -> GradedMatrix:
        try:
            return self.images[i]
        except KeyError:
            raise SchemaError(f"no matrix assigned to generator {i}") from None

    def monomial_image(self, m: PBWMonomial) -> GradedMatrix:
        hit = self._monomial_cache.get(m)
        if hit is None:
            hit = GradedMatrix.identity(self.space.parities, self.order)
            for i in m.letters():
                hit = hit * self.image(i)
            self._monomial_cache[m] = hit
        return hit


def validate_representation(algebra, rho: Representation) -> ValidationReport:
    """Homogeneity of each image plus the supercommutator relation
    rho(Xi) rho(Xj) - (-1)^{|i||j|} rho(Xj) rho(Xi) = rho([Xi, Xj])."""
    rep = ValidationReport()
    p = algebra.parities
    n = algebra.dim

    bad = 0
    for i in range(n):
        mat = rho.image(i)
        hp = mat.homogeneous_parity()
        if mat.is_zero():
            continue
        if hp is None or hp != p[i]:
            rep.add(f"homogeneity({algebra.names[i]})", None, False,
                    f"expected parity {p[i]}, image has {hp}")
            bad += 1
    if not bad:
        rep.add("homogeneity", None, True)

    bad = 0
    for i in range(n):
        for j in range(n):
            lhs = rho.image(i) * rho.image(j)
            swapped = rho.image(j) * rho.image(i)
            lhs = lhs + swapped.scale(-1) if not (p[i] and p[j]) \
                else lhs + swapped
            rhs = GradedMatrix.zeros(rho.space.parities, rho.order)
            for k, c in algebra.bracket_terms(i, j):
                rhs = rhs + rho.image(k).scale(c)
            if lhs != rhs:
                rep.add(f"supercommutator({algebra.names[i]},{algebra.names[j]})",
                        None, False, "rho does not respect the bracket")
                bad += 1
    if not bad:
        rep.add("supercommutator", None, True)
    return rep


def apply_pair(rho: Representation, element) -> GradedMatrix:
    """(rho (x) rho) of a 2-leg tensor, with the graded action
    (A (x) B)(w_i (x) w_j) = (-1)^{|B||w_i|} A w_i (x) B w_j."""
    from .enveloping import monomial_parity
    if element.legs != 2:
        raise ConfigurationError("apply_pair expects a 2-leg tensor")
    space, order = rho.space, rho.order
    if element.order != order:
        raise ConfigurationError("tensor and representation orders differ")
    dim = space.dim
    out = GradedMatrix.zeros(pair_parities(space), order)
    for (m1, m2), c in element.terms.items():
        a = rho.monomial_image(m1)
        b = rho.monomial_image(m2)
        pb = monomial_parity(element.algebra, m2)
        for x, i in iproduct(range(dim), range(dim)):
            axi = a.entry(x, i)
            if axi.is_zero():
                continue
            sign = -1 if pb and space.parity(i) else 1
            for y, j in iproduct(range(dim), range(dim)):
                byj = b.entry(y, j)
                if byj.is_zero():
                    continue
                row, col = x * dim + y, i * dim + j
                add = axi * byj * c
                if sign < 0:
                    add = -add
                out.rows[row][col] = out.rows[row][col] + add
    return out


def matrix_R(twist: Twist, rho: Representation,
             allow_invalid: bool = False) -> GradedMatrix:
    """R = (rho (x) rho)(R_F) on W (x) W."""
    return apply_pair(rho, compute_R(twist, allow_invalid=allow_invalid))


def embed_pair_operator(space: GradedSpace, mat: GradedMatrix,
                        p: int, q: int) -> GradedMatrix:
    """Graded embedding of an even operator on W (x) W into legs (p, q) of
    W (x) W (x) W.

    The matrix on W (x) W already carries its internal action signs; the
    only extra factor is the Koszul sign of the second tensor factor
    sliding past the legs strictly between p and q.
    """
    if not 1 <= p < q <= 3:
        raise ConfigurationError(f"bad legs ({p}, {q})")
    if not mat.is_even():
        raise EvennessViolation("leg embedding implemented for even operators")
    dim = space.dim
    par = space.parity
    order = mat.order
    parities3 = tuple((par(i) + par(j) + par(k)) % 2
                      for i in range(dim) for j in range(dim)
                      for k in range(dim))
    out = GradedMatrix.zeros(parities3, order)
    o = ({1, 2, 3} - {p, q}).pop()
    between = [t for t in (1, 2, 3) if p < t < q]
    for row in iproduct(range(dim), repeat=3):
        for col in iproduct(range(dim), repeat=3):
            if row[o - 1] != col[o - 1]:
                continue
            e = mat.entry(row[p - 1] * dim + row[q - 1],
                          col[p - 1] * dim + col[q - 1])
            if e.is_zero():
                continue
            sign = 1
            for t in between:
                if (par(row[q - 1]) + par(col[q - 1])) % 2 and par(col[t - 1]):
                    sign = -sign
            ridx = (row[0] * dim + row[1]) * dim + row[2]
            cidx = (col[0] * dim + col[1]) * dim + col[2]
            out.rows[ridx][cidx] = out.rows[ridx][cidx] + (e if sign > 0 else -e)
    return out


def check_super_qybe(space: GradedSpace, r: GradedMatrix) -> bool:
    """R12.R13.R23 = R23.R13.R12 on W (x) W (x) W, in both the
    leg-embedded and the signed component formulation; the two must agree."""
    emb = qybe_embedded(space, r)
    comp = qybe_components(space, r)
    if emb != comp:
        raise ConfigurationError(
            "component and leg-embedded formulations disagree (sign bug)")
    return emb


def qybe_embedded(space: GradedSpace, r: GradedMatrix) -> bool:
    if not r.is_even():
        raise EvennessViolation("R must be parity-even")
    r12 = embed_pair_operator(space, r, 1, 2)
    r13 = embed_pair_operator(space, r, 1, 3)
    r23 = embed_pair_operator(space, r, 2, 3)
    return (r12 * r13 * r23) == (r23 * r13 * r12)


def qybe_components(space: GradedSpace, r: GradedMatrix) -> bool:
    """Signed component identity, derived from the graded leg action:

    sum_{l,m,n} (-1)^{|m|(|c|+|n|)} R^{ab}_{lm} R^{lc}_{in} R^{mn}_{jk}
      = sum_{l,m,p} (-1)^{|m|(|p|+|k|)} R^{bc}_{mp} R^{ap}_{lk} R^{lm}_{ij}
    for all (a, b, c) and (i, j, k).
    """
    if not r.is_even():
        raise EvennessViolation("R must be parity-even")
    dim = space.dim
    par = space.parity
    order = r.order

    def e(a, b, i, j):
        return r.entry(a * dim + b, i * dim + j)

    for a, b, c in iproduct(range(dim), repeat=3):
        for i, j, k in iproduct(range(dim), repeat=3):
            lhs = HSeries.zero(order)
            rhs = HSeries.zero(order)
            for l, m, n in iproduct(range(dim), repeat=3):
                t = e(a, b, l, m) * e(l, c, i, n) * e(m, n, j, k)
                if not t.is_zero():
                    if par(m) and (par(c) + par(n)) % 2:
                        t = -t
                    lhs = lhs + t
                t = e(b, c, m, n) * e(a, n, l, k) * e(l, m, i, j)
                if not t.is_zero():
                    if par(m) and (par(n) + par(k)) % 2:
                        t = -t
                    rhs = rhs + t
            if lhs != rhs:
                return False
    return True


def super_permutation(space: GradedSpace, order) -> GradedMatrix:
    """P(w_i (x) w_j) = (-1)^{|i||j|} w_j (x) w_i on W (x) W."""
    dim = space.dim
    out = GradedMatrix.zeros(pair_parities(space), order)
    for i in range(dim):
        for j in range(dim):
            sign = -1 if space.parity(i) and space.parity(j) else 1
            out.rows[j * dim + i][i * dim + j] = HSeries.constant(sign, order)
    return out


def braid_matrix(space: GradedSpace, r: GradedMatrix):
    """S = P.R together with the verdict on the braid relation
    (S (x) id)(id (x) S)(S (x) id) = (id (x) S)(S (x) id)(id (x) S)."""
    if not check_super_qybe(space, r):
        raise ConfigurationError("R does not satisfy the super QYBE")
    s = super_permutation(space, r.order) * r
    s12 = embed_pair_operator(space, s, 1, 2)
    s23 = embed_pair_operator(space, s, 2, 3)
    braid_ok = (s12 * s23 * s12) == (s23 * s12 * s23)
    return s, braid_ok
