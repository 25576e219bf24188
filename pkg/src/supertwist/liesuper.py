"""Lie superalgebras given by structure constants, their validation, and
the classical Yang-Baxter layer (Schouten brackets, cobrackets).

Sign conventions:
    [x, y] = -(-1)^{|x||y|} [y, x]
    (-1)^{|i||l|} C^k_ij C^m_kl + (-1)^{|i||j|} C^k_jl C^m_ki
        + (-1)^{|j||l|} C^k_li C^m_kj = 0
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EvennessViolation, SchemaError
from .report import ValidationReport
from .scalar import DEFAULT_TRUNCATION
from .enveloping import UEAElement
from .tensor import TensorElement, outer


class LieSuperalgebra:
    """Finite-dimensional Lie superalgebra over the rationals.

    Structure constants are stored for every ordered pair; construction
    does not check the axioms (use `validate_superalgebra`), so corrupted
    tables can be represented for negative controls.
    """

    def __init__(self, basis, brackets, default_order=DEFAULT_TRUNCATION):
        """basis: iterable of (name, parity); brackets: {(i, j): [(k, coeff)]}."""
        names, parities = [], []
        for name, p in basis:
            if p not in (0, 1):
                raise SchemaError(f"parity of {name!r} must be 0 or 1, got {p!r}")
            if name in names:
                raise SchemaError(f"duplicate basis name {name!r}")
            names.append(str(name))
            parities.append(int(p))
        self.names = tuple(names)
        self.parities = tuple(parities)
        self.default_order = default_order
        table = {}
        for (i, j), terms in brackets.items():
            self._check_index(i)
            self._check_index(j)
            clean = tuple((k, Fraction(c)) for k, c in terms if Fraction(c))
            for k, _ in clean:
                self._check_index(k)
            if clean:
                table[(i, j)] = clean
        self._table = table
        self._nf_cache: dict = {}
        self._product_cache: dict = {}

    def _check_index(self, i):
        if not isinstance(i, int) or not 0 <= i < len(self.names):
            raise SchemaError(f"basis index out of range: {i!r}")

    @classmethod
    def from_table(cls, basis, brackets, default_order=DEFAULT_TRUNCATION,
                   complete=True):
        """Build from a one-sided table, filling (j, i) entries from
        antisymmetry when absent."""
        alg = cls(basis, brackets, default_order)
        if complete:
            table = dict(alg._table)
            for (i, j), terms in list(table.items()):
                if i == j or (j, i) in alg._table:
                    continue
                sign = -1 if not (alg.parities[i] and alg.parities[j]) else 1
                table[(j, i)] = tuple((k, sign * c) for k, c in terms)
            alg._table = table
        return alg

    # -- basic queries -----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"unknown basis name {name!r}") from None

    def parity(self, i: int) -> int:
        self._check_index(i)
        return self.parities[i]

    def pbw_key(self, i: int):
        """Normal order: even generators first, then odd, each as declared."""
        return (self.parities[i], i)

    def bracket_terms(self, i: int, j: int):
        """[X_i, X_j] as ((k, coeff), ...)."""
        self._check_index(i)
        self._check_index(j)
        return self._table.get((i, j), ())

    def structure_constant(self, i, j, k) -> Fraction:
        for kk, c in self.bracket_terms(i, j):
            if kk == k:
                return c
        return Fraction(0)

    def bracket(self, x, y) -> dict:
        """Bilinear bracket of sparse elements {index: coeff}."""
        out: dict = {}
        for i, cx in x.items():
            self._check_index(i)
            for j, cy in y.items():
                self._check_index(j)
                for k, c in self.bracket_terms(i, j):
                    q = out.get(k, Fraction(0)) + Fraction(cx) * Fraction(cy) * c
                    if q:
                        out[k] = q
                    else:
                        out.pop(k, None)
        return out

    def generator(self, i, order=None) -> UEAElement:
        return UEAElement.generator(self, i, self.default_order if order is None else order)

    def __repr__(self):
        sig = ", ".join(f"{n}|{p}" for n, p in zip(self.names, self.parities))
        return f"LieSuperalgebra({sig})"


def validate_superalgebra(algebra: LieSuperalgebra) -> ValidationReport:
    """Check parity consistency, antisymmetry and the super Jacobi identity.

    Every violated instance becomes a failing entry; passing categories
    get a single summary entry.
    """
    rep = ValidationReport()
    n = algebra.dim
    p = algebra.parities

    bad = 0
    for (i, j), terms in sorted(algebra._table.items()):
        for k, c in terms:
            if (p[i] + p[j] - p[k]) % 2:
                rep.add(f"parity({algebra.names[i]},{algebra.names[j]})", None,
                        False, f"C^{algebra.names[k]} = {c} violates parity")
                bad += 1
    if not bad:
        rep.add("parity", None, True)

    bad = 0
    for i in range(n):
        for j in range(i, n):
            sign = -1 if not (p[i] and p[j]) else 1
            residual = {}
            for k, c in algebra.bracket_terms(i, j):
                residual[k] = residual.get(k, Fraction(0)) + c
            for k, c in algebra.bracket_terms(j, i):
                residual[k] = residual.get(k, Fraction(0)) - sign * c
            residual = {k: c for k, c in residual.items() if c}
            if residual:
                k = sorted(residual)[0]
                rep.add(f"antisymmetry({algebra.names[i]},{algebra.names[j]})",
                        None, False,
                        f"residual {residual[k]}*{algebra.names[k]}")
                bad += 1
    if not bad:
        rep.add("antisymmetry", None, True)

    bad = 0
    for i in range(n):
        for j in range(n):
            for l in range(n):
                acc = {}
                for s, (a, b, c) in (
                        (p[i] * p[l], (i, j, l)),
                        (p[i] * p[j], (j, l, i)),
                        (p[j] * p[l], (l, i, j))):
                    sign = -1 if s % 2 else 1
                    for k, c1 in algebra.bracket_terms(a, b):
                        for m, c2 in algebra.bracket_terms(k, c):
                            acc[m] = acc.get(m, Fraction(0)) + sign * c1 * c2
                acc = {m: q for m, q in acc.items() if q}
                if acc:
                    m = sorted(acc)[0]
                    names = (algebra.names[i], algebra.names[j], algebra.names[l])
                    rep.add(f"jacobi{names}", None, False,
                            f"sum has {acc[m]}*{algebra.names[m]}")
                    bad += 1
    if not bad:
        rep.add("jacobi", None, True)
    return rep


class RMatrix:
    """Candidate classical r-matrix: h-free element of g (x) g."""

    def __init__(self, terms):
        self.terms = {(int(i), int(j)): Fraction(c)
                      for (i, j), c in terms.items() if Fraction(c)}

    def is_even(self, algebra) -> bool:
        p = algebra.parities
        return all((p[i] + p[j]) % 2 == 0 for i, j in self.terms)

    def require_even(self, algebra):
        if not self.is_even(algebra):
            bad = next((i, j) for i, j in self.terms
                       if (algebra.parities[i] + algebra.parities[j]) % 2)
            raise EvennessViolation(
                f"r has odd term {algebra.names[bad[0]]}(x){algebra.names[bad[1]]}")

    def __repr__(self):
        return f"RMatrix({self.terms!r})"


class Cobracket:
    """Cobracket data f^{kl}_i as {i: {(k, l): coeff}}."""

    def __init__(self, terms):
        self.terms = {}
        for i, row in terms.items():
            clean = {(int(k), int(l)): Fraction(c)
                     for (k, l), c in row.items() if Fraction(c)}
            if clean:
                self.terms[int(i)] = clean

    def component(self, i) -> dict:
        return self.terms.get(i, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"Cobracket({self.terms!r})"


def _ad_on_pair(algebra, x: int, pairs: dict) -> dict:
    """(ad_x (x) 1 + 1 (x) ad_x) applied to an element of g (x) g."""
    p = algebra.parities
    out: dict = {}

    def put(k, l, c):
        if not c:
            return
        q = out.get((k, l), Fraction(0)) + c
        if q:
            out[(k, l)] = q
        else:
            out.pop((k, l), None)

    for (k, l), c in pairs.items():
        for m, c1 in algebra.bracket_terms(x, k):
            put(m, l, c * c1)
        sign = -1 if p[x] and p[k] else 1
        for m, c1 in algebra.bracket_terms(x, l):
            put(k, m, c * c1 * sign)
    return out


def coboundary_cobracket(algebra, r: RMatrix) -> Cobracket:
    """delta(x) = (ad_x (x) 1 + 1 (x) ad_x) r, expanded on the basis."""
    r.require_even(algebra)
    terms = {}
    for i in range(algebra.dim):
        row = _ad_on_pair(algebra, i, r.terms)
        if row:
            terms[i] = row
    return Cobracket(terms)


def validate_cobracket(algebra, phi: Cobracket) -> ValidationReport:
    """Check parity consistency, the dual super Jacobi identity and the
    1-cocycle condition on all basis pairs."""
    rep = ValidationReport()
    p = algebra.parities
    n = algebra.dim

    def f(k, l, i) -> Fraction:
        return phi.component(i).get((k, l), Fraction(0))

    bad = 0
    for i, row in sorted(phi.terms.items()):
        for (k, l), c in sorted(row.items()):
            if (p[k] + p[l] - p[i]) % 2:
                rep.add(f"cobracket-parity({algebra.names[i]})", None, False,
                        f"f^({algebra.names[k]},{algebra.names[l]}) = {c}")
                bad += 1
    if not bad:
        rep.add("cobracket-parity", None, True)

    # dual super Jacobi: for every i and (k, l, m),
    # (-1)^{|k||m|} f^{kj}_i f^{lm}_j + cyclic(k -> l -> m) = 0, summed over j
    bad = 0
    for i in range(n):
        for k in range(n):
            for l in range(n):
                for m in range(n):
                    acc = Fraction(0)
                    for j in range(n):
                        s1 = -1 if p[k] * p[m] % 2 else 1
                        s2 = -1 if p[l] * p[k] % 2 else 1
                        s3 = -1 if p[m] * p[l] % 2 else 1
                        acc += s1 * f(k, j, i) * f(l, m, j)
                        acc += s2 * f(l, j, i) * f(m, k, j)
                        acc += s3 * f(m, j, i) * f(k, l, j)
                    if acc:
                        rep.add("cobracket-jacobi", None, False,
                                f"i={algebra.names[i]} (k,l,m)=({algebra.names[k]},"
                                f"{algebra.names[l]},{algebra.names[m]}) sum={acc}")
                        bad += 1
    if not bad:
        rep.add("cobracket-jacobi", None, True)

    # 1-cocycle: phi([Xi, Xj]) = ad_i phi(Xj) - (-1)^{|i||j|} ad_j phi(Xi)
    bad = 0
    for i in range(n):
        for j in range(n):
            lhs: dict = {}
            for k, c in algebra.bracket_terms(i, j):
                for pair, q in phi.component(k).items():
                    lhs[pair] = lhs.get(pair, Fraction(0)) + c * q
            rhs = _ad_on_pair(algebra, i, phi.component(j))
            sign = -1 if p[i] and p[j] else 1
            for pair, q in _ad_on_pair(algebra, j, phi.component(i)).items():
                rhs[pair] = rhs.get(pair, Fraction(0)) - sign * q
            keys = set(lhs) | set(rhs)
            diff = {pk: lhs.get(pk, Fraction(0)) - rhs.get(pk, Fraction(0))
                    for pk in keys}
            diff = {pk: q for pk, q in diff.items() if q}
            if diff:
                pk = sorted(diff)[0]
                rep.add(f"cocycle({algebra.names[i]},{algebra.names[j]})", None,
                        False, f"residual {diff[pk]} at "
                        f"({algebra.names[pk[0]]},{algebra.names[pk[1]]})")
                bad += 1
    if not bad:
        rep.add("cobracket-cocycle", None, True)
    return rep


# -- Schouten bracket and Yang-Baxter conditions ----------------------------


def embed_r(algebra, r: RMatrix, positions, order=0) -> TensorElement:
    """r placed on two legs of U(g)^{(x)3}, unit on the remaining leg."""
    el = TensorElement.zero(algebra, 2, order)
    for (i, j), c in r.terms.items():
        el = el + outer(algebra.generator(i, order),
                        algebra.generator(j, order)).scale(c)
    return el.embed(positions, 3)


def schouten_bracket(algebra, r: RMatrix, order=0) -> TensorElement:
    """[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23] in U(g)^{(x)3}.

    r must be even, so each summand is an ordinary commutator of the
    embedded legs.
    """
    r.require_even(algebra)
    r12 = embed_r(algebra, r, (1, 2), order)
    r13 = embed_r(algebra, r, (1, 3), order)
    r23 = embed_r(algebra, r, (2, 3), order)
    out = TensorElement.zero(algebra, 3, order)
    for a, b in ((r12, r13), (r12, r23), (r13, r23)):
        out = out + (a * b - b * a)
    return out


def check_cybe(algebra, r: RMatrix) -> bool:
    """True iff [[r, r]] vanishes identically."""
    return schouten_bracket(algebra, r).is_zero()


def check_gcybe_invariance(algebra, r: RMatrix) -> bool:
    """True iff [[r, r]] commutes with x (x) 1 (x) 1 + 1 (x) x (x) 1 +
    1 (x) 1 (x) x for every basis element x ([[r, r]] is even, so the
    graded commutator is the ordinary one)."""
    s = schouten_bracket(algebra, r)
    if s.is_zero():
        return True
    order = s.order
    one = UEAElement.unit(algebra, order)
    for i in range(algebra.dim):
        x = algebra.generator(i, order)
        d = (outer(x, one).embed((1, 2), 3)
             + outer(x, one).embed((2, 3), 3)
             + outer(one, x).embed((2, 3), 3))
        if not (s * d - d * s).is_zero():
            return False
    return True
