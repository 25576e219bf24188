"""Shared fixture algebras and independent oracles.

The gl(1|1) table is generated from 2x2 graded elementary matrices by a
plain Fraction-matrix supercommutator, independent of the kernel's
bracket machinery, so kernel results can be checked against it.
"""

from fractions import Fraction
from itertools import product

import pytest

from supertwist import (HSeries, LieSuperalgebra, TensorElement, Twist,
                        UEAElement, outer)

# basis order everywhere: E11, E22, E12, E21 (evens first)
GL11_NAMES = ("E11", "E22", "E12", "E21")
GL11_PARITIES = (0, 0, 1, 1)
_MATS = {
    "E11": ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))),
    "E22": ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1))),
    "E12": ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0))),
    "E21": ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))),
}


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2))
                       for j in range(2)) for i in range(2))


def _matsub(a, b, sign):
    return tuple(tuple(a[i][j] - sign * b[i][j] for j in range(2))
                 for i in range(2))


def gl11_oracle_bracket(i: int, j: int) -> dict:
    """Supercommutator of elementary matrices, expanded on the basis."""
    a, b = _MATS[GL11_NAMES[i]], _MATS[GL11_NAMES[j]]
    sign = -1 if GL11_PARITIES[i] and GL11_PARITIES[j] else 1
    m = _matsub(_matmul(a, b), _matmul(b, a), sign)
    out = {}
    for k, name in enumerate(GL11_NAMES):
        ek = _MATS[name]
        pos = [(r, c) for r in range(2) for c in range(2) if ek[r][c]][0]
        if m[pos[0]][pos[1]]:
            out[k] = m[pos[0]][pos[1]]
    return out


def gl11_structure_constants() -> dict:
    table = {}
    for i in range(4):
        for j in range(4):
            terms = gl11_oracle_bracket(i, j)
            if terms:
                table[(i, j)] = [(k, c) for k, c in terms.items()]
    return table


@pytest.fixture(scope="session")
def gl11():
    return LieSuperalgebra(list(zip(GL11_NAMES, GL11_PARITIES)),
                           gl11_structure_constants())


@pytest.fixture(scope="session")
def odd_abelian():
    return LieSuperalgebra.from_table([("psi", 1)], {})


@pytest.fixture(scope="session")
def solvable():
    """[H, psi] = psi."""
    return LieSuperalgebra.from_table(
        [("H", 0), ("psi", 1)], {(0, 1): [(1, Fraction(1))]})


@pytest.fixture(scope="session")
def abelian_even():
    return LieSuperalgebra.from_table([("X", 0), ("Y", 0)], {})


def psi_twist(algebra, order=4) -> Twist:
    """F = 1 + h psi (x) psi over an algebra whose last generator is psi."""
    i = algebra.index("psi")
    x = algebra.generator(i, order)
    el = TensorElement.unit(algebra, 2, order) \
        + outer(x, x).scale(HSeries.monomial(1, 1, order))
    return Twist(el)


def exp_twist(algebra, order=4) -> Twist:
    """Truncation of exp(h X (x) Y) over the even abelian pair."""
    x = algebra.generator(algebra.index("X"), order)
    y = algebra.generator(algebra.index("Y"), order)
    el = TensorElement.unit(algebra, 2, order)
    xk = UEAElement.unit(algebra, order)
    yk = UEAElement.unit(algebra, order)
    fact = 1
    for k in range(1, order + 1):
        xk = xk * x
        yk = yk * y
        fact *= k
        el = el + outer(xk, yk).scale(
            HSeries.monomial(k, Fraction(1, fact), order))
    return Twist(el)


def pbw_monomials_up_to(algebra, max_degree):
    """Every normal-ordered monomial of total degree <= max_degree."""
    from supertwist import PBWMonomial
    evens = [i for i in range(algebra.dim) if algebra.parities[i] == 0]
    odds = [i for i in range(algebra.dim) if algebra.parities[i] == 1]
    out = []
    even_ranges = [range(max_degree + 1)] * len(evens)
    odd_ranges = [range(2)] * len(odds)
    for ee in product(*even_ranges) if evens else [()]:
        for oo in product(*odd_ranges) if odds else [()]:
            deg = sum(ee) + sum(oo)
            if deg > max_degree:
                continue
            word = [(i, e) for i, e in zip(evens, ee) if e]
            word += [(i, e) for i, e in zip(odds, oo) if e]
            out.append(PBWMonomial(tuple(word)))
    return out
