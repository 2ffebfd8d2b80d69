"""Independent reference implementations used to cross-check the package.

Nothing here imports the algebra, scan or elimination code under test: the
naive augmentation counter works from DGA JSON text, the phi oracle uses
sympy noncommutative symbols, and ranks come from sympy's GF(p) matrices.
"""

from __future__ import annotations

import itertools
import json
import math

import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix


def naive_aug_count(dga_json: str, q: int) -> int:
    """Count augmentations into F_q by brute force over all degree-0 values.

    Every relation is evaluated one symbol at a time: a word's value is the
    product of its letters' values, where letters of nonzero degree are 0.
    """
    data = json.loads(dga_json)
    degree = {g["name"]: g["degree"] for g in data["generators"]}
    zero_deg = [name for name in sorted(degree) if degree[name] == 0]
    relations = [terms for terms in data["differential"].values() if terms]
    count = 0
    for values in itertools.product(range(q), repeat=len(zero_deg)):
        val = dict(zip(zero_deg, values))
        ok = True
        for terms in relations:
            total = 0
            for term in terms:
                prod = term["coeff"]
                for sym in term["word"]:
                    prod = prod * (val[sym] if degree[sym] == 0 else 0) % q
                total = (total + prod) % q
            if total:
                ok = False
                break
        count += ok
    return count


def _sym(i: int, j: int) -> sympy.Symbol:
    return sympy.Symbol(f"a_{i}_{j}", commutative=False)


def sympy_phi_letter(k: int, sign: int, n: int) -> dict:
    """The letter substitution (or its inverse) written out with sympy symbols."""
    x = _sym
    table = {x(i, j): x(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    k1 = k + 1
    table[x(k, k1)], table[x(k1, k)] = x(k1, k), x(k, k1)
    for i in range(1, n + 1):
        if i in (k, k1):
            continue
        if sign > 0:
            table[x(k, i)] = -x(k1, i) - x(k1, k) * x(k, i)
            table[x(i, k)] = -x(i, k1) - x(i, k) * x(k, k1)
            table[x(k1, i)] = x(k, i)
            table[x(i, k1)] = x(i, k)
        else:
            table[x(k, i)] = x(k1, i)
            table[x(i, k)] = x(i, k1)
            table[x(k1, i)] = -x(k, i) - x(k, k1) * x(k1, i)
            table[x(i, k1)] = -x(i, k) - x(i, k1) * x(k1, k)
    return table


def sympy_phi_braid(n: int, letters: tuple[int, ...]) -> dict:
    """Compose letter substitutions so the first letter is applied innermost."""
    current = {s: s for s in sympy_phi_letter(1, 1, n)} if n >= 2 else {}
    for letter in letters:
        step = sympy_phi_letter(abs(letter), 1 if letter > 0 else -1, n)
        current = {s: sympy.expand(current[s].xreplace(step)) for s in current}
    return current


def ncpoly_to_sympy(poly_json: list[dict]) -> sympy.Expr:
    total = sympy.Integer(0)
    for term in poly_json:
        word = sympy.Integer(1)
        for name in term["word"]:
            word = word * sympy.Symbol(name, commutative=False)
        total += term["coeff"] * word
    return sympy.expand(total)


def rank_mod_p(matrix: list[list[int]], p: int) -> int:
    if not matrix or not matrix[0]:
        return 0
    dm = DomainMatrix([[GF(p)(v) for v in row] for row in matrix],
                      (len(matrix), len(matrix[0])), GF(p))
    return dm.rank()


# Closed-form Morse data for f_1 - f_2 = (2 + cos 2 pi t, sin 2 pi t): the
# distance r(t) = sqrt(5 + 4 cos 2 pi t) has its maximum 3 at t = 0 and its
# minimum 1 at t = 1/2, and the direction of f_1 - f_2 is angle 0 at both.
_TWO_PI = 2 * math.pi
CLOSED_FORM_POINTS = {
    # (t, theta): (value, index)
    (0.0, 0.0): (3.0, 2),
    (0.0, 0.5): (-3.0, 0),
    (0.5, 0.0): (1.0, 1),
    (0.5, 0.5): (-1.0, 1),
}
CLOSED_FORM_R2 = {"max": -2 * _TWO_PI ** 2 / 3, "min": 2 * _TWO_PI ** 2}
