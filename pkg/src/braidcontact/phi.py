"""
The braid-group action on the free algebra generated by the ``a_ij``.

``phi_letter(k, +1, n)`` is the substitution attached to sigma_k; the
composite for a word ``sigma_{i_1} ... sigma_{i_l}`` is
``phi_{i_l} o ... o phi_{i_1}``, so the first letter acts first.
"""

from __future__ import annotations

from functools import lru_cache

from .braid import BraidWord
from .errors import BraidContactError
from .ncalg import ZZ, GenSym, NCPoly, SubstitutionHom, a


def a_generators(n: int) -> list[GenSym]:
    return [a(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _x(i: int, j: int) -> NCPoly:
    return NCPoly.symbol(a(i, j), ZZ)


@lru_cache(maxsize=None)
def phi_letter(k: int, sign: int, n: int) -> SubstitutionHom:
    """Substitution for sigma_k (``sign=+1``) or its inverse (``sign=-1``) on ``n`` strands."""
    if not 1 <= k <= n - 1:
        raise BraidContactError(f"generator index {k} out of range for {n} strands")
    if sign not in (1, -1):
        raise BraidContactError("sign must be +1 or -1")
    k1 = k + 1
    img: dict[GenSym, NCPoly] = {
        a(k, k1): _x(k1, k),
        a(k1, k): _x(k, k1),
    }
    for i in range(1, n + 1):
        if i in (k, k1):
            continue
        if sign == 1:
            img[a(k, i)] = -_x(k1, i) - _x(k1, k) * _x(k, i)
            img[a(i, k)] = -_x(i, k1) - _x(i, k) * _x(k, k1)
            img[a(k1, i)] = _x(k, i)
            img[a(i, k1)] = _x(i, k)
        else:
            # two-sided inverse of the sign=+1 table (checked in the test suite)
            img[a(k, i)] = _x(k1, i)
            img[a(i, k)] = _x(i, k1)
            img[a(k1, i)] = -_x(k, i) - _x(k, k1) * _x(k1, i)
            img[a(i, k1)] = -_x(i, k) - _x(i, k1) * _x(k1, k)
    return SubstitutionHom(img, ZZ, a_generators(n))


def phi_braid(w: BraidWord) -> SubstitutionHom:
    """Composite substitution of a braid word, first letter innermost."""
    gens = a_generators(w.n)
    table = {s: NCPoly.symbol(s, ZZ) for s in gens}
    # phi_B = phi_{i_l} o ... o phi_{i_1}: peel letters off the front so each
    # step substitutes the current composite into a small letter table
    current = SubstitutionHom.identity(gens, ZZ)
    for k in reversed(w.letters):
        letter = phi_letter(abs(k), 1 if k > 0 else -1, w.n)
        table = {s: current.apply(letter.image(s)) for s in gens}
        current = SubstitutionHom(table, ZZ, gens)
    return current
