"""Exact linear algebra over F_p on sparse row vectors (``dict column -> value``)."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of F_p^N.

    Columns may be any hashable keys; ``order`` maps each key to its pivot
    priority (smaller is eliminated first). Unknown keys sort after known ones
    by insertion.
    """

    def __init__(self, p: int, order: Mapping[Hashable, int] | None = None):
        self.p = p
        self.order = dict(order) if order else {}
        self.pivots: dict[Hashable, dict[Hashable, int]] = {}

    def _rank(self, col) -> int:
        r = self.order.get(col)
        if r is None:
            r = self.order[col] = len(self.order)
        return r

    def reduce(self, row: Mapping[Hashable, int]) -> dict[Hashable, int]:
        p = self.p
        v = {c: x % p for c, x in row.items() if x % p}
        while v:
            lead = min(v, key=self._rank)
            piv = self.pivots.get(lead)
            if piv is None:
                return v
            f = v[lead]
            for c, x in piv.items():
                y = (v.get(c, 0) - f * x) % p
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def add(self, row: Mapping[Hashable, int]) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        v = self.reduce(row)
        if not v:
            return False
        lead = min(v, key=self._rank)
        inv = pow(v[lead], -1, self.p)
        self.pivots[lead] = {c: (x * inv) % self.p for c, x in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank_mod_p(rows: Iterable[Mapping[Hashable, int]], p: int) -> int:
    basis = EchelonBasis(p)
    for row in rows:
        basis.add(row)
    return basis.rank


def dense_rank_mod_p(matrix: Iterable[Iterable[int]], p: int) -> int:
    return rank_mod_p(({j: x for j, x in enumerate(r) if x} for r in matrix), p)
