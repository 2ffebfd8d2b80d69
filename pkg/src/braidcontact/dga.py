"""
Differential graded algebras on free generators.

Two fixtures are built in: the braid DGA (``a_ij`` in degree 0, ``b_ij`` in
degree 1, ``d b_ij = a_ij - phi_B(a_ij)``), which is an invariant of the
braid word's conjugacy class and not of the closed knot, and the four-generator
unknot DGA over F_2. Anything else can be loaded from JSON.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .braid import BraidWord, closure_permutation, serialize_braid
from .errors import BraidContactError, RingMismatchError, UnknownSymbolError
from .ncalg import (
    GF2, INHOMOGENEOUS, ZZ, GenSym, NCPoly, Ring, Word, b, named, parse_symbol,
)
from .phi import a_generators, phi_braid


class ClosureNotKnotWarning(UserWarning):
    """The braid closes up to a link with more than one component."""


class DGA:
    """A free DGA ``(A, d)``: graded generators plus the differential on them.

    For braid DGAs the differential is expanded lazily, because the
    polynomials ``phi_B(a_ij)`` grow quickly with the word length and some
    consumers (augmentation counts) never need them.
    """

    def __init__(
        self,
        generators: Iterable[GenSym],
        differential: Mapping[GenSym, NCPoly] | None,
        ring: Ring = ZZ,
        kind: str = "custom",
        n: int | None = None,
        braid: BraidWord | None = None,
        validate: bool = True,
    ):
        self.generators: tuple[GenSym, ...] = tuple(sorted(set(generators)))
        self.ring = ring
        self.kind = kind
        self.n = n
        self.braid = braid
        self._gen_set = frozenset(self.generators)
        self._differential: dict[GenSym, NCPoly] | None = None
        self._validate = validate
        if differential is not None:
            self._set_differential(differential)
        elif braid is None:
            self._set_differential({})

    def _set_differential(self, differential: Mapping[GenSym, NCPoly]) -> None:
        table = {}
        for g in self.generators:
            p = differential.get(g, NCPoly.zero(self.ring))
            if p.ring != self.ring:
                raise RingMismatchError(f"d{g.name} lives over {p.ring}, DGA over {self.ring}")
            table[g] = p
        extra = set(differential) - self._gen_set
        if extra:
            raise UnknownSymbolError(f"differential given for undeclared {sorted(extra)}")
        self._differential = table
        if self._validate:
            self.validate()

    @property
    def differential_map(self) -> dict[GenSym, NCPoly]:
        if self._differential is None:
            assert self.braid is not None
            self._set_differential(_braid_differential(self.braid, self.ring))
        return self._differential

    def d(self, g: GenSym) -> NCPoly:
        """Differential of a single generator."""
        if g not in self._gen_set:
            raise UnknownSymbolError(f"{g.name} is not a generator")
        return self.differential_map[g]

    def validate(self) -> None:
        for g, p in self.differential_map.items():
            unknown = p.symbols() - self._gen_set
            if unknown:
                raise UnknownSymbolError(
                    f"d{g.name} uses undeclared symbols {sorted(s.name for s in unknown)}")
            deg = p.degree()
            if deg is not None and deg != g.degree - 1:
                shown = deg if deg != INHOMOGENEOUS else "inhomogeneous"
                raise BraidContactError(
                    f"d{g.name} has degree {shown}, expected {g.degree - 1}")

    def degree_zero_generators(self) -> list[GenSym]:
        return [g for g in self.generators if g.degree == 0]

    def differential(self, p: NCPoly) -> NCPoly:
        return differential(self, p)

    def expansion_factor(self) -> int:
        """Longest word appearing in any generator's differential."""
        return max((p.max_word_length() for p in self.differential_map.values()), default=0)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {"ring": self.ring.name}
        if self.n is not None:
            out["n"] = self.n
        out["kind"] = self.kind
        if self.braid is not None:
            out["braid"] = serialize_braid(self.braid)
        out["generators"] = [{"name": g.name, "degree": g.degree} for g in self.generators]
        out["differential"] = {g.name: self.d(g).to_json() for g in self.generators}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> DGA:
        ring = Ring.parse(data["ring"])
        degrees = {g["name"]: int(g["degree"]) for g in data["generators"]}
        gens = []
        for name, deg in degrees.items():
            s = parse_symbol(name, degrees)
            if s.degree != deg:
                raise BraidContactError(f"{name} must have degree {s.degree}, got {deg}")
            gens.append(s)
        diff = {}
        for name, poly in data.get("differential", {}).items():
            diff[parse_symbol(name, degrees)] = NCPoly.from_json(poly, ring, degrees)
        n = data.get("n")
        if n is not None:
            for s in gens:
                if not s.in_range(int(n)):
                    raise BraidContactError(f"{s.name} out of range for n={n}")
        return cls(gens, diff, ring, kind=data.get("kind", "custom"), n=n)

    def __repr__(self) -> str:
        return f"DGA(kind={self.kind!r}, ring={self.ring}, generators={len(self.generators)})"


def _braid_differential(w: BraidWord, ring: Ring) -> dict[GenSym, NCPoly]:
    phi = phi_braid(w)
    out = {}
    for s in a_generators(w.n):
        rel = NCPoly.symbol(s, ZZ) - phi.image(s)
        if ring.modulus:
            rel = rel.reduce_mod(ring.modulus)
        out[b(s.i, s.j)] = rel
    return out


def braid_generators(n: int) -> list[GenSym]:
    return a_generators(n) + [b(s.i, s.j) for s in a_generators(n)]


def braid_dga(w: BraidWord, ring: Ring = ZZ, check: bool = True) -> DGA:
    """The braid DGA of ``w``: ``d a_ij = 0``, ``d b_ij = a_ij - phi_B(a_ij)``.

    With ``check=True`` the differential is expanded immediately and
    ``d^2 = 0`` is asserted; with ``check=False`` it is expanded on demand.
    A :class:`ClosureNotKnotWarning` is issued when the closure has more than
    one component (the DGA is still a valid braid invariant).
    """
    if w.n >= 2 and closure_permutation(w).cycle_count != 1:
        warnings.warn(
            f"closure of {serialize_braid(w)} has {closure_permutation(w).cycle_count} "
            "components; the braid DGA is still defined",
            ClosureNotKnotWarning, stacklevel=2)
    d = DGA(braid_generators(w.n), None, ring, kind="braid", n=w.n, braid=w)
    if check:
        report = check_d_squared(d)
        if not report.ok:
            raise AssertionError(f"d^2 != 0 for braid {serialize_braid(w)}: {report}")
    return d


def unknot_dga() -> DGA:
    """Four generators over F_2: ``|a_i| = 1``, ``|b_i| = 2``, ``d a_i = 0``, ``d b_i = a_1 + a_2``."""
    a1, a2 = named("a_1", 1), named("a_2", 1)
    b1, b2 = named("b_1", 2), named("b_2", 2)
    rel = NCPoly.symbol(a1, GF2) + NCPoly.symbol(a2, GF2)
    return DGA([a1, a2, b1, b2], {b1: rel, b2: rel}, GF2, kind="unknot")


def differential(d: DGA, p: NCPoly) -> NCPoly:
    """Extend ``d`` to ``p`` linearly and by ``d(xy) = (dx)y + (-1)^|x| x dy``."""
    if p.ring != d.ring:
        raise RingMismatchError(f"polynomial over {p.ring}, DGA over {d.ring}")
    table = d.differential_map
    total: dict[Word, int] = {}
    for w, c in p.terms.items():
        prefix_deg = 0
        for t, g in enumerate(w):
            dg = table.get(g)
            if dg is None:
                raise UnknownSymbolError(f"{g.name} is not a generator")
            if dg.terms:
                sign = -c if prefix_deg % 2 else c
                left, right = w[:t], w[t + 1:]
                for u, v in dg.terms.items():
                    key = left + u + right
                    total[key] = total.get(key, 0) + sign * v
            prefix_deg += g.degree
    return NCPoly(total, d.ring)


@dataclass
class DSquaredReport:
    violations: dict[GenSym, NCPoly] = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "d^2 = 0: PASS" if self.ok else "d^2 = 0: FAIL"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "checked": self.checked,
            "violations": {g.name: p.to_json() for g, p in sorted(self.violations.items())},
        }


def check_d_squared(d: DGA) -> DSquaredReport:
    report = DSquaredReport(checked=len(d.generators))
    for g in d.generators:
        dd = differential(d, d.d(g))
        if dd:
            report.violations[g] = dd
    return report
