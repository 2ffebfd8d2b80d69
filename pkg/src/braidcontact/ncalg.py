"""
Exact noncommutative polynomial arithmetic.

Polynomials live in the free associative unital algebra on graded generator
symbols, with coefficients in Z or in a prime field F_p. A polynomial is a
finite map ``word -> nonzero coefficient`` where a word is a tuple of
:class:`GenSym` (the empty tuple is the unit).

Braid symbols ``a_i_j`` have degree 0 and ``b_i_j`` degree 1; named symbols
(e.g. the unknot generators ``a_1``) carry an explicit degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar, Iterable, Iterator, Mapping, Union

from .errors import BraidContactError, RingMismatchError, UnknownSymbolError

INHOMOGENEOUS = "inhomogeneous"

_KIND_RANK = {"a": 0, "b": 1, "named": 2}
_BRAID_NAME = re.compile(r"^([ab])_(\d+)_(\d+)$")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``modulus == 0`` is Z, otherwise the prime field F_modulus."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus != 0 and not is_prime(self.modulus):
            raise BraidContactError(f"F_{self.modulus}: modulus must be prime")

    @classmethod
    def parse(cls, text: str) -> Ring:
        text = text.strip()
        if text == "Z":
            return cls(0)
        m = re.fullmatch(r"F_?(\d+)", text)
        if m is None:
            raise BraidContactError(f"unknown ring {text!r} (expected 'Z' or 'F_p')")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Z" if self.modulus == 0 else f"F_{self.modulus}"

    def reduce(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    def __str__(self) -> str:
        return self.name


ZZ = Ring(0)
GF2 = Ring(2)


@dataclass(frozen=True, eq=False)
class GenSym:
    """A generator symbol of the free algebra.

    Instances are interned: equal symbols are the same object, so hashing and
    equality are identity-based. That keeps dict lookups on long words cheap.
    Use the constructors :func:`a`, :func:`b` and :func:`named`.
    """

    kind: str
    i: int = 0
    j: int = 0
    label: str = ""
    degree: int = 0

    _interned: ClassVar[dict[tuple, GenSym]] = {}

    def __new__(cls, kind: str, i: int = 0, j: int = 0, label: str = "", degree: int = 0):
        key = (kind, int(i), int(j), label, int(degree))
        obj = cls._interned.get(key)
        if obj is None:
            cls._validate(*key)
            obj = cls._interned.setdefault(key, super().__new__(cls))
        return obj

    def __reduce__(self):
        return (GenSym, (self.kind, self.i, self.j, self.label, self.degree))

    @staticmethod
    def _validate(kind: str, i: int, j: int, label: str, degree: int) -> None:
        if kind in ("a", "b"):
            if i == j or i < 1 or j < 1:
                raise BraidContactError(f"invalid braid symbol indices ({i}, {j})")
            if degree != (0 if kind == "a" else 1):
                raise BraidContactError(f"{kind}-symbols have fixed degree")
        elif kind == "named":
            if not label or _BRAID_NAME.match(label):
                raise BraidContactError(f"invalid named symbol label {label!r}")
        else:
            raise BraidContactError(f"unknown symbol kind {kind!r}")

    @property
    def name(self) -> str:
        if self.kind == "named":
            return self.label
        return f"{self.kind}_{self.i}_{self.j}"

    @property
    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.i, self.j, self.label)

    def in_range(self, n: int) -> bool:
        return self.kind == "named" or (self.i <= n and self.j <= n)

    def __repr__(self) -> str:
        return self.name

    def __lt__(self, other: GenSym) -> bool:
        return self.sort_key < other.sort_key


def a(i: int, j: int) -> GenSym:
    return GenSym("a", i, j, degree=0)


def b(i: int, j: int) -> GenSym:
    return GenSym("b", i, j, degree=1)


def named(label: str, degree: int) -> GenSym:
    return GenSym("named", label=label, degree=degree)


def parse_symbol(name: str, degrees: Mapping[str, int] | None = None) -> GenSym:
    """Inverse of :attr:`GenSym.name`; named labels need their degree in ``degrees``."""
    m = _BRAID_NAME.match(name)
    if m:
        kind, i, j = m.group(1), int(m.group(2)), int(m.group(3))
        return a(i, j) if kind == "a" else b(i, j)
    if degrees is None or name not in degrees:
        raise UnknownSymbolError(f"unknown symbol {name!r}")
    return named(name, degrees[name])


Word = tuple  # tuple[GenSym, ...]


def word_degree(word: Word) -> int:
    return sum(s.degree for s in word)


def word_key(word: Word) -> tuple:
    return (len(word), tuple(s.sort_key for s in word))


Scalar = int
PolyLike = Union["NCPoly", int]


class NCPoly:
    """Element of the free algebra over ``ring``.

    Instances are treated as immutable; arithmetic returns new objects.

    >>> x = NCPoly.symbol(a(1, 2)); y = NCPoly.symbol(a(2, 1))
    >>> str(x * y - y * x)
    'a_1_2 a_2_1 - a_2_1 a_1_2'
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | None = None, ring: Ring = ZZ):
        self.ring = ring
        clean = {}
        if terms:
            for w, c in terms.items():
                c = ring.reduce(int(c))
                if c:
                    clean[tuple(w)] = c
        self.terms: dict[Word, int] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Word, int], ring: Ring) -> NCPoly:
        # terms must already be reduced with zeros pruned
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ring: Ring = ZZ) -> NCPoly:
        return cls._raw({}, ring)

    @classmethod
    def one(cls, ring: Ring = ZZ) -> NCPoly:
        return cls._raw({(): 1}, ring)

    @classmethod
    def constant(cls, c: int, ring: Ring = ZZ) -> NCPoly:
        return cls({(): c}, ring)

    @classmethod
    def symbol(cls, s: GenSym, ring: Ring = ZZ) -> NCPoly:
        return cls._raw({(s,): 1}, ring)

    @classmethod
    def word(cls, word: Iterable[GenSym], coeff: int = 1, ring: Ring = ZZ) -> NCPoly:
        return cls({tuple(word): coeff}, ring)

    # -- inspection ---------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Word, int]]:
        """Yield ``(word, coeff)`` in canonical order."""
        for w in sorted(self.terms, key=word_key):
            yield w, self.terms[w]

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> set[GenSym]:
        return {s for w in self.terms for s in w}

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def min_word_length(self) -> int:
        return min((len(w) for w in self.terms), default=0)

    def degree(self):
        """Common degree of all words, :data:`INHOMOGENEOUS`, or ``None`` for zero."""
        degs = {word_degree(w) for w in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: PolyLike) -> NCPoly:
        if isinstance(other, NCPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return NCPoly.constant(other, self.ring)
        return NotImplemented

    def __add__(self, other: PolyLike) -> NCPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        red = self.ring.reduce
        for w, c in other.terms.items():
            v = red(out.get(w, 0) + c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(out, self.ring)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        red = self.ring.reduce
        return NCPoly._raw({w: red(-c) for w, c in self.terms.items()}, self.ring)

    def __sub__(self, other: PolyLike) -> NCPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> NCPoly:
        return (-self) + other

    def __mul__(self, other: PolyLike) -> NCPoly:
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        red = self.ring.reduce
        return NCPoly._raw({w: v for w, c in out.items() if (v := red(c))}, self.ring)

    def __rmul__(self, other: int) -> NCPoly:
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> NCPoly:
        return NCPoly({w: c * v for w, v in self.terms.items()}, self.ring)

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def reduce_mod(self, q: int) -> NCPoly:
        """Reduce integer coefficients into F_q (zeros pruned)."""
        if not is_prime(q):
            raise BraidContactError(f"{q} is not prime")
        if self.ring.modulus not in (0, q):
            raise RingMismatchError(f"cannot reduce a polynomial over {self.ring} mod {q}")
        return NCPoly(self.terms, Ring(q))

    def lift(self) -> NCPoly:
        """The same coefficients read as integers (representatives in [0, p))."""
        return NCPoly._raw(dict(self.terms), ZZ)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NCPoly.constant(other, self.ring)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "word": [s.name for s in w]} for w, c in self]

    @classmethod
    def from_json(
        cls, data: list[dict], ring: Ring = ZZ, degrees: Mapping[str, int] | None = None
    ) -> NCPoly:
        terms: dict[Word, int] = {}
        for entry in data:
            w = tuple(parse_symbol(name, degrees) for name in entry["word"])
            terms[w] = terms.get(w, 0) + int(entry["coeff"])
        return cls(terms, ring)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self:
            if self.ring.modulus == 0 and c < 0:
                sign, mag = "-", -c
            else:
                sign, mag = "+", c
            body = " ".join(s.name for s in w)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag} {body}"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"NCPoly({self}, ring={self.ring})"


def add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p + q


def mul(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q


def degree(p: NCPoly):
    return p.degree()


def reduce_mod(p: NCPoly, q: int) -> NCPoly:
    return p.reduce_mod(q)


class SubstitutionHom:
    """Unital algebra homomorphism given by its values on generators.

    Symbols missing from ``images`` are fixed. ``domain`` records the
    generators the map is meant to act on (used for equality and display).
    """

    def __init__(self, images: Mapping[GenSym, NCPoly], ring: Ring = ZZ,
                 domain: Iterable[GenSym] | None = None):
        self.ring = ring
        self.images: dict[GenSym, NCPoly] = {}
        for s, p in images.items():
            if p.ring != ring:
                raise RingMismatchError(f"image of {s} lives over {p.ring}, not {ring}")
            self.images[s] = p
        self.domain: tuple[GenSym, ...] = tuple(
            sorted(domain if domain is not None else self.images))

    @classmethod
    def identity(cls, domain: Iterable[GenSym] = (), ring: Ring = ZZ) -> SubstitutionHom:
        return cls({}, ring, domain)

    def image(self, s: GenSym) -> NCPoly:
        p = self.images.get(s)
        return p if p is not None else NCPoly.symbol(s, self.ring)

    def __call__(self, p: NCPoly) -> NCPoly:
        return self.apply(p)

    def apply(self, p: NCPoly) -> NCPoly:
        if p.ring != self.ring:
            if self.ring.modulus == 0:
                return self.reduce_mod(p.ring.modulus).apply(p)
            raise RingMismatchError(f"cannot apply a hom over {self.ring} to {p.ring}")
        # memoise prefix products so shared prefixes are expanded once
        cache: dict[Word, NCPoly] = {(): NCPoly.one(self.ring)}
        total: dict[Word, int] = {}
        for w, c in p.terms.items():
            img = self._word_image(w, cache)
            for u, v in img.terms.items():
                total[u] = total.get(u, 0) + c * v
        return NCPoly(total, self.ring)

    def _word_image(self, w: Word, cache: dict[Word, NCPoly]) -> NCPoly:
        k = len(w)
        while w[:k] not in cache:
            k -= 1
        img = cache[w[:k]]
        for t in range(k, len(w)):
            img = img * self.image(w[t])
            cache[w[: t + 1]] = img
        return img

    def compose(self, inner: SubstitutionHom) -> SubstitutionHom:
        """``self ∘ inner``: apply ``inner`` first."""
        if inner.ring != self.ring:
            raise RingMismatchError("ring mismatch in composition")
        domain = sorted(set(self.domain) | set(inner.domain))
        return SubstitutionHom({s: self.apply(inner.image(s)) for s in domain},
                               self.ring, domain)

    def reduce_mod(self, q: int) -> SubstitutionHom:
        return SubstitutionHom({s: p.reduce_mod(q) for s, p in self.images.items()},
                               Ring(q), self.domain)

    def table(self) -> dict[GenSym, NCPoly]:
        return {s: self.image(s) for s in self.domain}

    def is_identity(self) -> bool:
        return all(self.image(s) == NCPoly.symbol(s, self.ring) for s in self.domain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubstitutionHom):
            return NotImplemented
        gens = set(self.domain) | set(other.domain)
        return self.ring == other.ring and all(
            self.image(s) == other.image(s) for s in gens)

    def __hash__(self):
        return hash((self.ring, frozenset((s, self.image(s)) for s in self.domain)))

    def to_json(self) -> dict[str, list[dict]]:
        return {s.name: self.image(s).to_json() for s in self.domain}

    def __repr__(self) -> str:
        rows = ", ".join(f"{s} -> {self.image(s)}" for s in self.domain)
        return f"SubstitutionHom({rows})"


def apply_hom(h: SubstitutionHom, p: NCPoly) -> NCPoly:
    return h.apply(p)
