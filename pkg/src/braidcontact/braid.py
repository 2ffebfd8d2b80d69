"""
Braid words in the Artin generators.

A braid on ``n`` strands is a sequence of nonzero integers ``k`` with
``1 <= |k| <= n - 1``; ``k`` stands for sigma_k and ``-k`` for its inverse.
The text form is ``"<n>: k1 k2 ..."``, e.g. ``"3: 1 -2 1"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BraidParseError, StrandMismatchError

_GRAMMAR = re.compile(r"^\s*(-?\d+)\s*:((?:\s*[+-]?\d+)*)\s*$")


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        if self.n < 1:
            raise BraidParseError(f"strand count must be >= 1, got {self.n}")
        for k in self.letters:
            if not 1 <= abs(k) <= self.n - 1:
                raise BraidParseError(f"letter {k} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return serialize_braid(self)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return concat(self, other)

    def free_reduce(self) -> BraidWord:
        return free_reduce(self)

    def inverse(self) -> BraidWord:
        return inverse(self)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"<n>: k1 k2 ..."``.

    >>> parse_braid("3: 1 -2 1")
    BraidWord(n=3, letters=(1, -2, 1))
    """
    m = _GRAMMAR.match(text)
    if m is None:
        raise BraidParseError(f"malformed braid {text!r}; expected e.g. '3: 1 -2 1'")
    n = int(m.group(1))
    letters = [int(tok) for tok in m.group(2).split()]
    if any(k == 0 for k in letters):
        raise BraidParseError("letter 0 is not an Artin generator")
    return BraidWord(n, tuple(letters))


def serialize_braid(w: BraidWord) -> str:
    if not w.letters:
        return f"{w.n}:"
    return f"{w.n}: " + " ".join(str(k) for k in w.letters)


def concat(w: BraidWord, g: BraidWord) -> BraidWord:
    if w.n != g.n:
        raise StrandMismatchError(f"strand counts differ: {w.n} vs {g.n}")
    return BraidWord(w.n, w.letters + g.letters)


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.n, tuple(-k for k in reversed(w.letters)))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent ``k, -k`` pairs until none remain."""
    stack: list[int] = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return BraidWord(w.n, tuple(stack))


def conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """Freely reduced ``g w g^-1``."""
    if w.n != g.n:
        raise StrandMismatchError(f"strand counts differ: {w.n} vs {g.n}")
    return free_reduce(BraidWord(w.n, g.letters + w.letters + inverse(g).letters))


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: add a strand and append sigma_n^{+-1}.

    This preserves the closure's link type but NOT the braid DGA; it is
    here for experiments only.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(w.n + 1, w.letters + (sign * w.n,))


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``{1..n}`` stored as the image tuple ``(p(1), ..., p(n))``."""

    images: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    @property
    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, p in enumerate(self.images, start=1):
            inv[p - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.images, start=1))

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)


def closure_permutation(w: BraidWord) -> Permutation:
    """Strand permutation of the braid: compose the transposition (|k|, |k|+1) per letter, left to right.

    ``p(i)`` is the final position of the strand that starts at position ``i``.
    """
    pos_of = list(range(w.n + 1))  # pos_of[strand] = current position
    at = list(range(w.n + 1))      # at[position] = strand
    for k in w.letters:
        k = abs(k)
        s, t = at[k], at[k + 1]
        at[k], at[k + 1] = t, s
        pos_of[s], pos_of[t] = k + 1, k
    return Permutation(tuple(pos_of[1:]))


def random_braid(n: int, length: int, rng: np.random.Generator) -> BraidWord:
    """Uniform random word of exactly ``length`` letters (no reduction)."""
    if n < 2:
        return BraidWord(n, ())
    idx = rng.integers(1, n, size=length)
    sgn = rng.choice(np.array([-1, 1]), size=length)
    return BraidWord(n, tuple(int(s * k) for s, k in zip(sgn, idx)))


def all_braids(n: int, max_length: int) -> Iterable[BraidWord]:
    """Every braid word on ``n`` strands with at most ``max_length`` letters."""
    alphabet: Sequence[int] = [k for k in range(1, n) for k in (k, -k)]
    frontier: list[tuple[int, ...]] = [()]
    for length in range(max_length + 1):
        yield from (BraidWord(n, letters) for letters in frontier)
        if length < max_length:
            frontier = [letters + (k,) for letters in frontier for k in alphabet]
