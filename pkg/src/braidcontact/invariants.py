"""
Computable invariants of a DGA.

* Augmentations into F_q, found by exhaustive scan of all assignments of the
  degree-0 generators. The scan is chunked by assignment index so the result
  does not depend on how it is partitioned across workers.
* Graded homology ranks over F_q, truncated by word length.
* A conjugation experiment on braid words.

Degree-0 homology of a braid DGA is a quotient of a free algebra by a two-sided
ideal and is not attempted; augmentation counts and truncated ranks are the
computable proxies.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .braid import BraidWord, conjugate, random_braid, serialize_braid
from .dga import DGA, ClosureNotKnotWarning, braid_dga, differential
from .errors import BudgetExceededError, BraidContactError, RingMismatchError
from .gfp import EchelonBasis
from .ncalg import GenSym, NCPoly, Word, is_prime
from .phi import phi_letter

DEFAULT_AUG_BUDGET = 2 ** 24
DEFAULT_WORD_BUDGET = 200_000
CHUNK = 1 << 16
RNG_ALGORITHM = "PCG64"


def _env_budget(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def aug_budget() -> int:
    return _env_budget("BRAIDCONTACT_AUG_BUDGET", DEFAULT_AUG_BUDGET)


def word_budget() -> int:
    return _env_budget("BRAIDCONTACT_WORD_BUDGET", DEFAULT_WORD_BUDGET)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_prime(q: int) -> None:
    if not is_prime(q):
        raise BraidContactError(f"{q} is not prime")


def _check_ring(d: DGA, q: int) -> None:
    if d.ring.modulus not in (0, q):
        raise RingMismatchError(f"cannot evaluate a DGA over {d.ring} in F_{q}")


# -- augmentations ----------------------------------------------------------


@dataclass(frozen=True)
class Augmentation:
    """Values in F_q of the degree-0 generators; every other generator maps to 0."""

    q: int
    values: tuple[tuple[GenSym, int], ...]

    def __getitem__(self, s: GenSym) -> int:
        for g, v in self.values:
            if g == s:
                return v
        return 0

    def evaluate(self, p: NCPoly) -> int:
        """Commutative evaluation of ``p`` in F_q."""
        vals = dict(self.values)
        total = 0
        for w, c in p.terms.items():
            t = c
            for s in w:
                t = t * vals.get(s, 0) % self.q
                if not t:
                    break
            total += t
        return total % self.q

    def to_json(self) -> dict:
        return {"q": self.q, "values": {g.name: v for g, v in self.values}}


def _value_dtype(q: int):
    # a letter table entry evaluates to at most 2 (q-1)^3 before reduction
    bound = 2 * (q - 1) ** 3
    if bound < 2 ** 8:
        return np.uint8
    if bound < 2 ** 15:
        return np.int16
    return np.int64


def _digits(indices: np.ndarray, q: int, m: int, dtype=np.int64) -> np.ndarray:
    """Assignment indices as base-q digit columns, first generator most significant."""
    idx = np.array(indices, dtype=np.int64)
    cols = np.empty((m, idx.size), dtype=dtype)
    for g in range(m - 1, -1, -1):
        cols[g] = idx % q
        idx //= q
    return cols


class _RelationEvaluator:
    """Vectorised commutative evaluation of the relations ``e(dg) = 0``."""

    def __init__(self, d: DGA, q: int, gens: list[GenSym]):
        self.q = q
        pos = {g: k for k, g in enumerate(gens)}
        self.relations: list[dict[tuple[int, ...], int]] = []
        for g in d.generators:
            dg = d.d(g)
            rel: dict[tuple[int, ...], int] = {}
            for w, c in dg.terms.items():
                if any(s not in pos for s in w):
                    continue  # a generator of nonzero degree maps to 0
                key = tuple(sorted(pos[s] for s in w))
                rel[key] = (rel.get(key, 0) + c) % q
            rel = {k: v for k, v in rel.items() if v}
            if rel or dg:
                self.relations.append(rel)

    def __call__(self, cols: np.ndarray) -> np.ndarray:
        q = self.q
        size = cols.shape[1]
        ok = np.ones(size, dtype=bool)
        cache: dict[tuple[int, ...], np.ndarray] = {(): np.ones(size, dtype=np.int64)}

        def monomial(key):
            got = cache.get(key)
            if got is None:
                got = cache[key] = monomial(key[:-1]) * cols[key[-1]] % q
            return got

        for rel in self.relations:
            acc = np.zeros(size, dtype=np.int64)
            for key, c in rel.items():
                acc = (acc + c * monomial(key)) % q
            ok &= acc == 0
        return ok


class _BraidPullback:
    """Relations of a braid DGA via ``e o phi_B``, pulled back one letter at a time.

    ``e(phi_B(a))`` is computed as ``(e o phi_{i_l} o ... o phi_{i_1})(a)`` by
    substituting the current values into each small letter table, so the
    (possibly huge) polynomial ``phi_B(a)`` is never expanded.
    """

    def __init__(self, w: BraidWord, q: int, gens: list[GenSym]):
        self.q = q
        pos = {g: k for k, g in enumerate(gens)}
        self.steps = []
        for k in reversed(w.letters):
            hom = phi_letter(abs(k), 1 if k > 0 else -1, w.n)
            table = []
            for s in gens:
                img = hom.image(s)
                (word, c), = img.terms.items() if len(img) == 1 else ((None, None),)
                if word is not None and c == 1 and len(word) == 1:
                    table.append(pos[word[0]])  # relabelling: reuse the column
                else:
                    table.append([(c % q, [pos[x] for x in word]) for word, c in img])
            self.steps.append(table)

    def __call__(self, cols: np.ndarray) -> np.ndarray:
        q = self.q
        cur = list(cols)
        for table in self.steps:
            nxt = []
            for entry in table:
                if isinstance(entry, int):
                    nxt.append(cur[entry])
                    continue
                acc = None
                for c, idx in entry:
                    term = cur[idx[0]] if idx else np.ones_like(cur[0])
                    for x in idx[1:]:
                        term = term * cur[x]
                    if c != 1:
                        term = term * term.dtype.type(c)
                    acc = term if acc is None else acc + term
                nxt.append(acc % q)
            cur = nxt
        ok = np.ones(cols.shape[1], dtype=bool)
        for before, after in zip(cols, cur):
            ok &= before == after
        return ok


def _evaluator(d: DGA, q: int, gens: list[GenSym]):
    if d.kind == "braid" and d.braid is not None:
        return _BraidPullback(d.braid, q, gens)
    return _RelationEvaluator(d, q, gens)


def _scan(d: DGA, q: int, budget: int | None, workers: int) -> tuple[list[GenSym], list[np.ndarray]]:
    _check_prime(q)
    _check_ring(d, q)
    gens = d.degree_zero_generators()
    m = len(gens)
    budget = aug_budget() if budget is None else budget
    total = q ** m
    if total > budget:
        raise BudgetExceededError(
            f"{q}^{m} = {total} assignments exceed the budget {budget}; "
            "raise the budget (BRAIDCONTACT_AUG_BUDGET) or lower q / n")
    if m == 0:
        # the empty assignment; relations only involve generators sent to 0
        ok = _evaluator(d, q, gens)(np.zeros((0, 1), dtype=np.int64))
        return gens, [ok]
    evaluate = _evaluator(d, q, gens)
    dtype = _value_dtype(q) if isinstance(evaluate, _BraidPullback) else np.int64
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]

    def run(bound):
        lo, hi = bound
        return evaluate(_digits(np.arange(lo, hi), q, m, dtype))

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            masks = list(pool.map(run, bounds))
    else:
        masks = [run(bd) for bd in bounds]
    return gens, masks


def enumerate_augmentations(
    d: DGA, q: int, budget: int | None = None, workers: int = 1
) -> list[Augmentation]:
    """All augmentations ``d -> F_q`` in lexicographic order of assignment."""
    gens, masks = _scan(d, q, budget, workers)
    out = []
    offset = 0
    for mask in masks:
        hits = np.flatnonzero(mask) + offset
        cols = _digits(hits, q, len(gens))
        for t in range(hits.size):
            out.append(Augmentation(q, tuple(zip(gens, (int(v) for v in cols[:, t])))))
        offset += mask.size
    return out


def aug_count(d: DGA, q: int, budget: int | None = None, workers: int = 1) -> int:
    _, masks = _scan(d, q, budget, workers)
    return int(sum(int(mask.sum()) for mask in masks))


def verify_augmentation(d: DGA, aug: Augmentation) -> bool:
    """Re-check the relations ``e(dg) = 0`` through the expanded differential."""
    return all(aug.evaluate(d.d(g)) == 0 for g in d.generators)


# -- truncated homology -----------------------------------------------------


@dataclass
class HomologyReport:
    q: int
    degree: int
    cutoff: int
    chain_dim: int
    kernel_dim: int
    image_dim: int
    rank: int
    incoming_cutoff: int
    stable: bool | None = None
    rank_next: int | None = None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "degree": self.degree,
            "L": self.cutoff,
            "chain_dim": self.chain_dim,
            "kernel_dim": self.kernel_dim,
            "image_dim": self.image_dim,
            "rank": self.rank,
            "incoming_cutoff": self.incoming_cutoff,
            "stable": self.stable,
            "rank_next": self.rank_next,
        }


def count_words(gens: list[GenSym], degree: int, max_len: int) -> int:
    """Number of words of the given degree with length <= max_len."""
    counts: dict[int, int] = {0: 1}
    total = 1 if degree == 0 else 0
    for _ in range(max_len):
        nxt: dict[int, int] = {}
        for deg, c in counts.items():
            for g in gens:
                nxt[deg + g.degree] = nxt.get(deg + g.degree, 0) + c
        counts = nxt
        total += counts.get(degree, 0)
    return total


def words_of_degree(gens: list[GenSym], degree: int, max_len: int,
                    budget: int | None = None) -> list[Word]:
    """Words of the given degree and length <= max_len, in canonical order."""
    budget = word_budget() if budget is None else budget
    n_words = count_words(gens, degree, max_len)
    if n_words > budget:
        raise BudgetExceededError(
            f"{n_words} words of degree {degree} up to length {max_len} exceed the budget "
            f"{budget} (BRAIDCONTACT_WORD_BUDGET)")
    gens = sorted(gens)
    out: list[Word] = []
    nonneg = all(g.degree >= 0 for g in gens)
    # remaining-degree pruning is only valid with nonnegative degrees
    for length in range(max_len + 1):
        def rec(prefix: tuple, deg: int):
            if len(prefix) == length:
                if deg == degree:
                    out.append(prefix)
                return
            for g in gens:
                nd = deg + g.degree
                if nonneg and nd > degree:
                    continue
                rec(prefix + (g,), nd)
        rec((), 0)
    return out


def _boundary_row(d: DGA, w: Word, q: int) -> dict[Word, int]:
    p = differential(d, NCPoly.word(w, ring=d.ring))
    return {u: c % q for u, c in p.terms.items() if c % q}


def _homology_at(d: DGA, q: int, degree: int, L: int, budget: int | None) -> HomologyReport:
    gens = list(d.generators)
    nonzero = [p for p in d.differential_map.values() if p]
    chains = words_of_degree(gens, degree, L, budget)

    outgoing = EchelonBasis(q)
    for w in chains:
        outgoing.add(_boundary_row(d, w, q))
    kernel = len(chains) - outgoing.rank

    if nonzero:
        e_min = min(p.min_word_length() for p in nonzero)
        incoming_cut = max(L + 1 - e_min, 0)
        sources = words_of_degree(gens, degree + 1, incoming_cut, budget)
    else:
        incoming_cut = 0
        sources = []
    # dim(image ∩ span of short words) = rank(image) - rank(image projected to long words)
    full = EchelonBasis(q)
    long_part = EchelonBasis(q)
    for w in sources:
        row = _boundary_row(d, w, q)
        full.add(row)
        long_part.add({u: c for u, c in row.items() if len(u) > L})
    image = full.rank - long_part.rank
    return HomologyReport(q, degree, L, len(chains), kernel, image, kernel - image, incoming_cut)


def homology_ranks(d: DGA, q: int, degree: int, L: int, budget: int | None = None,
                   check_stable: bool = True) -> HomologyReport:
    """Rank of degree-``degree`` homology over F_q truncated at word length ``L``.

    Chains are the degree-d words of length <= L. The kernel is exact (the
    boundary of such words is computed in full); boundaries come from
    degree-(d+1) words long enough to reach length <= L. ``stable`` records
    whether the rank agrees at cutoff ``L + 1`` (None if that exceeds the budget).
    """
    _check_prime(q)
    _check_ring(d, q)
    if L < 0:
        raise BraidContactError("length cutoff must be >= 0")
    report = _homology_at(d, q, degree, L, budget)
    if check_stable:
        try:
            nxt = _homology_at(d, q, degree, L + 1, budget)
        except BudgetExceededError:
            pass
        else:
            report.rank_next = nxt.rank
            report.stable = nxt.rank == report.rank
    return report


# -- conjugation experiment -------------------------------------------------


@dataclass
class ConjugationTrial:
    conjugator: BraidWord
    conjugate: BraidWord
    count: int

    def to_json(self) -> dict:
        return {"conjugator": serialize_braid(self.conjugator),
                "conjugate": serialize_braid(self.conjugate),
                "aug_count": self.count}


@dataclass
class ConjugationReport:
    braid: BraidWord
    q: int
    seed: int
    base_count: int
    trials: list[ConjugationTrial] = field(default_factory=list)

    @property
    def violations(self) -> list[ConjugationTrial]:
        return [t for t in self.trials if t.count != self.base_count]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "braid": serialize_braid(self.braid),
            "q": self.q,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "aug_count": self.base_count,
            "trials": [t.to_json() for t in self.trials],
            "violations": [t.to_json() for t in self.violations],
            "ok": self.ok,
        }


def random_conjugator(n: int, max_len: int, rng: np.random.Generator) -> BraidWord:
    length = int(rng.integers(0, max_len + 1))
    return random_braid(n, length, rng)


def conjugation_experiment(w: BraidWord, trials: int, q: int, seed: int,
                           max_conj_len: int = 4, budget: int | None = None,
                           workers: int = 1) -> ConjugationReport:
    """Compare ``aug_count`` of ``w`` with that of ``trials`` random conjugates ``g w g^-1``."""
    rng = make_rng(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClosureNotKnotWarning)
        base = aug_count(braid_dga(w, check=False), q, budget, workers)
        report = ConjugationReport(w, q, seed, base)
        for _ in range(trials):
            g = random_conjugator(w.n, max_conj_len, rng)
            cw = conjugate(w, g)
            count = aug_count(braid_dga(cw, check=False), q, budget, workers)
            report.trials.append(ConjugationTrial(g, cw, count))
    return report
