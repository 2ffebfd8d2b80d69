"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from braidcontact.braid import BraidWord
from braidcontact.ncalg import ZZ, NCPoly, a, b

SYMBOLS = [a(1, 2), a(2, 1), a(1, 3), a(3, 2), b(1, 2)]

words = st.lists(st.sampled_from(SYMBOLS), max_size=3).map(tuple)


@st.composite
def polys(draw, ring=ZZ, max_terms=4):
    terms = draw(st.dictionaries(words, st.integers(-3, 3), max_size=max_terms))
    return NCPoly(terms, ring)


@st.composite
def braids(draw, min_n=1, max_n=4, max_len=5):
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from([k, -k])),
                            max_size=max_len))
    return BraidWord(n, tuple(letters))
