import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from braidcontact.gfp import EchelonBasis, dense_rank_mod_p, rank_mod_p

from oracles import rank_mod_p as oracle_rank


def test_small_cases():
    assert dense_rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert dense_rank_mod_p([[1, 2], [2, 1]], 3) == 1  # det = -3
    assert dense_rank_mod_p([[1, 2], [2, 1]], 5) == 2
    assert dense_rank_mod_p([], 2) == 0


def test_echelon_basis_tracks_span():
    e = EchelonBasis(3)
    assert e.add({"x": 1, "y": 2})
    assert not e.add({"x": 2, "y": 1})  # 2 * first row mod 3
    assert e.add({"z": 1})
    assert e.rank == 2
    assert e.reduce({"x": 1, "y": 2, "z": 1}) == {}


def test_sparse_rows_with_any_keys():
    rows = [{("a",): 1, ("b",): 1}, {("b",): 1, ("c",): 1}, {("a",): 1, ("c",): 1}]
    assert rank_mod_p(rows, 2) == 2
    assert rank_mod_p(rows, 3) == 3


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 6), st.data())
def test_rank_matches_sympy(p, r, c, data):
    m = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r))
    assert dense_rank_mod_p(m, p) == oracle_rank(m, p)
    sparse = [{j: v for j, v in enumerate(row) if v} for row in m]
    assert rank_mod_p(sparse, p) == oracle_rank(m, p)
    assert dense_rank_mod_p(np.array(m).T.tolist(), p) == oracle_rank(m, p)
