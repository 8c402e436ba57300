"""Row reduction against a span-counting oracle.

The oracle computes rank as log_q of the row-span cardinality by
enumerating every linear combination — no elimination involved, so it
cannot share a bug with the code under test.
"""

import numpy as np
import pytest

from bilrank import linalg
from bilrank.gf import field_for_order


def span_size_rank(field, mat) -> int:
    """Rank via |row span| = q^rank, enumerating all q^rows combinations."""
    rows = [list(map(int, r)) for r in np.asarray(mat)]
    ncols = len(rows[0]) if rows else 0
    span = set()
    combos = linalg.code_vectors(field.q, len(rows))
    for combo in combos:
        acc = [0] * ncols
        for c, row in zip(combo, rows):
            if c:
                acc = [field.add(a, field.mul(int(c), v)) for a, v in zip(acc, row)]
        span.add(tuple(acc))
    size = len(span)
    r = 0
    while field.q**r < size:
        r += 1
    assert field.q**r == size, "row span of a matrix must be a subspace"
    return r


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_rank_matches_span_counting_oracle(q):
    F = field_for_order(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        mat = rng.integers(0, q, size=(rng.integers(1, 5), rng.integers(1, 5)))
        assert linalg.rank(F, mat) == span_size_rank(F, mat)


def test_rref_is_canonical_and_idempotent():
    F = field_for_order(3)
    mat = [[0, 1, 0], [2, 0, 0], [2, 1, 0]]
    rows, piv = linalg.rref(F, mat)
    assert piv == [0, 1]
    assert rows.tolist() == [[1, 0, 0], [0, 1, 0]]
    again, piv2 = linalg.rref(F, rows)
    assert (again == rows).all() and piv2 == piv


def test_rref_leading_ones_and_cleared_columns():
    F = field_for_order(5)
    rng = np.random.default_rng(7)
    for _ in range(25):
        mat = rng.integers(0, 5, size=(4, 5))
        rows, piv = linalg.rref(F, mat)
        for i, p in enumerate(piv):
            assert rows[i, p] == 1
            col = rows[:, p]
            assert (col == np.eye(len(piv), dtype=np.int64)[:, i][: len(rows)]).all()


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_null_space_annihilates_and_has_complementary_dimension(q):
    F = field_for_order(q)
    rng = np.random.default_rng(q + 1)
    for _ in range(30):
        mat = rng.integers(0, q, size=(rng.integers(1, 5), rng.integers(1, 5)))
        ns = linalg.right_null_space(F, mat)
        assert len(ns) == mat.shape[1] - linalg.rank(F, mat)
        for vec in ns:
            out = F.matmul_arr(np.asarray(mat), vec[:, None])
            assert not out.any()
        lns = linalg.left_null_space(F, mat)
        for vec in lns:
            out = F.matmul_arr(vec[None, :], np.asarray(mat))
            assert not out.any()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_batch_rank_agrees_with_single_rank(q):
    F = field_for_order(q)
    rng = np.random.default_rng(q + 2)
    mats = rng.integers(0, q, size=(120, 4, 4))
    got = linalg.batch_rank(F, mats)
    for m, r in zip(mats, got):
        assert linalg.rank(F, m) == r


def test_batch_rank_rectangular_and_empty():
    F = field_for_order(3)
    rng = np.random.default_rng(3)
    mats = rng.integers(0, 3, size=(50, 2, 5))
    got = linalg.batch_rank(F, mats)
    for m, r in zip(mats, got):
        assert linalg.rank(F, m) == r
    assert linalg.batch_rank(F, np.zeros((0, 3, 3), dtype=np.int64)).shape == (0,)


def test_code_vectors_lexicographic_and_partitionable():
    vecs = linalg.code_vectors(3, 2)
    assert vecs.tolist() == [[a, b] for a in range(3) for b in range(3)]
    # contiguous blocks concatenate to the full enumeration
    parts = [linalg.code_vectors(3, 2, s, min(s + 4, 9)) for s in range(0, 9, 4)]
    assert np.vstack(parts).tolist() == vecs.tolist()


def test_in_row_span():
    F = field_for_order(3)
    rows, piv = linalg.rref(F, [[1, 0, 2], [0, 1, 1]])
    assert linalg.in_row_span(F, rows, piv, [1, 1, 0])  # sum of the two rows
    assert not linalg.in_row_span(F, rows, piv, [0, 0, 1])
