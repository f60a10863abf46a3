import random
from fractions import Fraction

import pytest

from avw.linalg import Vec, frac, mat_mul, mat_vec, nullspace, rank, row_echelon_ff


def rref_nullspace(rows):
    """Plain Fraction Gauss-Jordan; independent check of the Bareiss path."""
    if not rows:
        return None
    m = [[Fraction(x) for x in r] for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a - m[i][c] * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row_i, c in enumerate(pivots):
            v[c] = -m[row_i][fcol]
        basis.append(v)
    return basis


def test_nullspace_simple():
    rows = [[frac(1), frac(2)], [frac(2), frac(4)]]
    basis = nullspace(rows)
    assert len(basis) == 1
    assert basis[0][0] * 1 + basis[0][1] * 2 == 0


def test_nullspace_empty_matrix_needs_ncols():
    assert nullspace([], ncols=3) == [
        [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ValueError):
        nullspace([])


def test_rank_zero_matrix():
    assert rank([[frac(0), frac(0)]]) == 0
    assert nullspace([[frac(0), frac(0)]]) == [[1, 0], [0, 1]]


def test_nullspace_matches_fraction_rref_on_random_matrices():
    rng = random.Random(20240517)
    for trial in range(120):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 5))
                 for _ in range(ncols)] for _ in range(nrows)]
        ours = nullspace(rows)
        theirs = rref_nullspace(rows)
        assert len(ours) == len(theirs)
        # same kernel: every vector of one lies in the span of the other
        for v in ours:
            assert all(sum(r[j] * v[j] for j in range(ncols)) == 0 for r in rows)
        assert rank(rows) == ncols - len(ours)


def test_nullspace_on_sparse_and_degenerate_matrices():
    rng = random.Random(777)
    for trial in range(80):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 10)
        rows = [[Fraction(rng.randint(-3, 3)) if rng.random() < 0.4 else Fraction(0)
                 for _ in range(ncols)] for _ in range(nrows)]
        if rng.random() < 0.5 and nrows >= 2:
            rows[-1] = [x + y for x, y in zip(rows[0], rows[min(1, nrows - 1)])]
        ours = nullspace(rows)
        theirs = rref_nullspace(rows)
        assert len(ours) == len(theirs)
        for v in ours:
            assert all(sum(r[j] * v[j] for j in range(ncols)) == 0 for r in rows)


def test_row_echelon_integer_entries():
    ech, piv = row_echelon_ff([[frac(1, 2), frac(1)], [frac(1), frac(3)]])
    assert piv == [0, 1]
    assert all(isinstance(x, int) for row in ech for x in row)


def test_mat_helpers():
    a = [[frac(1), frac(2)], [frac(0), frac(1)]]
    assert mat_vec(a, [frac(1), frac(1)]) == [3, 1]
    assert mat_mul(a, a) == [[1, 4], [0, 1]]


def test_vec_arithmetic():
    v = Vec({"x": 1, "y": 2})
    w = Vec({"y": -2, "z": 5})
    assert (v + w).terms == {"x": 1, "z": 5}
    assert (v - v).is_zero()
    assert v.scaled(0).is_zero()
    assert v.scaled(frac(1, 2))["y"] == 1
    assert Vec.basis("x") + Vec.basis("x", -1) == Vec.zero()
    assert v.map_keys(str.upper).terms == {"X": 1, "Y": 2}
