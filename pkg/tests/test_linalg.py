import random

from gmpy2 import mpq

from exalg.linalg import (
    Mat,
    RowBasis,
    SymIndex,
    chained_kernel,
    kernel_basis,
    rank,
    solve_in_span,
)


def test_mat_basics():
    a = Mat([[1, 2], [3, 4]])
    b = Mat([[0, 1], [1, 0]])
    assert (a @ b).rows == [[2, 1], [4, 3]]
    assert (a + b).rows == [[1, 3], [4, 4]]
    assert a.scale(mpq(1, 2)).rows == [[mpq(1, 2), 1], [mpq(3, 2), 2]]
    assert a.apply([1, 1]) == [3, 7]
    assert a.trace() == 5
    assert a.flatten() == [1, 2, 3, 4]
    assert Mat.zeros(2).is_zero() and not a.is_zero()
    assert Mat.identity(2).rows == [[mpq(1), mpq(0)], [mpq(0), mpq(1)]]


def test_jordan_is_half_anticommutator():
    a = Mat([[0, 1], [0, 0]])
    b = Mat([[0, 0], [1, 0]])
    # (ab + ba)/2 = I/2
    assert a.jordan(b).rows == [[mpq(1, 2), 0], [0, mpq(1, 2)]]


def test_copy_is_deep():
    a = Mat([[1, 2], [3, 4]])
    c = a.copy()
    c.rows[0][0] = 99
    assert a.rows[0][0] == 1


def test_rowbasis_rank_and_membership():
    rb = RowBasis(3)
    assert rb.add([1, 0, 1])
    assert rb.add([0, 1, 1])
    assert not rb.add([1, 1, 2])  # dependent
    assert rb.rank == 2


def test_rowbasis_solve_reconstructs_combinations():
    # regression: eliminations while adding rows must not corrupt the
    # tracked transforms; exact reconstruction catches any aliasing
    rng = random.Random(11)
    rows = [[mpq(rng.randint(-4, 4)) for _ in range(6)] for _ in range(10)]
    rb = RowBasis(6, track=True)
    for r in rows:
        rb.add(list(r))
    for _ in range(25):
        cs = [mpq(rng.randint(-3, 3)) for _ in rows]
        tgt = [sum(c * r[k] for c, r in zip(cs, rows)) for k in range(6)]
        sol = rb.solve(tgt)
        assert sol is not None
        recon = [sum(v * rows[a][k] for a, v in sol.items()) for k in range(6)]
        assert recon == tgt


def test_rowbasis_solve_outside_span_is_none():
    rb = RowBasis(3, track=True)
    rb.add([1, 0, 0])
    rb.add([0, 1, 0])
    assert rb.solve([0, 0, 1]) is None
    assert rb.solve([2, -3, 0]) == {0: mpq(2), 1: mpq(-3)}


def test_rowbasis_kernel_vectors_annihilate_rows():
    rng = random.Random(3)
    rows = [[mpq(rng.randint(-3, 3)) for _ in range(5)] for _ in range(3)]
    rows.append([a + b for a, b in zip(rows[0], rows[1])])  # force a relation
    rb = RowBasis(5)
    for r in rows:
        rb.add(r)
    kvs = rb.kernel_vectors()
    assert len(kvs) == 5 - rb.rank
    for kv in kvs:
        for r in rows:
            assert sum(r[j] * c for j, c in kv.items()) == 0


def test_rank_and_kernel_basis():
    m = Mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == [mpq(0)] * 3


def test_solve_in_span_prefers_early_generators():
    gens = [[1, 0], [0, 1], [1, 1]]
    co = solve_in_span(gens, [2, 3])
    assert co == [mpq(2), mpq(3), mpq(0)]
    assert solve_in_span([[1, 0]], [0, 1]) is None


def test_chained_kernel_intersects_blocks():
    # x0 = x1, x2 = -x3 from the first block; x1 = x2 from the second
    b1 = [{0: mpq(1), 1: mpq(-1)}, {2: mpq(1), 3: mpq(1)}]
    b2 = [{1: mpq(1), 2: mpq(-1)}]
    sols = chained_kernel([b1, b2], 4)
    assert len(sols) == 1
    v = [mpq(0)] * 4
    for j, c in sols[0].items():
        v[j] = c
    for row in b1 + b2:
        assert sum(v[j] * c for j, c in row.items()) == 0
    assert v[0] == v[1] == v[2] == -v[3] != 0


def test_symindex_round_trip():
    idx = SymIndex(5)
    assert len(idx) == 15
    for k, (i, j) in enumerate(idx.pairs):
        assert i <= j
        assert idx.index_of(i, j) == k
        assert idx.index_of(j, i) == k
        assert idx.pair_of(k) == (i, j)
