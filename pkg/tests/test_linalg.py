import numpy as np
import pytest

from swanss.linalg import (
    FactoredSolve,
    FieldP,
    PrimeFieldMatrix,
    Subquotient,
    column_echelon_mod,
    is_prime,
    rank_mod,
    sparse_rank,
    subquotient_dim,
)


def test_fieldp_validation():
    FieldP(2)
    FieldP(251)
    with pytest.raises(ValueError):
        FieldP(4)
    with pytest.raises(ValueError):
        FieldP(1)
    with pytest.raises(ValueError):
        FieldP(257)  # prime but beyond the supported bound


def test_rref_empty_matrix():
    m = PrimeFieldMatrix.zeros(5, 0, 0)
    r, pivots = m.rref()
    assert pivots == ()
    assert m.rank() == 0


def test_rref_identity():
    m = PrimeFieldMatrix.identity(5, 3)
    r, pivots = m.rref()
    assert r == m
    assert pivots == (0, 1, 2)


def test_rref_rank_one_over_f3():
    # det(1,2;2,1) = -3 = 0 mod 3, so the rank drops to 1
    m = PrimeFieldMatrix(3, [[1, 2], [2, 1]])
    assert m.rank() == 1


def test_rref_idempotent():
    rng = np.random.default_rng(11)
    for p in (2, 3, 5, 7):
        for _ in range(20):
            a = rng.integers(0, p, (rng.integers(1, 7), rng.integers(1, 7)))
            m = PrimeFieldMatrix(p, a)
            r, _ = m.rref()
            r2, _ = r.rref()
            assert r == r2


def test_rank_equals_rank_of_transpose():
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = int(rng.choice([2, 3, 5, 7]))
        a = rng.integers(0, p, (rng.integers(1, 9), rng.integers(1, 9)))
        m = PrimeFieldMatrix(p, a)
        assert m.rank() == m.T.rank()


def test_kernel_of_zero_map():
    m = PrimeFieldMatrix.zeros(3, 1, 2)
    assert m.kernel_basis().cols == 2


def test_kernel_image_rank_nullity():
    rng = np.random.default_rng(17)
    for _ in range(50):
        p = int(rng.choice([2, 3, 5, 7]))
        a = rng.integers(0, p, (rng.integers(1, 8), rng.integers(1, 8)))
        m = PrimeFieldMatrix(p, a)
        k = m.kernel_basis()
        assert k.cols + m.rank() == m.cols
        # kernel vectors are killed
        if k.cols:
            assert (m @ k).is_zero()


def test_image_basis_of_shift_minus_identity():
    # cyclic permutation minus identity on F_3^3 has rank 2
    t = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    m = PrimeFieldMatrix(3, t - np.eye(3, dtype=int))
    assert m.image_basis().cols == 2


def test_solve_membership():
    rng = np.random.default_rng(23)
    for _ in range(60):
        p = int(rng.choice([2, 3, 5, 7]))
        a = rng.integers(0, p, (rng.integers(1, 7), rng.integers(1, 7)))
        m = PrimeFieldMatrix(p, a)
        x = rng.integers(0, p, m.cols)
        b = np.mod(a @ x, p)
        sol = m.solve(b)
        assert sol is not None
        assert np.array_equal(np.mod(a @ sol, p), b)
        # a vector outside the image must be rejected
        img = m.image_basis()
        if img.cols < m.rows:
            outside = rng.integers(0, p, m.rows)
            joint = rank_mod(np.concatenate([img.a, outside.reshape(-1, 1)], axis=1), p)
            if joint > img.cols:
                assert m.solve(outside) is None


def test_canonical_basis_property():
    rng = np.random.default_rng(31)
    for _ in range(50):
        p = int(rng.choice([2, 3, 5, 7]))
        n, d = 6, 3
        basis = rng.integers(0, p, (n, d))
        while rank_mod(basis, p) < d:
            basis = rng.integers(0, p, (n, d))
        # two random generating sets of the same subspace
        c1 = rng.integers(0, p, (d, d + 2))
        c2 = rng.integers(0, p, (d, d + 2))
        while rank_mod(c1, p) < d or rank_mod(c2, p) < d:
            c1 = rng.integers(0, p, (d, d + 2))
            c2 = rng.integers(0, p, (d, d + 2))
        e1 = column_echelon_mod(np.mod(basis @ c1, p), p)
        e2 = column_echelon_mod(np.mod(basis @ c2, p), p)
        assert np.array_equal(e1, e2)


def test_subquotient_dim():
    p = 5
    z = np.eye(3, dtype=int)[:, :2]
    b = np.eye(3, dtype=int)[:, :1]
    assert subquotient_dim(PrimeFieldMatrix(p, z), PrimeFieldMatrix(p, b)) == 1
    bad = np.eye(3, dtype=int)[:, 2:]
    with pytest.raises(ValueError):
        subquotient_dim(PrimeFieldMatrix(p, z), PrimeFieldMatrix(p, bad))


def test_subquotient_coordinates_roundtrip():
    rng = np.random.default_rng(41)
    p = 7
    z = rng.integers(0, p, (8, 5))
    while rank_mod(z, p) < 5:
        z = rng.integers(0, p, (8, 5))
    b = np.mod(z @ rng.integers(0, p, (5, 2)), p)
    sub = Subquotient(z, b, p)
    assert sub.dim == 5 - rank_mod(b, p)
    v = np.mod(z @ rng.integers(0, p, 5), p)
    coords = sub.coordinates(v)
    # the lift differs from v by an element of span(B)
    diff = np.mod(v - sub.lift(coords), p)
    assert rank_mod(np.concatenate([sub.b, diff.reshape(-1, 1)], axis=1), p) == sub.b.shape[1]


def test_factored_solve_many():
    p = 3
    a = np.array([[1, 2, 0], [0, 1, 1]])
    fs = FactoredSolve(a, p)
    rhs = np.mod(a @ np.array([[1, 0], [2, 1], [0, 2]]), p)
    sol = fs.solve_many(rhs)
    assert np.array_equal(np.mod(a @ sol, p), rhs)


def test_sparse_rank_matches_dense():
    rng = np.random.default_rng(53)
    for _ in range(40):
        p = int(rng.choice([2, 3, 5]))
        a = rng.integers(0, p, (rng.integers(1, 10), rng.integers(1, 10)))
        cols = []
        for j in range(a.shape[1]):
            cols.append({i: int(a[i, j]) for i in range(a.shape[0]) if a[i, j]})
        assert sparse_rank(cols, p) == rank_mod(a, p)


def test_immutability():
    m = PrimeFieldMatrix.identity(3, 2)
    with pytest.raises(Exception):
        m.a[0, 0] = 2
    with pytest.raises(AttributeError):
        m.p = 5


def test_is_prime():
    assert [q for q in range(14) if is_prime(q)] == [2, 3, 5, 7, 11, 13]
