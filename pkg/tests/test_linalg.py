"""Exact linear algebra: the fraction-free path over Q is checked against a
naive field-division elimination oracle."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from twistkit.errors import SingularMapError
from twistkit.fields import PrimeField, RationalField
from twistkit.linalg import Matrix, in_span, vec_eq


def naive_rref(rows_payload):
    """Plain Gauss-Jordan on Fractions; the independent oracle."""
    rows = [[Fraction(x) for x in r] for r in rows_payload]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def naive_det(rows_payload):
    n = len(rows_payload)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):         # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(rows_payload[i][perm[i]])
        total += sign * term
    return total


def qmat(rows_payload):
    q = RationalField()
    return Matrix(q, [[q.element(x) for x in r] for r in rows_payload])


def random_payload(rng, nrows, ncols, rational=False):
    if rational:
        return [[Fraction(rng.randint(-6, 6), rng.randint(1, 6))
                 for _ in range(ncols)] for _ in range(nrows)]
    return [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]


def test_rref_matches_naive_oracle_random():
    rng = random.Random(1)
    for trial in range(40):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        payload = random_payload(rng, nrows, ncols, rational=trial % 2 == 0)
        if trial % 5 == 0 and nrows > 1:        # force rank deficiency
            payload[-1] = [2 * x for x in payload[0]]
        m = qmat(payload)
        got_rows, got_pivots = m.rref()
        want_rows, want_pivots = naive_rref(payload)
        assert got_pivots == want_pivots
        for gr, wr in zip(got_rows, want_rows):
            assert [x.payload for x in gr] == wr


def test_det_matches_permanent_expansion():
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randint(1, 4)
        payload = random_payload(rng, n, n, rational=True)
        assert qmat(payload).det().payload == naive_det(payload)


def test_det_finite_field():
    f5 = PrimeField(5)
    m = Matrix(f5, [[f5.element(v) for v in row] for row in [[1, 2], [3, 4]]])
    assert m.det() == f5.element(4 - 6)


def test_inverse_round_trip():
    rng = random.Random(3)
    q = RationalField()
    count = 0
    while count < 15:
        payload = random_payload(rng, 4, 4)
        m = qmat(payload)
        if not m.det():
            continue
        count += 1
        assert m @ m.inverse() == Matrix.identity(q, 4)
    with pytest.raises(SingularMapError):
        qmat([[1, 2], [2, 4]]).inverse()


def test_nullspace_annihilates_and_rank_nullity():
    rng = random.Random(4)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        m = qmat(random_payload(rng, nrows, ncols))
        basis = m.nullspace()
        assert len(basis) == ncols - m.rank()
        for v in basis:
            assert all(not x for x in m.apply(v))


def test_nullspace_finite_field():
    f3 = PrimeField(3)
    m = Matrix(f3, [[f3.element(v) for v in row] for row in [[1, 1, 0], [0, 0, 1]]])
    basis = m.nullspace()
    assert len(basis) == 1
    assert all(not x for x in m.apply(basis[0]))


def test_solve_consistent_and_inconsistent():
    q = RationalField()
    m = qmat([[1, 2], [3, 4]])
    sol, unique = m.solve([q.element(5), q.element(6)])
    assert unique and vec_eq(m.apply(sol), [q.element(5), q.element(6)])
    m2 = qmat([[1, 1], [2, 2]])
    sol, _ = m2.solve([q.element(1), q.element(3)])
    assert sol is None


def test_in_span():
    q = RationalField()
    b1 = [q.element(1), q.element(0), q.element(1)]
    b2 = [q.element(0), q.element(1), q.element(1)]
    target = [q.element(2), q.element(3), q.element(5)]
    coords = in_span([b1, b2], target, q)
    assert [c.payload for c in coords] == [2, 3]
    assert in_span([b1, b2], [q.element(1), q.element(0), q.element(0)], q) is None


def test_matmul_apply_consistency():
    rng = random.Random(5)
    q = RationalField()
    a = qmat(random_payload(rng, 3, 4))
    b = qmat(random_payload(rng, 4, 2))
    prod = a @ b
    for j in range(2):
        assert vec_eq(prod.column(j), a.apply(b.column(j)))
