import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from horndiv.errors import DimensionError, NoSolution
from horndiv.matrix import (PidMatrix, adjugate, det, hnf, hnf_rows, is_unimodular, kernel_fraction, minors_gcd,
                            snf, solve_fraction)
from horndiv.rings import ZZ_RING, Poly, PolyRing

R = ZZ_RING


def M(rows, ring=R):
    return PidMatrix(ring, rows)


def int_matrices(max_dim=5, bound=20):
    return st.integers(1, max_dim).flatmap(lambda m: st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m)))


def assert_snf(A):
    res = snf(A)
    ring = A.ring
    assert res.U @ A @ res.V == res.D
    assert ring.is_unit(det(res.U)) and ring.is_unit(det(res.V))
    assert res.D.is_diagonal()
    f = res.factors
    assert all(ring.divides(f[i + 1], f[i]) for i in range(len(f) - 1))
    prod = ring.one
    for k, d in enumerate(reversed(f), 1):
        prod = prod * d
        assert ring.normalize(prod) == minors_gcd(A, k)
    return res


def test_snf_examples():
    assert snf(PidMatrix.identity(R, 3)).factors == [1, 1, 1]
    res = snf(PidMatrix.identity(R, 3))
    assert res.D == PidMatrix.identity(R, 3)
    assert snf(PidMatrix.diag(R, [2, 3])).factors == [6, 1]
    assert snf(M([[2, 0], [0, 2]])).factors == [2, 2]


@given(int_matrices())
def test_snf_properties(rows):
    assert_snf(M(rows))


def test_snf_over_polynomials():
    P = PolyRing(3)
    rng = random.Random(4)
    for _ in range(40):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        assert_snf(M([[P.random(rng) for _ in range(n)] for _ in range(m)], P))


def test_snf_singular_layout():
    res = assert_snf(M([[2, 0, 0], [0, 6, 0], [0, 0, 0]]))
    assert res.factors == [0, 6, 2]


def test_adjugate_examples():
    assert adjugate(PidMatrix.identity(R, 2)) == PidMatrix.identity(R, 2)
    a, b, c, d = 3, -2, 5, 7
    assert adjugate(M([[a, b], [c, d]])) == M([[d, -b], [-c, a]])
    S = M([[1, 2, 3], [4, 5, 6], [5, 7, 9]])   # row3 = row1 + row2
    assert det(S) == 0
    assert S @ adjugate(S) == PidMatrix.zeros(R, 3, 3)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_adjugate_identity(rows):
    A = M(rows)
    n = A.nrows
    dI = PidMatrix.diag(R, [det(A)] * n)
    assert A @ adjugate(A) == dI and adjugate(A) @ A == dI


def test_minors_gcd_examples():
    assert minors_gcd(PidMatrix.identity(R, 3), 2) == 1
    assert minors_gcd(PidMatrix.diag(R, [2, 3]), 2) == 6
    assert minors_gcd(PidMatrix.diag(R, [2, 4, 8]), 2) == 8
    with pytest.raises(DimensionError):
        minors_gcd(PidMatrix.identity(R, 2), 3)


def test_det_against_leibniz():
    from itertools import permutations
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        total = 0
        for perm in permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            term = (-1) ** inv
            for i in range(n):
                term *= rows[i][perm[i]]
            total += term
        assert det(M(rows)) == total


def test_solve_examples():
    b = [3, -1, 4]
    assert solve_fraction(PidMatrix.identity(R, 3), b) == [3, -1, 4]
    x = solve_fraction(M([[1, 1]]), [1])
    assert x[0] + x[1] == 1
    with pytest.raises(NoSolution):
        solve_fraction(M([[1, 1], [1, 1]]), [0, 1])
    rng = random.Random(7)
    done = 0
    while done < 20:
        A = M([[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)])
        if det(A) == 0:
            continue
        b = [rng.randint(-9, 9) for _ in range(4)]
        x = solve_fraction(A, b)
        assert [sum(Fraction(a) * xi for a, xi in zip(row, x)) for row in A.rows] == b
        done += 1


def test_kernel():
    A = M([[1, 2, 3], [2, 4, 6]])
    ker = kernel_fraction(A)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A.rows)


@given(int_matrices(max_dim=4, bound=9))
def test_hnf_same_lattice(rows):
    A = M(rows)
    H = hnf(A)
    # same row lattice: same nonzero invariants and H rows are integer combinations of A rows
    fa = [f for f in snf(A).factors if f]
    fh = [f for f in snf(H).factors if f] if H.nrows else []
    assert fa == fh
    for h in H.rows:
        solve_fraction(A.T(), h)           # h in the rational row space
    for r in A.rows:
        x = solve_fraction(H.T(), r) if H.nrows else []
        assert all(Fraction(v).denominator == 1 for v in x)


def test_unimodular():
    assert is_unimodular(M([[2, 1], [1, 1]]))
    assert not is_unimodular(M([[2, 0], [0, 1]]))


def test_poly_smith_example():
    P = PolyRing(2)
    x = Poly(2, [0, 1])
    res = snf(M([[x, P.coerce(0)], [P.coerce(0), x * x]], P))
    assert res.factors == [x * x, x]
