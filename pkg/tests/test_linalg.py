"""Exact linear algebra kernel: normal forms, kernels, enumeration."""
import random
from fractions import Fraction as Q

import pytest

from parafusion.linalg import (
    coset_minimum,
    det,
    enumerate_quadratic,
    hnf,
    identity,
    int_identity,
    integer_row_kernel,
    invariant_factors,
    ldl,
    mat,
    mat_inv,
    mat_mul,
    rank,
    rational_hnf,
    shell_vectors,
    size_reduce_basis,
    snf,
    solve_left,
    transpose,
)


def int_mul(a, b):
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def random_unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randint(-2, 2)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def test_hnf_canonical_under_row_mixing():
    rng = random.Random(7)
    for _ in range(30):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        u = random_unimodular(nr, rng)
        assert hnf(m) == hnf(int_mul(u, m))


def test_hnf_pivot_shape():
    h = hnf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    for r in range(1, len(h)):
        lead_prev = next(j for j, x in enumerate(h[r - 1]) if x)
        lead = next(j for j, x in enumerate(h[r]) if x)
        assert lead_prev < lead
    for r, row in enumerate(h):
        lead = next(j for j, x in enumerate(row) if x)
        assert row[lead] > 0
        for above in range(r):
            assert 0 <= h[above][lead] < row[lead]


def test_snf_transform_identity_random():
    rng = random.Random(11)
    for _ in range(40):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        d, u, v = snf(m)
        assert int_mul(int_mul([list(r) for r in u], m), [list(r) for r in v]) == [
            list(r) for r in d
        ]
        assert abs(det(mat(u))) == 1
        assert abs(det(mat(v))) == 1
        diag = [d[i][i] for i in range(min(nr, nc))]
        nz = [x for x in diag if x]
        assert all(x > 0 for x in nz)
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert diag[len(nz):] == [0] * (len(diag) - len(nz))


def test_invariant_factors_known():
    assert invariant_factors([[6, 0, 0], [0, 10, 0], [0, 0, 15]]) == (1, 30, 30)
    assert invariant_factors([[2, 4], [4, 4]]) == (2, 4)
    assert invariant_factors([[0, 0], [0, 0]]) == ()


def test_snf_large_even_gram_terminates_quickly():
    # regression: the naive single-pivot elimination exploded around rank 13
    n = 14
    g = [[2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    d, u, v = snf(g)
    assert int_mul(int_mul([list(r) for r in u], g), [list(r) for r in v]) == [
        list(r) for r in d
    ]


def test_det_and_inverse():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = mat([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        if det(m) == 0:
            continue
        assert mat_mul(m, mat_inv(m)) == identity(n)
    assert det(mat([[2, -1], [-1, 2]])) == 3


def test_solve_left():
    a = mat([[2, 0], [1, 3]])
    y = solve_left(a, (4, 6))
    assert y is not None
    assert mat_mul(mat([y]), a) == mat([[4, 6]])
    # inconsistent system over the rationals
    assert solve_left(mat([[1, 2], [2, 4]]), (0, 1)) is None


def test_rank():
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(mat([[1, 0], [0, 1]])) == 2
    assert rank(mat([[0, 0]])) == 0


def test_integer_row_kernel_saturated():
    rng = random.Random(5)
    for _ in range(25):
        nr, nc = rng.randint(1, 5), rng.randint(1, 4)
        m = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(nr)]
        ker = integer_row_kernel(m)
        for row in ker:
            assert all(
                sum(row[i] * m[i][j] for i in range(nr)) == 0 for j in range(nc)
            )
        assert len(ker) == nr - rank(mat(m))
        if ker:
            assert all(f == 1 for f in invariant_factors(ker))


def test_ldl_reconstruction():
    g = mat([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    diag, coeff = ldl(g)
    assert all(x > 0 for x in diag)
    n = 3
    rng = random.Random(2)
    for _ in range(20):
        x = [rng.randint(-4, 4) for _ in range(n)]
        direct = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
        squares = sum(
            diag[i] * (x[i] + sum(coeff[i][j] * x[j] for j in range(i + 1, n))) ** 2
            for i in range(n)
        )
        assert direct == squares


def brute_shell(gram, bound, box):
    n = len(gram)
    out = {}
    def rec(prefix):
        if len(prefix) == n:
            norm = sum(
                prefix[i] * gram[i][j] * prefix[j] for i in range(n) for j in range(n)
            )
            if 0 < norm <= bound:
                out.setdefault(norm, set()).add(tuple(prefix))
            return
        for c in range(-box, box + 1):
            rec(prefix + [c])
    rec([])
    return out


def test_enumerate_quadratic_matches_brute_force():
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(1, 3)
        b = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        while det(mat(b)) == 0:
            b = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        gram = mat(int_mul(b, [list(r) for r in transpose(mat(b))]))
        bound = Q(9)
        got = {}
        for x, norm in enumerate_quadratic(gram, bound):
            if norm > 0:
                got.setdefault(norm, set()).add(x)
        want = brute_shell([[int(e) for e in row] for row in gram], 9, 8)
        assert got == {Q(k): v for k, v in want.items()}


def test_shell_vectors_come_in_pairs():
    gram = mat([[2, -1], [-1, 2]])
    sh = shell_vectors(gram, Q(2))
    assert len(sh) == 6
    assert all((tuple(-c for c in x) in {tuple(y) for y in sh}) for x in sh)


def test_coset_minimum_against_brute_force():
    gram = mat([[2, -1], [-1, 2]])
    shift = (Q(1, 3), Q(1, 3))
    best, minimizers = coset_minimum(gram, shift)
    brute = {}
    for a in range(-6, 7):
        for b in range(-6, 7):
            x = (a + shift[0], b + shift[1])
            norm = sum(
                x[i] * gram[i][j] * x[j] for i in range(2) for j in range(2)
            )
            brute.setdefault(norm, []).append(x)
    assert best == min(brute)
    assert len(minimizers) == len(brute[best])


def test_size_reduce_preserves_lattice():
    rng = random.Random(17)
    g = mat([[4, -2, 0], [-2, 4, -2], [0, -2, 4]])
    new_gram, u = size_reduce_basis(g)
    assert abs(det(mat(u))) == 1
    rebuilt = mat_mul(mat_mul(mat(u), g), transpose(mat(u)))
    assert rebuilt == new_gram


def test_rational_hnf_equality_is_lattice_equality():
    a = [[Q(1, 2), Q(0)], [Q(0), Q(1)]]
    b = [[Q(1, 2), Q(1)], [Q(1, 2), Q(0)]]
    assert rational_hnf(a) == rational_hnf(b)
    c = [[Q(1, 3), Q(0)], [Q(0), Q(1)]]
    assert rational_hnf(a) != rational_hnf(c)
