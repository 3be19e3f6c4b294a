import itertools
import random

import pytest

from ybsys.errors import DimMismatch, RingMismatch
from ybsys.rings import Ring
from ybsys.tensor import (ColouredOperator, LegShape, RingMatrix, embed12, embed13, embed23,
                          flip, identity, kron, mat_add, mat_mul, mat_scale, plus_conj,
                          plusplus_conj)

Q = Ring()
R2 = Ring(("sigma", "lambda"))


def rand_matrix(rng, ring, rows, cols=None, lo=-3, hi=3):
    cols = cols or rows
    return RingMatrix.from_rows(ring, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def eq10(ring=R2):
    return RingMatrix.from_rows(ring, [["lambda", 0, 0, "sigma*(lambda+1)"],
                                       [0, "lambda", "lambda-1", 0],
                                       [0, 0, 1, 0], [0, 0, 0, -1]])


def eq11(ring=R2):
    return RingMatrix.from_rows(ring, [[1, 0, 0, "2*sigma"], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])


def test_identity_and_flip_products():
    rng = random.Random(0)
    M = rand_matrix(rng, Q, 4)
    assert mat_mul(identity(Q, 4), M) == M
    for n in (1, 2, 3, 4):
        P = flip(n)
        assert mat_mul(P, P) == identity(Q, n * n)
        assert P.transpose() == P


def test_hand_product_entry():
    A = eq10().substitute({"lambda": 1, "sigma": 1})
    B = eq11().substitute({"sigma": 1})
    assert mat_mul(A, B)[0, 3].is_zero()
    assert (A @ B)[0, 0] == R2(1)


def test_mul_errors():
    with pytest.raises(DimMismatch):
        mat_mul(identity(Q, 2), identity(Q, 3))
    with pytest.raises(RingMismatch):
        mat_mul(identity(Q, 2), identity(R2, 2))


def test_kron_examples():
    assert kron(identity(Q, 2), identity(Q, 2)) == identity(Q, 4)
    A = rand_matrix(random.Random(1), Q, 3, 2)
    assert kron(A, identity(Q, 1)) == A
    d1 = RingMatrix.from_rows(Q, [[1, 0], [0, 2]])
    d2 = RingMatrix.from_rows(Q, [[3, 0], [0, 4]])
    expect = RingMatrix.from_rows(Q, [[3, 0, 0, 0], [0, 4, 0, 0], [0, 0, 6, 0], [0, 0, 0, 8]])
    assert kron(d1, d2) == expect


def test_kron_index_formula():
    rng = random.Random(2)
    A, B = rand_matrix(rng, Q, 2, 3), rand_matrix(rng, Q, 3, 2)
    K = kron(A, B)
    for i, j, k, l in itertools.product(range(2), range(3), range(3), range(2)):
        assert K[i * 3 + k, j * 2 + l] == A[i, j] * B[k, l]


def test_kron_mixed_product():
    rng = random.Random(3)
    for _ in range(20):
        A, C = rand_matrix(rng, Q, 2), rand_matrix(rng, Q, 2)
        B, D = rand_matrix(rng, Q, 3), rand_matrix(rng, Q, 3)
        assert mat_mul(kron(A, B), kron(C, D)) == kron(mat_mul(A, C), mat_mul(B, D))


def test_flip_action():
    P = flip(2)
    # column 1 is basis 1(x)x, its image x(x)1 is basis 2
    assert [P[r, 1].constant_value() for r in range(4)] == [0, 0, 1, 0]
    assert flip(1) == identity(Q, 1)


def test_embed13_delta_formula_brute_force():
    rng = random.Random(4)
    for shape in (LegShape(2, 2, 2), LegShape(2, 3, 2), LegShape(1, 2, 3)):
        n1, n2, n3 = shape.n1, shape.n2, shape.n3
        S = rand_matrix(rng, Q, n1 * n3)
        E = embed13(S, shape)
        for (i, j, k), (a, b, c) in itertools.product(
                itertools.product(range(n1), range(n2), range(n3)), repeat=2):
            expect = S[i * n3 + k, a * n3 + c] if j == b else Q.zero
            assert E[(i * n2 + j) * n3 + k, (a * n2 + b) * n3 + c] == expect


def test_embed13_as_conjugated_embed12():
    rng = random.Random(5)
    shape = LegShape.cube(2)
    P23 = kron(identity(Q, 2), flip(2))
    for _ in range(5):
        S = rand_matrix(rng, Q, 4)
        assert embed13(S, shape) == mat_mul(mat_mul(P23, embed12(S, shape)), P23)
    # the flip on legs 1 and 3 as a product of adjacent flips
    P12 = kron(flip(2), identity(Q, 2))
    assert embed13(flip(2), shape) == mat_mul(mat_mul(P23, P12), P23)


def test_embeddings_basic():
    shape = LegShape(2, 3, 2)
    assert embed12(identity(Q, 6), shape) == identity(Q, 12)
    assert embed23(identity(Q, 6), shape) == identity(Q, 12)
    with pytest.raises(DimMismatch):
        embed12(identity(Q, 4), shape)
    T = rand_matrix(random.Random(6), Q, 6)
    E = embed23(T, shape)
    for j, k in itertools.product(range(3), range(2)):
        col = j * 2 + k
        assert [E[r, col] for r in range(6)] == [T[r, col] for r in range(6)]
        assert all(E[r, col].is_zero() for r in range(6, 12))


def test_embed_commutation():
    rng = random.Random(7)
    shape = LegShape.cube(2)
    Rp, Tp = rand_matrix(rng, Q, 2), rand_matrix(rng, Q, 2)
    R = kron(Rp, identity(Q, 2))
    T = rand_matrix(rng, Q, 4)
    assert mat_mul(embed12(R, shape), embed23(T, shape)) == mat_mul(embed23(T, shape), embed12(R, shape))
    R = rand_matrix(rng, Q, 4)
    T = kron(identity(Q, 2), Tp)
    assert mat_mul(embed12(R, shape), embed23(T, shape)) == mat_mul(embed23(T, shape), embed12(R, shape))
    # generic matrices do not commute
    R, T = eq10().substitute({"lambda": 2, "sigma": 1}), eq11().substitute({"sigma": 1})
    assert mat_mul(embed12(R, shape), embed23(T, shape)) != mat_mul(embed23(T, shape), embed12(R, shape))


def test_plus_conj():
    assert plus_conj(identity(Q, 4)) == identity(Q, 4)
    rng = random.Random(8)
    X, Y = rand_matrix(rng, Q, 9), rand_matrix(rng, Q, 9)
    assert plus_conj(plus_conj(X)) == X
    assert plus_conj(X) == mat_mul(mat_mul(flip(3), X), flip(3))
    assert plus_conj(mat_add(mat_scale(X, 2), mat_scale(Y, -3))) == \
        mat_add(mat_scale(plus_conj(X), 2), mat_scale(plus_conj(Y), -3))
    with pytest.raises(DimMismatch):
        plus_conj(identity(Q, 3))


def test_plusplus_conj():
    ring = Ring(("p", "u", "v"))
    rng = random.Random(9)
    entries = [[ring(f"{rng.randint(-2, 2)}*p*u + {rng.randint(-2, 2)}*v") for _ in range(4)]
               for _ in range(4)]
    X = ColouredOperator(RingMatrix.from_rows(ring, entries))
    assert plusplus_conj(plusplus_conj(X)) == X
    Xpp = plusplus_conj(X)
    swapped = X.matrix.rename(ring, {"u": "v", "v": "u"})
    assert Xpp.matrix == mat_mul(mat_mul(flip(2, ring), swapped), flip(2, ring))
    D = RingMatrix.from_rows(ring, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 3]])
    Dc = ColouredOperator.from_constant(D)
    assert plusplus_conj(Dc) == Dc
    Y = ColouredOperator(RingMatrix.from_rows(ring, [[ring("u")] * 4] * 4))
    combo = ColouredOperator(mat_add(mat_scale(X.matrix, 2), mat_scale(Y.matrix, ring("p"))))
    assert plusplus_conj(combo).matrix == mat_add(mat_scale(plusplus_conj(X).matrix, 2),
                                                  mat_scale(plusplus_conj(Y).matrix, ring("p")))
