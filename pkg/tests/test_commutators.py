import random

import pytest

from ybsys.algebras import (named_algebra, theorem21_quadruple, theorem31_quadruple,
                            two_dim_algebra)
from ybsys.commutators import (coloured_commutator, coloured_system_residuals,
                               reflection_residuals, wxz_residuals, yb_commutator)
from ybsys.errors import DimMismatch, RingMismatch
from ybsys.rings import Ring
from ybsys.tensor import (ColouredOperator, LegShape, RingMatrix, flip, identity, mat_scale,
                          plusplus_conj)

Q = Ring()
S2 = LegShape.cube(2)


def rand_matrix(rng, ring, n, lo=-2, hi=2):
    return RingMatrix.from_rows(ring, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def test_trivial_commutators():
    I = identity(Q, 4)
    assert yb_commutator(I, I, I, S2).is_zero()
    P = flip(2)
    assert yb_commutator(P, P, P, S2).is_zero()


def test_theorem21_A_and_D_satisfy_qybe():
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    assert yb_commutator(quad.A, quad.A, quad.A, S2).is_zero()
    assert yb_commutator(quad.D, quad.D, quad.D, S2).is_zero()


def test_commutator_ring_and_dims():
    with pytest.raises(RingMismatch):
        yb_commutator(identity(Q, 4), identity(Ring(("x",)), 4), identity(Q, 4), S2)
    with pytest.raises(DimMismatch):
        yb_commutator(identity(Q, 4), identity(Q, 9), identity(Q, 4), S2)


def test_tri_scaling_and_signs():
    rng = random.Random(0)
    for _ in range(10):
        R, S, T = (rand_matrix(rng, Q, 4) for _ in range(3))
        a, b, c = (rng.randint(-3, 3) for _ in range(3))
        base = yb_commutator(R, S, T, S2)
        scaled = yb_commutator(mat_scale(R, a), mat_scale(S, b), mat_scale(T, c), S2)
        assert scaled == mat_scale(base, a * b * c)
        assert yb_commutator(R, -S, -T, S2) == base
        assert yb_commutator(R, S, -T, S2) == -base


def test_mixed_shapes():
    rng = random.Random(1)
    shape = LegShape(2, 3, 2)
    R, S, T = rand_matrix(rng, Q, 6), rand_matrix(rng, Q, 4), rand_matrix(rng, Q, 6)
    assert yb_commutator(R, S, T, shape).rows == 12


def test_coloured_reduces_to_constant():
    rng = random.Random(2)
    R, S, T = (rand_matrix(rng, Q, 4) for _ in range(3))
    ops = [ColouredOperator.from_constant(M) for M in (R, S, T)]
    res = coloured_commutator(*ops, S2)
    const = yb_commutator(R, S, T, S2)
    assert res == const.rename(res.ring)


def test_coloured_scaling_in_first_slot():
    quad = theorem31_quadruple(two_dim_algebra("sigma"), 1)
    A = quad.A
    ring = A.ring
    c = ring("u + 2*v")
    cA = ColouredOperator(mat_scale(A.matrix, c), A.spectral)
    B = quad.B
    base = coloured_commutator(A, B, B, S2)
    scaled = coloured_commutator(cA, B, B, S2)
    cu = base.ring("u + 2*v")
    assert scaled == mat_scale(base, cu)


def test_theorem31_AAA_zero():
    quad = theorem31_quadruple(two_dim_algebra("sigma"), 1)
    assert coloured_commutator(quad.A, quad.A, quad.A, S2).is_zero()


def test_parameter_clash_rejected():
    ring = Ring(("w", "u", "v"))
    X = ColouredOperator(RingMatrix.from_rows(ring, [[ring("w*u")] * 4] * 4))
    with pytest.raises(RingMismatch):
        coloured_commutator(X, X, X, S2)


def test_wxz_examples():
    P = flip(2)
    assert wxz_residuals(P, P, P).all_zero
    I = identity(Q, 4)
    assert wxz_residuals(I, I, I).all_zero
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    rep = wxz_residuals(quad.A, quad.B, quad.A)
    assert rep["[W,W,W]"].is_zero() and rep["[W,X,X]"].is_zero()
    # V and V' of different dimension
    W, Z, X = identity(Q, 4), identity(Q, 9), identity(Q, 6)
    rep = wxz_residuals(W, X, Z)
    assert rep.all_zero and rep["[X,X,Z]"].rows == 18
    with pytest.raises(DimMismatch):
        wxz_residuals(W, identity(Q, 4), Z)


def test_reflection_examples():
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    rep = reflection_residuals(*quad)
    assert rep.all_zero and all(r.rows == 8 for r in rep.residuals)
    I = identity(Q, 4)
    assert reflection_residuals(I, I, I, I).all_zero
    D = RingMatrix.from_rows(quad.A.ring, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 4]])
    rep = reflection_residuals(quad.A, quad.B, quad.C, D)
    assert not rep.all_zero
    assert rep.first_failure()[0] == "[D,B,B]"


def test_reflection_with_flip_for_D_is_a_solution():
    # [P,S,T] = (S23 T13 - T23 S13) P12 vanishes for S = T and for [D,B,C+] since C+ = B
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    P = flip(2, quad.A.ring)
    assert reflection_residuals(quad.A, quad.B, quad.C, P).all_zero


def test_reflection_residual_equalities():
    quad = theorem21_quadruple(two_dim_algebra("sigma"))
    A, B, C, D = quad
    rep = reflection_residuals(A + identity(A.ring, 4), B, C, D)
    assert rep["[A,B⁺,B⁺]"] == rep["[A,C,C]"]


def test_coloured_examples():
    alg = two_dim_algebra("sigma")
    for case in (1, 2):
        quad = theorem31_quadruple(alg, case)
        rep = coloured_system_residuals(*quad)
        assert rep.all_zero
        assert set(rep.residuals[0].ring.vars) >= {"u", "v", "w"}
    ring = Ring(("u", "v"))
    Z = ColouredOperator(RingMatrix.zeros(ring, 4))
    assert coloured_system_residuals(Z, Z, Z, Z).all_zero


def test_sign_flip_identities_on_families():
    alg = two_dim_algebra("sigma")
    for case in (1, 2):
        A, B, C, D = theorem31_quadruple(alg, case)
        # perturb A so the residuals are not all zero
        Ap = ColouredOperator(A.matrix + identity(A.ring, 4), A.spectral)
        assert plusplus_conj(C) == -B
        Bpp = plusplus_conj(B)
        acc = coloured_commutator(Ap, C, C, S2)
        assert not acc.is_zero()
        assert coloured_commutator(Ap, Bpp, Bpp, S2) == acc
        assert coloured_commutator(Ap, C, Bpp, S2) == -acc


def test_parallel_matches_serial():
    quad = theorem31_quadruple(two_dim_algebra("sigma"), 2)
    A, B, C, D = quad
    Ap = ColouredOperator(A.matrix + identity(A.ring, 4), A.spectral)
    serial = coloured_system_residuals(Ap, B, C, D)
    par = coloured_system_residuals(Ap, B, C, D, workers=4)
    assert serial.labels == par.labels and serial.residuals == par.residuals


@pytest.mark.parametrize("name", ["x3", "klein"])
def test_reflection_on_larger_algebras(name):
    quad = theorem21_quadruple(named_algebra(name))
    assert reflection_residuals(*quad).all_zero
