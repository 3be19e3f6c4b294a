"""Yang-Baxter commutators and the WXZ, reflection and coloured system checks."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DimMismatch, RingMismatch
from .tensor import (ColouredOperator, LegShape, RingMatrix, embed12, embed13,
                     embed23, mat_mul, mat_sub, plus_conj, plusplus_conj,
                     square_dim)

__all__ = [
    "SystemReport", "yb_commutator", "coloured_commutator", "wxz_residuals",
    "reflection_residuals", "coloured_system_residuals", "SPECTRAL_VARS",
    "REFLECTION_LABELS", "COLOURED_LABELS", "WXZ_LABELS",
]

SPECTRAL_VARS = ("u", "v", "w")

WXZ_LABELS = ("[W,W,W]", "[Z,Z,Z]", "[W,X,X]", "[X,X,Z]")
REFLECTION_LABELS = ("[A,A,A]", "[D,D,D]", "[A,C,C]", "[D,B,B]",
                     "[A,B⁺,B⁺]", "[D,C⁺,C⁺]", "[A,C,B⁺]", "[D,B,C⁺]")
COLOURED_LABELS = ("[[A,A,A]]", "[[D,D,D]]", "[[A,C,C]]", "[[D,B,B]]",
                   "[[A,B⁺⁺,B⁺⁺]]", "[[D,C⁺⁺,C⁺⁺]]", "[[A,C,B⁺⁺]]", "[[D,B,C⁺⁺]]")


@dataclass
class SystemReport:
    labels: list
    residuals: list
    all_zero: bool = field(init=False)

    def __post_init__(self):
        self.all_zero = all(r.is_zero() for r in self.residuals)

    def status(self):
        """``[(label, first_nonzero_or_None), ...]`` in condition order."""
        return [(lab, r.first_nonzero()) for lab, r in zip(self.labels, self.residuals)]

    def first_failure(self):
        for lab, pos in self.status():
            if pos is not None:
                return lab, pos
        return None

    def __getitem__(self, label) -> RingMatrix:
        return self.residuals[self.labels.index(label)]

    def summary(self) -> str:
        lines = []
        for lab, pos in self.status():
            if pos is None:
                lines.append(f"{lab}: zero")
            else:
                lines.append(f"{lab}: NONZERO, first at {pos}")
        return "\n".join(lines)


def yb_commutator(R: RingMatrix, S: RingMatrix, T: RingMatrix, shape: LegShape) -> RingMatrix:
    """``R12 S13 T23 - T23 S13 R12`` on V (x) V' (x) V''."""
    if not (R.ring == S.ring == T.ring):
        raise RingMismatch(f"{R.ring!r}, {S.ring!r}, {T.ring!r}")
    r12 = embed12(R, shape)
    s13 = embed13(S, shape)
    t23 = embed23(T, shape)
    lhs = mat_mul(mat_mul(r12, s13), t23)
    rhs = mat_mul(mat_mul(t23, s13), r12)
    return mat_sub(lhs, rhs)


def _spectral_target(*ops: ColouredOperator):
    params = ops[0].param_ring
    for op in ops[1:]:
        if op.param_ring != params:
            raise RingMismatch(f"parameter rings differ: {params!r} vs {op.param_ring!r}")
    clash = set(params.vars) & set(SPECTRAL_VARS)
    if clash:
        raise RingMismatch(f"parameters {sorted(clash)} collide with spectral variables")
    return params.with_vars(*SPECTRAL_VARS)


def coloured_commutator(R: ColouredOperator, S: ColouredOperator, T: ColouredOperator,
                        shape: LegShape) -> RingMatrix:
    """``R12(u,v) S13(u,w) T23(v,w) - T23(v,w) S13(u,w) R12(u,v)``.

    The residual lives in the parameter ring extended by u, v, w.
    """
    target = _spectral_target(R, S, T)
    u, v, w = SPECTRAL_VARS
    return yb_commutator(R.at(u, v, target), S.at(u, w, target), T.at(v, w, target), shape)


def _run(jobs, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: job[0](*job[1:]), jobs))
    return [job[0](*job[1:]) for job in jobs]


def wxz_residuals(W: RingMatrix, X: RingMatrix, Z: RingMatrix, workers: int = 1) -> SystemReport:
    n = square_dim(W)
    m = square_dim(Z)
    if X.rows != n * m or X.cols != n * m:
        raise DimMismatch(f"X must be {n * m}x{n * m} for W on {n}^2 and Z on {m}^2")
    jobs = [
        (yb_commutator, W, W, W, LegShape(n, n, n)),
        (yb_commutator, Z, Z, Z, LegShape(m, m, m)),
        (yb_commutator, W, X, X, LegShape(n, n, m)),
        (yb_commutator, X, X, Z, LegShape(n, m, m)),
    ]
    return SystemReport(list(WXZ_LABELS), _run(jobs, workers))


def _common_dim(mats):
    n = square_dim(mats[0])
    for M in mats[1:]:
        if square_dim(M) != n:
            raise DimMismatch("operators act on spaces of different dimension")
    return n


def reflection_residuals(A: RingMatrix, B: RingMatrix, C: RingMatrix, D: RingMatrix,
                         workers: int = 1) -> SystemReport:
    n = _common_dim([A, B, C, D])
    if not (A.ring == B.ring == C.ring == D.ring):
        raise RingMismatch("operators live in different rings")
    shape = LegShape.cube(n)
    Bp, Cp = plus_conj(B, n), plus_conj(C, n)
    triples = [(A, A, A), (D, D, D), (A, C, C), (D, B, B),
               (A, Bp, Bp), (D, Cp, Cp), (A, C, Bp), (D, B, Cp)]
    jobs = [(yb_commutator, r, s, t, shape) for r, s, t in triples]
    return SystemReport(list(REFLECTION_LABELS), _run(jobs, workers))


def coloured_system_residuals(A: ColouredOperator, B: ColouredOperator, C: ColouredOperator,
                              D: ColouredOperator, workers: int = 1) -> SystemReport:
    n = _common_dim([A.matrix, B.matrix, C.matrix, D.matrix])
    _spectral_target(A, B, C, D)
    shape = LegShape.cube(n)
    Bpp, Cpp = plusplus_conj(B), plusplus_conj(C)
    triples = [(A, A, A), (D, D, D), (A, C, C), (D, B, B),
               (A, Bpp, Bpp), (D, Cpp, Cpp), (A, C, Bpp), (D, B, Cpp)]
    jobs = [(coloured_commutator, r, s, t, shape) for r, s, t in triples]
    return SystemReport(list(COLOURED_LABELS), _run(jobs, workers))
