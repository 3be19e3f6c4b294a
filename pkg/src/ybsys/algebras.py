"""Finite-dimensional commutative algebras and the operators built from them.

An algebra with structure constants ``c[i][j][k]`` (``e_i e_j = sum_k c[i][j][k] e_k``)
yields, for a coefficient triple ``(alpha, beta, gamma)``, the operator

    a (x) b  ->  alpha 1 (x) ab + beta ab (x) 1 - gamma b (x) a.

The theorem families below are all instances of this construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidAlgebra, RingMismatch, UnknownCase
from .rings import Ring, Scalar
from .tensor import ColouredOperator, RingMatrix

__all__ = [
    "FiniteAlgebra", "AlgebraReport", "CoefficientTriple", "OperatorQuadruple",
    "validate_algebra", "two_dim_algebra", "truncated_polynomial_algebra",
    "klein_group_algebra", "matrix_algebra", "build_operator",
    "theorem21_quadruple", "theorem31_quadruple", "named_algebra",
    "THEOREM31_FORMULAS", "family_ring",
]


@dataclass(frozen=True)
class FiniteAlgebra:
    dim: int
    constants: tuple  # constants[i][j][k]
    unit_index: int
    ring: Ring
    basis: tuple = ()
    name: str = ""

    def __post_init__(self):
        consts = tuple(tuple(tuple(self.ring(c) if not isinstance(c, Scalar) else c
                                   for c in row) for row in plane)
                       for plane in self.constants)
        n = self.dim
        if len(consts) != n or any(len(p) != n or any(len(r) != n for r in p) for p in consts):
            raise InvalidAlgebra(f"structure constants must be {n}x{n}x{n}")
        for c in (c for p in consts for r in p for c in r):
            if c.ring != self.ring:
                raise RingMismatch(f"structure constant in {c.ring!r}, algebra over {self.ring!r}")
        if not 0 <= self.unit_index < n:
            raise InvalidAlgebra(f"unit index {self.unit_index} out of range")
        object.__setattr__(self, "constants", consts)
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(n)))

    def product(self, i: int, j: int) -> tuple:
        return self.constants[i][j]

    def over(self, ring: Ring) -> "FiniteAlgebra":
        """Same algebra with constants coerced into a larger ring."""
        if ring == self.ring:
            return self
        consts = [[[ring(c) for c in r] for r in p] for p in self.constants]
        return FiniteAlgebra(self.dim, consts, self.unit_index, ring, self.basis, self.name)


@dataclass
class AlgebraReport:
    unital: bool
    commutative: bool
    associative: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.unital and self.commutative and self.associative


def validate_algebra(alg: FiniteAlgebra) -> AlgebraReport:
    n, c, u = alg.dim, alg.constants, alg.unit_index
    ring = alg.ring
    witnesses = {}

    unital = True
    for j in range(n):
        for k in range(n):
            want = ring.one if j == k else ring.zero
            if c[u][j][k] != want or c[j][u][k] != want:
                unital = False
                witnesses["unital"] = (j,)
                break
        if not unital:
            break

    # prefer a witness where both products are nonzero, e.g. e12 e21 != e21 e12
    bad = [(i, j) for i, j in product(range(n), repeat=2) if i < j and c[i][j] != c[j][i]]
    commutative = not bad
    if bad:
        strong = [(i, j) for i, j in bad if any(c[i][j]) and any(c[j][i])]
        i, j = (strong or bad)[0]
        witnesses["commutative"] = (alg.basis[i], alg.basis[j])

    associative = True
    for i, j, k in product(range(n), repeat=3):
        # (e_i e_j) e_k versus e_i (e_j e_k)
        for l in range(n):
            lhs = ring.zero
            rhs = ring.zero
            for m in range(n):
                if c[i][j][m] and c[m][k][l]:
                    lhs = lhs + c[i][j][m] * c[m][k][l]
                if c[j][k][m] and c[i][m][l]:
                    rhs = rhs + c[j][k][m] * c[i][m][l]
            if lhs != rhs:
                associative = False
                witnesses["associative"] = (alg.basis[i], alg.basis[j], alg.basis[k])
                break
        if not associative:
            break
    return AlgebraReport(unital, commutative, associative, witnesses)


def two_dim_algebra(sigma) -> FiniteAlgebra:
    """k[X]/(X^2 - sigma) on the basis {1, x}; ``sigma`` may be symbolic."""
    if isinstance(sigma, Scalar):
        ring = sigma.ring
    else:
        ring = Ring(("sigma",)) if sigma == "sigma" else Ring()
        sigma = ring(sigma)
    z, o = ring.zero, ring.one
    consts = [
        [[o, z], [z, o]],
        [[z, o], [sigma, z]],
    ]
    return FiniteAlgebra(2, consts, 0, ring, ("1", "x"), "dim2")


def truncated_polynomial_algebra(degree: int = 3, ring: Ring | None = None) -> FiniteAlgebra:
    """k[X]/(X^degree) on the basis 1, x, ..., x^(degree-1)."""
    ring = Ring() if ring is None else ring
    n = degree
    consts = [[[ring.one if i + j == k else ring.zero for k in range(n)]
               for j in range(n)] for i in range(n)]
    basis = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))
    return FiniteAlgebra(n, consts, 0, ring, basis, f"x{degree}")


def klein_group_algebra(ring: Ring | None = None) -> FiniteAlgebra:
    """Group algebra of Z/2 x Z/2; basis element index is the group element as two bits."""
    ring = Ring() if ring is None else ring
    consts = [[[ring.one if (i ^ j) == k else ring.zero for k in range(4)]
               for j in range(4)] for i in range(4)]
    return FiniteAlgebra(4, consts, 0, ring, ("1", "a", "b", "ab"), "klein")


def matrix_algebra(n: int = 2, ring: Ring | None = None) -> FiniteAlgebra:
    """Full n x n matrix algebra (noncommutative for n >= 2); basis e_ij row-major."""
    ring = Ring() if ring is None else ring
    idx = [(i, j) for i in range(n) for j in range(n)]
    consts = []
    for (i, j) in idx:
        plane = []
        for (k, l) in idx:
            plane.append([ring.one if (j == k and (i, l) == target) else ring.zero
                          for target in idx])
        consts.append(plane)
    basis = tuple(f"e{i + 1}{j + 1}" for i, j in idx)
    # the identity is a sum of basis elements, so e11 only stands in as unit_index
    return FiniteAlgebra(n * n, consts, 0, ring, basis, f"mat{n}")


def named_algebra(name: str, ring: Ring | None = None) -> FiniteAlgebra:
    """Algebras addressable by name on the command line: dim2, x3, klein."""
    if name == "dim2":
        r = Ring(("sigma",)) if ring is None else ring.with_vars("sigma")
        return two_dim_algebra(r.var("sigma"))
    if name == "x3":
        return truncated_polynomial_algebra(3, ring)
    if name == "klein":
        return klein_group_algebra(ring)
    raise InvalidAlgebra(f"unknown algebra {name!r}")


@dataclass(frozen=True)
class CoefficientTriple:
    """``(alpha, beta, gamma)``; with ``spectral`` set the entries are functions of it."""

    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    spectral: tuple | None = None

    def __post_init__(self):
        if not (self.alpha.ring == self.beta.ring == self.gamma.ring):
            raise RingMismatch("triple entries live in different rings")

    @property
    def ring(self) -> Ring:
        return self.alpha.ring

    @classmethod
    def parse(cls, ring: Ring, alpha: str, beta: str, gamma: str, spectral=None):
        return cls(ring(alpha), ring(beta), ring(gamma), spectral)


@dataclass(frozen=True)
class OperatorQuadruple:
    A: object
    B: object
    C: object
    D: object
    provenance: str = "user"

    def __iter__(self):
        return iter((self.A, self.B, self.C, self.D))

    @property
    def coloured(self) -> bool:
        return isinstance(self.A, ColouredOperator)


def _checked(alg: FiniteAlgebra) -> None:
    report = validate_algebra(alg)
    if not report.ok:
        raise InvalidAlgebra(f"algebra {alg.name or alg.basis} fails: {report.witnesses}")


def build_operator(alg: FiniteAlgebra, t: CoefficientTriple):
    """Matrix of ``a (x) b -> alpha 1 (x) ab + beta ab (x) 1 - gamma b (x) a``."""
    _checked(alg)
    ring = alg.ring.union(t.ring)
    alg = alg.over(ring)
    alpha, beta, gamma = ring(t.alpha), ring(t.beta), ring(t.gamma)
    n, u = alg.dim, alg.unit_index
    size = n * n
    cells = [[ring.zero] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for k, c in enumerate(alg.constants[i][j]):
                if not c:
                    continue
                cells[u * n + k][col] = cells[u * n + k][col] + alpha * c
                cells[k * n + u][col] = cells[k * n + u][col] + beta * c
            cells[j * n + i][col] = cells[j * n + i][col] - gamma
    M = RingMatrix.from_rows(ring, cells)
    if t.spectral is not None:
        return ColouredOperator(M.rename(ring.with_vars(*t.spectral)), t.spectral)
    return M


def family_ring(alg: FiniteAlgebra, family: str) -> Ring:
    """Parameter ring (algebra ring first) used by the named theorem families."""
    extra = {
        "theorem21": ("lambda", "lambda'"),
        "theorem31-1": ("p", "p'", "q", "q'", "u", "v"),
        "theorem31-2": ("p", "q", "ell", "m", "u", "v"),
    }[family]
    return alg.ring.with_vars(*extra)


def theorem21_quadruple(alg: FiniteAlgebra, lam=None, lam_prime=None) -> OperatorQuadruple:
    """A at (lam, 1, 1), B = C at (1, 1, 1), D at (lam', 1, 1); symbolic by default."""
    ring = family_ring(alg, "theorem21")
    lam = ring.var("lambda") if lam is None else ring(lam)
    lam_prime = ring.var("lambda'") if lam_prime is None else ring(lam_prime)
    one = ring.one
    A = build_operator(alg, CoefficientTriple(lam, one, one))
    B = build_operator(alg, CoefficientTriple(one, one, one))
    D = build_operator(alg, CoefficientTriple(lam_prime, one, one))
    return OperatorQuadruple(A, B, B, D, "theorem21")


# coefficient functions (alpha, beta, gamma) of A, B, C, D in the formal arguments (u, v)
THEOREM31_FORMULAS = {
    1: {
        "A": ("p*(u-v)", "q*(u-v)", "p*u-q*v"),
        "B": ("p'*u-q*v", "q'*u-p*v", "p'*u-p*v"),
        "C": ("p*u-q'*v", "q*u-p'*v", "p*u-p'*v"),
        "D": ("p'*(u-v)", "q'*(u-v)", "p'*u-q'*v"),
    },
    2: {
        "A": ("p*(u-v)", "q*(u-v)", "p*u-q*v"),
        "B": ("q*(m*u-ell*v)", "p*(m*u-ell*v)", "q*m*u-p*ell*v"),
        "C": ("p*(ell*u-m*v)", "q*(ell*u-m*v)", "p*ell*u-q*m*v"),
        "D": ("q*(u-v)", "p*(u-v)", "q*u-p*v"),
    },
}


def theorem31_quadruple(alg: FiniteAlgebra, case: int, params=None) -> OperatorQuadruple:
    """Coloured solutions, case 1 or 2; ``params`` maps parameter names to values.

    Case 2's two extra scalars are named ``ell`` and ``m``.
    """
    if case not in THEOREM31_FORMULAS:
        raise UnknownCase(f"the coloured family has cases 1 and 2, not {case!r}")
    ring = family_ring(alg, f"theorem31-{case}")
    ops = {}
    for name, (a, b, g) in THEOREM31_FORMULAS[case].items():
        triple = CoefficientTriple.parse(ring, a, b, g)
        if params:
            triple = CoefficientTriple(*(x.substitute(params) for x in
                                         (triple.alpha, triple.beta, triple.gamma)))
        ops[name] = build_operator(alg, CoefficientTriple(triple.alpha, triple.beta,
                                                          triple.gamma, ("u", "v")))
    return OperatorQuadruple(ops["A"], ops["B"], ops["C"], ops["D"], f"theorem31_case{case}")
