"""Dense matrices over a :class:`~ybsys.rings.Ring`, Kronecker products and leg embeddings.

Convention: entry ``(i, j)`` is the coefficient of output basis vector ``i``
in the image of input basis vector ``j``.  Composite tensor indices put the
first factor first: ``e_i (x) e_j`` has index ``i * n2 + j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimMismatch, RingMismatch
from .rings import Ring, Scalar

__all__ = [
    "RingMatrix", "LegShape", "ColouredOperator", "mat_mul", "mat_add",
    "mat_sub", "mat_scale", "kron", "identity", "flip", "embed12", "embed23",
    "embed13", "plus_conj", "plusplus_conj", "square_dim",
]


class RingMatrix:
    """Immutable dense matrix; ``entries`` is a row-major tuple of scalars."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence):
        if rows < 1 or cols < 1:
            raise DimMismatch(f"matrix dimensions must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        entries = tuple(e if isinstance(e, Scalar) else ring(e) for e in entries)
        for e in entries:
            if e.ring != ring:
                raise RingMismatch(f"entry in {e.ring!r}, matrix over {ring!r}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _raw(cls, ring, rows, cols, entries):
        m = object.__new__(cls)
        m.ring, m.rows, m.cols, m.entries = ring, rows, cols, tuple(entries)
        return m

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "RingMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimMismatch("ragged rows")
        return cls(ring, len(rows), width, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int | None = None) -> "RingMatrix":
        cols = rows if cols is None else cols
        return cls._raw(ring, rows, cols, [ring.zero] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def tolist(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(not e.terms for e in self.entries)

    def first_nonzero(self):
        """``(row, col)`` of the first nonzero entry in row-major order, or None."""
        for idx, e in enumerate(self.entries):
            if e.terms:
                return divmod(idx, self.cols)
        return None

    def nonzero_count(self) -> int:
        return sum(1 for e in self.entries if e.terms)

    def map(self, fn, ring: Ring | None = None) -> "RingMatrix":
        ring = self.ring if ring is None else ring
        return RingMatrix(ring, self.rows, self.cols, [fn(e) for e in self.entries])

    def rename(self, target: Ring, mapping=None) -> "RingMatrix":
        return RingMatrix._raw(target, self.rows, self.cols,
                               [e.rename(target, mapping) for e in self.entries])

    def substitute(self, bindings) -> "RingMatrix":
        entries = [e.substitute(bindings) for e in self.entries]
        ring = entries[0].ring
        return RingMatrix._raw(ring, self.rows, self.cols, entries)

    def transpose(self) -> "RingMatrix":
        return RingMatrix._raw(self.ring, self.cols, self.rows,
                               [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __neg__(self):
        return mat_scale(self, self.ring(-1))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols} over {self.ring!r})"

    def pretty(self) -> str:
        cells = [[str(e) for e in row] for row in self.tolist()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _check_ring(*mats):
    ring = mats[0].ring
    for m in mats[1:]:
        if m.ring != ring:
            raise RingMismatch(f"{ring!r} vs {m.ring!r}")
    return ring


def mat_mul(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    ring = _check_ring(A, B)
    if A.cols != B.rows:
        raise DimMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    n, m, p = A.rows, A.cols, B.cols
    a_ent, b_ent = A.entries, B.entries
    # sparse row view of B: for each k, the nonzero (j, terms) pairs
    b_rows = []
    for k in range(m):
        row = b_ent[k * p:(k + 1) * p]
        b_rows.append([(j, e.terms) for j, e in enumerate(row) if e.terms])
    out = []
    for i in range(n):
        acc = [None] * p
        for k in range(m):
            ta = a_ent[i * m + k].terms
            if not ta:
                continue
            for j, tb in b_rows[k]:
                d = acc[j]
                if d is None:
                    d = acc[j] = {}
                get = d.get
                for ka, ca in ta.items():
                    for kb, cb in tb.items():
                        key = ka + kb
                        d[key] = get(key, 0) + ca * cb
        for d in acc:
            out.append(ring.zero if d is None else ring.from_terms(d))
    return RingMatrix._raw(ring, n, p, out)


def mat_add(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    ring = _check_ring(A, B)
    if (A.rows, A.cols) != (B.rows, B.cols):
        raise DimMismatch(f"{A.rows}x{A.cols} vs {B.rows}x{B.cols}")
    return RingMatrix._raw(ring, A.rows, A.cols, [a + b for a, b in zip(A.entries, B.entries)])


def mat_sub(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    ring = _check_ring(A, B)
    if (A.rows, A.cols) != (B.rows, B.cols):
        raise DimMismatch(f"{A.rows}x{A.cols} vs {B.rows}x{B.cols}")
    return RingMatrix._raw(ring, A.rows, A.cols, [a - b for a, b in zip(A.entries, B.entries)])


def mat_scale(A: RingMatrix, c) -> RingMatrix:
    c = A.ring(c) if not isinstance(c, Scalar) else c
    if c.ring != A.ring:
        raise RingMismatch(f"{c.ring!r} vs {A.ring!r}")
    return RingMatrix._raw(A.ring, A.rows, A.cols, [c * e for e in A.entries])


def identity(ring: Ring, n: int) -> RingMatrix:
    one, zero = ring.one, ring.zero
    return RingMatrix._raw(ring, n, n, [one if i == j else zero
                                        for i in range(n) for j in range(n)])


def kron(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    ring = _check_ring(A, B)
    p2, q2 = B.rows, B.cols
    rows, cols = A.rows * p2, A.cols * q2
    zero = ring.zero
    out = [zero] * (rows * cols)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A.entries[i * A.cols + j]
            if not a.terms:
                continue
            for k in range(p2):
                for l in range(q2):
                    b = B.entries[k * q2 + l]
                    if b.terms:
                        out[(i * p2 + k) * cols + j * q2 + l] = a * b
    return RingMatrix._raw(ring, rows, cols, out)


def flip(n: int, ring: Ring | None = None) -> RingMatrix:
    """Permutation matrix of ``e_i (x) e_j -> e_j (x) e_i`` on an n-dimensional space."""
    if n < 1:
        raise DimMismatch("flip needs n >= 1")
    ring = Ring() if ring is None else ring
    zero, one = ring.zero, ring.one
    size = n * n
    out = [zero] * (size * size)
    for i in range(n):
        for j in range(n):
            out[(j * n + i) * size + (i * n + j)] = one
    return RingMatrix._raw(ring, size, size, out)


def square_dim(X: RingMatrix) -> int:
    """n such that X is n^2 x n^2; raises DimMismatch otherwise."""
    if X.rows != X.cols:
        raise DimMismatch(f"{X.rows}x{X.cols} is not square")
    n = int(round(X.rows ** 0.5))
    if n * n != X.rows:
        raise DimMismatch(f"{X.rows} is not a perfect square")
    return n


@dataclass(frozen=True)
class LegShape:
    """Dimensions of the three tensor factors V, V', V''."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 1:
            raise DimMismatch(f"leg dimensions must be positive: {self}")

    @classmethod
    def cube(cls, n: int) -> "LegShape":
        return cls(n, n, n)

    @property
    def total(self) -> int:
        return self.n1 * self.n2 * self.n3


def _require(M: RingMatrix, size: int, what: str):
    if M.rows != size or M.cols != size:
        raise DimMismatch(f"{what} must be {size}x{size}, got {M.rows}x{M.cols}")


def embed12(R: RingMatrix, shape: LegShape) -> RingMatrix:
    _require(R, shape.n1 * shape.n2, "R")
    return kron(R, identity(R.ring, shape.n3))


def embed23(T: RingMatrix, shape: LegShape) -> RingMatrix:
    _require(T, shape.n2 * shape.n3, "T")
    return kron(identity(T.ring, shape.n1), T)


def embed13(S: RingMatrix, shape: LegShape) -> RingMatrix:
    """S acting on legs 1 and 3: ``[(i,j,k),(i',j',k')] = S[(i,k),(i',k')] * delta(j,j')``."""
    n1, n2, n3 = shape.n1, shape.n2, shape.n3
    _require(S, n1 * n3, "S")
    ring = S.ring
    size = shape.total
    out = [ring.zero] * (size * size)
    sc = S.cols
    for i in range(n1):
        for k in range(n3):
            r = i * n3 + k
            for ip in range(n1):
                for kp in range(n3):
                    s = S.entries[r * sc + ip * n3 + kp]
                    if not s.terms:
                        continue
                    for j in range(n2):
                        row = (i * n2 + j) * n3 + k
                        col = (ip * n2 + j) * n3 + kp
                        out[row * size + col] = s
    return RingMatrix._raw(ring, size, size, out)


def plus_conj(X: RingMatrix, n: int | None = None) -> RingMatrix:
    """``P X P`` with P the flip on an n-dimensional space."""
    n = square_dim(X) if n is None else n
    _require(X, n * n, "X")
    # P X P permutes rows and columns by the same involution
    size = n * n
    perm = [(k % n) * n + k // n for k in range(size)]
    ent = X.entries
    return RingMatrix._raw(X.ring, size, size,
                           [ent[perm[i] * size + perm[j]] for i in range(size) for j in range(size)])


@dataclass(frozen=True)
class ColouredOperator:
    """Matrix whose entries are polynomials in two formal spectral variables.

    ``spectral`` names the formal first and second arguments; every other
    ring variable is a parameter.
    """

    matrix: RingMatrix
    spectral: tuple = ("u", "v")

    def __post_init__(self):
        object.__setattr__(self, "spectral", tuple(self.spectral))
        s, t = self.spectral
        if s == t:
            raise ValueError("spectral variables must be distinct")
        for name in (s, t):
            if name not in self.matrix.ring.vars:
                raise RingMismatch(f"spectral variable {name!r} not in {self.matrix.ring!r}")

    @classmethod
    def from_constant(cls, M: RingMatrix, spectral=("u", "v")) -> "ColouredOperator":
        ring = M.ring.with_vars(*spectral)
        return cls(M.rename(ring), spectral)

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def param_ring(self) -> Ring:
        return self.ring.without_vars(*self.spectral)

    @property
    def size(self) -> int:
        return self.matrix.rows

    def at(self, first: str, second: str, target: Ring) -> RingMatrix:
        """Bind the formal spectral arguments to variables ``first``, ``second`` of ``target``."""
        s, t = self.spectral
        return self.matrix.rename(target, {s: first, t: second})

    def swapped(self) -> "ColouredOperator":
        s, t = self.spectral
        return ColouredOperator(self.matrix.rename(self.ring, {s: t, t: s}), self.spectral)

    def __neg__(self):
        return ColouredOperator(-self.matrix, self.spectral)

    def __eq__(self, other):
        if not isinstance(other, ColouredOperator):
            return NotImplemented
        return self.spectral == other.spectral and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.matrix, self.spectral))


def plusplus_conj(X: ColouredOperator) -> ColouredOperator:
    """``X++(s, t) = P X(t, s) P``."""
    n = square_dim(X.matrix)
    return ColouredOperator(plus_conj(X.swapped().matrix, n), X.spectral)
