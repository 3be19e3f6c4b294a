"""Generator relations from the exchange relation A12 L1 B12 L2 = L2 C12 L1 D12.

L is the 2x2 matrix of noncommuting generators (a b; c d).  Both sides are
expanded over words in the generators; the 16 entries of the difference are
homogeneous of degree 2 and span the relations of the algebra.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimMismatch, NotHomogeneous, RingMismatch, UnboundParameter
from .rings import Ring, Scalar
from .tensor import RingMatrix

__all__ = [
    "GENERATORS", "NCPolynomial", "NCMatrix", "nc_mat_mul", "nc_kron", "generator_matrix",
    "lift", "derive_relations", "Membership", "span_membership", "case1_relations",
    "case2_relations", "PaperCheck", "check_paper_relations", "dichotomy_witness",
    "DEFAULT_SPECIALIZATIONS", "REVALIDATION_POINTS",
]

GENERATORS = ("a", "b", "c", "d")
DEGREE2_WORDS = tuple("".join(w) for w in itertools.product(GENERATORS, repeat=2))

# (lambda, lambda', sigma)
DEFAULT_SPECIALIZATIONS = ((2, 2, 1), (2, 3, 1), (2, 3, 0))
# second point used to revalidate a certificate found at the first
REVALIDATION_POINTS = {(2, 2, 1): (5, 5, 1), (2, 3, 1): (5, 7, 1), (2, 3, 0): (5, 7, 0)}


def _word_key(w: str):
    return (len(w), w)


class NCPolynomial:
    """Linear combination of generator words with coefficients in a commutative ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms=None):
        self.ring = ring
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, Scalar):
                c = ring(c)
            elif c.ring != ring:
                raise RingMismatch(f"coefficient in {c.ring!r}, expected {ring!r}")
            if not c.is_zero():
                clean[w] = c
        self.terms = clean

    @classmethod
    def word(cls, ring: Ring, w: str, coeff=1) -> "NCPolynomial":
        bad = set(w) - set(GENERATORS)
        if bad:
            raise ValueError(f"unknown generators {sorted(bad)}")
        return cls(ring, {w: coeff})

    @classmethod
    def parse(cls, ring: Ring, text: str) -> "NCPolynomial":
        """Sum of ``coeff*word`` terms, e.g. ``"ca - 2*ac"`` or ``"(lambda+1)*dc"``."""
        out = cls(ring)
        for sign, body in _split_terms(text):
            head, _, tail = body.rpartition("*")
            if head:
                coeff, w = ring(head), tail
            else:
                coeff, w = ring.one, body
            w = w.strip()
            if not w or set(w) - set(GENERATORS):
                raise ValueError(f"bad word {w!r} in {text!r}")
            out = out + cls(ring, {w: coeff * sign})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(len(w) == degree for w in self.terms)

    def coefficient(self, w: str) -> Scalar:
        return self.terms.get(w, self.ring.zero)

    def map_coefficients(self, fn, ring: Ring | None = None) -> "NCPolynomial":
        out = {w: fn(c) for w, c in self.terms.items()}
        if ring is None:
            ring = next(iter(out.values())).ring if out else self.ring
        return NCPolynomial(ring, out)

    def specialize(self, bindings) -> "NCPolynomial":
        return self.map_coefficients(lambda c: c.substitute(bindings), self.ring)

    def _coerce(self, other):
        if isinstance(other, NCPolynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return NCPolynomial(self.ring, {"": self.ring(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Concatenation of words, ``self`` on the left."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NCPolynomial(self.ring, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NCPolynomial({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=_word_key):
            c = self.terms[w]
            neg = False
            if c.is_constant():
                v = c.constant_value()
                neg = v < 0 if not self.ring.modulus else False
                mag = -v if neg else v
                text = "" if (mag == 1 and w) else str(mag)
            else:
                text = str(c)
                if len(c.terms) > 1:
                    text = f"({text})"
                elif text.startswith("-"):
                    neg, text = True, text[1:]
            body = f"{text}*{w}" if text and w else (text or w)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)


def _split_terms(text: str):
    """Split at top-level ``+`` and ``-`` into (sign, body) pairs."""
    out, depth, sign, buf = [], 0, 1, []
    for ch in text:
        if ch in "+-" and depth == 0:
            body = "".join(buf).strip()
            if body:
                out.append((sign, body))
                sign = 1
            if ch == "-":
                sign = -sign
            buf = []
            continue
        depth += (ch == "(") - (ch == ")")
        buf.append(ch)
    body = "".join(buf).strip()
    if body:
        out.append((sign, body))
    return out


@dataclass(frozen=True)
class NCMatrix:
    ring: Ring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimMismatch("entry count does not match shape")

    def __getitem__(self, ij) -> NCPolynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "NCMatrix":
        return lift(RingMatrix.from_rows(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)]))

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch("shapes differ")
        return NCMatrix(self.ring, self.rows, self.cols,
                        tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __matmul__(self, other: "NCMatrix") -> "NCMatrix":
        return nc_mat_mul(self, other)


def lift(M: RingMatrix) -> NCMatrix:
    """A commutative matrix as an NCMatrix of constant (empty-word) entries."""
    return NCMatrix(M.ring, M.rows, M.cols,
                    tuple(NCPolynomial(M.ring, {"": e}) for e in M.entries))


def nc_mat_mul(X: NCMatrix, Y: NCMatrix) -> NCMatrix:
    if X.cols != Y.rows:
        raise DimMismatch(f"cannot multiply {X.rows}x{X.cols} by {Y.rows}x{Y.cols}")
    if X.ring != Y.ring:
        raise RingMismatch(f"{X.ring!r} vs {Y.ring!r}")
    out = []
    for i in range(X.rows):
        for j in range(Y.cols):
            acc = NCPolynomial(X.ring)
            for k in range(X.cols):
                x = X[i, k]
                if x.terms:
                    y = Y[k, j]
                    if y.terms:
                        acc = acc + x * y
            out.append(acc)
    return NCMatrix(X.ring, X.rows, Y.cols, tuple(out))


def nc_kron(X: NCMatrix, Y: NCMatrix) -> NCMatrix:
    """Kronecker product; entries multiply as X-entry then Y-entry."""
    if X.ring != Y.ring:
        raise RingMismatch(f"{X.ring!r} vs {Y.ring!r}")
    rows, cols = X.rows * Y.rows, X.cols * Y.cols
    out = [None] * (rows * cols)
    for i, j, k, l in itertools.product(range(X.rows), range(X.cols), range(Y.rows), range(Y.cols)):
        out[(i * Y.rows + k) * cols + j * Y.cols + l] = X[i, j] * Y[k, l]
    return NCMatrix(X.ring, rows, cols, tuple(out))


def generator_matrix(ring: Ring) -> NCMatrix:
    """L = (a b; c d)."""
    return NCMatrix(ring, 2, 2, tuple(NCPolynomial.word(ring, g) for g in GENERATORS))


def derive_relations(quad) -> list:
    """The 16 entries of A12 L1 B12 L2 - L2 C12 L1 D12, row-major."""
    A, B, C, D = quad
    for M in (A, B, C, D):
        if not isinstance(M, RingMatrix):
            raise TypeError("relations need constant (non-coloured) operators")
        if M.rows != 4 or M.cols != 4:
            raise DimMismatch(f"operators must be 4x4 for a 2x2 generator matrix, got {M.rows}x{M.cols}")
    ring = A.ring
    if not (B.ring == C.ring == D.ring == ring):
        raise RingMismatch("operators live in different rings")
    L = generator_matrix(ring)
    I2 = NCMatrix.identity(ring, 2)
    L1, L2 = nc_kron(L, I2), nc_kron(I2, L)
    lhs = lift(A) @ L1 @ lift(B) @ L2
    rhs = L2 @ lift(C) @ L1 @ lift(D)
    return list((lhs - rhs).entries)


# -- span membership ----------------------------------------------------------

@dataclass
class Membership:
    member: bool
    certificate: list = field(default_factory=list)  # one Fraction per entry
    rank: int = 0

    def __bool__(self):
        return self.member


def _constant(c: Scalar, what: str) -> Fraction:
    if not c.is_constant():
        raise UnboundParameter(f"{what} still depends on {sorted(c.variables())}")
    return Fraction(c.constant_value())


def _vector(p: NCPolynomial, bindings: dict, what: str) -> list:
    if not p.is_homogeneous(2):
        raise NotHomogeneous(f"{what} has word lengths {sorted(p.degrees())}, expected 2")
    q = p.specialize(bindings) if bindings else p
    return [_constant(q.coefficient(w), what) for w in DEGREE2_WORDS]


def span_membership(target: NCPolynomial, entries, specialization=None) -> Membership:
    """Is ``target`` a rational combination of ``entries`` after specialising?

    On success the certificate gives one coefficient per entry (free
    directions set to zero), and the combination is re-checked exactly.
    """
    bindings = dict(specialization or {})
    cols = [_vector(e, bindings, f"entry {k}") for k, e in enumerate(entries)]
    t = _vector(target, bindings, "target")
    n = len(cols)
    m = len(DEGREE2_WORDS)
    aug = [[cols[j][r] for j in range(n)] + [t[r]] for r in range(m)]
    pivots, row = [], 0
    for col in range(n):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    rank = len(pivots)
    if any(aug[r][n] != 0 for r in range(rank, m)):
        return Membership(False, [], rank)
    cert = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        cert[col] = aug[r][n]
    combo = [sum((cert[j] * cols[j][r] for j in range(n)), Fraction(0)) for r in range(m)]
    if combo != t:
        raise AssertionError("certificate does not reproduce the target")
    return Membership(True, cert, rank)


def span_rank(entries, specialization=None) -> int:
    zero = NCPolynomial(entries[0].ring if entries else Ring())
    return span_membership(zero, entries, specialization).rank


# -- the two published relation sets --------------------------------------------

def _rel(ring: Ring, text: str) -> NCPolynomial:
    return NCPolynomial.parse(ring, text)


def case1_relations(ring: Ring, lam="lambda", sigma="sigma") -> list:
    """Relations for lambda = lambda', each as ``lhs - rhs``."""
    L, s = f"({lam})", f"({sigma})"
    texts = [
        ("a^2 = 0", "aa"),
        ("c^2 = 0", "cc"),
        ("ca = lambda ac", f"ca - {L}*ac"),
        ("cb = -lambda bc", f"cb + {L}*bc"),
        ("cd = lambda dc", f"cd - {L}*dc"),
        ("[a,b] = 2 sigma ac - (lambda+1) sigma dc", f"ab - ba - (2*{s})*ac + (({L}+1)*{s})*dc"),
        ("[a,d] = (lambda-1) bc", f"ad - da - ({L}-1)*bc"),
        ("[d,b] = (lambda+1) sigma ac - 2 sigma cd", f"db - bd - (({L}+1)*{s})*ac + (2*{s})*cd"),
        ("2 sigma ad + b^2 - sigma d^2 = 0", f"(2*{s})*ad + bb - {s}*dd"),
    ]
    return [(label, _rel(ring, t)) for label, t in texts]


def case2_relations(ring: Ring, lam_prime="lambda'", sigma="sigma") -> list:
    """Relations for ac = 0; they involve only lambda' and sigma."""
    L, s = f"({lam_prime})", f"({sigma})"
    texts = [
        ("ac = 0", "ac"),
        ("ca = 0", "ca"),
        ("a^2 = 0", "aa"),
        ("c^2 = 0", "cc"),
        ("cb = -lambda' bc", f"cb + {L}*bc"),
        ("cd = lambda' dc", f"cd - {L}*dc"),
        ("ab = -lambda' ba", f"ab + {L}*ba"),
        ("ad = lambda' da", f"ad - {L}*da"),
        ("[d,b] = -2 sigma cd", f"db - bd + (2*{s})*cd"),
        ("da = bc", "da - bc"),
        ("ba = sigma dc", f"ba - {s}*dc"),
        ("2 sigma ad + b^2 - sigma d^2 = 0", f"(2*{s})*ad + bb - {s}*dd"),
    ]
    return [(label, _rel(ring, t)) for label, t in texts]


@dataclass
class PaperCheck:
    label: str
    relation: NCPolynomial
    membership: Membership
    revalidated: bool | None

    @property
    def ok(self) -> bool:
        return self.membership.member and bool(self.revalidated)

    def to_json(self) -> dict:
        return {
            "relation": self.label,
            "polynomial": str(self.relation),
            "member": self.membership.member,
            "certificate": [str(c) for c in self.membership.certificate],
            "revalidated": self.revalidated,
        }


def _bindings(point) -> dict:
    lam, lam_p, sigma = point
    return {"lambda": lam, "lambda'": lam_p, "sigma": sigma}


def _check_boundary(point, allow_boundary: bool):
    if not allow_boundary and (point[0] == -1 or point[1] == -1):
        raise ValueError("lambda = -1 or lambda' = -1 is excluded; pass allow_boundary to run it")


def _entries_at(point, algebra=None):
    from .algebras import theorem21_quadruple, two_dim_algebra

    alg = algebra or two_dim_algebra("sigma")
    quad = theorem21_quadruple(alg)
    return derive_relations(quad), _bindings(point)


def check_paper_relations(point, second=None, allow_boundary: bool = False) -> list:
    """Certificates for the published relations at ``(lambda, lambda', sigma)``.

    ``lambda == lambda'`` selects the first relation set, otherwise the
    ``ac = 0`` set.  Each certificate is recomputed and re-verified exactly
    at a second specialisation (same case) with freshly derived entries.
    """
    point = tuple(point)
    _check_boundary(point, allow_boundary)
    entries, bind = _entries_at(point)
    symbolic = entries[0].ring
    same = point[0] == point[1]
    rels = case1_relations(symbolic) if same else case2_relations(symbolic)
    second = tuple(second or REVALIDATION_POINTS.get(point) or
                   (point[0] + 3, point[1] + (3 if same else 4), point[2]))
    if (second[0] == second[1]) != same:
        raise ValueError("revalidation point must lie in the same case")
    entries2, bind2 = _entries_at(second)
    out = []
    for label, rel in rels:
        m = span_membership(rel, entries, bind)
        again = None
        if m.member:
            again = span_membership(rel, entries2, bind2).member
        out.append(PaperCheck(label, rel, m, again))
    return out


def dichotomy_witness(point, allow_boundary: bool = False) -> dict:
    """Whether ``ac`` (and ``ca``) lie in the span at ``(lambda, lambda', sigma)``."""
    point = tuple(point)
    _check_boundary(point, allow_boundary)
    entries, bind = _entries_at(point)
    ring = entries[0].ring
    return {
        "point": list(point),
        "rank": span_rank(entries, bind),
        "ac": span_membership(NCPolynomial.word(ring, "ac"), entries, bind).member,
        "ca": span_membership(NCPolynomial.word(ring, "ca"), entries, bind).member,
    }
