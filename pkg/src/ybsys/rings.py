"""Exact coefficient rings: rationals, polynomials over the rationals, prime fields.

All scalars are :class:`Scalar` objects bound to a :class:`Ring`.  A scalar
stores a dictionary ``{monomial_key: coefficient}`` with no zero
coefficients.  Monomials are packed into one Python integer: the total
degree sits in the top field, followed by the exponent of each declared
variable (first declared variable most significant).  With this packing,
monomial multiplication is integer addition and comparing keys is graded
lexicographic comparison, so canonical printing is a plain sort.

Rational coefficients are ``int`` whenever the denominator is one and
``Fraction`` otherwise; prime-field coefficients are residues in
``[0, modulus)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

from .errors import (ExpressionSyntaxError, NegativeExponent, RingMismatch,
                     UndeclaredVariable)

__all__ = [
    "Ring", "Scalar", "parse_scalar", "substitute", "scalar_eq", "is_prime",
    "rational", "poly_ring", "prime_field",
]

# bits per exponent field; degrees above this are rejected
_FIELD = 24
_FIELD_MASK = (1 << _FIELD) - 1
MAX_DEGREE = _FIELD_MASK

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_']*\Z")

Number = Union[int, Fraction]


def is_prime(n: int) -> bool:
    """Miller-Rabin over the first 13 prime bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    if n < 1681:
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Ring:
    """Descriptor of a coefficient ring.

    ``vars`` empty and ``modulus`` None is the rational field; with ``vars``
    it is the polynomial ring over the rationals.  A prime ``modulus`` gives
    the prime field (and, with ``vars``, polynomials over it).
    """

    vars: tuple = ()
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for name in self.vars:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if self.modulus is not None:
            if not isinstance(self.modulus, int) or not is_prime(self.modulus):
                raise ValueError(f"modulus {self.modulus!r} is not prime")

    @property
    def kind(self) -> str:
        if self.modulus is None:
            return "poly_rational" if self.vars else "rational"
        return "poly_prime_field" if self.vars else "prime_field"

    def __repr__(self):
        if self.kind == "rational":
            return "Ring(QQ)"
        if self.kind == "prime_field":
            return f"Ring(GF({self.modulus}))"
        base = "QQ" if self.modulus is None else f"GF({self.modulus})"
        return f"Ring({base}[{', '.join(self.vars)}])"

    # -- packing ---------------------------------------------------------

    @cached_property
    def _index(self) -> dict:
        return {name: i for i, name in enumerate(self.vars)}

    @cached_property
    def _deg_shift(self) -> int:
        return _FIELD * len(self.vars)

    def _pack(self, exps) -> int:
        key = sum(exps)
        if key > MAX_DEGREE:
            raise OverflowError(f"degree {key} exceeds {MAX_DEGREE}")
        for e in exps:
            key = (key << _FIELD) | e
        return key

    def _unpack(self, key: int) -> tuple:
        n = len(self.vars)
        out = [0] * n
        for i in range(n - 1, -1, -1):
            out[i] = key & _FIELD_MASK
            key >>= _FIELD
        return tuple(out)

    def _degree_of_key(self, key: int) -> int:
        return key >> self._deg_shift

    # -- construction ----------------------------------------------------

    def _norm(self, c):
        """Canonical coefficient representative."""
        if self.modulus is None:
            if isinstance(c, Fraction):
                return c.numerator if c.denominator == 1 else c
            if isinstance(c, int):
                return c
            raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")
        p = self.modulus
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"{c} has no image modulo {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        if isinstance(c, int):
            return c % p
        raise TypeError(f"cannot use {type(c).__name__} as a residue")

    def from_terms(self, terms: Mapping[int, Number]) -> "Scalar":
        cleaned = {}
        for k, c in terms.items():
            c = self._norm(c)
            if c:
                cleaned[k] = c
        return Scalar(self, cleaned)

    def from_exponents(self, terms: Mapping[tuple, Number]) -> "Scalar":
        return self.from_terms({self._pack(e): c for e, c in terms.items()})

    def __call__(self, value=0) -> "Scalar":
        """Coerce an int, Fraction, expression string or Scalar into this ring."""
        if isinstance(value, Scalar):
            return value.rename(self)
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot coerce {value!r} into {self!r}")
        c = self._norm(value)
        return Scalar(self, {0: c} if c else {})

    @cached_property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @cached_property
    def one(self) -> "Scalar":
        return self(1)

    def var(self, name: str) -> "Scalar":
        if name not in self._index:
            raise UndeclaredVariable(name)
        exps = [0] * len(self.vars)
        exps[self._index[name]] = 1
        return Scalar(self, {self._pack(exps): 1})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.vars)

    def with_vars(self, *names: str) -> "Ring":
        """This ring with extra variables appended (existing ones kept in place)."""
        extra = [n for n in names if n not in self._index]
        return Ring(self.vars + tuple(extra), self.modulus)

    def union(self, other: "Ring") -> "Ring":
        if self.modulus != other.modulus:
            raise RingMismatch(f"{self!r} and {other!r} have different characteristic")
        return self.with_vars(*other.vars)

    def without_vars(self, *names: str) -> "Ring":
        return Ring(tuple(v for v in self.vars if v not in names), self.modulus)

    # -- descriptor serialisation -----------------------------------------

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.vars:
            out["vars"] = list(self.vars)
        if self.modulus is not None:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Ring":
        kind = data.get("kind")
        unknown = set(data) - {"kind", "vars", "modulus"}
        if unknown:
            raise ValueError(f"unknown ring fields {sorted(unknown)}")
        vars_ = tuple(data.get("vars", ()))
        modulus = data.get("modulus")
        ring = cls(vars_, modulus)
        if ring.kind != kind and not (kind == "poly_rational" and not vars_):
            raise ValueError(f"ring kind {kind!r} inconsistent with fields {dict(data)}")
        return ring


def rational() -> Ring:
    return Ring()


def poly_ring(*names: str) -> Ring:
    return Ring(names)


def prime_field(modulus: int) -> Ring:
    return Ring((), modulus)


def _coerce_pair(a: "Scalar", b) -> "Scalar":
    if isinstance(b, Scalar):
        if b.ring != a.ring:
            raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
        return b
    if isinstance(b, (int, Fraction)) and not isinstance(b, bool):
        return a.ring(b)
    return NotImplemented


def _mul_terms(ta: dict, tb: dict) -> dict:
    out: dict = {}
    get = out.get
    for ka, ca in ta.items():
        for kb, cb in tb.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return out


class Scalar:
    """Immutable ring element in canonical form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        # terms must already be canonical; use Ring.from_terms otherwise
        self.ring = ring
        self.terms = terms

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Number:
        """Value of a constant scalar; raises ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return self.ring._degree_of_key(max(self.terms))

    def degree_in(self, name: str) -> int:
        i = self.ring._index.get(name)
        if i is None:
            raise UndeclaredVariable(name)
        return max((self.ring._unpack(k)[i] for k in self.terms), default=-1)

    def variables(self) -> tuple:
        """Names of the variables that actually occur, in declared order."""
        used = [False] * len(self.ring.vars)
        for k in self.terms:
            for i, e in enumerate(self.ring._unpack(k)):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.vars, used) if u)

    def exponents(self) -> dict:
        """``{exponent_tuple: coefficient}`` view of the terms."""
        return {self.ring._unpack(k): c for k, c in self.terms.items()}

    def coefficient(self, exps: tuple) -> Number:
        return self.terms.get(self.ring._pack(exps), 0)

    def leading_coefficient(self) -> Number:
        return self.terms[max(self.terms)] if self.terms else 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_pair(self, other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self.ring.from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return self.ring.from_terms({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_pair(self, other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return self.ring.from_terms(out)

    def __rsub__(self, other):
        other = _coerce_pair(self, other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce_pair(self, other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        if self.total_degree() + other.total_degree() > MAX_DEGREE:
            raise OverflowError("degree bound exceeded")
        return self.ring.from_terms(_mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool):
            raise TypeError("exponent must be an int")
        if n < 0:
            raise NegativeExponent(f"negative exponent {n}")
        if n and self.total_degree() * n > MAX_DEGREE:
            raise OverflowError("degree bound exceeded")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "Scalar":
        """Multiplicative inverse of a nonzero constant."""
        c = self.constant_value()
        if not c:
            raise ZeroDivisionError("zero has no inverse")
        if self.ring.modulus is None:
            return self.ring(Fraction(1) / c)
        return self.ring(pow(c, -1, self.ring.modulus))

    def __truediv__(self, other):
        other = _coerce_pair(self, other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    # -- equality --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == self.ring(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- ring changes ----------------------------------------------------

    def rename(self, target: Ring, mapping: Mapping[str, str] | None = None) -> "Scalar":
        """Monomial map into ``target``: variable ``x`` goes to ``mapping.get(x, x)``.

        Non-injective maps are allowed (terms are collected).
        """
        src = self.ring
        if src.modulus != target.modulus:
            raise RingMismatch(f"cannot move {src!r} into {target!r}")
        if src == target and not mapping:
            return self
        mapping = mapping or {}
        idx = []
        for name in src.vars:
            dst = mapping.get(name, name)
            j = target._index.get(dst)
            if j is None:
                if any(src._unpack(k)[src._index[name]] for k in self.terms):
                    raise RingMismatch(f"variable {dst!r} not in {target!r}")
            idx.append(j)
        n = len(target.vars)
        out: dict = {}
        cache: dict = {}
        for k, c in self.terms.items():
            nk = cache.get(k)
            if nk is None:
                exps = [0] * n
                for j, e in zip(idx, src._unpack(k)):
                    if e:
                        exps[j] += e
                nk = cache[k] = target._pack(exps)
            out[nk] = out.get(nk, 0) + c
        return target.from_terms(out)

    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        return substitute(self, bindings)

    # -- printing --------------------------------------------------------

    def _monomial_str(self, key: int) -> str:
        parts = []
        for name, e in zip(self.ring.vars, self.ring._unpack(key)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = self._monomial_str(k)
            neg = self.ring.modulus is None and c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Scalar({str(self)!r}, {self.ring!r})"


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_']*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent: ``^`` > unary ``-`` > ``* /`` > binary ``+ -``."""

    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        value = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError("unexpected token", pos)
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise ExpressionSyntaxError("divisor must be a constant", pos)
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            exponent = self.exponent(pos)
            return base ** exponent
        return base

    def exponent(self, pos) -> int:
        negative = False
        while self.peek()[0] == "-":
            self.take()
            negative = not negative
        kind, value, tpos = self.peek()
        if kind == "int":
            self.take()
            n = value
        elif kind == "(":
            inner = self.atom()
            if not inner.is_constant() or self.ring.modulus is not None:
                raise ExpressionSyntaxError("exponent must be an integer constant", tpos)
            c = inner.constant_value()
            if isinstance(c, Fraction):
                raise ExpressionSyntaxError("exponent must be an integer", tpos)
            n = c
        else:
            raise ExpressionSyntaxError("exponent must be an integer", tpos)
        if self.peek()[0] == "^":
            _, _, p2 = self.take()
            n = n ** self.exponent(p2)
        if negative:
            n = -n
        if n < 0:
            raise NegativeExponent(f"negative exponent at position {pos}")
        return n

    def atom(self) -> Scalar:
        kind, value, pos = self.take()
        if kind == "int":
            return self.ring(value)
        if kind == "name":
            return self.ring.var(value)
        if kind == "(":
            inner = self.expr()
            if self.peek()[0] != ")":
                raise ExpressionSyntaxError("expected ')'", self.peek()[2])
            self.take()
            return inner
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", pos)
        raise ExpressionSyntaxError(f"unexpected token {value!r}", pos)


def parse_scalar(text: str, ring: Ring) -> Scalar:
    """Parse an expression such as ``"sigma*(lambda+1)"`` into ``ring``."""
    return _Parser(text, ring).parse()


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    return a.terms == b.terms


def substitute(p: Scalar, bindings: Mapping[str, object]) -> Scalar:
    """Ring homomorphism sending each bound variable to its value.

    Scalar-valued bindings must share one ring, which becomes the result
    ring; unbound variables of ``p`` carry over by name.  Plain numbers
    keep the result in ``p``'s ring.
    """
    src = p.ring
    for name in bindings:
        if name not in src._index:
            raise UndeclaredVariable(name)
    target = None
    for value in bindings.values():
        if isinstance(value, Scalar):
            if target is None:
                target = value.ring
            elif value.ring != target:
                raise RingMismatch(f"bindings live in {target!r} and {value.ring!r}")
    if target is None:
        target = src
    if target.modulus != src.modulus and src.modulus is not None:
        raise RingMismatch(f"cannot map {src!r} into {target!r}")
    values = {}
    for name, value in bindings.items():
        values[name] = value if isinstance(value, Scalar) else target(value)
    free = []
    for i, name in enumerate(src.vars):
        if name in values:
            continue
        if name not in target._index:
            if any(src._unpack(k)[i] for k in p.terms):
                raise RingMismatch(f"unbound variable {name!r} not in {target!r}")
            continue
        values[name] = target.var(name)
        free.append(name)
    names = src.vars
    powers: dict = {}
    out: dict = {}
    for k, c in p.terms.items():
        acc = {0: target._norm(c)}
        for name, e in zip(names, src._unpack(k)):
            if not e:
                continue
            pw = powers.get((name, e))
            if pw is None:
                pw = powers[(name, e)] = (values[name] ** e).terms
            acc = _mul_terms(acc, pw)
            if not acc:
                break
        for mk, mc in acc.items():
            out[mk] = out.get(mk, 0) + mc
    return target.from_terms(out)
