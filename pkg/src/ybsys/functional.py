"""Functional equations for the coefficient functions of the coloured ansatz.

The two operators

    A(u,v)(a (x) b) = alpha 1 (x) ab + beta ab (x) 1 - gamma b (x) a
    C(u,v)(a (x) b) = eta   1 (x) ab + zeta ab (x) 1 - delta b (x) a

turn ``[[A,A,A]] = 0`` and ``[[A,C,C]] = 0`` into polynomial equations in the
18 values ``f_xy = f(x, y)`` for ``f`` in the six names and ``xy`` in
``uv, uw, vw``.  This module keeps a hand transcription of the published
equations, derives them independently, evaluates them on assignments and
searches bounded parameter spaces for solutions.
"""
from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels
from .algebras import CoefficientTriple, build_operator, named_algebra
from .commutators import SPECTRAL_VARS, SystemReport, coloured_commutator
from .errors import RingMismatch, SearchSpaceTooLarge
from .rings import Ring, Scalar
from .tensor import LegShape, square_dim

log = logging.getLogger(__name__)

__all__ = [
    "FUNCTIONS", "PAIRS", "SYSTEM_RING", "indeterminate", "FunctionalSystem",
    "FunctionAssignment", "transcribed_system", "derive_system", "eval_system",
    "family_assignment", "CompiledSystem", "compile_system", "TranscriptionAudit",
    "audit_transcription", "SearchConfig", "SearchResult", "search_solutions",
    "assignment_residuals", "MAX_CANDIDATES",
]

FUNCTIONS = ("alpha", "beta", "gamma", "eta", "zeta", "delta")
PAIRS = ("uv", "uw", "vw")
SYSTEM_RING = Ring(tuple(f"{f}_{p}" for f in FUNCTIONS for p in PAIRS))

# the operator in each slot of the commutator, by part
_PART_FUNCTIONS = {
    "AAA": (FUNCTIONS[:3], FUNCTIONS[:3], FUNCTIONS[:3]),
    "ACC": (FUNCTIONS[:3], FUNCTIONS[3:], FUNCTIONS[3:]),
}

MAX_CANDIDATES = 10 ** 8


def indeterminate(name: str, pair: str) -> Scalar:
    return SYSTEM_RING.var(f"{name}_{pair}")


def _part(part: str) -> str:
    key = part.upper()
    if key not in _PART_FUNCTIONS:
        raise ValueError(f"part must be AAA or ACC, not {part!r}")
    return key


@dataclass
class FunctionalSystem:
    equations: list
    origin: str
    labels: list
    repairs: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(zip(self.labels, self.equations))


# Hand transcription, one entry per equation.  Two of them lack their
# "= 0" in the source text; the repair is recorded alongside.
_TRANSCRIPTION = {
    "AAA": [
        ("e1", "(beta_vw-gamma_vw)*(alpha_uv*beta_uw-alpha_uw*beta_uv)"
               "+(alpha_uv-gamma_uv)*(alpha_vw*beta_uw-alpha_uw*beta_vw)", None),
        ("e2", "beta_vw*(beta_uv-gamma_uv)*(alpha_uw-gamma_uw)"
               "+(alpha_vw-gamma_vw)*(beta_uw*gamma_uv-beta_uv*gamma_uw)",
         "trailing '0' without '=', read as '= 0'"),
        ("e3", "alpha_uv*beta_vw*(alpha_uw-gamma_uw)+alpha_vw*gamma_uw*(gamma_uv-alpha_uv)"
               "+gamma_vw*(alpha_uv*gamma_uw-alpha_uw*gamma_uv)", None),
        ("e4", "alpha_uv*beta_vw*(beta_uw-gamma_uw)+beta_vw*gamma_uw*(gamma_uv-beta_uv)"
               "+gamma_vw*(beta_uv*gamma_uw-beta_uw*gamma_uv)", None),
        ("e5", "alpha_uv*(alpha_vw-gamma_vw)*(beta_uw-gamma_uw)"
               "+(beta_uv-gamma_uv)*(alpha_uw*gamma_vw-alpha_vw*gamma_uw)", None),
    ],
    "ACC": [
        ("e6", "(alpha_uv-gamma_uv)*(zeta_uw*eta_vw-eta_uw*zeta_vw)"
               "+(alpha_uv*zeta_uw-beta_uv*eta_uw)*(zeta_vw-delta_vw)", None),
        ("e7", "(gamma_uv-beta_uv)*(eta_uw*delta_vw-delta_uw*eta_vw)"
               "+alpha_uv*(delta_uw-zeta_uw)*(eta_vw-delta_vw)",
         "final factor '(eta(v,w) - delta(v,w)0' read as '(eta(v,w) - delta(v,w)) = 0'"),
        ("e8", "gamma_uv*(zeta_uw*delta_vw-delta_uw*zeta_vw)+beta_uv*delta_uw*(zeta_vw-delta_vw)"
               "+alpha_uv*(delta_uw-zeta_uw)*zeta_vw", None),
        ("e9", "(beta_uv-gamma_uv)*(eta_uw-delta_uw)*zeta_vw"
               "+(beta_uv*delta_uw-gamma_uv*zeta_uw)*(delta_vw-eta_vw)", None),
        ("e10", "gamma_uv*(delta_uw*eta_vw-eta_uw*delta_vw)+alpha_uv*delta_uw*(delta_vw-eta_vw)"
                "+alpha_uv*(eta_uw-delta_uw)*zeta_vw", None),
    ],
}


def transcribed_system(part: str) -> FunctionalSystem:
    part = _part(part)
    entries = _TRANSCRIPTION[part]
    return FunctionalSystem(
        equations=[SYSTEM_RING(text) for _, text, _ in entries],
        origin="transcribed",
        labels=[label for label, _, _ in entries],
        repairs={label: note for label, _, note in entries if note},
    )


# -- derivation ------------------------------------------------------------

# tensor cube of the free commutative algebra k[a, b, c]: keys are triples of
# exponent vectors, values are scalars in SYSTEM_RING
_ONE = (0, 0, 0)


def _add_exps(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2])


def _apply(tensor: dict, legs, funcs) -> dict:
    """Apply the ansatz operator with coefficient functions ``funcs`` to two legs."""
    alpha, beta, gamma = funcs
    i, j = legs
    out: dict = {}
    for key, co in tensor.items():
        x, y = key[i], key[j]
        xy = _add_exps(x, y)
        for left, right, f in ((_ONE, xy, co * alpha), (xy, _ONE, co * beta), (y, x, -(co * gamma))):
            k = list(key)
            k[i], k[j] = left, right
            k = tuple(k)
            out[k] = out[k] + f if k in out else f
    return out


def _monomial_label(exps) -> str:
    s = "".join(ch if e == 1 else f"{ch}^{e}" for ch, e in zip("abc", exps) if e)
    return s or "1"


def _normalized(p: Scalar) -> Scalar:
    return p * p.ring(Fraction(1) / Fraction(p.leading_coefficient()))


def derive_system(part: str) -> FunctionalSystem:
    """Coefficients of ``[[R,S,T]](a (x) b (x) c)`` over the free commutative algebra.

    The leftover equations are deduplicated up to nonzero scalar multiples.
    """
    part = _part(part)
    fr, fs, ft = _PART_FUNCTIONS[part]
    R = tuple(indeterminate(f, "uv") for f in fr)
    S = tuple(indeterminate(f, "uw") for f in fs)
    T = tuple(indeterminate(f, "vw") for f in ft)
    start = {((1, 0, 0), (0, 1, 0), (0, 0, 1)): SYSTEM_RING.one}
    # R12 S13 T23 applies T23 first
    lhs = _apply(_apply(_apply(start, (1, 2), T), (0, 2), S), (0, 1), R)
    rhs = _apply(_apply(_apply(start, (0, 1), R), (0, 2), S), (1, 2), T)
    equations, labels, seen = [], [], set()
    for key in sorted(set(lhs) | set(rhs)):
        diff = lhs.get(key, SYSTEM_RING.zero) - rhs.get(key, SYSTEM_RING.zero)
        if diff.is_zero():
            continue
        norm = _normalized(diff)
        if norm in seen:
            continue
        seen.add(norm)
        equations.append(diff)
        labels.append(" (x) ".join(_monomial_label(m) for m in key))
    return FunctionalSystem(equations, f"derived_{part}", labels)


# -- assignments -------------------------------------------------------------

@dataclass(frozen=True)
class FunctionAssignment:
    """The six coefficient functions as polynomials in the formal arguments ``spectral``."""

    functions: dict
    spectral: tuple = ("u", "v")

    def __post_init__(self):
        rings = {f.ring for f in self.functions.values()}
        if len(rings) > 1:
            raise RingMismatch("assignment functions live in different rings")

    @property
    def ring(self) -> Ring:
        return next(iter(self.functions.values())).ring

    @property
    def param_ring(self) -> Ring:
        return self.ring.without_vars(*self.spectral)

    @classmethod
    def parse(cls, ring: Ring, spectral=("u", "v"), **texts):
        return cls({k: ring(v) for k, v in texts.items()}, tuple(spectral))

    def at(self, name: str, pair: str, target: Ring) -> Scalar:
        s, t = self.spectral
        x, y = pair
        return self.functions[name].rename(target, {s: x, t: y})

    def triple(self, names) -> CoefficientTriple:
        f = self.functions
        return CoefficientTriple(f[names[0]], f[names[1]], f[names[2]], self.spectral)

    def to_strings(self) -> dict:
        return {name: str(self.functions[name]) for name in FUNCTIONS if name in self.functions}


def family_assignment(family: int, ring: Ring | None = None) -> FunctionAssignment:
    """The two published solution families, in formal arguments (u, v)."""
    if family == 1:
        ring = ring or Ring(("p", "p'", "q", "q'", "u", "v"))
        texts = dict(alpha="p*(u-v)", beta="q*(u-v)", gamma="p*u-q*v",
                     eta="p*u-q'*v", zeta="q*u-p'*v", delta="p*u-p'*v")
    elif family == 2:
        ring = ring or Ring(("p", "q", "ell", "m", "u", "v"))
        texts = dict(alpha="p*(u-v)", beta="q*(u-v)", gamma="p*u-q*v",
                     eta="p*(ell*u-m*v)", zeta="q*(ell*u-m*v)", delta="p*ell*u-q*m*v")
    else:
        raise ValueError(f"unknown family {family!r}")
    return FunctionAssignment.parse(ring, **texts)


def _eval_target(f: FunctionAssignment) -> Ring:
    params = f.param_ring
    if set(params.vars) & set(SPECTRAL_VARS):
        raise RingMismatch("assignment parameters collide with u, v, w")
    return params.with_vars(*SPECTRAL_VARS)


def eval_system(system: FunctionalSystem, f: FunctionAssignment) -> list:
    """Residual polynomials in u, v, w (and parameters) after substituting ``f``."""
    target = _eval_target(f)
    bindings = {}
    for name in f.functions:
        for pair in PAIRS:
            bindings[f"{name}_{pair}"] = f.at(name, pair, target)
    return [eq.substitute(bindings) for eq in system.equations]


# -- flattened form for the kernels -------------------------------------------

@dataclass
class CompiledSystem:
    coef: np.ndarray      # object array of Python ints
    idx: np.ndarray       # int32 [term, slot], -1 pads
    eq_start: np.ndarray  # int32 [equation + 1]
    labels: list

    @property
    def width(self) -> int:
        return self.idx.shape[1]

    def coef_mod(self, modulus: int) -> np.ndarray:
        return np.array([int(c) % modulus for c in self.coef], dtype=np.int64)

    def abs_coef_sums(self) -> list:
        return [sum(abs(int(c)) for c in self.coef[self.eq_start[e]:self.eq_start[e + 1]])
                for e in range(len(self.eq_start) - 1)]


def compile_system(*systems: FunctionalSystem) -> CompiledSystem:
    """Flatten one or more systems over SYSTEM_RING, scaling each equation to integers."""
    coef, idx, starts, labels = [], [], [0], []
    width = max((eq.total_degree() for s in systems for eq in s.equations), default=1)
    for s in systems:
        for label, eq in s:
            den = lcm(*(Fraction(c).denominator for c in eq.terms.values()))
            for exps, c in sorted(eq.exponents().items(), reverse=True):
                slots = [i for i, e in enumerate(exps) for _ in range(e)]
                coef.append(int(Fraction(c) * den))
                idx.append(slots + [-1] * (width - len(slots)))
            starts.append(len(coef))
            labels.append(label)
    return CompiledSystem(np.array(coef, dtype=object), np.array(idx, dtype=np.int32).reshape(-1, width),
                          np.array(starts, dtype=np.int32), labels)


# -- transcription audit -------------------------------------------------------

@dataclass
class TranscriptionAudit:
    part: str
    entries: list        # one dict per transcribed equation
    discrepancies: list  # one dict per sampled disagreement
    points: int
    modulus: int

    @property
    def unexplained(self) -> int:
        bad = sum(1 for e in self.entries if e["status"] == "mismatch")
        return bad + sum(1 for d in self.discrepancies if not d["explained"])

    def to_json(self) -> dict:
        return {"part": self.part, "points": self.points, "modulus": self.modulus,
                "entries": self.entries, "discrepancies": self.discrepancies,
                "unexplained": self.unexplained}


def _random_point(rng: random.Random, p: int, on_family: int | None) -> list:
    """Values of the 18 indeterminates, generic or on one of the two families."""
    if on_family is None:
        return [rng.randrange(p) for _ in SYSTEM_RING.vars]
    u, v, w = (rng.randrange(p) for _ in range(3))
    names = ("p", "p'", "q", "q'") if on_family == 1 else ("p", "q", "ell", "m")
    vals = {n: rng.randrange(p) for n in names}
    pp, q = vals["p"], vals["q"]
    if on_family == 1:
        ppr, qpr = vals["p'"], vals["q'"]
        fns = {
            "alpha": lambda x, y: pp * (x - y), "beta": lambda x, y: q * (x - y),
            "gamma": lambda x, y: pp * x - q * y, "eta": lambda x, y: pp * x - qpr * y,
            "zeta": lambda x, y: q * x - ppr * y, "delta": lambda x, y: pp * x - ppr * y,
        }
    else:
        ell, m = vals["ell"], vals["m"]
        fns = {
            "alpha": lambda x, y: pp * (x - y), "beta": lambda x, y: q * (x - y),
            "gamma": lambda x, y: pp * x - q * y, "eta": lambda x, y: pp * (ell * x - m * y),
            "zeta": lambda x, y: q * (ell * x - m * y), "delta": lambda x, y: pp * ell * x - q * m * y,
        }
    coords = {"u": u, "v": v, "w": w}
    return [fns[f](coords[pr[0]], coords[pr[1]]) % p for f in FUNCTIONS for pr in PAIRS]


def audit_transcription(part: str, points: int = 200, modulus: int = 10007,
                        seed: int = 0, backend=None) -> TranscriptionAudit:
    """Compare the transcription against the derivation, exactly and by sampling.

    Exact step: each transcribed equation is matched to a derived equation it
    equals up to a rational factor.  Sampling step: at ``points`` points of
    GF(modulus)^18 (alternating generic points and points on the two solution
    families) the vanishing pattern and the scaled values are compared.
    """
    part = _part(part)
    trans = transcribed_system(part)
    derived = derive_system(part)
    entries, scale_of = [], {}
    for label, eq in trans:
        match = None
        for j, d in enumerate(derived.equations):
            ratio = Fraction(eq.leading_coefficient()) / Fraction(d.leading_coefficient())
            if eq == d * d.ring(ratio):
                match = (j, ratio)
                break
        repaired = label in trans.repairs
        if match is None:
            status = "mismatch"
        else:
            status = "match-after-repair" if repaired else "match"
            scale_of[label] = match
        entries.append({
            "equation": label,
            "status": status,
            "derived_index": None if match is None else match[0],
            "derived_label": None if match is None else derived.labels[match[0]],
            "scale": None if match is None else str(match[1]),
            "repair": trans.repairs.get(label),
        })

    rng = random.Random(seed)
    kinds = (None, 1, 2)
    pts = np.array([_random_point(rng, modulus, kinds[i % 3]) for i in range(points)],
                   dtype=np.int64).reshape(1, points, len(SYSTEM_RING.vars))
    ct, cd = compile_system(trans), compile_system(derived)
    tv = kernels.evaluate(pts, ct.coef_mod(modulus), ct.idx, ct.eq_start, modulus, backend)[0]
    dv = kernels.evaluate(pts, cd.coef_mod(modulus), cd.idx, cd.eq_start, modulus, backend)[0]
    # compile_system scales each equation to integer coefficients
    t_den = [_den(eq) for eq in trans.equations]
    d_den = [_den(eq) for eq in derived.equations]
    discrepancies = []
    for i in range(points):
        t_zero = bool((tv[i] == 0).all())
        d_zero = bool((dv[i] == 0).all())
        if t_zero != d_zero:
            discrepancies.append({"point": i, "kind": "vanishing", "equation": None,
                                  "explained": False})
        for k, label in enumerate(trans.labels):
            if label not in scale_of:
                continue
            j, ratio = scale_of[label]
            factor = Fraction(ratio) * t_den[k] / d_den[j]
            lhs = int(tv[i, k]) * factor.denominator % modulus
            rhs = int(dv[i, j]) * factor.numerator % modulus
            if lhs != rhs:
                discrepancies.append({"point": i, "kind": "value", "equation": label,
                                      "explained": label in trans.repairs})
    return TranscriptionAudit(part, entries, discrepancies, points, modulus)


def _den(eq: Scalar) -> int:
    return lcm(*(Fraction(c).denominator for c in eq.terms.values()))


# -- matrix-level oracle ------------------------------------------------------

A_HALF_LABELS = ("[[A,A,A]]", "[[A,C,C]]", "[[A,B⁺⁺,B⁺⁺]]", "[[A,C,B⁺⁺]]")


def assignment_residuals(f: FunctionAssignment, algebra) -> SystemReport:
    """Coloured conditions involving A, with A from (alpha, beta, gamma),
    C from (eta, zeta, delta) and B = -C⁺⁺."""
    A = build_operator(algebra, f.triple(FUNCTIONS[:3]))
    C = build_operator(algebra, f.triple(FUNCTIONS[3:]))
    Bpp = -C  # (-C⁺⁺)⁺⁺ = -C
    shape = LegShape.cube(square_dim(A.matrix))
    residuals = [coloured_commutator(A, A, A, shape), coloured_commutator(A, C, C, shape),
                 coloured_commutator(A, Bpp, Bpp, shape), coloured_commutator(A, C, Bpp, shape)]
    return SystemReport(list(A_HALF_LABELS), residuals)


# -- bounded search ------------------------------------------------------------

@dataclass
class SearchConfig:
    """Bounded search space.

    ``templates`` maps each of the six function names to an expression in the
    search ``parameters`` and the formal arguments ``spectral``.  Without
    templates the linear ansatz ``f = f_1*u + f_2*v`` (plus ``f_0`` when
    ``constant_terms``) is used with all coefficients searched.
    """

    parameters: list = field(default_factory=list)
    templates: dict = field(default_factory=dict)
    domain: dict = field(default_factory=lambda: {"kind": "grid", "bound": 1})
    verify_on: list = field(default_factory=lambda: ["dim2"])
    spectral: tuple = ("u", "v")
    constant_terms: bool = False
    dedupe_scaling: bool = False
    chunk_size: int = 4096

    def __post_init__(self):
        self.spectral = tuple(self.spectral)
        if not self.templates:
            params, templates = [], {}
            s, t = self.spectral
            for name in FUNCTIONS:
                names = ([f"{name}_0"] if self.constant_terms else []) + [f"{name}_1", f"{name}_2"]
                params.extend(names)
                parts = [f"{names[-2]}*{s}", f"{names[-1]}*{t}"]
                if self.constant_terms:
                    parts.insert(0, names[0])
                templates[name] = " + ".join(parts)
            self.parameters = self.parameters or params
            self.templates = templates
        missing = set(FUNCTIONS) - set(self.templates)
        if missing:
            raise ValueError(f"templates missing for {sorted(missing)}")
        kind = self.domain.get("kind")
        if kind == "grid":
            if int(self.domain.get("bound", -1)) < 0:
                raise ValueError("grid domain needs a nonnegative 'bound'")
        elif kind == "prime_field":
            Ring((), int(self.domain["modulus"]))
        else:
            raise ValueError(f"unknown domain kind {kind!r}")

    @property
    def modulus(self) -> int:
        return int(self.domain["modulus"]) if self.domain["kind"] == "prime_field" else 0

    def values(self) -> list:
        if self.domain["kind"] == "grid":
            g = int(self.domain["bound"])
            return list(range(-g, g + 1))
        return list(range(self.modulus))

    def candidate_count(self) -> int:
        return len(self.values()) ** len(self.parameters)

    def ring(self) -> Ring:
        return Ring(tuple(self.parameters) + self.spectral, self.modulus or None)

    def to_json(self) -> dict:
        return {"parameters": list(self.parameters), "templates": dict(self.templates),
                "domain": dict(self.domain), "verify_on": list(self.verify_on),
                "spectral": list(self.spectral), "constant_terms": self.constant_terms,
                "dedupe_scaling": self.dedupe_scaling, "chunk_size": self.chunk_size}

    @classmethod
    def from_json(cls, data: dict) -> "SearchConfig":
        allowed = {"parameters", "templates", "domain", "verify_on", "spectral",
                   "constant_terms", "dedupe_scaling", "chunk_size"}
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown search_config fields {sorted(unknown)}")
        return cls(**data)


@dataclass
class SearchResult:
    solutions: list           # list of (parameter tuple, FunctionAssignment)
    candidates: int
    filter_survivors: int
    parameters: list

    def to_json(self) -> dict:
        return {
            "parameters": list(self.parameters),
            "candidates": self.candidates,
            "filter_survivors": self.filter_survivors,
            "solutions": [{"values": [str(v) for v in vals],
                           "functions": f.to_strings()} for vals, f in self.solutions],
        }


class _TemplateTable:
    """Templates as flat term lists for vectorised evaluation."""

    def __init__(self, config: SearchConfig):
        ring = config.ring()
        self.ring = ring
        self.nparams = len(config.parameters)
        self.terms = {}
        self.max_spectral_degree = 0
        s_i, t_i = self.nparams, self.nparams + 1
        for name in FUNCTIONS:
            poly = ring(config.templates[name])
            rows = []
            for exps, c in sorted(poly.exponents().items()):
                if isinstance(c, Fraction):
                    raise ValueError(f"template for {name} must have integer coefficients")
                rows.append((int(c), exps[:self.nparams], exps[s_i], exps[t_i]))
                self.max_spectral_degree = max(self.max_spectral_degree, exps[s_i], exps[t_i])
            self.terms[name] = rows

    def bound(self, g: int, k: int) -> int:
        """Upper bound on |template value| for |params| <= g and spectral points <= k."""
        best = 0
        for rows in self.terms.values():
            best = max(best, sum(abs(c) * g ** sum(pe) * k ** (a + b) for c, pe, a, b in rows))
        return best

    def values(self, cand: np.ndarray, points: np.ndarray, modulus: int, dtype) -> np.ndarray:
        """``out[c, point, indeterminate]`` for candidate parameter rows ``cand``."""
        nc, npts = cand.shape[0], points.shape[0]
        out = np.zeros((nc, npts, len(SYSTEM_RING.vars)), dtype=dtype)
        cand = cand.astype(dtype)
        coords = {"u": points[:, 0], "v": points[:, 1], "w": points[:, 2]}
        col = 0
        for name in FUNCTIONS:
            rows = self.terms[name]
            for pair in PAIRS:
                x = coords[pair[0]].astype(dtype)
                y = coords[pair[1]].astype(dtype)
                acc = np.zeros((nc, npts), dtype=dtype)
                for c, pe, a, b in rows:
                    pv = np.full(nc, c, dtype=dtype)
                    for k, e in enumerate(pe):
                        if e:
                            pv = pv * cand[:, k] ** e
                            if modulus:
                                pv %= modulus
                    sv = x ** a * y ** b
                    if modulus:
                        sv %= modulus
                    acc = acc + pv[:, None] * sv[None, :]
                    if modulus:
                        acc %= modulus
                out[:, :, col] = acc
                col += 1
        return out


def _spectral_grid_size(compiled: CompiledSystem, degree: int) -> int:
    """Points per spectral variable making grid vanishing equivalent to identity."""
    bound = 0
    for slots in compiled.idx:
        for var in "uvw":
            deg = sum(degree for s in slots if s >= 0 and var in PAIRS[s % 3])
            bound = max(bound, deg)
    return bound + 1


def _decode(start: int, stop: int, radix: int, nparams: int, values: np.ndarray) -> np.ndarray:
    """Mixed-radix candidates ``start..stop-1``, first parameter most significant."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((stop - start, nparams), dtype=np.int64)
    for k in range(nparams - 1, -1, -1):
        digits[:, k] = idx % radix
        idx //= radix
    return values[digits]


def search_solutions(config: SearchConfig, threads: int = 1, backend=None) -> SearchResult:
    """Enumerate the search space, filter with the derived equations, confirm with matrices."""
    total = config.candidate_count()
    if total > MAX_CANDIDATES:
        raise SearchSpaceTooLarge(f"{total} candidates exceed the limit of {MAX_CANDIDATES}")
    modulus = config.modulus
    table = _TemplateTable(config)
    compiled = compile_system(derive_system("AAA"), derive_system("ACC"))
    k = _spectral_grid_size(compiled, max(table.max_spectral_degree, 1))
    if modulus and modulus < k:
        raise ValueError(f"modulus {modulus} too small for {k} evaluation points")
    axis = np.arange(k, dtype=np.int64)
    points = np.array(list(itertools.product(axis, axis, axis)), dtype=np.int64)
    values = np.array(config.values(), dtype=np.int64)
    if modulus:
        dtype, coef = np.int64, compiled.coef_mod(modulus)
    else:
        g = int(config.domain["bound"])
        vb = table.bound(g, k - 1)
        worst = max(s * vb ** compiled.width for s in compiled.abs_coef_sums())
        exact64 = worst < 2 ** 62 and vb < 2 ** 62
        dtype = np.int64 if exact64 else object
        coef = compiled.coef.astype(np.int64) if exact64 else compiled.coef
        if not exact64:
            log.info("values may exceed int64; using exact Python integers")

    radix = len(values)
    nparams = len(config.parameters)
    chunks = [(s, min(s + config.chunk_size, total)) for s in range(0, total, config.chunk_size)]

    def run(chunk):
        cand = _decode(chunk[0], chunk[1], radix, nparams, values)
        vals = table.values(cand, points, modulus, dtype)
        mask = kernels.survivors(vals, coef, compiled.idx, compiled.eq_start, modulus, backend)
        return cand[mask.astype(bool)]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    survivors = [tuple(int(x) for x in row) for part in parts for row in part]
    survivors.sort()
    log.info("%d of %d candidates pass the functional filter", len(survivors), total)

    base = Ring((), modulus or None)
    algebras = [named_algebra(name, base) for name in config.verify_on]
    solutions = []
    seen = set()
    for vals in survivors:
        bindings = dict(zip(config.parameters, vals))
        functions = {name: table.ring(config.templates[name]).substitute(bindings)
                     for name in FUNCTIONS}
        spec_ring = Ring(config.spectral, modulus or None)
        functions = {n: f.rename(spec_ring) for n, f in functions.items()}
        assignment = FunctionAssignment(functions, config.spectral)
        if not all(assignment_residuals(assignment, alg).all_zero for alg in algebras):
            log.warning("candidate %s passed the filter but failed the matrix check", vals)
            continue
        if config.dedupe_scaling:
            key = _scaling_key(assignment, modulus)
            if key in seen:
                continue
            seen.add(key)
        solutions.append((vals, assignment))
    return SearchResult(solutions, total, len(survivors), list(config.parameters))


def _scaling_key(f: FunctionAssignment, modulus: int):
    coeffs = []
    for name in FUNCTIONS:
        exps = f.functions[name].exponents()
        coeffs.extend(sorted(exps.items()))
    if not coeffs:
        return ()
    lead = coeffs[0][1]
    if modulus:
        inv = pow(int(lead), -1, modulus)
        return tuple((e, int(c) * inv % modulus) for e, c in coeffs)
    return tuple((e, Fraction(c) / Fraction(lead)) for e, c in coeffs)
