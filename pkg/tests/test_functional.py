import itertools
import json
import random

import numpy as np
import pytest
import sympy as sp

import ybsys.functional as fn
from ybsys.algebras import CoefficientTriple, build_operator, named_algebra
from ybsys.commutators import coloured_commutator
from ybsys.errors import RingMismatch, SearchSpaceTooLarge
from ybsys.functional import (FUNCTIONS, PAIRS, SYSTEM_RING, FunctionAssignment, SearchConfig,
                              assignment_residuals, audit_transcription, derive_system,
                              eval_system, family_assignment, search_solutions,
                              transcribed_system)
from ybsys.rings import Ring
from ybsys.tensor import LegShape

FAMILY1_SHAPE = dict(alpha="p*(u-v)", beta="q*(u-v)", gamma="p*u-q*v",
                     eta="p*u-q'*v", zeta="q*u-p'*v", delta="p*u-p'*v")


def structure_ok(eq):
    for exps in eq.exponents():
        if sum(exps) != 3:
            return False
        used = [sum(exps[i] for i, v in enumerate(SYSTEM_RING.vars) if v.endswith(pair))
                for pair in PAIRS]
        if used != [1, 1, 1]:
            return False
    return True


def proportional(p, q):
    r = sp.cancel(p / q)
    return r.is_number and r != 0


# -- independent derivation with sympy ------------------------------------------

def sympy_system(part):
    syms = {f"{f}_{p}": sp.Symbol(f"{f}_{p}") for f in FUNCTIONS for p in PAIRS}
    a, b, c = sp.symbols("a b c")
    first = ("alpha", "beta", "gamma")
    second = first if part == "AAA" else ("eta", "zeta", "delta")
    slots = {"R": (first, "uv", (0, 1)), "S": (second, "uw", (0, 2)), "T": (second, "vw", (1, 2))}

    def act(tensor, which):
        names, pair, (i, j) = slots[which]
        al, be, ga = (syms[f"{n}_{pair}"] for n in names)
        out = {}
        for key, co in tensor.items():
            x, y = key[i], key[j]
            for left, right, f in ((1, x * y, al), (x * y, 1, be), (y, x, -ga)):
                k = list(key)
                k[i], k[j] = left, right
                out[tuple(k)] = out.get(tuple(k), 0) + co * f
        return out

    start = {(a, b, c): 1}
    lhs = act(act(act(start, "T"), "S"), "R")
    rhs = act(act(act(start, "R"), "S"), "T")
    eqs = []
    for key in set(lhs) | set(rhs):
        d = sp.expand(lhs.get(key, 0) - rhs.get(key, 0))
        if d != 0 and not any(proportional(d, e) for e in eqs):
            eqs.append(d)
    return eqs


def to_sympy(p):
    return sp.expand(sp.sympify(str(p).replace("^", "**")))


@pytest.mark.parametrize("part", ["AAA", "ACC"])
def test_derivation_matches_sympy_oracle(part):
    ours = [to_sympy(e) for e in derive_system(part).equations]
    ref = sympy_system(part)
    assert len(ours) == len(ref) == 5
    for e in ref:
        assert sum(proportional(e, o) for o in ours) == 1


def test_indeterminates():
    assert len(SYSTEM_RING.vars) == 18 == len(set(SYSTEM_RING.vars))
    assert "alpha_uv" in SYSTEM_RING.vars and "delta_vw" in SYSTEM_RING.vars


@pytest.mark.parametrize("part", ["AAA", "ACC"])
def test_system_structure(part):
    for system in (transcribed_system(part), derive_system(part)):
        assert len(system) == 5
        for eq in system.equations:
            assert not eq.is_zero() and structure_ok(eq)
        normed = {fn._normalized(e) for e in system.equations}
        assert len(normed) == 5


def test_repairs_flagged():
    assert set(transcribed_system("AAA").repairs) == {"e2"}
    assert set(transcribed_system("ACC").repairs) == {"e7"}
    assert transcribed_system("aaa").origin == "transcribed"
    assert derive_system("acc").origin == "derived_ACC"


def test_e3_vanishes_without_alpha_beta():
    e3 = transcribed_system("AAA").equations[2]
    bind = {f"{f}_{p}": 0 for f in ("alpha", "beta") for p in PAIRS}
    assert e3.substitute(bind).is_zero()


def test_e1_on_family1():
    e1 = transcribed_system("AAA")
    res = eval_system(e1, family_assignment(1))
    assert res[0].is_zero()


@pytest.mark.parametrize("family", [1, 2])
@pytest.mark.parametrize("part", ["AAA", "ACC"])
def test_families_solve_both_systems(family, part):
    f = family_assignment(family)
    for system in (transcribed_system(part), derive_system(part)):
        assert all(r.is_zero() for r in eval_system(system, f))


def test_flip_multiples_annihilate():
    ring = Ring(("g", "h", "u", "v"))
    f = FunctionAssignment.parse(ring, alpha="0", beta="0", gamma="g*u+h*v",
                                 eta="0", zeta="0", delta="h*u*v - g")
    for part in ("AAA", "ACC"):
        assert all(r.is_zero() for r in eval_system(derive_system(part), f))


def test_zero_assignment():
    ring = Ring(("u", "v"))
    f = FunctionAssignment({n: ring.zero for n in FUNCTIONS})
    assert all(r.is_zero() for r in eval_system(derive_system("ACC"), f))


def test_eval_ring_errors():
    with pytest.raises(RingMismatch):
        FunctionAssignment({"alpha": Ring(("u", "v"))("u"), "beta": Ring(("u", "v", "p"))("p")})
    ring = Ring(("w", "u", "v"))
    f = FunctionAssignment({n: ring("w*u") for n in FUNCTIONS})
    with pytest.raises(RingMismatch):
        eval_system(derive_system("AAA"), f)


@pytest.mark.parametrize("part", ["AAA", "ACC"])
def test_audit_clean(part):
    audit = audit_transcription(part, points=200, modulus=10007, seed=0)
    assert audit.unexplained == 0
    assert all(e["status"] in ("match", "match-after-repair") for e in audit.entries)
    assert len({e["derived_index"] for e in audit.entries}) == 5
    json.dumps(audit.to_json())


def test_audit_detects_a_typo(monkeypatch):
    table = dict(fn._TRANSCRIPTION)
    broken = list(table["ACC"])
    label, text, note = broken[2]
    broken[2] = (label, text.replace("beta_uv*delta_uw", "beta_uv*delta_vw"), note)
    table["ACC"] = broken
    monkeypatch.setattr(fn, "_TRANSCRIPTION", table)
    audit = audit_transcription("ACC", points=60, seed=1)
    assert audit.entries[2]["status"] == "mismatch"
    assert audit.unexplained > 0
    assert any(d["kind"] == "vanishing" for d in audit.discrepancies)


def _random_linear(rng, lo=-1, hi=1):
    ring = Ring(("u", "v"))
    return FunctionAssignment({n: ring(f"{rng.randint(lo, hi)}*u + {rng.randint(lo, hi)}*v")
                               for n in FUNCTIONS})


def test_soundness_on_random_assignments():
    # derived residuals zero implies the matrix commutators vanish
    rng = random.Random(11)
    shape = LegShape.cube(2)
    algebras = [named_algebra("dim2"), named_algebra("x3")]
    hits = 0
    for _ in range(120):
        f = _random_linear(rng)
        for part, names in (("AAA", FUNCTIONS[:3]), ("ACC", FUNCTIONS[3:])):
            zero = all(r.is_zero() for r in eval_system(derive_system(part), f))
            if not zero:
                continue
            hits += 1
            for alg in algebras:
                A = build_operator(alg, f.triple(FUNCTIONS[:3]))
                X = build_operator(alg, f.triple(names))
                n = alg.dim
                assert coloured_commutator(A, X, X, LegShape.cube(n)).is_zero()
    assert hits > 0


def test_soundness_on_families_all_algebras():
    for family in (1, 2):
        f = family_assignment(family)
        for name in ("dim2", "x3", "klein"):
            assert assignment_residuals(f, named_algebra(name)).all_zero


def test_nonsolutions_are_caught_by_both_levels():
    # a random non-solution fails the derived system and the matrices on dim2
    rng = random.Random(2)
    seen = 0
    for _ in range(40):
        f = _random_linear(rng, -2, 2)
        derived_zero = all(r.is_zero() for p in ("AAA", "ACC") for r in eval_system(derive_system(p), f))
        if derived_zero:
            continue
        seen += 1
        assert not assignment_residuals(f, named_algebra("x3")).all_zero
    assert seen > 0


# -- search ----------------------------------------------------------------------

def family1_config(bound=1, **kw):
    return SearchConfig(parameters=["p", "q", "p'", "q'"], templates=FAMILY1_SHAPE,
                        domain={"kind": "grid", "bound": bound}, **kw)


def test_search_family1_grid():
    res = search_solutions(family1_config())
    vals = [v for v, _ in res.solutions]
    assert (1, 1, 1, 1) in vals
    assert vals == sorted(vals)
    assert res.candidates == 81
    for _, f in res.solutions:
        for part in ("AAA", "ACC"):
            assert all(r.is_zero() for r in eval_system(derive_system(part), f))


def test_search_zero_domain():
    cfg = SearchConfig(domain={"kind": "grid", "bound": 0})
    res = search_solutions(cfg)
    assert len(res.solutions) == 1
    vals, f = res.solutions[0]
    assert all(v == 0 for v in vals)
    assert all(p.is_zero() for p in f.functions.values())


def test_search_deterministic_across_threads():
    cfg = family1_config(chunk_size=7)
    out = [json.dumps(search_solutions(cfg, threads=t).to_json(), sort_keys=True) for t in (1, 2, 3, 5)]
    assert len(set(out)) == 1


def test_search_backends_agree():
    cfg = family1_config(verify_on=[])
    a = search_solutions(cfg, backend="python").to_json()
    b = search_solutions(cfg).to_json()
    assert a == b


def test_search_filters_nonsolutions():
    # a shape whose ACC half is broken: only the candidates with p' = q' = ... survive
    templates = dict(FAMILY1_SHAPE, delta="p*u-q'*v")
    cfg = SearchConfig(parameters=["p", "q", "p'", "q'"], templates=templates,
                       domain={"kind": "grid", "bound": 1})
    res = search_solutions(cfg)
    assert res.filter_survivors < res.candidates
    for _, f in res.solutions:
        assert assignment_residuals(f, named_algebra("dim2")).all_zero
        for part in ("AAA", "ACC"):
            assert all(r.is_zero() for r in eval_system(derive_system(part), f))


def test_search_prime_field_domain():
    cfg = SearchConfig(parameters=["p", "q", "p'", "q'"], templates=FAMILY1_SHAPE,
                       domain={"kind": "prime_field", "modulus": 5})
    res = search_solutions(cfg)
    assert res.candidates == 5 ** 4 == len(res.solutions)
    assert all(p.ring.modulus == 5 for _, f in res.solutions for p in f.functions.values())


def test_search_big_integers_use_exact_path():
    templates = {n: f"{10 ** 7}*p*u - q*v" for n in FUNCTIONS}
    cfg = SearchConfig(parameters=["p", "q"], templates=templates, domain={"kind": "grid", "bound": 1},
                       verify_on=[])
    res = search_solutions(cfg)
    # gamma = delta and alpha = beta: nonzero candidates are not solutions unless the ansatz collapses
    for _, f in res.solutions:
        for part in ("AAA", "ACC"):
            assert all(r.is_zero() for r in eval_system(derive_system(part), f))
    assert ((0, 0)) in [v for v, _ in res.solutions]


def test_search_guard():
    cfg = SearchConfig(domain={"kind": "grid", "bound": 2})
    assert cfg.candidate_count() == 5 ** 12
    with pytest.raises(SearchSpaceTooLarge):
        search_solutions(cfg)


def test_search_dedupe_scaling():
    plain = search_solutions(family1_config())
    dedup = search_solutions(family1_config(dedupe_scaling=True))
    assert len(dedup.solutions) < len(plain.solutions)
    assert [v for v, _ in dedup.solutions] == sorted(v for v, _ in dedup.solutions)


def test_constant_terms_ansatz():
    cfg = SearchConfig(constant_terms=True, domain={"kind": "grid", "bound": 0})
    assert len(cfg.parameters) == 18
    assert cfg.templates["alpha"] == "alpha_0 + alpha_1*u + alpha_2*v"


def test_config_round_trip_and_validation():
    cfg = family1_config()
    assert SearchConfig.from_json(cfg.to_json()).to_json() == cfg.to_json()
    with pytest.raises(ValueError):
        SearchConfig.from_json(dict(cfg.to_json(), bogus=1))
    with pytest.raises(ValueError):
        SearchConfig(domain={"kind": "grid", "bound": -1})
    with pytest.raises(ValueError):
        SearchConfig(parameters=["p"], templates={"alpha": "p*u"})


def test_grid_size_is_exact():
    # with linear templates each equation has degree <= 2 in each spectral variable
    compiled = fn.compile_system(derive_system("AAA"), derive_system("ACC"))
    assert fn._spectral_grid_size(compiled, 1) == 3
