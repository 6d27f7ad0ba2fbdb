"""Named verification suites over ranges of parameter triples.

A suite maps one :class:`Parameters` to one :class:`Report`. ``run_suites``
fans the (suite, triple) tasks out to an optional process pool and returns
the reports in canonical order (suite order, then ``(n, k, r)``), so output
does not depend on the number of workers.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from . import combinatorics as cb
from . import geometry, rings
from .errors import BudgetError
from .rings import CHARACTER, GROEBNER, Report

COMBINATORICS = "combinatorics"
_COMB_DEFAULT = 8
_COMB_ENV = "RSTIRLING_COMBINATORICS_BUDGET"


def budget_for(kind: str) -> int:
    if kind == COMBINATORICS:
        value = os.environ.get(_COMB_ENV)
        return int(value) if value else _COMB_DEFAULT
    return rings.default_budget(kind)


def _timed(fn):
    def wrapper(p, **kw):
        start = time.perf_counter()
        report = fn(p, **kw)
        report.seconds = time.perf_counter() - start
        return report

    return wrapper


@_timed
def bijection(p: cb.Parameters, **_) -> Report:
    """``code(iota(c)) = c`` on every valid code, and there are exactly |OP| codes.

    The left inverse makes ``iota`` injective, so equal counts make it a
    bijection onto OP and ``iota(code(sigma)) = sigma`` follows.
    """
    witnesses = []
    codes = cb.enumerate_codes(p)
    r, k = p.r, p.k
    for c in codes:
        sigma = cb.iota(c, p)
        blocks = sigma.blocks
        # r-Stirling: 1..r are minima of distinct blocks; no empty blocks
        if len(blocks) != k or not all(blocks) or sum(b[0] <= r for b in blocks) != r:
            witnesses.append({"code": list(c), "problem": f"{sigma} is not in OP"})
        back = cb.code(sigma)
        if back != c:
            witnesses.append({"code": list(c), "sigma": str(sigma), "code_of_sigma": list(back)})
        if len(witnesses) >= 10:
            break
    expected = cb.count_partitions(p)
    if not witnesses and len(codes) != expected:
        witnesses.append({"codes": len(codes), "expected": expected})
    return Report("bijection", p, not witnesses, {"codes": len(codes)}, witnesses)


@_timed
def cardinality(p: cb.Parameters, **_) -> Report:
    """``|OP| = k! Stir = |W|``, each side counted by its own route."""
    formula = cb.count_partitions(p)
    partitions = len(cb.enumerate_partitions(p))
    words = len(cb.enumerate_words(p))
    details = {"k!*stir": formula, "partitions": partitions, "words": words}
    return Report("cardinality", p, formula == partitions == words, details)


@_timed
def max_inv(p: cb.Parameters, **_) -> Report:
    """``inv`` peaks at ``(n-k)(k-1) + C(k,2)``, attained only by sigma_0."""
    bound = cb.max_inv(p)
    best, argmax = -1, []
    for s in cb.enumerate_partitions(p):
        v = cb.inv(s)
        if v > best:
            best, argmax = v, [s]
        elif v == best:
            argmax.append(s)
    ok = best == bound and argmax == [cb.sigma0(p)]
    details = {"formula": bound, "maximum": best, "maximizers": [str(s) for s in argmax[:5]]}
    return Report("max-inv", p, ok, details)


@_timed
def paving(p: cb.Parameters, budget=None, **_) -> Report:
    """``sum_{w in W} q^codim(w)`` against the coinv generating function."""
    lhs = geometry.codim_distribution(p)
    rhs = rings.coinv_distribution(p)
    return Report("paving", p, lhs == rhs, {"codim": lhs, "coinv": rhs})


def _chevalley(p, budget=None, sample=None, seed=0, **_):
    if sample is None:
        return rings.chevalley_check(p, budget)
    start = time.perf_counter()
    rings.check_budget(p, budget, CHARACTER)
    rng = random.Random(f"{seed}:{p.n}:{p.k}:{p.r}")
    elements = [(w1, w2) for w1 in cb.permutations(p.r) for w2 in cb.permutations(p.n - p.r)]
    chosen = sorted(rng.sample(elements, min(sample, len(elements))))
    partitions = cb.enumerate_partitions(p)
    witnesses = []
    for w1, w2 in chosen:
        total = sum(rings.character_trace(w1, w2, p, budget))
        fixed = cb.fixed_points(partitions, cb.parabolic_product(w1, w2))
        if total != fixed:
            witnesses.append({"w1": list(w1), "w2": list(w2), "trace": total, "fixed_points": fixed})
    report = Report("chevalley", p, not witnesses, {"group_elements": len(chosen), "sampled": True}, witnesses)
    report.seconds = time.perf_counter() - start
    return report


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable
    kind: str
    gating: bool = True
    description: str = ""


SUITES = {
    s.name: s
    for s in [
        Suite("bijection", bijection, COMBINATORICS, description="iota and code are inverse"),
        Suite("cardinality", cardinality, COMBINATORICS, description="|OP| = k! Stir = |W|"),
        Suite("max-inv", max_inv, COMBINATORICS, description="maximum of inv and its unique maximizer"),
        Suite("standard-basis", lambda p, budget=None, **_: rings.verify_standard_basis(p, budget), GROEBNER,
              description="standard monomials are the code monomials"),
        Suite("hilbert", lambda p, budget=None, **_: rings.verify_hilbert(p, budget), GROEBNER,
              description="Hilbert series equals the coinv distribution"),
        Suite("initial-ideal", lambda p, budget=None, **_: rings.verify_initial_ideal(p, budget), GROEBNER,
              description="minimal generators of the initial ideal"),
        Suite("schubert-zbasis", lambda p, budget=None, **_: rings.verify_schubert_basis(p, budget), GROEBNER,
              description="word Schubert polynomials are a unimodular basis"),
        Suite("demazure", lambda p, budget=None, **_: rings.demazure_membership(p, budget), GROEBNER,
              description="key polynomials of reverse skip compositions lie in the ideal"),
        Suite("generator-identities", lambda p, **_: rings.generator_identities(p), GROEBNER,
              description="word Schubert polynomials of w^i and v^i"),
        Suite("chevalley", _chevalley, CHARACTER, description="total traces equal fixed-point counts"),
        Suite("paving", paving, GROEBNER, description="codimension distribution equals coinv distribution"),
        Suite("conjecture-probe", lambda p, budget=None, **_: rings.tensor_conjecture_probe(p, budget),
              CHARACTER, gating=False, description="Hilbert-level tensor decomposition (informational)"),
    ]
}

# the suites selected by "all"; the combinatorial ones are cheap enough to include
ALL = list(SUITES)


def resolve(names: Iterable[str]) -> list:
    out = []
    for name in names:
        for n in ALL if name == "all" else [name]:
            if n not in SUITES:
                raise KeyError(n)
            if n not in out:
                out.append(n)
    return [n for n in ALL if n in out]


def _task(args):
    name, p, options = args
    return SUITES[name].run(p, **options)


def check_budgets(names, triples, budget=None):
    """Raise :class:`BudgetError` before any work if a triple is too large for a suite."""
    for name in names:
        kind = SUITES[name].kind
        limit = budget if budget is not None else budget_for(kind)
        biggest = max((p.n for p in triples), default=0)
        if biggest > limit:
            raise BudgetError(f"suite {name}: n={biggest} exceeds the {kind} budget n <= {limit}")


def run_suites(names, triples, budget=None, jobs=1, sample=None, seed=0) -> list:
    """Run every selected suite on every triple; reports in canonical order."""
    names = resolve(names)
    triples = sorted(set(triples), key=lambda p: (p.n, p.k, p.r))
    check_budgets(names, triples, budget)
    tasks = []
    for name in names:
        options = {"budget": budget} if budget is not None else {}
        if name == "chevalley" and sample is not None:
            options.update(sample=sample, seed=seed)
        tasks.extend((name, p, options) for p in triples)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_task, tasks))
    return [_task(t) for t in tasks]


def gating_passed(reports) -> bool:
    return all(r.passed for r in reports if not r.informational)
