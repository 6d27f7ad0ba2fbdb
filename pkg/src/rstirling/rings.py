"""The quotient rings R_{n,k}^{(r)} and the theorem-level verifications.

Every check returns a :class:`Report`; nothing here prints. Groebner-backed
checks are capped by a size budget (``n <= 6`` by default, ``n <= 5`` for
character computations), configurable through the environment variables
``RSTIRLING_GROEBNER_BUDGET`` and ``RSTIRLING_CHARACTER_BUDGET``.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from . import combinatorics as cb
from .errors import BudgetError, DomainError
from .groebner import GroebnerQuotient, Ideal, buchberger, hilbert_text
from .intmat import determinant, smith_normal_form
from .polyalg import (
    NEGLEX,
    Polynomial,
    demazure,
    elementary,
    homogeneous,
    monomial_text,
    permute_variables,
    to_text,
    word_schubert,
)

GROEBNER = "groebner"
CHARACTER = "character"
_DEFAULT_BUDGETS = {GROEBNER: 6, CHARACTER: 5}
_ENV = {GROEBNER: "RSTIRLING_GROEBNER_BUDGET", CHARACTER: "RSTIRLING_CHARACTER_BUDGET"}


def default_budget(kind: str = GROEBNER) -> int:
    value = os.environ.get(_ENV[kind])
    return int(value) if value else _DEFAULT_BUDGETS[kind]


def check_budget(p: cb.Parameters, budget: int | None = None, kind: str = GROEBNER):
    limit = default_budget(kind) if budget is None else budget
    if p.n > limit:
        raise BudgetError(f"n={p.n} exceeds the {kind} budget n <= {limit}")


@dataclass
class Report:
    """Structured outcome of one check on one parameter triple."""

    check: str
    params: cb.Parameters | None
    passed: bool
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    informational: bool = False
    seconds: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "check": self.check,
            "parameters": self.params.as_dict() if self.params else None,
            "verdict": ("pass" if self.passed else "fail"),
            "informational": self.informational,
            "details": self.details,
            "witnesses": self.witnesses,
        }
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# The ideal
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StirlingIdeal:
    """Generators of I_{n,k}^{(r)} grouped by family."""

    params: cb.Parameters
    powers: tuple
    elementaries: tuple
    homogeneous: tuple

    @property
    def generators(self) -> list:
        return list(self.powers) + list(self.elementaries) + list(self.homogeneous)

    def ideal(self, order=NEGLEX) -> Ideal:
        return Ideal(self.generators, order)


def build_ideal(p: cb.Parameters) -> StirlingIdeal:
    """``x_i^k`` (all i), ``e_n, ..., e_{n-k+1}`` and ``h_{k-r+1}(x_r), ..., h_k(x_r)``."""
    n, k, r = p.n, p.k, p.r
    powers = tuple(
        Polynomial.monomial(tuple(k if j == i else 0 for j in range(n))) for i in range(n)
    )
    elems = tuple(elementary(d, n, n) for d in range(n, n - k, -1))
    homs = tuple(homogeneous(d, r, n) for d in range(k - r + 1, k + 1)) if r else ()
    return StirlingIdeal(p, powers, elems, homs)


@lru_cache(maxsize=128)
def quotient(p: cb.Parameters) -> GroebnerQuotient:
    """Reduced neglex Groebner basis of I_{n,k}^{(r)} (cached per triple)."""
    return buchberger(build_ideal(p).ideal())


@lru_cache(maxsize=16)
def _coinvariant_quotient(r: int) -> GroebnerQuotient:
    # classical coinvariant ring Q[x_1..x_r]/<e_1, ..., e_r>
    return buchberger([elementary(d, r, r) for d in range(1, r + 1)])


def code_monomials(p: cb.Parameters) -> list:
    return [cb.code(s) for s in cb.enumerate_partitions(p)]


def coinv_distribution(p: cb.Parameters) -> list:
    """Coefficients of ``sum_sigma q^coinv(sigma)``, computed combinatorially."""
    counts = {}
    for s in cb.enumerate_partitions(p):
        c = cb.coinv(s)
        counts[c] = counts.get(c, 0) + 1
    top = max(counts)
    return [counts.get(d, 0) for d in range(top + 1)]


def _poly_series_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(series):
    series = list(series)
    while len(series) > 1 and series[-1] == 0:
        series.pop()
    return series


# ---------------------------------------------------------------------------
# Standard basis and Hilbert series
# ---------------------------------------------------------------------------


@_timed
def verify_standard_basis(p: cb.Parameters, budget: int | None = None) -> Report:
    """Groebner standard monomials equal ``{x^code(sigma)}``."""
    check_budget(p, budget)
    expected = set(code_monomials(p))
    actual = set(quotient(p).standard_monomials)
    only_codes = sorted(expected - actual)
    only_gb = sorted(actual - expected)
    witnesses = [{"side": "codes", "monomial": monomial_text(m)} for m in only_codes]
    witnesses += [{"side": "groebner", "monomial": monomial_text(m)} for m in only_gb]
    return Report(
        "standard-basis",
        p,
        not witnesses,
        {"code_monomials": len(expected), "standard_monomials": len(actual)},
        witnesses,
    )


@_timed
def verify_hilbert(p: cb.Parameters, budget: int | None = None) -> Report:
    """Groebner-side Hilbert series against the coinv generating function."""
    check_budget(p, budget)
    gb = quotient(p).hilbert_series()
    comb_side = coinv_distribution(p)
    return Report(
        "hilbert",
        p,
        gb == comb_side,
        {"groebner": gb, "coinv": comb_side, "series": hilbert_text(gb)},
    )


@_timed
def verify_initial_ideal(p: cb.Parameters, budget: int | None = None) -> Report:
    """Compare the computed initial ideal with the three expected generator families.

    Families: ``x_i^{k-i+1}`` for ``i <= r``, ``x_i^k`` for ``i > r`` and the
    reverse skip monomials ``x(S)*`` for ``|S| = n-k+1``.
    """
    check_budget(p, budget)
    n, k, r = p.n, p.k, p.r
    Q = quotient(p)
    family = []
    for i in range(1, n + 1):
        e = [0] * n
        e[i - 1] = k - i + 1 if i <= r else k
        family.append(tuple(e))
    for S in combinations(range(1, n + 1), n - k + 1):
        family.append(cb.reverse_skip(S, n))
    minimal = sorted(
        {m for m in family if not any(o != m and all(a <= b for a, b in zip(o, m)) for o in family)},
        key=NEGLEX.key,
    )
    computed = Q.leading_terms()
    details = {
        "computed_generators": [monomial_text(m) for m in computed],
        "expected_generators": [monomial_text(m) for m in minimal],
    }
    if r >= 1 and k - r - 1 >= 0:
        # the exponent k-r-1 displayed for x_r in the source text
        e = [0] * n
        e[r - 1] = k - r - 1
        details["x_r^(k-r-1)_in_initial_ideal"] = not Q.is_standard(tuple(e))
        e[r - 1] = k - r + 1
        details["x_r^(k-r+1)_in_initial_ideal"] = not Q.is_standard(tuple(e))
    ok = computed == minimal
    witnesses = [] if ok else [{"computed_minus_expected": [monomial_text(m) for m in set(computed) - set(minimal)],
                                "expected_minus_computed": [monomial_text(m) for m in set(minimal) - set(computed)]}]
    return Report("initial-ideal", p, ok, details, witnesses)


# ---------------------------------------------------------------------------
# Schubert Z-basis certificate
# ---------------------------------------------------------------------------


@dataclass
class GradedIntegerMatrix:
    """Per-degree change-of-basis blocks: rows are words, columns standard monomials."""

    blocks: dict = field(default_factory=dict)  # degree -> list of rows
    row_labels: dict = field(default_factory=dict)  # degree -> list of words
    col_labels: dict = field(default_factory=dict)  # degree -> list of monomials

    def is_square(self, d) -> bool:
        return len(self.row_labels[d]) == len(self.col_labels[d])

    def determinants(self) -> dict:
        return {d: determinant(self.blocks[d]) for d in sorted(self.blocks) if self.is_square(d)}

    def is_unimodular(self) -> bool:
        return all(self.is_square(d) for d in self.blocks) and all(
            abs(v) == 1 for v in self.determinants().values()
        )


@dataclass
class Certificate:
    params: cb.Parameters
    matrix: GradedIntegerMatrix
    report: Report


def schubert_basis_certificate(p: cb.Parameters, budget: int | None = None) -> Certificate:
    """Express ``NF(S_w)`` (``w`` in W_{n,k}^{(r)}) on the standard monomials, degree by degree."""
    start = time.perf_counter()
    check_budget(p, budget)
    Q = quotient(p)
    std = Q.standard_monomials
    mat = GradedIntegerMatrix()
    for m in std:
        mat.col_labels.setdefault(sum(m), []).append(m)
    witnesses = []
    rows_by_degree = {}
    for w in cb.enumerate_words(p):
        f = word_schubert(w, p.k)
        if not f.is_homogeneous():
            witnesses.append({"word": cb.format_word(w), "problem": "not homogeneous"})
            continue
        coords = Q.coordinates(f)
        for m, c in coords.items():
            if not isinstance(c, int):
                witnesses.append(
                    {"word": cb.format_word(w), "monomial": monomial_text(m), "coefficient": str(c)}
                )
        rows_by_degree.setdefault(f.degree(), []).append((w, coords))
    for d in sorted(set(rows_by_degree) | set(mat.col_labels)):
        rows = rows_by_degree.get(d, [])
        cols = mat.col_labels.setdefault(d, [])
        mat.row_labels[d] = [w for w, _ in rows]
        mat.blocks[d] = [[int(coords.get(m, 0)) for m in cols] for _, coords in rows]
        if len(rows) != len(cols):
            witnesses.append({"degree": d, "problem": "non-square block", "rows": len(rows), "cols": len(cols)})
    dets = mat.determinants()
    for d, v in dets.items():
        if abs(v) != 1:
            witnesses.append(
                {"degree": d, "determinant": v, "smith_invariants": smith_normal_form(mat.blocks[d])}
            )
    details = {
        "degrees": {str(d): len(mat.row_labels[d]) for d in sorted(mat.blocks)},
        "determinants": {str(d): v for d, v in dets.items()},
    }
    report = Report("schubert-zbasis", p, not witnesses, details, witnesses)
    report.seconds = time.perf_counter() - start
    return Certificate(p, mat, report)


def verify_schubert_basis(p: cb.Parameters, budget: int | None = None) -> Report:
    return schubert_basis_certificate(p, budget).report


# ---------------------------------------------------------------------------
# Demazure membership
# ---------------------------------------------------------------------------


@_timed
def demazure_membership(p: cb.Parameters, budget: int | None = None) -> Report:
    """For ``|S| = n-k+1``: ``kappa_{gamma(S)*}`` lies in the ideal and leads with ``x(S)*``."""
    check_budget(p, budget)
    n, k = p.n, p.k
    Q = quotient(p)
    witnesses = []
    count = 0
    for S in combinations(range(1, n + 1), n - k + 1):
        count += 1
        gamma = cb.reverse_skip(S, n)
        kappa = demazure(gamma)
        lead = kappa.leading_monomial(NEGLEX)
        problems = []
        if lead != gamma or kappa.terms[lead] != 1:
            problems.append(f"leading term {monomial_text(lead)} (coefficient {kappa.terms[lead]})")
        if not kappa.is_integral() or any(c < 0 for c in kappa.terms.values()):
            problems.append("coefficients not nonnegative integers")
        if not Q.contains(kappa):
            problems.append("not in the ideal")
        if problems:
            witnesses.append({"S": list(S), "gamma": list(gamma), "problems": problems})
    return Report("demazure", p, not witnesses, {"subsets": count}, witnesses)


# ---------------------------------------------------------------------------
# Generator identities
# ---------------------------------------------------------------------------


def w_word(i: int, n: int, k: int) -> tuple:
    """Weakly increasing word with letters ``[k] - {i}``, first k-1 letters distinct."""
    if k < 2 or not 1 <= i <= k or k > n:
        raise DomainError(f"w^{i} needs 2 <= k <= n and 1 <= i <= k (n={n}, k={k})")
    letters = [a for a in range(1, k + 1) if a != i]
    return tuple(letters + [letters[-1]] * (n - k + 1))


def v_word(i: int, n: int, k: int) -> tuple:
    """``1 2 ... i i (i+1) ... k k ... k`` of length n (needs ``k < n``)."""
    if not (k < n and 1 <= i <= k):
        raise DomainError(f"v^{i} needs k < n and 1 <= i <= k (n={n}, k={k})")
    return tuple(list(range(1, i + 1)) + [i] + list(range(i + 1, k + 1)) + [k] * (n - k - 1))


@_timed
def generator_identities(p: cb.Parameters) -> Report:
    """``S_{w^i} = e_{n-i+1}(x_n)`` for ``1 <= i <= k`` and ``S_{v^i} = h_{k-i}(x_{i+1})`` for ``1 <= i <= r-1``."""
    n, k, r = p.n, p.k, p.r
    witnesses = []
    checked = 0
    if k >= 2:
        for i in range(1, k + 1):
            w = w_word(i, n, k)
            if word_schubert(w, k) != elementary(n - i + 1, n, n):
                witnesses.append({"word": cb.format_word(w), "expected": f"e_{n - i + 1}(x_{n})"})
            checked += 1
    if k < n:
        for i in range(1, r):
            v = v_word(i, n, k)
            if word_schubert(v, k) != homogeneous(k - i, i + 1, n):
                witnesses.append({"word": cb.format_word(v), "expected": f"h_{k - i}(x_{i + 1})"})
            checked += 1
    return Report("generator-identities", p, not witnesses, {"identities": checked}, witnesses)


# ---------------------------------------------------------------------------
# Group action and characters
# ---------------------------------------------------------------------------


def _act_matrix_trace(Q: GroebnerQuotient, g: tuple) -> list:
    std = Q.standard_monomials
    top = max(sum(m) for m in std)
    traces = [0] * (top + 1)
    for m in std:
        image = permute_variables(g, Polynomial._make(Q.nvars, {m: 1}))
        (mono,) = image.terms
        c = Q._nf_monomial(mono).get(m, 0)
        traces[sum(m)] += c
    return traces


def ideal_is_stable(p: cb.Parameters) -> bool:
    """Each generator of I, permuted by a simple transposition of S_r x S_{n-r}, reduces to 0."""
    Q = quotient(p)
    n, r = p.n, p.r
    simple = [i for i in range(1, n) if i != r]
    for i in simple:
        s = list(range(1, n + 1))
        s[i - 1], s[i] = s[i], s[i - 1]
        for g in build_ideal(p).generators:
            if not Q.contains(permute_variables(s, g)):
                return False
    return True


def _split(p, w1, w2):
    w1 = cb.check_permutation(w1) if w1 else ()
    w2 = cb.check_permutation(w2) if w2 else ()
    if len(w1) != p.r or len(w2) != p.n - p.r:
        raise DomainError(f"need w1 in S_{p.r} and w2 in S_{p.n - p.r}, got ranks {len(w1)} and {len(w2)}")
    return cb.parabolic_product(w1, w2)


def character_trace(w1, w2, p: cb.Parameters, budget: int | None = None) -> list:
    """Graded trace of ``w1 x w2`` acting on R_{n,k}^{(r)} (variables permuted, then NF)."""
    check_budget(p, budget, CHARACTER)
    g = _split(p, w1, w2)
    return _act_matrix_trace(quotient(p), g)


@_timed
def chevalley_check(p: cb.Parameters, budget: int | None = None) -> Report:
    """Total trace of every element of S_r x S_{n-r} equals its fixed points on OP."""
    check_budget(p, budget, CHARACTER)
    witnesses = []
    if not ideal_is_stable(p):
        return Report("chevalley", p, False, {}, [{"problem": "ideal not stable under S_r x S_{n-r}"}])
    Q = quotient(p)
    partitions = cb.enumerate_partitions(p)
    elements = 0
    for w1 in cb.permutations(p.r):
        for w2 in cb.permutations(p.n - p.r):
            g = cb.parabolic_product(w1, w2)
            total = sum(_act_matrix_trace(Q, g))
            fixed = cb.fixed_points(partitions, g)
            elements += 1
            if total != fixed:
                witnesses.append({"w1": list(w1), "w2": list(w2), "trace": total, "fixed_points": fixed})
    return Report("chevalley", p, not witnesses, {"group_elements": elements}, witnesses)


@_timed
def tensor_conjecture_probe(p: cb.Parameters, budget: int | None = None) -> Report:
    """Hilbert-level comparison of R_{n,k}^{(r)} with R_r (x) eps_r R_{n,k}; conjecture evidence only."""
    check_budget(p, budget, CHARACTER)
    n, k, r = p.n, p.k, p.r
    lhs = quotient(p).hilbert_series()
    base = quotient(cb.Parameters(n, k, 0))
    top = len(base.hilbert_series())
    signed = [0] * top
    for w in cb.permutations(r):
        g = tuple(w) + tuple(range(r + 1, n + 1))
        tr = _act_matrix_trace(base, g)
        sgn = cb.sign(w)
        for d, t in enumerate(tr):
            signed[d] += sgn * t
    eps_dims = []
    for v in signed:
        q = Fraction(v, factorial(r))
        eps_dims.append(int(q) if q.denominator == 1 else str(q))
    integral = all(isinstance(v, int) for v in eps_dims)
    coinv_r = _coinvariant_quotient(r).hilbert_series() if r else [1]
    rhs = _trim(_poly_series_mul(coinv_r, eps_dims)) if integral else None
    # eps_r R_{n,k} starts in the Vandermonde degree C(r,2); the literal graded
    # statement is compared as written and the shifted comparison is recorded too.
    shift = r * (r - 1) // 2
    literal = integral and _trim(lhs) == rhs
    shifted = (
        integral
        and all(v == 0 for v in rhs[:shift])
        and _trim(lhs) == _trim(rhs[shift:] or [0])
    )
    details = {
        "lhs": lhs,
        "rhs": rhs,
        "coinvariant_R_r": coinv_r,
        "eps_component": eps_dims,
        "equal_as_stated": literal,
        "vandermonde_shift": shift,
        "equal_after_shift": shifted,
        "label": "conjecture evidence (Hilbert level), not a theorem check",
    }
    return Report("conjecture-probe", p, literal, details, informational=True)
