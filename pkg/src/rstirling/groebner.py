"""Buchberger's algorithm over Q, normal forms and standard monomial bases.

The engine works on fraction-free integer polynomials (``dict`` from exponent
tuple to int) kept primitive after every reduction. Pairs are chosen by the
normal strategy (smallest lcm degree, ties broken by the monomial order) and
pruned with the Gebauer-Moeller criteria. The reduced basis is returned monic
over Q.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, UnsupportedError
from .polyalg import NEGLEX, MonomialOrder, Polynomial, _norm, to_text

log = logging.getLogger(__name__)


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _primitive(p: dict, key) -> dict:
    if not p:
        return p
    g = reduce(gcd, p.values())
    lm = max(p, key=key)
    if p[lm] < 0:
        g = -g
    if g == 1:
        return p
    return {m: c // g for m, c in p.items()}


def _to_integral(f: Polynomial) -> dict:
    den = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in f.terms.items()}


def _reduce(f: dict, basis: list, key) -> dict:
    """Fully reduce ``f`` by ``basis`` (list of ``(lm, poly)``); result is primitive."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                a = g[lm]
                q = tuple(x - y for x, y in zip(m, lm))
                h = gcd(a, c)
                fa, fc = a // h, c // h
                if fa != 1:
                    for t in f:
                        f[t] *= fa
                    for t in rem:
                        rem[t] *= fa
                for t, v in g.items():
                    tt = tuple(x + y for x, y in zip(t, q))
                    nv = f.get(tt, 0) - fc * v
                    if nv:
                        f[tt] = nv
                    else:
                        f.pop(tt, None)
                break
        else:
            rem[m] = c
            del f[m]
    return _primitive(rem, key)


def _spoly(f, lf, g, lg):
    lcm = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(lcm, lf))
    qg = tuple(x - y for x, y in zip(lcm, lg))
    a, b = f[lf], g[lg]
    h = gcd(a, b)
    a, b = a // h, b // h
    out = {}
    for t, v in f.items():
        tt = tuple(x + y for x, y in zip(t, qf))
        out[tt] = out.get(tt, 0) + b * v
    for t, v in g.items():
        tt = tuple(x + y for x, y in zip(t, qg))
        out[tt] = out.get(tt, 0) - a * v
    return {m: c for m, c in out.items() if c}


@dataclass
class _Stats:
    pairs_considered: int = 0
    reductions_to_zero: int = 0
    basis_additions: int = 0


def _buchberger_raw(gens: list, nvars: int, key):
    polys = []  # every polynomial ever added, as (lm, dict)
    G = []  # indices of the current basis
    B = []  # critical pairs (i, j)
    stats = _Stats()

    def update(h_idx):
        nonlocal G, B
        lh = polys[h_idx][0]
        C = list(G)
        D = []
        while C:
            g = C.pop(0)
            lg = polys[g][0]
            lcm_hg = _lcm(lh, lg)
            if _disjoint(lh, lg) or not any(
                _divides(_lcm(lh, polys[g2][0]), lcm_hg) for g2 in C + D
            ):
                D.append(g)
        E = [g for g in D if not _disjoint(lh, polys[g][0])]
        B_new = []
        for i, j in B:
            li, lj = polys[i][0], polys[j][0]
            lij = _lcm(li, lj)
            if _divides(lh, lij) and _lcm(li, lh) != lij and _lcm(lj, lh) != lij:
                continue
            B_new.append((i, j))
        B_new.extend((g, h_idx) for g in E)
        B = B_new
        G = [g for g in G if not _divides(lh, polys[g][0])] + [h_idx]

    def add(p):
        polys.append((max(p, key=key), p))
        stats.basis_additions += 1
        update(len(polys) - 1)

    # Feed generators smallest first so later ones reduce against earlier ones.
    work = sorted((g for g in gens if g), key=lambda p: (max(sum(m) for m in p), key(max(p, key=key))))
    for p in work:
        h = _reduce(p, [polys[g] for g in G], key)
        if h:
            add(h)

    def pair_key(pair):
        lcm = _lcm(polys[pair[0]][0], polys[pair[1]][0])
        return (sum(lcm), key(lcm), pair)

    while B:
        pair = min(B, key=pair_key)
        B.remove(pair)
        stats.pairs_considered += 1
        (lf, f), (lg, g) = polys[pair[0]], polys[pair[1]]
        s = _spoly(f, lf, g, lg)
        h = _reduce(s, [polys[i] for i in G], key)
        if h:
            add(h)
        else:
            stats.reductions_to_zero += 1

    # Interreduce into the reduced basis.
    basis = [polys[g] for g in G]
    basis.sort(key=lambda t: key(t[0]))
    reduced = []
    for idx, (lm, p) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = {m: c for m, c in p.items() if m != lm}
        tail_red = _reduce_tail(tail, p[lm], others, key)
        full = dict(tail_red)
        full[lm] = p[lm]
        reduced.append((lm, full))
    log.debug("buchberger: %s", stats)
    return reduced, stats


def _reduce_tail(tail: dict, lc: int, basis: list, key) -> dict:
    # Reduce the tail of lc*x^lm + tail without touching the leading term;
    # returns the tail scaled to sit over leading coefficient lc (rational).
    if not tail:
        return {}
    red = _reduce_q({m: Fraction(c, lc) for m, c in tail.items()}, basis, key)
    return {m: c * lc for m, c in red.items()}


def _reduce_q(f: dict, basis: list, key) -> dict:
    """Exact reduction over Q (no rescaling); ``basis`` entries are integral."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                factor = Fraction(c, 1) / g[lm]
                for t, v in g.items():
                    tt = tuple(x + y for x, y in zip(t, q))
                    nv = f.get(tt, 0) - factor * v
                    if nv:
                        f[tt] = nv
                    else:
                        f.pop(tt, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


@dataclass
class Ideal:
    """An ideal of Q[x_1..x_n] given by generators and a monomial order."""

    generators: list
    order: MonomialOrder = NEGLEX

    def __post_init__(self):
        if not self.generators:
            raise DomainError("an ideal needs at least one generator")
        nv = {g.nvars for g in self.generators}
        if len(nv) != 1:
            raise DomainError(f"generators live in different ambient rings: {sorted(nv)}")
        if any(g.is_zero() for g in self.generators):
            raise DomainError("generators must be nonzero")

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    def groebner(self) -> "GroebnerQuotient":
        return buchberger(self)


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder | None = None) -> "GroebnerQuotient":
    """Reduced Groebner basis of ``ideal``, packaged with its quotient ring."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(list(ideal), order or NEGLEX)
    elif order is not None and order != ideal.order:
        ideal = Ideal(ideal.generators, order)
    key = ideal.order.key
    raw, stats = _buchberger_raw([_to_integral(g) for g in ideal.generators], ideal.nvars, key)
    basis = []
    for lm, p in raw:
        lc = p[lm]
        basis.append(Polynomial._make(ideal.nvars, {m: _norm(Fraction(c) / lc) for m, c in p.items()}))
    basis.sort(key=lambda g: key(g.leading_monomial(ideal.order)))
    return GroebnerQuotient(ideal.nvars, ideal.order, basis, stats)


class GroebnerQuotient:
    """Q[x]/I presented by a reduced Groebner basis.

    Normal forms are computed monomial by monomial and memoized, so repeated
    reductions (characters, basis changes) share work.
    """

    def __init__(self, nvars, order, basis, stats=None):
        self.nvars = nvars
        self.order = order
        self.basis = list(basis)
        self.stats = stats
        self._lead = [g.leading_monomial(order) for g in self.basis]
        self._tails = [
            [(m, c) for m, c in g.terms.items() if m != lm] for g, lm in zip(self.basis, self._lead)
        ]
        self._nf_memo = {}
        self._divisor_memo = {}

    # -- structure -----------------------------------------------------------

    def leading_terms(self) -> list:
        """Minimal monomial generators of the initial ideal (sorted by the order)."""
        return sorted(self._lead, key=self.order.key)

    def is_standard(self, mono: Sequence[int]) -> bool:
        return self._divisor(tuple(mono)) is None

    def _divisor(self, mono):
        try:
            return self._divisor_memo[mono]
        except KeyError:
            pass
        hit = None
        for idx, lm in enumerate(self._lead):
            if _divides(lm, mono):
                hit = idx
                break
        self._divisor_memo[mono] = hit
        return hit

    @cached_property
    def standard_monomials(self) -> list:
        """Monomials outside the initial ideal, sorted by (degree, order)."""
        bounds = []
        for i in range(self.nvars):
            pure = [lm[i] for lm in self._lead if all(e == 0 for j, e in enumerate(lm) if j != i) and lm[i] > 0]
            if not pure:
                raise UnsupportedError(
                    f"quotient is infinite-dimensional: no pure power of x{i + 1} in the initial ideal"
                )
            bounds.append(min(pure))
        out = []
        current = [0] * self.nvars
        lead = self._lead

        def dfs(i):
            if i == self.nvars:
                out.append(tuple(current))
                return
            for e in range(bounds[i]):
                current[i] = e
                # prune: any leading monomial supported on x_1..x_{i+1} dividing the prefix
                prefix = current[: i + 1]
                if any(
                    all(lm[j] <= prefix[j] for j in range(i + 1)) and all(lm[j] == 0 for j in range(i + 1, self.nvars))
                    for lm in lead
                ):
                    break
                dfs(i + 1)
            current[i] = 0

        dfs(0)
        out.sort(key=lambda m: (sum(m), self.order.key(m)))
        return out

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)

    def hilbert_series(self) -> list:
        """Coefficient list: entry ``d`` counts standard monomials of degree ``d``."""
        degs = [sum(m) for m in self.standard_monomials]
        out = [0] * (max(degs) + 1)
        for d in degs:
            out[d] += 1
        return out

    # -- normal forms --------------------------------------------------------------

    def _nf_monomial(self, mono):
        memo = self._nf_memo
        if mono in memo:
            return memo[mono]
        stack = [mono]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            idx = self._divisor(x)
            if idx is None:
                memo[x] = {x: 1}
                stack.pop()
                continue
            lm = self._lead[idx]
            q = tuple(a - b for a, b in zip(x, lm))
            children = [(tuple(a + b for a, b in zip(t, q)), c) for t, c in self._tails[idx]]
            missing = [y for y, _ in children if y not in memo]
            if missing:
                stack.extend(missing)
                continue
            res = {}
            for y, c in children:
                for s, v in memo[y].items():
                    res[s] = res.get(s, 0) - c * v
            memo[x] = {s: _norm(v) for s, v in res.items() if v}
            stack.pop()
        return memo[mono]

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Unique representative of ``f`` supported on standard monomials."""
        if f.nvars != self.nvars:
            raise DomainError(f"polynomial has {f.nvars} variables, quotient has {self.nvars}")
        out = {}
        for m, c in f.terms.items():
            for s, v in self._nf_monomial(m).items():
                out[s] = out.get(s, 0) + c * v
        return Polynomial._make(self.nvars, {s: _norm(v) for s, v in out.items() if v})

    def contains(self, f: Polynomial) -> bool:
        """Ideal membership."""
        return self.normal_form(f).is_zero()

    def coordinates(self, f: Polynomial) -> dict:
        """Coefficients of ``NF(f)`` on the standard monomial basis."""
        return dict(self.normal_form(f).terms)

    # -- checks and serialization ---------------------------------------------------

    def is_reduced(self) -> bool:
        for g, lm in zip(self.basis, self._lead):
            if g.terms[lm] != 1:
                return False
            for m in g.terms:
                for other, olm in zip(self.basis, self._lead):
                    if other is not g and _divides(olm, m):
                        return False
        return True

    def s_pairs_reduce_to_zero(self) -> bool:
        """Re-verify Buchberger's criterion on the final basis."""
        for i in range(len(self.basis)):
            for j in range(i + 1, len(self.basis)):
                f, g = self.basis[i], self.basis[j]
                li, lj = self._lead[i], self._lead[j]
                lcm = _lcm(li, lj)
                s = f.mul_monomial(tuple(a - b for a, b in zip(lcm, li))) - g.mul_monomial(
                    tuple(a - b for a, b in zip(lcm, lj))
                )
                if not self.normal_form(s).is_zero():
                    return False
        return True

    def to_text(self) -> str:
        return "\n".join(to_text(g, self.order) for g in self.basis)


def hilbert_text(coeffs: Sequence[int], var: str = "q") -> str:
    """``[1, 4, 8]`` -> ``"1 + 4q + 8q^2"``."""
    parts = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        if d == 0:
            parts.append(str(c))
        else:
            mono = var if d == 1 else f"{var}^{d}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) if parts else "0"
