"""Exact sparse multivariate polynomials over the rationals.

Monomials are dense exponent tuples of a fixed length ``nvars``; coefficients
are Python ints when integral and :class:`fractions.Fraction` otherwise.
Besides ring arithmetic this module provides monomial orders, the elementary
and complete homogeneous symmetric polynomials, divided differences,
Schubert polynomials (classical and for words) and key polynomials.
"""

from __future__ import annotations

import re
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from . import combinatorics as comb
from .errors import DomainError, InvariantViolation


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Immutable polynomial in ``x_1, ..., x_nvars``."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, Rational] | None = None):
        if nvars < 0:
            raise DomainError("nvars must be nonnegative")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise DomainError(f"bad exponent vector {mono} for {nvars} variables")
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            if c:
                clean[mono] = _norm(clean.get(mono, 0) + c)
                if not clean[mono]:
                    del clean[mono]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, nvars, terms):
        # Trusted constructor: ``terms`` has correct keys and no zero values.
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._make(nvars, {})

    @classmethod
    def constant(cls, c, nvars):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._make(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(1, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, i: int, nvars: int):
        """``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise DomainError(f"x{i} is not among {nvars} variables")
        e = [0] * nvars
        e[i - 1] = 1
        return cls._make(nvars, {tuple(e): 1})

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.nvars}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DomainError(
                    f"ambient mismatch: {self.nvars} vs {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Polynomial._make(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._make(self.nvars, {m: _norm(v * c) for m, v in self.terms.items()})

    def mul_monomial(self, exps: Sequence[int], c=1):
        out = {}
        for m, v in self.terms.items():
            out[tuple(a + b for a, b in zip(m, exps))] = _norm(v * c)
        return Polynomial._make(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._make(self.nvars, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative powers are not polynomials")
        result = Polynomial.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- queries -------------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._make(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def coefficient(self, mono: Sequence[int]):
        return self.terms.get(tuple(mono), 0)

    def variables_used(self) -> frozenset:
        """1-based indices of variables that occur."""
        return frozenset(i + 1 for m in self.terms for i, e in enumerate(m) if e)

    def sorted_terms(self, order: "MonomialOrder" = None, descending=True) -> list:
        order = order or NEGLEX
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)

    def leading_monomial(self, order: "MonomialOrder" = None) -> tuple:
        if not self.terms:
            raise DomainError("the zero polynomial has no leading term")
        order = order or NEGLEX
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: "MonomialOrder" = None):
        return self.terms[self.leading_monomial(order)]

    def with_nvars(self, nvars: int) -> "Polynomial":
        """Re-embed in ``nvars`` variables (must not drop a used variable)."""
        if nvars >= self.nvars:
            pad = (0,) * (nvars - self.nvars)
            return Polynomial._make(nvars, {m + pad: c for m, c in self.terms.items()})
        used = self.variables_used()
        if used and max(used) > nvars:
            raise DomainError(f"polynomial uses x{max(used)}, cannot restrict to {nvars} variables")
        return Polynomial._make(nvars, {m[:nvars]: c for m, c in self.terms.items()})

    def swap_variables(self, i: int) -> "Polynomial":
        """``s_i f``: exchange ``x_i`` and ``x_{i+1}``."""
        a, b = i - 1, i
        out = {}
        for m, c in self.terms.items():
            m2 = list(m)
            m2[a], m2[b] = m2[b], m2[a]
            out[tuple(m2)] = c
        return Polynomial._make(self.nvars, out)

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Polynomial":
        """Inverse of :func:`to_text`."""
        return parse_polynomial(text, nvars)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key (larger key = larger monomial)."""

    name: str
    key: Callable[[tuple], tuple]

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        if len(a) != len(b):
            raise DomainError(f"cannot compare monomials of lengths {len(a)} and {len(b)}")
        ka, kb = self.key(tuple(a)), self.key(tuple(b))
        return (ka > kb) - (ka < kb)


def _neglex_key(m):
    return m[::-1]


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in m[::-1]))


# a < b iff a_i < b_i at the largest index where they differ
NEGLEX = MonomialOrder("neglex", _neglex_key)
LEX = MonomialOrder("lex", tuple)
GREVLEX = MonomialOrder("grevlex", _grevlex_key)
ORDERS = {o.name: o for o in (NEGLEX, LEX, GREVLEX)}


def neglex_cmp(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``x^a`` is smaller than, equal to or larger than ``x^b``."""
    return NEGLEX.compare(a, b)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def monomial_text(mono: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(mono, 1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def to_text(f: Polynomial, order: MonomialOrder = None) -> str:
    """Canonical serialization: terms by descending order (neglex by default)."""
    if not f.terms:
        return "0"
    out = []
    for idx, (m, c) in enumerate(f.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = monomial_text(m)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?((?:x\d+(?:\^\d+)?\*?)*)$")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return Polynomial.zero(nvars)
    pieces = re.findall(r"[+-]?[^+-]+", text)
    terms = {}
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        match = _TERM.match(body)
        if not match:
            raise DomainError(f"cannot parse term {piece!r}")
        coeff = Fraction(match.group(1)) if match.group(1) else Fraction(1)
        exps = [0] * nvars
        for var, e in re.findall(r"x(\d+)(?:\^(\d+))?", match.group(2)):
            i = int(var)
            if not 1 <= i <= nvars:
                raise DomainError(f"x{i} is not among {nvars} variables")
            exps[i - 1] += int(e) if e else 1
        mono = tuple(exps)
        terms[mono] = terms.get(mono, 0) + sign * coeff
    return Polynomial(nvars, terms)


# ---------------------------------------------------------------------------
# Symmetric polynomials
# ---------------------------------------------------------------------------


def _check_range(d, m, n_ambient):
    if d < 0 or m < 0 or m > n_ambient:
        raise DomainError(f"need d >= 0 and 0 <= m <= n (got d={d}, m={m}, n={n_ambient})")


def elementary(d: int, m: int, n_ambient: int) -> Polynomial:
    """``e_d(x_1, ..., x_m)`` inside ``n_ambient`` variables."""
    _check_range(d, m, n_ambient)
    terms = {}
    for idx in combinations(range(m), d):
        e = [0] * n_ambient
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return Polynomial._make(n_ambient, terms)


def homogeneous(d: int, m: int, n_ambient: int) -> Polynomial:
    """``h_d(x_1, ..., x_m)`` inside ``n_ambient`` variables."""
    _check_range(d, m, n_ambient)
    terms = {}
    for idx in combinations_with_replacement(range(m), d):
        e = [0] * n_ambient
        for i in idx:
            e[i] += 1
        terms[tuple(e)] = 1
    return Polynomial._make(n_ambient, terms)


# ---------------------------------------------------------------------------
# Divided differences
# ---------------------------------------------------------------------------


def divided_difference(i: int, f: Polynomial) -> Polynomial:
    """``(f - s_i f) / (x_i - x_{i+1})``, computed by exact division."""
    if not 1 <= i < f.nvars:
        raise DomainError(f"divided difference index {i} out of range for {f.nvars} variables")
    a, b = i - 1, i
    num = (f - f.swap_variables(i)).terms
    if not num:
        return Polynomial.zero(f.nvars)
    # Bucket the numerator by the exponent of x_i and peel off x_i from the top.
    buckets = {}
    for m, c in num.items():
        buckets.setdefault(m[a], {})[m] = c
    quotient = {}
    for deg in range(max(buckets), 0, -1):
        level = buckets.pop(deg, None)
        if not level:
            continue
        below = buckets.setdefault(deg - 1, {})
        for m, c in level.items():
            if not c:
                continue
            q = list(m)
            q[a] -= 1
            q = tuple(q)
            quotient[q] = quotient.get(q, 0) + c
            # subtract c * q * (x_i - x_{i+1}); the x_{i+1} part moves down a level
            r = list(q)
            r[b] += 1
            r = tuple(r)
            below[r] = below.get(r, 0) + c
    leftover = {m: c for m, c in buckets.get(0, {}).items() if c}
    if leftover:
        raise InvariantViolation(f"divided difference d_{i} left a remainder on {f}")
    return Polynomial._make(f.nvars, {m: _norm(c) for m, c in quotient.items() if c})


def isobaric_divided_difference(i: int, f: Polynomial) -> Polynomial:
    """``pi_i f = d_i(x_i f)``."""
    e = [0] * f.nvars
    e[i - 1] = 1
    return divided_difference(i, f.mul_monomial(e))


def permute_variables(w: Sequence[int], f: Polynomial) -> Polynomial:
    """Ring automorphism ``x_i -> x_{w(i)}`` (``w`` acts as the identity past its rank)."""
    w = comb.check_permutation(w)
    n = max(f.nvars, len(w))
    if n > f.nvars:
        f = f.with_nvars(n)
    target = list(w) + list(range(len(w) + 1, n + 1))
    out = {}
    for m, c in f.terms.items():
        e = [0] * n
        for i, a in enumerate(m):
            e[target[i] - 1] = a
        out[tuple(e)] = c
    return Polynomial._make(n, out)


# ---------------------------------------------------------------------------
# Schubert polynomials
# ---------------------------------------------------------------------------


class _LRU:
    """Thread-safe bounded mapping used for memo tables."""

    def __init__(self, maxsize):
        self.maxsize = maxsize
        self._data = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
            return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def resize(self, maxsize):
        with self._lock:
            self.maxsize = maxsize
            while len(self._data) > maxsize:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


DEFAULT_SCHUBERT_CACHE = 20000
_schubert_cache = _LRU(DEFAULT_SCHUBERT_CACHE)


def set_schubert_cache_size(size: int):
    if size < 1:
        raise DomainError("cache size must be positive")
    _schubert_cache.resize(size)


def _staircase(m):
    return Polynomial.monomial(tuple(range(m - 1, -1, -1)))


def _schubert_rec(w, pick, cache):
    hit = cache.get(w)
    if hit is not None:
        return hit
    m = len(w)
    ascents = [i for i in range(1, m) if w[i - 1] < w[i]]
    if not ascents:
        result = _staircase(m)
    else:
        i = pick(ascents)
        u = list(w)
        u[i - 1], u[i] = u[i], u[i - 1]
        # S_w = d_i S_{w s_i} where (w s_i)_i > (w s_i)_{i+1}
        result = divided_difference(i, _schubert_rec(tuple(u), pick, cache))
    cache.put(w, result)
    return result


class _Dict(dict):
    def put(self, key, value):
        self[key] = value


def schubert(w: Sequence[int], path: str = "first") -> Polynomial:
    """Schubert polynomial of a permutation ``w`` in S_m, in ``m`` variables.

    Computed downward from the longest element by divided differences.
    ``path="first"`` raises the first ascent at each step (memoized);
    ``path="last"`` raises the last one and uses a private table, giving an
    independent route for consistency checks.
    """
    w = comb.check_permutation(w)
    if path == "first":
        return _schubert_rec(w, lambda a: a[0], _schubert_cache)
    if path == "last":
        return _schubert_rec(w, lambda a: a[-1], _Dict())
    raise DomainError(f"unknown path {path!r}")


def word_schubert(w: Sequence[int], k) -> Polynomial:
    """Schubert polynomial of a word ``w`` over ``[k]``, in ``len(w)`` variables.

    The Schubert polynomial of ``st(conv(w))`` is transported from the
    positions of ``conv(w)`` back to those of ``w``: since
    ``conv(w)_j = w_{sigma(j)}``, the variable ``x_j`` goes to ``x_{sigma(j)}``.
    Writing the action of a permutation ``v`` on polynomials as
    ``x_i -> x_{v^{-1}(i)}``, this is ``sigma(w)^{-1}`` acting.
    """
    k = getattr(k, "k", k)  # Parameters or an int
    return _word_schubert(w, k, transport=True)


def _word_schubert(w, k, transport=True):
    # transport=False applies x_i -> x_{sigma^{-1}(i)} instead; kept for tests
    # showing that choice breaks the Z-basis property.
    w = tuple(w)
    n = len(w)
    if any(not 1 <= a <= k for a in w):
        raise DomainError(f"word {comb.format_word(w)} is not over [1..{k}]")
    sig = comb.sigma_perm(w)
    st = comb.standardize(comb.convexify(w), k)
    moved = permute_variables(sig if transport else comb.inverse(sig), schubert(st))
    used = moved.variables_used()
    if used and max(used) > n:
        raise InvariantViolation(
            f"word Schubert polynomial of {comb.format_word(w)} uses x{max(used)} beyond x{n}"
        )
    return moved.with_nvars(n)


# ---------------------------------------------------------------------------
# Key polynomials
# ---------------------------------------------------------------------------

_demazure_cache = _LRU(20000)


def demazure(gamma: Sequence[int]) -> Polynomial:
    """Key polynomial (Demazure character) of a weak composition.

    Dominant (weakly decreasing) compositions give ``x^gamma``; otherwise
    ``kappa_gamma = pi_i kappa_{s_i gamma}`` at the first ascent ``i``.
    """
    gamma = tuple(int(g) for g in gamma)
    if any(g < 0 for g in gamma):
        raise DomainError(f"composition {gamma} has negative entries")
    hit = _demazure_cache.get(gamma)
    if hit is not None:
        return hit
    ascent = next((i for i in range(1, len(gamma)) if gamma[i - 1] < gamma[i]), None)
    if ascent is None:
        result = Polynomial.monomial(gamma)
    else:
        swapped = list(gamma)
        swapped[ascent - 1], swapped[ascent] = swapped[ascent], swapped[ascent - 1]
        result = isobaric_divided_difference(ascent, demazure(swapped))
    _demazure_cache.put(gamma, result)
    return result
