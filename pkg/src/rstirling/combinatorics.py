"""Ordered r-Stirling partitions, coinversion codes, words and permutations.

Conventions
-----------
* Letters, positions and block labels shown to users are 1-based.
* Partitions are stored as a tuple of blocks, each a sorted tuple of letters.
* Words and permutations are plain tuples of positive integers.
* ``enumerate_partitions`` emits partitions in lexicographic order of their
  coinversion codes; ``enumerate_words`` emits words in lexicographic order.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right, insort
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvalidCodeError, ParameterError

Word = tuple
Permutation = tuple


@dataclass(frozen=True)
class Parameters:
    """A validated triple ``r <= k <= n`` (``r = 0`` allowed)."""

    n: int
    k: int
    r: int = 0

    def __post_init__(self):
        for name in ("n", "k", "r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.n < 1 or self.k < 1:
            raise ParameterError(f"n and k must be positive (n={self.n}, k={self.k})")
        if not 0 <= self.r <= self.k <= self.n:
            raise ParameterError(
                f"need 0 <= r <= k <= n, got n={self.n}, k={self.k}, r={self.r}"
            )

    def __str__(self):
        return f"(n={self.n}, k={self.k}, r={self.r})"

    def as_dict(self):
        return {"n": self.n, "k": self.k, "r": self.r}

    @classmethod
    def all_up_to(cls, max_n: int, min_n: int = 1) -> Iterator["Parameters"]:
        """Every valid triple with ``min_n <= n <= max_n``, ordered by (n, k, r)."""
        for n in range(max(1, min_n), max_n + 1):
            for k in range(1, n + 1):
                for r in range(0, k + 1):
                    yield cls(n, k, r)


# ---------------------------------------------------------------------------
# Ordered set partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderedSetPartition:
    """An ordered set partition ``(B_1 | ... | B_k)`` of ``{1, ..., n}``."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        if not blocks:
            raise DomainError("an ordered set partition needs at least one block")
        letters = [x for b in blocks for x in b]
        if any(len(b) == 0 for b in blocks):
            raise DomainError(f"empty block in {blocks}")
        if sorted(letters) != list(range(1, len(letters) + 1)):
            raise DomainError(f"blocks {blocks} do not partition {{1..{len(letters)}}}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def _trusted(cls, blocks):
        # Skip validation; caller guarantees sorted, disjoint, nonempty blocks.
        obj = object.__new__(cls)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    @classmethod
    def parse(cls, text: str) -> "OrderedSetPartition":
        """Parse ``"25|1|34"`` or ``"2,5|1|3,4"``."""
        parts = text.strip().strip("()").split("|")
        blocks = []
        for part in parts:
            part = part.strip()
            if "," in part:
                blocks.append([int(x) for x in part.split(",") if x.strip()])
            else:
                blocks.append([int(ch) for ch in part if not ch.isspace()])
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @cached_property
    def minima(self) -> tuple:
        return tuple(b[0] for b in self.blocks)

    @cached_property
    def assignment(self) -> tuple:
        """0-based block index of each letter 1..n."""
        out = [0] * self.n
        for j, b in enumerate(self.blocks):
            for x in b:
                out[x - 1] = j
        return tuple(out)

    def is_r_stirling(self, r: int) -> bool:
        if r > self.n:
            return False
        seen = set(self.assignment[:r])
        return len(seen) == r

    def format(self) -> str:
        sep = "," if self.n >= 10 else ""
        return "|".join(sep.join(str(x) for x in b) for b in self.blocks)

    def __str__(self):
        return self.format()


def _check_member(sigma: OrderedSetPartition, p: Parameters):
    if sigma.n != p.n or sigma.k != p.k:
        raise DomainError(f"{sigma} is not a {p.k}-block partition of [{p.n}]")
    if not sigma.is_r_stirling(p.r):
        raise DomainError(f"{sigma} is not {p.r}-Stirling")


def stirling_r(p: Parameters) -> int:
    """r-Stirling number of the second kind, by the standard recurrence."""
    n, k, r = p.n, p.k, p.r
    # row[j] = Stir^{(r)}_{m, j} for the current m, starting at m = r
    row = [0] * (k + 1)
    row[r] = 1
    for _ in range(r + 1, n + 1):
        new = [0] * (k + 1)
        for j in range(k + 1):
            new[j] = j * row[j] + (row[j - 1] if j >= 1 else 0)
        row = new
    return row[k]


def count_partitions(p: Parameters) -> int:
    return factorial(p.k) * stirling_r(p)


def inv(sigma: OrderedSetPartition) -> int:
    """Pairs ``i < j`` with i block-minimal and i's block strictly right of j's."""
    total = 0
    earlier = []  # sorted letters of blocks left of the current one
    for b in sigma.blocks:
        total += len(earlier) - bisect_right(earlier, b[0])
        for x in b:
            insort(earlier, x)
    return total


def max_inv(p: Parameters) -> int:
    return (p.n - p.k) * (p.k - 1) + comb(p.k, 2)


def coinv(sigma: OrderedSetPartition) -> int:
    return (sigma.n - sigma.k) * (sigma.k - 1) + comb(sigma.k, 2) - inv(sigma)


def sigma0(p: Parameters) -> OrderedSetPartition:
    """The unique inv-maximizer ``(k, k+1, ..., n | k-1 | ... | 1)``."""
    blocks = (tuple(range(p.k, p.n + 1)),) + tuple((j,) for j in range(p.k - 1, 0, -1))
    return OrderedSetPartition._trusted(blocks)


def code(sigma: OrderedSetPartition, r: int | None = None) -> tuple:
    """Coinversion code ``(c_1, ..., c_n)`` of ``sigma``.

    If ``r`` is given, ``sigma`` must be r-Stirling.
    """
    if r is not None and not sigma.is_r_stirling(r):
        raise DomainError(f"{sigma} is not {r}-Stirling")
    blocks = sigma.blocks
    k = len(blocks)
    out = [0] * sum(len(b) for b in blocks)
    later = []  # sorted minima of blocks to the right of the current one
    for j in range(k - 1, -1, -1):
        b = blocks[j]
        n_later = len(later)
        i = b[0]
        out[i - 1] = n_later - bisect_right(later, i)
        for i in b[1:]:
            out[i - 1] = n_later - bisect_right(later, i) + j
        insort(later, b[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# Code validity and the insertion map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CodeCheck:
    """Outcome of :func:`is_valid_code`; truthy iff the code is valid.

    ``condition`` is 1 (``c_i < k`` for ``i > r``), 2 (``c_i < k - i + 1`` for
    ``i <= r``) or 3 (a reverse skip composition lies below the code).
    ``witness`` is the offending subset ``S`` for condition 3.
    """

    valid: bool
    condition: int | None = None
    position: int | None = None
    witness: frozenset | None = None

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid"
        if self.condition == 1:
            return f"condition 1 fails at position {self.position}: c_i must be < k"
        if self.condition == 2:
            return f"condition 2 fails at position {self.position}: c_i must be < k-i+1"
        return f"condition 3 fails: reverse skip composition of S={sorted(self.witness)} lies below the code"


def skip_composition(S: Iterable[int], n: int) -> tuple:
    """``gamma(S)_i = i - j + 1`` when ``i`` is the j-th smallest element of S."""
    elems = sorted(set(S))
    if any(not 1 <= s <= n for s in elems):
        raise DomainError(f"{elems} is not a subset of [1..{n}]")
    out = [0] * n
    for j, s in enumerate(elems, 1):
        out[s - 1] = s - j + 1
    return tuple(out)


def reverse_skip(S: Iterable[int], n: int) -> tuple:
    return skip_composition(S, n)[::-1]


def _skip_chain(c: Sequence[int], k: int) -> list | None:
    # Greedy left-to-right scan for positions t_1 < ... < t_m (m = n-k+1) with
    # c[t_i] >= k - t_i + i; earliest choice is optimal since thresholds grow.
    n = len(c)
    m = n - k + 1
    chain = []
    for p in range(1, n + 1):
        if c[p - 1] + p - k >= len(chain) + 1:
            chain.append(p)
            if len(chain) == m:
                return chain
    return None


def is_valid_code(c: Sequence[int], p: Parameters) -> CodeCheck:
    """Check the three conditions characterising coinversion codes for ``p``."""
    c = tuple(c)
    if len(c) != p.n:
        raise DomainError(f"code {c} must have length n={p.n}")
    if any((not isinstance(x, int)) or x < 0 for x in c):
        raise DomainError(f"code {c} must consist of nonnegative integers")
    for i, ci in enumerate(c, 1):
        if i <= p.r:
            if ci >= p.k - i + 1:
                return CodeCheck(False, 2, i)
        elif ci >= p.k:
            return CodeCheck(False, 1, i)
    chain = _skip_chain(c, p.k)
    if chain is not None:
        S = frozenset(p.n - t + 1 for t in chain)
        return CodeCheck(False, 3, None, S)
    return CodeCheck(True)


def _insert(c: Sequence[int], k: int) -> tuple:
    # The insertion map without validation; returns a tuple of blocks.
    blocks = [[] for _ in range(k)]
    empties = list(range(k))
    nonempty = []
    for i, ci in enumerate(c, 1):
        ne = len(empties)
        if ci < ne:
            # label 0 is the rightmost empty block
            j = empties.pop(ne - 1 - ci)
            insort(nonempty, j)
        else:
            j = nonempty[ci - ne]
        blocks[j].append(i)
    return tuple(map(tuple, blocks))


def iota(c: Sequence[int], p: Parameters) -> OrderedSetPartition:
    """Inverse of :func:`code`: insert ``1..n`` by coinversion label."""
    check = is_valid_code(c, p)
    if not check:
        raise InvalidCodeError(f"{tuple(c)} is not a coinversion code for {p}: {check.describe()}", check)
    return OrderedSetPartition._trusted(_insert(c, p.k))


def enumerate_codes(p: Parameters) -> list:
    """All valid coinversion codes for ``p`` in lexicographic order.

    Depth-first search over positions; a prefix is extended only while the
    prefix padded with zeros stays valid, so every branch reaches a leaf.
    """
    n, k, r = p.n, p.k, p.r
    m = n - k + 1
    bounds = [k - i + 1 if i <= r else k for i in range(1, n + 1)]
    out = []
    c = [0] * n

    def zero_tail_ok(pos, j):
        # positions pos+1..n set to zero; greedy picks every q >= max(pos+1, k+j+1)
        q0 = max(pos + 1, k + j + 1)
        return j + max(0, n - q0 + 1) < m

    def dfs(pos, j):
        # pos: number of entries fixed so far; j: skip-chain length so far
        if pos == n:
            out.append(tuple(c))
            return
        p1 = pos + 1
        for v in range(bounds[pos]):
            j2 = j + 1 if v + p1 - k >= j + 1 else j
            if j2 >= m or not zero_tail_ok(p1, j2):
                break
            c[pos] = v
            dfs(p1, j2)
        c[pos] = 0

    dfs(0, 0)
    return out


def enumerate_partitions(p: Parameters) -> list:
    """Every ordered r-Stirling partition for ``p``, ordered by coinversion code."""
    k = p.k
    trusted = OrderedSetPartition._trusted
    return [trusted(_insert(c, k)) for c in enumerate_codes(p)]


def relabel(sigma: OrderedSetPartition, perm: Sequence[int]) -> OrderedSetPartition:
    """Apply a letter permutation: ``perm.sigma = (perm(B_1) | ... | perm(B_k))``."""
    return OrderedSetPartition._trusted(
        tuple(tuple(sorted(perm[x - 1] for x in b)) for b in sigma.blocks)
    )


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


def parse_word(text: str) -> tuple:
    """``"242141"`` or ``"2,4,2,1,4,1"`` -> tuple of ints."""
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(",") if x.strip())
    if not text.isdigit():
        raise DomainError(f"cannot parse word {text!r}")
    return tuple(int(ch) for ch in text)


def format_word(w: Sequence[int]) -> str:
    if any(x >= 10 for x in w):
        return ",".join(str(x) for x in w)
    return "".join(str(x) for x in w)


def is_stirling_word(w: Sequence[int], p: Parameters) -> bool:
    """Membership in W_{n,k}^{(r)}: surjective onto [k], first r letters distinct."""
    if len(w) != p.n or any(not 1 <= x <= p.k for x in w):
        return False
    if len(set(w)) != p.k:
        return False
    return len(set(w[: p.r])) == p.r


def enumerate_words(p: Parameters) -> list:
    """All words of W_{n,k}^{(r)} in lexicographic order."""
    n, k, r = p.n, p.k, p.r
    out = []
    w = [0] * n
    counts = [0] * (k + 1)

    def dfs(pos, missing):
        if pos == n:
            out.append(tuple(w))
            return
        remaining = n - pos
        for a in range(1, k + 1):
            if pos < r and counts[a]:
                continue
            miss2 = missing - (counts[a] == 0)
            if miss2 > remaining - 1:
                continue
            w[pos] = a
            counts[a] += 1
            dfs(pos + 1, miss2)
            counts[a] -= 1

    dfs(0, k)
    return out


def initial_indices(w: Sequence[int]) -> frozenset:
    """Positions (1-based) of first occurrences of letters."""
    seen = set()
    out = []
    for j, a in enumerate(w, 1):
        if a not in seen:
            seen.add(a)
            out.append(j)
    return frozenset(out)


def _first_occurrence(w):
    first = {}
    for j, a in enumerate(w):
        first.setdefault(a, j)
    return first


def is_convex(w: Sequence[int]) -> bool:
    """No subword of the form ``i ... j ... i`` with ``i != j``."""
    closed = set()
    prev = None
    for a in w:
        if a != prev:
            if a in closed:
                return False
            if prev is not None:
                closed.add(prev)
            prev = a
    return True


def sigma_perm(w: Sequence[int]) -> tuple:
    """Minimal-inversion permutation with ``conv(w)_j = w_{sigma(j)}``."""
    first = _first_occurrence(w)
    order = sorted(range(len(w)), key=lambda j: (first[w[j]], j))
    return tuple(j + 1 for j in order)


def convexify(w: Sequence[int]) -> tuple:
    return tuple(w[j - 1] for j in sigma_perm(w))


def standardize(w: Sequence[int], k: int) -> tuple:
    """Standardization of a convex word ``w`` over ``[k]``; lies in S_{n+k-m}."""
    w = tuple(w)
    if not is_convex(w):
        raise DomainError(f"standardization needs a convex word, got {format_word(w)}")
    if any(not 1 <= a <= k for a in w):
        raise DomainError(f"word {format_word(w)} has letters outside [1..{k}]")
    seen = set()
    nxt = k + 1
    out = []
    for a in w:
        if a in seen:
            out.append(nxt)
            nxt += 1
        else:
            seen.add(a)
            out.append(a)
    out.extend(a for a in range(1, k + 1) if a not in seen)
    return tuple(out)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def check_permutation(w: Sequence[int]) -> tuple:
    w = tuple(int(x) for x in w)
    if not is_permutation(w):
        raise DomainError(f"{w} is not a permutation in one-line notation")
    return w


def inverse(w: Sequence[int]) -> tuple:
    out = [0] * len(w)
    for i, a in enumerate(w, 1):
        out[a - 1] = i
    return tuple(out)


def compose(u: Sequence[int], v: Sequence[int]) -> tuple:
    """``(u v)(i) = u(v(i))``."""
    return tuple(u[a - 1] for a in v)


def length(w: Sequence[int]) -> int:
    """Number of inversions (Coxeter length)."""
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def sign(w: Sequence[int]) -> int:
    return -1 if length(w) % 2 else 1


def permutations(m: int) -> Iterator[tuple]:
    return (tuple(x) for x in itertools.permutations(range(1, m + 1)))


def parabolic_product(w1: Sequence[int], w2: Sequence[int]) -> tuple:
    """``w1 x w2`` in S_r x S_{n-r} embedded in S_n."""
    r = len(w1)
    return tuple(w1) + tuple(r + a for a in w2)


def fixed_points(sigmas: Iterable[OrderedSetPartition], perm: Sequence[int]) -> int:
    return sum(1 for s in sigmas if relabel(s, perm) == s)
