"""Pattern matrices of words and the graded-rank shadow of the affine paving.

Cell dimensions are not derived from star counts. The codimension of the
cell of ``w`` is taken to be the degree of its Schubert polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import combinatorics as cb
from .errors import DomainError
from .polyalg import word_schubert

ZERO, ONE, STAR = "0", "1", "*"


@dataclass(frozen=True)
class PatternMatrix:
    """A k x n grid over ``{"0", "1", "*"}``."""

    entries: tuple  # rows, each a tuple of symbols

    @property
    def shape(self) -> tuple:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij):
        i, j = ij  # 1-based
        return self.entries[i - 1][j - 1]

    @property
    def star_count(self) -> int:
        return sum(row.count(STAR) for row in self.entries)

    def render(self) -> str:
        return "\n".join(" ".join(row) for row in self.entries)

    def __str__(self):
        return self.render()


def _k_of(p) -> int:
    return p.k if isinstance(p, cb.Parameters) else int(p)


def initial_indices(w: Sequence[int]) -> frozenset:
    """1-based positions holding the first occurrence of their letter."""
    return cb.initial_indices(w)


def pattern_matrix(w: Sequence[int], p) -> PatternMatrix:
    """PM(w) for ``w`` in ``[k]^n``; ``p`` is a :class:`Parameters` or the integer ``k``."""
    k = _k_of(p)
    w = tuple(w)
    if k < 1 or any(not 1 <= a <= k for a in w):
        raise DomainError(f"word {cb.format_word(w)} is not over [1..{k}]")
    first = {}
    for j, a in enumerate(w, start=1):
        first.setdefault(a, j)
    rows = []
    for i in range(1, k + 1):
        row = []
        for j, a in enumerate(w, start=1):
            if a == i:
                row.append(ONE)
            elif i not in first:
                row.append(ZERO)
            elif first[a] == j:
                # initial column: star above the one when i occurred earlier
                row.append(STAR if i < a and first[i] < j else ZERO)
            else:
                row.append(STAR if first[i] < first[a] else ZERO)
        rows.append(tuple(row))
    return PatternMatrix(tuple(rows))


def codim(w: Sequence[int], p: cb.Parameters) -> int:
    """Degree of the word Schubert polynomial of ``w`` in W_{n,k}^{(r)}."""
    w = tuple(w)
    if len(w) != p.n or not cb.is_stirling_word(w, p):
        raise DomainError(f"word {cb.format_word(w)} is not in W_{{{p.n},{p.k}}}^({p.r})")
    return word_schubert(w, p.k).degree()


def codim_distribution(p: cb.Parameters) -> list:
    """Coefficients of ``sum_{w in W} q^codim(w)``."""
    counts = {}
    for w in cb.enumerate_words(p):
        d = codim(w, p)
        counts[d] = counts.get(d, 0) + 1
    top = max(counts)
    return [counts.get(d, 0) for d in range(top + 1)]
