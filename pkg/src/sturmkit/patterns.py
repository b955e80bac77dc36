"""Patterns, discrepancy and the bounded indistinguishability checker.

The discrepancy of a pattern p with support S against an asymptotic pair
(x, y) with difference set F is the number of occurrences of p in y meeting
F minus the number in x; only positions in F - S can contribute, which makes
it a finite exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .sequences import (
    Alphabet,
    NotAsymptoticError,
    SequenceOracle,
    Substitution,
    UncertifiableError,
    difference_set,
    reverse,
    shift,
    substitute,
)
from .words import Word

__all__ = [
    "Pattern",
    "AsymptoticPair",
    "Verdict",
    "certify_asymptotic",
    "occurrences_in",
    "discrepancy",
    "check_indistinguishable",
    "ns_norm_lower_bound",
    "pattern_reduction_check",
    "shift_pair",
    "reverse_pair",
    "substitute_pair",
    "NotAsymptoticError",
    "UncertifiableError",
]


@dataclass(frozen=True)
class Pattern:
    """Finitely supported map from integer positions to symbols."""

    cells: tuple[tuple[int, int], ...]  # sorted (position, symbol)

    def __post_init__(self) -> None:
        cells = tuple(sorted(self.cells))
        if not cells:
            raise ValueError("pattern support must be nonempty")
        if len({p for p, _ in cells}) != len(cells):
            raise ValueError("repeated support position")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_dict(cls, values: dict[int, int]) -> "Pattern":
        return cls(tuple(sorted(values.items())))

    @classmethod
    def from_word(cls, word: Word, start: int = 0) -> "Pattern":
        return cls(tuple((start + i, s) for i, s in enumerate(word)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.cells)

    def value(self, position: int) -> int:
        return dict(self.cells)[position]

    def negated(self) -> "Pattern":
        """The pattern -p with support -S and (-p)(-s) = p(s)."""
        return Pattern(tuple((-p, s) for p, s in self.cells))

    def translated(self, k: int) -> "Pattern":
        return Pattern(tuple((p + k, s) for p, s in self.cells))

    def matches_at(self, x: SequenceOracle, n: int) -> bool:
        return all(x.at(n + p) == s for p, s in self.cells)


@dataclass(frozen=True)
class AsymptoticPair:
    """Two oracles plus their exact, certified difference set."""

    x: SequenceOracle
    y: SequenceOracle
    diff: frozenset[int]

    def __post_init__(self) -> None:
        if self.x.alphabet != self.y.alphabet:
            raise ValueError("pair members use different alphabets")
        for n in self.diff:
            if self.x.at(n) == self.y.at(n):
                raise ValueError(f"position {n} in the difference set but symbols agree")

    @property
    def alphabet(self) -> Alphabet:
        return self.x.alphabet

    @property
    def is_trivial(self) -> bool:
        return not self.diff

    def span(self) -> tuple[int, int]:
        """Smallest interval [lo, hi] containing the difference set."""
        if not self.diff:
            raise ValueError("trivial pair has no difference span")
        return min(self.diff), max(self.diff)


def certify_asymptotic(x: SequenceOracle, y: SequenceOracle, radius: int) -> AsymptoticPair:
    """Certified difference set of (x, y), which must lie within [-radius, radius].

    Raises :class:`NotAsymptoticError` when the oracles provably differ at
    infinitely many positions and :class:`UncertifiableError` when no
    structural certificate of agreement outside a finite set exists.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    diff = difference_set(x, y)
    if diff and not (-radius <= min(diff) and max(diff) <= radius):
        raise ValueError(
            f"certified differences {sorted(diff)} exceed radius {radius}"
        )
    return AsymptoticPair(x, y, diff)


def shift_pair(pair: AsymptoticPair, k: int) -> AsymptoticPair:
    """(sigma^k x, sigma^k y); the difference set moves to F - k."""
    return AsymptoticPair(shift(pair.x, k), shift(pair.y, k),
                          frozenset(f - k for f in pair.diff))


def reverse_pair(pair: AsymptoticPair) -> AsymptoticPair:
    """(x^R, y^R); the difference set moves to -F."""
    return AsymptoticPair(reverse(pair.x), reverse(pair.y),
                          frozenset(-f for f in pair.diff))


def substitute_pair(phi: Substitution, pair: AsymptoticPair) -> AsymptoticPair:
    """(phi(x), phi(y)) with an exact difference set.

    Outside the image of the difference blocks the two images are the same
    string at the same positions, provided the block boundaries align; the
    boundary sums agree exactly when each symbol occurs equally often in x
    and y across the difference interval.  On misalignment the images are
    tail-shifted copies and the structural certifier decides the rest.
    """
    ix, iy = substitute(phi, pair.x), substitute(phi, pair.y)
    if pair.is_trivial:
        return AsymptoticPair(ix, iy, frozenset())
    lo, hi = pair.span()

    def start(z: SequenceOracle, i: int) -> int:
        if i >= 0:
            return sum(phi.image_len(z.at(t)) for t in range(i))
        return -sum(phi.image_len(z.at(t)) for t in range(i, 0))

    lx, rx = start(pair.x, lo), start(pair.x, hi + 1)
    ly, ry = start(pair.y, lo), start(pair.y, hi + 1)
    if lx != ly or rx != ry:
        return AsymptoticPair(ix, iy, difference_set(ix, iy))
    diff = frozenset(n for n in range(lx, rx) if ix.at(n) != iy.at(n))
    return AsymptoticPair(ix, iy, diff)


def occurrences_in(p: Pattern, x: SequenceOracle, window: tuple[int, int]) -> set[int]:
    """{n in [lo, hi] : the pattern matches x at n}."""
    lo, hi = window
    return {n for n in range(lo, hi + 1) if p.matches_at(x, n)}


def discrepancy(p: Pattern, pair: AsymptoticPair) -> int:
    """Occurrences of p in y meeting F minus occurrences in x meeting F."""
    positions = {f - s for f in pair.diff for s in p.support}
    return sum(
        int(p.matches_at(pair.y, n)) - int(p.matches_at(pair.x, n))
        for n in positions
    )


def _word_discrepancies(pair: AsymptoticPair, length: int) -> dict[Word, int]:
    """Delta_w for every word of the given length with a nonzero chance.

    Only words occurring in x or y at a position meeting F can have nonzero
    discrepancy, so the candidate set is read off the pair itself.  Counting
    runs over the interval hull of F - [0, length-1]: positions in the hull
    whose window misses F see identical windows in x and y and cancel.
    """
    lo_f, hi_f = pair.span()
    positions = range(lo_f - length + 1, hi_f + 1)
    xwins = [pair.x.window(n, n + length - 1) for n in positions]
    ywins = [pair.y.window(n, n + length - 1) for n in positions]
    out: dict[Word, int] = {}
    for w in set(xwins) | set(ywins):
        out[w] = ywins.count(w) - xwins.count(w)
    return out


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[Word]
    lengths_checked: int


def check_indistinguishable(pair: AsymptoticPair, max_len: int,
                            threads: int = 1) -> Verdict:
    """Delta_w = 0 for every word w with 1 <= |w| <= max_len?

    On failure the witness is the shortest failing word, ties broken by
    lexicographically smallest symbol ids.  A pass certifies nothing beyond
    max_len except for pairs matched by the classification theorems.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if pair.is_trivial:
        return Verdict(True, None, max_len)

    def failing_at(length: int) -> Optional[Word]:
        bad = [w for w, d in _word_discrepancies(pair, length).items() if d != 0]
        return min(bad) if bad else None

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(failing_at, range(1, max_len + 1)))
        for length, witness in enumerate(results, start=1):
            if witness is not None:
                return Verdict(False, witness, length)
        return Verdict(True, None, max_len)

    for length in range(1, max_len + 1):
        witness = failing_at(length)
        if witness is not None:
            return Verdict(False, witness, length)
    return Verdict(True, None, max_len)


def ns_norm_lower_bound(pair: AsymptoticPair, max_support: int) -> Fraction:
    """Certified lower bound for the asymptotic-pair norm.

    Maximizes (1/n) * sum over all length-n words of |Delta_w| for
    n <= max_support; interval supports only, so this bounds the supremum
    over all finite supports from below.
    """
    if max_support < 1:
        raise ValueError("max_support must be >= 1")
    if pair.is_trivial:
        return Fraction(0)
    best = Fraction(0)
    for n in range(1, max_support + 1):
        total = sum(abs(d) for d in _word_discrepancies(pair, n).values())
        best = max(best, Fraction(total, n))
    return best


def pattern_reduction_check(p: Pattern, pair: AsymptoticPair) -> bool:
    """Test Delta_p == sum of Delta_w over words w completing p.

    The completions run over the full interval [min S, max S] with w
    agreeing with p on S; the identity holds for every asymptotic pair.
    """
    lo = min(p.support)
    q = p.translated(-lo)  # support now starts at 0; Delta is translation invariant
    n = max(q.support) + 1
    fixed = dict(q.cells)
    free = [i for i in range(n) if i not in fixed]
    sigma = range(pair.alphabet.size)
    total = 0
    for fill in product(sigma, repeat=len(free)):
        w = list(0 for _ in range(n))
        for i, s in fixed.items():
            w[i] = s
        for i, s in zip(free, fill):
            w[i] = s
        total += discrepancy(Pattern.from_word(tuple(w)), pair)
    return total == discrepancy(p, pair)
