"""Return words, derived sequences, and the constructive classification of
indistinguishable asymptotic pairs.

Recurrent pairs are peeled by derived sequences until the difference set
fits in a two-position interval, at which point the pair is (up to a
one-letter relabeling) a pair of characteristic mechanical words of some
irrational slope.  Non-recurrent pairs are shifts of one another and reduce
to the pair (^inf0.10^inf, ^inf0.010^inf) through a two-letter substitution
built from the length-s eventual periods, s the shift between the members.

Shift bookkeeping across the composed substitutions is resolved
numerically: the difference set of the rebuilt pair must land on the
difference set of the input, which pins the final shift, and the result is
then verified pointwise on the requested window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .christoffel import RationalLimitClass, classify_non_recurrent
from .patterns import (
    AsymptoticPair,
    NotAsymptoticError,
    check_indistinguishable,
    shift_pair,
    substitute_pair,
)
from .sequences import (
    BINARY,
    EventuallyPeriodic,
    SequenceOracle,
    Substitution,
    alphabet_of_size,
    is_recurrent,
    oracles_equal,
    shift,
    substitute,
)
from .words import Word, occurrences

log = logging.getLogger("sturmkit.derive")

_SCAN_CHUNK = 512
_SCAN_CAP = 1_000_000


class GapError(ValueError):
    """The marker failed to reappear within the scanning budget."""


@dataclass(frozen=True)
class ReturnWordSet:
    marker: Word
    returns: frozenset[Word]
    complete_returns: frozenset[Word]
    window: tuple[int, int]


def return_words(x: SequenceOracle, w: Word, window: tuple[int, int]) -> ReturnWordSet:
    """Return words and complete return words to w witnessed inside the window.

    A complete return word starts and ends with an occurrence of w and
    contains no other; occurrences of w may overlap.
    """
    lo, hi = window
    text = x.window(lo, hi)
    occ = [lo + i for i in occurrences(w, text)]
    if len(occ) < 2:
        raise ValueError(f"marker occurs {len(occ)} time(s) in window {window}")
    rets, crets = set(), set()
    for a, b in zip(occ, occ[1:]):
        rets.add(x.window(a, b - 1))
        if b + len(w) - 1 <= hi:
            crets.add(x.window(a, b + len(w) - 1))
    return ReturnWordSet(tuple(w), frozenset(rets), frozenset(crets), window)


class DerivedView(SequenceOracle):
    """Oracle for the derived sequence of ``base`` at a one-symbol marker.

    Position k holds the return word between marker occurrences i_k and
    i_{k+1}, recoded through a fixed catalog; i_0 is the smallest occurrence
    >= 0.  Occurrence lists grow lazily by scanning the base in chunks, so
    the view stays exact for positions far beyond the construction window.
    """

    def __init__(self, base: SequenceOracle, marker: int,
                 catalog: dict[Word, int], alphabet):
        super().__init__(alphabet)
        self.base = base
        self.marker = marker
        self.catalog = dict(catalog)
        self._right: list[int] = []   # i_0, i_1, ...
        self._left: list[int] = []    # i_-1, i_-2, ...
        self._hi_scanned = 0          # base positions [lo_scanned, hi_scanned) seen
        self._lo_scanned = 0
        self.known_recurrent = is_recurrent(base)

    def recoding(self) -> Substitution:
        images = {sid: word for word, sid in self.catalog.items()}
        return Substitution(images, self.alphabet, self.base.alphabet)

    def _scan_right(self) -> None:
        lo = self._hi_scanned
        hi = lo + _SCAN_CHUNK
        seg = self.base.window(lo, hi - 1)
        self._right.extend(lo + i for i, s in enumerate(seg) if s == self.marker)
        self._hi_scanned = hi

    def _scan_left(self) -> None:
        hi = self._lo_scanned
        lo = hi - _SCAN_CHUNK
        seg = self.base.window(lo, hi - 1)
        self._left.extend(
            lo + i for i in range(len(seg) - 1, -1, -1) if seg[i] == self.marker
        )
        self._lo_scanned = lo

    def occurrence(self, k: int) -> int:
        """The k-th marker occurrence; k = 0 is the smallest one >= 0."""
        if k >= 0:
            while len(self._right) <= k:
                if self._hi_scanned > _SCAN_CAP:
                    raise GapError(
                        f"no occurrence of marker in [{self._right[-1] if self._right else 0}, {self._hi_scanned})"
                    )
                self._scan_right()
            return self._right[k]
        while len(self._left) < -k:
            if self._lo_scanned < -_SCAN_CAP:
                raise GapError(
                    f"no occurrence of marker in [{self._lo_scanned}, {self._left[-1] if self._left else 0})"
                )
            self._scan_left()
        return self._left[-k - 1]

    @property
    def i0(self) -> int:
        return self.occurrence(0)

    def _at(self, k: int) -> int:
        word = self.base.window(self.occurrence(k), self.occurrence(k + 1) - 1)
        sid = self.catalog.get(word)
        if sid is None:
            raise ValueError(
                f"return word {word} not in the catalog; rebuild with a larger window"
            )
        return sid

    def __repr__(self) -> str:
        return f"derived({self.base!r}, marker={self.marker})"


@dataclass(frozen=True)
class DerivedSequence:
    base: SequenceOracle
    marker: Word
    oracle: DerivedView
    recoding: Substitution
    i0: int


def _collect_catalog(views: list[tuple[SequenceOracle, int]], marker: int,
                     window: tuple[int, int]) -> list[Word]:
    """Return words of all sequences, ordered by first occurrence from each
    anchor: derived positions 0, 1, 2, ... then -1, -2, ... per sequence."""
    lo, hi = window
    catalog: list[Word] = []
    for base, _ in views:
        text = base.window(lo, hi)
        occ = [lo + i for i, s in enumerate(text) if s == marker]
        nonneg = [i for i in occ if i >= 0]
        neg = [i for i in occ if i < 0]
        if not nonneg or not neg:
            raise GapError(
                f"marker {marker} does not straddle the origin in window {window}"
            )
        ordered = []
        for a, b in zip(nonneg, nonneg[1:]):
            ordered.append(base.window(a, b - 1))
        # derived positions -1, -2, ...: walk occurrences leftward from i_0
        leftward = [nonneg[0]] + list(reversed(neg))
        for b, a in zip(leftward, leftward[1:]):
            ordered.append(base.window(a, b - 1))
        for word in ordered:
            if word not in catalog:
                catalog.append(word)
    return catalog


def derived_sequence(x: SequenceOracle, a: int, window: tuple[int, int]) -> DerivedSequence:
    """Derived sequence of x at the marker symbol a, with its recoding.

    Applying the recoding to the derived oracle and shifting by -i_0
    recovers x; the catalog of return words is frozen from the window.
    """
    catalog_words = _collect_catalog([(x, a)], a, window)
    alphabet = alphabet_of_size(len(catalog_words))
    view = DerivedView(x, a, {w: i for i, w in enumerate(catalog_words)}, alphabet)
    return DerivedSequence(x, (a,), view, view.recoding(), view.i0)


def derived_pair(pair: AsymptoticPair, a: int, window: tuple[int, int]) -> AsymptoticPair:
    """The pair of derived sequences at marker a, with exact difference set.

    Requires the difference set inside [0, k-1] (shift first) and equal
    marker counts across it on both sides; the derived difference set then
    lies within [-1, N_a - 1] and is computed by direct block comparison.
    """
    if pair.is_trivial:
        catalog_words = _collect_catalog([(pair.x, a), (pair.y, a)], a, window)
        alphabet = alphabet_of_size(len(catalog_words))
        catalog = {w: i for i, w in enumerate(catalog_words)}
        return AsymptoticPair(
            DerivedView(pair.x, a, catalog, alphabet),
            DerivedView(pair.y, a, catalog, alphabet),
            frozenset(),
        )
    lo, hi = pair.span()
    if lo < 0:
        raise ValueError("shift the pair so its difference set starts at 0")
    xs = pair.x.window(0, hi)
    ys = pair.y.window(0, hi)
    n_a = sum(1 for s in xs if s == a)
    if n_a != sum(1 for s in ys if s == a):
        raise NotAsymptoticError(
            f"marker {a} occurs {n_a} vs {sum(1 for s in ys if s == a)} times across the difference interval"
        )
    catalog_words = _collect_catalog([(pair.x, a), (pair.y, a)], a, window)
    alphabet = alphabet_of_size(len(catalog_words))
    catalog = {w: i for i, w in enumerate(catalog_words)}
    dx = DerivedView(pair.x, a, catalog, alphabet)
    dy = DerivedView(pair.y, a, catalog, alphabet)
    diff = frozenset(
        t for t in range(-1, max(n_a, 1)) if dx.at(t) != dy.at(t)
    )
    return AsymptoticPair(dx, dy, diff)


def substitution_preserves_check(phi: Substitution, pair: AsymptoticPair,
                                 max_len: int) -> bool:
    """Does applying phi preserve indistinguishability with the expected
    difference bound [0, K-1], K the image length of the difference interval?

    Precondition: the difference set sits in [0, k-1] and the input pair
    itself passes the check at max_len.
    """
    lo, hi = pair.span()
    if lo < 0:
        raise ValueError("shift the pair so its difference set starts at 0")
    base = check_indistinguishable(pair, max_len)
    if not base.passed:
        raise ValueError(f"input pair fails at length {base.lengths_checked}")
    try:
        image = substitute_pair(phi, pair)
    except (NotAsymptoticError, ValueError):
        return False
    big_k = sum(phi.image_len(s) for s in pair.x.window(0, hi))
    if image.diff and not (0 <= min(image.diff) and max(image.diff) <= big_k - 1):
        return False
    return check_indistinguishable(image, max_len).passed


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class NotIndistinguishable:
    witness: Word


@dataclass(frozen=True)
class Inconclusive:
    resource: str


@dataclass(frozen=True)
class SturmianBase:
    """Binary base pair plus a slope interval estimated from symbol frequency."""

    window_word: Word
    window: tuple[int, int]
    slope_low: Fraction
    slope_high: Fraction
    lower_oracle: SequenceOracle
    upper_oracle: SequenceOracle


@dataclass(frozen=True)
class NonRecurrentBase:
    """The pair (^inf0.10^inf, ^inf0.010^inf); optionally its rational limit class."""

    rational_class: Optional[RationalLimitClass]


@dataclass(frozen=True)
class ClassificationResult:
    case: str  # 'recurrent' | 'non_recurrent'
    phi: Substitution
    m: int
    x_is_first: bool  # pair.x matches sigma^m phi(sigma c) resp. sigma^m phi(^inf0.10^inf)
    base: Union[SturmianBase, NonRecurrentBase]
    verified_to: int
    verify_window: tuple[int, int]


ClassifyOutcome = Union[ClassificationResult, NotIndistinguishable, Inconclusive]

_MAX_DERIVATIONS = 64


def classify(pair: AsymptoticPair, window: tuple[int, int] = (-64, 64),
             max_len: int = 20, threads: int = 1) -> ClassifyOutcome:
    """Decompose a non-trivial pair per the classification dichotomy.

    Either produces a substitution phi, shift m and base pair that rebuild
    (x, y) exactly (verified pointwise on the window), or a
    distinguishability witness, or an explicit inconclusive outcome naming
    the exhausted resource.
    """
    if pair.is_trivial:
        raise ValueError("classification requires a non-trivial pair")
    verdict = check_indistinguishable(pair, max_len, threads=threads)
    if not verdict.passed:
        return NotIndistinguishable(verdict.witness)
    recurrent = is_recurrent(pair.x)
    if recurrent is None:
        return Inconclusive("recurrence undecidable for this oracle class")
    if recurrent:
        return _classify_recurrent(pair, window, max_len)
    return _classify_non_recurrent(pair, window, max_len)


def _verify_alignment(pair: AsymptoticPair, rx: SequenceOracle, ry: SequenceOracle,
                      m: int, window: tuple[int, int]) -> Optional[bool]:
    """Which assignment of the rebuilt pair matches (x, y) after shifting by m?

    Returns True when (x, y) = (sigma^m rx, sigma^m ry), False for the
    swapped assignment, None when neither matches on the window.
    """
    lo, hi = window
    xw = pair.x.window(lo, hi)
    yw = pair.y.window(lo, hi)
    rxw = tuple(rx.at(n + m) for n in range(lo, hi + 1))
    ryw = tuple(ry.at(n + m) for n in range(lo, hi + 1))
    if xw == rxw and yw == ryw:
        return True
    if xw == ryw and yw == rxw:
        return False
    return None


def _classify_non_recurrent(pair: AsymptoticPair, window: tuple[int, int],
                            max_len: int) -> ClassifyOutcome:
    x, y = pair.x, pair.y
    lo_f, hi_f = pair.span()
    span = hi_f - lo_f + 1

    shift_s = None
    swapped = False
    for s in range(1, 4 * span + 4 * max(abs(lo_f), abs(hi_f)) + 256):
        if oracles_equal(x, shift(y, s)):
            shift_s = s
            break
        if oracles_equal(y, shift(x, s)):
            shift_s, swapped = s, True
            break
    if shift_s is None:
        return Inconclusive("shift-relation search radius exhausted")
    if swapped:
        x, y = y, x

    r = lo_f
    xp = shift(x, r)
    k = max(span, shift_s + 1)
    # full length-s period words; taking primitive roots here would break the
    # common-shift property whenever the eventual period divides s properly
    u = xp.window(k, k + shift_s - 1)
    w = xp.window(-shift_s, -1)

    phi = None
    for off in occurrences(w, u + u):
        if off < len(u):
            head, tail = u[:off], u[off:]
            if tail + head == w:
                v = xp.window(0, k - shift_s - 1)
                phi = Substitution({0: w, 1: v + head}, BINARY, pair.alphabet)
                break
    if phi is None:
        deeper = check_indistinguishable(pair, max(max_len, 2 * (k + shift_s) + 4))
        if not deeper.passed:
            return NotIndistinguishable(deeper.witness)
        return Inconclusive("conjugacy construction failed without a witness")

    base_x = EventuallyPeriodic.from_strings("0", "", "10", "0")
    base_y = EventuallyPeriodic.from_strings("0", "", "010", "0")
    rx = shift(substitute(phi, base_x), -r)
    ry = shift(substitute(phi, base_y), -r)
    if not (oracles_equal(x, rx) and oracles_equal(y, ry)):
        deeper = check_indistinguishable(pair, max(max_len, 2 * (k + shift_s) + 4))
        if not deeper.passed:
            return NotIndistinguishable(deeper.witness)
        return Inconclusive("rebuilt pair does not match the input")

    rational: Optional[RationalLimitClass] = None
    if (pair.alphabet == BINARY and pair.diff == frozenset({-1, 0})
            and (pair.x.at(-1), pair.x.at(0)) == (1, 0)):
        outcome = classify_non_recurrent(pair)
        if isinstance(outcome, RationalLimitClass):
            rational = outcome

    return ClassificationResult(
        case="non_recurrent",
        phi=phi,
        m=-r,
        x_is_first=not swapped,
        base=NonRecurrentBase(rational),
        verified_to=max_len,
        verify_window=window,
    )


def _transport_witness(steps: list[Substitution], witness: Word) -> Word:
    for phi in reversed(steps):
        witness = phi(witness)
    return witness


def _classify_recurrent(pair: AsymptoticPair, window: tuple[int, int],
                        max_len: int) -> ClassifyOutcome:
    lo_w, hi_w = window
    work_window = (min(lo_w, -64), max(hi_w, 64))
    steps: list[Substitution] = []
    cur = pair

    for _ in range(_MAX_DERIVATIONS):
        lo, hi = cur.span()
        k = hi - lo + 1
        if k == 1:
            probe = check_indistinguishable(cur, 2)
            if not probe.passed:
                return NotIndistinguishable(_transport_witness(steps, probe.witness))
            return Inconclusive("difference set degenerated to one position")
        if k == 2:
            break
        shifted = shift_pair(cur, lo)
        counts: dict[int, int] = {}
        for s in shifted.x.window(0, k - 1):
            counts[s] = counts.get(s, 0) + 1
        progressed = False
        for a in sorted(counts, key=lambda s: (counts[s], s)):
            try:
                nxt = derived_pair(shifted, a, work_window)
            except (GapError, ValueError, NotAsymptoticError) as exc:
                log.debug("marker %s rejected: %s", a, exc)
                continue
            if nxt.is_trivial:
                return Inconclusive("derived pair became trivial")
            nlo, nhi = nxt.span()
            if nhi - nlo + 1 < k:
                steps.append(nxt.x.recoding())
                cur = nxt
                progressed = True
                break
        if not progressed:
            return Inconclusive("no marker symbol shrinks the difference interval")
    else:
        return Inconclusive(f"derivation did not terminate in {_MAX_DERIVATIONS} rounds")

    # base case: k = 2; move the difference set onto {-1, 0}
    lo, _ = cur.span()
    base2 = shift_pair(cur, lo + 1)
    a_sym, b_sym = base2.x.at(-1), base2.x.at(0)
    if (base2.y.at(-1), base2.y.at(0)) != (b_sym, a_sym) or a_sym == b_sym:
        probe = check_indistinguishable(base2, 2)
        if not probe.passed:
            return NotIndistinguishable(_transport_witness(steps, probe.witness))
        return Inconclusive("base pair is not a two-letter exchange")

    alpha_bet = base2.alphabet
    relabel = Substitution({1: (a_sym,), 0: (b_sym,)}, BINARY, alpha_bet)
    inv_images = {s: (0,) for s in range(alpha_bet.size)}
    inv_images[a_sym] = (1,)
    inv_images[b_sym] = (0,)
    inv = Substitution(inv_images, alpha_bet, BINARY)
    lower_or = substitute(inv, base2.x)
    upper_or = substitute(inv, base2.y)
    base_pair = AsymptoticPair(lower_or, upper_or, frozenset({-1, 0}))
    steps.append(relabel)

    phi = steps[-1]
    for outer in reversed(steps[:-1]):
        phi = outer.compose(phi)

    resub = substitute_pair(phi, shift_pair(base_pair, 1))
    if resub.is_trivial:
        return Inconclusive("rebuilt pair is trivial")
    # pair = sigma^m(resub) moves the difference set by -m
    m = min(resub.diff) - min(pair.diff)
    assignment = _verify_alignment(pair, resub.x, resub.y, m, window)
    if assignment is None:
        return Inconclusive("round-trip verification failed on the window")

    est_lo = max(lo_w, -256)
    est_hi = min(hi_w, 256)
    base_word = lower_or.window(est_lo, est_hi)
    length = len(base_word)
    ones = sum(base_word)
    slope_low = max(Fraction(0), Fraction(ones - 1, length))
    slope_high = min(Fraction(1), Fraction(ones + 1, length))

    return ClassificationResult(
        case="recurrent",
        phi=phi,
        m=m,
        x_is_first=assignment,
        base=SturmianBase(
            window_word=base_word,
            window=(est_lo, est_hi),
            slope_low=slope_low,
            slope_high=slope_high,
            lower_oracle=lower_or,
            upper_oracle=upper_or,
        ),
        verified_to=max_len,
        verify_window=window,
    )
