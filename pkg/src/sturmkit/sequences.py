"""Biinfinite sequences as finite oracle descriptions with exact queries.

The oracle algebra is closed under the constructions used throughout the
library: mechanical words (rational or quadratic-irrational slope),
eventually periodic sequences ``^inf(u) y . z (w)^inf``, shifts, reversals
and substitution images.  Every oracle answers ``at(n)`` for any integer n
without approximation.

A private normalization pass reduces any oracle in the algebra to one of
three normal forms (eventually periodic / irrational mechanical /
substitution image of one of those).  Equality, recurrence and difference
sets of pairs are decided exactly on normal forms; ``patterns`` builds its
certification on top of this.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .slopes import (
    QuadraticIrrational,
    Slope,
    ceil_mul_add,
    check_slope,
    floor_mul_add,
    format_slope,
    is_rational,
)
from .words import Word, primitive_root

_MEMO_CAP = 4096


@dataclass(frozen=True)
class Alphabet:
    """Registry mapping symbol ids 0..n-1 to display glyphs."""

    glyphs: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.glyphs)) != len(self.glyphs):
            raise ValueError("duplicate glyphs")

    @property
    def size(self) -> int:
        return len(self.glyphs)

    def glyph(self, symbol: int) -> str:
        return self.glyphs[symbol]

    def index(self, glyph: str) -> int:
        return self.glyphs.index(glyph)

    def word_from_str(self, text: str) -> Word:
        return tuple(self.index(ch) for ch in text)

    def word_to_str(self, word: Word) -> str:
        return "".join(self.glyphs[s] for s in word)


BINARY = Alphabet(("0", "1"))


def alphabet_of_size(n: int) -> Alphabet:
    """Default glyphs: digits, then letters."""
    pool = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if n <= len(pool):
        return Alphabet(tuple(pool[:n]))
    return Alphabet(tuple(f"s{i}" for i in range(n)))


class Substitution:
    """Map from symbols of one alphabet to nonempty words over another."""

    def __init__(self, images: dict[int, Word], domain: Alphabet, codomain: Alphabet):
        if set(images) != set(range(domain.size)):
            raise ValueError("images must cover the whole domain alphabet")
        for s, im in images.items():
            if len(im) == 0:
                raise ValueError(f"empty image for symbol {s}")
            if any(not (0 <= g < codomain.size) for g in im):
                raise ValueError(f"image of {s} leaves the codomain alphabet")
        self.images = {s: tuple(im) for s, im in images.items()}
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def from_strings(cls, images: dict[str, str], domain: Alphabet, codomain: Alphabet) -> "Substitution":
        return cls(
            {domain.index(k): codomain.word_from_str(v) for k, v in images.items()},
            domain,
            codomain,
        )

    def __call__(self, word: Word) -> Word:
        out: list[int] = []
        for s in word:
            out.extend(self.images[s])
        return tuple(out)

    def image_len(self, symbol: int) -> int:
        return len(self.images[symbol])

    def compose(self, inner: "Substitution") -> "Substitution":
        """self after inner (apply inner first)."""
        if inner.codomain != self.domain:
            raise ValueError("alphabet mismatch in composition")
        return Substitution(
            {s: self(im) for s, im in inner.images.items()},
            inner.domain,
            self.codomain,
        )

    def reversed_images(self) -> "Substitution":
        return Substitution(
            {s: im[::-1] for s, im in self.images.items()}, self.domain, self.codomain
        )

    def image_key(self) -> tuple:
        return tuple(sorted(self.images.items()))

    def __repr__(self) -> str:
        body = ",".join(
            f"{self.domain.glyph(s)}:{self.codomain.word_to_str(im)}"
            for s, im in sorted(self.images.items())
        )
        return f"Substitution({body})"


def identity_substitution(alphabet: Alphabet) -> Substitution:
    return Substitution({s: (s,) for s in range(alphabet.size)}, alphabet, alphabet)


# ---------------------------------------------------------------------------
# oracles


class SequenceOracle:
    """Base class; subclasses implement ``_at``.  Instances are immutable.

    ``at`` keeps a bounded per-oracle memo of evaluated positions.  CPython
    dict operations are atomic, so concurrent readers at worst recompute.
    """

    alphabet: Alphabet

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._memo: dict[int, int] = {}

    def _at(self, n: int) -> int:
        raise NotImplementedError

    def at(self, n: int) -> int:
        memo = self._memo
        v = memo.get(n)
        if v is None:
            v = self._at(n)
            if len(memo) >= _MEMO_CAP:
                memo.clear()
            memo[n] = v
        return v

    def window(self, lo: int, hi: int) -> Word:
        """The word x_lo ... x_hi (inclusive)."""
        if lo > hi:
            raise ValueError("window requires lo <= hi")
        return tuple(self.at(n) for n in range(lo, hi + 1))

    # recurrence metadata for oracles outside the closed algebra
    known_recurrent: Optional[bool] = None


class MechanicalLower(SequenceOracle):
    """n -> floor(alpha*(n+1)+rho) - floor(alpha*n+rho), over the binary alphabet."""

    def __init__(self, alpha: Slope, rho: Fraction = Fraction(0)):
        super().__init__(BINARY)
        self.alpha = check_slope(alpha)
        self.rho = Fraction(rho)

    def _at(self, n: int) -> int:
        return floor_mul_add(self.alpha, n + 1, self.rho) - floor_mul_add(self.alpha, n, self.rho)

    def __repr__(self) -> str:
        return f"lower({format_slope(self.alpha)},{self.rho})"


class MechanicalUpper(SequenceOracle):
    """Ceiling analogue of :class:`MechanicalLower`."""

    def __init__(self, alpha: Slope, rho: Fraction = Fraction(0)):
        super().__init__(BINARY)
        self.alpha = check_slope(alpha)
        self.rho = Fraction(rho)

    def _at(self, n: int) -> int:
        return ceil_mul_add(self.alpha, n + 1, self.rho) - ceil_mul_add(self.alpha, n, self.rho)

    def __repr__(self) -> str:
        return f"upper({format_slope(self.alpha)},{self.rho})"


class EventuallyPeriodic(SequenceOracle):
    """``^inf(u) y . z (w)^inf``: u repeats to the left, w to the right.

    Position 0 is the first symbol of z (or of w when z is empty).
    """

    def __init__(self, left_period: Word, left_pad: Word, right_pad: Word,
                 right_period: Word, alphabet: Alphabet):
        if not left_period or not right_period:
            raise ValueError("periodic parts must be nonempty")
        super().__init__(alphabet)
        self.u = tuple(left_period)
        self.y = tuple(left_pad)
        self.z = tuple(right_pad)
        self.w = tuple(right_period)

    @classmethod
    def from_strings(cls, u: str, y: str, z: str, w: str,
                     alphabet: Alphabet = BINARY) -> "EventuallyPeriodic":
        f = alphabet.word_from_str
        return cls(f(u), f(y), f(z), f(w), alphabet)

    def _at(self, n: int) -> int:
        if n >= 0:
            if n < len(self.z):
                return self.z[n]
            return self.w[(n - len(self.z)) % len(self.w)]
        j = -n  # distance to the left of the point, j >= 1
        if j <= len(self.y):
            return self.y[len(self.y) - j]
        j -= len(self.y)
        return self.u[len(self.u) - 1 - (j - 1) % len(self.u)]

    def __repr__(self) -> str:
        g = self.alphabet.word_to_str
        return f"evp({g(self.u)}|{g(self.y)}.{g(self.z)}|{g(self.w)})"


class Shift(SequenceOracle):
    """at(n) = base.at(n + k); use :func:`shift` which flattens nests."""

    def __init__(self, base: SequenceOracle, k: int):
        super().__init__(base.alphabet)
        self.base = base
        self.k = k
        self.known_recurrent = base.known_recurrent  # shifting preserves recurrence

    def _at(self, n: int) -> int:
        return self.base.at(n + self.k)

    def __repr__(self) -> str:
        return f"shift({self.base!r},{self.k})"


class Reversal(SequenceOracle):
    """at(n) = base.at(-n); use :func:`reverse` which cancels double reversals."""

    def __init__(self, base: SequenceOracle):
        super().__init__(base.alphabet)
        self.base = base
        self.known_recurrent = base.known_recurrent

    def _at(self, n: int) -> int:
        return self.base.at(-n)

    def __repr__(self) -> str:
        return f"rev({self.base!r})"


class SubstImage(SequenceOracle):
    """Image of a sequence under a substitution.

    With anchor a, position a of the image is the first symbol of
    phi(base_0); block boundaries are cached prefix sums, extended lazily.
    """

    def __init__(self, base: SequenceOracle, phi: Substitution, anchor: int = 0):
        if base.alphabet != phi.domain:
            raise ValueError("substitution domain does not match the base alphabet")
        super().__init__(phi.codomain)
        self.base = base
        self.phi = phi
        self.anchor = anchor
        # image of a recurrent sequence is recurrent; nothing follows otherwise
        self.known_recurrent = True if base.known_recurrent else None
        # block i occupies [start(i), start(i+1)); invariant: start(0) = anchor
        self._fwd = [anchor]   # start(0), start(1), ...
        self._bwd = [anchor]   # start(0), start(-1), ...

    def _start(self, i: int) -> int:
        if i >= 0:
            while len(self._fwd) <= i:
                j = len(self._fwd) - 1
                self._fwd.append(self._fwd[-1] + self.phi.image_len(self.base.at(j)))
            return self._fwd[i]
        while len(self._bwd) <= -i:
            j = -len(self._bwd)  # next block index going left
            self._bwd.append(self._bwd[-1] - self.phi.image_len(self.base.at(j)))
        return self._bwd[-i]

    def _block_of(self, n: int) -> int:
        if n >= self.anchor:
            i = 1
            while self._start(i) <= n:
                i *= 2
            return bisect_right(self._fwd, n) - 1
        i = -1
        while self._start(i) > n:
            i *= 2
        # bwd[j] = start(-j) is strictly decreasing; find minimal j with bwd[j] <= n
        lo, hi = 0, -i
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._bwd[mid] <= n:
                hi = mid
            else:
                lo = mid
        return -hi

    def _at(self, n: int) -> int:
        i = self._block_of(n)
        return self.phi.images[self.base.at(i)][n - self._start(i)]

    def __repr__(self) -> str:
        return f"sub({self.phi!r},{self.base!r},@{self.anchor})"


def shift(x: SequenceOracle, k: int) -> SequenceOracle:
    """Oracle with at(n) = x.at(n + k), i.e. the k-th shift power of x."""
    if k == 0:
        return x
    if isinstance(x, Shift):
        return shift(x.base, x.k + k)
    return Shift(x, k)


def reverse(x: SequenceOracle) -> SequenceOracle:
    """Oracle with at(n) = x.at(-n)."""
    if isinstance(x, Reversal):
        return x.base
    return Reversal(x)


def substitute(phi: Substitution, x: SequenceOracle) -> SequenceOracle:
    """Image oracle with anchor 0: the image of x_0 starts at position 0."""
    return SubstImage(x, phi, 0)


def render_window(x: SequenceOracle, lo: int, hi: int) -> str:
    """Glyph string of x_lo..x_hi with the origin point marked before x_0."""
    out = []
    for n in range(lo, hi + 1):
        if n == 0:
            out.append(".")
        out.append(x.alphabet.glyph(x.at(n)))
    return "".join(out)


# ---------------------------------------------------------------------------
# normal forms (private): the basis for exact equality / difference decisions


@dataclass
class NFEvp:
    """Eventually periodic: x_n = x_{n+pu} for n < lb, x_n = x_{n+pw} for n >= rb."""

    oracle: SequenceOracle
    pu: int
    lb: int
    pw: int
    rb: int


@dataclass
class NFMech:
    """n -> mechanical(kind, alpha, rho) evaluated at n + offset; alpha irrational.

    Canonical: rho in [0,1); kind is 'lower' whenever rho != 0 (the two kinds
    coincide pointwise when alpha*n + rho never hits an integer).
    """

    kind: str  # 'lower' | 'upper'
    alpha: QuadraticIrrational
    rho: Fraction
    offset: int

    def read(self, n: int) -> int:
        m = n + self.offset
        if self.kind == "lower":
            return floor_mul_add(self.alpha, m + 1, self.rho) - floor_mul_add(self.alpha, m, self.rho)
        return ceil_mul_add(self.alpha, m + 1, self.rho) - ceil_mul_add(self.alpha, m, self.rho)

    def as_oracle(self) -> SequenceOracle:
        cls = MechanicalLower if self.kind == "lower" else MechanicalUpper
        return shift(cls(self.alpha, self.rho), self.offset)


@dataclass
class NFSubst:
    """Substitution image of an irrational mechanical word or an opaque oracle."""

    phi: Substitution
    base: Union[NFMech, "NFOpaque"]
    anchor: int
    oracle: SequenceOracle  # for value reads

    def base_read(self, n: int) -> int:
        if isinstance(self.base, NFMech):
            return self.base.read(n)
        return self.base.oracle.at(n)

    def start(self, i: int) -> int:
        """Image position where the block of base symbol i begins."""
        s = self.anchor
        if i >= 0:
            for t in range(i):
                s += self.phi.image_len(self.base_read(t))
        else:
            for t in range(i, 0):
                s -= self.phi.image_len(self.base_read(t))
        return s


@dataclass
class NFOpaque:
    """No structural description; only window reads are available."""

    oracle: SequenceOracle


NormalForm = Union[NFEvp, NFMech, NFSubst, NFOpaque]


def _make_nfmech(kind: str, alpha: QuadraticIrrational, rho: Fraction, offset: int) -> NFMech:
    rho = rho - math.floor(rho)  # intercepts equal mod 1 give equal words
    if rho != 0:
        kind = "lower"  # alpha*n + rho never integral, so lower == upper
    return NFMech(kind, alpha, rho, offset)


def _one_minus(alpha: QuadraticIrrational) -> QuadraticIrrational:
    return QuadraticIrrational(alpha.c - alpha.a, -alpha.b, alpha.c, alpha.d)


def _common_root_collapse(phi: Substitution) -> Optional[Word]:
    """If every image of phi is a power of one primitive word, return it."""
    root = primitive_root(next(iter(phi.images.values())))
    for im in phi.images.values():
        if primitive_root(im) != root:
            return None
        if im != root * (len(im) // len(root)):
            return None
    return root


def normal_form(x: SequenceOracle) -> NormalForm:
    if isinstance(x, (MechanicalLower, MechanicalUpper)):
        kind = "lower" if isinstance(x, MechanicalLower) else "upper"
        if is_rational(x.alpha):
            q = x.alpha.denominator  # x is purely q-periodic
            return NFEvp(x, q, 0, q, 0)
        return _make_nfmech(kind, x.alpha, x.rho, 0)

    if isinstance(x, EventuallyPeriodic):
        return NFEvp(x, len(x.u), -len(x.y) - len(x.u), len(x.w), len(x.z))

    if isinstance(x, Shift):
        nf = normal_form(x.base)
        if isinstance(nf, NFEvp):
            return NFEvp(x, nf.pu, nf.lb - x.k, nf.pw, nf.rb - x.k)
        if isinstance(nf, NFMech):
            return NFMech(nf.kind, nf.alpha, nf.rho, nf.offset + x.k)
        if isinstance(nf, NFSubst):
            return NFSubst(nf.phi, nf.base, nf.anchor - x.k, x)
        return NFOpaque(x)

    if isinstance(x, Reversal):
        nf = normal_form(x.base)
        if isinstance(nf, NFEvp):
            return NFEvp(x, nf.pw, -nf.rb - nf.pw + 1, nf.pu, -nf.lb - nf.pu + 1)
        if isinstance(nf, NFMech):
            # s(alpha,rho)(m) = s'(alpha,-rho)(-m-1) and symmetrically
            other = "upper" if nf.kind == "lower" else "lower"
            return _make_nfmech(other, nf.alpha, -nf.rho, -nf.offset - 1)
        if isinstance(nf, NFSubst):
            base_rev = _reverse_nf_base(nf.base)
            l0 = nf.phi.image_len(nf.base_read(0))
            return NFSubst(nf.phi.reversed_images(), base_rev, -nf.anchor - l0 + 1, x)
        return NFOpaque(x)

    if isinstance(x, SubstImage):
        nf = normal_form(x.base)
        phi, anchor = x.phi, x.anchor

        if isinstance(nf, NFEvp):
            starts = _nf_block_starts(x, nf)
            return starts
        if isinstance(nf, NFSubst):
            # compose the two substitutions; the inner image anchored at 0
            # supplies the realignment term S_z(-inner.anchor)
            z = SubstImage(_nf_base_oracle(nf.base), nf.phi, 0)
            adj = _image_len_sum(phi, z, -nf.anchor)
            composed = phi.compose(nf.phi)
            return _collapse_or_keep(NFSubst(composed, nf.base, anchor - adj, x), x)
        if isinstance(nf, NFMech):
            # absorb the mechanical offset into the anchor
            mech0 = NFMech(nf.kind, nf.alpha, nf.rho, 0)
            adj = _image_len_sum(phi, mech0.as_oracle(), nf.offset)
            return _collapse_or_keep(NFSubst(phi, mech0, anchor - adj, x), x)
        # opaque base
        return _collapse_or_keep(NFSubst(phi, NFOpaque(x.base), anchor, x), x)

    return NFOpaque(x)


def _nf_base_oracle(base: Union[NFMech, "NFOpaque"]) -> SequenceOracle:
    return base.as_oracle() if isinstance(base, NFMech) else base.oracle


def _image_len_sum(phi: Substitution, seq: SequenceOracle, m: int) -> int:
    """Signed sum of |phi(seq_t)| over t in [0, m) (negated over [m, 0) if m < 0)."""
    if m >= 0:
        return sum(phi.image_len(seq.at(t)) for t in range(m))
    return -sum(phi.image_len(seq.at(t)) for t in range(m, 0))


def _reverse_nf_base(base: Union[NFMech, NFOpaque]) -> Union[NFMech, NFOpaque]:
    if isinstance(base, NFMech):
        other = "upper" if base.kind == "lower" else "lower"
        return _make_nfmech(other, base.alpha, -base.rho, -base.offset - 1)
    return NFOpaque(Reversal(base.oracle))


def _nf_block_starts(x: SubstImage, nf: NFEvp) -> NFEvp:
    """Profile of a substitution image over an eventually periodic base."""
    phi, base, anchor = x.phi, x.base, x.anchor

    def start(i: int) -> int:
        s = anchor
        if i >= 0:
            for t in range(i):
                s += phi.image_len(base.at(t))
        else:
            for t in range(i, 0):
                s -= phi.image_len(base.at(t))
        return s

    pu = sum(phi.image_len(base.at(t)) for t in range(nf.lb - nf.pu, nf.lb))
    pw = sum(phi.image_len(base.at(t)) for t in range(nf.rb, nf.rb + nf.pw))
    return NFEvp(x, pu, start(nf.lb - nf.pu), pw, start(nf.rb))


def _collapse_or_keep(nf: NFSubst, x: SequenceOracle) -> NormalForm:
    """Collapse images of mechanical bases that are secretly periodic or mechanical."""
    root = _common_root_collapse(nf.phi)
    if root is not None:
        # every block is a power of the same primitive word: the image is the
        # periodic sequence root^inf regardless of the base
        return NFEvp(x, len(root), nf.anchor, len(root), nf.anchor)
    if (
        isinstance(nf.base, NFMech)
        and nf.phi.domain.size == 2
        and all(nf.phi.image_len(s) == 1 for s in nf.phi.images)
    ):
        im0, im1 = nf.phi.images[0][0], nf.phi.images[1][0]
        if {im0, im1} == {0, 1}:
            mech = nf.base
            if im0 == 0:  # identity relabel: plain shift of the base
                return NFMech(mech.kind, mech.alpha, mech.rho, mech.offset - nf.anchor)
            # swap relabel: 1 - s(alpha,rho) = s'(1-alpha,-rho) and dually
            other = "upper" if mech.kind == "lower" else "lower"
            return _make_nfmech(
                other, _one_minus(mech.alpha), -mech.rho, mech.offset - nf.anchor
            )
    return nf


# ---------------------------------------------------------------------------
# exact difference analysis


class NotAsymptoticError(ValueError):
    """Structural analysis shows the two sequences differ at infinitely many positions."""


class UncertifiableError(ValueError):
    """No structural certificate of agreement outside a finite set is available."""


def _read_nf(nf: NormalForm, n: int) -> int:
    if isinstance(nf, NFMech):
        return nf.read(n)
    return nf.oracle.at(n)


def _window_nf(nf: NormalForm, lo: int, hi: int) -> Word:
    return tuple(_read_nf(nf, n) for n in range(lo, hi + 1))


def _evp_difference(nx: NFEvp, ny: NFEvp) -> frozenset[int]:
    pl = math.lcm(nx.pu, ny.pu)
    pr = math.lcm(nx.pw, ny.pw)
    t0 = min(nx.lb, ny.lb) - pl  # both sides pl-periodic at every n < t0 + pl
    s0 = max(nx.rb, ny.rb)
    if nx.oracle.window(t0 - pl, t0 - 1) != ny.oracle.window(t0 - pl, t0 - 1):
        raise NotAsymptoticError("left periodic tails disagree")
    if nx.oracle.window(s0, s0 + pr - 1) != ny.oracle.window(s0, s0 + pr - 1):
        raise NotAsymptoticError("right periodic tails disagree")
    diff = [n for n in range(t0 - pl, s0 + pr)
            if nx.oracle.at(n) != ny.oracle.at(n)]
    return frozenset(diff)


def _mech_difference(nx: NFMech, ny: NFMech) -> frozenset[int]:
    if nx.alpha != ny.alpha:
        raise NotAsymptoticError("different irrational slopes")
    if nx.offset != ny.offset or nx.rho != ny.rho:
        raise NotAsymptoticError("mechanical words on different rotation orbits")
    if nx.kind == ny.kind:
        return frozenset()
    # lower vs upper with integral intercept: they disagree exactly where the
    # rotation hits the integers, i.e. at base positions -1 and 0
    return frozenset({-1 - nx.offset, -nx.offset})


def _subst_difference(nx: NFSubst, ny: NFSubst) -> frozenset[int]:
    if nx.phi.image_key() != ny.phi.image_key():
        raise UncertifiableError("substitution images under different substitutions")
    base_diff = _nf_difference(nx.base, ny.base)
    if not base_diff:
        if nx.anchor == ny.anchor:
            return frozenset()
        if isinstance(nx.base, NFMech):
            raise NotAsymptoticError("misaligned images of the same aperiodic word")
        raise UncertifiableError("misaligned images of an opaque word")
    lo, hi = min(base_diff), max(base_diff)
    lx, rx = nx.start(lo), nx.start(hi + 1)
    ly, ry = ny.start(lo), ny.start(hi + 1)
    if lx != ly or rx != ry:
        if isinstance(nx.base, NFMech):
            raise NotAsymptoticError("image tails shifted against each other")
        raise UncertifiableError("image tails misaligned over an opaque base")
    return frozenset(
        n for n in range(lx, rx) if nx.oracle.at(n) != ny.oracle.at(n)
    )


def _nf_difference(nx: NormalForm, ny: NormalForm) -> frozenset[int]:
    """Exact difference set of two normal forms, or raise."""
    if isinstance(nx, NFOpaque) and isinstance(ny, NFOpaque):
        if nx.oracle is ny.oracle:
            return frozenset()
        raise UncertifiableError("cannot compare opaque oracles structurally")
    if isinstance(nx, NFEvp) and isinstance(ny, NFEvp):
        return _evp_difference(nx, ny)
    if isinstance(nx, NFMech) and isinstance(ny, NFMech):
        return _mech_difference(nx, ny)
    if isinstance(nx, NFSubst) and isinstance(ny, NFSubst):
        return _subst_difference(nx, ny)
    kinds = {type(nx), type(ny)}
    if kinds == {NFEvp, NFMech}:
        raise NotAsymptoticError("eventually periodic vs aperiodic mechanical word")
    raise UncertifiableError(
        f"no structural certificate for {type(nx).__name__} vs {type(ny).__name__}"
    )


def difference_set(x: SequenceOracle, y: SequenceOracle) -> frozenset[int]:
    """Exact difference set of two oracles in the closed algebra.

    Raises :class:`NotAsymptoticError` when the sequences provably differ at
    infinitely many positions, :class:`UncertifiableError` when no structural
    certificate exists.
    """
    if x is y:
        return frozenset()
    if x.alphabet != y.alphabet:
        raise NotAsymptoticError("different alphabets")
    return _nf_difference(normal_form(x), normal_form(y))


def oracles_equal(x: SequenceOracle, y: SequenceOracle) -> bool:
    """Exact pointwise equality over all of Z (within the closed algebra)."""
    try:
        return not difference_set(x, y)
    except NotAsymptoticError:
        return False


def is_recurrent(x: SequenceOracle) -> Optional[bool]:
    """True/False when decidable for the oracle class, None otherwise.

    Mechanical words of irrational slope are recurrent; an eventually
    periodic sequence is recurrent iff it is fully periodic; substitution
    images of recurrent sequences are recurrent.
    """
    return _nf_recurrent(normal_form(x))


def _nf_recurrent(nf: NormalForm) -> Optional[bool]:
    if isinstance(nf, NFMech):
        return True
    if isinstance(nf, NFEvp):
        # fully periodic iff globally pu-periodic; check one exact window
        hi = nf.rb + nf.pw + math.lcm(nf.pu, nf.pw)
        return all(
            nf.oracle.at(n) == nf.oracle.at(n + nf.pu)
            for n in range(nf.lb - nf.pu, hi + 1)
        )
    if isinstance(nf, NFSubst):
        base = True if isinstance(nf.base, NFMech) else nf.base.oracle.known_recurrent
        return True if base else None
    return nf.oracle.known_recurrent
