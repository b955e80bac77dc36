import random
from fractions import Fraction

import pytest

import sturmkit as sk
from sturmkit.patterns import (
    Pattern,
    certify_asymptotic,
    check_indistinguishable,
    discrepancy,
    ns_norm_lower_bound,
    occurrences_in,
    pattern_reduction_check,
    reverse_pair,
    shift_pair,
    substitute_pair,
)
from sturmkit.sequences import (
    Alphabet,
    BINARY,
    EventuallyPeriodic,
    MechanicalLower,
    MechanicalUpper,
    Substitution,
    shift,
)

from conftest import GOLDEN, SQRT2_HALF, to_str, to_word

ABC = Alphabet(("a", "b", "c"))


@pytest.fixture(scope="module")
def abc_pair():
    # the flagship discrepancy example: x carries "abc" at the origin, y
    # carries "bca"; both are built over the same periodic background
    period = ABC.word_from_str("bcabcbcabcabc")
    pad = ABC.word_from_str("bcabc")
    x = EventuallyPeriodic(period, pad, ABC.word_from_str("abc"), period, ABC)
    y = EventuallyPeriodic(period, pad, ABC.word_from_str("bca"), period, ABC)
    return certify_asymptotic(x, y, radius=4)


def test_certify_examples(golden_pair):
    assert golden_pair.diff == frozenset({-1, 0})
    x = MechanicalLower(GOLDEN)
    assert certify_asymptotic(x, x, 5).diff == frozenset()
    a = EventuallyPeriodic.from_strings("0", "", "10", "0")
    b = EventuallyPeriodic.from_strings("0", "", "010", "0")
    assert certify_asymptotic(a, b, 5).diff == frozenset({0, 1})


def test_certify_errors():
    with pytest.raises(sk.NotAsymptoticError):
        certify_asymptotic(MechanicalLower(GOLDEN), MechanicalLower(SQRT2_HALF), 5)
    from sturmkit.language import ToeplitzLimit
    with pytest.raises(sk.UncertifiableError):
        certify_asymptotic(ToeplitzLimit(0), ToeplitzLimit(1), 5)
    with pytest.raises(ValueError):
        certify_asymptotic(
            shift(MechanicalLower(GOLDEN), 30), shift(MechanicalUpper(GOLDEN), 30), 5
        )  # differences exist but sit outside the radius


def test_abc_discrepancy_is_zero(abc_pair):
    assert abc_pair.diff == frozenset({0, 1, 2})
    p = Pattern.from_word(ABC.word_from_str("abcabc"))
    assert discrepancy(p, abc_pair) == 0


def test_occurrences():
    x = MechanicalLower(Fraction(5, 13))
    p = Pattern.from_word(to_word("00"))
    assert occurrences_in(p, x, (0, 12)) == {0, 3, 8}
    single = Pattern.from_dict({0: x.at(0)})
    assert occurrences_in(single, x, (0, 0)) == {0}
    gapped = Pattern.from_dict({0: 0, 2: 0})
    evp = EventuallyPeriodic.from_strings("0", "", "010", "0")
    assert 0 in occurrences_in(gapped, evp, (0, 2))


def test_discrepancy_trivial_and_remark(golden_pair, remark_pair):
    trivial = certify_asymptotic(golden_pair.x, golden_pair.x, 3)
    p = Pattern.from_word(to_word("0110"))
    assert discrepancy(p, trivial) == 0
    # the pattern 00111 occurs in x meeting the difference set but not in y
    w = Pattern.from_word(to_word("00111"))
    assert discrepancy(w, remark_pair) == -1


def test_check_indistinguishable(golden_pair, remark_pair):
    assert check_indistinguishable(golden_pair, 20).passed
    verdict = check_indistinguishable(remark_pair, 5)
    assert not verdict.passed
    # shortest failing length is 2; the lexicographically least failing word
    # is 00 (the illustrative witness 00111 fails as well, see
    # test_discrepancy_trivial_and_remark)
    assert verdict.lengths_checked == 2
    assert to_str(verdict.witness) == "00"
    trivial = certify_asymptotic(golden_pair.x, golden_pair.x, 3)
    assert check_indistinguishable(trivial, 30).passed


def test_check_threads_deterministic(remark_pair, golden_pair):
    for pair in (remark_pair, golden_pair):
        a = check_indistinguishable(pair, 8)
        b = check_indistinguishable(pair, 8, threads=3)
        assert (a.passed, a.witness) == (b.passed, b.witness)


def brute_norm(pair, max_support):
    """Independent oracle: enumerate every binary word up to max_support and
    sum |Delta| over the full candidate position set."""
    best = Fraction(0)
    lo, hi = pair.span()
    for n in range(1, max_support + 1):
        total = 0
        for bits in range(2 ** n):
            w = tuple((bits >> i) & 1 for i in range(n))
            positions = {f - s for f in pair.diff for s in range(n)}
            d = sum(
                int(all(pair.y.at(m + i) == w[i] for i in range(n)))
                - int(all(pair.x.at(m + i) == w[i] for i in range(n)))
                for m in positions
            )
            total += abs(d)
        best = max(best, Fraction(total, n))
    return best


def test_ns_norm(golden_pair, remark_pair):
    assert ns_norm_lower_bound(golden_pair, 6) == 0
    trivial = certify_asymptotic(golden_pair.x, golden_pair.x, 3)
    assert ns_norm_lower_bound(trivial, 4) == 0
    value = ns_norm_lower_bound(remark_pair, 6)
    assert value == brute_norm(remark_pair, 6)
    assert value > 0


def test_pattern_reduction(golden_pair, remark_pair):
    full = Pattern.from_word(to_word("010"))
    assert pattern_reduction_check(full, golden_pair)
    gapped = Pattern.from_dict({0: 0, 2: 0})
    assert pattern_reduction_check(gapped, golden_pair)
    rng = random.Random(5)
    for _ in range(10):
        support = sorted(rng.sample(range(-3, 4), rng.randint(1, 3)))
        cells = {s: rng.randint(0, 1) for s in support}
        assert pattern_reduction_check(Pattern.from_dict(cells), remark_pair)


def test_affine_invariance(golden_pair, remark_pair):
    rng = random.Random(99)
    pairs = [golden_pair, remark_pair]
    for _ in range(60):
        pair = rng.choice(pairs)
        support = sorted(rng.sample(range(-4, 5), rng.randint(1, 3)))
        p = Pattern.from_dict({s: rng.randint(0, 1) for s in support})
        n = rng.randint(-7, 7)
        base = discrepancy(p, pair)
        assert discrepancy(p, shift_pair(pair, n)) == base
        assert discrepancy(p.negated(), reverse_pair(pair)) == base


def test_limit_closure():
    # rational perturbations of the golden slope stay irrational; each pair
    # is indistinguishable and they converge to the golden pair on windows
    target = certify_asymptotic(MechanicalLower(GOLDEN), MechanicalUpper(GOLDEN), 3)
    for k in (10, 40, 160):
        alpha_k = sk.QuadraticIrrational(2 - k, k, 2 * k, 5)  # golden + 1/k
        pair_k = certify_asymptotic(
            MechanicalLower(alpha_k), MechanicalUpper(alpha_k), 3
        )
        assert pair_k.diff == frozenset({-1, 0})
        assert check_indistinguishable(pair_k, 10).passed
    wide = certify_asymptotic(
        MechanicalLower(sk.QuadraticIrrational(2 - 4000, 4000, 8000, 5)),
        MechanicalUpper(sk.QuadraticIrrational(2 - 4000, 4000, 8000, 5)),
        3,
    )
    assert wide.x.window(-25, 25) == target.x.window(-25, 25)
    assert check_indistinguishable(target, 25).passed


def test_substitute_pair_exact(golden_pair):
    moved = shift_pair(golden_pair, -1)  # difference set {0, 1}
    phi = Substitution({0: (0, 1), 1: (2,)}, BINARY, Alphabet(("a", "b", "c")))
    image = substitute_pair(phi, moved)
    brute = {n for n in range(-40, 41) if image.x.at(n) != image.y.at(n)}
    assert set(image.diff) == brute


def test_symbol_counts_match_when_indistinguishable(golden_pair):
    lo, hi = golden_pair.span()
    xs = golden_pair.x.window(lo, hi)
    ys = golden_pair.y.window(lo, hi)
    assert sorted(xs) == sorted(ys)
