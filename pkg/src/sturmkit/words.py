"""Small utilities on finite words (tuples of symbol ids)."""

from __future__ import annotations

Word = tuple[int, ...]


def failure_function(w: Word) -> list[int]:
    """KMP failure table; f[i] = length of longest proper border of w[:i+1]."""
    f = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = f[k - 1]
        if w[i] == w[k]:
            k += 1
        f[i] = k
    return f


def smallest_period(w: Word) -> int:
    """Smallest p such that w[i] == w[i+p] for all valid i."""
    if not w:
        raise ValueError("empty word has no period")
    return len(w) - failure_function(w)[-1]


def primitive_root(w: Word) -> Word:
    """The primitive word u with w = u**k; w itself if w is primitive."""
    p = smallest_period(w)
    if len(w) % p == 0:
        return w[:p]
    return w


def is_primitive(w: Word) -> bool:
    return primitive_root(w) == w


def is_palindrome(w: Word) -> bool:
    return w == w[::-1]


def are_conjugate(u: Word, v: Word) -> bool:
    """True iff u and v are rotations of one another."""
    if len(u) != len(v):
        return False
    if not u:
        return True
    return any(u[i:] + u[:i] == v for i in range(len(u)))


def occurrences(w: Word, text: Word) -> list[int]:
    """All start positions of w inside text (overlaps allowed)."""
    n, m = len(text), len(w)
    return [i for i in range(n - m + 1) if text[i:i + m] == w]
