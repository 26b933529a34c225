"""Square detection and square-free word generation over small integer alphabets.

A *square* is a non-empty factor of the form XX (two identical adjacent
blocks).  A word with no square is *square-free* (non-repetitive).  Words are
plain sequences of small non-negative integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = ["SquareOccurrence", "find_square", "has_square", "thue_word"]


@dataclass(frozen=True)
class SquareOccurrence:
    """A square w[start : start+2*half_len) whose halves are equal."""

    start: int
    half_len: int


# Words shorter than this are scanned with the plain double loop; longer ones
# go through the vectorised per-shift scan.  Both are exact.
_NUMPY_CUTOFF = 64


def find_square(word: Sequence[int]) -> Optional[SquareOccurrence]:
    """Return the leftmost square in ``word``, or None if square-free.

    Ties at the same start position are broken towards the shortest
    half-length, so the reported occurrence is deterministic.
    """
    n = len(word)
    if n < 2:
        return None
    if n < _NUMPY_CUTOFF:
        w = tuple(word)
        for i in range(n - 1):
            limit = (n - i) // 2
            for half in range(1, limit + 1):
                if w[i : i + half] == w[i + half : i + 2 * half]:
                    return SquareOccurrence(i, half)
        return None
    return _find_square_long(word)


def _find_square_long(word: Sequence[int]) -> Optional[SquareOccurrence]:
    # For each candidate half-length L, a square of half-length L starts at j
    # iff word[t] == word[t+L] for all t in [j, j+L).  Detect runs of L
    # consecutive matches with a windowed sum over the shifted-equality mask.
    a = np.asarray(word, dtype=np.int64)
    n = a.shape[0]
    best: Optional[SquareOccurrence] = None
    for half in range(1, n // 2 + 1):
        if best is not None and best.start == 0:
            # No later half-length can improve on a square starting at 0 with
            # a smaller half (we scan halves in increasing order).
            break
        eq = a[: n - half] == a[half:]
        if half == 1:
            hits = np.nonzero(eq)[0]
            if hits.size:
                j = int(hits[0])
                if best is None or j < best.start:
                    best = SquareOccurrence(j, 1)
            continue
        counts = np.cumsum(eq, dtype=np.int64)
        window = counts[half - 1 :].copy()
        window[1:] -= counts[: counts.shape[0] - half]
        full = np.nonzero(window == half)[0]
        if full.size:
            j = int(full[0])
            if best is None or j < best.start:
                best = SquareOccurrence(j, half)
    return best


def has_square(word: Sequence[int]) -> bool:
    """True iff ``word`` contains a square.

    Tight scalar loop meant for the short words produced by path
    enumeration; prefer :func:`find_square` when the occurrence is needed.
    """
    n = len(word)
    for half in range(1, n // 2 + 1):
        for i in range(n - 2 * half + 1):
            if word[i] == word[i + half]:
                for t in range(1, half):
                    if word[i + t] != word[i + half + t]:
                        break
                else:
                    return True
    return False


# Fixed point of the ternary morphism 0 -> 012, 1 -> 02, 2 -> 1, a classical
# square-free word.  Frozen so generated fixtures are reproducible.
_MORPHISM = {0: (0, 1, 2), 1: (0, 2), 2: (1,)}


def thue_word(n: int) -> list[int]:
    """First ``n`` symbols of the fixed square-free ternary word."""
    if n < 0:
        raise ValueError("length must be non-negative")
    if n == 0:
        return []
    word = [0]
    while len(word) < n:
        word = [s for sym in word for s in _MORPHISM[sym]]
    return word[:n]
