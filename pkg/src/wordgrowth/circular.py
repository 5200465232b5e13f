"""Square-free circular words and period existence scans.

A circular word is a word up to rotation; it is square-free when no
factor of length up to the word's own length, read around the circle,
is a square.  Circular square-free words of length n are exactly the
roots of the minimal squares of period n, which ties this module to the
minimal-power machinery and gives two independent ways to count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from wordgrowth.fad import word_to_str
from wordgrowth.powerfree import (
    ExponentBound,
    _BudgetExhausted,
    _extend_periodically,
    _is_minimal_word,
    _orbit_size,
    _root_dfs,
    _target_length,
)

__all__ = [
    "BudgetExceededError",
    "CircularWord",
    "circular_is_square_free",
    "enumerate_circular_square_free",
    "forbidden_period_scan",
    "least_rotation",
    "minimal_roots",
    "root_complexity",
]


class BudgetExceededError(RuntimeError):
    """A period scan ran out of its root budget; names the first period
    that could not be settled."""

    def __init__(self, period: int, budget: int):
        super().__init__(
            f"budget of {budget} candidate roots exhausted at period {period}"
        )
        self.period = period
        self.budget = budget


def least_rotation(word) -> tuple:
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CircularWord:
    """A word considered up to rotation, stored by its least rotation."""

    __slots__ = ("representative",)

    def __init__(self, word: Iterable[int]):
        self.representative = least_rotation(tuple(word))

    def __len__(self):
        return len(self.representative)

    def __eq__(self, other):
        if not isinstance(other, CircularWord):
            return NotImplemented
        return self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __lt__(self, other):
        return (len(self.representative), self.representative) < (
            len(other.representative),
            other.representative,
        )

    def __repr__(self):
        return f"CircularWord({word_to_str(self.representative)})"


def circular_is_square_free(word, k: Optional[int] = None) -> bool:
    """No factor of length <= n read around the circle is a square.

    Accepts a plain word or a CircularWord; rotation-invariant by
    construction (every window of the doubled word is checked).  When
    an alphabet size k is supplied the letters are range-checked.
    """
    w = word.representative if isinstance(word, CircularWord) else tuple(word)
    if k is not None:
        codes = [x if isinstance(x, int) else ord(x) - ord("a") for x in w]
        if any(not 0 <= x < k for x in codes):
            raise ValueError("letter out of range for the given alphabet size")
    n = len(w)
    if n == 0:
        return True
    doubled = w + w
    for half in range(1, n // 2 + 1):
        for start in range(n):
            if doubled[start : start + half] == doubled[start + half : start + 2 * half]:
                return False
    return True


def enumerate_circular_square_free(n: int, alphabet_size: int = 3) -> list:
    """All square-free circular words of length n, sorted.

    Depth-first over linearly square-free words with a final wraparound
    check, deduplicated through least rotations.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return [CircularWord(())]
    square = ExponentBound(2)
    found = set()
    for root, _ in _root_dfs(alphabet_size, square, {n}, canonical=False):
        if circular_is_square_free(root):
            found.add(least_rotation(root))
    return sorted(CircularWord(w) for w in sorted(found))


def _rotation_renaming_key(word) -> tuple:
    """Canonical form of a root under rotation and letter renaming:
    the least first-occurrence relabeling over all rotations."""
    n = len(word)
    doubled = word + word
    best = None
    for j in range(n):
        seen: dict = {}
        relabeled = []
        for x in doubled[j:j + n]:
            if x not in seen:
                seen[x] = len(seen)
            relabeled.append(seen[x])
        cand = tuple(relabeled)
        if best is None or cand < best:
            best = cand
    return best


def minimal_roots(k: int, bound: ExponentBound, n: int) -> list:
    """All length-n words whose periodic extension is a minimal power;
    for squares these are exactly the words whose circular closure is
    square-free."""
    if n < 1:
        raise ValueError("period must be at least 1")
    return sorted(
        root
        for root, p in _root_dfs(k, bound, {n}, canonical=False)
        if _is_minimal_word(_extend_periodically(root, _target_length(bound, p)), p, bound)
    )


def root_complexity(k: int, bound: ExponentBound, n: int) -> int:
    """Number of minimal bound-violating words of period exactly n,
    with roots counted up to rotation.

    Conjugate roots describe one cyclic object, so each class of roots
    equivalent under rotation and renaming contributes the number of
    distinct letter assignments of one representative, k!/(k-used)!.
    A lone one-letter class therefore counts k, a lone class using all
    letters counts k!.
    """
    classes = {_rotation_renaming_key(root) for root in minimal_roots(k, bound, n)}
    return sum(_orbit_size(key, k) for key in classes)


def _period_permitted(k: int, bound: ExponentBound, p: int, budget: int) -> bool:
    """Does any minimal bound-violating word of period p exist?

    Searches canonical roots only (permuting letters preserves
    minimality), stopping at the first witness.
    """
    counter = [budget]
    for root, _ in _root_dfs(k, bound, {p}, canonical=True, budget=counter):
        w = _extend_periodically(root, _target_length(bound, p))
        if _is_minimal_word(w, p, bound):
            return True
    return False


def _scan_one(args) -> tuple:
    k, bound, p, budget = args
    try:
        return p, _period_permitted(k, bound, p, budget), None
    except _BudgetExhausted:
        return p, False, "budget"


def forbidden_period_scan(
    k: int,
    bound: ExponentBound,
    p_max: int,
    budget: int = 20_000_000,
    threads: int = 1,
) -> set:
    """Periods up to p_max admitting no minimal bound-violating word.

    Each period gets its own allowance of ``budget`` candidate roots; a
    period that exhausts it raises BudgetExceededError naming the first
    period that could not be settled.  ``threads`` > 1 distributes
    periods over processes; results are merged deterministically.
    """
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    jobs = [(k, bound, p, budget) for p in range(1, p_max + 1)]
    results = {}
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for p, permitted, failure in pool.map(_scan_one, jobs):
                results[p] = (permitted, failure)
    else:
        for job in jobs:
            p, permitted, failure = _scan_one(job)
            results[p] = (permitted, failure)
    for p in range(1, p_max + 1):
        if results[p][1] == "budget":
            raise BudgetExceededError(p, budget)
    return {p for p in range(1, p_max + 1) if not results[p][0]}
