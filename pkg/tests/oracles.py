"""Independent reference implementations used by the test suite.

Everything here is deliberately naive: exhaustive enumeration, direct
definitions, and exact symbolic root isolation.  None of it shares code
with the library beyond the public data containers, so agreement is
meaningful evidence.
"""

import itertools
from fractions import Fraction

import sympy


# ---------------------------------------------------------------------------
# automata

def brute_count(dfa, n: int) -> int:
    """Accepted-word count by trying every word of length n."""
    return sum(
        1
        for w in itertools.product(range(dfa.alphabet_size), repeat=n)
        if dfa.accepts(w)
    )


def spectral_radius_root(rows):
    """Largest real eigenvalue of a nonnegative integer matrix, as an
    exact sympy number.

    For nonnegative matrices the spectral radius is itself an
    eigenvalue, hence the largest real root of the characteristic
    polynomial (0 when the matrix is nilpotent).
    """
    n = len(rows)
    if n == 0:
        return sympy.Integer(0)
    m = sympy.Matrix(n, n, lambda i, j: rows[i].get(j, 0))
    cp = m.charpoly()
    roots = sympy.Poly(cp.as_expr(), cp.gens[0]).real_roots()
    best = sympy.Integer(0)
    for r in roots:
        if r > best:
            best = r
    return best


def interval_contains(lo: Fraction, hi: Fraction, value) -> bool:
    """Exact containment of a sympy real number in a rational interval."""
    lo_s = sympy.Rational(lo.numerator, lo.denominator)
    hi_s = sympy.Rational(hi.numerator, hi.denominator)
    return bool(lo_s <= value) and bool(value <= hi_s)


def dfa_adjacency_rows(dfa):
    """Letter-multiplicity adjacency of a dfa's transition graph."""
    rows = [dict() for _ in range(dfa.state_count)]
    for q, table in enumerate(dfa.transitions):
        for t in table.values():
            rows[q][t] = rows[q].get(t, 0) + 1
    return rows


# ---------------------------------------------------------------------------
# words and powers

def naive_min_period(word) -> int:
    n = len(word)
    for p in range(1, n + 1):
        if all(word[i] == word[i + p] for i in range(n - p)):
            return p
    raise AssertionError


def naive_exponent(word) -> Fraction:
    return Fraction(len(word), naive_min_period(word))


def _crosses(e: Fraction, beta: Fraction, plus: bool) -> bool:
    return e > beta if plus else e >= beta


def naive_violates(word, beta: Fraction, plus: bool) -> bool:
    """Does any factor have a big enough exponent?  Checks every factor."""
    n = len(word)
    for i in range(n):
        for j in range(i + 1, n + 1):
            if _crosses(naive_exponent(word[i:j]), beta, plus):
                return True
    return False


def naive_is_minimal_power(word, beta: Fraction, plus: bool) -> bool:
    """Violates the bound while both one-letter trims stay free.

    Trim freeness covers all proper factors, since every proper factor
    lies inside a trim.
    """
    if len(word) < 2:
        return False
    return (
        naive_violates(word, beta, plus)
        and not naive_violates(word[1:], beta, plus)
        and not naive_violates(word[:-1], beta, plus)
    )


def brute_minimal_powers_by_length(k: int, beta: Fraction, plus: bool, max_len: int):
    """All minimal powers up to a length, straight from the definition."""
    out = []
    for length in range(2, max_len + 1):
        for w in itertools.product(range(k), repeat=length):
            if naive_is_minimal_power(w, beta, plus):
                out.append(w)
    return out


def brute_minimal_powers_by_period(k: int, beta: Fraction, plus: bool, cap: int):
    """All minimal powers of period <= cap.

    A minimal power is a periodic extension of its own prefix of that
    period, so roots are enumerated exhaustively and every plausible
    extension length is tested against the definition.  The length scan
    runs a little past the first crossing to confirm nothing longer
    survives.
    """
    out = set()
    for p in range(1, cap + 1):
        limit = int(beta * p) + p + 3
        for root in itertools.product(range(k), repeat=p):
            for length in range(p + 1, limit + 1):
                w = tuple(root[i % p] for i in range(length))
                if naive_min_period(w) <= cap and naive_is_minimal_power(w, beta, plus):
                    out.add(w)
    return sorted(out, key=lambda w: (naive_min_period(w), w))


# ---------------------------------------------------------------------------
# circular words

def naive_circular_square_free(word) -> bool:
    """Square check on every rotation; factors longer than the word do
    not count."""
    n = len(word)
    if n == 0:
        return True
    for s in range(n):
        r = word[s:] + word[:s]
        for i in range(n):
            for half in range(1, (n - i) // 2 + 1):
                if r[i:i + half] == r[i + half:i + 2 * half]:
                    return False
    return True


# ---------------------------------------------------------------------------
# morphic words

_THETA = {0: (0, 1), 1: (1, 0)}


def theta(word):
    """Thue-Morse morphism a -> ab, b -> ba on index alphabet {0,1}."""
    out = []
    for x in word:
        out.extend(_THETA[x])
    return tuple(out)


def theta_pow(word, times: int):
    for _ in range(times):
        word = theta(word)
    return word


def thue_morse_prefix(length: int):
    w = (0,)
    while len(w) < length:
        w = theta(w)
    return w[:length]


# ---------------------------------------------------------------------------
# staircase words

def staircase_words(k: int, total: int):
    """All words made of full blocks of one letter, letters cycling by
    +1 mod k, block lengths nondecreasing, of length exactly total."""
    out = []

    def rec(prefix, remaining, letter, min_block):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for size in range(min_block, remaining + 1):
            rec(prefix + [letter] * size, remaining - size, (letter + 1) % k, size)

    for first in range(k):
        rec([], total, first, 1)
    return out


def staircase_factors(k: int, n: int):
    """Every length-n factor of any staircase word, via generation.

    A factor of a long staircase lies inside one whose length is at
    most 3n: the touched span is n and each border block needs at most
    n more letters to complete.
    """
    seen = set()
    for total in range(n, 3 * n + 1):
        for w in staircase_words(k, total):
            for i in range(total - n + 1):
                seen.add(w[i:i + n])
    return seen


# ---------------------------------------------------------------------------
# extendable parts

def brute_right_extendable(dfa, word) -> bool:
    """Pumping form: some continuation as long as the state count works."""
    s = dfa.state_count
    if not dfa.accepts(word):
        return False
    for v in itertools.product(range(dfa.alphabet_size), repeat=s):
        if dfa.accepts(word + v):
            return True
    return False


def brute_two_extendable(dfa, word) -> bool:
    s = dfa.state_count
    if not dfa.accepts(word):
        return False
    for u in itertools.product(range(dfa.alphabet_size), repeat=s):
        if not dfa.accepts(u + word):
            continue
        for v in itertools.product(range(dfa.alphabet_size), repeat=s):
            if dfa.accepts(u + word + v):
                return True
    return False
