"""Two-sided growth-rate bounds for power-free languages.

A power-free language L(k, beta) consists of the words over k letters
none of whose factors has exponent at least beta (strictly above beta
for a "plus" bound).  These languages are not regular, but forbidding
only the minimal violating words up to a period or excess cap yields a
regular superset whose growth rate is an upper bound for the language,
and a classical inequality converts a good upper bound into a certified
lower bound.  Everything numeric here is exact: rates come from the
certified interval engine, the lower bound from rational bisection.

Symmetry: the languages are stable under permuting letters, so the walk
counts of their approximating automata factor through a quotient whose
states are letter-canonical forbidden-word prefixes.  The quotient is
built directly with relabeling-aware failure links and feeds the same
interval engine through weighted edges; tests cross-check it against
the plain construction.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from wordgrowth.automaton import Dfa, scc
from wordgrowth.fad import Antidictionary, fad_automaton, word_to_str
from wordgrowth.growth import (
    IndexInterval,
    _as_fraction,
    _dfa_adjacency,
    decimal_lower,
    decimal_upper,
    digraph_index,
)

__all__ = [
    "ExponentBound",
    "FiniteApproximationError",
    "MinimalPower",
    "NoLowerBoundError",
    "PowerFreeBounds",
    "approximation_bounds",
    "asymptotic_formula",
    "exponent",
    "is_free",
    "lower_bound",
    "minimal_periods_of_suffixes",
    "minimal_powers",
    "violates",
]


class FiniteApproximationError(ValueError):
    """The regular approximation is a finite language; no growth rate."""


class _BudgetExhausted(RuntimeError):
    """Internal: a root scan ran past its visit allowance."""


class NoLowerBoundError(ValueError):
    """The lower-bound inequality has no solution above 1."""


@dataclass(frozen=True)
class ExponentBound:
    """A rational exponent threshold, optionally strict ("plus").

    A word violates the bound when its exponent is >= num/den, or
    strictly > num/den for a plus bound.  Plus bounds describe the
    classical "beta-plus-free" languages.
    """

    num: int
    den: int = 1
    plus: bool = False

    def __post_init__(self):
        if self.den < 1 or self.num < 1:
            raise ValueError("exponent bound must be a positive rational")
        frac = Fraction(self.num, self.den)
        if frac <= 1:
            raise ValueError("exponent bound must exceed 1")
        # keep num/den coprime so equality and ordering follow the value
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    @classmethod
    def parse(cls, token: str) -> "ExponentBound":
        s = token.strip()
        plus = s.endswith("+")
        if plus:
            s = s[:-1]
        if "/" in s:
            a, _, b = s.partition("/")
        else:
            a, b = s, "1"
        try:
            num, den = int(a), int(b)
        except ValueError:
            raise ValueError(f"bad exponent token {token!r}") from None
        frac = Fraction(num, den)
        return cls(frac.numerator, frac.denominator, plus)

    def __str__(self):
        body = str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        return body + ("+" if self.plus else "")


# ---------------------------------------------------------------------------
# exponents of words and factors


def _border_table(word) -> list:
    """border[i] = length of the longest proper border of word[:i]."""
    n = len(word)
    border = [0] * (n + 1)
    j = 0
    for i in range(1, n):
        while j and word[i] != word[j]:
            j = border[j]
        if word[i] == word[j]:
            j += 1
        else:
            j = 0
        border[i + 1] = j
    return border


def minimal_period(word) -> int:
    w = tuple(word)
    if not w:
        raise ValueError("the empty word has no period")
    border = _border_table(w)
    return len(w) - border[len(w)]


def exponent(word) -> Fraction:
    """|w| divided by the minimal period of w."""
    w = tuple(word)
    return Fraction(len(w), minimal_period(w))


def _crosses(length: int, period: int, bound: ExponentBound) -> bool:
    lhs = length * bound.den
    rhs = bound.num * period
    return lhs > rhs if bound.plus else lhs >= rhs


def violates(e, bound: ExponentBound) -> bool:
    """True when exponent e crosses the bound (>= for plain bounds,
    strict > for plus bounds)."""
    e = Fraction(e)
    return e > bound.value if bound.plus else e >= bound.value


def is_free(word, bound: ExponentBound, max_factor: Optional[int] = None) -> bool:
    """True when no factor of the word violates the bound.

    ``max_factor`` restricts the check to factors up to that length,
    which some callers can justify on structural grounds.
    """
    w = tuple(word)
    n = len(w)
    for start in range(n):
        sub = w[start:]
        m = len(sub) if max_factor is None else min(len(sub), max_factor)
        if m < 2:
            continue
        border = [0] * (m + 1)
        j = 0
        for i in range(1, m):
            while j and sub[i] != sub[j]:
                j = border[j]
            if sub[i] == sub[j]:
                j += 1
            else:
                j = 0
            border[i + 1] = j
            length = i + 1
            period = length - j
            if period < length and _crosses(length, period, bound):
                return False
    return True


def minimal_periods_of_suffixes(word) -> list:
    """Minimal periods of every suffix; entry i is for word[i:].

    Computed from one border table of the reversed word: reversal maps
    suffixes to prefixes and preserves periods.
    """
    w = tuple(word)[::-1]
    n = len(w)
    border = _border_table(w)
    out = [0] * n
    for length in range(1, n + 1):
        out[n - length] = length - border[length]
    return out


# ---------------------------------------------------------------------------
# minimal violating words


@dataclass(frozen=True, order=True)
class MinimalPower:
    """A shortest bound-violating word: it violates, both one-letter
    trims are free, and ``period`` is its minimal period."""

    period: int
    word: tuple
    exponent: Fraction

    def __str__(self):
        return f"{word_to_str(self.word)} (period {self.period}, exponent {self.exponent})"


def _target_length(bound: ExponentBound, period: int) -> int:
    """Length of a minimal violating word of the given period.

    Smallest L with L/p >= beta (plain) or L/p > beta (plus): any longer
    violating word of the same period still violates after dropping its
    last letter, so minimal words have exactly this length.
    """
    if bound.plus:
        return (bound.num * period) // bound.den + 1
    return -((-bound.num * period) // bound.den)


def _target_periods(bound: ExponentBound, cap: int, mode: str) -> list:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if mode == "period":
        return list(range(1, cap + 1))
    if mode == "excess":
        periods = []
        p = 1
        while True:
            excess = _target_length(bound, p) - p
            if excess > cap:
                return periods
            periods.append(p)
            p += 1
    raise ValueError("mode must be 'period' or 'excess'")


def _suffixes_stay_free(word, bound: ExponentBound) -> bool:
    """Check only the factors that end at the last letter."""
    periods = minimal_periods_of_suffixes(word)
    n = len(word)
    for i in range(n - 1):
        length = n - i
        if periods[i] < length and _crosses(length, periods[i], bound):
            return False
    return True


def _extend_periodically(root, length: int):
    p = len(root)
    reps = -(-length // p)
    return (tuple(root) * reps)[:length]


def _is_minimal_word(w, period: int, bound: ExponentBound) -> bool:
    """Minimality of a candidate of exact target length whose root is
    already known to be free."""
    if minimal_period(w) != period:
        return False
    if bound.value < 2:
        # below squares a non-minimal candidate always contains a
        # violating factor shorter than the period itself
        return is_free(w, bound, max_factor=period - 1) if period > 1 else True
    return is_free(w[1:], bound) and is_free(w[:-1], bound)


def _root_dfs(
    k: int,
    bound: ExponentBound,
    targets: set,
    canonical: bool,
    budget: Optional[list] = None,
) -> Iterator[tuple]:
    """Depth-first scan of bound-free words, yielding (root, period)
    pairs at every target depth.

    Roots of minimal violating words are free, so the scan is complete.
    ``canonical`` restricts branching to the letter-canonical orbit
    representatives (first occurrences in increasing order).  ``budget``
    is a single-element list counting visited roots, decremented in
    place; hitting zero raises RuntimeError.
    """
    if not targets:
        return
    p_max = max(targets)
    word: list = []

    def options() -> range:
        if not canonical:
            return range(k)
        used = 1 + max(word) if word else 0
        return range(min(used + 1, k))

    stack: list = [iter(options())]
    while stack:
        it = stack[-1]
        advanced = False
        for x in it:
            word.append(x)
            if _suffixes_stay_free(word, bound):
                if budget is not None:
                    budget[0] -= 1
                    if budget[0] < 0:
                        raise _BudgetExhausted("root budget exhausted")
                if len(word) in targets:
                    yield tuple(word), len(word)
                if len(word) < p_max:
                    stack.append(iter(options()))
                    advanced = True
                    break
            word.pop()
        if advanced:
            continue
        stack.pop()
        if word:
            word.pop()


def _orbit_size(word, k: int) -> int:
    used = 1 + max(word) if word else 0
    size = 1
    for i in range(used):
        size *= k - i
    return size


def _expand_orbit(word, k: int) -> Iterator[tuple]:
    used = 1 + max(word) if word else 0
    for perm in itertools.permutations(range(k), used):
        yield tuple(perm[x] for x in word)


def minimal_powers(
    k: int,
    bound: ExponentBound,
    cap: int,
    mode: str = "period",
    canonical: bool = False,
) -> list:
    """All minimal bound-violating words with period (or excess) up to
    ``cap``, sorted by period then word.

    A minimal violating word of period p has exactly the target length
    for p, so generation walks the free roots of each target period and
    extends them periodically.  With ``canonical`` only orbit
    representatives under letter permutation are produced.
    """
    if k < 1:
        raise ValueError("alphabet must have at least 1 letter")
    periods = _target_periods(bound, cap, mode)
    out = []
    targets = set(periods)
    for root, p in _root_dfs(k, bound, targets, canonical):
        w = _extend_periodically(root, _target_length(bound, p))
        if _is_minimal_word(w, p, bound):
            out.append(MinimalPower(p, w, Fraction(len(w), p)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# letter-canonical quotient automaton

_FRESH = -1


class _QuotientTrie:
    """Trie of letter-canonical forbidden words with relabeling-aware
    failure links.

    A full forbidden-prefix automaton is stable under letter
    permutations; its orbits are the canonical prefixes stored here.
    ``fsig[u]`` translates the letters of u's word into the frame of
    ``fail[u]``'s word (the canonical form of the longest proper suffix
    that is again a canonical prefix); letters that do not survive into
    the suffix map to the fresh marker.  Following a failure chain while
    composing these translations replays exactly what the full automaton
    does on every member of the orbit at once.
    """

    __slots__ = ("children", "terminal", "nletters", "fail", "fsig", "order")

    def __init__(self, words: Iterable[tuple]):
        self.children: list[dict] = [dict()]
        self.terminal: list[bool] = [False]
        self.nletters: list[int] = [0]
        self.fail: list[int] = [0]
        self.fsig: list[tuple] = [()]
        for w in words:
            self._insert(w)
        self.order = self._link()

    def _insert(self, word: tuple) -> None:
        node = 0
        for x in word:
            nl = self.nletters[node]
            if x > nl:
                raise ValueError("word is not letter-canonical")
            nxt = self.children[node].get(x)
            if nxt is None:
                nxt = len(self.children)
                self.children.append(dict())
                self.terminal.append(False)
                self.nletters.append(nl + 1 if x == nl else nl)
                self.fail.append(0)
                self.fsig.append(())
                self.children[node][x] = nxt
            node = nxt
        self.terminal[node] = True

    def _link(self) -> list:
        order = [0]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            for x in sorted(self.children[u]):
                c = self.children[u][x]
                if not self.terminal[c]:
                    order.append(c)
                if u == 0:
                    self.fail[c] = 0
                    self.fsig[c] = (_FRESH,) * self.nletters[c]
                    continue
                nd = self.fail[u]
                tr = list(self.fsig[u])
                y = tr[x] if x < self.nletters[u] else _FRESH
                while True:
                    key = y if y != _FRESH else self.nletters[nd]
                    t = self.children[nd].get(key)
                    if t is not None:
                        if self.terminal[t]:
                            raise AssertionError(
                                "failure chain hit a forbidden word; input set "
                                "was not antifactorial"
                            )
                        if x < self.nletters[u]:
                            tr[x] = key
                        else:
                            tr.append(key)
                        self.fail[c] = t
                        self.fsig[c] = tuple(tr)
                        break
                    if nd == 0:
                        self.fail[c] = 0
                        self.fsig[c] = (_FRESH,) * self.nletters[c]
                        break
                    sig = self.fsig[nd]
                    tr = [sig[v] if v != _FRESH else _FRESH for v in tr]
                    y = sig[y] if y != _FRESH else _FRESH
                    nd = self.fail[nd]
        return order

    def goto(self, u: int, x: int):
        """Target of reading frame-letter x (possibly the fresh slot) at
        state u, or None when the move is forbidden."""
        nd, y = u, (x if x < self.nletters[u] else _FRESH)
        while True:
            key = y if y != _FRESH else self.nletters[nd]
            t = self.children[nd].get(key)
            if t is not None:
                return None if self.terminal[t] else t
            if nd == 0:
                return 0
            sig = self.fsig[nd]
            y = sig[y] if y != _FRESH else _FRESH
            nd = self.fail[nd]


def _quotient_graph(k: int, canonical_words: Iterable[tuple]):
    """Weighted adjacency of the letter-permutation quotient of the
    forbidden-prefix automaton, plus the state count.

    State 0 is the root.  An existing-letter move has weight 1, the
    fresh-letter move carries the number of unused concrete letters.
    Weighted walk counts from the root equal the word counts of the full
    language, so index and polynomial structure are preserved.
    """
    trie = _QuotientTrie(canonical_words)
    state_of = {node: i for i, node in enumerate(trie.order)}
    adjacency: list[dict] = [dict() for _ in trie.order]
    for node, q in state_of.items():
        nl = trie.nletters[node]
        for x in range(min(nl + 1, k)):
            t = trie.goto(node, x)
            if t is None:
                continue
            weight = 1 if x < nl else k - nl
            tq = state_of[t]
            adjacency[q][tq] = adjacency[q].get(tq, 0) + weight
    return adjacency, len(adjacency)


def _quotient_counts(adjacency, n: int) -> list:
    """Weighted walk counts from the root for lengths 0..n."""
    counts = [0] * len(adjacency)
    counts[0] = 1
    out = [1]
    for _ in range(n):
        nxt = [0] * len(adjacency)
        for q, c in enumerate(counts):
            if c:
                for t, w in adjacency[q].items():
                    nxt[t] += c * w
        counts = nxt
        out.append(sum(counts))
    return out


# ---------------------------------------------------------------------------
# the bounds pipeline


@dataclass(frozen=True)
class PowerFreeBounds:
    """Certified two-sided growth-rate information for one power-free
    language approximation."""

    k: int
    bound: ExponentBound
    mode: str
    cap: int
    upper: IndexInterval
    lower: Optional[Fraction]
    delta: Fraction
    antidictionary_size: int
    automaton_states: int
    unique_component: Optional[bool]
    lower_note: str = ""

    def to_json_text(self) -> str:
        doc = {
            "k": self.k,
            "beta": str(self.bound),
            "mode": self.mode,
            "cap": self.cap,
            "upper": {
                "lo": decimal_lower(self.upper.lo),
                "hi": decimal_upper(self.upper.hi),
            },
            "lower": decimal_lower(self.lower) if self.lower is not None else None,
            "delta": str(self.delta),
            "antidictionary_size": self.antidictionary_size,
            "automaton_states": self.automaton_states,
            "unique_component": self.unique_component,
            "lower_note": self.lower_note,
        }
        return json.dumps(doc, indent=2)

    def to_text(self) -> str:
        lines = [
            f"language     L({self.k}, {self.bound})",
            f"mode         {self.mode} cap {self.cap}",
            f"forbidden    {self.antidictionary_size} words",
            f"states       {self.automaton_states}",
            f"upper        [{decimal_lower(self.upper.lo)}, {decimal_upper(self.upper.hi)}]",
        ]
        if self.lower is not None:
            lines.append(f"lower        {decimal_lower(self.lower)}")
        else:
            lines.append(f"lower        unavailable ({self.lower_note})")
        return "\n".join(lines) + "\n"


def approximation_bounds(
    k: int,
    bound: ExponentBound,
    cap: int,
    mode: str = "period",
    delta=Fraction(1, 10**6),
    symmetry: bool = True,
    with_lower: bool = True,
) -> PowerFreeBounds:
    """Certified upper and (when possible) lower bounds for the growth
    rate of L(k, bound) from the cap-limited regular approximation.

    The upper interval encloses the approximation's growth rate, which
    dominates the language's.  The lower bound additionally needs
    bound >= 2, period mode, and a unique cycle-carrying strongly
    connected component in the full approximation automaton; when any of
    these fails the lower bound is omitted with a note.  Raises
    FiniteApproximationError when the approximation itself is finite.
    """
    dfr = _as_fraction(delta)
    if dfr <= 0:
        raise ValueError("delta must be positive")
    canon = minimal_powers(k, bound, cap, mode, canonical=True)
    canon_words = [mp.word for mp in canon]
    ad_size = sum(_orbit_size(w, k) for w in canon_words)

    full_dfa = None
    if symmetry:
        adjacency, states = _quotient_graph(k, canon_words)
    else:
        full_dfa = _full_automaton(k, canon_words)
        adjacency = _dfa_adjacency(full_dfa)
        states = full_dfa.state_count

    upper = digraph_index(adjacency, dfr)
    if upper.hi == 0:
        raise FiniteApproximationError(
            f"the cap-{cap} approximation of L({k}, {bound}) is finite"
        )

    lower = None
    unique = None
    note = ""
    if not with_lower:
        note = "not requested"
    elif bound.value < 2:
        note = "lower bound needs beta >= 2"
    elif mode != "period":
        note = "lower bound needs a period-capped antidictionary"
    else:
        if full_dfa is None:
            full_dfa = _full_automaton(k, canon_words)
        unique = len(scc(full_dfa).nontrivial) == 1
        if not unique:
            note = "automaton has several cycle components"
        else:
            try:
                lower = lower_bound(upper.lo, cap)
            except NoLowerBoundError as exc:
                note = str(exc)
    return PowerFreeBounds(
        k, bound, mode, cap, upper, lower, dfr, ad_size, states, unique, note
    )


def _full_automaton(k: int, canon_words) -> Dfa:
    full_words = [w for cw in canon_words for w in _expand_orbit(cw, k)]
    return fad_automaton(Antidictionary(k, full_words))


def lower_bound(upper_lo, m: int) -> Fraction:
    """Largest g with  g + 1/(g^(m-1) * (g-1)) <= upper_lo, to 1e-12.

    m is the period cap of the approximation.  For a period-capped
    approximation with a unique cycle component and bound >= 2 every
    such g is a growth-rate lower bound for the power-free language
    itself.  Raises NoLowerBoundError when the inequality has no
    solution above 1.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    g_target = _as_fraction(upper_lo)
    # round the target down to a short fraction; only makes the
    # inequality harder, so the result stays certified
    grid = 10**15
    target = Fraction((g_target.numerator * grid) // g_target.denominator, grid)
    if target <= 1:
        raise NoLowerBoundError("upper bound does not exceed 1")

    def f(g: Fraction) -> Fraction:
        return g + Fraction(1, 1) / (g ** (m - 1) * (g - 1))

    # the function is strictly convex on (1, target]: bracket its
    # minimum with a dyadic quarter-point search
    lo = 1 + (target - 1) / (1 << 20)
    hi = target
    for _ in range(80):
        if hi - lo <= Fraction(1, 10**10):
            break
        mid = (lo + hi) / 2
        quarter = (mid + hi) / 2
        if f(mid) <= f(quarter):
            hi = quarter
        else:
            lo = mid
    candidates = [lo, (lo + hi) / 2, hi]
    feasible = None
    for g in candidates:
        if 1 < g <= target and f(g) <= target:
            feasible = g
    if feasible is None:
        raise NoLowerBoundError(
            "no solution: the penalty term exceeds the upper bound everywhere"
        )
    left, right = feasible, target
    while right - left > Fraction(1, 10**12):
        mid = (left + right) / 2
        if f(mid) <= target:
            left = mid
        else:
            right = mid
    return left


def asymptotic_formula(k: int, bound: ExponentBound) -> Fraction:
    """Large-alphabet growth-rate expansion for L(k, bound), exact in k.

    Defined for bound >= 2.  The expansions for squares and
    squares-plus are special; above that the shape depends only on
    which half-integer window the bound falls in.  Accuracy improves
    with k; for k around 10 the worst branch is within a few 1e-3.
    """
    if k < 2:
        raise ValueError("needs at least 2 letters")
    b, plus = bound.value, bound.plus
    if b < 2:
        raise ValueError("no closed expansion below exponent 2")
    if b == 2:
        if plus:
            return (
                Fraction(k)
                - Fraction(1, k)
                - Fraction(1, k**3)
                - Fraction(1, k**4)
            )
        if k < 3:
            raise ValueError("square expansion needs at least 3 letters")
        return Fraction(k - 1) - Fraction(1, k - 1) - Fraction(1, (k - 1) ** 3)
    if b.denominator == 1 and not plus:
        n = int(b) - 1
    else:
        n = int(b)
    half = Fraction(2 * n + 1, 2)
    in_lower_window = b < half or (b == half and not plus)
    base = Fraction(k) - Fraction(1, k ** (n - 1)) + Fraction(1, k**n)
    if in_lower_window:
        return base - Fraction(1, k ** (2 * n - 2))
    return base
