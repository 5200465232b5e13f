"""Antidictionaries and the automata of the languages they define.

An antidictionary is an antifactorial set of words: none is a factor of
another.  The language it defines is every word containing none of them.
Such a language is factorial (closed under factors) and is recognized by
an automaton whose states are the proper prefixes of the forbidden
words, built here with the classic failure-link construction.

The module also carries a few concrete language families used to
exercise the growth machinery: truncated antidictionaries of the
Thue-Morse word, right- and two-sided extendable parts, and a language
of staircase-shaped power products whose counting function sits strictly
between polynomial and exponential.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from wordgrowth.automaton import Dfa, DfaFormatError, empty_dfa, scc, trim

__all__ = [
    "Antidictionary",
    "extendable_part",
    "fad_automaton",
    "format_antidictionary",
    "intermediate_count",
    "intermediate_member",
    "parse_antidictionary",
    "parse_word",
    "tm_antidictionary",
    "word_to_str",
]

Word = tuple


def parse_word(s: str) -> Word:
    """ASCII word over a..z into letter indices; 'eps' is the empty word."""
    if s == "eps":
        return ()
    out = []
    for ch in s:
        x = ord(ch) - ord("a")
        if not 0 <= x < 26:
            raise ValueError(f"letter {ch!r} outside a..z")
        out.append(x)
    return tuple(out)


def word_to_str(w: Iterable[int]) -> str:
    w = tuple(w)
    if not w:
        return "eps"
    if any(not 0 <= x < 26 for x in w):
        return " ".join(str(x) for x in w)
    return "".join(chr(ord("a") + x) for x in w)


class _Trie:
    """Word trie with failure links; shared by validation and automata."""

    __slots__ = ("children", "terminal", "fail", "term_link", "depth")

    def __init__(self):
        self.children: list[dict] = [dict()]
        self.terminal: list[bool] = [False]
        self.fail: list[int] = [0]
        self.term_link: list[int] = [-1]
        self.depth: list[int] = [0]

    def insert(self, word: Word) -> None:
        node = 0
        for x in word:
            nxt = self.children[node].get(x)
            if nxt is None:
                nxt = len(self.children)
                self.children.append(dict())
                self.terminal.append(False)
                self.fail.append(0)
                self.term_link.append(-1)
                self.depth.append(self.depth[node] + 1)
                self.children[node][x] = nxt
            node = nxt
        self.terminal[node] = True

    def build_links(self) -> list:
        """Breadth-first failure and nearest-terminal links; returns the
        BFS order."""
        order = [0]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            for x in sorted(self.children[u]):
                v = self.children[u][x]
                if u == 0:
                    f = 0
                else:
                    f = self.fail[u]
                    while f and x not in self.children[f]:
                        f = self.fail[f]
                    f = self.children[f].get(x, 0)
                    if f == v:
                        f = 0
                self.fail[v] = f
                self.term_link[v] = f if self.terminal[f] else self.term_link[f]
                order.append(v)
        return order

    def scan_step(self, node: int, x: int) -> int:
        while node and x not in self.children[node]:
            node = self.fail[node]
        return self.children[node].get(x, 0)


class Antidictionary:
    """A validated antifactorial word set over an indexed alphabet.

    Construction fails if any word is a factor of another (duplicates
    are collapsed first).  The empty word is only allowed alone, where
    it forbids everything.
    """

    __slots__ = ("alphabet_size", "words")

    def __init__(self, alphabet_size: int, words: Iterable[Word]):
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be at least 1")
        normalized = sorted({tuple(w) for w in words}, key=lambda w: (len(w), w))
        for w in normalized:
            for x in w:
                if not 0 <= x < alphabet_size:
                    raise ValueError(f"letter {x} out of range in {word_to_str(w)}")
        if () in normalized and len(normalized) > 1:
            raise ValueError("empty word subsumes every other forbidden word")
        self.alphabet_size = alphabet_size
        self.words = tuple(normalized)
        self._check_antifactorial()

    def _check_antifactorial(self) -> None:
        words = [w for w in self.words if w]
        if not words:
            return
        trie = _Trie()
        terminal_of = {}
        for w in words:
            trie.insert(w)
        for w in words:
            node = 0
            for x in w:
                node = trie.children[node][x]
            terminal_of[w] = node
        trie.build_links()
        for w in words:
            node = 0
            for i, x in enumerate(w):
                node = trie.scan_step(node, x)
                hit = node if trie.terminal[node] else trie.term_link[node]
                if i == len(w) - 1 and hit == terminal_of[w]:
                    # w's own match is fine; a shorter suffix match is not
                    hit = trie.term_link[hit]
                if hit != -1:
                    raise ValueError(
                        f"not antifactorial: a forbidden word occurs inside {word_to_str(w)}"
                    )

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __eq__(self, other):
        if not isinstance(other, Antidictionary):
            return NotImplemented
        return self.alphabet_size == other.alphabet_size and self.words == other.words

    def __repr__(self):
        return f"Antidictionary(k={self.alphabet_size}, words={len(self.words)})"


def fad_automaton(ad: Antidictionary) -> Dfa:
    """Automaton of the factorial language avoiding ``ad``.

    States are the proper prefixes of the forbidden words; reading a
    letter follows the trie when possible and otherwise the longest
    matching suffix.  A move whose longest matching suffix is a
    forbidden word is dropped, so the automaton is partial.  All states
    accept.
    """
    k = ad.alphabet_size
    if () in ad.words:
        return empty_dfa(k)
    trie = _Trie()
    for w in ad.words:
        trie.insert(w)
    order = trie.build_links()
    state_of = {}
    for node in order:
        if not trie.terminal[node]:
            state_of[node] = len(state_of)
    n = len(state_of)
    rows: list[dict] = [dict() for _ in range(n)]
    for node, q in state_of.items():
        for x in range(k):
            t = trie.scan_step(node, x)
            if not trie.terminal[t]:
                rows[q][x] = state_of[t]
    return trim(Dfa(k, rows, 0, range(n)))


# ---------------------------------------------------------------------------
# Thue-Morse


def _theta(word: Word) -> Word:
    out = []
    for x in word:
        out.extend((0, 1) if x == 0 else (1, 0))
    return tuple(out)


def _theta_pow(word: Word, j: int) -> Word:
    for _ in range(j):
        word = _theta(word)
    return word


def tm_antidictionary(i: int) -> Antidictionary:
    """Antidictionary of the Thue-Morse factor language, truncated at
    level i.

    Level -1 forbids only the two letter cubes.  Each later level j
    contributes four forbidden words of length 3 * 2^j + 2, and the
    avoiding languages shrink toward the Thue-Morse factors as i grows.
    """
    if i < -1:
        raise ValueError("level must be at least -1")
    words = [(0, 0, 0), (1, 1, 1)]
    for j in range(i + 1):
        u = _theta_pow((0, 1, 0), j)
        v = _theta_pow((1, 0, 1), j)
        c = _theta_pow((0,), j)[-1]
        d = _theta_pow((1,), j)[-1]
        words.append((c,) + u + (0,))
        words.append((d,) + v + (1,))
        words.append((c,) + v + (0,))
        words.append((d,) + u + (1,))
    return Antidictionary(2, words)


# ---------------------------------------------------------------------------
# extendable parts


def extendable_part(dfa: Dfa, side: str = "right") -> Dfa:
    """Automaton of the right- or two-sided-extendable words.

    ``right`` keeps the words that admit arbitrarily long right
    extensions inside the language: runs must end in a state from which
    a cycle is reachable.  ``two_sided`` (alias ``two``) keeps the
    words w such that u w v stays in the language for some arbitrarily
    long u and v: w must be readable from a state reachable out of a
    cycle, ending in a state that reaches a cycle.  Input states must
    all accept (the operation is meant for factor-closed languages);
    raises otherwise.
    """
    if side == "two":
        side = "two_sided"
    if side not in ("right", "two_sided"):
        raise ValueError("side must be 'right' or 'two_sided'")
    d = trim(dfa)
    if d.state_count == 0:
        return d
    if any(q not in d.accepting for q in range(d.state_count)):
        raise ValueError("every state must accept")
    dec = scc(d)
    m = len(dec.components)
    succ: list[set] = [set() for _ in range(m)]
    for a, b in dec.condensation_edges:
        succ[a].add(b)
    reaches_cycle = [False] * m
    for c in range(m - 1, -1, -1):
        reaches_cycle[c] = c in dec.nontrivial or any(reaches_cycle[t] for t in succ[c])
    ext = {q for q in range(d.state_count) if reaches_cycle[dec.component_of[q]]}
    if side == "right":
        if d.initial not in ext:
            return empty_dfa(d.alphabet_size)
        rows = []
        states = sorted(ext)
        index = {q: i for i, q in enumerate(states)}
        for q in states:
            rows.append({x: index[t] for x, t in d.transitions[q].items() if t in ext})
        return trim(Dfa(d.alphabet_size, rows, index[d.initial], range(len(states))))

    # two-sided: left extendability means being reachable from a cycle
    from_cycle = [c in dec.nontrivial for c in range(m)]
    for a, b in sorted(dec.condensation_edges):
        from_cycle[b] = from_cycle[b] or from_cycle[a]
    entry = {q for q in range(d.state_count) if from_cycle[dec.component_of[q]]}
    if not entry:
        return empty_dfa(d.alphabet_size)
    # subset construction: start from every entry state at once, accept
    # when some thread sits on a state that still reaches a cycle
    start = frozenset(entry)
    ids = {start: 0}
    rows = [dict()]
    accepting = set()
    queue = [start]
    while queue:
        s = queue.pop()
        q = ids[s]
        if s & ext:
            accepting.add(q)
        for x in range(d.alphabet_size):
            t = frozenset(
                d.transitions[p][x] for p in s if x in d.transitions[p]
            )
            if not t:
                continue
            if t not in ids:
                ids[t] = len(rows)
                rows.append(dict())
                queue.append(t)
            rows[q][x] = ids[t]
    return trim(Dfa(d.alphabet_size, rows, 0, accepting))


# ---------------------------------------------------------------------------
# staircase power products


def intermediate_member(word: Sequence[int], alphabet_size: int) -> bool:
    """Membership in the staircase language over k letters.

    A member factors into maximal letter blocks whose letters step
    cyclically (x, x+1, x+2, ... mod k) and whose block lengths are
    nondecreasing except possibly for the final block.  The counting
    function of this language grows faster than any polynomial and
    slower than any exponential.
    """
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be at least 1")
    w = tuple(word)
    for x in w:
        if not 0 <= x < alphabet_size:
            raise ValueError(f"letter {x} out of range")
    if not w:
        return True
    blocks = []
    run_letter, run_len = w[0], 1
    for x in w[1:]:
        if x == run_letter:
            run_len += 1
        else:
            blocks.append((run_letter, run_len))
            run_letter, run_len = x, 1
    blocks.append((run_letter, run_len))
    for (a, _), (b, _) in zip(blocks, blocks[1:]):
        if b != (a + 1) % alphabet_size:
            return False
    lens = [m for _, m in blocks]
    return all(lens[i] <= lens[i + 1] for i in range(len(lens) - 2))


@lru_cache(maxsize=None)
def _staircase_tails(remaining: int, min_block: int) -> int:
    # one way to stop here (single free final block), plus every way to
    # lay a constrained block of each admissible size first
    total = 1
    for size in range(min_block, remaining):
        total += _staircase_tails(remaining - size, size)
    return total


def intermediate_count(n: int, alphabet_size: int) -> int:
    """Number of staircase words of length exactly n, exact integer."""
    if alphabet_size < 1:
        raise ValueError("alphabet_size must be at least 1")
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return 1
    return alphabet_size * _staircase_tails(n, 1)


# ---------------------------------------------------------------------------
# file format


def parse_antidictionary(text: str) -> Antidictionary:
    """Parse the antidictionary text format.

    Header ``ad <alphabet>``, then one word per line: either ASCII
    letters a..z, the token ``eps``, or whitespace-separated letter
    indices.  ``#`` starts a comment.
    """
    k = None
    words = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if k is None:
            if fields[0] != "ad" or len(fields) != 2:
                raise DfaFormatError(line_no, "expected header 'ad <alphabet>'")
            try:
                k = int(fields[1])
            except ValueError:
                raise DfaFormatError(line_no, "alphabet size must be an integer") from None
            if k < 1:
                raise DfaFormatError(line_no, "alphabet size must be at least 1")
            continue
        if all(f.lstrip("-").isdigit() for f in fields):
            try:
                words.append(tuple(int(f) for f in fields))
            except ValueError:
                raise DfaFormatError(line_no, "bad letter index") from None
        elif len(fields) == 1:
            try:
                words.append(parse_word(fields[0]))
            except ValueError as exc:
                raise DfaFormatError(line_no, str(exc)) from None
        else:
            raise DfaFormatError(line_no, "one word per line")
    if k is None:
        raise DfaFormatError(1, "empty input, expected an 'ad' header")
    try:
        return Antidictionary(k, words)
    except ValueError as exc:
        raise DfaFormatError(1, str(exc)) from None


def format_antidictionary(ad: Antidictionary) -> str:
    lines = [f"ad {ad.alphabet_size}"]
    for w in ad.words:
        lines.append(word_to_str(w) if ad.alphabet_size <= 26 else " ".join(map(str, w)))
    return "\n".join(lines) + "\n"
