"""Automaton core: text format, trimming, components, walk bounds."""

import itertools
import random

import pytest

import builders
from wordgrowth.automaton import (
    Dfa,
    DfaFormatError,
    cycle_intersection_bound,
    empty_dfa,
    format_dfa,
    imprimitivity,
    parse_dfa,
    scc,
    tarjan_components,
    trim,
)

PHI_TEXT = """\
# factors avoiding aaa and bbb
dfa 5 2 0
accept 0 1 2 3 4
0 0 1
0 1 3
1 0 2
1 1 3
2 1 3
3 0 1
3 1 4
4 0 1
"""


def all_words(k, n):
    return itertools.product(range(k), repeat=n)


def accepted_set(dfa, max_len):
    out = set()
    for n in range(max_len + 1):
        for w in all_words(dfa.alphabet_size, n):
            if dfa.accepts(w):
                out.add(w)
    return out


# ---------------------------------------------------------------------------
# construction and the text format


def test_dfa_validates_construction():
    with pytest.raises(ValueError):
        Dfa(0, [], None, [])
    with pytest.raises(ValueError):
        Dfa(2, [{0: 0}], 1, [0])
    with pytest.raises(ValueError):
        Dfa(2, [{0: 1}], 0, [0])
    with pytest.raises(ValueError):
        Dfa(2, [{5: 0}], 0, [0])
    with pytest.raises(ValueError):
        Dfa(2, [{0: 0}], 0, [3])
    with pytest.raises(ValueError):
        Dfa(2, [], 0, [])


def test_empty_dfa():
    d = empty_dfa(2)
    assert d.state_count == 0
    assert d.initial is None
    assert not d.accepts(())
    assert trim(d).state_count == 0


def test_parse_phi_text():
    d = parse_dfa(PHI_TEXT)
    assert d.state_count == 5
    assert d.alphabet_size == 2
    assert d.accepting == frozenset(range(5))
    assert d.accepts((0, 0)) and not d.accepts((0, 0, 0))
    assert d.accepts((1, 1)) and not d.accepts((1, 1, 1))


def test_format_roundtrip_fixed():
    for d in [
        parse_dfa(PHI_TEXT),
        builders.two_loop_dfa(),
        builders.chain_dfa(3),
        builders.full_dfa(3),
    ]:
        assert parse_dfa(format_dfa(d)) == d


def test_format_roundtrip_random(dfa_corpus):
    for d in dfa_corpus:
        assert parse_dfa(format_dfa(d)) == d


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("nonsense 1 2 3", 1),
        ("dfa 2 2", 1),
        ("dfa 2 2 5", 1),
        ("dfa x 2 0", 1),
        ("dfa 2 0 0", 1),
        ("# comment\ndfa 2 2 0\naccept 7", 3),
        ("dfa 2 2 0\naccept q", 2),
        ("dfa 2 2 0\n0 0", 2),
        ("dfa 2 2 0\n\n0 0 5", 3),
        ("dfa 2 2 0\n0 4 1", 2),
        ("dfa 2 2 0\n5 0 1", 2),
        ("dfa 2 2 0\n0 0 1\n0 0 1", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DfaFormatError) as err:
        parse_dfa(text)
    assert err.value.line_no == line
    assert f"line {line}:" in str(err.value)


def test_parse_ignores_comments_and_blanks():
    d = parse_dfa("\n# x\ndfa 1 1 0  # header\naccept 0\n\n0 0 0 # loop\n")
    assert d.state_count == 1 and d.accepts((0, 0, 0))


# ---------------------------------------------------------------------------
# trimming


def test_trim_drops_unreachable_and_dead():
    # state 2 unreachable, state 3 cannot reach an accepting state
    d = Dfa(2, [{0: 1, 1: 3}, {}, {0: 0}, {0: 3}], 0, [1])
    t = trim(d)
    assert t.state_count == 2
    assert accepted_set(t, 4) == accepted_set(d, 4) == {(0,)}


def test_trim_no_accepting_gives_empty():
    d = Dfa(2, [{0: 0}], 0, [])
    assert trim(d).state_count == 0


def test_trim_idempotent_and_language_preserving(dfa_corpus):
    for d in dfa_corpus:
        t = trim(d)
        assert trim(t) == t
        assert accepted_set(t, 6) == accepted_set(d, 6)


def test_trim_keeps_all_states_of_consistent_automata():
    d = builders.phi_dfa()
    assert trim(d) == d


# ---------------------------------------------------------------------------
# strongly connected components


def test_tarjan_known_graph():
    # 0 <-> 1, 2 alone with a loop, 3 trivial sink
    comps = tarjan_components([[1], [0, 2], [2, 3], []])
    as_sets = sorted(map(frozenset, comps), key=min)
    assert as_sets == [frozenset({0, 1}), frozenset({2}), frozenset({3})]


def test_tarjan_reports_reverse_topological_order():
    rng = random.Random(7)
    for _ in range(50):
        rows = builders.random_digraph(rng, max_vertices=7)
        succ = [list(r.keys()) for r in rows]
        comps = tarjan_components(succ)
        position = {}
        for i, comp in enumerate(comps):
            for v in comp:
                position[v] = i
        # every edge leaving a component goes to one already emitted
        for u in range(len(succ)):
            for v in succ[u]:
                if position[u] != position[v]:
                    assert position[v] < position[u]


def test_scc_partition_and_nontrivial(dfa_corpus):
    for d in dfa_corpus:
        dec = scc(d)
        seen = set()
        for i, comp in enumerate(dec.components):
            assert comp, "empty component"
            for q in comp:
                assert dec.component_of[q] == i
                assert q not in seen
                seen.add(q)
        assert seen == set(range(d.state_count))
        for i, comp in enumerate(dec.components):
            internal = any(
                t in comp for q in comp for t in d.transitions[q].values()
            )
            assert (i in dec.nontrivial) == internal
        for a, b in dec.condensation_edges:
            assert a != b


def test_scc_condensation_acyclic(dfa_corpus):
    for d in dfa_corpus:
        dec = scc(d)
        m = len(dec.components)
        succ = [set() for _ in range(m)]
        for a, b in dec.condensation_edges:
            succ[a].add(b)
        color = [0] * m

        def dfs(c):
            color[c] = 1
            for t in succ[c]:
                assert color[t] != 1, "cycle in condensation"
                if color[t] == 0:
                    dfs(t)
            color[c] = 2

        for c in range(m):
            if color[c] == 0:
                dfs(c)


# ---------------------------------------------------------------------------
# imprimitivity


@pytest.mark.parametrize("length", [1, 2, 3, 5, 8, 12])
def test_imprimitivity_of_pure_cycle(length):
    d = builders.cycle_dfa(length)
    assert imprimitivity(d, range(length)) == length


def test_imprimitivity_gcd_of_cycle_lengths():
    # 6-cycle plus a chord closing a 4-cycle: gcd(6, 4) = 2
    rows = [{0: (i + 1) % 6} for i in range(6)]
    rows[3][1] = 0
    d = Dfa(2, rows, 0, range(6))
    assert imprimitivity(d, range(6)) == 2
    # adding a self-loop forces gcd 1
    rows[2][1] = 2
    d = Dfa(2, rows, 0, range(6))
    assert imprimitivity(d, range(6)) == 1


def test_imprimitivity_random_cycles():
    rng = random.Random(11)
    for _ in range(100):
        length = rng.randint(1, 20)
        d = builders.cycle_dfa(length)
        assert imprimitivity(d, range(length)) == length


def test_imprimitivity_trivial_component_raises():
    d = builders.chain_dfa(2)
    with pytest.raises(ValueError):
        imprimitivity(d, [0])


def test_phi_component_is_primitive():
    d = builders.phi_dfa()
    dec = scc(d)
    (c,) = dec.nontrivial
    assert imprimitivity(d, dec.components[c]) == 1


# ---------------------------------------------------------------------------
# walks over the condensation


def brute_best_path(dfa, eligible):
    """Maximum number of eligible components on one condensation path."""
    dec = scc(dfa)
    m = len(dec.components)
    succ = [set() for _ in range(m)]
    for a, b in dec.condensation_edges:
        succ[a].add(b)
    elig = set(eligible)

    def walk(c):
        here = 1 if c in elig else 0
        return here + max((walk(t) for t in succ[c]), default=0)

    return walk(dec.component_of[dfa.initial]) if dfa.state_count else 0


def test_cycle_intersection_bound_fixed():
    assert cycle_intersection_bound(empty_dfa(2), set()) == 0
    two = builders.two_loop_dfa()
    dec = scc(two)
    assert cycle_intersection_bound(two, dec.nontrivial, dec) == 2
    assert cycle_intersection_bound(two, set(), dec) == 0
    chained = builders.chained_phi_dfa()
    dec = scc(chained)
    assert cycle_intersection_bound(chained, dec.nontrivial, dec) == 2


def test_cycle_intersection_bound_matches_brute(dfa_corpus):
    for d in dfa_corpus:
        dec = scc(d)
        for eligible in (dec.nontrivial, set(), set(range(len(dec.components))))[:3]:
            assert cycle_intersection_bound(d, eligible, dec) == brute_best_path(
                d, eligible
            )
