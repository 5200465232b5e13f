"""Growth analysis: complexity classes, certified rate intervals,
polynomial indices, per-residue asymptotics.

The numeric core is an interval engine for the index (spectral radius)
of a nonnegative integer matrix.  It rests on one fact: for any strictly
positive vector v,

    min_i (Av)_i / v_i  <=  index(A)  <=  max_i (Av)_i / v_i.

Any positive v gives rigorous two-sided bounds; a good v makes them
tight.  The engine finds good vectors fast in floating point and then
evaluates the bounds exactly over integers, so the emitted interval is a
certificate regardless of how the vector was produced.  On a strongly
connected component the iteration v <- (A+I)v tightens the bounds to any
requested width (the +I term makes the matrix primitive, which kills the
oscillation a periodic component would otherwise sustain).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix

from wordgrowth.automaton import (
    Dfa,
    SccDecomposition,
    cycle_intersection_bound,
    imprimitivity,
    scc,
    tarjan_components,
    trim,
)

__all__ = [
    "ComplexityClass",
    "GrowthReport",
    "IndexInterval",
    "approximate_index",
    "asymptotic_profile",
    "classify",
    "count_words",
    "decimal_lower",
    "decimal_upper",
    "digraph_index",
    "oscillation_type",
    "polynomial_index_general",
]


class IndexInterval(NamedTuple):
    """Certified enclosure of a matrix index; lo <= index <= hi."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class ComplexityClass:
    """Growth class of a language: Finite, Polynomial (with the degree
    of the dominating polynomial), or Exponential."""

    tag: str
    degree: Optional[int] = None

    def __str__(self):
        if self.tag == "Polynomial":
            return f"Polynomial(degree={self.degree})"
        return self.tag


def _as_fraction(delta) -> Fraction:
    if isinstance(delta, float):
        return Fraction(*delta.as_integer_ratio())
    return Fraction(delta)


# ---------------------------------------------------------------------------
# certified index engine


def _exact_bounds(rows, v):
    """Exact min/max of (Av)_i / v_i for a positive integer vector v.

    ``rows[i]`` lists (j, weight) pairs.  Every row is nonempty inside a
    nontrivial strongly connected component, which keeps lo >= 0 finite.
    """
    lo = hi = None
    for i, row in enumerate(rows):
        s = 0
        for j, w in row:
            s += w * v[j]
        r = Fraction(s, v[i])
        if lo is None or r < lo:
            lo = r
        if hi is None or r > hi:
            hi = r
    return lo, hi


def _float_vector(rows, n, max_iters):
    """Floating-point power iteration with (A+I); returns v or None.

    Only a convergence accelerator: nothing it returns is trusted
    without the exact pass that follows.
    """
    data, indices, indptr = [], [], [0]
    for row in rows:
        for j, w in row:
            indices.append(j)
            data.append(float(w))
        indptr.append(len(indices))
    a = csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(n, n),
    )
    v = np.ones(n)
    prev_gap = None
    for it in range(max_iters):
        v = a @ v + v
        m = v.max()
        if not np.isfinite(m) or m <= 0:
            return None
        v /= m
        if it % 32 == 31:
            ratios = (a @ v) / v
            gap = float(ratios.max() - ratios.min())
            if gap < 1e-14:
                break
            if prev_gap is not None and gap >= prev_gap * 0.999:
                break
            prev_gap = gap
    return v


def _component_interval(rows, delta: Fraction):
    """Certified index interval of one nontrivial strongly connected
    component, width at most 2*delta.

    ``rows`` is the local weighted adjacency (every row nonempty, so the
    lower bound from all-ones is already >= 1).  Strategy: float
    acceleration, integerize, certify exactly; if the certified gap is
    still too wide, continue the iteration in exact integer arithmetic
    with renormalization at doubling precision.  Successive certificates
    are intersected, which only ever tightens the answer.
    """
    n = len(rows)
    ones = [1] * n
    best_lo, best_hi = _exact_bounds(rows, ones)
    if best_hi - best_lo <= 2 * delta:
        return best_lo, best_hi

    fv = _float_vector(rows, n, max_iters=20000)
    if fv is not None:
        scale = 1 << 53
        v = [max(1, int(x * scale)) for x in fv.tolist()]
        lo, hi = _exact_bounds(rows, v)
        best_lo = max(best_lo, lo)
        best_hi = min(best_hi, hi)
        if best_hi - best_lo <= 2 * delta:
            return best_lo, best_hi
    else:
        v = list(ones)

    # Exact continuation: v <- (A+I)v over the integers, renormalized by
    # right shift so entries stay near `prec` bits.  Flooring keeps every
    # entry >= 1, so each checkpoint is still a valid certificate; if
    # truncation noise stalls progress, precision doubles.
    prec = 96
    check_every = 16
    prev_gap = best_hi - best_lo
    stall = 0
    for step in range(1, 2_000_001):
        new = []
        for i, row in enumerate(rows):
            s = v[i]
            for j, w in row:
                s += w * v[j]
            new.append(s)
        v = new
        top = max(v).bit_length()
        if top > prec:
            shift = top - prec
            v = [max(1, x >> shift) for x in v]
        if step % check_every == 0:
            lo, hi = _exact_bounds(rows, v)
            best_lo = max(best_lo, lo)
            best_hi = min(best_hi, hi)
            gap = best_hi - best_lo
            if gap <= 2 * delta:
                return best_lo, best_hi
            if gap > prev_gap * Fraction(49, 50):
                stall += 1
                if stall >= 3:
                    prec *= 2
                    stall = 0
            else:
                stall = 0
            prev_gap = gap
    raise RuntimeError("index iteration failed to converge")


def _nontrivial_component_rows(adjacency, comp):
    """Local weighted rows for a component, or None if it is trivial."""
    if len(comp) == 1:
        q = next(iter(comp))
        w = adjacency[q].get(q)
        if w is None:
            return None
        return [[(0, w)]]
    members = set(comp)
    local = {q: i for i, q in enumerate(sorted(members))}
    rows = [[] for _ in range(len(comp))]
    for q in sorted(members):
        for t in sorted(adjacency[q]):
            if t in members:
                rows[local[q]].append((local[t], adjacency[q][t]))
    return rows


def digraph_index(adjacency: Sequence[dict], delta=Fraction(1, 10**6)) -> IndexInterval:
    """Certified interval around the index of a weighted digraph.

    ``adjacency[u]`` maps targets to positive integer weights.  The index
    is the spectral radius of the weight matrix, equivalently the growth
    rate of weighted walk counts; it equals the maximum over strongly
    connected components.  A graph with no cycles has index 0.  The
    returned interval has width at most ``2*delta``.
    """
    dfr = _as_fraction(delta)
    if dfr <= 0:
        raise ValueError("delta must be positive")
    comps = tarjan_components([list(row.keys()) for row in adjacency])
    lo_all = hi_all = None
    for comp in comps:
        rows = _nontrivial_component_rows(adjacency, comp)
        if rows is None:
            continue
        if len(rows) == 1:
            lo = hi = Fraction(rows[0][0][1])
        else:
            lo, hi = _component_interval(rows, dfr)
        if lo_all is None or lo > lo_all:
            lo_all = lo
        if hi_all is None or hi > hi_all:
            hi_all = hi
    if lo_all is None:
        return IndexInterval(Fraction(0), Fraction(0))
    return IndexInterval(lo_all, hi_all)


def _dfa_adjacency(dfa: Dfa) -> list:
    """Letter-multiplicity weighted adjacency of the transition graph."""
    adj = []
    for row in dfa.transitions:
        weights: dict[int, int] = {}
        for t in row.values():
            weights[t] = weights.get(t, 0) + 1
        adj.append(weights)
    return adj


# ---------------------------------------------------------------------------
# language-level operations


def count_words(dfa: Dfa, n: int) -> int:
    """Number of accepted words of length exactly n, exact integer."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    if dfa.state_count == 0:
        return 0
    counts = [0] * dfa.state_count
    counts[dfa.initial] = 1
    for _ in range(n):
        nxt = [0] * dfa.state_count
        for q, c in enumerate(counts):
            if c:
                for t in dfa.transitions[q].values():
                    nxt[t] += c
        counts = nxt
    return sum(counts[q] for q in dfa.accepting)


def classify(dfa: Dfa) -> ComplexityClass:
    """Growth class of the language of a trimmed automaton.

    Finite when the graph is acyclic.  Exponential when some strongly
    connected component carries more internal edges (letters counted
    with multiplicity) than states, i.e. two distinct cycles share a
    state.  Otherwise every nontrivial component is a single cycle and
    the count grows polynomially; the degree is one less than the
    largest number of cycle components a single walk can visit.
    """
    dec = scc(dfa)
    if not dec.nontrivial:
        return ComplexityClass("Finite")
    edge_count = {c: 0 for c in dec.nontrivial}
    for q, row in enumerate(dfa.transitions):
        cq = dec.component_of[q]
        for t in row.values():
            if dec.component_of[t] == cq:
                edge_count[cq] += 1
    for c in dec.nontrivial:
        if edge_count[c] > len(dec.components[c]):
            return ComplexityClass("Exponential")
    degree = cycle_intersection_bound(dfa, dec.nontrivial, dec) - 1
    return ComplexityClass("Polynomial", degree)


def approximate_index(dfa: Dfa, delta=Fraction(1, 10**6)) -> IndexInterval:
    """Certified interval around the growth rate of a trimmed automaton.

    Width at most 2*delta.  A finite language reports [0, 0].  Raises on
    the empty automaton, whose rate is a matter of convention.
    """
    if dfa.state_count == 0:
        raise ValueError("growth rate of the empty automaton is undefined")
    return digraph_index(_dfa_adjacency(dfa), delta)


def _component_intervals(adjacency, comps, delta: Fraction) -> dict:
    """Certified intervals for the nontrivial components of a graph.

    Evaluated at delta and again at delta/4, intersected: both runs
    enclose the true index, so the intersection does too and is tighter.
    Keyed by component id (position in ``comps``); trivial components
    are absent.
    """
    out = {}
    for cid, comp in enumerate(comps):
        rows = _nontrivial_component_rows(adjacency, comp)
        if rows is None:
            continue
        if len(rows) == 1:
            w = Fraction(rows[0][0][1])
            out[cid] = IndexInterval(w, w)
            continue
        lo1, hi1 = _component_interval(rows, delta)
        lo2, hi2 = _component_interval(rows, delta / 4)
        out[cid] = IndexInterval(max(lo1, lo2), min(hi1, hi2))
    return out


def polynomial_index_general(dfa: Dfa, delta=Fraction(1, 10**6)) -> int:
    """Degree bound for the per-residue polynomial factors.

    For an infinite language this is the largest number of maximal-rate
    components one walk can visit, minus one: the count along the
    dominating residues grows like n^pd * rate^n.  Components whose
    certified interval cannot be separated from the best lower bound all
    count as maximal, which can only overestimate, never underestimate.
    Raises for a finite language.
    """
    dfr = _as_fraction(delta)
    if dfr <= 0:
        raise ValueError("delta must be positive")
    dec = scc(dfa)
    if not dec.nontrivial:
        raise ValueError("polynomial index undefined for a finite language")
    adjacency = _dfa_adjacency(dfa)
    intervals = _component_intervals(adjacency, dec.components, dfr)
    gr_lo = max(iv.lo for iv in intervals.values())
    maximal = {cid for cid, iv in intervals.items() if iv.hi >= gr_lo}
    return cycle_intersection_bound(dfa, maximal, dec) - 1


# ---------------------------------------------------------------------------
# per-residue asymptotics


@dataclass(frozen=True)
class ResidueAsymptotics:
    """Asymptotics of the counting function along one residue class:
    count(n) ~ poly(n) * alpha^n with deg(poly) = m, for n = residue
    (mod the report's residue_count).  alpha_hi == 0 marks a residue
    that is eventually empty."""

    residue: int
    alpha_lo: Fraction
    alpha_hi: Fraction
    m: int


@dataclass(frozen=True)
class GrowthReport:
    """Full growth profile of a regular language.

    ``gr`` bounds the global growth rate; ``pd`` is the polynomial index
    (0 for finite languages); ``residue_count`` is the eventual period r
    of the asymptotic regime and ``per_residue`` describes each class
    modulo r.  ``oscillation`` is one of NonOscillating, Oscillating,
    Wild, Indeterminate.
    """

    classification: ComplexityClass
    gr: IndexInterval
    pd: int
    residue_count: int
    per_residue: tuple
    oscillation: str
    delta: Fraction

    def to_json_text(self) -> str:
        doc = {
            "classification": {
                "tag": self.classification.tag,
                "degree": self.classification.degree,
            },
            "gr": {
                "lo": decimal_lower(self.gr.lo),
                "hi": decimal_upper(self.gr.hi),
            },
            "pd": self.pd,
            "residue_count": self.residue_count,
            "per_residue": [
                {
                    "residue": pr.residue,
                    "alpha_lo": decimal_lower(pr.alpha_lo),
                    "alpha_hi": decimal_upper(pr.alpha_hi),
                    "m": pr.m,
                }
                for pr in self.per_residue
            ],
            "oscillation": self.oscillation,
            "delta": str(self.delta),
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [
            f"class        {self.classification}",
            f"growth rate  [{decimal_lower(self.gr.lo)}, {decimal_upper(self.gr.hi)}]",
            f"poly index   {self.pd}",
            f"residues     {self.residue_count}",
        ]
        for pr in self.per_residue:
            lines.append(
                f"  n = {pr.residue} (mod {self.residue_count}): "
                f"alpha in [{decimal_lower(pr.alpha_lo)}, {decimal_upper(pr.alpha_hi)}], "
                f"poly degree {pr.m}"
            )
        lines.append(f"oscillation  {self.oscillation}")
        return "\n".join(lines) + "\n"


def _product_with_counter(dfa: Dfa, modulus: int, residue: int) -> Dfa:
    """Automaton for the length-residue slice of the language.

    States are (state, length mod modulus) pairs reachable from the
    start; accepting pairs are accepting states seen at the requested
    residue.  Trimmed before return.
    """
    if dfa.state_count == 0:
        return dfa
    n = dfa.state_count
    trans = [dict() for _ in range(n * modulus)]
    for q, row in enumerate(dfa.transitions):
        for c in range(modulus):
            src = q * modulus + c
            c2 = (c + 1) % modulus
            trans[src] = {x: t * modulus + c2 for x, t in row.items()}
    accepting = [q * modulus + residue for q in dfa.accepting]
    prod = Dfa(dfa.alphabet_size, trans, dfa.initial * modulus, accepting)
    return trim(prod)


def _reachable_product_states(dfa: Dfa, modulus: int):
    """Set of (state, counter) pairs reachable from (initial, 0)."""
    start = (dfa.initial, 0)
    seen = {start}
    queue = [start]
    while queue:
        q, c = queue.pop()
        c2 = (c + 1) % modulus
        for t in dfa.transitions[q].values():
            p = (t, c2)
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def _residue_sets(dfa: Dfa, dec: SccDecomposition, modulus: int) -> dict:
    """For each nontrivial component C, the set of length residues mod
    ``modulus`` realized by accepting walks through C, as a bitmask.

    bits[(q, c)] collects residues j such that some walk from q, entered
    with length residue c, reaches acceptance at overall residue j.
    Since ``modulus`` is a multiple of every nontrivial component's
    imprimitivity, a walk through C can be pumped by closed walks of
    length 0 mod ``modulus``, so these sets capture exactly the residues
    with unboundedly many accepting walk lengths through C.
    """
    n = dfa.state_count
    bits = [0] * (n * modulus)
    for q in dfa.accepting:
        for c in range(modulus):
            bits[q * modulus + c] |= 1 << c
    # reverse propagation to a fixpoint: bits[q,c] |= bits[t,(c+1)%m]
    rev = [[] for _ in range(n * modulus)]
    for q, row in enumerate(dfa.transitions):
        for t in row.values():
            for c in range(modulus):
                rev[t * modulus + (c + 1) % modulus].append(q * modulus + c)
    queue = [i for i in range(n * modulus) if bits[i]]
    while queue:
        i = queue.pop()
        b = bits[i]
        for j in rev[i]:
            if b | bits[j] != bits[j]:
                bits[j] |= b
                queue.append(j)
    reachable = _reachable_product_states(dfa, modulus)
    masks = {}
    for cid in dec.nontrivial:
        mask = 0
        for q in dec.components[cid]:
            for c in range(modulus):
                if (q, c) in reachable:
                    mask |= bits[q * modulus + c]
        masks[cid] = mask
    return masks


def asymptotic_profile(dfa: Dfa, delta=Fraction(1, 10**6)) -> GrowthReport:
    """Full asymptotic description of a trimmed automaton's counting
    function.

    Finds the eventual period r of the asymptotic regime and, for each
    residue class mod r, a certified growth-rate interval and polynomial
    degree.  r is the lcm of the imprimitivity of the *important*
    components: those whose accepting-walk residues are not already
    covered by components of strictly larger certified rate.
    """
    dfr = _as_fraction(delta)
    if dfr <= 0:
        raise ValueError("delta must be positive")
    if dfa.state_count == 0:
        empty = ResidueAsymptotics(0, Fraction(0), Fraction(0), 0)
        return GrowthReport(
            ComplexityClass("Finite"),
            IndexInterval(Fraction(0), Fraction(0)),
            0,
            1,
            (empty,),
            "NonOscillating",
            dfr,
        )
    cls = classify(dfa)
    gr = approximate_index(dfa, dfr)
    dec = scc(dfa)
    if not dec.nontrivial:
        finite = ResidueAsymptotics(0, Fraction(0), Fraction(0), 0)
        return GrowthReport(cls, gr, 0, 1, (finite,), "NonOscillating", dfr)

    pd = polynomial_index_general(dfa, dfr)
    periods = {c: imprimitivity(dfa, dec.components[c]) for c in dec.nontrivial}
    rho = lcm(*periods.values())
    masks = _residue_sets(dfa, dec, rho)
    adjacency = _dfa_adjacency(dfa)
    intervals = _component_intervals(adjacency, dec.components, dfr)

    important = []
    for c in dec.nontrivial:
        higher = 0
        for d in dec.nontrivial:
            if d != c and intervals[d].lo > intervals[c].hi:
                higher |= masks[d]
        if masks[c] & ~higher:
            important.append(c)
    r = lcm(*(periods[c] for c in important)) if important else 1

    per_residue = []
    for j in range(r):
        piece = _product_with_counter(dfa, r, j)
        if piece.state_count == 0:
            per_residue.append(ResidueAsymptotics(j, Fraction(0), Fraction(0), 0))
            continue
        alpha = approximate_index(piece, dfr)
        piece_cls = classify(piece)
        m = 0 if piece_cls.tag == "Finite" else polynomial_index_general(piece, dfr)
        per_residue.append(ResidueAsymptotics(j, alpha.lo, alpha.hi, m))

    report = GrowthReport(cls, gr, pd, r, tuple(per_residue), "Indeterminate", dfr)
    tag = oscillation_type(report, dfa)
    return GrowthReport(cls, gr, pd, r, tuple(per_residue), tag, dfr)


def oscillation_type(report: GrowthReport, dfa: Optional[Dfa] = None) -> str:
    """Classify how the counting function behaves across residues.

    Wild when some residues die out while others grow, or when the
    per-residue rates are pairwise separated; NonOscillating when there
    is a single residue class; Oscillating when all rates agree but the
    polynomial degrees differ.  When the certified intervals are too
    wide to decide, Indeterminate.
    """
    rs = report.per_residue
    finite = [pr for pr in rs if pr.alpha_hi == 0]
    infinite = [pr for pr in rs if pr.alpha_lo >= 1]
    if finite and infinite:
        return "Wild"
    live = [pr for pr in rs if pr.alpha_hi > 0]
    if len(live) >= 2:
        separated = all(
            a.alpha_hi < b.alpha_lo or b.alpha_hi < a.alpha_lo
            for i, a in enumerate(live)
            for b in live[i + 1 :]
        )
        if separated:
            return "Wild"
    if report.residue_count == 1:
        return "NonOscillating"
    overlap = all(
        a.alpha_hi >= b.alpha_lo and b.alpha_hi >= a.alpha_lo
        for i, a in enumerate(live)
        for b in live[i + 1 :]
    )
    if overlap and live and not finite:
        degrees = {pr.m for pr in live}
        if len(degrees) > 1:
            return "Oscillating"
    return "Indeterminate"


# ---------------------------------------------------------------------------
# outward-rounded decimal rendering


def decimal_lower(x: Fraction, places: int = 12) -> str:
    """Decimal string <= x, rounded toward minus infinity."""
    q = 10**places
    scaled = x.numerator * q // x.denominator
    return _place(scaled, places)


def decimal_upper(x: Fraction, places: int = 12) -> str:
    """Decimal string >= x, rounded toward plus infinity."""
    q = 10**places
    scaled = -((-x.numerator * q) // x.denominator)
    return _place(scaled, places)


def _place(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"
