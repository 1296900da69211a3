"""Normal-form automaton, growth series, and fellow-traveller probes.

The automaton recognizes the fraction normal forms over the alphabet
of non-identity Delta-simples plus a formal inverse letter for the
Garside element: an inverse block may only appear as a prefix, the
Garside letter only in a leading run, and consecutive plain factors
must be linked by the covering relation over Div(delta).

Growth counts accepted words by length through transition-matrix
powering, so the coefficients satisfy the integer linear recurrence
given by the matrix's characteristic polynomial.

Distances between words are measured in the Cayley graph of the group
of fractions over the automaton alphabet, by bidirectional search on
fraction keys (k, x).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .congruence import Element, MonoidContext, ResourceLimitExceeded
from .reports import VerificationReport
from .structure import _coerce_set, covers, enumerate_simples
from .normal import NormalSequence, left_mult_update, normalize_all
from .delta import GarsideStructure, _strip

__all__ = [
    "DELTA_INV",
    "NormalFormAutomaton",
    "build_automaton",
    "GrowthSeries",
    "growth",
    "synchronous_distance",
    "ftp_probe",
]


class _Token:
    """Formal symbol that is not a monoid element."""

    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


DELTA_INV = _Token("D'")
INITIAL = _Token("start")
FAIL = _Token("fail")


@dataclass
class NormalFormAutomaton:
    ctx: MonoidContext
    gs: GarsideStructure
    letters: tuple             # non-identity simples shortlex, then D'
    states: tuple              # INITIAL, letters..., FAIL
    table: dict                # (state, letter) -> state

    def step(self, state, letter):
        try:
            return self.table[(state, letter)]
        except KeyError:
            raise ValueError(f"not an alphabet letter: {letter!r}") from None

    def accepts(self, word) -> bool:
        state = INITIAL
        for letter in word:
            state = self.step(state, letter)
            if state is FAIL:
                return False
        return True

    def letter_name(self, letter) -> str:
        if letter is DELTA_INV:
            return "D'"
        return self.ctx.show(letter)

    def state_name(self, state) -> str:
        if state is INITIAL:
            return "start"
        if state is FAIL:
            return "fail"
        return self.letter_name(state)

    def to_dot(self, include_failure: bool = False) -> str:
        lines = ["digraph normal_forms {", "  rankdir=LR;"]
        for s in self.states:
            if s is FAIL and not include_failure:
                continue
            shape = "circle" if s is FAIL else "doublecircle"
            lines.append(f'  "{self.state_name(s)}" [shape={shape}];')
        for s in self.states:
            if s is FAIL and not include_failure:
                continue
            # group parallel edges into one label
            grouped = {}
            for l in self.letters:
                t = self.table[(s, l)]
                if t is FAIL and not include_failure:
                    continue
                grouped.setdefault(t, []).append(self.letter_name(l))
            for t, ls in sorted(grouped.items(),
                                key=lambda kv: self.state_name(kv[0])):
                label = ",".join(ls)
                lines.append(f'  "{self.state_name(s)}" -> '
                             f'"{self.state_name(t)}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "alphabet": [self.letter_name(l) for l in self.letters],
            "states": [self.state_name(s) for s in self.states],
            "initial": "start",
            "accepting": [self.state_name(s) for s in self.states
                          if s is not FAIL],
            "transitions": [
                {"from": self.state_name(s), "letter": self.letter_name(l),
                 "to": self.state_name(self.table[(s, l)])}
                for s in self.states for l in self.letters],
        }


def build_automaton(ctx: MonoidContext, gs: GarsideStructure) -> NormalFormAutomaton:
    cache = ctx.caches["automaton"]
    got = cache.get(gs.delta)
    if got is not None:
        return got
    delta = gs.delta
    plain = tuple(s for s in sorted(gs.simples) if s.norm and s != delta)
    letters = plain + (delta, DELTA_INV)
    states = (INITIAL,) + letters + (FAIL,)
    div = gs.div_delta
    table = {}
    for l in letters:
        table[(INITIAL, l)] = l
        table[(FAIL, l)] = FAIL
        table[(delta, l)] = FAIL if l is DELTA_INV else l
        table[(DELTA_INV, l)] = (DELTA_INV if l is DELTA_INV
                                 else (FAIL if l == delta else l))
    for y in plain:
        table[(y, delta)] = FAIL
        table[(y, DELTA_INV)] = FAIL
        for x in plain:
            table[(y, x)] = x if covers(ctx, div, y, x) else FAIL
    auto = NormalFormAutomaton(ctx, gs, letters, states, table)
    cache[gs.delta] = auto
    return auto


@dataclass
class GrowthSeries:
    coefficients: tuple
    recurrence: tuple          # c(n) = sum r_i * c(n-i), i = 1..d
    mode: str
    counts_elements: bool | None

    def check_recurrence(self) -> bool:
        d = len(self.recurrence)
        c = self.coefficients
        return all(
            c[n] == sum(self.recurrence[i - 1] * c[n - i]
                        for i in range(1, d + 1))
            for n in range(d, len(c)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["n", "count"])
        for n, c in enumerate(self.coefficients):
            w.writerow([n, c])
        return buf.getvalue()

    def to_json(self):
        return {
            "mode": self.mode,
            "coefficients": list(self.coefficients),
            "recurrence": list(self.recurrence),
            "counts_elements": self.counts_elements,
        }


def growth(ctx: MonoidContext, gs: GarsideStructure, n_max: int,
           mode: str = "monoid",
           unique_forms: bool | None = None) -> GrowthSeries:
    """Number of accepted words of each length up to n_max.  Monoid
    mode drops the inverse letter; group mode allows it (the automaton
    confines it to a prefix block).  The coefficients count monoid or
    group elements exactly when normal forms are unique, which the
    caller reports through unique_forms."""
    if mode not in ("monoid", "group"):
        raise ValueError(f"unknown growth mode {mode!r}")
    auto = build_automaton(ctx, gs)
    letters = (auto.letters if mode == "group"
               else tuple(l for l in auto.letters if l is not DELTA_INV))
    live = [s for s in auto.states
            if s is not FAIL and (mode == "group" or s is not DELTA_INV)]
    index = {s: i for i, s in enumerate(live)}
    size = len(live)
    matrix = [[0] * size for _ in range(size)]
    for s in live:
        for l in letters:
            t = auto.table[(s, l)]
            if t is not FAIL:
                matrix[index[s]][index[t]] += 1
    vec = [0] * size
    vec[index[INITIAL]] = 1
    coeffs = [1]
    for _ in range(n_max):
        vec = [sum(vec[i] * matrix[i][j] for i in range(size))
               for j in range(size)]
        coeffs.append(sum(vec))

    from sympy import Matrix
    char = Matrix(matrix).charpoly().all_coeffs()
    # monic lambda^d + a_1 lambda^(d-1) + ... + a_d gives
    # c(n) = -a_1 c(n-1) - ... - a_d c(n-d)
    recurrence = tuple(-int(a) for a in char[1:])
    return GrowthSeries(tuple(coeffs), recurrence, mode, unique_forms)


# -- Cayley-graph distances --------------------------------------------


def _letter_value(gs, letter):
    if letter is DELTA_INV:
        return None
    x = gs.ctx.canonical(letter)
    if not x.norm or x not in gs.simples.members:
        raise ValueError(
            f"{gs.ctx.show(x)} is not an alphabet letter")
    return x


def _append(gs, key, letter, sign=1):
    """Right-multiply the fraction key (k, x) by letter^sign."""
    ctx = gs.ctx
    k, x = key
    if letter is DELTA_INV:
        if sign > 0:
            return _strip(gs, k + 1, gs.phi(x, -1))
        return _strip(gs, k, ctx.mul(x, gs.delta))
    if sign > 0:
        return _strip(gs, k, ctx.mul(x, letter))
    m = gs.embedding_exponent(letter)
    comp = ctx.left_divides(letter, gs.delta_power(m))
    return _strip(gs, k + m, gs.phi(ctx.mul(x, comp), -m))


def _word_key(gs, word):
    key = (0, gs.ctx.one)
    for letter in word:
        if letter is not DELTA_INV:
            _letter_value(gs, letter)
        key = _append(gs, key, letter)
    return key


def cayley_distance(ctx: MonoidContext, gs: GarsideStructure, key1, key2,
                    max_dist: int = 16, node_cap: int = 200_000) -> int:
    """Distance between two group elements (as fraction keys) in the
    Cayley graph over the automaton alphabet, inverses allowed."""
    if key1 == key2:
        return 0
    cache = ctx.caches[("cayley", gs.delta)]
    pair = (key1, key2) if key1 <= key2 else (key2, key1)
    got = cache.get(pair)
    if got is not None:
        return got
    auto = build_automaton(ctx, gs)

    def neighbors(key):
        for letter in auto.letters:
            yield _append(gs, key, letter, 1)
            yield _append(gs, key, letter, -1)

    # level-synchronized bidirectional search; after fully expanding
    # levels (da, db) every path of length <= da + db + 1 has been seen
    front_a = {key1: 0}
    front_b = {key2: 0}
    seen_a = dict(front_a)
    seen_b = dict(front_b)
    depth_a = depth_b = 0
    dist = None
    while front_a and front_b:
        if dist is not None and dist <= depth_a + depth_b + 1:
            break
        if depth_a + depth_b >= max_dist:
            break
        if len(seen_a) + len(seen_b) > node_cap:
            raise ResourceLimitExceeded(
                f"distance search exceeded {node_cap} nodes")
        if len(front_a) > len(front_b):
            front_a, front_b = front_b, front_a
            seen_a, seen_b = seen_b, seen_a
            depth_a, depth_b = depth_b, depth_a
        new = {}
        for key, d in front_a.items():
            for nxt in neighbors(key):
                if nxt in seen_b:
                    cand = d + 1 + seen_b[nxt]
                    if dist is None or cand < dist:
                        dist = cand
                if nxt not in seen_a:
                    seen_a[nxt] = d + 1
                    new[nxt] = d + 1
        front_a = new
        depth_a += 1
    if dist is None or dist > max_dist:
        raise ResourceLimitExceeded(
            f"no path of length <= {max_dist} between the elements")
    cache[pair] = dist
    return dist


def _prefix_keys(gs, word):
    keys = []
    key = (0, gs.ctx.one)
    for letter in word:
        key = _append(gs, key, letter)
        keys.append(key)
    return keys


def synchronous_distance(ctx: MonoidContext, gs: GarsideStructure, u, v,
                         max_dist: int = 16,
                         node_cap: int = 200_000) -> int:
    """Supremum over positions i of the Cayley distance between the
    i-th prefix products, clamping each word at its own length."""
    u = tuple(u)
    v = tuple(v)
    for letter in u + v:
        if letter is not DELTA_INV:
            _letter_value(gs, letter)
    if not u and not v:
        return 0
    pu = _prefix_keys(gs, u)
    pv = _prefix_keys(gs, v)
    best = 0
    for i in range(1, max(len(u), len(v)) + 1):
        k1 = pu[min(i, len(u)) - 1] if u else (0, ctx.one)
        k2 = pv[min(i, len(v)) - 1] if v else (0, ctx.one)
        best = max(best, cayley_distance(ctx, gs, k1, k2,
                                         max_dist=max_dist,
                                         node_cap=node_cap))
    return best


def _translated_distance(ctx, gs, y_key, p, q, max_dist, node_cap):
    """Supremum over positions of dist(y * p-prefix, q-prefix)."""
    pk = []
    key = y_key
    for letter in p:
        key = _append(gs, key, letter)
        pk.append(key)
    qk = _prefix_keys(gs, q)
    best = 0
    for i in range(1, max(len(p), len(q), 1) + 1):
        k1 = pk[min(i, len(p)) - 1] if p else y_key
        k2 = qk[min(i, len(q)) - 1] if q else (0, ctx.one)
        best = max(best, cayley_distance(ctx, gs, k1, k2,
                                         max_dist=max_dist,
                                         node_cap=node_cap))
    return best


def ftp_probe(ctx: MonoidContext, gs: GarsideStructure, radius: int,
              span=None, max_dist: int = 24, node_cap: int = 200_000,
              plain_observations: bool = True) -> VerificationReport:
    """Empirical fellow-traveller check on a ball.

    Part (a): any two normal decompositions of one element stay within
    synchronous distance 2(k-1), where k is the size of the span (the
    divisors of the Garside element by default, or the given span).
    Part (b), only for the default span: for each ball element x and
    each alphabet letter y, some normal decomposition of y*x lies
    within 3k of each decomposition of x, prefixes compared against
    the y-translated prefixes of x; for y a divisor of the Garside
    element the sliding update must stay within distance 1.  For the
    remaining simple letters the sliding distance is recorded as an
    observation only: a product of two simple elements need not admit
    a normal form of two factors, so the carry can leave the simples
    and the one-letter locality genuinely fails for such y.  Distances
    in the plain untranslated convention are also observations; plain
    searches that exceed the left-multiplication bound or the node cap
    are counted, not chased.
    """
    auto = build_automaton(ctx, gs)
    if span is None:
        S = gs.div_delta
        delta_mode = True
    else:
        S = _coerce_set(ctx, span)
        delta_mode = False
    k = len(S)
    bound_multi = 2 * (k - 1)
    bound_left = 3 * k
    max_multi = 0
    max_left = 0
    max_sliding = 0
    max_sliding_simple = 0
    max_plain = 0
    plain_clamped = 0
    checked = 0
    multi_pairs = 0

    def forms_of(x):
        return sorted(normalize_all(ctx, S, x), key=NormalSequence.sort_key)

    for x in ctx.enumerate_ball(radius):
        forms = forms_of(x)
        checked += 1
        for i, p in enumerate(forms):
            for q in forms[i + 1:]:
                multi_pairs += 1
                d = synchronous_distance(ctx, gs, p.factors, q.factors,
                                         max_dist=max_dist,
                                         node_cap=node_cap)
                max_multi = max(max_multi, d)
                if d > bound_multi:
                    return VerificationReport(
                        "fellow-traveller", "fail", bound=radius,
                        witness={"element": ctx.show(x),
                                 "forms": [p.to_json(ctx), q.to_json(ctx)],
                                 "distance": d,
                                 "allowed": bound_multi})
        if not delta_mode:
            continue
        for y in auto.letters:
            if y is DELTA_INV:
                y_key = (1, ctx.one)
                rest = ctx.left_divides(gs.delta, x)
                if rest is None:
                    targets = [(DELTA_INV,) + f.factors for f in forms_of(x)]
                else:
                    targets = [f.factors for f in forms_of(rest)]
            else:
                y_key = (0, y)
                targets = [f.factors for f in forms_of(ctx.mul(y, x))]
            for p in forms:
                dists = []
                for q in targets:
                    d = _translated_distance(ctx, gs, y_key, p.factors, q,
                                             max_dist, node_cap)
                    dists.append(d)
                    if not plain_observations:
                        continue
                    try:
                        dp = synchronous_distance(ctx, gs, p.factors, q,
                                                  max_dist=bound_left,
                                                  node_cap=node_cap)
                        max_plain = max(max_plain, dp)
                    except ResourceLimitExceeded:
                        plain_clamped += 1
                dmin = min(dists)
                max_left = max(max_left, dmin)
                if dmin > bound_left:
                    return VerificationReport(
                        "fellow-traveller", "fail", bound=radius,
                        witness={"element": ctx.show(x),
                                 "letter": auto.letter_name(y),
                                 "distance": dmin,
                                 "allowed": bound_left})
                if y is not DELTA_INV:
                    slid = left_mult_update(ctx, S, y, p)
                    d = _translated_distance(ctx, gs, y_key, p.factors,
                                             slid.factors, max_dist,
                                             node_cap)
                    max_sliding_simple = max(max_sliding_simple, d)
                    if y not in S.members:
                        continue
                    max_sliding = max(max_sliding, d)
                    if d > 1:
                        return VerificationReport(
                            "fellow-traveller", "fail", bound=radius,
                            witness={"element": ctx.show(x),
                                     "letter": ctx.show(y),
                                     "sliding_distance": d,
                                     "allowed": 1})
    details = {
        "k": k,
        "elements": checked,
        "multiform_pairs": multi_pairs,
        "max_multiform": max_multi,
        "bound_multiform": bound_multi,
    }
    if delta_mode:
        details.update({
            "max_leftmult": max_left,
            "bound_leftmult": bound_left,
            "max_sliding": max_sliding,
            "bound_sliding": 1,
            "max_sliding_simple": max_sliding_simple,
        })
        if plain_observations:
            details["max_plain_leftmult"] = max_plain
            details["plain_searches_clamped"] = plain_clamped
    return VerificationReport("fellow-traveller", "pass", bound=radius,
                              details=details)
