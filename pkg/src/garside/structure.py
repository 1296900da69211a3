"""Divisibility structure: minimal common multiples, primitive elements,
spanning sets, simple elements and the covering relation.

All searches are norm-bounded and honest about it: results carry a
``complete`` flag (or notes) when a bound was exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import Element, MonoidContext, ResourceLimitExceeded
from .reports import VerificationReport

__all__ = [
    "ElementSet",
    "McmResult",
    "atoms",
    "mcms",
    "primitive_closure",
    "is_spanning",
    "check_ore",
    "divisors",
    "right_divisors",
    "divisors_in",
    "enumerate_simples",
    "covers",
]


@dataclass(frozen=True)
class ElementSet:
    """A finite set of elements with a label for reports and exports."""

    members: frozenset
    label: str = ""
    notes: tuple = ()

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    @property
    def max_norm(self):
        return max((e.norm for e in self.members), default=0)

    def to_json(self, ctx):
        return [ctx.show(e) for e in sorted(self.members)]


def _span_key(S):
    members = S.members if isinstance(S, ElementSet) else frozenset(S)
    return frozenset(e.canon for e in members)


def _coerce_set(ctx, S, label=""):
    if isinstance(S, ElementSet):
        return S
    return ElementSet(frozenset(ctx.canonical(x) for x in S), label)


def atoms(ctx: MonoidContext) -> ElementSet:
    return ElementSet(ctx.ball_level(1), "atoms")


@dataclass
class McmResult:
    """Minimal common multiples of an ordered pair.

    ``complements_left[m]`` is the element c with x c = m (complement of
    the first coordinate); ``complements_right[m]`` the one with y c = m.
    ``complete`` is True when a whole norm level above the last minimal
    common multiple contained only proper multiples of those found, so
    the listing is exhaustive.
    """

    pair: tuple
    mcms: frozenset
    complements_left: dict
    complements_right: dict
    search_bound: int
    complete: bool


def mcms(ctx: MonoidContext, x, y, bound=None) -> McmResult:
    x = ctx.canonical(x)
    y = ctx.canonical(y)
    if bound is None:
        bound = x.norm + y.norm + max(ctx.presentation.max_relation_length, 1)
    if ctx.divides(x, y):
        return McmResult((x, y), frozenset([y]),
                         {y: ctx.left_divides(x, y)}, {y: ctx.one},
                         bound, True)
    if ctx.divides(y, x):
        return McmResult((x, y), frozenset([x]),
                         {x: ctx.one}, {x: ctx.left_divides(y, x)},
                         bound, True)

    chars = ctx.presentation.chars

    def extend(canons):
        return {ctx.mul(Element(c), Element(ch)).canon
                for c in canons for ch in chars}

    cur_x = {x.canon}
    cur_y = {y.canon}
    level = max(x.norm, y.norm) + 1
    for _ in range(level - x.norm):
        cur_x = extend(cur_x)
    for _ in range(level - y.norm):
        cur_y = extend(cur_y)

    found: list[Element] = []
    complete = False
    prev_cm_words: set[str] = set()
    while level <= bound:
        cm = cur_x & cur_y
        new = []
        for zc in sorted(cm):
            cls = ctx.class_of(zc)
            if not any(w[:-1] in prev_cm_words for w in cls):
                new.append(Element(zc))
        if found and not new:
            # one full level above the last minimal common multiple:
            # exhaustive iff everything here sits above something found
            if all(any(ctx.divides(m, Element(zc)) for m in found)
                   for zc in cm):
                complete = True
                break
        found.extend(new)
        prev_cm_words = set()
        for zc in cm:
            prev_cm_words.update(ctx.class_of(zc))
        cur_x = extend(cur_x)
        cur_y = extend(cur_y)
        level += 1
    comp_l = {m: ctx.left_divides(x, m) for m in found}
    comp_r = {m: ctx.left_divides(y, m) for m in found}
    return McmResult((x, y), frozenset(found), comp_l, comp_r, bound, complete)


def primitive_closure(ctx: MonoidContext, cap=10_000) -> ElementSet:
    """Close {1} and the atoms under complements of minimal common
    multiples.  Stops at a fixpoint, or at ``cap`` elements with a note
    (closedness then undetermined)."""
    members = {ctx.one} | set(ctx.ball_level(1))
    notes: list[str] = []
    done: set[frozenset] = set()
    pending = [(a, b) for a in members for b in members
               if a != b and a.norm and b.norm]
    while pending:
        x, y = pending.pop()
        key = frozenset((x, y))
        if key in done:
            continue
        done.add(key)
        # one level past the default so the exhaustiveness certificate
        # (a clean level above the last mcm) has room to fire
        reach = max(max(e.norm for e in members),
                    ctx.presentation.max_relation_length)
        res = mcms(ctx, x, y, bound=x.norm + y.norm + reach + 1)
        if not res.complete:
            notes.append(
                f"mcm search incomplete for pair "
                f"({ctx.show(x)}, {ctx.show(y)})")
        for m in sorted(res.mcms):
            for comp in (res.complements_left[m], res.complements_right[m]):
                if comp not in members:
                    if len(members) >= cap:
                        notes.append(f"closure stopped at cap {cap}; not a fixpoint")
                        return ElementSet(frozenset(members), "primitives",
                                          tuple(notes))
                    members.add(comp)
                    pending.extend(
                        (comp, s) for s in members
                        if s != comp and s.norm and comp.norm)
    return ElementSet(frozenset(members), "primitives", tuple(notes))


def is_spanning(ctx: MonoidContext, S, bound=None) -> VerificationReport:
    """Check that S contains 1 and the atoms and is closed under
    complements of minimal common multiples of its pairs."""
    S = _coerce_set(ctx, S)
    if ctx.one not in S:
        return VerificationReport("spanning", "fail", bound=bound,
                                  witness={"missing": "1"})
    for a in sorted(ctx.ball_level(1)):
        if a not in S:
            return VerificationReport(
                "spanning", "fail", bound=bound,
                witness={"missing_atom": ctx.show(a)})
    members = sorted(S.members)
    maxnorm = S.max_norm
    complete = True
    used_bound = bound
    for i, x in enumerate(members):
        if not x.norm:
            continue
        for y in members[i:]:
            if not y.norm or x == y:
                continue
            b = bound if bound is not None else x.norm + y.norm + maxnorm
            used_bound = b if used_bound is None else max(used_bound, b)
            res = mcms(ctx, x, y, bound=b)
            complete = complete and res.complete
            for m in sorted(res.mcms):
                for side, comp in (("left", res.complements_left[m]),
                                   ("right", res.complements_right[m])):
                    if comp not in S:
                        return VerificationReport(
                            "spanning", "fail", bound=used_bound,
                            witness={"pair": [ctx.show(x), ctx.show(y)],
                                     "mcm": ctx.show(m),
                                     "complement": ctx.show(comp),
                                     "side": side},
                            complete=complete,
                            details={"set": S.label or len(S)})
    return VerificationReport("spanning", "pass", bound=used_bound,
                              complete=complete,
                              details={"set": S.label or len(S)})


def check_ore(ctx: MonoidContext, S, bound=None) -> VerificationReport:
    """Every pair from S must admit a common multiple within the bound."""
    S = _coerce_set(ctx, S)
    members = sorted(S.members)
    maxnorm = S.max_norm
    complete = True
    used_bound = bound
    for i, x in enumerate(members):
        if not x.norm:
            continue
        for y in members[i:]:
            if not y.norm:
                continue
            b = bound if bound is not None else x.norm + y.norm + maxnorm
            used_bound = b if used_bound is None else max(used_bound, b)
            res = mcms(ctx, x, y, bound=b)
            complete = complete and res.complete
            if not res.mcms:
                return VerificationReport(
                    "common-multiples", "fail", bound=used_bound,
                    witness={"pair": [ctx.show(x), ctx.show(y)]},
                    complete=False,
                    details={"set": S.label or len(S)})
    return VerificationReport("common-multiples", "pass", bound=used_bound,
                              complete=complete,
                              details={"set": S.label or len(S)})


def divisors(ctx: MonoidContext, x) -> ElementSet:
    """All left divisors of x (canonical representatives)."""
    x = ctx.canonical(x)
    out = set()
    for ell in range(x.norm + 1):
        out.update(ctx.canonical(p) for p in ctx.prefix_set(x, ell))
    return ElementSet(frozenset(out), f"Div({ctx.show(x)})")


def right_divisors(ctx: MonoidContext, x) -> ElementSet:
    x = ctx.canonical(x)
    out = set()
    for ell in range(x.norm + 1):
        out.update(ctx.canonical(s) for s in ctx.suffix_set(x, ell))
    return ElementSet(frozenset(out), f"RDiv({ctx.show(x)})")


def divisors_in(ctx: MonoidContext, S, x) -> frozenset:
    """The left divisors of x that lie in S, memoized per spanning set."""
    S = _coerce_set(ctx, S)
    x = ctx.canonical(x)
    cache = ctx.caches[("div_in", _span_key(S))]
    got = cache.get(x)
    if got is None:
        got = frozenset(s for s in S.members if ctx.divides(s, x))
        cache[x] = got
    return got


def covers(ctx: MonoidContext, S, x, y) -> bool:
    """x covers y over S: multiplying x by y adds no new S-divisors.

    Equivalently Div(x y) and Div(x) meet S in the same set; true for
    y = 1 by convention.
    """
    x = ctx.canonical(x)
    y = ctx.canonical(y)
    if not y.norm:
        return True
    return divisors_in(ctx, S, ctx.mul(x, y)) == divisors_in(ctx, S, x)


def _codim1_divisors(ctx, x):
    return {ctx.canonical(w[:-1]) for w in ctx.class_of(x.canon)}


def enumerate_simples(ctx: MonoidContext, S) -> ElementSet:
    """The S-simple elements: x such that no proper divisor of x has the
    same S-divisor set.

    Enumerated level by level; by the right-divisor argument every
    norm-(l+1) simple element is an atom times a norm-l simple one, so
    the search stops at the first empty level.  Requires S to span.
    """
    S = _coerce_set(ctx, S)
    key = _span_key(S)
    cache = ctx.caches["simples"]
    got = cache.get(key)
    if got is not None:
        return got
    atom_list = sorted(ctx.ball_level(1))
    norm_cap = len(S.members) * max(S.max_norm, 1)
    simple = {ctx.one}
    level = [ctx.one]
    while level:
        nxt = []
        seen = set()
        for a in atom_list:
            for s in level:
                cand = ctx.mul(a, s)
                if cand in seen:
                    continue
                seen.add(cand)
                if cand.norm > norm_cap:
                    raise ResourceLimitExceeded(
                        f"simple-element search passed norm cap {norm_cap}; "
                        f"is the set spanning?")
                dset = divisors_in(ctx, S, cand)
                if all(divisors_in(ctx, S, d) != dset
                       for d in _codim1_divisors(ctx, cand)):
                    nxt.append(cand)
        simple.update(nxt)
        level = nxt
    result = ElementSet(frozenset(simple),
                        f"simples({S.label or len(S)})")
    cache[key] = result
    return result
