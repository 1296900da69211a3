"""Word problem engine: congruence classes, canonical forms, divisibility.

Everything rests on homogeneity: relations preserve length, so the
congruence class of a word is a finite set of words of the same length,
computable by breadth-first closure under single relation applications.
The canonical form of an element is the lexicographically least word of
its class, and the norm is the common length.

Two facts keep divisibility cheap and are used without further comment:

* the set of length-l prefixes of a congruence class is itself a union
  of congruence classes (a rewrite inside a prefix extends to the whole
  word), so ``x`` left-divides ``y`` iff the canonical word of ``x``
  appears among the raw length-``|x|`` prefixes of ``class(y)``;
* for the same reason the complement words ``{w[l:]}`` over members with
  prefix congruent to ``x`` form a union of classes, so their plain
  minimum is already a canonical word.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import total_ordering

from .presentation import Presentation, PresentationError
from .reports import VerificationReport

__all__ = ["Element", "MonoidContext", "ResourceLimitExceeded"]


class ResourceLimitExceeded(RuntimeError):
    """A configured cache or enumeration cap was hit before finishing."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


@total_ordering
@dataclass(frozen=True)
class Element:
    """A monoid element, identified by the least word of its class.

    Construct these through :class:`MonoidContext` (``element``,
    ``canonical``, ``mul``); a hand-built ``Element`` with a
    non-canonical word breaks every comparison.  Ordering is shortlex.
    """

    canon: str

    @property
    def norm(self):
        return len(self.canon)

    def __lt__(self, other):
        return (len(self.canon), self.canon) < (len(other.canon), other.canon)

    def __repr__(self):
        return f"Element({self.canon!r})"


class MonoidContext:
    """All word-problem state for one presentation.

    Congruence classes, prefix/suffix sets and ball levels are memoized
    here; ``caches`` is a scratch area for the higher layers (divisor
    sets, simple elements, normal forms) keyed per spanning set.
    """

    def __init__(self, presentation: Presentation,
                 max_cached_words=1_000_000, max_ball_elements=100_000):
        self.presentation = presentation
        self.max_cached_words = max_cached_words
        self.max_ball_elements = max_ball_elements
        rules = []
        for lhs, rhs in presentation.relations:
            rules.append((lhs, rhs))
            rules.append((rhs, lhs))
        self._rules = tuple(rules)
        self._classes: dict[str, frozenset[str]] = {}
        self._canon_of_class: dict[frozenset, str] = {}
        self._cached_words = 0
        self._levels: list[frozenset[Element]] = []
        self._prefix_sets: dict[tuple[str, int], frozenset[str]] = {}
        self._suffix_sets: dict[tuple[str, int], frozenset[str]] = {}
        self.caches: dict = defaultdict(dict)
        self.cancellative_radius = -1
        self.one = Element("")

    def __repr__(self):
        return f"MonoidContext({self.presentation!r})"

    # -- word plumbing -------------------------------------------------

    def _word_of(self, x) -> str:
        if isinstance(x, Element):
            return x.canon
        if isinstance(x, str):
            alphabet = self.presentation.chars
            for c in x:
                if c not in alphabet:
                    raise PresentationError(
                        f"letter {c!r} is not in the internal alphabet; "
                        f"use element() for symbol words")
            return x
        raise TypeError(f"expected Element or internal word, got {x!r}")

    def element(self, text) -> Element:
        """Canonical element of a user-facing word such as ``s1s2s1``."""
        return self.canonical(self.presentation.encode_word(text))

    def show(self, x) -> str:
        return self.presentation.decode_word(self._word_of(x))

    # -- congruence classes --------------------------------------------

    def class_of(self, word) -> frozenset[str]:
        word = self._word_of(word)
        cached = self._classes.get(word)
        if cached is not None:
            return cached
        cap = self.max_cached_words
        seen = {word}
        frontier = [word]
        rules = self._rules
        while frontier:
            new = []
            for w in frontier:
                for lhs, rhs in rules:
                    start = w.find(lhs)
                    while start >= 0:
                        w2 = w[:start] + rhs + w[start + len(lhs):]
                        if w2 not in seen:
                            seen.add(w2)
                            new.append(w2)
                        start = w.find(lhs, start + 1)
            frontier = new
            if self._cached_words + len(seen) > cap:
                raise ResourceLimitExceeded(
                    f"congruence class of a norm-{len(word)} word exceeds "
                    f"the word cache cap ({cap})")
        cls = frozenset(seen)
        self._cached_words += len(cls)
        for w in cls:
            self._classes[w] = cls
        self._canon_of_class[cls] = min(cls)
        return cls

    def canonical(self, word) -> Element:
        if isinstance(word, Element):
            return word
        return Element(self._canon_of_class[self.class_of(word)])

    def equal(self, u, v) -> bool:
        uw = self._word_of(u)
        vw = self._word_of(v)
        if len(uw) != len(vw):
            return False
        if uw == vw:
            return True
        return vw in self.class_of(uw)

    def mul(self, x, y) -> Element:
        return self.canonical(self._word_of(x) + self._word_of(y))

    # -- divisibility ----------------------------------------------------

    def prefix_set(self, y: Element, length: int) -> frozenset[str]:
        if length == 0:
            return frozenset([""])
        key = (y.canon, length)
        ps = self._prefix_sets.get(key)
        if ps is None:
            ps = frozenset(w[:length] for w in self.class_of(y.canon))
            self._prefix_sets[key] = ps
        return ps

    def suffix_set(self, y: Element, length: int) -> frozenset[str]:
        if length == 0:
            return frozenset([""])
        key = (y.canon, length)
        ss = self._suffix_sets.get(key)
        if ss is None:
            ss = frozenset(w[len(w) - length:] for w in self.class_of(y.canon))
            self._suffix_sets[key] = ss
        return ss

    def divides(self, x, y) -> bool:
        """Left divisibility x <= y, i.e. y = x z for some z."""
        x = self.canonical(x)
        y = self.canonical(y)
        if x.norm > y.norm:
            return False
        if x.norm == y.norm:
            return x == y
        if x.norm == 0:
            return True
        return x.canon in self.prefix_set(y, x.norm)

    def left_divides(self, x, y):
        """Complement z with x z = y, or None; z is the least such element."""
        x = self.canonical(x)
        y = self.canonical(y)
        if x.norm > y.norm:
            return None
        ell = x.norm
        if ell == 0:
            return y
        xcls = self.class_of(x.canon)
        best = None
        for w in self.class_of(y.canon):
            if w[:ell] in xcls:
                s = w[ell:]
                if best is None or s < best:
                    best = s
        return None if best is None else Element(best)

    def right_divides(self, x, y):
        """Complement z with z x = y, or None."""
        x = self.canonical(x)
        y = self.canonical(y)
        if x.norm > y.norm:
            return None
        ell = x.norm
        if ell == 0:
            return y
        xcls = self.class_of(x.canon)
        best = None
        for w in self.class_of(y.canon):
            if w[len(w) - ell:] in xcls:
                s = w[:len(w) - ell]
                if best is None or s < best:
                    best = s
        return None if best is None else Element(best)

    # -- balls -----------------------------------------------------------

    def ball_level(self, n) -> frozenset[Element]:
        while len(self._levels) <= n:
            k = len(self._levels)
            if k == 0:
                level = frozenset([self.one])
            else:
                chars = self.presentation.chars
                level = frozenset(
                    self.canonical(e.canon + c)
                    for e in self._levels[-1] for c in chars)
            total = sum(len(lv) for lv in self._levels) + len(level)
            if total > self.max_ball_elements:
                raise ResourceLimitExceeded(
                    f"ball enumeration exceeded {self.max_ball_elements} "
                    f"elements at norm {k}", level=k)
            self._levels.append(level)
        return self._levels[n]

    def enumerate_ball(self, n) -> frozenset[Element]:
        out = set()
        for k in range(n + 1):
            out.update(self.ball_level(k))
        return frozenset(out)

    # -- cancellativity ----------------------------------------------------

    def check_cancellative_bounded(self, n) -> VerificationReport:
        """Search for a cancellation failure among triples with
        norm(x) + norm(y) <= n, on both sides."""
        counterexample = None
        for total in range(2, n + 1):
            for i in range(1, total):
                j = total - i
                for x in self.ball_level(i):
                    seen_l: dict[Element, Element] = {}
                    seen_r: dict[Element, Element] = {}
                    for y in self.ball_level(j):
                        p = self.mul(x, y)
                        other = seen_l.get(p)
                        if other is not None and other != y:
                            counterexample = (x, other, y, "left")
                            break
                        seen_l[p] = y
                        q = self.mul(y, x)
                        other = seen_r.get(q)
                        if other is not None and other != y:
                            counterexample = (x, other, y, "right")
                            break
                        seen_r[q] = y
                    if counterexample:
                        break
                if counterexample:
                    break
            if counterexample:
                break
        if counterexample is None:
            self.cancellative_radius = max(self.cancellative_radius, n)
            return VerificationReport(
                "cancellativity", "pass", details={"radius": n})
        x, y, y2, side = counterexample
        return VerificationReport(
            "cancellativity", "fail",
            witness={"x": self.show(x), "y": self.show(y),
                     "y2": self.show(y2), "side": side},
            details={"radius": n})
