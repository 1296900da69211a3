"""Garside elements and the group of fractions.

An element d is a Garside element when its left and right divisors
coincide and Div(d) spans the monoid.  The star map sends each divisor
x to the complement x* with x x* = d; its square phi = ** extends
letterwise to an automorphism with x d = d phi(x), and d^e is central
where e is the order of phi.  Group elements are carried as pairs
(k, x) meaning d^(-k) x with k minimal, which gives a normal form and
a word problem for the enveloping group of fractions.

"Delta-simple" and "Delta-normal" mean simple/normal with respect to
the span Div(delta); the simple elements usually form a strictly
larger set than the divisors themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import Element, MonoidContext
from .reports import VerificationReport
from .structure import (ElementSet, divisors, divisors_in,
                        enumerate_simples, is_spanning, mcms,
                        primitive_closure, right_divisors)
from .normal import NormalSequence, normalize, normalize_all

__all__ = [
    "is_garside",
    "GarsideSearchResult",
    "find_minimal_garside",
    "GarsideStructure",
    "build_structure",
    "FractionForm",
    "to_fraction",
    "fraction_of_signed",
    "group_equal",
    "combine",
    "check_uniform_length",
    "check_normal_uniqueness_criterion",
]


def is_garside(ctx: MonoidContext, d, bound=None) -> VerificationReport:
    """Is Div(d) spanning, with left divisors equal to right divisors?"""
    d = ctx.canonical(d)
    div = divisors(ctx, d)
    rdiv = right_divisors(ctx, d)
    if div.members != rdiv.members:
        left_only = sorted(ctx.show(x) for x in div.members - rdiv.members)
        right_only = sorted(ctx.show(x) for x in rdiv.members - div.members)
        return VerificationReport(
            "garside", "fail",
            witness={"element": ctx.show(d), "left_only": left_only,
                     "right_only": right_only},
            details={"reason": "left and right divisors differ"})
    rep = is_spanning(ctx, div, bound=bound)
    return VerificationReport(
        "garside", rep.status, complete=rep.complete, witness=rep.witness,
        details={"element": ctx.show(d), "divisors": len(div)})


@dataclass
class GarsideSearchResult:
    minimal: tuple
    candidates_checked: int
    max_norm: int
    # Garside status of each mcm of a pair of primitive elements,
    # probing whether such mcms always are Garside elements.
    primitive_mcm_probe: tuple = ()

    @property
    def found(self):
        return bool(self.minimal)

    def to_json(self, ctx):
        return {
            "minimal": [ctx.show(d) for d in self.minimal],
            "candidates_checked": self.candidates_checked,
            "max_norm": self.max_norm,
            "primitive_mcm_probe": [
                {"mcm": ctx.show(z), "garside": ok}
                for z, ok in self.primitive_mcm_probe],
        }


def find_minimal_garside(ctx: MonoidContext, max_norm: int = 4) -> GarsideSearchResult:
    """Garside elements of norm at most max_norm with no proper Garside
    divisor, in shortlex order, plus the primitive-mcm probe."""
    found = []
    checked = 0
    for n in range(1, max_norm + 1):
        for d in sorted(ctx.ball_level(n)):
            checked += 1
            if any(ctx.divides(g, d) for g in found):
                continue
            if is_garside(ctx, d).passed:
                found.append(d)
    probe = []
    prims = sorted(x for x in primitive_closure(ctx) if x.norm)
    seen = set()
    for i, x in enumerate(prims):
        for y in prims[i + 1:]:
            for z in sorted(mcms(ctx, x, y).mcms):
                if z not in seen:
                    seen.add(z)
                    probe.append((z, is_garside(ctx, z).passed))
    probe.sort(key=lambda t: t[0])
    return GarsideSearchResult(tuple(sorted(found)), checked, max_norm,
                               tuple(probe))


@dataclass
class GarsideStructure:
    ctx: MonoidContext
    delta: Element
    div_delta: ElementSet      # the span: left = right divisors of delta
    simples: ElementSet        # Div(delta)-simple elements
    star: dict                 # x -> x* with x x* = delta, on div_delta
    phi_atoms: tuple           # phi_atoms[m][a] = phi^m(atom a), m in 0..e-1
    order: int                 # e with phi^e = identity
    central_radius: int        # ball radius on which delta^e was checked central
    _delta_powers: dict = field(default_factory=dict)

    @property
    def span(self):
        return self.div_delta

    def delta_power(self, k: int) -> Element:
        if k < 0:
            raise ValueError("negative power of the Garside element")
        got = self._delta_powers.get(k)
        if got is None:
            got = (self.ctx.one if k == 0
                   else self.ctx.mul(self.delta_power(k - 1), self.delta))
            self._delta_powers[k] = got
        return got

    def phi(self, x, power: int = 1) -> Element:
        """phi^power(x), computed letterwise on the canonical word."""
        x = self.ctx.canonical(x)
        table = self.phi_atoms[power % self.order]
        return self.ctx.canonical("".join(table[c] for c in x.canon))

    def phi_inv(self, x, power: int = 1) -> Element:
        return self.phi(x, -power)

    def phi_on_divs(self, x) -> Element:
        return self.star[self.star[self.ctx.canonical(x)]]

    def normalize(self, x) -> NormalSequence:
        return normalize(self.ctx, self.div_delta, x)

    def normalize_all(self, x, cap=10_000):
        return normalize_all(self.ctx, self.div_delta, x, cap=cap)

    def embedding_exponent(self, x) -> int:
        """Least m with x dividing delta^m (at most norm(x))."""
        x = self.ctx.canonical(x)
        m = 0
        while not self.ctx.divides(x, self.delta_power(m)):
            m += 1
            if m > max(x.norm, 1):
                raise RuntimeError(
                    f"{self.ctx.show(x)} does not divide any power of the "
                    f"Garside element up to {m - 1}")
        return m

    def check_conjugation(self, radius: int) -> VerificationReport:
        """x * delta == delta * phi(x) for every x in the given ball."""
        ctx = self.ctx
        for g in ctx.enumerate_ball(radius):
            if ctx.mul(g, self.delta) != ctx.mul(self.delta, self.phi(g)):
                return VerificationReport(
                    "conjugation", "fail", bound=radius,
                    witness={"element": ctx.show(g)})
        return VerificationReport("conjugation", "pass", bound=radius)

    def check_centrality(self, radius: int) -> VerificationReport:
        """delta^order commutes with every element of the given ball."""
        ctx = self.ctx
        dpow = self.delta_power(self.order)
        for g in ctx.enumerate_ball(radius):
            if ctx.mul(g, dpow) != ctx.mul(dpow, g):
                return VerificationReport(
                    "centrality", "fail", bound=radius,
                    witness={"element": ctx.show(g), "power": self.order})
        return VerificationReport(
            "centrality", "pass", bound=radius,
            details={"power": self.order})

    def to_json(self):
        ctx = self.ctx
        return {
            "delta": ctx.show(self.delta),
            "div": self.div_delta.to_json(ctx),
            "simples": self.simples.to_json(ctx),
            "star": [[ctx.show(x), ctx.show(y)]
                     for x, y in sorted(self.star.items())],
            "phi": [[ctx.show(x), ctx.show(self.phi_on_divs(x))]
                    for x in sorted(self.star)],
            "e": self.order,
            "central_power_radius": self.central_radius,
        }


def _atom_permutation_order(table: dict) -> int:
    order = 1
    for start in table:
        cur = table[start]
        n = 1
        while cur != start:
            cur = table[cur]
            n += 1
        g, a = order, n
        while a:
            g, a = a, g % a
        order = order * n // g
    return order


def build_structure(ctx: MonoidContext, delta,
                    verify_radius: int = 3) -> GarsideStructure:
    """Compute the star map, phi and its order, enumerate the simple
    elements, and verify conjugation and centrality on a ball."""
    delta = ctx.canonical(delta)
    rep = is_garside(ctx, delta)
    if not rep.passed:
        raise ValueError(f"not a Garside element: {rep.summary()}")
    div = divisors(ctx, delta)
    simples = enumerate_simples(ctx, div)

    star = {}
    for x in div:
        comp = ctx.left_divides(x, delta)
        if comp is None or comp not in div.members:
            raise ValueError(
                f"complement of {ctx.show(x)} in the Garside element "
                f"is missing or not a divisor")
        star[x] = comp
    if len(set(star.values())) != len(star):
        raise ValueError("the star map is not a bijection; "
                         "the monoid is probably not cancellative")

    # phi on the atoms determines phi everywhere (letterwise).
    base = {}
    for a in sorted(ctx.ball_level(1)):
        img = star[star[a]]
        if img.norm != 1:
            raise ValueError(
                f"star^2 does not permute the atoms: {ctx.show(a)} maps "
                f"to {ctx.show(img)}")
        base[a.canon] = img.canon
    order = _atom_permutation_order(base)
    tables = [{c: c for c in base}]
    for _ in range(1, order):
        prev = tables[-1]
        tables.append({c: base[prev[c]] for c in prev})
    gs = GarsideStructure(ctx, delta, div, simples, star, tuple(tables),
                          order, verify_radius)

    # star^2 must agree with the letterwise map on every divisor
    for x in div:
        if star[star[x]] != gs.phi(x):
            raise ValueError(f"star^2 is not letterwise at {ctx.show(x)}")
    rep = gs.check_conjugation(verify_radius)
    if not rep.passed:
        raise ValueError(f"conjugation check failed: {rep.summary()}")
    rep = gs.check_centrality(verify_radius)
    if not rep.passed:
        raise ValueError(f"centrality check failed: {rep.summary()}")
    return gs


# -- fractions ---------------------------------------------------------


@dataclass(frozen=True)
class FractionForm:
    """The group element delta^(-k) * product(tail), with k minimal:
    either k = 0 or delta does not left divide the product; hence the
    tail's head factor is never delta when k > 0."""

    k: int
    tail: NormalSequence
    product: Element

    @property
    def key(self):
        return (self.k, self.product)

    def __len__(self):
        return self.k + len(self.tail)

    def letters(self, delta_inv):
        """The automaton word: k copies of the formal inverse letter,
        then the tail factors."""
        return (delta_inv,) * self.k + self.tail.factors

    def to_json(self, ctx):
        return {"k": self.k, "factors": self.tail.to_json(ctx)}

    def describe(self, ctx) -> str:
        head = "D' " * self.k
        body = (" ".join(ctx.show(f) for f in self.tail.factors)
                if len(self.tail) else "1")
        return head + body


def _strip(gs: GarsideStructure, k: int, x: Element):
    ctx = gs.ctx
    while k > 0:
        rest = ctx.left_divides(gs.delta, x)
        if rest is None:
            break
        k -= 1
        x = rest
    return k, x


def _form(gs: GarsideStructure, k: int, x: Element) -> FractionForm:
    k, x = _strip(gs, k, x)
    return FractionForm(k, gs.normalize(x), x)


def to_fraction(ctx: MonoidContext, gs: GarsideStructure, numerator,
                denominator) -> FractionForm:
    """The group element numerator * denominator^(-1) as a fraction
    form: with denominator * c = delta^m, the value is
    delta^(-m) * phi^(-m)(numerator * c), then k is minimized."""
    num = ctx.canonical(numerator)
    den = ctx.canonical(denominator)
    m = gs.embedding_exponent(den)
    comp = ctx.left_divides(den, gs.delta_power(m))
    return _form(gs, m, gs.phi(ctx.mul(num, comp), -m))


def fraction_of_signed(ctx: MonoidContext, gs: GarsideStructure,
                       letters) -> FractionForm:
    """Fold a signed word (pairs (element, +-1)) into a fraction form,
    eliminating each inverse letter g^(-1) as c * delta^(-m) where
    g c = delta^m, and commuting delta^(-m) leftward through phi."""
    k, x = 0, ctx.one
    for item in letters:
        g, sign = item
        g = ctx.canonical(g)
        if sign == 1:
            x = ctx.mul(x, g)
        elif sign == -1:
            m = gs.embedding_exponent(g)
            comp = ctx.left_divides(g, gs.delta_power(m))
            x = gs.phi(ctx.mul(x, comp), -m)
            k += m
        else:
            raise ValueError(f"bad sign {sign!r}")
        k, x = _strip(gs, k, x)
    return _form(gs, k, x)


def combine(ctx: MonoidContext, gs: GarsideStructure, f1: FractionForm,
            f2: FractionForm) -> FractionForm:
    """Product of two fraction forms."""
    x = ctx.mul(gs.phi(f1.product, -f2.k), f2.product)
    return _form(gs, f1.k + f2.k, x)


def group_equal(ctx: MonoidContext, gs: GarsideStructure, w1, w2) -> bool:
    """Word problem for the group of fractions on signed words."""
    return (fraction_of_signed(ctx, gs, w1).key
            == fraction_of_signed(ctx, gs, w2).key)


# -- structural checks -------------------------------------------------


def check_uniform_length(ctx: MonoidContext, gs: GarsideStructure,
                         radius: int) -> VerificationReport:
    """Do all Delta-normal decompositions of each ball element have the
    same length?  Also reports whether the forms are unique outright.
    """
    multi = 0
    checked = 0
    for x in ctx.enumerate_ball(radius):
        if not x.norm:
            continue
        forms = gs.normalize_all(x)
        checked += 1
        if len(forms) > 1:
            multi += 1
        lengths = {len(f) for f in forms}
        if len(lengths) > 1:
            return VerificationReport(
                "uniform-length", "fail", bound=radius,
                witness={"element": ctx.show(x),
                         "lengths": sorted(lengths)},
                details={"unique_forms": False})
    return VerificationReport(
        "uniform-length", "pass", bound=radius,
        details={"elements": checked, "with_several_forms": multi,
                 "unique_forms": multi == 0})


def check_normal_uniqueness_criterion(ctx: MonoidContext,
                                      gs: GarsideStructure) -> VerificationReport:
    """Sufficient condition for a unique greedy head: whenever two
    distinct non-identity Delta-simples s, t have the same divisor set
    D within Div(delta), no common multiple of s and t may again have
    divisor set D.  Since divisor sets only grow along divisibility,
    it is enough that every mcm of the pair have a divisor set strictly
    containing D; the witness element separating the pair is recorded.
    """
    div = gs.div_delta
    nontrivial = sorted(s for s in gs.simples if s.norm)
    pairs = []
    for i, s in enumerate(nontrivial):
        for t in nontrivial[i + 1:]:
            if divisors_in(ctx, div, s) == divisors_in(ctx, div, t):
                pairs.append((s, t))
    witnesses = []
    for s, t in pairs:
        d = divisors_in(ctx, div, s)
        res = mcms(ctx, s, t)
        if not res.complete:
            return VerificationReport(
                "normal-uniqueness-criterion", "fail", complete=False,
                witness={"pair": [ctx.show(s), ctx.show(t)],
                         "reason": "mcm search incomplete"})
        for z in sorted(res.mcms):
            dz = divisors_in(ctx, div, z)
            if not (d < dz):
                return VerificationReport(
                    "normal-uniqueness-criterion", "fail",
                    witness={"pair": [ctx.show(s), ctx.show(t)],
                             "mcm": ctx.show(z)})
            sep = min(dz - d)
            witnesses.append({"pair": [ctx.show(s), ctx.show(t)],
                              "mcm": ctx.show(z),
                              "separator": ctx.show(sep)})
    return VerificationReport(
        "normal-uniqueness-criterion", "pass",
        details={"pairs": len(pairs), "witnesses": witnesses,
                 "vacuous": not pairs})
