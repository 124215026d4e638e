"""Homogeneous superderivations as finite tables, and their classification.

A derivation of degree gamma and parity p is stored as its value on every
basis symbol of a window. The three constructive families are: odd inner
derivations, even inner derivations of nonzero degree, and degree-zero
scalings x_a -> phi(a) x_a twisted by +-e0 on G+-. ``decompose_derivation``
reads the family parameters off an arbitrary table and then rebuilds the
table to confirm the read-off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import C, GM, GP, H, KIND_BY_NAME, KIND_NAMES, L, Element, Sym, _acc_scaled, ad_table, parity, render_element, super_sign
from .errors import (CentralNotKilled, ClassificationMismatch, DegreeMismatch, NotDerivation,
                     ParityMismatch, WindowTooSmall, ZeroGammaForEvenInner)
from .field import ONE, ZERO, Scalar, as_scalar, solve_linear
from .gamma import AdditiveHom, gadd, index_text, is_zero, unit_vectors
from .report import CheckReport

_HALF = as_scalar(Fraction(1, 2))
_THIRD = as_scalar(Fraction(1, 3))
_SIXTH = as_scalar(Fraction(1, 6))
_QUARTER = as_scalar(Fraction(1, 4))


def _in_window(sym, n):
    return all(-n <= k <= n for k in sym.index)


@dataclass
class GradedMapTable:
    degree: tuple
    parity: int
    window: int
    entries: dict = field(default_factory=dict)

    def __call__(self, x):
        return self.apply(x)

    def apply_sym(self, sym):
        v = self.entries.get(sym)
        if v is None:
            raise WindowTooSmall(f"{sym} is outside the table window {self.window}")
        return v

    def apply(self, x):
        if isinstance(x, Sym):
            return self.apply_sym(x)
        out = {}
        for s, c in x.terms.items():
            _acc_scaled(out, self.apply_sym(s).terms, c)
        return Element._wrap(out)

    def apply_terms(self, terms):
        out = {}
        for s, c in terms.items():
            _acc_scaled(out, self.apply_sym(s).terms, c)
        return out

    def with_entry(self, sym, value):
        entries = dict(self.entries)
        entries[sym] = value
        return GradedMapTable(self.degree, self.parity, self.window, entries)

    def __add__(self, other):
        if (self.degree, self.parity) != (other.degree, other.parity):
            raise DegreeMismatch("tables of different degree or parity")
        n = min(self.window, other.window)
        entries = {s: v + other.entries[s] for s, v in self.entries.items()
                   if _in_window(s, n)}
        return GradedMapTable(self.degree, self.parity, n, entries)

    def is_zero(self):
        return not any(self.entries.values())

    # JSON file format
    def to_dict(self):
        return {
            "degree": list(self.degree),
            "parity": "odd" if self.parity else "even",
            "window": self.window,
            "entries": [
                {"symbol": _sym_dict(s), "value": [dict(_sym_dict(t), coeff=str(c)) for t, c in v]}
                for s, v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_dict(cls, d):
        degree = tuple(int(k) for k in d["degree"])
        par = {"even": 0, "odd": 1}[d["parity"]]
        entries = {}
        for item in d["entries"]:
            sym = _sym_from(item["symbol"], len(degree))
            entries[sym] = Element({_sym_from(t, len(degree)): Scalar.parse(t["coeff"])
                                    for t in item["value"]})
        return cls(degree, par, int(d["window"]), entries)


def _sym_dict(s):
    return {"kind": KIND_NAMES[s.kind], "index": list(s.index)}


def _sym_from(d, rank):
    kind = KIND_BY_NAME[d["kind"]]
    idx = tuple(int(k) for k in d.get("index", [0] * rank)) if kind != C else (0,) * rank
    return Sym(kind, idx)


# -- recipes ------------------------------------------------------------------

@dataclass(frozen=True)
class Scaling:
    phi: AdditiveHom
    e0: Scalar


@dataclass(frozen=True)
class OddInner:
    xi0: Scalar
    xi1: Scalar
    gamma: tuple


@dataclass(frozen=True)
class EvenInner:
    h0: Scalar
    eta: Scalar
    gamma: tuple


@dataclass(frozen=True)
class Ad:
    x: Element


def recipe_to_dict(recipe):
    if isinstance(recipe, Scaling):
        return {"kind": "scaling", "phi": [str(v) for v in recipe.phi.values], "e0": str(recipe.e0)}
    if isinstance(recipe, OddInner):
        return {"kind": "odd-inner", "xi0": str(recipe.xi0), "xi1": str(recipe.xi1),
                "gamma": list(recipe.gamma)}
    if isinstance(recipe, EvenInner):
        return {"kind": "even-inner", "h0": str(recipe.h0), "eta": str(recipe.eta),
                "gamma": list(recipe.gamma)}
    return {"kind": "ad", "element": render_element(recipe.x)}


def inner_element(alg, recipe):
    """The element x with make_derivation(recipe) = ad x, when one exists.

    Scaling recipes are inner only when phi is a multiple of iota; returns
    None otherwise.
    """
    if isinstance(recipe, Ad):
        return recipe.x
    if isinstance(recipe, OddInner):
        g = recipe.gamma
        return alg.element(GP, g, -recipe.xi0) + alg.element(GM, g, recipe.xi1)
    if isinstance(recipe, EvenInner):
        g = alg.iota(recipe.gamma)
        k2 = recipe.eta / g
        k1 = 2 * (recipe.h0 + k2) / g
        return alg.element(L, recipe.gamma, k1) + alg.element(H, recipe.gamma, k2)
    from .gamma import proportionality_constant
    k = proportionality_constant(recipe.phi, alg.emb)
    if k is None:
        return None
    return alg.element(L, alg.zero, -k) + alg.element(H, alg.zero, recipe.e0)


def make_derivation(alg, recipe, n):
    """Tabulate the derivation described by ``recipe`` on the radius-n window."""
    if n < 1:
        raise WindowTooSmall("derivation tables need window radius >= 1")
    if isinstance(recipe, Ad):
        return ad_table(alg, recipe.x, n)
    syms = alg.window(n)
    entries = {}
    if isinstance(recipe, Scaling):
        phi, e0 = recipe.phi, as_scalar(recipe.e0)
        for s in syms:
            if s.kind == C:
                entries[s] = Element()
                continue
            v = phi(s.index)
            if s.kind == GP:
                v = v + e0
            elif s.kind == GM:
                v = v - e0
            entries[s] = Element.basis(s, v)
        return GradedMapTable(alg.zero, 0, n, entries)

    if isinstance(recipe, OddInner):
        x0, x1, gam = as_scalar(recipe.xi0), as_scalar(recipe.xi1), tuple(recipe.gamma)
        g = alg.iota(gam)
        for s in syms:
            if s.kind == C:
                entries[s] = Element()
                continue
            a = alg.iota(s.index)
            t = gadd(s.index, gam)
            delta = is_zero(t)
            if s.kind == L:
                k = a * _HALF - g
                terms = {Sym(GP, t): k * x0, Sym(GM, t): -k * x1}
            elif s.kind == H:
                terms = {Sym(GP, t): x0, Sym(GM, t): x1}
            elif s.kind == GP:
                terms = {Sym(L, t): 2 * x1, Sym(H, t): (a - g) * x1}
                if delta:
                    terms[alg.central] = (a * a - _QUARTER) * _THIRD * x1
            else:
                terms = {Sym(L, t): -2 * x0, Sym(H, t): (a - g) * x0}
                if delta:
                    terms[alg.central] = -(a * a - _QUARTER) * _THIRD * x0
            entries[s] = Element(terms)
        return GradedMapTable(gam, 1, n, entries)

    if isinstance(recipe, EvenInner):
        h0, eta, gam = as_scalar(recipe.h0), as_scalar(recipe.eta), tuple(recipe.gamma)
        g = alg.iota(gam)
        if not g:
            raise ZeroGammaForEvenInner(f"iota({index_text(gam)}) = 0")
        gi = g.inverse()
        w = h0 + gi * eta
        for s in syms:
            if s.kind == C:
                entries[s] = Element()
                continue
            a = alg.iota(s.index)
            t = gadd(s.index, gam)
            delta = is_zero(t)
            if s.kind == L:
                terms = {Sym(L, t): gi * (g - a) * 2 * w, Sym(H, t): eta}
                if delta:
                    terms[alg.central] = _SIXTH * gi * (a - a * a * a) * w
            elif s.kind == H:
                terms = {Sym(H, t): -gi * a * 2 * w}
                if delta:
                    terms[alg.central] = eta * _THIRD
            elif s.kind == GP:
                terms = {Sym(GP, t): gi * (g - 2 * a) * h0 + 2 * gi * gi * (g - a) * eta}
            else:
                terms = {Sym(GM, t): gi * (g - 2 * a) * h0 - 2 * gi * gi * a * eta}
            entries[s] = Element(terms)
        return GradedMapTable(gam, 0, n, entries)
    raise TypeError(f"unknown derivation recipe {recipe!r}")


# -- audits ---------------------------------------------------------------------

def _shape_checks(alg, D, syms, rep):
    for s in syms:
        v = D.entries.get(s)
        if v is None:
            rep.check("table.complete", False, {"inputs": [str(s)], "lhs": "missing", "rhs": "entry"})
            continue
        want = gadd(s.index, D.degree)
        ok = True
        for t in v.terms:
            if parity(t) != parity(s) ^ D.parity:
                ok = False
            if t.kind == C:
                if not is_zero(want):
                    ok = False
            elif t.index != want:
                ok = False
        rep.check("table.shape", ok, lambda: {
            "inputs": [str(s)], "lhs": render_element(v),
            "rhs": f"degree {index_text(want)}, parity {parity(s) ^ D.parity}"})


def leibniz_audit(alg, D, n=None):
    """D[x,y] = [Dx,y] + (-1)^{|D||x|}[x,Dy] on window pairs with deg x + deg y
    inside the window."""
    n = D.window if n is None else n
    if n > D.window:
        raise WindowTooSmall(f"audit window {n} exceeds table window {D.window}")
    rep = CheckReport(meta=dict(alg.meta(n), degree=list(D.degree),
                                parity="odd" if D.parity else "even"))
    syms = alg.window(n)
    _shape_checks(alg, D, syms, rep)
    B = alg.basis_bracket
    images = {s: D.entries.get(s) for s in syms}
    if any(v is None for v in images.values()):
        return rep
    for x in syms:
        dx = images[x].terms
        sign = super_sign(D.parity, parity(x))
        for y in syms:
            if not _in_window(Sym(0, gadd(x.index, y.index)), n):
                continue
            lhs = D.apply_terms(B(x, y))
            rhs = {}
            for s, c in dx.items():
                r = B(s, y)
                if r:
                    _acc_scaled(rhs, r, c)
            for s, c in images[y].terms.items():
                r = B(x, s)
                if r:
                    _acc_scaled(rhs, r, c if sign == 1 else -c)
            rep.check("leibniz", lhs == rhs, lambda: {
                "inputs": [str(x), str(y)],
                "lhs": render_element(Element._wrap(lhs)),
                "rhs": render_element(Element._wrap(rhs))})
    return rep


@dataclass
class MapComparison:
    equal: bool
    symbol: Sym | None = None
    left: Element | None = None
    right: Element | None = None

    def __bool__(self):
        return self.equal


def map_equal(D1, D2, n=None):
    """Compare two tables entrywise on the radius-n window."""
    if D1.degree != D2.degree:
        raise DegreeMismatch(f"degrees {D1.degree} and {D2.degree} differ")
    if D1.parity != D2.parity:
        raise ParityMismatch("parities differ")
    n = min(D1.window, D2.window) if n is None else n
    if n > D1.window or n > D2.window:
        raise WindowTooSmall(f"window {n} exceeds a table window")
    for s in sorted(set(D1.entries) | set(D2.entries)):
        if not _in_window(s, n):
            continue
        a, b = D1.entries.get(s, Element()), D2.entries.get(s, Element())
        if a != b:
            return MapComparison(False, s, a, b)
    return MapComparison(True)


def degree_zero_inner_solution(alg, D):
    """Solve ad(x L_0 + y H_0) = D by exact read-off on L_{e_i} and G+_0.

    Returns the inner element, or None when the read-off system is
    inconsistent or its solution does not reproduce D.
    """
    if D.parity or not is_zero(D.degree):
        raise DegreeMismatch("read-off applies to even degree-zero tables")
    rows, rhs = [], []
    for e in unit_vectors(alg.rank):
        s = Sym(L, e)
        rows.append([-alg.iota(e), ZERO])
        rhs.append(D.apply_sym(s).coeff(s))
    g0 = Sym(GP, alg.zero)
    rows.append([ZERO, ONE])
    rhs.append(D.apply_sym(g0).coeff(g0))
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    x = alg.element(L, alg.zero, sol[0]) + alg.element(H, alg.zero, sol[1])
    if not map_equal(ad_table(alg, x, D.window), D):
        return None
    return x


def decompose_derivation(alg, D):
    """Classify a derivation table; returns the recipe that rebuilds it exactly."""
    rep = leibniz_audit(alg, D)
    if not rep.passed:
        w = rep.failures()[0]
        raise NotDerivation(f"{w.id} fails: {w.witness}")
    if D.window < 1:
        raise WindowTooSmall("classification needs window radius >= 1")
    gam = tuple(D.degree)
    zero = alg.zero
    if D.parity:
        img = D.apply_sym(Sym(H, zero))
        recipe = OddInner(img.coeff(Sym(GP, gam)), img.coeff(Sym(GM, gam)), gam)
    elif not is_zero(gam):
        if not alg.iota(gam):
            raise ZeroGammaForEvenInner(f"iota({index_text(gam)}) = 0")
        eta = D.apply_sym(Sym(L, zero)).coeff(Sym(H, gam))
        h0 = D.apply_sym(Sym(GM, zero)).coeff(Sym(GM, gam))
        recipe = EvenInner(h0, eta, gam)
    else:
        dc = D.apply_sym(alg.central)
        if dc:
            raise CentralNotKilled(f"D(C) = {render_element(dc)}")
        phi = AdditiveHom(tuple(D.apply_sym(Sym(L, e)).coeff(Sym(L, e))
                                for e in unit_vectors(alg.rank)))
        g0 = Sym(GP, zero)
        recipe = Scaling(phi, D.apply_sym(g0).coeff(g0))
    cmp = map_equal(make_derivation(alg, recipe, D.window), D)
    if not cmp:
        raise ClassificationMismatch(
            f"rebuilt table differs at {cmp.symbol}: {cmp.left} vs {cmp.right}")
    return recipe
