"""The generalized Ramond N=2 superalgebra over a grading group Gamma = Z^r.

Basis: L_a, H_a (even), G+_a, G-_a (odd), and the even central element C.
Brackets of basis pairs are computed once per algebra and cached; the audits
spend nearly all their time in :meth:`Algebra.basis_bracket` lookups.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import NotHomogeneous, RankMismatch
from .field import ONE, ZERO, Scalar, as_scalar
from .gamma import GammaEmbedding, gadd, index_text, is_zero, window_indices
from .report import CheckReport

L, H, GP, GM, C = range(5)
KIND_NAMES = ("L", "H", "Gplus", "Gminus", "Central")
KIND_TEXT = ("L", "H", "G+", "G-", "C")
KIND_BY_NAME = {n: k for k, n in enumerate(KIND_NAMES)}

_HALF = as_scalar(Fraction(1, 2))
_THIRD = as_scalar(Fraction(1, 3))
_TWELFTH = as_scalar(Fraction(1, 12))
_QUARTER = as_scalar(Fraction(1, 4))


class Sym(NamedTuple):
    kind: int
    index: tuple

    @property
    def parity(self):
        return 1 if self.kind in (GP, GM) else 0

    @property
    def degree(self):
        return self.index

    def __str__(self):
        if self.kind == C:
            return "C"
        return f"{KIND_TEXT[self.kind]}({','.join(str(k) for k in self.index)})"


def parity(sym):
    return 1 if sym.kind in (GP, GM) else 0


def _acc(out, sym, c):
    v = out.get(sym)
    if v is None:
        if c:
            out[sym] = c
    else:
        v = v + c
        if v:
            out[sym] = v
        else:
            del out[sym]


def _acc_scaled(out, src, c):
    for t, d in src.items():
        v = out.get(t)
        if v is None:
            out[t] = d * c
        else:
            v = v + d * c
            if v:
                out[t] = v
            else:
                del out[t]


class Element:
    """Finite F-linear combination of basis symbols. Treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {s: as_scalar(c) for s, c in dict(terms).items() if c}

    @classmethod
    def _wrap(cls, terms):
        e = cls.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def basis(cls, sym, coeff=ONE):
        return cls._wrap({sym: as_scalar(coeff)} if coeff else {})

    def coeff(self, sym):
        return self.terms.get(sym, ZERO)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def support(self):
        return sorted(self.terms)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for s, c in other.terms.items():
            _acc(out, s, c)
        return Element._wrap(out)

    def __neg__(self):
        return Element._wrap({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return Element()
        return Element._wrap({s: v * c for s, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(as_scalar(1) / as_scalar(c))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"Element({render_element(self)!r})"


def _coeff_prefix(c):
    """Text for a positive-leading coefficient c in front of a symbol."""
    if c == ONE:
        return ""
    s = str(c)
    if c.den is None and len(c.num) > 1:
        s = f"({s})"
    return s + "*"


def render_element(x):
    """Canonical text: terms in (kind, index) order, explicit signs."""
    if not x.terms:
        return "0"
    parts = []
    for sym, c in sorted(x.terms.items()):
        neg = c.sign_hint() < 0
        body = _coeff_prefix(-c if neg else c) + str(sym)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


class Algebra:
    """The superalgebra for a fixed embedding of Gamma into F."""

    def __init__(self, emb=None):
        self.emb = emb if emb is not None else GammaEmbedding.rational(1)
        self.rank = self.emb.rank
        self.zero = (0,) * self.rank
        self.central = Sym(C, self.zero)
        self._iota = {}
        self._cache = {}

    def __getstate__(self):
        return {"emb": self.emb}

    def __setstate__(self, state):
        self.__init__(state["emb"])

    def __repr__(self):
        return f"Algebra(rank={self.rank}, generators={self.emb.describe()})"

    # symbols
    def sym(self, kind, index=None):
        if isinstance(kind, str):
            kind = KIND_BY_NAME[kind] if kind in KIND_BY_NAME else KIND_TEXT.index(kind)
        if kind == C:
            return self.central
        index = tuple(index)
        if len(index) != self.rank:
            raise RankMismatch(f"index {index} has rank {len(index)}, expected {self.rank}")
        return Sym(kind, index)

    def element(self, kind, index=None, coeff=ONE):
        return Element.basis(self.sym(kind, index), coeff)

    def window(self, n):
        """Basis symbols with every index coordinate in [-n, n], plus C."""
        idx = window_indices(self.rank, n)
        out = [Sym(k, m) for k in (L, H, GP, GM) for m in idx]
        out.append(self.central)
        return out

    def iota(self, m):
        v = self._iota.get(m)
        if v is None:
            v = self._iota[m] = self.emb(m)
        return v

    # bracket
    def basis_bracket(self, s, t):
        """[s, t] for basis symbols as a read-only {Sym: Scalar} dict."""
        key = (s, t)
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = self._compute(s, t)
        return out

    def _compute(self, s, t):
        ks, kt = s.kind, t.kind
        if ks == C or kt == C:
            return {}
        a, b = self.iota(s.index), self.iota(t.index)
        idx = gadd(s.index, t.index)
        delta = is_zero(idx)
        out = {}
        if ks == L:
            if kt == L:
                _acc(out, Sym(L, idx), a - b)
                if delta:
                    _acc(out, self.central, (a * a * a - a) * _TWELFTH)
            elif kt == H:
                _acc(out, Sym(H, idx), -b)
            else:
                _acc(out, Sym(kt, idx), a * _HALF - b)
        elif ks == H:
            if kt == L:
                _acc(out, Sym(H, idx), a)
            elif kt == H:
                if delta:
                    _acc(out, self.central, a * _THIRD)
            else:
                _acc(out, Sym(kt, idx), ONE if kt == GP else -ONE)
        else:
            if kt == L:
                _acc(out, Sym(ks, idx), a - b * _HALF)
            elif kt == H:
                _acc(out, Sym(ks, idx), -ONE if ks == GP else ONE)
            elif ks != kt:
                # [G-_p, G+_q] = 2L - (p - q)H + c/3 (p^2 - 1/4) delta; symmetric
                p, q = (a, b) if ks == GM else (b, a)
                _acc(out, Sym(L, idx), Scalar(2))
                _acc(out, Sym(H, idx), q - p)
                if delta:
                    _acc(out, self.central, (p * p - _QUARTER) * _THIRD)
        return out

    def bracket_terms(self, x, y):
        out = {}
        B = self.basis_bracket
        for s, a in x.items():
            for t, b in y.items():
                r = B(s, t)
                if r:
                    _acc_scaled(out, r, a * b)
        return out

    def bracket(self, x, y):
        """Bilinear super-bracket [x, y]."""
        self._check(x)
        self._check(y)
        return Element._wrap(self.bracket_terms(x.terms, y.terms))

    def ad_terms(self, s, terms):
        """[s, y] for a basis symbol s and y given as a term dict."""
        out = {}
        B = self.basis_bracket
        for t, b in terms.items():
            r = B(s, t)
            if r:
                _acc_scaled(out, r, b)
        return out

    def _check(self, x):
        for s in x.terms:
            if len(s.index) != self.rank:
                raise RankMismatch(f"{s} does not have rank {self.rank}")

    def degree_parity(self, x):
        """(degree, parity) of a homogeneous element; NotHomogeneous otherwise."""
        self._check(x)
        found = None
        for s in x.terms:
            dp = (s.index, parity(s))
            if found is None:
                found = dp
            elif dp != found:
                raise NotHomogeneous(f"{render_element(x)} is not homogeneous")
        return found if found is not None else (self.zero, 0)

    def meta(self, n):
        return {"rank": self.rank, "generators": self.emb.describe(), "window": n}


def super_sign(p, q):
    return -1 if (p and q) else 1


# -- audits ---------------------------------------------------------------------

def grade_audit(alg, n):
    """[L_0, x] = -iota(deg x) x for every window basis symbol."""
    rep = CheckReport(meta=alg.meta(n))
    l0 = Sym(L, alg.zero)
    for x in alg.window(n):
        lhs = alg.basis_bracket(l0, x)
        rhs = {x: -alg.iota(x.index)} if alg.iota(x.index) else {}
        rep.check("grade", lhs == rhs, lambda: {
            "inputs": [str(x)], "lhs": _t(lhs), "rhs": _t(rhs)})
    return rep


def _t(terms):
    return render_element(Element._wrap(terms))


def _degree_ok(alg, s, t, terms):
    want = gadd(s.index, t.index)
    for u in terms:
        if u.kind == C:
            if not is_zero(want):
                return False
        elif u.index != want:
            return False
    return True


def _pair_checks(alg, syms, rep):
    B = alg.basis_bracket
    for x in syms:
        px = parity(x)
        for y in syms:
            py = parity(y)
            xy = B(x, y)
            yx = B(y, x)
            sign = -super_sign(px, py)
            expect = {s: c * sign for s, c in yx.items()}
            rep.check("structure.antisymmetry", xy == expect, lambda: {
                "inputs": [str(x), str(y)], "lhs": _t(xy), "rhs": _t(expect)})
            rep.check("structure.degree", _degree_ok(alg, x, y, xy), lambda: {
                "inputs": [str(x), str(y)], "lhs": _t(xy), "rhs": "degree " + index_text(gadd(x.index, y.index))})
            ok = all(parity(u) == (px ^ py) for u in xy)
            rep.check("structure.parity", ok, lambda: {
                "inputs": [str(x), str(y)], "lhs": _t(xy), "rhs": f"parity {px ^ py}"})


def jacobi_chunk(alg, xs, syms):
    """Super-Jacobi [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] for x in xs."""
    rep = CheckReport()
    B = alg.basis_bracket
    for x in xs:
        px = parity(x)
        for y in syms:
            xy = B(x, y)
            sxy = super_sign(px, parity(y))
            for z in syms:
                lhs = {}
                for s, c in B(y, z).items():
                    r = B(x, s)
                    if r:
                        _acc_scaled(lhs, r, c)
                rhs = {}
                for s, c in xy.items():
                    r = B(s, z)
                    if r:
                        _acc_scaled(rhs, r, c)
                for s, c in B(x, z).items():
                    r = B(y, s)
                    if r:
                        _acc_scaled(rhs, r, c if sxy == 1 else -c)
                if lhs != rhs:
                    rep.check("structure.jacobi", False, lambda: {
                        "inputs": [str(x), str(y), str(z)], "lhs": _t(lhs), "rhs": _t(rhs)})
                else:
                    rep.check("structure.jacobi", True)
    return rep


def structure_audit(alg, n, workers=1):
    """Super-antisymmetry, degree and parity additivity on all window pairs,
    and super-Jacobi on all ordered window triples."""
    from .parallel import map_chunks

    rep = CheckReport(meta=alg.meta(n))
    syms = alg.window(n)
    _pair_checks(alg, syms, rep)
    chunks = [syms[i:i + 1] for i in range(len(syms))]
    for part in map_chunks(jacobi_chunk, alg, chunks, syms, workers=workers):
        rep.merge(part)
    return rep


def ad_table(alg, x, n):
    """The graded map y -> [x, y] on the window of radius n."""
    from .derivations import GradedMapTable

    if not isinstance(x, Element):
        x = Element.basis(x)
    deg, par = alg.degree_parity(x)
    entries = {y: Element._wrap(_ad(alg, x, y)) for y in alg.window(n)}
    return GradedMapTable(deg, par, n, entries)


def _ad(alg, x, y):
    out = {}
    B = alg.basis_bracket
    for s, a in x.terms.items():
        r = B(s, y)
        if r:
            _acc_scaled(out, r, a)
    return out


def nilpotency_check(alg, gamma, sign, n, k=4):
    """(ad G^sign_gamma)^k kills every window basis symbol."""
    rep = CheckReport(meta=alg.meta(n))
    g = alg.sym(GP if sign in (1, "+") else GM, gamma)
    for x in alg.window(n):
        cur = {x: ONE}
        for _ in range(k):
            cur = alg.ad_terms(g, cur)
            if not cur:
                break
        rep.check("nilpotency", not cur, lambda: {
            "inputs": [str(g), str(x), f"k={k}"], "lhs": _t(cur), "rhs": "0"})
    return rep
