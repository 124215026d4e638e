"""The automorphism family sigma(f, xi, eps, a, b) and its group law.

``aut_apply`` is the ground truth: every parameter-level law (composition,
inverse) is checked against applying the maps one after the other on basis
symbols. ``compose_paper`` and ``inverse_paper`` transcribe the published
closed forms unchanged so audits can measure where they disagree with the
functional composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .algebra import C, GM, GP, H, L, Element, Sym, _acc_scaled, parity, render_element
from .errors import RankMismatch
from .field import ONE, Scalar, as_scalar
from .gamma import MultiplicativeHom, gadd, gneg, gscale, gsub, index_text, is_zero, unit_vectors
from .report import CheckReport

_THIRD = as_scalar(Fraction(1, 3))
_SIXTH = as_scalar(Fraction(1, 6))


@dataclass(frozen=True)
class AutParams:
    f: MultiplicativeHom
    xi: int
    eps: int
    a: tuple
    b: Scalar

    def __post_init__(self):
        if self.xi not in (1, -1) or self.eps not in (1, -1):
            raise ValueError("xi and eps must be +1 or -1")
        b = as_scalar(self.b)
        if not b:
            raise ValueError("b must be nonzero")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", tuple(int(k) for k in self.a))
        if not isinstance(self.f, MultiplicativeHom):
            object.__setattr__(self, "f", MultiplicativeHom(tuple(self.f)))
        if self.f.rank != len(self.a):
            raise RankMismatch("f and a have different ranks")

    def __getstate__(self):
        return {k: v for k, v in self.__dict__.items() if k != "_consts"}

    @property
    def rank(self):
        return len(self.a)

    @classmethod
    def identity(cls, r=1):
        return cls(MultiplicativeHom.one(r), 1, 1, (0,) * r, ONE)

    def to_dict(self):
        return {"f": [str(v) for v in self.f.values], "xi": self.xi, "eps": self.eps,
                "a": list(self.a), "b": str(self.b)}

    @classmethod
    def from_dict(cls, d):
        return cls(MultiplicativeHom(tuple(as_scalar(str(v)) for v in d["f"])),
                   int(d["xi"]), int(d["eps"]), tuple(int(k) for k in d["a"]),
                   as_scalar(str(d["b"])))

    def text(self):
        f = ",".join(str(v) for v in self.f.values)
        a = ",".join(str(k) for k in self.a)
        return f"--f {f} --xi {self.xi} --eps {self.eps} --a {a} --b {self.b}"

    def __str__(self):
        f = ",".join(str(v) for v in self.f.values)
        return f"sigma(f=({f}), xi={self.xi}, eps={self.eps}, a={index_text(self.a)}, b={self.b})"


def _check(alg, p):
    if p.rank != alg.rank:
        raise RankMismatch(f"parameters of rank {p.rank} on an algebra of rank {alg.rank}")


_POWERS = {}


def _f(p, m):
    # power tables are shared between parameter tuples with the same f
    vals = p.f.values
    table = _POWERS.get(vals)
    if table is None:
        if len(_POWERS) > 20000:
            _POWERS.clear()
        table = _POWERS[vals] = {}
    v = table.get(m)
    if v is None:
        v = table[m] = p.f(m)
    return v


class _Consts:
    __slots__ = ("ia", "l_c", "h_c", "gp", "gm", "images")

    def __init__(self, alg, p):
        ia = alg.iota(p.a)
        self.ia = ia
        self.l_c = ia * ia * _SIXTH * p.eps
        self.h_c = ia * _THIRD * (p.xi * p.eps)
        self.gp = p.b
        self.gm = p.b.inverse() * p.eps
        self.images = {}


def _consts(alg, p):
    c = p.__dict__.get("_consts")
    if c is None or c[0] is not alg:
        c = (alg, _Consts(alg, p))
        object.__setattr__(p, "_consts", c)
    return c[1]


def image_terms(alg, p, s):
    """sigma(p)(s) for a basis symbol, as a read-only {Sym: Scalar} dict."""
    k = _consts(alg, p)
    out = k.images.get(s)
    if out is None:
        out = k.images[s] = _image(alg, p, k, s)
    return out


def _image(alg, p, k, s):
    kind = s.kind
    eps, xi = p.eps, p.xi
    if kind == C:
        return {alg.central: ONE if eps == 1 else -ONE}
    alpha = s.index
    fa = _f(p, alpha)
    if kind == L or kind == H:
        ea = alpha if eps == 1 else gneg(alpha)
        if kind == L:
            out = {Sym(L, ea): fa if eps == 1 else -fa}
            if k.ia:
                out[Sym(H, ea)] = fa * k.ia
                if not any(alpha):
                    out[alg.central] = k.l_c
        else:
            out = {Sym(H, ea): fa if xi == 1 else -fa}
            if k.ia and not any(alpha):
                out[alg.central] = k.h_c
        return out
    if (kind == GP) == (xi == 1):
        target = Sym(GP, gadd(alpha, p.a))
    else:
        target = Sym(GM, gsub(alpha, p.a))
    if eps == -1:
        target = Sym(target.kind, gneg(target.index))
    return {target: fa * (k.gp if kind == GP else k.gm)}


def apply_terms(alg, p, terms):
    out = {}
    for s, c in terms.items():
        _acc_scaled(out, image_terms(alg, p, s), c)
    return out


def aut_apply(alg, p, x):
    """Linear extension of sigma(p) to an Element (or basis symbol)."""
    _check(alg, p)
    if isinstance(x, Sym):
        return Element._wrap(dict(image_terms(alg, p, x)))
    alg._check(x)
    return Element._wrap(apply_terms(alg, p, x.terms))


def _t(terms):
    return render_element(Element._wrap(terms))


def _form_ok(alg, p, s, img):
    """Monomial (triangular) form, parity and degree of sigma(s)."""
    if any(parity(t) != parity(s) for t in img):
        return False
    k, alpha = s.kind, s.index
    if k == C:
        return img == {alg.central: as_scalar(p.eps)}
    ea = alpha if p.eps == 1 else gneg(alpha)
    if k in (GP, GM):
        if len(img) != 1:
            return False
        (t, c), = img.items()
        to_plus = (k == GP) == (p.xi == 1)
        shift = gadd(alpha, p.a) if to_plus else gsub(alpha, p.a)
        want = shift if p.eps == 1 else gneg(shift)
        return bool(c) and t == Sym(GP if to_plus else GM, want)
    lead = Sym(k, ea)
    if not img.get(lead):
        return False
    for t in img:
        if t.kind == C:
            if not is_zero(alpha):
                return False
        elif t.index != ea or (k == H and t.kind != H) or t.kind not in (L, H):
            return False
    return True


def aut_audit(alg, p, n):
    """Bracket preservation on all window pairs plus per-symbol form checks."""
    _check(alg, p)
    rep = CheckReport(meta=dict(alg.meta(n), params=p.to_dict()))
    syms = alg.window(n)
    images = {s: image_terms(alg, p, s) for s in syms}
    for s in syms:
        img = images[s]
        rep.check("aut.form", _form_ok(alg, p, s, img), lambda: {
            "inputs": [str(p), str(s)], "lhs": _t(img), "rhs": "monomial image"})
    rep.check("aut.central", images[alg.central] == {alg.central: as_scalar(p.eps)}, lambda: {
        "inputs": [str(p), "C"], "lhs": _t(images[alg.central]), "rhs": f"{p.eps}*C"})
    B = alg.basis_bracket
    for x in syms:
        sx = images[x]
        for y in syms:
            lhs = apply_terms(alg, p, B(x, y))
            rhs = alg.bracket_terms(sx, images[y])
            rep.check("aut.homomorphism", lhs == rhs, lambda: {
                "inputs": [str(p), str(x), str(y)], "lhs": _t(lhs), "rhs": _t(rhs)})
    return rep


# -- parameter-level group law --------------------------------------------------

def _ranks(p1, p2):
    if p1.rank != p2.rank:
        raise RankMismatch("parameter ranks differ")


def _phi(p1, p2):
    # phi(m) = f1(eps2 m) f2(m), evaluated on generators
    return MultiplicativeHom(tuple(v1 ** p2.eps * v2 for v1, v2 in zip(p1.f.values, p2.f.values)))


def aut_compose(p1, p2):
    """Parameters of sigma(p1) o sigma(p2) (p2 applied first)."""
    _ranks(p1, p2)
    a = gadd(gscale(p2.eps, p1.a), gscale(p1.xi, p2.a))
    f1a2 = p1.f(gscale(p2.eps, p2.a))
    if p2.xi == 1:
        b = f1a2 * p1.b * p2.b
    else:
        b = p2.b / (f1a2 * p1.b)
        if p1.eps == -1:
            b = -b
    return AutParams(_phi(p1, p2), p1.xi * p2.xi, p1.eps * p2.eps, a, b)


def compose_paper(p1, p2):
    """The printed product law, transcribed without correction."""
    _ranks(p1, p2)
    a = gadd(gscale(p1.xi * p2.xi * p1.eps, p1.a), gscale(p2.xi, p2.a))
    b = p1.f(gscale(p2.xi * p2.eps, p2.a)) * p1.b ** p2.xi * p2.b
    return AutParams(_phi(p1, p2), p1.xi * p2.xi, p1.eps * p2.eps, a, b)


def aut_inverse(p):
    """Parameters q with sigma(q) = sigma(p)^{-1}."""
    fa = p.f(p.a)
    if p.xi == 1:
        b = fa / p.b
    else:
        b = fa * p.b if p.eps == 1 else -(fa * p.b)
    return AutParams(p.f.power(-p.eps), p.xi, p.eps, gscale(-p.xi * p.eps, p.a), b)


def inverse_paper(p):
    """The printed inverse, with sgn(0) = 1 as defined alongside it."""
    sgn = 1 if p.xi + p.eps >= 0 else -1
    b = p.f(p.a) / p.b
    return AutParams(p.f.power(-p.eps), p.xi, p.eps, gscale(-p.xi * p.eps, p.a),
                     b if sgn == 1 else -b)


class KleinClass(NamedTuple):
    xi: int
    eps: int
    tau: bool

    def __mul__(self, other):
        xi, eps = self.xi * other.xi, self.eps * other.eps
        return KleinClass(xi, eps, xi == 1 and eps == 1)


def klein_class(p):
    return KleinClass(p.xi, p.eps, p.xi == 1 and p.eps == 1)


def tau_by_action(alg, p):
    """Tau membership read from the map itself: sigma(C) = C and sigma(G+_0)
    stays in the G+ span."""
    img_c = image_terms(alg, p, alg.central)
    img_g = image_terms(alg, p, Sym(GP, alg.zero))
    return img_c == {alg.central: ONE} and all(t.kind == GP for t in img_g)


# -- functional oracle ----------------------------------------------------------

def oracle_mismatch(alg, p1, p2, q, syms):
    """First symbol where sigma(q) differs from sigma(p1) o sigma(p2), or None."""
    for s in syms:
        want = apply_terms(alg, p1, image_terms(alg, p2, s))
        got = image_terms(alg, q, s)
        if want != got:
            return s, got, want
    return None


def oracle_readout(alg, p1, p2):
    """Read the composite's parameters off sigma(p1) o sigma(p2) directly.

    eps from C, xi from where G+_0 lands, iota(a) from the H_0 part of
    sigma(L_0), b from the G+_0 coefficient, f from sigma(L_{e_i}).
    """
    def comp(s):
        return apply_terms(alg, p1, image_terms(alg, p2, s))

    eps = 1 if comp(alg.central).get(alg.central) == ONE else -1
    (g_sym, b), = comp(Sym(GP, alg.zero)).items()
    xi = 1 if g_sym.kind == GP else -1
    img_l0 = comp(Sym(L, alg.zero))
    iota_a = img_l0.get(Sym(H, alg.zero), Scalar(0))
    f = []
    for e in unit_vectors(alg.rank):
        img = comp(Sym(L, e))
        c = img[Sym(L, e if eps == 1 else gneg(e))]
        f.append(c if eps == 1 else -c)
    return {"f": tuple(f), "xi": xi, "eps": eps, "iota_a": iota_a, "b": b}


def _components(alg, q):
    return {"f": q.f.values, "xi": q.xi, "eps": q.eps, "iota_a": alg.iota(q.a), "b": q.b}


def compose_chunk(alg, pairs, syms, samples):
    """Oracle checks for a slice of ordered sample pairs (i, j)."""
    rep = CheckReport()
    paper = {"pairs": 0, "agree": 0, "disagree": 0, "a_disagree": 0,
             "a_disagree_eps_differ": 0, "b_disagree": 0, "witness": None}
    for i, j in pairs:
        p1, p2 = samples[i], samples[j]
        q = aut_compose(p1, p2)
        bad = oracle_mismatch(alg, p1, p2, q, syms)
        rep.check("group.compose_oracle", bad is None, lambda: {
            "inputs": [str(p1), str(p2), str(bad[0])],
            "lhs": _t(bad[1]), "rhs": _t(bad[2])})
        kc = klein_class(q)
        rep.check("group.klein_homomorphism", kc == klein_class(p1) * klein_class(p2), lambda: {
            "inputs": [str(p1), str(p2)], "lhs": str(tuple(kc)),
            "rhs": str(tuple(klein_class(p1) * klein_class(p2)))})
        qp = compose_paper(p1, p2)
        paper["pairs"] += 1
        if qp == q:
            agree = bad is None
        else:
            agree = oracle_mismatch(alg, p1, p2, qp, syms) is None
        if agree:
            paper["agree"] += 1
            continue
        paper["disagree"] += 1
        truth = oracle_readout(alg, p1, p2)
        printed = _components(alg, qp)
        if printed["iota_a"] != truth["iota_a"]:
            paper["a_disagree"] += 1
            if p1.eps != p2.eps:
                paper["a_disagree_eps_differ"] += 1
        if printed["b"] != truth["b"]:
            paper["b_disagree"] += 1
        if paper["witness"] is None:
            paper["witness"] = {"left": str(p1), "right": str(p2), "printed": str(qp),
                                "derived": str(q)}
    return rep, paper


def _merge_paper(total, part):
    for k, v in part.items():
        if k == "witness":
            if total.get("witness") is None:
                total["witness"] = v
        else:
            total[k] = total.get(k, 0) + v
    return total


def group_audit(alg, samples, n, workers=1, max_assoc=16):
    """Group-law audit over a list of AutParams samples on the radius-n window."""
    from .parallel import map_chunks

    samples = list(samples)
    for p in samples:
        _check(alg, p)
    rep = CheckReport(meta=dict(alg.meta(n), samples=len(samples)))
    syms = alg.window(n)
    ident = AutParams.identity(alg.rank)

    # (i) + (iv, homomorphism) + (vi, product law) over all ordered pairs
    idx = range(len(samples))
    chunks = [[(i, j) for j in idx] for i in idx]
    paper = {"pairs": 0, "agree": 0, "disagree": 0, "a_disagree": 0,
             "a_disagree_eps_differ": 0, "b_disagree": 0, "witness": None}
    for part, tally in map_chunks(compose_chunk, alg, chunks, syms, samples, workers=workers):
        rep.merge(part)
        _merge_paper(paper, tally)

    # (ii) associativity on a deterministic subsample
    step = max(1, len(samples) // max_assoc)
    sub = samples[::step][:max_assoc]
    for p1 in sub:
        for p2 in sub:
            p12 = aut_compose(p1, p2)
            for p3 in sub:
                lhs = aut_compose(p12, p3)
                rhs = aut_compose(p1, aut_compose(p2, p3))
                rep.check("group.associativity", lhs == rhs, lambda: {
                    "inputs": [str(p1), str(p2), str(p3)], "lhs": str(lhs), "rhs": str(rhs)})

    # (iii) identity and inverse laws, (vi) printed inverse
    inv_paper = {"samples": 0, "agree": 0, "disagree": 0, "disagree_xi_neg": 0, "witness": None}
    for p in samples:
        for q, label in ((aut_compose(p, ident), "right"), (aut_compose(ident, p), "left")):
            rep.check("group.identity", q == p, lambda: {
                "inputs": [str(p), label], "lhs": str(q), "rhs": str(p)})
        inv = aut_inverse(p)
        for q, label in ((aut_compose(p, inv), "p*inv"), (aut_compose(inv, p), "inv*p")):
            rep.check("group.inverse", q == ident, lambda: {
                "inputs": [str(p), label], "lhs": str(q), "rhs": str(ident)})
        bad = oracle_mismatch(alg, inv, p, ident, syms)
        rep.check("group.inverse_oracle", bad is None, lambda: {
            "inputs": [str(p), str(bad[0])], "lhs": _t(bad[1]), "rhs": _t(bad[2])})
        ii = aut_inverse(inv)
        rep.check("group.double_inverse", ii == p, lambda: {
            "inputs": [str(p)], "lhs": str(ii), "rhs": str(p)})
        ip = inverse_paper(p)
        inv_paper["samples"] += 1
        if oracle_mismatch(alg, ip, p, ident, syms) is None and \
                oracle_mismatch(alg, p, ip, ident, syms) is None:
            inv_paper["agree"] += 1
        else:
            inv_paper["disagree"] += 1
            if p.xi == -1:
                inv_paper["disagree_xi_neg"] += 1
            if inv_paper["witness"] is None:
                inv_paper["witness"] = {"params": str(p), "printed": str(ip), "derived": str(inv)}

    # (iv) surjectivity onto the Klein four-group, kernel = tau
    classes = sorted({(klein_class(p).xi, klein_class(p).eps) for p in samples})
    rep.check("group.klein_surjective", len(classes) == 4, lambda: {
        "inputs": ["classes"], "lhs": str(classes), "rhs": "all four of (+-1, +-1)"})
    for p in samples:
        kc, act = klein_class(p).tau, tau_by_action(alg, p)
        rep.check("group.klein_kernel", kc == act, lambda: {
            "inputs": [str(p)], "lhs": f"tau flag {kc}", "rhs": f"tau by action {act}"})

    # (v) normality of tau
    taus = [t for t in samples if klein_class(t).tau]
    for p in samples:
        pinv = aut_inverse(p)
        for t in taus[:max_assoc]:
            conj = aut_compose(aut_compose(p, t), pinv)
            ok = klein_class(conj).tau and tau_by_action(alg, conj)
            rep.check("group.tau_normal", ok, lambda: {
                "inputs": [str(p), str(t)], "lhs": str(conj), "rhs": "tau member"})

    rep.info("paper.compose_law", paper)
    rep.info("paper.inverse_law", inv_paper)
    return rep


def automorphism_grid(rank=1, f_values=("1", "2", "1/2", "-1"), a_values=range(-2, 3),
                      b_values=("1", "2", "-3", "1/2")):
    """Deterministic parameter grid; for rank > 1, f and a vary along the first
    coordinate and are trivial on the rest."""
    out = []
    for xi in (1, -1):
        for eps in (1, -1):
            for a in a_values:
                for b in b_values:
                    for fv in f_values:
                        f = (as_scalar(fv),) + (ONE,) * (rank - 1)
                        out.append(AutParams(MultiplicativeHom(f), xi, eps,
                                             (a,) + (0,) * (rank - 1), as_scalar(b)))
    return out
