import pytest

from r2k.algebra import GM, GP, H, L, Algebra, Sym, render_element
from r2k.automorphisms import (AutParams, KleinClass, aut_apply, aut_audit, aut_compose, aut_inverse,
                               automorphism_grid, compose_paper, group_audit, inverse_paper,
                               klein_class, oracle_mismatch, oracle_readout, tau_by_action)
from r2k.errors import RankMismatch
from r2k.field import ONE, Scalar, as_scalar
from r2k.gamma import MultiplicativeHom
from r2k.parse import parse_element
from r2k.suites import small_grid

S = as_scalar


def P(f, xi, eps, a, b):
    f = f if isinstance(f, tuple) else (f,)
    a = a if isinstance(a, tuple) else (a,)
    return AutParams(MultiplicativeHom(tuple(S(v) if not isinstance(v, Scalar) else v for v in f)),
                     xi, eps, a, S(b) if not isinstance(b, Scalar) else b)


ID = AutParams.identity(1)


def app(alg, p, text):
    return render_element(aut_apply(alg, p, parse_element(text, alg.rank)))


def test_apply_examples(alg):
    assert app(alg, ID, "L(3)") == "L(3)"
    assert app(alg, P(1, 1, 1, 2, 1), "L(0)") == "L(0) + 2*H(0) + 2/3*C"
    p = P(1, -1, -1, 0, 1)
    assert app(alg, p, "G+(3)") == "G-(-3)"
    assert app(alg, p, "C") == "-C"
    assert app(alg, P(2, 1, 1, 0, 3), "G+(1)") == "6*G+(1)"


def test_apply_shift_uses_group_index(alg_half):
    # G+_alpha -> G+_{alpha + a} as group elements; iota(a) = a/2 only in coefficients
    p = P(1, 1, 1, 2, 1)
    assert app(alg_half, p, "G+(1)") == "G+(3)"
    assert app(alg_half, p, "L(0)") == "L(0) + H(0) + 1/6*C"


def test_apply_rank_mismatch(alg):
    with pytest.raises(RankMismatch):
        aut_apply(alg, AutParams.identity(2), parse_element("L(1)"))


def test_params_validation():
    with pytest.raises(ValueError):
        P(1, 2, 1, 0, 1)
    with pytest.raises(ValueError):
        P(1, 1, 1, 0, 0)
    with pytest.raises(ValueError):
        P(0, 1, 1, 0, 1)


@pytest.mark.parametrize("p", [ID, P(2, -1, -1, 1, "1/2"), P(-1, 1, -1, -2, -3), P("1/2", -1, 1, 2, 2)])
def test_aut_audit(alg, p):
    rep = aut_audit(alg, p, 4)
    assert rep.passed, rep.to_text()


def test_aut_audit_generic(alg2):
    u1, u2 = Scalar.var(1), Scalar.var(2)
    p = AutParams(MultiplicativeHom((u1, S(2))), 1, -1, (1, 0), u2)
    assert aut_audit(alg2, p, 2).passed


def test_aut_audit_catches_bad_central_term(alg, monkeypatch):
    import r2k.automorphisms as A
    monkeypatch.setattr(A, "_SIXTH", S("1/5"))
    rep = aut_audit(alg, P(1, 1, 1, 1, 1), 3)
    assert not rep.passed
    assert rep["aut.homomorphism"].witness["inputs"]


def test_compose_examples(alg):
    p1 = P(1, 1, -1, 1, 1)
    assert aut_compose(p1, ID) == p1 and aut_compose(ID, p1) == p1
    assert compose_paper(p1, ID).a == (-1,)
    assert oracle_mismatch(alg, p1, ID, compose_paper(p1, ID), alg.window(3)) is not None
    q = aut_compose(P(2, 1, 1, 0, 1), P(3, 1, -1, 0, 1))
    assert q.f.values == (S("3/2"),)
    assert compose_paper(ID, ID) == ID and aut_compose(ID, ID) == ID


def test_printed_law_agreement_region(alg):
    # agreement needs xi1 = xi2 = 1 and eps1 = eps2; xi2 = 1 with eps1 = eps2
    # alone is not enough once xi1 = -1 and eps a1 != a2
    grid = small_grid()
    for p1 in grid[::5]:
        for p2 in grid[::3]:
            if p1.xi == p2.xi == 1 and p1.eps == p2.eps:
                assert compose_paper(p1, p2) == aut_compose(p1, p2)
    p1, p2 = P(1, -1, 1, 1, 1), P(1, 1, 1, 0, 1)
    assert compose_paper(p1, p2).a == (-1,) and aut_compose(p1, p2).a == (1,)
    assert oracle_mismatch(alg, p1, p2, compose_paper(p1, p2), alg.window(2)) is not None


def test_inverse_examples(alg):
    assert aut_inverse(ID) == ID
    assert aut_inverse(P(1, 1, 1, 2, 5)) == P(1, 1, 1, -2, "1/5")
    assert inverse_paper(P(1, 1, 1, 2, 5)) == P(1, 1, 1, -2, "1/5")
    p = P(1, -1, 1, 0, 2)
    assert aut_inverse(p) == p
    assert inverse_paper(p).b == S("1/2")
    assert app(alg, p, "G+(4)") == "2*G-(4)" and app(alg, p, "G-(4)") == "1/2*G+(4)"
    ident = AutParams.identity(1)
    assert oracle_mismatch(alg, inverse_paper(p), p, ident, alg.window(3)) is not None
    assert oracle_mismatch(alg, aut_inverse(p), p, ident, alg.window(3)) is None


def test_double_inverse():
    for p in automorphism_grid()[::7]:
        assert aut_inverse(aut_inverse(p)) == p


def test_oracle_readout_matches_derived(alg):
    for p1 in small_grid()[::7]:
        for p2 in small_grid()[::5]:
            q = aut_compose(p1, p2)
            r = oracle_readout(alg, p1, p2)
            assert r == {"f": q.f.values, "xi": q.xi, "eps": q.eps, "iota_a": alg.iota(q.a), "b": q.b}


def test_klein(alg):
    assert klein_class(ID) == KleinClass(1, 1, True)
    assert klein_class(P(2, -1, 1, 1, 3)) == KleinClass(-1, 1, False)
    assert KleinClass(-1, 1, False) * KleinClass(1, -1, False) == KleinClass(-1, -1, False)
    for p in small_grid():
        assert tau_by_action(alg, p) == klein_class(p).tau


def test_group_audit_small_grid(alg):
    rep = group_audit(alg, small_grid(), 3)
    assert rep.passed, rep.to_text()
    paper = rep["paper.compose_law"].detail
    assert paper["a_disagree_eps_differ"] > 0
    inv = rep["paper.inverse_law"].detail
    assert inv["disagree"] == inv["disagree_xi_neg"] > 0


def test_group_audit_generic(alg2):
    grid = small_grid(2)[::4]
    rep = group_audit(alg2, grid, 1, max_assoc=6)
    assert rep.passed, rep.to_text()


def test_group_audit_detects_wrong_law(alg, monkeypatch):
    import r2k.automorphisms as A
    monkeypatch.setattr(A, "aut_compose", A.compose_paper)
    rep = A.group_audit(alg, small_grid()[::3], 2)
    assert not rep.passed
    assert rep["group.compose_oracle"].failures > 0


def test_grid_shape():
    grid = automorphism_grid()
    assert len(grid) == 320 and len(set(grid)) == 320
    assert {(p.xi, p.eps) for p in grid} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_params_serialization():
    p = P("1/2", -1, 1, -2, -3)
    assert AutParams.from_dict(p.to_dict()) == p
    assert p.text() == "--f 1/2 --xi -1 --eps 1 --a -2 --b -3"


def test_params_pickle_drops_cache(alg):
    import pickle
    p = P(2, 1, -1, 1, 3)
    aut_apply(alg, p, parse_element("L(1)"))
    q = pickle.loads(pickle.dumps(p))
    assert q == p and "_consts" not in q.__dict__


# -- the four (xi, eps) subcases written out separately --------------------------

def _subcase(alg, xi, eps, f, a, b, s):
    """Images transcribed case by case, with a_alpha = f(alpha), b0 = a, g0/u0 = b.

    The (-1, -1) case uses H_{-alpha}; its printed H_alpha cannot be an
    automorphism since every other even image reverses the degree.
    """
    fa = f(s.index)
    ia = alg.iota(a)
    al = s.index
    neg = tuple(-k for k in al)
    at0 = not any(al)
    c = alg.central
    out = {}

    def put(sym, v):
        if v:
            out[sym] = out.get(sym, S(0)) + v

    if s.kind == 4:
        put(c, S(eps))
    elif s.kind == L:
        tgt = al if eps == 1 else neg
        put(Sym(L, tgt), fa * eps)
        put(Sym(H, tgt), fa * ia)
        if at0:
            put(c, ia * ia * S("1/6") * eps)
    elif s.kind == H:
        tgt = al if eps == 1 else neg
        put(Sym(H, tgt), fa * xi)
        if at0:
            put(c, ia * S("1/3") * (xi * eps))
    else:
        plus = tuple(x + y for x, y in zip(al, a))
        minus = tuple(x - y for x, y in zip(al, a))
        flip = (lambda m: m) if eps == 1 else (lambda m: tuple(-k for k in m))
        if s.kind == GP:
            put(Sym(GP, flip(plus)) if xi == 1 else Sym(GM, flip(minus)), fa * b)
        else:
            put(Sym(GM, flip(minus)) if xi == 1 else Sym(GP, flip(plus)), fa / b * eps)
    return out


@pytest.mark.parametrize("xi, eps", [(1, 1), (-1, 1), (1, -1), (-1, -1)])
def test_subcases_match_general_form(alg, xi, eps):
    from r2k.automorphisms import image_terms
    for f in ("2", "-1/2"):
        for a in (-1, 2):
            for b in ("3", "-1/2"):
                p = P(f, xi, eps, a, b)
                for s in alg.window(3):
                    assert image_terms(alg, p, s) == _subcase(alg, xi, eps, p.f, p.a, p.b, s), (p, s)


def test_printed_h_index_in_last_subcase_fails(alg):
    # sigma(H_alpha) = -f(alpha) H_alpha with eps = -1 breaks [L_0, H_1] = -H_1
    p = P(1, -1, -1, 0, 1)
    l0, h1 = parse_element("L(0)"), parse_element("H(1)")
    good = aut_apply(alg, p, h1)
    printed = parse_element("-H(1)")
    assert good == parse_element("-H(-1)")
    assert aut_apply(alg, p, alg.bracket(l0, h1)) == alg.bracket(aut_apply(alg, p, l0), good)
    assert alg.bracket(aut_apply(alg, p, l0), printed) != aut_apply(alg, p, alg.bracket(l0, h1))
