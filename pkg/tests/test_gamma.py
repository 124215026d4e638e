import itertools

import pytest
from hypothesis import given, strategies as st

from r2k.errors import RankMismatch
from r2k.field import ONE, ZERO, Scalar, as_scalar
from r2k.gamma import (AdditiveHom, GammaEmbedding, MultiplicativeHom, embed, gadd, gamma_combine,
                       hom_eval_add, hom_eval_mul, injectivity_audit, proportionality_constant,
                       window_indices)

u1, u2 = Scalar.var(1), Scalar.var(2)
idx2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def test_combine_examples():
    assert gamma_combine([1, 1], [(2,), (-2,)]) == (0,)
    assert gamma_combine([-1], [(1, 3)]) == (-1, -3)
    assert gamma_combine([2, 3], [(1, 0), (0, 1)]) == (2, 3)
    with pytest.raises(RankMismatch):
        gamma_combine([1, 1], [(1,), (1, 2)])


def test_embed_examples():
    assert embed(GammaEmbedding.rational(1), (3,)) == as_scalar(3)
    assert embed(GammaEmbedding.rational("1/2"), (3,)) == as_scalar("3/2")
    assert embed(GammaEmbedding.generic(2), (1, -2)) == u1 - u2 * 2
    with pytest.raises(RankMismatch):
        embed(GammaEmbedding.rational(1), (1, 2))


def test_modes():
    assert GammaEmbedding.rational("2/3").mode == "rational"
    assert GammaEmbedding.generic(3).mode == "generic"
    with pytest.raises(ValueError):
        GammaEmbedding.rational(0)


def test_injectivity_examples():
    assert injectivity_audit(GammaEmbedding.rational(1), 4).passed
    rep = injectivity_audit(GammaEmbedding((ONE, as_scalar("1/2"))), 2)
    assert not rep.passed
    w = rep["gamma.injective"].witness
    assert w["inputs"] == ["(1,-2)"]
    assert rep["gamma.injective"].failures == 4  # +-(1,-2), +-(2,-4)
    assert injectivity_audit(GammaEmbedding.generic(2), 3).passed


def test_injectivity_witness_is_a_kernel_element():
    emb = GammaEmbedding((ONE, as_scalar("1/2")))
    rep = injectivity_audit(emb, 2)
    m = tuple(int(k) for k in rep["gamma.injective"].witness["inputs"][0].strip("()").split(","))
    assert embed(emb, m) == ZERO and any(m)


def test_hom_examples():
    assert hom_eval_add(AdditiveHom(("5/3",)), (2,)) == as_scalar("10/3")
    assert hom_eval_add(AdditiveHom((1, -1)), (3, 3)) == ZERO
    assert hom_eval_add(AdditiveHom((u1, 7)), (0, 0)) == ZERO
    assert hom_eval_mul(MultiplicativeHom((2,)), (-3,)) == as_scalar("1/8")
    assert hom_eval_mul(MultiplicativeHom((u1, 5)), (0, 0)) == ONE
    assert hom_eval_mul(MultiplicativeHom((2, u1)), (1, 1)) == u1 * 2
    with pytest.raises(ValueError):
        MultiplicativeHom((0,))


def test_homomorphism_laws_on_window():
    emb = GammaEmbedding.generic(2)
    phi = AdditiveHom(("2/3", u2))
    f = MultiplicativeHom((u1, "-3"))
    win = window_indices(2, 2)
    for a, b in itertools.product(win, win):
        s = gadd(a, b)
        assert embed(emb, s) == embed(emb, a) + embed(emb, b)
        assert phi(s) == phi(a) + phi(b)
        assert f(s) == f(a) * f(b)


@given(idx2, idx2)
def test_mul_hom_is_multiplicative(a, b):
    f = MultiplicativeHom(("1/2", u1 + 1))
    assert f(gadd(a, b)) == f(a) * f(b)


def test_proportionality():
    emb = GammaEmbedding.rational("1/2")
    assert proportionality_constant(AdditiveHom(("5/3",)), emb) == as_scalar("10/3")
    assert proportionality_constant(AdditiveHom((1, 0)), GammaEmbedding.generic(2)) is None
    assert proportionality_constant(AdditiveHom((u1 * 3, u2 * 3)), GammaEmbedding.generic(2)) == 3


def test_window_order():
    assert window_indices(1, 1) == [(-1,), (0,), (1,)]
    assert window_indices(2, 1)[:2] == [(-1, -1), (-1, 0)]
