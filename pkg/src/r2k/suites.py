"""The audit suites behind ``r2k audit``.

Each suite returns one CheckReport. Sub-audits are folded in under a suite
prefix, and failing witnesses are tagged with the case that produced them.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import ad_table, grade_audit, nilpotency_check, structure_audit
from .automorphisms import AutParams, aut_audit, automorphism_grid, group_audit
from .derivations import (EvenInner, OddInner, Scaling, decompose_derivation,
                          degree_zero_inner_solution, inner_element, leibniz_audit,
                          make_derivation, map_equal, recipe_to_dict)
from .errors import R2KError
from .field import ZERO, as_scalar
from .gamma import AdditiveHom, MultiplicativeHom, injectivity_audit, is_zero, window_indices
from .parallel import map_chunks
from .report import CheckReport

SUITES = ("structure", "derivations", "automorphisms")

ODD_PARAMS = ((1, 0), (0, 1), (2, -3))
EVEN_PARAMS = ((1, 0), (0, 1), (Fraction(1, 2), -2))
PHI_VALUES = (0, 1, Fraction(5, 3))
E0_VALUES = (0, 1, -2)


def absorb(rep, part, prefix, case=None):
    """Merge ``part`` into ``rep`` with ids renamed to prefix.id (ids already
    under the prefix, or a None prefix, leave the id alone)."""
    renamed = CheckReport()
    for cid, r in part.records.items():
        if r.witness is not None and case is not None:
            r.witness = dict(r.witness, case=case)
        if prefix is not None and not cid.startswith(prefix + "."):
            r.id = f"{prefix}.{cid}"
        renamed.records[r.id] = r
    return rep.merge(renamed)


def sample_degrees(rank, n, reach=2):
    """Degrees gamma used by sweeps: every m with |m_i| <= min(reach, n)."""
    return window_indices(rank, min(reach, n) if rank == 1 else 1)


# -- structure -------------------------------------------------------------------

def structure_suite(alg, n, workers=1):
    rep = CheckReport(meta=dict(alg.meta(n), suite="structure"))
    absorb(rep, injectivity_audit(alg.emb, n), "structure")
    absorb(rep, grade_audit(alg, n), "structure")
    absorb(rep, structure_audit(alg, n, workers=workers), "structure")
    for g in sample_degrees(alg.rank, n):
        for sign in (1, -1):
            absorb(rep, nilpotency_check(alg, g, sign, n), "structure")
    return rep


# -- derivations -----------------------------------------------------------------

def derivation_recipes(rank, n):
    out = []
    for g in sample_degrees(rank, n):
        for x0, x1 in ODD_PARAMS:
            out.append(OddInner(as_scalar(x0), as_scalar(x1), g))
    for g in sample_degrees(rank, n):
        if is_zero(g):
            continue
        for h0, eta in EVEN_PARAMS:
            out.append(EvenInner(as_scalar(h0), as_scalar(eta), g))
    for v in PHI_VALUES:
        for e0 in E0_VALUES:
            phi = AdditiveHom((as_scalar(v),) + (ZERO,) * (rank - 1))
            out.append(Scaling(phi, as_scalar(e0)))
    return out


def _case_label(case):
    kind, obj = case
    if kind == "ad":
        return f"ad {obj}"
    d = recipe_to_dict(obj)
    return " ".join(f"{k}={v}" for k, v in d.items())


def derivation_case(alg, cases, n):
    """Leibniz, inner-form and round-trip checks for a chunk of cases."""
    rep = CheckReport()
    for case in cases:
        kind, obj = case
        label = _case_label(case)
        if kind == "ad":
            D = ad_table(alg, obj, n)
            absorb(rep, leibniz_audit(alg, D), "ad", label)
            continue
        D = make_derivation(alg, obj, n)
        absorb(rep, leibniz_audit(alg, D), type(obj).__name__.lower(), label)
        x = inner_element(alg, obj)
        if x is not None:
            cmp = map_equal(D, ad_table(alg, x, n))
            rep.check("inner_form", cmp.equal, lambda: {
                "inputs": [label, str(cmp.symbol)], "lhs": str(cmp.left), "rhs": str(cmp.right)})
        try:
            got = decompose_derivation(alg, D)
            ok = got == obj
            detail = recipe_to_dict(got)
        except R2KError as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        rep.check("round_trip", ok, lambda: {
            "inputs": [label], "lhs": str(detail), "rhs": str(recipe_to_dict(obj))})
    return rep


def derivation_suite(alg, n, workers=1):
    rep = CheckReport(meta=dict(alg.meta(n), suite="derivations"))
    cases = [("ad", s) for s in alg.window(n)]
    cases += [("recipe", r) for r in derivation_recipes(alg.rank, n)]
    chunks = [cases[i:i + 4] for i in range(0, len(cases), 4)]
    for part in map_chunks(derivation_case, alg, chunks, n, workers=workers):
        absorb(rep, part, "derivations")

    # scaling tables add entrywise
    r = alg.rank
    s1 = Scaling(AdditiveHom((as_scalar(1),) + (ZERO,) * (r - 1)), as_scalar(1))
    s2 = Scaling(AdditiveHom((as_scalar(Fraction(5, 3)),) * r), as_scalar(-2))
    total = Scaling(s1.phi + s2.phi, s1.e0 + s2.e0)
    cmp = map_equal(make_derivation(alg, total, n),
                    make_derivation(alg, s1, n) + make_derivation(alg, s2, n))
    rep.check("derivations.scaling_linear", cmp.equal, lambda: {
        "inputs": [str(cmp.symbol)], "lhs": str(cmp.left), "rhs": str(cmp.right)})

    # with two or more free generators, phi = (1, 0, ...) is outer
    if alg.rank >= 2 and alg.emb.mode == "generic":
        phi = AdditiveHom((as_scalar(1),) + (ZERO,) * (r - 1))
        D = make_derivation(alg, Scaling(phi, ZERO), n)
        sol = degree_zero_inner_solution(alg, D)
        rep.check("derivations.scaling_outer", sol is None, lambda: {
            "inputs": ["phi=(1,0,...)"], "lhs": str(sol), "rhs": "no inner solution"})
    return rep


# -- automorphisms ---------------------------------------------------------------

def small_grid(rank=1):
    return automorphism_grid(rank, f_values=("1", "2"), a_values=(-1, 0, 1), b_values=("1", "2"))


def aut_chunk(alg, params, n):
    rep = CheckReport()
    for p in params:
        absorb(rep, aut_audit(alg, p, n), None, str(p))
    return rep


def automorphism_suite(alg, n, workers=1):
    rep = CheckReport(meta=dict(alg.meta(n), suite="automorphisms"))
    if alg.rank == 1:
        grid = automorphism_grid()
    else:
        grid = small_grid(alg.rank)
        if alg.emb.mode == "generic":
            u = alg.emb.generators
            f = (u[0], as_scalar(2)) + (as_scalar(1),) * (alg.rank - 2)
            grid.append(AutParams(MultiplicativeHom(f), 1, -1, (1,) + (0,) * (alg.rank - 1), u[1]))
    chunks = [grid[i:i + 8] for i in range(0, len(grid), 8)]
    for part in map_chunks(aut_chunk, alg, chunks, n, workers=workers):
        absorb(rep, part, "automorphisms")
    absorb(rep, group_audit(alg, small_grid(alg.rank), n, workers=workers), "automorphisms")
    return rep


def run_suite(alg, name, n, workers=1):
    """Run one named suite, or all of them in a fixed order."""
    names = SUITES if name == "all" else (name,)
    if any(s not in SUITES for s in names):
        raise ValueError(f"unknown suite {name!r}")
    fns = {"structure": structure_suite, "derivations": derivation_suite,
           "automorphisms": automorphism_suite}
    rep = CheckReport(meta=dict(alg.meta(n), suite=name))
    for s in names:
        rep.merge(fns[s](alg, n, workers=workers))
    return rep
