"""Command-line entry point ``r2k``.

Exit status: 0 on success or a passing audit, 1 when an audit or the
functional oracle fails, 2 on usage, parse or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from .algebra import Algebra, render_element
from .automorphisms import (AutParams, aut_apply, aut_compose, aut_inverse, compose_paper,
                            inverse_paper, oracle_mismatch, _t)
from .config import load_config
from .derivations import (Ad, EvenInner, GradedMapTable, OddInner, Scaling, decompose_derivation,
                          leibniz_audit, make_derivation, recipe_to_dict)
from .errors import CentralNotKilled, ClassificationMismatch, NotDerivation, R2KError
from .gamma import AdditiveHom, MultiplicativeHom
from .parse import parse_element, parse_index, parse_scalar
from .report import emit_report
from .suites import run_suite

# options whose value may itself start with "-" (negative indices, scalars)
_VALUE_FLAGS = {"--f", "--xi", "--eps", "--a", "--b", "--phi", "--e0", "--xi0", "--xi1",
                "--gamma", "--h0", "--eta", "--element", "--left", "--right", "--params"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _params_group(p):
    p.add_argument("--f", help="f values, comma separated")
    p.add_argument("--xi", type=int, choices=(1, -1))
    p.add_argument("--eps", type=int, choices=(1, -1))
    p.add_argument("--a", help="shift a, comma separated")
    p.add_argument("--b", help="nonzero scalar b")
    p.add_argument("--params", help="parameters as JSON text, flag text or a file")


def build_parser():
    # --config and --format are accepted before or after the command
    common = _Parser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON config file (default r2k.json if present)")
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS,
                        help="output format")
    ap = _Parser(prog="r2k", parents=[common],
                 description="Exact computations in the generalized Ramond N=2 algebra.")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)
    sub.add_parser = add_parser

    p = sub.add_parser("bracket", help="super-bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("apply-aut", help="apply sigma(f, xi, eps, a, b) to an element")
    _params_group(p)
    p.add_argument("expr")

    p = sub.add_parser("compose-aut", help="parameters of sigma(left) o sigma(right)")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--law", choices=("derived", "paper", "both"), default="derived")
    p.add_argument("--window", type=int)

    p = sub.add_parser("invert-aut", help="parameters of sigma^-1")
    _params_group(p)
    p.add_argument("--law", choices=("derived", "paper", "both"), default="derived")
    p.add_argument("--window", type=int)

    p = sub.add_parser("make-der", help="tabulate a derivation")
    p.add_argument("--kind", required=True, choices=("scaling", "odd-inner", "even-inner", "ad"))
    for name in ("--phi", "--e0", "--xi0", "--xi1", "--gamma", "--h0", "--eta", "--element"):
        p.add_argument(name)
    p.add_argument("--window", type=int)
    p.add_argument("--out", help="output file (default stdout)")

    for name, hlp in (("check-der", "Leibniz audit of a table"),
                      ("decompose-der", "classify a derivation table")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--table", required=True)
        p.add_argument("--window", type=int)
        p.add_argument("--report")

    p = sub.add_parser("audit", help="run an audit suite")
    p.add_argument("--suite", default="all",
                   choices=("structure", "derivations", "automorphisms", "all"))
    p.add_argument("--window", type=int)
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    return ap


def _normalize_argv(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        elif tok == "-C" or (tok[:1] == "-" and tok[1:2].isalpha() and "(" in tok):
            # an element like "-L(1)" is a positional, not a flag
            out.append(" " + tok)
        else:
            out.append(tok)
    return out


# -- parameter parsing -------------------------------------------------------------

def _csv_scalars(text):
    return tuple(parse_scalar(v) for v in _split(text))


def _split(text):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return [v for v in body.split(",")]


def _params_from_flags(f, xi, eps, a, b, rank):
    missing = [n for n, v in (("--f", f), ("--xi", xi), ("--eps", eps), ("--a", a), ("--b", b))
               if v is None]
    if missing:
        raise _UsageError(f"missing automorphism parameters: {' '.join(missing)}")
    fv = _csv_scalars(str(f))
    av = parse_index(str(a), rank)
    if len(fv) != rank:
        raise _UsageError(f"--f needs {rank} values")
    try:
        return AutParams(MultiplicativeHom(fv), int(xi), int(eps), av, parse_scalar(str(b)))
    except ValueError as e:
        if isinstance(e, R2KError):
            raise
        raise _UsageError(str(e)) from None


def parse_params(text, rank):
    """AutParams from JSON text, flag text ("--f 2 --xi 1 ...") or a file of either."""
    body = text
    path = Path(text)
    if not text.lstrip().startswith(("{", "-")) and path.is_file():
        body = path.read_text()
    body = body.strip()
    if body.startswith("{"):
        try:
            d = json.loads(body)
        except json.JSONDecodeError as e:
            raise _UsageError(f"bad parameter JSON: {e}") from None
        try:
            return _params_from_flags(",".join(str(v) for v in d["f"]), d["xi"], d["eps"],
                                      ",".join(str(v) for v in d["a"]), d["b"], rank)
        except KeyError as e:
            raise _UsageError(f"parameter JSON lacks {e}") from None
    fp = _Parser(prog="params")
    _params_group(fp)
    ns = fp.parse_args(_normalize_argv(shlex.split(body)))
    return _params_from_flags(ns.f, ns.xi, ns.eps, ns.a, ns.b, rank)


def _cmd_params(args, rank):
    if args.params is not None:
        return parse_params(args.params, rank)
    return _params_from_flags(args.f, args.xi, args.eps, args.a, args.b, rank)


# -- commands ---------------------------------------------------------------------

def _emit(out, fmt, payload, lines):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _verdict(alg, p1, p2, q, n):
    bad = oracle_mismatch(alg, p1, p2, q, alg.window(n))
    if bad is None:
        return {"oracle": "agree"}
    s, got, want = bad
    return {"oracle": "disagree", "symbol": str(s), "lhs": _t(got), "rhs": _t(want)}


def _verdict_text(v):
    if v["oracle"] == "agree":
        return "agree"
    return f"disagree at {v['symbol']}: {v['lhs']} vs {v['rhs']}"


def cmd_bracket(args, alg, cfg, out):
    x = parse_element(args.x, alg.rank)
    y = parse_element(args.y, alg.rank)
    out.write(render_element(alg.bracket(x, y)) + "\n")
    return 0


def cmd_apply_aut(args, alg, cfg, out):
    p = _cmd_params(args, alg.rank)
    x = parse_element(args.expr, alg.rank)
    out.write(render_element(aut_apply(alg, p, x)) + "\n")
    return 0


def _laws(args, alg, n, items):
    """items: (law, q, p1, p2); q is checked against sigma(p1) o sigma(p2)."""
    status = 0
    payload, lines = {}, []
    for law, q, p1, p2 in items:
        if args.law not in (law, "both"):
            continue
        v = _verdict(alg, p1, p2, q, n)
        payload[law] = dict(q.to_dict(), **v)
        lines.append(f"{law}: {q}")
        lines.append(f"{law} oracle: {_verdict_text(v)}")
        if law == "derived" and v["oracle"] != "agree":
            status = 1
    return status, payload, lines


def cmd_compose_aut(args, alg, cfg, out):
    p1 = parse_params(args.left, alg.rank)
    p2 = parse_params(args.right, alg.rank)
    n = args.window or cfg.window
    status, payload, lines = _laws(args, alg, n, [
        ("derived", aut_compose(p1, p2), p1, p2),
        ("paper", compose_paper(p1, p2), p1, p2),
    ])
    _emit(out, cfg.format, payload, lines)
    return status


def cmd_invert_aut(args, alg, cfg, out):
    p = _cmd_params(args, alg.rank)
    n = args.window or cfg.window
    ident = AutParams.identity(alg.rank)
    status, payload, lines = 0, {}, []
    for law, q in (("derived", aut_inverse(p)), ("paper", inverse_paper(p))):
        if args.law not in (law, "both"):
            continue
        left, right = _verdict(alg, q, p, ident, n), _verdict(alg, p, q, ident, n)
        v = left if left["oracle"] != "agree" else right
        payload[law] = dict(q.to_dict(), **v)
        lines.append(f"{law}: {q}")
        lines.append(f"{law} oracle: {_verdict_text(v)}")
        if law == "derived" and v["oracle"] != "agree":
            status = 1
    _emit(out, cfg.format, payload, lines)
    return status


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise _UsageError("missing " + " ".join("--" + n.replace("_", "-") for n in missing))


def _recipe(args, alg):
    r = alg.rank
    if args.kind == "scaling":
        _need(args, "phi", "e0")
        phi = _csv_scalars(args.phi)
        if len(phi) != r:
            raise _UsageError(f"--phi needs {r} values")
        return Scaling(AdditiveHom(phi), parse_scalar(args.e0))
    if args.kind == "odd-inner":
        _need(args, "xi0", "xi1", "gamma")
        return OddInner(parse_scalar(args.xi0), parse_scalar(args.xi1), parse_index(args.gamma, r))
    if args.kind == "even-inner":
        _need(args, "h0", "eta", "gamma")
        return EvenInner(parse_scalar(args.h0), parse_scalar(args.eta), parse_index(args.gamma, r))
    _need(args, "element")
    return Ad(parse_element(args.element, r))


def cmd_make_der(args, alg, cfg, out):
    n = args.window or cfg.window
    D = make_derivation(alg, _recipe(args, alg), n)
    text = json.dumps(D.to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return 0


def _load_table(path):
    try:
        return GradedMapTable.from_dict(json.loads(Path(path).read_text()))
    except FileNotFoundError:
        raise _UsageError(f"table file {path} not found") from None
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise _UsageError(f"malformed table file {path}: {e!r}") from None


def _write_report(rep, fmt, path, out):
    data = emit_report(rep, fmt)
    if path:
        Path(path).write_bytes(data)
        out.write(("PASS" if rep.passed else "FAIL") + "\n")
    else:
        out.write(data.decode())


def cmd_check_der(args, alg, cfg, out):
    D = _load_table(args.table)
    rep = leibniz_audit(alg, D, args.window)
    _write_report(rep, cfg.format, args.report, out)
    return 0 if rep.passed else 1


def cmd_decompose_der(args, alg, cfg, out):
    D = _load_table(args.table)
    if args.window is not None and args.window != D.window:
        D = GradedMapTable(D.degree, D.parity, args.window,
                           {s: v for s, v in D.entries.items()
                            if all(-args.window <= k <= args.window for k in s.index)})
    try:
        recipe = decompose_derivation(alg, D)
    except (NotDerivation, ClassificationMismatch, CentralNotKilled) as e:
        out.write(f"{type(e).__name__}: {e}\n")
        return 1
    _emit(out, cfg.format, recipe_to_dict(recipe),
          [" ".join(f"{k}={v}" for k, v in recipe_to_dict(recipe).items())])
    return 0


def cmd_audit(args, alg, cfg, out):
    n = args.window or cfg.window
    rep = run_suite(alg, args.suite, n, workers=args.workers)
    _write_report(rep, cfg.format, args.report, out)
    return 0 if rep.passed else 1


COMMANDS = {
    "bracket": cmd_bracket, "apply-aut": cmd_apply_aut, "compose-aut": cmd_compose_aut,
    "invert-aut": cmd_invert_aut, "make-der": cmd_make_der, "check-der": cmd_check_der,
    "decompose-der": cmd_decompose_der, "audit": cmd_audit,
}


def run(argv, out=None, err=None):
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(_normalize_argv(list(argv)))
        if args.cmd is None:
            raise _UsageError("r2k: a command is required (see r2k --help)")
        cfg = load_config(getattr(args, "config", None))
        if getattr(args, "format", None):
            cfg.format = args.format
        alg = Algebra(cfg.checked_embedding())
        return COMMANDS[args.cmd](args, alg, cfg, out)
    except _UsageError as e:
        err.write(f"{e}\n")
        return 2
    except (R2KError, ValueError, ZeroDivisionError) as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 2


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
