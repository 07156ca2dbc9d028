"""Command-line interface.

Exit codes: 0 success or verified, 1 not verified, 2 usage or precondition
error, 3 divergent symbol, 4 term budget exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import basis, mzv, qmzv, quasi_shuffle as qs, series, standard_rba
from .compositions import format_lwc, lwcs, parse_lwc
from .config import Config, load_config
from .errors import BudgetExceeded, DivergenceError, LwcError, ParseError, PreconditionError, ToleranceNotReached
from .lincomb import LinComb, parse_mbar

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DIVERGENT, EXIT_BUDGET = 0, 1, 2, 3, 4


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="numeric tolerance")
    common.add_argument("--q", type=float, help="q in (0, 1) for q-analogs")
    common.add_argument("--vars", "-N", dest="N", type=int, help="number of variables")
    common.add_argument("--deg", "-D", dest="D", type=int, help="degree cap")
    common.add_argument("--zero-budget", dest="zero_budget", type=int, help="zero parts allowed in a basis slice")
    common.add_argument("--budget", dest="term_budget", type=int, help="maximum number of generated terms")
    common.add_argument("--max-cutoff", dest="max_cutoff", type=int, help="largest summation cutoff")
    common.add_argument("--json", dest="output", action="store_const", const="json", help="JSON output")

    p = argparse.ArgumentParser(prog="lwcqsym", description="Quasi-symmetric functions on left weak compositions.")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("product", parents=[common], help="quasi-shuffle or Mbar product")
    pr.add_argument("left")
    pr.add_argument("right")
    pr.add_argument("--mbar", action="store_true", help="operands are 'head;(tail)' Mbar keys")

    ba = sub.add_parser("basis", parents=[common], help="change of basis")
    ba.add_argument("direction", choices=["f2m", "m2f"])
    ba.add_argument("alpha")

    ma = sub.add_parser("matrix", parents=[common], help="transition matrix on a finite slice")
    ma.add_argument("direction", choices=["f2m", "m2f"])
    ma.add_argument("size", type=int)

    ve = sub.add_parser("verify", parents=[common], help="check an identity")
    ve.add_argument(
        "kind",
        choices=[
            "rb-identity", "spitzer", "stuffle", "shuffle", "double-shuffle", "euler", "stirling",
            "stirling-product", "q-stuffle", "duality", "homomorphism", "waring", "oracle-series",
        ],
    )
    ve.add_argument("-a", type=int)
    ve.add_argument("-b", type=int)
    ve.add_argument("-m", type=int)
    ve.add_argument("-n", type=int)
    ve.add_argument("-k", type=int)
    ve.add_argument("--s", type=_ints)
    ve.add_argument("--t", type=_ints)
    ve.add_argument("-u", help="q-shuffle word over r,y")
    ve.add_argument("-v", help="q-shuffle word over r,y")
    ve.add_argument("--x", help="Mbar key 'head;(tail)'")
    ve.add_argument("--y", help="Mbar key 'head;(tail)'")
    ve.add_argument("--alpha", help="LWC for oracle-series")
    ve.add_argument("--beta", help="second LWC for oracle-series products")
    ve.add_argument(
        "--outside-hypotheses",
        action="store_true",
        help="q-stuffle only: drop the a >= m+2, b >= n+2 gate and report the observed residual",
    )
    ve.add_argument("--perturb", type=Fraction, help="add this to the first lhs coefficient (negative control)")

    ev = sub.add_parser("eval", parents=[common], help="evaluate a zeta value")
    ev.add_argument("kind", choices=["mzv", "qmzv"])
    ev.add_argument("symbol", help="'s1,...,sk;i1,...,ik' or, for qmzv, a word over r,y")

    wa = sub.add_parser("waring", parents=[common], help="Waring formula check")
    wa.add_argument("--m", dest="m_vars", type=int, help="alias for --vars")
    return p


def _config(args) -> Config:
    flags = {k: getattr(args, k, None) for k in ("tol", "q", "N", "D", "zero_budget", "term_budget", "max_cutoff", "output")}
    return load_config(flags)


def _emit(cfg: Config, text: str, obj) -> None:
    if cfg.output == "json":
        print(json.dumps(obj, indent=2, default=str))
    else:
        print(text)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise PreconditionError("missing parameters: " + ", ".join("-" + n if len(n) == 1 else "--" + n for n in missing))
    return [getattr(args, n) for n in names]


# ---------------------------------------------------------------- commands


def cmd_product(args, cfg: Config) -> int:
    if args.mbar:
        x = LinComb.monomial(parse_mbar(args.left), tag="Mbar")
        y = LinComb.monomial(parse_mbar(args.right), tag="Mbar")
        out = qs.mbar_product(x, y, cfg.term_budget)
    else:
        x = LinComb.monomial(parse_lwc(args.left))
        y = LinComb.monomial(parse_lwc(args.right))
        out = qs.product(x, y, cfg.term_budget)
    _emit(cfg, out.format(), out.to_json_obj())
    return EXIT_OK


def cmd_basis(args, cfg: Config) -> int:
    alpha = parse_lwc(args.alpha)
    out = basis.f_to_m(alpha) if args.direction == "f2m" else basis.m_to_f(alpha)
    _emit(cfg, out.format(), out.to_json_obj())
    return EXIT_OK


def cmd_matrix(args, cfg: Config) -> int:
    direction = "FtoM" if args.direction == "f2m" else "MtoF"
    keys, rows = basis.transition_matrix(args.size, cfg.zero_budget, direction)
    labels = [format_lwc(k) for k in keys]
    width = max(len(s) for s in labels)
    lines = [" " * width + "  " + " ".join(f"{s:>{width}}" for s in labels)]
    for lab, row in zip(labels, rows):
        lines.append(f"{lab:>{width}}  " + " ".join(f"{v:>{width}}" for v in row))
    _emit(cfg, "\n".join(lines), {"keys": labels, "entries": rows})
    return EXIT_OK


def _relation_for(args):
    kind = args.kind
    if kind == "euler":
        a, b = _need(args, "a", "b")
        return mzv.euler_decomposition(a, b)
    if kind == "stirling":
        a, m = _need(args, "a", "m")
        return mzv.stirling_relation(a, m)
    a, b, m, n = _need(args, "a", "b", "m", "n")
    if kind == "q-stuffle":
        return qmzv.stuffle_q_relation(a, b, m, n, hypotheses=not args.outside_hypotheses)
    return {
        "stuffle": mzv.stuffle_relation,
        "shuffle": mzv.shuffle_relation,
        "double-shuffle": mzv.double_shuffle_relation,
        "stirling-product": mzv.stirling_product_relation,
    }[kind](a, b, m, n)


def _finish(cfg: Config, text: str, obj: dict, ok: bool) -> int:
    _emit(cfg, text, obj)
    return EXIT_OK if ok else EXIT_FAIL


def _verify_rb(args, cfg: Config) -> tuple[str, dict, bool]:
    if args.x is not None or args.y is not None:
        x_key, y_key = parse_mbar(_need(args, "x")[0]), parse_mbar(_need(args, "y")[0])
        pairs = [(x_key, y_key)]
    else:
        keys = [(h,) + t for s in range(cfg.D + 1) for h in range(s + 1) for t in lwcs(s - h, 3, 3)]
        pairs = [(x, y) for x, y in itertools.product(keys, repeat=2) if sum(x) + sum(y) <= cfg.D]
    failures = []
    for x, y in pairs:
        r = qs.rb_residual(LinComb.monomial(x, tag="Mbar"), LinComb.monomial(y, tag="Mbar"))
        if r:
            failures.append({"x": list(x), "y": list(y), "residual": r.format()})
    text = f"Rota-Baxter identity on {len(pairs)} Mbar pairs: " + ("all residuals zero" if not failures else f"{len(failures)} nonzero")
    return text, {"pairs": len(pairs), "failures": failures, "verified": not failures}, not failures


def _verify_oracle(args, cfg: Config) -> tuple[str, dict, bool]:
    alpha = parse_lwc(_need(args, "alpha")[0])
    N = cfg.N
    checks = {}
    D = max(cfg.D, sum(alpha))
    checks["M two paths"] = series.expand_M(alpha, N, D) == series.expand_M(alpha, N, D, "literal")
    checks["gamma_P = F"] = series.gamma_P(alpha, N, D) == series.expand_F(alpha, N, D)
    checks["F = sum c M"] = series.expand_combination(basis.f_to_m(alpha), N, D) == series.expand_F(alpha, N, D)
    if args.beta:
        beta = parse_lwc(args.beta)
        D2 = max(cfg.D, sum(alpha) + sum(beta))
        lhs = series.expand_M(alpha, N, D2) * series.expand_M(beta, N, D2)
        rhs = series.expand_combination(qs.quasi_shuffle(alpha, beta, cfg.term_budget), N, D2)
        checks["M product"] = lhs == rhs
    ok = all(checks.values())
    text = "\n".join(f"{k}: {'ok' if v else 'MISMATCH'}" for k, v in checks.items())
    return text, {"alpha": format_lwc(alpha), "N": N, "checks": checks, "verified": ok}, ok


def cmd_verify(args, cfg: Config) -> int:
    kind = args.kind
    if kind == "rb-identity":
        return _finish(cfg, *_verify_rb(args, cfg))
    if kind == "oracle-series":
        return _finish(cfg, *_verify_oracle(args, cfg))
    if kind == "spitzer":
        k, n = _need(args, "k", "n")
        left, right = qs.spitzer_check(k, n, cfg.term_budget)
        ok = left == right
        text = (
            f"M_{format_lwc((k,) * n)} against sum over compositions c of {n} of"
            f" (-1)^({n}-l) / (l! c_1...c_l) * M_({k}c_1)...M_({k}c_l)\n"
            f"  power-sum side expands to {right.format()}\n  " + ("equal" if ok else "NOT equal")
        )
        return _finish(cfg, text, {"lhs": left.to_json_obj(), "rhs": right.to_json_obj(), "verified": ok}, ok)
    if kind == "waring":
        res = standard_rba.waring_check(cfg.N if args.N is not None else 3, cfg.D if args.D is not None else 3)
        return _finish(cfg, res.format(), res.to_json_obj(), res.equal)
    if kind == "duality":
        s, t = _need(args, "s", "t")
        rep = qmzv.duality_check(s, t, cfg.q, cfg.tol)
        return _finish(cfg, rep.format(), rep.to_json_obj(), rep.verified)
    if kind == "homomorphism":
        u, v = _need(args, "u", "v")
        rep = qmzv.homomorphism_check(u, v, cfg.q, cfg.tol)
        return _finish(cfg, rep.format(), rep.to_json_obj(), rep.verified)
    rel = _relation_for(args)
    if args.perturb is not None:
        rel = rel.perturbed(delta=args.perturb)
    if kind == "q-stuffle":
        rep = qmzv.verify_q(rel, cfg.q, cfg.tol)
    else:
        rep = mzv.verify(rel, cfg.tol, max_cutoff=cfg.max_cutoff)
    return _finish(cfg, rep.format(), rep.to_json_obj(), rep.verified)


def cmd_eval(args, cfg: Config) -> int:
    text = args.symbol.strip()
    if args.kind == "mzv":
        sym = mzv.parse_symbol(text)
        r = mzv.zeta_lwc(sym, cfg.tol, cfg.max_cutoff)
        label = str(sym)
    else:
        if text and set(text) <= set("ry"):
            alpha = qmzv.word_to_index(text)
        else:
            alpha = mzv.parse_symbol(text).lwc()
        r = qmzv.zeta_q(alpha, cfg.q, cfg.tol, cfg.max_cutoff)
        label = qmzv._fmt_index(alpha) + f" at q={cfg.q}"
    obj = {"symbol": label, "value": r.value, "tail_bound": r.tail_bound, "cutoff": r.cutoff}
    _emit(cfg, f"{label} = {r.value:.15g}  (tail bound {r.tail_bound:.2e}, cutoff {r.cutoff})", obj)
    return EXIT_OK


def cmd_waring(args, cfg: Config) -> int:
    m = args.m_vars if args.m_vars is not None else (cfg.N if args.N is not None else 3)
    deg = cfg.D if args.D is not None else 3
    res = standard_rba.waring_check(m, deg)
    return _finish(cfg, res.format(), res.to_json_obj(), res.equal)


COMMANDS = {
    "product": cmd_product,
    "basis": cmd_basis,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "waring": cmd_waring,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ToleranceNotReached as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LwcError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
