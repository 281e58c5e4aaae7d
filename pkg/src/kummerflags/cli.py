"""Command-line front end: ``kummerflags <verb> --config <file|fixture> ...``."""

from __future__ import annotations

import argparse
import sys
import time

from .config import FIXTURES, Config, load_config
from .errors import KummerFlagsError
from .evalcode import building_basis
from .flag import build_flag
from .isodual import INCONCLUSIVE, NOT_DUAL, isodual, translate_flag
from .isogroup import (count_bounds, enumerate_gamma, enumerate_T0, periods, signs,
                       translation_equivalence)
from .kummer_curve import _render_poly, enumerate_places, parse_function
from .report import Report, compress_ranges
from .riemann_roch import h_set
from .selforth import construct_self_orthogonal

EXIT_OK, EXIT_CONFIG, EXIT_NOT_DUAL, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ranges(text: str) -> list[tuple[int, int]]:
    return [_range(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True,
                        help=f"JSON config path or fixture name ({', '.join(FIXTURES)})")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--threads", type=int, default=1, help="workers for gamma sweeps")
    common.add_argument("--window", type=_range, default=None, metavar="LO..HI",
                        help="pole-number window for H listings")
    common.add_argument("--beta", type=_ints, default=None, help="override beta, e.g. 2 or 1,1")

    ap = argparse.ArgumentParser(prog="kummerflags",
                                 description="Isometry-dual flags of AG codes on Kummer curves.")
    sub = ap.add_subparsers(dest="verb", required=True)
    sub.add_parser("places", parents=[common], help="list rational places")
    sub.add_parser("hstar", parents=[common], help="H*_beta (and H_beta in --window)")
    sub.add_parser("flag", parents=[common], help="a-values, dimensions and dual pairs")
    sub.add_parser("isodual", parents=[common], help="decide the isometry-dual property")
    p = sub.add_parser("translate", parents=[common], help="translate S_beta by a monomial f")
    p.add_argument("--f", dest="func", default=None, help="translation function, e.g. 'α^7*x^-7'")
    p.add_argument("--lambda-tilde", type=_ints, default=None,
                   help="instead compare S_beta with S_{beta + lambda*pi/2}")
    sub.add_parser("selforth", parents=[common], help="self-orthogonal flag construction")
    sub.add_parser("period", parents=[common], help="periods pi(P_inf, Q_i)")
    sub.add_parser("t0", parents=[common], help="the group T0")
    p = sub.add_parser("gamma", parents=[common], help="sweep dual-giving gamma")
    p.add_argument("--lambda-box", type=_ranges, default=None, metavar="LO..HI[,LO..HI]",
                   help="lambda range per Q (default -2..2)")
    p.add_argument("--negatives", type=int, default=50, help="off-lattice samples to test")
    sub.add_parser("bounds", parents=[common], help="bounds on isometry vectors and flags")
    return ap


def _header(cfg: Config, args, beta) -> Report:
    rep = Report()
    rep.add("config", cfg.name)
    C = cfg.curve
    rep.add("curve", f"y^{C.m}={_render_poly(C.F, C.f, cfg.symbol)} over GF({C.F.q})")
    rep.add("genus", cfg.curve.g)
    rep.ints("beta", beta)
    rep.add("seed", args.seed)
    return rep


def _dual_table(rep: Report, flag):
    for a, b in flag.dual_pairs():
        rep.add("dual_pair", f"{a}:{b}")


def cmd_places(cfg, args, rep):
    places = enumerate_places(cfg.curve, cfg.ordering)
    rep.add("count", len(places))
    for i, p in enumerate(places):
        rep.add(f"place.{i}", p.label(cfg.field))
    return EXIT_OK


def cmd_hstar(cfg, args, rep, beta):
    D = cfg.eval_set()
    hs = building_basis(cfg.curve, cfg.scope, beta, D).a_values
    rep.add("n", D.n)
    rep.add("hstar", compress_ranges(hs))
    if args.window:
        full = [0] * len(cfg.curve.roots)
        for k, b in zip(cfg.scope, beta):
            full[k] = b
        rep.add("window", f"{args.window[0]}..{args.window[1]}")
        rep.add("h", compress_ranges(h_set(cfg.curve, full, args.window)))
    return EXIT_OK


def cmd_flag(cfg, args, rep, beta):
    flag = build_flag(cfg.curve, cfg.scope, beta, cfg.eval_set())
    rep.add("n", flag.n)
    rep.add("a0", flag.a0)
    rep.add("a_values", compress_ranges(flag.a_values))
    rep.ints("dims", flag.dims)
    _dual_table(rep, flag)
    return EXIT_OK


def cmd_isodual(cfg, args, rep, beta, human_stats):
    D = cfg.eval_set()
    t0 = time.perf_counter()
    res = isodual(cfg.curve, cfg.scope, beta, D, seed=args.seed)
    dt = time.perf_counter() - t0
    rep.add("status", res.status)
    rep.add("n", D.n)
    rep.add("nullspace_dim", res.nullspace_dim)
    rep.add("rows_used", res.rows_used)
    if res.x is not None:
        rep.vector("x", cfg.field, res.x, cfg.symbol)
    flag = build_flag(cfg.curve, cfg.scope, beta, D)
    rep.add("hstar", compress_ranges(flag.bb.a_values))
    _dual_table(rep, flag)
    if human_stats:
        rep.add("seconds", f"{dt:.3f}")
    return {NOT_DUAL: EXIT_NOT_DUAL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(res.status, EXIT_OK)


def cmd_translate(cfg, args, rep, beta):
    D = cfg.eval_set()
    if args.lambda_tilde is not None:
        te = translation_equivalence(cfg.curve, cfg.scope, beta, args.lambda_tilde, D)
        rep.ints("beta_prime", te.beta_prime)
        rep.add("identical", te.identical)
        rep.add("verified", te.verified)
        rep.ints("v", signs(cfg.field, te.v))
        return EXIT_OK
    if not args.func:
        raise KummerFlagsError("translate needs --f or --lambda-tilde")
    f = parse_function(cfg.curve, args.func, cfg.symbol)
    base = isodual(cfg.curve, cfg.scope, beta, D, seed=args.seed)
    tr = translate_flag(cfg.curve, cfg.scope, beta, f, D,
                        x_beta=base.x if base.is_dual else None, seed=args.seed)
    rep.add("f", f.render(cfg.symbol))
    rep.add("u", tr.u)
    rep.ints("u_vec", tr.u_vec)
    rep.ints("beta_prime", tr.beta_prime)
    rep.vector("tau", cfg.field, tr.tau, cfg.symbol)
    rep.add("h_shift", tr.h_shift_ok)
    rep.add("hstar_shift", tr.hstar_shift_ok)
    if tr.x_prediction is not None:
        rep.vector("x_predicted", cfg.field, tr.x_prediction, cfg.symbol)
        rep.add("x_prediction_confirmed", bool(tr.prediction_ok))
    return EXIT_OK


def cmd_selforth(cfg, args, rep, beta):
    res = construct_self_orthogonal(cfg.curve, cfg.scope, beta, cfg.eval_set(), seed=args.seed)
    rep.vector("x", cfg.field, res.x, cfg.symbol)
    rep.vector("y", cfg.field, res.y, cfg.symbol)
    rep.add("f_y", res.f_y.render(cfg.symbol))
    rep.add("u", res.u)
    rep.ints("u_vec", res.u_vec)
    rep.ints("beta_prime", res.beta_prime)
    rep.add("verification_mode", res.verification_mode)
    rep.add("verified", res.verified)
    return EXIT_OK


def cmd_period(cfg, args, rep):
    D = cfg.eval_set()
    for p in periods(cfg.curve, cfg.scope, D.places[0]):
        rep.add(f"period.Q{p.index + 1}", p.pi)
        rep.add(f"witness.Q{p.index + 1}", p.witness.render(cfg.symbol))
        rep.add(f"non_principal_below.Q{p.index + 1}", f"1..{p.pi - 1}" if p.pi > 1 else "")
    return EXIT_OK


def _t0(cfg):
    D = cfg.eval_set()
    pis = [p.pi for p in periods(cfg.curve, cfg.scope, D.places[0])]
    return pis, enumerate_T0(cfg.curve, cfg.scope, pis, D.places[0])


def cmd_t0(cfg, args, rep):
    pis, T0 = _t0(cfg)
    rep.ints("periods", pis)
    rep.add("size", len(T0))
    for th in T0.members:
        rep.add("member", ",".join(map(str, th)))
    return EXIT_OK


def _bounds(rep, cfg, pis, T0):
    b = count_bounds(cfg.field.q, pis, T0)
    rep.add("T0_zero", b.T0_zero)
    rep.add("e", b.e)
    rep.add("o", b.o)
    rep.add("iso_vector_bound", b.iso_vector_bound)
    rep.add("flag_bound", b.flag_bound)
    if b.note:
        rep.add("interpretation", b.note)


def cmd_bounds(cfg, args, rep):
    pis, T0 = _t0(cfg)
    rep.ints("periods", pis)
    _bounds(rep, cfg, pis, T0)
    return EXIT_OK


def cmd_gamma(cfg, args, rep, beta):
    D = cfg.eval_set()
    box = args.lambda_box if args.lambda_box is not None else [(-2, 2)] * len(cfg.scope)
    if len(box) != len(cfg.scope):
        raise KummerFlagsError("--lambda-box needs one range per Q")
    base = isodual(cfg.curve, cfg.scope, beta, D, seed=args.seed)
    rep.add("base_status", base.status)
    if not base.is_dual:
        return EXIT_NOT_DUAL
    sweep = enumerate_gamma(cfg.curve, cfg.scope, beta, base.x, box, D,
                            negatives=args.negatives, seed=args.seed, workers=args.threads)
    rep.add("count", len(sweep.reports))
    distinct = {tuple(r.x_predicted.tolist()) for r in sweep.reports if r.x_confirmed}
    for r in sweep.reports:
        rep.add("gamma", ",".join(map(str, r.gamma)))
        rep.add("theta", ",".join(map(str, r.theta)))
        rep.add("lambda", ",".join(map(str, r.lam)))
        rep.vector("x", cfg.field, r.x_predicted, cfg.symbol)
        rep.add("confirmed", bool(r.x_confirmed))
    for g, st in sweep.negatives:
        rep.add("off_lattice", f"{','.join(map(str, g))}:{st}")
    rep.add("distinct_vectors", len(distinct))
    pis, T0 = _t0(cfg)
    _bounds(rep, cfg, pis, T0)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
        beta = tuple(args.beta) if args.beta is not None else cfg.beta
        if len(beta) != len(cfg.scope):
            raise KummerFlagsError(f"beta needs {len(cfg.scope)} entries")
        rep = _header(cfg, args, beta)
        verb = args.verb
        if verb == "places":
            code = cmd_places(cfg, args, rep)
        elif verb == "hstar":
            code = cmd_hstar(cfg, args, rep, beta)
        elif verb == "flag":
            code = cmd_flag(cfg, args, rep, beta)
        elif verb == "isodual":
            code = cmd_isodual(cfg, args, rep, beta, args.format == "human")
        elif verb == "translate":
            code = cmd_translate(cfg, args, rep, beta)
        elif verb == "selforth":
            code = cmd_selforth(cfg, args, rep, beta)
        elif verb == "period":
            code = cmd_period(cfg, args, rep)
        elif verb == "t0":
            code = cmd_t0(cfg, args, rep)
        elif verb == "gamma":
            code = cmd_gamma(cfg, args, rep, beta)
        else:
            code = cmd_bounds(cfg, args, rep)
    except (KummerFlagsError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(rep.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
