"""Command-line front end.

Subcommands: sw (conductor report), reduce (reduced representative plus
witness), family (tangent-curve experiment table), check-bounds (inequality
verdicts), witt-polys (universal addition/negation polynomials). Characters
come from a JSON spec file, inline flags, or both (flags win). All output is
deterministic for a fixed --seed; ratios are exact integer pairs. Exit codes:
0 success, 1 input error, 2 a verified property failed.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys

from .conductor import fil_nonlog_member, sw_curve, sw_log
from .curves import check_bounds, family_experiment
from .parsing import CharacterSpec, ParseError, load_spec
from .witt import MAX_LENGTH, apply_F_minus_1, derive_witt_polys, witt_sub


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _add_character_args(sp):
    sp.add_argument("--spec", metavar="PATH", help="JSON character file")
    sp.add_argument("--p", type=int, help="residue characteristic (prime)")
    sp.add_argument("--m", type=int, help="residue field degree over F_p (default 1)")
    sp.add_argument("--d", type=int,
                    help="variable count; d=1 selects the curve model (default 2)")
    sp.add_argument("--n", type=int, help="Witt length (defaults to the coordinate count)")
    sp.add_argument("--coords", action="append", metavar="EXPR",
                    help="coordinate expression, repeatable (x/y aliases t2/t1)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="swanlog",
                 description="Log Swan conductors over 2-dimensional local rings "
                             "and their tangent-curve families.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sw", help="conductor report for a character")
    _add_character_args(sp)
    sp.add_argument("--variant", choices=["as-printed", "shifted"], default="shifted",
                    help="non-log filtration variant (curve model only)")
    sp.set_defaults(func=cmd_sw)

    sp = sub.add_parser("reduce", help="reduced representative and witness")
    _add_character_args(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("family", help="tangent-curve conductor table")
    _add_character_args(sp)
    sp.add_argument("--emax", type=int, default=10, help="largest tangency order")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", metavar="PATH", help="write to file instead of stdout")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("check-bounds", help="curve-conductor inequality verdicts")
    _add_character_args(sp)
    sp.add_argument("--dmult", type=int, required=True,
                    help="multiplicity of the boundary divisor in D")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check_bounds)

    sp = sub.add_parser("witt-polys", help="print the universal S_i and negation polynomials")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=2,
                    help=f"Witt length, 1..{MAX_LENGTH}")
    sp.set_defaults(func=cmd_witt_polys)
    return ap


def _character_from_args(args):
    overrides = {"p": args.p, "m": args.m, "d": args.d, "n": args.n,
                 "coords": args.coords}
    if args.spec:
        spec = load_spec(args.spec, overrides)
    else:
        if args.p is None or not args.coords:
            raise CliError("need --spec, or --p together with --coords")
        spec = CharacterSpec(p=args.p, d=args.d if args.d is not None else 2,
                             coords=tuple(args.coords),
                             m=args.m if args.m is not None else 1,
                             n_len=args.n)
    return spec.build()


def _bool(b) -> str:
    return "true" if b else "false"


def cmd_sw(args) -> int:
    chi = _character_from_args(args)
    if chi.is_curve_model():
        rep = sw_curve(chi)
        print("model = curve")
    else:
        rep = sw_log(chi)
        print("model = generic-point")
    print(f"sw = {rep.sw}")
    print(f"fierce = {_bool(rep.fierce)}")
    print(f"tie = {_bool(rep.tie)}")
    di = rep.dominant_index
    print(f"dominant_index = {'none' if di is None else di}")
    print(f"steps = {rep.steps}")
    for i, x in enumerate(rep.reduced.coords):
        print(f"reduced[{i}] = {x.render()}")
    if chi.is_curve_model():
        level = 1
        while not fil_nonlog_member(rep.reduced, level, args.variant):
            level += 1
        print(f"nonlog_level = {level} ({args.variant})")
    return 0


def cmd_reduce(args) -> int:
    chi = _character_from_args(args)
    rep = sw_curve(chi) if chi.is_curve_model() else sw_log(chi)
    for i, x in enumerate(rep.reduced.coords):
        print(f"reduced[{i}] = {x.render()}")
    for i, y in enumerate(rep.witness.coords):
        print(f"witness[{i}] = {y.render()}")
    delta = witt_sub(chi.coords, rep.reduced)
    ok = delta == apply_F_minus_1(rep.witness)
    print(f"witness_check = {'ok' if ok else 'FAILED'}")
    print(f"sw = {rep.sw}")
    print(f"steps = {rep.steps}")
    return 0 if ok else 2


def _summary_json(summary) -> str:
    return json.dumps(summary, separators=(", ", ": "))


def cmd_family(args) -> int:
    chi = _character_from_args(args)
    if chi.is_curve_model():
        raise CliError("family needs the generic-point model (d >= 2)")
    if args.emax < 1:
        raise CliError("--emax must be >= 1")
    res = family_experiment(chi, args.emax)
    with _open_out(args.out) as out:
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["e", "mult", "sw", "ratio_num", "ratio_den", "case_tag"])
            for row in res.rows:
                writer.writerow([row.e, row.mult, row.sw,
                                 row.ratio.numerator, row.ratio.denominator,
                                 row.case_tag])
            print(_summary_json(res.summary), file=sys.stderr)
        else:
            doc = {
                "rows": [{"e": r.e, "mult": r.mult, "sw": r.sw,
                          "ratio": [r.ratio.numerator, r.ratio.denominator],
                          "case_tag": r.case_tag} for r in res.rows],
                "summary": res.summary,
            }
            out.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_check_bounds(args) -> int:
    chi = _character_from_args(args)
    if chi.is_curve_model():
        raise CliError("check-bounds needs the generic-point model (d >= 2)")
    verdict = check_bounds(chi, args.dmult, samples=args.samples, seed=args.seed)
    print(json.dumps(verdict, indent=2))
    return 0 if verdict["ok"] else 2


def cmd_witt_polys(args) -> int:
    polys = derive_witt_polys(args.p, args.n)
    for i in range(args.n):
        print(f"S_{i} = {polys.render_sum(i)}")
    for i in range(args.n):
        print(f"neg_{i} = {polys.render_neg(i)}")
    return 0


@contextlib.contextmanager
def _open_out(path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
