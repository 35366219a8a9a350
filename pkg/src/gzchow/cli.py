"""Command-line interface.

Exit codes: 0 success (or PASS), 1 theorem check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import fan as fanmod
from .flag import gz_volume_polynomial
from .mw import MinkowskiWeight, mw_basis, mw_cup, mw_ranks, displacement_vector
from .polytope import gz_polytope, lattice_point_count, volume
from .verify import verify_main_theorem

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def _load_fan(path: str) -> fanmod.Fan:
    try:
        return fanmod.Fan.from_dict(_load_json(path))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path} is not a fan: {exc}") from None


def _load_weight(fan: fanmod.Fan, path: str) -> MinkowskiWeight:
    try:
        return MinkowskiWeight.from_dict(fan, _load_json(path))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path} is not a weight on this fan: {exc}") from None


def _parse_lambda(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--lambda must be comma-separated integers, got {text!r}") from None


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- subcommands --------------------------------------------------------------


def cmd_gz_fan(args) -> int:
    if not 2 <= args.n <= 4 and not args.allow_large:
        raise InputError("--n must be 2, 3 or 4 (use --allow-large for more)")
    _emit(fanmod.gz_fan(args.n).to_dict(), args.out)
    return EXIT_OK


def cmd_gz_polytope(args) -> int:
    lam = _parse_lambda(args.lam)
    P = gz_polytope(lam)
    if args.volume or args.lattice_points:
        if P.dim < P.ambient_dim:
            print(f"lower-dimensional: dim {P.dim} < {P.ambient_dim}")
        if args.volume:
            print(f"volume: {_fraction_str(volume(P))}")
        if args.lattice_points:
            print(f"lattice points: {lattice_point_count(P)}")
        if args.out:
            _emit(P.to_dict(), args.out)
    else:
        data = P.to_dict()
        data["dim"] = P.dim
        data["full_dimensional"] = P.is_full_dimensional
        _emit(data, args.out)
    return EXIT_OK


def cmd_mw(args) -> int:
    fan = _load_fan(args.fan)
    if not 0 <= args.codim <= fan.dim:
        raise InputError(f"--codim must lie in 0..{fan.dim}")
    _emit([w.to_dict(args.fan) for w in mw_basis(fan, args.codim)], args.out)
    return EXIT_OK


def _print_ranks(ranks):
    print(", ".join(str(r) for r in ranks))


def cmd_mw_rank(args) -> int:
    _print_ranks(mw_ranks(_load_fan(args.fan)))
    return EXIT_OK


def cmd_cup(args) -> int:
    fan = _load_fan(args.fan)
    c, d = _load_weight(fan, args.c), _load_weight(fan, args.d)
    if c.codim + d.codim > fan.dim:
        raise InputError("codimensions add up to more than the dimension")
    product = mw_cup(c, d, displacement_vector(fan, args.seed))
    _emit(product.to_dict(args.fan), args.out)
    return EXIT_OK


def cmd_hypersimplex(args) -> int:
    fan = fanmod.hypersimplex_fan()
    if args.out:
        _emit(fan.to_dict(), args.out)
    _print_ranks(mw_ranks(fan))
    return EXIT_OK


def cmd_volume_poly(args) -> int:
    if not 2 <= args.n <= 4:
        raise InputError("--n must be 2, 3 or 4")
    _emit(gz_volume_polynomial(args.n, args.seed).to_dict(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n < 2 or (args.n > 4 and not args.allow_large):
        raise InputError("--n must be 2, 3 or 4 (use --allow-large for more)")
    report = verify_main_theorem(args.n, args.seed, allow_large=args.allow_large)
    data = report.to_dict(include_timings=args.timings)
    if args.report:
        _emit(data, args.report)
    print(f"n={report.n} seed={report.seed} mw={report.mw_ranks} lefschetz={report.lefschetz_dims} "
          f"gorenstein={report.gorenstein_dims} flag={report.flag_dims} scalar={data['scalar']}")
    if report.passed:
        print("PASS")
        return EXIT_OK
    print(f"FAIL: theorem check failed at stage {report.failed_stage}")
    return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gzchow", description="Minkowski weights on the Gelfand-Zetlin fan.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gz-fan", help="emit the GZ fan as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_gz_fan)

    p = sub.add_parser("gz-polytope", help="emit a GZ polytope or its volume / lattice-point count")
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated dominant weight")
    p.add_argument("--out")
    p.add_argument("--volume", action="store_true")
    p.add_argument("--lattice-points", action="store_true")
    p.set_defaults(func=cmd_gz_polytope)

    p = sub.add_parser("mw", help="lattice basis of codimension-k Minkowski weights")
    p.add_argument("--fan", required=True)
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mw)

    p = sub.add_parser("mw-rank", help="ranks of Minkowski weights in every codimension")
    p.add_argument("--fan", required=True)
    p.set_defaults(func=cmd_mw_rank)

    p = sub.add_parser("cup", help="cup product of two weights")
    p.add_argument("--fan", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--d", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("hypersimplex", help="fan over the cube and its rank table")
    p.add_argument("--out", help="also write the fan JSON here")
    p.set_defaults(func=cmd_hypersimplex)

    p = sub.add_parser("volume-poly", help="GZ volume polynomial as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_volume_poly)

    p = sub.add_parser("verify", help="compare flag cohomology with the Gorenstein quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    p.add_argument("--allow-large", action="store_true", help="permit n > 4 (no runtime guarantee)")
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--lambda -1,0,1`` through: argparse would read the value as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--lambda":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
