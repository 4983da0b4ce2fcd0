"""Command-line entry point: ``sixvertex count | z | verify``.

Exit codes: 0 pass, 1 identity failure or disagreement, 2 degenerate
input, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from fractions import Fraction

from . import closedform as cf
from . import enumeration as en
from .errors import DegenerateEta, DegenerateParameters, InvalidConvention, SizeTooLarge
from .ikdet import ik_z, relative_diff
from .model import SpectralConfig, WeightConvention
from .verify import SUITES, dumps, exact, run_suite

EXIT_OK, EXIT_FAIL, EXIT_DEGENERATE, EXIT_USAGE = 0, 1, 2, 64
CLOSED_FORM_MAX = 50

_PI_ANGLE = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


def parse_angle(text: str) -> float:
    """Decimal radians, or ``p pi/q`` forms: "2pi/3", "-pi/2", "pi", "0.5"."""
    m = _PI_ANGLE.match(text.lower())
    if m:
        sign, num, den = m.groups()
        frac = Fraction(num or 1) / Fraction(den or 1)
        if sign == "-":
            frac = -frac
        return frac.numerator * math.pi / frac.denominator
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def _angle_list(values: list[str]) -> list[float]:
    out = []
    for v in values:
        out.extend(parse_angle(p) for p in v.split(",") if p.strip())
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sixvertex", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None,
                   help=f"enumeration workers (default ${en.THREADS_ENV} or all cores)")
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="exact ASM statistics")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--stat", choices=["total", "refined", "top-bottom", "top-left"], default="total")
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--ceiling", type=int, default=en.DEFAULT_CEILING,
                   help="largest n to enumerate")

    z = sub.add_parser("z", help="evaluate the partition function")
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--eta", type=parse_angle, default=2 * math.pi / 3)
    z.add_argument("--xs", nargs="+", required=True)
    z.add_argument("--ys", nargs="+", required=True)
    z.add_argument("--method", choices=["ik", "brute"], default="ik")
    z.add_argument("--convention", choices=["signed", "counting"], default="signed")
    z.add_argument("--both", action="store_true", help="also run the other method and compare")
    z.add_argument("--ceiling", type=int, default=en.DEFAULT_CEILING)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--eta", type=parse_angle, default=None)
    v.add_argument("--N", type=int, default=3, help="root-of-unity order for detsum/basic")
    return p


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_rows(n: int, table) -> list[list]:
    return [[r] + list(row) for r, row in enumerate(table, start=1)]


def cmd_count(args) -> tuple[str, int]:
    n, stat = args.n, args.stat
    if n < 1:
        raise _Usage("n must be positive")
    enumerable = n <= args.ceiling
    if not enumerable and (stat in ("top-bottom", "top-left") or n > CLOSED_FORM_MAX):
        raise _Usage(f"n={n} is above the enumeration ceiling {args.ceiling}")
    doc = {"stat": stat, "n": n}
    agrees = None
    if stat == "total":
        closed = cf.a_total(n)
        doc["closed_form"] = closed
        if enumerable:
            doc["enumerated"] = en.count_states(n, args.ceiling, args.threads)
            agrees = doc["enumerated"] == closed
        header, rows = ["n", "total"], [[n, doc.get("enumerated", closed)]]
    elif stat == "refined":
        closed = [cf.a_refined(n, r) for r in range(1, n + 1)]
        doc["closed_form"] = closed
        values = closed
        if enumerable:
            values = list(en.refined_top(n, args.ceiling, args.threads).data)
            doc["enumerated"] = values
            agrees = values == closed
        header, rows = ["r", "A"], [[r, a] for r, a in enumerate(values, start=1)]
    else:
        stats = en.boundary_stats(n, args.ceiling, args.threads)
        table = stats.top_bottom if stat == "top-bottom" else stats.top_left
        doc["table"] = [list(row) for row in table]
        if stat == "top-left":
            doc["corner"] = stats.corner
        header, rows = ["r"] + [str(k) for k in range(1, n + 1)], _table_rows(n, table)
    for key in ("closed_form", "enumerated", "table", "corner"):
        if key in doc:
            doc[key] = exact(doc[key])
    if agrees is not None:
        doc["agrees"] = agrees
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = dumps(doc) + "\n"
    return text, EXIT_FAIL if agrees is False else EXIT_OK


def cmd_z(args) -> tuple[str, int]:
    xs, ys = _angle_list(args.xs), _angle_list(args.ys)
    if len(xs) != args.n or len(ys) != args.n:
        raise _Usage(f"need {args.n} xs and ys, got {len(xs)} and {len(ys)}")
    cfg = SpectralConfig(args.eta, xs, ys)
    conv = WeightConvention.parse(args.convention)

    def brute():
        return en.brute_z(cfg, conv, args.ceiling, args.threads)

    def ik():
        if conv is not WeightConvention.SIGNED:
            raise _Usage("the determinant evaluates the signed convention only")
        return ik_z(cfg)

    first = ik if args.method == "ik" else brute
    value = first()
    if not args.both:
        return format(value, ".17g") + "\n", EXIT_OK
    other = brute() if args.method == "ik" else ik()
    vals = {args.method: value, ("brute" if args.method == "ik" else "ik"): other}
    lines = [f"{k} {format(v, '.17g')}" for k, v in vals.items()]
    lines.append(f"relative_discrepancy {format(relative_diff(value, other), '.17g')}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    if args.n < 1 or args.trials < 1:
        raise _Usage("n and trials must be positive")
    rep = run_suite(args.suite, args.n, args.trials, args.seed, args.tol, args.eta, args.N,
                    threads=args.threads)
    return dumps(rep.to_dict()) + "\n", EXIT_OK if rep.status == "pass" else EXIT_FAIL


class _Usage(Exception):
    pass


COMMANDS = {"count": cmd_count, "z": cmd_z, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = en.default_threads()
    try:
        text, code = COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"sixvertex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeTooLarge as exc:
        print(f"sixvertex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateParameters as exc:
        print(f"sixvertex: DegenerateParameters: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DegenerateEta, InvalidConvention) as exc:
        print(f"sixvertex: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
