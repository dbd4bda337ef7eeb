"""``girth`` command line.

Exit status: 0 on success, 2 on domain errors, 64 on usage errors, 66 when
an input file cannot be read.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import GirthError
from .galois import field_of_order
from .girth import CSV_COLUMNS, certify, fit_growth_exponent, probe_table
from .matgroup import LinearGroup, growth_table
from .numbers import prime_power
from .poly import count_irreducibles, enumerate_monic_irreducibles, parse_poly
from .survival import survive_multivariate

EX_DOMAIN = 2
EX_USAGE = 64
EX_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _window(text):
    lo, sep, hi = text.partition("..")
    try:
        window = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if not sep or window[0] > window[1]:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    return window


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="girth", description="Growth and congruence-quotient bounds for linear groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="csv"):
        sp.add_argument("--spec", required=True, help="group spec file or bundled example name")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json", "plain"), default=fmt)
        sp.add_argument("--ball-budget", type=_positive, help="max ball size (default $GIRTH_BALL_BUDGET or 5e6)")

    g = sub.add_parser("growth", help="ball sizes b(0..max-n)")
    common(g)
    g.add_argument("--max-n", type=_positive, required=True)
    g.add_argument("--fit", type=_window, help="print the log-log slope over lo..hi to stderr")

    c = sub.add_parser("certify", help="certified finite quotient at radius n")
    common(c, "json")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--product-mode", action="store_true", help="survive the assembled product")

    pr = sub.add_parser("probe", help="minimal congruence quotients for n = 1..max-n")
    common(pr)
    pr.add_argument("--max-n", type=_positive, required=True)
    pr.add_argument("--no-cert", action="store_true", help="skip the certificate columns")
    pr.add_argument("--search-budget", type=_positive, default=1_000_000)
    pr.add_argument("--threads", type=_positive, default=1)
    pr.add_argument("--product-mode", action="store_true")
    pr.add_argument("--fit", type=_window, help="print log-log slopes over lo..hi to stderr")

    i = sub.add_parser("irr", help="monic irreducibles over F_q")
    i.add_argument("--q", type=int, required=True)
    i.add_argument("--deg", type=_positive, required=True)
    mode = i.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--count", action="store_true")
    i.add_argument("--out")

    s = sub.add_parser("survive", help="specialization under which a polynomial survives")
    s.add_argument("--poly", required=True, help="polynomial in t1..tk")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--q", type=int, required=True, help="order of the base field")
    s.add_argument("--format", choices=("json", "plain"), default="json")
    s.add_argument("--out")
    return p


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _table_text(rows: list[dict], columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if r[c] is None else r[c] for c in columns])
    else:
        for r in rows:
            buf.write(" ".join(f"{c}={'' if r[c] is None else r[c]}" for c in columns) + "\n")
    return buf.getvalue()


def _dict_text(data: dict, fmt: str) -> str:
    if fmt == "plain":
        return "".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n"
                       for k, v in data.items())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        flat = {k: v for k, v in data.items() if not isinstance(v, (dict, list))}
        w.writerow(flat)
        w.writerow(flat.values())
        return buf.getvalue()
    return json.dumps(data, indent=2) + "\n"


def _fit(label, table, window):
    slope = fit_growth_exponent(table, window)
    print(f"slope {label} over {window[0]}..{window[1]}: {slope:.4f}", file=sys.stderr)


def _group(args) -> LinearGroup:
    return LinearGroup.load(args.spec, args.ball_budget)


def cmd_growth(args):
    G = _group(args)
    table = growth_table(G, args.max_n)
    rows = [{"n": n, "ball_size": b} for n, b in table.items()]
    _emit(_table_text(rows, ("n", "ball_size"), args.format), args.out)
    if args.fit:
        _fit("ball_size", {n: b for n, b in table.items() if n > 0}, args.fit)


def cmd_certify(args):
    G = _group(args)
    cert = certify(G, args.n, product_mode=args.product_mode)
    _emit(_dict_text(cert.to_dict(), args.format), args.out)


def cmd_probe(args):
    G = _group(args)
    rows = probe_table(G, args.max_n, certify_rows=not args.no_cert, threads=args.threads,
                       search_budget=args.search_budget, product_mode=args.product_mode)
    _emit(_table_text(rows, CSV_COLUMNS, args.format), args.out)
    if args.fit:
        _fit("ball_size", {r["n"]: r["ball_size"] for r in rows}, args.fit)
        _fit("probe_image_order", {r["n"]: r["probe_image_order"] for r in rows}, args.fit)


def cmd_irr(args):
    if prime_power(args.q) is None:
        raise UsageError(f"--q must be a prime power, got {args.q}")
    if args.list:
        F = field_of_order(args.q)
        text = "".join(P.render() + "\n" for P in enumerate_monic_irreducibles(F, args.deg))
    else:
        text = f"{count_irreducibles(args.q, args.deg)}\n"
    _emit(text, args.out)


def cmd_survive(args):
    pp = prime_power(args.q)
    if pp is None:
        raise UsageError(f"--q must be a prime power, got {args.q}")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    F = field_of_order(args.q)
    P = parse_poly(args.poly, args.k, pp[0]).change_ring(F)
    spec, image = survive_multivariate(P)
    data = spec.describe()
    data["image"] = spec.field.render(image.value)
    _emit(_dict_text(data, args.format), args.out)


COMMANDS = {"growth": cmd_growth, "certify": cmd_certify, "probe": cmd_probe,
            "irr": cmd_irr, "survive": cmd_survive}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"girth: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except GirthError as exc:
        print(f"girth: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_DOMAIN
    except OSError as exc:
        print(f"girth: {exc}", file=sys.stderr)
        return EX_NOINPUT
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
