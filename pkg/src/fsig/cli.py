"""Command-line front end.

    fsig veronese N D [--method closed|brute|both]
    fsig segre R1 R2 ... [--method bound|brute|auto] [--probe-conjecture]
    fsig table
    fsig osequence check 1,2,5 | shift F I | keylemma 1,3,6,10 N

Every value is printed as an exact fraction.  Exit codes: 0 success,
1 disagreement between methods, 2 usage error, 3 subset cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import macaulay
from .signatures import (
    BRUTE_FORCE,
    CLOSED_FORM,
    DEFAULT_SUBSET_CAP,
    SegreParams,
    SubsetCapExceeded,
    Veronese,
    conjecture_probe,
    equality_case,
    f_signature,
    segre_generator_count,
    segre_upper_bound,
    smirnov_tucker_min,
    veronese_dual,
)
from .staircase import veronese_generator_count

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAP = 3

FIELDS = ("family", "params", "quantity", "value", "method", "witness", "certificates")


@dataclass
class OutputRecord:
    family: str
    params: dict
    quantity: str
    value: Fraction
    method: str
    witness: list | None = None
    certificates: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "quantity": self.quantity,
            "value": str(self.value),
            "method": self.method,
            "witness": _plain(self.witness),
            "certificates": list(self.certificates),
        }


def _plain(obj):
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _params_text(params: dict) -> str:
    return " ".join(
        f"{k}={','.join(map(str, v)) if isinstance(v, (list, tuple)) else v}"
        for k, v in params.items()
    )


def render(records: list[OutputRecord], fmt: str, approx: bool) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.as_json()) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(FIELDS) + (["approx"] if approx else [])
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in records:
            d = r.as_json()
            row = [
                d["family"],
                json.dumps(d["params"]),
                d["quantity"],
                d["value"],
                d["method"],
                "" if d["witness"] is None else json.dumps(d["witness"]),
                ";".join(d["certificates"]),
            ]
            if approx:
                row.append(f"{float(r.value):.12g}")
            writer.writerow(row)
        return buf.getvalue()
    lines = []
    for r in records:
        line = f"{r.family:<9} {_params_text(r.params):<16} {r.quantity:<17} {str(r.value):>12}  {r.method}"
        if approx:
            line += f"  ~{float(r.value):.12g}"
        if r.certificates:
            line += "  [" + "; ".join(r.certificates) + "]"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_veronese(n: int, d: int, method: str, cap: int) -> list[OutputRecord]:
    params = {"n": n, "d": d}
    records = []
    closed = brute = None
    if method in ("closed", "both"):
        closed = veronese_dual(n, d)
        records.append(OutputRecord("veronese", params, "dual_f_signature", closed.value, closed.method))
    if method in ("brute", "both"):
        if veronese_generator_count(n, d) > cap:
            raise CommandError(
                f"{veronese_generator_count(n, d)} generators exceed cap {cap}; use --method closed",
                EXIT_CAP,
            )
        brute = smirnov_tucker_min(Veronese(n, d), cap)
        records.append(
            OutputRecord(
                "veronese", params, "dual_f_signature", brute.value, brute.method,
                list(brute.witness), list(brute.certificates),
            )
        )
    if closed is not None and brute is not None and closed.value != brute.value:
        raise CommandError(
            f"closed form {closed.value} disagrees with brute force {brute.value}", EXIT_MISMATCH
        )
    return records


def cmd_segre(r: list[int], method: str, probe: bool, cap: int) -> list[OutputRecord]:
    p = SegreParams(tuple(r))
    params = {"r": list(p.r)}
    records = []
    bound = segre_upper_bound(p)
    holds, reason = equality_case(p)
    brute = None
    feasible = segre_generator_count(p) <= cap

    if method in ("bound", "auto"):
        quantity = "dual_f_signature" if holds else "upper_bound"
        records.append(
            OutputRecord("segre", params, quantity, bound.value, bound.method, None, list(bound.certificates))
        )
    if method == "brute" or (method == "auto" and feasible) or probe:
        if not feasible:
            raise CommandError(
                f"{segre_generator_count(p)} generators exceed cap {cap}; use --method bound",
                EXIT_CAP,
            )
        brute = smirnov_tucker_min(p, cap)
        records.append(
            OutputRecord(
                "segre", params, "dual_f_signature", brute.value, brute.method,
                list(brute.witness), list(brute.certificates),
            )
        )
    records.append(OutputRecord("segre", params, "f_signature", f_signature(p), CLOSED_FORM))

    if brute is not None:
        if holds and brute.value != bound.value:
            raise CommandError(
                f"certified bound {bound.value} disagrees with brute force {brute.value}", EXIT_MISMATCH
            )
        if brute.value > bound.value:
            raise CommandError(
                f"brute force {brute.value} exceeds the upper bound {bound.value}", EXIT_MISMATCH
            )
    if probe:
        report = conjecture_probe(p, cap)
        verdict = "bound attained" if report.equal else "counterexample: bound not attained"
        records.append(
            OutputRecord(
                "segre", params, "conjecture_gap", report.upper_bound - report.brute_force_min,
                BRUTE_FORCE, list(report.witness), [verdict],
            )
        )
    return records


def load_paper_table() -> list[tuple[tuple[int, ...], Fraction, Fraction]]:
    text = resources.files("fsig").joinpath("data/paper_table.csv").read_text()
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        r = tuple(int(x) for x in row["r"].split())
        rows.append((r, Fraction(row["s_dual"]), Fraction(row["s"])))
    return rows


@dataclass
class TableRow:
    r: tuple[int, ...]
    s_dual: Fraction
    s: Fraction
    method: str
    expected_dual: Fraction
    expected_s: Fraction
    brute: Fraction | None

    @property
    def ok(self) -> bool:
        return (
            self.s_dual == self.expected_dual
            and self.s == self.expected_s
            and (self.brute is None or self.brute == self.s_dual)
        )


def _table_row(entry, cap: int) -> TableRow:
    r, exp_dual, exp_s = entry
    p = SegreParams(r)
    bound = segre_upper_bound(p)
    holds, reason = equality_case(p)
    method = f"equality ({reason})" if holds else "upper bound only"
    brute = smirnov_tucker_min(p, cap).value if segre_generator_count(p) <= cap else None
    return TableRow(r, bound.value, f_signature(p), method, exp_dual, exp_s, brute)


def cmd_table(cap: int, threads: int) -> list[TableRow]:
    entries = sorted(load_paper_table(), key=lambda e: (len(e[0]), e[0]))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda e: _table_row(e, cap), entries))


def render_table(rows: list[TableRow], approx: bool) -> str:
    head = f"{'(r_1,...,r_t)':<14} {'s_dual':>10} {'s':>10}  {'brute':>10}  {'match':<5}  method"
    out = [head, "-" * len(head)]
    for row in rows:
        label = "(" + ",".join(map(str, row.r)) + ")"
        brute = "-" if row.brute is None else str(row.brute)
        line = f"{label:<14} {str(row.s_dual):>10} {str(row.s):>10}  {brute:>10}  {'yes' if row.ok else 'NO':<5}  {row.method}"
        if approx:
            line += f"  ~({float(row.s_dual):.6f}, {float(row.s):.6f})"
        out.append(line)
    matched = sum(row.ok for row in rows)
    out.append(f"{matched}/{len(rows)} rows match")
    return "\n".join(out) + "\n"


def table_records(rows: list[TableRow]) -> list[OutputRecord]:
    records = []
    for row in rows:
        params = {"r": list(row.r)}
        certs = [row.method]
        if row.brute is not None:
            certs.append(f"brute force {row.brute}")
        records.append(OutputRecord("segre", params, "dual_f_signature", row.s_dual, CLOSED_FORM, None, certs))
        records.append(OutputRecord("segre", params, "f_signature", row.s, CLOSED_FORM))
    return records


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise CommandError(f"malformed integer list: {text!r}", EXIT_USAGE) from None


def cmd_osequence(args) -> list[OutputRecord]:
    if args.action == "check":
        h = _int_list(args.h)
        ok, where = macaulay.is_o_sequence(h)
        cert = "valid O-sequence" if ok else f"invalid at index {where}"
        return [OutputRecord("osequence", {"h": h}, "o_sequence", Fraction(int(ok)), "macaulay", None, [cert])]
    if args.action == "shift":
        f, i = args.f, args.i
        if f < 1 or i < 1:
            raise CommandError("shift needs f >= 1 and i >= 1", EXIT_USAGE)
        rep = macaulay.represent(f, i)
        terms = " + ".join(f"C({n},{k})" for n, k in rep.terms)
        params = {"f": f, "i": i}
        return [
            OutputRecord("osequence", params, "upper_shift", Fraction(macaulay.upper_shift(f, i)), "macaulay", None, [terms]),
            OutputRecord("osequence", params, "lower_shift", Fraction(macaulay.lower_shift(f, i)), "macaulay", None, [terms]),
        ]
    h = _int_list(args.h)
    try:
        holds = macaulay.key_lemma_check(h, args.n)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_USAGE) from None
    ratios = macaulay.key_lemma_ratios(h, args.n)
    if all(a == b for a, b in ratios):
        cert = "holds with equality at every index"
    elif holds:
        cert = "holds"
    else:
        cert = "fails"
    return [OutputRecord("osequence", {"h": h, "n": args.n}, "key_lemma", Fraction(int(holds)), "macaulay", None, [cert])]


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_const", dest="format", const="json", help="one JSON record per line")
    fmt.add_argument("--csv", action="store_const", dest="format", const="csv", help="CSV with a header row")
    common.add_argument("--approx", action="store_true", help="add a decimal display column")
    common.add_argument("--cap", type=_positive, default=None, help="subset cap for brute force (env FSIG_CAP)")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads for table rows")

    parser = argparse.ArgumentParser(prog="fsig", description="Exact (dual) F-signatures of Veronese and Segre rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("veronese", parents=[common], help="dual F-signature of V_{n,d}")
    v.add_argument("n", type=_positive)
    v.add_argument("d", type=_positive)
    v.add_argument("--method", choices=["closed", "brute", "both"], default="closed")

    s = sub.add_parser("segre", parents=[common], help="(dual) F-signatures of a Segre product")
    s.add_argument("r", type=_positive, nargs="+")
    s.add_argument("--method", choices=["bound", "brute", "auto"], default="auto")
    s.add_argument("--probe-conjecture", action="store_true")

    sub.add_parser("table", parents=[common], help="recompute the 14-row example table")

    o = sub.add_parser("osequence", help="Macaulay representations and O-sequences")
    osub = o.add_subparsers(dest="action", required=True)
    oc = osub.add_parser("check", parents=[common])
    oc.add_argument("h")
    os_ = osub.add_parser("shift", parents=[common])
    os_.add_argument("f", type=int)
    os_.add_argument("i", type=int)
    ok = osub.add_parser("keylemma", parents=[common])
    ok.add_argument("h")
    ok.add_argument("n", type=_positive)
    return parser


def resolve_cap(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("FSIG_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CommandError(f"FSIG_CAP is not an integer: {env!r}", EXIT_USAGE) from None
    return DEFAULT_SUBSET_CAP


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or "plain"
    try:
        cap = resolve_cap(args.cap)
        if args.command == "veronese":
            records = cmd_veronese(args.n, args.d, args.method, cap)
        elif args.command == "segre":
            records = cmd_segre(args.r, args.method, args.probe_conjecture, cap)
        elif args.command == "table":
            rows = cmd_table(cap, args.threads)
            if fmt == "plain":
                sys.stdout.write(render_table(rows, args.approx))
            else:
                sys.stdout.write(render(table_records(rows), fmt, args.approx))
            bad = [row for row in rows if not row.ok]
            for row in bad:
                print(
                    f"mismatch {row.r}: got ({row.s_dual}, {row.s}) brute {row.brute}, "
                    f"expected ({row.expected_dual}, {row.expected_s})",
                    file=sys.stderr,
                )
            return EXIT_MISMATCH if bad else EXIT_OK
        else:
            records = cmd_osequence(args)
    except CommandError as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return exc.code
    except SubsetCapExceeded as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"fsig: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(records, fmt, args.approx))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
