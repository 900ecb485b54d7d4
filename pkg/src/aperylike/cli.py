"""Command-line front end.

    aperylike terms D --n-max 4
    aperylike certify gamma --alpha 5
    aperylike tables
    aperylike recurrence D --alpha 3
    aperylike verify --only gauss

Exit codes: 0 success, 1 a check failed, 2 usage/config error, 3 integrity violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import congruence_lab as lab
from .operators import operator_for, operator_to_recurrence
from .sequences import (
    SPECS,
    IntegralityViolation,
    Normalization,
    Source,
    TermCacheError,
    TermTable,
    generate,
    get_spec,
    load_term_tables,
    save_term_tables,
    sequence_terms,
)
from .transforms import binomial_transform
from .verification import GROUPS, SCHEMA_VERSION, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3
DEFAULT_N_CAP = 100_000


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _add_common(p: argparse.ArgumentParser, n_max: int | None) -> None:
    p.add_argument("--n-max", type=int, default=n_max)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--eta-normalization", choices=("formula", "recurrence"), default="formula")
    p.add_argument("--n-max-cap", type=int, default=DEFAULT_N_CAP,
                   help="hard upper bound accepted for --n-max")
    p.add_argument("--parallelism", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aperylike", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("terms", help="print u_0..u_N")
    p.add_argument("seq_ids", nargs="+")
    p.add_argument("--source", choices=("formula", "recurrence", "canonical"), default="canonical")
    p.add_argument("--cache", type=Path)
    _add_common(p, 10)

    p = sub.add_parser("transform", help="print v_0(alpha)..v_N(alpha)")
    p.add_argument("seq_ids", nargs="+")
    p.add_argument("--alpha", type=int, required=True)
    _add_common(p, 10)

    p = sub.add_parser("certify", help="certify N_{u1} = M_{u1} (and theorem 1 at --alpha)")
    p.add_argument("seq_ids", nargs="*")
    p.add_argument("--alpha", type=int)
    _add_common(p, 500)

    p = sub.add_parser("tables", help="reproduce the (u1, N_u1) tables")
    _add_common(p, None)

    p = sub.add_parser("gauss", help="check Gauss congruences of v_n(alpha)")
    p.add_argument("seq_ids", nargs="*")
    p.add_argument("--alpha", type=int)
    p.add_argument("--primes", default="2,3,5")
    _add_common(p, 1500)

    p = sub.add_parser("recurrence", help="print the recurrence satisfied by v_n(alpha)")
    p.add_argument("seq_ids", nargs="+")
    p.add_argument("--alpha", type=int)
    _add_common(p, None)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--only", action="append", default=[],
                   help=f"restrict to check groups ({', '.join(GROUPS)}); repeatable or comma-separated")
    p.add_argument("--timings", action="store_true", help="include per-record durations")
    _add_common(p, None)
    return parser


# ---------------------------------------------------------------------------
# rendering


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def render(command: str, records: list[dict], fmt: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "records": records}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    columns: list[str] = []
    for r in records:
        for k in r:
            if k not in columns:
                columns.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    rows = [[_cell(r.get(c)) for c in columns] for r in records]
    widths = [max([len(c)] + [len(row[i]) for row in rows]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _specs(ids: Sequence[str]):
    try:
        return [get_spec(s) for s in ids] if ids else list(SPECS.values())
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None


def _terms_with_cache(spec, source: Source, n_max: int, cache: Path | None) -> TermTable:
    if cache is None:
        return generate(spec, source, n_max)
    stored = {}
    if cache.exists():
        stored = load_term_tables(cache)
        have = stored.get((spec.id, source))
        if have is not None and have.n_max >= n_max:
            return TermTable(spec, source, have.terms[: n_max + 1])
    table = generate(spec, source, n_max)
    stored[(spec.id, source)] = table
    save_term_tables(cache, stored.values())
    return table


def cmd_terms(args) -> tuple[int, list[dict]]:
    source = Source(args.source)
    out = []
    for spec in _specs(args.seq_ids):
        table = _terms_with_cache(spec, source, args.n_max, args.cache)
        out += [{"sequence": spec.id, "source": source.value, "n": n, "value": v}
                for n, v in enumerate(table.terms)]
    return EXIT_OK, out


def cmd_transform(args) -> tuple[int, list[dict]]:
    out = []
    for spec in _specs(args.seq_ids):
        u = sequence_terms(spec, args.n_max, args.eta_normalization)
        v = binomial_transform(u, args.alpha, args.n_max).values
        out += [{"sequence": spec.id, "alpha": args.alpha, "n": n, "value": x} for n, x in enumerate(v)]
    return EXIT_OK, out


def cmd_certify(args) -> tuple[int, list[dict]]:
    out = []
    ok = True
    for spec in _specs(args.seq_ids):
        cert = lab.theorem2_check(spec, args.n_max, range(-25, 26), args.eta_normalization)
        ok &= cert.passed
        d = {"check_name": "theorem2", **cert.to_dict()}
        if args.format == "text":
            d["gcd_profile"] = f"K>={cert.stable_from}: {cert.M_alpha}"
        out.append(d)
        if args.alpha is not None:
            r = lab.theorem1_check(spec, args.alpha, args.n_max, args.eta_normalization)
            ok &= r.passed
            out.append({"check_name": "theorem1", "sequence": spec.id, "alpha": args.alpha,
                        "M": r.M_alpha, "radical": r.modulus, "n_verified": r.n_verified,
                        "status": "Pass" if r.passed else "Fail", "counterexample": r.witness})
    return (EXIT_OK if ok else EXIT_FAIL), out


def cmd_tables(args) -> tuple[int, list[dict]]:
    rows = lab.reproduce_tables(args.eta_normalization)
    out = []
    for r in rows:
        d = r.to_dict()
        if args.format == "text":
            d["aliases"] = ", ".join(r.aliases)
        out.append(d)
    return (EXIT_OK if all(r.match for r in rows) else EXIT_FAIL), out


def cmd_gauss(args) -> tuple[int, list[dict]]:
    try:
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad --primes {args.primes!r}") from None
    out = []
    ok = True
    for spec in _specs(args.seq_ids):
        alphas = [args.alpha] if args.alpha is not None else sorted({0, lab.u1_of(spec, args.eta_normalization)})
        for a in alphas:
            r = lab.gauss_check(spec, a, primes, args.n_max, args.eta_normalization)
            ok &= r.passed
            out.append({"sequence": spec.id, "alpha": a, "primes": primes, "n_max": args.n_max,
                        "status": "Pass" if r.passed else "Fail", "witness": r.witness})
    return (EXIT_OK if ok else EXIT_FAIL), out


def cmd_recurrence(args) -> tuple[int, list[dict]]:
    out = []
    for spec in _specs(args.seq_ids):
        op = operator_for(spec, args.alpha)
        rec = operator_to_recurrence(op)
        out.append({"sequence": spec.id, "alpha": args.alpha, "operator": op.format(),
                    "recurrence": rec.format(), "operator_blocks": op.to_dict(),
                    "coefficients": rec.to_dict()})
        if args.format == "text":
            for k in ("operator_blocks", "coefficients"):
                out[-1].pop(k)
    return EXIT_OK, out


def cmd_verify(args) -> tuple[int, list[dict]]:
    only = [g.strip() for item in args.only for g in item.split(",") if g.strip()]
    try:
        records = run_suite(args.eta_normalization, only or None, args.parallelism)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    failed = any(r.failed for r in records)
    return (EXIT_FAIL if failed else EXIT_OK), [r.to_dict(args.timings) for r in records]


COMMANDS = {
    "terms": cmd_terms,
    "transform": cmd_transform,
    "certify": cmd_certify,
    "tables": cmd_tables,
    "gauss": cmd_gauss,
    "recurrence": cmd_recurrence,
    "verify": cmd_verify,
}


def _validate(args) -> None:
    if args.n_max is not None:
        if args.n_max < 0:
            raise ConfigError("--n-max must be nonnegative")
        if args.n_max > args.n_max_cap:
            raise ConfigError(f"--n-max {args.n_max} exceeds cap {args.n_max_cap}")
    if args.parallelism < 1:
        raise ConfigError("--parallelism must be positive")
    if args.command == "certify" and args.n_max < 4:
        raise ConfigError("certify needs --n-max >= 4")
    if args.command == "gauss" and args.n_max < 2:
        raise ConfigError("gauss needs --n-max >= 2")
    for seq_id in getattr(args, "seq_ids", []) or []:
        _specs([seq_id])


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        t0 = time.perf_counter()
        code, records = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"aperylike: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermCacheError as exc:
        print(f"aperylike: cache error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegralityViolation as exc:
        print(f"aperylike: integrity violation: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    sys.stdout.write(render(args.command, records, args.format))
    if args.command == "verify":
        n_fail = sum(r["status"] == "fail" for r in records)
        print(f"{len(records)} records, {n_fail} failed, {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
