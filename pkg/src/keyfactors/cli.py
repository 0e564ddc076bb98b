"""Command-line front end for the failure-chain analysis pipeline.

Commands::

    keyfactors validate FILE...                 check chain documents
    keyfactors matrix FILE... [-o OUT]          relationship matrix CSV
    keyfactors analyze FILE... [-o OUT]         per-factor score report CSV
    keyfactors analyze --from-sums SUMS.csv     same, from published sums
    keyfactors plot FILE... | --from-sums ...   active-passive scatter SVG
    keyfactors dot FILE... [-o OUT]             failure network in DOT
    keyfactors import-rapex ALERTS.json -d DIR  skeleton .chains files

Exit codes: 0 success, 1 validation/content error, 2 IO/format error.
Without -o, output goes to standard output; file writes are atomic
(temp file plus rename), so rerunning with unchanged inputs rewrites
identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from pathlib import Path

from keyfactors.analysis import AnalysisConfig, analyze, competition_rank
from keyfactors.dsl import Diagnostic, Severity, parse_document
from keyfactors.emit import (
    PlotLayout,
    export_dot,
    export_matrix_csv,
    export_report_csv,
    render_scatter_svg,
)
from keyfactors.matrix import SumsTable, build_matrix, sums
from keyfactors.model import ChainSet, Factor, FactorCategory, normalize_name
from keyfactors.rapex import (
    DEFAULT_FIELDS,
    MalformedRecordError,
    import_rapex,
    parse_alert_records,
)

SUMS_COLUMNS = ["id", "category", "name", "active_sum", "passive_sum"]


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keyfactors",
        description="Scenario-based failure analysis from failure chain documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check chain documents and print diagnostics")
    p_validate.add_argument("files", nargs="*", metavar="FILE")
    _add_strict(p_validate)
    p_validate.set_defaults(handler=_cmd_validate, parser=p_validate)

    p_matrix = sub.add_parser("matrix", help="write the relationship matrix CSV")
    p_matrix.add_argument("files", nargs="*", metavar="FILE")
    _add_strict(p_matrix)
    _add_output(p_matrix)
    p_matrix.set_defaults(handler=_cmd_matrix, parser=p_matrix)

    p_analyze = sub.add_parser("analyze", help="write the per-factor score report CSV")
    p_analyze.add_argument("files", nargs="*", metavar="FILE")
    p_analyze.add_argument("--from-sums", metavar="CSV", help="read precomputed sums instead of chains")
    _add_strict(p_analyze)
    _add_output(p_analyze)
    _add_analysis_overrides(p_analyze)
    p_analyze.set_defaults(handler=_cmd_analyze, parser=p_analyze)

    p_plot = sub.add_parser("plot", help="write the active-passive scatter SVG")
    p_plot.add_argument("files", nargs="*", metavar="FILE")
    p_plot.add_argument("--from-sums", metavar="CSV", help="read precomputed sums instead of chains")
    _add_strict(p_plot)
    _add_output(p_plot)
    _add_analysis_overrides(p_plot)
    p_plot.set_defaults(handler=_cmd_plot, parser=p_plot)

    p_dot = sub.add_parser("dot", help="write the failure network as a DOT graph")
    p_dot.add_argument("files", nargs="*", metavar="FILE")
    _add_strict(p_dot)
    _add_output(p_dot)
    p_dot.set_defaults(handler=_cmd_dot, parser=p_dot)

    p_import = sub.add_parser("import-rapex", help="turn alert records into skeleton chain files")
    p_import.add_argument("alerts", metavar="ALERTS_JSON")
    p_import.add_argument("-d", "--out-dir", required=True, metavar="DIR")
    _add_strict(p_import)
    for key, default in DEFAULT_FIELDS.items():
        p_import.add_argument(
            f"--field-{key}",
            dest=f"field_{key}",
            default=default,
            metavar="NAME",
            help=f"record field holding the {key} (default: {default})",
        )
    p_import.set_defaults(handler=_cmd_import_rapex, parser=p_import)

    return parser


def _add_strict(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strict", action="store_true", help="treat warnings as errors")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", metavar="OUT", help="output file (default: stdout)")


def _add_analysis_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dominant-ratio", type=float, default=2.0, metavar="R")
    parser.add_argument("--reactive-ratio", type=float, default=0.5, metavar="R")
    parser.add_argument("--key-threshold", type=float, default=75.0, metavar="T")


def _cmd_validate(args: argparse.Namespace) -> int:
    if not args.files:
        return _usage_error(args, "at least one chain file is required")
    failed = False
    for path in args.files:
        _, diagnostics = parse_document(_read_text(path))
        _print_diagnostics(path, diagnostics)
        if any(d.severity is Severity.ERROR for d in diagnostics):
            failed = True
        elif args.strict and diagnostics:
            failed = True
    return 1 if failed else 0


def _cmd_matrix(args: argparse.Namespace) -> int:
    chains = _load_chains(args)
    if chains is None:
        return 1
    m = build_matrix(chains)
    table = sums(m)
    text = export_matrix_csv(m, table, competition_rank(table.active), competition_rank(table.passive))
    _write_output(text, args.output)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    scores, code = _scores_from_args(args)
    if scores is None:
        return code
    _write_output(export_report_csv(scores), args.output)
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    scores, code = _scores_from_args(args)
    if scores is None:
        return code
    cfg, error = _analysis_config(args)
    if cfg is None:
        return error
    _write_output(render_scatter_svg(scores, cfg, PlotLayout()), args.output)
    return 0


def _cmd_dot(args: argparse.Namespace) -> int:
    chains = _load_chains(args)
    if chains is None:
        return 1
    _write_output(export_dot(build_matrix(chains)), args.output)
    return 0


def _cmd_import_rapex(args: argparse.Namespace) -> int:
    text = _read_text(args.alerts)
    fields = {key: getattr(args, f"field_{key}") for key in DEFAULT_FIELDS}
    try:
        records = parse_alert_records(text, fields)
    except MalformedRecordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    files, warnings = import_rapex(records)
    for warning in warnings:
        print(f"{args.alerts}:record {warning.line}: warning: {warning.message}", file=sys.stderr)
    if args.strict and warnings:
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, document in files:
        path = out_dir / name
        _write_atomic(path, document)
        print(str(path))
    return 0


def _scores_from_args(args: argparse.Namespace):
    cfg, error = _analysis_config(args)
    if cfg is None:
        return None, error
    if args.from_sums and args.files:
        return None, _usage_error(args, "--from-sums cannot be combined with chain files", code=2)
    if args.from_sums:
        try:
            table = _read_sums_csv(args.from_sums)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return None, 2
        return analyze(table, cfg), 0
    chains = _load_chains(args)
    if chains is None:
        return None, 1
    return analyze(chains, cfg), 0


def _analysis_config(args: argparse.Namespace) -> tuple[AnalysisConfig | None, int]:
    try:
        return (
            AnalysisConfig(
                dominant_ratio=getattr(args, "dominant_ratio", 2.0),
                reactive_ratio=getattr(args, "reactive_ratio", 0.5),
                key_threshold=getattr(args, "key_threshold", 75.0),
            ),
            0,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2


def _load_chains(args: argparse.Namespace) -> ChainSet | None:
    """Parse every input file into one combined chain set.

    Prints diagnostics as they are found; returns None when any error
    (or, under --strict, any warning) occurred.
    """
    if not args.files:
        _usage_error(args, "at least one chain file is required")
        return None
    failed = False
    combined: list = []
    for path in args.files:
        chain_set, diagnostics = parse_document(_read_text(path))
        _print_diagnostics(path, diagnostics)
        if any(d.severity is Severity.ERROR for d in diagnostics):
            failed = True
        elif args.strict and diagnostics:
            failed = True
        combined.extend(chain_set.chains)
    if failed:
        return None
    return ChainSet(tuple(combined))


def _print_diagnostics(path: str, diagnostics: list[Diagnostic]) -> None:
    for d in diagnostics:
        print(f"{path}:{d.line}:{d.column}: {d.severity.value}: {d.message}", file=sys.stderr)


def _usage_error(args: argparse.Namespace, message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    print(args.parser.format_usage(), end="", file=sys.stderr)
    return code


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _read_sums_csv(path: str) -> SumsTable:
    """Load a published sums table (id, category, name, active_sum, passive_sum)."""
    reader = csv.DictReader(io.StringIO(_read_text(path)))
    missing = [c for c in SUMS_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"{path}: missing columns: {', '.join(missing)}")
    factors: list[Factor] = []
    active: list[int] = []
    passive: list[int] = []
    seen_ids: set[int] = set()
    seen_identities: set[tuple[FactorCategory, str]] = set()
    for row_number, row in enumerate(reader, start=2):
        try:
            factor_id = int(row["id"])
            active_sum = int(row["active_sum"])
            passive_sum = int(row["passive_sum"])
            if factor_id <= 0 or active_sum < 0 or passive_sum < 0:
                raise ValueError
        except (TypeError, ValueError):
            raise ValueError(f"{path}: line {row_number}: id must be positive, sums non-negative") from None
        try:
            category = FactorCategory.parse(row["category"] or "")
            key = normalize_name(row["name"] or "")
        except ValueError as exc:
            raise ValueError(f"{path}: line {row_number}: {exc}") from None
        if factor_id in seen_ids:
            raise ValueError(f"{path}: line {row_number}: duplicate id {factor_id}")
        if (category, key) in seen_identities:
            raise ValueError(f"{path}: line {row_number}: duplicate factor {row['name']!r}")
        seen_ids.add(factor_id)
        seen_identities.add((category, key))
        factors.append(Factor(category, row["name"].strip(), key, factor_id))
        active.append(active_sum)
        passive.append(passive_sum)
    return SumsTable(tuple(factors), tuple(active), tuple(passive))


def _write_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        _write_atomic(Path(output), text)


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except OSError:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


if __name__ == "__main__":
    sys.exit(main())
