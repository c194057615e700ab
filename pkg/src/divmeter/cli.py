"""Operator command line: ingest files, print reports, export, serve."""

from __future__ import annotations

import argparse
import socket
import sys

from .indices import NoData
from .ingest import (
    ConflictingManualLabels,
    HeaderMismatch,
    LexiconProvider,
    MalformedXml,
    assemble_edition,
)
from .ingest.annotations import parse_annotations_file
from .ingest.dblp import parse_dblp_file
from .ingest.gender import HttpGenderProvider
from .ingest.registry import (
    BadRegistry,
    load_affiliation_map_file,
    load_registry_file,
)
from .serialize import canonical_json, empty_report_dict, report_to_dict
from .store import LeakDetected, NotFound, Store, VaultLocked

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE_FATAL = 2
EXIT_VAULT_LOCKED = 3
EXIT_CONFLICT = 4
EXIT_NOT_FOUND = 5
EXIT_BIND_FAILURE = 6
EXIT_LEAK = 7


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="divmeter")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="parse inputs and persist one edition")
    ingest.add_argument("--conference", required=True)
    ingest.add_argument("--year", required=True, type=int)
    ingest.add_argument("--dblp")
    ingest.add_argument("--annotations")
    ingest.add_argument("--affiliations")
    ingest.add_argument("--registry", required=True)
    ingest.add_argument("--lexicon")
    ingest.add_argument("--provider-url")
    ingest.add_argument("--threshold", type=float, default=0.8)
    ingest.add_argument("--store", default="./store")
    ingest.add_argument("--json", action="store_true")

    report = sub.add_parser("report", help="print the diversity report for one edition")
    report.add_argument("--conference", required=True)
    report.add_argument("--year", required=True, type=int)
    report.add_argument("--store", default="./store")
    report.add_argument("--json", action="store_true")

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--listen", default="127.0.0.1:8000")
    serve.add_argument("--store", default="./store")
    serve.add_argument("--registry")
    serve.add_argument("--lexicon")

    export = sub.add_parser("export", help="write the anonymized public snapshot")
    export.add_argument("--store", default="./store")
    export.add_argument("--out", required=True)

    return parser


def _make_provider(args):
    if args.lexicon:
        return LexiconProvider.from_file(args.lexicon)
    if args.provider_url:
        return HttpGenderProvider(args.provider_url)
    from .api import NullProvider

    return NullProvider()


def _print_ingest_report(report, as_json: bool) -> None:
    if as_json:
        print(
            canonical_json(
                {
                    "edition_id": report.edition_id,
                    "coverage": report.coverage,
                    "participations_per_role": report.participations_per_role,
                    "provider_failures": report.provider_failures,
                    "skipped_rows": report.skipped_rows,
                    "warnings": report.warnings,
                }
            )
        )
        return
    print(f"edition: {report.edition_id}")
    for role in sorted(report.participations_per_role):
        total = report.participations_per_role[role]
        cov = report.coverage.get(role, {})
        cells = "  ".join(
            f"{facet}={cov.get(facet, 0.0):.0%}" for facet in ("gender", "business", "geography")
        )
        print(f"  {role:<10} n={total:<4} {cells}")
    for row in report.skipped_rows:
        print(f"  skipped row {row['row']}: {row['reason']}")
    for warning in report.provider_failures + report.warnings:
        print(f"  warning: {warning}")


def cmd_ingest(args) -> int:
    if not args.dblp and not args.annotations:
        print("divmeter ingest: at least one of --dblp/--annotations is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        registry = load_registry_file(args.registry)
        provider = _make_provider(args)
    except (BadRegistry, OSError) as exc:
        print(f"divmeter ingest: {exc}", file=sys.stderr)
        return EXIT_PARSE_FATAL

    records = []
    parse_warnings = []
    skipped = []
    try:
        if args.dblp:
            dblp_result = parse_dblp_file(args.dblp)
            records = dblp_result.records
            parse_warnings.extend(dblp_result.warnings)
        drafts = []
        if args.annotations:
            ann_result = parse_annotations_file(args.annotations)
            drafts = ann_result.drafts
            skipped = ann_result.errors
        affiliations = (
            load_affiliation_map_file(args.affiliations) if args.affiliations else {}
        )
    except MalformedXml as exc:
        print(f"divmeter ingest: malformed XML: {exc}", file=sys.stderr)
        return EXIT_PARSE_FATAL
    except (HeaderMismatch, BadRegistry) as exc:
        print(f"divmeter ingest: {exc}", file=sys.stderr)
        return EXIT_PARSE_FATAL
    except OSError as exc:
        print(f"divmeter ingest: {exc}", file=sys.stderr)
        return EXIT_PARSE_FATAL

    store = Store(args.store)
    try:
        result = assemble_edition(
            records,
            drafts,
            registry,
            provider,
            args.conference,
            args.year,
            pseudonymize=store.pseudonymize,
            affiliations=affiliations,
            threshold=args.threshold,
            skipped_rows=skipped,
        )
        result.report.warnings.extend(parse_warnings)
        store.put_edition(result.edition, result.vault_entries)
    except ConflictingManualLabels as exc:
        print(f"divmeter ingest: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except VaultLocked as exc:
        print(f"divmeter ingest: {exc}", file=sys.stderr)
        return EXIT_VAULT_LOCKED

    _print_ingest_report(result.report, args.json)
    return EXIT_OK


def report_json_body(store: Store, edition_id: str) -> str:
    """The exact bytes the API's report endpoint serves for this edition."""
    try:
        return canonical_json(report_to_dict(store.get_report(edition_id)))
    except NoData:
        return canonical_json(empty_report_dict())


def cmd_report(args) -> int:
    store = Store(args.store)
    edition_id = f"{args.conference}-{args.year}"
    try:
        body = report_json_body(store, edition_id)
    except NotFound:
        print(f"divmeter report: edition {edition_id} not found", file=sys.stderr)
        return EXIT_NOT_FOUND
    if args.json:
        print(body)
        return EXIT_OK
    import json as _json

    report = _json.loads(body)
    print(f"edition: {edition_id}")
    for key in ("gdi", "bdi", "geodi", "cdi"):
        value = report[key]
        print(f"  {key.upper():<6} {'n/a' if value is None else f'{value:.6f}'}")
    for facet, roles in sorted(report["missing_roles"].items()):
        if roles:
            print(f"  missing {facet}: {', '.join(roles)}")
    return EXIT_OK


def cmd_serve(args) -> int:
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"divmeter serve: bad --listen value {args.listen!r}", file=sys.stderr)
        return EXIT_USAGE
    port = int(port_text)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        print(f"divmeter serve: cannot bind {args.listen}: {exc}", file=sys.stderr)
        return EXIT_BIND_FAILURE
    finally:
        probe.close()

    import os

    import uvicorn

    from .api import ApiConfig, NullProvider, create_app

    registry = load_registry_file(args.registry) if args.registry else []
    provider = LexiconProvider.from_file(args.lexicon) if args.lexicon else NullProvider()
    store = Store(args.store)
    config = ApiConfig(
        token=os.environ.get("DIVMETER_TOKEN"), registry=registry, provider=provider
    )
    uvicorn.run(create_app(store, config), host=host, port=port, log_level="warning")
    return EXIT_OK


def cmd_export(args) -> int:
    store = Store(args.store)
    try:
        store.export_public(args.out)
    except LeakDetected as exc:
        print(f"divmeter export: aborted: {exc} ({exc.field_path})", file=sys.stderr)
        return EXIT_LEAK
    except VaultLocked as exc:
        print(f"divmeter export: {exc}", file=sys.stderr)
        return EXIT_VAULT_LOCKED
    print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "ingest": cmd_ingest,
        "report": cmd_report,
        "serve": cmd_serve,
        "export": cmd_export,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
