"""HTTP JSON API over a store: search, dashboards, comparison, contributions."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response

from .indices import NoData, RoleFacetMatrix, boxplot_stats, diversity_report
from .model import EmptyEdition, build_matrix
from .serialize import (
    canonical_json,
    distributions_to_dict,
    empty_report_dict,
    report_to_dict,
)
from .store import NotFound, Store
from .ingest import (
    ConflictingManualLabels,
    HeaderMismatch,
    assemble_edition,
    load_affiliation_map,
    parse_annotations,
)
from .ingest.registry import InstitutionRegistryEntry

TOKEN_ENV = "DIVMETER_TOKEN"
TOKEN_HEADER = "x-divmeter-token"


class NullProvider:
    """Provider of last resort: always abstains."""

    name = "null"

    def lookup(self, given_name, full_name, country_hint=None):
        return None


@dataclass
class ApiConfig:
    token: str | None = None
    registry: list[InstitutionRegistryEntry] = field(default_factory=list)
    provider: object = field(default_factory=NullProvider)
    confidence_threshold: float = 0.8


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, code: str, message: str, details=None) -> Response:
    body = {"error": code, "message": message}
    if details is not None:
        body["details"] = details
    return _json(body, status_code)


def _split_edition_id(edition_id: str) -> tuple[str, int]:
    slug, _, year = edition_id.rpartition("-")
    return slug, int(year)


def _cdi_of(store: Store, edition_id: str) -> float | None:
    try:
        return store.get_report(edition_id).cdi
    except (NoData, EmptyEdition, NotFound):
        return None


def timeline_payload(store: Store, slug: str) -> list[dict]:
    years = sorted(
        year
        for eid in store.list_editions()
        for s, year in [_split_edition_id(eid)]
        if s == slug
    )
    return [{"year": year, "cdi": _cdi_of(store, f"{slug}-{year}")} for year in years]


def context_payload(store: Store, edition_id: str) -> dict | None:
    """Boxplot over every latest-revision CDI; None when nothing is defined."""
    cdis = [
        cdi for eid in store.list_editions() if (cdi := _cdi_of(store, eid)) is not None
    ]
    if not cdis:
        return None
    return {"boxplot": boxplot_stats(cdis), "this": _cdi_of(store, edition_id)}


def conferences_payload(store: Store, query: str) -> list[dict]:
    by_slug: dict[str, list[int]] = {}
    for eid in store.list_editions():
        slug, year = _split_edition_id(eid)
        by_slug.setdefault(slug, []).append(year)
    needle = query.casefold()
    out = []
    for slug in sorted(by_slug):
        name = slug.upper()
        if needle and needle not in slug.casefold() and needle not in name.casefold():
            continue
        out.append({"slug": slug, "name": name, "editions": sorted(by_slug[slug])})
    return out


def create_app(store: Store, config: ApiConfig | None = None) -> FastAPI:
    config = config or ApiConfig(token=os.environ.get(TOKEN_ENV))
    app = FastAPI(title="divmeter", docs_url=None, redoc_url=None)

    @app.get("/api/conferences")
    def conferences(q: str = ""):
        return _json(conferences_payload(store, q))

    @app.get("/api/editions/{slug}/{year}/report")
    def report(slug: str, year: int):
        try:
            value = store.get_report(f"{slug}-{year}")
        except NotFound:
            return _error(404, "not-found", f"edition {slug}/{year} not found")
        except (NoData, EmptyEdition):
            # edition exists but carries no known labels: everything undefined
            return _json(empty_report_dict())
        return _json(report_to_dict(value))

    @app.get("/api/editions/{slug}/{year}/distributions")
    def distributions(slug: str, year: int):
        try:
            edition = store.get_edition(f"{slug}-{year}")
        except NotFound:
            return _error(404, "not-found", f"edition {slug}/{year} not found")
        try:
            matrix = build_matrix(edition)
        except EmptyEdition:
            matrix = RoleFacetMatrix()
        return _json(distributions_to_dict(matrix))

    @app.get("/api/conferences/{slug}/timeline")
    def timeline(slug: str):
        return _json(timeline_payload(store, slug))

    @app.get("/api/editions/{slug}/{year}/context")
    def context(slug: str, year: int):
        edition_id = f"{slug}-{year}"
        try:
            store.get_edition(edition_id)
        except NotFound:
            return _error(404, "not-found", f"edition {slug}/{year} not found")
        payload = context_payload(store, edition_id)
        if payload is None:
            return _error(409, "no-comparable-data", "no edition has a defined index")
        return _json(payload)

    @app.post("/api/contributions")
    async def contribute(request: Request):
        if config.token:
            supplied = request.headers.get(TOKEN_HEADER)
            if supplied != config.token:
                return _error(401, "bad-token", "missing or invalid submission token")

        content_type = request.headers.get("content-type", "")
        annotations_csv = ""
        affiliations_csv = ""
        slug = ""
        year_raw = ""
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            slug = str(form.get("conference", ""))
            year_raw = str(form.get("year", ""))
            annotations = form.get("annotations")
            annotations_csv = (
                (await annotations.read()).decode("utf-8", "replace")
                if hasattr(annotations, "read")
                else str(annotations or "")
            )
            affiliations = form.get("affiliations")
            if affiliations is not None:
                affiliations_csv = (
                    (await affiliations.read()).decode("utf-8", "replace")
                    if hasattr(affiliations, "read")
                    else str(affiliations)
                )
        else:
            try:
                body = await request.json()
            except Exception:
                return _error(422, "bad-payload", "body must be JSON or multipart form data")
            slug = str(body.get("conference", ""))
            year_raw = str(body.get("year", ""))
            annotations_csv = body.get("annotations_csv", "")
            affiliations_csv = body.get("affiliations_csv", "")

        if not slug or not year_raw.isdigit():
            return _error(422, "bad-payload", "conference and numeric year are required")
        if not annotations_csv.strip():
            return _error(422, "bad-payload", "empty annotation payload")
        year = int(year_raw)

        try:
            parsed = parse_annotations(annotations_csv)
        except HeaderMismatch as exc:
            return _error(
                422,
                "header-mismatch",
                str(exc),
                details={"expected_header": ",".join(exc.expected)},
            )
        affiliations = {}
        if affiliations_csv.strip():
            try:
                affiliations = load_affiliation_map(affiliations_csv)
            except Exception as exc:
                return _error(422, "bad-payload", f"bad affiliation CSV: {exc}")

        try:
            result = assemble_edition(
                [],
                parsed.drafts,
                config.registry,
                config.provider,
                slug,
                year,
                pseudonymize=store.pseudonymize,
                affiliations=affiliations,
                threshold=config.confidence_threshold,
                skipped_rows=parsed.errors,
            )
        except ConflictingManualLabels as exc:
            return _error(409, "conflicting-manual-labels", str(exc))

        edition_id = store.put_edition(result.edition, result.vault_entries)
        return _json(
            {
                "edition_id": edition_id,
                "ingest_report": {
                    "coverage": result.report.coverage,
                    "participations_per_role": result.report.participations_per_role,
                    "provider_failures": result.report.provider_failures,
                    "skipped_rows": result.report.skipped_rows,
                    "warnings": result.report.warnings,
                },
            }
        )

    return app
