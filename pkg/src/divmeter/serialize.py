"""Canonical JSON shapes shared by the CLI and the HTTP API.

One serializer for every surface keeps `report --json` and the API
byte-identical; keys are always sorted and undefined indices are null,
never 0.
"""

from __future__ import annotations

import json

from .indices import DiversityReport, Facet, Role, RoleFacetMatrix
from .model import Edition, Label, Participation, unknown_label


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def empty_report_dict() -> dict:
    """Report body for an edition with no known labels: all indices undefined."""
    all_roles = sorted(role.value for role in Role)
    return {
        "gdi": None,
        "bdi": None,
        "geodi": None,
        "cdi": None,
        "per_role": {},
        "coverage": {},
        "missing_roles": {facet.value: all_roles for facet in Facet},
    }


def report_to_dict(report: DiversityReport) -> dict:
    per_role: dict[str, dict[str, float]] = {}
    for (role, facet), value in report.per_role.items():
        per_role.setdefault(role.value, {})[facet.value] = value.value
    coverage: dict[str, dict[str, float]] = {}
    for (role, facet), fraction in report.coverage.items():
        coverage.setdefault(role.value, {})[facet.value] = fraction
    missing = {
        facet.value: sorted(role.value for role in roles)
        for facet, roles in report.missing_roles.items()
    }
    return {
        "gdi": report.gdi.value if report.gdi else None,
        "bdi": report.bdi.value if report.bdi else None,
        "geodi": report.geodi.value if report.geodi else None,
        "cdi": report.cdi,
        "per_role": per_role,
        "coverage": coverage,
        "missing_roles": missing,
    }


def distributions_to_dict(matrix: RoleFacetMatrix) -> dict:
    """Histogram and map payload: per role, known-label percentages for
    gender and business plus raw country counts."""
    payload: dict[str, dict] = {}
    for role in Role:
        role_payload: dict[str, dict] = {}
        for facet, key in ((Facet.GENDER, "gender"), (Facet.BUSINESS, "business")):
            dist = matrix.get(role, facet)
            if dist is None or dist.total == 0:
                continue
            role_payload[key] = {
                category: 100.0 * count / dist.total
                for category, count in dist.counts.items()
                if count > 0
            }
        geo = matrix.get(role, Facet.GEOGRAPHY)
        if geo is not None and geo.total > 0:
            role_payload["countries"] = {
                code: count for code, count in geo.counts.items() if count > 0
            }
        if role_payload:
            payload[role.value] = role_payload
    return payload


def label_to_dict(label: Label) -> dict:
    return {
        "value": label.value,
        "source": label.source,
        "confidence": label.confidence,
    }


def label_from_dict(data: dict) -> Label:
    return Label(data["value"], data["source"], data["confidence"])


def participation_to_dict(p: Participation) -> dict:
    return {
        "person_id": p.person_id,
        "edition_id": p.edition_id,
        "role": p.role.value,
        "gender": label_to_dict(p.gender),
        "business": label_to_dict(p.business),
        "country": label_to_dict(p.country),
        "affiliation_raw": p.affiliation_raw,
        "position": p.position,
    }


def participation_from_dict(data: dict) -> Participation:
    return Participation(
        person_id=data["person_id"],
        edition_id=data["edition_id"],
        role=Role(data["role"]),
        gender=label_from_dict(data["gender"]),
        business=label_from_dict(data["business"]),
        country=label_from_dict(data["country"]),
        affiliation_raw=data.get("affiliation_raw", ""),
        position=data.get("position", 1),
    )


def edition_to_dict(edition: Edition) -> dict:
    return {
        "conference_slug": edition.conference_slug,
        "year": edition.year,
        "venue_country": edition.venue_country,
        "participations": [participation_to_dict(p) for p in edition.participations],
    }


def edition_from_dict(data: dict) -> Edition:
    return Edition(
        conference_slug=data["conference_slug"],
        year=data["year"],
        venue_country=data.get("venue_country", unknown_label().value),
        participations=[participation_from_dict(p) for p in data["participations"]],
    )
