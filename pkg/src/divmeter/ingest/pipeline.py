"""Merge parsed records and annotation drafts into one Edition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from ..indices import Facet, Role
from ..model import (
    Edition,
    Label,
    Participation,
    SOURCE_INFERRED,
    UNKNOWN,
    build_matrix,
    unknown_label,
)
from ..store import VaultEntry
from .annotations import AnnotationRowError, ParticipationDraft
from .dblp import RawPaperRecord
from .errors import IngestError
from .gender import DEFAULT_CONFIDENCE_THRESHOLD, GenderProvider, infer_gender
from .registry import InstitutionRegistryEntry, MATCH_NONE, resolve_affiliation


class ConflictingManualLabels(IngestError):
    pass


@dataclass
class IngestReport:
    edition_id: str
    participations_per_role: dict[str, int] = field(default_factory=dict)
    coverage: dict[str, dict[str, float]] = field(default_factory=dict)
    skipped_rows: list[dict] = field(default_factory=list)
    provider_failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


@dataclass
class AssembleResult:
    edition: Edition
    report: IngestReport
    vault_entries: list[VaultEntry]


@dataclass
class _PersonDraft:
    name: str
    role: Role
    affiliation: str = ""
    affiliation2: str = ""
    gender: Label = field(default_factory=unknown_label)
    business: Label = field(default_factory=unknown_label)
    country: Label = field(default_factory=unknown_label)


def _check_manual_conflicts(drafts: Iterable[ParticipationDraft]) -> None:
    seen: dict[tuple[str, str], tuple[str, int]] = {}
    for num, draft in enumerate(drafts, start=1):
        for facet, label in (
            ("gender", draft.gender),
            ("business", draft.business),
            ("country", draft.country),
        ):
            if not label.known:
                continue
            key = (draft.name.casefold(), facet)
            prior = seen.get(key)
            if prior is not None and prior[0] != label.value:
                raise ConflictingManualLabels(
                    f"{draft.name}: manual {facet} labels disagree "
                    f"({prior[0]!r} in draft {prior[1]} vs {label.value!r} in draft {num})"
                )
            seen.setdefault(key, (label.value, num))


def assemble_edition(
    records: Iterable[RawPaperRecord],
    drafts: Iterable[ParticipationDraft],
    registry: list[InstitutionRegistryEntry],
    provider: GenderProvider,
    conference_slug: str,
    year: int,
    *,
    pseudonymize: Callable[[str], str],
    affiliations: Mapping[str, str] | None = None,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
    skipped_rows: Iterable[AnnotationRowError] = (),
) -> AssembleResult:
    """Run the per-person enrichment pipeline and build the edition.

    Manual labels from drafts always win over anything inferred; inferred
    business/country come from the first affiliation via the registry, and
    inferred gender from the provider with abstention below the threshold.
    """
    drafts = list(drafts)
    records = list(records)
    affiliations = dict(affiliations or {})
    report = IngestReport(edition_id=f"{conference_slug}-{year}")
    report.skipped_rows = [{"row": e.row, "reason": e.reason} for e in skipped_rows]

    relevant = []
    for draft in drafts:
        if draft.conference != conference_slug or draft.year != year:
            report.warnings.append(
                f"ignored draft for {draft.conference}-{draft.year} ({draft.name})"
            )
            continue
        relevant.append(draft)
    _check_manual_conflicts(relevant)

    people: dict[tuple[str, Role], _PersonDraft] = {}
    for draft in relevant:
        key = (draft.name, draft.role)
        person = people.setdefault(key, _PersonDraft(name=draft.name, role=draft.role))
        person.affiliation = person.affiliation or draft.affiliation
        person.affiliation2 = person.affiliation2 or draft.affiliation2
        for facet in ("gender", "business", "country"):
            if not getattr(person, facet).known:
                setattr(person, facet, getattr(draft, facet))
    for record in records:
        for author in record.authors:
            key = (author.name, Role.AUTHOR)
            person = people.setdefault(key, _PersonDraft(name=author.name, role=Role.AUTHOR))
            if not person.affiliation:
                person.affiliation = affiliations.get(author.name, "")

    inferred_gender_cache: dict[str, Label] = {}
    provider_raw: dict[str, dict] = {}
    participations: list[Participation] = []
    vault_sources: dict[str, dict[str, str]] = {}
    edition_id = f"{conference_slug}-{year}"

    for (name, role), person in people.items():
        business, country = person.business, person.country
        if (not business.known or not country.known) and person.affiliation:
            inferred_type, inferred_country, match_kind = resolve_affiliation(
                person.affiliation, registry
            )
            if match_kind != MATCH_NONE:
                if not business.known and inferred_type != UNKNOWN:
                    business = Label(inferred_type, SOURCE_INFERRED, 1.0)
                if not country.known and inferred_country != UNKNOWN:
                    country = Label(inferred_country, SOURCE_INFERRED, 1.0)

        gender = person.gender
        if not gender.known and gender.source != "self-declared":
            if name not in inferred_gender_cache:
                hint = country.value if country.known else None
                label, warning = infer_gender(name, provider, threshold, country_hint=hint)
                inferred_gender_cache[name] = label
                if warning:
                    report.provider_failures.append(warning)
                if label.source == SOURCE_INFERRED:
                    provider_raw[name] = {
                        "provider": provider.name,
                        "category": label.value,
                        "confidence": label.confidence,
                    }
            gender = inferred_gender_cache[name]

        raw_affiliation = person.affiliation
        if person.affiliation2:
            raw_affiliation = f"{person.affiliation}; {person.affiliation2}"
        participations.append(
            Participation(
                person_id=pseudonymize(name),
                edition_id=edition_id,
                role=role,
                gender=gender,
                business=business,
                country=country,
                affiliation_raw=raw_affiliation,
                position=1,
            )
        )
        sources = vault_sources.setdefault(name, {})
        sources["gender"] = gender.source
        sources["business"] = business.source
        sources["country"] = country.source

    edition = Edition(
        conference_slug=conference_slug,
        year=year,
        participations=participations,
    )

    vault_entries = [
        VaultEntry(
            person_id=pseudonymize(name),
            full_name=name,
            self_declaration=None,
            label_sources=sources,
            provider_response=provider_raw.get(name),
        )
        for name, sources in vault_sources.items()
    ]

    if participations:
        matrix = build_matrix(edition)
        for role, total in matrix.role_totals.items():
            report.participations_per_role[role.value] = total
            if total == 0:
                continue
            facet_cov = {}
            for facet in Facet:
                dist = matrix.get(role, facet)
                facet_cov[facet.value] = (dist.total / total) if dist else 0.0
            report.coverage[role.value] = facet_cov

    return AssembleResult(edition=edition, report=report, vault_entries=vault_entries)
