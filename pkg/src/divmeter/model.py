"""Canonical entities: labels with provenance, participations, editions."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .countries import is_valid_alpha2
from .indices import (
    BUSINESS_CATEGORIES,
    Facet,
    FacetDistribution,
    GENDER_CATEGORIES,
    Role,
    RoleFacetMatrix,
)

UNKNOWN = "unknown"

SOURCE_SELF_DECLARED = "self-declared"
SOURCE_MANUAL = "manual"
SOURCE_INFERRED = "inferred"
SOURCE_UNKNOWN = "unknown"
_SOURCES = {SOURCE_SELF_DECLARED, SOURCE_MANUAL, SOURCE_INFERRED, SOURCE_UNKNOWN}

# Accepted self-declaration vocabulary; free text goes through "other:<text>".
SELF_DECLARATION_TERMS = {"woman", "man", "non-binary", "prefer-not-to-say"}


class EmptyEdition(Exception):
    pass


class UnknownVocabularyTerm(Exception):
    pass


class SelfDeclarationOverwrite(Exception):
    """A self-declared gender label may never be replaced by an inferred one."""


@dataclass(frozen=True)
class Label:
    """A categorical label with provenance and confidence."""

    value: str
    source: str = SOURCE_UNKNOWN
    confidence: float = 0.0

    def __post_init__(self) -> None:
        if self.source not in _SOURCES:
            raise ValueError(f"unknown label source {self.source!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")
        if self.source == SOURCE_UNKNOWN and self.value != UNKNOWN:
            raise ValueError("source=unknown requires value=unknown")
        if self.source == SOURCE_SELF_DECLARED and self.confidence != 1.0:
            raise ValueError("self-declared labels carry confidence 1")

    @property
    def known(self) -> bool:
        return self.value != UNKNOWN


def unknown_label() -> Label:
    return Label(UNKNOWN, SOURCE_UNKNOWN, 0.0)


def gender_label(value: str, source: str, confidence: float = 1.0) -> Label:
    if value not in GENDER_CATEGORIES and value != UNKNOWN:
        raise ValueError(f"invalid gender category {value!r}")
    return Label(value, source, confidence)


def business_label(value: str, source: str, confidence: float = 1.0) -> Label:
    if value not in BUSINESS_CATEGORIES and value != UNKNOWN:
        raise ValueError(f"invalid business category {value!r}")
    return Label(value, source, confidence)


def country_label(value: str, source: str, confidence: float = 1.0) -> Label:
    if value != UNKNOWN:
        value = value.upper()
        if not is_valid_alpha2(value):
            raise ValueError(f"invalid ISO 3166-1 alpha-2 code {value!r}")
    return Label(value, source, confidence)


@dataclass(frozen=True)
class Participation:
    """One person-in-role record for one edition.

    ``person_id`` is pseudonymous (keyed HMAC of the normalized name,
    computed by the vault); no name material lives here. Indexed business
    and country labels always derive from the first affiliation.
    """

    person_id: str
    edition_id: str
    role: Role
    gender: Label = field(default_factory=unknown_label)
    business: Label = field(default_factory=unknown_label)
    country: Label = field(default_factory=unknown_label)
    affiliation_raw: str = ""
    position: int = 1

    def __post_init__(self) -> None:
        if self.position < 1:
            raise ValueError("affiliation position starts at 1")

    def with_gender(self, label: Label) -> "Participation":
        """Replace the gender label, refusing to downgrade a self-declaration."""
        if self.gender.source == SOURCE_SELF_DECLARED and label.source != SOURCE_SELF_DECLARED:
            raise SelfDeclarationOverwrite(
                f"participation {self.person_id}: self-declared gender is final"
            )
        return replace(self, gender=label)


@dataclass
class Edition:
    conference_slug: str
    year: int
    venue_country: str = UNKNOWN  # alpha-2, "virtual", or unknown
    participations: list[Participation] = field(default_factory=list)

    @property
    def edition_id(self) -> str:
        return f"{self.conference_slug}-{self.year}"


def apply_self_declaration(
    participation: Participation, declared: str | None
) -> Participation:
    """Apply a self-declared gender; values outside the indexed S=2 space map
    to unknown (the verbatim declaration is kept in the vault, not here)."""
    if declared is None:
        return participation
    term = declared.strip()
    base = term.casefold()
    if base not in SELF_DECLARATION_TERMS and not base.startswith("other:"):
        raise UnknownVocabularyTerm(f"unrecognized self-declaration {declared!r}")
    if base in ("woman", "man"):
        label = Label(base, SOURCE_SELF_DECLARED, 1.0)
    else:
        # Self-declared but outside the published index space.
        label = Label(UNKNOWN, SOURCE_SELF_DECLARED, 1.0)
    return replace(participation, gender=label)


def _facet_value(p: Participation, facet: Facet) -> str:
    if facet is Facet.GENDER:
        return p.gender.value
    if facet is Facet.BUSINESS:
        return p.business.value
    return p.country.value


def build_matrix(edition: Edition) -> RoleFacetMatrix:
    """Tally known labels into per-(role, facet) distributions.

    A person appearing several times in the same role (e.g. an author on two
    papers) counts once; entries with zero known labels are absent.
    """
    if not edition.participations:
        raise EmptyEdition(f"edition {edition.edition_id} has no participations")

    deduped: dict[tuple[str, Role], Participation] = {}
    for p in edition.participations:
        deduped.setdefault((p.person_id, p.role), p)

    role_totals: dict[Role, int] = {}
    tallies: dict[tuple[Role, Facet], dict[str, int]] = {}
    for p in deduped.values():
        role_totals[p.role] = role_totals.get(p.role, 0) + 1
        for facet in Facet:
            value = _facet_value(p, facet)
            if value == UNKNOWN:
                continue
            counts = tallies.setdefault((p.role, facet), {})
            counts[value] = counts.get(value, 0) + 1

    entries: dict[tuple[Role, Facet], FacetDistribution] = {}
    for (role, facet), counts in tallies.items():
        if facet is Facet.GENDER:
            dist = FacetDistribution.gender(
                {c: counts.get(c, 0) for c in sorted(GENDER_CATEGORIES)}
            )
        elif facet is Facet.BUSINESS:
            dist = FacetDistribution.business(
                {c: counts.get(c, 0) for c in sorted(BUSINESS_CATEGORIES)}
            )
        else:
            dist = FacetDistribution.geography(dict(sorted(counts.items())))
        entries[(role, facet)] = dist

    return RoleFacetMatrix(entries=entries, role_totals=role_totals)
