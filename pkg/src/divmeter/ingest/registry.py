"""Institution registry loading and affiliation-string resolution."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from ..countries import country_code_for_name
from ..indices import BUSINESS_CATEGORIES
from ..model import UNKNOWN
from .errors import IngestError

REGISTRY_HEADER = ["canonical", "aliases", "type", "country"]

MATCH_EXACT = "exact"
MATCH_SUBSTRING = "substring"
MATCH_COUNTRY_SUFFIX = "country-suffix"
MATCH_NONE = "none"


class BadRegistry(IngestError):
    pass


@dataclass(frozen=True)
class InstitutionRegistryEntry:
    canonical: str
    aliases: tuple[str, ...]
    type: str  # a business category, never unknown
    country: str  # alpha-2

    def names(self) -> tuple[str, ...]:
        return (self.canonical, *self.aliases)


def _normalize(text: str) -> str:
    # case-fold, strip punctuation, collapse whitespace
    lowered = text.casefold()
    stripped = re.sub(r"[^\w\s]", " ", lowered)
    return re.sub(r"\s+", " ", stripped).strip()


def load_registry(source) -> list[InstitutionRegistryEntry]:
    """Load a `canonical,aliases|pipe-separated,type,country` CSV."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    header = next(reader, None)
    if header is None or [h.strip().casefold() for h in header] != REGISTRY_HEADER:
        raise BadRegistry(f"expected header {','.join(REGISTRY_HEADER)!r}")
    entries: list[InstitutionRegistryEntry] = []
    seen: set[str] = set()
    for num, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 4:
            raise BadRegistry(f"row {num}: expected 4 columns")
        canonical, aliases, type_, country = (c.strip() for c in row[:4])
        key = canonical.casefold()
        if key in seen:
            raise BadRegistry(f"row {num}: duplicate canonical name {canonical!r}")
        if type_ not in BUSINESS_CATEGORIES:
            raise BadRegistry(f"row {num}: invalid institution type {type_!r}")
        seen.add(key)
        entries.append(
            InstitutionRegistryEntry(
                canonical=canonical,
                aliases=tuple(a.strip() for a in aliases.split("|") if a.strip()),
                type=type_,
                country=country.upper(),
            )
        )
    return entries


def load_registry_file(path) -> list[InstitutionRegistryEntry]:
    with io.open(path, "rb") as handle:
        return load_registry(handle)


def load_affiliation_map(source) -> dict[str, str]:
    """Load a supplementary `name,affiliation` CSV (DBLP carries none)."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    header = next(reader, None)
    if header is None or [h.strip().casefold() for h in header[:2]] != ["name", "affiliation"]:
        raise BadRegistry("expected header 'name,affiliation'")
    mapping: dict[str, str] = {}
    for row in reader:
        if len(row) >= 2 and row[0].strip():
            mapping[row[0].strip()] = row[1].strip()
    return mapping


def load_affiliation_map_file(path) -> dict[str, str]:
    with io.open(path, "rb") as handle:
        return load_affiliation_map(handle)


def resolve_affiliation(
    raw: str, registry: list[InstitutionRegistryEntry]
) -> tuple[str, str, str]:
    """Resolve an affiliation string to (business type, country code, match kind).

    Stages: exact canonical/alias match, longest-alias substring match,
    trailing-country-name extraction (country only), then unknown. Only the
    first ";"-separated segment is considered (first-affiliation rule applies
    upstream; this guards against joined strings).
    """
    segment = raw.split(";")[0].strip()
    if not segment:
        return UNKNOWN, UNKNOWN, MATCH_NONE
    normalized = _normalize(segment)

    exact: dict[str, InstitutionRegistryEntry] = {}
    for entry in registry:
        for name in entry.names():
            exact.setdefault(_normalize(name), entry)

    entry = exact.get(normalized)
    if entry is not None:
        return entry.type, entry.country, MATCH_EXACT

    best: InstitutionRegistryEntry | None = None
    best_len = 0
    padded = f" {normalized} "
    for candidate in registry:
        for name in candidate.names():
            norm_name = _normalize(name)
            if len(norm_name) > best_len and f" {norm_name} " in padded:
                best = candidate
                best_len = len(norm_name)
    if best is not None:
        return best.type, best.country, MATCH_SUBSTRING

    tail = segment.split(",")[-1].strip()
    code = country_code_for_name(tail) if tail else None
    if code is not None:
        return UNKNOWN, code, MATCH_COUNTRY_SUFFIX

    return UNKNOWN, UNKNOWN, MATCH_NONE
