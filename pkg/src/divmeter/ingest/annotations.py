"""Parser for hand-annotated participation CSVs.

Header contract: ``conference,year,role,name,affiliation,affiliation2,
gender,business,country`` (trailing extra columns tolerated). Bad rows are
skipped and reported; only a wrong header or undecodable input is fatal.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

from ..countries import is_valid_alpha2
from ..indices import BUSINESS_CATEGORIES, GENDER_CATEGORIES, Role
from ..model import Label, SOURCE_MANUAL, unknown_label
from .errors import IngestError

EXPECTED_HEADER = [
    "conference",
    "year",
    "role",
    "name",
    "affiliation",
    "affiliation2",
    "gender",
    "business",
    "country",
]

_ROLES = {r.value: r for r in Role}


class HeaderMismatch(IngestError):
    def __init__(self, got: list[str]):
        super().__init__(
            f"expected header {','.join(EXPECTED_HEADER)!r}, got {','.join(got)!r}"
        )
        self.expected = list(EXPECTED_HEADER)
        self.got = got


@dataclass(frozen=True)
class AnnotationRowError:
    row: int
    reason: str


@dataclass(frozen=True)
class ParticipationDraft:
    conference: str
    year: int
    role: Role
    name: str
    affiliation: str
    affiliation2: str
    gender: Label
    business: Label
    country: Label


@dataclass
class AnnotationParseResult:
    drafts: list[ParticipationDraft] = field(default_factory=list)
    errors: list[AnnotationRowError] = field(default_factory=list)


def _to_text(source) -> str:
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HeaderMismatch([f"<undecodable input: {exc}>"]) from None
    return data


def _manual(value: str) -> Label:
    return Label(value, SOURCE_MANUAL, 1.0)


def _parse_row(num: int, row: list[str]) -> ParticipationDraft:
    if len(row) < len(EXPECTED_HEADER):
        raise ValueError(f"expected {len(EXPECTED_HEADER)} columns, got {len(row)}")
    conference, year, role, name, aff1, aff2, gender, business, country = (
        cell.strip() for cell in row[: len(EXPECTED_HEADER)]
    )
    if not re.fullmatch(r"\d{4}", year):
        raise ValueError(f"invalid year {year!r}")
    if role not in _ROLES:
        raise ValueError(f"invalid role {role!r}")
    if not name:
        raise ValueError("empty name")
    if gender and gender not in GENDER_CATEGORIES:
        raise ValueError(f"invalid gender {gender!r}")
    if business and business not in BUSINESS_CATEGORIES:
        raise ValueError(f"invalid business {business!r}")
    if country and not is_valid_alpha2(country):
        raise ValueError(f"invalid country code {country!r}")
    return ParticipationDraft(
        conference=conference.casefold(),
        year=int(year),
        role=_ROLES[role],
        name=name,
        affiliation=aff1,
        affiliation2=aff2,
        gender=_manual(gender) if gender else unknown_label(),
        business=_manual(business) if business else unknown_label(),
        country=_manual(country.upper()) if country else unknown_label(),
    )


def parse_annotations(csv_stream) -> AnnotationParseResult:
    text = _to_text(csv_stream)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise HeaderMismatch([f"<unreadable: {exc}>"]) from None
    if header is None:
        raise HeaderMismatch([])
    if [h.strip().casefold() for h in header[: len(EXPECTED_HEADER)]] != EXPECTED_HEADER:
        raise HeaderMismatch(header)

    result = AnnotationParseResult()
    row_num = 1
    while True:
        row_num += 1
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            result.errors.append(AnnotationRowError(row_num, f"unparseable row: {exc}"))
            continue
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            result.drafts.append(_parse_row(row_num, row))
        except ValueError as exc:
            result.errors.append(AnnotationRowError(row_num, str(exc)))
    return result


def parse_annotations_file(path) -> AnnotationParseResult:
    with io.open(path, "rb") as handle:
        return parse_annotations(handle)
