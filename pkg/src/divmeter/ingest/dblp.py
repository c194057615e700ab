"""Parser for the DBLP XML export dialect (inproceedings records)."""

from __future__ import annotations

import html.entities
import io
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import IngestError


class MalformedXml(IngestError):
    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        super().__init__(message)
        self.line = line
        self.offset = offset

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"{base} (line {self.line}, column {self.offset})"
        return base


# "John Smith 0002" -> bare name "John Smith", disambiguation tag "0002"
_HOMONYM_SUFFIX = re.compile(r"^(?P<name>.*\S)\s+(?P<tag>\d{4})$")


@dataclass(frozen=True)
class AuthorRef:
    name: str
    disambiguation: str | None = None


@dataclass(frozen=True)
class RawPaperRecord:
    title: str
    authors: tuple[AuthorRef, ...]
    venue_key: str
    year: int


@dataclass
class DblpParseResult:
    records: list[RawPaperRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _split_homonym(raw: str) -> AuthorRef:
    match = _HOMONYM_SUFFIX.match(raw.strip())
    if match:
        return AuthorRef(name=match.group("name"), disambiguation=match.group("tag"))
    return AuthorRef(name=raw.strip())


def _to_text(source) -> str:
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedXml(f"input is not valid UTF-8: {exc}") from None
    return data


_XML_BUILTIN_ENTITIES = {"amp", "lt", "gt", "quot", "apos"}
_NAMED_ENTITY = re.compile(r"&([A-Za-z][A-Za-z0-9]*);")


def _numeric_entities(text: str) -> str:
    # DBLP exports lean on a DTD for named entities (&uuml; etc.); rewrite
    # the known HTML ones to numeric references so expat accepts them.
    def repl(match: re.Match) -> str:
        name = match.group(1)
        if name in _XML_BUILTIN_ENTITIES:
            return match.group(0)
        codepoint = html.entities.name2codepoint.get(name)
        return f"&#{codepoint};" if codepoint is not None else match.group(0)

    return _NAMED_ENTITY.sub(repl, text)


def _parse_root(text: str) -> ET.Element:
    try:
        return ET.fromstring(_numeric_entities(text))
    except ET.ParseError as exc:
        line, offset = exc.position if exc.position else (None, None)
        raise MalformedXml(str(exc), line=line, offset=offset) from None


def parse_dblp(xml_stream) -> DblpParseResult:
    """Parse a DBLP export into paper records.

    One record per ``inproceedings`` element, author order preserved.
    Records missing a required field (title, year, booktitle, authors) are
    skipped with a warning; malformed XML is fatal.
    """
    text = _to_text(xml_stream)
    root = _parse_root(text)
    result = DblpParseResult()
    for elem in root.iter("inproceedings"):
        key = elem.get("key", "<no key>")
        title = (elem.findtext("title") or "").strip()
        year_text = (elem.findtext("year") or "").strip()
        venue = (elem.findtext("booktitle") or "").strip()
        authors = tuple(
            _split_homonym(a.text)
            for a in elem.findall("author")
            if a.text and a.text.strip()
        )
        missing = [
            label
            for label, present in (
                ("title", bool(title)),
                ("year", bool(re.fullmatch(r"\d{4}", year_text))),
                ("booktitle", bool(venue)),
                ("author", bool(authors)),
            )
            if not present
        ]
        if missing:
            result.warnings.append(
                f"skipped record {key}: missing or invalid {', '.join(missing)}"
            )
            continue
        result.records.append(
            RawPaperRecord(
                title=title,
                authors=authors,
                venue_key=venue,
                year=int(year_text),
            )
        )
    return result


def parse_dblp_file(path) -> DblpParseResult:
    with io.open(path, "rb") as handle:
        return parse_dblp(handle)
