"""Gender inference providers and the abstain-below-threshold rule."""

from __future__ import annotations

import csv
import io
import os
from typing import Protocol

import requests

from ..indices import GENDER_CATEGORIES
from ..model import Label, SOURCE_INFERRED, unknown_label
from .errors import IngestError

DEFAULT_CONFIDENCE_THRESHOLD = 0.8
PROVIDER_KEY_ENV = "DIVMETER_PROVIDER_KEY"


class ProviderUnavailable(IngestError):
    pass


class GenderProvider(Protocol):
    name: str

    def lookup(
        self, given_name: str, full_name: str, country_hint: str | None
    ) -> tuple[str, float] | None:
        """Return (category, confidence) or None when the name is unknown."""
        ...


class LexiconProvider:
    """Deterministic local provider backed by a `given_name,category,confidence` CSV."""

    name = "lexicon"

    def __init__(self, table: dict[str, tuple[str, float]]):
        self._table = table

    @classmethod
    def from_csv(cls, source) -> "LexiconProvider":
        if hasattr(source, "read"):
            data = source.read()
        else:
            data = source
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        reader = csv.reader(io.StringIO(data))
        header = next(reader, None)
        if header is None or [h.strip().casefold() for h in header[:3]] != [
            "given_name",
            "category",
            "confidence",
        ]:
            raise ProviderUnavailable("lexicon header must be 'given_name,category,confidence'")
        table: dict[str, tuple[str, float]] = {}
        for num, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 3:
                raise ProviderUnavailable(f"lexicon row {num}: expected 3 columns")
            given, category, confidence = (c.strip() for c in row[:3])
            if category not in GENDER_CATEGORIES:
                raise ProviderUnavailable(f"lexicon row {num}: invalid category {category!r}")
            try:
                conf = float(confidence)
            except ValueError:
                raise ProviderUnavailable(f"lexicon row {num}: bad confidence {confidence!r}")
            if not 0.0 <= conf <= 1.0:
                raise ProviderUnavailable(f"lexicon row {num}: confidence out of range")
            table[given.casefold()] = (category, conf)
        return cls(table)

    @classmethod
    def from_file(cls, path) -> "LexiconProvider":
        with io.open(path, "rb") as handle:
            return cls.from_csv(handle)

    def lookup(self, given_name, full_name, country_hint=None):
        return self._table.get(given_name.casefold())


class HttpGenderProvider:
    """Client for an external name-to-gender HTTP API.

    GET <base_url>?name=<full name>[&country=<hint>], JSON response
    {"category": "...", "confidence": 0.0-1.0}. API key, when required,
    comes from the DIVMETER_PROVIDER_KEY environment variable.
    """

    name = "http"

    def __init__(self, base_url: str, timeout: float = 5.0, session=None):
        self.base_url = base_url
        self.timeout = timeout
        self._session = session or requests.Session()

    def lookup(self, given_name, full_name, country_hint=None):
        params = {"name": full_name}
        if country_hint:
            params["country"] = country_hint
        headers = {}
        api_key = os.environ.get(PROVIDER_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        try:
            response = self._session.get(
                self.base_url, params=params, headers=headers, timeout=self.timeout
            )
            response.raise_for_status()
            payload = response.json()
            category = payload["category"]
            confidence = float(payload["confidence"])
        except Exception as exc:
            raise ProviderUnavailable(f"gender provider request failed: {exc}") from exc
        if category not in GENDER_CATEGORIES or not 0.0 <= confidence <= 1.0:
            raise ProviderUnavailable(f"gender provider returned invalid payload: {payload!r}")
        return category, confidence


def given_name_of(full_name: str) -> str:
    parts = full_name.strip().split()
    return parts[0] if parts else ""


def infer_gender(
    name: str,
    provider: GenderProvider,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
    country_hint: str | None = None,
) -> tuple[Label, str | None]:
    """Infer a gender label for a name, abstaining below the threshold.

    Provider outages are never fatal: the label falls back to unknown and a
    warning string is returned for the ingest report.
    """
    try:
        result = provider.lookup(given_name_of(name), name, country_hint)
    except ProviderUnavailable as exc:
        return unknown_label(), f"gender provider {provider.name!r} unavailable: {exc}"
    if result is None:
        return unknown_label(), None
    category, confidence = result
    if confidence >= threshold:
        return Label(category, SOURCE_INFERRED, confidence), None
    return unknown_label(), None
