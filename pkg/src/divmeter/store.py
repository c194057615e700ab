"""Persistence with a strict privacy partition.

Two embedded single-file stores live side by side in the store directory:
``public.json`` (pseudonymous editions and metadata, diffable) and
``vault.enc`` (name/label associations, encrypted at rest). Names never
cross into the public file; export verifies that before writing anything.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import json
import os
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from cryptography.fernet import Fernet, InvalidToken
from filelock import FileLock, Timeout

from .indices import DiversityReport, diversity_report
from .model import Edition, build_matrix
from .serialize import canonical_json, edition_from_dict, edition_to_dict

VAULT_KEY_ENV = "DIVMETER_VAULT_KEY"

PUBLIC_MAGIC = "divmeter-public"
VAULT_MAGIC = "divmeter-vault"
FORMAT_VERSION = 1


class StoreError(Exception):
    pass


class VaultLocked(StoreError):
    pass


class NotFound(StoreError):
    pass


class ConflictRetryable(StoreError):
    pass


class LeakDetected(StoreError):
    def __init__(self, field_path: str, name: str):
        super().__init__(f"vault name would leak into public field {field_path}")
        self.field_path = field_path
        self.name = name


@dataclass
class VaultEntry:
    person_id: str
    full_name: str
    self_declaration: str | None = None
    label_sources: dict[str, str] = field(default_factory=dict)
    provider_response: dict | None = None

    def to_dict(self) -> dict:
        return {
            "person_id": self.person_id,
            "full_name": self.full_name,
            "self_declaration": self.self_declaration,
            "label_sources": self.label_sources,
            "provider_response": self.provider_response,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VaultEntry":
        return cls(
            person_id=data["person_id"],
            full_name=data["full_name"],
            self_declaration=data.get("self_declaration"),
            label_sources=data.get("label_sources", {}),
            provider_response=data.get("provider_response"),
        )


def normalize_name(name: str) -> str:
    """NFC, diacritics stripped, case-folded, whitespace collapsed.

    The same author shows up with accent and spacing variants across
    sources; normalization keeps their pseudonym stable.
    """
    composed = unicodedata.normalize("NFC", name)
    decomposed = unicodedata.normalize("NFKD", composed)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return re.sub(r"\s+", " ", stripped).strip().casefold()


def pseudonymize(name: str, key: str) -> str:
    digest = hmac.new(key.encode("utf-8"), normalize_name(name).encode("utf-8"), hashlib.sha256)
    return digest.hexdigest()[:16]


def _fernet(key: str) -> Fernet:
    derived = hashlib.sha256(key.encode("utf-8")).digest()
    return Fernet(base64.urlsafe_b64encode(derived))


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class Store:
    """Single-writer, multiple-reader store rooted at a directory."""

    def __init__(self, directory, vault_key: str | None = None, lock_timeout: float = 10.0):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.public_path = self.directory / "public.json"
        self.vault_path = self.directory / "vault.enc"
        self._lock = FileLock(str(self.directory / ".write.lock"))
        self._lock_timeout = lock_timeout
        self.vault_key = vault_key if vault_key is not None else os.environ.get(VAULT_KEY_ENV)

    # -- vault ------------------------------------------------------------

    def _require_key(self) -> str:
        if not self.vault_key:
            raise VaultLocked(f"no vault key (set {VAULT_KEY_ENV})")
        return self.vault_key

    def pseudonymize(self, name: str) -> str:
        return pseudonymize(name, self._require_key())

    def _read_vault(self) -> dict:
        if not self.vault_path.exists():
            return {"format": VAULT_MAGIC, "version": FORMAT_VERSION, "entries": {}}
        key = self._require_key()
        try:
            plaintext = _fernet(key).decrypt(self.vault_path.read_bytes())
        except InvalidToken:
            raise VaultLocked("vault key does not open the existing vault")
        data = json.loads(plaintext)
        if data.get("format") != VAULT_MAGIC:
            raise StoreError("vault file has wrong magic header")
        return data

    def _write_vault(self, data: dict) -> None:
        key = self._require_key()
        payload = _fernet(key).encrypt(canonical_json(data).encode("utf-8"))
        _atomic_write(self.vault_path, payload)

    def vault_names(self) -> list[str]:
        data = self._read_vault()
        return [entry["full_name"] for entry in data["entries"].values()]

    def vault_entry(self, person_id: str) -> VaultEntry:
        data = self._read_vault()
        try:
            return VaultEntry.from_dict(data["entries"][person_id])
        except KeyError:
            raise NotFound(f"no vault entry for {person_id}")

    # -- public store -----------------------------------------------------

    def _read_public(self) -> dict:
        if not self.public_path.exists():
            return {"format": PUBLIC_MAGIC, "version": FORMAT_VERSION, "editions": {}}
        data = json.loads(self.public_path.read_text("utf-8"))
        if data.get("format") != PUBLIC_MAGIC:
            raise StoreError("public store has wrong magic header")
        return data

    def _write_public(self, data: dict) -> None:
        _atomic_write(self.public_path, canonical_json(data).encode("utf-8"))

    # -- operations -------------------------------------------------------

    def put_edition(self, edition: Edition, vault_entries: list[VaultEntry]) -> str:
        """Persist an edition and its vault entries atomically.

        Re-putting the same (conference, year) appends a new revision;
        prior revisions stay retrievable and immutable.
        """
        self._require_key()
        try:
            with self._lock.acquire(timeout=self._lock_timeout):
                public = self._read_public()
                vault = self._read_vault()

                edition_id = edition.edition_id
                slot = public["editions"].setdefault(edition_id, {"revisions": []})
                revision = len(slot["revisions"]) + 1
                slot["revisions"].append(
                    {"revision": revision, "edition": edition_to_dict(edition)}
                )
                for entry in vault_entries:
                    vault["entries"][entry.person_id] = entry.to_dict()

                self._write_vault(vault)
                self._write_public(public)
                return edition_id
        except Timeout:
            raise ConflictRetryable("another writer holds the store lock")

    def _latest(self, public: dict, edition_id: str) -> dict:
        slot = public["editions"].get(edition_id)
        if not slot or not slot["revisions"]:
            raise NotFound(f"edition {edition_id} not found")
        return slot["revisions"][-1]

    def get_edition(self, edition_id: str, revision: int | None = None) -> Edition:
        public = self._read_public()
        if revision is None:
            data = self._latest(public, edition_id)
        else:
            slot = public["editions"].get(edition_id)
            revisions = slot["revisions"] if slot else []
            matches = [r for r in revisions if r["revision"] == revision]
            if not matches:
                raise NotFound(f"edition {edition_id} revision {revision} not found")
            data = matches[0]
        return edition_from_dict(data["edition"])

    def get_report(self, edition_id: str) -> DiversityReport:
        edition = self.get_edition(edition_id)
        return diversity_report(build_matrix(edition))

    def list_editions(self) -> list[str]:
        public = self._read_public()
        return sorted(public["editions"])

    def revision_count(self, edition_id: str) -> int:
        public = self._read_public()
        slot = public["editions"].get(edition_id)
        return len(slot["revisions"]) if slot else 0

    # -- export -----------------------------------------------------------

    def build_snapshot(self) -> dict:
        public = self._read_public()
        snapshot = {
            "format": "divmeter-snapshot",
            "version": FORMAT_VERSION,
            "editions": public["editions"],
        }
        self._scrub(snapshot)
        return snapshot

    def _scrub(self, snapshot: dict) -> None:
        if not self.vault_path.exists():
            return
        # the scrub needs the vault's names, so an unlocked vault is required
        names = [n for n in self.vault_names() if n.strip()]
        if not names:
            return
        folded = [(name, name.casefold()) for name in names]

        def walk(value, path: str) -> None:
            if isinstance(value, str):
                haystack = value.casefold()
                for name, needle in folded:
                    if needle and needle in haystack:
                        raise LeakDetected(path, name)
            elif isinstance(value, dict):
                for key, item in value.items():
                    walk(item, f"{path}.{key}")
            elif isinstance(value, list):
                for i, item in enumerate(value):
                    walk(item, f"{path}[{i}]")

        walk(snapshot, "$")

    def export_public(self, path) -> dict:
        """Write the public snapshot, aborting before any I/O on a leak."""
        snapshot = self.build_snapshot()
        _atomic_write(Path(path), canonical_json(snapshot).encode("utf-8"))
        return snapshot
