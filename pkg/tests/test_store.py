import json

import pytest

from divmeter.indices import Role
from divmeter.model import Edition, Participation, gender_label
from divmeter.store import (
    LeakDetected,
    NotFound,
    Store,
    VaultEntry,
    VaultLocked,
    normalize_name,
    pseudonymize,
)


def small_edition(slug="toyconf", year=2021, store=None):
    pid = store.pseudonymize if store else (lambda n: f"id-{n}")
    participations = [
        Participation(
            person_id=pid("Alice Smith"),
            edition_id=f"{slug}-{year}",
            role=Role.AUTHOR,
            gender=gender_label("woman", "manual"),
        ),
        Participation(
            person_id=pid("Bob Jones"),
            edition_id=f"{slug}-{year}",
            role=Role.AUTHOR,
            gender=gender_label("man", "manual"),
        ),
    ]
    return Edition(slug, year, participations=participations)


def vault_entries(store):
    return [
        VaultEntry(store.pseudonymize("Alice Smith"), "Alice Smith"),
        VaultEntry(store.pseudonymize("Bob Jones"), "Bob Jones"),
    ]


class TestNameNormalization:
    def test_accent_and_spacing_variants_collapse(self):
        assert normalize_name("José  Mañana") == normalize_name("jose manana")

    def test_pseudonym_stability(self):
        a = pseudonymize("José Mañana", "key-1")
        b = pseudonymize("  jose   manana ", "key-1")
        assert a == b

    def test_different_keys_differ(self):
        assert pseudonymize("Alice Smith", "key-1") != pseudonymize("Alice Smith", "key-2")


class TestPutGet:
    def test_put_and_read_back(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        edition = small_edition(store=store)
        edition_id = store.put_edition(edition, vault_entries(store))
        assert edition_id == "toyconf-2021"
        assert store.revision_count(edition_id) == 1
        loaded = store.get_edition(edition_id)
        assert loaded.conference_slug == "toyconf"
        assert loaded.participations == edition.participations

    def test_reput_bumps_revision_and_keeps_old(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        first = small_edition(store=store)
        store.put_edition(first, vault_entries(store))
        second = small_edition(store=store)
        second.participations = second.participations[:1]
        store.put_edition(second, vault_entries(store))
        assert store.revision_count("toyconf-2021") == 2
        assert len(store.get_edition("toyconf-2021").participations) == 1
        assert len(store.get_edition("toyconf-2021", revision=1).participations) == 2

    def test_vault_locked_writes_nothing(self, tmp_path, monkeypatch):
        monkeypatch.delenv("DIVMETER_VAULT_KEY", raising=False)
        store = Store(tmp_path)
        with pytest.raises(VaultLocked):
            store.put_edition(small_edition(), [])
        assert not (tmp_path / "public.json").exists()
        assert not (tmp_path / "vault.enc").exists()

    def test_get_report_deterministic(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        store.put_edition(small_edition(store=store), vault_entries(store))
        from divmeter.serialize import canonical_json, report_to_dict

        first = canonical_json(report_to_dict(store.get_report("toyconf-2021")))
        second = canonical_json(report_to_dict(store.get_report("toyconf-2021")))
        assert first == second
        assert json.loads(first)["gdi"] == pytest.approx(1.0)

    def test_not_found(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        with pytest.raises(NotFound):
            store.get_report("nope-1999")

    def test_wrong_key_does_not_open_vault(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        store.put_edition(small_edition(store=store), vault_entries(store))
        other = Store(tmp_path, vault_key="wrong")
        with pytest.raises(VaultLocked):
            other.vault_names()


class TestPrivacyPartition:
    def test_public_file_contains_no_names(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        store.put_edition(small_edition(store=store), vault_entries(store))
        public = (tmp_path / "public.json").read_text().casefold()
        for name in ("alice smith", "bob jones"):
            assert name not in public

    def test_export_empty_store(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        snapshot = store.export_public(tmp_path / "snapshot.json")
        assert snapshot["editions"] == {}
        assert json.loads((tmp_path / "snapshot.json").read_text())["format"] == (
            "divmeter-snapshot"
        )

    def test_export_fixture_store_scrubbed(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        store.put_edition(small_edition(store=store), vault_entries(store))
        snapshot = store.export_public(tmp_path / "snapshot.json")
        text = json.dumps(snapshot).casefold()
        for name in store.vault_names():
            assert name.casefold() not in text

    def test_poisoned_store_triggers_leak_detection(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        edition = small_edition(store=store)
        poisoned = Participation(
            person_id=store.pseudonymize("Carol White"),
            edition_id="toyconf-2021",
            role=Role.AUTHOR,
            affiliation_raw="office of Carol White",
        )
        edition.participations.append(poisoned)
        store.put_edition(
            edition, vault_entries(store) + [VaultEntry(poisoned.person_id, "Carol White")]
        )
        out = tmp_path / "snapshot.json"
        with pytest.raises(LeakDetected) as exc:
            store.export_public(out)
        assert "affiliation_raw" in exc.value.field_path
        assert not out.exists()

    def test_vault_encrypted_at_rest(self, tmp_path):
        store = Store(tmp_path, vault_key="secret")
        store.put_edition(small_edition(store=store), vault_entries(store))
        raw = (tmp_path / "vault.enc").read_bytes()
        assert b"Alice" not in raw
