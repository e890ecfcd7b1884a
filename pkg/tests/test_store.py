from __future__ import annotations

import hashlib
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqgeom.errors import StoreCorrupt
from fqgeom.store import RunManifest, Store, canonical_json, digest, file_digest

json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10 ** 6, 10 ** 6) | st.text(max_size=8),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=6), inner, max_size=4),
    max_leaves=12,
)


@settings(max_examples=60)
@given(json_values)
def test_canonical_json_is_stable_under_key_order(obj):
    text = canonical_json(obj)
    assert json.loads(text) == obj
    if isinstance(obj, dict):
        reordered = dict(reversed(list(obj.items())))
        assert canonical_json(reordered) == text


def test_digest_is_sha256_of_canonical_form():
    obj = {"b": [1, 2], "a": "x"}
    expected = hashlib.sha256(canonical_json(obj).encode()).hexdigest()
    assert digest(obj) == expected
    assert digest({"a": "x", "b": [1, 2]}) == expected
    assert digest({"a": "y", "b": [1, 2]}) != expected


def test_file_digest(tmp_path):
    p = tmp_path / "f.txt"
    p.write_bytes(b"GF(2)\n")
    assert file_digest(p) == hashlib.sha256(b"GF(2)\n").hexdigest()


def test_append_and_read_back(tmp_path):
    S = Store(tmp_path / "s")
    d1 = S.append("claim", {"claim": "A", "outcome": "Pass"})
    d2 = S.append("claim", {"claim": "B", "outcome": "Fail"})
    recs = S.records("claim")
    assert [r["digest"] for r in recs] == [d1, d2]
    assert S.get("claim", d2[:10])["payload"]["claim"] == "B"
    assert S.records("manifest") == []
    with pytest.raises(KeyError):
        S.get("claim", "ffffffffffff")


def test_tampering_is_detected(tmp_path):
    S = Store(tmp_path)
    S.append("claim", {"claim": "A", "outcome": "Pass"})
    path = S.path("claim")
    path.write_text(path.read_text().replace("Pass", "Fail"))
    with pytest.raises(StoreCorrupt):
        S.records("claim")
    path.write_text("{not json\n")
    with pytest.raises(StoreCorrupt):
        S.records("claim")


def test_manifest_fields():
    m = RunManifest("variety count", {"m": 1}, {"X": "abc"}, ["GF(2)", "GF(2)"], "success", 0,
                    0.123456, "0.1.0", "d" * 64)
    out = m.to_json()
    assert out["fields"] == ["GF(2)"] and out["wall_time"] == 0.1235
    for key in ("python", "timestamp", "pid", "version", "result_digest", "exit_code"):
        assert key in out
