"""Result-cache behavior: keying, schema versioning, merge-on-extend, and
stability of previously written fields."""

import json

from hfq.cache import (
    CACHE_ENV_VAR,
    CACHE_FILENAME,
    SCHEMA_VERSION,
    CacheRecord,
    ResultCache,
    cache_key,
    make_record,
)


def test_cache_key_format():
    assert cache_key(5, (2, 3, 2), 11, 3) == "5:2,3,2:11:3"


def test_disabled_cache_is_inert(tmp_path):
    c = ResultCache(None)
    assert not c.enabled
    assert c.get(3, (1, 2, 1), 7, 2) is None
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))  # no-op, no error


def test_round_trip(tmp_path):
    c = ResultCache(tmp_path)
    assert c.enabled
    rec = make_record(5, (2, 3, 2), 11, 3, counts=[24, 154],
                      lpoly=[1, 12, 88, 432, 1606, 4752, 10648, 15972, 14641])
    c.put(rec)
    got = ResultCache(tmp_path).get(5, (2, 3, 2), 11, 3)
    assert got is not None
    assert got.counts == [24, 154]
    assert got.lpoly[0] == 1
    assert got.f_values is None
    assert got.schema_version == SCHEMA_VERSION


def test_one_line_per_key_after_extension(tmp_path):
    c = ResultCache(tmp_path)
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10, 58], lpoly=[1, 2, 16, 14, 49]))
    lines = (tmp_path / CACHE_FILENAME).read_text().splitlines()
    assert len(lines) == 1
    d = json.loads(lines[0])
    assert d["counts"] == [10, 58] and d["lpoly"][0] == 1


def test_created_at_survives_extension(tmp_path):
    c = ResultCache(tmp_path)
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))
    first = c.get(3, (1, 2, 1), 7, 2).created_at
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10, 58]))
    assert c.get(3, (1, 2, 1), 7, 2).created_at == first


def test_unchanged_put_leaves_file_alone(tmp_path):
    c = ResultCache(tmp_path)
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))
    before = (tmp_path / CACHE_FILENAME).read_bytes()
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))
    assert (tmp_path / CACHE_FILENAME).read_bytes() == before


def test_multiple_keys_append(tmp_path):
    c = ResultCache(tmp_path)
    c.put(make_record(3, (1, 2, 1), 7, 2, counts=[10]))
    c.put(make_record(3, (1, 2, 1), 7, 3, counts=[4]))
    c.put(make_record(5, (2, 3, 2), 11, 3, counts=[24]))
    lines = (tmp_path / CACHE_FILENAME).read_text().splitlines()
    assert len(lines) == 3
    assert ResultCache(tmp_path).get(3, (1, 2, 1), 7, 3).counts == [4]


def test_stale_schema_versions_are_ignored(tmp_path):
    path = tmp_path / CACHE_FILENAME
    stale = {"key": "3:1,2,1:7:2", "l": 3, "exponents": [1, 2, 1], "q": 7,
             "z": 2, "created_at": "x", "counts": [999],
             "schema_version": SCHEMA_VERSION + 1}
    path.write_text(json.dumps(stale) + "\n")
    c = ResultCache(tmp_path)
    assert c.get(3, (1, 2, 1), 7, 2) is None


def test_corrupt_lines_are_skipped(tmp_path):
    path = tmp_path / CACHE_FILENAME
    good = make_record(3, (1, 2, 1), 7, 2, counts=[10]).to_json_dict()
    path.write_text("not json at all\n" + json.dumps(good) + "\n{}\n")
    c = ResultCache(tmp_path)
    assert c.get(3, (1, 2, 1), 7, 2).counts == [10]


def test_from_flags_resolution(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    assert not ResultCache.from_flags(None).enabled
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path))
    assert ResultCache.from_flags(None).path == tmp_path / CACHE_FILENAME
    other = tmp_path / "flagged"
    other.mkdir()
    assert ResultCache.from_flags(str(other)).path == other / CACHE_FILENAME


def test_record_value_fields_optional():
    rec = make_record(3, (1, 2, 1), 7, 2, counts=[10])
    d = rec.to_json_dict()
    assert "lpoly" not in d and "f_values" not in d
    back = CacheRecord.from_json_dict(d)
    assert back.counts == [10] and back.lpoly is None
