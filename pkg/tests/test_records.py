import json
import math
import threading

import pytest

from lpextremal.records import JsonlCache, ResultRecord, flatten, human_summary, to_csv


def rec(p="2"):
    return ResultRecord("constant", {"n": 2, "p": p, "interval": [0.0, 1.0], "tol": 1e-11},
                        {"C": 26.832815729997478, "roots": [0.21132486540518713, 0.7886751345948129],
                         "ok": True}, {"method": "ClosedForm"}, {"wallTimeMs": 1.5})


def test_json_round_trip_exact():
    r = rec()
    back = ResultRecord.from_json(r.to_json())
    assert back == r
    assert json.loads(r.to_json())["schemaVersion"] == 1


def test_missing_schema_version():
    with pytest.raises(ValueError):
        ResultRecord.from_dict({"command": "x", "inputs": {}, "outputs": {}})


def test_csv_round_trip_floats():
    text = to_csv([rec(), rec("inf")])
    lines = text.splitlines()
    assert lines[0].startswith("schemaVersion,command")
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert float(row["outputs.C"]) == 26.832815729997478
    assert [float(v) for v in row["outputs.roots"].split(";")] == rec().outputs["roots"]
    assert row["outputs.ok"] == "true"
    assert lines[2].split(",")[header.index("inputs.p")] == "inf"


def test_flatten_and_human():
    assert flatten({"a": {"b": 1}, "c": {}}) == {"a.b": 1, "c": {}}
    h = human_summary(rec())
    assert "C = 26.8328" in h


def test_cache_concurrent_appends(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = JsonlCache(path)

    def worker(i):
        for j in range(20):
            cache.append(rec(str(i * 100 + j)))

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    reloaded = JsonlCache(path)
    assert len(reloaded) == 80
    assert reloaded.get(rec("105").key()).outputs["C"] == 26.832815729997478


def test_cache_env_default(tmp_path, monkeypatch):
    target = tmp_path / "env.jsonl"
    monkeypatch.setenv("LPEXTREMAL_CACHE", str(target))
    JsonlCache().append(rec())
    assert target.exists()
