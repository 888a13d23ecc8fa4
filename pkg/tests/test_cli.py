import csv
import json

import pytest

from geolabel.cli import COMPATIBLE, BenchRecord, fit_slope, main
from geolabel.geom_graphs import Instance
from geolabel.labeling import read_labels, write_labels


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def disk_instance(tmp_path, capsys):
    path = tmp_path / "disk.json"
    assert run(capsys, "gen", "--family", "unit_disk", "--n", 96, "--seed", 1, "--out", path)[0] == 0
    return path


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "gen", "--family", "unit_disk", "--n", 256, "--seed", 1, "--out", p)
    assert a.read_bytes() == b.read_bytes()
    inst = Instance.from_json(a.read_text())
    assert inst.n == 256 and len(inst.payload["points"]) == 256


def test_gen_triangle(capsys):
    code, out, _ = run(capsys, "gen", "--family", "polygon_visibility", "--n", 3)
    assert code == 0
    assert len(Instance.from_json(out).payload["vertices"]) == 3


def test_gen_failure_is_nonzero(capsys):
    code, _, err = run(capsys, "gen", "--family", "polygon_visibility", "--n", 2)
    assert code != 0 and err


@pytest.mark.parametrize("scheme", ["partition_tree", "star", "switch"])
def test_label_then_verify(tmp_path, capsys, disk_instance, scheme):
    labels = tmp_path / "disk.labels"
    assert run(capsys, "label", "--instance", disk_instance, "--scheme", scheme, "--out", labels)[0] == 0
    desc = json.loads((tmp_path / "disk.descriptor.json").read_text())
    assert desc["n"] == 96
    code, out, _ = run(capsys, "verify", "--instance", disk_instance, "--labels", labels)
    report = json.loads(out)
    assert code == 0
    assert report == {"pairs_checked": 96 * 95 // 2, "mismatches": 0, "decode_errors": 0, "sampled": False}


def test_corrupted_bit_is_caught(tmp_path, capsys, disk_instance):
    labels = tmp_path / "disk.labels"
    run(capsys, "label", "--instance", disk_instance, "--scheme", "switch", "--out", labels)
    ls = read_labels(labels.read_text())
    lab = ls.labels[5]
    bad = ls.with_label(5, lab.flip(lab.length - 1))
    with open(labels, "w") as fh:
        write_labels(bad, fh)
    code, out, _ = run(capsys, "verify", "--instance", disk_instance, "--labels", labels)
    report = json.loads(out)
    assert code == 1
    assert report["mismatches"] + report["decode_errors"] >= 1


def test_empty_graph_verifies(tmp_path, capsys):
    inst = tmp_path / "empty.json"
    inst.write_text(Instance("capped_abstract", 5, 0, {"matrix": [[0] * 5 for _ in range(5)]}).to_json())
    labels = tmp_path / "empty.labels"
    assert run(capsys, "label", "--instance", inst, "--scheme", "capped", "--out", labels)[0] == 0
    code, out, _ = run(capsys, "verify", "--instance", inst, "--labels", labels)
    assert code == 0 and json.loads(out)["mismatches"] == 0


def test_incompatible_scheme_lists_pairs(capsys, disk_instance):
    code, _, err = run(capsys, "label", "--instance", disk_instance, "--scheme", "capped")
    assert code == 2
    assert "terrain_visibility" in err and "partition_tree" in err


def test_malformed_files(tmp_path, capsys, disk_instance):
    junk = tmp_path / "junk.labels"
    junk.write_text("not json\n")
    assert run(capsys, "verify", "--instance", disk_instance, "--labels", junk)[0] == 3
    assert run(capsys, "verify", "--instance", tmp_path / "missing.json", "--labels", junk)[0] == 3


def test_compatibility_table_covers_every_scheme():
    assert set(COMPATIBLE["capped"]) == {"terrain_visibility", "capped_abstract"}
    assert "unit_disk" in COMPATIBLE["partition_tree"]


def test_fit_slope():
    assert fit_slope([2, 4, 8], [3, 6, 12]) == pytest.approx(1.0)
    assert fit_slope([4], [1]) is None


def test_bench_csv_and_summary(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("GEOLABEL_THREADS", "1")
    out_csv, out_sum = tmp_path / "b.csv", tmp_path / "b.json"
    code, _, _ = run(capsys, "bench", "--family", "semilinear_dnf", "--n", 32, 64, "--scheme", "semilinear",
                     "--param", "preset=interval", "--csv", out_csv, "--summary", out_sum)
    assert code == 0
    with open(out_csv) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == list(BenchRecord.__dataclass_fields__)
    assert [(r["n"], r["scheme"], r["verified"]) for r in rows] == [("32", "semilinear", "True"),
                                                                   ("64", "semilinear", "True")]
    summary = json.loads(out_sum.read_text())
    fam = summary["semilinear_dnf"]
    assert fam["status"] == "OK" and fam["n"] == [32, 64]
    assert fam["baseline"]["slope_max_label_bits"] > fam["slope_max_label_bits"]
