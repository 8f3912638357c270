"""CLI contract: exit codes, file formats, determinism, negative controls."""

import csv
import json
import subprocess
import sys

import pytest

from rainbowap.cli import main
from rainbowap.formats import SWEEP_COLUMNS, read_coloring


def run_cli(*argv) -> int:
    return main(list(argv))


def test_build_writes_files(tmp_path):
    code = run_cli("build", "--C", "10", "--d", "3", "--epsilon", "1/20",
                   "--k", "3", "--out", str(tmp_path))
    assert code == 0
    coloring = tmp_path / "coloring.tsv"
    stats = tmp_path / "stats.json"
    assert coloring.exists() and stats.exists()
    payload = json.loads(stats.read_text())
    assert list(payload.keys()) == list(SWEEP_COLUMNS)
    assert payload["n"] == 1000 and payload["violations"] is None
    head = coloring.read_text().splitlines()[:2]
    assert head[0] == "#format rainbow-v1"
    assert head[1] == "#params C=10 d=3 epsilon=1/20 k=3"


def test_build_rejects_bad_params(tmp_path):
    assert run_cli("build", "--C", "7", "--d", "0", "--out", str(tmp_path)) == 2
    assert run_cli("build", "--C", "2", "--d", "3", "--out", str(tmp_path)) == 2
    assert run_cli("build", "--C", "10", "--d", "3", "--epsilon", "3/2",
                   "--out", str(tmp_path)) == 2


def test_build_resource_refusal(tmp_path):
    code = run_cli("build", "--C", "10", "--d", "5", "--memory-budget-mb", "0",
                   "--out", str(tmp_path))
    assert code == 3


def test_build_deterministic_bytes(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    for out in (d1, d2):
        assert run_cli("build", "--C", "10", "--d", "3", "--epsilon", "1/20",
                       "--out", str(out)) == 0
    assert (d1 / "coloring.tsv").read_bytes() == (d2 / "coloring.tsv").read_bytes()
    assert (d1 / "stats.json").read_bytes() == (d2 / "stats.json").read_bytes()


def test_roundtrip_coloring(tmp_path):
    import rainbowap as ra

    assert run_cli("build", "--C", "10", "--d", "3", "--epsilon", "1/20",
                   "--out", str(tmp_path)) == 0
    cs = read_coloring(tmp_path / "coloring.tsv")
    rebuilt = ra.build(ra.Params.create(C=10, d=3, epsilon="1/20"))
    assert cs.same_coloring(rebuilt)


def test_verify_fresh_build_passes(tmp_path):
    assert run_cli("build", "--C", "3", "--d", "2", "--epsilon", "3/10",
                   "--out", str(tmp_path)) == 0
    report = tmp_path / "report.json"
    code = run_cli("verify", "--input", str(tmp_path / "coloring.tsv"),
                   "--report", str(report))
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["total_violations"] == 0
    assert payload["mode"] == "exhaustive"


def test_verify_corrupted_color_fails(tmp_path, capsys):
    assert run_cli("build", "--C", "3", "--d", "2", "--epsilon", "3/10",
                   "--out", str(tmp_path)) == 0
    path = tmp_path / "coloring.tsv"
    lines = path.read_text().splitlines()
    # A = {3,5,6,7,8}; force the colors of 5 and 7 to collide: (5,6,7) breaks
    values = {}
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            v, c = line.split("\t")
            values[int(v)] = i
    c5 = lines[values[5]].split("\t")[1]
    lines[values[7]] = f"7\t{c5}"
    path.write_text("\n".join(lines) + "\n")
    code = run_cli("verify", "--input", str(path))
    assert code == 1
    out = capsys.readouterr().out
    assert "violation" in out and "(5, 6, 7)" in out


def test_verify_truncated_file_rejected(tmp_path):
    assert run_cli("build", "--C", "10", "--d", "3", "--epsilon", "1/20",
                   "--out", str(tmp_path)) == 0
    path = tmp_path / "coloring.tsv"
    raw = path.read_bytes()
    path.write_bytes(raw[: len(raw) - 4])  # cut mid-line
    assert run_cli("verify", "--input", str(path)) == 2
    path.write_text("#format something-else\n")
    assert run_cli("verify", "--input", str(path)) == 2
    assert run_cli("verify", "--input", str(tmp_path / "missing.tsv")) == 2


def test_verify_sampled_mode(tmp_path):
    assert run_cli("build", "--C", "10", "--d", "3", "--epsilon", "1/20",
                   "--out", str(tmp_path)) == 0
    report = tmp_path / "r.json"
    code = run_cli("verify", "--input", str(tmp_path / "coloring.tsv"),
                   "--mode", "sampled", "--sample-budget", "2000",
                   "--report", str(report))
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["mode"] == "sampled" and payload["seed"] is not None


def test_verify_threads_flag(tmp_path):
    assert run_cli("build", "--C", "16", "--d", "3", "--epsilon", "1/16",
                   "--out", str(tmp_path)) == 0
    reports = []
    for t, name in [("1", "a.json"), ("4", "b.json")]:
        assert run_cli("verify", "--input", str(tmp_path / "coloring.tsv"),
                       "--threads", t, "--report", str(tmp_path / name)) == 0
        payload = json.loads((tmp_path / name).read_text())
        reports.append((payload["aps_checked"], payload["total_violations"]))
    assert reports[0] == reports[1]


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli("sweep", "--C", "3,5,10", "--d", "2", "--epsilon", "3/10,1/10",
                   "--k", "3", "--out", str(out))
    assert code == 0
    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6  # 3 x 2 grid over (C, epsilon)
    assert list(rows[0].keys()) == list(SWEEP_COLUMNS) + ["status"]
    for row in rows:
        assert row["status"] == "ok"
        assert row["violations"] == "0"
        assert row["verify_mode"] == "exhaustive"


def test_sweep_records_row_failures(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli("sweep", "--C", "3", "--d", "2", "--epsilon", "3/10,5/3",
                   "--out", str(out))
    assert code == 0
    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["status"] == "ok"
    assert rows[1]["status"].startswith("error:")


def test_matchings_cli_and_verify(tmp_path):
    code = run_cli("matchings", "--m", "8", "--epsilon", "1/4",
                   "--out", str(tmp_path))
    assert code == 0
    decomp = tmp_path / "decomposition.tsv"
    inner = tmp_path / "inner_coloring.tsv"
    stats = json.loads((tmp_path / "matchings_stats.json").read_text())
    assert decomp.exists() and inner.exists()
    assert stats["violations"] == 0
    assert stats["num_edges"] >= stats["edge_lower_bound"]
    assert stats["num_classes"] <= stats["class_bound"]
    assert run_cli("verify", "--input", str(decomp), "--coloring", str(inner)) == 0
    # decomposition without its coloring is unverifiable
    assert run_cli("verify", "--input", str(decomp)) == 2


def test_matchings_merged_class_file_fails(tmp_path):
    assert run_cli("matchings", "--m", "8", "--epsilon", "1/4",
                   "--out", str(tmp_path)) == 0
    decomp = tmp_path / "decomposition.tsv"
    lines = decomp.read_text().splitlines()
    # merge the first edge's class into another one on the same block pair
    # (necessarily a different difference or color key)
    first = lines[2].split()
    for line in lines[3:]:
        parts = line.split()
        if parts[0] == first[0] and parts[2] == first[2] and parts[4] != first[4]:
            lines[2] = " ".join(first[:4] + [parts[4]])
            break
    decomp.write_text("\n".join(lines) + "\n")
    code = run_cli("verify", "--input", str(decomp),
                   "--coloring", str(tmp_path / "inner_coloring.tsv"))
    assert code == 1


def test_matchings_rejects_unbuildable(tmp_path):
    # 2m = 2 admits no grid with side >= 3
    assert run_cli("matchings", "--m", "1", "--out", str(tmp_path)) == 2
    # explicit C, d must multiply out to 2m
    assert run_cli("matchings", "--m", "8", "--C", "4", "--d", "3",
                   "--out", str(tmp_path)) == 2


def test_lowerbound_cli(tmp_path):
    out = tmp_path / "lb.json"
    assert run_cli("lowerbound", "--n", "100", "--json", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["clique_lower_bound"] == 50
    assert payload["greedy_colors"] >= 50
    assert payload["ok"] is True


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "rainbowap.cli", "lowerbound", "--n", "10"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "clique_lower_bound=5" in proc.stdout
