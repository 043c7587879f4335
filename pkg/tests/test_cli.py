import json
import subprocess
import sys

import pytest

from ddg_forge.cli import FAMILIES, main
from ddg_forge.graphs import lattice_graph, write_graph
from ddg_forge.matrix import IntMatrix, read_matrix, write_matrix

from oracles import ddg_parameters, gram_is_scalar


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def tree(path):
    return {p.relative_to(path).as_posix(): p.read_bytes() for p in sorted(path.rglob("*")) if p.is_file()}


# -- construct --------------------------------------------------------------------------------

def test_construct_complement_ddg(tmp_path, capsys):
    out = tmp_path / "ddg40"
    code, stdout, _ = run(["construct", "--family", "sp4-complement-ddg", "--q", "3", "--out", str(out)], capsys)
    assert code == 0
    assert "(40,27,18,18,20,2) almost-proper" in stdout
    assert sorted(tree(out)) == ["Q.mat", "R.mat", "adjacency.mat", "params.json", "partition.txt"]
    params = json.loads((out / "params.json").read_text())
    assert params["result"]["classification"] == "almost-proper"
    assert params["result"]["w"] == 9
    Q = read_matrix(out / "Q.mat")
    assert gram_is_scalar(Q) == 9
    adj = read_matrix(out / "adjacency.mat")
    classes = [list(map(int, line.split())) for line in (out / "partition.txt").read_text().splitlines()]
    assert ddg_parameters(adj, classes) == (40, 27, 18, 18, 20, 2)


CONSTRUCT_CASES = [
    ["--family", "sp-graph", "--q", "2"],
    ["--family", "sp4-model", "--q", "3"],
    ["--family", "sp4-star", "--q", "3"],
    ["--family", "mathon", "--q", "9", "--r", "2"],
    ["--family", "lattice", "--n", "4"],
    ["--family", "hadamard", "--k", "3"],
    ["--family", "paley", "--q", "9"],
    ["--family", "conference-square", "--q", "5"],
    ["--family", "rshcd", "--u", "2", "--eps", "-1"],
    ["--family", "rshcd-recursion", "--variant", "A", "--eps", "-1"],
    ["--family", "rshcd-recursion", "--variant", "B", "--delta", "1"],
    ["--family", "multipartite", "--t", "6", "--eps", "1"],
    ["--family", "bipartite", "--eps", "-1"],
    ["--family", "pair-of-cliques", "--delta", "-1"],
    ["--family", "ps22-a", "--t", "2"],
    ["--family", "ps22-b", "--t", "6"],
]


def test_every_family_has_a_construct_case():
    assert {c[1] for c in CONSTRUCT_CASES} | {"sp4-complement-ddg"} == set(FAMILIES)


@pytest.mark.parametrize("case", CONSTRUCT_CASES, ids=lambda c: " ".join(c[1:]))
def test_construct_is_deterministic(tmp_path, capsys, case):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["construct", *case, "--out", str(a)], capsys)[0] == 0
    assert run(["construct", *case, "--out", str(b)], capsys)[0] == 0
    assert tree(a) == tree(b)
    params = json.loads((a / "params.json").read_text())
    assert params["family"] == case[1] and params["verified"]


def test_construct_expected_lines(tmp_path, capsys):
    cases = {
        ("lattice",): "(16,6,2,2,8,2) almost-proper",
        ("sp4-star", "--q", "3"): "{9,6,1;1,2,9}",
        ("paley", "--q", "5"): "C(6) symmetric",
        ("conference-square", "--q", "5"): "C(26) symmetric",
        ("rshcd-recursion", "--variant", "B"): "eps=-1",
    }
    for i, (args, want) in enumerate(cases.items()):
        code, stdout, _ = run(["construct", "--family", *args, "--out", str(tmp_path / str(i))], capsys)
        assert code == 0 and want in stdout


def test_construct_usage_errors(tmp_path, capsys):
    assert run(["construct", "--family", "sp-graph", "--out", str(tmp_path)], capsys)[0] == 2
    assert run(["construct", "--family", "nope", "--out", str(tmp_path)], capsys)[0] == 2
    assert run(["construct", "--family", "mathon", "--q", "7", "--r", "2", "--out", str(tmp_path)], capsys)[0] == 2
    assert run(["construct", "--family", "sp4-model", "--q", "4", "--out", str(tmp_path)], capsys)[0] == 2


# -- verify -----------------------------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    write_graph(tmp_path / "lattice4.mat", lattice_graph(4))
    write_matrix(tmp_path / "notW.mat", IntMatrix([[1, 1], [1, 1]]))
    write_matrix(tmp_path / "h4.mat", IntMatrix.ones(4) - 2 * IntMatrix.identity(4))
    (tmp_path / "pairs.txt").write_text("0 5\n1 4\n2 7\n3 6\n8 13\n9 12\n10 15\n11 14\n")
    return tmp_path


def test_verify_srg(files, capsys):
    code, stdout, _ = run(["verify", "--kind", "srg", "--in", str(files / "lattice4.mat")], capsys)
    assert (code, stdout) == (0, "(16,6,2,2)\n")


def test_verify_weighing_failure_has_witness(files, capsys):
    code, _, err = run(["verify", "--kind", "weighing", "--in", str(files / "notW.mat")], capsys)
    assert code == 1
    assert "verification failed" in err and "(0, 1)" in err


@pytest.mark.parametrize("kind,path,want", [
    ("vkl", "lattice4.mat", "(16,6,2)"),
    ("weighing", "h4.mat", "W(4,4)"),
    ("hadamard", "h4.mat", "W(4,4)"),
    ("rshcd", "h4.mat", "RSHCD(n=4, a=2, e=-1, eps=-1)"),
    ("menon", "h4.mat", "(4,3,2)"),
    ("drg", "lattice4.mat", "{6,3;1,2}"),
])
def test_verify_kinds(files, capsys, kind, path, want):
    code, stdout, _ = run(["verify", "--kind", kind, "--in", str(files / path)], capsys)
    assert code == 0 and stdout.strip() == want


def test_verify_with_partition(files, capsys):
    lat, part = str(files / "lattice4.mat"), str(files / "pairs.txt")
    code, stdout, _ = run(["verify", "--kind", "ddg", "--in", lat, "--partition", part], capsys)
    assert code == 0 and stdout.startswith("(16,6,2,2,8,2)")
    code, stdout, _ = run(["verify", "--kind", "equitable", "--in", lat, "--partition", part], capsys)
    assert code == 0
    code, stdout, _ = run(["verify", "--kind", "ddg", "--in", lat, "--partition", part, "--json"], capsys)
    assert json.loads(stdout)["lambda1"] == 2


def test_verify_exit_codes(files, capsys):
    lat = str(files / "lattice4.mat")
    assert run(["verify", "--kind", "ddg", "--in", lat], capsys)[0] == 2  # partition missing
    assert run(["verify", "--kind", "srg", "--in", str(files / "missing.mat")], capsys)[0] == 2
    assert run(["verify", "--kind", "bogus", "--in", lat], capsys)[0] == 2
    (files / "bad.mat").write_text("2 2\n1 2\n")
    assert run(["verify", "--kind", "srg", "--in", str(files / "bad.mat")], capsys)[0] == 2
    assert run(["verify", "--kind", "conference", "--in", lat], capsys)[0] == 1
    assert run(["verify", "--kind", "antipodal", "--in", lat], capsys)[0] == 1


# -- catalog and info -------------------------------------------------------------------------

def test_catalog_max_q_3(tmp_path, capsys):
    code, stdout, _ = run(["catalog", "--max-q", "3", "--out", str(tmp_path / "r.json")], capsys)
    assert code == 0
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["status"] == "pass"
    assert report["count"] == len(report["records"]) >= 30
    assert all(r["pass"] for r in report["records"])
    assert all("elapsed_ms" in r for r in report["records"])
    assert "FAIL" not in stdout


def test_catalog_is_deterministic_across_thread_counts(tmp_path, capsys, monkeypatch):
    outs = []
    for i, threads in enumerate(("1", "4", "4")):
        monkeypatch.setenv("DDG_FORGE_THREADS", threads)
        path = tmp_path / f"r{i}.json"
        assert run(["catalog", "--max-q", "3", "--out", str(path), "--no-timings"], capsys)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_catalog_rejects_other_bounds(tmp_path, capsys):
    assert run(["catalog", "--max-q", "4", "--out", str(tmp_path / "r.json")], capsys)[0] == 2


def test_info(capsys):
    code, stdout, _ = run(["info"], capsys)
    assert code == 0 and "sp4-complement-ddg" in stdout and "catalog max-q: 3, 5, 7" in stdout


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ddg_forge.cli", "verify", "--kind", "srg", "--in", str(tmp_path / "none.mat")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 2 and "error" in proc.stderr
