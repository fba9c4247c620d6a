import json

import pytest

from deepconn import fixtures
from deepconn.cli import main
from deepconn.model import parse_instance


@pytest.fixture()
def fig1_path(tmp_path):
    path = tmp_path / "fig1.json"
    path.write_text(fixtures.fig1_text())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(fig1_path, capsys):
    code, out, err = run(capsys, "validate", "-i", fig1_path)
    assert code == 0 and err == ""
    assert "status: ok" in out
    assert "nodes: 14" in out
    assert "total_routing: False" in out


def test_fdc_pair_human(fig1_path, capsys):
    code, out, _ = run(capsys, "fdc", "-i", fig1_path, "--pair", "S", "T")
    assert code == 0
    assert "value: 3/2" in out
    assert "elapsed_s" in out


def test_fdc_pair_json_deterministic(fig1_path, capsys):
    code, out1, _ = run(
        capsys, "fdc", "-i", fig1_path, "--pair", "S", "T", "--witness", "--json"
    )
    code2, out2, _ = run(
        capsys, "fdc", "-i", fig1_path, "--pair", "S", "T", "--witness", "--json"
    )
    assert code == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["value"] == "3/2"
    assert "elapsed_s" not in report
    total = sum(eval_frac(v) for v in report["witness"]["dual"].values())
    assert total == 1.5


def eval_frac(text):
    if "/" in text:
        p, q = text.split("/")
        return int(p) / int(q)
    return int(text)


def test_erdc_witness(fig1_path, capsys):
    code, out, _ = run(
        capsys, "erdc", "-i", fig1_path, "--pair", "S", "T", "--witness", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["value"] == 2
    assert len(report["witness"]["cut"]) == 2


def test_all_pairs(fig1_path, capsys):
    code, out, _ = run(capsys, "pddc", "-i", fig1_path, "--all-pairs", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["all_pairs"] is True
    assert isinstance(report["value"], int)


def test_check(fig1_path, capsys):
    code, out, _ = run(capsys, "check", "-i", fig1_path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "ok"
    by_pair = {tuple(row["pair"]): row for row in report["pairs"]}
    assert by_pair[("S", "T")]["erdc"] == 2
    assert by_pair[("S", "T")]["fdc"] == "3/2"
    assert all(row["inequalities"] == "ok" for row in report["pairs"])


def test_malformed_document(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", "-i", str(path))
    assert code == 2
    assert err.startswith("error FORMAT:")
    assert "line 1" in err


def test_invalid_document(tmp_path, capsys):
    doc = {
        "nodes": ["a", "b"],
        "edges": [["a", "b"]],
        "peers": ["a"],
        "overlay_edges": [],
        "routes": [],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", "-i", str(path))
    assert code == 2
    assert err.startswith("error VALIDATION:")


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "-i", "/nonexistent.json")
    assert code == 2 and "error FORMAT" in err


def test_usage_error(capsys):
    assert main(["fdc"]) == 2
    capsys.readouterr()


def test_sparsify_infeasible(tmp_path, capsys):
    doc = {
        "nodes": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"]],
        "peers": ["a", "b", "c"],
        "overlay_edges": [["a", "b"], ["b", "c"], ["a", "c"]],
        "routes": [
            {"pair": ["a", "b"], "path": ["a", "b"]},
            {"pair": ["b", "c"], "path": ["b", "c"]},
            {"pair": ["a", "c"], "path": ["a", "b", "c"]},
        ],
    }
    path = tmp_path / "path.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "sparsify", "-i", str(path))
    assert code == 1
    assert "error PRECONDITION: precondition ERDC(K_P) >= 2 violated at edge (a,b)" in err


def test_sparsify_triangle(tmp_path, capsys):
    doc = {
        "nodes": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"], ["a", "c"]],
        "peers": ["a", "b", "c"],
        "overlay_edges": [["a", "b"], ["b", "c"], ["a", "c"]],
        "routes": [
            {"pair": ["a", "b"], "path": ["a", "b"]},
            {"pair": ["b", "c"], "path": ["b", "c"]},
            {"pair": ["a", "c"], "path": ["a", "c"]},
        ],
    }
    src = tmp_path / "tri.json"
    src.write_text(json.dumps(doc))
    out_path = tmp_path / "sparse.json"
    code, out, _ = run(
        capsys, "sparsify", "-i", str(src), "-o", str(out_path), "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["size"] == 3
    reloaded = parse_instance(out_path.read_text())
    assert len(reloaded.overlay_edges) == 3


def test_special_case(tmp_path, capsys):
    doc = {
        "nodes": ["a", "b", "c", "d"],
        "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]],
        "peers": ["a", "b", "c", "d"],
        "overlay_edges": [],
        "routes": [],
    }
    path = tmp_path / "cycle.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "special-case", "-i", str(path), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["size"] <= report["bound"] == 6


def test_gen_random_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "rand.json"
    code, out, _ = run(
        capsys,
        "gen",
        "random",
        "--nodes",
        "8",
        "--peers",
        "4",
        "--seed",
        "5",
        "-o",
        str(out_path),
        "--json",
    )
    assert code == 0
    inst = parse_instance(out_path.read_text())
    assert len(inst.nodes) == 8 and len(inst.peers) == 4


def test_gen_spddc_reduction(tmp_path, capsys):
    out_path = tmp_path / "red.json"
    code, out, _ = run(
        capsys,
        "gen",
        "spddc-reduction",
        "--m",
        "2",
        "--sets",
        "1;2",
        "--k",
        "2",
        "-o",
        str(out_path),
        "--json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["source"] == "u0" and report["sink"] == "u2"
    parse_instance(out_path.read_text())


def test_gen_set_system_labels(tmp_path, capsys):
    out_path = tmp_path / "gadget.json"
    labels_path = tmp_path / "labels.json"
    code, _, _ = run(
        capsys,
        "gen",
        "set-system",
        "--h-nodes",
        "x,y,z",
        "--h-edges",
        "x-y,y-z",
        "--f",
        "x-y,y-z",
        "--m",
        "2",
        "--sets",
        "1;1,2",
        "-o",
        str(out_path),
        "--labels",
        str(labels_path),
    )
    assert code == 0
    labels = json.loads(labels_path.read_text())
    assert len(labels["element_edges"]) == 2
    parse_instance(out_path.read_text())


def test_gen_hamiltonian(tmp_path, capsys):
    out_path = tmp_path / "ham.json"
    code, out, _ = run(
        capsys,
        "gen",
        "hamiltonian",
        "--nodes",
        "a,b,c",
        "--edges",
        "a-b,b-c",
        "-o",
        str(out_path),
        "--json",
    )
    assert code == 0
    inst = parse_instance(out_path.read_text())
    assert inst.total and "apex_x" in inst.nodes


def test_witness_reingest(fig1_path, capsys, tmp_path):
    # A cut emitted by the CLI must validate against the library certificate.
    from deepconn.oracles import CutCertificate

    code, out, _ = run(
        capsys, "erdc", "-i", fig1_path, "--pair", "S", "T", "--witness", "--json"
    )
    report = json.loads(out)
    cut = frozenset(tuple(e) for e in report["witness"]["cut"])
    cert = CutCertificate(edges=cut)
    cert.validate(fixtures.fig1(), "S", "T")
