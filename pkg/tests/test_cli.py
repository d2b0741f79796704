import json
import subprocess
import sys

import pytest

from sgstruct.cli import main
from sgstruct.graph import complete, ktilde
from sgstruct.io import graph_to_dict, write_json

from conftest import M, P, graph


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


@pytest.fixture
def files(tmp_path):
    def put(name, G):
        p = tmp_path / name
        write_json(p, graph_to_dict(G))
        return p
    shared = graph(9, [(i, j, P) for i in range(5) for j in range(i + 1, 5)]
                   + [(i, j, P) for i in range(4, 9) for j in range(i + 1, 9)])
    return {
        "k3m": put("k3m.json", complete(3, M)),
        "kt": put("kt.json", ktilde(2, True)),
        "k6": put("k6.json", complete(6)),
        "c4": put("c4.json", graph(4, [(0, 1, P), (1, 2, P), (2, 3, P), (0, 3, M)])),
        "shared": put("shared.json", shared),
        "dir": tmp_path,
    }


def test_report_envelope(files, capsys):
    code, rep, err = run(["spectrum", files["k3m"]], capsys)
    assert code == 0
    assert rep["schema"] == "sgstruct.report/1" and rep["command"] == "spectrum"
    assert list(rep["input_digest"].values())[0].startswith("sha256:")
    assert rep["results"]["eigenvalues"] == [-2.0, 1.0, 1.0]
    assert "lambda_min" in err


def test_spectrum_twelve_digits(files, capsys):
    _, rep, _ = run(["spectrum", files["kt"]], capsys)
    assert rep["results"]["smallest"] == float(f"{(-1 - 17 ** 0.5) / 2:.12g}")


def test_malformed_sign_is_input_error(files, capsys):
    p = files["dir"] / "bad.json"
    p.write_text(json.dumps({"vertices": 2, "edges": [[0, 1, "±"]]}))
    code, rep, err = run(["spectrum", p], capsys)
    assert code == 2 and "sign" in rep["error"]


def test_cliques_with_split(files, capsys):
    code, rep, _ = run(["cliques", files["kt"], "--n-min", "4", "--m", "2"], capsys)
    assert code == 0
    (c,) = rep["results"]["cliques"]
    assert c["vertices"] == [1, 2, 3, 4] and c["split"]["disjoint"] is False


def test_decompose_precondition_failure(files, capsys):
    code, rep, _ = run(["decompose", files["kt"], "--m", "2", "--n", "4"], capsys)
    assert code == 1 and rep["results"]["witness"] == [0, 1, 2, 3, 4]


def test_decompose_refuses_below_threshold(files, capsys):
    code, rep, _ = run(["decompose", files["shared"], "--m", "2", "--n", "4"], capsys)
    assert code == 2 and "--force" in rep["error"]


def test_decompose_forced(files, capsys):
    code, rep, _ = run(["decompose", files["shared"], "--m", "2", "--n", "4", "--lambda", "-2", "--force",
                        "--valency-bound", "0"], capsys)
    assert code == 0 and len(rep["results"]["pieces"]) == 2
    assert all(b["satisfied"] for b in rep["results"]["report"]["bounds_checked"])
    assert any("below" in w for w in rep["warnings"])


def test_decompose_bad_flags(files, capsys):
    code, rep, _ = run(["decompose", files["shared"], "--m", "1", "--n", "4"], capsys)
    assert code == 2


def test_integrable_and_verify(files, capsys):
    cert = files["dir"] / "cert.json"
    code, rep, _ = run(["integrable", files["k6"], "--output", cert], capsys)
    assert code == 0 and rep["results"]["status"] == "certificate"
    code, rep, _ = run(["verify", files["k6"], cert], capsys)
    assert code == 0 and rep["results"]["valid"]
    data = json.loads(cert.read_text())
    data["N"][0][0] = 2
    cert.write_text(json.dumps(data))
    code, rep, _ = run(["verify", files["k6"], cert], capsys)
    assert code == 1 and rep["results"]["valid"] is False
    code, rep, _ = run(["verify", files["c4"], cert], capsys)
    assert code == 2


def test_integrable_c4_and_exhausted(files, capsys):
    code, rep, _ = run(["integrable", files["c4"]], capsys)
    assert code == 0 and rep["results"]["shift"] == 2
    code, rep, _ = run(["integrable", files["c4"], "--max-dim", "1"], capsys)
    assert code == 1 and rep["results"]["status"] == "impossible at max_dim"


def test_hoffman_command(files, capsys):
    p = files["dir"] / "h.json"
    p.write_text(json.dumps({"vertices": 4, "edges": [[0, 1, "+"], [0, 2, "+"], [0, 3, "+"]], "labels": ["s", "f", "f", "f"]}))
    code, rep, _ = run(["hoffman", p, "--probe", "1,10"], capsys)
    assert code == 0 and rep["results"]["special_matrix"] == [[-3]]
    assert rep["results"]["forbidden_witness"]["catalog_index"] == 0
    assert [n for n, _ in rep["results"]["probe"]["rows"]] == [1, 10]


def test_checks_command(capsys):
    code, rep, err = run(["checks", "switching", "--seed", "7"], capsys)
    assert code == 0 and rep["results"]["passed"] == 200 and rep["seed"] == 7
    code, rep, _ = run(["checks", "catalog"], capsys)
    assert code == 0 and not rep["results"]["failures"]


def test_usage_error_exit_code(capsys):
    assert main(["checks", "nope"]) == 2
    capsys.readouterr()


def test_report_file_and_module_entry(files, tmp_path):
    out = tmp_path / "r.json"
    res = subprocess.run([sys.executable, "-m", "sgstruct", "--report", str(out), "spectrum", str(files["k3m"])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == ""
    assert json.loads(out.read_text())["results"]["smallest"] == -2.0
