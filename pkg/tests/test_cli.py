import json
import subprocess
import sys

import pytest

from copyposet import structure as st
from copyposet.cli import main


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    return {
        "arc": write(tmp_path, "arc.json", {"size": 2, "pairs": [[0, 1]]}),
        "k3": write(tmp_path, "k3.json", st.complete_graph(3).to_dict()),
        "k2": write(tmp_path, "k2.json", st.complete_graph(2).to_dict()),
        "path": write(tmp_path, "path.json", {"size": 3, "pairs": [[1, 2], [0, 1]]}),
        "two": write(tmp_path, "two.json", {"size": 4, "pairs": [[0, 1], [2, 3]]}),
        "chain3": write(tmp_path, "chain3.json", {"size": 3, "leq": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 2], [0, 2]]}),
        "vee": write(tmp_path, "vee.json", {"size": 3, "leq": [[0, 2], [1, 2]]}),
        "tree1": write(tmp_path, "tree1.json", st.binary_tree(1).to_dict()),
        "tree2": write(tmp_path, "tree2.json", st.binary_tree(2).to_dict()),
        "bad": str(tmp_path / "bad.json"),
        "missing": str(tmp_path / "missing.json"),
        "dup": write(tmp_path, "dup.json", {"size": 2, "pairs": [[0, 1], [0, 1]]}),
    }


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "ordinal: w+w", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["cell"] == "D3" and data["term"] == "((P(w)/Fin)+)^2"
    assert set(data) == {"cell", "attributes", "term", "citations"}


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "--json", "classify", "eqrel: {n:1, w:2}")[1]
    second = run(capsys, "classify", "eqrel: {n:1, w:2}", "--json")[1]
    assert first == second


def test_ch_flag(capsys):
    out = json.loads(run(capsys, "classify", "ordinal: w+w", "--json", "--ch")[1])
    assert out["term"] == "(P(w)/Fin)+" and out["cell"] == "D3"


def test_sq_of_chain_collapses(capsys, files):
    code, out, _ = run(capsys, "sq", files["chain3"], "--json")
    assert code == 0
    assert json.loads(out)["size"] == 1
    assert run(capsys, "sq", files["chain3"])[1].startswith("quotient of size 1")
    assert json.loads(run(capsys, "sq", files["vee"], "--json")[1])["size"] == 3
    # a structure file stands for its poset of self-copies
    assert json.loads(run(capsys, "sq", files["k3"], "--json")[1])["size"] == 1


def test_structure_verbs(capsys, files):
    assert json.loads(run(capsys, "components", files["two"], "--json")[1]) == {"components": [[0, 1], [2, 3]], "connected": False}
    assert json.loads(run(capsys, "complement", files["arc"], "--json")[1]) == {"size": 2, "pairs": [[0, 0], [1, 0], [1, 1]]}
    assert json.loads(run(capsys, "induced", files["path"], "--subset", "0,2", "--json")[1]) == {"size": 2, "pairs": []}
    assert json.loads(run(capsys, "iso", files["k2"], files["arc"], "--json")[1])["isomorphic"] is False
    assert json.loads(run(capsys, "embed", files["k2"], files["k3"], "--json")[1])["count"] == 6
    assert json.loads(run(capsys, "copies", files["tree1"], files["tree2"], "--json")[1])["copies"] == [[0, 1, 2], [1, 3, 4], [2, 5, 6]]
    oracle = json.loads(run(capsys, "copies-oracle", "--parts", files["arc"], files["arc"], "--host-parts", files["arc"], files["arc"], "--json")[1])
    assert oracle == {"count": 1, "copies": [[0, 1, 2, 3]]}


def test_copies_analyzer_verbs(capsys, files):
    poset = json.loads(run(capsys, "poset", files["k2"], files["k3"], "--json")[1])
    assert poset["size"] == 3 and poset["labels"] == [[0, 1], [0, 2], [1, 2]]
    assert json.loads(run(capsys, "indivisible", files["k2"], files["k3"], "--json")[1]) == {"indivisible": True}
    assert json.loads(run(capsys, "ideal", files["k2"], files["k3"], "--json")[1]) == {"ideal": False, "avoiders": 4}
    ramsey = json.loads(run(capsys, "ramsey", files["k3"], "--k", "3", "--json")[1])
    assert ramsey["homogeneous"] == {"subset": [0, 1, 2], "class": "K1"}
    assert json.loads(run(capsys, "maximal-check", "lt", "5", "--json")[1])["maximal"] is True
    assert json.loads(run(capsys, "maximal-check", "path", "5", "--json")[1])["maximal"] is False
    dens = json.loads(run(capsys, "density", files["vee"], "--subset", "0", "--json")[1])
    assert dens["mode"] == "somewhere-dense" and dens["atoms"] == [0, 1]


def test_ordinal_verbs(capsys):
    assert json.loads(run(capsys, "ordinal", "w+w", "--json")[1]) == {"ordinal": "w*2", "indivisible": False, "limit": True}
    assert run(capsys, "ordinal", "w+1", "--mul", "w")[1].strip() == "w^2"
    assert run(capsys, "ordinal", "1", "--add", "w")[1].strip() == "w"
    assert run(capsys, "sq-formula", "w^2*3 + w*2 + 5")[1].strip() == "((rp^1(P(w)/Fin))+)^3 x ((P(w)/Fin)+)^2"


def test_exit_codes(capsys, files, tmp_path):
    (tmp_path / "bad.json").write_text("{oops")
    code, _, err = run(capsys, "embed", files["missing"], files["k3"])
    assert code == 1 and "missing.json" in err
    assert run(capsys, "components", files["dup"])[0] == 1
    assert run(capsys, "components", files["bad"])[0] == 3
    assert run(capsys, "ordinal", "w+")[0] == 3
    assert run(capsys, "classify", "example: unicorn")[0] == 1
    assert run(capsys, "sq-formula", "3")[0] == 1
    assert run(capsys, "embed", files["k2"], files["k3"], "--cap-nodes", "2")[0] == 2
    assert run(capsys, "iso", files["k2"], files["k3"], "--cap-size", "1")[0] == 2
    assert run(capsys, "no-such-verb")[0] == 3
    assert run(capsys, "maximal-check", "lt", "nine")[0] == 3


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "classifier-golden")
    assert code == 0 and out.startswith("PASS classifier-golden: 15 passed, 0 failed")
    data = json.loads(run(capsys, "verify", "ordinals", "--seed", "3", "--json")[1])
    assert data["ok"] and data["suites"][0]["failed"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "copyposet", "classify", "linear: Q", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["term"] == "S*pi"
