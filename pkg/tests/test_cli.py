import json
import shutil
import subprocess
import sys

import pytest

from bframe.classify import ClassCatalog
from bframe.cli import main
from bframe.verify import CHECKS, Fixtures


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.startswith("bframe 0.1.0")


def test_no_command(capsys):
    assert run(capsys)[0] == 1


def test_bad_arguments_exit_1(capsys):
    assert run(capsys, "classify")[0] == 1
    assert run(capsys, "classify", "--group", "zpq:4,2")[0] == 1
    assert run(capsys, "weight", "--group", "zpq:3,2")[0] == 1
    assert run(capsys, "weight", "--group", "zpq:3,2", "--mask", "zz")[0] == 1
    assert run(capsys, "weight", "--group", "zpq:3,2", "--mask", "2")[0] == 1
    assert run(capsys, "weight", "--group", "cyclic:9", "--elements", "12")[0] == 1
    assert run(capsys, "weight", "--gram", "/nonexistent/file")[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_capacity_exit_2(capsys):
    code, _, err = run(capsys, "enumerate", "--group", "cyclic:63", "--mode", "brute")
    assert code == 2 and "inversion classes" in err
    assert run(capsys, "classify", "--group", "zpq:5,3")[0] == 2


def test_classify_json_round_trip(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, stdout, _ = run(capsys, "classify", "--group", "zpq:3,2", "--weights", "--out", str(out))
    assert code == 0 and "total 5" in stdout
    record = json.loads(out.read_text())
    assert (record["unitary_classes"], record["automorphic_classes"]) == (16, 5)
    cat = ClassCatalog.from_json(record)
    assert sorted((c.rank, c.code_weight) for c in cat.classes) == [(1, 9), (3, 3), (5, 3), (7, 2), (9, 1)]


def test_classify_csv_and_polya(capsys):
    code, out, _ = run(capsys, "classify", "--group", "cyclic:27", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("gram_rank,") and len(lines) == 9
    code, out, _ = run(capsys, "classify", "--group", "zpq:3,3", "--mode", "polya")
    assert code == 0 and json.loads(out)["total"] == 30


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "cyclic:6")
    assert code == 0 and [e["support"] for e in json.loads(out)["etas"]] == [["0"], ["0", "2", "4"]]
    code, out, _ = run(capsys, "enumerate", "--group", "cyclic:17", "--mode", "sdo")
    assert json.loads(out)["count"] == 4


def test_weight_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "weight", "--group", "cyclic:9", "--elements", "3")
    rec = json.loads(out)
    assert code == 0 and (rec["dim"], rec["weight"], rec["erasure_max"], rec["bitflip_max"]) == (3, 3, 2, 1)
    code, out2, _ = run(capsys, "weight", "--group", "cyclic:9", "--mask", "5")
    assert json.loads(out2)["weight"] == 3
    gram = tmp_path / "g.mat"
    gram.write_text(Fixtures().text("z3sq_gram.mat"))
    code, out3, _ = run(capsys, "weight", "--gram", str(gram), "--strategy", "dual")
    assert code == 0 and json.loads(out3)["dim"] == 5


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "--group", "cyclic:9", "--elements", "3", "--m", "3")
    rec = json.loads(out)
    assert code == 0 and rec["failed"] > 0 and rec["witness"] is not None
    code, out, _ = run(capsys, "simulate", "--group", "cyclic:9", "--elements", "3", "--channel", "bitflip",
                       "--m", "1", "--trials", "500")
    rec = json.loads(out)
    assert rec["recovered"] == 500 and rec["ambiguous_error"] is None


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--p", "3", "--q", "2")
    assert code == 0 and len(out.strip().splitlines()) == 6
    code, out, _ = run(capsys, "compare", "--p", "3", "--q", "2", "--format", "json")
    assert len(json.loads(out)) == 5


def test_verify_list_and_only(capsys):
    code, out, _ = run(capsys, "verify-paper", "--list")
    assert code == 0 and len(out.strip().splitlines()) == len(CHECKS)
    code, out, _ = run(capsys, "verify-paper", "--only", "z6")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) == 2
    assert run(capsys, "verify-paper", "--only", "bogus")[0] == 1


def test_verify_strict_counts_known_difference(capsys):
    assert run(capsys, "verify-paper", "--only", "z3sq-table")[0] == 0
    code, out, _ = run(capsys, "verify-paper", "--only", "z3sq-table", "--strict")
    assert code == 1 and "DIFF" in out


def copy_fixtures(tmp_path):
    fx = Fixtures()
    for name in Fixtures.FILES:
        (tmp_path / name).write_text(fx.text(name))
    return tmp_path


def test_corrupted_fixture_fails(capsys, tmp_path):
    d = copy_fixtures(tmp_path)
    path = d / "gabor_theta2.mat"
    rows = path.read_text().splitlines()
    # flip one bit of the first data row
    idx = next(i for i, r in enumerate(rows) if r.strip() and not r.startswith("#"))
    row = rows[idx]
    rows[idx] = ("1" if row[0] == "0" else "0") + row[1:]
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = run(capsys, "verify-paper", "--only", "gabor-hw3", "--fixtures", str(d))
    assert code != 0 and "FAIL" in out
    assert run(capsys, "verify-paper", "--only", "gabor-hw3", "--fixtures", str(copy_fixtures(tmp_path)))[0] == 0


def test_missing_fixture_exit_2(capsys, tmp_path):
    d = copy_fixtures(tmp_path)
    (d / "hw3.cayley").unlink()
    assert run(capsys, "verify-paper", "--only", "z6", "--fixtures", str(d))[0] == 2


@pytest.mark.parametrize("p,orbits,lines,per", [(3, 4, 4, [1]), (7, 8, 8, [1]), (17, 36, 18, [2])])
def test_plot_sdo(capsys, tmp_path, p, orbits, lines, per):
    svg = tmp_path / "s.svg"
    code, out, _ = run(capsys, "plot-sdo", "--group", f"zpq:{p},2", "--out", str(svg))
    assert code == 0 and svg.read_text().startswith("<svg")
    data = json.loads(svg.with_suffix(".json").read_text())
    assert len(data["orbits"]) == orbits and len(data["lines"]) == lines
    assert sorted({len(ln["orbits"]) for ln in data["lines"]}) == per
    assert sum(len(o["points"]) for o in data["orbits"]) == p * p - 1


def test_plot_sdo_rejects(capsys, tmp_path):
    assert run(capsys, "plot-sdo", "--group", "zpq:3,3", "--out", str(tmp_path / "x.svg"))[0] == 1
    assert run(capsys, "plot-sdo", "--group", "zpq:67,2", "--out", str(tmp_path / "x.svg"))[0] == 2


@pytest.mark.skipif(shutil.which("bframe") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["bframe", "verify-paper", "--only", "z7"], capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout


def test_module_entry():
    res = subprocess.run([sys.executable, "-m", "bframe", "--version"], capture_output=True, text=True)
    assert res.returncode == 0
