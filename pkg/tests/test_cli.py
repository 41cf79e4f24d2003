import io
import json

import pytest

from gkmforge.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(map(str, argv)), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    names = ["cp1-graph", "cp2-graph", "cp2-fan", "cp2-generators", "cp1-k-generators", "s1-z4-model",
             "s1-z4-bundle", "bad-cover-3", "cp2-samples", "cp1-tcw", "cp1xcp1-graph"]
    paths = {}
    for n in names:
        p = tmp_path / f"{n}.json"
        assert call("ingest", "example", n, "--out", p)[0] == 0
        paths[n] = p
    return paths


def test_section_prints_roots_of_unity(files):
    code, out, _ = call("sheaf", "section", "--model", files["s1-z4-model"], "--bundle", files["s1-z4-bundle"])
    assert code == 0
    lines = [l for l in out.splitlines() if "orbit:" in l]
    assert [l.split("orbit: ")[1].split()[0] for l in lines] == ["1", "zeta4", "-1", "-zeta4"]


def test_global_flags_are_echoed(files):
    code, out, _ = call("--cutoff", "3", "--window", "2", "gkm", "dims", "--graph", files["cp1-graph"], "--degree", "2")
    assert code == 0 and out.startswith("# cutoff=3 window=2")
    code, out, _ = call("gkm", "dims", "--graph", files["cp1-graph"], "--json")
    data = json.loads(out)
    assert data["params"] == {"cutoff": 6, "window": 3}


def test_verified_false_exit_code(files):
    code, out, _ = call("cover", "verify", "--cover", files["bad-cover-3"])
    assert code == 1 and "condition 3" in out


def test_cs_compare(files):
    assert call("gkm", "cs-compare", "--graph", files["cp2-graph"], "--gens", files["cp2-generators"])[0] == 0
    assert call("--window", "2", "gkm", "cs-compare", "--graph", files["cp1-graph"], "--gens",
                files["cp1-k-generators"], "--theory", "K")[0] == 0


def test_cover_build(files, tmp_path):
    out_path = tmp_path / "cover.json"
    code, out, _ = call("cover", "build", "--model", files["cp2-graph"], "--samples", files["cp2-samples"],
                        "--out", out_path)
    assert code == 0 and "adapted: True" in out
    assert call("cover", "verify", "--cover", out_path)[0] == 0


def test_fan_ingest(files):
    code, out, _ = call("ingest", "fan", "--file", files["cp2-fan"])
    assert code == 0 and out.count("weight") == 3


def test_latt_and_tcw(files):
    code, out, _ = call("latt", "annihilator", "--free-rank", "2", "--point", "1/2,1/3")
    assert code == 0 and "[[2, 0], [0, 3]]" in out
    assert call("latt", "member", "--free-rank", "1", "--point", "1/3", "--gens", "2")[0] == 1
    code, out, _ = call("tcw", "skeleton", "--tcw", files["cp1-tcw"])
    assert code == 0 and out.splitlines()[1].startswith("3 cells")


def test_chern_certificate():
    code, out, _ = call("chern", "certificate", "--presentation", "cp2", "--n", "3")
    assert code == 0 and "certificate passed: True" in out


def test_product(files, tmp_path):
    p = tmp_path / "prod.json"
    assert call("gkm", "product", "--graph", files["cp1-graph"], "--other", files["cp1-graph"], "--out", p)[0] == 0
    a = call("gkm", "dims", "--graph", p, "--degree", "3", "--json")[1]
    b = call("gkm", "dims", "--graph", files["cp1xcp1-graph"], "--degree", "3", "--json")[1]
    assert json.loads(a)["dims"] == json.loads(b)["dims"]


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "gkm-forge/1", "kind": "graph", "group": {"free_rank": 1}, '
                   '"vertices": ["N", "S"], "edges": [{"u": "N", "v": "S", "w": [0]}]}')
    code, _, err = call("gkm", "dims", "--graph", bad)
    assert code == 2 and "/edges/0" in err
    assert call("bogus")[0] == 2
    assert call("cover", "verify")[0] == 2
    assert call("gkm", "dims", "--graph", tmp_path / "missing.json")[0] == 2
    assert call("--cutoff", "-1", "ingest", "list")[0] == 2


def test_sheaf_glue_check(files):
    code, out, _ = call("sheaf", "glue-check", "--model", files["s1-z4-model"], "--cutoff", "2")
    assert code == 0 and "hold" in out


def test_output_is_byte_identical_across_runs(files):
    for argv in (("sheaf", "section", "--model", files["s1-z4-model"], "--bundle", files["s1-z4-bundle"], "--json"),
                 ("gkm", "basis", "--graph", files["cp2-graph"], "--degree", "2"),
                 ("cover", "verify", "--cover", files["bad-cover-3"], "--json")):
        assert call(*argv) == call(*argv)
