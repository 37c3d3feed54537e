import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from pinchuk import cli
from pinchuk.fibers import classify, real_fiber
from pinchuk.system import IdentityCheck


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    report = json.loads(out)
    assert report["schema"] == 1
    return code, report


def test_verify_passes():
    code, out, _ = run("verify")
    assert code == 0
    assert "FAIL" not in out


def test_verify_deterministic():
    c1, r1 = run_json("verify")
    c2, r2 = run_json("verify")
    assert c1 == c2 == 0
    assert r1["result"] == r2["result"]


def test_verify_failure_exit_code(monkeypatch):
    monkeypatch.setattr(cli, "verify_identities",
                        lambda: [IdentityCheck("broken", False, "nonzero remainder: x")])
    code, out, _ = run("verify")
    assert code == 1
    assert "FAIL  broken" in out


def test_fiber_examples():
    code, report = run_json("fiber", "--point", "3", "0")
    assert code == 0 and report["result"]["real_count"] == 2
    code, report = run_json("fiber", "--point", "0", "0")
    assert code == 0 and report["result"]["real_count"] == 0
    assert report["inputs"]["point"] == ["0/1", "0/1"]


def test_fiber_json_round_trip():
    code, report = run_json("fiber", "--point", "3", "3142", "--eps", "1/1024")
    lib = real_fiber(3, 3142, Fraction(1, 1024))
    res = report["result"]
    assert res["real_count"] == lib.real_count
    assert res["complex_count"] == lib.complex_count
    assert [[Fraction(v) for v in iv] for iv in res["escaping_roots"]] == [[2, 2]]
    for got, p in zip(res["preimages"], lib.preimages):
        assert [Fraction(v) for v in got["x"]] == [p.x.lo, p.x.hi]
        assert [Fraction(v) for v in got["y"]] == [p.y.lo, p.y.hi]


def test_classify():
    code, report = run_json("classify", "--point", "3", "4000")
    assert code == 0
    assert report["result"]["kind"] == classify(3, 4000).kind.value
    assert report["result"]["side_parity"] == "odd"
    code, report = run_json("classify", "--point", "3", "3142")
    assert report["result"]["curve_params"] == [{"exact": "1/1"}]


def test_sturm():
    code, report = run_json("sturm", "--poly", "x^2-2")
    assert code == 0
    res = report["result"]
    assert res["count"] == 2
    (lo1, hi1), (lo2, hi2) = [[Fraction(v) for v in iv] for iv in res["roots"]]
    assert lo1 ** 2 > 2 > hi1 ** 2 and lo2 ** 2 < 2 < hi2 ** 2
    assert hi2 - lo2 <= Fraction(1, 2 ** 30)


def test_sturm_text_output():
    code, out, _ = run("sturm", "--poly", "x^3 - x")
    assert code == 0 and "3 distinct real roots" in out


@pytest.mark.parametrize("argv", [
    ["sturm", "--poly", "x^"],
    ["sturm", "--poly", "x*y"],
    ["sturm"],
    ["fiber"],
    ["fiber", "--point", "1.5", "2"],
    ["fiber", "--point", "1", "2", "--eps", "0"],
    ["nonsense"],
    ["plot"],
    ["curve", "--from", "1", "--to", "0"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert err.startswith("pinchuk: error:")


def test_sturm_parse_error_reports_offset():
    _, _, err = run("sturm", "--poly", "x^")
    assert "offset 2" in err


def test_curve_csv(tmp_path):
    path = tmp_path / "c.csv"
    code, out, _ = run("curve", "--from", "-3", "--to", "1", "--samples", "5", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "s,a,b" and lines[1] == "-3,3,8406" and lines[-1] == "1,3,3142"


def test_plot(tmp_path):
    path = tmp_path / "p.svg"
    code, report = run_json("plot", "--window", "-10", "-10", "10", "10",
                            "--resolution", "128", "--out", str(path))
    assert code == 0
    assert report["result"]["preimage_components"] == 3
    ET.parse(path)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pinchuk", "fiber", "--point", "3", "0"],
                          capture_output=True, text=True, check=True)
    assert "real preimages: 2" in proc.stdout
