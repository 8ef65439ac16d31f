import io
import json
import subprocess
import sys


from toric_dt.cli import main
from toric_dt.series import TruncatedSeries


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_series_universal_conifold():
    code, text = run("series", "universal", "--n0", "1", "--n1", "1", "--sigma", "01", "--degree", "4",
                     "--style", "v")
    assert code == 0
    assert "y0*y1: v^6/(v^4 - 2*v^2 + 1)" in text


def test_series_points():
    code, text = run("series", "points", "--n0", "1", "--n1", "1", "--degree", "4", "--style", "v")
    assert code == 0
    assert "s: -v^3 - v" in text


def test_series_degree_zero():
    code, text = run("series", "universal", "--degree", "0")
    assert code == 0 and text.strip().splitlines()[-1] == "1"


def test_series_json_round_trip():
    code, text = run("series", "dt", "--sigma", "010", "--degree", "5", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["config"]["resolved"]["sigma"] == "010"
    series = TruncatedSeries.from_json(data["series"])
    assert TruncatedSeries.from_json(series.to_json()) == series


def test_framed_non_generic():
    code, _ = run("series", "framed", "--sigma", "01", "--zeta-base", "1,-1")
    assert code == 2


def test_framed_ok():
    code, _ = run("series", "framed", "--sigma", "01", "--zeta-base=-1,-1", "--zeta-eps=0,0")
    assert code == 0


def test_invalid_sigma():
    assert run("series", "universal", "--sigma", "0a1")[0] == 2
    assert run("series", "universal", "--sigma", "011")[0] == 2


def test_verify_thm_a():
    code, text = run("verify", "thm-a", "--n0", "1", "--n1", "1", "--sigma", "01", "--alpha", "1,1",
                     "--primes", "2,3", "--format", "json")
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0
    assert [r["status"] for r in lines[1:]] == ["pass", "pass"]
    assert {"check", "model", "alpha", "prime", "expected", "actual", "status", "elapsed_ms"} <= set(lines[1])


def test_verify_skipped_is_not_failure():
    code, text = run("verify", "thm-a", "--sigma", "01", "--alpha", "3,3", "--primes", "3", "--budget", "10")
    assert code == 0 and "SKIPPED" in text


def test_verify_dtpt():
    code, _ = run("verify", "dtpt", "--n0", "2", "--n1", "1", "--sigma", "010", "--degree", "6")
    assert code == 0


def test_verify_appendix_vacuous():
    assert run("verify", "appendix", "--max-boxes", "0")[0] == 0


def test_verify_small_suites():
    assert run("verify", "factorization", "--n0", "2", "--n1", "0", "--degree", "3")[0] == 0
    assert run("verify", "qseries", "--degree", "4")[0] == 0
    assert run("verify", "reflection", "--degree", "4")[0] == 0
    assert run("verify", "appendix", "--max-boxes", "2", "--models", "1,1")[0] == 0


def test_roots():
    code, text = run("roots", "--n", "2", "--sigma", "01", "--degree", "2")
    assert code == 0 and text.strip().endswith("3 roots")
    code, text = run("roots", "--n", "1", "--degree", "2", "--format", "json")
    data = json.loads(text)
    assert {r["kind"] for r in data["roots"]} == {"imaginary"}


def test_flip():
    code, text = run("flip", "--sigma", "01", "--k", "0", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["flipped"] == "10" and data["round_trip"]
    assert run("flip", "--sigma", "00", "--k", "0")[0] == 2


def test_quiver():
    code, text = run("quiver", "--sigma", "0", "--format", "json")
    assert code == 0 and json.loads(text)["quiver"]["loops"] == [0]


def test_bad_usage():
    assert run("series")[0] == 2
    assert run("series", "universal", "--degree", "-1")[0] == 2


def test_deterministic_output():
    args = ("series", "pt", "--sigma", "010", "--degree", "6", "--format", "json")
    assert run(*args)[1] == run(*args)[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "toric_dt", "roots", "--n", "1", "--degree", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "imaginary" in res.stdout
