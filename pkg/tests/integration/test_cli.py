"""
Integration tests for the lamroot command line.
"""
import io
import json
from fractions import Fraction

import pytest

import lamroot
from identity_verifier import verify_identities
from scanner import CSV_COLUMNS, build_scan_config, format_float, main_exponent, read_csv, run_scan
from tests.utils.test_helpers import temp_config_file


def _lines(capsys):
    return capsys.readouterr().out.splitlines()


@pytest.mark.integration
def test_verify_passes(capsys):
    assert lamroot.main(["verify", "--qmax", "40"]) == lamroot.EXIT_OK
    out = _lines(capsys)
    assert out[-1] == "RESULT: PASS"
    assert any(line.strip().startswith("count") and "38/38 passed" in line for line in out)


@pytest.mark.integration
def test_verify_reports_a_violation(mocker, capsys):
    def corrupt(G):
        coeffs = list(G.coefficients)
        if G.modulus.q == 11:
            coeffs[0] += Fraction(1, 5)
        return coeffs

    mocker.patch("lamroot.verify_identities", side_effect=lambda qmax: verify_identities(qmax, coefficient_hook=corrupt))
    assert lamroot.main(["verify", "--qmax", "15"]) == lamroot.EXIT_VIOLATION
    out = capsys.readouterr().out
    assert "FIRST FAILURE: q=11" in out
    assert "RESULT: FAIL" in out


@pytest.mark.integration
def test_usage_errors():
    assert lamroot.main(["verify", "--qmax", "2"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["scan", "--from", "50", "--to", "10"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["scan", "--from", "3", "--to", "10", "--r", "1,7"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["scan", "--from", "3", "--to", "10", "--limit-policy", "fixed:1"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["siegel", "--q", "9", "--x", "100"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["siegel", "--q", "7", "--x", "100", "--eta", "0.05"]) == lamroot.EXIT_USAGE
    assert lamroot.main(["pthpower", "--p", "11", "--m", "1,x"]) == lamroot.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        lamroot.main(["scan", "--filter", "squares"])
    assert exc.value.code == 2


@pytest.mark.integration
def test_missing_config_file_is_a_usage_error(tmp_path):
    missing = tmp_path / "nope.yaml"
    assert lamroot.main(["scan", "--config", str(missing)]) == lamroot.EXIT_USAGE


@pytest.mark.integration
def test_unwritable_output_is_an_io_error(tmp_path):
    out = tmp_path / "no_such_dir" / "scan.csv"
    assert lamroot.main(["scan", "--from", "3", "--to", "20", "--out", str(out)]) == lamroot.EXIT_IO


@pytest.mark.integration
def test_scan_is_identical_for_any_job_count(tmp_path):
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    common = ["scan", "--from", "3", "--to", "600", "--r", "1,2,3"]
    assert lamroot.main(common + ["--jobs", "1", "--out", str(serial)]) == lamroot.EXIT_OK
    assert lamroot.main(common + ["--jobs", "8", "--out", str(parallel)]) == lamroot.EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()
    assert b"\r\n" not in serial.read_bytes()


@pytest.mark.integration
def test_scan_csv_round_trip(tmp_path):
    out = tmp_path / "primes.csv"
    assert lamroot.main(["scan", "--from", "100", "--to", "400", "--filter", "primes", "--out", str(out)]) == lamroot.EXIT_OK
    with open(out, encoding="utf-8") as f:
        parsed = read_csv(f, [1, 2])
    expected = run_scan(build_scan_config(start=100, end=400, filter="primes"))
    assert parsed == expected
    assert [rec.q for rec in parsed][:3] == [101, 103, 107]
    footer = [line for line in out.read_text().splitlines() if line.startswith("#")]
    assert [line.split(",")[0] for line in footer] == ["# r=1", "# r=2"]


@pytest.mark.integration
def test_scan_from_config_file_with_override(tmp_path):
    out = tmp_path / "from_file.csv"
    with temp_config_file({"from": 3, "to": 30, "filter": "prime-powers", "out": str(out)}) as path:
        assert lamroot.main(["scan", "--config", path, "--to", "20"]) == lamroot.EXIT_OK
    with open(out, encoding="utf-8") as f:
        records = read_csv(f, [1, 2])
    assert [rec.q for rec in records] == [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]


@pytest.mark.integration
def test_empty_range_writes_header_only(capsys):
    assert lamroot.main(["scan", "--from", "24", "--to", "28", "--filter", "primes"]) == lamroot.EXIT_OK
    assert capsys.readouterr().out == ",".join(CSV_COLUMNS) + "\n"


@pytest.mark.integration
def test_scan_json(capsys):
    assert lamroot.main(["scan", "--from", "3", "--to", "12", "--format", "json"]) == lamroot.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"config", "records", "summary"}
    assert payload["config"]["from"] == 3 and payload["config"]["to"] == 12
    assert [rec["q"] for rec in payload["records"]] == list(range(3, 13))
    assert payload["records"][0]["g1"] == 2


@pytest.mark.integration
def test_decompose(capsys):
    assert lamroot.main(["decompose", "--q", "7"]) == lamroot.EXIT_OK
    out = _lines(capsys)
    assert "c0 = 1/3" in out
    header = out.index("exponents,order,c_chi")
    rows = out[header + 1:]
    assert len(rows) == 6
    assert sum(Fraction(row.rsplit(",", 1)[1]) for row in rows) == 0
    assert rows[0] == '"0",1,1/3'


@pytest.mark.integration
def test_pthpower(capsys):
    assert lamroot.main(["pthpower", "--p", "11", "--m", "1,2"]) == lamroot.EXIT_OK
    out = _lines(capsys)
    assert out[0] == "m,bound,B,p^(1/(2m)),log_ratio"
    # 3^5 = 243 = 1 mod 121, so the 11th powers below 11 are 1, 3 and 9
    assert out[1].startswith("1,11,3,")
    assert out[2].startswith("2,3,2,")


@pytest.mark.integration
def test_remainder(capsys):
    assert lamroot.main(["remainder", "--q", "7", "--x", "200", "--dmax", "6"]) == lamroot.EXIT_OK
    out = _lines(capsys)
    assert out[0] == "d,direct,character,main_term,envelope"
    rows = [line.split(",") for line in out[1:7]]
    assert [row[0] for row in rows] == ["1", "2", "3", "4", "5", "6"]
    for row in rows:
        assert abs(float(row[1]) - float(row[2])) < 1e-6 * (1 + abs(float(row[1])))
    assert out[7].startswith("# weighted sum over d <=")


@pytest.mark.integration
def test_siegel(capsys):
    assert lamroot.main(["siegel", "--q", "7", "--x", "1000"]) == lamroot.EXIT_OK
    out = _lines(capsys)
    assert "q = 7" in out
    assert "z = x^(1/3)" in out
    checks = [line for line in out if line.startswith("check ")]
    assert len(checks) == 5
    assert all(line.endswith("PASS") for line in checks)


@pytest.mark.integration
def test_siegel_reports_eta_dependent_sums(capsys):
    assert lamroot.main(["siegel", "--q", "7", "--x", "1000"]) == lamroot.EXIT_OK
    default = _lines(capsys)
    assert "eta = 0.0192" in default
    assert "least_prime_primitive_root = 3" in default
    assert "siegel_ratio = 0.564575034054 (exponent 0.75)" in default
    assert lamroot.main(["siegel", "--q", "7", "--x", "1000", "--eta", "0.01"]) == lamroot.EXIT_OK
    smaller = _lines(capsys)
    assert "eta = 0.01" in smaller

    def weighted(lines):
        return next(line for line in lines if line.startswith("weighted_remainder_H = "))

    assert weighted(default) != weighted(smaller)


@pytest.mark.integration
def test_scan_footer_follows_eta(tmp_path):
    footers = {}
    for eta in ("0.0192", "0.01"):
        out = tmp_path / f"eta_{eta}.csv"
        args = ["scan", "--from", "100", "--to", "400", "--filter", "primes", "--r", "2", "--eta", eta, "--out", str(out)]
        assert lamroot.main(args) == lamroot.EXIT_OK
        (footers[eta],) = [line for line in out.read_text().splitlines() if line.startswith("#")]
    expected = format_float(main_exponent(2) + 15 * 0.01)
    assert f"threshold_exponent={expected}," in footers["0.01"]
    assert footers["0.01"] != footers["0.0192"]
