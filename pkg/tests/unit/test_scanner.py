"""
Unit tests for scan configuration, records, the runner and the reference
exponents.
"""
import io
import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from arith import ConsistencyError, make_modulus
from events import EVENT_MODULUS_DONE, EVENT_SCAN_END, EVENT_SCAN_START
from scanner import (
    CSV_COLUMNS,
    ConfigError,
    ScanConfig,
    ScanRecord,
    SiegelConfig,
    build_scan_config,
    load_config_file,
    main_exponent,
    merge_options,
    read_csv,
    read_json,
    reference_exponent,
    run_scan,
    scan_modulus,
    select_moduli,
    summarize,
    write_csv,
    write_json,
    write_scan,
    x_threshold,
    PRIME_EXPONENTS,
    SIEGEL_EXPONENT,
)
from scanner.theorem import delta
from tests.utils.test_helpers import brute_is_prime, temp_config_file


class TestTheorem:
    def test_r2_reference_exponent(self):
        assert main_exponent(2) == pytest.approx(0.25 + 1 / (4 * (1 - 0.0044560)))

    def test_delta_table(self):
        assert delta(3) == 0.074267
        assert delta(4) == 0.103974
        assert delta(5) == delta(9) == 0.1249

    def test_r1_has_no_reference(self):
        assert reference_exponent(1) is None
        assert reference_exponent(3) == main_exponent(3)

    def test_exponents_decrease_with_r(self):
        values = [main_exponent(r) for r in range(2, 9)]
        assert values == sorted(values, reverse=True)
        assert all(v > 0.25 for v in values)

    def test_prime_exponents(self):
        assert PRIME_EXPONENTS[2] == pytest.approx(0.50114547537)
        assert SIEGEL_EXPONENT == 0.75

    def test_x_threshold(self):
        assert x_threshold(1009, 2, 0.01) == pytest.approx(1009 ** (main_exponent(2) + 0.15))


class TestConfig:
    def test_defaults(self):
        config = ScanConfig()
        assert (config.start, config.end, config.filter, config.r, config.jobs) == (3, 1000, "all", [1, 2], 1)
        assert config.resolved_epsilon == pytest.approx(0.0192 ** 2)

    def test_aliases_and_field_names(self):
        assert ScanConfig(**{"from": 10, "to": 20}).start == 10
        assert ScanConfig(start=10, end=20).end == 20
        assert ScanConfig(start=10, end=20).echo()["from"] == 10

    @pytest.mark.parametrize("bad", [
        {"start": 2},
        {"start": 50, "end": 40},
        {"r": [5]},
        {"r": []},
        {"jobs": 0},
        {"eta": 1.5},
        {"filter": "squares"},
        {"limit_policy": "fixed:1"},
        {"limit_policy": "sometimes"},
        {"unknown_key": 1},
    ])
    def test_invalid(self, bad):
        with pytest.raises(ValidationError):
            ScanConfig(**bad)

    def test_echo_resolves_epsilon(self):
        assert ScanConfig(eta=0.1).echo()["epsilon"] == pytest.approx(0.01)
        assert ScanConfig(eta=0.1, epsilon=0.5).echo()["epsilon"] == 0.5

    def test_r_as_string(self):
        assert ScanConfig(r="4,2,2").r == [2, 4]

    def test_siegel_eta_ceiling(self):
        assert SiegelConfig(q=7, x=1000).eta == 0.0192
        with pytest.raises(ValidationError):
            SiegelConfig(q=7, x=1000, eta=0.02)
        with pytest.raises(ValidationError):
            SiegelConfig(q=7, x=1000, z=1)

    def test_file_values_and_cli_override(self):
        with temp_config_file({"from": 5, "to": 30, "limit-policy": "fixed:100", "jobs": 2}) as path:
            config = build_scan_config(path, end=40, jobs=None)
        assert config.start == 5
        assert config.end == 40
        assert config.limit_policy == "fixed:100"
        assert config.jobs == 2

    def test_merge_ignores_missing_cli_values(self):
        assert merge_options({"a": 1, "b": 2}, {"a": None, "b": 3}) == {"a": 1, "b": 3}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config_file(str(tmp_path / "absent.yaml"))

    def test_file_must_be_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_config_file(str(path))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config_file(str(path)) == {}


class TestRecords:
    def test_scan_modulus_row(self):
        record = scan_modulus(7, [1, 2], "auto")
        assert record.c0 == "1/3"
        assert record.g == {1: 3, 2: 3}
        row = record.to_row()
        assert list(row) == CSV_COLUMNS
        assert row["g3"] == "" and row["ratio3"] == ""
        assert row["ratio1"] == "0.564575034054"
        assert row["limit_hit"] == ""

    def test_unit_fraction_c0(self):
        assert scan_modulus(4, [1], "auto").c0 == "1/2"

    def test_not_found_goes_to_limit_column(self):
        record = scan_modulus(71, [1, 2], "fixed:6")
        # the least primitive root mod 71 is 7
        assert record.g == {1: None, 2: None}
        row = record.to_row()
        assert row["g1"] == "" and row["ratio1"] == ""
        assert row["limit_hit"] == "1:6;2:6"

    def test_no_ratio_when_qc_is_one(self):
        row = scan_modulus(16, [1], "auto").to_row()
        assert row["g1"] == "3" and row["ratio1"] == ""

    def test_csv_round_trip(self):
        records = [scan_modulus(q, [1, 2, 4], "auto") for q in range(3, 60)]
        stream = io.StringIO()
        write_csv(records, stream, summarize(records, [1, 2, 4]))
        stream.seek(0)
        assert read_csv(stream, [1, 2, 4]) == records

    def test_csv_layout(self):
        records = [scan_modulus(q, [2], "auto") for q in (5, 7)]
        stream = io.StringIO()
        write_csv(records, stream, summarize(records, [2]))
        lines = stream.getvalue().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert "\r" not in stream.getvalue()
        assert lines[3].startswith("# r=2,max_ratio=")

    def test_header_only_when_empty(self):
        stream = io.StringIO()
        assert write_csv([], stream, summarize([], [1])) == 0
        assert stream.getvalue() == ",".join(CSV_COLUMNS) + "\n"

    def test_json_round_trip(self):
        config = ScanConfig(start=3, end=30, r=[1, 3])
        records = [scan_modulus(q, config.r, config.limit_policy) for q in range(3, 31)]
        stream = io.StringIO()
        write_json(records, stream, config.echo(), summarize(records, config.r))
        payload = json.loads(stream.getvalue())
        assert payload["config"]["from"] == 3
        assert len(payload["records"]) == 28
        assert payload["records"][0]["c0"] == "1/2"
        stream.seek(0)
        assert read_json(stream) == records

    def test_c0_fraction(self):
        record = scan_modulus(8, [1], "auto")
        assert record.c0_fraction == Fraction(3, 4)


class TestRunner:
    @pytest.mark.parametrize("filter_name, expected", [
        ("all", list(range(3, 21))),
        ("primes", [3, 5, 7, 11, 13, 17, 19]),
        ("prime-powers", [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]),
        ("cyclic", [3, 4, 5, 6, 7, 9, 10, 11, 13, 14, 17, 18, 19]),
    ])
    def test_select_moduli(self, filter_name, expected):
        assert select_moduli(ScanConfig(start=3, end=20, filter=filter_name)) == expected

    def test_run_scan_in_order(self, event_recorder):
        handler = event_recorder(EVENT_SCAN_START, EVENT_MODULUS_DONE, EVENT_SCAN_END)
        records = run_scan(ScanConfig(start=3, end=40, filter="primes", r=[1, 2]))
        assert [r.q for r in records] == [q for q in range(3, 41) if brute_is_prime(q)]
        assert handler.call_count == len(records) + 2

    def test_rows_are_reverified(self, mocker):
        mocker.patch("scanner.runner.gamma_direct", return_value=0)
        with pytest.raises(ConsistencyError):
            scan_modulus(7, [1], "auto")

    def test_summary(self):
        records = run_scan(ScanConfig(start=100, end=400, filter="primes", r=[2]))
        (summary,) = summarize(records, [2])
        assert summary.max_ratio == max(r.ratio[2] for r in records)
        assert summary.reference_exponent == pytest.approx(main_exponent(2))
        assert summary.prime_exponent == pytest.approx(PRIME_EXPONENTS[2])
        assert summary.not_found == 0

    def test_summary_threshold_follows_eta(self):
        records = run_scan(ScanConfig(start=3, end=300, r=[1, 2]))
        first, second = summarize(records, [1, 2], eta=0.0)
        assert first.threshold_exponent is None and first.above_threshold is None
        assert second.threshold_exponent == pytest.approx(main_exponent(2))
        expected = sum(1 for rec in records if rec.q_c > 1 and rec.g[2] is not None and rec.g[2] > rec.q_c ** main_exponent(2))
        assert second.above_threshold == expected
        (loose,) = summarize(records, [2], eta=0.05)
        assert loose.above_threshold <= second.above_threshold
        assert "above_threshold=" in loose.footer_line()

    def test_summary_without_eta_has_no_threshold(self):
        (summary,) = summarize([scan_modulus(7, [2], "auto")], [2])
        assert summary.threshold_exponent is None
        assert summary.footer_line().endswith("threshold_exponent=,above_threshold=")

    def test_write_scan_to_file(self, tmp_path):
        out = tmp_path / "scan.csv"
        config = ScanConfig(start=3, end=15, out=str(out))
        records = run_scan(config)
        assert write_scan(records, config) == 13
        assert read_csv(io.StringIO(out.read_text(encoding="utf-8")), config.r) == records

    def test_write_scan_to_missing_directory(self, tmp_path):
        config = ScanConfig(start=3, end=5, out=str(tmp_path / "no" / "such" / "dir.csv"))
        with pytest.raises(OSError):
            write_scan(run_scan(config), config)

    def test_record_fields_match_modulus(self):
        record = scan_modulus(54, [1], "auto")
        mod = make_modulus(54)
        assert (record.q_c, record.phi, record.E) == (mod.qc, mod.phi, mod.bigE)
        assert isinstance(record, ScanRecord)
