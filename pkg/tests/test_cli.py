import json

import pytest

from lottokit import greedy_cover, make_design, write_design_file
from lottokit.cli import main


def run_cli(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestProbCommands:
    def test_spectrum_table(self, capsys):
        code, out, err = run_cli(capsys, ["prob", "spectrum"])
        assert code == 0
        assert "6,096,454" in out and "43.596%" in out
        assert "5,775,588" in out and "41.302%" in out
        assert "13,238%" not in out and "13.238%" in out
        assert "0.0000072%" in out
        assert "13,983,816" in out

    def test_spectrum_json(self, capsys):
        code, out, _ = run_cli(capsys, ["prob", "spectrum", "-f", "json"])
        payload = json.loads(out)
        assert payload["schema"] == "lottokit/1"
        # Counts ride as strings so consumers with 53-bit numbers stay exact.
        rows = payload["entries"]
        assert rows[0]["combinations"] == "6096454"
        assert rows[6]["combinations"] == "1"
        assert rows[6]["probability"]["denominator"] == "13983816"
        assert payload["total"] == "13983816"

    def test_spectrum_csv(self, capsys):
        code, out, _ = run_cli(capsys, ["prob", "spectrum", "-f", "csv"])
        lines = out.strip().splitlines()
        assert lines[0].startswith("matches,")
        assert len(lines) == 8

    def test_portfolio_known_value(self, capsys):
        code, out, _ = run_cli(capsys,
                               ["prob", "portfolio", "--tickets", "142361"])
        assert code == 0
        assert "92.937%" in out

    def test_portfolio_jackpot_doubles(self, capsys):
        code, out, _ = run_cli(capsys, ["prob", "portfolio", "-v", "5000000",
                                        "--jackpot", "--doubles"])
        assert "30.062%" in out
        code, out, _ = run_cli(capsys, ["prob", "portfolio", "-v", "5000000",
                                        "--jackpot"])
        assert "35.756%" in out

    def test_portfolio_modes(self, capsys):
        for mode in ("exact", "approx-tickets", "approx-hits"):
            code, out, _ = run_cli(capsys, ["prob", "portfolio", "-v", "1000",
                                            "--mode", mode])
            assert code == 0
            assert "1.835%" in out

    def test_portfolio_exact_hits_target(self, capsys):
        code, out, _ = run_cli(capsys, ["prob", "portfolio", "-v", "60000",
                                        "--exact-hits", "5,1"])
        assert code == 0
        assert "36.662%" in out

    def test_portfolio_mode_restriction(self, capsys):
        code, _, err = run_cli(capsys, ["prob", "portfolio", "-v", "10",
                                        "--jackpot", "--mode",
                                        "approx-tickets"])
        assert code == 1
        assert err.startswith("error[")

    def test_approx_compare(self, capsys):
        code, out, _ = run_cli(capsys,
                               ["prob", "approx-compare", "-v", "1000"])
        assert code == 0
        assert "exact" in out
        assert "approx-tickets" in out and "approx-hits" in out
        assert "1.835%" in out

    def test_decimals_flag_widens(self, capsys):
        code, out, _ = run_cli(capsys, ["prob", "spectrum", "--decimals", "5"])
        assert "43.59650%" in out


class TestDesignCommands:
    def test_schonheim_bare_bound(self, capsys):
        code, out, _ = run_cli(capsys, ["design", "schonheim", "-n", "49",
                                        "-k", "6", "-t", "5"])
        assert code == 0
        assert out.splitlines()[0] == "325205"

    def test_schonheim_chain(self, capsys):
        code, out, _ = run_cli(capsys, ["design", "schonheim", "-n", "49",
                                        "-k", "6", "-t", "5", "--chain"])
        assert "23" in out and "39821" in out

    def test_verify_valid_file(self, capsys, tmp_path):
        path = tmp_path / "fano.txt"
        d = make_design(7, 3, 2, blocks=[(1, 2, 3), (1, 4, 5), (1, 6, 7),
                                         (2, 4, 6), (2, 5, 7), (3, 4, 7),
                                         (3, 5, 6)])
        write_design_file(d, path)
        code, out, _ = run_cli(capsys, ["design", "verify", str(path)])
        assert code == 0
        assert "RESULT: VALID" in out

    def test_verify_invalid_file_still_exits_zero(self, capsys, tmp_path):
        path = tmp_path / "short.txt"
        path.write_text("7 3 2\n1 2 3\n")
        code, out, _ = run_cli(capsys, ["design", "verify", str(path)])
        assert code == 0
        assert "RESULT: NOT VALID" in out

    def test_verify_headerless_with_params(self, capsys, tmp_path):
        path = tmp_path / "bare.txt"
        path.write_text("1 2 3 4 5 6\n")
        code, out, _ = run_cli(capsys, ["design", "verify", str(path),
                                        "--params", "8,6,6,5",
                                        "--witnesses", "20"])
        assert code == 0
        assert "NOT VALID" in out
        assert "uncovered=15" in out
        assert "3 4 5 6 7 8" in out

    def test_verify_reinterprets_covering_as_lottery(self, capsys, tmp_path):
        path = tmp_path / "cov.txt"
        path.write_text("6 6 5\n1 2 3 4 5 6\n")
        code, out, _ = run_cli(capsys, ["design", "verify", str(path),
                                        "--kind", "lottery",
                                        "--draw-size", "6"])
        assert code == 0
        assert "RESULT: VALID" in out

    def test_verify_json(self, capsys, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("6 6 6 5\n1 2 3 4 5 6\n")
        code, out, _ = run_cli(capsys, ["design", "verify", str(path),
                                        "-f", "json"])
        payload = json.loads(out)
        assert payload["valid"] is True
        assert payload["kind"] == "lottery"

    def test_verify_missing_file(self, capsys):
        code, _, err = run_cli(capsys, ["design", "verify", "/no/such.txt"])
        assert code == 1
        assert err.startswith("error[io]")

    def test_verify_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("7 3 2\n1 2 x\n")
        code, _, err = run_cli(capsys, ["design", "verify", str(path)])
        assert code == 1
        assert err.startswith("error[parse]")
        assert "line 2" in err

    def test_greedy_writes_design_file(self, capsys, tmp_path):
        out_path = tmp_path / "cover.txt"
        code, out, err = run_cli(capsys, ["design", "greedy", "-n", "9",
                                          "-k", "4", "-t", "3",
                                          "-o", str(out_path)])
        assert code == 0
        text = out_path.read_text()
        assert text.splitlines()[1] == "9 4 3"
        code2, out2, _ = run_cli(capsys, ["design", "verify", str(out_path)])
        assert "RESULT: VALID" in out2

    def test_greedy_stdout_design_summary_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, ["design", "greedy", "-n", "7",
                                          "-k", "3", "-t", "2"])
        assert code == 0
        assert out.splitlines()[1] == "7 3 2"
        assert "blocks" in err

    def test_greedy_deterministic(self, capsys):
        _, out_a, _ = run_cli(capsys, ["design", "greedy", "-n", "10",
                                       "-k", "5", "-t", "4"])
        _, out_b, _ = run_cli(capsys, ["design", "greedy", "-n", "10",
                                       "-k", "5", "-t", "4"])
        assert out_a == out_b

    def test_greedy_reference_delta(self, capsys):
        code, _, err = run_cli(capsys, ["design", "greedy", "-n", "7",
                                        "-k", "3", "-t", "2",
                                        "--reference", "7", "--quiet"])
        assert code == 0
        assert "reference" in err

    def test_greedy_json(self, capsys):
        code, out, _ = run_cli(capsys, ["design", "greedy", "-n", "7",
                                        "-k", "3", "-t", "2", "-f", "json"])
        payload = json.loads(out)
        assert payload["blocks"] == 7
        assert payload["bound"] == 7

    def test_enumerate(self, capsys):
        code, out, _ = run_cli(capsys, ["design", "enumerate", "-n", "4",
                                        "-k", "2"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == "4 2 2"
        assert lines[2:] == ["1 2", "1 3", "2 3", "1 4", "2 4", "3 4"]


class TestMythCommands:
    def test_pool_report(self, capsys):
        code, out, _ = run_cli(capsys, ["myth", "pool", "--nstar", "25"])
        assert code == 0
        assert "10.385" in out
        assert "96.316" in out
        assert "177,100" in out

    def test_pool_small_example(self, capsys):
        code, out, _ = run_cli(capsys, ["myth", "pool", "--nstar", "10"])
        assert "0.072" in out and "0.388" in out

    def test_pool_below_ticket_size_reports_pool_only(self, capsys):
        code, out, _ = run_cli(capsys, ["myth", "pool", "--nstar", "3"])
        assert code == 0
        assert "budget" in out.lower()

    def test_compare_with_cover(self, capsys):
        code, out, _ = run_cli(capsys, ["myth", "compare", "--nstar", "10",
                                        "--cover-size", "163"])
        assert code == 0
        assert "163" in out

    def test_pool_json(self, capsys):
        code, out, _ = run_cli(capsys, ["myth", "pool", "--nstar", "25",
                                        "-f", "json"])
        payload = json.loads(out)
        assert payload["ticket_budget"] == "177100"
        assert payload["pool_at_least"]["percent"] == "10.385"


class TestSimulateCommand:
    def test_json_by_default(self, capsys):
        code, out, _ = run_cli(capsys, ["simulate", "--scheme", "10,4,4,3",
                                        "--tickets", "5", "--trials", "500",
                                        "--seed", "12"])
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "lottokit/1"
        assert payload["trials"] == 500
        assert payload["seed"] == 12
        assert 0 <= payload["wilson95"][0] <= payload["wilson95"][1] <= 1

    def test_seed_reproducibility(self, capsys):
        argv = ["simulate", "--scheme", "12,5,5,4", "--tickets", "20",
                "--trials", "1000", "--seed", "77"]
        _, out_a, _ = run_cli(capsys, argv)
        _, out_b, _ = run_cli(capsys, argv)
        a, b = json.loads(out_a), json.loads(out_b)
        assert a["hits"] == b["hits"]

    def test_text_format_available(self, capsys):
        code, out, _ = run_cli(capsys, ["simulate", "--scheme", "10,4,4,3",
                                        "--tickets", "5", "--trials", "100",
                                        "--seed", "1", "-f", "text"])
        assert code == 0
        assert "frequency" in out

    def test_target_flag(self, capsys):
        code, out, _ = run_cli(capsys, ["simulate", "--scheme", "10,4,4,3",
                                        "--tickets", "5", "--trials", "100",
                                        "--seed", "1",
                                        "--target", "exact-hits:3,1"])
        payload = json.loads(out)
        assert payload["target"] == "exact-hits:3,1"

    def test_unique_overflow_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, ["simulate", "--scheme", "10,4,4,3",
                                        "--tickets", "211", "--trials", "10",
                                        "--seed", "1"])
        assert code == 1
        assert err.startswith("error[validation]")


class TestBenchCommand:
    def test_design_vs_random(self, capsys):
        code, out, _ = run_cli(capsys, ["bench", "design-vs-random",
                                        "--blocks", "100"])
        assert code == 0
        assert "100.000%" in out
        assert "0.185%" in out

    def test_design_file_variant(self, capsys, tmp_path):
        result = greedy_cover(9, 4, 3)
        path = tmp_path / "d.txt"
        write_design_file(result.design.to_lottery(draw_size=4), path)
        code, out, _ = run_cli(capsys, ["bench", "design-vs-random",
                                        "--design", str(path),
                                        "--scheme", "9,4,4,3"])
        assert code == 0
        assert "100.000%" in out


class TestExitCodes:
    def test_usage_error_is_two(self, capsys):
        code, _, _ = run_cli(capsys, ["prob", "spectrum", "--decimals", "44"])
        assert code == 2
        code, _, _ = run_cli(capsys, ["prob", "nonsense"])
        assert code == 2

    def test_domain_error_is_one(self, capsys):
        code, _, err = run_cli(capsys, ["prob", "portfolio", "-v",
                                        "99999999"])
        assert code == 1
        assert err.startswith("error[")

    def test_resource_error_is_three(self, capsys, tmp_path):
        path = tmp_path / "wide.txt"
        rows = "\n".join("1 2 3 4 5 6" for _ in range(1))
        path.write_text("44 6 3\n" + rows + "\n")
        code, _, err = run_cli(capsys, ["design", "verify", str(path),
                                        "--kind", "lottery",
                                        "--draw-size", "6",
                                        "--scan-cap", "100"])
        assert code == 3
        assert err.startswith("error[resource]")

    def test_error_category_prefix_shape(self, capsys):
        code, _, err = run_cli(capsys, ["design", "schonheim", "-n", "3",
                                        "-k", "6", "-t", "2"])
        assert code == 1
        assert err.startswith("error[domain]: ")
