import json

import pytest

from selfred.cli import ExperimentConfig, main, run
from selfred.errors import InvalidParams
from selfred.formula import parse


def read(path):
    return path.read_bytes()


class TestRun:
    def test_selector_example_record(self):
        records = run(
            ExperimentConfig(
                algorithm="selector",
                formulas=[parse("x1 & !x1")],
                oracle_style="honest",
            )
        )
        (record,) = records
        assert record.result is False
        assert record.agree is True
        assert record.oracle_calls == 1

    def test_enum_example_record(self):
        records = run(
            ExperimentConfig(
                algorithm="enum_count",
                formulas=[parse("x1 | x2")],
                oracle_style="exact_plus_offset",
                seed=7,
            )
        )
        (record,) = records
        assert record.result == 3
        assert record.agree is True

    def test_style_validation(self):
        with pytest.raises(InvalidParams):
            run(
                ExperimentConfig(
                    algorithm="tally",
                    formulas=[parse("x1")],
                    oracle_style="scatter",
                )
            )

    def test_verify_cap(self, monkeypatch):
        monkeypatch.setenv("SELFRED_BRUTE_LIMIT", "3")
        with pytest.raises(InvalidParams):
            run(
                ExperimentConfig(
                    algorithm="selector",
                    formulas=[parse("x1 & x2 & x3 & x4")],
                    oracle_style="honest",
                )
            )


class TestCommandLine:
    def test_decide_selector_inline(self, capsys):
        assert main(["decide", "selector", "--inline", "x1 & !x1", "--oracle", "honest"]) == 0
        out = capsys.readouterr().out
        assert "false" in out
        assert "1/1 verified records agree" in out

    def test_count_enum_inline(self, capsys):
        assert main(
            ["count", "enum", "--inline", "x1 | x2", "--oracle", "exact_plus_offset", "--seed", "7"]
        ) == 0
        assert "-> 3" in capsys.readouterr().out

    def test_parse_failure_exit_code(self, capsys):
        assert main(["decide", "selector", "--inline", "x1 &"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_random_batch_all_agree(self, tmp_path):
        summary = tmp_path / "s.csv"
        code = main(
            [
                "decide", "sparse",
                "--random", "vars=8", "count=30", "seed=3",
                "--oracle", "scatter",
                "--verify",
                "--summary", str(summary),
            ]
        )
        assert code == 0
        rows = summary.read_text().splitlines()
        assert rows[0].startswith("formula_id,vars,algorithm")
        assert len(rows) == 31
        assert all(",true," in row or row.endswith("true") for row in rows[1:])

    def test_formula_file_input(self, tmp_path):
        source = tmp_path / "formulas.txt"
        source.write_text("x1 & !x1\nx1 | x2\n\n!x3\n")
        summary = tmp_path / "s.csv"
        assert main(
            ["decide", "tally", "--file", str(source), "--summary", str(summary)]
        ) == 0
        assert len(summary.read_text().splitlines()) == 4

    def test_dimacs_file_input(self, tmp_path, capsys):
        source = tmp_path / "input.cnf"
        source.write_text("c tiny\np cnf 2 2\n1 2 0\n-1 2 0\n")
        assert main(["decide", "tally", "--file", str(source)]) == 0
        assert "-> true" in capsys.readouterr().out

    def test_demo_naive_failure(self, capsys):
        assert main(["demo", "naive-failure"]) == 0
        out = capsys.readouterr().out
        assert "witness 1" in out and "witness 2" in out
        assert "0 vs 1" in out

    def test_gen_deterministic(self, capsys):
        assert main(["gen", "--vars", "3", "--budget", "9", "--seed", "1", "--count", "4"]) == 0
        first = capsys.readouterr().out
        assert main(["gen", "--vars", "3", "--budget", "9", "--seed", "1", "--count", "4"]) == 0
        assert capsys.readouterr().out == first
        for line in first.strip().splitlines():
            parse(line)

    def test_gen_every_variable_occurs(self, tmp_path):
        out = tmp_path / "g.txt"
        assert main(["gen", "--vars", "10", "--count", "50", "--seed", "5", "--out", str(out)]) == 0
        from selfred.formula import variables

        for line in out.read_text().splitlines():
            assert variables(parse(line)) == frozenset(range(1, 11))

    def test_mode_flag(self, tmp_path):
        for mode in ("early_accept", "capped_continue"):
            assert main(
                [
                    "decide", "sparse",
                    "--inline", "(x1 | x2) & (x3 | x4)",
                    "--oracle", "singleton",
                    "--mode", mode,
                ]
            ) == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["decide", "selector", "--random", "vars=4", "count=5", "seed=2",
             "--oracle", "adversarial", "--seed", "9"],
            ["decide", "tally", "--random", "vars=5", "count=5", "seed=2",
             "--oracle", "spread"],
            ["decide", "sparse", "--random", "vars=5", "count=5", "seed=2",
             "--oracle", "singleton", "--mode", "capped_continue"],
            ["count", "enum", "--random", "vars=5", "count=5", "seed=2",
             "--oracle", "woeginger"],
        ],
    )
    def test_byte_identical_reruns(self, tmp_path, argv):
        outputs = []
        for attempt in ("a", "b"):
            trace = tmp_path / f"{attempt}.jsonl"
            summary = tmp_path / f"{attempt}.csv"
            code = main(argv + ["--trace", str(trace), "--summary", str(summary)])
            assert code == 0
            outputs.append((read(trace), read(summary)))
        assert outputs[0] == outputs[1]

    def test_trace_is_valid_jsonl(self, tmp_path):
        trace = tmp_path / "t.jsonl"
        assert main(
            [
                "count", "enum",
                "--random", "vars=6", "count=10", "seed=4",
                "--trace", str(trace),
            ]
        ) == 0
        for line in trace.read_text().splitlines():
            row = json.loads(line)
            assert row["algorithm"] == "enum_count"
            assert "linkage" in row

    def test_random_requires_vars(self, capsys):
        assert main(["decide", "selector", "--random", "count=3"]) == 2
        assert "vars" in capsys.readouterr().err

    def test_no_verify_skips_reference(self, capsys):
        assert main(
            ["decide", "selector", "--inline", "x1 | x2", "--no-verify"]
        ) == 0
        out = capsys.readouterr().out
        assert "reference" not in out
