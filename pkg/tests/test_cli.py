"""CLI subcommand behavior via in-process dispatch."""

import json

import numpy as np
import pytest

from lzpenalty.cli import dispatch, read_token_file


@pytest.fixture
def token_file(tmp_path):
    path = tmp_path / "tokens.txt"
    path.write_text("\n".join(str(t) for t in [3, 1, 4, 1, 5, 9, 2, 6, 4, 1, 5]))
    return str(path)


class TestTokenFiles:
    def test_int_lines(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("1\n2\n3\n")
        np.testing.assert_array_equal(read_token_file(path), [1, 2, 3])

    def test_raw_bytes_fallback(self, tmp_path):
        path = tmp_path / "t.bin"
        path.write_bytes(b"\x00\xff ab")
        np.testing.assert_array_equal(read_token_file(path), [0, 255, 32, 97, 98])

    def test_empty(self, tmp_path):
        path = tmp_path / "e.txt"
        path.write_text("")
        assert read_token_file(path).size == 0


class TestGenerate:
    def test_json_output_deterministic(self, capsys):
        argv = ["generate", "--model", "loop:0.95", "--penalty", "lz",
                "--alpha", "0.15", "--window", "512", "--buffer", "32",
                "--seed", "1", "--max-tokens", "50", "--output", "json"]
        assert dispatch(argv) == 0
        first = capsys.readouterr().out
        assert dispatch(argv) == 0
        second = capsys.readouterr().out
        assert first == second
        record = json.loads(first)
        assert len(record["tokens"]) == 50

    def test_text_output(self, capsys):
        assert dispatch(["generate", "--model", "loop:0.9", "--temperature", "0",
                         "--max-tokens", "5"]) == 0
        out = capsys.readouterr().out
        assert len(out.rstrip("\n")) >= 1

    def test_prompt_file_conditions_generation(self, tmp_path, capsys):
        prompt = tmp_path / "prompt.txt"
        prompt.write_text("7\n")
        argv = ["generate", "--model", "loop:0.95:32", "--temperature", "0",
                "--max-tokens", "6", "--output", "json",
                "--prompt-file", str(prompt)]
        assert dispatch(argv) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["tokens"] == [7] * 6  # greedy repeats the prompt tail

    def test_bad_model_spec_is_diagnosed(self, capsys):
        assert dispatch(["generate", "--model", "mystery:1"]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_prompt_file_is_diagnosed(self, capsys):
        assert dispatch(["generate", "--model", "loop:0.9",
                         "--prompt-file", "/nonexistent/p.txt"]) == 1
        assert "error" in capsys.readouterr().err


class TestCompress:
    def test_summary_line(self, token_file, capsys):
        assert dispatch(["compress", "--input", token_file, "--vocab", "16",
                         "--window", "8", "--buffer", "3"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 1
        assert "bits=" in out[0] and "rate=" in out[0] and "blocks=" in out[0]

    def test_emit_blocks_format(self, tmp_path, capsys):
        path = tmp_path / "p.txt"
        path.write_text("\n".join("121212"))
        assert dispatch(["compress", "--input", str(path), "--vocab", "4",
                         "--window", "8", "--buffer", "4",
                         "--emit-blocks"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "LIT=1"
        assert lines[1] == "LIT=2"
        assert lines[2] == "L=2 D=2"
        assert lines[3] == "L=2 D=2"
        assert lines[4].startswith("blocks=4")

    def test_vocab_too_small_diagnosed(self, token_file, capsys):
        assert dispatch(["compress", "--input", token_file, "--vocab", "4"]) == 1
        assert "vocab" in capsys.readouterr().err


class TestTrace:
    def test_text_steps(self, token_file, capsys):
        assert dispatch(["trace", "--input", token_file, "--vocab", "16",
                         "--window", "8", "--buffer", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 11  # one per step
        assert lines[-1].startswith("step=11 l=3 d=4")

    def test_final_only_json_with_vector(self, token_file, capsys):
        assert dispatch(["trace", "--input", token_file, "--vocab", "16",
                         "--window", "8", "--buffer", "3",
                         "--final-only", "--emit-vector", "--output", "json"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert len(record["steps"]) == 1
        step = record["steps"][0]
        assert step["l"] == 3 and step["d"] == 4
        values = step["values"]
        assert len(values) == 16
        assert values[9] == pytest.approx(-1.0)
        assert values[7] == pytest.approx(4.0)
        assert step["counts"] == {"extension": 1, "window": 6, "novel": 9}

    def test_top_lists_ordered(self, token_file, capsys):
        assert dispatch(["trace", "--input", token_file, "--vocab", "16",
                         "--window", "8", "--buffer", "3", "--final-only",
                         "--output", "json", "--top", "3"]) == 0
        record = json.loads(capsys.readouterr().out)
        step = record["steps"][0]
        assert step["penalized"][0][0] == 9  # most penalized token first
        pen_vals = [v for _, v in step["penalized"]]
        assert pen_vals == sorted(pen_vals)


class TestSweepAndBench:
    def test_sweep_csv(self, capsys):
        argv = ["sweep", "--model", "loop:0.9:32", "--penalty", "none",
                "--temperatures", "0", "--seeds", "2", "--max-tokens", "40",
                "--prompt-len", "8", "--window", "24", "--buffer", "4"]
        assert dispatch(argv) == 0
        csv = capsys.readouterr().out
        lines = csv.strip().splitlines()
        assert lines[0] == ("penalty,strength,temperature,seed_count,"
                            "repetition_rate,mean_xent_bits,distinct2")
        assert lines[1].startswith("none,0,0,2,1.000000")

    def test_sweep_to_file(self, tmp_path):
        out = tmp_path / "sweep.csv"
        argv = ["sweep", "--model", "loop:0.9:32", "--penalty", "none",
                "--temperatures", "0", "--seeds", "1", "--max-tokens", "30",
                "--prompt-len", "8", "--window", "24", "--buffer", "4",
                "--out", str(out)]
        assert dispatch(argv) == 0
        assert out.read_text().startswith("penalty,")

    def test_bench_csv_row(self, capsys):
        argv = ["bench", "--vocab", "256", "--window", "64", "--buffer", "8",
                "--iterations", "5"]
        assert dispatch(argv) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "V,W,B,median_us,p99_us,overhead_pct"
        fields = lines[1].split(",")
        assert fields[:3] == ["256", "64", "8"]
        assert float(fields[3]) > 0


class TestConfigFile:
    def test_config_defaults_overridden_by_flags(self, tmp_path, capsys):
        config = tmp_path / "run.conf"
        config.write_text("max_tokens=7\nseed=5\n")
        argv = ["--config", str(config), "generate", "--model", "loop:0.9:16",
                "--output", "json"]
        assert dispatch(argv) == 0
        record = json.loads(capsys.readouterr().out)
        assert len(record["tokens"]) == 7
        assert record["seed"] == 5

        argv += ["--max-tokens", "3"]
        assert dispatch(argv) == 0
        record = json.loads(capsys.readouterr().out)
        assert len(record["tokens"]) == 3

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        config = tmp_path / "bad.conf"
        config.write_text("bogus_key=1\n")
        with pytest.raises(SystemExit) as exc:
            dispatch(["--config", str(config), "generate", "--model", "loop:0.9"])
        assert exc.value.code == 2

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            dispatch(["generate", "--model", "loop:0.9", "--frobnicate"])
        assert exc.value.code == 2
