"""CLI surface: output formats, exit codes, error reporting."""

import json
import shutil
import subprocess
import sys

import pytest

from moessner.cli import main
from moessner.oeis import BFileEntry, fixtures_dir, load_fixture, serialize_bfile


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_plain(capsys):
    code, out, err = run_cli(capsys, "eval", "--preset", "moessner", "--params", "x=3,n=3")
    assert (code, err) == (0, "")
    assert out == "64\n"


def test_eval_count_adds(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--preset", "moessner", "--params", "x=3,n=3", "--count-adds"
    )
    assert code == 0
    assert out == "64 63\n"


def test_eval_memoized(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--preset", "euler_zigzag", "--params", "n=10", "--memoized"
    )
    assert code == 0
    assert out == "50521\n"


def test_eval_json_single(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--preset", "catalan", "--params", "n=5", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"preset": "catalan", "params": {"n": 5}, "value": "42"}


def test_eval_json_sweep(capsys):
    code, out, _ = run_cli(
        capsys,
        "eval", "--preset", "catalan", "--count", "4", "--format", "json", "--count-adds",
    )
    assert code == 0
    payload = json.loads(out)
    assert [row["value"] for row in payload] == ["1", "1", "2", "5"]
    assert all(row["params"]["n"] == i for i, row in enumerate(payload))
    assert all("additions" in row for row in payload)


def test_eval_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "eval", "--preset", "moessner", "--params", "x=2,n=2", "--format", "csv", "--count-adds",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "preset,params,value,additions"
    assert lines[1] == "moessner,n=2;x=2,9,8"


def test_eval_table_param(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--preset", "product_of_table", "--params", "n=2,f=3:1:4"
    )
    assert code == 0
    assert out == "12\n"


def test_eval_errors_exit_two(capsys):
    code, _, err = run_cli(capsys, "eval", "--preset", "mystery")
    assert code == 2
    assert err.startswith("error: ")
    code, _, err = run_cli(capsys, "eval", "--preset", "moessner", "--params", "x=3")
    assert code == 2
    assert "missing" in err
    code, _, err = run_cli(capsys, "eval", "--preset", "moessner", "--params", "x 3")
    assert code == 2
    assert "key=value" in err
    # memoized evaluator refuses non-Markov presets
    code, _, err = run_cli(
        capsys, "eval", "--preset", "a125860", "--params", "x=1,n=3", "--memoized"
    )
    assert code == 2
    assert "Markov" in err


def test_argparse_failures_exit_two(capsys):
    assert run_cli(capsys)[0] == 2
    assert run_cli(capsys, "eval")[0] == 2
    assert run_cli(capsys, "compare", "--preset", "moessner", "--against", "nonsense")[0] == 2


def test_help_exits_zero(capsys):
    assert run_cli(capsys, "--help")[0] == 0


def test_prefix_plain(capsys):
    code, out, _ = run_cli(
        capsys,
        "prefix", "--preset", "fibonacci", "--vary", "n", "--from", "0", "--to", "7",
    )
    assert code == 0
    assert out == "1, 1, 2, 3, 5, 8, 13, 21\n"


def test_prefix_csv_and_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "prefix", "--preset", "moessner", "--params", "x=2", "--vary", "n",
        "--from", "0", "--to", "3", "--format", "csv",
    )
    assert code == 0
    assert out.splitlines() == ["n,value", "0,1", "1,3", "2,9", "3,27"]

    code, out, _ = run_cli(
        capsys,
        "prefix", "--preset", "binomial", "--params", "n=2", "--vary", "x",
        "--from", "0", "--to", "4", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["values"] == ["1", "3", "6", "10", "15"]
    assert payload["vary"] == "x"
    assert payload["from"] == 0 and payload["to"] == 4


def test_prefix_bad_range(capsys):
    code, _, err = run_cli(
        capsys,
        "prefix", "--preset", "fibonacci", "--vary", "n", "--from", "5", "--to", "2",
    )
    assert code == 2
    assert "below" in err


def test_compare_oracle(capsys):
    code, out, _ = run_cli(
        capsys, "compare", "--preset", "catalan", "--count", "6", "--against", "oracle"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "6/6 match"
    assert all("| match" in line for line in lines[:-1])
    assert lines[2].startswith("n=2 | value 2 vs 2 | additions")


def test_compare_stolid(capsys):
    code, out, _ = run_cli(
        capsys, "compare", "--preset", "moessner", "--params", "x=4,n=4", "--against", "stolid"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n=4,x=4 | value 625 vs 625 | additions 624 vs 624 | match"
    assert lines[1] == "1/1 match"


def test_compare_stolid_rejects_other_presets(capsys):
    code, _, err = run_cli(
        capsys, "compare", "--preset", "catalan", "--params", "n=3", "--against", "stolid"
    )
    assert code == 2
    assert "stolid" in err


def test_compare_dp(capsys):
    code, out, _ = run_cli(
        capsys, "compare", "--preset", "moessner", "--params", "x=7,n=5", "--against", "dp"
    )
    assert code == 0
    lines = out.splitlines()
    assert "value 32768 vs 32768" in lines[0]
    assert "additions 105 vs n/a" in lines[0]
    assert lines[-1] == "1/1 match"


def test_compare_memoized(capsys):
    code, out, _ = run_cli(
        capsys, "compare", "--preset", "fibonacci", "--count", "8", "--against", "memoized"
    )
    assert code == 0
    assert out.splitlines()[-1] == "8/8 match"


def test_process_plain_tokens(capsys):
    code, out, _ = run_cli(capsys, "process", "--exponent", "4", "--prefix", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "exponent 4, init const:1, prefix 4"
    assert lines[-1].split() == ["final", "1", "16", "81", "256"]
    periods = [line.split()[1] for line in lines if line.startswith("period")]
    assert periods == ["5", "4", "3", "2"]
    summed = [line.split()[1:] for line in lines if line.strip().startswith("summed")]
    assert summed[2][:7] == ["1", "4", "15", "32", "65", "108", "175"]


def test_process_indicator_init(capsys):
    code, out, _ = run_cli(
        capsys, "process", "--exponent", "1", "--prefix", "4", "--init", "indicator:2:3"
    )
    assert code == 0
    assert out.splitlines()[-1].split() == ["final", "2", "10", "24", "44"]


def test_process_json(capsys):
    code, out, _ = run_cli(
        capsys, "process", "--exponent", "2", "--prefix", "5", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["exponent"] == 2
    assert payload["init"] == "const:1"
    assert payload["final"] == ["1", "4", "9", "16", "25"]
    assert [step["period"] for step in payload["steps"]] == [3, 2]
    assert payload["steps"][1]["filtered"][:3] == ["1", "3", "5"]


def test_process_bad_init(capsys):
    code, _, err = run_cli(
        capsys, "process", "--exponent", "2", "--prefix", "4", "--init", "ramp:3"
    )
    assert code == 2
    assert "init spec" in err


def test_inverse_plain(capsys):
    code, out, _ = run_cli(capsys, "inverse", "--exponent", "3", "--prefix", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["step", "0:", "1", "8", "27", "64", "125"]
    assert lines[1].split() == ["step", "1:", "1", "3", "7", "12", "19"]
    assert lines[2].split() == ["step", "2:", "1", "2", "3", "4", "5"]
    assert lines[3].split() == ["step", "3:", "1", "1", "1", "1", "1"]


def test_inverse_json(capsys):
    code, out, _ = run_cli(
        capsys, "inverse", "--exponent", "2", "--prefix", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [
        ["1", "4", "9", "16"],
        ["1", "2", "3", "4"],
        ["1", "1", "1", "1"],
    ]


def test_polygonal(capsys):
    code, out, _ = run_cli(capsys, "polygonal", "--k", "3", "--count", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "5/5 match"
    assert lines[0] == "n=0 sum 1 closed 1 match"


def test_oeis_check_bundled(capsys):
    code, out, _ = run_cli(capsys, "oeis-check", "--preset", "catalan", "--count", "10")
    assert code == 0
    lines = out.splitlines()
    assert "catalan vs A000108: 10/10 match" in lines


def test_oeis_check_doctored_dir(tmp_path, capsys):
    doctored = tmp_path / "fixtures"
    shutil.copytree(fixtures_dir(), doctored)
    entries = load_fixture("A000045")
    broken = [BFileEntry(e.index, e.value + (e.index == 4)) for e in entries]
    (doctored / "b000045.txt").write_text(serialize_bfile(broken), encoding="ascii")
    code, out, _ = run_cli(
        capsys,
        "oeis-check", "--preset", "fibonacci", "--count", "8", "--fixtures", str(doctored),
    )
    assert code == 1
    lines = out.splitlines()
    assert "fibonacci vs A000045: 7/8 match" in lines
    assert "  n=3: engine 3 fixture 4" in lines


def test_oeis_check_errors(capsys):
    code, _, err = run_cli(capsys, "oeis-check", "--preset", "multiset")
    assert code == 2
    assert "multiset" in err
    code, _, err = run_cli(
        capsys, "oeis-check", "--preset", "catalan", "--fixtures", "/nonexistent"
    )
    assert code == 2
    assert "manifest" in err


def test_list_presets_plain(capsys):
    code, out, _ = run_cli(capsys, "list-presets")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 29
    zigzag = next(line for line in lines if line.startswith("euler_zigzag"))
    assert "A000111" in zigzag


def test_list_presets_json(capsys):
    code, out, _ = run_cli(capsys, "list-presets", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 29
    assert payload[0]["name"] == "a002293"


def test_module_entry_point():
    # one end-to-end spawn; everything else drives main() in-process
    result = subprocess.run(
        [sys.executable, "-m", "moessner", "eval", "--preset", "moessner", "--params", "x=3,n=3"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert result.stdout == "64\n"


def test_rosen_triple_eval_and_compare(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--preset", "rosen_triple", "--params", "n1=2,n2=3,n3=4"
    )
    assert code == 0
    assert out == "24\n"
    code, out, _ = run_cli(
        capsys,
        "compare", "--preset", "rosen_triple", "--params", "n1=2,n2=3,n3=4",
        "--against", "oracle",
    )
    assert code == 0
    assert out.splitlines()[-1] == "1/1 match"
