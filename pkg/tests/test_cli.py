import subprocess
import sys

import pytest

from schedlab import gen_identical_exp, gen_naive_lb, parse_instance, serialize_instance
from schedlab.cli import main

TRAP = serialize_instance(gen_naive_lb(16, 2, 1, 12))
PAIR = serialize_instance(gen_identical_exp(2, 1, 2, 2))


@pytest.fixture
def trap_file(tmp_path):
    path = tmp_path / "trap.json"
    path.write_text(TRAP)
    return str(path)


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(PAIR)
    return str(path)


def test_gen_writes_a_parseable_instance(tmp_path, capsys):
    out = tmp_path / "inst.json"
    code = main(
        ["gen", "--family", "naive-lb", "-p", "M=16", "-p", "x=2", "-p", "s=1", "-p", "T=12", "-o", str(out)]
    )
    assert code == 0
    assert parse_instance(out.read_text()) == gen_naive_lb(16, 2, 1, 12)
    assert capsys.readouterr().out == ""


def test_gen_defaults_to_stdout(capsys):
    code = main(["gen", "--family", "identical-exp", "-p", "n=2", "-p", "s=1", "-p", "t=2", "-p", "x=2"])
    assert code == 0
    assert parse_instance(capsys.readouterr().out) == gen_identical_exp(2, 1, 2, 2)


def test_gen_random_needs_a_seed(capsys):
    args = ["gen", "--family", "random", "-p", "n_max=3", "-p", "t_max=3", "-p", "r_max=0", "-p", "v_max=8"]
    assert main(args) == 1
    assert "--seed" in capsys.readouterr().err
    assert main(args + ["--seed", "7"]) == 0


def test_gen_rejects_a_seed_on_deterministic_families(capsys):
    code = main(["gen", "--family", "naive-lb", "-p", "M=16", "-p", "x=2", "-p", "s=1", "-p", "T=12", "--seed", "3"])
    assert code == 1


def test_gen_infeasible_parameters_exit_2(capsys):
    code = main(["gen", "--family", "naive-lb", "-p", "M=10", "-p", "x=2", "-p", "s=1", "-p", "T=12"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_simulate_reports_totals_and_per_job_lines(trap_file, capsys):
    assert main(["simulate", "--instance", trap_file, "--policy", "naive"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[1] == "policy naive"
    assert lines[2] == "total 65600"
    assert lines[3] == "job 0 class=linear C=4 penalty=64"
    assert lines[4] == "job 1 class=exp C=16 penalty=65536"


def test_simulate_writes_the_trace_csv(pair_file, tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code = main(["simulate", "--instance", pair_file, "--policy", "expfirst", "--trace", str(trace)])
    assert code == 0
    assert trace.read_text() == "slot,job_id\n0,0\n1,1\n2,0\n3,1\n"


def test_simulate_policy_off_its_class_exits_2(trap_file, capsys):
    assert main(["simulate", "--instance", trap_file, "--policy", "smith"]) == 2


def test_oracle_prints_optimum_and_state_count(trap_file, capsys):
    assert main(["oracle", "--instance", trap_file]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[1] == "optimal 4352"
    assert lines[2] == "states 64"


def test_oracle_budget_refusal_exits_2(trap_file, capsys):
    assert main(["oracle", "--instance", trap_file, "--budget", "10"]) == 2
    assert "error:" in capsys.readouterr().err


def test_compare_prints_ratios_and_bound_verdicts(trap_file, capsys):
    assert main(["compare", "--instance", trap_file, "--policies", "naive,expfirst"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[1] == "oracle 4352"
    assert lines[2] == "policy naive total 65600 ratio 1025/68"
    assert lines[3] == "policy expfirst total 4352 ratio 1/1 bound expfirst-log=10/1 pass"


def test_compare_with_exhausted_oracle_still_reports_totals(trap_file, capsys):
    assert main(["compare", "--instance", trap_file, "--policies", "naive", "--budget", "10"]) == 0
    out = capsys.readouterr().out
    assert "oracle unavailable" in out
    assert "policy naive total 65600" in out
    assert "ratio" not in out


def test_compare_unknown_policy_exits_1(trap_file, capsys):
    assert main(["compare", "--instance", trap_file, "--policies", "naive,fancy"]) == 1
    assert "fancy" in capsys.readouterr().err


def test_missing_instance_file_exits_1(capsys):
    assert main(["oracle", "--instance", "/nonexistent/inst.json"]) == 1


def test_malformed_instance_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"x": 2, "jobs": [{"id": 0}]}')
    assert main(["oracle", "--instance", str(path)]) == 2


def test_argparse_problems_exit_1(capsys):
    assert main(["simulate", "--policy", "naive"]) == 1  # missing --instance
    assert main(["gen", "--family", "bogus"]) == 1
    assert main(["frobnicate"]) == 1


def test_sweep_grid_expansion_and_report_file(tmp_path):
    report = tmp_path / "report.csv"
    code = main(
        [
            "sweep",
            "--family",
            "naive-lb",
            "--grid",
            "M=16;x=2;s=1;T=8,12",
            "--policies",
            "naive,expfirst",
            "--report",
            str(report),
        ]
    )
    assert code == 0
    lines = report.read_text().strip().split("\n")
    assert lines[0] == "instance_id,policy,total,opt,ratio_num,ratio_den,bound_name,bound_pass"
    assert len(lines) == 5
    assert lines[1] == '"naive-lb[M=16,T=8,s=1,x=2]",naive,4160,448,65,7,,'
    assert lines[4] == '"naive-lb[M=16,T=12,s=1,x=2]",expfirst,4352,4352,1,1,expfirst-log,true'


def test_sweep_runs_are_byte_identical(tmp_path):
    args = [
        "sweep",
        "--family",
        "random",
        "--grid",
        "n_max=3;t_max=3;r_max=2;v_max=8;x=2",
        "--seeds",
        "0:10",
        "--policies",
        "naive,expfirst,threshold",
    ]
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    assert main(args + ["--report", str(first)]) == 0
    assert main(args + ["--report", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().strip().split("\n")) == 31


def test_sweep_seed_flag_validation(capsys):
    base = ["sweep", "--family", "random", "--grid", "n_max=3;t_max=3;r_max=0;v_max=8", "--policies", "naive"]
    assert main(base) == 1
    assert main(base + ["--seeds", "5"]) == 1
    deterministic = ["sweep", "--family", "naive-lb", "--grid", "M=16;x=2;s=1;T=8", "--policies", "naive"]
    assert main(deterministic + ["--seeds", "0:3"]) == 1


def test_sweep_empty_grid_exits_1(capsys):
    assert main(["sweep", "--family", "naive-lb", "--grid", ";", "--policies", "naive"]) == 1


def test_bad_param_shape_exits_1(capsys):
    assert main(["gen", "--family", "naive-lb", "-p", "M16"]) == 1


def test_module_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "schedlab", "gen", "--family", "identical-exp", "-p", "n=2", "-p", "s=1", "-p", "t=2", "-p", "x=2"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert parse_instance(result.stdout) == gen_identical_exp(2, 1, 2, 2)
