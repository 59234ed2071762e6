import json

from .conftest import assert_exit_ok, run_cli


def test_normal_form_of_half_twist():
    proc = run_cli(["nf", "-n", "3", "s1 s2 s1"])
    assert_exit_ok(proc)
    assert proc.stdout.strip() == "D"


def test_normal_form_json():
    proc = run_cli(["nf", "-n", "3", "--format", "json", "s1^-1"])
    assert_exit_ok(proc)
    data = json.loads(proc.stdout)
    assert data["inf"] == -1 and data["sup"] == 0
    assert data["factors"] == [[1, 2]]


def test_rigidity_and_circuit():
    proc = run_cli(["rigidity", "-n", "3", "s1 s2^-1"])
    assert_exit_ok(proc)
    assert proc.stdout.splitlines() == ["2/2", "rigid: yes"]

    proc = run_cli(["circuit", "-n", "3", "--format", "json", "s1 s2^-1"])
    assert_exit_ok(proc)
    data = json.loads(proc.stdout)
    assert data["tail"] == [] and len(data["circuit"]) == 1


def test_curves_command():
    proc = run_cli(["curves", "-n", "4", "s1 s3"])
    assert_exit_ok(proc)
    assert "[1,2]" in proc.stdout and "[3,4]" in proc.stdout

    proc = run_cli(["curves", "-n", "3", "s1 s2^-1"])
    assert_exit_ok(proc)
    assert "no invariant round curves" in proc.stdout


def test_reduce_finds_arc():
    proc = run_cli(["reduce", "-n", "3", "s1 s1 s2 s2"])
    assert_exit_ok(proc)
    assert "almost-round" in proc.stdout
    assert "pair: 1,3" in proc.stdout


def test_random_words_are_reproducible():
    args = ["random", "-n", "4", "--seed", "11", "--count", "3", "-l", "8"]
    first, second = run_cli(args), run_cli(args)
    assert_exit_ok(first)
    assert first.stdout == second.stdout
    assert len(first.stdout.splitlines()) == 3


def test_bad_word_exits_with_usage_error():
    proc = run_cli(["nf", "-n", "3", "s9"])
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_too_few_strands_is_rejected():
    proc = run_cli(["nf", "-n", "1", "e"])
    assert proc.returncode == 2


def test_rigidity_of_full_twist_power():
    proc = run_cli(["rigidity", "-n", "3", "D^2"])
    assert_exit_ok(proc)
    assert proc.stdout.splitlines() == ["undefined (power of D)", "rigid: yes"]

    proc = run_cli(["rigidity", "-n", "4", "--format", "json", "D^-1"])
    assert_exit_ok(proc)
    data = json.loads(proc.stdout)
    assert data["rigidity"] is None and data["rigid"] is True


def test_random_words_need_a_seed():
    proc = run_cli(["random", "-n", "3", "--count", "2"])
    assert proc.returncode == 2
    assert "--seed" in proc.stderr
