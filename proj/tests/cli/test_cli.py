import os
import subprocess

import pytest

CLI = os.environ.get("HCP_CLI", "hcp")


def run(*args, check=True):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def report(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "inst.bin"
    run("gen", "--n", 48, "--m", 16, "--dmin", 3, "--d2", 5, "--seed", 7, "-o", path)
    return path


def test_solvers_agree(instance):
    brute = report(run("solve", instance, "--algo", "brute").stdout)
    for algo in ("rand", "det", "search"):
        args = ["solve", instance, "--algo", algo, "--seed", 3]
        if algo != "search":
            args += ["--dmin", 3]
        got = report(run(*args).stdout)
        assert (got["i"], got["j"], got["dist"]) == (brute["i"], brute["j"], brute["dist"]), algo
        assert got["planted_found"] == "true"
    assert report(run("solve", instance, "--algo", "search").stdout)["dmin_found"] == "3"
    gapped = report(run("solve", instance, "--algo", "gapped", "--dmin", 3, "--d2", 5).stdout)
    assert gapped["dist"] == "3"


def test_report_ends_with_wall_time(instance):
    lines = run("solve", instance, "--algo", "brute").stdout.strip().splitlines()
    assert lines[-1].startswith("wall_ms = ")


def test_report_file_and_determinism(instance, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    run("solve", instance, "--algo", "rand", "--dmin", 3, "--seed", 11, "--workers", 1, "-o", a)
    run("solve", instance, "--algo", "rand", "--dmin", 3, "--seed", 11, "--workers", 4, "-o", b)
    ra, rb = report(a.read_text()), report(b.read_text())
    ra.pop("wall_ms")
    rb.pop("wall_ms")
    assert ra == rb


def test_text_instances(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text("# tiny\n0000\n1111\n0001\n")
    got = report(run("solve", path, "--algo", "brute").stdout)
    assert (got["i"], got["j"], got["dist"]) == ("0", "2", "1")


def test_exit_codes(instance, tmp_path):
    assert run("solve", instance, "--algo", "rand", check=False).returncode == 3
    assert run("solve", instance, "--algo", "nope", check=False).returncode == 2
    bad = tmp_path / "bad.bin"
    data = bytearray(instance.read_bytes())
    data[20] ^= 0xFF
    bad.write_bytes(bytes(data))
    assert run("solve", bad, "--algo", "brute", check=False).returncode == 2
    assert run("gen", "--n", 64, "--m", 4, "--dmin", 1, "--d2", 4, "-o", tmp_path / "x", check=False).returncode == 3


def test_rates_table():
    lines = run("rates", "--table1").stdout.strip().splitlines()
    assert lines[0].split("\t")[:5] == ["delta", "c_hamming", "gamma_hamming", "c_gv", "gamma_gv"]
    assert len(lines) == 8
    row = lines[5].split("\t")
    assert row[0] == "0.1000"
    assert row[1:5] == ["1.4013", "1.5171", "1.8832", "1.6949"]


def test_code_build_and_inspect(tmp_path):
    table = tmp_path / "c.gvt"
    run("code", "build", "--m", 10, "--d", 3, "-o", table)
    out = report(run("code", "inspect", table).stdout)
    assert out["invariants"] == "ok"
    assert int(out["min_distance"]) >= 4
    data = bytearray(table.read_bytes())
    data[len(data) // 2] ^= 1
    table.write_bytes(bytes(data))
    assert run("code", "inspect", table, check=False).returncode == 2


def test_lightbulb():
    out = report(run("lightbulb", "--n", 128, "--rho", 0.98, "--seed", 1).stdout)
    assert out["planted_recovered"] == "true"
    assert out["sample_bits"] == "21"
    neg = report(run("lightbulb", "--n", 128, "--rho", -0.98, "--seed", 2).stdout)
    assert neg["planted_recovered"] == "true"
    assert int(neg["flips"]) >= 1


def test_bench(tmp_path):
    out = tmp_path / "bench.tsv"
    run("bench", "--spec", "solvers=rand,det;n=16;m=12;delta=0.15;reps=2", "-o", out)
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("solver\t")
