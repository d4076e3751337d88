"""Command line surface: every subcommand, both output formats, exit codes
and deterministic reruns."""
import json
import subprocess
import sys

import pytest

from hmi.cli import main


CHAIN = {"p": 5, "facets": [[1, 2, 3], [2, 3, 4], [3, 4, 5]]}
BRIDGE = {"nodes": [1, 2, 3, 4],
          "edges": [{"id": 1, "u": 1, "v": 2}, {"id": 2, "u": 2, "v": 4},
                    {"id": 3, "u": 2, "v": 3}, {"id": 4, "u": 1, "v": 3},
                    {"id": 5, "u": 3, "v": 4}],
          "input": 1, "output": 4}
GAUSS = {"family": "gaussian", "mean": [0.0, 0.0],
         "precision": [[4 / 3, -2 / 3], [-2 / 3, 4 / 3]]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj) if not isinstance(obj, str)
                        else obj)
        return str(path)
    return write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sr_and_complex_of(files, capsys):
    chain = files("chain.json", CHAIN)
    code, out, _ = run(capsys, ["sr", "--complex", chain])
    assert code == 0 and out.strip() == "x1*x4, x1*x5, x2*x5"
    code, out, _ = run(capsys, ["sr", "--complex", chain, "--format",
                                "json"])
    assert json.loads(out) == {"p": 5,
                               "generators": [[1, 4], [1, 5], [2, 5]]}
    ideal = files("ideal.json", {"p": 5,
                                 "generators": [[1, 4], [1, 5], [2, 5]]})
    code, out, _ = run(capsys, ["complex-of", "--ideal", ideal])
    assert code == 0 and out.strip() == "{1,2,3}, {2,3,4}, {3,4,5}"


def test_dual_decompose_factorize_marginalize(files, capsys):
    chain = files("chain.json", CHAIN)
    code, out, _ = run(capsys, ["dual", "--complex", chain])
    assert code == 0
    code, out, _ = run(capsys, ["decompose", "--complex", chain])
    assert out.strip() == "decomposable"
    cycle = files("cycle.json",
                  {"p": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]})
    code, out, _ = run(capsys, ["decompose", "--complex", cycle])
    assert code == 0 and out.startswith("not decomposable")
    code, out, _ = run(capsys, ["factorize", "--complex", chain])
    assert out.strip() == "f{123} f{234} f{345} / f{23} f{34}"
    code, out, _ = run(capsys, ["marginalize", "--complex", chain,
                                "--strip", "1"])
    assert out.strip() == "{2,3,4}, {3,4,5}"
    ideal = files("ideal.json", {"p": 5,
                                 "generators": [[1, 4], [1, 5], [2, 5]]})
    code, out, _ = run(capsys, ["marginalize", "--ideal", ideal,
                                "--strip", "1"])
    assert out.strip() == "x2*x5"
    code, _, err = run(capsys, ["marginalize", "--strip", "1"])
    assert code == 1 and "error:" in err


def test_linear_resolution_and_ferrer(files, capsys):
    ideal = files("i.json", {"p": 5, "generators": [[1, 4], [1, 5], [2, 5]]})
    code, out, _ = run(capsys, ["linear-resolution", "--ideal", ideal])
    assert out.strip() == "2-linear: true"
    nine = files("nine.json", {"p": 9, "generators": [
        [1, 6], [1, 7], [1, 8], [2, 6], [2, 7], [3, 6], [3, 7], [4, 6],
        [5, 6]]})
    code, out, _ = run(capsys, ["ferrer", "--ideal", nine])
    assert "lambda: 3,2,2,1,1" in out
    assert "{1,2,3,4,5,9}" in out and "{6,7,8,9}" in out


def test_network_commands(files, capsys):
    net = files("net.json", BRIDGE)
    code, out, _ = run(capsys, ["network-cuts", "--network", net])
    assert out.strip() == "{1,4}, {2,5}, {1,3,5}, {2,3,4}"
    code, out, _ = run(capsys, ["network-paths", "--network", net])
    assert out.strip() == "{1,2}, {4,5}, {1,3,5}, {2,3,4}"
    code, out, _ = run(capsys, ["network-ideals", "--network", net])
    assert "cut ideal: x1*x4, x2*x5, x1*x3*x5, x2*x3*x4" in out
    assert "path ideal: x1*x2, x4*x5, x1*x3*x5, x2*x3*x4" in out
    code, out, _ = run(capsys, ["network-duality", "--network", net])
    assert code == 0 and out.count("PASS") == 4


def test_nerve_command(files, capsys):
    pts = files("pts.csv", "0\n1\n3\n")
    code, out, _ = run(capsys, ["nerve", "--points", pts,
                                "--filtration", "0.4,0.6,1.1,1.6"])
    lines = out.strip().splitlines()
    assert lines[0] == "r=0.4: {1}, {2}, {3} decomposable=true"
    assert lines[3] == "r=1.6: {1,2,3} decomposable=true"
    code, out, _ = run(capsys, ["nerve", "--points", pts,
                                "--radius", "1.1"])
    assert out.strip() == "{1,2}, {2,3}"
    code, _, err = run(capsys, ["nerve", "--points", pts])
    assert code == 1 and "radius" in err


def test_partition_commands(files, capsys):
    code, out, _ = run(capsys, ["partitions", "--k", "2,2"])
    assert code == 0 and len(out.strip().splitlines()) == 9
    code, out, _ = run(capsys, ["collapse", "--partition",
                                "1,0,1|0,0,1"])
    assert out.strip() == "2"
    code, out, _ = run(capsys, ["chain-rule", "--k", "1,0,2"])
    assert "c=2 outer=2 inner=1,0,1;0,0,1" in out
    moments = files("m.json", {"1,0,2": "7/3", "1,0,1": "5/2",
                               "1,0,0": "-1/4", "0,0,2": "11/5",
                               "0,0,1": "2/7"})
    code, out, _ = run(capsys, ["cumulant-from-moments", "--k", "1,0,2",
                                "--moments", moments])
    from fractions import Fraction
    want = (Fraction(7, 3) - Fraction(-1, 4) * Fraction(11, 5)
            - 2 * Fraction(5, 2) * Fraction(2, 7)
            + 2 * Fraction(-1, 4) * Fraction(2, 7) ** 2)
    assert out.strip() == str(want)


def test_polynomial_commands(files, capsys):
    code, out, _ = run(capsys, ["parse-poly", "--poly",
                                "x1*x2 - 1/2*x1^2", "--p", "2"])
    assert out.strip() == "-1/2*x1^2 + x1*x2"
    chain = files("chain2.json", {"p": 2, "facets": [[1], [2]]})
    code, out, _ = run(capsys, ["check-model", "--poly", "x1*x2",
                                "--p", "2", "--complex", chain])
    assert code == 0 and out.startswith("not hierarchical")
    code, out, _ = run(capsys, ["artinian", "--poly", "x1^2*x2",
                                "--p", "2", "--n", "3,2"])
    assert out.strip() == "true"
    gauss = files("g.json", {"mean": [0, 0, 0, 0], "precision": [
        [2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]})
    code, out, _ = run(capsys, ["gaussian-ideal", "--gaussian", gauss])
    assert out.strip() == "x1*x3, x1*x4, x2*x4"
    mec = files("mec.json", {"p": 2, "coeffs": {"11": "-1/2", "10": "1"}})
    code, out, _ = run(capsys, ["mec", "--spec", mec])
    assert "g = -1/2*x1*x2 + x1" in out


def test_numeric_commands(files, capsys):
    dens = files("d.json", GAUSS)
    code, out, _ = run(capsys, ["diff-moment", "--density", dens,
                                "--xi", "0,0", "--k", "1,1"])
    assert code == 0 and abs(float(out) - 2 / 3) < 1e-6
    code, out, _ = run(capsys, ["diff-cumulant", "--density", dens,
                                "--xi", "0,0", "--k", "1,1",
                                "--method", "logderiv"])
    assert abs(float(out) - 2 / 3) < 1e-6
    code, out, _ = run(capsys, ["local-moment", "--density", dens,
                                "--xi", "0,0", "--eps", "0.1",
                                "--k", "1,1"])
    ratio = float(out) / (0.1 ** 4 / 9)
    assert abs(ratio - 2 / 3) < 0.05
    code, out, _ = run(capsys, ["limit-probe", "--density", dens,
                                "--xi", "0,0", "--k", "1,1",
                                "--eps-seq", "0.4,0.2,0.1"])
    assert code == 0 and out.strip().endswith("CONVERGED")
    code, out, _ = run(capsys, ["limit-probe", "--density", dens,
                                "--xi", "0.6,-0.4", "--k", "2,0",
                                "--eps-seq", "0.4,0.2,0.1"])
    assert out.strip().endswith("NOT-CONVERGED")


def test_ci_generators_command(capsys):
    code, out, _ = run(capsys, ["ci-generators", "--p", "3", "--i", "1",
                                "--j", "2", "--given", "3"])
    assert code == 0 and out.strip() == "1,1,0"


def test_domain_errors_exit_one(files, capsys, tmp_path):
    code, _, err = run(capsys, ["sr", "--complex",
                                str(tmp_path / "missing.json")])
    assert code == 1 and err.startswith("error:")
    bad = files("bad.json", "{not json")
    code, _, err = run(capsys, ["sr", "--complex", bad])
    assert code == 1 and "bad JSON" in err
    void = files("void.json", {"p": 2, "facets": []})
    code, _, err = run(capsys, ["sr", "--complex", void])
    assert code == 1 and "unit ideal" in err


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["sr"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_entry_point_and_determinism(files, tmp_path):
    chain = tmp_path / "chain.json"
    chain.write_text(json.dumps(CHAIN))
    cmd = [sys.executable, "-m", "hmi.cli", "factorize", "--complex",
           str(chain), "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["separators"] == [[2, 3], [3, 4]]
