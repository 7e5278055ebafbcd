import json
import subprocess
import sys

import pytest

from lamplighter.cli import main, parse_bound, parse_mu, run
from lamplighter.errors import InvalidInput


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    data = json.loads(capsys.readouterr().out)
    return code, data


def test_spectrum_mass(capsys):
    code, data = run_json(capsys, "spectrum", "--U", "C2", "--e", "avg", "--mu", "rot:1/2")
    assert code == 0 and data["status"] == "ok"
    assert data["schema"] == "1"
    assert data["payload"]["mu"]["mass"] == {"exact": "1/3", "decimal": "0.333333333333333"}


def test_spectrum_rotation_alias(capsys):
    code, data = run_json(capsys, "spectrum", "--U", "C2", "--e", "avg", "--mu", "1/2pi-rotation:1/2")
    assert data["payload"]["mu"]["mass"]["exact"] == "1/3"


def test_spectrum_verify(capsys):
    code, data = run_json(capsys, "spectrum", "--U", "C2", "--e", "avg", "--verify", "--nmax", "4")
    assert code == 0
    assert all(data["payload"]["checks"].values())


def test_spectrum_trivial_projection(capsys):
    code, data = run_json(capsys, "spectrum", "--U", "C1", "--e", "avg")
    assert code == 2 and data["status"] == "invalid-input"


def test_spectrum_trace_projection(capsys):
    code, data = run_json(capsys, "spectrum", "--e", "trace:2/5", "--mu", "rot:1/3")
    assert code == 0
    assert data["payload"]["W"]["exact"] == "5/2"
    assert data["payload"]["mu"]["mass"]["exact"] == "2/13"  # (3/2)^2 / ((5/2)^3 - 1)


def test_kappa_twelve_digits(capsys):
    code, data = run_json(capsys, "kappa", "--p", "1/2", "--q", "1/2", "--digits", "12")
    assert code == 0
    assert data["payload"]["kappa"]["value"] == "0.165945714931"


def test_kappa_rationality_verdict(capsys):
    code, data = run_json(capsys, "kappa", "--p", "1/2", "--q", "1/2", "--digits", "210", "--bound", "1e100")
    kappa = data["payload"]["kappa"]
    assert code == 0
    assert kappa["verdict"].startswith("if rational")
    assert kappa["probe"]["denominator_exceeds_bound"]
    assert kappa["tail_exp"] < -200


def test_kappa_invalid(capsys):
    code, data = run_json(capsys, "kappa", "--p", "2", "--q", "1/2")
    assert code == 2 and data["status"] == "invalid-input"


def test_kappa_budget(capsys):
    code, data = run_json(capsys, "kappa", "--p", "1/2", "--q", "1/2", "--digits", "20000")
    assert code == 3 and data["status"] == "budget-exceeded"


def test_dimker(capsys):
    code, data = run_json(capsys, "dimker", "--p", "1/2", "--q", "1/2", "--N", "60", "--cross-check", "--Z")
    assert code == 0
    assert data["payload"]["checks"] == {"single_sum_agrees": True, "Z_integral": True, "Z_eigen": True}
    assert data["payload"]["Z"]["multiplier"] == 4


def test_projection(capsys):
    code, data = run_json(capsys, "projection", "--q", "1/3")
    assert code == 0
    assert data["payload"]["certificate"]["n"] == 6


def test_gaps(capsys):
    code, data = run_json(capsys, "gaps", "--Q", "2", "--N", "2")
    assert code == 0 and data["payload"]["mQ"] == "216"


def test_series(capsys):
    code, data = run_json(capsys, "series", "--K", "50")
    assert code == 0 and all(data["payload"]["checks"].values())


def test_text_output(capsys):
    assert main(["projection", "--q", "1/3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("projection: ok")


def test_run_is_deterministic():
    a = run(["--seed", "3", "gaps", "--Q", "3", "--N", "2"])
    b = run(["--seed", "3", "gaps", "--Q", "3", "--N", "2"])
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_parse_helpers():
    assert parse_mu("rot:1/3") == (1, 3)
    assert parse_mu("0.5") == "0.5"
    with pytest.raises(InvalidInput):
        parse_mu("half")
    assert parse_bound("1e100") == 10 ** 100
    assert parse_bound("10^100") == 10 ** 100
    assert parse_bound("12345") == 12345
    with pytest.raises(InvalidInput):
        parse_bound("1.5")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lamplighter", "--json", "projection", "--q", "1/2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "ok"
