import json

import pytest

from qintertwine.cli.config import ConfigError, parse_caps, parse_q
from qintertwine.cli.main import main
from qintertwine.cli.parser import ParseError, parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("expr,expected", [
    ("z1*z0", "q^-1 * z0 z1"),
    ("z0 z0*", "x0 + x1"),
    ("z0*z1 - q*z1*z0", "0"),
    ("(z0 + z1)^2", "z0^2 + (q^-1 + 1) * z0 z1 + z1^2"),
    ("q^(1/2) * x1 - q^(1/2)*x1", "0"),
    ("K1*K2 - q^2*K2*K1 - (1 - q^2)*t*tau", "0"),
])
def test_normalize_examples(capsys, expr, expected):
    code, out, _ = run(capsys, "normalize", expr)
    assert code == 0
    js = json.loads(out)
    assert js["schema"] == 1 and js["normal_form"] == expected


def test_normalize_json_terms(capsys):
    _, out, _ = run(capsys, "normalize", "z1 z0")
    assert json.loads(out)["terms"] == [{"I": [0, 0], "J": [1, 1], "Iprime": [], "Jprime": [],
                                         "x": [0, 0], "xi": [], "coeff": "q^-1"}]


def test_output_bit_identical(capsys):
    a = run(capsys, "normalize", "(z0 + z1* + x1)^3", "--n", "1")[1]
    b = run(capsys, "normalize", "(z0 + z1* + x1)^3", "--n", "1")[1]
    assert a == b


def test_numeric_q_modes(capsys):
    _, out, _ = run(capsys, "normalize", "z1 z0", "--q", "1/4")
    assert json.loads(out)["normal_form"] == "4 * z0 z1"
    code, _, err = run(capsys, "normalize", "z1 z0", "--q", "1/3")
    assert code == 2 and "power" in err
    _, out, _ = run(capsys, "normalize", "z1 z0", "--q", "0.5")
    (term,) = json.loads(out)["terms"]
    assert float(term["coeff"]) == pytest.approx(2.0, rel=1e-15)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "normalize", "z0 z0*", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "I,J,Iprime,Jprime,x,xi,coeff" and len(lines) == 3


@pytest.mark.parametrize("argv", [
    ["normalize", "z0 +"],
    ["normalize", "z5", "--n", "1"],
    ["normalize", "z0", "--caps", ""],
    ["normalize", "z0", "--caps", "M=-1"],
    ["normalize", "z0", "--q", "2"],
    ["normalize", "z0", "--beta", "3/2"],
    ["normalize", "z0", "--config", "/nonexistent/file"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_has_caret(capsys):
    code, _, err = run(capsys, "normalize", "z0 * * z1")
    assert code == 2 and "^" in err
    with pytest.raises(ParseError):
        parse("z0 )")


def test_config_file_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# rank two\nn = 2\nq = 0.5\nformat = json\n")
    _, out, _ = run(capsys, "normalize", "z1 z1*", "--config", str(cfg))
    js = json.loads(out)
    assert js["config"]["n"] == 2 and js["normal_form"] == "x1 - x2"
    _, out, _ = run(capsys, "normalize", "z1 z1*", "--config", str(cfg), "--n", "1", "--q", "symbolic")
    js = json.loads(out)
    assert js["config"]["n"] == 1 and js["normal_form"] == "x1"


def test_caps_and_q_parsing():
    caps = parse_caps("M=4,tol=1e-12")
    assert caps["M"] == 4 and caps["tol"] == 1e-12 and caps["I"] == 12
    with pytest.raises(ConfigError):
        parse_caps("X=1")
    assert parse_q("symbolic") == ("symbolic", None)
    assert parse_q("0.3") == ("float", 0.3)


def test_verify_kernels(capsys):
    code, out, _ = run(capsys, "verify", "kernels")
    js = json.loads(out)
    assert code == 0 and js["status"] == "pass"
    ids = [r["id"] for r in js["identities"]]
    assert ids == sorted(ids)
    assert set(js["identities"][0]) == {"id", "property", "status", "runtime", "detail"}


def test_eval_spherical_and_pfaff(capsys):
    code, out, _ = run(capsys, "eval", "spherical", "--l", "1", "--x", "0.3", "--q", "0.5")
    assert code == 0 and json.loads(out)["result"]["value"] == pytest.approx(1.75)
    code, out, _ = run(capsys, "eval", "spherical", "--l", "3", "--q", "0.7", "--pfaff-check")
    assert code == 0 and json.loads(out)["result"]["relative_error"] < 1e-12


def test_eval_phi_divergent_exit_1(capsys):
    code, out, _ = run(capsys, "eval", "phi", "--num", "0.5", "--x", "1.5", "--base", "0.5",
                       "--max-terms", "40")
    assert code == 1 and json.loads(out)["result"]["status"] == "no-convergence"


def test_eval_poisson_power(capsys):
    code, out, _ = run(capsys, "eval", "poisson-power", "--q", "0.5", "--lambda", "0.5", "--x", "0.2")
    res = json.loads(out)["result"]
    assert code == 0 and res["relative_error"] < 1e-12
