import json
import subprocess
import sys

import pytest

from kummerflags.cli import main
from kummerflags.config import load_config, parse_vector
from kummerflags.report import expand_ranges, parse_machine


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    return code, parse_machine(out), out


@pytest.mark.parametrize("name, count", [("hermitian16", 65), ("koetter2", 33)])
def test_places(capsys, name, count):
    code, rep, _ = machine(capsys, "places", "--config", name)
    assert code == 0 and rep.get("count") == str(count)
    assert rep.get("place.0") == "P_inf"


def test_header(capsys):
    _, rep, _ = machine(capsys, "places", "--config", "hermitian16", "--seed", "7")
    assert rep.get("curve") == "y^5=x^4+x over GF(16)"
    assert rep.get("genus") == "6" and rep.get("seed") == "7" and rep.get("beta") == "2"


def test_isodual_beta2(capsys, herm):
    code, rep, _ = machine(capsys, "isodual", "--config", "hermitian16")
    assert code == 0 and rep.get("status") == "Dual"
    x = parse_vector(herm.field, rep.get("x"))
    assert (x == herm.expected_vector("x")).all()
    assert rep.get("seconds") is None


def test_isodual_beta37(capsys, herm):
    code, rep, _ = machine(capsys, "isodual", "--config", "hermitian16", "--beta", "37")
    assert code == 0 and rep.get("status") == "SelfOrthogonal"
    assert expand_ranges(rep.get("hstar")) == expand_ranges(herm.expected("h_star_37"))
    assert rep.get_all("dual_pair")[:3] == ["-36:35", "-35:31", "-31:30"]


def test_isodual_not_dual(capsys):
    code, rep, _ = machine(capsys, "isodual", "--config", "hermitian16", "--beta", "3")
    assert code == 2 and rep.get("status") == "NotDual"


def test_isodual_human_has_seconds(capsys):
    code, out, _ = run(capsys, "isodual", "--config", "koetter2")
    assert code == 0 and "seconds" in out and "status" in out


def test_selforth(capsys):
    code, rep, _ = machine(capsys, "selforth", "--config", "hermitian16")
    assert code == 0
    assert rep.get("beta_prime") == "37" and rep.get("f_y") == "α^8*x^7"
    assert rep.get("verified") == "true" and rep.get("verification_mode") == "ExactDivisor"


def test_selforth_odd_char(capsys):
    code, out, err = run(capsys, "selforth", "--config", "f121")
    assert code == 1 and "OddCharacteristic" in err and out == ""


def test_malformed_modulus(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"field": {"p": 2, "k": 4, "modulus": "x^4+x^2+1"},
                             "curve": {"m": 5, "f": "x^4+x"}, "Q": ["0"], "beta": [2]}))
    code, _, err = run(capsys, "places", "--config", str(p))
    assert code == 1 and "ReducibleModulus" in err


def test_wrong_beta_length(capsys):
    code, _, err = run(capsys, "flag", "--config", "f121", "--beta", "1")
    assert code == 1 and "beta" in err


def test_hstar_window(capsys, k2):
    code, rep, _ = machine(capsys, "hstar", "--config", "koetter2", "--window=-2..33")
    assert code == 0
    assert rep.get("hstar") == "0..30" and rep.get("h") == "0..33"


def test_flag(capsys):
    code, rep, _ = machine(capsys, "flag", "--config", "koetter2")
    assert code == 0 and rep.get("a0") == "-1" and rep.get("a_values") == "-1..30"
    assert rep.get("dims") == ",".join(map(str, range(32)))


def test_translate_function(capsys):
    code, rep, _ = machine(capsys, "translate", "--config", "hermitian16", "--f", "α^7*x^-7")
    assert code == 0
    assert rep.get("u") == "35" and rep.get("beta_prime") == "37"
    assert rep.get("h_shift") == "true" and rep.get("hstar_shift") == "true"
    assert rep.get("x_prediction_confirmed") == "true"


def test_translate_lambda(capsys, f121):
    code, rep, _ = machine(capsys, "translate", "--config", "f121", "--lambda-tilde", "120,120")
    assert code == 0 and rep.get("beta_prime") == "301,301"
    assert rep.get("verified") == "true" and rep.get("identical") == "false"
    v = [int(a) for a in rep.get("v").split(",")]
    expect = parse_vector(f121.field, f121.expected("v"))
    assert [1 if a == 1 else -1 for a in expect.tolist()] == v


def test_translate_needs_argument(capsys):
    code, _, err = run(capsys, "translate", "--config", "hermitian16")
    assert code == 1 and "--f" in err


def test_period_t0_bounds(capsys):
    _, rep, _ = machine(capsys, "period", "--config", "f121")
    assert rep.get("period.Q1") == "5" and rep.get("period.Q2") == "5"
    _, rep, _ = machine(capsys, "t0", "--config", "f121")
    assert rep.get("size") == "5" and rep.get_all("member")[1] == "1,1"
    _, rep, _ = machine(capsys, "bounds", "--config", "f121")
    assert rep.get("iso_vector_bound") == "18000" and rep.get("flag_bound") == "36000"
    assert rep.get("interpretation")
    _, rep, _ = machine(capsys, "bounds", "--config", "hermitian16")
    assert rep.get("iso_vector_bound") == "15" and rep.get("interpretation") is None


def test_gamma_hermitian(capsys):
    code, rep, _ = machine(capsys, "gamma", "--config", "hermitian16", "--lambda-box=-2..4",
                           "--negatives", "4")
    assert code == 0
    assert rep.get_all("gamma") == ["-3", "2", "7", "12"]
    assert set(rep.get_all("confirmed")) == {"true"}
    assert all(s.endswith(":NotDual") for s in rep.get_all("off_lattice"))


def test_gamma_empty_box(capsys):
    code, rep, _ = machine(capsys, "gamma", "--config", "hermitian16", "--lambda-box", "1..0")
    assert code == 0 and rep.get("count") == "0"


def test_gamma_f121_includes_translate(capsys, f121):
    code, rep, _ = machine(capsys, "gamma", "--config", "f121", "--lambda-box",
                           "120..120,120..120", "--negatives", "0")
    # theta = (k, k) with k even keeps theta + 600 even
    assert code == 0 and rep.get_all("gamma") == ["301,301", "302,302", "303,303"]
    assert set(rep.get_all("confirmed")) == {"true"}
    _, iso, _ = machine(capsys, "isodual", "--config", "f121")
    assert rep.get_all("x")[0] == iso.get("x")
    assert load_config("f121").beta == (1, 1)


def test_same_seed_same_bytes(capsys):
    args = ("gamma", "--config", "hermitian16", "--lambda-box=-1..3", "--negatives", "3",
            "--seed", "11")
    _, _, a = machine(capsys, *args)
    _, _, b = machine(capsys, *args, "--threads", "2")
    _, _, c = machine(capsys, *args)
    assert a == b == c
    assert parse_machine(a).render("machine") == a


def test_bad_window_argument(capsys):
    with pytest.raises(SystemExit):
        main(["hstar", "--config", "koetter2", "--window", "7"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kummerflags.cli", "places", "--config",
                           "koetter2", "--format", "machine"], capture_output=True, text=True)
    assert proc.returncode == 0 and "count=33" in proc.stdout
