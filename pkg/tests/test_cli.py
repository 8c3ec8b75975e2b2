import json
import subprocess
import sys
from pathlib import Path

import pytest

from doublepoint.cli import main
from doublepoint.expr import parse_qclass, parse_sq, parse_wmonomial
from doublepoint.errors import ExprSyntaxError
from doublepoint.qmo import QClass, qmo_basis

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "doublepoint.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_golden_classify_json():
    code, out, _ = run_cli("classify", "--k", "7", "--json")
    assert code == 0
    assert out == (GOLDEN / "classify_k7.json").read_text()
    payload = json.loads(out)
    assert payload["result"]["odd_achievable"] is True
    assert payload["result"]["criterion"] == "wbar2*wbar7[M]"


def test_golden_xi():
    code, out, _ = run_cli("xi", "--k", "3", "--expr", "Q^5(e[1,1,1])")
    assert code == 0
    assert out == (GOLDEN / "xi_k3.txt").read_text()


def test_golden_adem():
    code, out, _ = run_cli("adem", "--expr", "Sq^2 Sq^4")
    assert code == 0
    assert out == (GOLDEN / "adem_sq2sq4.txt").read_text()


def test_json_byte_stability():
    runs = [run_cli("classify", "--k", "5", "--json")[1] for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [
        run_cli("coproduct", "--k", "2", "--expr", "e[3,3]", "--reduced", "--json")[1]
        for _ in range(2)
    ]
    assert runs[0] == runs[1]


def test_parse_render_roundtrip():
    for k in range(1, 7):
        for dim in range(k, 17):
            for m in qmo_basis(k, dim):
                rendered = m.render()
                parsed = parse_qclass(rendered, expected_k=k)
                assert parsed == QClass.single(k, m), rendered


def test_parse_examples():
    c = parse_qclass("e[1,1,1]*e[1,2,2]")
    assert c.render() == "e[1,1,1]*e[1,2,2]"
    c = parse_qclass("Q^5(e[1,1,1])")
    assert c.render() == "Q^5(e[1,1,1])"
    c = parse_qclass(" e[1,2] * e[1,2] + Q^4(e[1,1]) ", expected_k=2)
    assert c.render() == "e[1,2]*e[1,2] + Q^4(e[1,1])"


def test_parse_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse_qclass("e[1,2")
    assert err.value.position == 5
    with pytest.raises(ExprSyntaxError):
        parse_qclass("e[1,1]*e[1,1,1]")  # inconsistent k
    with pytest.raises(ExprSyntaxError):
        parse_sq("Sq^2 Sq")
    with pytest.raises(ExprSyntaxError):
        parse_wmonomial("w0")


def test_parse_w():
    assert parse_wmonomial("w1^2*w3") == ((1, 2), (3, 1))
    assert parse_wmonomial("w2*w2*w5") == ((2, 2), (5, 1))


def test_exit_codes():
    code, _, err = run_cli("xi", "--k", "2", "--expr", "e[1,2")
    assert code == 2 and "offset 5" in err
    code, _, err = run_cli("sqdual", "--i", "9", "--k", "3", "--expr", "Q^9(Q^5(e[1,1,1]))")
    assert code == 1 and "inadmissible composition" in err
    code, _, err = run_cli("swnumber", "--manifold", "Dold(r=2)", "--number", "w2*w2")
    assert code == 2 and "degree mismatch" in err


def test_subcommands_in_process(capsys):
    assert main(["coproduct", "--k", "2", "--expr", "e[3,3]", "--reduced"]) == 0
    assert capsys.readouterr().out.strip() == (
        "e[1,1] (x) e[2,2] + e[2,2] (x) e[1,1]"
    )

    assert main(["sqdual", "--i", "1", "--k", "4", "--expr", "Q^6(e[1,1,1,1])"]) == 0
    assert capsys.readouterr().out.strip() == "Q^5(e[1,1,1,1])"

    assert main(["sqact", "--a", "1", "--on", "w3", "--vars", "3"]) == 0
    assert capsys.readouterr().out.strip() == "w1*w3"

    assert main(["swnumber", "--manifold", "RP(4)xRP(2)", "--number", "w2*w4"]) == 0
    assert capsys.readouterr().out.strip() == "1"

    assert main(["basis", "--k", "3", "--dim", "8", "--height", "1"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "e[1,1,6]", "e[1,2,5]", "e[1,3,4]", "e[2,2,4]", "e[2,3,3]",
    ]

    assert main(["primitives", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "Q^3(e[1])" in out and "e[1]*e[1]*e[1]*e[1]" in out

    assert main(["lemma55", "--r", "1"]) == 0
    out = capsys.readouterr().out
    assert "chain verified: yes" in out


def test_json_envelope_fields(capsys):
    assert main(["adem", "--expr", "Sq^1 Sq^1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"command", "inputs", "result", "citations"}
    assert payload["result"] == "0"
