import json
import random
import subprocess
import sys

import pytest
from hypothesis import given

from smoc.cli import main
from smoc.normalform import denote, normalize
from smoc.syntax import (ParseError, ValidationError, parse, parse_bigrade, parse_type, print_expr, random_expr,
                         tokenize)
from smoc.trees import Leaf, Merge, Xi, element_expr
from strategies import normal_forms, raw_terms


def test_parse_examples():
    assert parse("xi[1,2](x1:4)") == Xi(1, 2, Leaf(1, 4))
    assert parse("m(x1:2, xi[1,2](x2:4))") == Merge(Leaf(1, 2), Xi(1, 2, Leaf(2, 4)))
    assert parse("  m ( x1 : 2 ,xi [ 1 , 2 ] ( x2:4 ) ) ") == parse("m(x1:2, xi[1,2](x2:4))")


@pytest.mark.parametrize("text, offset", [
    ("xi[1,2](x1:4", 12),
    ("m(x1:2 x2:2)", 7),
    ("q", 0),
    ("xi[1;2](x1:4)", 4),
    ("é x1:2", 0),
    ("x1:2 x2:2", 5),
])
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.offset == offset


def test_byte_offsets_count_utf8():
    with pytest.raises(ParseError) as err:
        parse("m(x1:2,é)")
    assert err.value.offset == 7
    assert tokenize("x1:2")[-1] == ("end", "", 4)


@pytest.mark.parametrize("text, message", [
    ("xi[3,2](x1:4)", "i < j"),
    ("xi[1,5](x1:4)", "<= 4"),
    ("p[1 1](x1:2)", "not a permutation"),
    ("p[2 1](x1:3)", "degree"),
    ("m(x1:2, x1:2)", "exactly once"),
    ("m(x1:2, x3:2)", "exactly once"),
    ("x0:2", "at least 1"),
])
def test_validation_errors(text, message):
    with pytest.raises(ValidationError, match=message):
        parse(text)


@given(raw_terms(max_inputs=4, max_gluings=3))
def test_round_trip(raw):
    text = print_expr(raw)
    assert parse(text) == raw
    assert print_expr(parse(text)) == text


@given(normal_forms())
def test_printed_denotation_renormalizes(n):
    text = print_expr(element_expr(denote(n)))
    back = normalize(parse(text), n.mode)
    assert back == (n if denote(n).sign == 1 else n.negate())


def test_random_expressions_are_valid_and_deterministic():
    a = [print_expr(random_expr(random.Random(7), max_vertices=20)) for _ in range(3)]
    b = [print_expr(random_expr(random.Random(7), max_vertices=20)) for _ in range(3)]
    assert a == b
    rng = random.Random(1)
    for _ in range(200):
        t = random_expr(rng, max_vertices=6, output=3)
        assert t.color == 3


def test_type_and_bigrade_parsing():
    assert parse_type("(2,2;0)") == ((2, 2), 0)
    assert parse_type(" ( 1, 1 , 1 ; 3 ) ") == ((1, 1, 1), 3)
    assert parse_bigrade("(2,1)") == (2, 1)
    for bad in ("(2,2)", "(;1)", "(a;1)", "(1;1;1)"):
        with pytest.raises(ParseError):
            parse_type(bad)
    with pytest.raises(ParseError):
        parse_bigrade("(1,2,3)")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_normalize(capsys):
    code, out, _ = run(["normalize", "m(x1:2, p[2 1](xi[1,2](x2:4)))"], capsys)
    assert code == 0
    assert json.loads(out) == {"mode": "even", "inputs": [2, 4], "output": 4, "sign": 1,
                               "sigma": [1, 2, 4, 3], "matching": [[3, 4]]}


def test_cli_eq(capsys):
    a, b = "xi[1,2](xi[1,2](x1:4))", "xi[1,2](xi[3,4](x1:4))"
    assert run(["eq", a, b], capsys)[:2] == (0, "equal\n")
    assert run(["eq", a, b, "--odd"], capsys)[:2] == (1, "equal-up-to-sign(-1)\n")
    assert run(["eq", a, "xi[1,2](xi[1,3](x1:4))"], capsys)[:2] == (1, "distinct\n")


def test_cli_count(capsys):
    code, out, _ = run(["count", "--type", "(4;0)", "--bigrade", "(2,0)", "--odd"], capsys)
    d = json.loads(out)
    assert code == 0 and d["classes"] == 3 and d["consistent"] and d["expected"] == 3


def test_cli_errors_exit_2(capsys):
    assert run(["normalize", "xi[3,2](x1:4)"], capsys)[0] == 2
    assert run(["normalize", "m(x1:2"], capsys)[0] == 2
    assert run(["count", "--type", "(6;0)", "--bigrade", "(3,0)", "--limit", "3"], capsys)[0] == 2
    assert run(["count", "--type", "nonsense", "--bigrade", "(3,0)"], capsys)[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2
    capsys.readouterr()


def test_cli_verify(capsys):
    code, out, _ = run(["verify", "rho", "--max-n", "6"], capsys)
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(["verify", "ranks", "--max", "5"], capsys)
    assert code == 0 and json.loads(out)["check"] == "ranks"


def test_cli_limit_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SMOC_LIMIT", "3")
    assert run(["count", "--type", "(6;0)", "--bigrade", "(3,0)"], capsys)[0] == 2


def test_console_script_exit_codes():
    cmd = [sys.executable, "-m", "smoc.cli"]
    ok = subprocess.run(cmd + ["eq", "x1:2", "p[1 2](x1:2)"], capture_output=True, text=True)
    bad = subprocess.run(cmd + ["eq", "x1:2", "p[2 1](x1:2)"], capture_output=True, text=True)
    err = subprocess.run(cmd + ["normalize", "xi[1,2]"], capture_output=True, text=True)
    assert (ok.returncode, bad.returncode, err.returncode) == (0, 1, 2)
    assert "byte" in err.stderr
