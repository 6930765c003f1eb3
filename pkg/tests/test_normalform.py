import json

import pytest
from hypothesis import given, strategies as st

from smoc.normalform import (EVEN, ODD, NormalForm, act, act_left, act_right, compose_at, denote, equal,
                             relabel_inputs, normalize)
from smoc.symcore import identity, shuffle
from smoc.syntax import parse
from smoc import trees
from smoc.trees import ColorError, Leaf, Merge, Xi, element_expr, graft, infer_type
from strategies import modes, normal_forms, raw_terms


def nf(text, mode=EVEN):
    return normalize(parse(text), mode)


def test_normalize_examples():
    a = nf("xi[1,2](xi[1,2](x1:4))")
    assert a.matching == ((1, 2), (3, 4)) and a.sigma == () and a.sign == 1
    assert nf("xi[1,2](xi[3,4](x1:4))") == a


def test_odd_pair_differs_by_sign():
    a = nf("xi[1,2](xi[1,2](x1:4))", ODD)
    b = nf("xi[1,2](xi[3,4](x1:4))", ODD)
    assert a == b.negate() and b.sign == 1
    assert equal(parse("xi[1,2](xi[1,2](x1:4))"), parse("xi[1,2](xi[3,4](x1:4))"), ODD) == "equal-up-to-sign(-1)"


def test_denote_examples():
    assert denote(NormalForm(EVEN, (3,), 3, 1, (1, 2, 3), ())).tree == Leaf(1, 3)
    e = denote(NormalForm(EVEN, (4,), 0, 1, (), ((1, 2), (3, 4))))
    assert e.tree == parse("xi[1,2](xi[3,4](x1:4))")
    sigma = (3, 1, 4, 2)
    e = denote(NormalForm(EVEN, (2, 2), 4, 1, sigma, ()))
    assert e.sigma == sigma and e.tree == Merge(Leaf(1, 2), Leaf(2, 2))


def test_invalid_normal_forms():
    with pytest.raises(ValueError):
        NormalForm(EVEN, (4,), 2, 1, (1, 2), ((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        NormalForm(EVEN, (4,), 2, -1, (1, 2), ((1, 2),))
    with pytest.raises(ValueError):
        NormalForm(EVEN, (4,), 1, 1, (1,), ((1, 2),))


@given(normal_forms())
def test_normalize_denote_roundtrip(n):
    assert normalize(denote(n), n.mode) == n


@given(raw_terms(max_gluings=3), modes)
def test_normalize_is_deterministic_and_valid(raw, mode):
    a = normalize(raw, mode)
    ty = infer_type(raw)
    assert a == normalize(raw, mode)
    assert a.inputs == ty.inputs and a.output == ty.output and a.bigrade == ty.bigrade


def test_json_is_stable():
    a = nf("m(x1:2, p[2 1](xi[1,2](x2:4)))")
    assert a.to_json() == ('{"mode": "even", "inputs": [2, 4], "output": 4, "sign": 1, '
                           '"sigma": [1, 2, 4, 3], "matching": [[3, 4]]}')
    assert list(json.loads(a.to_json())) == ["mode", "inputs", "output", "sign", "sigma", "matching"]


def test_compose_examples():
    outer = nf("m(x1:2, x2:2)")
    inner = nf("m(x1:1, x2:1)")
    got = compose_at(outer, 1, inner)
    assert got.inputs == (1, 1, 2) and got.matching == () and got.sigma == identity(4)
    unit = nf("x1:2")
    assert compose_at(outer, 2, unit) == outer
    assert compose_at(nf("x1:4"), 1, outer) == outer
    with pytest.raises(ColorError):
        compose_at(outer, 1, nf("x1:3"))
    with pytest.raises(ColorError):
        compose_at(outer, 3, unit)


@st.composite
def composable(draw):
    mode = draw(modes)
    outer = draw(raw_terms(max_inputs=3, max_color=3, max_gluings=2))
    colors = infer_type(outer).inputs
    i = draw(st.integers(1, len(colors)))
    s = draw(st.integers(0, 1))
    need = colors[i - 1] + 2 * s
    r = draw(st.integers(1, 2))
    split = draw(st.integers(0, need)) if r == 2 else need
    inputs = [split, need - split] if r == 2 else [need]
    inner = draw(raw_terms(inputs=inputs, max_gluings=0))
    for _ in range(s):
        inner = Xi(1, 2, inner)
    return mode, outer, i, inner


@given(composable())
def test_compose_matches_graft_of_denotations(args):
    mode, outer, i, inner = args
    a, b = normalize(outer, mode), normalize(inner, mode)
    da, db = denote(a), denote(b)
    grafted = normalize(graft(element_expr(da), i, element_expr(db)), mode)
    if da.sign * db.sign == -1:
        grafted = grafted.negate()
    got = compose_at(a, i, b)
    assert got == grafted
    assert got.bigrade == (a.bigrade[0] + b.bigrade[0], a.bigrade[1] + b.bigrade[1])


@given(composable(), st.data())
def test_compose_associative(args, data):
    mode, outer, i, inner = args
    a, b = normalize(outer, mode), normalize(inner, mode)
    j = data.draw(st.integers(1, len(b.inputs)))
    c = NormalForm(mode, (b.inputs[j - 1],), b.inputs[j - 1], 1, identity(b.inputs[j - 1]), ())
    sigma = tuple(data.draw(st.permutations(range(1, c.output + 1))))
    c = act_left(c, sigma)
    assert compose_at(compose_at(a, i, b), i + j - 1, c) == compose_at(a, i, compose_at(b, j, c))


@given(normal_forms(), st.data())
def test_actions_match_tree_actions(n, data):
    e = denote(n)
    g = tuple(data.draw(st.permutations(range(1, n.output + 1))))
    assert act(n, "left", g) == normalize(trees.act_left(e, g), n.mode)
    assert act_left(n, identity(n.output)) == n
    i = data.draw(st.integers(1, len(n.inputs)))
    tau = tuple(data.draw(st.permutations(range(1, n.inputs[i - 1] + 1))))
    want = normalize(trees.act_right(e, i, tau), n.mode)
    assert act(n, "right", i, tau) == want
    pi = tuple(data.draw(st.permutations(range(1, len(n.inputs) + 1))))
    assert act(n, "relabel", pi) == normalize(trees.relabel_inputs(e, pi), n.mode)


def test_relabel_two_input_merger_is_shuffle():
    a = nf("m(x1:2, x2:3)")
    b = relabel_inputs(a, (2, 1))
    assert b.inputs == (3, 2)
    assert b.sigma == shuffle(3, 2)
    assert b == nf("m(x2:2, x1:3)")


def test_action_degree_errors():
    a = nf("m(x1:2, x2:3)")
    with pytest.raises(ColorError):
        act_left(a, (1, 2))
    with pytest.raises(ColorError):
        act_right(a, 1, (1, 2, 3))
    with pytest.raises(ColorError):
        relabel_inputs(a, (1,))
    with pytest.raises(ValueError):
        act(a, "sideways")
