"""Hypothesis strategies for raw terms and normal forms."""

from hypothesis import strategies as st

from smoc.normalform import EVEN, ODD, NormalForm
from smoc.trees import Leaf, Merge, PermApp, Xi


@st.composite
def raw_terms(draw, max_inputs=3, max_color=4, max_gluings=2, perms=True, inputs=None):
    """A valid raw term; leaves are labeled 1..r in a random planar order."""
    if inputs is None:
        r = draw(st.integers(1, max_inputs))
        inputs = draw(st.lists(st.integers(0, max_color), min_size=r, max_size=r))
    r = len(inputs)
    budget = [draw(st.integers(0, max_gluings))]

    def decorate(t):
        while budget[0] and t.color >= 2 and draw(st.booleans()):
            i = draw(st.integers(1, t.color - 1))
            j = draw(st.integers(i + 1, t.color))
            t = Xi(i, j, t)
            budget[0] -= 1
        if perms and t.color and draw(st.booleans()):
            t = PermApp(draw(st.permutations(range(1, t.color + 1))), t)
        return t

    order = draw(st.permutations(range(1, r + 1)))
    items = [decorate(Leaf(k, inputs[k - 1])) for k in order]
    while len(items) > 1:
        a = items.pop(draw(st.integers(0, len(items) - 1)))
        b = items.pop(draw(st.integers(0, len(items) - 1)))
        items.append(decorate(Merge(a, b)))
    return items[0]


modes = st.sampled_from([EVEN, ODD])


@st.composite
def normal_forms(draw, max_inputs=3, max_color=4, mode=None):
    mode = mode or draw(modes)
    r = draw(st.integers(1, max_inputs))
    inputs = tuple(draw(st.lists(st.integers(0, max_color), min_size=r, max_size=r)))
    total = sum(inputs)
    legs = list(draw(st.permutations(range(1, total + 1))))
    s = draw(st.integers(0, total // 2))
    matching = tuple(sorted(tuple(sorted(legs[2 * k: 2 * k + 2])) for k in range(s)))
    out = total - 2 * s
    sigma = tuple(draw(st.permutations(range(1, out + 1))))
    sign = draw(st.sampled_from([1, -1])) if mode == ODD else 1
    return NormalForm(mode, inputs, out, sign, sigma, matching)


def perm_of(n):
    return st.permutations(range(1, n + 1)).map(tuple)
