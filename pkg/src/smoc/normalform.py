"""Canonical representatives: output permutation plus a matching of glued legs.

Legs of the inputs are numbered globally, input 1 first.  A class is stored
as the set of glued leg pairs and the permutation ``sigma`` that labels the
surviving legs: the k-th smallest survivor gets output label ``sigma(k)``.

Odd mode tracks a sign relative to the canonical orientation in which the
self-gluings, read from the root upward, glue the matching pairs in
increasing lexicographic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

from . import symcore
from .symcore import compose, identity, inverse, parity
from .trees import ColorError, Element, Leaf, Merge, Node, PermApp, Xi, input_colors, purify

EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class NormalForm:
    mode: str
    inputs: tuple
    output: int
    sign: int
    sigma: tuple
    matching: tuple  # sorted tuple of sorted pairs

    def __post_init__(self):
        total = sum(self.inputs)
        used = [x for pair in self.matching for x in pair]
        if len(set(used)) != len(used) or not all(1 <= x <= total for x in used):
            raise ValueError(f"matching {self.matching} is not a set of disjoint pairs in 1..{total}")
        if self.output != total - len(used) or len(self.sigma) != self.output:
            raise ValueError("output color does not match inputs and matching")
        if self.mode == EVEN and self.sign != 1:
            raise ValueError("even normal forms carry sign +1")

    @property
    def bigrade(self) -> tuple:
        return len(self.matching), max(len(self.inputs) - 1, 0)

    def negate(self) -> "NormalForm":
        return NormalForm(self.mode, self.inputs, self.output, -self.sign, self.sigma, self.matching)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "inputs": list(self.inputs),
            "output": self.output,
            "sign": self.sign,
            "sigma": list(self.sigma),
            "matching": [list(p) for p in self.matching],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _offsets(colors: Sequence[int]) -> list[int]:
    out, acc = [0], 0
    for c in colors:
        acc += c
        out.append(acc)
    return out


def _evaluate(node: Node, offsets: list[int], pairs: list) -> list[int]:
    """Legs of ``node`` in current label order; appends glued pairs in preorder."""
    if isinstance(node, Leaf):
        start = offsets[node.index - 1]
        return list(range(start + 1, start + node.color + 1))
    if isinstance(node, Xi):
        slot = len(pairs)
        pairs.append(None)
        legs = _evaluate(node.child, offsets, pairs)
        a, b = legs[node.i - 1], legs[node.j - 1]
        pairs[slot] = (a, b) if a < b else (b, a)
        del legs[node.j - 1]
        del legs[node.i - 1]
        return legs
    if isinstance(node, Merge):
        return _evaluate(node.left, offsets, pairs) + _evaluate(node.right, offsets, pairs)
    legs = _evaluate(node.child, offsets, pairs)
    out = [0] * len(legs)
    for k, leg in enumerate(legs):
        out[node.perm[k] - 1] = leg
    return out


def _canonical(mode, inputs, labels: dict, pairs: list, sign: int) -> NormalForm:
    """Build the normal form from survivor -> output label and ordered pairs."""
    survivors = sorted(labels)
    sigma = tuple(labels[s] for s in survivors)
    if mode == ODD:
        sign = sign * parity(pairs)
    else:
        sign = 1
    return NormalForm(mode, tuple(inputs), len(survivors), sign, sigma, tuple(sorted(pairs)))


def normalize(term: Union[Element, Node], mode: str = EVEN) -> NormalForm:
    """Normal form of an element, or of any raw term (no purification needed)."""
    if mode not in (EVEN, ODD):
        raise ValueError(f"mode must be {EVEN!r} or {ODD!r}")
    if isinstance(term, Element):
        node, sign = PermApp(term.sigma, term.tree), term.sign
    else:
        node, sign = term, 1
    inputs = input_colors(node)
    pairs: list = []
    legs = _evaluate(node, _offsets(inputs), pairs)
    labels = {leg: k for k, leg in enumerate(legs, 1)}
    return _canonical(mode, inputs, labels, pairs, sign)


def left_comb(inputs: Sequence[int]) -> Node:
    tree = Leaf(1, inputs[0])
    for k, c in enumerate(inputs[1:], 2):
        tree = Merge(tree, Leaf(k, c))
    return tree


def denote(nf: NormalForm) -> Element:
    """The fixed representative: left comb, then gluings, largest pair first."""
    if not nf.inputs:
        raise ValueError("normal form without inputs")
    tree = left_comb(nf.inputs)
    legs = list(range(1, sum(nf.inputs) + 1))
    for a, b in sorted(nf.matching, reverse=True):
        i, j = legs.index(a) + 1, legs.index(b) + 1
        tree = Xi(i, j, tree)
        legs.remove(a)
        legs.remove(b)
    return Element(nf.sigma, tree, nf.sign)


def _relabel(nf: NormalForm, inputs, leg_map, sign=1, sigma_map=None) -> NormalForm:
    """Transport ``nf`` along a leg bijection (old leg -> new leg)."""
    survivors = [x for x in range(1, sum(nf.inputs) + 1)
                 if x not in {y for p in nf.matching for y in p}]
    labels = {leg_map[s]: nf.sigma[k] for k, s in enumerate(survivors)}
    if sigma_map is not None:
        labels = {leg: sigma_map[lab - 1] for leg, lab in labels.items()}
    pairs = []
    for a, b in nf.matching:  # ascending order is the canonical orientation
        x, y = leg_map[a], leg_map[b]
        pairs.append((x, y) if x < y else (y, x))
    return _canonical(nf.mode, inputs, labels, pairs, nf.sign * sign)


def act_left(nf: NormalForm, g: Sequence[int]) -> NormalForm:
    if len(g) != nf.output:
        raise ColorError(f"left action by degree {len(g)} on output color {nf.output}")
    return NormalForm(nf.mode, nf.inputs, nf.output, nf.sign, compose(tuple(g), nf.sigma), nf.matching)


def act_right(nf: NormalForm, i: int, tau: Sequence[int]) -> NormalForm:
    """Precompose input ``i`` with ``tau``: its leg q is seen as leg tau(q)."""
    if not 1 <= i <= len(nf.inputs) or len(tau) != nf.inputs[i - 1]:
        raise ColorError(f"right action of degree {len(tau)} on input {i} of {nf.inputs}")
    start = _offsets(nf.inputs)[i - 1]
    tinv = inverse(tuple(tau))
    leg_map = {x: x for x in range(1, sum(nf.inputs) + 1)}
    for q in range(1, len(tau) + 1):
        leg_map[start + q] = start + tinv[q - 1]
    return _relabel(nf, nf.inputs, leg_map)


def relabel_inputs(nf: NormalForm, pi: Sequence[int]) -> NormalForm:
    """Input k becomes input pi(k)."""
    r = len(nf.inputs)
    if len(pi) != r or not symcore.is_permutation(pi):
        raise ColorError(f"{list(pi)} is not a relabeling of {r} inputs")
    new_inputs = [0] * r
    for k, c in enumerate(nf.inputs, 1):
        new_inputs[pi[k - 1] - 1] = c
    old_off, new_off = _offsets(nf.inputs), _offsets(new_inputs)
    leg_map = {}
    for k, c in enumerate(nf.inputs, 1):
        for q in range(1, c + 1):
            leg_map[old_off[k - 1] + q] = new_off[pi[k - 1] - 1] + q
    return _relabel(nf, tuple(new_inputs), leg_map)


def act(nf: NormalForm, kind: str, *args) -> NormalForm:
    """Dispatch: ``act(nf, 'left', g)``, ``act(nf, 'right', i, tau)``, ``act(nf, 'relabel', pi)``."""
    if kind == "left":
        return act_left(nf, *args)
    if kind == "right":
        return act_right(nf, *args)
    if kind == "relabel":
        return relabel_inputs(nf, *args)
    raise ValueError(f"unknown action {kind!r}")


def compose_at(outer: NormalForm, i: int, inner: NormalForm) -> NormalForm:
    """Operadic composition: plug ``inner`` into input ``i`` of ``outer``."""
    if outer.mode != inner.mode:
        raise ValueError("cannot compose normal forms of different modes")
    if not 1 <= i <= len(outer.inputs):
        raise ColorError(f"outer has no input {i}")
    if outer.inputs[i - 1] != inner.output:
        raise ColorError(f"input {i} has color {outer.inputs[i - 1]}, inner outputs {inner.output}")
    start = _offsets(outer.inputs)[i - 1]
    width = sum(inner.inputs)
    inputs = outer.inputs[: i - 1] + inner.inputs + outer.inputs[i:]
    glued_inner = {y for p in inner.matching for y in p}
    inner_survivors = [x for x in range(1, width + 1) if x not in glued_inner]
    # outer leg start+q is inner survivor s_r with inner.sigma(r) == q
    sinv = inverse(inner.sigma)

    def leg(x):
        if x <= start:
            return x
        if x <= start + inner.output:
            return start + inner_survivors[sinv[x - start - 1] - 1]
        return x + width - inner.output

    glued_outer = {y for p in outer.matching for y in p}
    outer_survivors = [x for x in range(1, sum(outer.inputs) + 1) if x not in glued_outer]
    labels = {leg(s): outer.sigma[k] for k, s in enumerate(outer_survivors)}
    pairs = []
    for a, b in outer.matching:
        x, y = leg(a), leg(b)
        pairs.append((x, y) if x < y else (y, x))
    pairs.extend((a + start, b + start) for a, b in inner.matching)
    return _canonical(outer.mode, inputs, labels, pairs, outer.sign * inner.sign)


def equal(e1: Union[Element, Node], e2: Union[Element, Node], mode: str = EVEN) -> str:
    """'equal', 'equal-up-to-sign(-1)' or 'distinct'."""
    a, b = normalize(e1, mode), normalize(e2, mode)
    if a == b:
        return "equal"
    if a.mode == ODD and a == b.negate():
        return "equal-up-to-sign(-1)"
    return "distinct"


def matching_count(total: int, pairs: int) -> int:
    """Number of sets of ``pairs`` disjoint pairs on ``total`` points."""
    from math import comb, factorial

    if pairs < 0 or 2 * pairs > total:
        return 0
    return comb(total, 2 * pairs) * factorial(2 * pairs) // (2 ** pairs * factorial(pairs))


def normalize_purified(term: Node, mode: str = EVEN) -> NormalForm:
    """Normalize after purification; agrees with ``normalize(term)``."""
    return normalize(purify(term), mode)


__all__ = [
    "EVEN", "ODD", "NormalForm", "normalize", "denote", "compose_at", "act", "act_left",
    "act_right", "relabel_inputs", "equal", "left_comb", "matching_count", "identity",
]
