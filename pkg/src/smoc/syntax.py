"""Surface syntax for raw terms.

    expr := "x" INT ":" INT
          | "xi" "[" INT "," INT "]" "(" expr ")"
          | "m" "(" expr "," expr ")"
          | "p" "[" INT {INT} "]" "(" expr ")"

Whitespace is ignored between tokens.  Error offsets are byte offsets into
the UTF-8 encoding of the input.
"""

from __future__ import annotations

import random
import re
from typing import Optional

from .trees import ColorError, Leaf, Merge, Node, PermApp, Xi, input_colors, render


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class ValidationError(ValueError):
    def __init__(self, message: str, offset: Optional[int] = None):
        where = "" if offset is None else f" at byte {offset}"
        super().__init__(f"{message}{where}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(xi|x|m|p)|(\d+)|([\[\](),:]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, value, byte offset) triples, ending with an 'end' token."""
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        start = mt.start(mt.lastindex)
        kind = ("word", "int", "punct")[mt.lastindex - 1]
        out.append((kind, mt.group(mt.lastindex), len(text[:start].encode())))
        pos = mt.end()
    out.append(("end", "", len(text.encode())))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind, value=None):
        tok = self.toks[self.k]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.k += 1
        return tok

    def integer(self) -> int:
        return int(self.take("int")[1])

    def expr(self) -> Node:
        kind, word, at = self.peek()
        if kind != "word":
            got = "end of input" if kind == "end" else repr(word)
            raise ParseError(f"expected an expression, found {got}", at)
        self.k += 1
        if word == "x":
            index = self.integer()
            self.take("punct", ":")
            color = self.integer()
            if index < 1:
                raise ValidationError("leaf index must be at least 1", at)
            return Leaf(index, color)
        if word == "xi":
            self.take("punct", "[")
            i = self.integer()
            self.take("punct", ",")
            j = self.integer()
            self.take("punct", "]")
            child = self.group()
            if not i < j:
                raise ValidationError(f"xi[{i},{j}] violates i < j", at)
            if not (1 <= i and j <= child.color):
                raise ValidationError(f"xi[{i},{j}] violates 1 <= i < j <= {child.color}", at)
            return Xi(i, j, child)
        if word == "m":
            self.take("punct", "(")
            left = self.expr()
            self.take("punct", ",")
            right = self.expr()
            self.take("punct", ")")
            return Merge(left, right)
        self.take("punct", "[")
        perm = [self.integer()]
        while self.peek()[0] == "int":
            perm.append(self.integer())
        self.take("punct", "]")
        child = self.group()
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValidationError(f"p[{' '.join(map(str, perm))}] is not a permutation", at)
        if len(perm) != child.color:
            raise ValidationError(f"permutation degree {len(perm)} differs from color {child.color}", at)
        return PermApp(perm, child)

    def group(self) -> Node:
        self.take("punct", "(")
        node = self.expr()
        self.take("punct", ")")
        return node


def parse(text: str) -> Node:
    """Parse and validate a raw term."""
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    try:
        input_colors(node)
    except ColorError:
        raise ValidationError("leaf indices must be 1..r, each used exactly once") from None
    return node


def print_expr(node: Node) -> str:
    """Canonical text; ``parse(print_expr(t)) == t``."""
    return render(node)


def _ints(text: str, whole: str, what: str) -> list[int]:
    parts = [x.strip() for x in text.split(",")] if text.strip() else []
    if not all(x.isdigit() for x in parts):
        raise ParseError(f"malformed {what} {whole!r}", 0)
    return [int(x) for x in parts]


def parse_type(text: str) -> tuple[tuple, int]:
    """'(v1,...,vr;v0)' -> ((v1, ..., vr), v0)."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if body.count(";") != 1:
        raise ParseError(f"malformed type {text!r}; expected (v1,...,vr;v0)", 0)
    left, right = body.split(";")
    inputs, output = _ints(left, text, "type"), _ints(right, text, "type")
    if not inputs or len(output) != 1:
        raise ParseError(f"malformed type {text!r}; expected (v1,...,vr;v0)", 0)
    return tuple(inputs), output[0]


def parse_bigrade(text: str) -> tuple[int, int]:
    nums = [int(x) for x in re.findall(r"\d+", text)]
    if len(nums) != 2 or re.search(r"[^\d,\s()]", text):
        raise ParseError(f"malformed bigrade {text!r}; expected (s,m)", 0)
    return nums[0], nums[1]


def random_expr(rng: random.Random, max_vertices: int = 8, max_inputs: int = 3, max_color: int = 4,
                output: Optional[int] = None, perm_prob: float = 0.3) -> Node:
    """A random valid raw term, optionally with a prescribed output color."""
    r = rng.randint(1, max_inputs)
    budget = max(max_vertices - (r - 1), 0)
    if output is None:
        colors = [rng.randint(0, max_color) for _ in range(r)]
        s = rng.randint(0, min(sum(colors) // 2, budget))
    else:
        s = rng.randint(0, max(0, min(budget, (max_color * r - output) // 2)))
        need = output + 2 * s
        colors = [0] * r
        for _ in range(need):
            colors[rng.randrange(r)] += 1
    budget -= s
    pending = s

    def decorate(t: Node) -> Node:
        nonlocal pending, budget
        while pending and t.color >= 2 and rng.random() < 0.4:
            i, j = sorted(rng.sample(range(1, t.color + 1), 2))
            t = Xi(i, j, t)
            pending -= 1
        if budget and t.color and rng.random() < perm_prob:
            p = list(range(1, t.color + 1))
            rng.shuffle(p)
            t = PermApp(p, t)
            budget -= 1
        return t

    labels = list(range(1, r + 1))
    rng.shuffle(labels)
    items = [decorate(Leaf(k, colors[k - 1])) for k in labels]
    while len(items) > 1:
        a = items.pop(rng.randrange(len(items)))
        b = items.pop(rng.randrange(len(items)))
        items.append(decorate(Merge(a, b)))
    t = items[0]
    while pending:
        i, j = sorted(rng.sample(range(1, t.color + 1), 2))
        t = Xi(i, j, t)
        pending -= 1
    return t
