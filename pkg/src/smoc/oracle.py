"""Brute-force ground truth: pure-tree enumeration, rewrite closure, relation ranks.

The closure works in a reduced universe by default: only trees with identity
root permutation are materialized, and each rewrite edge carries the
(sign, permutation) label relating its endpoints.  Classes of the full
universe S_{v0} x trees are then cosets of the holonomy group of each
component.  ``reduced=False`` materializes every (sigma, tree) pair instead.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, Optional, Sequence

from . import symcore
from .linalg import Echelon
from .normalform import EVEN, ODD, matching_count
from .symcore import compose, identity, inverse, transposition
from .trees import Element, Leaf, Merge, PermApp, Xi, act_right, purify, relabel_inputs, rewrites
from .unionfind import LabeledUnionFind, generated_subgroup

DEFAULT_LIMIT = 10**6


class ResourceLimitError(RuntimeError):
    pass


def resource_limit(limit: Optional[int] = None) -> int:
    if limit is not None:
        return int(limit)
    return int(os.environ.get("SMOC_LIMIT", DEFAULT_LIMIT))


def _guard(size: int, limit: Optional[int], what: str) -> None:
    cap = resource_limit(limit)
    if size > cap:
        raise ResourceLimitError(f"{what}: {size} elements exceeds the limit {cap} (use --limit or SMOC_LIMIT)")


def _valid(inputs, output, bigrade) -> bool:
    s, m = bigrade
    return s >= 0 and len(inputs) >= 1 and m == len(inputs) - 1 and output == sum(inputs) - 2 * s


# -- enumeration ---------------------------------------------------------------


def _splits(S: tuple) -> Iterator[tuple[tuple, tuple]]:
    """Unordered splits {A, B} of S with min(S) in A, both nonempty."""
    first, rest = S[0], S[1:]
    for mask in range(2 ** len(rest) - 1):
        A = (first,) + tuple(x for b, x in enumerate(rest) if mask >> b & 1)
        B = tuple(x for b, x in enumerate(rest) if not mask >> b & 1)
        yield A, B


def _chains(core, count: int) -> list:
    out = [core]
    for _ in range(count):
        out = [Xi(i, j, t) for t in out for i, j in combinations(range(1, t.color + 1), 2)]
    return out


def enumerate_pure(inputs: Sequence[int], output: int, bigrade: tuple) -> list:
    """Every pure tree of the given type and bigrade, once each, deterministic order."""
    inputs = tuple(inputs)
    if not _valid(inputs, output, bigrade):
        return []
    colors = dict(enumerate(inputs, 1))

    @lru_cache(maxsize=None)
    def gen(S: tuple, k: int) -> tuple:
        if sum(colors[x] for x in S) < 2 * k:
            return ()
        out = []
        if len(S) == 1:
            out.extend(_chains(Leaf(S[0], colors[S[0]]), k))
        else:
            for A, B in _splits(S):
                for ka in range(k + 1):
                    for kb in range(k - ka + 1):
                        for a in gen(A, ka):
                            for b in gen(B, kb):
                                out.extend(_chains(Merge(a, b), k - ka - kb))
        return tuple(out)

    return list(gen(tuple(range(1, len(inputs) + 1)), bigrade[0]))


def count_pure(inputs: Sequence[int], output: int, bigrade: tuple) -> int:
    """|T(v̄)| without building the trees."""
    inputs = tuple(inputs)
    if not _valid(inputs, output, bigrade):
        return 0
    colors = dict(enumerate(inputs, 1))

    def chains(color, c):
        total = 1
        for t in range(c):
            total *= (color - 2 * t) * (color - 2 * t - 1) // 2
        return total

    @lru_cache(maxsize=None)
    def cnt(S, k):
        col = sum(colors[x] for x in S)
        if col < 2 * k:
            return 0
        if len(S) == 1:
            return chains(col, k)
        total = 0
        for A, B in _splits(S):
            for ka in range(k + 1):
                for kb in range(k - ka + 1):
                    c = k - ka - kb
                    total += cnt(A, ka) * cnt(B, kb) * chains(col - 2 * (ka + kb), c)
        return total

    return cnt(tuple(range(1, len(inputs) + 1)), bigrade[0])


def count_free(inputs: Sequence[int], output: int, bigrade: tuple) -> int:
    """|F(E)(v̄)| by summing over unlabeled tree shapes, independent of purification.

    Each shape contributes the product of its vertex label-set sizes over the
    product of v_e! for its internal edges, the groupoid coinvariants.  A
    self-gluing on color n has n!/2 labels, a merger of n and m has (n+m)!.
    """
    inputs = tuple(inputs)
    if not _valid(inputs, output, bigrade) or bigrade == (0, 0):
        return 0
    colors = dict(enumerate(inputs, 1))

    def unary(n):
        return Fraction(factorial(n), 2) if n >= 2 else Fraction(0)

    def top_chain(color, c, core_is_vertex):
        # c gluings stacked on a core of the given color
        w = Fraction(1)
        for t in range(c):
            n = color - 2 * t
            w *= unary(n)
            if t > 0 or core_is_vertex:
                w /= factorial(n)
        return w

    @lru_cache(maxsize=None)
    def V(S, k):
        # shapes on leaf set S with k gluings whose root is a vertex
        col = sum(colors[x] for x in S)
        if col < 2 * k:
            return Fraction(0)
        if len(S) == 1:
            return top_chain(col, k, False) if k else Fraction(0)
        total = Fraction(0)
        for A, B in _splits(S):
            for ka in range(k + 1):
                for kb in range(k - ka + 1):
                    w = attach(A, ka) * attach(B, kb)
                    if w:
                        rest = col - 2 * (ka + kb)
                        total += w * factorial(rest) * top_chain(rest, k - ka - kb, True)
        return total

    def attach(S, k):
        # weight of a child subtree, dividing by the coinvariants of its edge
        bare = 1 if len(S) == 1 and k == 0 else 0
        if sum(colors[x] for x in S) < 2 * k:
            return Fraction(0)
        return V(S, k) / factorial(sum(colors[x] for x in S) - 2 * k) + bare

    value = V(tuple(range(1, len(inputs) + 1)), bigrade[0])
    assert value.denominator == 1, value
    return int(value)


def count_expected(inputs: Sequence[int], output: int, bigrade: tuple) -> int:
    """Closed-form class count: v0! times the matchings of s pairs on N legs."""
    inputs = tuple(inputs)
    if not _valid(inputs, output, bigrade):
        return 0
    return factorial(output) * matching_count(sum(inputs), bigrade[0])


def types_for(bigrade: tuple, max_total: int, min_total: int = 0) -> list[tuple]:
    """All (inputs, output) with len(inputs) = m + 1, colors >= 0, total in range."""
    s, m = bigrade
    r = m + 1
    out = []

    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in comps(total - first, parts - 1):
                yield (first,) + rest

    for total in range(max(min_total, 2 * s), max_total + 1):
        for inputs in comps(total, r):
            out.append((inputs, total - 2 * s))
    return out


def weight_bigrades(weight: int) -> list[tuple]:
    return [(weight - m, m) for m in range(weight + 1)]


# -- closure ------------------------------------------------------------------


def _sp_mul(a, b):
    return a[0] * b[0], compose(a[1], b[1])


def _sp_inv(a):
    return a[0], inverse(a[1])


@dataclass
class ClassPartition:
    """Rewrite classes of one component F(E)(v̄)^{(s,m)}.

    ``classes`` partitions indices into ``universe`` into connected components
    of the rewrite graph.  ``sign_assignment[k]`` is the label of element k
    relative to its component root: a sign in the unreduced universe, a
    (sign, permutation) pair in the reduced one.  ``holonomy`` holds the order
    of each component's holonomy group and ``class_count`` the number of
    classes in the full universe.
    """

    inputs: tuple
    output: int
    bigrade: tuple
    mode: str
    reduced: bool
    universe: list
    classes: list
    sign_assignment: list
    holonomy: list
    consistent: bool
    class_count: int
    edges: int = 0
    inconsistent_classes: int = 0
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "type": {"inputs": list(self.inputs), "output": self.output},
            "bigrade": list(self.bigrade),
            "mode": self.mode,
            "reduced": self.reduced,
            "universe": len(self.universe),
            "components": len(self.classes),
            "classes": self.class_count,
            "consistent": self.consistent,
            "edges": self.edges,
        }


def closure(inputs: Sequence[int], output: int, bigrade: tuple, mode: str = EVEN,
            reduced: bool = True, limit: Optional[int] = None, edge_hook=None) -> ClassPartition:
    """Union-find over the rewrite graph; signs are tracked in odd mode.

    ``edge_hook(element, rewrite)`` is called for every rewrite edge visited.
    """
    if mode not in (EVEN, ODD):
        raise ValueError(f"mode must be {EVEN!r} or {ODD!r}")
    inputs = tuple(inputs)
    ntrees = count_pure(inputs, output, bigrade)
    size = ntrees if reduced else ntrees * factorial(max(output, 0))
    _guard(size, limit, f"closure of {inputs};{output} bigrade {tuple(bigrade)}")
    trees = enumerate_pure(inputs, output, bigrade)
    ident = identity(output) if trees else ()
    if reduced:
        universe = [Element(ident, t) for t in trees]
        one = (1, ident)
        uf = LabeledUnionFind(len(universe), _sp_mul, _sp_inv, one)
    else:
        universe = [Element(p, t) for t in trees for p in symcore.all_permutations(output)]
        one = 1
        uf = LabeledUnionFind(len(universe), lambda a, b: a * b, lambda a: a, one)
    index = {e.key: k for k, e in enumerate(universe)}

    edges = 0
    for k, e in enumerate(universe):
        for r in rewrites(e):
            if edge_hook is not None:
                edge_hook(e, r)
            target = r.element
            sign = target.sign if mode == ODD else 1
            if reduced:
                label = (sign, target.sigma)
                y = index[(ident, target.tree)]
            else:
                label = sign
                y = index[target.key]
            uf.union(k, y, label)
            edges += 1

    roots: dict[int, list[int]] = {}
    labels = []
    for k in range(len(universe)):
        root, g = uf.find(k)
        roots.setdefault(root, []).append(k)
        labels.append(g)
    loops = uf.holonomy()
    classes = list(roots.values())
    holonomy, count, bad = [], 0, 0
    group_order = factorial(output) if reduced else 1
    for members in classes:
        root = uf.find(members[0])[0]
        H = generated_subgroup(loops.get(root, []), uf.mul, one)
        ok = ((-1, ident) if reduced else -1) not in H
        holonomy.append(len(H))
        if ok:
            count += group_order // len(H) if reduced else 1
        else:
            bad += 1
    return ClassPartition(inputs, output, tuple(bigrade), mode, reduced, universe, classes,
                          labels, holonomy, bad == 0, count, edges, bad)


# -- relation spans ---------------------------------------------------------------

FAMILIES = ("xixi", "xistar", "starstar")
_ALIASES = {"ξξ": "xixi", "ξ∗": "xistar", "∗∗": "starstar", "xi-xi": "xixi", "xi-star": "xistar",
            "star-star": "starstar", "1": "xixi", "2": "xistar", "3": "starstar"}


def family_name(family) -> str:
    name = _ALIASES.get(str(family), str(family))
    if name not in FAMILIES:
        raise ValueError(f"unknown relation family {family!r}; expected one of {FAMILIES}")
    return name


def family_type(family, params) -> tuple:
    fam = family_name(family)
    params = tuple(params)
    if fam == "xixi":
        (n,) = params
        if n < 4:
            raise ValueError("the xi-xi family needs n >= 4")
        return (n,), n - 4
    if fam == "xistar":
        n, m = params
        if max(n, m) < 2:
            raise ValueError("the xi-star family needs an input of color >= 2")
        return (n, m), n + m - 2
    n, m, l = params
    return (n, m, l), n + m + l


def _vector(plus, minus) -> dict:
    """Element keys -> coefficient for ``plus - minus`` (even mode, signs dropped)."""
    a, b = purify(plus), purify(minus)
    if a.key == b.key:
        return {}
    return {a.key: 1, b.key: -1}


def _base_relation(family, inputs) -> Optional[dict]:
    """The defining relation of the family on the given input colors, if it exists."""
    if family == "xixi":
        (n,) = inputs
        s0 = compose(transposition(n, n - 1, n - 3), transposition(n, n - 2, n))
        lhs = Xi(n - 3, n - 2, Xi(n - 1, n, Leaf(1, n)))
        rhs = Xi(n - 3, n - 2, Xi(n - 1, n, PermApp(s0, Leaf(1, n))))
        return _vector(lhs, rhs)
    if family == "xistar":
        n, m = inputs
        if m < 2:
            return None
        N = n + m
        return _vector(Xi(N - 1, N, Merge(Leaf(1, n), Leaf(2, m))),
                       Merge(Leaf(1, n), Xi(m - 1, m, Leaf(2, m))))
    n, m, l = inputs
    x1, x2, x3 = Leaf(1, n), Leaf(2, m), Leaf(3, l)
    return _vector(Merge(Merge(x1, x2), x3), Merge(x1, Merge(x2, x3)))


def _canon(vec: dict, col: dict) -> tuple:
    items = sorted((col.setdefault(k, len(col)), c) for k, c in vec.items())
    if items and items[0][1] < 0:
        items = [(k, -c) for k, c in items]
    return tuple(items)


def relation_orbit(family, params, limit: Optional[int] = None) -> tuple[list, dict]:
    """Full orbit of the family's relation under left, right and relabeling actions.

    Returns (vectors, columns) where each vector is a sorted tuple of
    (column, coefficient) with positive leading coefficient and ``columns``
    maps Element keys to column numbers.
    """
    fam = family_name(family)
    inputs, output = family_type(fam, params)
    r = len(inputs)
    cap = resource_limit(limit)
    col: dict = {}
    seeds = []
    for pi in symcore.all_permutations(r):
        source = tuple(inputs[pi[k] - 1] for k in range(r))  # colors before relabeling
        base = _base_relation(fam, source)
        if not base:
            continue
        vec: dict = {}
        for (sigma, tree), c in base.items():
            e = relabel_inputs(Element(sigma, tree), pi)
            vec[e.key] = vec.get(e.key, 0) + c
        seeds.append({k: c for k, c in vec.items() if c})

    gens = [("left", transposition(output, a, a + 1)) for a in range(1, output)]
    for i, c in enumerate(inputs, 1):
        gens += [("right", i, transposition(c, a, a + 1)) for a in range(1, c)]
    cache: dict = {}

    def move(gen, key):
        ck = (gen, key)
        if ck not in cache:
            sigma, tree = key
            if gen[0] == "left":
                cache[ck] = (compose(gen[1], sigma), tree)
            else:
                cache[ck] = act_right(Element(sigma, tree), gen[1], gen[2]).key
        return cache[ck]

    seen = set()
    order = []
    frontier = []
    for v in seeds:
        cv = _canon(v, col)
        if cv and cv not in seen:
            seen.add(cv)
            order.append(v)
            frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            for gen in gens:
                w: dict = {}
                for key, c in v.items():
                    k2 = move(gen, key)
                    w[k2] = w.get(k2, 0) + c
                w = {k: c for k, c in w.items() if c}
                cw = _canon(w, col)
                if cw and cw not in seen:
                    seen.add(cw)
                    order.append(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"relation orbit exceeds the limit {cap}")
        frontier = nxt
    return order, col


def relation_span_rank(family, params, limit: Optional[int] = None) -> int:
    """Exact rank of the span of the relation's orbit inside F(E)^(2)."""
    vectors, _ = relation_orbit(family, params, limit)
    return Echelon().extend(vectors)


def expected_rank(family, params) -> int:
    fam = family_name(family)
    if fam == "xixi":
        (n,) = params
        return factorial(n) // 8
    if fam == "xistar":
        n, m = params
        return factorial(n + m - 2) * (n * (n - 1) // 2 + m * (m - 1) // 2)
    n, m, l = params
    return 2 * factorial(n + m + l)


def basis_vectors(family, params) -> list[dict]:
    """The explicitly listed basis of the relation space, as sparse vectors."""
    fam = family_name(family)
    inputs, output = family_type(fam, params)
    out = []
    if fam == "xixi":
        (n,) = inputs
        for cls in symcore.unordered_classes(n):
            i, j, k, l = cls.representative
            if j < l:  # the representative with j > l
                i, j, k, l = k, l, i, j
            ip, jp, kp, lp = symcore.reindex_primes(n, i, j, k, l)
            x = Leaf(1, n)
            for sigma in symcore.all_permutations(n - 4):
                out.append(_vector(PermApp(sigma, Xi(kp, lp, Xi(i, j, x))),
                                   PermApp(sigma, Xi(ip, jp, Xi(k, l, x)))))
        return out
    if fam == "xistar":
        n, m = inputs
        N = n + m
        x1, x2 = Leaf(1, n), Leaf(2, m)
        terms = [(Xi(i, j, Merge(x1, x2)), Merge(Xi(i, j, x1), x2))
                 for i, j in combinations(range(1, n + 1), 2)]
        terms += [(Xi(k + n, l + n, Merge(x1, x2)), Merge(x1, Xi(k, l, x2)))
                  for k, l in combinations(range(1, m + 1), 2)]
        for a, b in terms:
            for sigma in symcore.all_permutations(N - 2):
                out.append(_vector(PermApp(sigma, a), PermApp(sigma, b)))
        return out
    n, m, l = inputs
    N = n + m + l
    x1, x2, x3 = Leaf(1, n), Leaf(2, m), Leaf(3, l)
    y2, y3 = Leaf(3, l), Leaf(2, m)  # (23): input 2 of type (n,l,m) becomes input 3
    for sigma in symcore.all_permutations(N):
        out.append(_vector(PermApp(sigma, Merge(Merge(x1, x2), x3)),
                           PermApp(sigma, Merge(x1, Merge(x2, x3)))))
    for sigma in symcore.all_permutations(N):
        out.append(_vector(PermApp(sigma, Merge(Merge(x1, y2), y3)),
                           PermApp(sigma, Merge(x1, Merge(y2, y3)))))
    return out
