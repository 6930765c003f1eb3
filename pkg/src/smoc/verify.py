"""Executable checks of the combinatorial lemmas, each producing a Report."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Callable, NamedTuple, Optional

from . import normalform as nfm
from . import oracle, symcore, trees
from .linalg import Echelon
from .normalform import EVEN, ODD, normalize
from .symcore import (OrderedGluingPair, UnorderedGluingClass, block_embed, compose, identity, iota, phi,
                      reindex_primes, rho, transposition)
from .trees import Element, Leaf, Merge, PermApp, Xi

ANCHORS = {
    "rho": "Lemma: reindexing identity rho'_{k',l'} rho_{i,j} = (n-1 n-3)(n-2 n) rho'_{i',j'} rho_{k,l}",
    "iota": "Ordered pairs of self-gluings: iota is a fixed-point-free involution with phi . iota = phi",
    "bijection": "Lemma: canonical bijective correspondence F(E)(v) = S_{v0} x T(v)",
    "counts": "Theorem SM = S o M: class counts of pure self-gluing and pure merger components",
    "shadows": "Theorem SM = S o M, weight-3 injectivity: shadows are constant on rewrite classes",
    "diamond": "Diamond lemma: S o M -> SM is injective in weight 3",
    "odd": "Odd self-gluings: the dual operad has the same dimensions",
    "ranks": "Proposition: bases of the relation spaces",
    "normalizer": "Theorem SM = S o M: rewrite classes correspond to matching normal forms",
    "operations": "Operadic composition and group actions on normal forms",
}


class WrongBigradeError(ValueError):
    pass


@dataclass
class Report:
    check: str
    anchor: str
    params: dict
    passed: bool = True
    details: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def row(self, ok: bool, **fields) -> None:
        self.details.append(dict(fields, ok=bool(ok)))
        if not ok:
            self.passed = False

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + by

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "params": self.params,
            "pass": self.passed,
            "counts": self.counts,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _start(check: str, **params) -> tuple[Report, float]:
    return Report(check, ANCHORS[check], params), time.perf_counter()


def _finish(report: Report, t0: float) -> Report:
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def _type(inputs, output) -> str:
    return f"({','.join(map(str, inputs))};{output})"


# -- symmetric-group lemmas -------------------------------------------------------


def rho_identity_holds(n: int, i: int, j: int, k: int, l: int, mutate: bool = False) -> bool:
    ip, jp, kp, lp = reindex_primes(n, i, j, k, l)
    id2 = (1, 2)
    lhs = compose(block_embed(rho(n - 2, kp, lp), id2), rho(n, i, j))
    if mutate:
        t = compose(transposition(n, n - 1, n - 2), transposition(n, n - 3, n))
    else:
        t = compose(transposition(n, n - 1, n - 3), transposition(n, n - 2, n))
    rhs = compose(t, compose(block_embed(rho(n - 2, ip, jp), id2), rho(n, k, l)))
    return lhs == rhs


def check_rho_identity(max_n: int, mutate: bool = False) -> Report:
    if max_n < 4:
        raise ValueError("max_n must be >= 4")
    rep, t0 = _start("rho", max_n=max_n)
    for n in range(4, max_n + 1):
        total = held = 0
        for i, j in combinations(range(1, n + 1), 2):
            for k, l in combinations(range(1, n + 1), 2):
                if len({i, j, k, l}) < 4:
                    continue
                total += 1
                held += rho_identity_holds(n, i, j, k, l, mutate)
        rep.bump("tuples", total)
        rep.row(held == total, type=f"n={n}", bigrade=None, lhs=held, rhs=total)
    return _finish(rep, t0)


def check_iota(max_n: int, max_shift: int = 3) -> Report:
    rep, t0 = _start("iota", max_n=max_n, max_shift=max_shift)
    for n in range(4, max_n + 1):
        On = symcore.ordered_pairs(n)
        ok = len(On) == symcore.count_ordered_pairs(n)
        classes: dict = {}
        for o in On:
            o2 = iota(o)
            ok &= o2 != o and iota(o2) == o and phi(o2) == phi(o)
            classes.setdefault(phi(o), set()).add(o)
            for shift in range(1, max_shift + 1):
                ok &= symcore.pair_shift(shift, iota(o)) == iota(symcore.pair_shift(shift, o))
        Un = symcore.unordered_classes(n)
        ok &= sorted(classes) == Un and len(Un) * 2 == len(On)
        ok &= all(len(f) == 2 for f in classes.values())
        rep.bump("ordered_pairs", len(On))
        rep.row(ok, type=f"n={n}", bigrade=None, lhs=len(Un), rhs=len(On) // 2)
    return _finish(rep, t0)


# -- pure trees ----------------------------------------------------------------------


def _decorate(t, rng: random.Random):
    """Random raw term with the same underlying tree: a permutation on every edge."""
    def perm(n):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        return tuple(p)

    def walk(node):
        if isinstance(node, Leaf):
            out = node
        elif isinstance(node, Xi):
            out = Xi(node.i, node.j, walk(node.child))
        else:
            a, b = walk(node.left), walk(node.right)
            out = Merge(b, a) if rng.random() < 0.5 else Merge(a, b)
        return PermApp(perm(out.color), out)

    return walk(t)


def check_bijection(max_total: int, max_weight: int = 4, samples: int = 2, seed: int = 0) -> Report:
    """|F(E)(v)| = v0! |T(v)| and order-independence of purification."""
    rep, t0 = _start("bijection", max_total=max_total, max_weight=max_weight, samples=samples, seed=seed)
    rng = random.Random(seed)
    for w in range(1, max_weight + 1):
        for bg in oracle.weight_bigrades(w):
            for inputs, output in oracle.types_for(bg, max_total):
                ts = oracle.enumerate_pure(inputs, output, bg)
                free = oracle.count_free(inputs, output, bg)
                ok = free == factorial(output) * len(ts) and len(set(ts)) == len(ts)
                ok &= all(trees.is_pure(t) for t in ts)
                rep.bump("types")
                rep.bump("trees", len(ts))
                for t in ts[: samples] if w <= 3 else ():
                    raw = _decorate(t, rng)
                    want = trees.purify(raw)
                    for order in trees.push_orders(raw):
                        rep.bump("push_orders")
                        ok &= trees.purify_in_order(raw, order) == want
                rep.row(ok, type=_type(inputs, output), bigrade=list(bg), lhs=free, rhs=factorial(output) * len(ts))
    return _finish(rep, t0)


def check_counts(max_n: int = 8, max_s: int = 3, max_merge_total: int = 6, max_zero_inputs: int = 4,
                 limit: Optional[int] = None) -> Report:
    """Pure self-gluing components: n!/(2^s s!).  Merger-only components: N!."""
    rep, t0 = _start("counts", max_n=max_n, max_s=max_s, max_merge_total=max_merge_total)
    for n in range(2, max_n + 1):
        for s in range(1, min(max_s, n // 2) + 1):
            c = oracle.closure((n,), n - 2 * s, (s, 0), limit=limit)
            want = factorial(n) // (2 ** s * factorial(s))
            rep.bump("types")
            rep.row(c.class_count == want, type=_type((n,), n - 2 * s), bigrade=[s, 0], lhs=c.class_count, rhs=want)
    for m in range(1, max_merge_total):
        for inputs, output in oracle.types_for((0, m), max_merge_total):
            if 0 in inputs and m + 1 > max_zero_inputs:
                continue
            c = oracle.closure(inputs, output, (0, m), limit=limit)
            rep.bump("types")
            rep.row(c.class_count == factorial(output), type=_type(inputs, output), bigrade=[0, m],
                    lhs=c.class_count, rhs=factorial(output))
    return _finish(rep, t0)


# -- shadows --------------------------------------------------------------------------


class Shadow21(NamedTuple):
    sigma: tuple
    cls: UnorderedGluingClass


class Shadow12(NamedTuple):
    sigma: tuple
    pair: tuple


def _bigrade(t) -> tuple:
    return trees.infer_type(t).bigrade


def _gluings(t):
    """(depth, region, Xi) for every gluing; region is 'root', 'b1' or 'b2'."""
    out = []

    def walk(node, depth, region):
        if isinstance(node, Xi):
            out.append((depth, region, node))
            walk(node.child, depth + 1, region)
        elif isinstance(node, Merge):
            walk(node.left, depth + 1, "b1")
            walk(node.right, depth + 1, "b2")

    walk(t, 0, "root")
    return out


def shadow21(e: Element, chi_shift: int = 0) -> Shadow21:
    """Shadow of an element of bigrade (2,1): root permutation and an unordered gluing class."""
    t = e.tree
    if _bigrade(t) != (2, 1):
        raise WrongBigradeError(f"shadow21 needs bigrade (2,1), got {_bigrade(t)}")
    n1 = trees.input_colors(t)[0]
    total = sum(trees.input_colors(t))
    (da, ra, a), (db, rb, b) = _gluings(t)
    if ra == rb:  # same path: u is the one farther from the root
        u, ru, w, rw = (a, ra, b, rb) if da > db else (b, rb, a, ra)
    elif "root" in (ra, rb):
        u, ru, w, rw = (a, ra, b, rb) if rb == "root" else (b, rb, a, ra)
    else:  # parallel: u on branch 1
        u, ru, w, rw = (a, ra, b, rb) if ra == "b1" else (b, rb, a, ra)
    chi_u = n1 if ru == "b2" else 0
    chi_w = 0
    if rw == "b2":
        chi_w = n1 - 2 if ru == "b1" else n1
    chi_u += chi_shift
    o = OrderedGluingPair.make(total, u.i + chi_u, u.j + chi_u, w.i + chi_w, w.j + chi_w)
    return Shadow21(e.sigma, phi(o))


def shadow12(e: Element, chi_shift: int = 0) -> Shadow12:
    """Shadow of an element of bigrade (1,2): root permutation and a shifted gluing pair."""
    t = e.tree
    if _bigrade(t) != (1, 2):
        raise WrongBigradeError(f"shadow12 needs bigrade (1,2), got {_bigrade(t)}")
    chi = chi_shift
    node = t
    while not isinstance(node, Xi):
        if node.right.nxi:
            chi += node.left.color
            node = node.right
        else:
            node = node.left
    return Shadow12(e.sigma, (node.i + chi, node.j + chi))


def _shadow_or_none(sh, e, chi_shift):
    try:
        return sh(e, chi_shift)
    except ValueError:  # a mis-shifted shadow can leave the index range
        return None


def check_shadows(max_total_color: int, chi_shift: int = 0, limit: Optional[int] = None) -> Report:
    """Shadows agree across every edge rewrite covered by the pure relations.

    Re-sorting associativity edges change the root permutation, so there the
    check falls back to equality of normal forms and is counted separately.
    """
    if max_total_color < 4:
        raise ValueError("bound must be >= 4")
    rep, t0 = _start("shadows", max_total_color=max_total_color, chi_shift=chi_shift)
    for bg, sh in (((2, 1), shadow21), ((1, 2), shadow12)):
        for inputs, output in oracle.types_for(bg, max_total_color):
            oracle._guard(oracle.count_pure(inputs, output, bg), limit, "shadow check")
            literal = held = resort = resort_held = 0
            for t in oracle.enumerate_pure(inputs, output, bg):
                e = Element(identity(output), t)
                before = _shadow_or_none(sh, e, chi_shift)
                for r in trees.rewrites(e):
                    if r.kind == "assoc-resort":
                        resort += 1
                        resort_held += normalize(r.element) == normalize(e)
                    else:
                        literal += 1
                        after = _shadow_or_none(sh, r.element, chi_shift)
                        held += before is not None and after == before
            rep.bump("literal_edges", literal)
            rep.bump("resort_edges", resort)
            ok = held == literal and resort_held == resort
            rep.row(ok, type=_type(inputs, output), bigrade=list(bg), lhs=held + resort_held, rhs=literal + resort)
    return _finish(rep, t0)


# -- closure-based checks ----------------------------------------------------------------


def enumerate_matchings(total: int, pairs: int):
    """Every set of ``pairs`` disjoint pairs on 1..total, lexicographic."""
    def rec(free, k):
        if k == 0:
            yield ()
            return
        for idx, a in enumerate(free):
            rest = free[idx + 1:]
            for b in rest:
                remaining = tuple(x for x in rest if x != b)
                for tail in rec(remaining, k - 1):
                    if not tail or (a, b) < tail[0]:
                        yield ((a, b),) + tail

    return rec(tuple(range(1, total + 1)), pairs)


def normal_form_count(inputs, output, bigrade) -> int:
    """Number of S o M normal forms, by listing matchings and output permutations."""
    if not oracle._valid(tuple(inputs), output, bigrade):
        return 0
    return sum(1 for _ in enumerate_matchings(sum(inputs), bigrade[0])) * factorial(output)


def check_diamond(max_total_color: int, limit: Optional[int] = None) -> Report:
    if max_total_color < 4:
        raise ValueError("bound must be >= 4")
    rep, t0 = _start("diamond", max_total_color=max_total_color)
    for bg in oracle.weight_bigrades(3):
        for inputs, output in oracle.types_for(bg, max_total_color):
            c = oracle.closure(inputs, output, bg, limit=limit)
            want = normal_form_count(inputs, output, bg)
            rep.bump("types")
            rep.bump("trees", len(c.universe))
            rep.row(c.class_count == want, type=_type(inputs, output), bigrade=list(bg), lhs=c.class_count, rhs=want)
    return _finish(rep, t0)


def check_odd(max_total_color: int, max_weight: int = 3, limit: Optional[int] = None) -> Report:
    """Signed closure never identifies an element with its negative; counts match even mode."""
    rep, t0 = _start("odd", max_total_color=max_total_color, max_weight=max_weight)
    for w in range(1, max_weight + 1):
        for bg in oracle.weight_bigrades(w):
            for inputs, output in oracle.types_for(bg, max_total_color):
                odd = oracle.closure(inputs, output, bg, ODD, limit=limit)
                even = oracle.closure(inputs, output, bg, EVEN, limit=limit)
                rep.bump("types")
                ok = odd.consistent and odd.class_count == even.class_count
                rep.row(ok, type=_type(inputs, output), bigrade=list(bg), lhs=odd.class_count, rhs=even.class_count)
    return _finish(rep, t0)


def normalizer_agrees(inputs, output, bigrade, mode: str, limit: Optional[int] = None) -> tuple[bool, int, int]:
    """normalize is constant on rewrite classes and bijective onto the normal forms.

    Returns (ok, classes, normal forms).  Constancy is checked edge by edge,
    sign included in odd mode; surjectivity via the matchings that occur.
    """
    cache: dict = {}
    bad = []

    def nf_of(e):
        if e.key not in cache:
            cache[e.key] = normalize(Element(e.sigma, e.tree), mode)
        nf = cache[e.key]
        return nf.negate() if mode == ODD and e.sign == -1 else nf

    def on_edge(e, r):
        if nf_of(r.element) != nf_of(e):
            bad.append((e, r))

    c = oracle.closure(inputs, output, bigrade, mode, limit=limit, edge_hook=on_edge)
    ok = c.consistent and not bad
    seen = {nf_of(e).matching for e in c.universe}
    matchings = set(enumerate_matchings(sum(inputs), bigrade[0]))
    total = len(matchings) * factorial(output)
    ok &= seen == matchings and c.class_count == total
    return ok, c.class_count, total


def check_normalizer(max_total_color: int, max_weight: int = 4, modes=(EVEN, ODD),
                     limit: Optional[int] = None) -> Report:
    rep, t0 = _start("normalizer", max_total_color=max_total_color, max_weight=max_weight, modes=list(modes))
    for mode in modes:
        for w in range(1, max_weight + 1):
            for bg in oracle.weight_bigrades(w):
                for inputs, output in oracle.types_for(bg, max_total_color):
                    ok, classes, nfs = normalizer_agrees(inputs, output, bg, mode, limit)
                    rep.bump(f"types_{mode}")
                    rep.row(ok, type=_type(inputs, output), bigrade=list(bg), mode=mode, lhs=classes, rhs=nfs)
    return _finish(rep, t0)


def _signed(nf, sign):
    return nf if sign == 1 else nf.negate()


def graft_sign(outer, i: int, inner) -> int:
    """Koszul sign between the grafted preorder and 'outer gluings, then inner ones'."""
    after, seen = 0, False
    stack = [outer]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            seen = seen or node.index == i
        elif isinstance(node, Merge):
            stack.extend((node.right, node.left))
        else:
            after += seen and isinstance(node, Xi)
            stack.append(node.child)
    return -1 if (after * inner.nxi) & 1 else 1


def check_operations(samples: int = 1000, seed: int = 0, max_vertices: int = 4) -> Report:
    """compose_at and the actions against graft-then-normalize on random terms."""
    from .syntax import random_expr

    rep, t0 = _start("operations", samples=samples, seed=seed)
    rng = random.Random(seed)
    for k in range(samples):
        mode = ODD if k % 2 else EVEN
        outer = random_expr(rng, max_vertices=max_vertices, max_inputs=3, max_color=4)
        colors = trees.input_colors(outer)
        i = rng.randint(1, len(colors))
        inner = random_expr(rng, max_vertices=max_vertices, max_inputs=2, max_color=4, output=colors[i - 1])
        a, b = normalize(outer, mode), normalize(inner, mode)
        grafted = normalize(trees.graft(outer, i, inner), mode)
        ok = nfm.compose_at(a, i, b) == _signed(grafted, graft_sign(outer, i, inner) if mode == ODD else 1)
        # the same through the fixed representatives
        da, db = nfm.denote(a), nfm.denote(b)
        grafted = trees.graft(trees.element_expr(da), i, trees.element_expr(db))
        ok &= nfm.compose_at(a, i, b) == _signed(normalize(grafted, mode), da.sign * db.sign)
        g = tuple(rng.sample(range(1, a.output + 1), a.output))
        ok &= nfm.act_left(a, g) == normalize(PermApp(g, outer), mode)
        j = rng.randint(1, len(colors))
        tau = tuple(rng.sample(range(1, colors[j - 1] + 1), colors[j - 1]))
        e = trees.purify(outer)
        ok &= nfm.act_right(a, j, tau) == normalize(trees.act_right(e, j, tau), mode)
        pi = tuple(rng.sample(range(1, len(colors) + 1), len(colors)))
        ok &= nfm.relabel_inputs(a, pi) == normalize(trees.relabel_inputs(e, pi), mode)
        rep.bump("instances")
        if not ok:
            rep.row(False, type=str(outer), bigrade=None, lhs=str(inner), rhs=i, mode=mode)
    rep.row(rep.passed, type="random", bigrade=None, lhs=rep.counts.get("instances", 0), rhs=samples)
    return _finish(rep, t0)


# -- relation ranks ---------------------------------------------------------------------


def rank_params(max_color: int) -> list[tuple[str, tuple]]:
    """xi-xi with 4 <= n <= max, xi-star with n + m <= max, star-star with n + m + l <= max - 1."""
    out = [("xixi", (n,)) for n in range(4, max_color + 1)]
    out += [("xistar", (n, m)) for n in range(0, max_color + 1) for m in range(0, max_color + 1 - n)
            if max(n, m) >= 2]
    out += [("starstar", (n, m, l)) for n in range(0, max_color) for m in range(0, max_color - n)
            for l in range(0, max_color - n - m)]
    return out


def check_relation_ranks(max_color: int = 6, limit: Optional[int] = None, params=None) -> Report:
    rep, t0 = _start("ranks", max_color=max_color)
    for fam, p in params or rank_params(max_color):
        vectors, _ = oracle.relation_orbit(fam, p, limit)
        span = Echelon()
        span.extend(vectors)
        basis = oracle.basis_vectors(fam, p)
        indep = Echelon()
        indep.extend(basis)
        want = oracle.expected_rank(fam, p)
        ok = span.rank == want == len(basis) == indep.rank
        ok &= all(span.contains(b) for b in basis)
        rep.bump("instances")
        rep.bump("orbit_vectors", len(vectors))
        rep.row(ok, type=f"{fam}{p}", bigrade=None, lhs=span.rank, rhs=want, basis=len(basis))
    return _finish(rep, t0)


CHECKS: dict[str, Callable[..., Report]] = {
    "rho": check_rho_identity,
    "iota": check_iota,
    "bijection": check_bijection,
    "counts": check_counts,
    "shadows": check_shadows,
    "diamond": check_diamond,
    "odd": check_odd,
    "normalizer": check_normalizer,
    "operations": check_operations,
    "ranks": check_relation_ranks,
}
