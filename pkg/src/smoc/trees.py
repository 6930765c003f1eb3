"""Terms of the free operad on self-gluings and mergers.

A term is a tree of four node kinds:

* ``Leaf(index, color)`` -- input ``index`` carrying ``color`` legs,
* ``Xi(i, j, child)`` -- the self-gluing of legs i < j of ``child``,
* ``Merge(left, right)`` -- disjoint union, left legs first,
* ``PermApp(perm, child)`` -- a permutation acting on the legs of ``child``.

A *pure* tree has no ``PermApp`` and every merger has the branch containing
the least leaf index on the left.  An ``Element`` pairs a root permutation
with a pure tree; in odd mode it also carries a sign.
"""

from __future__ import annotations

from itertools import permutations as _perms
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from . import symcore
from .symcore import block_embed, compose, coset_decompose, identity, iota, rho, shuffle


class ColorError(ValueError):
    pass


class RewriteError(ValueError):
    pass


class _Node:
    __slots__ = ("color", "least", "nxi", "_key", "_hash")

    def __eq__(self, other):
        return self is other or (type(other) is type(self) and self._key == other._key)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return render(self)

    def _seal(self, key):
        self._key = key
        self._hash = hash((type(self).__name__, key))


class Leaf(_Node):
    __slots__ = ("index",)

    def __init__(self, index: int, color: int):
        if index < 1:
            raise ColorError(f"leaf index must be positive, got {index}")
        if color < 0:
            raise ColorError(f"leaf color must be >= 0, got {color}")
        self.index = index
        self.color = color
        self.least = index
        self.nxi = 0
        self._seal((index, color))


class Xi(_Node):
    __slots__ = ("i", "j", "child")

    def __init__(self, i: int, j: int, child: "Node"):
        n = child.color
        if n < 2:
            raise ColorError(f"xi[{i},{j}] applied to color {n} < 2")
        if not (1 <= i < j <= n):
            raise ColorError(f"xi[{i},{j}] needs 1 <= i < j <= {n}")
        self.i = i
        self.j = j
        self.child = child
        self.color = n - 2
        self.least = child.least
        self.nxi = child.nxi + 1
        self._seal((i, j, child))


class Merge(_Node):
    __slots__ = ("left", "right")

    def __init__(self, left: "Node", right: "Node"):
        self.left = left
        self.right = right
        self.color = left.color + right.color
        self.least = min(left.least, right.least)
        self.nxi = left.nxi + right.nxi
        self._seal((left, right))


class PermApp(_Node):
    __slots__ = ("perm", "child")

    def __init__(self, perm: Sequence[int], child: "Node"):
        perm = tuple(perm)
        if len(perm) != child.color:
            raise ColorError(f"permutation of degree {len(perm)} applied to color {child.color}")
        if not symcore.is_permutation(perm):
            raise ColorError(f"{list(perm)} is not a permutation")
        self.perm = perm
        self.child = child
        self.color = child.color
        self.least = child.least
        self.nxi = child.nxi
        self._seal((perm, child))


Node = Union[Leaf, Xi, Merge, PermApp]


class Element(NamedTuple):
    """sign · (sigma, tree) with ``tree`` pure; sign is +1 outside odd mode."""

    sigma: tuple
    tree: Node
    sign: int = 1

    @property
    def key(self):
        return self.sigma, self.tree

    def __str__(self):
        text = render(self.tree)
        if self.sigma != identity(len(self.sigma)):
            text = f"p[{' '.join(map(str, self.sigma))}]({text})"
        return ("-" if self.sign < 0 else "") + text


class TypeInfo(NamedTuple):
    inputs: tuple
    output: int
    bigrade: tuple


class Rewrite(NamedTuple):
    element: Element
    edge: Optional[int]  # edge joining the same two vertices in the result
    kind: str


def render(t: Node) -> str:
    if isinstance(t, Leaf):
        return f"x{t.index}:{t.color}"
    if isinstance(t, Xi):
        return f"xi[{t.i},{t.j}]({render(t.child)})"
    if isinstance(t, Merge):
        return f"m({render(t.left)}, {render(t.right)})"
    return f"p[{' '.join(map(str, t.perm))}]({render(t.child)})"


def leaves(t: Node) -> list[Leaf]:
    """Leaves in planar (left-to-right) order."""
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node)
        elif isinstance(node, Merge):
            stack.append(node.right)
            stack.append(node.left)
        else:
            stack.append(node.child)
    return out


def input_colors(t: Node) -> tuple:
    """Leaf colors indexed by leaf label; labels must be exactly 1..r."""
    found = {leaf.index: leaf.color for leaf in leaves(t)}
    labels = sorted(found)
    if labels != list(range(1, len(labels) + 1)) or len(found) != len(leaves(t)):
        raise ColorError(f"leaf labels must be 1..r each used once, got {[l.index for l in leaves(t)]}")
    return tuple(found[k] for k in labels)


def infer_type(t: Node) -> TypeInfo:
    """Recompute the type and bigrade from scratch, checking color consistency."""
    counts = [0, 0]

    def walk(node, where):
        if isinstance(node, Leaf):
            return node.color
        if isinstance(node, Xi):
            n = walk(node.child, where + "/xi")
            if n < 2 or not (1 <= node.i < node.j <= n):
                raise ColorError(f"vertex {where or '/'} xi[{node.i},{node.j}] sits on color {n}")
            counts[0] += 1
            return n - 2
        if isinstance(node, Merge):
            counts[1] += 1
            return walk(node.left, where + "/m.1") + walk(node.right, where + "/m.2")
        n = walk(node.child, where + "/p")
        if len(node.perm) != n:
            raise ColorError(f"vertex {where or '/'} permutation of degree {len(node.perm)} on color {n}")
        return n

    output = walk(t, "")
    return TypeInfo(input_colors(t), output, (counts[0], counts[1]))


def is_pure(t: Node) -> bool:
    if isinstance(t, Leaf):
        return True
    if isinstance(t, Xi):
        return is_pure(t.child)
    if isinstance(t, Merge):
        return t.left.least < t.right.least and is_pure(t.left) and is_pure(t.right)
    return False


# -- purification --------------------------------------------------------


def _purify(node):
    """Return (L, pure, sign) with node == L · pure; L is None for the identity."""
    if isinstance(node, Leaf):
        return None, node, 1
    if isinstance(node, PermApp):
        L, t, s = _purify(node.child)
        return (node.perm if L is None else compose(node.perm, L)), t, s
    if isinstance(node, Xi):
        L, t, s = _purify(node.child)
        if L is None:
            return None, (node if t is node.child else Xi(node.i, node.j, t)), s
        sigma_hat, k, l, _ = coset_decompose(compose(rho(node.child.color, node.i, node.j), L))
        if sigma_hat == identity(len(sigma_hat)):
            sigma_hat = None
        return sigma_hat, Xi(k, l, t), s
    La, ta, sa = _purify(node.left)
    Lb, tb, sb = _purify(node.right)
    na, nb = ta.color, tb.color
    L = None
    if La is not None or Lb is not None:
        L = block_embed(La or identity(na), Lb or identity(nb))
    if ta.least < tb.least:
        same = ta is node.left and tb is node.right
        return L, (node if same else Merge(ta, tb)), sa * sb
    # m(A, B) == shuffle(nb, na) · m(B, A); odd vertices of A and B trade places
    swap = shuffle(nb, na)
    L = swap if L is None else compose(L, swap)
    sign = sa * sb * (-1 if (ta.nxi * tb.nxi) & 1 else 1)
    return L, Merge(tb, ta), sign


def purify(raw: Node, sign: int = 1) -> Element:
    """Push every permutation down to the root; return the pure representative."""
    L, t, s = _purify(raw)
    return Element(identity(t.color) if L is None else L, t, sign * s)


def element_expr(e: Element) -> Node:
    """The raw term ``PermApp(sigma, tree)`` (or the bare tree for identity sigma)."""
    if e.sigma == identity(len(e.sigma)):
        return e.tree
    return PermApp(e.sigma, e.tree)


class _Vertex:
    __slots__ = ("kind", "i", "j", "L", "children", "parent", "slot", "leaf")

    def __init__(self, kind):
        self.kind = kind
        self.L = None
        self.children = []
        self.parent = None
        self.slot = 0
        self.leaf = None


def _flatten(raw: Node):
    """Raw term -> (vertex list, root item, root decoration, sign).

    Children are vertex indices or Leaf nodes.  A PermApp above a vertex is
    that vertex's left decoration; above a leaf it is a right decoration on
    the parent's input slot and is absorbed straight away.
    """
    verts: list[_Vertex] = []
    sign = 1

    def visit(node):
        nonlocal sign
        L = None
        while isinstance(node, PermApp):
            L = node.perm if L is None else compose(L, node.perm)
            node = node.child
        if isinstance(node, Leaf):
            return node, L
        v = _Vertex("xi" if isinstance(node, Xi) else "m")
        vid = len(verts)
        verts.append(v)
        kids = [node.child] if isinstance(node, Xi) else [node.left, node.right]
        if isinstance(node, Xi):
            v.i, v.j = node.i, node.j
        items = [visit(kid) for kid in kids]
        v.L = L
        if v.kind == "m" and kids[0].least > kids[1].least:
            a, b = kids
            items.reverse()
            swap = shuffle(b.color, a.color)
            v.L = swap if v.L is None else compose(v.L, swap)
            if (a.nxi * b.nxi) & 1:
                sign = -sign
        v.children = [item for item, _ in items]
        for slot, item in enumerate(v.children):
            if not isinstance(item, Leaf):
                verts[item].parent = vid
                verts[item].slot = slot
        colors = [_color_of(verts, c) for c in v.children]
        for slot, (item, R) in enumerate(items):
            if R is not None:
                _absorb(verts, vid, slot, R, colors)
        return vid, None

    root, rootL = visit(raw)
    return verts, root, rootL, sign


def _color_of(verts, item):
    if isinstance(item, Leaf):
        return item.color
    v = verts[item]
    if v.kind == "xi":
        return _color_of(verts, v.children[0]) - 2
    return sum(_color_of(verts, c) for c in v.children)


def _absorb(verts, vid, slot, R, kids_colors):
    """Right-multiply vertex ``vid``'s label by R on input ``slot``; renormalize."""
    v = verts[vid]
    if v.kind == "xi":
        n = kids_colors[0]
        sigma_hat, k, l, _ = coset_decompose(compose(rho(n, v.i, v.j), R))
        v.i, v.j = k, l
        v.L = sigma_hat if v.L is None else compose(v.L, sigma_hat)
    else:
        na, nb = kids_colors
        blk = block_embed(R, identity(nb)) if slot == 0 else block_embed(identity(na), R)
        v.L = blk if v.L is None else compose(v.L, blk)


def push_orders(raw: Node) -> list[tuple]:
    """All admissible push-down orders: every vertex after all vertices above it."""
    verts, root, _, _ = _flatten(raw)
    if isinstance(root, Leaf):
        return [()]
    nonroot = [k for k in range(len(verts)) if k != root]
    above = {k: set() for k in range(len(verts))}
    for k in range(len(verts)):
        stack = [c for c in verts[k].children if not isinstance(c, Leaf)]
        while stack:
            c = stack.pop()
            above[k].add(c)
            stack.extend(x for x in verts[c].children if not isinstance(x, Leaf))
    orders = []

    def extend(done, remaining):
        if not remaining:
            orders.append(tuple(done))
            return
        for k in sorted(remaining):
            if above[k] <= set(done):
                extend(done + [k], remaining - {k})

    extend([], set(nonroot))
    return orders


def purify_in_order(raw: Node, order: Sequence[int], sign: int = 1) -> Element:
    """Purify by pushing vertex decorations down one edge at a time, in ``order``.

    Vertices are numbered in preorder of ``raw`` (``PermApp`` nodes skipped).
    Independent of :func:`purify`; used to check order independence.
    """
    verts, root, rootL, s = _flatten(raw)
    if isinstance(root, Leaf):
        return Element(rootL or identity(root.color), root, sign)
    for vid in order:
        v = verts[vid]
        if vid == root:
            raise ValueError("the root vertex cannot be pushed")
        if v.L is not None:
            R, v.L = v.L, None
            p = verts[v.parent]
            _absorb(verts, v.parent, v.slot, R, [_color_of(verts, c) for c in p.children])
    for vid, v in enumerate(verts):
        if vid != root and v.L is not None:
            raise ValueError(f"order {tuple(order)} leaves a decoration on vertex {vid}")

    def build(item):
        if isinstance(item, Leaf):
            return item
        v = verts[item]
        if v.kind == "xi":
            return Xi(v.i, v.j, build(v.children[0]))
        return Merge(build(v.children[0]), build(v.children[1]))

    tree = build(root)
    L = verts[root].L
    if rootL is not None:
        L = rootL if L is None else compose(rootL, L)
    return Element(L or identity(tree.color), tree, sign * s)


# -- addressing ------------------------------------------------------------


def internal_paths(t: Node) -> list[tuple]:
    """Paths to the internal vertices of a pure tree, in preorder.

    Index 0 is the root vertex; index e >= 1 names the edge below vertex e.
    """
    out = []

    def walk(node, path):
        if isinstance(node, Leaf):
            return
        out.append(path)
        if isinstance(node, Xi):
            walk(node.child, path + (0,))
        else:
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))

    walk(t, ())
    return out


def subtree_at(t: Node, path: Sequence[int]) -> Node:
    for step in path:
        if isinstance(t, Merge):
            t = t.right if step else t.left
        else:
            t = t.child
    return t


def replace_at(t: Node, path: Sequence[int], new: Node) -> Node:
    if not path:
        return new
    step, rest = path[0], path[1:]
    if isinstance(t, Xi):
        return Xi(t.i, t.j, replace_at(t.child, rest, new))
    if isinstance(t, Merge):
        if step:
            return Merge(t.left, replace_at(t.right, rest, new))
        return Merge(replace_at(t.left, rest, new), t.right)
    if isinstance(t, PermApp):
        return PermApp(t.perm, replace_at(t.child, rest, new))
    raise RewriteError("path runs past a leaf")


# -- local rewrites ----------------------------------------------------------


def _rewrite_subtree(u: Node, branch: int):
    """Apply the relation at the edge between ``u`` and its child on ``branch``.

    Returns (new subtree, sign, kind, path of the new upper vertex relative to
    the subtree root) or None when no relation applies.
    """
    if isinstance(u, Xi):
        w = u.child
        if isinstance(w, Xi):
            n = w.child.color
            o = iota(symcore.OrderedGluingPair(n, w.i, w.j, u.i, u.j))
            return Xi(o.c, o.d, Xi(o.a, o.b, w.child)), -1, "xi-xi", (0,)
        # unary below binary: move the gluing onto the branch holding both legs
        n = w.left.color
        if u.j <= n:
            return Merge(Xi(u.i, u.j, w.left), w.right), 1, "transfer-up", (0,)
        if u.i > n:
            sign = -1 if w.left.nxi & 1 else 1
            return Merge(w.left, Xi(u.i - n, u.j - n, w.right)), sign, "transfer-up", (1,)
        return None
    w = u.right if branch else u.left
    if isinstance(w, Xi):
        if branch == 0:
            return Xi(w.i, w.j, Merge(w.child, u.right)), 1, "transfer-down", (0,)
        n = u.left.color
        sign = -1 if u.left.nxi & 1 else 1
        return Xi(w.i + n, w.j + n, Merge(u.left, w.child)), sign, "transfer-down", (0,)
    if branch == 1:
        p, q, r = u.left, w.left, w.right
        return Merge(Merge(p, q), r), 1, "assoc", (0,)
    q, r, s = w.left, w.right, u.right
    if r.least < s.least:
        return Merge(q, Merge(r, s)), 1, "assoc", (1,)
    # the middle branch hangs off the lower vertex: rotate, then re-sort
    return Merge(q, Merge(r, s)), 1, "assoc-resort", None


def rewrite_at(e: Element, edge: int) -> Optional[Rewrite]:
    """The relation applied at internal edge ``edge``; None if none applies."""
    paths = internal_paths(e.tree)
    if not 1 <= edge < len(paths):
        raise RewriteError(f"edge {edge} is not internal (tree has {len(paths)} vertices)")
    wpath = paths[edge]
    upath = wpath[:-1]
    out = _rewrite_subtree(subtree_at(e.tree, upath), wpath[-1])
    if out is None:
        return None
    sub, sign, kind, rel = out
    tree = replace_at(e.tree, upath, sub)
    if rel is None:
        L, tree, s = _purify(tree)
        sigma = e.sigma if L is None else compose(e.sigma, L)
        return Rewrite(Element(sigma, tree, e.sign * sign * s), None, kind)
    new_edge = internal_paths(tree).index(upath + rel)
    return Rewrite(Element(e.sigma, tree, e.sign * sign), new_edge, kind)


def local_rewrite(e: Element, edge: int) -> Optional[Element]:
    r = rewrite_at(e, edge)
    return None if r is None else r.element


def rewrites(e: Element) -> list[Rewrite]:
    out = []
    for edge in range(1, len(internal_paths(e.tree))):
        r = rewrite_at(e, edge)
        if r is not None:
            out.append(r)
    return out


def neighbors(e: Element) -> list[Element]:
    """Results of every applicable edge rewrite, in edge order."""
    return [r.element for r in rewrites(e)]


# -- group actions on elements -------------------------------------------------


def _map_leaves(t: Node, fn) -> Node:
    if isinstance(t, Leaf):
        return fn(t)
    if isinstance(t, Xi):
        return Xi(t.i, t.j, _map_leaves(t.child, fn))
    if isinstance(t, Merge):
        return Merge(_map_leaves(t.left, fn), _map_leaves(t.right, fn))
    return PermApp(t.perm, _map_leaves(t.child, fn))


def act_left(e: Element, g: Sequence[int]) -> Element:
    if len(g) != len(e.sigma):
        raise ColorError(f"left action by degree {len(g)} on output color {len(e.sigma)}")
    return Element(compose(tuple(g), e.sigma), e.tree, e.sign)


def act_right(e: Element, i: int, tau: Sequence[int]) -> Element:
    """Precompose input ``i`` with ``tau``."""
    tau = tuple(tau)

    def fn(leaf):
        if leaf.index != i:
            return leaf
        if len(tau) != leaf.color:
            raise ColorError(f"right action by degree {len(tau)} on input {i} of color {leaf.color}")
        return PermApp(tau, leaf)

    return purify(PermApp(e.sigma, _map_leaves(e.tree, fn)), e.sign)


def relabel_inputs(e: Element, pi: Sequence[int]) -> Element:
    """Input k becomes input pi(k)."""
    pi = tuple(pi)
    if not symcore.is_permutation(pi) or len(pi) != len(leaves(e.tree)):
        raise ColorError(f"{list(pi)} is not a relabeling of {len(leaves(e.tree))} inputs")
    raw = _map_leaves(e.tree, lambda leaf: Leaf(pi[leaf.index - 1], leaf.color))
    return purify(PermApp(e.sigma, raw), e.sign)


def graft(outer: Node, i: int, inner: Node) -> Node:
    """Plug ``inner`` into leaf ``i`` of ``outer``, renumbering leaves in order."""
    s = len(leaves(inner))
    target = [leaf for leaf in leaves(outer) if leaf.index == i]
    if not target:
        raise ColorError(f"outer term has no input {i}")
    if target[0].color != inner.color:
        raise ColorError(f"input {i} has color {target[0].color}, inner term outputs {inner.color}")
    shifted = _map_leaves(inner, lambda leaf: Leaf(leaf.index + i - 1, leaf.color))

    def fn(leaf):
        if leaf.index < i:
            return leaf
        if leaf.index == i:
            return shifted
        return Leaf(leaf.index + s - 1, leaf.color)

    return _map_leaves(outer, fn)


def rename_leaves(t: Node, mapping: dict) -> Node:
    return _map_leaves(t, lambda leaf: Leaf(mapping[leaf.index], leaf.color))


def all_relabelings(r: int) -> Iterator[tuple]:
    return _perms(range(1, r + 1))
