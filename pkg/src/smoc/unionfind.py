"""Union-find whose nodes carry a group label relative to their root.

``union(x, y, g)`` records ``x ~ y·g`` in the sense used by the closure
oracle: the element ``(sigma, x)`` equals ``(sigma∘g, y)`` up to the sign
carried by ``g``.  With the sign group alone this is the usual parity
union-find; with (sign, permutation) labels it quotients by the left
action without materializing it.
"""

from __future__ import annotations

from typing import Callable, Hashable


class LabeledUnionFind:
    def __init__(self, size: int, mul: Callable, inv: Callable, one: Hashable):
        self.parent = list(range(size))
        self.label = [one] * size  # label of node relative to its parent
        self.size = [1] * size
        self.mul, self.inv, self.one = mul, inv, one
        self.loops: list[tuple[int, Hashable]] = []  # (root at the time, holonomy)

    def find(self, x: int):
        """Return (root, label of x relative to root)."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        acc = self.one
        for node in reversed(path):
            acc = self.mul(self.label[node], acc)
            self.parent[node] = root
            self.label[node] = acc
        return root, (self.label[path[0]] if path else self.one)

    def union(self, x: int, y: int, g) -> bool:
        """Merge the classes of x and y; False if they were already joined."""
        rx, gx = self.find(x)
        ry, gy = self.find(y)
        link = self.mul(self.mul(self.inv(gx), g), gy)  # rx ~ ry·link
        if rx == ry:
            if link != self.one:
                self.loops.append((rx, link))
            return False
        if self.size[rx] > self.size[ry]:
            rx, ry, link = ry, rx, self.inv(link)
        self.parent[rx] = ry
        self.label[rx] = link
        self.size[ry] += self.size[rx]
        return True

    def holonomy(self) -> dict:
        """Root -> list of loop labels re-expressed at the current root."""
        out: dict = {}
        for node, h in self.loops:
            root, g = self.find(node)
            out.setdefault(root, []).append(self.mul(self.mul(self.inv(g), h), g))
        return out


def generated_subgroup(gens, mul, one) -> set:
    """All products of ``gens`` (finite group), by breadth-first closure."""
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen
