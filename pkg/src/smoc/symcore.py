"""Symmetric-group arithmetic and the combinatorics of pairs of self-gluings.

Permutations are plain tuples in 1-based one-line notation: ``p[k - 1]`` is
the image of ``k``.  Composition is right-to-left, ``compose(p, q)(k) ==
p(q(k))``, so ``compose(p, q)`` means "apply q, then p".
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterator, NamedTuple, Sequence

Permutation = tuple  # tuple[int, ...], 1-based one-line notation


class PermutationError(ValueError):
    pass


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def is_permutation(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(1, len(images) + 1))


def permutation(images: Sequence[int]) -> Permutation:
    """Validate ``images`` and return it as a permutation tuple."""
    p = tuple(int(x) for x in images)
    if not is_permutation(p):
        raise PermutationError(f"{list(images)} is not a permutation of 1..{len(p)}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q (apply q first)."""
    if len(p) != len(q):
        raise PermutationError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple([p[k - 1] for k in q])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for k, image in enumerate(p, 1):
        inv[image - 1] = k
    return tuple(inv)


def transposition(n: int, a: int, b: int) -> Permutation:
    images = list(range(1, n + 1))
    images[a - 1], images[b - 1] = b, a
    return tuple(images)


def parity(seq: Sequence) -> int:
    """Sign (+1/-1) of the permutation that sorts ``seq`` (distinct items)."""
    inversions = 0
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[a] > seq[b]:
                inversions += 1
    return -1 if inversions & 1 else 1


def all_permutations(n: int) -> Iterator[Permutation]:
    return permutations(range(1, n + 1))


def epsilon(a: int, b: int, c: int) -> int:
    """Offset of ``c`` relative to the pair a < b: 0 below a, 1 between, 2 above b."""
    if not a < b:
        raise ValueError(f"epsilon needs a < b, got a={a}, b={b}")
    if c == a or c == b:
        raise ValueError(f"epsilon needs c distinct from {a} and {b}")
    if c < a:
        return 0
    if c < b:
        return 1
    return 2


@lru_cache(maxsize=None)
def rho(n: int, i: int, j: int) -> Permutation:
    """The permutation sending i to n-1, j to n, order-preserving elsewhere."""
    if not (1 <= i < j <= n):
        raise ValueError(f"rho needs 1 <= i < j <= n, got n={n}, i={i}, j={j}")
    images = []
    for k in range(1, n + 1):
        if k == i:
            images.append(n - 1)
        elif k == j:
            images.append(n)
        else:
            images.append(k - epsilon(i, j, k))
    return tuple(images)


@lru_cache(maxsize=None)
def rho_inverse(n: int, i: int, j: int) -> Permutation:
    return inverse(rho(n, i, j))


def shuffle(n: int, m: int) -> Permutation:
    """The (n, m)-shuffle: adds m to 1..n and subtracts n from n+1..n+m."""
    if n < 0 or m < 0:
        raise ValueError("shuffle needs n, m >= 0")
    return tuple([k + m for k in range(1, n + 1)] + [k - n for k in range(n + 1, n + m + 1)])


def block_embed(p: Permutation, q: Permutation) -> Permutation:
    """p × q inside S_{n+m}: p on the first n letters, q on the last m."""
    n = len(p)
    return tuple(p) + tuple([x + n for x in q])


def coset_decompose(t: Permutation) -> tuple[Permutation, int, int, int]:
    """Split t ∈ S_n as ``s^eps ∘ (sigma_hat × id_2) ∘ rho(n, k, l)``.

    Here s = (n-1 n).  Since a self-gluing is invariant under s acting first
    and commutes with S_{n-2}, ``xi_{n-1,n} · t == sigma_hat · xi_{k,l}``.
    Returns (sigma_hat, k, l, eps) with k < l.
    """
    n = len(t)
    if n < 2:
        raise ValueError("coset_decompose needs degree >= 2")
    tinv = inverse(t)
    a, b = tinv[n - 2], tinv[n - 1]
    if a < b:
        k, l, eps = a, b, 0
    else:
        k, l, eps = b, a, 1
    blk = compose(t, rho_inverse(n, k, l))
    if eps:
        blk = compose(transposition(n, n - 1, n), blk)
    assert blk[n - 2] == n - 1 and blk[n - 1] == n
    return blk[: n - 2], k, l, eps


def reindex_primes(n: int, i: int, j: int, k: int, l: int) -> tuple[int, int, int, int]:
    """(rho_{k,l}(i), rho_{k,l}(j), rho_{i,j}(k), rho_{i,j}(l)) for distinct i<j, k<l."""
    if len({i, j, k, l}) != 4:
        raise ValueError(f"indices must be distinct: {(i, j, k, l)}")
    if not (i < j and k < l and max(j, l) <= n and min(i, k) >= 1):
        raise ValueError(f"need i<j, k<l within 1..{n}: {(i, j, k, l)}")
    r_kl = rho(n, k, l)
    r_ij = rho(n, i, j)
    return r_kl[i - 1], r_kl[j - 1], r_ij[k - 1], r_ij[l - 1]


class OrderedGluingPair(NamedTuple):
    """Glue (a, b) in S_n-labels, then (c, d) in the surviving labels."""

    n: int
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def make(cls, n: int, a: int, b: int, c: int, d: int) -> "OrderedGluingPair":
        if not (1 <= a < b <= n and 1 <= c < d <= n - 2):
            raise ValueError(f"not an ordered gluing pair over {n}: {(a, b, c, d)}")
        return cls(n, a, b, c, d)

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d


class UnorderedGluingClass(NamedTuple):
    """Orbit of (i, j, k, l) under the centralizer of (12)(34), i.e. {{i,j},{k,l}}.

    Stored as the lexicographically least orbit member.
    """

    n: int
    representative: tuple[int, int, int, int]

    @classmethod
    def of(cls, n: int, i: int, j: int, k: int, l: int) -> "UnorderedGluingClass":
        if len({i, j, k, l}) != 4 or not all(1 <= x <= n for x in (i, j, k, l)):
            raise ValueError(f"need four distinct entries in 1..{n}: {(i, j, k, l)}")
        return cls(n, min(orbit(i, j, k, l)))


def orbit(i: int, j: int, k: int, l: int) -> set[tuple[int, int, int, int]]:
    """The 8 tuples in the orbit of (i, j, k, l) under the centralizer of (12)(34)."""
    out = set()
    for p, q in (((i, j), (k, l)), ((k, l), (i, j))):
        for a, b in (p, p[::-1]):
            for c, d in (q, q[::-1]):
                out.add((a, b, c, d))
    return out


def phi(o: OrderedGluingPair) -> UnorderedGluingClass:
    n, i, j, c, d = o
    rinv = rho_inverse(n, i, j)
    return UnorderedGluingClass.of(n, i, j, rinv[c - 1], rinv[d - 1])


def iota(o: OrderedGluingPair) -> OrderedGluingPair:
    """The other element of the fiber of ``phi`` through ``o``."""
    n, i, j, c, d = o
    rinv = rho_inverse(n, i, j)
    k, l = rinv[c - 1], rinv[d - 1]
    r_kl = rho(n, k, l)
    return OrderedGluingPair(n, k, l, r_kl[i - 1], r_kl[j - 1])


def pair_shift(n: int, o: OrderedGluingPair) -> OrderedGluingPair:
    m, a, b, c, d = o
    return OrderedGluingPair(m + n, a + n, b + n, c + n, d + n)


def ordered_pairs(n: int) -> list[OrderedGluingPair]:
    """All of O_n, lexicographic."""
    return [
        OrderedGluingPair(n, a, b, c, d)
        for a, b in combinations(range(1, n + 1), 2)
        for c, d in combinations(range(1, n - 1), 2)
    ]


def unordered_classes(n: int) -> list[UnorderedGluingClass]:
    """All of U_n, by enumeration of pairs of disjoint pairs."""
    out = set()
    for p in combinations(range(1, n + 1), 2):
        for q in combinations(range(1, n + 1), 2):
            if not set(p) & set(q):
                out.add(UnorderedGluingClass.of(n, *p, *q))
    return sorted(out)


def count_ordered_pairs(n: int) -> int:
    return comb(n, 2) * comb(n - 2, 2) if n >= 2 else 0
