import pytest
from hypothesis import given, strategies as st

from smoc.symcore import (OrderedGluingPair, UnorderedGluingClass, block_embed, compose, coset_decompose,
                          count_ordered_pairs, epsilon, identity, inverse, iota, ordered_pairs, orbit, pair_shift,
                          parity, permutation, phi, reindex_primes, rho, shuffle, transposition,
                          unordered_classes, PermutationError)
from strategies import perm_of

perms = st.integers(1, 7).flatmap(perm_of)


def test_rho_example():
    assert rho(4, 1, 3) == (3, 1, 4, 2)
    assert rho(5, 4, 5) == identity(5)


def test_epsilon_offsets():
    assert [epsilon(2, 4, c) for c in (1, 3, 5)] == [0, 1, 2]
    with pytest.raises(ValueError):
        epsilon(3, 2, 1)
    with pytest.raises(ValueError):
        epsilon(1, 2, 2)


def test_compose_order():
    p, q = (2, 3, 1), (2, 1, 3)
    # q first, then p
    assert compose(p, q) == (3, 2, 1)
    with pytest.raises(PermutationError):
        compose((1, 2), (1, 2, 3))
    with pytest.raises(PermutationError):
        permutation([1, 1, 2])


def test_shuffle_and_block():
    assert shuffle(2, 3) == (4, 5, 1, 2, 3)
    assert block_embed((2, 1), (1, 2)) == (2, 1, 3, 4)


@pytest.mark.parametrize("t, expected", [
    ((1, 2, 3, 4), ((1, 2), 3, 4, 0)),
    ((2, 1, 4, 3), ((2, 1), 3, 4, 1)),
    ((3, 1, 4, 2), ((1, 2), 1, 3, 0)),
    (compose(transposition(4, 3, 4), rho(4, 1, 3)), ((1, 2), 1, 3, 1)),
])
def test_coset_examples(t, expected):
    assert coset_decompose(t) == expected


@given(st.integers(2, 7).flatmap(perm_of))
def test_coset_reconstructs(t):
    n = len(t)
    sigma_hat, k, l, eps = coset_decompose(t)
    rebuilt = compose(block_embed(sigma_hat, (1, 2)), rho(n, k, l))
    if eps:
        rebuilt = compose(transposition(n, n - 1, n), rebuilt)
    assert rebuilt == t and k < l


@given(perms, st.data())
def test_group_laws(p, data):
    q = data.draw(perm_of(len(p)))
    r = data.draw(perm_of(len(p)))
    assert compose(p, compose(q, r)) == compose(compose(p, q), r)
    assert compose(p, inverse(p)) == identity(len(p))
    assert parity(compose(p, q)) == parity(p) * parity(q)


@given(st.integers(2, 9).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))))
def test_rho_sends_pair_to_top(args):
    n, (i, j) = args
    i, j = sorted((i, j))
    r = rho(n, i, j)
    assert r[i - 1] == n - 1 and r[j - 1] == n
    rest = [r[c - 1] for c in range(1, n + 1) if c not in (i, j)]
    assert rest == list(range(1, n - 1))


def test_iota_example():
    assert iota(OrderedGluingPair(4, 1, 2, 1, 2)) == (4, 3, 4, 1, 2)


def test_reindex_primes_validation():
    with pytest.raises(ValueError):
        reindex_primes(5, 1, 2, 2, 3)
    assert reindex_primes(4, 1, 2, 3, 4) == (1, 2, 1, 2)


@pytest.mark.parametrize("n", range(4, 9))
def test_ordered_and_unordered_counts(n):
    On = ordered_pairs(n)
    assert len(On) == count_ordered_pairs(n)
    assert len(unordered_classes(n)) * 2 == len(On)
    assert len(unordered_classes(n)) == 3 * (n * (n - 1) * (n - 2) * (n - 3) // 24)


@given(st.integers(4, 10).flatmap(lambda n: st.sampled_from(ordered_pairs(n))), st.integers(1, 4))
def test_iota_properties(o, shift):
    o2 = iota(o)
    assert o2 != o and iota(o2) == o
    assert phi(o2) == phi(o)
    assert pair_shift(shift, iota(o)) == iota(pair_shift(shift, o))


def test_orbit_and_class():
    assert len(orbit(1, 2, 3, 4)) == 8
    assert UnorderedGluingClass.of(6, 5, 3, 2, 1).representative == (1, 2, 3, 5)
    with pytest.raises(ValueError):
        UnorderedGluingClass.of(4, 1, 1, 2, 3)
    with pytest.raises(ValueError):
        OrderedGluingPair.make(4, 1, 2, 2, 3)


def test_phi_fibers_have_two_elements():
    fibers = {}
    for o in ordered_pairs(6):
        fibers.setdefault(phi(o), []).append(o)
    assert all(len(f) == 2 for f in fibers.values())
    # each fiber glues the same two unordered pairs of original legs
    for cls, (a, b) in fibers.items():
        i, j, k, l = cls.representative
        assert {frozenset((i, j)), frozenset((k, l))} == {frozenset(a.indices[:2]), frozenset(
            [inverse(rho(6, a.a, a.b))[a.c - 1], inverse(rho(6, a.a, a.b))[a.d - 1]])}
