"""Shared brute-force oracles, kept independent of the library internals."""
from __future__ import annotations

from collections import deque
from itertools import combinations

import pytest

from cosetrex import coxeter as cx


def perm_mult(w, v):
    """Compose image tuples under (w v)(x) = w(v(x)); 1-based values."""
    return tuple(w[x - 1] for x in v)


def perm_simple(n, i):
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_from_word(n, word):
    acc = tuple(range(1, n + 1))
    for i in word:
        acc = perm_mult(acc, perm_simple(n, i))
    return acc


def inversion_count(images):
    return sum(
        1
        for i, j in combinations(range(len(images)), 2)
        if images[i] > images[j]
    )


def cayley_distances(system):
    """Word length of every element, by breadth-first search from the identity."""
    gens = [cx.simple(system, i) for i in system.simple_indices]
    dist = {cx.identity(system): 0}
    queue = deque([cx.identity(system)])
    while queue:
        w = queue.popleft()
        for g in gens:
            nxt = cx.multiply(w, g)
            if nxt not in dist:
                dist[nxt] = dist[w] + 1
                queue.append(nxt)
    return dist


def bruhat_leq_oracle(w, v):
    """Subword test by brute force over all subsequences of a reduced word."""
    word = cx.reduced_word(v)
    n = len(word)
    for mask in range(1 << n):
        chosen = [word[k] for k in range(n) if mask >> k & 1]
        if cx.element_from_word(w.system, chosen) == w:
            return True
    return False


def all_subsets(system):
    indices = list(system.simple_indices)
    return [
        frozenset(i for b, i in enumerate(indices) if mask >> b & 1)
        for mask in range(1 << len(indices))
    ]


@pytest.fixture(scope="session")
def a2():
    return cx.type_a(2)


@pytest.fixture(scope="session")
def a3():
    return cx.type_a(3)


@pytest.fixture(scope="session")
def b2():
    return cx.type_b(2)


@pytest.fixture(scope="session")
def b3():
    return cx.type_b(3)
