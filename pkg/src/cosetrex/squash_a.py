"""Squashing in type A: collapsing the blocks of a core coset to strands.

A parabolic subset J of the symmetric group on {1..n} partitions the points
into contiguous blocks.  The minimal element of a core (I,J)-coset permutes
the J-blocks onto the I-blocks order-preservingly, so it induces an honest
permutation of k = n - |J| strands.  This squashed permutation is a
bijection onto S_k (for fixed J), carries atomic cosets to simple
transpositions, and matches atomic reduced expressions with ordinary
reduced words.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterSystem,
    Element,
    act,
    as_simple,
    conjugate,
    element_from_word,
    type_a,
)
from .cosets import DoubleCoset, Frame, check_subset, coset_of, is_core, longest_element
from .atomic import AtomicCoset, all_atomic_rexes, atomic_from, atomic_rex_of_core


def _require_type_a(system: CoxeterSystem) -> None:
    if system.cartan != "A":
        raise ValueError(f"squashing here needs a type A system, got {system.cartan}")


def block_classes(system: CoxeterSystem, J: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """The ordered contiguous blocks of {1..n} glued along J."""
    _require_type_a(system)
    J = check_subset(system, J)
    n = system.points
    blocks: list[tuple[int, ...]] = []
    cur = [1]
    for x in range(2, n + 1):
        if x - 1 in J:
            cur.append(x)
        else:
            blocks.append(tuple(cur))
            cur = [x]
    blocks.append(tuple(cur))
    return tuple(blocks)


def is_block_permutation(y: Element, I: Iterable[int], J: Iterable[int]) -> bool:
    """Whether y carries each J-block order-preservingly onto an I-block."""
    I = check_subset(y.system, I)
    J = check_subset(y.system, J)
    if len(I) != len(J):
        raise ValueError("block permutations need frames of equal size")
    return _block_images(y, I, J) is not None


def _block_images(y: Element, I: Frame, J: Frame) -> tuple[int, ...] | None:
    """Images of the J-block indices under y, or None if blocks break."""
    source = block_classes(y.system, J)
    target = block_classes(y.system, I)
    index_at = {blk[0]: c for c, blk in enumerate(target, 1)}
    out = []
    for blk in source:
        vals = [act(y, x) for x in blk]
        if any(b != a + 1 for a, b in zip(vals, vals[1:])):
            return None
        c = index_at.get(vals[0])
        if c is None or len(target[c - 1]) != len(blk):
            return None
        out.append(c)
    return tuple(out)


def squash_coset(p: DoubleCoset) -> Element:
    """The permutation of strands induced by the minimal element of a core coset."""
    _require_type_a(p.system)
    if not is_core(p):
        raise ValueError("only core cosets squash to a permutation")
    img = _block_images(p.min, p.left, p.right)
    if img is None:
        raise AssertionError(f"minimal element of core coset {p} is not a block permutation")
    return Element(type_a(len(img) - 1), img)


def unsquash(system: CoxeterSystem, J: Iterable[int], sigma: Element) -> tuple[Frame, DoubleCoset]:
    """The core coset with right frame J squashing to sigma, with its left frame."""
    _require_type_a(system)
    J = check_subset(system, J)
    source = block_classes(system, J)
    k = len(source)
    if sigma.system.cartan != "A" or len(sigma.data) != k:
        raise ValueError(f"expected a permutation of {k} strands")
    sizes = [0] * k
    for c, blk in enumerate(source):
        sizes[sigma.data[c] - 1] = len(blk)
    starts = [0] * k
    acc = 1
    for d in range(k):
        starts[d] = acc
        acc += sizes[d]
    images = [0] * system.points
    for c, blk in enumerate(source):
        base = starts[sigma.data[c] - 1]
        for offset, x in enumerate(blk):
            images[x - 1] = base + offset
    y = Element(system, tuple(images))
    # left frame: indices i with i and i+1 inside the same target block
    I = frozenset(starts[d] + r for d in range(k) for r in range(sizes[d] - 1))
    p = DoubleCoset(system, I, J, y)
    if __debug__:
        q = coset_of(system, I, y, J)
        if q.min != y:
            raise AssertionError("unsquashed block permutation is not minimal")
    return I, p


def atomic_generator(system: CoxeterSystem, J: Iterable[int], i: int) -> AtomicCoset:
    """The i-th atomic coset with right frame J (1-based, ascending gaps)."""
    _require_type_a(system)
    J = check_subset(system, J)
    gaps = sorted(set(system.simple_indices) - J)
    if not 1 <= i <= len(gaps):
        raise ValueError(f"generator index {i} out of range 1..{len(gaps)}")
    s = gaps[i - 1]
    mid = J | {s}
    t = as_simple(conjugate(longest_element(system, mid), s))
    return atomic_from(system, mid, t)


def atomic_index(a: AtomicCoset) -> int:
    """Position of an atom among the atomic cosets sharing its right frame."""
    gaps = sorted(set(a.system.simple_indices) - a.right)
    return gaps.index(a.removed) + 1


def word_of_rex(atoms: Sequence[AtomicCoset]) -> tuple[int, ...]:
    """The index word of an atomic expression, leftmost factor first."""
    return tuple(atomic_index(a) for a in atoms)


def lift_word(system: CoxeterSystem, J: Iterable[int], word: Sequence[int]) -> tuple[AtomicCoset, ...]:
    """Chain atomic generators along a word, rightmost letter applied to J first."""
    J = check_subset(system, J)
    atoms: list[AtomicCoset] = []
    cur = J
    for i in reversed(word):
        a = atomic_generator(system, cur, i)
        atoms.append(a)
        cur = a.left
    return tuple(reversed(atoms))


def squashed_system(system: CoxeterSystem, J: Iterable[int]) -> CoxeterSystem:
    """The symmetric group on the strands left after squashing along J."""
    _require_type_a(system)
    return type_a(len(block_classes(system, J)) - 1)


def word_product(squashed: CoxeterSystem, word: Sequence[int]) -> Element:
    """The element of the squashed group spelled by an index word."""
    return element_from_word(squashed, word)


def apply_braid_move(word: Sequence[int], pos: int, kind: str) -> tuple[int, ...]:
    """Rewrite an atomic index word by one braid move at the given position."""
    word = tuple(word)
    if kind == "braid3":
        if pos < 0 or pos + 3 > len(word):
            raise ValueError("pattern mismatch: no room for a braid move")
        a, b, c = word[pos : pos + 3]
        if a != c or abs(a - b) != 1:
            raise ValueError(f"pattern mismatch: {word[pos:pos+3]} is not i,i+1,i")
        return word[:pos] + (b, a, b) + word[pos + 3 :]
    if kind == "comm":
        if pos < 0 or pos + 2 > len(word):
            raise ValueError("pattern mismatch: no room for a commuting move")
        a, b = word[pos : pos + 2]
        if abs(a - b) <= 1:
            raise ValueError(f"pattern mismatch: {word[pos:pos+2]} does not commute")
        return word[:pos] + (b, a) + word[pos + 2 :]
    raise ValueError(f"unknown move kind {kind!r}")


def _braid_neighbours(word: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    for pos in range(len(word) - 2):
        a, b = word[pos], word[pos + 1]
        if word[pos + 2] == a and abs(a - b) == 1:
            yield word[:pos] + (b, a, b) + word[pos + 3 :]
    for pos in range(len(word) - 1):
        if abs(word[pos] - word[pos + 1]) > 1:
            yield word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2 :]


def braid_closure(start: Sequence[int]) -> set[tuple[int, ...]]:
    """All index words reachable from start by braid and commuting moves."""
    start = tuple(start)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in _braid_neighbours(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def matsumoto_connected(p: DoubleCoset) -> bool:
    """Whether braid moves reach every atomic reduced expression of p."""
    _require_type_a(p.system)
    rexes = {word_of_rex(r) for r in all_atomic_rexes(p)}
    return braid_closure(word_of_rex(atomic_rex_of_core(p))) == rexes
