"""Squashing in type B: signed block permutations of {-n..n}.

The blocks of a parabolic subset J of the signed permutation group are a
central block around 0 (always symmetric) together with sign-pure blocks
coming in +/- pairs.  A core (I,J)-coset squashes to a signed permutation
of the k = n - |J| non-central block pairs, i.e. to an element of the rank
k group of the same type.  The central block never moves.
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
    type_b,
)
from .cosets import DoubleCoset, Frame, check_subset, coset_of, is_core, longest_element
from .atomic import AtomicCoset, all_atomic_rexes, atomic_from, atomic_rex_of_core


def _require_type_b(system: CoxeterSystem) -> None:
    if system.cartan != "B":
        raise ValueError(f"signed squashing needs a type B system, got {system.cartan}")


def block_classes_b(system: CoxeterSystem, J: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Blocks (C_0, C_1, .., C_k): the symmetric central block, then the
    positive blocks in increasing order.  C_{-c} = -C_c is implied."""
    _require_type_b(system)
    J = check_subset(system, J)
    n = system.rank
    # glue x ~ x+1 on {0..n} whenever s_x is in J; the run containing 0 is central
    runs: list[list[int]] = [[0]]
    for x in range(1, n + 1):
        if x - 1 in J:
            runs[-1].append(x)
        else:
            runs.append([x])
    central = runs[0]
    c0 = tuple(range(-central[-1], central[-1] + 1))
    return (c0,) + tuple(tuple(run) for run in runs[1:])


def _signed_block_images(y: Element, I: Frame, J: Frame) -> tuple[int, ...] | None:
    """Images of the positive J-block indices (signed), or None if blocks break."""
    source = block_classes_b(y.system, J)
    target = block_classes_b(y.system, I)
    if len(source) != len(target):
        return None
    vals0 = [act(y, x) for x in source[0]]
    if tuple(vals0) != target[0]:
        return None
    start_at = {blk[0]: c for c, blk in enumerate(target) if c > 0}
    out = []
    for blk in source[1:]:
        vals = [act(y, x) for x in blk]
        if any(b != a + 1 for a, b in zip(vals, vals[1:])):
            return None
        if vals[0] > 0:
            c = start_at.get(vals[0])
            if c is None or len(target[c]) != len(blk):
                return None
            out.append(c)
        else:
            # a negative block: its mirror -vals reversed must be a positive block
            c = start_at.get(-vals[-1])
            if c is None or len(target[c]) != len(blk):
                return None
            out.append(-c)
    return tuple(out)


def is_block_permutation_b(y: Element, I: Iterable[int], J: Iterable[int]) -> bool:
    I = check_subset(y.system, I)
    J = check_subset(y.system, J)
    if len(I) != len(J):
        raise ValueError("block permutations need frames of equal size")
    return _signed_block_images(y, I, J) is not None


def squash_coset_b(p: DoubleCoset) -> Element:
    """The signed permutation of block pairs induced by a core coset."""
    _require_type_b(p.system)
    if not is_core(p):
        raise ValueError("only core cosets squash to a signed permutation")
    img = _signed_block_images(p.min, p.left, p.right)
    if img is None:
        raise AssertionError(f"minimal element of core coset {p} is not a block permutation")
    return Element(type_b(len(img)), img)


def unsquash_b(system: CoxeterSystem, J: Iterable[int], sigma: Element) -> tuple[Frame, DoubleCoset]:
    """The core coset with right frame J squashing to sigma, with its left frame."""
    _require_type_b(system)
    J = check_subset(system, J)
    source = block_classes_b(system, J)
    k = len(source) - 1
    if sigma.system.cartan != "B" or len(sigma.data) != k:
        raise ValueError(f"expected a signed permutation of {k} block pairs")
    central = (len(source[0]) - 1) // 2
    sizes = [0] * k
    for c, blk in enumerate(source[1:], 1):
        sizes[abs(sigma.data[c - 1]) - 1] = len(blk)
    starts = [0] * k
    acc = central + 1
    for d in range(k):
        starts[d] = acc
        acc += sizes[d]
    images = list(range(1, system.rank + 1))  # central part is fixed pointwise
    for c, blk in enumerate(source[1:], 1):
        d = sigma.data[c - 1]
        if d > 0:
            base = starts[d - 1]
            for offset, x in enumerate(blk):
                images[x - 1] = base + offset
        else:
            top = starts[-d - 1] + sizes[-d - 1] - 1
            for offset, x in enumerate(blk):
                images[x - 1] = -(top - offset)
    y = Element(system, tuple(images))
    I = set(range(central))  # s_0 .. s_{central-1} glue the central block
    for d in range(k):
        I.update(starts[d] + r for r in range(sizes[d] - 1))
    I = frozenset(I)
    p = DoubleCoset(system, I, J, y)
    if __debug__:
        q = coset_of(system, I, y, J)
        if q.min != y:
            raise AssertionError("unsquashed signed block permutation is not minimal")
    return I, p


def atomic_generator_b(system: CoxeterSystem, J: Iterable[int], i: int) -> AtomicCoset:
    """The i-th atomic coset with right frame J (0-based, ascending gaps)."""
    _require_type_b(system)
    J = check_subset(system, J)
    gaps = sorted(set(system.simple_indices) - J)
    if not 0 <= i <= len(gaps) - 1:
        raise ValueError(f"generator index {i} out of range 0..{len(gaps) - 1}")
    s = gaps[i]
    mid = J | {s}
    t = as_simple(conjugate(longest_element(system, mid), s))
    return atomic_from(system, mid, t)


def atomic_index_b(a: AtomicCoset) -> int:
    gaps = sorted(set(a.system.simple_indices) - a.right)
    return gaps.index(a.removed)


def word_of_rex_b(atoms: Sequence[AtomicCoset]) -> tuple[int, ...]:
    return tuple(atomic_index_b(a) for a in atoms)


def lift_word_b(system: CoxeterSystem, J: Iterable[int], word: Sequence[int]) -> tuple[AtomicCoset, ...]:
    """Chain atomic generators along a word, rightmost letter applied to J first."""
    J = check_subset(system, J)
    atoms: list[AtomicCoset] = []
    cur = J
    for i in reversed(word):
        a = atomic_generator_b(system, cur, i)
        atoms.append(a)
        cur = a.left
    return tuple(reversed(atoms))


def squashed_system_b(system: CoxeterSystem, J: Iterable[int]) -> CoxeterSystem:
    _require_type_b(system)
    return type_b(len(block_classes_b(system, J)) - 1)


def word_product_b(squashed: CoxeterSystem, word: Sequence[int]) -> Element:
    return element_from_word(squashed, word)


def apply_braid_move_b(word: Sequence[int], pos: int, kind: str) -> tuple[int, ...]:
    """Rewrite an index word by one type-B braid move at the given position."""
    word = tuple(word)
    if kind == "braid4":
        if pos < 0 or pos + 4 > len(word):
            raise ValueError("pattern mismatch: no room for a length-4 braid move")
        quad = word[pos : pos + 4]
        if quad not in ((0, 1, 0, 1), (1, 0, 1, 0)):
            raise ValueError(f"pattern mismatch: {quad} is not an alternating 0,1 quadruple")
        return word[:pos] + quad[1:] + (quad[0],) + word[pos + 4 :]
    if kind == "braid3":
        if pos < 0 or pos + 3 > len(word):
            raise ValueError("pattern mismatch: no room for a braid move")
        a, b, c = word[pos : pos + 3]
        if a != c or abs(a - b) != 1 or min(a, b) < 1:
            raise ValueError(f"pattern mismatch: {word[pos:pos+3]} is not i,i+1,i with i >= 1")
        return word[:pos] + (b, a, b) + word[pos + 3 :]
    if kind == "comm":
        if pos < 0 or pos + 2 > len(word):
            raise ValueError("pattern mismatch: no room for a commuting move")
        a, b = word[pos : pos + 2]
        if abs(a - b) <= 1:
            raise ValueError(f"pattern mismatch: {word[pos:pos+2]} does not commute")
        return word[:pos] + (b, a) + word[pos + 2 :]
    raise ValueError(f"unknown move kind {kind!r}")


def _braid_neighbours_b(word: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    for pos in range(len(word) - 3):
        quad = word[pos : pos + 4]
        if quad in ((0, 1, 0, 1), (1, 0, 1, 0)):
            yield word[:pos] + quad[1:] + (quad[0],) + word[pos + 4 :]
    for pos in range(len(word) - 2):
        a, b = word[pos], word[pos + 1]
        if word[pos + 2] == a and abs(a - b) == 1 and min(a, b) >= 1:
            yield word[:pos] + (b, a, b) + word[pos + 3 :]
    for pos in range(len(word) - 1):
        if abs(word[pos] - word[pos + 1]) > 1:
            yield word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2 :]


def braid_closure_b(start: Sequence[int]) -> set[tuple[int, ...]]:
    start = tuple(start)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in _braid_neighbours_b(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def matsumoto_connected_b(p: DoubleCoset) -> bool:
    """Whether type-B braid moves reach every atomic reduced expression of p."""
    _require_type_b(p.system)
    rexes = {word_of_rex_b(r) for r in all_atomic_rexes(p)}
    return braid_closure_b(word_of_rex_b(atomic_rex_of_core(p))) == rexes
