"""Parabolic subsets and double cosets.

A double coset ``W_I w W_J`` is stored by its frames ``(I, J)`` and its
unique Bruhat-minimal element.  The maximal element, the left and right
redundancy, the core, and star (Demazure) composition are all computed
from that data on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .coxeter import (
    CoxeterSystem,
    Element,
    all_elements,
    as_simple,
    conjugate,
    group_order,
    identity,
    inverse,
    is_left_descent,
    is_right_descent,
    length,
    multiply,
    simple,
    star_product,
)

Frame = frozenset[int]


def check_subset(system: CoxeterSystem, indices: Iterable[int]) -> Frame:
    out = frozenset(indices)
    bad = out - set(system.simple_indices)
    if bad:
        raise ValueError(f"indices {sorted(bad)} out of range for {system}")
    return out


def format_subset(indices: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(indices)) + "}"


def parse_subset(text: str) -> Frame:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"expected a subset like {{1,3}}, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return frozenset()
    return frozenset(int(tok) for tok in body.split(","))


@lru_cache(maxsize=None)
def longest_element(system: CoxeterSystem, indices: Frame) -> Element:
    """The longest element of the parabolic subgroup W_I."""
    indices = check_subset(system, indices)
    acc = identity(system)
    while True:
        free = [i for i in sorted(indices) if not is_right_descent(acc, i)]
        if not free:
            return acc
        acc = multiply(acc, simple(system, free[0]))


def parabolic_length(system: CoxeterSystem, indices: Frame) -> int:
    return length(longest_element(system, frozenset(indices)))


@dataclass(frozen=True)
class DoubleCoset:
    """An (I,J)-coset, keyed by its minimal element."""

    system: CoxeterSystem
    left: Frame
    right: Frame
    min: Element


def coset_of(system: CoxeterSystem, left: Iterable[int], w: Element, right: Iterable[int]) -> DoubleCoset:
    """The (I,J)-coset containing w, canonicalized to its minimal element."""
    left = check_subset(system, left)
    right = check_subset(system, right)
    cur = w
    changed = True
    while changed:
        changed = False
        for i in sorted(left):
            if is_left_descent(cur, i):
                cur = multiply(simple(system, i), cur)
                changed = True
        for j in sorted(right):
            if is_right_descent(cur, j):
                cur = multiply(cur, simple(system, j))
                changed = True
    return DoubleCoset(system, left, right, cur)


def identity_coset(system: CoxeterSystem, frame: Iterable[int]) -> DoubleCoset:
    frame = check_subset(system, frame)
    return DoubleCoset(system, frame, frame, identity(system))


@lru_cache(maxsize=None)
def max_elem(p: DoubleCoset) -> Element:
    """The Bruhat-maximal element w_I * min * w_J (star product)."""
    out = star_product(longest_element(p.system, p.left), p.min)
    return star_product(out, longest_element(p.system, p.right))


@lru_cache(maxsize=None)
def left_redundancy(p: DoubleCoset) -> Frame:
    """I intersected with min J min^{-1}, as a set of simple indices."""
    out = set()
    for j in p.right:
        i = as_simple(conjugate(p.min, j))
        if i is not None and i in p.left:
            out.add(i)
    return frozenset(out)


@lru_cache(maxsize=None)
def right_redundancy(p: DoubleCoset) -> Frame:
    """min^{-1} I min intersected with J."""
    inv = inverse(p.min)
    out = set()
    for i in p.left:
        j = as_simple(conjugate(inv, i))
        if j is not None and j in p.right:
            out.add(j)
    return frozenset(out)


@lru_cache(maxsize=None)
def is_core(p: DoubleCoset) -> bool:
    """True iff conjugation by the minimal element carries J onto I.

    Cross-checked (unless running with -O) against the equivalent criterion
    that max = w_I . min = min . w_J with lengths adding.
    """
    conj_ok = left_redundancy(p) == p.left and right_redundancy(p) == p.right
    if __debug__:
        lmin = length(p.min)
        lmax = length(max_elem(p))
        len_ok = (
            lmax == parabolic_length(p.system, p.left) + lmin
            and lmax == lmin + parabolic_length(p.system, p.right)
        )
        if conj_ok != len_ok:
            raise AssertionError(f"core criteria disagree on {p}")
    return conj_ok


def core(p: DoubleCoset) -> DoubleCoset:
    """The coset with the same minimal element framed by the redundancies."""
    return coset_of(p.system, left_redundancy(p), p.min, right_redundancy(p))


def invert(p: DoubleCoset) -> DoubleCoset:
    """The (J,I)-coset of the inverses."""
    return DoubleCoset(p.system, p.right, p.left, inverse(p.min))


def star_compose(p: DoubleCoset, q: DoubleCoset) -> DoubleCoset:
    """The (I,K)-coset whose maximum is max(p) * max(q)."""
    if p.system != q.system or p.right != q.left:
        raise ValueError("frame mismatch in coset composition")
    x = star_product(max_elem(p), max_elem(q))
    return coset_of(p.system, p.left, x, q.right)


def is_reduced_composition(p: DoubleCoset, q: DoubleCoset) -> bool:
    """True iff l(max(p) w_J^{-1}) + l(max(q)) is attained by the product."""
    if p.system != q.system or p.right != q.left:
        raise ValueError("frame mismatch in coset composition")
    a = multiply(max_elem(p), inverse(longest_element(p.system, p.right)))
    b = max_elem(q)
    return length(multiply(a, b)) == length(a) + length(b)


def _coset_sort_key(p: DoubleCoset):
    return (tuple(sorted(p.left)), length(p.min), p.min.data)


def enumerate_cosets(
    system: CoxeterSystem,
    left: Iterable[int],
    right: Iterable[int],
    cap: int = 10000,
) -> list[DoubleCoset]:
    """All (I,J)-cosets, by brute-force canonicalization over W."""
    if group_order(system) > cap:
        raise ValueError(f"group order {group_order(system)} exceeds budget {cap}")
    seen: dict[Element, DoubleCoset] = {}
    for w in all_elements(system):
        p = coset_of(system, left, w, right)
        seen.setdefault(p.min, p)
    return sorted(seen.values(), key=_coset_sort_key)


def enumerate_core_cosets(
    system: CoxeterSystem, right: Iterable[int], cap: int = 10000
) -> list[tuple[Frame, DoubleCoset]]:
    """All core cosets with the given right frame, over every left frame.

    An element w is the minimal element of a core coset with right frame J
    exactly when it has no right descent in J and conjugates every s_j,
    j in J, to a simple reflection; the left frame is then w J w^{-1}.
    """
    if group_order(system) > cap:
        raise ValueError(f"group order {group_order(system)} exceeds budget {cap}")
    right = check_subset(system, right)
    out = []
    for w in all_elements(system):
        if any(is_right_descent(w, j) for j in right):
            continue
        conj = set()
        for j in right:
            i = as_simple(conjugate(w, j))
            if i is None:
                break
            conj.add(i)
        else:
            left = frozenset(conj)
            out.append((left, DoubleCoset(system, left, right, w)))
    out.sort(key=lambda pair: _coset_sort_key(pair[1]))
    return out


def coset_to_json(p: DoubleCoset) -> dict:
    doc = {
        "cartan": p.system.cartan,
        "rank": p.system.rank,
        "left": sorted(p.left),
        "right": sorted(p.right),
        "min": list(p.min.data),
    }
    if p.system.cartan == "I2":
        doc["bond"] = p.system.bond
    return doc


def coset_from_json(doc: dict) -> DoubleCoset:
    system = CoxeterSystem(doc["cartan"], doc["rank"], doc.get("bond"))
    if system.cartan == "I2":
        from .coxeter import element_from_word

        w = element_from_word(system, doc["min"])
    else:
        from .coxeter import element_from_images

        w = element_from_images(system, doc["min"])
    return coset_of(system, doc["left"], w, doc["right"])
