"""Atomic cosets and atomic reduced expressions for core cosets.

An atomic coset is a core coset with a (necessarily unique) reduced
expression ``[I, M, J]`` where ``M = I + s = J + t`` and ``t = w_M s w_M``.
Every core coset factors reducedly into atomic cosets; the greedy
construction below peels one atomic coset at a time off the left.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterSystem,
    as_simple,
    conjugate,
    identity,
    left_descents,
    length,
    multiply,
)
from .cosets import (
    DoubleCoset,
    Frame,
    check_subset,
    coset_of,
    identity_coset,
    is_core,
    is_reduced_composition,
    left_redundancy,
    longest_element,
    max_elem,
    right_redundancy,
    star_compose,
)
from .expressions import (
    MultistepExpression,
    OneStepExpression,
    concatenate,
    to_multistep,
)


@dataclass(frozen=True)
class AtomicCoset:
    """The coset of w_mid framed by left = mid - added and right = mid - removed."""

    system: CoxeterSystem
    left: Frame
    mid: Frame
    right: Frame
    added: int
    removed: int


def atomic_from(system: CoxeterSystem, mid: Iterable[int], s: int) -> AtomicCoset:
    """The atomic coset [mid-s, mid, mid-t] with t = w_mid s w_mid."""
    mid = check_subset(system, mid)
    if s not in mid:
        raise ValueError(f"{s} is not in {sorted(mid)}")
    w = longest_element(system, mid)
    t = as_simple(conjugate(w, s))
    if t is None:  # conjugation by w_M permutes the simples of M
        raise AssertionError(f"w_M {s} w_M is not simple for M = {sorted(mid)}")
    return AtomicCoset(system, mid - {s}, mid, mid - {t}, s, t)


@lru_cache(maxsize=None)
def coset_of_atom(a: AtomicCoset) -> DoubleCoset:
    """The underlying (left,right)-coset, the one containing w_mid."""
    return coset_of(a.system, a.left, longest_element(a.system, a.mid), a.right)


def is_atomic(p: DoubleCoset) -> bool:
    """Whether p is a core coset of the form [I + s - t]."""
    pmax = max_elem(p)
    mid = left_descents(pmax)
    extra = mid - p.left
    if len(extra) != 1 or not p.left <= mid:
        return False
    if pmax != longest_element(p.system, frozenset(mid)):
        return False
    (s,) = extra
    t = as_simple(conjugate(pmax, s))
    return t is not None and p.right == frozenset(mid) - {t} and is_core(p)


def atomic_rex_of_core(p: DoubleCoset) -> tuple[AtomicCoset, ...]:
    """Greedy atomic reduced expression of a core coset.

    At each step, add the smallest left descent of the maximum not already
    in the left frame, remove its conjugate under the enlarged longest
    element, and recurse on the shorter remainder coset.
    """
    if not is_core(p):
        raise ValueError("atomic expressions are only defined for core cosets")
    atoms: list[AtomicCoset] = []
    cur = p
    while True:
        pmax = max_elem(cur)
        extra = left_descents(pmax) - cur.left
        if not extra:
            break
        a = atomic_from(cur.system, cur.left | {min(extra)}, min(extra))
        atoms.append(a)
        nxt = _peel(cur, a, pmax)
        if length(max_elem(nxt)) >= length(pmax):
            raise AssertionError("atomic peeling failed to shorten the coset")
        cur = nxt
    if cur.left != cur.right or cur.min != identity(cur.system):
        raise AssertionError(f"descent-saturated core coset {cur} is not the identity coset")
    return tuple(atoms)


def _peel(p: DoubleCoset, a: AtomicCoset, pmax) -> DoubleCoset:
    # remainder coset q with p = a . q, via max(q) = w_{right(a)} w_{mid(a)} max(p)
    w = multiply(longest_element(p.system, a.right), longest_element(p.system, a.mid))
    return coset_of(p.system, a.right, multiply(w, pmax), p.right)


@lru_cache(maxsize=None)
def all_atomic_rexes(p: DoubleCoset) -> tuple[tuple[AtomicCoset, ...], ...]:
    """Every atomic reduced expression of a core coset, by full branching."""
    if not is_core(p):
        raise ValueError("atomic expressions are only defined for core cosets")
    pmax = max_elem(p)
    extra = sorted(left_descents(pmax) - p.left)
    if not extra:
        return ((),)
    out = []
    for s in extra:
        a = atomic_from(p.system, p.left | {s}, s)
        for rest in all_atomic_rexes(_peel(p, a, pmax)):
            out.append((a,) + rest)
    return tuple(out)


def one_step_of_atoms(
    system: CoxeterSystem, atoms: Sequence[AtomicCoset], start: Iterable[int] | None = None
) -> OneStepExpression:
    """Serialize a chained atom sequence as [I +s -t +s' -t' ...]."""
    if not atoms:
        if start is None:
            raise ValueError("an empty atom sequence needs an explicit frame")
        return OneStepExpression(system, check_subset(system, start), ())
    steps: list[tuple[int, int]] = []
    for k, a in enumerate(atoms):
        if k and atoms[k - 1].right != a.left:
            raise ValueError("frame mismatch in atom sequence")
        steps.append((1, a.added))
        steps.append((-1, a.removed))
    return OneStepExpression(system, atoms[0].left, tuple(steps))


def factor_through_core(p: DoubleCoset) -> MultistepExpression:
    """A reduced expression of p through its core, using the greedy atomic part."""
    K = left_redundancy(p)
    L = right_redundancy(p)
    inner = coset_of(p.system, K, p.min, L)
    expr = to_multistep(one_step_of_atoms(p.system, atomic_rex_of_core(inner), K))
    if K != p.left:
        expr = concatenate(MultistepExpression(p.system, (p.left, p.left, K)), expr)
    if L != p.right:
        expr = concatenate(expr, MultistepExpression(p.system, (L, p.right, p.right)))
    return expr


def atomic_composition_closure(
    system: CoxeterSystem, max_factors: int | None = None
) -> set[DoubleCoset]:
    """Cosets expressible as star compositions of atomic cosets.

    Breadth-first search seeded by the atomic cosets themselves, extending
    by one more atomic factor on the left each round; non-reduced
    compositions are kept.  ``max_factors`` bounds the factor count, else
    the search runs to saturation.  This is an exhaustive search utility,
    not a membership decision procedure for larger groups.
    """
    atoms = [
        atomic_from(system, M, s)
        for M in _finitary_subsets(system)
        for s in sorted(M)
    ]
    by_right: dict[Frame, list[DoubleCoset]] = {}
    for a in atoms:
        by_right.setdefault(a.right, []).append(coset_of_atom(a))
    frontier = {coset_of_atom(a) for a in atoms}
    seen = set(frontier)
    factors = 1
    while frontier and (max_factors is None or factors < max_factors):
        nxt = set()
        for p in frontier:
            for a in by_right.get(p.left, ()):
                q = star_compose(a, p)
                if q not in seen:
                    seen.add(q)
                    nxt.add(q)
        frontier = nxt
        factors += 1
    return seen


def _finitary_subsets(system: CoxeterSystem) -> list[Frame]:
    indices = list(system.simple_indices)
    return [
        frozenset(i for b, i in enumerate(indices) if mask >> b & 1)
        for mask in range(1 << len(indices))
    ]


def compose_atomics(
    system: CoxeterSystem,
    atoms: Sequence[AtomicCoset],
    empty_frame: Iterable[int] | None = None,
) -> tuple[DoubleCoset, bool]:
    """Star-compose a chained atom sequence; the flag reports reducedness."""
    if not atoms:
        if empty_frame is None:
            raise ValueError("an empty atom sequence needs an explicit frame")
        return identity_coset(system, empty_frame), True
    acc = coset_of_atom(atoms[0])
    reduced = True
    for a in atoms[1:]:
        nxt = coset_of_atom(a)
        if acc.right != nxt.left:
            raise ValueError("frame mismatch in atom sequence")
        if not is_reduced_composition(acc, nxt):
            reduced = False
        acc = star_compose(acc, nxt)
    return acc, reduced
