"""The nilCoxeter algebroid on double cosets and its atomic subcategory.

Morphisms from J to I are integer combinations of symbols d_p indexed by
(I,J)-cosets, composed by d_p . d_q = d_{p*q} when the star composition is
reduced and 0 otherwise.  The subcategory generated by the atomic symbols
has the core cosets as a basis; over a fixed right frame it is a copy of
the ordinary nilCoxeter algebra of the squashed group.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coxeter import CoxeterSystem
from .cosets import (
    DoubleCoset,
    Frame,
    check_subset,
    coset_to_json,
    enumerate_core_cosets,
    identity_coset,
    is_reduced_composition,
    star_compose,
)
from .atomic import coset_of_atom
from .squash_a import atomic_generator, block_classes
from .squash_b import atomic_generator_b, block_classes_b


@dataclass(eq=True)
class ADMorphism:
    """A finitely supported integer combination of coset symbols d_p.

    All keyed cosets are (target, source)-cosets; zero coefficients are
    pruned.  Treat instances as immutable.
    """

    system: CoxeterSystem
    source: Frame
    target: Frame
    coeffs: dict[DoubleCoset, int] = field(default_factory=dict)


def basis_morphism(p: DoubleCoset) -> ADMorphism:
    """The symbol d_p."""
    return ADMorphism(p.system, p.right, p.left, {p: 1})


def zero_morphism(system: CoxeterSystem, source: Frame, target: Frame) -> ADMorphism:
    return ADMorphism(system, frozenset(source), frozenset(target), {})


def identity_morphism(system: CoxeterSystem, frame: Iterable[int]) -> ADMorphism:
    return basis_morphism(identity_coset(system, frame))


def d_compose(p: DoubleCoset, q: DoubleCoset) -> ADMorphism:
    """d_p . d_q: the composite symbol when reduced, zero otherwise."""
    if p.system != q.system or p.right != q.left:
        raise ValueError("frame mismatch in symbol composition")
    if is_reduced_composition(p, q):
        return basis_morphism(star_compose(p, q))
    return zero_morphism(p.system, q.right, p.left)


def add(f: ADMorphism, g: ADMorphism) -> ADMorphism:
    if (f.system, f.source, f.target) != (g.system, g.source, g.target):
        raise ValueError("cannot add morphisms with different frames")
    coeffs = dict(f.coeffs)
    for p, c in g.coeffs.items():
        coeffs[p] = coeffs.get(p, 0) + c
        if coeffs[p] == 0:
            del coeffs[p]
    return ADMorphism(f.system, f.source, f.target, coeffs)


def scale(f: ADMorphism, n: int) -> ADMorphism:
    if n == 0:
        return zero_morphism(f.system, f.source, f.target)
    return ADMorphism(f.system, f.source, f.target, {p: n * c for p, c in f.coeffs.items()})


def ad_compose(f: ADMorphism, g: ADMorphism) -> ADMorphism:
    """Bilinear extension of d_compose; apply g first, then f."""
    if f.system != g.system or f.source != g.target:
        raise ValueError("frame mismatch in morphism composition")
    coeffs: dict[DoubleCoset, int] = {}
    for p, cp in f.coeffs.items():
        for q, cq in g.coeffs.items():
            if is_reduced_composition(p, q):
                key = star_compose(p, q)
                coeffs[key] = coeffs.get(key, 0) + cp * cq
                if coeffs[key] == 0:
                    del coeffs[key]
    return ADMorphism(f.system, g.source, f.target, coeffs)


def n_strands(system: CoxeterSystem, J: Frame) -> int:
    """Number of generator slots at the object J."""
    if system.cartan == "A":
        return len(block_classes(system, J))
    if system.cartan == "B":
        return len(block_classes_b(system, J)) - 1
    raise ValueError("the atomic algebroid backends are types A and B")


def generator(system: CoxeterSystem, J: Iterable[int], i: int) -> ADMorphism:
    """The atomic generator symbol d_i at the object J."""
    J = check_subset(system, J)
    if system.cartan == "A":
        atom = atomic_generator(system, J, i)
    elif system.cartan == "B":
        atom = atomic_generator_b(system, J, i)
    else:
        raise ValueError("the atomic algebroid backends are types A and B")
    return basis_morphism(coset_of_atom(atom))


def psi(system: CoxeterSystem, J: Iterable[int], word: Sequence[int]) -> ADMorphism:
    """Fold the generator word onto the object J, rightmost letter first.

    The result is nonzero exactly when the word is reduced in the squashed
    group, and is then the basis symbol of the lifted core coset.
    """
    J = check_subset(system, J)
    acc = identity_morphism(system, J)
    for i in reversed(word):
        acc = ad_compose(generator(system, acc.target, i), acc)
    return acc


def ad_basis(system: CoxeterSystem, J: Iterable[int], cap: int = 10000) -> list[DoubleCoset]:
    """All core cosets with right frame J: a basis of the morphisms out of J."""
    return [p for _, p in enumerate_core_cosets(system, J, cap)]


def reachable_cosets(system: CoxeterSystem, J: Iterable[int]) -> set[DoubleCoset]:
    """Cosets of all nonzero products of atomic generators out of J."""
    J = check_subset(system, J)
    k = n_strands(system, J)
    indices = range(1, k) if system.cartan == "A" else range(k)
    start = identity_coset(system, J)
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for i in indices:
            g = generator(system, p.left, i)
            (a,) = g.coeffs
            if is_reduced_composition(a, p):
                nxt = star_compose(a, p)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


@dataclass
class RelationReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_relations(system: CoxeterSystem) -> RelationReport:
    """Check the nil, braid, and commuting generator relations at every object."""
    report = RelationReport()

    def record(name: str, J: Frame, holds: bool) -> None:
        report.checked += 1
        if not holds:
            report.failures.append(f"{name} fails at J = {sorted(J)} in {system}")

    type_b = system.cartan == "B"
    subsets = _all_subsets(system)
    for J in subsets:
        k = n_strands(system, J)
        indices = list(range(1, k)) if not type_b else list(range(k))
        for i in indices:
            record(f"d{i} d{i} = 0", J, not psi(system, J, (i, i)).coeffs)
        for i in indices:
            if i + 1 in indices and (not type_b or i >= 1):
                lhs = psi(system, J, (i, i + 1, i))
                rhs = psi(system, J, (i + 1, i, i + 1))
                record(f"braid d{i} d{i+1} d{i}", J, lhs == rhs)
        for i in indices:
            for j in indices:
                if j > i + 1:
                    record(
                        f"comm d{i} d{j}",
                        J,
                        psi(system, J, (i, j)) == psi(system, J, (j, i)),
                    )
        if type_b and k >= 2:
            record(
                "braid d0 d1 d0 d1",
                J,
                psi(system, J, (0, 1, 0, 1)) == psi(system, J, (1, 0, 1, 0)),
            )
    return report


def _all_subsets(system: CoxeterSystem) -> list[Frame]:
    indices = list(system.simple_indices)
    out = []
    for mask in range(1 << len(indices)):
        out.append(frozenset(i for b, i in enumerate(indices) if mask >> b & 1))
    return sorted(out, key=lambda J: (len(J), sorted(J)))


def composition_of(system: CoxeterSystem, J: Iterable[int]) -> tuple[int, ...]:
    """The block-size composition identifying the object J."""
    J = check_subset(system, J)
    if system.cartan == "A":
        return tuple(len(blk) for blk in block_classes(system, J))
    if system.cartan == "B":
        blocks = block_classes_b(system, J)
        return ((len(blocks[0]) + 1) // 2,) + tuple(len(blk) for blk in blocks[1:])
    raise ValueError("compositions identify type A and B objects only")


def frame_from_composition(system: CoxeterSystem, parts: Sequence[int]) -> Frame:
    """Inverse of composition_of."""
    if any(part < 1 for part in parts):
        raise ValueError("composition parts must be positive")
    if system.cartan == "A":
        if sum(parts) != system.points:
            raise ValueError(f"composition must sum to {system.points}")
        out, x = set(), 0
        for part in parts:
            out.update(range(x + 1, x + part))
            x += part
        return frozenset(out)
    if system.cartan == "B":
        if sum(parts) != system.rank + 1:
            raise ValueError(f"composition must sum to {system.rank + 1}")
        out = set(range(parts[0] - 1))
        x = parts[0] - 1
        for part in parts[1:]:
            out.update(range(x + 1, x + part))
            x += part
        return frozenset(out)
    raise ValueError("compositions identify type A and B objects only")


def format_composition(parts: Sequence[int]) -> str:
    return "(" + ",".join(str(n) for n in parts) + ")"


def parse_composition(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"expected a composition like (2,1,1), got {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ValueError("a composition needs at least one part")
    return tuple(int(tok) for tok in body.split(","))


def morphism_to_json(f: ADMorphism) -> dict:
    terms = [
        {"coset": coset_to_json(p), "coefficient": c}
        for p, c in sorted(f.coeffs.items(), key=lambda item: (sorted(item[0].left), item[0].min.data))
    ]
    return {
        "source": sorted(f.source),
        "target": sorted(f.target),
        "terms": terms,
    }
