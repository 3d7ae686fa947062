"""Command-line front end: expression evaluation, enumeration, atomic
expressions, squashing, and the exhaustive verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import factorial
from typing import Callable, Sequence

from . import atomic, cosets, coxeter, expressions, nilcox, squash_a, squash_b
from .coxeter import CoxeterSystem, dihedral, type_a, type_b


def _system_from_args(args) -> CoxeterSystem:
    if args.type == "A":
        return type_a(args.rank)
    if args.type == "B":
        return type_b(args.rank)
    return dihedral(args.bond if args.bond else args.rank)


def _print_coset(p, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(cosets.coset_to_json(p), sort_keys=True))
    else:
        print(
            f"coset: left={cosets.format_subset(p.left)}"
            f" right={cosets.format_subset(p.right)}"
            f" min={coxeter.format_element(p.min)}"
        )


def _cmd_eval_expr(args) -> int:
    system = _system_from_args(args)
    expr = expressions.parse_expression(system, args.expr)
    p = expressions.evaluate(expr)
    reduced = expressions.is_reduced(expr)
    if args.format == "json":
        print(json.dumps({"coset": cosets.coset_to_json(p), "reduced": reduced}, sort_keys=True))
    else:
        _print_coset(p, "text")
        print(f"reduced: {str(reduced).lower()}")
    return 0


def _coset_from_args(args):
    if args.coset:
        return cosets.coset_from_json(json.loads(args.coset))
    system = _system_from_args(args)
    w = coxeter.parse_element(system, args.min)
    return cosets.coset_of(
        system, cosets.parse_subset(args.left), w, cosets.parse_subset(args.right)
    )


def _cmd_atomic_rex(args) -> int:
    p = _coset_from_args(args)
    if args.all:
        for rex in atomic.all_atomic_rexes(p):
            print(expressions.format_expression(atomic.one_step_of_atoms(p.system, rex, p.left)))
    else:
        rex = atomic.atomic_rex_of_core(p)
        print(expressions.format_expression(atomic.one_step_of_atoms(p.system, rex, p.left)))
    return 0


def _cmd_squash(args) -> int:
    p = _coset_from_args(args)
    sigma = squash_a.squash_coset(p) if p.system.cartan == "A" else squash_b.squash_coset_b(p)
    print(coxeter.format_element(sigma))
    return 0


def _cmd_unsquash(args) -> int:
    system = _system_from_args(args)
    J = cosets.parse_subset(args.right)
    if system.cartan == "A":
        small = squash_a.squashed_system(system, J)
        sigma = coxeter.parse_element(small, args.sigma)
        _, p = squash_a.unsquash(system, J, sigma)
    else:
        small = squash_b.squashed_system_b(system, J)
        sigma = coxeter.parse_element(small, args.sigma)
        _, p = squash_b.unsquash_b(system, J, sigma)
    _print_coset(p, args.format)
    return 0


def _cmd_enumerate_core(args) -> int:
    system = _system_from_args(args)
    J = cosets.parse_subset(args.right)
    found = cosets.enumerate_core_cosets(system, J)
    for _, p in found:
        _print_coset(p, args.format)
    print(f"count: {len(found)}")
    return 0


def _cmd_compose(args) -> int:
    system = _system_from_args(args)
    with open(args.exprs, encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    if not lines:
        print("error: no expressions to compose", file=sys.stderr)
        return 2
    parsed = [expressions.parse_expression(system, line) for line in lines]
    acc = expressions.evaluate(parsed[0])
    reduced = expressions.is_reduced(parsed[0])
    for expr in parsed[1:]:
        q = expressions.evaluate(expr)
        reduced = reduced and expressions.is_reduced(expr) and cosets.is_reduced_composition(acc, q)
        acc = cosets.star_compose(acc, q)
    if args.format == "json":
        print(json.dumps({"coset": cosets.coset_to_json(acc), "reduced": reduced}, sort_keys=True))
    else:
        _print_coset(acc, "text")
        print(f"reduced: {str(reduced).lower()}")
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _subsets(system: CoxeterSystem) -> list[frozenset[int]]:
    indices = list(system.simple_indices)
    out = [
        frozenset(i for b, i in enumerate(indices) if mask >> b & 1)
        for mask in range(1 << len(indices))
    ]
    return sorted(out, key=lambda J: (len(J), sorted(J)))


def _systems(cartan: str, max_rank: int) -> list[CoxeterSystem]:
    if cartan == "A":
        return [type_a(r) for r in range(1, max_rank + 1)]
    if cartan == "B":
        return [type_b(r) for r in range(1, max_rank + 1)]
    return [dihedral(m) for m in range(3, max(3, max_rank) + 1)]


def _suite_core_atomic(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        for J in _subsets(system):
            count = 0
            for _, p in cosets.enumerate_core_cosets(system, J):
                count += 1
                rex = atomic.atomic_rex_of_core(p)
                composed, reduced = atomic.compose_atomics(system, rex, p.left)
                expr = atomic.one_step_of_atoms(system, rex, p.left)
                if not (reduced and composed == p and expressions.is_reduced(expr)
                        and expressions.evaluate(expr) == p):
                    failures.append(f"core-atomic: {p}")
            emit(f"core-atomic {system.cartan} rank={system.rank}"
                 f"{'' if system.bond is None else f' m={system.bond}'}"
                 f" J={cosets.format_subset(J)}: {count} cosets")
    return failures


def _suite_squash_bijection(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems("A", max_rank):
        for J in _subsets(system):
            found = cosets.enumerate_core_cosets(system, J)
            small = squash_a.squashed_system(system, J)
            expected = factorial(small.rank + 1)
            if len(found) != expected:
                failures.append(f"squash count at {system} J={sorted(J)}: {len(found)} != {expected}")
            images = set()
            for I, p in found:
                sigma = squash_a.squash_coset(p)
                images.add(sigma)
                if squash_a.unsquash(system, J, sigma) != (I, p):
                    failures.append(f"squash round-trip fails at {p}")
            if len(images) != expected:
                failures.append(f"squash not injective at {system} J={sorted(J)}")
            for sigma in coxeter.all_elements(small):
                I, p = squash_a.unsquash(system, J, sigma)
                if squash_a.squash_coset(p) != sigma:
                    failures.append(f"unsquash round-trip fails at {sigma}")
            emit(f"squash-bijection A rank={system.rank} J={cosets.format_subset(J)}: {len(found)} cosets")
    return failures


def _suite_atomic_rex_bijection(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        squash = squash_a.squash_coset if cartan == "A" else squash_b.squash_coset_b
        word_of = squash_a.word_of_rex if cartan == "A" else squash_b.word_of_rex_b
        for J in _subsets(system):
            for _, p in cosets.enumerate_core_cosets(system, J):
                words = {word_of(rex) for rex in atomic.all_atomic_rexes(p)}
                expected = set(coxeter.reduced_words(squash(p)))
                if words != expected:
                    failures.append(f"atomic-rex-bijection: {p}")
            emit(f"atomic-rex-bijection {cartan} rank={system.rank} J={cosets.format_subset(J)}: ok")
    return failures


def _suite_matsumoto(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        connected = squash_a.matsumoto_connected if cartan == "A" else squash_b.matsumoto_connected_b
        for J in _subsets(system):
            for _, p in cosets.enumerate_core_cosets(system, J):
                if not connected(p):
                    failures.append(f"matsumoto: braid closure misses expressions of {p}")
            emit(f"matsumoto {cartan} rank={system.rank} J={cosets.format_subset(J)}: ok")
    return failures


def _suite_mimimi(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        by_left: dict[frozenset, list] = {}
        by_right: dict[frozenset, list] = {}
        for J in _subsets(system):
            for I, p in cosets.enumerate_core_cosets(system, J):
                by_left.setdefault(I, []).append(p)
                by_right.setdefault(J, []).append(p)
        pairs = 0
        for J, qs in by_left.items():
            for p in by_right.get(J, []):
                for q in qs:
                    pairs += 1
                    lhs = cosets.is_reduced_composition(p, q)
                    prod = coxeter.multiply(p.min, q.min)
                    rhs = coxeter.length(prod) == coxeter.length(p.min) + coxeter.length(q.min)
                    if lhs != rhs:
                        failures.append(f"mimimi reducedness mismatch: {p} * {q}")
                    elif lhs:
                        r = cosets.star_compose(p, q)
                        if r.min != prod or not cosets.is_core(r):
                            failures.append(f"mimimi composite mismatch: {p} * {q}")
            emit(f"mimimi {cartan} rank={system.rank} through J={cosets.format_subset(J)}: ok")
        emit(f"mimimi {cartan} rank={system.rank}: {pairs} pairs")
    return failures


def _all_atoms(system: CoxeterSystem):
    for M in _subsets(system):
        for s in sorted(M):
            yield atomic.atomic_from(system, M, s)


def _suite_atomatom(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        atoms = list(_all_atoms(system))
        for a in atoms:
            p = atomic.coset_of_atom(a)
            chain = cosets.star_compose(cosets.star_compose(p, cosets.invert(p)), p)
            if chain != p:
                failures.append(f"atomatom: p*(p^-1)*p != p at {a}")
        for a in atoms:
            for b in atoms:
                pa, pb = atomic.coset_of_atom(a), atomic.coset_of_atom(b)
                if pa.right != pb.left:
                    continue
                if cosets.is_reduced_composition(pa, pb):
                    continue
                prod = cosets.star_compose(pa, pb)
                if cosets.is_core(prod) != (pa == pb):
                    failures.append(f"atomatom: non-reduced core test fails at {a}, {b}")
                if pa == pb and prod != pa:
                    failures.append(f"atomatom: p*p != p at {a}")
        # a_i^I * a_i^J is never reduced and lands on the [J, Js, J]-coset
        for J in _subsets(system):
            gaps = sorted(set(system.simple_indices) - J)
            base = 1 if cartan == "A" else 0
            for k in range(len(gaps)):
                i = base + k
                aJ = (squash_a.atomic_generator(system, J, i) if cartan == "A"
                      else squash_b.atomic_generator_b(system, J, i))
                aI = (squash_a.atomic_generator(system, aJ.left, i) if cartan == "A"
                      else squash_b.atomic_generator_b(system, aJ.left, i))
                pI, pJ = atomic.coset_of_atom(aI), atomic.coset_of_atom(aJ)
                if cosets.is_reduced_composition(pI, pJ):
                    failures.append(f"aa=a: reduced composition at J={sorted(J)} i={i}")
                expected = cosets.coset_of(
                    system, J, cosets.longest_element(system, aJ.mid), J
                )
                if cosets.star_compose(pI, pJ) != expected:
                    failures.append(f"aa=a: wrong composite at J={sorted(J)} i={i}")
        emit(f"atomatom {cartan} rank={system.rank}: {len(atoms)} atoms")
    return failures


def _suite_nilcox_relations(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        report = nilcox.verify_relations(system)
        failures.extend(report.failures)
        for J in _subsets(system):
            k = nilcox.n_strands(system, J)
            expected = factorial(k) if cartan == "A" else 2 ** k * factorial(k)
            basis = nilcox.ad_basis(system, J)
            reachable = nilcox.reachable_cosets(system, J)
            if len(basis) != expected:
                failures.append(f"basis count at {system} J={sorted(J)}: {len(basis)} != {expected}")
            if reachable != set(basis):
                failures.append(f"reachable generator products differ from the core basis at {system} J={sorted(J)}")
        emit(f"nilcox-relations {cartan} rank={system.rank}: {report.checked} relation instances")
    return failures


def _suite_add_remove(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems(cartan, max_rank):
        subsets = _subsets(system)
        for I in subsets:
            for J in subsets:
                for p in cosets.enumerate_cosets(system, I, J):
                    pmax = cosets.max_elem(p)
                    ldes = coxeter.left_descents(pmax)
                    lred = cosets.left_redundancy(p)
                    wI = cosets.longest_element(system, I)
                    for s in system.simple_indices:
                        if s not in I:
                            bigger = I | {s}
                            tail = atomic.factor_through_core(cosets.coset_of(system, bigger, pmax, J))
                            expr = expressions.concatenate(
                                expressions.MultistepExpression(system, (I, bigger, bigger)), tail
                            )
                            works = expressions.is_reduced(expr) and expressions.evaluate(expr) == p
                            if works != (s in ldes):
                                failures.append(f"add-remove: +{s} at {p}")
                        else:
                            smaller = I - {s}
                            # the remainder coset of a reduced removal has
                            # maximum w_{I-s} w_I max(p)
                            nmax = coxeter.multiply(
                                coxeter.multiply(cosets.longest_element(system, smaller), wI), pmax
                            )
                            tail = atomic.factor_through_core(cosets.coset_of(system, smaller, nmax, J))
                            expr = expressions.concatenate(
                                expressions.MultistepExpression(system, (I, I, smaller)), tail
                            )
                            works = expressions.is_reduced(expr) and expressions.evaluate(expr) == p
                            if works != (s not in lred):
                                failures.append(f"add-remove: -{s} at {p}")
            emit(f"add-remove {cartan} rank={system.rank} I={cosets.format_subset(I)}: ok")
    return failures


def _suite_redundancy_a(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems("A", max_rank):
        subsets = _subsets(system)
        for I in subsets:
            for J in subsets:
                for p in cosets.enumerate_cosets(system, I, J):
                    rred = cosets.right_redundancy(p)
                    lred = cosets.left_redundancy(p)
                    pmin = p.min
                    for j in J:
                        stated = (
                            coxeter.act(pmin, j + 1) == coxeter.act(pmin, j) + 1
                            and coxeter.act(pmin, j) in I
                        )
                        if stated != (j in rred):
                            failures.append(f"redundancy-a: j={j} at {p}")
                    if frozenset(coxeter.act(pmin, j) for j in rred) != lred:
                        failures.append(f"redundancy-a: leftred != min(rightred) at {p}")
                    if cosets.is_core(p):
                        for j in J:
                            stated = coxeter.act(pmin, j + 1) == coxeter.act(pmin, j) + 1
                            if stated != (j in rred):
                                failures.append(f"redundancy-a (core): j={j} at {p}")
            emit(f"redundancy-a rank={system.rank} I={cosets.format_subset(I)}: ok")
    return failures


def _suite_type_b(cartan: str, max_rank: int, emit) -> list[str]:
    failures = []
    for system in _systems("B", max_rank):
        subsets = _subsets(system)
        for I in subsets:
            for J in subsets:
                for p in cosets.enumerate_cosets(system, I, J):
                    lred = cosets.left_redundancy(p)
                    rred = cosets.right_redundancy(p)
                    if (0 in lred) != (0 in rred):
                        failures.append(f"type-b: s0 redundancy asymmetry at {p}")
        for J in subsets:
            found = cosets.enumerate_core_cosets(system, J)
            k = system.rank - len(J)
            expected = 2 ** k * factorial(k)
            if len(found) != expected:
                failures.append(f"type-b core count at J={sorted(J)}: {len(found)} != {expected}")
            for I, p in found:
                sigma = squash_b.squash_coset_b(p)
                if squash_b.unsquash_b(system, J, sigma) != (I, p):
                    failures.append(f"type-b squash round-trip fails at {p}")
            small = squash_b.squashed_system_b(system, J)
            for sigma in coxeter.all_elements(small):
                I, p = squash_b.unsquash_b(system, J, sigma)
                if squash_b.squash_coset_b(p) != sigma:
                    failures.append(f"type-b unsquash round-trip fails at {sigma}")
            emit(f"type-b rank={system.rank} J={cosets.format_subset(J)}: {len(found)} core cosets")
        # squashing is a homomorphism on reduced core compositions
        by_left: dict[frozenset, list] = {}
        by_right: dict[frozenset, list] = {}
        for J in subsets:
            for I, p in cosets.enumerate_core_cosets(system, J):
                by_left.setdefault(I, []).append(p)
                by_right.setdefault(J, []).append(p)
        for J, qs in by_left.items():
            for p in by_right.get(J, []):
                for q in qs:
                    if not cosets.is_reduced_composition(p, q):
                        continue
                    r = cosets.star_compose(p, q)
                    sp, sq = squash_b.squash_coset_b(p), squash_b.squash_coset_b(q)
                    if squash_b.squash_coset_b(r) != coxeter.multiply(sp, sq):
                        failures.append(f"type-b: squash not multiplicative at {p} * {q}")
                    if coxeter.length(coxeter.multiply(sp, sq)) != coxeter.length(sp) + coxeter.length(sq):
                        failures.append(f"type-b: squash not length-additive at {p} * {q}")
        emit(f"type-b rank={system.rank}: done")
    return failures


_SUITES: dict[str, Callable] = {
    "core-atomic": _suite_core_atomic,
    "squash-bijection": _suite_squash_bijection,
    "atomic-rex-bijection": _suite_atomic_rex_bijection,
    "matsumoto": _suite_matsumoto,
    "mimimi": _suite_mimimi,
    "atomatom": _suite_atomatom,
    "nilcox-relations": _suite_nilcox_relations,
    "add-remove": _suite_add_remove,
    "redundancy-a": _suite_redundancy_a,
    "type-b": _suite_type_b,
}

_SUITE_DEFAULT_RANK = {
    "core-atomic": {"A": 5, "B": 3, "I2": 7},
    "squash-bijection": {"A": 5, "B": 3, "I2": 0},
    "atomic-rex-bijection": {"A": 4, "B": 3, "I2": 0},
    "matsumoto": {"A": 4, "B": 3, "I2": 0},
    "mimimi": {"A": 4, "B": 3, "I2": 0},
    "atomatom": {"A": 4, "B": 3, "I2": 0},
    "nilcox-relations": {"A": 4, "B": 3, "I2": 0},
    "add-remove": {"A": 3, "B": 3, "I2": 0},
    "redundancy-a": {"A": 4, "B": 0, "I2": 0},
    "type-b": {"A": 0, "B": 3, "I2": 0},
}


def _cmd_verify(args) -> int:
    suite = _SUITES[args.suite]
    cartan = args.type
    max_rank = args.max_rank if args.max_rank else _SUITE_DEFAULT_RANK[args.suite].get(cartan, 3)

    def emit(line: str) -> None:
        if not args.quiet:
            print(line)

    failures = suite(cartan, max_rank, emit)
    if failures:
        for failure in failures:
            print(f"FAIL: {failure}", file=sys.stderr)
        print(f"{args.suite}: {len(failures)} failure(s)", file=sys.stderr)
        return 1
    print(f"{args.suite}: all checks passed")
    return 0


def _add_system_flags(parser, need_rank=True) -> None:
    parser.add_argument("--type", choices=("A", "B", "I2"), default="A")
    parser.add_argument("--rank", type=int, default=0, required=need_rank)
    parser.add_argument("--bond", type=int, default=0, help="bond m for I2 systems")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetrex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-expr", help="evaluate a one-step or multistep expression")
    _add_system_flags(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_eval_expr)

    p = sub.add_parser("atomic-rex", help="atomic expression of a core coset")
    _add_system_flags(p, need_rank=False)
    p.add_argument("--coset", help="coset as JSON")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--min")
    p.add_argument("--all", action="store_true", help="list every atomic expression")
    p.set_defaults(func=_cmd_atomic_rex)

    p = sub.add_parser("squash", help="squashed permutation of a core coset")
    _add_system_flags(p, need_rank=False)
    p.add_argument("--coset", help="coset as JSON")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--min")
    p.set_defaults(func=_cmd_squash)

    p = sub.add_parser("unsquash", help="lift a squashed permutation to a core coset")
    _add_system_flags(p)
    p.add_argument("--right", required=True)
    p.add_argument("--sigma", required=True, help="image list of the squashed permutation")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_unsquash)

    p = sub.add_parser("enumerate-core", help="list core cosets with a given right frame")
    _add_system_flags(p)
    p.add_argument("--right", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_enumerate_core)

    p = sub.add_parser("compose", help="star-compose a chain of expressions from a file")
    _add_system_flags(p)
    p.add_argument("--exprs", required=True, help="file with one expression per line")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("verify", help="run an exhaustive verification suite")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--type", choices=("A", "B", "I2"), default="A")
    p.add_argument("--max-rank", type=int, default=0, help="max rank (max bond for I2)")
    p.add_argument("--quiet", action="store_true", help="suppress per-cell progress")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
