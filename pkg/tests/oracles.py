"""Independent reference implementations for differential testing.

Everything here recomputes results straight from the definitions and stays
away from the library's algorithms: sublattice inclusion enumerates covered
sets, abstract forms scan every candidate per solution, stable models of
ordinary programs go through the textbook two-step reduct, and closure
properties of constraint atoms are checked by exhausting subsets.
"""

from __future__ import annotations

from catlp.abstraction import PrefixedPowerSet
from catlp.core import (
    CAtom,
    Literal,
    Program,
    Rule,
    head_atom_name,
    iter_subsets,
)


def covered_sets(member: PrefixedPowerSet) -> frozenset[frozenset[str]]:
    return frozenset(member.base | extra for extra in iter_subsets(member.free))


def brute_covers(member: PrefixedPowerSet, atoms) -> bool:
    return frozenset(atoms) in covered_sets(member)


def brute_included(p: PrefixedPowerSet, q: PrefixedPowerSet) -> bool:
    return covered_sets(p) <= covered_sets(q)


def brute_abstract(catom: CAtom) -> frozenset[PrefixedPowerSet]:
    """Abstract form by definition: per-solution maximal sublattices, then
    removal of members included in another member."""
    gathered = []
    for bottom in catom.solutions:
        rest = catom.domain - bottom
        admissible = [
            free for free in iter_subsets(rest)
            if covered_sets(PrefixedPowerSet(bottom, free)) <= catom.solutions]
        for free in admissible:
            if not any(free < other for other in admissible):
                gathered.append(PrefixedPowerSet(bottom, free))
    return frozenset(
        member for member in gathered
        if not any(member != other and brute_included(member, other)
                   for other in gathered))


def _mask_family(catom: CAtom) -> tuple[int, set[int]]:
    atoms = sorted(catom.domain)
    bit = {a: 1 << i for i, a in enumerate(atoms)}
    family = set()
    for sol in catom.solutions:
        mask = 0
        for a in sol:
            mask |= bit[a]
        family.add(mask)
    return (1 << len(atoms)) - 1, family


def brute_monotone(catom: CAtom) -> bool:
    full, family = _mask_family(catom)
    for mask in family:
        rest = full & ~mask
        sub = rest
        while True:
            if (mask | sub) not in family:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return True


def brute_antimonotone(catom: CAtom) -> bool:
    _, family = _mask_family(catom)
    for mask in family:
        sub = mask
        while True:
            if sub not in family:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & mask
    return True


def brute_convex(catom: CAtom) -> bool:
    _, family = _mask_family(catom)
    for low in family:
        for high in family:
            if low & high != low:
                continue
            rest = high & ~low
            sub = rest
            while True:
                if (low | sub) not in family:
                    return False
                if sub == 0:
                    break
                sub = (sub - 1) & rest
    return True


def brute_cond_satisfies(lower, upper, catom: CAtom) -> bool:
    """Conditional satisfaction by definition, enumerating interpolants."""
    low = frozenset(lower)
    if low & catom.domain not in catom.solutions:
        return False
    bottom = low & catom.domain
    top = frozenset(upper) & catom.domain
    for candidate in iter_subsets(top):
        if bottom <= candidate and candidate not in catom.solutions:
            return False
    return True


# -- ordinary-program stable models (textbook two-step reduct) ---------------


def _compile_ordinary(program: Program, atoms: list[str]):
    index = {a: i for i, a in enumerate(atoms)}
    compiled = []
    for rule in program.rules:
        head = positive = negative = 0
        for element in rule.head:
            name = head_atom_name(element)
            assert name is not None, "ordinary programs only"
            head |= 1 << index[name]
        for lit in rule.body:
            if lit.is_atom:
                name = lit.item
            else:
                assert lit.item.is_elementary, "ordinary programs only"
                name = next(iter(lit.item.domain))
            if lit.positive:
                positive |= 1 << index[name]
            else:
                negative |= 1 << index[name]
        compiled.append((head, positive, negative))
    return compiled


def _model_bits(mask: int, rules) -> bool:
    return all(positive & mask != positive or head & mask
               for head, positive in rules)


def _least_bits(rules) -> int:
    derived = 0
    changed = True
    while changed:
        changed = False
        for head, positive in rules:
            if positive & derived == positive and head & derived != head:
                derived |= head
                changed = True
    return derived


def _minimal_model_bits(mask: int, rules) -> bool:
    if not _model_bits(mask, rules):
        return False
    sub = (mask - 1) & mask
    while sub != mask:  # sub == mask only when mask == 0
        if _model_bits(sub, rules):
            return False
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return True


def standard_gl_stable_models(program: Program) -> set[frozenset[str]]:
    """Stable models of an ordinary program: drop rules with falsified
    negative literals, strip the rest, demand minimality of the candidate."""
    atoms = sorted(program.language)
    compiled = _compile_ordinary(program, atoms)
    disjunctive = any(head & (head - 1) for head, _, _ in compiled)
    found = set()
    for candidate in range(1 << len(atoms)):
        reduct = [(head, positive) for head, positive, negative in compiled
                  if negative & candidate == 0]
        if disjunctive:
            stable = _minimal_model_bits(candidate, reduct)
        else:
            stable = _least_bits(reduct) == candidate
        if stable:
            found.add(frozenset(
                atoms[i] for i in range(len(atoms)) if candidate >> i & 1))
    return found


def brute_minimal_models(rules: list[tuple[frozenset[str], frozenset[str]]],
                         atoms) -> set[frozenset[str]]:
    """Minimal models of positive (head-set, body-set) rules by full scan."""
    models = [
        candidate for candidate in iter_subsets(atoms)
        if all(not (body <= candidate and not (head & candidate))
               for head, body in rules)]
    return {m for m in models if not any(o < m for o in models)}


def embed_ordinary(program: Program) -> Program:
    """Respell every atom occurrence as a one-atom constraint.

    Positive literals and head atoms become ``({a},{{a}})``; negative
    literals become ``({a},{{}})``.
    """
    rules = []
    for rule in program.rules:
        head = tuple(CAtom.elementary(head_atom_name(e)) for e in rule.head)
        body = []
        for lit in rule.body:
            assert lit.is_atom
            if lit.positive:
                body.append(Literal.constraint(CAtom.elementary(lit.item)))
            else:
                body.append(Literal.constraint(
                    CAtom(frozenset((lit.item,)), frozenset((frozenset(),)))))
        rules.append(Rule(head, tuple(body)))
    return Program(tuple(rules), program.declared_atoms)


def ordinary_dependency_edges(program: Program) -> set[tuple[str, str, str]]:
    """Signed edges of an ordinary normal program, head to body literals."""
    edges = set()
    for rule in program.rules:
        head = head_atom_name(rule.head[0])
        for lit in rule.body:
            name = lit.item if lit.is_atom else next(iter(lit.item.domain))
            edges.add((head, name, "+" if lit.positive else "-"))
    return edges
