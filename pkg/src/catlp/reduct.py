"""The generalized reduct and stable-model machinery.

Given a candidate interpretation, a program is simplified in four steps:
rules with falsified negative literals or falsified body constraints are
dropped; the remaining negative literals are removed; each body constraint is
routed through a ``__theta_`` atom defined by one rule per satisfiable set;
each head constraint becomes ``__bot`` when falsified, otherwise a
``__beta_`` atom tied to the constrained atoms.  The result is an ordinary
positive program whose minimal models decide stability: the candidate is
stable when stripping the introduced atoms from some minimal model gives the
candidate back.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .abstraction import abstract_of, satisfiable_sets
from .core import (
    CAtom,
    Literal,
    Program,
    Rule,
    satisfies_catom,
    set_key,
)
from .errors import GuardError, ProgramClassError

#: The false atom produced for falsified head constraints.
BOT = "__bot"

#: ``minimal_models`` refuses programs with more atoms than this.
MINIMAL_MODELS_ATOM_LIMIT = 22

#: ``stable_models`` refuses vocabularies larger than this.
STABLE_LANGUAGE_LIMIT = 20


def _catom_digest(catom: CAtom) -> str:
    text = repr(catom.canonical_key())
    return hashlib.sha256(text.encode()).hexdigest()[:10]


def theta_atom(catom: CAtom) -> str:
    """The body-replacement atom; identical c-atoms share one name."""
    return "__theta_" + _catom_digest(catom)


def beta_atom(catom: CAtom) -> str:
    """The head-replacement atom; identical c-atoms share one name."""
    return "__beta_" + _catom_digest(catom)


@dataclass(frozen=True)
class ReductRule:
    """A positive ordinary rule, possibly disjunctive."""

    head: tuple[str, ...]
    body: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "body", tuple(self.body))
        if not self.head:
            raise ValueError("a rule needs at least one head atom")


@dataclass(frozen=True)
class ReductProgram:
    """A positive constraint-free program plus the special atoms it introduced."""

    rules: tuple[ReductRule, ...]
    gamma: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "gamma", frozenset(self.gamma))

    @cached_property
    def atoms(self) -> frozenset[str]:
        found: set[str] = set()
        for rule in self.rules:
            found.update(rule.head)
            found.update(rule.body)
        return frozenset(found)

    @property
    def is_normal(self) -> bool:
        return all(len(r.head) == 1 for r in self.rules)

    def to_program(self) -> Program:
        """View as a core Program (special atoms become ordinary atoms)."""
        return Program(tuple(
            Rule(r.head, tuple(Literal.atom(b) for b in r.body)) for r in self.rules))


def as_reduct_program(program: Program) -> ReductProgram:
    """Convert a positive ordinary program for the model enumerators."""
    rules = []
    for rule in program.rules:
        head = []
        for element in rule.head:
            if not isinstance(element, str):
                raise ProgramClassError("constraint atoms are not allowed here")
            head.append(element)
        body = []
        for lit in rule.body:
            if not (lit.positive and lit.is_atom):
                raise ProgramClassError("only positive atom bodies are allowed here")
            body.append(lit.item)
        rules.append(ReductRule(tuple(head), tuple(body)))
    return ReductProgram(tuple(rules), frozenset())


def gl_reduct(program: Program, interpretation: Iterable[str]) -> ReductProgram:
    """Apply the four transformation steps for the given candidate."""
    candidate = frozenset(interpretation)
    emitted: list[ReductRule] = []
    theta_defs: dict[CAtom, list[ReductRule]] = {}
    beta_defs: dict[CAtom, list[ReductRule]] = {}

    for rule in program.rules:
        if _rule_dropped(rule, candidate):
            continue
        blocks: list[list[ReductRule]] = []
        body: list[str] = []
        for lit in rule.body:
            if lit.is_atom:
                if lit.positive:
                    body.append(lit.item)
                # Satisfied negative literals simply vanish.
            else:
                catom = lit.item
                name = theta_atom(catom)
                body.append(name)
                if catom not in theta_defs:
                    covers = sorted(
                        satisfiable_sets(abstract_of(catom), candidate), key=set_key)
                    theta_defs[catom] = [
                        ReductRule((name,), set_key(w)) for w in covers]
                    blocks.append(theta_defs[catom])
        head: list[str] = []
        for element in rule.head:
            if isinstance(element, str):
                head.append(element)
                continue
            catom = element
            if not satisfies_catom(candidate, catom):
                head.append(BOT)
                continue
            name = beta_atom(catom)
            head.append(name)
            if catom not in beta_defs:
                true_part = sorted(candidate & catom.domain)
                false_part = sorted(catom.domain - candidate)
                defs = [ReductRule((atom,), (name,)) for atom in true_part]
                defs += [ReductRule((BOT,), (atom, name)) for atom in false_part]
                defs.append(ReductRule((name,), tuple(true_part)))
                beta_defs[catom] = defs
                blocks.append(defs)
        if len(head) > 1:
            # The false atom cannot decide a disjunction; drop it unless alone.
            head = [h for h in dict.fromkeys(head) if h != BOT] or [BOT]
        emitted.append(ReductRule(tuple(head), tuple(body)))
        for block in blocks:
            emitted.extend(block)

    gamma = frozenset(theta_atom(c) for c in theta_defs)
    gamma |= frozenset(beta_atom(c) for c in beta_defs)
    result = ReductProgram(tuple(emitted), gamma)
    assert len(result.rules) <= reduct_size_bound(program), "reduct exceeded its size bound"
    return result


def _rule_dropped(rule: Rule, candidate: frozenset[str]) -> bool:
    for lit in rule.body:
        if not lit.positive:
            if lit.is_constraint:
                raise ProgramClassError(
                    "negated c-atoms must be replaced by complements before the reduct")
            if lit.item in candidate:
                return True
        elif lit.is_constraint and not satisfies_catom(candidate, lit.item):
            return True
    return False


def reduct_size_bound(program: Program) -> int:
    """Rule-count bound for any reduct of the program.

    One transformed rule per source rule, plus per distinct c-atom at most
    its sublattice count (body role) and domain size plus one (head role).
    """
    catoms = {lit.item for r in program.rules for lit in r.body if lit.is_constraint}
    catoms |= {e for r in program.rules for e in r.head if isinstance(e, CAtom)}
    if not catoms:
        return len(program.rules)
    widest = max(len(abstract_of(c).lattices) for c in catoms)
    largest = max(len(c.domain) for c in catoms)
    return len(program.rules) + len(catoms) * (widest + largest + 1)


def least_model(reduct: ReductProgram) -> frozenset[str]:
    """The least model of a non-disjunctive positive program."""
    if not reduct.is_normal:
        raise ProgramClassError("the least model requires single-atom heads")
    derived: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in reduct.rules:
            if rule.head[0] not in derived and all(b in derived for b in rule.body):
                derived.add(rule.head[0])
                changed = True
    return frozenset(derived)


def minimal_models(reduct: ReductProgram) -> tuple[frozenset[str], ...]:
    """All subset-minimal models, enumerated over the program's atoms."""
    atoms = sorted(reduct.atoms)
    if len(atoms) > MINIMAL_MODELS_ATOM_LIMIT:
        raise GuardError(
            f"minimal-model enumeration over {len(atoms)} atoms exceeds the "
            f"{MINIMAL_MODELS_ATOM_LIMIT}-atom guard")
    index = {a: i for i, a in enumerate(atoms)}
    compiled = []
    for rule in reduct.rules:
        head = 0
        for a in rule.head:
            head |= 1 << index[a]
        body = 0
        for a in rule.body:
            body |= 1 << index[a]
        compiled.append((head, body))

    found: list[int] = []
    for size in range(len(atoms) + 1):
        for combo in combinations(range(len(atoms)), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if any(prior & mask == prior for prior in found):
                continue  # a smaller model sits inside
            if all(body & mask != body or head & mask for head, body in compiled):
                found.append(mask)

    models = [
        frozenset(atoms[i] for i in range(len(atoms)) if mask >> i & 1)
        for mask in found
    ]
    return tuple(sorted(models, key=set_key))


def is_stable(program: Program, interpretation: Iterable[str]) -> bool:
    """Does the candidate reproduce itself through its reduct?"""
    candidate = frozenset(interpretation)
    reduct = gl_reduct(program, candidate)
    if reduct.is_normal:
        return least_model(reduct) - reduct.gamma == candidate
    return any(m - reduct.gamma == candidate for m in minimal_models(reduct))


def stable_models(program: Program) -> tuple[frozenset[str], ...]:
    """All stable models, enumerated over subsets of the vocabulary."""
    vocabulary = sorted(program.language)
    if len(vocabulary) > STABLE_LANGUAGE_LIMIT:
        raise GuardError(
            f"stable-model enumeration over a {len(vocabulary)}-atom vocabulary "
            f"exceeds the {STABLE_LANGUAGE_LIMIT}-atom guard")
    out = []
    for size in range(len(vocabulary) + 1):
        for combo in combinations(vocabulary, size):
            candidate = frozenset(combo)
            if is_stable(program, candidate):
                out.append(candidate)
    return tuple(sorted(out, key=set_key))


def format_reduct(reduct: ReductProgram) -> str:
    """Plain-text rendering, one rule per line."""
    lines = []
    for rule in reduct.rules:
        head = " | ".join(rule.head)
        if rule.body:
            lines.append(f"{head} :- {', '.join(rule.body)}.")
        else:
            lines.append(f"{head}.")
    return "\n".join(lines)


def reduct_json(reduct: ReductProgram) -> dict:
    """JSON-ready structure for audit output."""
    return {
        "rules": [{"head": list(r.head), "body": list(r.body)} for r in reduct.rules],
        "gamma": sorted(reduct.gamma),
    }
