"""Core types for propositional logic programs with constraint atoms.

Atoms are plain strings.  A constraint atom couples a finite domain with an
explicitly enumerated family of admissible solutions; an interpretation
satisfies it when the interpretation restricted to the domain is one of the
admissible solutions.  Rules may carry constraint atoms in bodies and in
(disjunctive) heads.  Every value is immutable and hashable, so programs and
interpretations can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Union

from .errors import GuardError

#: Name prefixes reserved for atoms introduced by program transformations.
RESERVED_PREFIXES = ("__theta_", "__beta_", "__bot", "__f_")

#: ``complement`` refuses domains larger than this (power-set blowup guard).
COMPLEMENT_DOMAIN_LIMIT = 20


def is_reserved(name: str) -> bool:
    """True for atom names only transformations are allowed to mint."""
    return name.startswith(RESERVED_PREFIXES)


def iter_subsets(atoms: Iterable[str]) -> Iterator[frozenset[str]]:
    """Yield every subset of ``atoms``, smallest first, deterministically."""
    pool = sorted(atoms)
    for size in range(len(pool) + 1):
        for combo in combinations(pool, size):
            yield frozenset(combo)


def set_key(atoms: Iterable[str]) -> tuple[str, ...]:
    """Canonical sort key for a set of atoms."""
    return tuple(sorted(atoms))


@dataclass(frozen=True)
class CAtom:
    """A constraint atom: a finite domain plus its admissible solutions."""

    domain: frozenset[str]
    solutions: frozenset[frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(
            self, "solutions", frozenset(frozenset(s) for s in self.solutions))
        for sol in self.solutions:
            if not sol <= self.domain:
                raise ValueError(
                    "solution {%s} is not a subset of the domain" % ", ".join(sorted(sol)))

    @classmethod
    def elementary(cls, atom: str) -> "CAtom":
        """The one-atom constraint interchangeable with the atom itself."""
        return cls(frozenset((atom,)), frozenset((frozenset((atom,)),)))

    @property
    def is_elementary(self) -> bool:
        return len(self.domain) == 1 and self.solutions == frozenset((self.domain,))

    @property
    def is_unsatisfiable(self) -> bool:
        """True when the solution family is empty (the ``bot`` constraint)."""
        return not self.solutions

    def canonical_key(self) -> tuple:
        return (set_key(self.domain), tuple(sorted(set_key(s) for s in self.solutions)))


#: The canonical always-false constraint (spelled ``bot`` in rule heads).
FALSE_CATOM = CAtom(frozenset(), frozenset())

#: A head element is an atom or a constraint atom.
HeadElement = Union[str, CAtom]


@dataclass(frozen=True)
class Literal:
    """A body literal: an atom or a constraint atom, possibly under ``not``."""

    positive: bool
    item: Union[str, CAtom]

    @classmethod
    def atom(cls, name: str) -> "Literal":
        return cls(True, name)

    @classmethod
    def negated_atom(cls, name: str) -> "Literal":
        return cls(False, name)

    @classmethod
    def constraint(cls, catom: CAtom) -> "Literal":
        return cls(True, catom)

    @classmethod
    def negated_constraint(cls, catom: CAtom) -> "Literal":
        return cls(False, catom)

    @property
    def is_atom(self) -> bool:
        return isinstance(self.item, str)

    @property
    def is_constraint(self) -> bool:
        return isinstance(self.item, CAtom)


def head_atom_name(element: HeadElement) -> str | None:
    """The atom an elementary head element stands for, else None."""
    if isinstance(element, str):
        return element
    if element.is_elementary:
        return next(iter(element.domain))
    return None


def is_false_head(element: HeadElement) -> bool:
    """True for head elements no interpretation can satisfy."""
    return isinstance(element, CAtom) and element.is_unsatisfiable


@dataclass(frozen=True)
class Rule:
    """A disjunctive rule; the head must list at least one element."""

    head: tuple[HeadElement, ...]
    body: tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "body", tuple(self.body))
        if not self.head:
            raise ValueError("a rule needs at least one head element")


@dataclass(frozen=True)
class Program:
    """A finite set of rules plus any extra declared vocabulary."""

    rules: tuple[Rule, ...]
    declared_atoms: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "declared_atoms", frozenset(self.declared_atoms))

    @cached_property
    def atoms(self) -> frozenset[str]:
        """All atoms occurring in the rules, constraint domains included."""
        found: set[str] = set()
        for rule in self.rules:
            for element in rule.head:
                found.update((element,) if isinstance(element, str) else element.domain)
            for lit in rule.body:
                found.update((lit.item,) if lit.is_atom else lit.item.domain)
        return frozenset(found)

    @cached_property
    def language(self) -> frozenset[str]:
        """The program vocabulary: occurring atoms plus declared ones."""
        return self.atoms | self.declared_atoms


def satisfies_catom(interpretation: Iterable[str], catom: CAtom) -> bool:
    """Classical satisfaction: the domain restriction must be admissible."""
    return frozenset(interpretation) & catom.domain in catom.solutions


def satisfies_literal(interpretation: Iterable[str], literal: Literal) -> bool:
    model = frozenset(interpretation)
    if literal.is_atom:
        holds = literal.item in model
    else:
        holds = satisfies_catom(model, literal.item)
    return holds if literal.positive else not holds


def satisfies_body(interpretation: Iterable[str], body: Iterable[Literal]) -> bool:
    model = frozenset(interpretation)
    return all(satisfies_literal(model, lit) for lit in body)


def satisfies_head_element(interpretation: Iterable[str], element: HeadElement) -> bool:
    if isinstance(element, str):
        return element in frozenset(interpretation)
    return satisfies_catom(interpretation, element)


def satisfies_rule(interpretation: Iterable[str], rule: Rule) -> bool:
    model = frozenset(interpretation)
    if not satisfies_body(model, rule.body):
        return True
    return any(satisfies_head_element(model, e) for e in rule.head)


def is_model(interpretation: Iterable[str], program: Program) -> bool:
    model = frozenset(interpretation)
    return all(satisfies_rule(model, r) for r in program.rules)


def is_minimal_model(interpretation: Iterable[str], program: Program) -> bool:
    """Model with no proper sub-model, checked by exhausting subsets."""
    model = frozenset(interpretation)
    if not is_model(model, program):
        return False
    if model - program.language:
        # Atoms outside the vocabulary never affect satisfaction, so dropping
        # them yields a smaller model.
        return False
    return not any(sub != model and is_model(sub, program) for sub in iter_subsets(model))


def is_supported_model(interpretation: Iterable[str], program: Program) -> bool:
    """Model in which every atom heads some rule whose body the model satisfies."""
    model = frozenset(interpretation)
    if not is_model(model, program):
        return False
    for atom in model:
        if not any(
            any(head_atom_name(e) == atom for e in rule.head)
            and satisfies_body(model, rule.body)
            for rule in program.rules
        ):
            return False
    return True


def complement(catom: CAtom) -> CAtom:
    """The constraint interpreting ``not A``: same domain, complementary solutions."""
    if len(catom.domain) > COMPLEMENT_DOMAIN_LIMIT:
        raise GuardError(
            f"complement over a {len(catom.domain)}-atom domain exceeds the "
            f"{COMPLEMENT_DOMAIN_LIMIT}-atom guard")
    every = frozenset(iter_subsets(catom.domain))
    return CAtom(catom.domain, every - catom.solutions)


@dataclass(frozen=True)
class ProgramClass:
    """Syntactic class flags of a program."""

    normal_constraint: bool
    positive_constraint: bool
    positive_basic: bool
    basic: bool
    normal: bool
    disjunctive_ordinary: bool


def classify_program(program: Program) -> ProgramClass:
    rules = program.rules
    single_head = all(len(r.head) == 1 for r in rules)
    positive = all(lit.positive for r in rules for lit in r.body)
    elementary_heads = all(
        len(r.head) == 1 and head_atom_name(r.head[0]) is not None for r in rules)
    bot_or_elementary = all(
        len(r.head) == 1
        and (head_atom_name(r.head[0]) is not None or is_false_head(r.head[0]))
        for r in rules)
    ordinary = all(
        head_atom_name(e) is not None for r in rules for e in r.head
    ) and all(
        lit.is_atom or lit.item.is_elementary for r in rules for lit in r.body
    )
    return ProgramClass(
        normal_constraint=single_head,
        positive_constraint=positive,
        positive_basic=positive and elementary_heads,
        basic=positive and bot_or_elementary,
        normal=single_head and ordinary,
        disjunctive_ordinary=ordinary,
    )
