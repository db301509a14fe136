"""Independent stability oracle via conditional satisfaction.

A set R conditionally satisfies a constraint atom w.r.t. a context S when R
satisfies it outright and every interpolant between R and S (restricted to
the domain) stays admissible.  Iterating the induced one-step operator from
the empty set underneath a candidate model yields a fixpoint; the candidate
is stable exactly when it equals that fixpoint.  This route only needs
negation-free programs with elementary heads, so normal constraint programs
are first rewritten by pushing ``not`` into complement constraints.
"""

from __future__ import annotations

from typing import Iterable

from .abstraction import AbstractCAtom, PrefixedPowerSet
from .core import (
    CAtom,
    Literal,
    Program,
    Rule,
    complement,
    head_atom_name,
    is_model,
    iter_subsets,
    satisfies_catom,
)
from .errors import GuardError, NotAModelError, ProgramClassError

#: ``cond_satisfies`` enumerates at most this many free atoms (2**16 sets).
COND_INTERVAL_LIMIT = 16


def cond_satisfies(lower: Iterable[str], upper: Iterable[str], catom: CAtom) -> bool:
    """Conditional satisfaction of a constraint atom.

    ``lower`` must satisfy the atom and every set between ``lower`` and
    ``upper`` (within the domain) must be admissible.
    """
    low = frozenset(lower)
    if not satisfies_catom(low, catom):
        return False
    bottom = low & catom.domain
    top = frozenset(upper) & catom.domain
    if not bottom <= top:
        return True  # no interpolants to check
    extra = top - bottom
    if len(extra) > COND_INTERVAL_LIMIT:
        raise GuardError(
            f"conditional satisfaction over {len(extra)} free atoms exceeds the "
            f"{COND_INTERVAL_LIMIT}-atom guard")
    return all(bottom | sub in catom.solutions for sub in iter_subsets(extra))


def cond_satisfies_abstract(
    lower: Iterable[str], upper: Iterable[str], abstract: AbstractCAtom
) -> bool:
    """Conditional satisfaction read off the abstract form.

    The interval between the restrictions of ``lower`` and ``upper`` must be
    included in some sublattice.
    """
    bottom = frozenset(lower) & abstract.domain
    rest = (frozenset(upper) & abstract.domain) - bottom
    probe = PrefixedPowerSet(bottom, rest)
    return any(probe.included_in(member) for member in abstract.lattices)


def _require_positive_basic(program: Program) -> None:
    for rule in program.rules:
        if len(rule.head) != 1 or head_atom_name(rule.head[0]) is None:
            raise ProgramClassError(
                "the fixpoint operator requires single elementary heads")
        for lit in rule.body:
            if not lit.positive:
                raise ProgramClassError(
                    "the fixpoint operator requires negation-free bodies")


def tp_step(program: Program, lower: Iterable[str], context: Iterable[str]) -> frozenset[str]:
    """One application of the conditional one-step operator."""
    _require_positive_basic(program)
    low = frozenset(lower)
    ctx = frozenset(context)
    derived: set[str] = set()
    for rule in program.rules:
        head = head_atom_name(rule.head[0])
        if head in derived:
            continue
        fired = True
        for lit in rule.body:
            if lit.is_atom:
                if lit.item not in low:
                    fired = False
                    break
            elif not cond_satisfies(low, ctx, lit.item):
                fired = False
                break
        if fired:
            derived.add(head)
    return frozenset(derived)


def fixpoint_stable(program: Program, interpretation: Iterable[str]) -> bool:
    """Stability via the fixpoint of the conditional one-step operator.

    Raises :class:`NotAModelError` when the interpretation is not a model;
    the iteration is only well-behaved underneath models.
    """
    candidate = frozenset(interpretation)
    if not is_model(candidate, program):
        raise NotAModelError(
            "{%s} is not a model of the program" % ", ".join(sorted(candidate)))
    current: frozenset[str] = frozenset()
    # Monotone ascent inside the model: one extra round detects the fixpoint.
    for _ in range(len(program.language) + 2):
        nxt = tp_step(program, current, candidate)
        if nxt == current:
            return current == candidate
        current = nxt
    raise AssertionError("fixpoint iteration exceeded its bound")


def to_positive_basic(program: Program) -> Program:
    """Rewrite a normal constraint program into negation-free basic form.

    ``not a`` becomes the one-atom constraint admitting only the empty set;
    a negated constraint becomes its complement.  Heads are left untouched.
    """
    rules = []
    for rule in program.rules:
        if len(rule.head) != 1:
            raise ProgramClassError("the rewrite requires non-disjunctive rules")
        if head_atom_name(rule.head[0]) is None:
            raise ProgramClassError("the rewrite requires elementary heads")
        body = []
        for lit in rule.body:
            if lit.positive:
                body.append(lit)
            elif lit.is_atom:
                body.append(Literal.constraint(complement(CAtom.elementary(lit.item))))
            else:
                body.append(Literal.constraint(complement(lit.item)))
        rules.append(Rule(rule.head, tuple(body)))
    return Program(tuple(rules), program.declared_atoms)


def fixpoint_stable_models(program: Program) -> tuple[frozenset[str], ...]:
    """All stable models under the fixpoint oracle (models only, by definition)."""
    vocabulary = sorted(program.language)
    out = []
    for candidate in iter_subsets(vocabulary):
        if is_model(candidate, program) and fixpoint_stable(program, candidate):
            out.append(candidate)
    return tuple(sorted(out, key=lambda s: tuple(sorted(s))))
