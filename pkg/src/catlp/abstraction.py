"""Compact lattice form of constraint atoms.

The explicit solution family of a constraint atom is rewritten as the
redundancy-free collection of maximal power-set sublattices whose elements are
all admissible.  Each sublattice is stored as its bottom (``base``) together
with the atoms that may be added freely (``free``).  The collection is unique,
determines satisfaction, exposes monotonicity properties syntactically, and
yields the minimal disjunctive normal form of the atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

from .core import CAtom, iter_subsets, set_key
from .errors import GuardError

#: ``build_abstract`` and ``expand`` refuse domains larger than this.
ABSTRACT_DOMAIN_LIMIT = 20


@dataclass(frozen=True)
class PrefixedPowerSet:
    """The family ``{base | X for X <= free}``: a power-set sublattice."""

    base: frozenset[str]
    free: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "base", frozenset(self.base))
        object.__setattr__(self, "free", frozenset(self.free))
        if self.base & self.free:
            raise ValueError("base and free atoms must be disjoint")

    @property
    def top(self) -> frozenset[str]:
        return self.base | self.free

    def covers(self, atoms: Iterable[str]) -> bool:
        """True when the given set lies between base and top."""
        s = frozenset(atoms)
        return self.base <= s <= self.top

    def covered_sets(self) -> Iterator[frozenset[str]]:
        for extra in iter_subsets(self.free):
            yield self.base | extra

    def included_in(self, other: "PrefixedPowerSet") -> bool:
        """True when every set covered here is covered by ``other``.

        Equivalent to the subset test on bounds, which avoids enumeration:
        the other base must lie within ours and our top within the other's.
        """
        return other.base <= self.base and self.top <= other.top

    def key(self) -> tuple:
        return (set_key(self.base), set_key(self.free))


@dataclass(frozen=True)
class AbstractCAtom:
    """The redundancy-free collection of maximal sublattices of a c-atom."""

    domain: frozenset[str]
    lattices: frozenset[PrefixedPowerSet]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "lattices", frozenset(self.lattices))
        for member in self.lattices:
            if not member.top <= self.domain:
                raise ValueError("sublattice atoms must come from the domain")
            for other in self.lattices:
                if member != other and member.included_in(other):
                    raise ValueError("redundant sublattice in abstract form")

    def members(self) -> tuple[PrefixedPowerSet, ...]:
        """The sublattices in canonical order."""
        return tuple(sorted(self.lattices, key=PrefixedPowerSet.key))


def build_abstract(catom: CAtom) -> AbstractCAtom:
    """Compute the unique abstract form of a constraint atom.

    Every pair of solutions bounding a fully admissible interval yields a
    candidate sublattice (a solution alone bounds the singleton interval);
    candidates included in another candidate are then dropped, which leaves
    exactly the maximal sublattices.
    """
    if len(catom.domain) > ABSTRACT_DOMAIN_LIMIT:
        raise GuardError(
            f"abstract form over a {len(catom.domain)}-atom domain exceeds the "
            f"{ABSTRACT_DOMAIN_LIMIT}-atom guard")
    atoms = sorted(catom.domain)
    bit = {a: 1 << i for i, a in enumerate(atoms)}
    masks = set()
    for sol in catom.solutions:
        m = 0
        for a in sol:
            m |= bit[a]
        masks.add(m)

    candidates = []
    for q in masks:
        p = q
        while True:
            if p in masks and _interval_admissible(p, q, masks):
                candidates.append((p, q))
            if p == 0:
                break
            p = (p - 1) & q

    def to_set(mask: int) -> frozenset[str]:
        return frozenset(a for a in atoms if bit[a] & mask)

    lattices = frozenset(
        PrefixedPowerSet(to_set(p), to_set(q & ~p)) for p, q in _drop_dominated(candidates))
    return AbstractCAtom(catom.domain, lattices)


def _interval_admissible(p: int, q: int, masks: set[int]) -> bool:
    """Is every set between masks p and q (inclusive) admissible?"""
    diff = q & ~p
    sub = diff
    while True:
        if (p | sub) not in masks:
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & diff


def _drop_dominated(candidates: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Remove every (base, top) interval contained in another candidate.

    (p1, q1) is dominated by (p2, q2) when p2 <= p1 and q1 <= q2.  Two cheap
    grouped passes shrink the candidate list before the quadratic sweep.
    """
    by_base: dict[int, list[int]] = {}
    for p, q in candidates:
        by_base.setdefault(p, []).append(q)
    pruned = []
    for p, tops in by_base.items():
        for q in tops:
            if not any(q != other and q & other == q for other in tops):
                pruned.append((p, q))

    by_top: dict[int, list[int]] = {}
    for p, q in pruned:
        by_top.setdefault(q, []).append(p)
    narrowed = []
    for q, bases in by_top.items():
        for p in bases:
            if not any(p != other and p & other == other for other in bases):
                narrowed.append((p, q))

    return [
        (p1, q1)
        for p1, q1 in narrowed
        if not any(
            (p2, q2) != (p1, q1) and p2 & p1 == p2 and q1 | q2 == q2
            for p2, q2 in narrowed)
    ]


@lru_cache(maxsize=None)
def abstract_of(catom: CAtom) -> AbstractCAtom:
    """Memoized :func:`build_abstract`; c-atoms recur across transformations."""
    return build_abstract(catom)


def expand(abstract: AbstractCAtom) -> CAtom:
    """Back to explicit form: the union of all covered sets."""
    if len(abstract.domain) > ABSTRACT_DOMAIN_LIMIT:
        raise GuardError(
            f"expansion over a {len(abstract.domain)}-atom domain exceeds the "
            f"{ABSTRACT_DOMAIN_LIMIT}-atom guard")
    solutions: set[frozenset[str]] = set()
    for member in abstract.lattices:
        solutions.update(member.covered_sets())
    return CAtom(abstract.domain, frozenset(solutions))


def satisfies_abstract(interpretation: Iterable[str], abstract: AbstractCAtom) -> bool:
    """Satisfaction via covering: some sublattice covers the domain restriction."""
    restricted = frozenset(interpretation) & abstract.domain
    return any(member.covers(restricted) for member in abstract.lattices)


def abstract_satisfiable_sets(
    abstract: AbstractCAtom, interpretation: Iterable[str]
) -> frozenset[PrefixedPowerSet]:
    """The sublattices covering the domain restriction; empty iff unsatisfied."""
    restricted = frozenset(interpretation) & abstract.domain
    return frozenset(m for m in abstract.lattices if m.covers(restricted))


def satisfiable_sets(
    abstract: AbstractCAtom, interpretation: Iterable[str]
) -> frozenset[frozenset[str]]:
    """The bases of the covering sublattices."""
    return frozenset(m.base for m in abstract_satisfiable_sets(abstract, interpretation))


@dataclass(frozen=True)
class CAtomClass:
    monotone: bool
    antimonotone: bool
    convex: bool


def classify_catom(abstract: AbstractCAtom) -> CAtomClass:
    """Read the closure properties off the abstract form.

    Monotone: every sublattice spans the whole domain above its base.
    Antimonotone: every base is empty.  Convex: between any member's base
    and any other member's top, every set is covered.  (Pairwise antichain
    bases and tops are necessary for convexity but not sufficient, so they
    only serve as a fast rejection here.)
    """
    size = len(abstract.domain)
    members = abstract.lattices
    return CAtomClass(
        monotone=all(len(m.base) + len(m.free) == size for m in members),
        antimonotone=all(not m.base for m in members),
        convex=_is_convex(members),
    )


def _is_convex(members: frozenset[PrefixedPowerSet]) -> bool:
    bases = [m.base for m in members]
    tops = [m.top for m in members]
    if _has_proper_pair(bases) or _has_proper_pair(tops):
        return False
    covered = set()
    for member in members:
        covered.update(member.covered_sets())
    for low in members:
        for high in members:
            if not low.base <= high.top:
                continue
            for extra in iter_subsets(high.top - low.base):
                if low.base | extra not in covered:
                    return False
    return True


def _has_proper_pair(sets: list[frozenset[str]]) -> bool:
    return any(a < b for a, b in permutations(sets, 2))


@dataclass(frozen=True)
class Disjunct:
    """One conjunction of a DNF: positive atoms plus negated atoms."""

    pos: frozenset[str]
    neg: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))
        if self.pos & self.neg:
            raise ValueError("a literal cannot be both positive and negated")

    def satisfied_by(self, interpretation: Iterable[str]) -> bool:
        model = frozenset(interpretation)
        return self.pos <= model and not (self.neg & model)

    def key(self) -> tuple:
        return (set_key(self.pos), set_key(self.neg))

    def __str__(self) -> str:
        parts = sorted(self.pos) + [f"not {a}" for a in sorted(self.neg)]
        return " & ".join(parts) if parts else "true"


@dataclass(frozen=True)
class Dnf:
    """A disjunction of conjunctions, stored sorted and deduplicated."""

    disjuncts: tuple[Disjunct, ...]

    def __post_init__(self):
        canonical = tuple(sorted(set(self.disjuncts), key=Disjunct.key))
        object.__setattr__(self, "disjuncts", canonical)

    def satisfied_by(self, interpretation: Iterable[str]) -> bool:
        model = frozenset(interpretation)
        return any(d.satisfied_by(model) for d in self.disjuncts)

    def __str__(self) -> str:
        if not self.disjuncts:
            return "false"
        return " | ".join(f"({d})" for d in self.disjuncts)


def dnf(catom: CAtom) -> Dnf:
    """One disjunct per admissible solution, all domain atoms mentioned."""
    return Dnf(tuple(
        Disjunct(sol, catom.domain - sol) for sol in catom.solutions))


def simplified_dnf(abstract: AbstractCAtom) -> Dnf:
    """One disjunct per sublattice: its base, plus negation outside its top."""
    return Dnf(tuple(
        Disjunct(m.base, abstract.domain - m.top) for m in abstract.lattices))


def is_maximally_simplified(formula: Dnf) -> bool:
    """True when no two disjuncts differ exactly by the sign of one literal.

    A pair ``S & x`` / ``S & not x`` would merge into ``S``.
    """
    for c1, c2 in permutations(formula.disjuncts, 2):
        moved = c1.pos - c2.pos
        if len(moved) == 1:
            (x,) = moved
            if c2.pos == c1.pos - {x} and c2.neg == c1.neg | {x} and x not in c1.neg:
                return False
    return True
