import random

import pytest

from catlp.core import CAtom, FALSE_CATOM, Literal, satisfies_catom
from catlp.errors import GuardError, ParseError
from catlp.golden import (
    BOT_CONSTRAINT,
    DISJUNCTIVE_FACT,
    EVEN_LOOP,
    NEGATIVE_EDGE_RULE,
    PAIR_CHOICE_FACT,
    SELF_SUPPORT,
    SHIFT_GROUPING,
    SUM_COUNT_DISJUNCTION,
    SUM_LOOP,
    TAUTOLOGY_BODY,
)
from catlp.parser import (
    AggregateConstraint,
    WeightConstraint,
    WeightEntry,
    desugar_aggregate,
    desugar_weight,
    eliminate_negated_catoms,
    format_program,
    load_program,
    parse,
    parse_constraint,
    parse_interpretation,
)

GOLDEN_TEXTS = (
    SUM_LOOP, DISJUNCTIVE_FACT, SHIFT_GROUPING, SUM_COUNT_DISJUNCTION,
    PAIR_CHOICE_FACT, EVEN_LOOP, SELF_SUPPORT, TAUTOLOGY_BODY,
    NEGATIVE_EDGE_RULE, BOT_CONSTRAINT)


class TestGrammar:
    def test_catom_literal(self):
        program = load_program("x :- [a,b,c : {}, {b}, {b,c}].")
        (rule,) = program.rules
        assert rule.body[0].item == CAtom("abc", [set(), {"b"}, {"b", "c"}])

    def test_weight_constraints_in_disjunctive_head(self):
        program = load_program("1 {b,c} 1 | 2 {d,e,f} 2 :- a.")
        (rule,) = program.rules
        assert rule.head == (
            CAtom("bc", [{"b"}, {"c"}]),
            CAtom("def", [{"d", "e"}, {"d", "f"}, {"e", "f"}]),
        )
        assert rule.body == (Literal.atom("a"),)

    def test_parenthesized_atom_names(self):
        program = load_program("p(1).")
        assert program.rules[0].head == ("p(1)",)

    def test_bot_head(self):
        program = load_program("bot :- a.")
        assert program.rules[0].head == (FALSE_CATOM,)

    def test_elementary_head_constraint_flattened(self):
        program = load_program("[a : {a}].")
        assert program.rules[0].head == ("a",)

    def test_atoms_directive(self):
        program = load_program("#atoms x, y.\nx.")
        assert program.declared_atoms == frozenset("xy")
        assert program.language == frozenset("xy")

    def test_comments_and_whitespace(self):
        program = load_program("% nothing here\n a . % trailing\n")
        assert program.rules[0].head == ("a",)

    def test_empty_domain_catom(self):
        program = load_program("x :- [ : {}].")
        assert program.rules[0].body[0].item == CAtom((), [()])


class TestParseErrors:
    def test_position_reported(self):
        with pytest.raises(ParseError) as err:
            parse("a :- \n b,, c.")
        assert err.value.line == 2
        assert err.value.column == 4

    def test_unknown_directive(self):
        with pytest.raises(ParseError):
            parse("#minimize a.")

    def test_reserved_prefix_rejected(self):
        with pytest.raises(ParseError):
            parse("__theta_x :- a.")

    def test_set_atom_outside_domain(self):
        with pytest.raises(ParseError):
            parse("x :- [a : {b}].")

    def test_missing_period(self):
        with pytest.raises(ParseError):
            parse("a :- b")

    def test_stray_character(self):
        with pytest.raises(ParseError):
            parse("a $ b.")


class TestDesugarWeight:
    def test_cardinality_window(self):
        constraint = WeightConstraint((WeightEntry("a"), WeightEntry("b")), 1, 1)
        assert desugar_weight(constraint) == CAtom("ab", [{"a"}, {"b"}])

    def test_bare_choice(self):
        constraint = WeightConstraint((WeightEntry("a"),))
        assert constraint.is_choice
        assert desugar_weight(constraint) == CAtom("a", [set(), {"a"}])

    def test_negated_entry(self):
        constraint = WeightConstraint(
            (WeightEntry("a"), WeightEntry("b", negated=True)), 1, None)
        assert desugar_weight(constraint) == CAtom("ab", [set(), {"a"}, {"a", "b"}])

    def test_duplicate_atom_entries(self):
        constraint = WeightConstraint(
            (WeightEntry("a"), WeightEntry("a", negated=True)), 1, 1)
        assert desugar_weight(constraint) == CAtom("a", [set(), {"a"}])

    def test_negative_weights(self):
        constraint = WeightConstraint(
            (WeightEntry("a", -2), WeightEntry("b", 1)), 0, None)
        assert desugar_weight(constraint) == CAtom("ab", [set(), {"b"}])

    def test_entry_guard(self):
        entries = tuple(WeightEntry(f"x{i}") for i in range(17))
        with pytest.raises(GuardError):
            desugar_weight(WeightConstraint(entries, 0, None))

    def test_agrees_with_direct_evaluation(self):
        rng = random.Random(103)
        for _ in range(60):
            entries = tuple(
                WeightEntry(a, rng.randint(-2, 3), rng.random() < 0.3)
                for a in rng.sample("abcdefgh", rng.randint(1, 8)))
            lower = rng.choice((None, rng.randint(-3, 4)))
            upper = rng.choice((None, rng.randint(-3, 6)))
            constraint = WeightConstraint(entries, lower, upper)
            catom = desugar_weight(constraint)
            for mask in range(1 << len(catom.domain)):
                atoms = sorted(catom.domain)
                interp = frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)
                total = sum(e.weight for e in entries
                            if (e.atom in interp) != e.negated)
                expected = ((lower is None or lower <= total)
                            and (upper is None or total <= upper))
                assert satisfies_catom(interp, catom) == expected


class TestDesugarAggregate:
    def test_signed_sum(self):
        aggregate = AggregateConstraint(
            "sum", (("p(-1)", -1), ("p(1)", 1), ("p(2)", 2)), ">=", 1)
        assert desugar_aggregate(aggregate) == CAtom(
            ("p(-1)", "p(1)", "p(2)"),
            [{"p(1)"}, {"p(2)"}, {"p(-1)", "p(2)"}, {"p(1)", "p(2)"},
             {"p(-1)", "p(1)", "p(2)"}])

    def test_empty_count_is_tautological(self):
        aggregate = AggregateConstraint("count", (), ">=", 0)
        assert desugar_aggregate(aggregate) == CAtom((), [()])

    def test_count_at_least_one(self):
        aggregate = AggregateConstraint("count", (("a", 1), ("b", 1)), ">=", 1)
        assert desugar_aggregate(aggregate) == CAtom(
            "ab", [{"a"}, {"b"}, {"a", "b"}])

    def test_relations(self):
        entries = (("a", 1), ("b", 2))
        below = desugar_aggregate(AggregateConstraint("sum", entries, "<", 2))
        assert below == CAtom("ab", [set(), {"a"}])
        exact = desugar_aggregate(AggregateConstraint("sum", entries, "=", 2))
        assert exact == CAtom("ab", [{"b"}])

    def test_entry_guard(self):
        entries = tuple((f"x{i}", 1) for i in range(17))
        with pytest.raises(GuardError):
            desugar_aggregate(AggregateConstraint("count", entries, ">=", 1))


class TestNegatedConstraints:
    def test_body_complement(self):
        program = load_program("x :- not [a : {a}].")
        assert program.rules[0].body[0] == Literal.constraint(CAtom("a", [()]))

    def test_idempotent_without_negation(self):
        program = load_program(SUM_LOOP)
        assert eliminate_negated_catoms(program) == program

    def test_double_negation_round_trips(self):
        catom = CAtom("ab", [{"a"}, {"a", "b"}])
        once = parse_constraint("not [a,b : {a}, {a,b}]")
        twice = eliminate_negated_catoms(
            parse("x :- not [a,b : {}, {b}].").to_program())
        assert once == CAtom("ab", [set(), {"b"}])
        assert twice.rules[0].body[0].item == catom

    def test_negated_weight_desugars_then_complements(self):
        program = load_program("x :- not 1 {a, b} 2.")
        assert program.rules[0].body[0] == Literal.constraint(CAtom("ab", [()]))


class TestRoundTrip:
    @pytest.mark.parametrize("text", GOLDEN_TEXTS)
    def test_source_round_trip(self, text):
        once = parse(text)
        canonical = once.text()
        assert parse(canonical).text() == canonical
        assert parse(canonical).to_program() == once.to_program()

    @pytest.mark.parametrize("text", GOLDEN_TEXTS)
    def test_core_print_round_trip(self, text):
        program = load_program(text)
        assert load_program(format_program(program)) == program


class TestInterpretationArgument:
    def test_basic_list(self):
        assert parse_interpretation("a, b") == frozenset("ab")

    def test_empty(self):
        assert parse_interpretation("") == frozenset()

    def test_reserved_rejected(self):
        with pytest.raises(ParseError):
            parse_interpretation("a,__bot")


class TestParseConstraint:
    def test_weight_expression(self):
        assert parse_constraint("1 {a,b} 1") == CAtom("ab", [{"a"}, {"b"}])

    def test_bare_atom_is_elementary(self):
        assert parse_constraint("a") == CAtom.elementary("a")

    def test_trailing_input_rejected(self):
        with pytest.raises(ParseError):
            parse_constraint("a b")
