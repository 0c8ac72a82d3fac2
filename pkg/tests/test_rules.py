from __future__ import annotations

import pytest

from blm.grammar import ClauseType, linearize
from blm.lexicon import Category, Number
from blm.rules import (
    Alternate,
    Binding,
    BindingError,
    Constant,
    ProgramError,
    Progression,
    RuleProgram,
    apply_rules,
    build_matrix_plans,
)
from tests.conftest import FIG_MAIN

# Fig. 2 template: (subject, n1, n2, attractor count) per position.
TEMPLATE = [
    (Number.SING, Number.SING, None, 1),
    (Number.PLUR, Number.SING, None, 1),
    (Number.SING, Number.PLUR, None, 1),
    (Number.PLUR, Number.PLUR, None, 1),
    (Number.SING, Number.SING, Number.SING, 2),
    (Number.PLUR, Number.SING, Number.SING, 2),
    (Number.SING, Number.PLUR, Number.SING, 2),
    (Number.PLUR, Number.PLUR, Number.SING, 2),
]


def test_default_program_matches_template():
    assignments = apply_rules(RuleProgram())
    assert [a.pattern() for a in assignments] == TEMPLATE
    assert assignments[0].position == 0
    assert assignments[7].position == 7


def test_template_endpoints():
    assignments = apply_rules(RuleProgram())
    first, last = assignments[0], assignments[7]
    assert (first.subject_number, first.n1_number, first.n2_number, first.attractor_count) == (
        Number.SING,
        Number.SING,
        None,
        1,
    )
    assert (last.subject_number, last.n1_number, last.n2_number, last.attractor_count) == (
        Number.PLUR,
        Number.PLUR,
        Number.SING,
        2,
    )


def test_alternation_parity():
    values = [Alternate(period=1).value_at(i) for i in range(8)]
    assert values.count(Number.SING) == 4
    assert values.count(Number.PLUR) == 4


def test_n1_changes_exactly_at_2_4_6():
    assignments = apply_rules(RuleProgram())
    changes = [
        i
        for i in range(1, 8)
        if assignments[i].n1_number is not assignments[i - 1].n1_number
    ]
    assert changes == [2, 4, 6]


def test_attractor_counts_contiguous_blocks():
    counts = [a.attractor_count for a in apply_rules(RuleProgram())]
    assert counts == sorted(counts)
    assert counts.count(1) == 4 and counts.count(2) == 4


def test_n2_constant_where_present():
    values = {a.n2_number for a in apply_rules(RuleProgram()) if a.n2_number is not None}
    assert values == {Number.SING}


def test_apply_rules_deterministic():
    assert apply_rules(RuleProgram()) == apply_rules(RuleProgram())


def test_alternate_phase_and_period_variants():
    swapped = Alternate(period=2, start=Number.PLUR)
    assert [swapped.value_at(i) for i in range(4)] == [
        Number.PLUR,
        Number.PLUR,
        Number.SING,
        Number.SING,
    ]


def test_progression_beyond_two_attractors_rejected():
    with pytest.raises(ProgramError):
        RuleProgram(attractor_rule=Progression(block=2, start=1))


def test_sequence_length_fixed():
    with pytest.raises(ProgramError):
        RuleProgram(sequence_length=9)


def test_program_serialization_round_trip():
    program = RuleProgram(
        n1_rule=Alternate(period=2, start=Number.PLUR), n2_rule=Constant(Number.PLUR)
    )
    assert RuleProgram.from_dict(program.to_dict()) == program


def test_build_matrix_plans_reproduces_exemplar(lexicon, franck_binding):
    contexts, answer = build_matrix_plans(RuleProgram(), ClauseType.MAIN, franck_binding)
    surfaces = [
        linearize(p, lexicon, franck_binding.subject, franck_binding.verb)
        for p in [*contexts, answer]
    ]
    assert surfaces == FIG_MAIN


def test_verb_number_tracks_subject_in_every_plan(franck_binding):
    for clause_type in ClauseType:
        contexts, answer = build_matrix_plans(RuleProgram(), clause_type, franck_binding)
        for p in [*contexts, answer]:
            assert p.verb_number is p.subject_number


def test_slot_independence(lexicon, franck_binding):
    from dataclasses import replace

    other_verb = lexicon.get("revenir", Category.VERB)
    binding_b = replace(franck_binding, verb=other_verb)
    plans_a = build_matrix_plans(RuleProgram(), ClauseType.MAIN, franck_binding)
    plans_b = build_matrix_plans(RuleProgram(), ClauseType.MAIN, binding_b)
    assert plans_a == plans_b  # verb choice lives in the binding, not the plan
    surface_a = linearize(plans_a[1], lexicon, franck_binding.subject, franck_binding.verb)
    surface_b = linearize(plans_b[1], lexicon, binding_b.subject, binding_b.verb)
    assert surface_a != surface_b
    assert surface_a.split(" avec ")[0] == surface_b.split(" avec ")[0]


def test_incomplete_binding_rejected(lexicon, franck_binding):
    from dataclasses import replace

    no_n2 = replace(franck_binding, n2=None)
    with pytest.raises(BindingError):
        build_matrix_plans(RuleProgram(), ClauseType.MAIN, no_n2)


def test_binding_category_checks(lexicon, franck_binding):
    from dataclasses import replace

    with pytest.raises(BindingError):
        replace(franck_binding, subject=franck_binding.verb)
    with pytest.raises(BindingError):
        replace(franck_binding, verb=franck_binding.subject)
