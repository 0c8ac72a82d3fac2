"""Rule programs: relation operators applied across the 8-position sequence.

The default program reproduces the agreement template: the subject number
alternates every sentence, the first attractor noun every two sentences,
the second attractor noun stays singular, and the attractor count steps
from one to two halfway through.  Position 7 is the correct answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .grammar import (
    DEFAULT_COMPLETIVE_FRAME,
    DEFAULT_RELATIVE_CLAUSE,
    AttractorSlot,
    ClauseType,
    SentencePlan,
)
from .lexicon import Category, LexEntry, Number

SEQUENCE_LENGTH = 8


class ProgramError(Exception):
    pass


class BindingError(Exception):
    pass


@dataclass(frozen=True)
class Alternate:
    """Flip between Sing and Plur every `period` positions."""

    period: int
    start: Number = Number.SING

    def value_at(self, position: int) -> Number:
        if self.period < 1:
            raise ProgramError(f"alternation period must be >= 1, got {self.period}")
        return self.start if (position // self.period) % 2 == 0 else self.start.flipped()


@dataclass(frozen=True)
class Constant:
    value: Number

    def value_at(self, position: int) -> Number:
        return self.value


@dataclass(frozen=True)
class Progression:
    """Increment the attractor count by one every `block` positions."""

    block: int
    start: int = 1

    def count_at(self, position: int) -> int:
        if self.block < 1:
            raise ProgramError(f"progression block must be >= 1, got {self.block}")
        return self.start + position // self.block


NumberRule = Union[Alternate, Constant]


@dataclass(frozen=True)
class RuleProgram:
    subject_rule: Alternate = Alternate(period=1)
    n1_rule: Alternate = Alternate(period=2)
    n2_rule: NumberRule = Constant(Number.SING)
    attractor_rule: Progression = Progression(block=4, start=1)
    sequence_length: int = SEQUENCE_LENGTH

    def __post_init__(self):
        if self.sequence_length != SEQUENCE_LENGTH:
            raise ProgramError(f"sequence length is fixed at {SEQUENCE_LENGTH}")
        counts = {self.attractor_rule.count_at(i) for i in range(self.sequence_length)}
        if not counts <= {1, 2}:
            raise ProgramError(f"attractor counts must stay in {{1, 2}}, got {sorted(counts)}")

    def to_dict(self) -> dict:
        def number_rule(rule: NumberRule) -> dict:
            if isinstance(rule, Alternate):
                return {"op": "alternate", "period": rule.period, "start": rule.start.value}
            return {"op": "constant", "value": rule.value.value}

        return {
            "subject": number_rule(self.subject_rule),
            "n1": number_rule(self.n1_rule),
            "n2": number_rule(self.n2_rule),
            "attractors": {
                "op": "progression",
                "block": self.attractor_rule.block,
                "start": self.attractor_rule.start,
            },
            "length": self.sequence_length,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RuleProgram":
        def number_rule(spec: dict) -> NumberRule:
            if spec["op"] == "alternate":
                return Alternate(period=spec["period"], start=Number(spec["start"]))
            if spec["op"] == "constant":
                return Constant(Number(spec["value"]))
            raise ProgramError(f"unknown number rule op {spec['op']!r}")

        subject = number_rule(data["subject"])
        if not isinstance(subject, Alternate):
            raise ProgramError("subject rule must alternate")
        n1 = number_rule(data["n1"])
        if not isinstance(n1, Alternate):
            raise ProgramError("n1 rule must alternate")
        attractors = data["attractors"]
        return cls(
            subject_rule=subject,
            n1_rule=n1,
            n2_rule=number_rule(data["n2"]),
            attractor_rule=Progression(block=attractors["block"], start=attractors["start"]),
            sequence_length=data.get("length", SEQUENCE_LENGTH),
        )


@dataclass(frozen=True)
class PositionAssignment:
    position: int
    subject_number: Number
    n1_number: Number
    n2_number: Number | None
    attractor_count: int

    def __post_init__(self):
        if (self.n2_number is not None) != (self.attractor_count == 2):
            raise ProgramError("n2_number must be present exactly when attractor_count is 2")

    def pattern(self) -> tuple:
        """Position-independent cell signature."""
        return (self.subject_number, self.n1_number, self.n2_number, self.attractor_count)


def apply_rules(program: RuleProgram) -> list[PositionAssignment]:
    assignments = []
    for i in range(program.sequence_length):
        count = program.attractor_rule.count_at(i)
        assignments.append(
            PositionAssignment(
                position=i,
                subject_number=program.subject_rule.value_at(i),
                n1_number=program.n1_rule.value_at(i),
                n2_number=program.n2_rule.value_at(i) if count == 2 else None,
                attractor_count=count,
            )
        )
    return assignments


@dataclass(frozen=True)
class Binding:
    """Per-slot lexical choices shared by the sentences of one matrix."""

    subject: LexEntry
    verb: LexEntry
    n1: LexEntry
    n2: LexEntry | None = None
    prep1: str = "avec"
    prep2: str = "de"
    completive_frame: str = DEFAULT_COMPLETIVE_FRAME
    relative_clause: str = DEFAULT_RELATIVE_CLAUSE

    def __post_init__(self):
        for role, entry in (("subject", self.subject), ("n1", self.n1), ("n2", self.n2)):
            if entry is not None and entry.category is not Category.NOUN:
                raise BindingError(f"{role} must be a Noun, got {entry.category.value}")
        if self.verb.category is not Category.VERB:
            raise BindingError(f"verb must be a Verb, got {self.verb.category.value}")


def plan_for_assignment(
    assignment: PositionAssignment, clause_type: ClauseType, binding: Binding
) -> SentencePlan:
    """Grammatical plan for one position; verb number tracks the subject."""
    slots = [AttractorSlot(binding.prep1, binding.n1, assignment.n1_number)]
    if assignment.attractor_count == 2:
        if binding.n2 is None:
            raise BindingError("binding lacks an n2 noun but the program uses two attractors")
        slots.append(AttractorSlot(binding.prep2, binding.n2, assignment.n2_number))
    return SentencePlan(
        clause_type=clause_type,
        subject_number=assignment.subject_number,
        attractors=tuple(slots),
        verb_number=assignment.subject_number,
        embedding_frame=binding.completive_frame if clause_type is ClauseType.COMPLETIVE else None,
        relative_clause=binding.relative_clause if clause_type is ClauseType.RELATIVE else None,
    )


def build_matrix_plans(
    program: RuleProgram, clause_type: ClauseType, binding: Binding
) -> tuple[list[SentencePlan], SentencePlan]:
    """The 7 context plans plus the correct-answer plan for position 7."""
    assignments = apply_rules(program)
    plans = [plan_for_assignment(a, clause_type, binding) for a in assignments]
    return plans[:-1], plans[-1]
