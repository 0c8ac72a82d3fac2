"""Clause constructions and sentence linearization.

A SentencePlan fixes the agreement attributes of one sentence: the
subject and verb numbers, the attractor prepositional phrases between
them, and the fixed material of the embedding construction.  Linearization
is a pure function from a plan plus lexical choices to a surface string.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .lexicon import LexEntry, Lexicon, MissingEntryError, Number, realize_np, realize_verb

DEFAULT_COMPLETIVE_FRAME = "Jean suppose que"
DEFAULT_RELATIVE_CLAUSE = "dont Jean se servait"


class ClauseType(str, Enum):
    MAIN = "main"
    COMPLETIVE = "completive"
    RELATIVE = "relative"


class PlanError(Exception):
    pass


class AgreementViolation(PlanError):
    """Raised when linearizing an agreement-breaking plan without the override flag."""


@dataclass(frozen=True)
class AttractorSlot:
    preposition: str
    noun: LexEntry
    number: Number


@dataclass(frozen=True)
class CoordinatedNP:
    """An "et" + NP phrase standing in for the final attractor PP."""

    noun: LexEntry
    number: Number


@dataclass(frozen=True)
class SentencePlan:
    clause_type: ClauseType
    subject_number: Number
    attractors: tuple[AttractorSlot, ...]
    verb_number: Number
    coordination: CoordinatedNP | None = None
    embedding_frame: str | None = None
    relative_clause: str | None = None
    fixed_trailer: str | None = None
    agreement_override: bool = False

    def __post_init__(self):
        if not 1 <= len(self.attractors) <= 2:
            raise PlanError(f"plans take 1 or 2 attractors, got {len(self.attractors)}")

    @property
    def grammatical(self) -> bool:
        return self.verb_number is self.subject_number

    def with_attractor_number(self, index: int, number: Number) -> "SentencePlan":
        slots = list(self.attractors)
        slots[index] = replace(slots[index], number=number)
        return replace(self, attractors=tuple(slots))


def _check_known(lexicon: Lexicon | None, *entries: LexEntry) -> None:
    if lexicon is None:
        return
    for entry in entries:
        if entry not in lexicon:
            raise MissingEntryError(f"entry ({entry.lemma!r}, {entry.category.value}) not in lexicon")


def linearize(
    plan: SentencePlan,
    lexicon: Lexicon | None,
    subject_noun: LexEntry,
    verb: LexEntry,
) -> str:
    """Realize a plan as a single sentence string.

    Main clause: subject NP, attractor PPs, verb.  Completive: embedding
    frame then the main-clause body.  Relative: the relative-clause string
    sits between the attractors and the verb.  The first character is
    uppercased and a terminal period appended.
    """
    if not plan.grammatical and not plan.agreement_override:
        raise AgreementViolation(
            f"verb {plan.verb_number.value} vs subject {plan.subject_number.value} "
            "without agreement_override"
        )
    _check_known(lexicon, subject_noun, verb, *(slot.noun for slot in plan.attractors))

    parts: list[str] = []
    if plan.clause_type is ClauseType.COMPLETIVE:
        parts.append(plan.embedding_frame or DEFAULT_COMPLETIVE_FRAME)
    parts.append(realize_np(subject_noun, plan.subject_number))
    for slot in plan.attractors:
        parts.append(realize_np(slot.noun, slot.number, after_prep=slot.preposition))
    if plan.coordination is not None:
        parts.append(f"et {realize_np(plan.coordination.noun, plan.coordination.number)}")
    if plan.clause_type is ClauseType.RELATIVE:
        parts.append(plan.relative_clause or DEFAULT_RELATIVE_CLAUSE)
    parts.append(realize_verb(verb, plan.verb_number))
    if plan.fixed_trailer:
        parts.append(plan.fixed_trailer)

    sentence = " ".join(parts)
    return sentence[0].upper() + sentence[1:] + "."
