"""Answer-set construction: six contrastive candidates per matrix.

Each distractor is a minimal pair against the correct continuation:
Coord swaps the final PP for an "et" + NP coordination, WNA drops the
final PP, AE pairs a singular subject with a plural verb, AlterN1/AlterN2
flip the number of the first or second attractor noun.  Coord, WNA and AE
use all-singular noun phrases, copying the exemplar answer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .grammar import CoordinatedNP, SentencePlan, linearize
from .lexicon import Lexicon, Number
from .rules import Binding, BindingError


class ContrastType(str, Enum):
    CORRECT = "Correct"
    COORD = "Coord"
    WNA = "WNA"
    AE = "AE"
    ALTER_N1 = "AlterN1"
    ALTER_N2 = "AlterN2"


# Presentation order of the exemplar answer matrix; rotation cycles it.
CANONICAL_ORDER = (
    ContrastType.COORD,
    ContrastType.CORRECT,
    ContrastType.WNA,
    ContrastType.AE,
    ContrastType.ALTER_N1,
    ContrastType.ALTER_N2,
)


class ContrastError(Exception):
    pass


class AnswerArityError(Exception):
    pass


@dataclass(frozen=True)
class AnswerCandidate:
    surface: str
    contrast_type: ContrastType
    plan: SentencePlan | None = None
    binding: Binding | None = None


@dataclass(frozen=True)
class AnswerSet:
    candidates: tuple[AnswerCandidate, ...]
    correct_index: int


def contrast_plan(
    contrast_type: ContrastType, answer_plan: SentencePlan, binding: Binding
) -> SentencePlan:
    """Transform the correct-answer plan into the plan for one contrast."""
    if contrast_type is ContrastType.CORRECT:
        return answer_plan
    first = answer_plan.attractors[0]

    if contrast_type is ContrastType.ALTER_N1:
        return answer_plan.with_attractor_number(0, Number.SING)

    if contrast_type is ContrastType.ALTER_N2:
        if len(answer_plan.attractors) < 2:
            raise ContrastError("AlterN2 needs a second attractor in the answer plan")
        return answer_plan.with_attractor_number(1, Number.PLUR)

    # The remaining contrasts rebuild the sentence around a singular subject.
    singular_first = replace(first, number=Number.SING)
    if contrast_type is ContrastType.WNA:
        return replace(
            answer_plan,
            subject_number=Number.SING,
            verb_number=Number.SING,
            attractors=(singular_first,),
        )
    if binding.n2 is None:
        raise ContrastError(f"{contrast_type.value} needs an n2 noun in the binding")
    if contrast_type is ContrastType.COORD:
        return replace(
            answer_plan,
            subject_number=Number.SING,
            verb_number=Number.SING,
            attractors=(singular_first,),
            coordination=CoordinatedNP(binding.n2, Number.SING),
        )
    if contrast_type is ContrastType.AE:
        if len(answer_plan.attractors) < 2:
            raise ContrastError("AE needs both attractors in the answer plan")
        second = replace(answer_plan.attractors[1], number=Number.SING)
        return replace(
            answer_plan,
            subject_number=Number.SING,
            verb_number=Number.PLUR,
            attractors=(singular_first, second),
            agreement_override=True,
        )
    raise ContrastError(f"unknown contrast type {contrast_type!r}")


def make_contrast(
    contrast_type: ContrastType,
    answer_plan: SentencePlan,
    binding: Binding,
    lexicon: Lexicon | None = None,
) -> AnswerCandidate:
    plan = contrast_plan(contrast_type, answer_plan, binding)
    surface = linearize(plan, lexicon, binding.subject, binding.verb)
    return AnswerCandidate(surface=surface, contrast_type=contrast_type, plan=plan, binding=binding)


def make_answer_candidates(
    answer_plan: SentencePlan, binding: Binding, lexicon: Lexicon | None = None
) -> list[AnswerCandidate]:
    return [make_contrast(t, answer_plan, binding, lexicon) for t in CANONICAL_ORDER]


def rotate_answers(candidates: list[AnswerCandidate], matrix_ordinal: int) -> AnswerSet:
    """Cyclic rotation of the canonical presentation order by the matrix ordinal."""
    if len(candidates) != len(CANONICAL_ORDER):
        raise AnswerArityError(f"expected {len(CANONICAL_ORDER)} candidates, got {len(candidates)}")
    by_type = {c.contrast_type: c for c in candidates}
    if len(by_type) != len(CANONICAL_ORDER):
        raise AnswerArityError("candidates must cover each contrast type exactly once")
    if matrix_ordinal < 0:
        raise AnswerArityError("matrix ordinal must be non-negative")
    shift = matrix_ordinal % len(CANONICAL_ORDER)
    ordered = tuple(
        by_type[CANONICAL_ORDER[(i + shift) % len(CANONICAL_ORDER)]]
        for i in range(len(CANONICAL_ORDER))
    )
    correct_index = next(
        i for i, c in enumerate(ordered) if c.contrast_type is ContrastType.CORRECT
    )
    return AnswerSet(candidates=ordered, correct_index=correct_index)
