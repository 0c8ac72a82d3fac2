"""Matrix assembly under the three lexical-variation regimes.

Type I reuses one binding for every row, Type II varies a single noun
phrase slot (the subject by default) across rows, and Type III samples
each row from a pool of template-conformant sentences with pairwise
distinct subject forms.  A shuffled-context control variant reorders the
rows while keeping the answer set intact.
"""

from __future__ import annotations

import hashlib
import random
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .answers import (
    CANONICAL_ORDER,
    AnswerCandidate,
    AnswerSet,
    ContrastType,
    contrast_plan,
    make_answer_candidates,
    rotate_answers,
)
from .grammar import (
    DEFAULT_COMPLETIVE_FRAME,
    DEFAULT_RELATIVE_CLAUSE,
    AttractorSlot,
    ClauseType,
    CoordinatedNP,
    SentencePlan,
    linearize,
)
from .lexicon import Category, LexEntry, Lexicon, Number
from .rules import (
    Binding,
    PositionAssignment,
    RuleProgram,
    apply_rules,
    plan_for_assignment,
)


class VariationType(str, Enum):
    I = "I"
    II = "II"
    III = "III"


class NumberMismatchError(Exception):
    pass


class CoverageError(Exception):
    pass


class PoolValidationError(Exception):
    pass


class ShuffleStateError(Exception):
    pass


@dataclass(frozen=True)
class SlotProvenance:
    lemma: str
    number: Number


@dataclass(frozen=True)
class AttractorProvenance:
    preposition: str
    lemma: str
    number: Number


@dataclass(frozen=True)
class RowProvenance:
    """Binding record sufficient to regenerate one surface string."""

    subject: SlotProvenance
    verb: SlotProvenance
    attractors: tuple[AttractorProvenance, ...]
    coordination: SlotProvenance | None = None
    frame: str | None = None
    relative: str | None = None
    trailer: str | None = None
    agreement_override: bool = False
    verbatim: str | None = None

    @property
    def n1_number(self) -> Number:
        return self.attractors[0].number

    @property
    def n2_number(self) -> Number | None:
        return self.attractors[1].number if len(self.attractors) > 1 else None

    @property
    def attractor_count(self) -> int:
        return len(self.attractors)

    def to_dict(self) -> dict:
        return {
            "subject": [self.subject.lemma, self.subject.number.value],
            "verb": [self.verb.lemma, self.verb.number.value],
            "attractors": [[a.preposition, a.lemma, a.number.value] for a in self.attractors],
            "coordination": (
                [self.coordination.lemma, self.coordination.number.value]
                if self.coordination
                else None
            ),
            "frame": self.frame,
            "relative": self.relative,
            "trailer": self.trailer,
            "agreement_override": self.agreement_override,
            "verbatim": self.verbatim,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RowProvenance":
        return cls(
            subject=SlotProvenance(data["subject"][0], Number(data["subject"][1])),
            verb=SlotProvenance(data["verb"][0], Number(data["verb"][1])),
            attractors=tuple(
                AttractorProvenance(p, lemma, Number(n)) for p, lemma, n in data["attractors"]
            ),
            coordination=(
                SlotProvenance(data["coordination"][0], Number(data["coordination"][1]))
                if data.get("coordination")
                else None
            ),
            frame=data.get("frame"),
            relative=data.get("relative"),
            trailer=data.get("trailer"),
            agreement_override=data.get("agreement_override", False),
            verbatim=data.get("verbatim"),
        )


@dataclass(frozen=True)
class MatrixProvenance:
    contexts: tuple[RowProvenance, ...]
    answers: tuple[RowProvenance, ...]

    def to_dict(self) -> dict:
        return {
            "contexts": [r.to_dict() for r in self.contexts],
            "answers": [r.to_dict() for r in self.answers],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MatrixProvenance":
        return cls(
            contexts=tuple(RowProvenance.from_dict(r) for r in data["contexts"]),
            answers=tuple(RowProvenance.from_dict(r) for r in data["answers"]),
        )


@dataclass(frozen=True)
class MatrixInstance:
    id: str
    clause_type: ClauseType
    variation_type: VariationType
    ordered: bool
    contexts: tuple[str, ...]
    answer_set: AnswerSet
    program: RuleProgram
    provenance: MatrixProvenance


def derive_seed(global_seed: int, *parts: object) -> int:
    """Stable per-matrix seed: hash of the global seed and discriminators."""
    material = ":".join([str(global_seed), *map(str, parts)]).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(material, digest_size=8).digest(), "little")


def make_matrix_id(clause_type: ClauseType, variation: VariationType, ordinal: int) -> str:
    return f"{clause_type.value}-{variation.value}-{ordinal:06d}"


def row_provenance(plan: SentencePlan, binding: Binding, surface: str | None = None) -> RowProvenance:
    """Record a row; `surface` marks pooled text kept verbatim when it
    differs from what the binding regenerates."""
    verbatim = None
    if surface is not None:
        regenerated = linearize(plan, None, binding.subject, binding.verb)
        if regenerated != surface:
            verbatim = surface
    return RowProvenance(
        subject=SlotProvenance(binding.subject.lemma, plan.subject_number),
        verb=SlotProvenance(binding.verb.lemma, plan.verb_number),
        attractors=tuple(
            AttractorProvenance(s.preposition, s.noun.lemma, s.number) for s in plan.attractors
        ),
        coordination=(
            SlotProvenance(plan.coordination.noun.lemma, plan.coordination.number)
            if plan.coordination
            else None
        ),
        frame=plan.embedding_frame,
        relative=plan.relative_clause,
        trailer=plan.fixed_trailer,
        agreement_override=plan.agreement_override,
        verbatim=verbatim,
    )


def reconstruct_row(row: RowProvenance, clause_type: ClauseType, lexicon: Lexicon) -> str:
    """Surface string for a provenance row: verbatim text, else regeneration."""
    if row.verbatim is not None:
        return row.verbatim
    plan, binding = plan_from_row(row, clause_type, lexicon)
    return linearize(plan, lexicon, binding.subject, binding.verb)


def plan_from_row(
    row: RowProvenance, clause_type: ClauseType, lexicon: Lexicon
) -> tuple[SentencePlan, Binding]:
    subject = lexicon.get(row.subject.lemma, Category.NOUN)
    verb = lexicon.get(row.verb.lemma, Category.VERB)
    slots = tuple(
        AttractorSlot(a.preposition, lexicon.get(a.lemma, Category.NOUN), a.number)
        for a in row.attractors
    )
    coordination = None
    if row.coordination is not None:
        coordination = CoordinatedNP(
            lexicon.get(row.coordination.lemma, Category.NOUN), row.coordination.number
        )
    plan = SentencePlan(
        clause_type=clause_type,
        subject_number=row.subject.number,
        attractors=slots,
        verb_number=row.verb.number,
        coordination=coordination,
        embedding_frame=row.frame,
        relative_clause=row.relative,
        fixed_trailer=row.trailer,
        agreement_override=row.agreement_override,
    )
    n1 = slots[0].noun
    n2 = slots[1].noun if len(slots) > 1 else (coordination.noun if coordination else None)
    binding = Binding(
        subject=subject,
        verb=verb,
        n1=n1,
        n2=n2,
        prep1=slots[0].preposition,
        prep2=slots[1].preposition if len(slots) > 1 else "de",
        completive_frame=row.frame or DEFAULT_COMPLETIVE_FRAME,
        relative_clause=row.relative or DEFAULT_RELATIVE_CLAUSE,
    )
    return plan, binding


def _assemble(
    ordinal: int,
    clause_type: ClauseType,
    variation: VariationType,
    program: RuleProgram,
    context_rows: Sequence[tuple[SentencePlan, Binding, str | None]],
    candidates: list[AnswerCandidate],
) -> MatrixInstance:
    contexts = []
    context_prov = []
    for plan, binding, pooled_surface in context_rows:
        if pooled_surface is None:
            contexts.append(linearize(plan, None, binding.subject, binding.verb))
        else:
            contexts.append(pooled_surface)
        context_prov.append(row_provenance(plan, binding, pooled_surface))
    answer_set = rotate_answers(candidates, ordinal)
    answer_prov = tuple(
        row_provenance(c.plan, c.binding, c.surface) for c in answer_set.candidates
    )
    return MatrixInstance(
        id=make_matrix_id(clause_type, variation, ordinal),
        clause_type=clause_type,
        variation_type=variation,
        ordered=True,
        contexts=tuple(contexts),
        answer_set=answer_set,
        program=program,
        provenance=MatrixProvenance(contexts=tuple(context_prov), answers=answer_prov),
    )


def build_type1(
    binding: Binding,
    clause_type: ClauseType,
    program: RuleProgram,
    ordinal: int,
    lexicon: Lexicon | None = None,
) -> MatrixInstance:
    """One binding shared by every context row and every answer candidate."""
    assignments = apply_rules(program)
    plans = [plan_for_assignment(a, clause_type, binding) for a in assignments]
    candidates = make_answer_candidates(plans[-1], binding, lexicon)
    rows = [(p, binding, None) for p in plans[:-1]]
    return _assemble(ordinal, clause_type, VariationType.I, program, rows, candidates)


def build_type2(
    base_binding: Binding,
    substitutes: Sequence[tuple[LexEntry, Number]],
    clause_type: ClauseType,
    program: RuleProgram,
    ordinal: int,
    answer_substitutes: Sequence[tuple[LexEntry, Number]] | None = None,
    lexicon: Lexicon | None = None,
) -> MatrixInstance:
    """Vary the subject slot per row; all other slots follow the base binding.

    `substitutes` lists the seven context-row subjects with their intended
    numbers, which must match the template's subject sequence.
    `answer_substitutes` optionally does the same for the six candidates in
    canonical contrast order.
    """
    assignments = apply_rules(program)
    if len(substitutes) != len(assignments) - 1:
        raise NumberMismatchError(
            f"need {len(assignments) - 1} context substitutes, got {len(substitutes)}"
        )
    rows = []
    for assignment, (entry, number) in zip(assignments[:-1], substitutes):
        if number is not assignment.subject_number:
            raise NumberMismatchError(
                f"row {assignment.position}: substitute {entry.lemma!r} declared "
                f"{number.value} but the template requires {assignment.subject_number.value}"
            )
        binding = replace(base_binding, subject=entry)
        rows.append((plan_for_assignment(assignment, clause_type, binding), binding, None))

    answer_assignment = assignments[-1]
    candidates = []
    for position, contrast in enumerate(CANONICAL_ORDER):
        binding = base_binding
        if answer_substitutes is not None:
            entry, number = answer_substitutes[position]
            required = (
                Number.SING
                if contrast in (ContrastType.COORD, ContrastType.WNA, ContrastType.AE)
                else answer_assignment.subject_number
            )
            if number is not required:
                raise NumberMismatchError(
                    f"answer substitute {entry.lemma!r} declared {number.value} but "
                    f"{contrast.value} requires {required.value}"
                )
            binding = replace(base_binding, subject=entry)
        answer_plan = plan_for_assignment(answer_assignment, clause_type, binding)
        plan = contrast_plan(contrast, answer_plan, binding)
        surface = linearize(plan, lexicon, binding.subject, binding.verb)
        candidates.append(
            AnswerCandidate(surface=surface, contrast_type=contrast, plan=plan, binding=binding)
        )
    return _assemble(ordinal, clause_type, VariationType.II, program, rows, candidates)


@dataclass(frozen=True)
class PooledSentence:
    surface: str
    binding: Binding


class SentencePool:
    """Sentences grouped by (clause type, template cell) for Type III sampling."""

    def __init__(self):
        self._cells: dict[tuple[ClauseType, tuple], list[PooledSentence]] = {}

    def add(
        self,
        clause_type: ClauseType,
        pattern: tuple[Number, Number, Number | None, int],
        surface: str,
        binding: Binding,
    ) -> None:
        """Pool a sentence after checking its inflected slot forms against the cell."""
        subject_number, n1_number, n2_number, count = pattern
        checks = [
            binding.subject.form(subject_number),
            binding.n1.form(n1_number),
            binding.verb.form(subject_number),
        ]
        if count == 2:
            if binding.n2 is None:
                raise PoolValidationError("two-attractor cell needs an n2 noun in the binding")
            checks.append(binding.n2.form(n2_number))
        lowered = surface.casefold()
        for form in checks:
            if not re.search(rf"\b{re.escape(form.casefold())}\b", lowered):
                raise PoolValidationError(
                    f"surface {surface!r} does not realize required form {form!r}"
                )
        key = (clause_type, pattern)
        self._cells.setdefault(key, []).append(PooledSentence(surface, binding))

    def add_generated(
        self,
        clause_type: ClauseType,
        assignment: PositionAssignment,
        binding: Binding,
        lexicon: Lexicon | None = None,
    ) -> None:
        plan = plan_for_assignment(assignment, clause_type, binding)
        surface = linearize(plan, lexicon, binding.subject, binding.verb)
        self.add(clause_type, assignment.pattern(), surface, binding)

    def sentences(self, clause_type: ClauseType, pattern: tuple) -> list[PooledSentence]:
        cell = self._cells.get((clause_type, pattern), [])
        if not cell:
            raise CoverageError(f"empty pool cell for {clause_type.value} {pattern}")
        return cell

    @classmethod
    def generate(
        cls,
        lexicon: Lexicon,
        program: RuleProgram,
        clause_type: ClauseType,
        per_cell: int,
        seed: int,
    ) -> "SentencePool":
        """Fill every cell the program needs with sampled bindings.

        Subjects cycle through a shuffled noun list so the pool offers at
        least `per_cell` distinct subject forms per cell.
        """
        nouns = sorted(lexicon.nouns(), key=lambda e: e.lemma)
        verbs = sorted(lexicon.verbs(), key=lambda e: e.lemma)
        if len(nouns) < 3 or not verbs:
            raise CoverageError("lexicon too small to generate a pool")
        rng = random.Random(seed)
        subject_cycle = nouns.copy()
        rng.shuffle(subject_cycle)
        cursor = 0
        pool = cls()
        patterns = []
        for assignment in apply_rules(program):
            if assignment.pattern() not in patterns:
                patterns.append(assignment.pattern())
        for pattern in patterns:
            assignment_like = PositionAssignment(
                position=0,
                subject_number=pattern[0],
                n1_number=pattern[1],
                n2_number=pattern[2],
                attractor_count=pattern[3],
            )
            for _ in range(per_cell):
                subject = subject_cycle[cursor % len(subject_cycle)]
                cursor += 1
                others = [n for n in nouns if n.lemma != subject.lemma]
                n1, n2 = rng.sample(others, 2)
                binding = Binding(
                    subject=subject,
                    verb=rng.choice(verbs),
                    n1=n1,
                    n2=n2,
                    prep1=rng.choice(lexicon.prepositions),
                    prep2=rng.choice(lexicon.prepositions),
                )
                pool.add_generated(clause_type, assignment_like, binding, lexicon)
        return pool


def _pick_distinct_subjects(
    cells: list[list[PooledSentence]],
    numbers: list[Number],
    rng: random.Random,
) -> list[PooledSentence]:
    """Backtracking choice of one sentence per cell with distinct subject forms."""
    shuffled = [rng.sample(cell, len(cell)) for cell in cells]
    chosen: list[PooledSentence] = []
    used: list[str] = []

    def extend(position: int) -> bool:
        if position == len(shuffled):
            return True
        for candidate in shuffled[position]:
            form = candidate.binding.subject.form(numbers[position])
            if form in used:
                continue
            chosen.append(candidate)
            used.append(form)
            if extend(position + 1):
                return True
            chosen.pop()
            used.pop()
        return False

    if not extend(0):
        raise CoverageError("pool cannot supply pairwise distinct subject forms for all rows")
    return chosen


def build_type3(
    pool: SentencePool,
    program: RuleProgram,
    clause_type: ClauseType,
    ordinal: int,
    seed: int,
    lexicon: Lexicon | None = None,
) -> MatrixInstance:
    """Sample each row from its template cell with full lexical variation.

    Context rows and the correct answer keep their pooled surfaces; the
    five distractors are rebuilt from fresh row-7-cell samples via the
    contrast transforms.
    """
    assignments = apply_rules(program)
    rng = random.Random(seed)
    cells = [pool.sentences(clause_type, a.pattern()) for a in assignments]
    picked = _pick_distinct_subjects(cells, [a.subject_number for a in assignments], rng)

    rows = []
    for assignment, pooled in zip(assignments[:-1], picked[:-1]):
        plan = plan_for_assignment(assignment, clause_type, pooled.binding)
        rows.append((plan, pooled.binding, pooled.surface))

    answer_assignment = assignments[-1]
    answer_cell = cells[-1]
    correct_pooled = picked[-1]
    candidates = []
    for contrast in CANONICAL_ORDER:
        if contrast is ContrastType.CORRECT:
            binding = correct_pooled.binding
            plan = plan_for_assignment(answer_assignment, clause_type, binding)
            candidates.append(
                AnswerCandidate(
                    surface=correct_pooled.surface,
                    contrast_type=contrast,
                    plan=plan,
                    binding=binding,
                )
            )
            continue
        sampled = rng.choice(answer_cell)
        binding = sampled.binding
        answer_plan = plan_for_assignment(answer_assignment, clause_type, binding)
        plan = contrast_plan(contrast, answer_plan, binding)
        surface = linearize(plan, lexicon, binding.subject, binding.verb)
        candidates.append(
            AnswerCandidate(surface=surface, contrast_type=contrast, plan=plan, binding=binding)
        )
    return _assemble(ordinal, clause_type, VariationType.III, program, rows, candidates)


def shuffle_contexts(matrix: MatrixInstance, seed: int) -> MatrixInstance:
    """Uniform seeded permutation of the context rows; the answer set stays put."""
    if not matrix.ordered:
        raise ShuffleStateError(f"matrix {matrix.id} is already unordered")
    rng = random.Random(seed)
    permutation = list(range(len(matrix.contexts)))
    rng.shuffle(permutation)
    return replace(
        matrix,
        id=f"{matrix.id}-shuf",
        ordered=False,
        contexts=tuple(matrix.contexts[i] for i in permutation),
        provenance=replace(
            matrix.provenance,
            contexts=tuple(matrix.provenance.contexts[i] for i in permutation),
        ),
    )
