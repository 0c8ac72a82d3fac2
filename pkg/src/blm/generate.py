"""Seeded corpus generation across clause types and variation regimes.

Per-matrix seeds are derived by hashing the global seed with the matrix
ordinal, so extending the count never perturbs earlier matrices.
"""

from __future__ import annotations

import random
from typing import Sequence

from .answers import CANONICAL_ORDER, ContrastType
from .grammar import ClauseType
from .lexicon import Lexicon, Number
from .rules import Binding, RuleProgram, apply_rules
from .variation import (
    MatrixInstance,
    SentencePool,
    VariationType,
    build_type1,
    build_type2,
    build_type3,
    derive_seed,
)

POOL_SENTENCES_PER_CELL = 12


def sample_binding(lexicon: Lexicon, rng: random.Random) -> Binding:
    nouns = sorted(lexicon.nouns(), key=lambda e: e.lemma)
    verbs = sorted(lexicon.verbs(), key=lambda e: e.lemma)
    if len(nouns) < 3 or not verbs:
        raise ValueError("lexicon needs at least three nouns and one verb")
    subject, n1, n2 = rng.sample(nouns, 3)
    return Binding(
        subject=subject,
        verb=rng.choice(verbs),
        n1=n1,
        n2=n2,
        prep1=rng.choice(lexicon.prepositions),
        prep2=rng.choice(lexicon.prepositions),
    )


def generate_matrices(
    lexicon: Lexicon,
    count: int,
    clause_types: Sequence[ClauseType],
    variation: VariationType,
    seed: int,
    program: RuleProgram | None = None,
) -> list[MatrixInstance]:
    """`count` matrices balanced over `clause_types`, rotated by ordinal."""
    if count <= 0:
        raise ValueError("count must be positive")
    if not clause_types:
        raise ValueError("at least one clause type required")
    program = program or RuleProgram()

    pools: dict[ClauseType, SentencePool] = {}
    if variation is VariationType.III:
        for clause_type in clause_types:
            pools[clause_type] = SentencePool.generate(
                lexicon,
                program,
                clause_type,
                per_cell=POOL_SENTENCES_PER_CELL,
                seed=derive_seed(seed, "pool", clause_type.value),
            )

    assignments = apply_rules(program)
    nouns = sorted(lexicon.nouns(), key=lambda e: e.lemma)
    matrices = []
    for ordinal in range(count):
        clause_type = clause_types[ordinal % len(clause_types)]
        matrix_seed = derive_seed(seed, ordinal)
        rng = random.Random(matrix_seed)
        if variation is VariationType.I:
            matrix = build_type1(sample_binding(lexicon, rng), clause_type, program, ordinal, lexicon)
        elif variation is VariationType.II:
            base = sample_binding(lexicon, rng)
            substitutes = [
                (rng.choice(nouns), a.subject_number) for a in assignments[:-1]
            ]
            answer_substitutes = []
            for contrast in CANONICAL_ORDER:
                required = (
                    Number.SING
                    if contrast in (ContrastType.COORD, ContrastType.WNA, ContrastType.AE)
                    else assignments[-1].subject_number
                )
                answer_substitutes.append((rng.choice(nouns), required))
            matrix = build_type2(
                base,
                substitutes,
                clause_type,
                program,
                ordinal,
                answer_substitutes=answer_substitutes,
                lexicon=lexicon,
            )
        else:
            matrix = build_type3(
                pools[clause_type], program, clause_type, ordinal, matrix_seed, lexicon
            )
        matrices.append(matrix)
    return matrices
