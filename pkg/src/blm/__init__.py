"""Toolkit for generating and validating agreement language matrices."""

from .answers import (
    CANONICAL_ORDER,
    AnswerCandidate,
    AnswerSet,
    ContrastType,
    make_contrast,
    rotate_answers,
)
from .dataio import (
    DatasetManifest,
    Rule,
    Violation,
    read_embeddings,
    read_matrices,
    split,
    stats,
    validate_matrix,
    write_embeddings,
    write_matrices,
)
from .generate import generate_matrices, sample_binding
from .grammar import AttractorSlot, ClauseType, SentencePlan, linearize
from .lexicon import (
    Category,
    Gender,
    LexEntry,
    Lexicon,
    Number,
    load_lexicon,
    realize_np,
    realize_verb,
)
from .rules import (
    Alternate,
    Binding,
    Constant,
    PositionAssignment,
    Progression,
    RuleProgram,
    apply_rules,
    build_matrix_plans,
)
from .variation import (
    MatrixInstance,
    SentencePool,
    VariationType,
    build_type1,
    build_type2,
    build_type3,
    derive_seed,
    shuffle_contexts,
)

__version__ = "0.1.0"
