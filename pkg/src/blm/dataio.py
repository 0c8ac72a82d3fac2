"""Dataset serialization, splits, rule validation and corpus statistics.

Matrices are stored one JSON object per line with a fixed key order, so
identical inputs always serialize to identical bytes.  A sidecar manifest
(`<path>.manifest`) records counts, the format version and the generation
seed.  Sentence embeddings travel in a little-endian binary container
(magic "BLMEMB1\\0") of keyed 768-float records.
"""

from __future__ import annotations

import json
import random
import struct
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .answers import AnswerCandidate, AnswerSet, ContrastType
from .grammar import ClauseType
from .lexicon import Category, Lexicon, Number
from .rules import RuleProgram, apply_rules
from .variation import MatrixInstance, MatrixProvenance, VariationType

FORMAT_VERSION = 1
EMBEDDING_MAGIC = b"BLMEMB1\x00"
EMBEDDING_DIM = 768


class DatasetIOError(Exception):
    pass


class DatasetParseError(DatasetIOError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class VersionMismatchError(DatasetIOError):
    pass


class SplitError(Exception):
    pass


class Rule(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    ANSWER_ARITY = "AnswerArity"
    ROTATION_SKEW = "RotationSkew"
    DUPLICATE_ANSWER = "DuplicateAnswer"


@dataclass(frozen=True)
class Violation:
    matrix_id: str
    rule: Rule
    detail: str

    def __post_init__(self):
        if not self.detail:
            raise ValueError("violation detail must be non-empty")


@dataclass
class DatasetManifest:
    version: int = FORMAT_VERSION
    total: int = 0
    counts: list[dict] = field(default_factory=list)
    seed: int | None = None
    splits: dict[str, int] | None = None

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "total": self.total,
            "counts": self.counts,
            "seed": self.seed,
            "splits": self.splits,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetManifest":
        return cls(
            version=data["version"],
            total=data["total"],
            counts=data["counts"],
            seed=data.get("seed"),
            splits=data.get("splits"),
        )


def _manifest_counts(matrices: Sequence[MatrixInstance]) -> list[dict]:
    counter = Counter(
        (m.clause_type.value, m.variation_type.value, m.ordered) for m in matrices
    )
    return [
        {"clause_type": c, "variation_type": v, "ordered": o, "count": n}
        for (c, v, o), n in sorted(counter.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
    ]


def build_manifest(
    matrices: Sequence[MatrixInstance],
    seed: int | None = None,
    splits: dict[str, int] | None = None,
) -> DatasetManifest:
    return DatasetManifest(
        version=FORMAT_VERSION,
        total=len(matrices),
        counts=_manifest_counts(matrices),
        seed=seed,
        splits=splits,
    )


def matrix_to_record(matrix: MatrixInstance) -> dict:
    return {
        "id": matrix.id,
        "clause_type": matrix.clause_type.value,
        "variation_type": matrix.variation_type.value,
        "ordered": matrix.ordered,
        "contexts": list(matrix.contexts),
        "answers": [
            {"surface": c.surface, "contrast_type": c.contrast_type.value}
            for c in matrix.answer_set.candidates
        ],
        "correct_index": matrix.answer_set.correct_index,
        "program": matrix.program.to_dict(),
        "provenance": matrix.provenance.to_dict(),
    }


def matrix_from_record(record: dict) -> MatrixInstance:
    answers = record["answers"]
    if len(answers) != 6:
        raise DatasetIOError(f"{Rule.ANSWER_ARITY.value}: expected 6 answers, got {len(answers)}")
    candidates = tuple(
        AnswerCandidate(surface=a["surface"], contrast_type=ContrastType(a["contrast_type"]))
        for a in answers
    )
    return MatrixInstance(
        id=record["id"],
        clause_type=ClauseType(record["clause_type"]),
        variation_type=VariationType(record["variation_type"]),
        ordered=record["ordered"],
        contexts=tuple(record["contexts"]),
        answer_set=AnswerSet(candidates=candidates, correct_index=record["correct_index"]),
        program=RuleProgram.from_dict(record["program"]),
        provenance=MatrixProvenance.from_dict(record["provenance"]),
    )


def _dump_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def manifest_path(path: str | Path) -> Path:
    return Path(str(path) + ".manifest")


def write_matrices(
    matrices: Sequence[MatrixInstance],
    path: str | Path,
    seed: int | None = None,
    splits: dict[str, int] | None = None,
) -> DatasetManifest:
    """Write one matrix per line plus a sidecar manifest; returns the manifest."""
    path = Path(path)
    lines = [_dump_line(matrix_to_record(m)) for m in matrices]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    manifest = build_manifest(matrices, seed=seed, splits=splits)
    manifest_path(path).write_text(_dump_line(manifest.to_dict()) + "\n", encoding="utf-8")
    return manifest


def read_manifest(path: str | Path) -> DatasetManifest | None:
    sidecar = manifest_path(path)
    if not sidecar.exists():
        return None
    return DatasetManifest.from_dict(json.loads(sidecar.read_text(encoding="utf-8")))


def read_matrices(path: str | Path) -> list[MatrixInstance]:
    manifest = read_manifest(path)
    if manifest is not None and manifest.version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"dataset version {manifest.version}, reader supports {FORMAT_VERSION}"
        )
    matrices = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetParseError(f"invalid JSON: {exc.msg}", lineno) from None
        try:
            matrices.append(matrix_from_record(record))
        except (KeyError, ValueError, DatasetIOError) as exc:
            raise DatasetParseError(str(exc), lineno) from None
    return matrices


def split(
    matrices: Sequence[MatrixInstance],
    fractions: tuple[float, float, float],
    seed: int,
) -> tuple[list[MatrixInstance], list[MatrixInstance], list[MatrixInstance]]:
    """Seeded shuffle, then partition by largest-remainder apportionment."""
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise SplitError(f"fractions must sum to 1, got {fractions}")
    if any(f < 0 for f in fractions):
        raise SplitError(f"fractions must be non-negative, got {fractions}")
    pool = list(matrices)
    random.Random(seed).shuffle(pool)
    n = len(pool)
    raw = [f * n for f in fractions]
    sizes = [int(r) for r in raw]
    remainders = sorted(range(3), key=lambda i: (-(raw[i] - sizes[i]), i))
    for i in remainders[: n - sum(sizes)]:
        sizes[i] += 1
    train = pool[: sizes[0]]
    val = pool[sizes[0] : sizes[0] + sizes[1]]
    test = pool[sizes[0] + sizes[1] :]
    return train, val, test


def _number_name(number: Number | None) -> str:
    return number.value if number is not None else "-"


def validate_matrix(matrix: MatrixInstance, lexicon: Lexicon) -> list[Violation]:
    """Check the template rules and the answer-set contract; violations are data."""
    for row in (*matrix.provenance.contexts, *matrix.provenance.answers):
        lexicon.get(row.subject.lemma, Category.NOUN)
        lexicon.get(row.verb.lemma, Category.VERB)
        for slot in row.attractors:
            lexicon.get(slot.lemma, Category.NOUN)

    violations: list[Violation] = []

    def flag(rule: Rule, detail: str) -> None:
        violations.append(Violation(matrix.id, rule, detail))

    candidates = matrix.answer_set.candidates
    type_counts = Counter(c.contrast_type for c in candidates)
    if len(candidates) != 6 or set(type_counts.values()) != {1} or len(type_counts) != 6:
        flag(Rule.ANSWER_ARITY, f"answer types {sorted(t.value for t in type_counts)}")
    correct_index = matrix.answer_set.correct_index
    if not 0 <= correct_index < len(candidates):
        flag(Rule.ANSWER_ARITY, f"correct_index {correct_index} out of range")
    elif candidates[correct_index].contrast_type is not ContrastType.CORRECT:
        flag(
            Rule.ANSWER_ARITY,
            f"correct_index {correct_index} points at "
            f"{candidates[correct_index].contrast_type.value}",
        )

    surfaces = [c.surface for c in candidates]
    for surface, count in Counter(surfaces).items():
        if count > 1:
            flag(Rule.DUPLICATE_ANSWER, f"{count} candidates share {surface!r}")

    assignments = apply_rules(matrix.program)
    correct_row = None
    for candidate, row in zip(candidates, matrix.provenance.answers):
        if candidate.contrast_type is ContrastType.CORRECT:
            correct_row = row
    rows = list(matrix.provenance.contexts)
    if correct_row is not None:
        rows.append(correct_row)

    # R1 agreement holds row-wise in every grammatical row regardless of order.
    for i, row in enumerate(rows):
        if row.verb.number is not row.subject.number:
            flag(
                Rule.R1,
                f"row {i}: verb {row.verb.number.value} with subject {row.subject.number.value}",
            )

    expected = assignments[: len(rows)]
    if correct_row is not None:
        expected = assignments[:7][: len(rows) - 1] + [assignments[7]]
    if matrix.ordered:
        for i, (row, assignment) in enumerate(zip(rows, expected)):
            if row.subject.number is not assignment.subject_number:
                flag(
                    Rule.R1,
                    f"row {i}: subject {row.subject.number.value}, template "
                    f"{assignment.subject_number.value}",
                )
            if row.attractor_count != assignment.attractor_count:
                flag(
                    Rule.R2,
                    f"row {i}: {row.attractor_count} attractors, template "
                    f"{assignment.attractor_count}",
                )
            if row.attractor_count >= 1 and row.n1_number is not assignment.n1_number:
                flag(
                    Rule.R3,
                    f"row {i}: n1 {row.n1_number.value}, template {assignment.n1_number.value}",
                )
            if row.attractor_count == 2 and assignment.attractor_count == 2:
                if row.n2_number is not assignment.n2_number:
                    flag(
                        Rule.R4,
                        f"row {i}: n2 {_number_name(row.n2_number)}, template "
                        f"{_number_name(assignment.n2_number)}",
                    )
    else:
        # Unordered control: the multiset of row patterns must still match.
        def patterns(rows_like, key):
            return sorted(key(r) for r in rows_like)

        pairs = [
            (Rule.R1, lambda r: r.subject.number.value, lambda a: a.subject_number.value),
            (Rule.R2, lambda r: r.attractor_count, lambda a: a.attractor_count),
            (
                Rule.R3,
                lambda r: r.n1_number.value if r.attractors else "-",
                lambda a: a.n1_number.value,
            ),
            (Rule.R4, lambda r: _number_name(r.n2_number), lambda a: _number_name(a.n2_number)),
        ]
        for rule, row_key, assignment_key in pairs:
            got = patterns(rows, row_key)
            want = sorted(assignment_key(a) for a in expected)
            if got != want:
                flag(rule, f"multiset {got} differs from template {want}")

    if correct_row is not None:
        _check_distractors(matrix, correct_row, flag)
    return violations


def _check_distractors(matrix: MatrixInstance, correct, flag) -> None:
    """Each distractor must satisfy its minimal-pair definition against Correct."""
    for candidate, row in zip(matrix.answer_set.candidates, matrix.provenance.answers):
        kind = candidate.contrast_type
        if kind is ContrastType.CORRECT:
            continue
        if not row.attractors:
            flag(Rule.R2, f"{kind.value} candidate has no attractors")
            continue
        if kind is ContrastType.AE:
            ok = (
                row.subject.number is Number.SING
                and row.verb.number is Number.PLUR
                and row.attractor_count == correct.attractor_count
                and all(a.number is Number.SING for a in row.attractors)
                and row.coordination is None
            )
            rule = Rule.R1
        elif kind is ContrastType.WNA:
            ok = (
                row.subject.number is Number.SING
                and row.verb.number is Number.SING
                and row.attractor_count == correct.attractor_count - 1
                and row.n1_number is Number.SING
                and row.coordination is None
            )
            rule = Rule.R2
        elif kind is ContrastType.COORD:
            ok = (
                row.subject.number is Number.SING
                and row.verb.number is Number.SING
                and row.attractor_count == correct.attractor_count - 1
                and row.n1_number is Number.SING
                and row.coordination is not None
                and row.coordination.number is Number.SING
            )
            rule = Rule.R2
        elif kind is ContrastType.ALTER_N1:
            ok = (
                row.subject.number is correct.subject.number
                and row.verb.number is correct.verb.number
                and row.attractor_count == correct.attractor_count
                and row.n1_number is Number.SING
                and row.n2_number is correct.n2_number
            )
            rule = Rule.R3
        else:  # ALTER_N2
            ok = (
                row.subject.number is correct.subject.number
                and row.verb.number is correct.verb.number
                and row.attractor_count == correct.attractor_count
                and row.n1_number is correct.n1_number
                and row.n2_number is Number.PLUR
            )
            rule = Rule.R4
        if not ok:
            flag(rule, f"{kind.value} candidate does not match its contrast definition")


@dataclass
class StatsReport:
    manifest: DatasetManifest
    histogram: dict[tuple[str, int], int]
    skew: list[Violation]

    def format_histogram(self) -> str:
        types = sorted({t for t, _ in self.histogram})
        lines = ["contrast\t" + "\t".join(f"pos{i}" for i in range(6))]
        for t in types:
            row = [str(self.histogram.get((t, i), 0)) for i in range(6)]
            lines.append(t + "\t" + "\t".join(row))
        return "\n".join(lines)


def stats(matrices: Sequence[MatrixInstance]) -> StatsReport:
    """Corpus counts plus the per-position answer-type histogram."""
    histogram: Counter = Counter()
    for m in matrices:
        for position, candidate in enumerate(m.answer_set.candidates):
            histogram[(candidate.contrast_type.value, position)] += 1
    skew = []
    if matrices:
        uniform = len(matrices) / 6
        for (t, position), count in sorted(histogram.items()):
            if abs(count - uniform) > 1:
                skew.append(
                    Violation(
                        "corpus",
                        Rule.ROTATION_SKEW,
                        f"{t} at position {position}: {count} vs uniform {uniform:.1f}",
                    )
                )
    return StatsReport(manifest=build_manifest(matrices), histogram=dict(histogram), skew=skew)


def write_embeddings(records: Iterable[tuple[str, Sequence[float]]], path: str | Path) -> int:
    """Write keyed 768-float records in the binary embedding container."""
    records = list(records)
    with open(path, "wb") as fh:
        fh.write(EMBEDDING_MAGIC)
        fh.write(struct.pack("<Q", len(records)))
        for key, vector in records:
            if len(vector) != EMBEDDING_DIM:
                raise DatasetIOError(
                    f"embedding for {key!r} has dimension {len(vector)}, need {EMBEDDING_DIM}"
                )
            encoded = key.encode("utf-8")
            if len(encoded) > 0xFFFF:
                raise DatasetIOError(f"key too long: {key!r}")
            fh.write(struct.pack("<H", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack(f"<{EMBEDDING_DIM}f", *vector))
    return len(records)


def read_embeddings(path: str | Path) -> list[tuple[str, list[float]]]:
    data = Path(path).read_bytes()
    if data[: len(EMBEDDING_MAGIC)] != EMBEDDING_MAGIC:
        raise DatasetIOError("bad magic bytes; not an embedding container")
    offset = len(EMBEDDING_MAGIC)
    (count,) = struct.unpack_from("<Q", data, offset)
    offset += 8
    records = []
    for _ in range(count):
        (key_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        key = data[offset : offset + key_len].decode("utf-8")
        offset += key_len
        vector = list(struct.unpack_from(f"<{EMBEDDING_DIM}f", data, offset))
        offset += 4 * EMBEDDING_DIM
        records.append((key, vector))
    if offset != len(data):
        raise DatasetIOError(f"{len(data) - offset} trailing bytes after {count} records")
    return records
