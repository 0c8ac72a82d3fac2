"""Command-line interface: generate, shuffle, split, validate, stats."""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from .dataio import (
    read_matrices,
    split,
    stats,
    validate_matrix,
    write_matrices,
)
from .generate import generate_matrices
from .grammar import ClauseType
from .lexicon import Lexicon, load_lexicon
from .variation import VariationType, derive_seed, shuffle_contexts

LEXICON_ENV_VAR = "BLM_LEXICON"


def default_lexicon_path() -> Path:
    return Path(str(resources.files("blm").joinpath("data/lexicon_fr.tsv")))


def resolve_lexicon(path: str | None) -> Lexicon:
    if path:
        return load_lexicon(path)
    env = os.environ.get(LEXICON_ENV_VAR)
    if env:
        return load_lexicon(env)
    return load_lexicon(default_lexicon_path())


def _parse_clauses(value: str) -> list[ClauseType]:
    names = [v.strip() for v in value.split(",") if v.strip()]
    try:
        return [ClauseType(name) for name in names]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"clause types are main, completive, relative; got {value!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blm",
        description="Generate and inspect agreement language matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate matrices")
    gen.add_argument("--type", dest="variation", choices=[v.value for v in VariationType], default="I")
    gen.add_argument("--clauses", type=_parse_clauses, default=[ClauseType.MAIN])
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--lexicon")
    gen.add_argument("--out", required=True)

    shuf = sub.add_parser("shuffle", help="shuffle context order per matrix")
    shuf.add_argument("--in", dest="input", required=True)
    shuf.add_argument("--out", required=True)
    shuf.add_argument("--seed", type=int, default=0)

    spl = sub.add_parser("split", help="split a dataset into train/val/test")
    spl.add_argument("--in", dest="input", required=True)
    spl.add_argument("--train", type=float, required=True)
    spl.add_argument("--val", type=float, required=True)
    spl.add_argument("--test", type=float, required=True)
    spl.add_argument("--seed", type=int, default=0)
    spl.add_argument("--out-prefix", required=True)

    val = sub.add_parser("validate", help="check rule conformance")
    val.add_argument("--in", dest="input", required=True)
    val.add_argument("--lexicon")

    sta = sub.add_parser("stats", help="corpus counts and answer-position histogram")
    sta.add_argument("--in", dest="input", required=True)
    return parser


def _cmd_generate(args) -> int:
    lexicon = resolve_lexicon(args.lexicon)
    if args.count <= 0:
        raise SystemExit("count must be positive")
    matrices = generate_matrices(
        lexicon,
        count=args.count,
        clause_types=args.clauses,
        variation=VariationType(args.variation),
        seed=args.seed,
    )
    manifest = write_matrices(matrices, args.out, seed=args.seed)
    print(f"wrote {manifest.total} matrices to {args.out}")
    return 0


def _cmd_shuffle(args) -> int:
    matrices = read_matrices(args.input)
    shuffled = [
        shuffle_contexts(m, derive_seed(args.seed, "shuffle", m.id)) for m in matrices
    ]
    manifest = write_matrices(shuffled, args.out, seed=args.seed)
    print(f"wrote {manifest.total} shuffled matrices to {args.out}")
    return 0


def _cmd_split(args, parser: argparse.ArgumentParser) -> int:
    fractions = (args.train, args.val, args.test)
    if abs(sum(fractions) - 1.0) > 1e-9 or any(f < 0 for f in fractions):
        parser.error(f"--train/--val/--test must be non-negative and sum to 1, got {fractions}")
    matrices = read_matrices(args.input)
    train, val, test = split(matrices, fractions, args.seed)
    sizes = {"train": len(train), "val": len(val), "test": len(test)}
    for name, part in (("train", train), ("val", val), ("test", test)):
        out = f"{args.out_prefix}.{name}.jsonl"
        write_matrices(part, out, seed=args.seed, splits=sizes)
        print(f"wrote {len(part)} matrices to {out}")
    return 0


def _cmd_validate(args) -> int:
    lexicon = resolve_lexicon(args.lexicon)
    matrices = read_matrices(args.input)
    total = 0
    for matrix in matrices:
        for violation in validate_matrix(matrix, lexicon):
            total += 1
            print(f"{violation.matrix_id}\t{violation.rule.value}\t{violation.detail}")
    print(f"{total} violation(s) in {len(matrices)} matrices")
    return 1 if total else 0


def _cmd_stats(args) -> int:
    matrices = read_matrices(args.input)
    report = stats(matrices)
    print(f"total\t{report.manifest.total}")
    for row in report.manifest.counts:
        print(
            f"count\t{row['clause_type']}\t{row['variation_type']}\t"
            f"ordered={row['ordered']}\t{row['count']}"
        )
    print(report.format_histogram())
    for violation in report.skew:
        print(f"{violation.rule.value}\t{violation.detail}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "shuffle":
        return _cmd_shuffle(args)
    if args.command == "split":
        return _cmd_split(args, parser)
    if args.command == "validate":
        return _cmd_validate(args)
    if args.command == "stats":
        return _cmd_stats(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
