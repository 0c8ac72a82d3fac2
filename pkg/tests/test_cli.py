from __future__ import annotations

import json
import shutil

import pytest

from blm.cli import default_lexicon_path, main
from blm.dataio import matrix_to_record, read_matrices
from blm.answers import ContrastType


def run(argv):
    return main(argv)


def test_generate_rotates_correct_through_positions(tmp_path):
    out = tmp_path / "six.jsonl"
    assert run(["generate", "--type", "I", "--clauses", "main", "--count", "6",
                "--seed", "7", "--out", str(out)]) == 0
    matrices = read_matrices(out)
    assert len(matrices) == 6
    assert sorted(m.answer_set.correct_index for m in matrices) == list(range(6))


def test_generate_balances_clause_types(tmp_path):
    out = tmp_path / "mix.jsonl"
    run(["generate", "--clauses", "main,completive,relative", "--count", "9",
         "--seed", "1", "--out", str(out)])
    matrices = read_matrices(out)
    from collections import Counter

    counts = Counter(m.clause_type.value for m in matrices)
    assert counts == {"main": 3, "completive": 3, "relative": 3}


def test_generate_then_validate_exits_zero(tmp_path):
    out = tmp_path / "gen.jsonl"
    for variation in ("I", "II", "III"):
        run(["generate", "--type", variation, "--clauses", "main,relative",
             "--count", "12", "--seed", "3", "--out", str(out)])
        assert run(["validate", "--in", str(out)]) == 0


def test_validate_exits_one_on_violation(tmp_path):
    out = tmp_path / "gen.jsonl"
    run(["generate", "--count", "2", "--seed", "0", "--out", str(out)])
    matrices = read_matrices(out)
    record = matrix_to_record(matrices[0])
    record["provenance"]["contexts"][0]["subject"][1] = "Plur"
    lines = [json.dumps(record, ensure_ascii=False)] + [
        json.dumps(matrix_to_record(m), ensure_ascii=False) for m in matrices[1:]
    ]
    bad = tmp_path / "bad.jsonl"
    bad.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert run(["validate", "--in", str(bad)]) == 1


def test_split_fraction_usage_error(tmp_path):
    out = tmp_path / "gen.jsonl"
    run(["generate", "--count", "4", "--seed", "0", "--out", str(out)])
    with pytest.raises(SystemExit) as excinfo:
        run(["split", "--in", str(out), "--train", "0.5", "--val", "0.6",
             "--test", "0.1", "--seed", "0", "--out-prefix", str(tmp_path / "sp")])
    assert excinfo.value.code == 2


def test_unknown_flag_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run(["generate", "--count", "1", "--out", "x.jsonl", "--frobnicate"])
    assert excinfo.value.code == 2


def test_split_writes_three_disjoint_files(tmp_path):
    out = tmp_path / "gen.jsonl"
    run(["generate", "--count", "20", "--seed", "5", "--out", str(out)])
    assert run(["split", "--in", str(out), "--train", "0.8", "--val", "0.1",
                "--test", "0.1", "--seed", "2", "--out-prefix", str(tmp_path / "sp")]) == 0
    parts = [read_matrices(tmp_path / f"sp.{name}.jsonl") for name in ("train", "val", "test")]
    assert [len(p) for p in parts] == [16, 2, 2]
    ids = [m.id for part in parts for m in part]
    assert len(set(ids)) == 20


def test_shuffle_command_preserves_material(tmp_path):
    out = tmp_path / "gen.jsonl"
    shuf = tmp_path / "shuf.jsonl"
    run(["generate", "--count", "5", "--seed", "9", "--out", str(out)])
    assert run(["shuffle", "--in", str(out), "--out", str(shuf), "--seed", "4"]) == 0
    original = read_matrices(out)
    shuffled = read_matrices(shuf)
    for before, after in zip(original, shuffled):
        assert not after.ordered
        assert sorted(after.contexts) == sorted(before.contexts)
        assert [c.surface for c in after.answer_set.candidates] == [
            c.surface for c in before.answer_set.candidates
        ]
    assert run(["validate", "--in", str(shuf)]) == 0


def test_pipeline_is_byte_deterministic(tmp_path):
    files = {}
    for label in ("one", "two"):
        base = tmp_path / label
        base.mkdir()
        run(["generate", "--type", "II", "--clauses", "main,completive", "--count", "18",
             "--seed", "11", "--out", str(base / "gen.jsonl")])
        run(["shuffle", "--in", str(base / "gen.jsonl"), "--out", str(base / "shuf.jsonl"),
             "--seed", "6"])
        run(["split", "--in", str(base / "gen.jsonl"), "--train", "0.8", "--val", "0.1",
             "--test", "0.1", "--seed", "3", "--out-prefix", str(base / "sp")])
        files[label] = sorted(p.name for p in base.iterdir())
    assert files["one"] == files["two"]
    for name in files["one"]:
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_stats_command_prints_histogram(tmp_path, capsys):
    out = tmp_path / "gen.jsonl"
    run(["generate", "--count", "6", "--seed", "2", "--out", str(out)])
    capsys.readouterr()
    assert run(["stats", "--in", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "total\t6" in printed
    assert "contrast\tpos0" in printed
    for contrast in ContrastType:
        assert contrast.value in printed


def test_lexicon_env_var(tmp_path, monkeypatch):
    custom = tmp_path / "lex.tsv"
    shutil.copy(default_lexicon_path(), custom)
    monkeypatch.setenv("BLM_LEXICON", str(custom))
    out = tmp_path / "gen.jsonl"
    assert run(["generate", "--count", "2", "--seed", "0", "--out", str(out)]) == 0
    monkeypatch.setenv("BLM_LEXICON", str(tmp_path / "missing.tsv"))
    with pytest.raises(FileNotFoundError):
        run(["generate", "--count", "2", "--seed", "0", "--out", str(out)])
