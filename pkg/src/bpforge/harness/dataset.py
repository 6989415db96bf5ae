"""Dataset ingestion.

Two layouts are accepted:

* a ``problems.json`` manifest in the root (the generic form all fixture
  datasets use): a list of objects with id, positives, negatives (6 paths
  each, relative to the root), rule_pos, rule_neg, category;
* bare directories named by problem id containing ``pos_0.png`` ..
  ``pos_5.png``, ``neg_0.png`` .. ``neg_5.png`` (or ``.pgm``), with
  optional ``rule_pos.txt``, ``rule_neg.txt`` and ``category.txt``.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ManifestError
from ..raster.io import load_panel
from ..verify.problem import SIDE, BongardProblem


@dataclass(frozen=True)
class ProblemEntry:
    id: int
    positive_paths: tuple[Path, ...]
    negative_paths: tuple[Path, ...]
    rule_pos: str | None
    rule_neg: str | None
    category: str | None


@dataclass(frozen=True)
class DatasetManifest:
    root: Path
    problems: tuple[ProblemEntry, ...]

    def in_range(self, span: tuple[int, int] | None) -> list[ProblemEntry]:
        if span is None:
            return list(self.problems)
        lo, hi = span
        return [p for p in self.problems if lo <= p.id <= hi]


def _check_paths(problem_id, paths, side_name):
    for i, path in enumerate(paths):
        if not path.exists():
            raise ManifestError(f"problem {problem_id}: missing {side_name} panel index {i}: {path}")


def _entry_from_json(root: Path, record: dict) -> ProblemEntry:
    try:
        problem_id = int(record["id"])
        positives = tuple(root / p for p in record["positives"])
        negatives = tuple(root / p for p in record["negatives"])
    except (KeyError, TypeError, ValueError) as e:
        raise ManifestError(f"malformed manifest record {record!r}: {e}") from e
    if len(positives) != SIDE or len(negatives) != SIDE:
        raise ManifestError(
            f"problem {problem_id}: need {SIDE}+{SIDE} panels, got {len(positives)}+{len(negatives)}"
        )
    _check_paths(problem_id, positives, "positive")
    _check_paths(problem_id, negatives, "negative")
    return ProblemEntry(
        id=problem_id,
        positive_paths=positives,
        negative_paths=negatives,
        rule_pos=record.get("rule_pos"),
        rule_neg=record.get("rule_neg"),
        category=record.get("category"),
    )


def _entry_from_dir(problem_dir: Path) -> ProblemEntry:
    problem_id = int(problem_dir.name)

    def find_panels(prefix):
        paths = []
        for i in range(SIDE):
            for ext in (".png", ".pgm"):
                candidate = problem_dir / f"{prefix}_{i}{ext}"
                if candidate.exists():
                    paths.append(candidate)
                    break
            else:
                raise ManifestError(f"problem {problem_id}: missing {prefix} panel index {i}")
        return tuple(paths)

    def read_optional(name):
        path = problem_dir / name
        return path.read_text(encoding="utf-8").strip() if path.exists() else None

    return ProblemEntry(
        id=problem_id,
        positive_paths=find_panels("pos"),
        negative_paths=find_panels("neg"),
        rule_pos=read_optional("rule_pos.txt"),
        rule_neg=read_optional("rule_neg.txt"),
        category=read_optional("category.txt"),
    )


def load_dataset(root) -> DatasetManifest:
    root = Path(root)
    if not root.exists():
        raise ManifestError(f"dataset root does not exist: {root}")
    manifest_path = root / "problems.json"
    if manifest_path.exists():
        records = json.loads(manifest_path.read_text(encoding="utf-8"))
        entries = [_entry_from_json(root, r) for r in records]
    else:
        dirs = sorted((d for d in root.iterdir() if d.is_dir() and d.name.isdigit()), key=lambda d: int(d.name))
        entries = [_entry_from_dir(d) for d in dirs]
    if not entries:
        raise ManifestError(f"no problems found under {root}")
    entries.sort(key=lambda e: e.id)
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ManifestError(f"duplicate problem ids in {root}")
    return DatasetManifest(root=root, problems=tuple(entries))


def load_problem(entry: ProblemEntry, binarize_threshold: int) -> BongardProblem:
    return BongardProblem(
        id=entry.id,
        positives=tuple(load_panel(p, binarize_threshold) for p in entry.positive_paths),
        negatives=tuple(load_panel(p, binarize_threshold) for p in entry.negative_paths),
        rule_pos=entry.rule_pos,
        rule_neg=entry.rule_neg,
        category=entry.category,
    )
