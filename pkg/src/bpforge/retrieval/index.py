"""RAG index over the (rule, program) exemplar corpus.

Corpus layout on disk::

    corpus/manifest            one "<id>\\t<rule>" line per entry
    corpus/<id>/rule.txt       the rule text (must match the manifest)
    corpus/<id>/program.bpdsl  the exemplar program

The corpus is small, so retrieval is an exact argmax over cosine
similarities.
"""

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..dsl import parse_program, validate
from ..dsl.parser import ProgramParseError
from ..errors import CorpusParseError, InvalidInput
from .embedder import HashedTfidfEmbedder


@dataclass(frozen=True)
class ExampleEntry:
    problem_id: int
    rule: str
    program_source: str


@dataclass(frozen=True)
class RagIndex:
    entries: tuple[ExampleEntry, ...]
    vectors: np.ndarray  # one L2-normalized row per entry
    embedder_id: str
    embedder: HashedTfidfEmbedder


def default_corpus_dir() -> Path:
    return Path(resources.files("bpforge.retrieval") / "corpus")


def build_index(corpus_dir) -> RagIndex:
    """Load, parse-check, and embed the corpus; any bad file rejects the build."""
    corpus_dir = Path(corpus_dir)
    manifest_path = corpus_dir / "manifest"
    failures = []
    if not manifest_path.exists():
        raise CorpusParseError([(str(manifest_path), "manifest not found")])

    entries = []
    lines = [ln for ln in manifest_path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        failures.append((str(manifest_path), "manifest is empty"))
    for line in lines:
        if "\t" not in line:
            failures.append((str(manifest_path), f"malformed manifest line {line!r}"))
            continue
        id_text, rule = line.split("\t", 1)
        try:
            problem_id = int(id_text)
        except ValueError:
            failures.append((str(manifest_path), f"bad problem id {id_text!r}"))
            continue
        rule_path = corpus_dir / id_text / "rule.txt"
        program_path = corpus_dir / id_text / "program.bpdsl"
        if not rule_path.exists():
            failures.append((str(rule_path), "missing rule file"))
            continue
        if not program_path.exists():
            failures.append((str(program_path), "missing program file"))
            continue
        stored_rule = rule_path.read_text(encoding="utf-8").strip()
        if stored_rule != rule.strip():
            failures.append((str(rule_path), f"rule differs from manifest entry {rule.strip()!r}"))
            continue
        source = program_path.read_text(encoding="utf-8")
        try:
            program = parse_program(source)
        except ProgramParseError as e:
            failures.append((str(program_path), str(e)))
            continue
        diags = validate(program)
        if diags:
            failures.append((str(program_path), "; ".join(str(d) for d in diags)))
            continue
        entries.append(ExampleEntry(problem_id=problem_id, rule=stored_rule, program_source=source))
    if failures:
        raise CorpusParseError(failures)

    embedder = HashedTfidfEmbedder.fit(e.rule for e in entries)
    vectors = np.vstack([embedder.embed(e.rule) for e in entries])
    return RagIndex(
        entries=tuple(entries),
        vectors=vectors,
        embedder_id=embedder.embedder_id,
        embedder=embedder,
    )


def retrieve_nearest(index: RagIndex, rule: str) -> ExampleEntry:
    """Entry with maximal cosine similarity to the rule; ties pick the lowest id."""
    if not index.entries:
        raise InvalidInput("retrieval index is empty")
    sims = index.vectors @ index.embedder.embed(rule)
    best = sims.max()
    tied = [e for e, s in zip(index.entries, sims) if s == best]
    return min(tied, key=lambda e: e.problem_id)
