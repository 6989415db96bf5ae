"""Dataset loading, configuration, report emission, and the CLI."""

import json
from dataclasses import replace

import pytest

from bpforge.errors import InvalidInput, ManifestError
from bpforge.harness import (
    RunConfig,
    emit_report,
    load_config,
    load_dataset,
    load_problem,
    load_records,
    render_table,
    run,
)
from bpforge.harness.cli import main as cli_main
from bpforge.oracle import ScriptedBackend
from bpforge.retrieval import build_index, default_corpus_dir
from conftest import FixtureResponder, write_dataset


@pytest.fixture(scope="module")
def index():
    return build_index(default_corpus_dir())


@pytest.fixture(scope="module")
def dataset(tmp_path_factory, fixtures):
    return write_dataset(tmp_path_factory.mktemp("dataset"), fixtures[:3])


# --- dataset ------------------------------------------------------------------


def test_load_dataset_manifest(dataset):
    manifest = load_dataset(dataset)
    assert [p.id for p in manifest.problems] == [101, 102, 103]
    problem = load_problem(manifest.problems[0], 127)
    assert len(problem.positives) == 6
    assert problem.rule_pos == "large total line length"


def test_missing_panel_names_problem_and_index(tmp_path, fixtures):
    root = write_dataset(tmp_path / "d", fixtures[:1])
    (root / "101" / "neg_4.png").unlink()
    with pytest.raises(ManifestError, match=r"101.*4"):
        load_dataset(root)


def test_empty_root_rejected(tmp_path):
    (tmp_path / "empty").mkdir()
    with pytest.raises(ManifestError):
        load_dataset(tmp_path / "empty")
    with pytest.raises(ManifestError):
        load_dataset(tmp_path / "missing")


def test_directory_layout_without_manifest(tmp_path, fixtures):
    root = write_dataset(tmp_path / "d", fixtures[:2])
    (root / "problems.json").unlink()
    for pid, fx in (("101", fixtures[0]), ("102", fixtures[1])):
        (root / pid / "rule_pos.txt").write_text(fx.problem.rule_pos, encoding="utf-8")
        (root / pid / "rule_neg.txt").write_text(fx.problem.rule_neg, encoding="utf-8")
    manifest = load_dataset(root)
    assert [p.id for p in manifest.problems] == [101, 102]
    assert manifest.problems[0].rule_pos == fixtures[0].problem.rule_pos


def test_problem_range_filter(dataset):
    manifest = load_dataset(dataset)
    assert [p.id for p in manifest.in_range((102, 103))] == [102, 103]
    assert [p.id for p in manifest.in_range(None)] == [101, 102, 103]


# --- config -------------------------------------------------------------------


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "task = solve\nseed = 9\nproblems = 2..40\nfallback_enabled = false\n# comment\nbo_evals = 12\n",
        encoding="utf-8",
    )
    cfg = load_config(path)
    assert cfg.task == "solve"
    assert cfg.seed == 9
    assert cfg.problems == (2, 40)
    assert cfg.fallback_enabled is False
    assert cfg.bo_evals == 12


def test_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("n_prgrams = 3\n", encoding="utf-8")
    with pytest.raises(InvalidInput, match="n_prgrams"):
        load_config(path)


def test_config_digest_tracks_semantic_fields_only():
    base = RunConfig()
    assert base.digest() == RunConfig().digest()
    assert base.digest() != replace(base, seed=1).digest()
    assert base.digest() != replace(base, bo_evals=14).digest()
    assert base.digest() == replace(base, cache_path="/elsewhere.jsonl").digest()


def test_config_validates_task_and_backend():
    with pytest.raises(InvalidInput):
        RunConfig(task="train")
    with pytest.raises(InvalidInput):
        RunConfig(backend="carrier-pigeon")


# --- runner -------------------------------------------------------------------


def _cfg(task, **kw):
    return RunConfig(task=task, n_programs_verify=2, n_programs_solve=2, **kw)


def test_run_verify_task(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("verify", seed=3), manifest, backend=backend, index=index)
    assert report.aggregate_accuracy == 1.0
    assert len(report.problem_records) == 3
    cats = report.per_category()
    assert set(cats) == {"size", "spatial", "number"}
    assert all(acc == 1.0 for acc, _ in cats.values())


def test_run_invert_task(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("invert", seed=3), manifest, backend=backend, index=index)
    assert report.aggregate_accuracy == 1.0


def test_run_eval_task_is_transduction_only(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3], correct_transduction=True))
    report = run(_cfg("eval", seed=3), manifest, backend=backend, index=index)
    assert report.aggregate_accuracy == 1.0
    for record in report.problem_records:
        assert all(f["path"] == "fallback" for f in record["folds"])
    assert all(r.purpose != "synthesis" for r in backend.requests)


def test_run_solve_task_with_curriculum(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    responder = FixtureResponder(fixtures[:3])
    backend = ScriptedBackend(responder)
    report = run(_cfg("solve", seed=3, problems=(101, 103)), manifest, backend=backend, index=index)
    assert report.solved_count == 3
    for record, fx in zip(report.problem_records, fixtures[:3]):
        assert record["solved"]
        assert record["top_rule"] == fx.problem.rule_pos
        assert record["n_hypotheses"] == 12
        assert len(record["scores"]) == 12


def test_run_solve_uses_default_range_when_unset(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("solve", seed=3), manifest, backend=backend, index=index)
    assert report.problem_records == []  # fixture ids live outside 2..100


# --- report -------------------------------------------------------------------


def test_report_emission_is_byte_stable(dataset, fixtures, index, tmp_path):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("verify", seed=3), manifest, backend=backend, index=index)
    first = emit_report(report, tmp_path / "a")
    second = emit_report(report, tmp_path / "b")
    for kind in ("table", "records"):
        assert first[kind].read_bytes() == second[kind].read_bytes()


def test_records_round_trip_reconstructs_aggregate(dataset, fixtures, index, tmp_path):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("verify", seed=3), manifest, backend=backend, index=index)
    written = emit_report(report, tmp_path)
    meta, records = load_records(written["records"])
    assert meta["config_digest"] == report.config_digest
    total_correct = sum(r["n_correct"] for r in records)
    total_preds = sum(r["n_predictions"] for r in records)
    assert total_correct / total_preds == report.aggregate_accuracy


def test_table_shows_category_rows(dataset, fixtures, index):
    manifest = load_dataset(dataset)
    backend = ScriptedBackend(FixtureResponder(fixtures[:3]))
    report = run(_cfg("verify", seed=3), manifest, backend=backend, index=index)
    table = render_table(report)
    assert "size" in table and "1.0000" in table
    assert "aggregate accuracy" in table


# --- CLI ----------------------------------------------------------------------


def test_cli_scripted_demo_run(dataset, tmp_path, capsys):
    rc = cli_main(
        ["verify", "--dataset", str(dataset), "--backend", "scripted",
         "--seed", "1", "--problems", "101..101", "--out", str(tmp_path / "out")]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "bpforge report" in out
    assert (tmp_path / "out" / "report.txt").exists()
    assert (tmp_path / "out" / "records.jsonl").exists()


def test_cli_exit_2_on_manifest_error(tmp_path):
    rc = cli_main(["verify", "--dataset", str(tmp_path / "nope"), "--backend", "scripted"])
    assert rc == 2


def test_cli_exit_3_on_missing_fixture(dataset, tmp_path):
    cache = tmp_path / "empty-cache.jsonl"
    cache.write_text("", encoding="utf-8")
    rc = cli_main(
        ["verify", "--dataset", str(dataset), "--backend", "replay",
         "--cache", str(cache), "--problems", "101..101", "--out", str(tmp_path / "out")]
    )
    assert rc == 3


def test_cli_config_file_applies(dataset, tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("problems = 101..101\nseed = 5\n", encoding="utf-8")
    rc = cli_main(
        ["verify", "--dataset", str(dataset), "--backend", "scripted",
         "--config", str(cfg_file), "--out", str(tmp_path / "out")]
    )
    assert rc == 0
    records = json.loads((tmp_path / "out" / "records.jsonl").read_text().splitlines()[0])
    assert records["seed"] == 5
