"""Report assembly and emission.

Two artifacts per run: a human-readable table and machine-readable
per-problem records (JSONL). Both are byte-stable for identical reports;
nothing time- or path-dependent is written.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class Report:
    task: str
    seed: int
    backend_kind: str
    config_digest: str
    problem_records: list[dict] = field(default_factory=list)

    @property
    def aggregate_accuracy(self) -> float | None:
        totals = self._totals()
        if totals is None:
            return None
        correct, preds = totals
        return correct / preds if preds else 0.0

    def _totals(self):
        if self.task == "solve":
            return None
        correct = sum(r.get("n_correct", 0) for r in self.problem_records)
        preds = sum(r.get("n_predictions", 0) for r in self.problem_records)
        return correct, preds

    @property
    def solved_count(self) -> int | None:
        if self.task != "solve":
            return None
        return sum(1 for r in self.problem_records if r.get("solved"))

    def per_category(self) -> dict:
        """category -> (accuracy, n_problems) over problems that carry a tag."""
        buckets: dict = {}
        for r in self.problem_records:
            cat = r.get("category")
            if not cat:
                continue
            correct, preds, n = buckets.get(cat, (0, 0, 0))
            buckets[cat] = (correct + r.get("n_correct", 0), preds + r.get("n_predictions", 0), n + 1)
        return {
            cat: ((c / p if p else 0.0), n)
            for cat, (c, p, n) in sorted(buckets.items())
        }


def render_table(report: Report) -> str:
    lines = ["bpforge report", ""]
    lines.append(
        f"task: {report.task}   seed: {report.seed}   backend: {report.backend_kind}   config: {report.config_digest}"
    )
    n = len(report.problem_records)
    if report.task == "solve":
        lines.append(f"problems: {n}   solved: {report.solved_count}/{n}")
        lines.append("")
        lines.append(f"{'id':>4}  {'solved':6}  {'score':>6}  top rule")
        for r in report.problem_records:
            solved = "yes" if r.get("solved") else "no"
            score = r.get("top_score")
            score_text = f"{score:.4f}" if score is not None else "-"
            lines.append(f"{r['id']:>4}  {solved:6}  {score_text:>6}  {r.get('top_rule') or '-'}")
    else:
        correct, preds = report._totals()
        aborted = sum(r.get("n_aborted", 0) for r in report.problem_records)
        acc = f"{report.aggregate_accuracy:.4f}" if preds else "-"
        lines.append(f"problems: {n}   aggregate accuracy: {acc} ({correct}/{preds})   aborted folds: {aborted}")
        cats = report.per_category()
        if cats:
            lines.append("")
            lines.append(f"{'category':10}  {'accuracy':>8}  {'problems':>8}")
            for cat, (acc_value, count) in cats.items():
                lines.append(f"{cat:10}  {acc_value:>8.4f}  {count:>8}")
        lines.append("")
        lines.append(f"{'id':>4}  {'category':10}  {'accuracy':>8}  {'correct':>9}  paths")
        for r in report.problem_records:
            preds_n = r.get("n_predictions", 0)
            acc_text = f"{(r.get('n_correct', 0) / preds_n):.4f}" if preds_n else "-"
            paths = ",".join(f.get("path", "?") for f in r.get("folds", []))
            lines.append(
                f"{r['id']:>4}  {(r.get('category') or '-'):10}  {acc_text:>8}  "
                f"{r.get('n_correct', 0):>4}/{preds_n:<4}  {paths}"
            )
    return "\n".join(lines) + "\n"


def emit_report(report: Report, out_dir, formats=("table", "records")) -> dict:
    """Write the requested artifacts; returns {format: path}."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    if "table" in formats:
        path = out_dir / "report.txt"
        path.write_text(render_table(report), encoding="utf-8")
        written["table"] = path
    if "records" in formats:
        path = out_dir / "records.jsonl"
        meta = {
            "kind": "run",
            "task": report.task,
            "seed": report.seed,
            "backend": report.backend_kind,
            "config_digest": report.config_digest,
        }
        with path.open("w", encoding="utf-8") as fh:
            fh.write(json.dumps(meta, sort_keys=True) + "\n")
            for record in report.problem_records:
                fh.write(json.dumps({"kind": "problem", **record}, sort_keys=True) + "\n")
        written["records"] = path
    return written


def load_records(path):
    """Re-parse an emitted records file into (run metadata, problem records)."""
    meta = None
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if record.get("kind") == "run":
            meta = record
        else:
            records.append(record)
    return meta, records
