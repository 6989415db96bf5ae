"""Shared fixtures: scripted oracle responders and fixture problem tables."""

import re

import pytest

from bpforge.dsl.ast import Label
from bpforge.synthetic import fixture_suite

_POS_CONCEPT_RE = re.compile(r"example of the positive concept (.+?)\.", re.DOTALL)
_REPAIR_CONCEPT_RE = re.compile(r"positive examples of the concept (.+?) and \d", re.DOTALL)
_FINAL_CONCEPT_RE = re.compile(r"displays the concept '(.+?)'\?", re.DOTALL)

BAD_PROGRAM = "classify_image(image) :=\n  if size(components(image)) > 9000 then POSITIVE else NEGATIVE\n"


class FixtureResponder:
    """Deterministic oracle script over a table of fixture problems.

    Knows the good program for every fixture rule (both sides), can inject
    a sub-perfect candidate to provoke exactly one repair, can answer
    transduction correctly or with a constant, and can stream scripted
    hypotheses for the solution task.
    """

    def __init__(
        self,
        fixtures,
        inject_bad_for=(),
        repair_works=True,
        garbage_synthesis=False,
        correct_transduction=False,
        transduce_default="```NEGATIVE```",
        hypothesis_fillers=5,
    ):
        self.fixtures = list(fixtures)
        self.inject_bad_for = set(inject_bad_for)
        self.repair_works = repair_works
        self.garbage_synthesis = garbage_synthesis
        self.correct_transduction = correct_transduction
        self.transduce_default = transduce_default
        self.hypothesis_fillers = hypothesis_fillers
        self.hypothesis_calls: dict = {}

        self.programs_by_rule = {}
        self.label_by_rule_digest = {}
        self.fixture_by_digest = {}
        for fx in self.fixtures:
            problem = fx.problem
            self.programs_by_rule[problem.rule_pos] = fx.program_source
            self.programs_by_rule[problem.rule_neg] = fx.inverse_program_source
            if fx.decoy_rule and fx.decoy_rule not in self.programs_by_rule:
                self.programs_by_rule[fx.decoy_rule] = (
                    "param count_threshold : int in (1, 12)\n"
                    "classify_image(image) :=\n"
                    "  if size(components(image)) > count_threshold then POSITIVE else NEGATIVE\n"
                )
            for img in problem.positives:
                d = img.digest()
                self.fixture_by_digest[d] = fx
                self.label_by_rule_digest[(problem.rule_pos, d)] = Label.POSITIVE
                self.label_by_rule_digest[(problem.rule_neg, d)] = Label.NEGATIVE
            for img in problem.negatives:
                d = img.digest()
                self.fixture_by_digest.setdefault(d, fx)
                self.label_by_rule_digest[(problem.rule_pos, d)] = Label.NEGATIVE
                self.label_by_rule_digest[(problem.rule_neg, d)] = Label.POSITIVE

    def __call__(self, req):
        handler = getattr(self, f"_{req.purpose}")
        return handler(req)

    def _stubs(self, req):
        return "<objects>figure</objects>"

    def _synthesis(self, req):
        if self.garbage_synthesis:
            return "After much thought I believe no program is needed here."
        text = "\n".join(t.text for t in req.turns)
        m = _POS_CONCEPT_RE.search(text)
        rule = m.group(1) if m else ""
        source = self.programs_by_rule.get(rule)
        if source is None:
            return "I could not come up with a usable program for this rule."
        blocks = [f"```\n{source}```"]
        if rule in self.inject_bad_for:
            blocks.append(f"```\n{BAD_PROGRAM}```")
        return "\n\n".join(blocks)

    def _repair(self, req):
        if not self.repair_works:
            return "I am unable to repair this program."
        text = "\n".join(t.text for t in req.turns)
        m = _REPAIR_CONCEPT_RE.search(text)
        source = self.programs_by_rule.get(m.group(1)) if m else None
        if source is None:
            return "I am unable to repair this program."
        return f"```\n{source}```"

    def _transduction(self, req):
        if self.correct_transduction:
            digest = req.turns[-1].images[0].digest
            text = "\n".join(t.text for t in req.turns)
            m = _FINAL_CONCEPT_RE.search(text)
            label = self.label_by_rule_digest.get((m.group(1) if m else "", digest))
            if label is not None:
                return f"```{label.value}```"
        return self.transduce_default

    def _hypotheses(self, req):
        digest = next(a.digest for t in req.turns for a in t.images)
        fx = self.fixture_by_digest[digest]
        call_index = self.hypothesis_calls.get(fx.problem.id, 0)
        self.hypothesis_calls[fx.problem.id] = call_index + 1
        if call_index == 0:
            lead = [fx.decoy_rule, fx.problem.rule_pos] if fx.decoy_rule else [fx.problem.rule_pos]
            fillers = [f"imaginary pattern {fx.problem.id}-{k}" for k in range(6 - len(lead))]
            rules = lead + fillers
        else:
            rules = [f"imaginary pattern {fx.problem.id}-x{k}" for k in range(6)]
        return "\n".join(f"<rule>{r}</rule>" for r in rules)


@pytest.fixture(scope="session")
def fixtures():
    return fixture_suite()


@pytest.fixture(scope="session")
def fixtures_with_ambiguous():
    return fixture_suite(include_ambiguous=True)


def write_dataset(root, fixture_problems):
    """Materialize fixture problems as an on-disk dataset (PNG + manifest)."""
    import json

    from bpforge.raster.io import save_panel

    root.mkdir(parents=True, exist_ok=True)
    records = []
    for fx in fixture_problems:
        problem = fx.problem
        pdir = root / str(problem.id)
        pdir.mkdir(exist_ok=True)
        record = {
            "id": problem.id,
            "positives": [],
            "negatives": [],
            "rule_pos": problem.rule_pos,
            "rule_neg": problem.rule_neg,
            "category": problem.category,
        }
        for i, img in enumerate(problem.positives):
            rel = f"{problem.id}/pos_{i}.png"
            save_panel(img, root / rel)
            record["positives"].append(rel)
        for i, img in enumerate(problem.negatives):
            rel = f"{problem.id}/neg_{i}.png"
            save_panel(img, root / rel)
            record["negatives"].append(rel)
        records.append(record)
    (root / "problems.json").write_text(json.dumps(records, indent=1), encoding="utf-8")
    return root
