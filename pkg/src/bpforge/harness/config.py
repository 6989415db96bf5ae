"""Run configuration: documented defaults, file loading, semantic digest."""

import hashlib
from dataclasses import dataclass, fields, replace
from pathlib import Path

from ..errors import InvalidInput

TASKS = ("verify", "solve", "invert", "eval")
BACKENDS = ("live", "replay", "scripted")


@dataclass(frozen=True)
class RunConfig:
    task: str = "verify"
    n_programs_verify: int = 10  # programs sampled per rule (verification)
    n_programs_solve: int = 5  # reduced budget for the solution task
    n_rules: int = 6  # rules requested per hypothesis call
    bo_evals: int = 15  # optimization budget per program
    bo_init: int = 5  # low-discrepancy initial design within that budget
    temperature_rules: float = 1.0
    temperature_code: float = 0.5
    accept_threshold: float = 0.9
    repair_threshold: float = 1.0
    binarize_threshold: int = 127
    seed: int = 0
    backend: str = "scripted"
    cache_path: str | None = None
    problems: tuple[int, int] | None = None  # inclusive id range
    fallback_enabled: bool = True
    programs_enabled: bool = True
    corpus_dir: str | None = None

    def __post_init__(self):
        if self.task not in TASKS:
            raise InvalidInput(f"unknown task {self.task!r}; expected one of {TASKS}")
        if self.backend not in BACKENDS:
            raise InvalidInput(f"unknown backend {self.backend!r}; expected one of {BACKENDS}")

    def n_programs(self) -> int:
        return self.n_programs_solve if self.task == "solve" else self.n_programs_verify

    def digest(self) -> str:
        """Hash of the semantic fields; paths and credentials don't count."""
        skip = {"cache_path", "corpus_dir"}
        parts = [
            f"{f.name}={getattr(self, f.name)!r}"
            for f in fields(self)
            if f.name not in skip
        ]
        return hashlib.sha256("|".join(parts).encode("utf-8")).hexdigest()[:16]


_BOOL = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def _parse_value(name: str, text: str):
    text = text.strip()
    if name == "problems":
        lo, _, hi = text.partition("..")
        return (int(lo), int(hi))
    if name in ("cache_path", "corpus_dir", "task", "backend"):
        return text
    if text.lower() in _BOOL:
        return _BOOL[text.lower()]
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def load_config(path, base: RunConfig | None = None) -> RunConfig:
    """Read a flat ``key = value`` config file over the defaults."""
    base = base or RunConfig()
    known = {f.name for f in fields(RunConfig)}
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in known:
            raise InvalidInput(f"{path}:{lineno}: unknown config key {key!r}")
        overrides[key] = _parse_value(key, value)
    return replace(base, **overrides)
