"""Run configuration: defaults, then a JSON config file, then budget env vars, then flags."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BraidContactError
from .invariants import DEFAULT_AUG_BUDGET, DEFAULT_WORD_BUDGET, RNG_ALGORITHM
from .morse.strands import MorseTolerances
from .ncalg import Ring

ENV_BUDGETS = {
    "aug_budget": "BRAIDCONTACT_AUG_BUDGET",
    "word_budget": "BRAIDCONTACT_WORD_BUDGET",
}


@dataclass(frozen=True)
class RunConfig:
    ring: str = "Z"
    q: int = 2
    L: int = 2
    degree: int = 1
    aug_budget: int = DEFAULT_AUG_BUDGET
    word_budget: int = DEFAULT_WORD_BUDGET
    seed: int = 0
    trials: int = 10
    max_conj_len: int = 4
    workers: int = 1
    check_d2: bool = True
    format: str = "json"
    morse: MorseTolerances = field(default_factory=MorseTolerances)

    def __post_init__(self):
        Ring.parse(self.ring)  # raises on a bad ring or non-prime modulus
        Ring(self.q)
        if self.aug_budget <= 0 or self.word_budget <= 0:
            raise BraidContactError("budgets must be positive")
        if self.format not in ("json", "text"):
            raise BraidContactError(f"unknown output format {self.format!r}")
        if self.L < 0 or self.trials < 0 or self.max_conj_len < 0 or self.workers < 1:
            raise BraidContactError("L, trials and max_conj_len must be >= 0; workers >= 1")

    @property
    def ring_obj(self) -> Ring:
        return Ring.parse(self.ring)

    def to_json(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name != "morse"}
        out["morse"] = self.morse.to_json()
        out["rng"] = RNG_ALGORITHM
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}
_MORSE_FIELDS = {f.name for f in dataclasses.fields(MorseTolerances)}


def load_config(path: str | Path | None = None, overrides: dict | None = None,
                environ: dict | None = None) -> RunConfig:
    values: dict = {}
    morse: dict = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise BraidContactError(f"cannot read config {path}: {exc}") from exc
        unknown = set(data) - _FIELDS
        if unknown:
            raise BraidContactError(f"unknown config keys {sorted(unknown)}")
        morse = dict(data.pop("morse", {}))
        bad = set(morse) - _MORSE_FIELDS
        if bad:
            raise BraidContactError(f"unknown morse tolerance keys {sorted(bad)}")
        values.update(data)
    env = os.environ if environ is None else environ
    for key, var in ENV_BUDGETS.items():
        if env.get(var):
            values[key] = int(env[var])
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in _MORSE_FIELDS:
            morse[key] = value
        else:
            values[key] = value
    return RunConfig(**values, morse=MorseTolerances(**morse))
