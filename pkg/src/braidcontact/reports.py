"""JSON report builders shared by the CLI and the acceptance suite."""

from __future__ import annotations

import json
import warnings

from . import __version__
from .braid import BraidWord, closure_permutation, serialize_braid
from .config import RunConfig
from .dga import DGA, ClosureNotKnotWarning, braid_dga, check_d_squared, unknot_dga
from .invariants import (
    RNG_ALGORITHM, aug_count, conjugation_experiment, enumerate_augmentations, homology_ranks,
    make_rng,
)
from .morse import (
    StrandSystem, closed_form_system, generator_inventory, morse_complex, radial_profile,
    random_generic_system,
)
from .phi import phi_braid


def dumps(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def header(cfg: RunConfig, command: str) -> dict:
    return {
        "tool": "braidcontact",
        "version": __version__,
        "command": command,
        "config_hash": cfg.digest(),
        "seed": cfg.seed,
        "rng": RNG_ALGORITHM,
    }


def _braid_info(w: BraidWord) -> dict:
    perm = closure_permutation(w)
    return {"braid": serialize_braid(w), "closure_permutation": str(perm),
            "closure_components": perm.cycle_count}


def _braid_dga(w: BraidWord, cfg: RunConfig, check: bool | None = None) -> tuple[DGA, list[str]]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ClosureNotKnotWarning)
        d = braid_dga(w, cfg.ring_obj, check=cfg.check_d2 if check is None else check)
    return d, [str(c.message) for c in caught if issubclass(c.category, ClosureNotKnotWarning)]


def dga_report(w: BraidWord, cfg: RunConfig) -> dict:
    d, notes = _braid_dga(w, cfg)
    return {"header": header(cfg, "dga"), **_braid_info(w), "warnings": notes, "dga": d.to_json()}


def phi_report(w: BraidWord, cfg: RunConfig) -> dict:
    return {"header": header(cfg, "phi"), **_braid_info(w), "phi": phi_braid(w).to_json()}


def check_report(d: DGA, cfg: RunConfig, source: str) -> dict:
    rep = check_d_squared(d)
    return {"header": header(cfg, "check"), "source": source, "kind": d.kind, **rep.to_json()}


def aug_report(d: DGA, cfg: RunConfig, source: str, listing: bool = False) -> dict:
    out = {"header": header(cfg, "aug"), "source": source, "kind": d.kind, "q": cfg.q}
    if listing:
        augs = enumerate_augmentations(d, cfg.q, cfg.aug_budget, cfg.workers)
        out["aug_count"] = len(augs)
        out["augmentations"] = [a.to_json()["values"] for a in augs]
    else:
        out["aug_count"] = aug_count(d, cfg.q, cfg.aug_budget, cfg.workers)
    return out


def homology_report(d: DGA, cfg: RunConfig, source: str) -> dict:
    rep = homology_ranks(d, cfg.q, cfg.degree, cfg.L, cfg.word_budget)
    return {"header": header(cfg, "homology"), "source": source, "kind": d.kind,
            "homology": [rep.to_json()]}


def conj_report(w: BraidWord, cfg: RunConfig, homology: bool = False) -> dict:
    """Augmentation count, optional truncated homology, and a conjugation experiment."""
    exp = conjugation_experiment(w, cfg.trials, cfg.q, cfg.seed, cfg.max_conj_len,
                                 cfg.aug_budget, cfg.workers)
    hom = []
    if homology:
        d, _ = _braid_dga(w, cfg, check=False)
        hom.append(homology_ranks(d, cfg.q, cfg.degree, cfg.L, cfg.word_budget).to_json())
    return {"header": header(cfg, "conj-test"), "braid": serialize_braid(w), "q": cfg.q,
            "aug_count": exp.base_count, "homology": hom, "experiments": [exp.to_json()]}


def unknot_report(cfg: RunConfig, homology: bool = False) -> dict:
    d = unknot_dga()
    out = {"header": header(cfg, "unknot"), "dga": d.to_json(),
           **check_d_squared(d).to_json()}
    if homology:
        out["homology"] = [homology_ranks(d, cfg.q, cfg.degree, cfg.L, cfg.word_budget).to_json()]
    return out


def morse_report(system: StrandSystem, cfg: RunConfig, source: str,
                 inventory: bool = True) -> dict:
    tol = cfg.morse
    pairs = []
    for i, j in system.pairs():
        profile = radial_profile(system, i, j, tol)
        entry = {"profile": profile.to_json()}
        entry.update(morse_complex(system.diff(i, j), 2, tol).to_json())
        pairs.append(entry)
    out = {"header": header(cfg, "morse"), "source": source, "system": system.to_json(),
           "tolerances": tol.to_json(), "pairs": pairs}
    if inventory:
        inv = generator_inventory(system, tol) if system.n >= 2 else {}
        out["inventory"] = {name: c.to_json() for name, c in inv.items()}
        out["inventory_size"] = len(inv)
    return out


def system_from_source(cfg: RunConfig, path: str | None = None,
                       random_n: int | None = None) -> tuple[StrandSystem, str]:
    if path is not None:
        with open(path) as fh:
            return StrandSystem.from_json(json.load(fh), cfg.morse), f"file:{path}"
    if random_n is not None:
        rng = make_rng(cfg.seed)
        return random_generic_system(random_n, rng, tol=cfg.morse), f"random:n={random_n}"
    return closed_form_system(), "closed-form"
