"""
Command-line interface.

    braidcontact dga "2: 1" --ring Z
    braidcontact phi "3: 1 -2 1"
    braidcontact check "3: 1 -2 1"
    braidcontact aug "3: 1 2" --q 3
    braidcontact homology --dga-file my.json --degree 1 --L 3
    braidcontact conj-test "3: 1 2 1 2" --trials 20 --seed 1
    braidcontact unknot --homology --degree 1
    braidcontact morse --random 3 --seed 4

Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .braid import parse_braid
from .config import ENV_BUDGETS, load_config
from .dga import DGA
from .errors import BraidContactError
from .reports import (
    _braid_dga, aug_report, check_report, conj_report, dga_report, dumps, homology_report,
    morse_report, phi_report, system_from_source, unknot_report,
)

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration (flags override --config; "
                             f"budget env vars {', '.join(ENV_BUDGETS.values())})")
    g.add_argument("--config", metavar="FILE", help="JSON config file")
    g.add_argument("--format", choices=("json", "text"), help="output format (default json)")
    g.add_argument("--ring", metavar="R", help="coefficient ring: Z or F_p (default Z)")
    g.add_argument("--q", type=int, metavar="P", help="prime for F_q computations (default 2)")
    g.add_argument("--L", type=int, metavar="N", help="word-length cutoff (default 2)")
    g.add_argument("--degree", type=int, metavar="D", help="homological degree (default 1)")
    g.add_argument("--seed", type=int, help="RNG seed (default 0)")
    g.add_argument("--aug-budget", type=int, metavar="N", help="max assignments scanned")
    g.add_argument("--word-budget", type=int, metavar="N", help="max words per chain basis")
    g.add_argument("--workers", type=int, metavar="N", help="threads for augmentation scans")
    g.add_argument("--no-check", dest="check_d2", action="store_const", const=False,
                   help="skip the d^2 = 0 assertion when building braid DGAs")
    return p


def _target(p: argparse.ArgumentParser) -> None:
    p.add_argument("braid", nargs="?", help='braid word, e.g. "3: 1 -2 1"')
    p.add_argument("--dga-file", metavar="FILE", help="custom DGA in JSON instead of a braid")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="braidcontact",
        description="Braid DGAs, augmentations, truncated homology and Morse data on T^2.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("dga", parents=[common], help="braid DGA as JSON")
    p.add_argument("braid", help='braid word, e.g. "2: 1"')

    p = sub.add_parser("phi", parents=[common], help="generator table of phi_B")
    p.add_argument("braid")

    p = sub.add_parser("check", parents=[common], help="verify d^2 = 0")
    _target(p)

    p = sub.add_parser("aug", parents=[common], help="count augmentations into F_q")
    _target(p)
    p.add_argument("--list", action="store_true", help="list every augmentation")

    p = sub.add_parser("homology", parents=[common], help="truncated homology rank over F_q")
    _target(p)

    p = sub.add_parser("conj-test", parents=[common],
                       help="augmentation counts under random conjugation")
    p.add_argument("braid")
    p.add_argument("--trials", type=int, help="number of random conjugators (default 10)")
    p.add_argument("--max-conj-len", type=int, help="max conjugator length (default 4)")
    p.add_argument("--homology", action="store_true", help="also report truncated homology")

    p = sub.add_parser("unknot", parents=[common], help="the unknot DGA over F_2")
    p.add_argument("--homology", action="store_true", help="also report truncated homology")

    p = sub.add_parser("morse", parents=[common], help="critical points and Morse complexes")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--system", metavar="FILE", help="strand system JSON")
    src.add_argument("--random", type=int, metavar="N", help="seeded random generic N-strand system")
    p.add_argument("--no-inventory", action="store_true", help="skip the generator inventory")
    for name, help_ in (("crit", "gradient residual"), ("nondeg", "nondegeneracy bound"),
                        ("capture", "capture radius"), ("separation", "strand separation"),
                        ("flow-error", "integrator error per unit arclength")):
        p.add_argument(f"--tol-{name}", type=float, help=f"{help_} tolerance")
    p.add_argument("--samples", type=int, help="radial-profile samples (default 2048)")
    p.add_argument("--start-offset", type=float, help="initial displacement off a saddle (default 1e-3)")
    p.add_argument("--max-steps", type=int, help="integrator step limit per flow line (default 200000)")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    keys = ("format", "ring", "q", "L", "degree", "seed", "aug_budget", "word_budget",
            "workers", "check_d2", "trials", "max_conj_len", "samples", "start_offset", "max_steps")
    out = {k: getattr(args, k, None) for k in keys}
    for name in ("crit", "nondeg", "capture", "separation", "flow_error"):
        out[name] = getattr(args, f"tol_{name}", None)
    return out


def _resolve_dga(args, cfg) -> tuple[DGA, str]:
    if args.dga_file and args.braid:
        raise BraidContactError("give a braid or --dga-file, not both")
    if args.dga_file:
        try:
            with open(args.dga_file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise BraidContactError(f"cannot read {args.dga_file}: {exc}") from exc
        return DGA.from_json(data), f"file:{args.dga_file}"
    if not args.braid:
        raise BraidContactError("a braid word or --dga-file is required")
    w = parse_braid(args.braid)
    d, _ = _braid_dga(w, cfg, check=False)
    return d, f"braid:{args.braid.strip()}"


def _text(report: dict) -> str:
    cmd = report["header"]["command"]
    lines = []
    if "braid" in report:
        lines.append(f"braid: {report['braid']}")
    if cmd == "dga":
        dga = report["dga"]
        for name, poly in dga["differential"].items():
            lines.append(f"d {name} = {_poly_text(poly)}")
        lines.extend(f"warning: {w}" for w in report["warnings"])
    elif cmd == "phi":
        for name, poly in report["phi"].items():
            lines.append(f"{name} -> {_poly_text(poly)}")
    elif cmd in ("check", "unknot"):
        if cmd == "unknot":
            for name, poly in report["dga"]["differential"].items():
                lines.append(f"d {name} = {_poly_text(poly)}")
        lines.append(report["verdict"])
        for name, poly in report["violations"].items():
            lines.append(f"  d^2 {name} = {_poly_text(poly)}")
    elif cmd == "aug":
        lines.append(f"augmentations into F_{report['q']}: {report['aug_count']}")
        for values in report.get("augmentations", []):
            lines.append("  " + json.dumps(values, sort_keys=True))
    elif cmd == "conj-test":
        exp = report["experiments"][0]
        lines.append(f"augmentations into F_{report['q']}: {report['aug_count']}")
        lines.append(f"conjugates tested: {len(exp['trials'])}, violations: {len(exp['violations'])}")
    elif cmd == "morse":
        for pair in report["pairs"]:
            i, j = pair["pair"]
            idx = sorted(c["index"] for c in pair["critical_points"])
            lines.append(f"g_{i}{j}: critical indices {idx}, homology {tuple(pair['homology'])}")
        if "inventory_size" in report:
            lines.append(f"inventory: {report['inventory_size']} labelled points")
    for h in report.get("homology", []):
        stable = {True: "stable", False: "not stable", None: "stability unknown"}[h["stable"]]
        lines.append(f"H_{h['degree']} over F_{h['q']} (L={h['L']}): rank {h['rank']} ({stable})")
    return "\n".join(lines) + "\n"


def _poly_text(poly: list[dict]) -> str:
    if not poly:
        return "0"
    parts = []
    for t in poly:
        c, word = t["coeff"], " ".join(t["word"])
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = word if mag == 1 and word else (f"{mag} {word}".strip())
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(f" {s} {b}" for s, b in parts[1:])


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = load_config(args.config, _overrides(args))
    cmd = args.command
    if cmd == "dga":
        report = dga_report(parse_braid(args.braid), cfg)
    elif cmd == "phi":
        report = phi_report(parse_braid(args.braid), cfg)
    elif cmd == "check":
        d, source = _resolve_dga(args, cfg)
        report = check_report(d, cfg, source)
    elif cmd == "aug":
        d, source = _resolve_dga(args, cfg)
        report = aug_report(d, cfg, source, listing=args.list)
    elif cmd == "homology":
        d, source = _resolve_dga(args, cfg)
        report = homology_report(d, cfg, source)
    elif cmd == "conj-test":
        report = conj_report(parse_braid(args.braid), cfg, homology=args.homology)
    elif cmd == "unknot":
        report = unknot_report(cfg, homology=args.homology)
    else:
        try:
            system, source = system_from_source(cfg, args.system, args.random)
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise BraidContactError(f"cannot read strand system {args.system}: {exc}") from exc
        report = morse_report(system, cfg, source, inventory=not args.no_inventory)
    text = dumps(report) if cfg.format == "json" else _text(report)
    status = 0
    if cmd == "check" and report["violations"]:
        status = 1
    return status, text


def main(argv: list[str] | None = None) -> int:
    try:
        status, text = run(argv)
    except BraidContactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
