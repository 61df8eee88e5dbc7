"""``posettop`` command line: homology, comparison, loops, mining and built-in posets."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import catalog
from .comparison import Comparison
from .cubical import DEFAULT_CAP, cubical_homology
from .errors import (
    CapExceeded,
    CycleDetected,
    DuplicateLabel,
    InternalInvariantViolation,
    InvalidLoop,
    NotAComplex,
    ParseError,
    PosetTopError,
    UnknownLabel,
)
from .homotopy import format_loop, hurewicz, loop_from_dict, null_homotopy_search, parse_loop, validate_loop
from .io import poset_from_json, poset_from_text, load_poset
from .mining import mine
from .poset import Poset
from .simplicial import order_complex, simplicial_homology

log = logging.getLogger("posettop")

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3, 4
SCHEMA = 1


@dataclass
class RunConfig:
    input: str | None = None
    builtin: str | None = None
    max_dim: int = 2
    cap: int = DEFAULT_CAP
    format: str = "text"
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise ValueError("cap must be positive")
        if self.max_dim < 0:
            raise ValueError("max-dim must be >= 0")
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def load(self) -> Poset:
        if self.builtin:
            return catalog.builtin(self.builtin)
        if self.input is None:
            raise ParseError("no input poset: pass --input or --builtin")
        if self.input == "-":
            text = sys.stdin.read()
            return poset_from_json(text) if text.lstrip().startswith("{") else poset_from_text(text)
        return load_poset(self.input)


def table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))
    else:
        print(text)


def cmd_homology(cfg: RunConfig, theory: str = "both") -> int:
    P = cfg.load()
    out: dict = {"command": "homology", "theory": theory, "max_dim": cfg.max_dim}
    cols = {}
    if theory in ("cube", "both"):
        cols["cube"] = cubical_homology(P, cfg.max_dim, cfg.cap)
    if theory in ("simpl", "both"):
        cols["simpl"] = simplicial_homology(order_complex(P), cfg.max_dim)
    out["degrees"] = [
        {"degree": p, **{k: v[p].to_dict() for k, v in cols.items()}} for p in range(cfg.max_dim + 1)
    ]
    header = ["degree"]
    for k in cols:
        header += [f"betti_{k}", f"torsion_{k}", f"H_{k}"]
    rows = []
    for p in range(cfg.max_dim + 1):
        row = [p]
        for v in cols.values():
            row += [v[p].betti, list(v[p].torsion), str(v[p])]
        rows.append(row)
    _emit(cfg, out, table(header, rows))
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    P = cfg.load()
    cmp = Comparison(P, cfg.cap)
    maps = [cmp.induced_map(p) for p in range(cfg.max_dim + 1)]
    for p in range(1, cfg.max_dim + 2):
        if not cmp.chain_map_holds(p):
            raise InternalInvariantViolation(f"psi fails the chain-map identity in degree {p}")
    header = ["degree", "betti_cube", "torsion_cube", "betti_simpl", "torsion_simpl", "psi_star"]
    rows = [[m.degree, m.cube_group.betti, list(m.cube_group.torsion), m.simpl_group.betti,
             list(m.simpl_group.torsion), m.status] for m in maps]
    _emit(cfg, {"command": "compare", "degrees": [m.to_dict() for m in maps]}, table(header, rows))
    return EXIT_OK


def _read_loop(P: Poset, literal: str):
    text = literal.strip()
    if text.startswith("{"):
        try:
            return loop_from_dict(P, json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad loop JSON: {exc}") from exc
    return parse_loop(P, text)


def cmd_loop(cfg: RunConfig, action: str, literal: str, radius_cap: int = 3, step_cap: int = 10**5) -> int:
    P = cfg.load()
    f = _read_loop(P, literal)
    out: dict = {"command": "loop", "action": action, "loop": f.to_dict(P)}
    if action == "validate":
        rep = validate_loop(P, f)
        out.update(valid=rep.valid, violations=rep.violations)
        text = "valid" if rep.valid else "invalid\n" + "\n".join(f"  {v}" for v in rep.violations)
        _emit(cfg, out, text)
        return EXIT_OK
    rep = validate_loop(P, f)
    if not rep:
        raise InvalidLoop("; ".join(rep.violations))
    if action == "hurewicz":
        h = hurewicz(P, f)
        out.update(
            chain=[{"cube": [P.label(x) for x in c], "coeff": k} for c, k in sorted(h.chain)],
            coords=list(h.coords),
            group=h.group.to_dict(),
        )
        terms = " ".join(f"{'+' if k > 0 else '-'}{abs(k) if abs(k) != 1 else ''}({','.join(P.label(x) for x in c)})"
                         for c, k in sorted(h.chain)) or "0"
        _emit(cfg, out, f"chain   {terms}\nH_1     {h.group}\ncoords  {list(h.coords)}")
        return EXIT_OK
    cert = null_homotopy_search(P, f, radius_cap, step_cap)
    if cert is None:
        out.update(result="NotFoundWithinBounds", radius_cap=radius_cap, step_cap=step_cap)
        _emit(cfg, out, f"NotFoundWithinBounds (radius cap {radius_cap}, step cap {step_cap})")
    else:
        out.update(result="certificate", rows=[r.to_dict(P) for r in cert.rows])
        _emit(cfg, out, "\n".join(format_loop(P, r) for r in cert.rows))
    return EXIT_OK


def cmd_mine(cfg: RunConfig, trials: int, size: int, density: float, plant: Sequence[str] = ()) -> int:
    planted = {}
    for item in plant:
        name, _, at = item.partition("@")
        try:
            planted[int(at)] = catalog.builtin(name)
        except ValueError as exc:
            raise ParseError(f"--plant expects NAME@TRIAL, got {item!r}") from exc
    report = mine(trials, size, density, cfg.seed, cfg.max_dim, cfg.cap, cfg.threads, planted)
    if report.skipped:
        log.warning("%d trial(s) skipped after hitting the cube cap", len(report.skipped))
    _emit(cfg, {"command": "mine", **report.to_dict()}, report.to_text())
    return EXIT_OK


def cmd_gen(name: str) -> int:
    print(json.dumps(catalog.builtin(name).to_dict(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", "-i", help="poset file (JSON or 'x < y' lines); '-' reads stdin")
    src.add_argument("--builtin", "-b", help="built-in poset: " + ", ".join(catalog.NAMES))
    common.add_argument("--max-dim", type=int, default=2)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum cubes enumerated per dimension")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help="default: $POSETTOP_THREADS or 1")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="posettop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common], help="Betti numbers and torsion")
    p.add_argument("--theory", choices=("cube", "simpl", "both"), default="both")

    sub.add_parser("compare", parents=[common], help="cubical vs simplicial homology and psi_*")

    p = sub.add_parser("loop", parents=[common], help="validate, map to H_1, or contract a loop")
    p.add_argument("action", choices=("validate", "hurewicz", "reduce"))
    p.add_argument("loop", help="literal like 'b > d < a > c < b' or loop JSON")
    p.add_argument("--radius-cap", type=int, default=3)
    p.add_argument("--step-cap", type=int, default=10**5)

    p = sub.add_parser("mine", parents=[common], help="look for homology mismatches on random posets")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--size", type=int, default=6)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--plant", action="append", default=[], metavar="NAME@TRIAL",
                   help="replace a trial's random poset by a built-in one")

    p = sub.add_parser("gen", help="print a built-in poset as JSON")
    p.add_argument("name")
    return parser


def _threads(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("POSETTOP_THREADS")
    return int(env) if env else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        if args.command == "gen":
            return cmd_gen(args.name)
        cfg = RunConfig(args.input, args.builtin, args.max_dim, args.cap, args.format, args.seed,
                        _threads(args.threads))
        if args.command == "homology":
            return cmd_homology(cfg, args.theory)
        if args.command == "compare":
            return cmd_compare(cfg)
        if args.command == "loop":
            return cmd_loop(cfg, args.action, args.loop, args.radius_cap, args.step_cap)
        return cmd_mine(cfg, args.trials, args.size, args.density, args.plant)
    except (ParseError, UnknownLabel, DuplicateLabel, CycleDetected, InvalidLoop) as exc:
        return _fail(EXIT_PARSE, exc)
    except CapExceeded as exc:
        return _fail(EXIT_CAP, exc)
    except (InternalInvariantViolation, NotAComplex) as exc:
        return _fail(EXIT_INVARIANT, f"internal invariant failed: {exc}")
    except (PosetTopError, ValueError, OSError) as exc:
        return _fail(EXIT_ERROR, exc)


def _fail(code: int, msg) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
