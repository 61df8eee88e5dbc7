"""Search random posets for disagreements between cubical and simplicial homology."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .cubical import DEFAULT_CAP, cubical_homology
from .errors import CapExceeded
from .linalg import HomologyGroup
from .poset import Poset, random_poset
from .simplicial import order_complex, simplicial_homology


def trial_seed(seed: int, trial: int) -> int:
    """Independent 64-bit seed for one trial, stable across runs and thread counts."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0])


def homology_pair(P: Poset, max_dim: int, cap: int = DEFAULT_CAP) -> tuple[list[HomologyGroup], list[HomologyGroup]]:
    cube = cubical_homology(P, max_dim, cap)
    simpl = simplicial_homology(order_complex(P), max_dim)
    return cube, simpl


def mismatched_degrees(P: Poset, max_dim: int, cap: int = DEFAULT_CAP) -> list[int]:
    cube, simpl = homology_pair(P, max_dim, cap)
    return [p for p in range(max_dim + 1) if cube[p] != simpl[p]]


def shrink(P: Poset, max_dim: int, cap: int = DEFAULT_CAP, budget: int = 200) -> Poset:
    """Beat-point reduction, then greedy single-element deletion while the mismatch survives."""
    checks = 0

    def still_bad(Q: Poset) -> bool:
        nonlocal checks
        checks += 1
        try:
            return bool(mismatched_degrees(Q, max_dim, cap))
        except CapExceeded:
            return False

    cur = P
    core = P.remove_beat_points()
    if len(core) < len(P) and still_bad(core):
        cur = core
    progress = True
    while progress and checks < budget:
        progress = False
        for x in range(len(cur)):
            if checks >= budget or len(cur) == 1:
                break
            cand = cur.subposet([y for y in range(len(cur)) if y != x])
            if still_bad(cand):
                cur = cand
                progress = True
                break
    return cur


@dataclass
class Finding:
    trial: int
    seed: int
    degrees: list[int]
    poset: Poset
    cube: list[HomologyGroup]
    simpl: list[HomologyGroup]
    shrunk: Poset

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "degrees": self.degrees,
            "poset": self.poset.to_dict(),
            "cube": [g.to_dict() for g in self.cube],
            "simpl": [g.to_dict() for g in self.simpl],
            "shrunk": self.shrunk.to_dict(),
        }


@dataclass
class MineReport:
    trials: int
    size: int
    density: float
    seed: int
    max_dim: int
    findings: list[Finding] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "trials": self.trials,
            "size": self.size,
            "density": self.density,
            "seed": self.seed,
            "max_dim": self.max_dim,
            "skipped": len(self.skipped),
            "skipped_trials": self.skipped,
            "findings": [f.to_dict() for f in self.findings],
        }

    def to_text(self) -> str:
        lines = [
            f"trials {self.trials}  size {self.size}  density {self.density}  seed {self.seed}  max-dim {self.max_dim}",
            f"findings {len(self.findings)}  skipped (cap) {len(self.skipped)}",
        ]
        for f in self.findings:
            lines.append(
                f"trial {f.trial}: degrees {f.degrees}  cube {[str(g) for g in f.cube]}  "
                f"simpl {[str(g) for g in f.simpl]}  shrunk to {len(f.shrunk)} elements"
            )
            lines.append(f"  relations {f.shrunk.to_dict()['relations']}")
        return "\n".join(lines)


def _run_trial(i: int, seed: int, size: int, density: float, max_dim: int, cap: int,
               plant: Mapping[int, Poset], shrink_budget: int):
    s = trial_seed(seed, i)
    P = plant[i] if i in plant else random_poset(size, density, s)
    try:
        cube, simpl = homology_pair(P, max_dim, cap)
    except CapExceeded:
        return "skip", i
    bad = [p for p in range(max_dim + 1) if cube[p] != simpl[p]]
    if not bad:
        return None
    return "hit", Finding(i, s, bad, P, cube, simpl, shrink(P, max_dim, cap, shrink_budget))


def mine(trials: int, size: int, density: float, seed: int = 0, max_dim: int = 2,
         cap: int = DEFAULT_CAP, threads: int = 1, plant: Mapping[int, Poset] | None = None,
         shrink_budget: int = 200) -> MineReport:
    """Compare both homologies on ``trials`` random posets.

    ``plant`` replaces the random poset of the given trial indices. Results
    are listed by trial index whatever the thread count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if size < 1:
        raise ValueError("size must be >= 1")
    plant = dict(plant or {})
    report = MineReport(trials, size, density, seed, max_dim)
    args = [(i, seed, size, density, max_dim, cap, plant, shrink_budget) for i in range(trials)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda a: _run_trial(*a), args))
    else:
        results = [_run_trial(*a) for a in args]
    for r in results:
        if r is None:
            continue
        kind, payload = r
        if kind == "skip":
            report.skipped.append(payload)
        else:
            report.findings.append(payload)
    return report
