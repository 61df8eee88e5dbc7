"""Based zigzag loops in a poset and the discrete Hurewicz map in dimension 1.

A loop of radius ``r`` is a map from the zigzag line (even integers below
their odd neighbours) into the poset that equals the basepoint at every
position ``x`` with ``|x| >= r``. Only the values at ``-r+1 .. r-1`` are
stored.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterator, Mapping, Sequence

import numpy as np

from .chains import Chain
from .cubical import DEFAULT_CAP, CubicalComplex, boundary, is_degenerate
from .errors import (
    BasepointMismatch,
    InternalInvariantViolation,
    InvalidLoop,
    NonMonotoneInput,
    NotConnected,
    ParseError,
)
from .linalg import HomologyGroup, HomologyPresentation
from .poset import Poset


@dataclass(frozen=True)
class Loop:
    basepoint: int
    radius: int
    values: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise InvalidLoop("radius must be >= 0")
        if len(self.values) != max(2 * self.radius - 1, 0):
            raise InvalidLoop(f"radius {self.radius} needs {max(2 * self.radius - 1, 0)} values, got {len(self.values)}")

    @classmethod
    def constant(cls, basepoint: int, radius: int = 0) -> "Loop":
        return cls(basepoint, radius, (basepoint,) * max(2 * radius - 1, 0))

    @classmethod
    def from_mapping(cls, basepoint: int, values: Mapping[int, int], radius: int | None = None) -> "Loop":
        """Build from ``{position: element}``; unspecified positions read the basepoint."""
        support = [x for x, v in values.items() if v != basepoint]
        need = max((abs(x) for x in support), default=-1) + 1
        r = need if radius is None else radius
        if r < need:
            raise InvalidLoop(f"position {max(support, key=abs)} lies outside radius {r}")
        return cls(basepoint, r, tuple(values.get(x, basepoint) for x in range(-r + 1, r)))

    def value(self, x: int) -> int:
        if abs(x) >= self.radius:
            return self.basepoint
        return self.values[x + self.radius - 1]

    def minimal_radius(self) -> int:
        r = self.radius
        while r > 0 and self.value(r - 1) == self.basepoint and self.value(-r + 1) == self.basepoint:
            r -= 1
        return r

    def padded(self, radius: int) -> "Loop":
        if radius < self.minimal_radius():
            raise InvalidLoop(f"cannot shrink a loop of minimal radius {self.minimal_radius()} to {radius}")
        return Loop(self.basepoint, radius, tuple(self.value(x) for x in range(-radius + 1, radius)))

    def word(self) -> list[int]:
        """Values at positions ``-r .. r`` inclusive."""
        return [self.value(x) for x in range(-self.radius, self.radius + 1)]

    def is_constant(self) -> bool:
        return all(v == self.basepoint for v in self.values)

    def to_dict(self, P: Poset) -> dict:
        return {
            "basepoint": P.label(self.basepoint),
            "radius": self.radius,
            "values": {str(x): P.label(self.value(x)) for x in range(-self.radius + 1, self.radius)},
        }


def loop_from_dict(P: Poset, data: Mapping) -> Loop:
    try:
        base = P.index(str(data["basepoint"]))
        values = {int(k): P.index(str(v)) for k, v in data.get("values", {}).items()}
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad loop JSON: {exc}") from exc
    return Loop.from_mapping(base, values, data.get("radius"))


@dataclass
class LoopReport:
    valid: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate_loop(P: Poset, f: Loop) -> LoopReport:
    """Check the zigzag monotonicity at every adjacent pair, boundary included."""
    out = []
    if not 0 <= f.basepoint < len(P) or any(not 0 <= v < len(P) for v in f.values):
        return LoopReport(False, ["element id out of range"])
    for x in range(-f.radius - 1, f.radius + 1):
        lo, hi = (x, x + 1) if x % 2 == 0 else (x + 1, x)
        if not P.leq(f.value(lo), f.value(hi)):
            out.append(f"position {lo} ({P.label(f.value(lo))}) is not below position {hi} ({P.label(f.value(hi))})")
    return LoopReport(not out, out)


def _pad_even(f: Loop) -> Loop:
    return f.padded(f.radius + f.radius % 2)


def concat(f: Loop, g: Loop) -> Loop:
    """Loop product: ``f`` followed by ``g``, re-centred on radius ``r_f + r_g``.

    Both radii are first padded to even values so the shift keeps parity
    and the zigzag order is respected.
    """
    if f.basepoint != g.basepoint:
        raise BasepointMismatch(f"basepoints {f.basepoint} and {g.basepoint} differ")
    f, g = _pad_even(f), _pad_even(g)
    rf, rg = f.radius, g.radius
    R = rf + rg
    vals = []
    for x in range(-R + 1, R):
        vals.append(f.value(x + rg) if x <= rf - rg else g.value(x - rf))
    return Loop(f.basepoint, R, tuple(vals))


def inverse(f: Loop) -> Loop:
    return Loop(f.basepoint, f.radius, tuple(reversed(f.values)))


# grid maps and the cell sum -------------------------------------------------


@dataclass
class GridMap:
    """A map ``I_{p_1} x ... x I_{p_n} -> P`` stored as ``{coordinate tuple: element}``."""

    dims: tuple[int, ...]
    values: dict[tuple[int, ...], int]

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "GridMap":
        return cls((len(seq) - 1,), {(i,): v for i, v in enumerate(seq)})

    @classmethod
    def from_array(cls, arr) -> "GridMap":
        a = np.asarray(arr, dtype=int)
        dims = tuple(s - 1 for s in a.shape)
        return cls(dims, {idx: int(v) for idx, v in np.ndenumerate(a)})

    def points(self) -> Iterator[tuple[int, ...]]:
        return _cartesian(*(range(p + 1) for p in self.dims))

    def check_monotone(self, P: Poset) -> None:
        for x in self.points():
            for i, p in enumerate(self.dims):
                if x[i] < p:
                    y = x[:i] + (x[i] + 1,) + x[i + 1:]
                    lo, hi = (x, y) if x[i] % 2 == 0 else (y, x)
                    if not P.leq(self.values[lo], self.values[hi]):
                        raise NonMonotoneInput(f"grid value at {lo} is not below the value at {hi}")


MAX_GRID_DIM = 3


def phi(g: GridMap, P: Poset | None = None) -> Chain:
    """Sum of the unit cells of a grid map as cubical chain.

    A cell based at an odd coordinate runs downward along that axis, so it
    is read with that axis reflected (putting its least corner at 0) and
    counted with sign ``(-1)**(number of odd base coordinates)``.
    """
    n = len(g.dims)
    if n > MAX_GRID_DIM:
        raise ValueError(f"grid maps are limited to dimension {MAX_GRID_DIM}")
    if P is not None:
        g.check_monotone(P)
    out = Chain(n)
    if any(p == 0 for p in g.dims):
        return out
    for x in _cartesian(*(range(p) for p in g.dims)):
        odd = [xi % 2 for xi in x]
        corners = []
        for s in range(1 << n):
            pos = tuple(x[i] + ((s >> i & 1) ^ odd[i]) for i in range(n))
            corners.append(g.values[pos])
        cell = tuple(corners)
        if n and is_degenerate(cell):
            continue
        out.add(cell, -1 if sum(odd) % 2 else 1)
    return out


def translate(f: Loop) -> GridMap:
    """Shift by ``2r`` and restrict to ``I_{4r}``."""
    r = f.radius
    return GridMap((4 * r,), {(x,): f.value(x - 2 * r) for x in range(4 * r + 1)})


@dataclass
class HurewiczImage:
    chain: Chain
    coords: tuple[int, ...]
    group: HomologyGroup

    def is_zero(self) -> bool:
        return not any(self.coords)


def _h1_presentation(cubes: CubicalComplex) -> HomologyPresentation:
    return HomologyPresentation(cubes.boundary_matrix(1), cubes.boundary_matrix(2))


def hurewicz(P: Poset, f: Loop, cubes: CubicalComplex | None = None,
             presentation: HomologyPresentation | None = None) -> HurewiczImage:
    """The 1-cycle of ``f`` and its class coordinates in ``H_1`` of the cubes."""
    report = validate_loop(P, f)
    if not report:
        raise InvalidLoop("; ".join(report.violations))
    chain = phi(translate(f))
    if chain.map(boundary, 0):
        raise InternalInvariantViolation(f"cell sum of {f} is not a cycle")
    if cubes is None:
        cubes = CubicalComplex(P)
    if presentation is None:
        presentation = _h1_presentation(cubes)
    coords = presentation.coords(cubes.chain_vector(chain)) if chain else tuple(0 for _ in presentation.orders)
    return HurewiczImage(chain, coords, presentation.group)


def pi1_abelianized(P: Poset, cap: int = DEFAULT_CAP) -> HomologyGroup:
    """First cubical homology group, which is the abelianised fundamental group."""
    if not P.is_connected():
        raise NotConnected("poset is not connected")
    cubes = CubicalComplex(P, cap)
    return cubes.homology(1)[1]


# null-homotopy search --------------------------------------------------------


def comparable_loops(P: Poset, f: Loop, up: bool) -> Iterator[tuple[int, ...]]:
    """Every valid loop at f's radius that lies pointwise above (or below) ``f``."""
    R = f.radius
    base = f.basepoint
    n = len(f.values)
    options = [
        [v for v in range(len(P)) if (P.leq(w, v) if up else P.leq(v, w))] for w in f.values
    ]
    chosen: list[int] = []

    def ok(x: int, a: int, b: int) -> bool:
        # a at position x, b at x + 1
        return P.leq(a, b) if x % 2 == 0 else P.leq(b, a)

    def walk(k: int) -> Iterator[tuple[int, ...]]:
        x = k - R + 1
        if k == n:
            yield tuple(chosen)
            return
        prev = chosen[-1] if chosen else base
        for v in options[k]:
            if not ok(x - 1, prev, v):
                continue
            if k == n - 1 and not ok(x, v, base):
                continue
            chosen.append(v)
            yield from walk(k + 1)
            chosen.pop()

    if n == 0:
        return
    yield from walk(0)


@dataclass
class HomotopyCertificate:
    """Loops ``rows[0] = f, ..., rows[-1] = constant``, consecutive rows comparable."""

    rows: list[Loop]

    def __len__(self) -> int:
        return len(self.rows)

    def verify(self, P: Poset, start: Loop | None = None) -> None:
        if not self.rows:
            raise InvalidLoop("empty certificate")
        R = self.rows[0].radius
        for row in self.rows:
            if row.radius != R or row.basepoint != self.rows[0].basepoint:
                raise InvalidLoop("certificate rows must share radius and basepoint")
            report = validate_loop(P, row)
            if not report:
                raise InvalidLoop("; ".join(report.violations))
        for a, b in zip(self.rows, self.rows[1:]):
            below = all(P.leq(x, y) for x, y in zip(a.values, b.values))
            above = all(P.leq(y, x) for x, y in zip(a.values, b.values))
            if not (below or above):
                raise InvalidLoop("consecutive certificate rows are not comparable")
        if start is not None and start.padded(R) != self.rows[0]:
            raise InvalidLoop("certificate does not start at the given loop")
        if not self.rows[-1].is_constant():
            raise InvalidLoop("certificate does not end at the constant loop")


def null_homotopy_search(P: Poset, f: Loop, radius_cap: int = 3, step_cap: int = 10**5) -> HomotopyCertificate | None:
    """Breadth-first search for a chain of comparable loops from ``f`` to the constant loop.

    Nodes are valid loops padded to ``radius_cap``. Returns ``None`` when
    nothing was found within the caps; that is not a proof that ``f`` is
    essential.
    """
    report = validate_loop(P, f)
    if not report:
        raise InvalidLoop("; ".join(report.violations))
    if radius_cap < f.minimal_radius():
        raise ValueError(f"radius_cap {radius_cap} is below the loop's radius {f.minimal_radius()}")
    start = f.padded(radius_cap)
    base = f.basepoint
    target = (base,) * len(start.values)
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start.values: None}
    queue = deque([start.values])
    expanded = 0
    found = start.values == target
    while queue and not found:
        cur = queue.popleft()
        expanded += 1
        if expanded > step_cap:
            return None
        node = Loop(base, radius_cap, cur)
        for up in (True, False):
            for nxt in comparable_loops(P, node, up):
                if nxt in parent:
                    continue
                parent[nxt] = cur
                if nxt == target:
                    found = True
                    break
                queue.append(nxt)
            if found:
                break
    if not found:
        return None
    rows = []
    cur: tuple[int, ...] | None = target
    while cur is not None:
        rows.append(Loop(base, radius_cap, cur))
        cur = parent[cur]
    cert = HomotopyCertificate(rows[::-1])
    cert.verify(P, f)
    return cert


# literals and random loops ------------------------------------------------------


def parse_loop(P: Poset, text: str) -> Loop:
    """Parse ``"b > d < a > c < b"``.

    ``>`` stands for an upward arrow (left element below right) and ``<`` for
    a downward one. The word covers positions ``-r .. r``; arrows leaving
    even positions must point up and the first and last labels (the
    basepoint) must agree.
    """
    tokens = text.split()
    if not tokens or len(tokens) % 2 == 0:
        raise ParseError(f"malformed loop literal {text!r}")
    labels, glyphs = tokens[0::2], tokens[1::2]
    if any(g not in ("<", ">") for g in glyphs):
        raise ParseError(f"comparators must be '<' or '>' in {text!r}")
    if len(labels) % 2 == 0:
        raise ParseError(f"loop literal needs an odd number of labels, got {len(labels)}")
    r = (len(labels) - 1) // 2
    for k, g in enumerate(glyphs):
        x = -r + k
        expected = ">" if x % 2 == 0 else "<"
        if g != expected:
            raise ParseError(f"comparator {k + 1} should be {expected!r} at position {x} in {text!r}")
    if labels[0] != labels[-1]:
        raise ParseError("loop literal must start and end at the basepoint")
    try:
        ids = [P.index(x) for x in labels]
    except Exception as exc:
        raise ParseError(str(exc)) from exc
    return Loop(ids[0], r, tuple(ids[1:-1]))


def format_loop(P: Poset, f: Loop) -> str:
    word = f.word()
    parts = [P.label(word[0])]
    for k, v in enumerate(word[1:]):
        x = -f.radius + k
        parts += [">" if x % 2 == 0 else "<", P.label(v)]
    return " ".join(parts)


def random_loop(P: Poset, basepoint: int, radius: int, rng: np.random.Generator) -> Loop:
    """A uniformly-chosen-per-step valid loop of the given radius (by randomized backtracking)."""
    n = max(2 * radius - 1, 0)
    if n == 0:
        return Loop.constant(basepoint, radius)
    chosen: list[int] = []

    def ok(x: int, a: int, b: int) -> bool:
        return P.leq(a, b) if x % 2 == 0 else P.leq(b, a)

    def walk(k: int) -> bool:
        if k == n:
            return True
        x = k - radius + 1
        prev = chosen[-1] if chosen else basepoint
        for v in rng.permutation(len(P)):
            v = int(v)
            if not ok(x - 1, prev, v) or (k == n - 1 and not ok(x, v, basepoint)):
                continue
            chosen.append(v)
            if walk(k + 1):
                return True
            chosen.pop()
        return False

    walk(0)
    return Loop(basepoint, radius, tuple(chosen))


def random_comparable(P: Poset, f: Loop, rng: np.random.Generator) -> Loop:
    """A random valid loop pointwise above or below ``f`` (possibly ``f`` itself)."""
    up = bool(rng.integers(2))
    pool = list(comparable_loops(P, f, up)) or list(comparable_loops(P, f, not up))
    if not pool:
        return f
    return Loop(f.basepoint, f.radius, pool[int(rng.integers(len(pool)))])
