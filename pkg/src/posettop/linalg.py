"""Exact integer linear algebra: sparse matrices, Smith normal form, homology.

Everything works on Python ints, so entries never overflow. Two SNF paths
exist: :func:`smith_normal_form` is dense and tracks unimodular transforms;
:func:`invariant_factors` first strips unit pivots from the sparse matrix
and only runs the dense algorithm on what is left, which is what homology
of large boundary matrices needs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotAComplex

Dense = list[list[int]]


class IntMatrix:
    """Sparse integer matrix stored column by column (``{row: value}`` dicts)."""

    def __init__(self, rows: int, cols: int, columns: list[dict[int, int]] | None = None):
        self.rows = rows
        self.cols = cols
        self.columns: list[dict[int, int]] = columns if columns is not None else [{} for _ in range(cols)]
        if len(self.columns) != cols:
            raise ValueError("column count does not match cols")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = int(v)
        return cls(rows, cols, columns)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[dict[int, int]]) -> "IntMatrix":
        cols = [{r: v for r, v in c.items() if v} for c in columns]
        return cls(rows, len(cols), cols)

    def to_dense(self) -> Dense:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [dict(c) for c in self.columns])

    def add(self, i: int, j: int, v: int) -> None:
        col = self.columns[j]
        nv = col.get(i, 0) + v
        if nv:
            col[i] = nv
        else:
            col.pop(i, None)

    def get(self, i: int, j: int) -> int:
        return self.columns[j].get(i, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def transpose(self) -> "IntMatrix":
        out = IntMatrix.zeros(self.cols, self.rows)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out.columns[i][j] = v
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, w in col.items():
                for i, v in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append({i: v for i, v in acc.items() if v})
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, x: Sequence[int] | dict[int, int]) -> list[int]:
        """Matrix-vector product; ``x`` may be dense or a ``{col: value}`` dict."""
        items = x.items() if isinstance(x, dict) else enumerate(x)
        out = [0] * self.rows
        for k, w in items:
            if w:
                for i, v in self.columns[k].items():
                    out[i] += v * w
        return out

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [dict(c) for c in self.columns] + [dict(c) for c in other.columns])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _identity(n: int) -> Dense:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def dense_matmul(A: Dense, B: Dense) -> Dense:
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


@dataclass
class SNFResult:
    """``U @ A @ V == D`` with ``D`` diagonal, nonnegative and a divisibility chain."""

    U: Dense
    V: Dense
    D: Dense
    U_inv: Dense
    V_inv: Dense
    diagonal: list[int]
    rank: int

    def verify(self, A: IntMatrix | Dense) -> None:
        """Re-multiply and check every SNF invariant; raises AssertionError on failure."""
        dense = A.to_dense() if isinstance(A, IntMatrix) else A
        m = len(self.U)
        n = len(self.V)
        if m and n:
            assert dense_matmul(dense_matmul(self.U, dense), self.V) == self.D
        assert dense_matmul(self.U, self.U_inv) == _identity(m)
        assert dense_matmul(self.V, self.V_inv) == _identity(n)
        for i, row in enumerate(self.D):
            for j, v in enumerate(row):
                assert i == j or v == 0
        d = self.diagonal
        assert all(x > 0 for x in d[: self.rank]) and all(x == 0 for x in d[self.rank:])
        for a, b in zip(d[: self.rank], d[1: self.rank]):
            assert b % a == 0


def _dense_snf(a: Dense, m: int, n: int, track_rows: bool, track_cols: bool) -> tuple[Dense, Dense, Dense, Dense, int]:
    """In-place SNF of ``a``; returns (U, U_inv, V, V_inv, rank).

    Pivot rule: smallest nonzero absolute value in the active block, ties by
    lowest row then lowest column.
    """
    U = _identity(m) if track_rows else []
    Ui = _identity(m) if track_rows else []
    V = _identity(n) if track_cols else []
    Vi = _identity(n) if track_cols else []

    def swap_rows(i: int, k: int) -> None:
        if i == k:
            return
        a[i], a[k] = a[k], a[i]
        if track_rows:
            U[i], U[k] = U[k], U[i]
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j: int, k: int) -> None:
        if j == k:
            return
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track_cols:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if track_rows:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track_cols:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = Vi[src], Vi[dst]
            for j in range(n):
                if vd[j]:
                    vs[j] -= q * vd[j]

    def pick(t: int) -> tuple[int, int] | None:
        best = None
        best_val = 0
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best_val):
                    best, best_val = (i, j), abs(v)
                    if best_val == 1:
                        return best
        return best

    t = 0
    while t < min(m, n):
        loc = pick(t)
        if loc is None:
            break
        while True:
            swap_rows(t, loc[0])
            swap_cols(t, loc[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if clean:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
            loc = pick(t)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if track_rows:
                U[t] = [-v for v in U[t]]
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    return U, Ui, V, Vi, t


def smith_normal_form(A: IntMatrix | Dense, rows: bool = True, cols: bool = True) -> SNFResult:
    """Dense Smith normal form with unimodular transforms and their inverses.

    ``rows``/``cols`` switch off tracking of ``U``/``V`` when a caller does not
    need them; the untracked transforms come back as empty lists.
    """
    if isinstance(A, IntMatrix):
        m, n = A.shape
        a = A.to_dense()
    else:
        a = [list(map(int, row)) for row in A]
        m = len(a)
        n = len(a[0]) if m else 0
    U, Ui, V, Vi, rank = _dense_snf(a, m, n, track_rows=rows, track_cols=cols)
    diagonal = [a[i][i] for i in range(min(m, n))]
    return SNFResult(U=U, V=V, D=a, U_inv=Ui, V_inv=Vi, diagonal=diagonal, rank=rank)


def _strip_unit_pivots(A: IntMatrix) -> tuple[int, Dense]:
    """Eliminate +-1 pivots sparsely; returns (number removed, dense residual)."""
    cols = {j: dict(c) for j, c in enumerate(A.columns) if c}
    rows: dict[int, set[int]] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    removed = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            col = cols.get(c)
            if not col:
                cols.pop(c, None)
                continue
            units = [r for r, v in col.items() if v in (1, -1)]
            if not units:
                continue
            r = min(units, key=lambda i: (len(rows[i]), i))
            u = col[r]
            for c2 in sorted(rows[r]):
                if c2 == c:
                    continue
                other = cols[c2]
                factor = other[r] * u
                for i, v in col.items():
                    nv = other.get(i, 0) - factor * v
                    if nv:
                        if i not in other:
                            rows[i].add(c2)
                        other[i] = nv
                    elif i in other:
                        del other[i]
                        rows[i].discard(c2)
                if not other:
                    del cols[c2]
            for i in col:
                rows[i].discard(c)
            del cols[c]
            del rows[r]
            removed += 1
            progress = True
    live_rows = sorted(i for i, s in rows.items() if s)
    pos = {i: k for k, i in enumerate(live_rows)}
    live_cols = sorted(cols)
    dense = [[0] * len(live_cols) for _ in live_rows]
    for k, c in enumerate(live_cols):
        for i, v in cols[c].items():
            dense[pos[i]][k] = v
    return removed, dense


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of ``A`` (length = rank)."""
    ones, residual = _strip_unit_pivots(A)
    m = len(residual)
    n = len(residual[0]) if m else 0
    _, _, _, _, rank = _dense_snf(residual, m, n, track_rows=False, track_cols=False)
    return [1] * ones + [residual[i][i] for i in range(rank)]


def rank(A: IntMatrix) -> int:
    return len(invariant_factors(A))


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^betti`` plus cyclic torsion summands ``Z/t`` (divisibility chain)."""

    betti: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def check_complex(d_n: IntMatrix, d_np1: IntMatrix) -> None:
    if d_n.cols != d_np1.rows:
        raise NotAComplex(f"shape mismatch {d_n.shape} then {d_np1.shape}")
    if not (d_n @ d_np1).is_zero():
        raise NotAComplex("boundary composition is not zero")


def homology_from_boundaries(d_n: IntMatrix, d_np1: IntMatrix) -> HomologyGroup:
    """``ker d_n / im d_np1`` for boundary maps ``C_{n+1} -> C_n -> C_{n-1}``."""
    check_complex(d_n, d_np1)
    r_n = rank(d_n)
    factors = invariant_factors(d_np1)
    betti = d_n.cols - r_n - len(factors)
    return HomologyGroup(betti, tuple(f for f in factors if f > 1))


def in_integer_image(A: IntMatrix, b: Sequence[int], snf: SNFResult | None = None) -> list[int] | None:
    """An integer ``x`` with ``A x = b``, or ``None`` when no integer solution exists."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has wrong length")
    if snf is None:
        snf = smith_normal_form(A)
    ub = [sum(u * v for u, v in zip(row, b) if u and v) for row in snf.U]
    y = [0] * A.cols
    for i, v in enumerate(ub):
        if i < snf.rank:
            d = snf.diagonal[i]
            if v % d:
                return None
            y[i] = v // d
        elif v:
            return None
    x = [sum(row[k] * y[k] for k in range(snf.rank) if row[k]) for row in snf.V]
    return x


def kernel_basis(A: IntMatrix, snf: SNFResult | None = None) -> list[list[int]]:
    """A lattice basis of the integer kernel, one vector per entry."""
    if snf is None:
        snf = smith_normal_form(A)
    return [[row[k] for row in snf.V] for k in range(snf.rank, A.cols)]


@dataclass
class HomologyPresentation:
    """Explicit coordinates on ``ker d_n / im d_np1``.

    A cycle ``z`` maps to ``coords(z)``: one residue per torsion summand (in
    the order of ``group.torsion``) followed by one integer per free summand.
    ``generators`` are cycles whose classes realise the unit coordinates.
    """

    d_n: IntMatrix
    d_np1: IntMatrix
    group: HomologyGroup = field(init=False)
    generators: list[list[int]] = field(init=False)
    orders: list[int] = field(init=False)

    def __post_init__(self) -> None:
        check_complex(self.d_n, self.d_np1)
        outer = smith_normal_form(self.d_n, rows=False)
        self._r = outer.rank
        # rows r.. of V^{-1} read off kernel coordinates of a cycle
        self._to_kernel = outer.V_inv[self._r:]
        basis = [[row[k] for row in outer.V] for k in range(self._r, self.d_n.cols)]
        self.cycle_basis = basis
        k = len(basis)
        M = [[0] * self.d_np1.cols for _ in range(k)]
        for j, col in enumerate(self.d_np1.columns):
            for i, v in enumerate(self._kernel_coords(col)):
                M[i][j] = v
        self._M = IntMatrix.from_dense(M, cols=self.d_np1.cols)
        inner = smith_normal_form(self._M, cols=False)
        self._inner = inner
        self._visible = [i for i in range(k) if i >= inner.rank or inner.diagonal[i] > 1]
        self.orders = [inner.diagonal[i] if i < inner.rank else 0 for i in self._visible]
        torsion = tuple(d for d in self.orders if d)
        self.group = HomologyGroup(k - inner.rank, torsion)
        self.generators = []
        for i in self._visible:
            kc = [row[i] for row in inner.U_inv]
            self.generators.append(
                [sum(basis[t][pos] * kc[t] for t in range(k) if kc[t]) for pos in range(self.d_n.cols)]
            )

    def _kernel_coords(self, z: dict[int, int] | Sequence[int]) -> list[int]:
        items = list(z.items()) if isinstance(z, dict) else [(i, v) for i, v in enumerate(z) if v]
        return [sum(row[i] * v for i, v in items) for row in self._to_kernel]

    def is_cycle(self, z: dict[int, int] | Sequence[int]) -> bool:
        return not any(self.d_n.apply(z))

    def coords(self, z: dict[int, int] | Sequence[int]) -> tuple[int, ...]:
        if not self.is_cycle(z):
            raise ValueError("not a cycle")
        kc = self._kernel_coords(z)
        full = [sum(u * v for u, v in zip(row, kc) if u) for row in self._inner.U]
        out = []
        for i, order in zip(self._visible, self.orders):
            out.append(full[i] % order if order else full[i])
        return tuple(out)

    def is_boundary(self, z: dict[int, int] | Sequence[int]) -> bool:
        return not any(self.coords(z))

    def kernel_matrix(self) -> IntMatrix:
        """Cycle basis as the columns of a matrix."""
        return IntMatrix.from_columns(self.d_n.cols, ({i: v for i, v in enumerate(b) if v} for b in self.cycle_basis))
