"""Exact arbitrary-precision integer linear algebra.

Dense matrices over Python ints; no floating point anywhere.  This module is
the substrate for everything else: fraction-free determinants, Smith normal
form with unimodular multipliers, integer kernels and saturations, Hermite
column bases, and invariant factors of finitely generated abelian groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence


class ConsistencyError(RuntimeError):
    """A provable identity failed at runtime, i.e. an implementation bug."""


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(
        self,
        entries: Iterable[Iterable[int]],
        shape: tuple[int, int] | None = None,
    ):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if shape is not None:
            r, c = shape
        elif rows:
            r, c = len(rows), len(rows[0])
        else:
            raise ValueError("shape is required when no rows are given")
        if len(rows) != r or any(len(row) != c for row in rows):
            raise ValueError(f"entries do not form a {r}x{c} matrix")
        self.rows = r
        self.cols = c
        self.entries = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(((0,) * cols for _ in range(rows)), shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(
            (tuple(int(i == j) for j in range(n)) for i in range(n)),
            shape=(n, n),
        )

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[int]], rows: int | None = None
    ) -> "IntMatrix":
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("row count required when no columns are given")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise ValueError("columns of unequal length")
        return cls(
            (tuple(c[i] for c in cols) for i in range(rows)),
            shape=(rows, len(cols)),
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def to_rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            (self.column(j) for j in range(self.cols)),
            shape=(self.cols, self.rows),
        )

    def submatrix(
        self, row_idx: Iterable[int], col_idx: Iterable[int]
    ) -> "IntMatrix":
        """Restriction to the given rows and columns, in the given order."""
        ri = tuple(row_idx)
        ci = tuple(col_idx)
        return IntMatrix(
            (tuple(self.entries[i][j] for j in ci) for i in ri),
            shape=(len(ri), len(ci)),
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix(
            (a + b for a, b in zip(self.entries, other.entries)),
            shape=(self.rows, self.cols + other.cols),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ocols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            (
                tuple(sum(x * y for x, y in zip(row, col)) for col in ocols)
                for row in self.entries
            ),
            shape=(self.rows, other.cols),
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = ", ".join(repr(list(row)) for row in self.entries)
        return f"IntMatrix([{body}], shape=({self.rows}, {self.cols}))"


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Matrix rank over the rationals, by fraction-free elimination."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    r = 0
    prev = 1
    for j in range(nc):
        piv = next((i for i in range(r, nr) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pk = a[r][j]
        rowr = a[r]
        for i in range(r + 1, nr):
            rowi = a[i]
            aij = rowi[j]
            for k in range(j + 1, nc):
                rowi[k] = (pk * rowi[k] - aij * rowr[k]) // prev
            rowi[j] = 0
        prev = pk
        r += 1
        if r == nr:
            break
    return r


@dataclass(frozen=True)
class SmithForm:
    """Unimodular diagonalization U @ M @ V = S of an integer matrix."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S[i, i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d)


def _pivot(s: list[list[int]], t: int, nr: int, nc: int) -> tuple[int, int] | None:
    # smallest nonzero magnitude in the active block; ties to lowest (row, col)
    best = None
    bestval = None
    for i in range(t, nr):
        row = s[i]
        for j in range(t, nc):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if bestval is None or ax < bestval:
                    best, bestval = (i, j), ax
                    if ax == 1:
                        return best
    return best


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with multipliers.

    Returns U, S, V with U @ m @ V = S, U and V unimodular, S diagonal with
    nonnegative entries d1 | d2 | ... .  Pivoting is deterministic: the entry
    of smallest nonzero magnitude wins, ties broken by lowest (row, col).
    """
    nr, nc = m.rows, m.cols
    s = m.to_rows()
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]
    t = 0
    while t < min(nr, nc):
        if _pivot(s, t, nr, nc) is None:
            break
        while True:
            pi, pj = _pivot(s, t, nr, nc)
            if pi != t:
                s[t], s[pi] = s[pi], s[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in s:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            p = s[t][t]
            for i in range(t + 1, nr):
                if s[i][t]:
                    q = s[i][t] // p
                    if q:
                        si, st = s[i], s[t]
                        for k in range(nc):
                            si[k] -= q * st[k]
                        ui, ut = u[i], u[t]
                        for k in range(nr):
                            ui[k] -= q * ut[k]
            for j in range(t + 1, nc):
                if s[t][j]:
                    q = s[t][j] // p
                    if q:
                        for row in s:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
            if any(s[i][t] for i in range(t + 1, nr)) or any(
                s[t][j] for j in range(t + 1, nc)
            ):
                continue
            bad = None
            for i in range(t + 1, nr):
                row = s[i]
                if any(x % p for x in row[t + 1 :]):
                    bad = i
                    break
            if bad is None:
                break
            sb, st = s[bad], s[t]
            for k in range(nc):
                st[k] += sb[k]
            ub, ut = u[bad], u[t]
            for k in range(nr):
                ut[k] += ub[k]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SmithForm(
        IntMatrix(u, shape=(nr, nr)),
        IntMatrix(s, shape=(nr, nc)),
        IntMatrix(v, shape=(nc, nc)),
    )


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    `invariant_factors` are the torsion invariants (each >= 2, each dividing
    the next); `free_rank` counts the free summands.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("group is infinite")
        return self.torsion_order

    def __str__(self) -> str:
        parts = [f"Z_{f}" for f in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel_group(m: IntMatrix) -> FiniteAbelianGroup:
    """The group Z^rows / (column lattice of m), in invariant-factor form."""
    diag = smith_normal_form(m).diagonal()
    nonzero = [d for d in diag if d]
    return FiniteAbelianGroup(
        tuple(d for d in nonzero if d > 1), m.rows - len(nonzero)
    )


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Integral basis (as columns) of the integer kernel of m.

    The returned columns span a saturated lattice: kernels of integer maps
    are direct summands of the ambient Z^n.
    """
    sf = smith_normal_form(m)
    rk = sf.rank
    return sf.V.submatrix(range(m.cols), range(rk, m.cols))


def saturation(b: IntMatrix) -> IntMatrix:
    """Integral basis of (real span of the columns of b) intersected with Z^n."""
    if rank(b) != b.cols:
        raise ValueError("columns must be linearly independent")
    ortho = kernel_basis(b.transpose())
    return kernel_basis(ortho.transpose())


def minors_gcd(m: IntMatrix, r: int) -> int:
    """Gcd of all r x r minors (0 if they all vanish), via the Smith diagonal."""
    if r < 0 or r > min(m.rows, m.cols):
        raise ValueError(f"minor size {r} out of range for {m.rows}x{m.cols}")
    diag = smith_normal_form(m).diagonal()
    return prod(diag[:r]) if r else 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # g = x*a + y*b with g = gcd(a, b) >= 0
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_column_basis(m: IntMatrix) -> IntMatrix:
    """Canonical basis of the lattice generated by the columns of m.

    Column-style Hermite reduction: only unimodular column operations are
    applied, so the returned columns generate exactly the same lattice.
    Pivot entries are positive and sit on increasing rows; entries of earlier
    basis columns in a pivot row are reduced to [0, pivot).
    """
    nr = m.rows
    active = [list(m.column(j)) for j in range(m.cols)]
    basis: list[list[int]] = []
    for i in range(nr):
        rest = [c for c in active if c[i] == 0]
        nz = [c for c in active if c[i] != 0]
        if not nz:
            active = rest
            continue
        lead = nz[0]
        for other in nz[1:]:
            g, x, y = _xgcd(lead[i], other[i])
            a, b = lead[i] // g, other[i] // g
            combined = [x * p + y * q for p, q in zip(lead, other)]
            cleared = [a * q - b * p for p, q in zip(lead, other)]
            lead = combined
            rest.append(cleared)
        if lead[i] < 0:
            lead = [-x for x in lead]
        for prev in basis:
            q = prev[i] // lead[i]
            if q:
                for k in range(nr):
                    prev[k] -= q * lead[k]
        basis.append(lead)
        active = rest
    return IntMatrix.from_columns(basis, rows=nr)


def solve_int(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """An integer solution x of a @ x = b; raises ValueError if none exists."""
    if a.rows != b.rows:
        raise ValueError("row counts differ")
    sf = smith_normal_form(a)
    c = sf.U @ b
    diag = sf.diagonal()
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else 0
        for j in range(b.cols):
            cij = c[i, j]
            if di == 0:
                if cij:
                    raise ValueError("no integer solution")
            else:
                q, r = divmod(cij, di)
                if r:
                    raise ValueError("no integer solution")
                y[i][j] = q
    return sf.V @ IntMatrix(y, shape=(a.cols, b.cols))


def gram(m: IntMatrix) -> IntMatrix:
    """The Gram matrix m^T @ m of the columns of m."""
    return m.transpose() @ m


def lattices_equal(a: IntMatrix, b: IntMatrix) -> bool:
    """Whether the columns of a and b generate the same lattice."""
    if a.rows != b.rows:
        raise ValueError("ambient dimensions differ")
    return hermite_column_basis(a) == hermite_column_basis(b)
