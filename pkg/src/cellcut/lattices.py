"""Integer cut and flow lattices and the groups attached to them.

The cut lattice is the integer row space of the top boundary matrix (not its
saturation),, the flow lattice its integer kernel.  Alongside their dual
bases and discriminant groups this module computes the critical group, the
cocritical group of an acyclic extension, the cutflow group, integral bases
of both lattices under the torsion hypotheses that make them exist, and the
cardinality/isomorphism identities tying everything together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .cells import CellComplex, reduced_homology, top_restriction, torsion_coefficient
from .cutflow import FacetVector, calibrated_flow_vector, cut_basis, fundamental_circuit
from .forests import canonical_facets, is_csf, tau, tau_star
from .intlinalg import (
    ConsistencyError,
    FiniteAbelianGroup,
    IntMatrix,
    cokernel_group,
    det,
    gram,
    hermite_column_basis,
    kernel_basis,
    lattices_equal,
    rank,
    solve_int,
)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n given by an integral basis of column vectors."""

    ambient_dim: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows must match the ambient dimension")
        if rank(self.basis) != self.basis.cols:
            raise ValueError("basis columns must be linearly independent")

    @property
    def rank(self) -> int:
        return self.basis.cols


@lru_cache(maxsize=None)
def cut_lattice(c: CellComplex) -> Lattice:
    """Integer row space of the top boundary, via column-style Hermite
    reduction of the transpose.  The lattice itself is preserved (it is in
    general not saturated)."""
    if c.dim < 1:
        raise ValueError("needs dimension >= 1")
    bd = c.boundary(c.dim)
    return Lattice(bd.cols, hermite_column_basis(bd.transpose()))


@lru_cache(maxsize=None)
def flow_lattice(c: CellComplex) -> Lattice:
    """Integer kernel of the top boundary (always saturated)."""
    if c.dim < 1:
        raise ValueError("needs dimension >= 1")
    bd = c.boundary(c.dim)
    return Lattice(bd.cols, kernel_basis(bd))


def _fraction_inverse(g: IntMatrix) -> list[list[Fraction]]:
    n = g.rows
    if g.cols != n:
        raise ValueError("square matrix required")
    a = [
        [Fraction(g[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def dual_basis(lat: Lattice) -> list[list[Fraction]]:
    """Columns of basis @ (basis^T basis)^(-1): the dual basis vectors, as an
    exact rational matrix (rows: ambient coordinates, cols: dual vectors)."""
    b = lat.basis
    if b.cols == 0:
        return [[] for _ in range(lat.ambient_dim)]
    ginv = _fraction_inverse(gram(b))
    return [
        [
            sum(Fraction(b[i, k]) * ginv[k][j] for k in range(b.cols))
            for j in range(b.cols)
        ]
        for i in range(lat.ambient_dim)
    ]


def projection_matrix(lat: Lattice) -> list[list[Fraction]]:
    """Orthogonal projection of the ambient space onto the lattice span."""
    dual = dual_basis(lat)
    b = lat.basis
    n = lat.ambient_dim
    return [
        [
            sum(dual[i][k] * Fraction(b[j, k]) for k in range(b.cols))
            for j in range(n)
        ]
        for i in range(n)
    ]


def discriminant_group(lat: Lattice) -> FiniteAbelianGroup:
    """Dual lattice modulo lattice, read off the Gram matrix."""
    return cokernel_group(gram(lat.basis))


@lru_cache(maxsize=None)
def cutflow_group(c: CellComplex) -> FiniteAbelianGroup:
    """Z^n modulo the internal direct sum of the cut and flow lattices."""
    cut = cut_lattice(c)
    flow = flow_lattice(c)
    m = cut.basis.hstack(flow.basis)
    if m.cols != cut.ambient_dim:
        raise ConsistencyError("cut and flow ranks do not fill the ambient space")
    g = cokernel_group(m)
    if g.free_rank:
        raise ConsistencyError("cutflow group came out infinite")
    return g


@lru_cache(maxsize=None)
def critical_group(c: CellComplex) -> FiniteAbelianGroup:
    """Torsion of (kernel of the codim-1 boundary) / (image of the up-down
    Laplacian in codimension one)."""
    if c.dim < 1:
        raise ValueError("needs dimension >= 1")
    bd = c.boundary(c.dim)
    lap = bd @ bd.transpose()
    kb = kernel_basis(c.boundary(c.dim - 1))
    coords = solve_int(kb, lap)
    g = cokernel_group(coords)
    return FiniteAbelianGroup(g.invariant_factors, 0)


@dataclass(frozen=True)
class Acyclization:
    """A complex extended one dimension up so that its top two reduced
    homology groups vanish: the new boundary columns form an integral basis
    of the kernel of the old top boundary."""

    base: CellComplex
    extended: CellComplex
    extra_boundary: IntMatrix


@lru_cache(maxsize=None)
def acyclization(c: CellComplex) -> Acyclization:
    extra = kernel_basis(c.boundary(c.dim))
    labels = tuple(f"w{i}" for i in range(extra.cols))
    ext = CellComplex(
        c.cells + (labels,), c.boundaries + (extra,), augmented=c.augmented
    )
    return Acyclization(c, ext, extra)


@lru_cache(maxsize=None)
def cocritical_group(c: CellComplex) -> FiniteAbelianGroup:
    """Cokernel of the Gram matrix of an acyclic extension's new boundary.
    Independent of the kernel basis chosen (a tested property)."""
    return cokernel_group(gram(acyclization(c).extra_boundary))


def _vectors_matrix(c: CellComplex, vecs: Iterable[FacetVector]) -> IntMatrix:
    return IntMatrix.from_columns([v.coeffs for v in vecs], rows=len(c.facets))


def _assert_generates(lat: Lattice, m: IntMatrix) -> None:
    x = solve_int(lat.basis, m)  # ValueError here => vectors outside the lattice
    if abs(det(x)) != 1:
        raise ConsistencyError("emitted vectors do not generate the lattice")


def integral_cut_basis(
    c: CellComplex, forest: Iterable[str]
) -> list[FacetVector] | None:
    """Calibrated bond vectors of the forest, when they form an integral
    basis of the cut lattice.

    Returns None (hypothesis failure, not a fault) when the forest has
    torsion in codimension one; otherwise the returned vectors are verified
    to generate the cut lattice exactly.
    """
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    h = reduced_homology(top_restriction(c, f), c.dim - 1)
    if h.invariant_factors:
        return None
    vecs = cut_basis(c, f, calibrated=True)
    _assert_generates(cut_lattice(c), _vectors_matrix(c, vecs))
    return vecs


def integral_flow_basis(
    c: CellComplex, forest: Iterable[str]
) -> list[FacetVector] | None:
    """Primitive circuit flows of the forest, when they form an integral
    basis of the flow lattice.

    The hypothesis is that the forest's codim-1 homology equals the whole
    complex's: checked as invariant-factor equality plus index-one
    containment of boundary column lattices.  Returns None when it fails.
    """
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    d = c.dim
    if reduced_homology(top_restriction(c, f), d - 1) != reduced_homology(c, d - 1):
        return None
    bd = c.boundary(d)
    sub = bd.submatrix(range(bd.rows), [c.facet_index(l) for l in f])
    if not lattices_equal(sub, bd):
        return None
    fset = set(f)
    vecs = [
        calibrated_flow_vector(c, fundamental_circuit(c, f, s))
        for s in c.facets
        if s not in fset
    ]
    if vecs:
        _assert_generates(flow_lattice(c), _vectors_matrix(c, vecs))
    elif flow_lattice(c).rank:
        raise ConsistencyError("no circuit flows but the flow lattice is nonzero")
    return vecs


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: str
    rhs: str
    ok: bool


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(ch.ok for ch in self.checks)

    @property
    def failures(self) -> tuple[IdentityCheck, ...]:
        return tuple(ch for ch in self.checks if not ch.ok)


def verify_group_identities(c: CellComplex) -> IdentityReport:
    """All cardinality and invariant-factor identities between the group
    invariants: discriminant groups, critical and cocritical groups, the
    cutflow group, tau, tau*, and the codim-1 torsion t."""
    t = torsion_coefficient(c, c.dim - 1)
    tv = tau(c)
    ts = tau_star(c)
    disc_cut = discriminant_group(cut_lattice(c))
    disc_flow = discriminant_group(flow_lattice(c))
    crit = critical_group(c)
    cocrit = cocritical_group(c)
    cf = cutflow_group(c)
    checks = [
        IdentityCheck(
            "cut discriminant order equals tau",
            str(disc_cut.torsion_order),
            str(tv),
            disc_cut.torsion_order == tv,
        ),
        IdentityCheck(
            "critical group order equals tau",
            str(crit.torsion_order),
            str(tv),
            crit.torsion_order == tv,
        ),
        IdentityCheck(
            "critical group matches cut discriminant",
            str(crit),
            str(disc_cut),
            crit == disc_cut,
        ),
        IdentityCheck(
            "cutflow order times t equals tau",
            str(cf.torsion_order * t),
            str(tv),
            cf.torsion_order * t == tv,
        ),
        IdentityCheck(
            "flow discriminant order times t^2 equals tau",
            str(disc_flow.torsion_order * t * t),
            str(tv),
            disc_flow.torsion_order * t * t == tv,
        ),
        IdentityCheck(
            "cocritical order times t^2 equals tau",
            str(cocrit.torsion_order * t * t),
            str(tv),
            cocrit.torsion_order * t * t == tv,
        ),
        IdentityCheck(
            "cocritical group matches flow discriminant",
            str(cocrit),
            str(disc_flow),
            cocrit == disc_flow,
        ),
        IdentityCheck(
            "tau* times t^2 equals tau",
            str(ts * t * t),
            str(tv),
            ts * t * t == tv,
        ),
        IdentityCheck(
            "cut discriminant order equals cutflow order times t",
            str(disc_cut.torsion_order),
            str(cf.torsion_order * t),
            disc_cut.torsion_order == cf.torsion_order * t,
        ),
        IdentityCheck(
            "cutflow order equals t times flow discriminant order",
            str(cf.torsion_order),
            str(t * disc_flow.torsion_order),
            cf.torsion_order == t * disc_flow.torsion_order,
        ),
    ]
    return IdentityReport(tuple(checks))
