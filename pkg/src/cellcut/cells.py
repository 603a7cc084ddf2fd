"""Finite cell complexes presented by integer boundary matrices.

A complex of dimension d stores ordered cell labels for dimensions 0..d and
one integer matrix per dimension 1..d whose column j is the boundary of the
j-th cell, written in the basis of the (i-1)-cells.  By default a complex is
augmented: a virtual cell of dimension -1 exists and the 0-th boundary map is
the all-ones row, so homology comes out reduced and the d = 1 case
specializes to graphs the usual way.

Arbitrary integer incidence degrees are accepted as long as consecutive
boundary maps compose to zero; no CW-realizability check is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .intlinalg import (
    FiniteAbelianGroup,
    IntMatrix,
    cokernel_group,
    kernel_basis,
    solve_int,
)


def _labels_for(vertex_tuples: Iterable[tuple[str, ...]]) -> dict[tuple[str, ...], str]:
    tuples = list(vertex_tuples)
    compact = all(len(v) == 1 for t in tuples for v in t)
    join = "" if compact else "-"
    return {t: join.join(t) for t in tuples}


class CellComplex:
    """A finite cell complex given by its chain complex of boundary matrices."""

    __slots__ = ("cells", "augmented", "_bnd", "_index")

    def __init__(
        self,
        cells: Sequence[Sequence[str]],
        boundaries: Sequence[IntMatrix | Sequence[Sequence[int]]],
        augmented: bool = True,
    ):
        layers = tuple(tuple(str(l) for l in layer) for layer in cells)
        if not layers:
            raise ValueError("a complex needs cells in dimension 0")
        self.cells = layers
        self.augmented = bool(augmented)
        mats = []
        for i, raw in enumerate(boundaries, start=1):
            shape = (len(layers[i - 1]), len(layers[i]))
            mat = raw if isinstance(raw, IntMatrix) else IntMatrix(raw, shape=shape)
            if (mat.rows, mat.cols) != shape:
                raise ValueError(
                    f"boundary {i} has shape {(mat.rows, mat.cols)}, expected {shape}"
                )
            mats.append(mat)
        if len(mats) != len(layers) - 1:
            raise ValueError("need one boundary matrix per dimension 1..d")
        self._bnd = tuple(mats)
        self._index = tuple(
            {lab: k for k, lab in enumerate(layer)} for layer in layers
        )

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @property
    def boundaries(self) -> tuple[IntMatrix, ...]:
        """Stored boundary matrices for dimensions 1..d."""
        return self._bnd

    @property
    def facets(self) -> tuple[str, ...]:
        return self.cells[self.dim]

    def n_cells(self, i: int) -> int:
        if 0 <= i <= self.dim:
            return len(self.cells[i])
        if i == -1 and self.augmented:
            return 1
        return 0

    def boundary(self, i: int) -> IntMatrix:
        """The boundary map C_i -> C_{i-1}, including the virtual ranges.

        For i = 0 this is the augmentation row when the complex is augmented;
        outside 0..d the maps are zero matrices of the appropriate shapes.
        """
        if 1 <= i <= self.dim:
            return self._bnd[i - 1]
        n_from = self.n_cells(i)
        n_to = self.n_cells(i - 1)
        if i == 0 and self.augmented:
            return IntMatrix([[1] * n_from], shape=(1, n_from))
        return IntMatrix.zeros(n_to, n_from)

    def cell_index(self, i: int, label: str) -> int:
        try:
            return self._index[i][label]
        except KeyError:
            raise ValueError(f"no {i}-cell labelled {label!r}") from None

    def facet_index(self, label: str) -> int:
        return self.cell_index(self.dim, label)

    def validate(self) -> str | None:
        """None if the complex is well formed, else a description of the
        first violation (duplicate label, or a nonzero boundary composite
        with its dimension and position)."""
        for i, layer in enumerate(self.cells):
            if len(set(layer)) != len(layer):
                return f"duplicate cell label in dimension {i}"
        lo = 1 if self.augmented else 2
        for i in range(lo, self.dim + 1):
            comp = self.boundary(i - 1) @ self.boundary(i)
            for r in range(comp.rows):
                for c in range(comp.cols):
                    if comp[r, c]:
                        return (
                            f"boundary composite nonzero at dimension {i}, "
                            f"row {r}, col {c}"
                        )
        return None

    def assert_valid(self) -> "CellComplex":
        msg = self.validate()
        if msg is not None:
            raise ValueError(msg)
        return self

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CellComplex)
            and self.cells == other.cells
            and self._bnd == other._bnd
            and self.augmented == other.augmented
        )

    def __hash__(self) -> int:
        return hash((self.cells, self._bnd, self.augmented))

    def __repr__(self) -> str:
        sizes = "/".join(str(len(layer)) for layer in self.cells)
        return f"<CellComplex dim={self.dim} cells={sizes} augmented={self.augmented}>"


def from_simplicial_facets(
    facets: Iterable[Iterable], augmented: bool = True
) -> CellComplex:
    """The simplicial complex generated by the given facets.

    Vertices are compared as strings; each k-cell is the sorted tuple of its
    vertices, labelled by joining them.  Boundary signs follow the standard
    alternating convention on the sorted vertex order, so cell order and all
    matrices are deterministic.
    """
    gens = []
    for f in facets:
        vs = tuple(str(v) for v in f)
        if not vs:
            raise ValueError("empty facet")
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate vertex in facet {tuple(f)!r}")
        gens.append(tuple(sorted(vs)))
    if not gens:
        raise ValueError("at least one facet is required")
    d = max(len(g) for g in gens) - 1
    by_dim: list[set[tuple[str, ...]]] = [set() for _ in range(d + 1)]
    for g in gens:
        for k in range(1, len(g) + 1):
            for sub in combinations(g, k):
                by_dim[k - 1].add(sub)
    ordered = [sorted(layer) for layer in by_dim]
    labels = _labels_for(t for layer in ordered for t in layer)
    cells = [[labels[t] for t in layer] for layer in ordered]
    boundaries = []
    for k in range(1, d + 1):
        index = {t: i for i, t in enumerate(ordered[k - 1])}
        rows = [[0] * len(ordered[k]) for _ in ordered[k - 1]]
        for j, simplex in enumerate(ordered[k]):
            for omit in range(len(simplex)):
                face = simplex[:omit] + simplex[omit + 1 :]
                rows[index[face]][j] = -1 if omit % 2 else 1
        boundaries.append(IntMatrix(rows, shape=(len(ordered[k - 1]), len(ordered[k]))))
    return CellComplex(cells, boundaries, augmented=augmented)


def skeleton(c: CellComplex, k: int) -> CellComplex:
    """The k-dimensional skeleton, as a complex of dimension k."""
    if not 0 <= k <= c.dim:
        raise ValueError(f"skeleton dimension {k} out of range")
    return CellComplex(c.cells[: k + 1], c.boundaries[:k], augmented=c.augmented)


def top_restriction(c: CellComplex, facet_labels: Iterable[str]) -> CellComplex:
    """The subcomplex with full codimension-one skeleton and the given facets."""
    if c.dim < 1:
        raise ValueError("top restriction needs dimension >= 1")
    idx = sorted({c.facet_index(l) for l in facet_labels})
    top = c.boundary(c.dim)
    restricted = top.submatrix(range(top.rows), idx)
    cells = list(c.cells[:-1]) + [tuple(c.facets[j] for j in idx)]
    return CellComplex(cells, c.boundaries[:-1] + (restricted,), augmented=c.augmented)


@dataclass(frozen=True)
class Subcomplex:
    """A subcomplex of `parent`, recorded as selected labels per dimension.

    When the parent is augmented the virtual (-1)-cell is always considered
    selected, so relative chain complexes never carry the augmentation row.
    """

    parent: CellComplex
    selected: tuple[frozenset[str], ...]

    def __post_init__(self):
        if len(self.selected) != self.parent.dim + 1:
            raise ValueError("need one selection per dimension 0..d")
        for i, sel in enumerate(self.selected):
            for lab in sel:
                self.parent.cell_index(i, lab)

    @classmethod
    def from_labels(
        cls, parent: CellComplex, labels_by_dim: dict[int, Iterable[str]]
    ) -> "Subcomplex":
        sel = [frozenset() for _ in range(parent.dim + 1)]
        for i, labs in labels_by_dim.items():
            if not 0 <= i <= parent.dim:
                raise ValueError(f"dimension {i} out of range")
            sel[i] = frozenset(str(l) for l in labs)
        return cls(parent, tuple(sel))

    def closure_violation(self) -> str | None:
        """None if closed under the boundary support, else a description."""
        for i in range(1, self.parent.dim + 1):
            bnd = self.parent.boundary(i)
            lower = self.parent.cells[i - 1]
            for lab in self.selected[i]:
                j = self.parent.cell_index(i, lab)
                for r in range(bnd.rows):
                    if bnd[r, j] and lower[r] not in self.selected[i - 1]:
                        return (
                            f"{i}-cell {lab!r} selected but its face "
                            f"{lower[r]!r} is not"
                        )
        return None

    def kept(self, i: int) -> tuple[int, ...]:
        """Indices of the parent's i-cells that are NOT in the subcomplex."""
        if not 0 <= i <= self.parent.dim:
            return ()
        sel = self.selected[i]
        return tuple(
            k for k, lab in enumerate(self.parent.cells[i]) if lab not in sel
        )


def codim1_subcomplex(c: CellComplex, keep: Iterable[str]) -> Subcomplex:
    """Subcomplex with full (d-2)-skeleton plus the given (d-1)-cells."""
    d = c.dim
    if d < 1:
        raise ValueError("needs dimension >= 1")
    sel: dict[int, Iterable[str]] = {i: c.cells[i] for i in range(d - 1)}
    sel[d - 1] = tuple(keep)
    return Subcomplex.from_labels(c, sel)


def facet_subcomplex(c: CellComplex, facets: Iterable[str], top_dim: int) -> Subcomplex:
    """Subcomplex with everything below `top_dim` plus the given top cells."""
    sel: dict[int, Iterable[str]] = {i: c.cells[i] for i in range(top_dim)}
    sel[top_dim] = tuple(facets)
    return Subcomplex.from_labels(c, sel)


@dataclass(frozen=True)
class RelativeComplex:
    """The relative chain complex of a pair (parent, sub).

    Its i-th boundary matrix is the parent's restricted to the rows and
    columns of cells outside the subcomplex.
    """

    parent: CellComplex
    sub: Subcomplex

    def __post_init__(self):
        if self.sub.parent != self.parent:
            raise ValueError("subcomplex belongs to a different complex")

    def n_cells(self, i: int) -> int:
        return len(self.sub.kept(i))

    def boundary(self, i: int) -> IntMatrix:
        d = self.parent.dim
        rows = self.sub.kept(i - 1)
        cols = self.sub.kept(i)
        if 1 <= i <= d:
            return self.parent.boundary(i).submatrix(rows, cols)
        return IntMatrix.zeros(len(rows), len(cols))


def _chain_homology(boundary_at, i: int) -> FiniteAbelianGroup:
    kb = kernel_basis(boundary_at(i))
    image_coords = solve_int(kb, boundary_at(i + 1))
    return cokernel_group(image_coords)


@lru_cache(maxsize=None)
def reduced_homology(c: CellComplex, i: int) -> FiniteAbelianGroup:
    """Reduced homology in degree i (reduced whenever the complex is augmented)."""
    if not -1 <= i <= c.dim:
        raise ValueError(f"degree {i} out of range for dimension {c.dim}")
    return _chain_homology(c.boundary, i)


@lru_cache(maxsize=None)
def relative_homology(pair: RelativeComplex, i: int) -> FiniteAbelianGroup:
    """Homology of the relative chain complex in degree i."""
    if not -1 <= i <= pair.parent.dim:
        raise ValueError(f"degree {i} out of range")
    return _chain_homology(pair.boundary, i)


def torsion_coefficient(c: CellComplex, i: int) -> int:
    """Order of the torsion subgroup of the i-th reduced homology."""
    return reduced_homology(c, i).torsion_order


def torsion_coefficient_rel(pair: RelativeComplex, i: int) -> int:
    """Order of the torsion subgroup of the i-th relative homology."""
    return relative_homology(pair, i).torsion_order


def relative_pair(c: CellComplex, gamma: Iterable[str]) -> RelativeComplex:
    """The pair (c, G) where G is the codimension-one subcomplex with the
    given (d-1)-cells and full (d-2)-skeleton."""
    return RelativeComplex(c, codim1_subcomplex(c, gamma))


def euler_characteristics(c: CellComplex) -> tuple[int, int]:
    """(cell-count alternating sum, Betti alternating sum) over all degrees."""
    lo = -1 if c.augmented else 0
    chi_cells = sum((-1) ** i * c.n_cells(i) for i in range(lo, c.dim + 1))
    chi_betti = sum(
        (-1) ** i * reduced_homology(c, i).free_rank for i in range(lo, c.dim + 1)
    )
    return chi_cells, chi_betti
