"""Cellular spanning forests and torsion-weighted forest enumeration.

The facets of a complex carry a matroid: the column matroid of the top
boundary matrix.  Its bases are the cellular spanning forests (CSFs); this
module enumerates them together with their codimension-one torsion, computes
the complexity tau (the sum of squared torsion coefficients), the dual count
tau*, the calibration factor mu of a forest, and the determinant identities
relating all of these to reduced Laplacians.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .cells import (
    CellComplex,
    RelativeComplex,
    Subcomplex,
    codim1_subcomplex,
    facet_subcomplex,
    relative_homology,
    relative_pair,
    reduced_homology,
    top_restriction,
    torsion_coefficient,
    torsion_coefficient_rel,
)
from .intlinalg import (
    ConsistencyError,
    IntMatrix,
    cokernel_group,
    det,
    gram,
    kernel_basis,
    rank,
    solve_int,
)


@dataclass(frozen=True)
class ForestCertificate:
    """A cellular spanning forest: its facets plus the codimension-one torsion."""

    facets: tuple[str, ...]
    torsion: int


@dataclass(frozen=True)
class RelAcyclicCertificate:
    """A relatively acyclic codimension-one subcomplex, by complement.

    `kept_rows` lists the (d-1)-cells forming a row basis of the top
    boundary; `gamma` is the complementary (d-1)-cell set (the subcomplex
    itself also contains the full (d-2)-skeleton).
    """

    kept_rows: tuple[str, ...]
    gamma: tuple[str, ...]


@lru_cache(maxsize=None)
def _top(c: CellComplex) -> IntMatrix:
    return c.boundary(c.dim)


@lru_cache(maxsize=None)
def _top_gram(c: CellComplex) -> IntMatrix:
    # Gram matrix of the facet boundary columns (the down-up Laplacian in
    # top dimension)
    return gram(_top(c))


@lru_cache(maxsize=None)
def _codim1_laplacian(c: CellComplex) -> IntMatrix:
    bd = _top(c)
    return bd @ bd.transpose()


@lru_cache(maxsize=None)
def matroid_rank(c: CellComplex) -> int:
    """Rank of the top boundary matrix (size of every CSF)."""
    if c.dim < 1:
        raise ValueError("rank needs dimension >= 1")
    return rank(_top(c))


@lru_cache(maxsize=None)
def _kernel_coords(c: CellComplex) -> IntMatrix:
    # facet boundary columns written in an integral basis of ker of the
    # (d-1)-boundary; restricting columns gives codim-1 homology of any
    # top restriction
    kb = kernel_basis(c.boundary(c.dim - 1))
    return solve_int(kb, _top(c))


def facet_indices(c: CellComplex, facets: Iterable[str]) -> tuple[int, ...]:
    """Sorted facet indices; rejects unknown or repeated labels."""
    labels = list(facets)
    idx = sorted(c.facet_index(l) for l in labels)
    if len(set(idx)) != len(idx):
        raise ValueError("repeated facet label")
    return tuple(idx)


def canonical_facets(c: CellComplex, facets: Iterable[str]) -> tuple[str, ...]:
    return tuple(c.facets[j] for j in facet_indices(c, facets))


def forest_torsion(c: CellComplex, facets: Iterable[str]) -> int:
    """Torsion coefficient of codimension-one homology of the restriction."""
    idx = facet_indices(c, facets)
    x = _kernel_coords(c)
    return cokernel_group(x.submatrix(range(x.rows), idx)).torsion_order


def is_csf(c: CellComplex, facets: Iterable[str]) -> bool:
    """Whether the facets form a column basis of the top boundary."""
    try:
        idx = facet_indices(c, facets)
    except ValueError:
        return False
    if len(idx) != matroid_rank(c):
        return False
    bd = _top(c)
    return rank(bd.submatrix(range(bd.rows), idx)) == len(idx)


def _independent_subsets(m: IntMatrix, size: int) -> Iterator[tuple[int, ...]]:
    # lexicographic backtracking over independent column sets of given size
    n = m.cols
    allrows = range(m.rows)

    def extend(chosen: tuple[int, ...], start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == size:
            yield chosen
            return
        for j in range(start, n - (size - len(chosen)) + 1):
            cand = chosen + (j,)
            if rank(m.submatrix(allrows, cand)) == len(cand):
                yield from extend(cand, j + 1)

    yield from extend((), 0)


@lru_cache(maxsize=None)
def _csf_survey(c: CellComplex) -> tuple[ForestCertificate, ...]:
    r = matroid_rank(c)
    x = _kernel_coords(c)
    out = []
    for idx in _independent_subsets(_top(c), r):
        tor = cokernel_group(x.submatrix(range(x.rows), idx)).torsion_order
        out.append(ForestCertificate(tuple(c.facets[j] for j in idx), tor))
    return tuple(out)


def enumerate_csfs(c: CellComplex) -> Iterator[ForestCertificate]:
    """Every cellular spanning forest exactly once, facets in lexicographic
    index order, each with its codimension-one torsion coefficient."""
    yield from _csf_survey(c)


def first_csf(c: CellComplex) -> tuple[str, ...]:
    """The lexicographically first CSF (greedy, without full enumeration)."""
    bd = _top(c)
    r = matroid_rank(c)
    chosen: list[int] = []
    for j in range(bd.cols):
        if len(chosen) == r:
            break
        cand = chosen + [j]
        if rank(bd.submatrix(range(bd.rows), cand)) == len(cand):
            chosen = cand
    if len(chosen) != r:
        raise ConsistencyError("greedy basis construction fell short")
    return tuple(c.facets[j] for j in chosen)


@lru_cache(maxsize=None)
def tau(c: CellComplex) -> int:
    """Complexity: the sum of squared torsion coefficients over all CSFs."""
    return sum(cert.torsion**2 for cert in _csf_survey(c))


def is_relatively_acyclic(c: CellComplex, gamma: Iterable[str]) -> bool:
    """Whether the codim-1 subcomplex with the given (d-1)-cells (plus full
    (d-2)-skeleton) is relatively acyclic, i.e. the complementary rows form
    a row basis of the top boundary."""
    d = c.dim
    sel = {c.cell_index(d - 1, l) for l in gamma}
    kept = [i for i in range(c.n_cells(d - 1)) if i not in sel]
    if len(kept) != matroid_rank(c):
        return False
    bd = _top(c)
    return rank(bd.submatrix(kept, range(bd.cols))) == len(kept)


@lru_cache(maxsize=None)
def _gamma_survey(c: CellComplex) -> tuple[tuple[RelAcyclicCertificate, int], ...]:
    # all relatively acyclic codim-1 subcomplexes with their relative torsions
    d = c.dim
    r = matroid_rank(c)
    labels = c.cells[d - 1]
    out = []
    for idx in _independent_subsets(_top(c).transpose(), r):
        kept = tuple(labels[i] for i in idx)
        gamma = tuple(l for l in labels if l not in set(kept))
        cert = RelAcyclicCertificate(kept, gamma)
        tg = torsion_coefficient_rel(relative_pair(c, gamma), d - 1)
        out.append((cert, tg))
    return tuple(out)


def enumerate_relatively_acyclic(c: CellComplex) -> Iterator[RelAcyclicCertificate]:
    """Every relatively acyclic codim-1 subcomplex exactly once, by row basis
    in lexicographic index order."""
    for cert, _ in _gamma_survey(c):
        yield cert


def _gamma_cells(c: CellComplex, gamma) -> tuple[str, ...]:
    if isinstance(gamma, RelAcyclicCertificate):
        return gamma.gamma
    return tuple(str(l) for l in gamma)


@lru_cache(maxsize=None)
def _mu_cached(c: CellComplex, facets: tuple[str, ...]) -> int:
    d = c.dim
    t_forest = forest_torsion(c, facets)
    t_total = torsion_coefficient(c, d - 1)
    weight = sum(tg * tg for _, tg in _gamma_survey(c))
    num = t_forest * weight
    if num % (t_total * t_total):
        raise ConsistencyError("calibration sum is not divisible as required")
    by_sum = num // (t_total * t_total)
    idx = facet_indices(c, facets)
    block = det(_top_gram(c).submatrix(idx, idx))
    if block % t_forest:
        raise ConsistencyError("forest Laplacian determinant not divisible by torsion")
    by_det = block // t_forest
    if by_sum != by_det:
        raise ConsistencyError(
            f"calibration factor mismatch: {by_sum} (relative sum) vs "
            f"{by_det} (determinant)"
        )
    return by_sum


def mu(c: CellComplex, facets: Iterable[str]) -> int:
    """Calibration factor of a CSF: the common divisor pulled out of its
    bond vectors.  Computed two independent ways (torsion-weighted sum over
    relatively acyclic subcomplexes, and reduced Gram determinant) which
    must agree."""
    f = canonical_facets(c, facets)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    return _mu_cached(c, f)


def tau_by_determinant(c: CellComplex, gamma) -> int:
    """Complexity via the matrix-forest determinant for one relatively
    acyclic subcomplex: scale det of the reduced up-down Laplacian by the
    squared torsion ratio.  The division is exact; a remainder is a bug."""
    cells = _gamma_cells(c, gamma)
    if not is_relatively_acyclic(c, cells):
        raise ValueError("subcomplex is not relatively acyclic")
    d = c.dim
    sel = {c.cell_index(d - 1, l) for l in cells}
    kept = [i for i in range(c.n_cells(d - 1)) if i not in sel]
    block = det(_codim1_laplacian(c).submatrix(kept, kept))
    t_total = torsion_coefficient(c, d - 1)
    t_rel = torsion_coefficient_rel(relative_pair(c, cells), d - 1)
    num = t_total * t_total * block
    if num % (t_rel * t_rel):
        raise ConsistencyError("matrix-forest division is not exact")
    return num // (t_rel * t_rel)


@dataclass(frozen=True)
class DetHomologyReport:
    """Four independently computed conditions that must agree:
    (a) the square restriction of the boundary is nonsingular,
    (b) both top relative homology groups vanish rationally,
    (c) at least one of them vanishes rationally,
    (d) the facets form a CSF and the subcomplex is relatively acyclic.
    """

    nonsingular: bool
    both_vanish: bool
    either_vanishes: bool
    forest_and_acyclic: bool

    @property
    def conditions(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.nonsingular,
            self.both_vanish,
            self.either_vanishes,
            self.forest_and_acyclic,
        )

    @property
    def all_equal(self) -> bool:
        return len(set(self.conditions)) == 1


def check_det_is_homology(c: CellComplex, facets, gamma) -> DetHomologyReport:
    d = c.dim
    r = matroid_rank(c)
    fidx = facet_indices(c, facets)
    cells = _gamma_cells(c, gamma)
    sel = {c.cell_index(d - 1, l) for l in cells}
    kept = [i for i in range(c.n_cells(d - 1)) if i not in sel]
    if len(fidx) != r or len(kept) != r:
        raise ValueError(
            f"shape mismatch: need {r} facets and {c.n_cells(d-1) - r} "
            f"codim-1 cells in the subcomplex"
        )
    nonsingular = det(_top(c).submatrix(kept, fidx)) != 0
    upsilon = top_restriction(c, [c.facets[j] for j in fidx])
    pair = RelativeComplex(upsilon, codim1_subcomplex(upsilon, cells))
    top_rank = relative_homology(pair, d).free_rank
    codim_rank = relative_homology(pair, d - 1).free_rank
    forest_and_acyclic = is_csf(c, [c.facets[j] for j in fidx]) and is_relatively_acyclic(
        c, cells
    )
    return DetHomologyReport(
        nonsingular,
        top_rank == 0 and codim_rank == 0,
        top_rank == 0 or codim_rank == 0,
        forest_and_acyclic,
    )


@dataclass(frozen=True)
class RelativeTorReport:
    """The two torsion products that the relative-torsion identity equates."""

    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def check_relative_tor(c: CellComplex, facets, gamma) -> RelativeTorReport:
    """Product identity between forest, total, and relative torsions, both
    sides computed from scratch."""
    d = c.dim
    f = canonical_facets(c, facets)
    cells = _gamma_cells(c, gamma)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    if not is_relatively_acyclic(c, cells):
        raise ValueError("subcomplex is not relatively acyclic")
    upsilon = top_restriction(c, f)
    lhs = torsion_coefficient(upsilon, d - 1) * torsion_coefficient_rel(
        relative_pair(c, cells), d - 1
    )
    rhs = torsion_coefficient(c, d - 1) * torsion_coefficient_rel(
        RelativeComplex(upsilon, codim1_subcomplex(upsilon, cells)), d - 1
    )
    return RelativeTorReport(lhs, rhs)


@lru_cache(maxsize=None)
def tau_star(c: CellComplex) -> int:
    """Dual complexity: sum of squared relative torsions of (acyclic
    extension, forest) pairs over all CSFs."""
    from .lattices import acyclization  # deferred: lattices imports this module

    ext = acyclization(c).extended
    d = c.dim
    total = 0
    for cert in _csf_survey(c):
        sub = facet_subcomplex(ext, cert.facets, d)
        h = relative_homology(RelativeComplex(ext, sub), d)
        if h.free_rank:
            raise ConsistencyError("relative homology of a CSF pair is not finite")
        total += h.torsion_order**2
    return total
