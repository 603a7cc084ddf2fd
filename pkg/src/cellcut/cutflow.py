"""Bonds, circuits, and characteristic cut/flow vectors.

Cut vectors live in the row space of the top boundary matrix, flow vectors
in its kernel.  Every bond (cocircuit of the facet matroid) supports a cut
vector unique up to scale, and every circuit a flow vector; the scalings
constructed here make the coefficients torsion coefficients of subcomplexes.

All emitted vectors are normalized so that their first nonzero coordinate
(in facet order) is positive; the underlying constructions fix them only up
to a global sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator

from .cells import CellComplex
from .forests import (
    canonical_facets,
    facet_indices,
    forest_torsion,
    is_csf,
    matroid_rank,
    mu,
    _top,
    _top_gram,
)
from .intlinalg import (
    ConsistencyError,
    IntMatrix,
    cokernel_group,
    det,
    kernel_basis,
    rank,
)


@dataclass(frozen=True)
class Bond:
    """A minimal facet set meeting every CSF (cocircuit of the facet matroid)."""

    facets: tuple[str, ...]


@dataclass(frozen=True)
class Circuit:
    """A minimal linearly dependent set of boundary columns."""

    facets: tuple[str, ...]


@dataclass(frozen=True)
class FacetVector:
    """An integer vector indexed by the facets of a complex."""

    facets: tuple[str, ...]
    coeffs: tuple[int, ...]
    kind: str  # "cut" | "flow"

    def __post_init__(self):
        if len(self.facets) != len(self.coeffs):
            raise ValueError("coefficient count does not match facet count")
        if self.kind not in ("cut", "flow"):
            raise ValueError(f"unknown vector kind {self.kind!r}")

    def __getitem__(self, label: str) -> int:
        return self.coeffs[self.facets.index(label)]

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(l for l, x in zip(self.facets, self.coeffs) if x)

    def as_dict(self) -> dict[str, int]:
        """Nonzero coefficients keyed by facet label, in facet order."""
        return {l: x for l, x in zip(self.facets, self.coeffs) if x}

    def dot(self, other: "FacetVector") -> int:
        if self.facets != other.facets:
            raise ValueError("vectors over different facet sets")
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "FacetVector":
        return FacetVector(self.facets, tuple(-x for x in self.coeffs), self.kind)


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = tuple(coeffs)
    for x in out:
        if x:
            return out if x > 0 else tuple(-y for y in out)
    return out


def fundamental_bond(c: CellComplex, forest: Iterable[str], sigma: str) -> Bond:
    """The facet itself plus every facet that can replace it in the forest."""
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    if sigma not in f:
        raise ValueError(f"{sigma!r} is not in the forest")
    base = tuple(l for l in f if l != sigma)
    members = [sigma]
    fset = set(f)
    for rho in c.facets:
        if rho in fset:
            continue
        if is_csf(c, base + (rho,)):
            members.append(rho)
    idx = facet_indices(c, members)
    return Bond(tuple(c.facets[j] for j in idx))


def fundamental_circuit(c: CellComplex, forest: Iterable[str], sigma: str) -> Circuit:
    """The unique circuit inside forest + sigma."""
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    if sigma in f:
        raise ValueError(f"{sigma!r} already belongs to the forest")
    idx = facet_indices(c, f + (sigma,))
    bd = _top(c)
    kb = kernel_basis(bd.submatrix(range(bd.rows), idx))
    if kb.cols != 1:
        raise ConsistencyError("forest plus one facet must have nullity one")
    support = tuple(c.facets[idx[i]] for i in range(len(idx)) if kb[i, 0])
    if sigma not in support:
        raise ConsistencyError("added facet missing from its own circuit")
    return Circuit(support)


def enumerate_circuits(c: CellComplex) -> Iterator[Circuit]:
    """All circuits, by increasing size then lexicographic facet order."""
    bd = _top(c)
    n = bd.cols
    r = matroid_rank(c)
    allrows = range(bd.rows)
    found: list[frozenset[int]] = []
    for size in range(1, min(n, r + 1) + 1):
        for comb in combinations(range(n), size):
            s = frozenset(comb)
            if any(k <= s for k in found):
                continue
            if rank(bd.submatrix(allrows, comb)) < size:
                found.append(s)
                yield Circuit(tuple(c.facets[j] for j in comb))


def enumerate_cocircuits(c: CellComplex) -> Iterator[Bond]:
    """All bonds, by increasing size then lexicographic facet order."""
    bd = _top(c)
    n = bd.cols
    r = matroid_rank(c)
    if r == 0:
        return
    allrows = range(bd.rows)
    found: list[frozenset[int]] = []
    for size in range(1, n - r + 2):
        for comb in combinations(range(n), size):
            s = frozenset(comb)
            if any(k <= s for k in found):
                continue
            rest = [j for j in range(n) if j not in s]
            if rank(bd.submatrix(allrows, rest)) < r:
                found.append(s)
                yield Bond(tuple(c.facets[j] for j in comb))


def exchange_sign(c: CellComplex, base: Iterable[str], sigma: str, sigma2: str) -> int:
    """Relative orientation (+1 or -1) of two facets across the hyperplane
    spanned by the base columns.

    Realized by determinant signs: both square submatrices use the base
    columns in sorted order with the distinguished facet inserted at the
    rank sigma takes inside sorted(base + sigma); the row set is the
    lexicographically first one making both determinants nonzero.
    """
    b = facet_indices(c, base)
    i1 = c.facet_index(sigma)
    i2 = c.facet_index(sigma2)
    if i1 in b or i2 in b:
        raise ValueError("distinguished facets must lie outside the base")
    pos = sum(1 for j in b if j < i1)
    cols1 = b[:pos] + (i1,) + b[pos:]
    cols2 = b[:pos] + (i2,) + b[pos:]
    bd = _top(c)
    r = len(cols1)
    for rows in combinations(range(bd.rows), r):
        d1 = det(bd.submatrix(rows, cols1))
        if not d1:
            continue
        d2 = det(bd.submatrix(rows, cols2))
        if not d2:
            continue
        return (1 if d1 > 0 else -1) * (1 if d2 > 0 else -1)
    raise ValueError("no row set certifies both column sets as bases")


def exchange_laplacian_det(
    c: CellComplex, base: Iterable[str], sigma: str, sigma2: str
) -> int:
    """det of the facet Gram matrix restricted to rows base+sigma and columns
    base+sigma2, with the distinguished columns aligned at sigma's rank.
    Equals exchange_sign * mu(base+sigma) * forest torsion of base+sigma2."""
    b = facet_indices(c, base)
    i1 = c.facet_index(sigma)
    i2 = c.facet_index(sigma2)
    pos = sum(1 for j in b if j < i1)
    rows = b[:pos] + (i1,) + b[pos:]
    cols = b[:pos] + (i2,) + b[pos:]
    return det(_top_gram(c).submatrix(rows, cols))


def uncalibrated_cut_vector(
    c: CellComplex, forest: Iterable[str], sigma: str
) -> FacetVector:
    """Cut vector supported on the fundamental bond of (forest, sigma), with
    coefficients given by Gram determinants of one-facet exchanges."""
    f = canonical_facets(c, forest)
    bond = fundamental_bond(c, f, sigma)
    cols = facet_indices(c, f)
    arows = tuple(j for j in cols if c.facets[j] != sigma)
    lap = _top_gram(c)
    coeffs = [0] * len(c.facets)
    for rho in bond.facets:
        j = c.facet_index(rho)
        coeffs[j] = det(lap.submatrix(arows + (j,), cols))
    vec = FacetVector(c.facets, _normalize(coeffs), "cut")
    if set(vec.support) != set(bond.facets):
        raise ConsistencyError("cut vector support differs from its bond")
    return vec


def calibrated_cut_vector(
    c: CellComplex,
    base: Iterable[str],
    sigma: str,
    bond: Bond | Iterable[str] | None = None,
) -> FacetVector:
    """The bond vector of base+sigma scaled down by the calibration factor;
    its entries are signed torsion coefficients of the exchanged forests."""
    b = canonical_facets(c, base)
    f = canonical_facets(c, b + (sigma,))
    if not is_csf(c, f):
        raise ValueError("base plus sigma must form a cellular spanning forest")
    fb = fundamental_bond(c, f, sigma)
    if bond is not None:
        given = set(bond.facets) if isinstance(bond, Bond) else {str(x) for x in bond}
        if given != set(fb.facets):
            raise ValueError("given bond is not the fundamental bond of (base+sigma, sigma)")
    raw = uncalibrated_cut_vector(c, f, sigma)
    m = mu(c, f)
    out = []
    for x in raw.coeffs:
        q, r = divmod(x, m)
        if r:
            raise ConsistencyError("calibration factor does not divide a coefficient")
        out.append(q)
    return FacetVector(c.facets, _normalize(out), "cut")


def cut_basis(
    c: CellComplex, forest: Iterable[str], calibrated: bool = False
) -> list[FacetVector]:
    """One bond vector per forest facet; a basis of the cut space."""
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    if not calibrated:
        return [uncalibrated_cut_vector(c, f, s) for s in f]
    return [
        calibrated_cut_vector(c, tuple(x for x in f if x != s), s) for s in f
    ]


def flow_vector(c: CellComplex, circuit: Circuit | Iterable[str]) -> FacetVector:
    """The flow supported on a circuit whose coefficient magnitudes are the
    torsion orders of the cokernels of the column-deleted restrictions."""
    labels = circuit.facets if isinstance(circuit, Circuit) else tuple(circuit)
    idx = facet_indices(c, labels)
    k = len(idx)
    bd = _top(c)
    allrows = range(bd.rows)
    sub = bd.submatrix(allrows, idx)
    if rank(sub) != k - 1:
        raise ValueError("facet set is not a circuit")
    for drop in range(k):
        others = idx[:drop] + idx[drop + 1 :]
        if rank(bd.submatrix(allrows, others)) != k - 1:
            raise ValueError("facet set is not a circuit")
    kb = kernel_basis(sub)
    if kb.cols != 1:
        raise ConsistencyError("circuit kernel is not one-dimensional")
    scale = None
    mags = []
    for drop in range(k):
        others = idx[:drop] + idx[drop + 1 :]
        m = cokernel_group(bd.submatrix(allrows, others)).torsion_order
        u = kb[drop, 0]
        if u == 0:
            raise ConsistencyError("circuit flow vanishes on a circuit facet")
        q, r = divmod(m, abs(u))
        if r:
            raise ConsistencyError("cokernel torsion is not a multiple of the kernel entry")
        if scale is None:
            scale = q
        elif scale != q:
            raise ConsistencyError("inconsistent scaling across circuit facets")
        mags.append(m)
    coeffs = [0] * len(c.facets)
    for pos, j in enumerate(idx):
        coeffs[j] = scale * kb[pos, 0]
    vec = FacetVector(c.facets, _normalize(coeffs), "flow")
    for pos, j in enumerate(idx):
        if abs(vec.coeffs[j]) != mags[pos]:
            raise ConsistencyError("flow magnitude disagrees with cokernel torsion")
    return vec


def calibrated_flow_vector(c: CellComplex, circuit: Circuit | Iterable[str]) -> FacetVector:
    """The primitive flow on a circuit: the full flow divided by the gcd of
    its coefficients."""
    vec = flow_vector(c, circuit)
    g = 0
    for x in vec.coeffs:
        g = gcd(g, x)
    return FacetVector(c.facets, tuple(x // g for x in vec.coeffs), "flow")


def flow_basis(
    c: CellComplex, forest: Iterable[str], calibrated: bool = False
) -> list[FacetVector]:
    """One circuit flow per non-forest facet; a basis of the flow space."""
    f = canonical_facets(c, forest)
    if not is_csf(c, f):
        raise ValueError("facets do not form a cellular spanning forest")
    fset = set(f)
    make = calibrated_flow_vector if calibrated else flow_vector
    return [
        make(c, fundamental_circuit(c, f, s)) for s in c.facets if s not in fset
    ]
