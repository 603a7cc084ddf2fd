"""Girth, connectivity, shortest lattice vectors, and Hermite-constant bounds.

The girth and connectivity of a complex are the smallest circuit and
cocircuit sizes of its facet matroid.  Combined with exact shortest-vector
computations on the cut and flow lattices they yield the classical
Hermite-constant inequalities; the n-th powers of the Hermite constants are
known exactly for ranks one through eight, and the checks are skipped
(explicitly) outside that range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Iterable

from .cells import CellComplex
from .cutflow import enumerate_circuits, enumerate_cocircuits
from .forests import matroid_rank, tau, tau_star
from .intlinalg import IntMatrix, gram
from .lattices import Lattice, _fraction_inverse, cut_lattice, flow_lattice

# gamma_n^n for n = 1..8 (the only ranks with exactly known Hermite constants)
GAMMA_NTH_POWER: dict[int, Fraction] = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}


@dataclass(frozen=True)
class HermiteBudget:
    """The exact n-th power of the Hermite constant, when known."""

    rank: int
    gamma_pow: Fraction | None

    @classmethod
    def for_rank(cls, n: int) -> "HermiteBudget":
        return cls(n, GAMMA_NTH_POWER.get(n))


def girth(c: CellComplex) -> int | float:
    """Size of the smallest circuit, or infinity when none exists."""
    first = next(iter(enumerate_circuits(c)), None)
    return math.inf if first is None else len(first.facets)


def connectivity(c: CellComplex) -> int | float:
    """Size of the smallest cocircuit, or infinity when none exists."""
    first = next(iter(enumerate_cocircuits(c)), None)
    return math.inf if first is None else len(first.facets)


def _shortest(lat: Lattice) -> tuple[int, list[tuple[int, ...]]]:
    # exhaustive search in a dual-bounded coefficient box
    b = lat.basis
    k = b.cols
    g = gram(b)
    radius = min(g[i, i] for i in range(k))
    ginv = _fraction_inverse(g)
    bounds = []
    for i in range(k):
        q = ginv[i][i] * radius
        bounds.append(isqrt(q.numerator // q.denominator))
    best = radius
    witnesses: list[tuple[int, ...]] = []
    grows = g.entries
    for coeff in product(*(range(-m, m + 1) for m in bounds)):
        lead = next((x for x in coeff if x), None)
        if lead is None or lead < 0:
            continue  # skip zero; count each +-pair once
        norm = 0
        for i, ci in enumerate(coeff):
            if ci:
                row = grows[i]
                norm += ci * sum(row[j] * cj for j, cj in enumerate(coeff))
        if norm < best:
            best = norm
            witnesses = [coeff]
        elif norm == best:
            witnesses.append(coeff)
    # a basis vector of minimal diagonal always lies inside the box, so at
    # least one witness was seen
    return best, witnesses


def shortest_vector_normsq(lat: Lattice) -> int:
    """Exact minimum of <x, x> over nonzero lattice vectors."""
    if lat.rank == 0:
        raise ValueError("rank-0 lattice has no nonzero vectors")
    norm, _ = _shortest(lat)
    return norm


def shortest_lattice_vectors(lat: Lattice) -> tuple[int, list[tuple[int, ...]]]:
    """Minimum squared norm together with all minimizers (one per +- pair),
    in ambient coordinates."""
    if lat.rank == 0:
        raise ValueError("rank-0 lattice has no nonzero vectors")
    norm, coeffs = _shortest(lat)
    out = []
    for coeff in coeffs:
        col = (lat.basis @ IntMatrix.from_columns([coeff], rows=lat.rank)).column(0)
        out.append(col)
    return norm, out


@dataclass(frozen=True)
class HermiteRow:
    name: str
    lhs: str
    rhs: str
    status: str  # "pass" | "fail" | "skip"

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class HermiteReport:
    rows: tuple[HermiteRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)


def _check_row(name: str, lhs: Fraction, rhs: Fraction) -> HermiteRow:
    return HermiteRow(name, str(lhs), str(rhs), "pass" if lhs <= rhs else "fail")


def hermite_check(c: CellComplex) -> HermiteReport:
    """Exact rational verification of the Hermite-constant inequalities for
    the cut and flow lattices, plus the stronger shortest-vector facts that
    imply them.  Sides with rank 0 or rank > 8 are reported as skipped."""
    rows: list[HermiteRow] = []
    r = matroid_rank(c)
    n = len(c.facets)
    b = n - r
    k = connectivity(c)
    g = girth(c)

    if r == 0:
        rows.append(HermiteRow("cut-side inequality", "-", "-", "skip"))
    elif r > 8:
        rows.append(
            HermiteRow("cut-side inequality", f"rank {r}", "no constant beyond 8", "skip")
        )
    else:
        tv = tau(c)
        rows.append(
            _check_row(
                "connectivity^r <= gamma_r^r * tau",
                Fraction(k) ** r,
                GAMMA_NTH_POWER[r] * tv,
            )
        )
        sv = shortest_vector_normsq(cut_lattice(c))
        rows.append(
            _check_row("connectivity <= min normsq of cut lattice", Fraction(k), Fraction(sv))
        )

    if b == 0:
        rows.append(HermiteRow("flow-side inequality", "-", "-", "skip"))
    elif b > 8:
        rows.append(
            HermiteRow("flow-side inequality", f"rank {b}", "no constant beyond 8", "skip")
        )
    else:
        ts = tau_star(c)
        rows.append(
            _check_row(
                "girth^b <= gamma_b^b * tau*",
                Fraction(g) ** b,
                GAMMA_NTH_POWER[b] * ts,
            )
        )
        sv = shortest_vector_normsq(flow_lattice(c))
        rows.append(
            _check_row("girth <= min normsq of flow lattice", Fraction(g), Fraction(sv))
        )
    return HermiteReport(tuple(rows))
