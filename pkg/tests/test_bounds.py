import math

import pytest

from cellcut import (
    GAMMA_NTH_POWER,
    HermiteBudget,
    connectivity,
    cut_lattice,
    enumerate_circuits,
    enumerate_cocircuits,
    flow_lattice,
    girth,
    hermite_check,
    matroid_rank,
    shortest_lattice_vectors,
    shortest_vector_normsq,
)
from cellcut.lattices import Lattice
from cellcut.intlinalg import IntMatrix
from fractions import Fraction


def test_gamma_table():
    assert GAMMA_NTH_POWER[2] == Fraction(4, 3)
    assert GAMMA_NTH_POWER[8] == 256
    assert HermiteBudget.for_rank(5).gamma_pow == 8
    assert HermiteBudget.for_rank(9).gamma_pow is None


def test_girth_connectivity(projective_plane, bipyramid, triangle):
    assert girth(projective_plane) == math.inf
    assert connectivity(projective_plane) == 1
    assert girth(bipyramid) == 4
    assert connectivity(bipyramid) == 2
    assert girth(triangle) == 3
    assert connectivity(triangle) == 2


def test_shortest_vectors(projective_plane, triangle, theta_shell):
    assert shortest_vector_normsq(flow_lattice(triangle)) == 3
    assert shortest_vector_normsq(cut_lattice(projective_plane)) == 4
    assert shortest_vector_normsq(flow_lattice(theta_shell)) == 6
    with pytest.raises(ValueError):
        shortest_vector_normsq(flow_lattice(projective_plane))


def test_shortest_vector_against_direct_search():
    # skewed basis: the shortest vector is not a basis vector
    lat = Lattice(2, IntMatrix.from_columns([(3, 1), (4, 1)], rows=2))
    norm, vecs = shortest_lattice_vectors(lat)
    assert norm == 1  # (1, 0) = (4,1) - (3,1)
    assert any(tuple(abs(x) for x in v) == (1, 0) for v in vecs)


def test_hermite_reports(projective_plane, bipyramid, triangle, full_suite):
    for c in (projective_plane, bipyramid, triangle):
        assert hermite_check(c).all_ok
    # flow side of the projective plane is skipped (no flows)
    rows = hermite_check(projective_plane).rows
    assert any(r.status == "skip" for r in rows)
    for name, c in full_suite[:10]:
        assert hermite_check(c).all_ok, name


def test_minimum_norms_dominate_girth_and_connectivity(full_suite):
    for name, c in full_suite[:10]:
        r = matroid_rank(c)
        n = len(c.facets)
        if 1 <= r <= 8:
            assert shortest_vector_normsq(cut_lattice(c)) >= connectivity(c), name
        if 1 <= n - r <= 8:
            assert shortest_vector_normsq(flow_lattice(c)) >= girth(c), name


def test_shortest_vector_supports(full_suite):
    # every minimal cut vector's support contains a cocircuit; every minimal
    # flow vector's support contains a circuit
    for name, c in full_suite[:8]:
        r = matroid_rank(c)
        n = len(c.facets)
        facet_pos = {f: i for i, f in enumerate(c.facets)}
        if 1 <= r <= 8:
            bonds = [set(b.facets) for b in enumerate_cocircuits(c)]
            _, vecs = shortest_lattice_vectors(cut_lattice(c))
            for v in vecs:
                supp = {c.facets[i] for i, x in enumerate(v) if x}
                assert any(b <= supp for b in bonds), (name, supp)
        if 1 <= n - r <= 8:
            circuits = [set(x.facets) for x in enumerate_circuits(c)]
            _, vecs = shortest_lattice_vectors(flow_lattice(c))
            for v in vecs:
                supp = {c.facets[i] for i, x in enumerate(v) if x}
                assert any(s <= supp for s in circuits), (name, supp)
