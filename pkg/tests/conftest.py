"""Shared fixtures: the worked example complexes plus a seeded random suite."""

from itertools import combinations

import pytest

from cellcut import (
    CellComplex,
    enumerate_csfs,
    enumerate_relatively_acyclic,
    from_simplicial_facets,
)
from cellcut.cli import parse_document, random_document
from cellcut.intlinalg import IntMatrix


def make_projective_plane() -> CellComplex:
    # one cell per dimension; the 2-cell wraps twice around the 1-cell
    return CellComplex(
        [["v"], ["e"], ["f"]], [IntMatrix([[0]]), IntMatrix([[2]])]
    )


def make_degree_pair(a: int, b: int) -> CellComplex:
    # a vertex, a loop, and two disks attached with winding numbers a and b
    return CellComplex(
        [["v"], ["e"], ["s1", "s2"]], [IntMatrix([[0]]), IntMatrix([[a, b]])]
    )


def make_two_loop() -> CellComplex:
    # a vertex, two loops, four disks of degrees 2, 3 on one loop and 5, 7
    # on the other
    return CellComplex(
        [["v"], ["e1", "e2"], ["s2", "s3", "s5", "s7"]],
        [IntMatrix([[0, 0]]), IntMatrix([[2, 3, 0, 0], [0, 0, 5, 7]])],
    )


def make_theta_shell() -> CellComplex:
    # two vertices joined by three parallel edges, with three disks glued in
    return CellComplex(
        [["v1", "v2"], ["e1", "e2", "e3"], ["s1", "s2", "s3"]],
        [
            IntMatrix([[-1, -1, -1], [1, 1, 1]]),
            IntMatrix([[2, 2, 0], [-2, 0, 1], [0, -2, -1]]),
        ],
    )


def make_triangle() -> CellComplex:
    return from_simplicial_facets(["12", "13", "23"])


BIPYRAMID_FACETS = ["123", "124", "125", "134", "135", "234", "235"]
BIPYRAMID_TREE = ("123", "124", "234", "135", "235")
BIPYRAMID_TREE2 = ("124", "125", "134", "135", "235")


def make_bipyramid() -> CellComplex:
    return from_simplicial_facets(BIPYRAMID_FACETS)


# the 6-vertex triangulation of the real projective plane (icosahedron with
# antipodal faces identified); it uses all 15 edges of the complete graph
RP2_SIX_FACES = (
    "123", "124", "135", "146", "156", "236", "245", "256", "345", "346",
)


def make_complete_two_complex_six() -> CellComplex:
    return from_simplicial_facets(
        "".join(t) for t in combinations("123456", 3)
    )


@pytest.fixture(scope="session")
def projective_plane():
    return make_projective_plane()


@pytest.fixture(scope="session")
def two_loop():
    return make_two_loop()


@pytest.fixture(scope="session")
def theta_shell():
    return make_theta_shell()


@pytest.fixture(scope="session")
def triangle():
    return make_triangle()


@pytest.fixture(scope="session")
def bipyramid():
    return make_bipyramid()


@pytest.fixture(scope="session")
def complete_six():
    return make_complete_two_complex_six()


def paper_fixtures() -> list[tuple[str, CellComplex]]:
    return [
        ("triangle", make_triangle()),
        ("projective-plane", make_projective_plane()),
        ("degree-pair-6-2", make_degree_pair(6, 2)),
        ("bipyramid", make_bipyramid()),
        ("two-loop", make_two_loop()),
        # extra torsion-rich attaching degrees
        ("degree-pair-4-6", make_degree_pair(4, 6)),
        ("degree-pair-2-4", make_degree_pair(2, 4)),
    ]


def _count_independent_up_to(matrix, size: int, cap: int) -> int:
    from itertools import islice

    from cellcut.forests import _independent_subsets

    return sum(1 for _ in islice(_independent_subsets(matrix, size), cap + 1))


def build_random_suite(count: int = 50) -> list[tuple[str, CellComplex]]:
    """Deterministic small random complexes (<= 7 vertices, dim <= 3).

    Sizes are filtered so that exhaustive all-pairs identity checks stay
    cheap: at most 9 facets (10 for graphs) and a bounded number of
    (forest, subcomplex) pairs, counted lazily so rejection is cheap.
    """
    from cellcut.forests import matroid_rank as _rank

    out: list[tuple[str, CellComplex]] = []
    dims = [1, 2, 3]
    verts = {1: [5, 6, 7], 2: [5, 6], 3: [5, 6]}
    probs = [0.35, 0.5, 0.65]
    seed = 0
    while len(out) < count and seed < 3000:
        seed += 1
        dim = dims[seed % 3]
        vs = verts[dim][(seed // 3) % len(verts[dim])]
        p = probs[(seed // 7) % 3]
        try:
            doc = random_document(seed, vs, dim, p)
        except Exception:
            continue
        c = parse_document(doc)
        n = len(c.facets)
        if not 2 <= n <= (10 if dim == 1 else 9):
            continue
        bd = c.boundary(c.dim)
        r = _rank(c)
        ncsf = _count_independent_up_to(bd, r, 200)
        if ncsf > 200:
            continue
        ngam = _count_independent_up_to(bd.transpose(), r, 200)
        if ngam > 200 or ncsf * ngam > 800:
            continue
        out.append((f"random-{seed}", c))
    if len(out) < count:
        raise RuntimeError("could not assemble the random suite")
    return out


@pytest.fixture(scope="session")
def random_suite():
    return build_random_suite()


@pytest.fixture(scope="session")
def full_suite(random_suite):
    return paper_fixtures() + random_suite
