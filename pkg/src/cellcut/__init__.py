"""Cut and flow lattices, critical groups, and torsion-weighted spanning
forest invariants of finite cell complexes, over exact integer arithmetic."""

from .bounds import (
    GAMMA_NTH_POWER,
    HermiteBudget,
    HermiteReport,
    connectivity,
    girth,
    hermite_check,
    shortest_lattice_vectors,
    shortest_vector_normsq,
)
from .cells import (
    CellComplex,
    RelativeComplex,
    Subcomplex,
    codim1_subcomplex,
    euler_characteristics,
    facet_subcomplex,
    from_simplicial_facets,
    reduced_homology,
    relative_homology,
    relative_pair,
    skeleton,
    top_restriction,
    torsion_coefficient,
    torsion_coefficient_rel,
)
from .cutflow import (
    Bond,
    Circuit,
    FacetVector,
    calibrated_cut_vector,
    calibrated_flow_vector,
    cut_basis,
    enumerate_circuits,
    enumerate_cocircuits,
    exchange_laplacian_det,
    exchange_sign,
    flow_basis,
    flow_vector,
    fundamental_bond,
    fundamental_circuit,
    uncalibrated_cut_vector,
)
from .forests import (
    DetHomologyReport,
    ForestCertificate,
    RelAcyclicCertificate,
    RelativeTorReport,
    check_det_is_homology,
    check_relative_tor,
    enumerate_csfs,
    enumerate_relatively_acyclic,
    first_csf,
    forest_torsion,
    is_csf,
    is_relatively_acyclic,
    matroid_rank,
    mu,
    tau,
    tau_by_determinant,
    tau_star,
)
from .intlinalg import (
    ConsistencyError,
    FiniteAbelianGroup,
    IntMatrix,
    SmithForm,
    cokernel_group,
    det,
    gram,
    hermite_column_basis,
    kernel_basis,
    lattices_equal,
    minors_gcd,
    rank,
    saturation,
    smith_normal_form,
    solve_int,
)
from .lattices import (
    Acyclization,
    IdentityCheck,
    IdentityReport,
    Lattice,
    acyclization,
    cocritical_group,
    critical_group,
    cut_lattice,
    cutflow_group,
    discriminant_group,
    dual_basis,
    flow_lattice,
    integral_cut_basis,
    integral_flow_basis,
    projection_matrix,
    verify_group_identities,
)

__version__ = "0.1.0"
