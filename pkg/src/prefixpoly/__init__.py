"""Exact combinatorics of the prefix-sum polytope.

Pi_n(x) is the set of nonnegative vectors whose prefix sums are bounded
by those of x.  This package computes, all in exact rational arithmetic:

* the volume polynomial and its determinant form (`volume`),
* lattice-point counts, Ehrhart polynomials, plane-partition bijections,
  and the two-sided and matrix-shaped generalizations (`lattice`),
* order-cone sections of finite posets, with their chamber decomposition
  and interior-face combinatorics (`posets`),
* parking-function identities (`parking`),
* the binary-tree fan, its associahedron face structure, and the
  tree-indexed subdivision of the polytope (`treefan`),
* order-statistic band probabilities with a Monte Carlo validator
  (`probability`).

The `verification` module bundles every cross-check into runnable
suites; the `prefixpoly` console script exposes everything.
"""

from .ballot import BallotComposition, catalan, enumerate_K
from .exactmath import (
    ExactRational,
    MultivariatePolynomial,
    RationalMatrix,
    determinant,
    hook_count_rectangular,
    multichoose,
    poly_eval,
)
from .errors import ResourceLimitError
from .volume import (
    PolytopeSpec,
    inversion_oracle,
    q_specialization,
    special_ab,
    special_abc,
    special_abcm,
    volume_at,
    volume_poly,
    volume_steck,
)
from .lattice import (
    Shape,
    TwoSidedSpec,
    count_points,
    count_points_brute,
    count_points_nm,
    ehrhart_ab,
    plane_partitions,
    steck_count,
    two_sided_cells,
    two_sided_count,
    volume_nm_formula,
)
from .posets import (
    FinitePoset,
    LinearExtension,
    MarkedChain,
    heights_descents,
    ideal_lattice,
    linear_extensions,
    loewy_interior_stats,
    minkowski_support_check,
    section_count,
    section_volume,
)
from .parking import ParkingSequence, count_x_parking, enumerate_parking, is_x_parking
from .treefan import (
    PlaneBinaryTree,
    PolygonDecomposition,
    build_tree_phi,
    delta_membership,
    delta_volume,
    enumerate_trees,
    face_structure,
    fan_inequalities,
    k_of_tree,
    locate_in_fan,
    tree_of_k,
    tree_triangulation,
)
from .probability import (
    BandSpec,
    MonteCarloResult,
    band_prob,
    lower_band_prob,
    mc_band,
    multinomial_ballot,
    pyke_formula,
    upper_band_prob,
)

__version__ = "1.0.0"
