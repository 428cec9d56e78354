"""Infinitesimal rigidity of periodic frameworks on a fixed torus."""

from .counts import (
    CountReport,
    DecompositionFailure,
    TreeDecomposition,
    fact_identity,
    gain_tightness_check,
    maxwell_check,
    rank_graded_sparsity_check,
    synthesize_constructive_gains,
    tree_decomposition,
)
from .derived import DerivedWindow, expand_window, fiber_edge_lengths, lift_flex
from .errors import (
    ConnectivityError,
    DegeneratePositionError,
    DomainError,
    InvalidWalkError,
    NeedsBruteForceError,
    ParseError,
    PeriodicRigidityError,
    ProjectionError,
    SingularLatticeError,
    StructureError,
    TreeError,
)
from .graph import (
    Edge,
    GainGraph,
    GainSpace,
    WalkStep,
    fundamental_cycles,
    gain_space,
    net_gain,
    periodic_equivalent,
)
from .rigidity import (
    FlexBasis,
    RigidityMatrix,
    StressBasis,
    build_rigidity_matrix,
    flex_basis,
    generic_rank,
    is_infinitesimally_rigid,
    rank,
    stress_basis,
    trivial_motion_basis,
)
from .tgain import TPotentials, local_gain_generators, shifted_positions, t_gains, t_potentials
from .torus import (
    OrbitFramework,
    Torus,
    congruent,
    edge_length,
    normalize_lattice,
    to_unit_torus,
)

__version__ = "0.1.0"
