"""Exact representation data for parafermion vertex algebras K(g, k)."""
from .affine import (
    AffineMultiplicityTable,
    LevelData,
    affine_weight_multiplicities,
    central_charges,
    conformal_weight_n_Lambda,
    enumerate_level_k_dominants,
    graded_dimension_series,
)
from .branching import (
    BranchingResult,
    UndeterminedError,
    branching_series,
    heisenberg_character,
    lattice_theta_series,
    lowest_conformal_weight,
    reconstruct_affine_character,
    string_series,
)
from .classify import (
    AtlasEntry,
    ModuleLabel,
    SimpleCurrentMap,
    compute_orbits,
    emit_atlas,
    enumerate_labels,
    label_action,
    lattice_translation_normalize,
    simple_current_image,
    twisted_conformal_shift,
)
from .finrep import WeightMultiplicityTable, weight_multiplicities, weyl_dimension
from .qseries import FormalQSeries
from .rootsys import (
    AlgebraSpec,
    RootSystem,
    RootSystemError,
    Weight,
    build_root_system,
    dual_coxeter_number,
    inner_product,
    k_alpha,
    q_mod_kql_representatives,
    root_system,
    simple_current_nodes,
)

__version__ = "0.1.0"
