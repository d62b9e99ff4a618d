"""lrclab: bounds, locality verification, and random ensembles for LRC codes."""

__version__ = "0.1.0"

from .gf import Field, field, matmul, nullspace, rank, rref  # noqa: F401
from .codes import (  # noqa: F401
    LinearCode,
    WeightEnumerator,
    code_from_generator,
    code_from_parity,
    macwilliams,
    min_distance,
    weight_enumerator,
)
from .locality import (  # noqa: F401
    Certificate,
    ClosureResult,
    LocalityProfile,
    RecoveryGraph,
    best_closure_search,
    closure,
    coloring_experiment,
    distance_certificate,
    expansion_ratio_floor,
    floor_sum_identity,
    graph_from_code,
    graph_from_profile,
    is_recovering_set,
    locality_profile,
    recovery_witness,
)
from . import bounds_asym, bounds_finite, ensembles, enumerators, graphs  # noqa: F401
from ._kernels import BACKEND as kernel_backend  # noqa: F401
