"""Core numerical modules for lu-invar."""

from lu_invar.core.bloch import (
    decompose_bipartite,
    decompose_tripartite,
    flatten_mode,
    reconstruct_bipartite,
    reconstruct_tripartite,
    vec_row_major,
)
from lu_invar.core.entanglement import concurrence_pure, partial_trace_first_out
from lu_invar.core.gaugesvd import ordered_svd, partition_blocks, project_blocks
from lu_invar.core.gellmann import su_generators
from lu_invar.core.invariants_bi import (
    IncomparableFingerprintsError,
    compare_fingerprints,
    feature_matrix,
    theorem1_fingerprint,
)
from lu_invar.core.invariants_tri import (
    compare_tripartite,
    flat_feature_matrices,
    pair_feature_matrix,
    theorem2_fingerprint,
)
from lu_invar.core.models import (
    BlochBipartite,
    BlochTripartite,
    DensityMatrix,
    GeneratorBasis,
    InvariantFingerprint,
    Outcome,
    TripartiteFingerprint,
    Verdict,
)
from lu_invar.core.sampling import (
    SeededRng,
    adjoint_rotation,
    apply_lu,
    haar_unitary,
    random_density,
)

__all__ = [
    "BlochBipartite",
    "BlochTripartite",
    "DensityMatrix",
    "GeneratorBasis",
    "IncomparableFingerprintsError",
    "InvariantFingerprint",
    "Outcome",
    "SeededRng",
    "TripartiteFingerprint",
    "Verdict",
    "adjoint_rotation",
    "apply_lu",
    "compare_fingerprints",
    "compare_tripartite",
    "concurrence_pure",
    "decompose_bipartite",
    "decompose_tripartite",
    "feature_matrix",
    "flat_feature_matrices",
    "flatten_mode",
    "haar_unitary",
    "ordered_svd",
    "pair_feature_matrix",
    "partial_trace_first_out",
    "partition_blocks",
    "project_blocks",
    "random_density",
    "reconstruct_bipartite",
    "reconstruct_tripartite",
    "su_generators",
    "theorem1_fingerprint",
    "theorem2_fingerprint",
    "vec_row_major",
]
