"""Three-qudit invariant fingerprints.

For each role assignment (alpha | beta gamma) in (1|23), (2|13), (3|12):

- the pair matrix T_bg = P_bg diag(s) Q_bg^t with u1 = P_bg^t T_b and
  v1 = Q_bg^t T_g;
- the flattening T_a|bg = P diag(s) Q^t of the order-3 tensor with
  u2 = u3 = P^t T_a, v2 = Q^t (T_b x T_g) and v3 = Q^t vec(T_bg);
- det T_bg and det M_bg of the pair feature matrix.

v2 and v3 live in the column space of the flattening, which is larger than
its row space; they are partitioned with the spectrum padded by zeros.
"""

import logging

import numpy as np

from lu_invar.core.bloch import flatten_mode, vec_row_major
from lu_invar.core.gaugesvd import (
    block_invariants,
    determinant_with_scale,
    ordered_svd,
    pad_spectrum,
    partition_blocks,
)
from lu_invar.core.invariants_bi import WitnessCollector, bordered_matrix, check_comparable
from lu_invar.core.models import (
    ROLES,
    BlochTripartite,
    FeatureMatrix,
    RoleInvariants,
    TripartiteFingerprint,
    Verdict,
)
from lu_invar.utils.tolerances import EPS_CMP, EPS_DEG, EPS_ZERO
from lu_invar.utils.validators import InvalidDimensionError

logger = logging.getLogger(__name__)

PAIRS: tuple[tuple[int, int], ...] = ((2, 3), (1, 3), (1, 2))


def pair_feature_matrix(b: BlochTripartite, pair: tuple[int, int]) -> FeatureMatrix:
    """M_bg = [[1, T_g^t], [T_b, T_bg]] for pair (beta, gamma).

    Raises:
        InvalidDimensionError: If pair is not (2, 3), (1, 3) or (1, 2).
    """
    pair = (int(pair[0]), int(pair[1]))
    if pair not in PAIRS:
        raise InvalidDimensionError(f"Pair must be one of {list(PAIRS)}, got {pair}")
    beta, gamma = pair
    return bordered_matrix(b.vector(gamma), b.vector(beta), b.pair(beta, gamma))


def _role(alpha: int) -> tuple[int, int, int]:
    for role in ROLES:
        if role[0] == alpha:
            return role
    raise InvalidDimensionError(f"alpha must be 1, 2 or 3, got {alpha}")


def flat_feature_matrices(b: BlochTripartite, alpha: int) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Bordered flattenings for party alpha.

    Returns:
        (M_a|bg, M^_a|bg): both have T_a on the left border and T_a|bg as
        body; the top border is T_b x T_g for the first and vec(T_bg) for the
        second.

    Raises:
        InvalidDimensionError: If alpha is not 1, 2 or 3.
    """
    _, beta, gamma = _role(alpha)
    flat = flatten_mode(b.T123, alpha)
    t_alpha = b.vector(alpha)
    kron = np.kron(b.vector(beta), b.vector(gamma))
    vec = vec_row_major(b.pair(beta, gamma))
    return bordered_matrix(kron, t_alpha, flat), bordered_matrix(vec, t_alpha, flat)


def role_invariants(
    b: BlochTripartite,
    role: tuple[int, int, int],
    eps_deg: float = EPS_DEG,
    eps_zero: float = EPS_ZERO,
) -> RoleInvariants:
    """Invariants of a single role assignment."""
    alpha, beta, gamma = role
    t_pair = b.pair(beta, gamma)
    t_alpha = b.vector(alpha)
    t_beta = b.vector(beta)
    t_gamma = b.vector(gamma)

    pair_svd = ordered_svd(t_pair)
    pair_blocks = partition_blocks(pair_svd.sigma, eps_deg, eps_zero)
    first = block_invariants(pair_svd.P.T @ t_beta, pair_svd.Q.T @ t_gamma, pair_blocks, pair_blocks)

    flat_svd = ordered_svd(flatten_mode(b.T123, alpha))
    row_blocks = partition_blocks(flat_svd.sigma, eps_deg, eps_zero)
    col_blocks = partition_blocks(pad_spectrum(flat_svd.sigma, flat_svd.Q.shape[0]), eps_deg, eps_zero)
    u2 = flat_svd.P.T @ t_alpha
    second = block_invariants(u2, flat_svd.Q.T @ np.kron(t_beta, t_gamma), row_blocks, col_blocks)
    third = block_invariants(u2, flat_svd.Q.T @ vec_row_major(t_pair), row_blocks, col_blocks)

    det_t, det_t_scale = determinant_with_scale(t_pair)
    det_m, det_m_scale = determinant_with_scale(pair_feature_matrix(b, (beta, gamma)).entries)

    logger.debug(
        f"Role {role}: pair blocks {pair_blocks.multiplicities}, "
        f"flat blocks {row_blocks.multiplicities} / {col_blocks.multiplicities}"
    )
    return RoleInvariants(
        role=role,
        sigma_pair=tuple(float(x) for x in pair_svd.sigma),
        sigma_flat=tuple(float(x) for x in flat_svd.sigma),
        det_T_pair=det_t,
        det_T_pair_scale=det_t_scale,
        det_M_pair=det_m,
        det_M_pair_scale=det_m_scale,
        pair_blocks=pair_blocks,
        flat_row_blocks=row_blocks,
        flat_col_blocks=col_blocks,
        u1_norms=first.left_norms,
        v1_norms=first.right_norms,
        uv1_inner=first.inner,
        u2_norms=second.left_norms,
        v2_norms=second.right_norms,
        uv2_inner=second.inner,
        v3_norms=third.right_norms,
        uv3_inner=third.inner,
    )


def theorem2_fingerprint(
    b: BlochTripartite,
    eps_deg: float = EPS_DEG,
    eps_zero: float = EPS_ZERO,
) -> TripartiteFingerprint:
    """Complete invariant fingerprint of a three-qudit state, roles in fixed order."""
    roles = tuple(role_invariants(b, role, eps_deg, eps_zero) for role in ROLES)
    return TripartiteFingerprint(dim=b.dim, eps_deg=eps_deg, eps_zero=eps_zero, roles=roles)


def compare_tripartite(
    f1: TripartiteFingerprint,
    f2: TripartiteFingerprint,
    eps_cmp: float = EPS_CMP,
    include_determinants: bool = True,
) -> Verdict:
    """Compare two three-qudit fingerprints field by field.

    Witness names are prefixed with the role, e.g. "1|23.sigma_flat[0]".

    Raises:
        IncomparableFingerprintsError: If N or the block thresholds differ.
    """
    check_comparable(f1.dim, f2.dim, (f1.eps_deg, f1.eps_zero), (f2.eps_deg, f2.eps_zero))
    collector = WitnessCollector(eps_cmp)

    for r1, r2 in zip(f1.roles, f2.roles, strict=True):
        alpha, beta, gamma = r1.role
        tag = f"{alpha}|{beta}{gamma}"
        pair_agrees = collector.values(f"{tag}.sigma_pair", r1.sigma_pair, r2.sigma_pair)
        flat_agrees = collector.values(f"{tag}.sigma_flat", r1.sigma_flat, r2.sigma_flat)
        if include_determinants:
            collector.determinant(
                f"{tag}.det_T_pair", r1.det_T_pair, r1.det_T_pair_scale, r2.det_T_pair, r2.det_T_pair_scale
            )
            collector.determinant(
                f"{tag}.det_M_pair", r1.det_M_pair, r1.det_M_pair_scale, r2.det_M_pair, r2.det_M_pair_scale
            )
        collector.blocks(
            f"{tag} pair",
            r1.pair_blocks,
            r2.pair_blocks,
            [
                (f"{tag}.u1_norms", r1.u1_norms, r2.u1_norms),
                (f"{tag}.v1_norms", r1.v1_norms, r2.v1_norms),
                (f"{tag}.uv1_inner", r1.uv1_inner, r2.uv1_inner),
            ],
            pair_agrees,
        )
        # row and column partitions of the flattening share their nonzero blocks
        collector.blocks(
            f"{tag} flattening",
            r1.flat_col_blocks,
            r2.flat_col_blocks,
            [
                (f"{tag}.u2_norms", r1.u2_norms, r2.u2_norms),
                (f"{tag}.v2_norms", r1.v2_norms, r2.v2_norms),
                (f"{tag}.uv2_inner", r1.uv2_inner, r2.uv2_inner),
                (f"{tag}.v3_norms", r1.v3_norms, r2.v3_norms),
                (f"{tag}.uv3_inner", r1.uv3_inner, r2.uv3_inner),
            ],
            flat_agrees,
        )

    verdict = collector.verdict()
    logger.debug(f"Comparison: {verdict.outcome.value} with {len(verdict.witnesses)} witness(es)")
    return verdict
