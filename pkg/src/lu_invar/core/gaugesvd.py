"""Gauge-aware singular value decomposition.

For repeated singular values the SVD factors are only fixed up to an
orthogonal rotation inside each degeneracy block (the same rotation on
both sides for nonzero blocks, independent rotations on the zero block).
The helpers here never canonicalize P and Q; instead they partition the
spectrum into blocks and report only block norms and nonzero-block inner
products, which do not depend on the gauge.
"""

import logging

import numpy as np

from lu_invar.core.models import BlockInvariants, BlockProjection, BlockSpectrum, OrderedSvd
from lu_invar.utils.tolerances import EPS_DEG, EPS_ZERO, spectrum_scale
from lu_invar.utils.validators import (
    InvalidInputError,
    InvalidShapeError,
    validate_finite,
    validate_nonincreasing,
)

logger = logging.getLogger(__name__)


def ordered_svd(m: np.ndarray) -> OrderedSvd:
    """Full SVD with singular values sorted nonincreasing.

    Args:
        m: Real matrix with finite entries.

    Returns:
        OrderedSvd with square orthogonal P (rows x rows) and Q (cols x cols).

    Raises:
        InvalidInputError: If m has non-finite entries.
        InvalidShapeError: If m is not 2-D.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise InvalidShapeError(f"SVD expects a matrix, got shape {m.shape}")
    validate_finite(m, "matrix")

    p, sigma, qt = np.linalg.svd(m, full_matrices=True)
    order = np.argsort(-sigma, kind="stable")
    k = sigma.size
    p = p.copy()
    q = qt.T.copy()
    p[:, :k] = p[:, order]
    q[:, :k] = q[:, order]
    return OrderedSvd(P=p, sigma=sigma[order], Q=q)


def pad_spectrum(sigma: np.ndarray, size: int) -> np.ndarray:
    """Extend a spectrum with zeros to the given length.

    Used to partition the larger singular space of a rectangular matrix.
    """
    sigma = np.asarray(sigma, dtype=float)
    if size < sigma.size:
        raise InvalidShapeError(f"Cannot pad {sigma.size} singular values to {size}")
    return np.concatenate([sigma, np.zeros(size - sigma.size)])


def partition_blocks(
    sigma: np.ndarray,
    eps_deg: float = EPS_DEG,
    eps_zero: float = EPS_ZERO,
) -> BlockSpectrum:
    """Group a nonincreasing spectrum into degeneracy blocks.

    Values at or below eps_zero * max(sigma_1, 1) form the trailing zero
    block. The remaining values are chained: consecutive values share a
    block when their gap is at most eps_deg * max(sigma_1, 1). Each block is
    reported by its mean value.

    Args:
        sigma: Nonincreasing, nonnegative singular values.
        eps_deg: Relative degeneracy threshold.
        eps_zero: Relative zero threshold.

    Returns:
        BlockSpectrum with n_prime = n_blocks - 1 when a zero block exists.

    Raises:
        InvalidInputError: If sigma is unsorted, negative, or a threshold is negative.
    """
    sigma = np.asarray(sigma, dtype=float).reshape(-1)
    validate_nonincreasing(sigma)
    if eps_deg < 0 or eps_zero < 0:
        raise InvalidInputError("Thresholds must be nonnegative")
    if sigma.size == 0:
        return BlockSpectrum(
            distinct_values=(), multiplicities=(), has_zero_block=False, n_blocks=0, n_prime=0
        )

    scale = spectrum_scale(float(sigma[0]))
    zero_mask = sigma <= eps_zero * scale
    nonzero = sigma[~zero_mask]

    groups: list[list[float]] = []
    for value in nonzero:
        if groups and groups[-1][-1] - value <= eps_deg * scale:
            groups[-1].append(float(value))
        else:
            groups.append([float(value)])

    distinct = [float(np.mean(g)) for g in groups]
    multiplicities = [len(g) for g in groups]
    n_zero = int(zero_mask.sum())
    has_zero = n_zero > 0
    if has_zero:
        distinct.append(0.0)
        multiplicities.append(n_zero)

    n_blocks = len(multiplicities)
    spectrum = BlockSpectrum(
        distinct_values=tuple(distinct),
        multiplicities=tuple(multiplicities),
        has_zero_block=has_zero,
        n_blocks=n_blocks,
        n_prime=n_blocks - 1 if has_zero else n_blocks,
    )
    logger.debug(
        f"Partitioned {sigma.size} singular values into blocks {spectrum.multiplicities} "
        f"(zero block: {has_zero})"
    )
    return spectrum


def project_blocks(v: np.ndarray, bs: BlockSpectrum) -> BlockProjection:
    """Split a vector contiguously by block multiplicities.

    Raises:
        InvalidShapeError: If len(v) differs from the spectrum size.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != bs.size:
        raise InvalidShapeError(f"Vector of length {v.size} does not match block sizes {bs.multiplicities}")
    bounds = np.cumsum(bs.multiplicities)[:-1]
    return BlockProjection(parts=tuple(np.split(v, bounds)))


def block_invariants(
    u: np.ndarray,
    v: np.ndarray,
    row_blocks: BlockSpectrum,
    col_blocks: BlockSpectrum,
) -> BlockInvariants:
    """Gauge-free quantities of two vectors rotated into singular bases.

    u lives in the left singular space (partitioned by row_blocks), v in the
    right one (col_blocks). The nonzero blocks of both partitions coincide;
    only the zero blocks can differ in size.

    Returns:
        Norms of every block of u and v, and the inner products
        pi_m(u)^t pi_m(v) for the nonzero blocks.

    Raises:
        InvalidShapeError: If the nonzero blocks of the two partitions differ.
    """
    rows = project_blocks(u, row_blocks)
    cols = project_blocks(v, col_blocks)
    n_inner = row_blocks.n_prime
    if (
        col_blocks.n_prime != n_inner
        or row_blocks.multiplicities[:n_inner] != col_blocks.multiplicities[:n_inner]
    ):
        raise InvalidShapeError(
            f"Row blocks {row_blocks.multiplicities} and column blocks "
            f"{col_blocks.multiplicities} disagree on the nonzero part"
        )
    inner = tuple(float(rows.parts[m] @ cols.parts[m]) for m in range(n_inner))
    return BlockInvariants(left_norms=rows.norms(), right_norms=cols.norms(), inner=inner)


def determinant_with_scale(m: np.ndarray) -> tuple[float, float]:
    """Determinant of a square matrix and its sensitivity scale.

    The scale is max(s_1, 1) * s_1 * ... * s_{n-1} for the singular values
    s of m: the size of the adjugate times the entry scale, i.e. the order of
    the change in det(m) caused by a relative perturbation of the entries.

    Raises:
        InvalidShapeError: If m is not square.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidShapeError(f"Determinant needs a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        return 1.0, 1.0
    det = float(np.linalg.det(m))
    s = np.linalg.svd(m, compute_uv=False)
    scale = spectrum_scale(float(s[0])) * float(np.prod(s[:-1]))
    return det, scale
