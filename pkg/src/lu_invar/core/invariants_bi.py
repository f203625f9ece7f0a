"""Two-qudit invariant fingerprints and their comparison.

The fingerprint of a state with Bloch coefficients (R, S, T) consists of
the singular values of T, det T, det M for the feature matrix
M = [[1, S^t], [R, T]], the block norms of P^t R and Q^t S over every
degeneracy block of T = P diag(sigma) Q^t, and the inner products of
those projections over the nonzero blocks. All of these are unchanged by
local unitaries, so any mismatch proves two states are not LU equivalent.
Equal fingerprints prove nothing.
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np

from lu_invar.core.gaugesvd import (
    block_invariants,
    determinant_with_scale,
    ordered_svd,
    partition_blocks,
)
from lu_invar.core.models import (
    BlochBipartite,
    BlockSpectrum,
    FeatureMatrix,
    InvariantFingerprint,
    Outcome,
    Verdict,
    Witness,
)
from lu_invar.utils.tolerances import (
    EPS_CMP,
    EPS_DEG,
    EPS_ZERO,
    determinants_match,
    scalars_match,
)
from lu_invar.utils.validators import InvalidShapeError

logger = logging.getLogger(__name__)


class IncomparableFingerprintsError(Exception):
    """Raised when two fingerprints were built for different N or thresholds."""

    pass


def bordered_matrix(top: np.ndarray, left: np.ndarray, body: np.ndarray) -> FeatureMatrix:
    """Assemble [[1, top^t], [left, body]].

    Raises:
        InvalidShapeError: If the border lengths do not match the body.
    """
    top = np.asarray(top, dtype=float).reshape(-1)
    left = np.asarray(left, dtype=float).reshape(-1)
    body = np.asarray(body, dtype=float)
    if body.ndim != 2 or body.shape != (left.size, top.size):
        raise InvalidShapeError(
            f"Body of shape {body.shape} does not fit borders of length {left.size} and {top.size}"
        )
    entries = np.empty((left.size + 1, top.size + 1))
    entries[0, 0] = 1.0
    entries[0, 1:] = top
    entries[1:, 0] = left
    entries[1:, 1:] = body
    return FeatureMatrix(entries=entries)


def feature_matrix(b: BlochBipartite) -> FeatureMatrix:
    """Feature matrix M = [[1, S^t], [R, T]] of size N^2 x N^2."""
    return bordered_matrix(b.S, b.R, b.T)


def theorem1_fingerprint(
    b: BlochBipartite,
    eps_deg: float = EPS_DEG,
    eps_zero: float = EPS_ZERO,
) -> InvariantFingerprint:
    """Complete invariant fingerprint of a two-qudit state.

    Args:
        b: Bloch coefficients.
        eps_deg: Relative degeneracy threshold for the blocks of T.
        eps_zero: Relative zero threshold for the blocks of T.

    Returns:
        Fingerprint with block norms for all blocks and inner products for
        the nonzero blocks only.
    """
    svd = ordered_svd(b.T)
    blocks = partition_blocks(svd.sigma, eps_deg, eps_zero)
    rotated_r = svd.P.T @ b.R
    rotated_s = svd.Q.T @ b.S
    inv = block_invariants(rotated_r, rotated_s, blocks, blocks)

    det_t, det_t_scale = determinant_with_scale(b.T)
    det_m, det_m_scale = determinant_with_scale(feature_matrix(b).entries)
    logger.debug(f"Fingerprint N={b.dim}: blocks {blocks.multiplicities}, det M = {det_m:.6e}")

    return InvariantFingerprint(
        dim=b.dim,
        eps_deg=eps_deg,
        eps_zero=eps_zero,
        sigma=tuple(float(x) for x in svd.sigma),
        det_T=det_t,
        det_T_scale=det_t_scale,
        det_M=det_m,
        det_M_scale=det_m_scale,
        block_structure=blocks,
        r_norms=inv.left_norms,
        s_norms=inv.right_norms,
        rs_inner=inv.inner,
    )


class WitnessCollector:
    """Accumulates mismatching invariants and comparison warnings."""

    def __init__(self, eps_cmp: float) -> None:
        self.eps_cmp = eps_cmp
        self.witnesses: list[Witness] = []
        self.warnings: list[str] = []

    def scalar(self, name: str, a: float, b: float) -> bool:
        """Compare two scalars; record a witness on mismatch. True if equal."""
        if scalars_match(a, b, self.eps_cmp):
            return True
        self.witnesses.append(Witness(name=name, value1=a, value2=b, delta=abs(a - b)))
        return False

    def determinant(self, name: str, a: float, scale_a: float, b: float, scale_b: float) -> bool:
        """Compare two determinants against their sensitivity scales."""
        if determinants_match(a, b, scale_a, scale_b, self.eps_cmp):
            return True
        self.witnesses.append(Witness(name=name, value1=a, value2=b, delta=abs(a - b)))
        return False

    def values(self, name: str, first: Sequence[float], second: Sequence[float]) -> bool:
        """Compare two equal-length lists elementwise, witnesses named name[i]."""
        if len(first) != len(second):
            raise IncomparableFingerprintsError(
                f"{name} has {len(first)} entries in one fingerprint and {len(second)} in the other"
            )
        results = [self.scalar(f"{name}[{i}]", a, b) for i, (a, b) in enumerate(zip(first, second, strict=True))]
        return all(results)

    def blocks(
        self,
        label: str,
        first: BlockSpectrum,
        second: BlockSpectrum,
        lists: Iterable[tuple[str, Sequence[float], Sequence[float]]],
        sigma_agrees: bool,
    ) -> None:
        """Compare block-resolved lists when both block structures agree.

        When the structures differ but the singular values agree, the blocks
        were split differently by the thresholds; the lists are skipped and a
        warning is recorded. When the singular values disagree as well, the
        sigma witnesses already decide the outcome.
        """
        if first.same_structure(second):
            for name, a, b in lists:
                self.values(name, a, b)
            return
        if sigma_agrees:
            message = (
                f"{label}: block structures {first.multiplicities} and {second.multiplicities} "
                f"differ although singular values agree; thresholds are unstable for this pair"
            )
            logger.warning(message)
            self.warnings.append(message)

    def verdict(self) -> Verdict:
        """Verdict from the collected witnesses."""
        outcome = Outcome.NOT_EQUIVALENT if self.witnesses else Outcome.INCONCLUSIVE
        return Verdict(
            outcome=outcome,
            witnesses=tuple(self.witnesses),
            warnings=tuple(self.warnings),
            eps_cmp=self.eps_cmp,
        )


def check_comparable(
    dim1: int, dim2: int, thresholds1: tuple[float, float], thresholds2: tuple[float, float]
) -> None:
    """Reject fingerprints of different N or built with different thresholds.

    Raises:
        IncomparableFingerprintsError: On any mismatch.
    """
    if dim1 != dim2:
        raise IncomparableFingerprintsError(f"Fingerprints have different N ({dim1} vs {dim2})")
    if thresholds1 != thresholds2:
        raise IncomparableFingerprintsError(
            f"Fingerprints use different (eps_deg, eps_zero): {thresholds1} vs {thresholds2}"
        )


def compare_fingerprints(
    f1: InvariantFingerprint,
    f2: InvariantFingerprint,
    eps_cmp: float = EPS_CMP,
    include_determinants: bool = True,
) -> Verdict:
    """Compare two two-qudit fingerprints.

    Args:
        f1: First fingerprint.
        f2: Second fingerprint.
        eps_cmp: Comparison tolerance.
        include_determinants: If False, det T and det M are left out and only
            the singular values, block norms and inner products are compared.

    Returns:
        NotEquivalent with a witness per mismatching invariant, otherwise
        Inconclusive.

    Raises:
        IncomparableFingerprintsError: If N or the block thresholds differ.
    """
    check_comparable(f1.dim, f2.dim, (f1.eps_deg, f1.eps_zero), (f2.eps_deg, f2.eps_zero))
    collector = WitnessCollector(eps_cmp)

    sigma_agrees = collector.values("sigma", f1.sigma, f2.sigma)
    if include_determinants:
        collector.determinant("det_T", f1.det_T, f1.det_T_scale, f2.det_T, f2.det_T_scale)
        collector.determinant("det_M", f1.det_M, f1.det_M_scale, f2.det_M, f2.det_M_scale)
    collector.blocks(
        "T",
        f1.block_structure,
        f2.block_structure,
        [
            ("r_norms", f1.r_norms, f2.r_norms),
            ("s_norms", f1.s_norms, f2.s_norms),
            ("rs_inner", f1.rs_inner, f2.rs_inner),
        ],
        sigma_agrees,
    )

    verdict = collector.verdict()
    logger.debug(f"Comparison: {verdict.outcome.value} with {len(verdict.witnesses)} witness(es)")
    return verdict
