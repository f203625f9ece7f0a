"""Concurrence of pure two-qudit states.

For a pure state the first-party reduced state is
rho_1 = I/N + N sum_i R_i l_i, so Tr(rho_1^2) = 1/N + 2 N^2 |R|^2 and

    sum_m |pi_m(P^t R)|^2 = |R|^2 = (N - 1)/(2 N^3) (1 - C_N^2)

with C_N = sqrt(N/(N-1) (1 - Tr(rho_1^2))). concurrence_pure evaluates
both sides independently and reports the residual.
"""

import logging
import math

import numpy as np

from lu_invar.core.bloch import decompose_bipartite
from lu_invar.core.invariants_bi import theorem1_fingerprint
from lu_invar.core.models import ConcurrenceReport, DensityMatrix
from lu_invar.utils.tolerances import EPS_DEG, EPS_NORM_MATCH, EPS_PURE, EPS_ZERO
from lu_invar.utils.validators import InvalidShapeError, NotPureError

logger = logging.getLogger(__name__)


def partial_trace_first_out(rho: DensityMatrix) -> DensityMatrix:
    """Reduced state of the first party, (rho_1)_ab = sum_k rho_(a,k),(b,k).

    Raises:
        InvalidShapeError: If rho is not a two-party state.
    """
    if rho.n_parties != 2:
        raise InvalidShapeError(f"Partial trace expects a two-party state, got {rho.n_parties} parties")
    d1, d2 = rho.dims
    reduced = np.einsum("akbk->ab", rho.entries.reshape(d1, d2, d1, d2))
    return DensityMatrix.unchecked((d1,), reduced)


def concurrence_pure(
    rho: DensityMatrix,
    eps_deg: float = EPS_DEG,
    eps_zero: float = EPS_ZERO,
) -> ConcurrenceReport:
    """Concurrence and block-norm identity for a pure two-qudit state.

    Args:
        rho: Pure two-party state with equal local dimensions.
        eps_deg: Degeneracy threshold for the block norms.
        eps_zero: Zero threshold for the block norms.

    Returns:
        ConcurrenceReport with lhs from the fingerprint block norms, rhs from
        the concurrence, and their residual.

    Raises:
        NotPureError: If Tr(rho^2) <= 1 - EPS_PURE or |R| and |S| differ.
        InvalidShapeError: If rho is not a two-party state of equal dimensions.
    """
    purity = rho.purity()
    if purity <= 1.0 - EPS_PURE:
        raise NotPureError(f"State is mixed: Tr(rho^2) = {purity:.12f}")

    n = rho.local_dim
    reduced = partial_trace_first_out(rho)
    purity_reduced = reduced.purity()
    c_squared = n / (n - 1) * (1.0 - purity_reduced)
    c = math.sqrt(min(max(c_squared, 0.0), 1.0))

    bloch = decompose_bipartite(rho)
    r_norm = float(np.linalg.norm(bloch.R))
    s_norm = float(np.linalg.norm(bloch.S))
    if abs(r_norm - s_norm) > EPS_NORM_MATCH:
        raise NotPureError(f"|R| = {r_norm:.3e} and |S| = {s_norm:.3e} differ; state is not pure")

    fingerprint = theorem1_fingerprint(bloch, eps_deg, eps_zero)
    lhs = float(sum(x * x for x in fingerprint.r_norms))
    lhs_s = float(sum(x * x for x in fingerprint.s_norms))
    rhs = (n - 1) / (2 * n**3) * (1.0 - c * c)
    residual = abs(lhs - rhs)
    logger.debug(f"Concurrence N={n}: c={c:.12f}, residual={residual:.2e}")

    return ConcurrenceReport(
        dim=n,
        c=c,
        purity_reduced=purity_reduced,
        lhs=lhs,
        lhs_s=lhs_s,
        rhs=rhs,
        residual=residual,
        r_norm=r_norm,
        s_norm=s_norm,
    )
