"""Numeric tolerances and comparison helpers.

Every threshold used when validating states, partitioning singular values
or comparing invariants lives here. The CLI echoes the thresholds it used
into each report, so two reports are only comparable when they agree.
"""

# State validation
EPS_HERM: float = 1e-10  # max-norm Hermiticity and trace residual
EPS_PSD: float = 1e-9  # smallest admissible eigenvalue is -EPS_PSD
EPS_IMAG: float = 1e-10  # imaginary residue allowed in a coefficient trace
EPS_PURE: float = 1e-8  # Tr(rho^2) > 1 - EPS_PURE counts as pure
EPS_RANK: float = 1e-10  # eigenvalues above this count towards the rank

# Singular value blocks (relative to max(sigma_1, 1))
EPS_DEG: float = 1e-8
EPS_ZERO: float = 1e-10

# Invariant comparison
EPS_CMP: float = 1e-9
EPS_NORM_MATCH: float = 1e-10  # |R| = |S| for pure states

# Documents
SCHEMA_VERSION: str = "1.0"
RNG_ALGORITHM: str = "PCG64"


def spectrum_scale(largest: float) -> float:
    """Scale that relative thresholds on a spectrum are measured against.

    Args:
        largest: Largest singular value of the spectrum.

    Returns:
        max(largest, 1.0).
    """
    return max(largest, 1.0)


def scalars_match(a: float, b: float, eps: float = EPS_CMP) -> bool:
    """Mixed absolute/relative equality of two scalar invariants.

    Args:
        a: First value.
        b: Second value.
        eps: Comparison tolerance.

    Returns:
        True if |a - b| <= eps * max(1, |a|, |b|).
    """
    return abs(a - b) <= eps * max(1.0, abs(a), abs(b))


def determinants_match(
    a: float, b: float, scale_a: float, scale_b: float, eps: float = EPS_CMP
) -> bool:
    """Equality of two determinants measured against their sensitivity scales.

    Args:
        a: First determinant.
        b: Second determinant.
        scale_a: Sensitivity scale stored with the first determinant.
        scale_b: Sensitivity scale stored with the second determinant.
        eps: Comparison tolerance.

    Returns:
        True if |a - b| <= eps * max(scale_a, scale_b).
    """
    return abs(a - b) <= eps * max(scale_a, scale_b)
