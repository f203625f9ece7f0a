"""Input validation for density matrices, coefficient arrays and spectra.

Provides the exception hierarchy shared by every module and the checks
that run before any numerical work, so that failures name the violated
condition instead of surfacing as a wrong number later on.
"""

from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from lu_invar.utils.tolerances import EPS_HERM, EPS_PSD


class ValidationError(Exception):
    """Raised when validation fails."""

    pass


class InvalidDimensionError(ValidationError):
    """Raised when a local dimension or party count is out of range."""

    pass


class InvalidShapeError(ValidationError):
    """Raised when an array has the wrong shape or an unsupported layout."""

    pass


class InvalidInputError(ValidationError):
    """Raised when numeric input is not finite, not sorted or out of range."""

    pass


class NotPureError(ValidationError):
    """Raised when an operation defined for pure states receives a mixed one."""

    pass


class InvalidStateError(ValidationError):
    """Raised when a matrix is not a density matrix.

    Attributes:
        invariant: Name of the violated condition (hermiticity, trace, psd,
            imaginary_residue).
        residual: Measured size of the violation.
    """

    def __init__(self, invariant: str, residual: float, detail: str = "") -> None:
        self.invariant = invariant
        self.residual = residual
        message = f"{invariant} violated (residual {residual:.3e})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


def validate_dimension(dim: int, minimum: int = 2) -> int:
    """Validate a local Hilbert space dimension.

    Args:
        dim: Dimension to check.
        minimum: Smallest admissible value.

    Returns:
        The dimension.

    Raises:
        InvalidDimensionError: If dim is not an integer >= minimum.
    """
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
        raise InvalidDimensionError(f"Dimension must be an integer, got {dim!r}")
    if dim < minimum:
        raise InvalidDimensionError(f"Dimension must be >= {minimum}, got {dim}")
    return int(dim)


def validate_dims(dims: Sequence[int], parties: Sequence[int] = (2, 3)) -> tuple[int, ...]:
    """Validate a list of party dimensions.

    Args:
        dims: Party dimensions in party order.
        parties: Admissible party counts.

    Returns:
        Dimensions as a tuple of ints.

    Raises:
        InvalidDimensionError: If the party count or any dimension is invalid.
    """
    checked = tuple(validate_dimension(d) for d in dims)
    if len(checked) not in parties:
        raise InvalidDimensionError(
            f"Expected {' or '.join(str(p) for p in parties)} parties, got {len(checked)}"
        )
    return checked


def validate_equal_dims(dims: Sequence[int]) -> int:
    """Check that every party has the same local dimension.

    Args:
        dims: Party dimensions.

    Returns:
        The common dimension N.

    Raises:
        InvalidShapeError: If the dimensions differ.
    """
    if len(set(dims)) != 1:
        raise InvalidShapeError(f"Unsupported shape: party dimensions must be equal, got {list(dims)}")
    return int(dims[0])


def validate_finite(values: NDArray[np.generic], name: str = "input") -> None:
    """Reject NaN and infinite entries.

    Raises:
        InvalidInputError: If any entry is not finite.
    """
    if not np.all(np.isfinite(values)):
        raise InvalidInputError(f"{name} contains non-finite entries")


def validate_density_matrix(
    matrix: NDArray[np.complex128],
    eps_herm: float = EPS_HERM,
    eps_psd: float = EPS_PSD,
) -> None:
    """Check the three density matrix conditions.

    Args:
        matrix: Square complex matrix.
        eps_herm: Max-norm tolerance for Hermiticity and unit trace.
        eps_psd: Smallest eigenvalue must be >= -eps_psd.

    Raises:
        InvalidInputError: If the matrix has non-finite entries.
        InvalidStateError: Naming the first violated condition and its residual.
    """
    validate_finite(matrix, "density matrix")

    herm_residual = float(np.max(np.abs(matrix - matrix.conj().T)))
    if herm_residual > eps_herm:
        raise InvalidStateError("hermiticity", herm_residual)

    trace_residual = float(abs(np.trace(matrix) - 1.0))
    if trace_residual > eps_herm:
        raise InvalidStateError("trace", trace_residual)

    smallest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
    if smallest < -eps_psd:
        raise InvalidStateError("psd", -smallest, f"smallest eigenvalue {smallest:.3e}")


def validate_unitary(u: NDArray[np.complex128], tol: float = 1e-10) -> None:
    """Check that a square matrix is unitary.

    Raises:
        InvalidShapeError: If u is not square.
        InvalidInputError: If u is not unitary within tol.
    """
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidShapeError(f"Unitary must be square, got shape {u.shape}")
    validate_finite(u, "unitary")
    residual = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if residual > tol:
        raise InvalidInputError(f"Matrix is not unitary (residual {residual:.3e})")


def validate_nonincreasing(sigma: NDArray[np.float64]) -> None:
    """Check that a spectrum is sorted nonincreasing and nonnegative.

    Raises:
        InvalidInputError: If the spectrum is unsorted, negative or not finite.
    """
    validate_finite(sigma, "singular values")
    if sigma.size and float(sigma.min()) < 0.0:
        raise InvalidInputError("Singular values must be nonnegative")
    if np.any(np.diff(sigma) > 0.0):
        raise InvalidInputError("Singular values must be sorted nonincreasing")
