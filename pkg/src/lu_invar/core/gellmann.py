"""Generalized Gell-Mann generators of SU(N).

The generators are emitted in interleaved order: for k = 2..N, for each
j < k the symmetric generator E_jk + E_kj, then the antisymmetric
-i(E_jk - E_kj); after the pairs of level k comes the diagonal generator
sqrt(2/(k(k-1))) diag(1, ..., 1, -(k-1), 0, ..., 0). For N = 2 this gives
the Pauli matrices, for N = 3 the standard Gell-Mann matrices l_1..l_8.
"""

import logging
from functools import lru_cache

import numpy as np

from lu_invar.core.models import GeneratorBasis
from lu_invar.utils.validators import validate_dimension

logger = logging.getLogger(__name__)


def _build_generators(dim: int) -> np.ndarray:
    generators: list[np.ndarray] = []
    for k in range(1, dim):
        for j in range(k):
            sym = np.zeros((dim, dim), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1.0
            generators.append(sym)

            anti = np.zeros((dim, dim), dtype=np.complex128)
            anti[j, k] = -1j
            anti[k, j] = 1j
            generators.append(anti)

        diag = np.zeros(dim)
        diag[:k] = 1.0
        diag[k] = -float(k)
        generators.append(np.diag(np.sqrt(2.0 / (k * (k + 1))) * diag).astype(np.complex128))
    return np.stack(generators)


@lru_cache(maxsize=None)
def su_generators(dim: int) -> GeneratorBasis:
    """Ordered generator basis of SU(dim).

    Results are cached per dimension; the returned basis is immutable.

    Args:
        dim: Local dimension N >= 2.

    Returns:
        Basis of N^2 - 1 generators in interleaved order.

    Raises:
        InvalidDimensionError: If dim < 2.
    """
    dim = validate_dimension(dim)
    logger.debug(f"Building SU({dim}) generator basis ({dim * dim - 1} generators)")
    return GeneratorBasis(dim=dim, generators=_build_generators(dim))


def expand_operator(matrix: np.ndarray, basis: GeneratorBasis) -> tuple[float, np.ndarray]:
    """Expansion coefficients of a Hermitian matrix over identity and generators.

    matrix = a0 I + sum_i a_i l_i with a0 = Tr(matrix)/N and a_i = Tr(matrix l_i)/2.

    Args:
        matrix: Hermitian N x N matrix.
        basis: Generator basis for the same N.

    Returns:
        Tuple (a0, a).
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    a0 = float(np.real(np.trace(matrix))) / basis.dim
    coeffs = np.real(np.einsum("ab,iba->i", matrix, basis.generators)) / 2.0
    return a0, coeffs


def assemble_operator(a0: float, coeffs: np.ndarray, basis: GeneratorBasis) -> np.ndarray:
    """Inverse of expand_operator."""
    return a0 * np.eye(basis.dim, dtype=np.complex128) + np.einsum(
        "i,iab->ab", np.asarray(coeffs, dtype=float), basis.generators
    )
