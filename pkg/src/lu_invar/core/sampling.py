"""Random states, Haar unitaries and local-unitary orbits.

All randomness flows through SeededRng so that every sample can be
reproduced from a seed. Haar unitaries come from a complex Ginibre matrix
whose QR factor is corrected by the phases of R's diagonal. The sampled
unitaries are in U(N) rather than SU(N); the global phase cancels in
conjugation and in the adjoint rotation.
"""

import logging
from collections.abc import Sequence
from functools import reduce

import numpy as np
from scipy.linalg import block_diag, qr

from lu_invar.core.gellmann import su_generators
from lu_invar.core.models import DensityMatrix, GeneratorBasis
from lu_invar.utils.tolerances import EPS_RANK, RNG_ALGORITHM
from lu_invar.utils.validators import (
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
    validate_dimension,
    validate_unitary,
)

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1
RANK_ATTEMPTS = 8


class SeededRng:
    """Named, seeded random stream.

    The same seed and algorithm always produce the same stream. A stream
    belongs to a single consumer.

    Attributes:
        seed: Unsigned 64-bit seed.
        algorithm: Bit generator name.
        generator: The underlying numpy Generator.
    """

    def __init__(self, seed: int, algorithm: str = RNG_ALGORITHM) -> None:
        if algorithm != RNG_ALGORITHM:
            raise InvalidInputError(f"Unsupported RNG algorithm {algorithm!r}, expected {RNG_ALGORITHM}")
        if not 0 <= int(seed) <= MAX_SEED:
            raise InvalidInputError(f"Seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = int(seed)
        self.algorithm = algorithm
        self.generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def ginibre(self, rows: int, cols: int) -> np.ndarray:
        """Complex Gaussian matrix with E|z|^2 = 1."""
        g = self.generator
        return (g.standard_normal((rows, cols)) + 1j * g.standard_normal((rows, cols))) / np.sqrt(2)

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, algorithm={self.algorithm!r})"


def haar_unitary(dim: int, rng: SeededRng) -> np.ndarray:
    """Haar-distributed unitary of size dim x dim.

    Raises:
        InvalidDimensionError: If dim < 1.
    """
    dim = validate_dimension(dim, minimum=1)
    z = rng.ginibre(dim, dim)
    q, r = qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_orthogonal(dim: int, rng: SeededRng) -> np.ndarray:
    """Haar-distributed real orthogonal matrix (determinant +1 or -1)."""
    if dim < 0:
        raise InvalidDimensionError(f"Dimension must be >= 0, got {dim}")
    if dim == 0:
        return np.zeros((0, 0))
    q, r = qr(rng.generator.standard_normal((dim, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def block_orthogonal(multiplicities: Sequence[int], rng: SeededRng) -> np.ndarray:
    """Block-diagonal orthogonal matrix with independent Haar blocks."""
    blocks = [haar_orthogonal(int(a), rng) for a in multiplicities]
    if not blocks:
        return np.zeros((0, 0))
    return np.asarray(block_diag(*blocks), dtype=float)


def random_density(dims: Sequence[int], rank: int, rng: SeededRng) -> DensityMatrix:
    """Random density matrix G G^dagger / Tr of the given rank.

    Args:
        dims: Party dimensions.
        rank: Rank r with 1 <= r <= prod(dims).
        rng: Random stream.

    Returns:
        Validated DensityMatrix of rank r. Rank 1 gives a Haar-random pure state.

    Raises:
        InvalidInputError: If rank is out of range or a rank-r sample cannot be drawn.
    """
    side = int(np.prod(dims))
    if not 1 <= rank <= side:
        raise InvalidInputError(f"Rank must be in 1..{side}, got {rank}")
    for attempt in range(RANK_ATTEMPTS):
        g = rng.ginibre(side, rank)
        matrix = g @ g.conj().T
        matrix = matrix / np.trace(matrix).real
        matrix = (matrix + matrix.conj().T) / 2
        observed = int(np.sum(np.linalg.eigvalsh(matrix) > EPS_RANK))
        if observed == rank:
            return DensityMatrix(dims=tuple(dims), entries=matrix)
        logger.debug(f"Sample {attempt} has rank {observed}, expected {rank}; redrawing")
    raise InvalidInputError(f"Could not draw a rank-{rank} state in {RANK_ATTEMPTS} attempts")


def random_lu(dims: Sequence[int], rng: SeededRng) -> list[np.ndarray]:
    """One Haar unitary per party."""
    return [haar_unitary(int(d), rng) for d in dims]


def apply_lu(rho: DensityMatrix, locals_: Sequence[np.ndarray]) -> DensityMatrix:
    """Conjugate rho by the tensor product of per-party unitaries.

    Raises:
        InvalidShapeError: If the number or sizes of the unitaries do not match rho.
        InvalidInputError: If a matrix is not unitary.
    """
    if len(locals_) != rho.n_parties:
        raise InvalidShapeError(f"Need {rho.n_parties} unitaries, got {len(locals_)}")
    mats = [np.asarray(u, dtype=np.complex128) for u in locals_]
    for dim, u in zip(rho.dims, mats, strict=True):
        if u.shape != (dim, dim):
            raise InvalidShapeError(f"Unitary for a {dim}-level party must be {dim}x{dim}, got {u.shape}")
        validate_unitary(u)
    total = reduce(np.kron, mats)
    matrix = total @ rho.entries @ total.conj().T
    return DensityMatrix(dims=rho.dims, entries=(matrix + matrix.conj().T) / 2)


def adjoint_rotation(u: np.ndarray, basis: GeneratorBasis | None = None) -> np.ndarray:
    """Orthogonal matrix O_ij = Tr(l_i u l_j u^dagger)/2 induced by u.

    With this convention decomposing (u x v) rho (u x v)^dagger gives
    R' = O(u) R, S' = O(v) S and T' = O(u) T O(v)^t, and O(uv) = O(u) O(v).

    Raises:
        InvalidInputError: If u is not unitary.
        InvalidShapeError: If u does not match the basis dimension.
    """
    u = np.asarray(u, dtype=np.complex128)
    validate_unitary(u)
    basis = basis or su_generators(u.shape[0])
    if basis.dim != u.shape[0]:
        raise InvalidShapeError(f"Basis is for N={basis.dim}, unitary is {u.shape[0]}x{u.shape[0]}")
    gens = basis.generators
    conjugated = u @ gens @ u.conj().T
    return np.einsum("iab,jba->ij", gens, conjugated).real / 2
