"""Core domain models for LU invariant computations.

This module contains the Pydantic models shared by every numerical module:
- GeneratorBasis: ordered Hermitian generators of SU(N)
- DensityMatrix: validated multipartite density matrix
- BlochBipartite, BlochTripartite: generalized Bloch coefficients
- OrderedSvd, BlockSpectrum, BlockProjection: gauge-aware SVD pieces
- FeatureMatrix: bordered coefficient matrix
- InvariantFingerprint, RoleInvariants, TripartiteFingerprint: invariant sets
- Outcome, Witness, Verdict: comparison results
- ConcurrenceReport: pure-state concurrence and block-norm identity

Array-valued fields hold read-only numpy arrays; models are frozen.
"""

from collections.abc import Sequence
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from lu_invar.utils.tolerances import EPS_CMP, EPS_DEG, EPS_ZERO
from lu_invar.utils.validators import (
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
    InvalidStateError,
    validate_density_matrix,
    validate_dims,
    validate_equal_dims,
    validate_finite,
)

__all__ = [
    # Bases and states
    "GeneratorBasis",
    "DensityMatrix",
    "BlochBipartite",
    "BlochTripartite",
    # SVD machinery
    "OrderedSvd",
    "BlockSpectrum",
    "BlockProjection",
    "BlockInvariants",
    "FeatureMatrix",
    # Fingerprints
    "InvariantFingerprint",
    "RoleInvariants",
    "TripartiteFingerprint",
    "ROLES",
    # Comparison
    "Outcome",
    "Witness",
    "Verdict",
    "ConcurrenceReport",
]


def _frozen_array(value: Any, dtype: type) -> np.ndarray:
    """Copy value into a read-only array of the given dtype."""
    array = np.array(value, dtype=dtype)
    array.setflags(write=False)
    return array


ARRAY_CONFIG = ConfigDict(arbitrary_types_allowed=True, frozen=True)

# Role assignments (alpha, beta, gamma) of a three-qudit fingerprint, in report order.
ROLES: tuple[tuple[int, int, int], ...] = ((1, 2, 3), (2, 1, 3), (3, 1, 2))


class GeneratorBasis(BaseModel):
    """Ordered Hermitian, traceless generators with Tr(l_i l_j) = 2 delta_ij.

    Any orthogonal change of a valid basis is again valid, which is what the
    basis-independence checks rely on.
    """

    model_config = ARRAY_CONFIG

    dim: int = Field(ge=2, description="Local dimension N")
    generators: np.ndarray = Field(description="Array of shape (N^2-1, N, N)")

    @field_validator("generators", mode="before")
    @classmethod
    def coerce_generators(cls, v: Any) -> np.ndarray:
        """Store generators as a read-only complex array."""
        return _frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def check_invariants(self) -> "GeneratorBasis":
        """Check count, Hermiticity, tracelessness and normalization."""
        n = self.dim
        expected = (n * n - 1, n, n)
        if self.generators.shape != expected:
            raise InvalidShapeError(
                f"Basis for N={n} must have shape {expected}, got {self.generators.shape}"
            )
        gens = self.generators
        herm = float(np.max(np.abs(gens - np.conj(np.transpose(gens, (0, 2, 1))))))
        if herm > 1e-10:
            raise InvalidStateError("hermiticity", herm, "generators must be Hermitian")
        trace = float(np.max(np.abs(np.einsum("kaa->k", gens))))
        if trace > 1e-10:
            raise InvalidStateError("trace", trace, "generators must be traceless")
        gram = np.einsum("iab,jba->ij", gens, gens)
        gram_error = float(np.max(np.abs(gram - 2 * np.eye(n * n - 1))))
        if gram_error > 1e-10:
            raise InvalidStateError("normalization", gram_error, "Tr(l_i l_j) must be 2 delta_ij")
        return self

    @property
    def size(self) -> int:
        """Number of generators, N^2 - 1."""
        return self.dim * self.dim - 1

    def gram(self) -> np.ndarray:
        """Trace inner products Tr(l_i l_j)."""
        return np.einsum("iab,jba->ij", self.generators, self.generators)

    def transformed(self, orthogonal: np.ndarray) -> "GeneratorBasis":
        """New basis with generators l'_i = sum_j O_ij l_j.

        Args:
            orthogonal: Real orthogonal (N^2-1) x (N^2-1) matrix.

        Returns:
            The transformed basis, validated.
        """
        mixed = np.einsum("ij,jab->iab", np.asarray(orthogonal, dtype=float), self.generators)
        return GeneratorBasis(dim=self.dim, generators=mixed)


class DensityMatrix(BaseModel):
    """Density matrix of a bipartite or tripartite qudit system.

    Entries are row-major over the computational product basis with the last
    party's index varying fastest. Construction validates Hermiticity, unit
    trace and positivity; `unchecked` skips positivity for reconstructions.
    """

    model_config = ARRAY_CONFIG

    dims: tuple[int, ...] = Field(description="Party dimensions in party order")
    entries: np.ndarray = Field(description="Complex matrix of side prod(dims)")

    @field_validator("dims", mode="before")
    @classmethod
    def check_dims(cls, v: Any) -> tuple[int, ...]:
        """Accept 2 or 3 parties, each of dimension >= 2."""
        return validate_dims(list(v))

    @field_validator("entries", mode="before")
    @classmethod
    def coerce_entries(cls, v: Any) -> np.ndarray:
        """Store entries as a read-only complex matrix."""
        array = _frozen_array(v, np.complex128)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidShapeError(f"Density matrix must be square, got shape {array.shape}")
        return array

    @model_validator(mode="after")
    def check_state(self) -> "DensityMatrix":
        """Match the matrix side to the dims and check the state conditions."""
        side = int(np.prod(self.dims))
        if self.entries.shape != (side, side):
            raise InvalidShapeError(
                f"Matrix must be {side}x{side} for dims {list(self.dims)}, got {self.entries.shape}"
            )
        validate_density_matrix(self.entries)
        return self

    @classmethod
    def unchecked(cls, dims: Sequence[int], entries: np.ndarray) -> "DensityMatrix":
        """Build without validation; the caller guarantees shape and dtype."""
        return cls.model_construct(
            dims=tuple(int(d) for d in dims), entries=_frozen_array(entries, np.complex128)
        )

    @classmethod
    def from_ket(cls, ket: Sequence[complex] | np.ndarray, dims: Sequence[int]) -> "DensityMatrix":
        """Pure state |psi><psi| from a (possibly unnormalized) state vector.

        Raises:
            InvalidShapeError: If the vector length does not match dims.
            InvalidInputError: If the vector is zero or not finite.
        """
        vector = np.asarray(ket, dtype=np.complex128).reshape(-1)
        validate_finite(vector, "state vector")
        side = int(np.prod(dims))
        if vector.size != side:
            raise InvalidShapeError(f"State vector must have length {side}, got {vector.size}")
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise InvalidInputError("State vector must be nonzero")
        vector = vector / norm
        return cls(dims=tuple(dims), entries=np.outer(vector, vector.conj()))

    @property
    def n_parties(self) -> int:
        """Number of parties."""
        return len(self.dims)

    @property
    def local_dim(self) -> int:
        """Common local dimension N.

        Raises:
            InvalidShapeError: If the parties have different dimensions.
        """
        return validate_equal_dims(self.dims)

    def purity(self) -> float:
        """Tr(rho^2)."""
        return float(np.real(np.einsum("ab,ba->", self.entries, self.entries)))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order."""
        return np.linalg.eigvalsh(self.entries)


def _real_array(v: Any) -> np.ndarray:
    array = _frozen_array(v, np.float64)
    validate_finite(array, "coefficients")
    return array


class BlochBipartite(BaseModel):
    """Coefficients R, S, T of the two-qudit Bloch representation."""

    model_config = ARRAY_CONFIG

    dim: int = Field(ge=2, description="Local dimension N")
    R: np.ndarray = Field(description="First-party vector, length N^2-1")
    S: np.ndarray = Field(description="Second-party vector, length N^2-1")
    T: np.ndarray = Field(description="Correlation matrix (N^2-1) x (N^2-1)")

    @field_validator("R", "S", "T", mode="before")
    @classmethod
    def coerce_real(cls, v: Any) -> np.ndarray:
        """Store coefficients as read-only float arrays."""
        return _real_array(v)

    @model_validator(mode="after")
    def check_shapes(self) -> "BlochBipartite":
        """Vector and matrix sizes must agree with N."""
        k = self.dim * self.dim - 1
        for name, value, shape in (
            ("R", self.R, (k,)),
            ("S", self.S, (k,)),
            ("T", self.T, (k, k)),
        ):
            if value.shape != shape:
                raise InvalidShapeError(f"{name} must have shape {shape} for N={self.dim}, got {value.shape}")
        return self

    @property
    def size(self) -> int:
        """N^2 - 1."""
        return self.dim * self.dim - 1


class BlochTripartite(BaseModel):
    """Coefficients of the three-qudit Bloch representation.

    T1, T2, T3 are one-body vectors, T12, T13, T23 two-body matrices with the
    lower party on the rows, and T123 the order-3 correlation tensor.
    """

    model_config = ARRAY_CONFIG

    dim: int = Field(ge=2, description="Local dimension N")
    T1: np.ndarray
    T2: np.ndarray
    T3: np.ndarray
    T12: np.ndarray
    T13: np.ndarray
    T23: np.ndarray
    T123: np.ndarray

    @field_validator("T1", "T2", "T3", "T12", "T13", "T23", "T123", mode="before")
    @classmethod
    def coerce_real(cls, v: Any) -> np.ndarray:
        """Store coefficients as read-only float arrays."""
        return _real_array(v)

    @model_validator(mode="after")
    def check_shapes(self) -> "BlochTripartite":
        """Every array must be built on side N^2 - 1."""
        k = self.dim * self.dim - 1
        expected = {
            "T1": (k,),
            "T2": (k,),
            "T3": (k,),
            "T12": (k, k),
            "T13": (k, k),
            "T23": (k, k),
            "T123": (k, k, k),
        }
        for name, shape in expected.items():
            value = getattr(self, name)
            if value.shape != shape:
                raise InvalidShapeError(f"{name} must have shape {shape} for N={self.dim}, got {value.shape}")
        return self

    @property
    def size(self) -> int:
        """N^2 - 1."""
        return self.dim * self.dim - 1

    def vector(self, party: int) -> np.ndarray:
        """One-body vector of party 1, 2 or 3."""
        if party not in (1, 2, 3):
            raise InvalidDimensionError(f"Party must be 1, 2 or 3, got {party}")
        return getattr(self, f"T{party}")

    def pair(self, beta: int, gamma: int) -> np.ndarray:
        """Two-body matrix with party beta on the rows, beta < gamma."""
        key = (beta, gamma)
        if key not in ((1, 2), (1, 3), (2, 3)):
            raise InvalidDimensionError(f"Pair must be (1, 2), (1, 3) or (2, 3), got {key}")
        return getattr(self, f"T{beta}{gamma}")


class OrderedSvd(BaseModel):
    """Singular value decomposition m = P diag(sigma) Q^t, sigma nonincreasing.

    P and Q are full square orthogonal matrices. For rectangular input only
    the first min(rows, cols) columns of each are paired with sigma.
    """

    model_config = ARRAY_CONFIG

    P: np.ndarray
    sigma: np.ndarray
    Q: np.ndarray

    @field_validator("P", "sigma", "Q", mode="before")
    @classmethod
    def coerce_real(cls, v: Any) -> np.ndarray:
        """Store factors as read-only float arrays."""
        return _frozen_array(v, np.float64)

    def reconstruct(self) -> np.ndarray:
        """P diag(sigma) Q^t."""
        rows, cols = self.P.shape[0], self.Q.shape[0]
        k = self.sigma.size
        middle = np.zeros((rows, cols))
        middle[np.arange(k), np.arange(k)] = self.sigma
        return self.P @ middle @ self.Q.T


class BlockSpectrum(BaseModel):
    """Singular values grouped into degeneracy blocks.

    n_blocks counts every group including a trailing zero block; n_prime
    counts the nonzero groups, which are the ones that carry inner-product
    invariants.
    """

    model_config = ConfigDict(frozen=True)

    distinct_values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    has_zero_block: bool
    n_blocks: int = Field(ge=0)
    n_prime: int = Field(ge=0)

    @model_validator(mode="after")
    def check_counts(self) -> "BlockSpectrum":
        """Block counts must agree with the value and multiplicity lists."""
        if len(self.distinct_values) != len(self.multiplicities):
            raise InvalidShapeError("distinct_values and multiplicities differ in length")
        if any(a <= 0 for a in self.multiplicities):
            raise InvalidInputError("Block multiplicities must be positive")
        if self.n_blocks != len(self.multiplicities):
            raise InvalidInputError(
                f"n_blocks={self.n_blocks} but {len(self.multiplicities)} blocks present"
            )
        expected_prime = self.n_blocks - 1 if self.has_zero_block else self.n_blocks
        if self.n_prime != expected_prime:
            raise InvalidInputError(f"n_prime must be {expected_prime}, got {self.n_prime}")
        return self

    @property
    def size(self) -> int:
        """Side of the partitioned spectrum (sum of multiplicities)."""
        return sum(self.multiplicities)

    @property
    def nonzero_size(self) -> int:
        """Number of singular values outside the zero block."""
        return sum(self.multiplicities[: self.n_prime])

    def same_structure(self, other: "BlockSpectrum") -> bool:
        """True if both spectra have identical multiplicities and zero flag."""
        return (
            self.multiplicities == other.multiplicities
            and self.has_zero_block == other.has_zero_block
        )


class BlockProjection(BaseModel):
    """A vector split contiguously into per-block parts."""

    model_config = ARRAY_CONFIG

    parts: tuple[np.ndarray, ...]

    def norms(self) -> tuple[float, ...]:
        """Euclidean norm of every part."""
        return tuple(float(np.linalg.norm(p)) for p in self.parts)


class BlockInvariants(BaseModel):
    """Block norms of two projected vectors and their per-block inner products."""

    model_config = ConfigDict(frozen=True)

    left_norms: tuple[float, ...]
    right_norms: tuple[float, ...]
    inner: tuple[float, ...]


class FeatureMatrix(BaseModel):
    """Bordered matrix [[1, b^t], [a, C]] built from Bloch coefficients."""

    model_config = ARRAY_CONFIG

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def coerce_real(cls, v: Any) -> np.ndarray:
        """Store entries as a read-only float matrix."""
        array = _frozen_array(v, np.float64)
        if array.ndim != 2:
            raise InvalidShapeError(f"Feature matrix must be 2-D, got shape {array.shape}")
        return array

    @property
    def shape(self) -> tuple[int, int]:
        """Matrix shape."""
        return (int(self.entries.shape[0]), int(self.entries.shape[1]))


class InvariantFingerprint(BaseModel):
    """Complete two-qudit invariant set of one state.

    Determinants are stored with their sensitivity scale; two determinants are
    compared against eps_cmp times the larger scale.
    """

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    eps_deg: float = EPS_DEG
    eps_zero: float = EPS_ZERO
    sigma: tuple[float, ...]
    det_T: float
    det_T_scale: float = Field(ge=0.0)
    det_M: float
    det_M_scale: float = Field(ge=0.0)
    block_structure: BlockSpectrum
    r_norms: tuple[float, ...]
    s_norms: tuple[float, ...]
    rs_inner: tuple[float, ...]

    @model_validator(mode="after")
    def check_lengths(self) -> "InvariantFingerprint":
        """Per-block lists must match the block structure."""
        blocks = self.block_structure
        if len(self.r_norms) != blocks.n_blocks or len(self.s_norms) != blocks.n_blocks:
            raise InvalidShapeError("Block norm lists must have n_blocks entries")
        if len(self.rs_inner) != blocks.n_prime:
            raise InvalidShapeError("Inner product list must have n_prime entries")
        return self


class RoleInvariants(BaseModel):
    """Invariants of one role assignment (alpha | beta gamma) of three parties.

    u3 equals u2 by definition; it is stored once and exposed under both names.
    """

    model_config = ConfigDict(frozen=True)

    role: tuple[int, int, int]
    sigma_pair: tuple[float, ...]
    sigma_flat: tuple[float, ...]
    det_T_pair: float
    det_T_pair_scale: float = Field(ge=0.0)
    det_M_pair: float
    det_M_pair_scale: float = Field(ge=0.0)
    pair_blocks: BlockSpectrum
    flat_row_blocks: BlockSpectrum
    flat_col_blocks: BlockSpectrum
    u1_norms: tuple[float, ...]
    v1_norms: tuple[float, ...]
    uv1_inner: tuple[float, ...]
    u2_norms: tuple[float, ...]
    v2_norms: tuple[float, ...]
    uv2_inner: tuple[float, ...]
    v3_norms: tuple[float, ...]
    uv3_inner: tuple[float, ...]

    @model_validator(mode="after")
    def check_lengths(self) -> "RoleInvariants":
        """Spectra and per-block lists must match their block structures."""
        if self.role not in ROLES:
            raise InvalidInputError(f"Role must be one of {list(ROLES)}, got {self.role}")
        pair, rows, cols = self.pair_blocks, self.flat_row_blocks, self.flat_col_blocks
        if len(self.sigma_pair) != pair.size or len(self.sigma_flat) != rows.size:
            raise InvalidShapeError("Singular value lists must match their block sizes")
        n_inner = rows.n_prime
        if cols.n_prime != n_inner or rows.multiplicities[:n_inner] != cols.multiplicities[:n_inner]:
            raise InvalidShapeError(
                f"Flattening row blocks {rows.multiplicities} and column blocks "
                f"{cols.multiplicities} disagree on the nonzero part"
            )
        expected = {
            "u1_norms": pair.n_blocks,
            "v1_norms": pair.n_blocks,
            "uv1_inner": pair.n_prime,
            "u2_norms": rows.n_blocks,
            "v2_norms": cols.n_blocks,
            "uv2_inner": rows.n_prime,
            "v3_norms": cols.n_blocks,
            "uv3_inner": rows.n_prime,
        }
        for name, length in expected.items():
            actual = len(getattr(self, name))
            if actual != length:
                raise InvalidShapeError(f"{name} must have {length} entries, got {actual}")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def u3_norms(self) -> tuple[float, ...]:
        """Block norms of u3, identical to u2."""
        return self.u2_norms


class TripartiteFingerprint(BaseModel):
    """Three-qudit invariant set over the role assignments (1,2,3), (2,1,3), (3,1,2)."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    eps_deg: float = EPS_DEG
    eps_zero: float = EPS_ZERO
    roles: tuple[RoleInvariants, ...]

    @model_validator(mode="after")
    def check_roles(self) -> "TripartiteFingerprint":
        """All three role assignments, in report order."""
        found = tuple(r.role for r in self.roles)
        if found != ROLES:
            raise InvalidInputError(f"Roles must be {list(ROLES)} in this order, got {list(found)}")
        return self


class Outcome(str, Enum):
    """Comparison outcome. Equal invariants never certify equivalence."""

    NOT_EQUIVALENT = "NotEquivalent"
    INCONCLUSIVE = "Inconclusive"


class Witness(BaseModel):
    """One invariant that differs between two fingerprints."""

    model_config = ConfigDict(frozen=True)

    name: str
    value1: float
    value2: float
    delta: float


class Verdict(BaseModel):
    """Result of comparing two fingerprints."""

    model_config = ConfigDict(frozen=True)

    outcome: Outcome
    witnesses: tuple[Witness, ...] = ()
    warnings: tuple[str, ...] = ()
    eps_cmp: float = EPS_CMP

    @model_validator(mode="after")
    def check_outcome(self) -> "Verdict":
        """NotEquivalent exactly when there is a witness."""
        if (self.outcome is Outcome.NOT_EQUIVALENT) != bool(self.witnesses):
            raise InvalidInputError("Outcome NotEquivalent requires witnesses and vice versa")
        return self

    @property
    def exit_code(self) -> int:
        """1 for NotEquivalent, 0 for Inconclusive."""
        return 1 if self.outcome is Outcome.NOT_EQUIVALENT else 0


class ConcurrenceReport(BaseModel):
    """Concurrence of a pure two-qudit state and the block-norm identity check."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    c: float = Field(ge=0.0, le=1.0)
    purity_reduced: float
    lhs: float = Field(description="Sum of squared block norms of the rotated R")
    lhs_s: float = Field(description="Sum of squared block norms of the rotated S")
    rhs: float = Field(description="(N-1)/(2N^3) (1 - c^2)")
    residual: float = Field(ge=0.0)
    r_norm: float = Field(ge=0.0)
    s_norm: float = Field(ge=0.0)
