"""Generalized Bloch representations of two- and three-qudit states.

A two-qudit state is written as

    rho = I/N^2 + sum_i R_i l_i x I + sum_j S_j I x l_j + sum_ij T_ij l_i x l_j

and a three-qudit state analogously with one-body vectors T1, T2, T3,
two-body matrices T12, T13, T23 and the tensor T123. Coefficients are
extracted by trace orthogonality of the generators, so the normalizations
are 1/(2N), 1/4 (two parties) and 1/(2N^2), 1/(4N), 1/8 (three parties).

Traces are evaluated with einsum on the density matrix reshaped to one
axis per party index; row index (a, b, c) has the last party fastest.
"""

import logging

import numpy as np

from lu_invar.core.gellmann import su_generators
from lu_invar.core.models import BlochBipartite, BlochTripartite, DensityMatrix, GeneratorBasis
from lu_invar.utils.tolerances import EPS_IMAG
from lu_invar.utils.validators import (
    InvalidDimensionError,
    InvalidShapeError,
    InvalidStateError,
)

logger = logging.getLogger(__name__)

# Imaginary residues below this are dropped silently
SILENT_IMAG: float = 1e-12


def _resolve_basis(rho: DensityMatrix, parties: int, basis: GeneratorBasis | None) -> GeneratorBasis:
    if rho.n_parties != parties:
        raise InvalidShapeError(f"Expected a {parties}-party state, got {rho.n_parties} parties")
    n = rho.local_dim
    if basis is None:
        return su_generators(n)
    if basis.dim != n:
        raise InvalidShapeError(f"Basis is for N={basis.dim}, state has N={n}")
    return basis


def _real_part(values: np.ndarray, name: str) -> np.ndarray:
    """Drop the imaginary part of trace values, rejecting large residues."""
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if residue > EPS_IMAG:
        raise InvalidStateError("imaginary_residue", residue, f"coefficient traces for {name}")
    if residue > SILENT_IMAG:
        logger.warning(f"Discarding imaginary residue {residue:.2e} in {name} traces")
    return np.ascontiguousarray(values.real)


def decompose_bipartite(rho: DensityMatrix, basis: GeneratorBasis | None = None) -> BlochBipartite:
    """Bloch coefficients R, S, T of a two-qudit state.

    Args:
        rho: Two-party density matrix with equal local dimensions.
        basis: Generator basis; defaults to su_generators(N).

    Returns:
        R_i = Tr(rho l_i x I)/(2N), S_j = Tr(rho I x l_j)/(2N),
        T_ij = Tr(rho l_i x l_j)/4.

    Raises:
        InvalidShapeError: If rho is not two-party or the dimensions differ.
        InvalidStateError: If a trace has an imaginary part above EPS_IMAG.
    """
    basis = _resolve_basis(rho, 2, basis)
    n = basis.dim
    gens = basis.generators
    rho4 = rho.entries.reshape(n, n, n, n)

    r = np.einsum("abcb,ica->i", rho4, gens) / (2 * n)
    s = np.einsum("abad,jdb->j", rho4, gens) / (2 * n)
    t = np.einsum("abcd,ica,jdb->ij", rho4, gens, gens, optimize=True) / 4

    logger.debug(f"Decomposed two-qudit state with N={n}")
    return BlochBipartite(
        dim=n,
        R=_real_part(r, "R"),
        S=_real_part(s, "S"),
        T=_real_part(t, "T"),
    )


def reconstruct_bipartite(b: BlochBipartite, basis: GeneratorBasis | None = None) -> DensityMatrix:
    """Density matrix from two-qudit Bloch coefficients.

    Positivity is not checked: arbitrary coefficients need not describe a
    physical state.

    Raises:
        InvalidShapeError: If the basis does not match b.dim.
    """
    n = b.dim
    basis = basis or su_generators(n)
    if basis.dim != n:
        raise InvalidShapeError(f"Basis is for N={basis.dim}, coefficients have N={n}")
    gens = basis.generators
    eye = np.eye(n)

    local_r = np.einsum("i,iac->ac", b.R, gens)
    local_s = np.einsum("j,jbd->bd", b.S, gens)
    corr = np.einsum("ij,iac,jbd->abcd", b.T, gens, gens, optimize=True).reshape(n * n, n * n)

    matrix = np.eye(n * n) / (n * n) + np.kron(local_r, eye) + np.kron(eye, local_s) + corr
    return DensityMatrix.unchecked((n, n), matrix)


def decompose_tripartite(rho: DensityMatrix, basis: GeneratorBasis | None = None) -> BlochTripartite:
    """Bloch coefficients of a three-qudit state.

    Args:
        rho: Three-party density matrix with equal local dimensions.
        basis: Generator basis; defaults to su_generators(N).

    Returns:
        One-body vectors Tr(rho l_i I I)/(2N^2) and permutations, two-body
        matrices Tr(rho l_i l_j I)/(4N) and permutations, and the tensor
        Tr(rho l_i l_j l_k)/8.

    Raises:
        InvalidShapeError: If rho is not three-party or the dimensions differ.
        InvalidStateError: If a trace has an imaginary part above EPS_IMAG.
    """
    basis = _resolve_basis(rho, 3, basis)
    n = basis.dim
    g = basis.generators
    rho6 = rho.entries.reshape((n,) * 6)

    one = 2 * n * n
    two = 4 * n
    coeffs = {
        "T1": np.einsum("abcdbc,ida->i", rho6, g) / one,
        "T2": np.einsum("abcaec,jeb->j", rho6, g) / one,
        "T3": np.einsum("abcabf,kfc->k", rho6, g) / one,
        "T12": np.einsum("abcdec,ida,jeb->ij", rho6, g, g, optimize=True) / two,
        "T13": np.einsum("abcdbf,ida,kfc->ik", rho6, g, g, optimize=True) / two,
        "T23": np.einsum("abcaef,jeb,kfc->jk", rho6, g, g, optimize=True) / two,
        "T123": np.einsum("abcdef,ida,jeb,kfc->ijk", rho6, g, g, g, optimize=True) / 8,
    }

    logger.debug(f"Decomposed three-qudit state with N={n}")
    return BlochTripartite(dim=n, **{k: _real_part(v, k) for k, v in coeffs.items()})


def reconstruct_tripartite(b: BlochTripartite, basis: GeneratorBasis | None = None) -> DensityMatrix:
    """Density matrix from three-qudit Bloch coefficients (positivity unchecked).

    Raises:
        InvalidShapeError: If the basis does not match b.dim.
    """
    n = b.dim
    basis = basis or su_generators(n)
    if basis.dim != n:
        raise InvalidShapeError(f"Basis is for N={basis.dim}, coefficients have N={n}")
    g = basis.generators
    eye = np.eye(n)

    x1 = np.einsum("i,iad->ad", b.T1, g)
    x2 = np.einsum("j,jbe->be", b.T2, g)
    x3 = np.einsum("k,kcf->cf", b.T3, g)
    one_body = np.einsum("ad,be,cf->abcdef", x1, eye, eye) + np.einsum(
        "ad,be,cf->abcdef", eye, x2, eye
    ) + np.einsum("ad,be,cf->abcdef", eye, eye, x3)

    two_body = (
        np.einsum("ij,iad,jbe,cf->abcdef", b.T12, g, g, eye, optimize=True)
        + np.einsum("ik,iad,kcf,be->abcdef", b.T13, g, g, eye, optimize=True)
        + np.einsum("jk,jbe,kcf,ad->abcdef", b.T23, g, g, eye, optimize=True)
    )
    three_body = np.einsum("ijk,iad,jbe,kcf->abcdef", b.T123, g, g, g, optimize=True)

    side = n**3
    matrix = np.eye(side) / side + (one_body + two_body + three_body).reshape(side, side)
    return DensityMatrix.unchecked((n, n, n), matrix)


def decompose(rho: DensityMatrix, basis: GeneratorBasis | None = None) -> BlochBipartite | BlochTripartite:
    """Dispatch to the two- or three-party decomposition by party count."""
    if rho.n_parties == 2:
        return decompose_bipartite(rho, basis)
    return decompose_tripartite(rho, basis)


def flatten_mode(t: np.ndarray, mode: int) -> np.ndarray:
    """Mode flattening of a hypercubic tensor.

    The row index is the subscript of the given mode; columns run over the
    remaining subscripts in party order with the later party fastest, so for
    order 3 and mode 1 entry (i, j*K + k) is t[i, j, k].

    Args:
        t: Tensor of order >= 2 with all sides equal.
        mode: 1-based mode index.

    Returns:
        Matrix of shape (K, K^(order-1)).

    Raises:
        InvalidShapeError: If t is not hypercubic or has order < 2.
        InvalidDimensionError: If mode is out of range.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim < 2 or len(set(t.shape)) != 1:
        raise InvalidShapeError(f"Flattening needs a hypercubic tensor of order >= 2, got shape {t.shape}")
    if not 1 <= mode <= t.ndim:
        raise InvalidDimensionError(f"Mode must be in 1..{t.ndim}, got {mode}")
    side = t.shape[0]
    return np.moveaxis(t, mode - 1, 0).reshape(side, -1)


def vec_row_major(m: np.ndarray) -> np.ndarray:
    """Concatenate the rows of a matrix.

    With this ordering vec(A^t X B) = (A^t x B^t) vec(X).

    Raises:
        InvalidShapeError: If m is not 2-D.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise InvalidShapeError(f"vec expects a matrix, got shape {m.shape}")
    return m.reshape(-1).copy()
