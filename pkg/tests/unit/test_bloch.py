"""Unit tests for Bloch decompositions, flattenings and vec."""

import numpy as np
import pytest

from lu_invar.core.bloch import (
    decompose_bipartite,
    decompose_tripartite,
    flatten_mode,
    reconstruct_bipartite,
    reconstruct_tripartite,
    vec_row_major,
)
from lu_invar.core.models import BlochBipartite, BlochTripartite, DensityMatrix
from lu_invar.core.sampling import haar_orthogonal, random_density
from lu_invar.utils.validators import (
    InvalidDimensionError,
    InvalidShapeError,
    InvalidStateError,
)


def single_qudit(dim, rng):
    """Random full-rank single-party state as a matrix."""
    g = rng.ginibre(dim, dim)
    m = g @ g.conj().T
    return m / np.trace(m).real


class TestDecomposeBipartite:
    """Tests for decompose_bipartite."""

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_maximally_mixed_is_zero(self, dim, maximally_mixed):
        """I/N^2 has R = S = 0 and T = 0."""
        b = decompose_bipartite(maximally_mixed(dim))
        assert np.max(np.abs(b.R)) < 1e-15
        assert np.max(np.abs(b.S)) < 1e-15
        assert np.max(np.abs(b.T)) < 1e-15

    def test_noisy_coefficients(self, noisy_rho, noisy_expected):
        """The noisy two-qutrit state reproduces R, S and the diagonal T."""
        b = decompose_bipartite(noisy_rho)
        np.testing.assert_allclose(b.R, noisy_expected["R"], rtol=0, atol=1e-12)
        np.testing.assert_allclose(b.S, noisy_expected["S"], rtol=0, atol=1e-12)
        np.testing.assert_allclose(b.T, noisy_expected["T"], rtol=0, atol=1e-12)

    def test_noisy_diagonal_matches_displayed_multiset(self, noisy_rho):
        """Sorted diagonal of T equals the displayed entries in any order."""
        s6 = np.sqrt(6) / 68
        displayed = [1 / 68, s6, -1 / 68, -5 / 102, s6, -s6, -s6, 0.0]
        b = decompose_bipartite(noisy_rho)
        np.testing.assert_allclose(np.sort(np.diag(b.T)), np.sort(displayed), atol=1e-12)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_product_state_correlations(self, dim, rng):
        """For rho_a x rho_b, T = N^2 R S^t."""
        rho = DensityMatrix(dims=(dim, dim), entries=np.kron(single_qudit(dim, rng), single_qudit(dim, rng)))
        b = decompose_bipartite(rho)
        np.testing.assert_allclose(b.T, dim * dim * np.outer(b.R, b.S), atol=1e-14)

    def test_pure_product_has_rank_one_correlations(self, product_qubits):
        """A pure product state has at most one nonzero singular value of T."""
        sigma = np.linalg.svd(decompose_bipartite(product_qubits).T, compute_uv=False)
        assert np.all(sigma[1:] < 1e-12)

    def test_unequal_dims_rejected(self):
        """Party dimensions must agree."""
        rho = DensityMatrix(dims=(2, 3), entries=np.eye(6) / 6)
        with pytest.raises(InvalidShapeError):
            decompose_bipartite(rho)

    def test_three_parties_rejected(self, ghz):
        """The two-party decomposition refuses a three-party state."""
        with pytest.raises(InvalidShapeError):
            decompose_bipartite(ghz)

    def test_imaginary_residue_rejected(self):
        """Traces with a large imaginary part raise invalid-state."""
        bad = np.eye(4, dtype=complex) / 4
        bad[0, 1] = 1e-9j
        rho = DensityMatrix.unchecked((2, 2), bad)
        with pytest.raises(InvalidStateError) as exc:
            decompose_bipartite(rho)
        assert exc.value.invariant == "imaginary_residue"


class TestReconstructBipartite:
    """Tests for reconstruct_bipartite."""

    def test_zero_coefficients(self):
        """R = S = 0, T = 0 with N = 3 gives I/9."""
        b = BlochBipartite(dim=3, R=np.zeros(8), S=np.zeros(8), T=np.zeros((8, 8)))
        np.testing.assert_allclose(reconstruct_bipartite(b).entries, np.eye(9) / 9, atol=1e-16)

    def test_noisy_coefficients_rebuild_state(self, noisy_rho, noisy_expected):
        """The stated coefficients reconstruct the noisy two-qutrit state."""
        b = BlochBipartite(dim=3, **noisy_expected)
        assert np.linalg.norm(reconstruct_bipartite(b).entries - noisy_rho.entries) < 1e-12

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_roundtrip(self, dim, rng):
        """decompose then reconstruct is exact on random states."""
        for rank in (1, 2, dim * dim):
            rho = random_density((dim, dim), rank, rng)
            back = reconstruct_bipartite(decompose_bipartite(rho))
            assert np.linalg.norm(back.entries - rho.entries) < 1e-12

    @pytest.mark.parametrize("dim", [2, 3])
    def test_reverse_roundtrip(self, dim, rng):
        """reconstruct then decompose returns arbitrary coefficients unchanged."""
        k = dim * dim - 1
        g = rng.generator
        b = BlochBipartite(dim=dim, R=g.normal(size=k), S=g.normal(size=k), T=g.normal(size=(k, k)))
        rho = reconstruct_bipartite(b)
        assert np.max(np.abs(rho.entries - rho.entries.conj().T)) < 1e-14
        assert abs(np.trace(rho.entries) - 1) < 1e-14
        again = decompose_bipartite(rho)
        np.testing.assert_allclose(again.R, b.R, atol=1e-12)
        np.testing.assert_allclose(again.S, b.S, atol=1e-12)
        np.testing.assert_allclose(again.T, b.T, atol=1e-12)

    def test_shape_mismatch(self):
        """Coefficient arrays must match N."""
        with pytest.raises(InvalidShapeError):
            BlochBipartite(dim=3, R=np.zeros(3), S=np.zeros(8), T=np.zeros((8, 8)))


class TestTripartite:
    """Tests for decompose_tripartite / reconstruct_tripartite."""

    @pytest.mark.parametrize("dim", [2, 3])
    def test_maximally_mixed_is_zero(self, dim, maximally_mixed):
        """I/N^3 has all coefficient arrays zero."""
        b = decompose_tripartite(maximally_mixed(dim, 3))
        for name in ("T1", "T2", "T3", "T12", "T13", "T23", "T123"):
            assert np.max(np.abs(getattr(b, name))) < 1e-15

    def test_ghz_coefficients(self, ghz):
        """GHZ has vanishing one-body vectors, T_ij = diag(0,0,1/8) and +-1/8 three-body terms."""
        b = decompose_tripartite(ghz)
        for name in ("T1", "T2", "T3"):
            np.testing.assert_allclose(getattr(b, name), np.zeros(3), atol=1e-15)
        for name in ("T12", "T13", "T23"):
            np.testing.assert_allclose(getattr(b, name), np.diag([0, 0, 1 / 8]), atol=1e-15)
        expected = np.zeros((3, 3, 3))
        expected[0, 0, 0] = 1 / 8
        expected[0, 1, 1] = expected[1, 0, 1] = expected[1, 1, 0] = -1 / 8
        np.testing.assert_allclose(b.T123, expected, atol=1e-15)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_roundtrip(self, dim, rng):
        """decompose then reconstruct is exact on random three-party states."""
        for rank in (1, 3):
            rho = random_density((dim, dim, dim), rank, rng)
            back = reconstruct_tripartite(decompose_tripartite(rho))
            assert np.linalg.norm(back.entries - rho.entries) < 1e-12

    def test_reverse_roundtrip(self, rng):
        """reconstruct then decompose returns the coefficients."""
        g = rng.generator
        b = BlochTripartite(
            dim=2,
            T1=g.normal(size=3),
            T2=g.normal(size=3),
            T3=g.normal(size=3),
            T12=g.normal(size=(3, 3)),
            T13=g.normal(size=(3, 3)),
            T23=g.normal(size=(3, 3)),
            T123=g.normal(size=(3, 3, 3)),
        )
        rho = reconstruct_tripartite(b)
        # reconstruction of arbitrary coefficients need not be positive
        again = decompose_tripartite(DensityMatrix.unchecked((2, 2, 2), rho.entries))
        for name in ("T1", "T2", "T3", "T12", "T13", "T23", "T123"):
            np.testing.assert_allclose(getattr(again, name), getattr(b, name), atol=1e-12)

    def test_two_party_state_rejected(self, bell):
        """The three-party decomposition refuses a two-party state."""
        with pytest.raises(InvalidShapeError):
            decompose_tripartite(bell)


class TestFlattenMode:
    """Tests for flatten_mode."""

    def test_mode_one_layout(self):
        """Entry (i, j*K + k) of mode 1 is t[i, j, k]."""
        t = np.arange(27.0).reshape(3, 3, 3)
        flat = flatten_mode(t, 1)
        assert flat.shape == (3, 9)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    assert flat[i, j * 3 + k] == t[i, j, k]

    def test_mode_two_layout(self):
        """Mode 2 puts the second subscript on the rows, (first, third) on columns."""
        t = np.arange(27.0).reshape(3, 3, 3)
        flat = flatten_mode(t, 2)
        assert flat[1, 2 * 3 + 0] == t[2, 1, 0]

    def test_mode_three_first_row(self):
        """First row of mode 3 is (t111, t121, t131, t211, ...)."""
        t = np.arange(27.0).reshape(3, 3, 3)
        flat = flatten_mode(t, 3)
        np.testing.assert_array_equal(flat[0, :4], [t[0, 0, 0], t[0, 1, 0], t[0, 2, 0], t[1, 0, 0]])

    @pytest.mark.parametrize("mode", [1, 2, 3])
    def test_entries_are_reindexed(self, mode, rng):
        """Flattening preserves the multiset of entries."""
        t = rng.generator.normal(size=(4, 4, 4))
        np.testing.assert_array_equal(np.sort(flatten_mode(t, mode).ravel()), np.sort(t.ravel()))

    def test_zero_tensor(self):
        """All-zeros tensor gives a zero matrix."""
        assert not np.any(flatten_mode(np.zeros((3, 3, 3)), 2))

    def test_higher_order(self):
        """Order-4 tensors flatten to K x K^3."""
        t = np.arange(16.0).reshape(2, 2, 2, 2)
        flat = flatten_mode(t, 4)
        assert flat.shape == (2, 8)
        assert flat[1, 0b011] == t[0, 1, 1, 1]

    def test_mode_flattening_transformation(self, rng):
        """Rotating each mode by O_i gives O_1 T_(1) (O_2 x O_3)^t."""
        t = rng.generator.normal(size=(3, 3, 3))
        o1, o2, o3 = (haar_orthogonal(3, rng) for _ in range(3))
        rotated = np.einsum("ai,bj,ck,ijk->abc", o1, o2, o3, t)
        expected = o1 @ flatten_mode(t, 1) @ np.kron(o2, o3).T
        np.testing.assert_allclose(flatten_mode(rotated, 1), expected, atol=1e-12)

    def test_non_cubic_rejected(self):
        """Tensors with unequal sides are rejected."""
        with pytest.raises(InvalidShapeError):
            flatten_mode(np.zeros((2, 3, 3)), 1)

    def test_mode_out_of_range(self):
        """Mode must name an existing axis."""
        with pytest.raises(InvalidDimensionError):
            flatten_mode(np.zeros((2, 2, 2)), 4)


class TestVecRowMajor:
    """Tests for vec_row_major."""

    def test_simple(self):
        """[[1,2],[3,4]] -> (1,2,3,4)."""
        np.testing.assert_array_equal(vec_row_major(np.array([[1, 2], [3, 4]])), [1, 2, 3, 4])

    def test_identity(self):
        """I_2 -> (1,0,0,1)."""
        np.testing.assert_array_equal(vec_row_major(np.eye(2)), [1, 0, 0, 1])

    def test_kronecker_identity(self, rng):
        """vec(A^t X B) = (A^t x B^t) vec(X)."""
        a = haar_orthogonal(3, rng)
        b = haar_orthogonal(3, rng)
        x = rng.generator.normal(size=(3, 3))
        np.testing.assert_allclose(
            vec_row_major(a.T @ x @ b), np.kron(a.T, b.T) @ vec_row_major(x), atol=1e-12
        )

    def test_rejects_vector(self):
        """vec needs a matrix."""
        with pytest.raises(InvalidShapeError):
            vec_row_major(np.zeros(3))
