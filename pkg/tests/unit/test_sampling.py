"""Unit tests for random sampling, LU application and adjoint rotations."""

from pathlib import Path

import numpy as np
import pytest
from scipy import stats
from scipy.linalg import expm

from lu_invar.core.bloch import decompose_bipartite
from lu_invar.core.gellmann import su_generators
from lu_invar.core.models import DensityMatrix
from lu_invar.core.sampling import (
    SeededRng,
    adjoint_rotation,
    apply_lu,
    block_orthogonal,
    haar_orthogonal,
    haar_unitary,
    random_density,
    random_lu,
)
from lu_invar.core.statefiles import parse_document, unitaries_from_document
from lu_invar.utils.validators import InvalidInputError, InvalidShapeError


class TestSeededRng:
    """Tests for SeededRng."""

    def test_same_seed_same_stream(self):
        """Identical seeds give identical draws."""
        a = SeededRng(7).generator.normal(size=10)
        b = SeededRng(7).generator.normal(size=10)
        np.testing.assert_array_equal(a, b)

    def test_different_seeds_differ(self):
        """Different seeds give different draws."""
        assert not np.array_equal(SeededRng(7).generator.normal(size=4), SeededRng(8).generator.normal(size=4))

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        """Seeds must fit in an unsigned 64-bit integer."""
        with pytest.raises(InvalidInputError):
            SeededRng(seed)

    def test_unknown_algorithm(self):
        """Only the named algorithm is accepted."""
        with pytest.raises(InvalidInputError):
            SeededRng(1, algorithm="MT19937")


class TestHaarUnitary:
    """Tests for haar_unitary."""

    @pytest.mark.parametrize("dim", [1, 2, 3, 4, 6])
    def test_unitary(self, dim, rng):
        """U^dagger U = I within 1e-12."""
        u = haar_unitary(dim, rng)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-12

    def test_reproducible(self):
        """Fixed seed gives the same matrix."""
        np.testing.assert_array_equal(haar_unitary(2, SeededRng(42)), haar_unitary(2, SeededRng(42)))

    def test_golden_seed_42(self, fixtures_dir: Path):
        """Seed 42, N = 2 reproduces the committed normal draws and unitary."""
        golden = fixtures_dir / "golden" / "haar_seed42_dim2.yaml"
        assert golden.is_file(), f"missing golden fixture {golden}"
        doc = parse_document(golden.read_text(), str(golden))
        assert doc["provenance"] == {"seed": 42, "algorithm": "PCG64"}

        draws = SeededRng(42).generator.standard_normal(8)
        np.testing.assert_allclose(draws, doc["normals"], rtol=0, atol=1e-8)

        recorded = unitaries_from_document(doc, str(golden))[0]
        np.testing.assert_allclose(haar_unitary(2, SeededRng(42)), recorded, rtol=0, atol=1e-6)

    def test_column_norm_distribution(self):
        """|U_00|^2 of Haar U(3) follows Beta(1, 2) (coarse chi-square check)."""
        rng = SeededRng(99)
        samples = np.array([abs(haar_unitary(3, rng)[0, 0]) ** 2 for _ in range(10_000)])
        edges = np.linspace(0, 1, 11)
        observed, _ = np.histogram(samples, bins=edges)
        expected = np.diff(stats.beta(1, 2).cdf(edges)) * samples.size
        _, p_value = stats.chisquare(observed, expected)
        assert p_value > 1e-4


class TestOrthogonalSampling:
    """Tests for haar_orthogonal and block_orthogonal."""

    def test_orthogonal(self, rng):
        """Q^t Q = I."""
        q = haar_orthogonal(5, rng)
        assert np.max(np.abs(q.T @ q - np.eye(5))) < 1e-12

    def test_block_structure(self, rng):
        """Off-block entries are zero."""
        g = block_orthogonal((2, 3), rng)
        assert g.shape == (5, 5)
        assert not np.any(g[:2, 2:])
        assert not np.any(g[2:, :2])
        assert np.max(np.abs(g.T @ g - np.eye(5))) < 1e-12


class TestRandomDensity:
    """Tests for random_density."""

    def test_pure(self, rng):
        """Rank 1 gives Tr(rho^2) = 1."""
        rho = random_density((3, 3), 1, rng)
        assert abs(rho.purity() - 1) < 1e-12

    def test_full_rank(self, rng):
        """Rank d gives d positive eigenvalues."""
        rho = random_density((2, 2), 4, rng)
        assert np.sum(rho.eigenvalues() > 1e-10) == 4

    @pytest.mark.parametrize("rank", [1, 2, 5])
    def test_trace_and_rank(self, rank, rng):
        """Trace 1 within 1e-14 and the requested rank."""
        rho = random_density((3, 3), rank, rng)
        assert abs(np.trace(rho.entries) - 1) < 1e-14
        assert np.sum(rho.eigenvalues() > 1e-10) == rank

    @pytest.mark.parametrize("rank", [0, 10])
    def test_rank_out_of_range(self, rank, rng):
        """Rank must be in 1..d."""
        with pytest.raises(InvalidInputError):
            random_density((3, 3), rank, rng)


class TestApplyLu:
    """Tests for apply_lu."""

    def test_identities(self, noisy_rho):
        """Identity unitaries leave rho unchanged."""
        image = apply_lu(noisy_rho, [np.eye(3), np.eye(3)])
        np.testing.assert_allclose(image.entries, noisy_rho.entries, atol=1e-15)

    def test_spectrum_preserved(self, rng):
        """Unitary conjugation preserves the spectrum."""
        rho = random_density((3, 3, 3), 4, rng)
        image = apply_lu(rho, random_lu(rho.dims, rng))
        np.testing.assert_allclose(image.eigenvalues(), rho.eigenvalues(), atol=1e-12)

    def test_local_phase_on_product(self, rng):
        """A unitary on one party of a product state conjugates that factor only."""
        a = random_density((2, 2), 1, rng)
        rho_a = np.einsum("akbk->ab", a.entries.reshape(2, 2, 2, 2))
        rho_b = np.diag([0.25, 0.75])
        rho = DensityMatrix(dims=(2, 2), entries=np.kron(rho_a, rho_b))
        phase = np.diag([1.0, np.exp(0.3j)])
        image = apply_lu(rho, [phase, np.eye(2)])
        expected = np.kron(phase @ rho_a @ phase.conj().T, rho_b)
        np.testing.assert_allclose(image.entries, expected, atol=1e-14)

    def test_wrong_count(self, bell):
        """One unitary per party."""
        with pytest.raises(InvalidShapeError):
            apply_lu(bell, [np.eye(2)])

    def test_wrong_size(self, bell):
        """Unitary sizes must match the parties."""
        with pytest.raises(InvalidShapeError):
            apply_lu(bell, [np.eye(2), np.eye(3)])

    def test_non_unitary(self, bell):
        """Non-unitary matrices are rejected."""
        with pytest.raises(InvalidInputError):
            apply_lu(bell, [np.eye(2), 2 * np.eye(2)])


class TestAdjointRotation:
    """Tests for adjoint_rotation."""

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_identity(self, dim):
        """O(I) = I."""
        np.testing.assert_allclose(adjoint_rotation(np.eye(dim)), np.eye(dim * dim - 1), atol=1e-15)

    def test_z_rotation(self):
        """exp(-i theta sigma_z / 2) rotates the (sigma_x, sigma_y) plane by theta."""
        theta = 0.7
        sz = su_generators(2).generators[2]
        u = expm(-1j * theta * sz / 2)
        c, s = np.cos(theta), np.sin(theta)
        expected = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
        np.testing.assert_allclose(adjoint_rotation(u), expected, atol=1e-14)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_special_orthogonal(self, dim, rng):
        """O^t O = I and det O = +1."""
        o = adjoint_rotation(haar_unitary(dim, rng))
        assert np.max(np.abs(o.T @ o - np.eye(dim * dim - 1))) < 1e-12
        assert abs(np.linalg.det(o) - 1) < 1e-10

    @pytest.mark.parametrize("dim", [2, 3])
    def test_homomorphism(self, dim, rng):
        """O(uv) = O(u) O(v)."""
        u, v = haar_unitary(dim, rng), haar_unitary(dim, rng)
        np.testing.assert_allclose(adjoint_rotation(u @ v), adjoint_rotation(u) @ adjoint_rotation(v), atol=1e-11)

    def test_global_phase_cancels(self, rng):
        """A global phase does not change the rotation."""
        u = haar_unitary(3, rng)
        np.testing.assert_allclose(adjoint_rotation(np.exp(1.1j) * u), adjoint_rotation(u), atol=1e-14)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_coefficient_convention(self, dim, rng):
        """R' = O(u) R, S' = O(v) S and T' = O(u) T O(v)^t."""
        rho = random_density((dim, dim), 2, rng)
        u, v = haar_unitary(dim, rng), haar_unitary(dim, rng)
        before = decompose_bipartite(rho)
        after = decompose_bipartite(apply_lu(rho, [u, v]))
        ou, ov = adjoint_rotation(u), adjoint_rotation(v)
        np.testing.assert_allclose(after.R, ou @ before.R, atol=1e-12)
        np.testing.assert_allclose(after.S, ov @ before.S, atol=1e-12)
        np.testing.assert_allclose(after.T, ou @ before.T @ ov.T, atol=1e-12)

    def test_non_unitary_rejected(self):
        """Non-unitary input is rejected."""
        with pytest.raises(InvalidInputError):
            adjoint_rotation(np.array([[1.0, 1.0], [0.0, 1.0]]))
