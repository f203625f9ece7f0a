"""Shared pytest fixtures for lu-invar tests."""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from lu_invar.core.bloch import decompose_bipartite, reconstruct_bipartite
from lu_invar.core.models import BlochBipartite, DensityMatrix
from lu_invar.core.sampling import SeededRng
from lu_invar.core.statefiles import render, state_document
from lu_invar.utils.serialization import write_atomic

Q_NOISE = 4 / 17


def ket(amplitudes: dict[str, complex], dim: int) -> np.ndarray:
    """State vector from {"012": amplitude} labels, last party fastest."""
    parties = len(next(iter(amplitudes)))
    vector = np.zeros(dim**parties, dtype=complex)
    for label, amplitude in amplitudes.items():
        index = 0
        for digit in label:
            index = index * dim + int(digit)
        vector[index] = amplitude
    return vector


def assert_dumps_close(first: Any, second: Any, atol: float, path: str = "") -> None:
    """Recursively compare two model dumps: floats within atol, everything else exactly."""
    if isinstance(first, dict):
        assert first.keys() == second.keys(), path
        for key in first:
            assert_dumps_close(first[key], second[key], atol, f"{path}.{key}")
    elif isinstance(first, (list, tuple)):
        assert len(first) == len(second), f"{path}: {len(first)} != {len(second)}"
        for i, (a, b) in enumerate(zip(first, second, strict=True)):
            assert_dumps_close(a, b, atol, f"{path}[{i}]")
    elif isinstance(first, float):
        assert abs(first - second) <= atol, f"{path}: {first} vs {second}"
    else:
        assert first == second, path


def noisy_qutrit_state(q: float = Q_NOISE) -> DensityMatrix:
    """Noisy two-qutrit state q|psi><psi| + (1-q)/6 (sum of six product projectors)."""
    psi = ket({"00": np.sqrt(2) / 4, "11": np.sqrt(2) / 4, "22": np.sqrt(3) / 2}, 3)
    matrix = q * np.outer(psi, psi.conj())
    for label in ("01", "10", "02", "20", "12", "21"):
        e = ket({label: 1.0}, 3)
        matrix = matrix + (1 - q) / 6 * np.outer(e, e)
    return DensityMatrix(dims=(3, 3), entries=matrix)


@pytest.fixture
def fixtures_dir() -> Path:
    """Return path to test fixtures directory."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> SeededRng:
    """Seed-pinned random stream."""
    return SeededRng(20240917)


@pytest.fixture
def qutrit_psi() -> DensityMatrix:
    """Pure state sqrt(2)/4 |00> + sqrt(2)/4 |11> + sqrt(3)/2 |22>."""
    psi = ket({"00": np.sqrt(2) / 4, "11": np.sqrt(2) / 4, "22": np.sqrt(3) / 2}, 3)
    return DensityMatrix.from_ket(psi, (3, 3))


@pytest.fixture
def noisy_rho() -> DensityMatrix:
    """Noisy two-qutrit state with q = 4/17."""
    return noisy_qutrit_state()


@pytest.fixture
def noisy_rho_prime(noisy_rho: DensityMatrix) -> DensityMatrix:
    """Same R and S as noisy_rho with T replaced by -T."""
    b = decompose_bipartite(noisy_rho)
    flipped = BlochBipartite(dim=3, R=b.R, S=b.S, T=-b.T)
    return DensityMatrix(dims=(3, 3), entries=reconstruct_bipartite(flipped).entries)


@pytest.fixture
def noisy_expected() -> dict[str, np.ndarray]:
    """Bloch coefficients of noisy_rho under the interleaved generator order."""
    r = np.zeros(8)
    r[7] = -5 * np.sqrt(3) / 306
    s6 = np.sqrt(6) / 68
    t_diag = np.array([1 / 68, -1 / 68, -5 / 102, s6, -s6, s6, -s6, 0.0])
    return {"R": r, "S": r.copy(), "T": np.diag(t_diag)}


@pytest.fixture
def bell() -> DensityMatrix:
    """(|00> + |11>)/sqrt(2)."""
    return DensityMatrix.from_ket(ket({"00": 1, "11": 1}, 2), (2, 2))


@pytest.fixture
def ghz() -> DensityMatrix:
    """(|000> + |111>)/sqrt(2)."""
    return DensityMatrix.from_ket(ket({"000": 1, "111": 1}, 2), (2, 2, 2))


@pytest.fixture
def w_state() -> DensityMatrix:
    """(|001> + |010> + |100>)/sqrt(3)."""
    return DensityMatrix.from_ket(ket({"001": 1, "010": 1, "100": 1}, 2), (2, 2, 2))


@pytest.fixture
def product_qubits() -> DensityMatrix:
    """|0> x |+>, a pure product state."""
    return DensityMatrix.from_ket(np.kron([1, 0], [1, 1]), (2, 2))


@pytest.fixture
def maximally_mixed() -> Callable[[int, int], DensityMatrix]:
    """Factory for I/N^parties."""

    def build(dim: int, parties: int = 2) -> DensityMatrix:
        side = dim**parties
        return DensityMatrix(dims=(dim,) * parties, entries=np.eye(side) / side)

    return build


@pytest.fixture
def write_state(tmp_path: Path) -> Callable[..., Path]:
    """Write a state document into tmp_path and return its path."""

    def write(rho: DensityMatrix, name: str = "state.yaml", seed: int | None = None) -> Path:
        return write_atomic(tmp_path / name, render(state_document(rho, seed)))

    return write
