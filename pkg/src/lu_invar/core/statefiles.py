"""State files and report documents.

Every document is a YAML mapping carrying `schema_version` and `kind`.
State files store the density matrix as rows of [re, im] pairs:

    schema_version: '1.0'
    kind: state
    dims: [3, 3]
    matrix:
    - [[0.1, 0.0], [0.0, 0.0], ...]
    provenance: {seed: 7}

Reports (bloch, fingerprint, verdict, concurrence, unitaries) are built
here as plain mappings and written with utils.serialization.
"""

import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from pydantic import ValidationError as PydanticValidationError

from lu_invar.core.models import (
    BlochBipartite,
    BlochTripartite,
    ConcurrenceReport,
    DensityMatrix,
    InvariantFingerprint,
    TripartiteFingerprint,
    Verdict,
)
from lu_invar.utils.serialization import digest, dump_document, load_document
from lu_invar.utils.tolerances import RNG_ALGORITHM, SCHEMA_VERSION
from lu_invar.utils.validators import ValidationError

logger = logging.getLogger(__name__)

STDIN_NAME = "-"
DOCUMENT_KINDS = ("state", "bloch", "fingerprint", "verdict", "concurrence", "unitaries")

Fingerprint = InvariantFingerprint | TripartiteFingerprint


class StateFileError(Exception):
    """Raised when a document cannot be read or is malformed."""

    pass


def read_source(source: str | Path) -> str:
    """Read a document from a file path, or from standard input for "-".

    Raises:
        StateFileError: If the file does not exist or cannot be read.
    """
    if str(source) == STDIN_NAME:
        return sys.stdin.read()
    path = Path(source)
    if not path.exists():
        raise StateFileError(f"File not found: {path}")
    if not path.is_file():
        raise StateFileError(f"Not a file: {path}")
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise StateFileError(f"Cannot read {path}: {e}") from e


def parse_document(text: str, source: str = "<input>") -> dict[str, Any]:
    """Parse YAML text into a document mapping and check its header.

    Raises:
        StateFileError: If the text is not YAML, not a mapping, or has an
            unknown kind or schema version.
    """
    try:
        doc = load_document(text)
    except yaml.YAMLError as e:
        raise StateFileError(f"{source}: invalid YAML: {e}") from e
    if not isinstance(doc, dict):
        raise StateFileError(f"{source}: document must be a mapping")
    version = _require(doc, "schema_version", source)
    if str(version) != SCHEMA_VERSION:
        raise StateFileError(f"{source}: unsupported schema_version {version!r}")
    kind = doc.get("kind", "state")
    if kind not in DOCUMENT_KINDS:
        raise StateFileError(f"{source}: unknown document kind {kind!r}")
    return doc


def _require(doc: dict[str, Any], field: str, source: str) -> Any:
    if field not in doc:
        raise StateFileError(f"{source}: missing field '{field}'")
    return doc[field]


def _complex_matrix(value: Any, source: str, field: str) -> np.ndarray:
    try:
        pairs = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise StateFileError(f"{source}: field '{field}' must contain [re, im] pairs") from e
    if pairs.ndim != 3 or pairs.shape[2] != 2:
        raise StateFileError(
            f"{source}: field '{field}' must be a list of rows of [re, im] pairs, got shape {pairs.shape}"
        )
    return pairs[..., 0] + 1j * pairs[..., 1]


def _pairs(matrix: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def state_from_document(doc: dict[str, Any], source: str = "<input>") -> DensityMatrix:
    """Build a validated DensityMatrix from a state document.

    Raises:
        StateFileError: If a field is missing or malformed.
        ValidationError: If the matrix is not a density matrix (the
            InvalidStateError names the violated condition and its residual).
    """
    if doc.get("kind", "state") != "state":
        raise StateFileError(f"{source}: expected a state document, got kind {doc.get('kind')!r}")
    dims = _require(doc, "dims", source)
    matrix = _complex_matrix(_require(doc, "matrix", source), source, "matrix")
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise StateFileError(f"{source}: field 'dims' must be a list of integers")
    return DensityMatrix(dims=dims, entries=matrix)


def state_document(rho: DensityMatrix, seed: int | None = None) -> dict[str, Any]:
    """State document for rho, with the generating seed when known."""
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "state",
        "dims": list(rho.dims),
        "matrix": _pairs(rho.entries),
    }
    if seed is not None:
        doc["provenance"] = {"seed": seed, "algorithm": RNG_ALGORITHM}
    return doc


def load_state(source: str | Path) -> tuple[DensityMatrix, str]:
    """Read and validate a state file.

    Returns:
        Tuple of (state, input digest).
    """
    text = read_source(source)
    doc = parse_document(text, str(source))
    return state_from_document(doc, str(source)), digest(text)


def bloch_document(b: BlochBipartite | BlochTripartite, input_digest: str | None = None) -> dict[str, Any]:
    """Bloch coefficient report."""
    if isinstance(b, BlochBipartite):
        coefficients: dict[str, Any] = {"R": b.R, "S": b.S, "T": b.T}
        parties = 2
    else:
        coefficients = {name: getattr(b, name) for name in ("T1", "T2", "T3", "T12", "T13", "T23", "T123")}
        parties = 3
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "bloch",
        "parties": parties,
        "dim": b.dim,
        "coefficients": coefficients,
    }
    if input_digest is not None:
        doc["provenance"] = {"input_digest": input_digest}
    return doc


def fingerprint_document(
    fingerprint: Fingerprint,
    eps_cmp: float,
    provenance: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """Fingerprint report with the thresholds it was built and compared with."""
    parties = 2 if isinstance(fingerprint, InvariantFingerprint) else 3
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "fingerprint",
        "parties": parties,
        "thresholds": {
            "eps_deg": fingerprint.eps_deg,
            "eps_zero": fingerprint.eps_zero,
            "eps_cmp": eps_cmp,
        },
        "fingerprint": fingerprint.model_dump(),
    }
    if provenance:
        doc["provenance"] = dict(provenance)
    return doc


def fingerprint_from_document(doc: dict[str, Any], source: str = "<input>") -> Fingerprint:
    """Rebuild a fingerprint from a report.

    Raises:
        StateFileError: If the report is malformed.
    """
    if doc.get("kind") != "fingerprint":
        raise StateFileError(f"{source}: expected a fingerprint document, got kind {doc.get('kind')!r}")
    parties = _require(doc, "parties", source)
    body = _require(doc, "fingerprint", source)
    model: type[InvariantFingerprint] | type[TripartiteFingerprint]
    if parties == 2:
        model = InvariantFingerprint
    elif parties == 3:
        model = TripartiteFingerprint
    else:
        raise StateFileError(f"{source}: field 'parties' must be 2 or 3, got {parties!r}")
    try:
        return model.model_validate(body)
    except (PydanticValidationError, ValidationError) as e:
        raise StateFileError(f"{source}: malformed fingerprint: {e}") from e


def verdict_document(
    verdict: Verdict,
    files: Sequence[str],
    thresholds: dict[str, float],
    include_determinants: bool = True,
) -> dict[str, Any]:
    """Comparison report for one pair of inputs."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verdict",
        "inputs": list(files),
        "thresholds": dict(thresholds),
        "include_determinants": include_determinants,
        "outcome": verdict.outcome.value,
        "witnesses": [w.model_dump() for w in verdict.witnesses],
        "warnings": list(verdict.warnings),
    }


def concurrence_document(report: ConcurrenceReport, input_digest: str | None = None) -> dict[str, Any]:
    """Concurrence report."""
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "concurrence",
        **report.model_dump(),
    }
    if input_digest is not None:
        doc["provenance"] = {"input_digest": input_digest}
    return doc


def unitaries_document(unitaries: Sequence[np.ndarray], seed: int) -> dict[str, Any]:
    """Per-party unitaries used to build an LU image."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "unitaries",
        "provenance": {"seed": seed, "algorithm": RNG_ALGORITHM},
        "unitaries": [_pairs(u) for u in unitaries],
    }


def unitaries_from_document(doc: dict[str, Any], source: str = "<input>") -> list[np.ndarray]:
    """Read back the unitaries of a unitaries document.

    Raises:
        StateFileError: If the document is malformed.
    """
    if doc.get("kind") != "unitaries":
        raise StateFileError(f"{source}: expected a unitaries document, got kind {doc.get('kind')!r}")
    entries = _require(doc, "unitaries", source)
    if not isinstance(entries, list):
        raise StateFileError(f"{source}: field 'unitaries' must be a list")
    return [_complex_matrix(u, source, "unitaries") for u in entries]


def render(doc: dict[str, Any]) -> str:
    """Document text as written to files and standard output."""
    return dump_document(doc)
