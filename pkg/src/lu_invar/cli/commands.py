"""CLI commands for the lu-invar application.

This module implements the Typer CLI interface following Unix conventions.
Every command reads state files (or "-" for standard input) and writes YAML
documents to standard output or to --output.

Exit codes: 0 = success / Inconclusive, 1 = NotEquivalent, 2 = error.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

import numpy as np
import typer

from lu_invar import __version__
from lu_invar.core.bloch import decompose
from lu_invar.core.entanglement import concurrence_pure
from lu_invar.core.invariants_bi import (
    IncomparableFingerprintsError,
    compare_fingerprints,
    theorem1_fingerprint,
)
from lu_invar.core.invariants_tri import compare_tripartite, theorem2_fingerprint
from lu_invar.core.models import (
    BlochBipartite,
    DensityMatrix,
    InvariantFingerprint,
    TripartiteFingerprint,
    Verdict,
)
from lu_invar.core.sampling import SeededRng, apply_lu, random_density, random_lu
from lu_invar.core.statefiles import (
    Fingerprint,
    StateFileError,
    bloch_document,
    concurrence_document,
    fingerprint_document,
    fingerprint_from_document,
    load_state,
    parse_document,
    read_source,
    render,
    state_document,
    state_from_document,
    unitaries_document,
    verdict_document,
)
from lu_invar.utils.serialization import digest, write_atomic
from lu_invar.utils.tolerances import EPS_CMP, EPS_DEG, EPS_ZERO
from lu_invar.utils.validators import InvalidShapeError, ValidationError

logger = logging.getLogger(__name__)

EXIT_ERROR = 2

# Create main Typer app
app = typer.Typer(
    name="lu-invar",
    help="Local-unitary invariant fingerprints of bipartite and tripartite qudit states.",
    add_completion=False,
)


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"lu-invar version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-V",
        help="Show version and exit.",
        callback=version_callback,
        is_eager=True,
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging."),
) -> None:
    """LU invariants - certify that two quantum states are not LU equivalent.

    Decompose density matrices into generalized Bloch coefficients, compute
    their local-unitary invariant fingerprints and compare them. Equal
    fingerprints are reported as Inconclusive, never as equivalent.
    """
    if verbose:
        logging.basicConfig(level=logging.DEBUG)


def _fail(message: str) -> typer.Exit:
    typer.secho(f"Error: {message}", fg=typer.colors.RED, err=True)
    return typer.Exit(EXIT_ERROR)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        write_atomic(output, text)
        typer.echo(f"Wrote {output}", err=True)


def _provenance(text_digest: str, doc: dict[str, Any] | None = None) -> dict[str, Any]:
    provenance: dict[str, Any] = {"input_digest": text_digest}
    seed = ((doc or {}).get("provenance") or {}).get("seed")
    if seed is not None:
        provenance["seed"] = seed
    return provenance


def fingerprint_state(rho: DensityMatrix, eps_deg: float, eps_zero: float) -> Fingerprint:
    """Two- or three-party fingerprint by party count."""
    b = decompose(rho)
    if isinstance(b, BlochBipartite):
        return theorem1_fingerprint(b, eps_deg, eps_zero)
    return theorem2_fingerprint(b, eps_deg, eps_zero)


def compare_any(
    f1: Fingerprint, f2: Fingerprint, eps_cmp: float, include_determinants: bool = True
) -> Verdict:
    """Compare two fingerprints of the same kind.

    Raises:
        IncomparableFingerprintsError: If one is two-party and the other three-party.
    """
    if isinstance(f1, InvariantFingerprint) and isinstance(f2, InvariantFingerprint):
        return compare_fingerprints(f1, f2, eps_cmp, include_determinants)
    if isinstance(f1, TripartiteFingerprint) and isinstance(f2, TripartiteFingerprint):
        return compare_tripartite(f1, f2, eps_cmp, include_determinants)
    raise IncomparableFingerprintsError("Cannot compare a two-party with a three-party fingerprint")


def load_fingerprint(source: str, eps_deg: float, eps_zero: float) -> Fingerprint:
    """Fingerprint from a state file or from a saved fingerprint report."""
    text = read_source(source)
    doc = parse_document(text, source)
    if doc.get("kind") == "fingerprint":
        return fingerprint_from_document(doc, source)
    return fingerprint_state(state_from_document(doc, source), eps_deg, eps_zero)


HANDLED_ERRORS = (ValidationError, StateFileError, IncomparableFingerprintsError, OSError)


@app.command(name="decompose")
def cmd_decompose(
    state_file: str = typer.Argument(..., help="State file, or - for standard input"),
    parties: int | None = typer.Option(
        None, "--parties", "-p", help="Expected party count (2 or 3)"
    ),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the report to a file"),
) -> None:
    """Print the generalized Bloch coefficients of a state.

    Examples:

        lu-invar decompose state.yaml

        cat state.yaml | lu-invar decompose - --parties 3
    """
    try:
        rho, text_digest = load_state(state_file)
        if parties is not None and parties != rho.n_parties:
            raise InvalidShapeError(f"Expected {parties} parties, file has {rho.n_parties}")
        _emit(render(bloch_document(decompose(rho), text_digest)), output)
    except typer.Exit:
        raise
    except HANDLED_ERRORS as e:
        raise _fail(str(e)) from e
    except Exception as e:
        raise _fail(f"Unexpected error: {e}") from e


@app.command(name="invariants")
def cmd_invariants(
    state_file: str = typer.Argument(..., help="State file, or - for standard input"),
    eps_deg: float = typer.Option(EPS_DEG, "--eps-deg", help="Relative degeneracy threshold"),
    eps_zero: float = typer.Option(EPS_ZERO, "--eps-zero", help="Relative zero threshold"),
    eps_cmp: float = typer.Option(EPS_CMP, "--eps-cmp", help="Comparison tolerance to record"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the report to a file"),
) -> None:
    """Compute the invariant fingerprint of a state.

    The report can be passed to `compare` in place of the state file.
    """
    try:
        text = read_source(state_file)
        doc = parse_document(text, state_file)
        rho = state_from_document(doc, state_file)
        fingerprint = fingerprint_state(rho, eps_deg, eps_zero)
        report = fingerprint_document(fingerprint, eps_cmp, _provenance(digest(text), doc))
        _emit(render(report), output)
    except typer.Exit:
        raise
    except HANDLED_ERRORS as e:
        raise _fail(str(e)) from e
    except Exception as e:
        raise _fail(f"Unexpected error: {e}") from e


@app.command(name="compare")
def cmd_compare(
    files: list[str] = typer.Argument(
        ..., help="Pairs of state files or fingerprint reports: A1 B1 [A2 B2 ...]"
    ),
    eps_deg: float = typer.Option(EPS_DEG, "--eps-deg", help="Relative degeneracy threshold"),
    eps_zero: float = typer.Option(EPS_ZERO, "--eps-zero", help="Relative zero threshold"),
    eps_cmp: float = typer.Option(EPS_CMP, "--eps-cmp", help="Comparison tolerance"),
    no_determinants: bool = typer.Option(
        False, "--no-determinants", help="Leave det T and det M out of the comparison"
    ),
    jobs: int = typer.Option(1, "--jobs", "-j", min=1, help="Pairs to compare in parallel"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the verdicts to a file"),
) -> None:
    """Compare states pairwise; exit 1 if any pair is not LU equivalent.

    Examples:

        lu-invar compare rho.yaml rho_prime.yaml

        lu-invar compare a.yaml b.yaml c.yaml d.yaml --jobs 2
    """
    try:
        if len(files) % 2:
            raise ValidationError(f"compare needs pairs of files, got {len(files)}")
        pairs = [(files[i], files[i + 1]) for i in range(0, len(files), 2)]
        include_determinants = not no_determinants
        thresholds = {"eps_deg": eps_deg, "eps_zero": eps_zero, "eps_cmp": eps_cmp}

        def run(pair: tuple[str, str]) -> Verdict:
            f1 = load_fingerprint(pair[0], eps_deg, eps_zero)
            f2 = load_fingerprint(pair[1], eps_deg, eps_zero)
            return compare_any(f1, f2, eps_cmp, include_determinants)

        if jobs > 1 and len(pairs) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                verdicts = list(pool.map(run, pairs))
        else:
            verdicts = [run(pair) for pair in pairs]

        text = "---\n".join(
            render(verdict_document(v, pair, thresholds, include_determinants))
            for v, pair in zip(verdicts, pairs, strict=True)
        )
        _emit(text, output)
    except typer.Exit:
        raise
    except HANDLED_ERRORS as e:
        raise _fail(str(e)) from e
    except Exception as e:
        raise _fail(f"Unexpected error: {e}") from e

    raise typer.Exit(max(v.exit_code for v in verdicts))


@app.command(name="concurrence")
def cmd_concurrence(
    state_file: str = typer.Argument(..., help="Pure two-party state file, or - for standard input"),
    eps_deg: float = typer.Option(EPS_DEG, "--eps-deg", help="Relative degeneracy threshold"),
    eps_zero: float = typer.Option(EPS_ZERO, "--eps-zero", help="Relative zero threshold"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the report to a file"),
) -> None:
    """Concurrence of a pure two-qudit state and its block-norm identity."""
    try:
        rho, text_digest = load_state(state_file)
        report = concurrence_pure(rho, eps_deg, eps_zero)
        _emit(render(concurrence_document(report, text_digest)), output)
    except typer.Exit:
        raise
    except HANDLED_ERRORS as e:
        raise _fail(str(e)) from e
    except Exception as e:
        raise _fail(f"Unexpected error: {e}") from e


@app.command(name="random")
def cmd_random(
    dim: int = typer.Option(2, "--dim", "-d", help="Local dimension N"),
    parties: int = typer.Option(2, "--parties", "-p", help="Number of parties (2 or 3)"),
    rank: int | None = typer.Option(None, "--rank", "-r", help="Rank of the state (default: full)"),
    seed: int | None = typer.Option(
        None, "--seed", "-s", envvar="LU_INVAR_SEED", help="RNG seed (env: LU_INVAR_SEED)"
    ),
    apply_lu_flag: bool = typer.Option(
        False, "--apply-lu", help="Also write a random LU image and the unitaries used"
    ),
    output: Path = typer.Option(Path("state.yaml"), "--output", "-o", help="Output state file"),
) -> None:
    """Write a random density matrix (and optionally its LU image).

    With --apply-lu, STEM_lu.yaml and STEM_unitaries.yaml are written next
    to the output file.

    Examples:

        lu-invar random --dim 3 --rank 1 --seed 7 -o psi.yaml

        lu-invar random --dim 2 --parties 3 --seed 1 --apply-lu -o ghz_like.yaml
    """
    try:
        if seed is None:
            seed = int(np.random.SeedSequence().entropy % 2**64)
            logger.info(f"No seed given; using {seed}")
        dims = [dim] * parties
        rng = SeededRng(seed)
        rho = random_density(dims, rank if rank is not None else dim**parties, rng)

        written = [write_atomic(output, render(state_document(rho, seed)))]
        if apply_lu_flag:
            unitaries = random_lu(dims, rng)
            image = apply_lu(rho, unitaries)
            stem = output.with_suffix("")
            written.append(
                write_atomic(Path(f"{stem}_lu{output.suffix}"), render(state_document(image, seed)))
            )
            written.append(
                write_atomic(
                    Path(f"{stem}_unitaries{output.suffix}"),
                    render(unitaries_document(unitaries, seed)),
                )
            )
        for path in written:
            typer.echo(str(path))
    except typer.Exit:
        raise
    except HANDLED_ERRORS as e:
        raise _fail(str(e)) from e
    except Exception as e:
        raise _fail(f"Unexpected error: {e}") from e
