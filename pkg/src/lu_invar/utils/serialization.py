"""YAML document helpers.

All documents are written with PyYAML's safe dumper. Floats are emitted
with 17 significant digits so that every 64-bit value survives a
write/read cycle bit for bit, and keys keep their insertion order so that
the same data always produces the same bytes.
"""

import hashlib
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np
import yaml

logger = logging.getLogger(__name__)


class DocumentDumper(yaml.SafeDumper):
    """Safe dumper with exact float output and numpy scalar support."""

    pass


def format_float(value: float) -> str:
    """Render a float with 17 significant digits in a YAML-resolvable form.

    Args:
        value: Float to format.

    Returns:
        Text that PyYAML's safe loader parses back to the identical float.
    """
    if math.isnan(value):
        return ".nan"
    if math.isinf(value):
        return ".inf" if value > 0 else "-.inf"
    text = f"{value:.17g}"
    if "." in text:
        return text
    if "e" in text:
        mantissa, exponent = text.split("e")
        return f"{mantissa}.0e{exponent}"
    return f"{text}.0"


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    return dumper.represent_scalar("tag:yaml.org,2002:float", format_float(float(value)))


def _represent_numpy_int(dumper: yaml.SafeDumper, value: np.integer[Any]) -> yaml.ScalarNode:
    return dumper.represent_int(int(value))


def _represent_numpy_bool(dumper: yaml.SafeDumper, value: np.bool_) -> yaml.ScalarNode:
    return dumper.represent_bool(bool(value))


DocumentDumper.add_representer(float, _represent_float)
DocumentDumper.add_multi_representer(np.floating, _represent_float)
DocumentDumper.add_multi_representer(np.integer, _represent_numpy_int)
DocumentDumper.add_representer(np.bool_, _represent_numpy_bool)


def to_plain(value: Any) -> Any:
    """Convert numpy arrays and tuples nested in a document to plain lists.

    Args:
        value: Document fragment.

    Returns:
        Fragment made of dicts, lists, str, bool, int and float only.
    """
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def dump_document(document: dict[str, Any]) -> str:
    """Serialize a document to YAML text.

    Args:
        document: Mapping to serialize. Key order is preserved.

    Returns:
        YAML text.
    """
    return yaml.dump(
        to_plain(document),
        Dumper=DocumentDumper,
        sort_keys=False,
        default_flow_style=None,
        allow_unicode=True,
        width=100,
    )


def load_document(text: str) -> Any:
    """Parse YAML text with the safe loader.

    Args:
        text: YAML text.

    Returns:
        Parsed document.

    Raises:
        yaml.YAMLError: If the text is not valid YAML.
    """
    return yaml.safe_load(text)


def write_atomic(path: Path, text: str) -> Path:
    """Write text to path through a temporary file in the same directory.

    Readers never observe a partially written file.

    Args:
        path: Destination file.
        text: Content to write.

    Returns:
        The destination path.
    """
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {len(text)} characters to {path}")
    return path


def digest(data: bytes | str) -> str:
    """SHA-256 digest used for input provenance.

    Args:
        data: Raw bytes or text (encoded as UTF-8).

    Returns:
        Digest string prefixed with the algorithm name.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    return f"sha256:{hashlib.sha256(data).hexdigest()}"
