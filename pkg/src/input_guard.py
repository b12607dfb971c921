"""
Input Guard Module
Validates diagram and corpus files before they reach the parsers
"""

import hashlib
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, Union

import config
from src.errors import InputValidationError

logger = logging.getLogger(__name__)

# Control characters are never valid inside an edge label
_CONTROL = re.compile(r'[\x00-\x1f\x7f]')


def fingerprint(text: str) -> str:
    """SHA256 hex digest of an input, recorded in audit entries."""
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def validate_input_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Check an input file and decode it.

    Args:
        path: Path to a .json diagram, link or corpus file

    Returns:
        Dict: decoded JSON document

    Raises:
        InputValidationError: missing file, wrong extension, too large, not UTF-8 or not JSON
    """
    path = Path(path)
    if not path.is_file():
        raise InputValidationError(f"Input file not found: {path}", {'path': str(path)})

    extension = path.suffix.lower()
    if extension not in config.LIMITS['ALLOWED_EXTENSIONS']:
        logger.warning(f"Invalid file extension: {extension}")
        raise InputValidationError(
            f"Unsupported file type {extension or '(none)'}; expected one of {config.LIMITS['ALLOWED_EXTENSIONS']}",
            {'path': str(path)},
        )

    size_mb = path.stat().st_size / (1024 * 1024)
    if size_mb > config.LIMITS['MAX_FILE_SIZE_MB']:
        logger.warning(f"File too large: {size_mb:.2f}MB")
        raise InputValidationError(
            f"{path.name} is {size_mb:.2f}MB, limit is {config.LIMITS['MAX_FILE_SIZE_MB']}MB",
            {'path': str(path), 'size_mb': round(size_mb, 2)},
        )

    try:
        text = path.read_bytes().decode('utf-8')
    except UnicodeDecodeError as e:
        raise InputValidationError(f"{path.name} is not UTF-8 text", {'position': e.start})

    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputValidationError(f"{path.name} is not valid JSON: {e.msg}",
                                   {'line': e.lineno, 'column': e.colno})
    if not isinstance(document, dict):
        raise InputValidationError(f"{path.name} must hold a JSON object", {'path': str(path)})

    logger.info(f"File validation passed: {path.name} ({fingerprint(text)[:12]})")
    return document


def validate_crossing_count(n: int) -> int:
    """
    Raises:
        InputValidationError: if the cube would exceed LIMITS['MAX_CROSSINGS']
    """
    limit = config.LIMITS['MAX_CROSSINGS']
    if n > limit:
        raise InputValidationError(
            f"Diagram has {n} crossings; at most {limit} are supported (2^n resolutions)",
            {'crossings': n, 'limit': limit},
        )
    return n


def validate_label(label: Any) -> Any:
    """Edge labels are integers or short printable strings."""
    if isinstance(label, bool) or not isinstance(label, (int, str)):
        raise InputValidationError(f"Edge label {label!r} must be an integer or a string")
    if isinstance(label, str):
        if not label or len(label) > config.LIMITS['MAX_LABEL_LENGTH']:
            raise InputValidationError(f"Edge label {label[:16]!r} has invalid length")
        if _CONTROL.search(label):
            raise InputValidationError("Edge label contains control characters", {'label': repr(label)})
    return label
