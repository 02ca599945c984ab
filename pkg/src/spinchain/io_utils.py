"""Small output helpers shared by the CSV/summary writers."""

from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path


def fmt(x) -> str:
    """Deterministic shortest round-trip float formatting."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def atomic_write_text(path, text: str):
    """Write via a temp file + rename so no partial file survives an error."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
