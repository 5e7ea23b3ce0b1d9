"""Backend selection: numba-jitted kernels with a pure-numpy fallback.

Set ``DISKORACLE_DISABLE_NUMBA=1`` (or true/yes/on) to force the numpy path,
e.g. for debugging or the backend comparison benchmark. The flag is read per
call, so one process can exercise both paths.
"""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

ENV_FLAG = "DISKORACLE_DISABLE_NUMBA"


def numba_enabled() -> bool:
    if not NUMBA_AVAILABLE:
        return False
    return os.environ.get(ENV_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}
