"""Working precision for the extended-precision code paths.

mpmath keeps its precision in process-global state, so every
extended-precision section runs under :func:`extended`, which takes a
re-entrant lock before changing it.
"""

import contextlib
import os
import threading

import mpmath as mp

DEFAULT_BITS = 256
MIN_BITS = 200
ENV_VAR = "QUADLAB_PRECISION_BITS"

_lock = threading.RLock()


def working_bits():
    """Mantissa bits for extended arithmetic (env override, floor 200)."""
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return max(bits, MIN_BITS)


@contextlib.contextmanager
def extended(bits=None):
    bits = working_bits() if bits is None else int(bits)
    with _lock, mp.workprec(bits):
        yield bits
