"""Kernel backend selection.

The compiled module is used when it imports and the model fits in 64
worlds; ``CPSPHERE_PURE=1`` in the environment forces the Python fallback.
"""
import os

from . import _pykernels as py

try:
    if os.environ.get("CPSPHERE_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

BACKEND = "cython" if compiled is not None else "python"
_fast = compiled or py

MODE_FORCING = py.MODE_FORCING
MODE_DISAGREE = py.MODE_DISAGREE
MODE_AGREE = py.MODE_AGREE


def _pick(chain):
    # compiled kernels work on uint64 masks
    return _fast if not chain or chain[-1] < (1 << 64) else py


def shell_counts(chain, mask):
    return _pick(chain).shell_counts(chain, mask)


def rank_chain(chain, member_masks, x, mode):
    return _pick(chain).rank_chain(chain, member_masks, x, mode)


def lewis_cf(chain, a, b):
    return _pick(chain).lewis_cf(chain, a, b)


def lewis_pl(chain, a, b):
    return _pick(chain).lewis_pl(chain, a, b)
