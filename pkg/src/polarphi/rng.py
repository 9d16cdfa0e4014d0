"""Counter-based uniform random stream (splitmix64 finalizer).

Every variate is a pure function of (seed, sample index, slot, counter), so
results are bit-identical no matter how samples are batched or distributed
across workers.  Slots separate the independent draws a single sample needs
(one per coordinate, plus signs, plus the radial exponential); the counter
advances within a slot for rejection-style retries.

Scalar kernels are numba-friendly (and jitted by the sampler); the _v
functions are the vectorized numpy twins operating on uint64 arrays.  numpy
scalar uint64 arithmetic warns on wraparound, array arithmetic doesn't --
hence arrays everywhere and one errstate guard at the public entry points.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit
from .errors import DomainError

MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
GOLD = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_SLOT_STRIDE = np.uint64(2**32)
_INV53 = 1.0 / 9007199254740992.0  # 2^-53


def _fin(z):
    z = (z + GOLD) & MASK
    z = ((z ^ (z >> np.uint64(30))) * _M1) & MASK
    z = ((z ^ (z >> np.uint64(27))) * _M2) & MASK
    return z ^ (z >> np.uint64(31))


def _sample_base(seed, i):
    """Per-sample stream key: finalize twice so close seeds decorrelate."""
    return _fin((_fin(seed) + GOLD * i) & MASK)


def _u01(base, slot, k):
    """Uniform on (0, 1), exclusive both ends: ((v >> 11) + 0.5) * 2^-53."""
    v = _fin((base + GOLD * (slot * _SLOT_STRIDE + k)) & MASK)
    return (float(v >> np.uint64(11)) + 0.5) * _INV53


if HAVE_NUMBA:
    _fin_nb = njit(cache=True)(_fin)

    @njit(cache=True)
    def _sample_base_nb(seed, i):
        return _fin_nb((_fin_nb(seed) + GOLD * i) & MASK)

    @njit(cache=True)
    def _u01_nb(base, slot, k):
        v = _fin_nb((base + GOLD * (slot * _SLOT_STRIDE + k)) & MASK)
        return (float(v >> np.uint64(11)) + 0.5) * _INV53

else:  # pragma: no cover - no-numba fallback aliases
    _fin_nb = _fin
    _sample_base_nb = _sample_base
    _u01_nb = _u01


# ---- vectorized twins (uint64 ndarray in, float64 ndarray out) ----


def _fin_v(z):
    z = (z + GOLD) & MASK
    z = ((z ^ (z >> np.uint64(30))) * _M1) & MASK
    z = ((z ^ (z >> np.uint64(27))) * _M2) & MASK
    return z ^ (z >> np.uint64(31))


def sample_bases_v(seed, indices):
    """Vector of per-sample stream keys for an array of sample indices."""
    with np.errstate(over="ignore"):
        seed_arr = np.full(indices.shape, np.uint64(seed), dtype=np.uint64)
        return _fin_v((_fin_v(seed_arr) + GOLD * indices.astype(np.uint64)) & MASK)


def u01_v(bases, slot, k):
    """Uniforms on (0,1) for an array of stream keys at (slot, counter k).

    slot and k may be scalars or uint64 arrays broadcasting against bases.
    """
    with np.errstate(over="ignore"):
        slot = np.asarray(slot, dtype=np.uint64)
        k = np.asarray(k, dtype=np.uint64)
        off = GOLD * (slot * _SLOT_STRIDE + k)
        v = _fin_v((bases + off) & MASK)
        return ((v >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def parse_seed(text) -> int:
    """Seed from decimal or hexadecimal text (or an int); must fit in 64 bits."""
    if isinstance(text, (int, np.integer)) and not isinstance(text, bool):
        seed = int(text)
    else:
        s = str(text).strip()
        try:
            seed = int(s, 16) if s.lower().startswith("0x") else int(s, 10)
        except ValueError:
            raise DomainError(f"seed must be decimal or 0x-hex text, got {text!r}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return seed
