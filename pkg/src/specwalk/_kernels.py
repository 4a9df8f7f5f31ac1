"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Two inner loops dominate runtime: per-sample random-walk simulation and
the dynamic-programming convolution for the 1-D jump walk.  Both exist
in a numba @njit version and a vectorized numpy version that execute the
same arithmetic bit for bit, so results are identical whichever path
runs.  Selection:

    SPECWALK_BACKEND = auto | numba | numpy   (default auto)

`auto` uses numba when it imports, numpy otherwise.  SPECTRA_THREADS
caps the numba thread pool.

Randomness is a splitmix64 stream per sample, derived from
(seed, sample index), so estimates are reproducible bit for bit no
matter how samples are scheduled across threads.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore
        def wrap(fn):
            return fn
        return wrap

    prange = range  # type: ignore


_GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # 2**-53

_U = np.uint64
_GOLDEN_U = _U(_GOLDEN)


def active_backend() -> str:
    choice = os.environ.get("SPECWALK_BACKEND", "auto")
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"SPECWALK_BACKEND={choice!r} (want auto|numba|numpy)")
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("SPECWALK_BACKEND=numba but numba is unavailable")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    return choice


def _apply_thread_cap() -> None:
    cap = os.environ.get("SPECTRA_THREADS")
    if cap and HAS_NUMBA:
        import numba

        limit = numba.config.NUMBA_NUM_THREADS
        numba.set_num_threads(min(max(1, int(cap)), limit))


# -- splitmix64 ----------------------------------------------------------

def mix64(z: int) -> int:
    """Reference scalar splitmix64 finalizer on Python ints."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def splitmix_sequence(seed: int, count: int) -> list[int]:
    """First `count` raw outputs of the splitmix64 stream from `seed`."""
    state = seed & _MASK
    out = []
    for _ in range(count):
        state = (state + _GOLDEN) & _MASK
        out.append(mix64(state))
    return out


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return z ^ (z >> _U(31))


@njit(cache=True)
def _mix64_nb(z):
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return z ^ (z >> _U(31))


def _sample_states(seed: int, lo: int, hi: int) -> np.ndarray:
    """Initial stream states for samples lo..hi-1 (numpy path)."""
    base = _U(mix64((seed + _GOLDEN) & _MASK))
    idx = np.arange(lo, hi, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return base ^ _mix64_np((idx + _U(1)) * _GOLDEN_U)


# -- random-walk return sampling ----------------------------------------

@njit(cache=True, parallel=True)
def _returns_numba(indptr, nbrs, cum, start, t, samples, seed):
    base = _mix64_nb(_U(seed) + _GOLDEN_U)
    hits = 0
    for i in prange(samples):
        state = base ^ _mix64_nb((_U(i) + _U(1)) * _GOLDEN_U)
        pos = start
        for _ in range(t):
            state = state + _GOLDEN_U
            z = _mix64_nb(state)
            r = np.float64(z >> _U(11)) * _INV53
            lo = indptr[pos]
            hi = indptr[pos + 1] - 1
            k = lo
            while k < hi and r >= cum[k]:
                k += 1
            pos = nbrs[k]
        if pos == start:
            hits += 1
    return hits


def _returns_numpy(indptr, nbrs, cum, start, t, samples, seed):
    n = indptr.shape[0] - 1
    degrees = np.diff(indptr)
    max_deg = int(degrees.max())
    # padded per-vertex rows; pad value 2.0 exceeds every uniform draw
    cum_pad = np.full((n, max_deg), 2.0)
    nbr_pad = np.zeros((n, max_deg), dtype=np.int64)
    for x in range(n):
        lo, hi = indptr[x], indptr[x + 1]
        cum_pad[x, : hi - lo] = cum[lo:hi]
        nbr_pad[x, : hi - lo] = nbrs[lo:hi]
    hits = 0
    chunk = 1 << 16
    for block in range(0, samples, chunk):
        m = min(chunk, samples - block)
        state = _sample_states(seed, block, block + m)
        pos = np.full(m, start, dtype=np.int64)
        with np.errstate(over="ignore"):
            for _ in range(t):
                state = state + _GOLDEN_U
                z = _mix64_np(state)
                r = (z >> _U(11)).astype(np.float64) * _INV53
                # k = number of cumulative entries <= r, capped at deg-1
                # because the last entry of every row is exactly 1.0 > r
                k = (r[:, None] >= cum_pad[pos]).sum(axis=1)
                pos = nbr_pad[pos, k]
        hits += int((pos == start).sum())
    return hits


def sample_return_hits(indptr, nbrs, cum, start: int, t: int, samples: int,
                       seed: int) -> int:
    """Number of length-t walks from `start` that end at `start`."""
    backend = active_backend()
    if backend == "numba":
        _apply_thread_cap()
        return int(_returns_numba(indptr, nbrs, cum, np.int64(start),
                                  np.int64(t), np.int64(samples),
                                  np.uint64(seed & _MASK)))
    return _returns_numpy(indptr, nbrs, cum, int(start), int(t),
                          int(samples), int(seed))


# -- 1-D jump walk distribution ------------------------------------------

@njit(cache=True)
def _jump_dp_numba(t):
    size = 4 * t + 1
    center = 2 * t
    p = np.zeros(size)
    q = np.zeros(size)
    p[center] = 1.0
    for _ in range(t):
        for i in range(size):
            a = p[i - 2] if i >= 2 else 0.0
            b = p[i - 1] if i >= 1 else 0.0
            c = p[i + 1] if i + 1 < size else 0.0
            d = p[i + 2] if i + 2 < size else 0.0
            q[i] = ((a + b) + (c + d)) * 0.25
        p, q = q, p
    return p


def _jump_dp_numpy(t):
    size = 4 * t + 1
    center = 2 * t
    p = np.zeros(size)
    p[center] = 1.0
    left2 = np.zeros(size)
    left1 = np.zeros(size)
    right1 = np.zeros(size)
    right2 = np.zeros(size)
    for _ in range(t):
        left2[2:] = p[:-2]
        left2[:2] = 0.0
        left1[1:] = p[:-1]
        left1[0] = 0.0
        right1[:-1] = p[1:]
        right1[-1] = 0.0
        right2[:-2] = p[2:]
        right2[-2:] = 0.0
        p = ((left2 + left1) + (right1 + right2)) * 0.25
    return p


def jump_walk_distribution(t: int) -> np.ndarray:
    """Distribution of the sum of t uniform steps from {-2,-1,1,2},
    indexed by offset + 2t (double-precision DP)."""
    if t == 0:
        return np.array([1.0])
    if active_backend() == "numba":
        return _jump_dp_numba(np.int64(t))
    return _jump_dp_numpy(int(t))
