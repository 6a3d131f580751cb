"""Hot numeric kernels: GF(2) orbit enumeration, graph canonical codes, XOR layer sums.

Each kernel has a numba @njit implementation and a pure-numpy fallback.
Set TRANSVECT_JIT=0 to force the numpy path (default uses numba when it
imports cleanly). The benchmarks/ script compares both.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    _NUMBA_OK = True
except ImportError:  # pragma: no cover - exercised only without numba
    _NUMBA_OK = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap(args[0]) if args and callable(args[0]) else wrap


def jit_enabled() -> bool:
    flag = os.environ.get("TRANSVECT_JIT", "1").strip().lower()
    return _NUMBA_OK and flag not in ("0", "false", "off", "no")


def backend_name() -> str:
    return "numba" if jit_enabled() else "numpy"


# ---------------------------------------------------------------------------
# GF(2) orbit partition: states 0..n_states-1, generator g maps state a to
# a ^ flip[g] when parity(popcount(a & cond[g]) + inv[g]) is odd, else to a.
# All such generators are involutions, so orbits are connected components.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _orbit_labels_numba(n_states, cond, flip, inv):  # pragma: no cover - jitted
    labels = np.full(n_states, -1, dtype=np.int64)
    queue = np.empty(n_states, dtype=np.int64)
    ngen = cond.shape[0]
    for seed in range(n_states):
        if labels[seed] >= 0:
            continue
        labels[seed] = seed
        queue[0] = seed
        head = 0
        tail = 1
        while head < tail:
            a = queue[head]
            head += 1
            for g in range(ngen):
                v = a & cond[g]
                v ^= v >> 32
                v ^= v >> 16
                v ^= v >> 8
                v ^= v >> 4
                v ^= v >> 2
                v ^= v >> 1
                if (v ^ inv[g]) & 1:
                    b = a ^ flip[g]
                    if labels[b] < 0:
                        labels[b] = seed
                        queue[tail] = b
                        tail += 1
    return labels


def _orbit_labels_numpy(n_states, cond, flip, inv):
    # Generators are involutions, so min-label propagation over the move
    # graph converges to the orbit minimum at every state.
    states = np.arange(n_states, dtype=np.int64)
    labels = states.copy()
    while True:
        changed = False
        for g in range(len(cond)):
            act = (np.bitwise_count((states & int(cond[g])).astype(np.uint64)) + int(inv[g])) & 1
            images = np.where(act.astype(bool), states ^ int(flip[g]), states)
            pulled = labels[images]
            mask = pulled < labels
            if mask.any():
                labels[mask] = pulled[mask]
                changed = True
        if not changed:
            break
    return labels


def orbit_labels_gf2(n_states: int, cond, flip, inv) -> np.ndarray:
    """Per-state orbit label; states in the same orbit share the label
    of the orbit's minimal state.

    Every generator must be an involution, i.e. popcount(cond & flip) even;
    transvection-style moves satisfy this because the form alternates.
    """
    cond = np.asarray(cond, dtype=np.int64)
    flip = np.asarray(flip, dtype=np.int64)
    inv = np.asarray(inv, dtype=np.int64)
    if len(cond) == 0:
        return np.arange(n_states, dtype=np.int64)
    if int((np.bitwise_count((cond & flip).astype(np.uint64)) & 1).max()) != 0:
        raise ValueError("generator masks must define involutions")
    if jit_enabled():
        labels = _orbit_labels_numba(n_states, cond, flip, inv)
        # seeds are minimal in BFS discovery order, hence orbit minima already
        return labels
    return _orbit_labels_numpy(n_states, cond, flip, inv)


# ---------------------------------------------------------------------------
# Canonical graph codes: minimum over all vertex relabelings of the upper
# triangle adjacency bits packed MSB-first.
# ---------------------------------------------------------------------------

_PERM_CHUNK = 200_000
_pair_src_cache: dict[int, np.ndarray] = {}


def pair_index(i: int, j: int, n: int) -> int:
    """Index of unordered pair (i<j) in row-major upper triangle order."""
    return i * n - i * (i + 3) // 2 + j - 1


def _perm_pair_sources(n: int, perms: np.ndarray) -> np.ndarray:
    """For each permutation, source pair index feeding each target pair."""
    npairs = n * (n - 1) // 2
    out = np.empty((perms.shape[0], npairs), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            a = perms[:, i]
            b = perms[:, j]
            lo = np.minimum(a, b)
            hi = np.maximum(a, b)
            out[:, k] = lo * n - lo * (lo + 3) // 2 + hi - 1
            k += 1
    return out


def _iter_perm_chunks(n: int):
    if n <= 8:
        if n not in _pair_src_cache:
            perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
            _pair_src_cache[n] = _perm_pair_sources(n, perms)
        yield _pair_src_cache[n]
        return
    it = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(it, _PERM_CHUNK))
        if not chunk:
            return
        yield _perm_pair_sources(n, np.array(chunk, dtype=np.int64))


@njit(cache=True)
def _min_code_numba(bits, srcs, weights):  # pragma: no cover - jitted
    best = np.uint64(0xFFFFFFFFFFFFFFFF)
    nperm = srcs.shape[0]
    npair = srcs.shape[1]
    for t in range(nperm):
        code = np.uint64(0)
        for k in range(npair):
            if bits[srcs[t, k]]:
                code |= weights[k]
        if code < best:
            best = code
    return best


def _min_code_numpy(bits, srcs, weights):
    gathered = bits[srcs]
    codes = gathered.astype(np.uint64) @ weights
    return np.uint64(codes.min())


def min_graph_code(bits: np.ndarray, n: int) -> int:
    """Minimal packed upper-triangle code over all vertex permutations.

    bits: uint8 array of the n*(n-1)//2 upper-triangle adjacency bits.
    """
    npairs = n * (n - 1) // 2
    weights = (np.uint64(1) << np.arange(npairs - 1, -1, -1, dtype=np.uint64)).astype(np.uint64)
    fn = _min_code_numba if jit_enabled() else _min_code_numpy
    best = None
    for srcs in _iter_perm_chunks(n):
        code = int(fn(bits, srcs, weights))
        if best is None or code < best:
            best = code
    return int(best)


# ---------------------------------------------------------------------------
# XOR layer expansion for the minimal-summand count over an orbit.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _xor_expand_numba(mask, orbit):  # pragma: no cover - jitted
    out = np.zeros_like(mask)
    for a in range(mask.size):
        if mask[a]:
            for t in range(orbit.size):
                out[a ^ orbit[t]] = True
    return out


def _xor_expand_numpy(mask, orbit):
    out = np.zeros_like(mask)
    idx = np.flatnonzero(mask)
    for o in orbit:
        out[idx ^ int(o)] = True
    return out


def xor_expand(mask: np.ndarray, orbit: np.ndarray) -> np.ndarray:
    """Set of all a^o for a in mask, o in orbit (as boolean state masks)."""
    orbit = np.asarray(orbit, dtype=np.int64)
    if jit_enabled():
        return _xor_expand_numba(mask, orbit)
    return _xor_expand_numpy(mask, orbit)
