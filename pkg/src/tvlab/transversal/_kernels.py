"""Numeric kernels for the float search and the direction-grid oracle.

Each kernel has a plain numpy version and, when numba is importable, a
jitted twin.  Setting ``TVLAB_NO_NUMBA=1`` forces the numpy versions.
Nothing here decides a verdict on its own: float results are re-verified in
exact arithmetic, and the grid kernel works on int64 data.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("TVLAB_NO_NUMBA", "") not in ("1", "true", "yes")


def _min_norm_point_impl(P, max_iter, eps):
    """Wolfe's method: the point of conv(rows of P) nearest the origin.

    Returns ``(x, lam)`` with ``x = lam @ P``, ``lam >= 0`` and ``sum(lam) == 1``.
    """
    m, dim = P.shape
    in_s = np.zeros(m, dtype=np.bool_)
    lam = np.zeros(m)
    norms = np.empty(m)
    for i in range(m):
        norms[i] = np.dot(P[i], P[i])
    scale = max(1.0, norms.max())
    j0 = int(np.argmin(norms))
    in_s[j0] = True
    lam[j0] = 1.0
    x = P[j0].copy()
    for _ in range(max_iter):
        xx = np.dot(x, x)
        best = np.inf
        j = -1
        for i in range(m):
            val = np.dot(P[i], x)
            if val < best:
                best = val
                j = i
        if xx - best <= eps * scale or in_s[j]:
            break
        in_s[j] = True
        lam[j] = 0.0
        for _minor in range(m + 1):
            idx = np.nonzero(in_s)[0]
            s = idx.shape[0]
            a = np.ones((s + 1, s + 1))
            a[s, s] = 0.0
            for u in range(s):
                for v in range(s):
                    a[u, v] = np.dot(P[idx[u]], P[idx[v]])
            rhs = np.zeros(s + 1)
            rhs[s] = 1.0
            alpha = np.linalg.lstsq(a, rhs)[0][:s]
            if np.all(alpha > 1e-12):
                for t in range(s):
                    lam[idx[t]] = alpha[t]
                break
            theta = 1.0
            for t in range(s):
                if alpha[t] <= 1e-12:
                    den = lam[idx[t]] - alpha[t]
                    if den > 0:
                        theta = min(theta, lam[idx[t]] / den)
            for t in range(s):
                lam[idx[t]] = theta * alpha[t] + (1.0 - theta) * lam[idx[t]]
                if lam[idx[t]] <= 1e-12:
                    lam[idx[t]] = 0.0
                    in_s[idx[t]] = False
            lam /= lam.sum()
        x = np.zeros(dim)
        for i in range(m):
            if lam[i] != 0.0:
                x += lam[i] * P[i]
    return x, lam


def _stab_loop_impl(V, ptr, dirs):
    """Per direction (a, b): do the strips {min, max} of a*x + b*y over each set
    share a value?  ``V`` holds integer vertices, set s owns rows
    ``ptr[s]:ptr[s+1]``."""
    nd = dirs.shape[0]
    ns = ptr.shape[0] - 1
    out = np.zeros(nd, dtype=np.bool_)
    for t in range(nd):
        a = dirs[t, 0]
        b = dirs[t, 1]
        lo = np.iinfo(np.int64).min
        hi = np.iinfo(np.int64).max
        for s in range(ns):
            mn = np.iinfo(np.int64).max
            mx = np.iinfo(np.int64).min
            for v in range(ptr[s], ptr[s + 1]):
                val = a * V[v, 0] + b * V[v, 1]
                mn = min(mn, val)
                mx = max(mx, val)
            lo = max(lo, mn)
            hi = min(hi, mx)
        out[t] = lo <= hi
    return out


def _stab_numpy(V, ptr, dirs):
    vals = dirs @ V.T  # (directions, vertices)
    starts = ptr[:-1]
    mins = np.minimum.reduceat(vals, starts, axis=1)
    maxs = np.maximum.reduceat(vals, starts, axis=1)
    return mins.max(axis=1) <= maxs.min(axis=1)


min_norm_point_numpy = _min_norm_point_impl
stab_directions_numpy = _stab_numpy

if numba is not None:
    min_norm_point_jit = numba.njit(cache=True)(_min_norm_point_impl)
    stab_directions_jit = numba.njit(cache=True)(_stab_loop_impl)
else:  # pragma: no cover
    min_norm_point_jit = None
    stab_directions_jit = None


def min_norm_point(P, max_iter: int = 500, eps: float = 1e-15):
    P = np.ascontiguousarray(P, dtype=np.float64)
    fn = min_norm_point_jit if USE_NUMBA else min_norm_point_numpy
    return fn(P, max_iter, eps)


def stab_directions(V, ptr, dirs):
    V = np.ascontiguousarray(V, dtype=np.int64)
    ptr = np.ascontiguousarray(ptr, dtype=np.int64)
    dirs = np.ascontiguousarray(dirs, dtype=np.int64)
    bound = int(np.abs(V).max(initial=0)) * int(np.abs(dirs).max(initial=0)) * 2
    if bound >= 2**62:
        raise OverflowError("integer data too large for the int64 grid kernel")
    fn = stab_directions_jit if USE_NUMBA else stab_directions_numpy
    return fn(V, ptr, dirs)
