"""Damped Gauss-Newton kernel, numba JIT path.

Same algorithm as gn_numpy.run with the Kronecker blocks assembled by
explicit loops (numba has no np.kron).  Compiled lazily on first use with an
on-disk cache; AVAILABLE is False when numba cannot be imported.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


_RCOND_FLOOR = 1e-13
_LAMBDA_INIT = 1e-3
_LAMBDA_MAX = 1e12


@njit(cache=True)
def _forward(G, Q, multiplicative, A, inv, F):
    """Fill A, inv, F in place; returns False when some Q_j is singular."""
    m = G.shape[0]
    n = G.shape[1]
    for j in range(m):
        s = np.linalg.svd(Q[j])[1]
        if not np.isfinite(s[0]) or s[n - 1] <= s[0] * _RCOND_FLOOR:
            return False
        inv[j] = np.linalg.solve(Q[j], np.eye(n, dtype=np.complex128))
        A[j] = Q[j] @ G[j] @ inv[j]
    if multiplicative:
        P = np.eye(n, dtype=np.complex128)
        for j in range(m):
            P = P @ A[j]
        for a in range(n):
            for b in range(n):
                F[a, b] = P[a, b] - (1.0 if a == b else 0.0)
    else:
        for a in range(n):
            for b in range(n):
                acc = 0.0 + 0.0j
                for j in range(m):
                    acc += A[j, a, b]
                F[a, b] = acc
    return True


@njit(cache=True)
def _kron_diff_into(J, col0, P1, K1, P2, K2, n):
    """J[:, col0:col0+n*n] = kron(P1, K1^T) - kron(P2, K2^T)."""
    for i in range(n):
        for k in range(n):
            row = i * n + k
            for a in range(n):
                for b in range(n):
                    J[row, col0 + a * n + b] = P1[i, a] * K1[b, k] - P2[i, a] * K2[b, k]


@njit(cache=True)
def _jacobian(G, Q, inv, A, multiplicative, J):
    m = G.shape[0]
    n = G.shape[1]
    n2 = n * n
    eye = np.eye(n, dtype=np.complex128)
    if multiplicative:
        left = np.empty_like(A)
        right = np.empty_like(A)
        left[0] = eye
        for j in range(1, m):
            left[j] = left[j - 1] @ A[j - 1]
        right[m - 1] = eye
        for j in range(m - 2, -1, -1):
            right[j] = A[j + 1] @ right[j + 1]
        for j in range(m):
            K = G[j] @ inv[j]
            _kron_diff_into(
                J, j * n2, left[j], K @ right[j], left[j] @ A[j], inv[j] @ right[j], n
            )
    else:
        for j in range(m):
            K = G[j] @ inv[j]
            _kron_diff_into(J, j * n2, eye, K, A[j], inv[j], n)


@njit(cache=True)
def _norm2(F):
    n = F.shape[0]
    acc = 0.0
    for a in range(n):
        for b in range(n):
            acc += F[a, b].real ** 2 + F[a, b].imag ** 2
    return acc


@njit(cache=True)
def _run_jit(G, Q0, multiplicative, iters, stop_tol):
    m = G.shape[0]
    n = G.shape[1]
    n2 = n * n
    mn2 = m * n2
    Q = Q0.copy()
    A = np.empty((m, n, n), dtype=np.complex128)
    inv = np.empty((m, n, n), dtype=np.complex128)
    F = np.empty((n, n), dtype=np.complex128)
    An = np.empty((m, n, n), dtype=np.complex128)
    invn = np.empty((m, n, n), dtype=np.complex128)
    Fn = np.empty((n, n), dtype=np.complex128)
    J = np.empty((n2, mn2), dtype=np.complex128)
    ridge = np.eye(mn2, dtype=np.complex128)

    if not _forward(G, Q, multiplicative, A, inv, F):
        return Q, np.inf, 0
    r2 = _norm2(F)
    lam = _LAMBDA_INIT
    used = 0
    for _ in range(iters):
        if np.sqrt(r2) < stop_tol:
            break
        used += 1
        _jacobian(G, Q, inv, A, multiplicative, J)
        Jh = np.conj(J.T).copy()
        g = Jh @ F.reshape(n2)
        H = Jh @ J
        scale = 1e-30
        for i in range(mn2):
            scale += abs(H[i, i].real)
        scale /= mn2
        accepted = False
        while lam <= _LAMBDA_MAX:
            delta = np.linalg.solve(H + (lam * scale) * ridge, -g)
            Qn = Q + delta.reshape(m, n, n)
            if _forward(G, Qn, multiplicative, An, invn, Fn):
                r2n = _norm2(Fn)
                if np.isfinite(r2n) and r2n < r2:
                    Q = Qn
                    A[:] = An
                    inv[:] = invn
                    F[:] = Fn
                    r2 = r2n
                    lam = max(lam * 0.3, 1e-12)
                    accepted = True
                    break
            lam *= 10.0
        if not accepted:
            break
    return Q, np.sqrt(r2), used


def run(G, Q0, multiplicative, iters, stop_tol):
    """Returns (Q, residual_norm, iterations_used); signature matches gn_numpy."""
    G = np.ascontiguousarray(G, dtype=np.complex128)
    Q0 = np.ascontiguousarray(Q0, dtype=np.complex128)
    Q, resid, used = _run_jit(G, Q0, multiplicative, int(iters), float(stop_tol))
    return Q, float(resid), int(used)
