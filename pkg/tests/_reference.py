"""Slow loop-based reference implementations used as test oracles.

Everything here is written from the index definitions with plain Python loops,
so it shares no code path with the vectorised library.
"""

import itertools

import numpy as np


def gauss_loops(c, A):
    A = [np.asarray(a, dtype=float) for a in A]
    n = A[0].shape[0]
    R = np.zeros((n, n, n, n))
    for i, j, k, l in itertools.product(range(n), repeat=4):
        v = c * ((i == l) * (j == k) - (i == k) * (j == l))
        for a in A:
            v += a[i, l] * a[j, k] - a[i, k] * a[j, l]
        R[i, j, k, l] = v
    return R


def derive_loops(R):
    n = R.shape[0]
    rho = np.zeros((n, n))
    checkR = np.zeros((n, n))
    for i, j in itertools.product(range(n), repeat=2):
        rho[i, j] = sum(R[a, i, j, a] for a in range(n))
        checkR[i, j] = sum(
            R[i, a, b, c] * R[j, a, b, c] for a, b, c in itertools.product(range(n), repeat=3)
        )
    RofRho = np.zeros((n, n))
    for i, j in itertools.product(range(n), repeat=2):
        RofRho[i, j] = sum(R[i, a, b, j] * rho[a, b] for a, b in itertools.product(range(n), repeat=2))
    norm2 = sum(R[idx] ** 2 for idx in itertools.product(range(n), repeat=4))
    return {
        "rho": rho,
        "tau": float(np.trace(rho)),
        "checkR": checkR,
        "checkRho": rho @ rho,
        "RofRho": RofRho,
        "norm2": norm2,
    }


def sectional_loops(R, u, v):
    n = R.shape[0]
    num = sum(
        R[i, j, k, l] * u[i] * v[j] * v[k] * u[l] for i, j, k, l in itertools.product(range(n), repeat=4)
    )
    den = np.dot(u, u) * np.dot(v, v) - np.dot(u, v) ** 2
    return num / den


def jacobi_trace_square(R, X):
    """Tr(R_X^2) where R_X Y = R(Y, X) X."""
    n = R.shape[0]
    J = np.zeros((n, n))
    for a, b in itertools.product(range(n), repeat=2):
        J[a, b] = sum(R[a, i, j, b] * X[i] * X[j] for i, j in itertools.product(range(n), repeat=2))
    return float(np.trace(J @ J))


def semisym_loops(R):
    """sup over i,j,k,l,m,q of the components of (R(e_i,e_j).R)(e_k,e_l) e_m."""
    n = R.shape[0]
    # endomorphism R(e_i, e_j) acting on e_m: component q is R[i, j, m, q] with our index order
    E = np.zeros((n, n, n, n))
    for i, j, m, q in itertools.product(range(n), repeat=4):
        E[i, j, q, m] = R[i, j, m, q]
    worst = 0.0
    for i, j, k, l in itertools.product(range(n), repeat=4):
        X, Y = E[i, j], E[k, l]
        comm = X @ Y - Y @ X
        t1 = sum(X[a, k] * E[a, l] for a in range(n))
        t2 = sum(X[a, l] * E[k, a] for a in range(n))
        worst = max(worst, float(np.max(np.abs(comm - t1 - t2))))
    return worst
