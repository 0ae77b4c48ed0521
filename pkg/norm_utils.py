from enum import IntEnum

import numpy as np
from numba import njit, prange, float64, int64


class SpaceKind(IntEnum):
    LP = 0
    HILBERT = 1
    WEIGHTED = 2


@njit(float64(float64[::1]), cache=True, nogil=True)
def max_abs(x):
    m = 0.0
    for i in range(x.shape[0]):
        a = abs(x[i])
        if a > m:
            m = a
    return m


@njit(float64(float64[::1], float64), cache=True, nogil=True)
def lp_norm_squared(x, p):
    """
    Compute the squared l_p norm of a vector.

    The sum is taken over |x_i| / max|x| so that large p neither overflows nor underflows,
    and the result is assembled as m^2 * s^(2/p) so that no square root is squared back.

    Parameters:
    - x (float64[::1]): Coordinates.
    - p (float64): Exponent, 1 <= p <= inf (inf encoded as np.inf).

    Returns:
    - float64: ||x||_p^2.
    """
    m = max_abs(x)
    if m == 0.0:
        return 0.0
    if np.isinf(p):
        return m * m

    s = 0.0
    if p == 2.0:
        for i in range(x.shape[0]):
            r = x[i] / m
            s += r * r
        return m * m * s
    if p == 1.0:
        for i in range(x.shape[0]):
            s += abs(x[i])
        return s * s

    for i in range(x.shape[0]):
        s += (abs(x[i]) / m) ** p
    return m * m * s ** (2.0 / p)


@njit(float64(float64[::1], float64), cache=True, nogil=True)
def lp_norm(x, p):
    m = max_abs(x)
    if m == 0.0:
        return 0.0
    if np.isinf(p):
        return m
    if p == 1.0:
        s = 0.0
        for i in range(x.shape[0]):
            s += abs(x[i])
        return s

    s = 0.0
    for i in range(x.shape[0]):
        s += (abs(x[i]) / m) ** p
    return m * s ** (1.0 / p)


@njit(float64(float64[::1], float64[:, ::1]), cache=True, nogil=True)
def gram_norm_squared(x, gram):
    """
    Compute x^T G x for a symmetric positive definite Gram matrix G.

    Parameters:
    - x (float64[::1]): Coordinates.
    - gram (float64[:, ::1]): The Gram matrix.

    Returns:
    - float64: The squared norm, clamped at 0.
    """
    s = 0.0
    n = x.shape[0]
    for i in range(n):
        row = 0.0
        for j in range(n):
            row += gram[i, j] * x[j]
        s += x[i] * row
    return max(s, 0.0)


@njit(float64(float64[::1], float64[::1], float64[:, ::1]), cache=True, nogil=True)
def gram_inner(x, y, gram):
    s = 0.0
    n = x.shape[0]
    for i in range(n):
        row = 0.0
        for j in range(n):
            row += gram[i, j] * y[j]
        s += x[i] * row
    return s


@njit(float64(float64[::1], int64, float64, float64[:, ::1]), cache=True, nogil=True)
def space_norm_squared(x, kind, p, gram):
    if kind == SpaceKind.WEIGHTED:
        return gram_norm_squared(x, gram)
    return lp_norm_squared(x, p)


@njit(float64(float64[::1], int64, float64, float64[:, ::1]), cache=True, nogil=True)
def space_norm(x, kind, p, gram):
    """
    Evaluate the norm of a vector in the space described by (kind, p, gram).

    Parameters:
    - x (float64[::1]): Coordinates.
    - kind (int64): SpaceKind code.
    - p (float64): l_p exponent (2 for Hilbert spaces, ignored for weighted ones).
    - gram (float64[:, ::1]): Gram matrix of a weighted space (ignored otherwise).

    Returns:
    - float64: The norm.
    """
    if kind == SpaceKind.WEIGHTED:
        return np.sqrt(gram_norm_squared(x, gram))
    return lp_norm(x, p)


@njit(float64(float64[::1], float64[::1], float64[::1], int64, float64, float64[:, ::1]), cache=True, nogil=True)
def perp2_defect_kernel(u, v, k_grid, kind, p, gram):
    """
    Largest violation of the Pythagorean relation ||u + kv||^2 = ||u||^2 + k^2 ||v||^2 on a k-grid.

    Parameters:
    - u, v (float64[::1]): The pair under test.
    - k_grid (float64[::1]): Scalars k to test.
    - kind, p, gram: Space description, see space_norm.

    Returns:
    - float64: max_k | ||u + kv||^2 - ||u||^2 - k^2 ||v||^2 |.
    """
    nu2 = space_norm_squared(u, kind, p, gram)
    nv2 = space_norm_squared(v, kind, p, gram)
    w = np.empty_like(u)
    worst = 0.0
    for i in range(k_grid.shape[0]):
        k = k_grid[i]
        for j in range(u.shape[0]):
            w[j] = u[j] + k * v[j]
        d = abs(space_norm_squared(w, kind, p, gram) - nu2 - k * k * nv2)
        if d > worst:
            worst = d
    return worst


@njit(float64[:, ::1](float64[:, ::1], float64[:, ::1], int64, int64, float64[::1], float64), parallel=True, cache=True)
def perp2_defect_block(us, vs, row_start, row_stop, k_grid, p):
    """
    Compute rows [row_start, row_stop) of the l_p 2-orthogonality defect surface.

    Every cell (i, j) holds the k-grid defect of the pair (us[i], vs[j]); cells are computed
    independently so the block is the same whatever the thread count.

    Parameters:
    - us (float64[:, ::1]): Unit vectors for the first slot, one per row.
    - vs (float64[:, ::1]): Unit vectors for the second slot, one per row.
    - row_start, row_stop (int64): Row range of us to evaluate.
    - k_grid (float64[::1]): Scalars k to test.
    - p (float64): l_p exponent.

    Returns:
    - float64[:, ::1]: Defects, shape (row_stop - row_start, vs.shape[0]).
    """
    n_rows = row_stop - row_start
    n_cols = vs.shape[0]
    dim = us.shape[1]
    out = np.empty((n_rows, n_cols), dtype=np.float64)

    for r in prange(n_rows):
        u = us[row_start + r]
        nu2 = lp_norm_squared(u, p)
        w = np.empty(dim, dtype=np.float64)
        for c in range(n_cols):
            v = vs[c]
            nv2 = lp_norm_squared(v, p)
            worst = 0.0
            for i in range(k_grid.shape[0]):
                k = k_grid[i]
                for j in range(dim):
                    w[j] = u[j] + k * v[j]
                d = abs(lp_norm_squared(w, p) - nu2 - k * k * nv2)
                if d > worst:
                    worst = d
            out[r, c] = worst
    return out
