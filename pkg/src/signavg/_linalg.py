"""Dense linear-algebra kernels used by the mirror and spectral modules.

Written against plain numpy arrays. Sizes stay small (n <= 50, or n**2 for
the Kronecker-form Lyapunov system), so the elimination loops run over the
pivot index in Python and vectorise the row updates.
"""

import math

import numpy as np

from .errors import NoConvergence, NotSymmetric

JACOBI_MAX_SWEEPS = 100


def lu_factor(a):
    """LU with partial pivoting: returns (lu, perm, sign).

    ``lu`` stores the unit lower factor below the diagonal and U on and
    above it; ``perm`` is the row order so that a[perm] = L @ U. A zero
    pivot column is left in place (U then has a zero on its diagonal).
    """
    lu = np.array(a, dtype=float)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for k in range(n - 1):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        piv = lu[k, k]
        if piv == 0.0:
            continue
        lu[k + 1:, k] /= piv
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def det(a):
    a = np.asarray(a, dtype=float)
    if a.shape[0] == 0:
        return 1.0
    lu, _, sign = lu_factor(a)
    return sign * float(np.prod(np.diag(lu)))


def lu_solve(lu, perm, b):
    n = lu.shape[0]
    y = np.array(b, dtype=float)[perm]
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1:] @ y[i + 1:]) / lu[i, i]
    return y


def rank(a, rel_tol=1e-9):
    """Rank by row-echelon reduction with partial pivoting.

    A pivot counts when its magnitude exceeds ``rel_tol`` times the largest
    entry of ``a`` (an upper bound on every pivot the reduction can meet
    before growth).
    """
    m = np.array(a, dtype=float)
    rows, cols = m.shape
    scale = np.max(np.abs(m)) if m.size else 0.0
    if scale == 0.0:
        return 0
    thresh = rel_tol * scale
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[p, c]) <= thresh:
            continue
        m[[r, p]] = m[[p, r]]
        m[r + 1:, c:] -= np.outer(m[r + 1:, c] / m[r, c], m[r, c:])
        r += 1
    return r


def is_positive_definite(p, rel_tol=1e-12):
    """Symmetric LDL^T without pivoting; positive definite iff every pivot > 0."""
    a = np.array(p, dtype=float)
    a = (a + a.T) / 2
    n = a.shape[0]
    floor = rel_tol * max(np.max(np.abs(a)), 1e-300)
    for k in range(n):
        d = a[k, k]
        if not d > floor:
            return False
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:]) / d
    return True


def jacobi_eigh(m, sym_tol=1e-9, rel_tol=1e-12, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi rotations for a real symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` sorted ascending, eigenvectors
    as columns. Converged once every off-diagonal entry is below
    ``rel_tol`` times the Frobenius norm.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    scale = max(np.max(np.abs(a)) if a.size else 0.0, 1.0)
    if np.max(np.abs(a - a.T), initial=0.0) > sym_tol * scale:
        raise NotSymmetric("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    thresh = rel_tol * np.linalg.norm(a)

    def off_max(a):
        return np.max(np.abs(a - np.diag(np.diag(a))), initial=0.0)

    for _ in range(max_sweeps):
        if off_max(a) < thresh or thresh == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) plane rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if off_max(a) >= thresh:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def orthonormal_complement(u):
    """Orthonormal basis (as columns) of the complement of span{u}, by Gram-Schmidt."""
    u = np.asarray(u, dtype=float)
    n = u.size
    basis = [u / np.linalg.norm(u)]
    for e in np.eye(n):
        vec = e.copy()
        for b in basis:
            vec -= (b @ vec) * b
        # second pass keeps the basis orthogonal to working precision
        for b in basis:
            vec -= (b @ vec) * b
        nrm = np.linalg.norm(vec)
        if nrm > 1e-8:
            basis.append(vec / nrm)
        if len(basis) == n:
            break
    return np.column_stack(basis[1:])
