"""Spectrum of the mirror Laplacian and Hurwitz tests for W L."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _linalg
from .errors import LyapunovSingular
from .graph import SignedDigraph
from .mirror import MirrorArtifacts, mirror_graph

ZERO_EIG_REL_TOL = 1e-8
LYAPUNOV_REL_TOL = 1e-9


class SpectrumClass(enum.Enum):
    BALANCED = "balanced spectrum"
    UNBALANCED = "unbalanced spectrum"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    smallest: float
    fiedler_like: float
    classification: SpectrumClass
    tol: float

    @property
    def convergence_rate(self) -> float:
        """lambda_2 for a balanced spectrum, lambda_1 otherwise."""
        if self.classification is SpectrumClass.BALANCED:
            return self.fiedler_like
        return self.smallest


def symmetric_eigenvalues(m) -> np.ndarray:
    return _linalg.jacobi_eigh(m)[0]


def classify_eigenvalues(vals) -> SpectrumReport:
    vals = np.asarray(vals, dtype=float)
    tol = ZERO_EIG_REL_TOL * max(abs(vals[-1]), np.finfo(float).tiny)
    cls = SpectrumClass.UNBALANCED if vals[0] > tol else SpectrumClass.BALANCED
    return SpectrumReport(
        eigenvalues=vals,
        smallest=float(vals[0]),
        fiedler_like=float(vals[1]),
        classification=cls,
        tol=tol,
    )


def classify_spectrum(g: SignedDigraph, art: MirrorArtifacts = None) -> SpectrumReport:
    if art is None:
        art = mirror_graph(g)
    return classify_eigenvalues(symmetric_eigenvalues(art.mirror_laplacian))


def null_space_dimension(m) -> int:
    m = np.asarray(m, dtype=float)
    return m.shape[1] - _linalg.rank(m)


def lyapunov_solve(m, q=None):
    """Solve m^T P + P m = q through the n^2 x n^2 Kronecker system.

    Raises LyapunovSingular when the system has a negligible pivot, which
    happens exactly when two eigenvalues of m sum to (numerically) zero.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if q is None:
        q = np.eye(n)
    eye = np.eye(n)
    # row-major vec: vec(m^T P) = (m^T kron I) vec(P), vec(P m) = (I kron m^T) vec(P)
    k = np.kron(m.T, eye) + np.kron(eye, m.T)
    lu, perm, _ = _linalg.lu_factor(k)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= LYAPUNOV_REL_TOL * max(pivots.max(), np.finfo(float).tiny):
        raise LyapunovSingular("Lyapunov operator is singular (eigenvalue on the imaginary axis)")
    return _linalg.lu_solve(lu, perm, np.asarray(q, dtype=float).ravel()).reshape(n, n)


def is_negated_hurwitz(m) -> bool:
    """True iff every eigenvalue of m has positive real part, i.e. -m is Hurwitz."""
    return _linalg.is_positive_definite(lyapunov_solve(m))


def deflated(m, direction) -> np.ndarray:
    """Restriction Q^T m Q of m to the orthogonal complement of ``direction``."""
    q = _linalg.orthonormal_complement(direction)
    return q.T @ np.asarray(m, dtype=float) @ q


def null_vector(m) -> np.ndarray:
    """Unit eigenvector of the smallest eigenvalue of a symmetric matrix."""
    _, vecs = _linalg.jacobi_eigh(m)
    return vecs[:, 0]
