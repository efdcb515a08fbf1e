"""Cofactor weights and the mirror signed graph.

For a strongly connected digraph the principal-minor determinants
w_i = det(Lbar with row/column i removed) are positive and form a left
null vector of the unsigned Laplacian Lbar. Weighting row i of the
dynamics by w_i and symmetrising gives the mirror graph

    Ahat = (W A + A^T W) / 2,    Lhat = (W L + L^T W) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from .errors import DimensionMismatch, NotStronglyConnected, NumericallySingular
from .graph import SignedDigraph, is_strongly_connected, laplacian, unsigned_laplacian, validate

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class MirrorArtifacts:
    cofactors: np.ndarray
    mirror_adjacency: np.ndarray
    mirror_laplacian: np.ndarray

    @property
    def graph(self) -> SignedDigraph:
        """The mirror graph itself, as an (undirected) SignedDigraph."""
        return validate(self.mirror_adjacency)


def principal_minor(m, i):
    keep = [k for k in range(m.shape[0]) if k != i]
    return m[np.ix_(keep, keep)]


def cofactor_weights(g: SignedDigraph) -> np.ndarray:
    if not is_strongly_connected(g):
        raise NotStronglyConnected("cofactor weights need a strongly connected graph")
    lbar = unsigned_laplacian(g)
    w = np.array([_linalg.det(principal_minor(lbar, i)) for i in range(g.n)])
    small = np.flatnonzero(np.abs(w) < SINGULAR_TOL)
    if small.size:
        raise NumericallySingular(f"cofactor det(Lbar_{small[0] + 1}{small[0] + 1}) = {w[small[0]]:.3g}")
    return w


def mirror_graph(g: SignedDigraph, w=None) -> MirrorArtifacts:
    if w is None:
        w = cofactor_weights(g)
    w = np.asarray(w, dtype=float)
    if w.shape != (g.n,):
        raise DimensionMismatch(f"cofactor vector has shape {w.shape}, graph has {g.n} nodes")
    W = np.diag(w)
    a = g.weights
    lap = laplacian(g)
    ahat = (W @ a + a.T @ W) / 2
    lhat = (W @ lap + lap.T @ W) / 2
    return MirrorArtifacts(cofactors=w, mirror_adjacency=ahat, mirror_laplacian=lhat)


def mirror_degree_laplacian(art: MirrorArtifacts) -> np.ndarray:
    """Laplacian rebuilt from Ahat by the in-degree rule, for cross-checking Lhat."""
    ahat = art.mirror_adjacency
    return np.diag(np.abs(ahat).sum(axis=1)) - ahat


def left_null_residual(g: SignedDigraph, w) -> float:
    """max |(w^T Lbar)_j|; zero in exact arithmetic."""
    return float(np.max(np.abs(np.asarray(w) @ unsigned_laplacian(g))))
