"""Disagreement potentials.

The cofactor-weighted potential

    Phi_e(x) = sum_ij w_i |a_ij| (x_i - sgn(a_ij) x_j)^2

equals x^T (W L + L^T W) x on every graph, whereas the unweighted sum only
matches x^T (L + L^T) x on weight-balanced graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CofactorsUnequal, DimensionMismatch, NotWeightBalanced
from .graph import SignedDigraph, degree_report, laplacian
from .mirror import cofactor_weights, mirror_graph

COFACTOR_SPREAD_TOL = 1e-9


@dataclass(frozen=True)
class PotentialContext:
    graph: SignedDigraph
    cofactors: np.ndarray
    laplacian: np.ndarray
    mirror_laplacian: np.ndarray

    @classmethod
    def from_graph(cls, g: SignedDigraph, w=None):
        if w is None:
            w = cofactor_weights(g)
        art = mirror_graph(g, w)
        return cls(graph=g, cofactors=art.cofactors, laplacian=laplacian(g),
                   mirror_laplacian=art.mirror_laplacian)


def _state(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DimensionMismatch(f"state has shape {x.shape}, expected ({n},)")
    return x


def _weighted_disagreement(a, row_weights, x):
    # sgn(0) = 0, but |a_ij| already kills absent edges
    diff = x[:, None] - np.sign(a) * x[None, :]
    return float(np.sum(row_weights[:, None] * np.abs(a) * diff ** 2))


def phi_e_sum(ctx: PotentialContext, x) -> float:
    x = _state(x, ctx.graph.n)
    return _weighted_disagreement(ctx.graph.weights, ctx.cofactors, x)


def phi_e_quadratic(ctx: PotentialContext, x) -> float:
    x = _state(x, ctx.graph.n)
    W = np.diag(ctx.cofactors)
    L = ctx.laplacian
    return float(x @ (W @ L + L.T @ W) @ x)


def classical_phi(g: SignedDigraph, x) -> float:
    x = _state(x, g.n)
    return _weighted_disagreement(g.weights, np.ones(g.n), x)


def weight_balanced_alpha(ctx: PotentialContext) -> float:
    """Common cofactor value of a strongly connected weight-balanced graph."""
    if not degree_report(ctx.graph).weight_balanced:
        raise NotWeightBalanced("graph is not weight balanced")
    w = ctx.cofactors
    spread = (w.max() - w.min()) / max(abs(w).max(), np.finfo(float).tiny)
    if spread > COFACTOR_SPREAD_TOL:
        raise CofactorsUnequal(f"cofactors differ by relative {spread:.3g}")
    return float(w.mean())
