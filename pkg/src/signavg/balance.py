"""Structural balance by BFS two-colouring of the underlying undirected graph."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DisconnectedUnderlyingGraph
from .graph import SignedDigraph, laplacian, underlying_connected, unsigned_laplacian


class Verdict(enum.Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"


@dataclass(frozen=True)
class BalanceResult:
    verdict: Verdict
    gauge: Optional[np.ndarray] = None
    witness: Optional[list[int]] = None

    @property
    def balanced(self) -> bool:
        return self.verdict is Verdict.BALANCED


def edge_signs(g: SignedDigraph) -> np.ndarray:
    """Sign of each undirected pair; well defined because of digon sign symmetry."""
    a = g.weights
    return np.sign(np.where(a != 0, a, a.T)).astype(int)


def structural_balance(g: SignedDigraph) -> BalanceResult:
    """Two-colour the nodes so that positive edges join equal signs.

    Returns the gauge with node 0 fixed to +1, or, on the first
    contradiction, a negative semi-cycle as a list of 0-based nodes. The
    witness is the cycle closed by the offending edge in the BFS tree.
    """
    if not underlying_connected(g):
        raise DisconnectedUnderlyingGraph("structural balance needs a connected underlying graph")
    s = edge_signs(g)
    n = g.n
    sigma = np.zeros(n, dtype=int)
    parent = [-1] * n
    depth = [0] * n
    sigma[0] = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(s[u]):
            v = int(v)
            want = sigma[u] * s[u, v]
            if sigma[v] == 0:
                sigma[v] = want
                parent[v] = u
                depth[v] = depth[u] + 1
                queue.append(v)
            elif sigma[v] != want:
                return BalanceResult(Verdict.UNBALANCED, witness=_tree_cycle(u, v, parent, depth))
    return BalanceResult(Verdict.BALANCED, gauge=sigma.astype(float))


def _tree_cycle(u, v, parent, depth):
    # climb both tree paths to their lowest common ancestor
    left, right = [u], [v]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    # lca ... -> u, then v -> ... back towards lca
    return left[::-1] + right[:-1]


def cycle_sign(g: SignedDigraph, cycle) -> int:
    s = edge_signs(g)
    prod = 1
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        prod *= s[a, b]
    return prod


def verify_gauge(g: SignedDigraph, gauge) -> bool:
    d = np.diag(np.asarray(gauge, dtype=float))
    return bool(np.all(np.abs(d @ laplacian(g) @ d - unsigned_laplacian(g)) <= 1e-12))
