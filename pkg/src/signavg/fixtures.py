"""Named stand-in graphs and random signed-digraph generators.

All edges are written as (i, j, w) with 1-based nodes, meaning a_ij = w,
i.e. node i receives from node j.
"""

from __future__ import annotations

import numpy as np

from .graph import SignedDigraph, is_strongly_connected, validate


def from_edges(n, edges) -> SignedDigraph:
    a = np.zeros((n, n))
    for i, j, w in edges:
        a[i - 1, j - 1] = w
    return validate(a)


def negative_digon() -> SignedDigraph:
    return from_edges(2, [(1, 2, -1.0), (2, 1, -1.0)])


def unit_cycle(n=3, weight=1.0) -> SignedDigraph:
    """Directed cycle v1 -> v2 -> ... -> vn -> v1."""
    return from_edges(n, [(i % n + 1, i, weight) for i in range(1, n + 1)])


def skewed_cycle() -> SignedDigraph:
    """Positive 3-cycle with a_21 = 2: strongly connected, not weight balanced."""
    return from_edges(3, [(2, 1, 2.0), (3, 2, 1.0), (1, 3, 1.0)])


def frustrated_cycle() -> SignedDigraph:
    """3-cycle with edge signs (+, +, -): structurally unbalanced."""
    return from_edges(3, [(2, 1, 1.0), (3, 2, 1.0), (1, 3, -1.0)])


def six_node_balanced() -> SignedDigraph:
    """Six agents in camps {v1,v2,v3} / {v4,v5,v6}.

    Strongly connected, structurally balanced and weight unbalanced, used
    in place of the unpublished weights of the six-agent example network.
    """
    return from_edges(6, [
        (2, 1, 1.0), (3, 2, 2.0), (1, 3, 1.0),
        (5, 4, 1.0), (6, 5, 1.0), (4, 6, 3.0),
        (4, 1, -2.0), (3, 6, -1.0),
    ])


def six_node_unbalanced() -> SignedDigraph:
    """The six-agent network with one in-camp edge made antagonistic."""
    return from_edges(6, [
        (2, 1, 1.0), (3, 2, 2.0), (1, 3, -1.0),
        (5, 4, 1.0), (6, 5, 1.0), (4, 6, 3.0),
        (4, 1, -2.0), (3, 6, -1.0),
    ])


def random_signed_digraph(rng, n, balanced=None, low=0.1, high=10.0, density=0.4,
                          strongly_connected=True) -> SignedDigraph:
    """Random signed digraph respecting digon sign symmetry.

    ``balanced=True`` plants a random two-camp partition and signs every
    pair accordingly; ``balanced=False`` flips one edge of a planted graph
    against the partition; the result is unbalanced unless that pair is a
    bridge of the underlying graph (always the case for n = 2). ``None``
    picks signs independently per pair.
    Strong connectivity is ensured by threading a random Hamiltonian cycle.
    """
    while True:
        a = np.zeros((n, n))
        sigma = rng.choice([-1.0, 1.0], size=n)
        sigma[0] = 1.0
        pair_sign = np.outer(sigma, sigma)
        if balanced is None:
            s = rng.choice([-1.0, 1.0], size=(n, n))
            pair_sign = np.triu(s, 1) + np.triu(s, 1).T
        if strongly_connected:
            order = rng.permutation(n)
            for k in range(n):
                j, i = order[k], order[(k + 1) % n]
                a[i, j] = 1.0
        extra = rng.random((n, n)) < density
        np.fill_diagonal(extra, False)
        a[extra] = 1.0
        a *= rng.uniform(low, high, size=(n, n)) * pair_sign
        if balanced is False:
            edges = np.argwhere(a != 0)
            i, j = edges[rng.integers(len(edges))]
            a[i, j] = -a[i, j]
            if a[j, i] != 0:
                a[j, i] = -a[j, i]
        g = validate(a)
        if not strongly_connected or is_strongly_connected(g):
            return g


def battery(seed=0, count=200, sizes=range(2, 9), **kw) -> list[SignedDigraph]:
    """Mixed battery of random strongly connected graphs, roughly a third planted balanced."""
    rng = np.random.default_rng(seed)
    sizes = list(sizes)
    out = []
    for k in range(count):
        n = int(sizes[k % len(sizes)])
        balanced = (True, False, None)[k % 3]
        out.append(random_signed_digraph(rng, n, balanced=balanced, **kw))
    return out
