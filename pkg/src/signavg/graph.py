"""Signed digraphs, their Laplacians and the graph text format.

Edge direction convention: ``weights[i, j] != 0`` means there is an edge
from node j to node i, i.e. agent i listens to agent j. Row i therefore
collects the in-neighbours of node i. Everything else in the package
relies on this, so transposing a matrix by accident silently changes the
graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DigonSignViolation, GraphFormatError, NonFinite, SelfLoop, SignedGraphError

WEIGHT_BALANCE_TOL = 1e-9


@dataclass(frozen=True)
class SignedDigraph:
    """Validated signed digraph; build with :func:`validate`."""

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __eq__(self, other):
        return isinstance(other, SignedDigraph) and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())


@dataclass(frozen=True)
class GraphReport:
    strongly_connected: bool
    weight_balanced: bool
    in_degrees: np.ndarray
    out_degrees: np.ndarray


def validate(raw) -> SignedDigraph:
    """Check the standing assumptions and wrap ``raw`` as a SignedDigraph.

    Rejects non-square input, n < 2, non-finite entries, self-loops and
    reciprocal edges of opposite sign.
    """
    a = np.array(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SignedGraphError(f"adjacency must be square, got shape {a.shape}")
    n = a.shape[0]
    if n < 2:
        raise SignedGraphError("a signed digraph needs at least 2 nodes")
    bad = np.argwhere(~np.isfinite(a))
    if len(bad):
        i, j = bad[0]
        raise NonFinite(i + 1, j + 1)
    for i in range(n):
        if a[i, i] != 0:
            raise SelfLoop(i + 1)
    bad = np.argwhere(np.triu(a * a.T < 0))
    if len(bad):
        i, j = bad[0]
        raise DigonSignViolation(i + 1, j + 1)
    a = a + 0.0  # normalise -0.0
    a.setflags(write=False)
    return SignedDigraph(a)


def in_degrees(g: SignedDigraph) -> np.ndarray:
    return np.abs(g.weights).sum(axis=1)


def out_degrees(g: SignedDigraph) -> np.ndarray:
    return np.abs(g.weights).sum(axis=0)


def laplacian(g: SignedDigraph) -> np.ndarray:
    """Signed Laplacian L = Delta - A with Delta the in-degree matrix."""
    return np.diag(in_degrees(g)) - g.weights


def induced_unsigned(g: SignedDigraph) -> SignedDigraph:
    a = np.abs(g.weights)
    a.setflags(write=False)
    return SignedDigraph(a)


def unsigned_laplacian(g: SignedDigraph) -> np.ndarray:
    return laplacian(induced_unsigned(g))


def strongly_connected_components(g: SignedDigraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative so deep graphs don't hit the recursion limit.

    Components are lists of 0-based node indices, emitted in reverse
    topological order.
    """
    n = g.n
    # successors of j are the nodes i that receive from j
    succ = [np.flatnonzero(g.weights[:, j]).tolist() for j in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if k < len(succ[v]):
                work.append((v, k + 1))
                w = succ[v][k]
                if index[w] < 0:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def is_strongly_connected(g: SignedDigraph) -> bool:
    return len(strongly_connected_components(g)) == 1


def underlying_connected(g: SignedDigraph) -> bool:
    """Connectivity of the undirected graph obtained by forgetting edge directions."""
    adj = (g.weights != 0) | (g.weights.T != 0)
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in np.flatnonzero(adj[v] & ~seen):
            seen[w] = True
            frontier.append(int(w))
    return bool(seen.all())


def degree_report(g: SignedDigraph) -> GraphReport:
    din, dout = in_degrees(g), out_degrees(g)
    return GraphReport(
        strongly_connected=is_strongly_connected(g),
        weight_balanced=bool(np.all(np.abs(din - dout) <= WEIGHT_BALANCE_TOL)),
        in_degrees=din,
        out_degrees=dout,
    )


# -- text format ---------------------------------------------------------

def parse_graph(text: str) -> SignedDigraph:
    """Parse the ``n <count>`` / ``<i> <j> <w>`` edge-list format.

    Indices are 1-based and ``i j w`` sets a_ij = w (edge j -> i).
    """
    n = None
    a = None
    seen = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError("expected header 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"bad node count {parts[1]!r}", lineno) from None
            if n < 2:
                raise GraphFormatError("node count must be at least 2", lineno)
            a = np.zeros((n, n))
            continue
        if len(parts) != 3:
            raise GraphFormatError("expected '<i> <j> <w>'", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"cannot parse edge {stripped!r}", lineno) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"node index out of range 1..{n}", lineno)
        if not math.isfinite(w):
            raise GraphFormatError(f"non-finite weight {parts[2]!r}", lineno)
        if (i, j) in seen:
            raise GraphFormatError(f"duplicate entry ({i}, {j}), first given on line {seen[i, j]}", lineno)
        seen[i, j] = lineno
        a[i - 1, j - 1] = w
    if n is None:
        raise GraphFormatError("missing header 'n <count>'")
    return validate(a)


def load_graph(path) -> SignedDigraph:
    return parse_graph(Path(path).read_text())


def format_graph(g: SignedDigraph) -> str:
    lines = [f"n {g.n}"]
    for i, j in zip(*np.nonzero(g.weights)):
        lines.append(f"{i + 1} {j + 1} {float(g.weights[i, j])!r}")
    return "\n".join(lines) + "\n"
