"""Exception types raised across the package.

Node indices carried by exceptions are 1-based, matching the graph file
format and the way nodes are printed by the CLI.
"""


class SignedGraphError(ValueError):
    """Base class for every error raised by signavg."""


class GraphFormatError(SignedGraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoop(SignedGraphError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"self-loop at node {i}")


class DigonSignViolation(SignedGraphError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"digon sign violation between nodes {i} and {j}: a_{i}{j} * a_{j}{i} < 0")


class NonFinite(SignedGraphError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"non-finite weight a_{i}{j}")


class DimensionMismatch(SignedGraphError):
    pass


class NotStronglyConnected(SignedGraphError):
    pass


class DisconnectedUnderlyingGraph(SignedGraphError):
    pass


class NumericallySingular(SignedGraphError):
    pass


class NotSymmetric(SignedGraphError):
    pass


class NoConvergence(SignedGraphError):
    pass


class LyapunovSingular(SignedGraphError):
    """The Lyapunov operator is singular: some eigenvalue pair sums to zero."""


class NotWeightBalanced(SignedGraphError):
    pass


class CofactorsUnequal(SignedGraphError):
    pass


class InvalidParams(SignedGraphError):
    pass


class NotBalanced(SignedGraphError):
    pass


class NonFiniteState(SignedGraphError):
    def __init__(self, t):
        self.t = t
        super().__init__(f"state diverged at t = {t:g}")
