"""Fixed-step RK4 simulation of x' = u(x) and classification of the limit."""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .balance import BalanceResult, structural_balance
from .errors import DimensionMismatch, InvalidParams, NonFiniteState, NotBalanced
from .graph import SignedDigraph
from .mirror import cofactor_weights, mirror_graph
from .protocols import ProtocolKind, ProtocolSpec, make_control, settling_bound
from .spectral import classify_spectrum

DIVERGENCE_LIMIT = 1e12


class Outcome(enum.Enum):
    SIGNED_AVERAGE_CONSENSUS = "signed-average consensus"
    BIPARTITE_CONSENSUS = "bipartite consensus"
    STATE_STABILITY = "state stability"
    NOT_CONVERGED = "not converged"


@dataclass(frozen=True)
class SimulationConfig:
    protocol: ProtocolSpec
    dt: float = 1e-3
    t_end: float = 30.0
    convergence_tol: float = 1e-4

    def __post_init__(self):
        if not (self.dt > 0 and self.t_end > 0 and self.dt < self.t_end):
            raise InvalidParams(f"need 0 < dt < t_end, got dt={self.dt}, t_end={self.t_end}")
        if not self.convergence_tol > 0:
            raise InvalidParams("convergence_tol must be positive")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (steps + 1, n)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def to_csv(self) -> str:
        n = self.states.shape[1]
        buf = io.StringIO()
        buf.write("t," + ",".join(f"x{i + 1}" for i in range(n)) + "\n")
        for t, row in zip(self.times.tolist(), self.states.tolist()):
            buf.write(repr(t) + "," + ",".join(map(repr, row)) + "\n")
        return buf.getvalue()


@dataclass
class SimulationSummary:
    outcome: Outcome
    limit_estimate: np.ndarray
    consensus_value: Optional[float] = None
    measured_settling_time: Optional[float] = None
    predicted_limit: Optional[np.ndarray] = None
    prediction_error: Optional[float] = None
    settling_bound: Optional[float] = None
    extras: dict = field(default_factory=dict)

    def key_values(self) -> list[tuple[str, str]]:
        def vec(v):
            return "" if v is None else ",".join(repr(float(x)) for x in v)

        def num(v):
            return "" if v is None else repr(float(v))

        return [
            ("outcome", self.outcome.name.lower()),
            ("limit_estimate", vec(self.limit_estimate)),
            ("consensus_value", num(self.consensus_value)),
            ("predicted_limit", vec(self.predicted_limit)),
            ("prediction_error", num(self.prediction_error)),
            ("measured_settling_time", num(self.measured_settling_time)),
            ("settling_bound", num(self.settling_bound)),
        ]


def integrate(control: Callable, x0, config: SimulationConfig) -> Trajectory:
    """Classical RK4 with fixed step ``config.dt`` over [0, t_end].

    The last step is shortened if t_end is not a multiple of dt, so the
    trajectory always ends exactly at t_end.
    """
    x = np.array(x0, dtype=float)
    dt, t_end = config.dt, config.t_end
    steps = int(np.ceil(t_end / dt - 1e-9))
    times = np.minimum(np.arange(steps + 1) * dt, t_end)
    states = np.empty((steps + 1, x.size))
    states[0] = x
    for k in range(steps):
        h = times[k + 1] - times[k]
        k1 = control(x)
        k2 = control(x + 0.5 * h * k1)
        k3 = control(x + 0.5 * h * k2)
        k4 = control(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.abs(x) <= DIVERGENCE_LIMIT):
            raise NonFiniteState(float(times[k + 1]))
        states[k + 1] = x
    return Trajectory(times=times, states=states)


def predicted_limit(g: SignedDigraph, gauge, x0) -> np.ndarray:
    """Terminal state of the linear protocols: sigma_i * (sum_j sigma_j x0_j) / n."""
    if gauge is None:
        raise NotBalanced("no gauge: graph is structurally unbalanced")
    sigma = np.asarray(gauge, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    if sigma.shape != (g.n,) or x0.shape != (g.n,):
        raise DimensionMismatch("gauge and x0 must have one entry per node")
    return (sigma @ x0 / g.n) * sigma


def measured_settling_time(traj: Trajectory, target, tol: float) -> Optional[float]:
    """Earliest sampled time after which the state stays within ``tol`` of ``target``."""
    err = np.max(np.abs(traj.states - np.asarray(target, dtype=float)), axis=1)
    outside = np.flatnonzero(err > tol)
    if outside.size == 0:
        return float(traj.times[0])
    last = outside[-1]
    if last == len(err) - 1:
        return None
    return float(traj.times[last + 1])


def _settled(traj: Trajectory, tol: float) -> bool:
    # the tail must have stopped moving, otherwise the last sample says nothing
    k = max(1, len(traj.times) // 20)
    return bool(np.max(np.abs(traj.states[-k - 1:] - traj.final)) <= tol)


def classify(traj: Trajectory, g: SignedDigraph, balance: BalanceResult, tol: float,
             kind: ProtocolKind = None) -> SimulationSummary:
    """Label the tail state of ``traj``.

    The nonlinear protocols only promise bipartite consensus, so for them a
    consensus outcome is always reported as BIPARTITE_CONSENSUS.
    """
    x = traj.final
    x0 = traj.states[0]
    if not _settled(traj, tol):
        return SimulationSummary(Outcome.NOT_CONVERGED, limit_estimate=x)
    if not balance.balanced:
        if np.max(np.abs(x)) <= tol:
            return SimulationSummary(Outcome.STATE_STABILITY, limit_estimate=x)
        return SimulationSummary(Outcome.NOT_CONVERGED, limit_estimate=x)

    sigma = balance.gauge
    pred = predicted_limit(g, sigma, x0)
    err = float(np.max(np.abs(x - pred)))
    c = float(np.mean(sigma * x))
    is_bipartite = bool(np.max(np.abs(x - c * sigma)) <= tol)
    summary = SimulationSummary(Outcome.NOT_CONVERGED, limit_estimate=x, predicted_limit=pred,
                                prediction_error=err)
    if err <= tol and not (kind is not None and kind.nonlinear):
        summary.outcome = Outcome.SIGNED_AVERAGE_CONSENSUS
        summary.consensus_value = float(sigma @ x0 / g.n)
    elif is_bipartite:
        summary.outcome = Outcome.BIPARTITE_CONSENSUS
        summary.consensus_value = c
    return summary


def simulate(g: SignedDigraph, spec: ProtocolSpec, x0, config: SimulationConfig = None):
    """Run one protocol on ``g`` from ``x0``; returns (trajectory, summary).

    The summary carries the measured settling time against the classified
    limit and, for the fixed-time protocol, the a-priori settling bound.
    """
    if config is None:
        config = SimulationConfig(protocol=spec)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (g.n,):
        raise DimensionMismatch(f"x0 has {x0.size} entries, graph has {g.n} nodes")
    bal = structural_balance(g)
    mirror = None if spec.kind is ProtocolKind.CLASSIC else mirror_graph(g, cofactor_weights(g))
    traj = integrate(make_control(g, spec, mirror), x0, config)
    summary = classify(traj, g, bal, config.convergence_tol, spec.kind)

    if summary.outcome is Outcome.STATE_STABILITY:
        target = np.zeros(g.n)
    elif summary.outcome is Outcome.SIGNED_AVERAGE_CONSENSUS:
        target = summary.predicted_limit
    elif summary.outcome is Outcome.BIPARTITE_CONSENSUS:
        target = traj.final
    else:
        target = None
    if target is not None:
        summary.measured_settling_time = measured_settling_time(traj, target, config.convergence_tol)
    if spec.kind is ProtocolKind.FIXED_TIME:
        rep = classify_spectrum(g, mirror)
        summary.settling_bound = settling_bound(spec.fixed_time, rep.convergence_rate, g.n)
    return traj, summary
