"""Closed-form control laws and the fixed-time settling bound.

Five protocols, each a map x -> u:

* classic     u = -L x            (unweighted nearest-neighbour rule)
* mirror      u = -Lhat x
* cofactor    u = -W L x
* fixed-time  u_i = k1 [s_i]^(m/r) + k2 [s_i]^(p/q),   s = -Lhat x
* finite-time u_i = [s_i]^alpha

where [y]^e = sgn(y) |y|^e.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatch, InvalidParams
from .graph import SignedDigraph, laplacian
from .mirror import MirrorArtifacts, cofactor_weights, mirror_graph

# below this |s_i| is treated as exactly zero; the p/q < 1 term is not
# Lipschitz at the origin and would otherwise chatter on roundoff
CHATTER_GUARD = 1e-12


class ProtocolKind(enum.Enum):
    CLASSIC = "classic"
    MIRROR = "mirror"
    COFACTOR = "cofactor"
    FIXED_TIME = "fixed-time"
    FINITE_TIME = "finite-time"

    @property
    def nonlinear(self) -> bool:
        return self in (ProtocolKind.FIXED_TIME, ProtocolKind.FINITE_TIME)


@dataclass(frozen=True)
class FixedTimeParams:
    k1: float = 1.0
    k2: float = 1.0
    m: int = 9
    r: int = 7
    p: int = 3
    q: int = 5

    def __post_init__(self):
        for name in ("m", "r", "p", "q"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v <= 0 or v % 2 == 0:
                raise InvalidParams(f"{name} must be a positive odd integer, got {v!r}")
        if not self.m > self.r:
            raise InvalidParams(f"need m > r, got m={self.m}, r={self.r}")
        if not self.q > self.p:
            raise InvalidParams(f"need q > p, got p={self.p}, q={self.q}")
        if not (self.k1 > 0 and self.k2 > 0) or not np.isfinite([self.k1, self.k2]).all():
            raise InvalidParams(f"gains must be positive, got k1={self.k1}, k2={self.k2}")


@dataclass(frozen=True)
class FiniteTimeParams:
    alpha_exp: float = 0.5

    def __post_init__(self):
        if not 0 < self.alpha_exp < 1:
            raise InvalidParams(f"alpha must lie in (0, 1), got {self.alpha_exp!r}")


@dataclass(frozen=True)
class ProtocolSpec:
    kind: ProtocolKind
    fixed_time: Optional[FixedTimeParams] = None
    finite_time: Optional[FiniteTimeParams] = None

    def __post_init__(self):
        if (self.fixed_time is not None) != (self.kind is ProtocolKind.FIXED_TIME):
            raise InvalidParams("fixed-time parameters go with the fixed-time protocol only")
        if (self.finite_time is not None) != (self.kind is ProtocolKind.FINITE_TIME):
            raise InvalidParams("finite-time parameters go with the finite-time protocol only")

    @classmethod
    def of(cls, kind, **params):
        """Build a spec from a kind name, filling default parameter blocks."""
        kind = ProtocolKind(kind)
        if kind is ProtocolKind.FIXED_TIME:
            return cls(kind, fixed_time=FixedTimeParams(**params))
        if kind is ProtocolKind.FINITE_TIME:
            return cls(kind, finite_time=FiniteTimeParams(**params))
        if params:
            raise InvalidParams(f"{kind.value} protocol takes no parameters")
        return cls(kind)


def _state(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DimensionMismatch(f"state has shape {x.shape}, expected ({n},)")
    return x


def odd_power(y, num, den):
    """sgn(y) |y|^(num/den): the real odd extension of an odd-rational power."""
    return np.sign(y) * np.abs(y) ** (num / den)


def control_classic(g: SignedDigraph, x):
    return -laplacian(g) @ _state(x, g.n)


def control_mirror(mirror: MirrorArtifacts, x):
    lhat = mirror.mirror_laplacian
    return -lhat @ _state(x, lhat.shape[0])


def control_cofactor(g: SignedDigraph, w, x):
    w = np.asarray(w, dtype=float)
    if w.shape != (g.n,):
        raise DimensionMismatch(f"cofactor vector has shape {w.shape}, graph has {g.n} nodes")
    return -w * (laplacian(g) @ _state(x, g.n))


def _mirror_drive(mirror, x):
    s = control_mirror(mirror, x)
    s[np.abs(s) < CHATTER_GUARD] = 0.0
    return s


def control_fixed_time(mirror: MirrorArtifacts, x, params: FixedTimeParams):
    s = _mirror_drive(mirror, x)
    return params.k1 * odd_power(s, params.m, params.r) + params.k2 * odd_power(s, params.p, params.q)


def control_finite_time(mirror: MirrorArtifacts, x, params: FiniteTimeParams):
    s = _mirror_drive(mirror, x)
    return np.sign(s) * np.abs(s) ** params.alpha_exp


def settling_bound(params: FixedTimeParams, lam: float, n: int) -> float:
    """Upper bound on the fixed-time settling time.

    ``lam`` is lambda_2(Lhat) on a structurally balanced graph and
    lambda_1(Lhat) on an unbalanced one. The bound does not involve the
    initial state.
    """
    if not lam > 0:
        raise InvalidParams(f"lambda must be positive, got {lam!r}")
    if int(n) < 1:
        raise InvalidParams(f"node count must be positive, got {n!r}")
    m, r, p, q = params.m, params.r, params.p, params.q
    fast = n ** ((m - r) / (2 * r)) / params.k1 * r / (m - r)
    slow = 1 / params.k2 * q / (q - p)
    return (fast + slow) / lam


def make_control(g: SignedDigraph, spec: ProtocolSpec, mirror: MirrorArtifacts = None) -> Callable:
    """Return the closed-loop vector field x -> u(x) for ``spec`` on ``g``."""
    kind = spec.kind
    if kind is ProtocolKind.CLASSIC:
        lap = laplacian(g)
        return lambda x: -lap @ x
    if mirror is None:
        mirror = mirror_graph(g, cofactor_weights(g))
    if kind is ProtocolKind.COFACTOR:
        wl = mirror.cofactors[:, None] * laplacian(g)
        return lambda x: -wl @ x
    if kind is ProtocolKind.MIRROR:
        lhat = mirror.mirror_laplacian
        return lambda x: -lhat @ x
    if kind is ProtocolKind.FIXED_TIME:
        return lambda x: control_fixed_time(mirror, x, spec.fixed_time)
    return lambda x: control_finite_time(mirror, x, spec.finite_time)
