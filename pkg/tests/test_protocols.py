import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from signavg import fixtures
from signavg.balance import structural_balance
from signavg.errors import DimensionMismatch, InvalidParams
from signavg.graph import laplacian, validate
from signavg.mirror import cofactor_weights, mirror_graph
from signavg.potential import PotentialContext, phi_e_quadratic
from signavg.protocols import (
    FiniteTimeParams,
    FixedTimeParams,
    ProtocolKind,
    ProtocolSpec,
    control_classic,
    control_cofactor,
    control_finite_time,
    control_fixed_time,
    control_mirror,
    make_control,
    odd_power,
    settling_bound,
)

from conftest import random_graph

DEFAULT_PARAMS = FixedTimeParams(k1=1, k2=1, m=9, r=7, p=3, q=5)


def sum_form(adj, row_weights, x):
    """u_i = -sum_j c_i |a_ij| (x_i - sgn(a_ij) x_j), evaluated term by term."""
    n = len(x)
    u = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if adj[i, j] != 0:
                u[i] -= row_weights[i] * abs(adj[i, j]) * (x[i] - np.sign(adj[i, j]) * x[j])
    return u


class TestLinearControls:
    def test_classic_digon(self, digon):
        np.testing.assert_array_equal(control_classic(digon, [1.0, 2.0]), [-3, -3])

    def test_classic_consensus_fixed_point(self, skewed):
        np.testing.assert_allclose(control_classic(skewed, 2.5 * np.ones(3)), 0)

    def test_mirror_skewed(self, skewed):
        np.testing.assert_allclose(control_mirror(mirror_graph(skewed), [1.0, 0.0, 0.0]), [-2, 1, 1])

    def test_mirror_gauge_line(self, sixnode):
        d = structural_balance(sixnode).gauge
        np.testing.assert_allclose(control_mirror(mirror_graph(sixnode), 4.0 * d), 0, atol=1e-12)

    def test_cofactor_skewed(self, skewed):
        np.testing.assert_allclose(control_cofactor(skewed, [2, 1, 2], [1.0, 0.0, 0.0]), [-2, 2, 0])

    def test_zero_state(self, sixnode):
        art = mirror_graph(sixnode)
        for u in (control_classic(sixnode, np.zeros(6)), control_mirror(art, np.zeros(6)),
                  control_cofactor(sixnode, art.cofactors, np.zeros(6))):
            np.testing.assert_array_equal(u, 0)

    def test_cofactor_is_scaled_classic_when_weight_balanced(self):
        g = fixtures.unit_cycle(4, weight=3.0)
        w = cofactor_weights(g)
        x = np.array([1.0, -2.0, 0.5, 4.0])
        np.testing.assert_allclose(control_cofactor(g, w, x), 27 * control_classic(g, x))

    def test_dimension_mismatch(self, digon):
        with pytest.raises(DimensionMismatch):
            control_classic(digon, [1.0])
        with pytest.raises(DimensionMismatch):
            control_cofactor(digon, [1.0, 1.0, 1.0], [1.0, 2.0])
        with pytest.raises(DimensionMismatch):
            control_mirror(mirror_graph(digon), np.zeros(3))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 2**32 - 1), st.sampled_from([None, True, False]))
    def test_sum_and_matrix_forms_agree(self, n, seed, balanced):
        g = random_graph(seed, n, balanced=balanced)
        art = mirror_graph(g)
        x = np.random.default_rng(seed).uniform(-5, 5, size=n)
        w = art.cofactors
        scale = 1 + np.abs(w).max()
        np.testing.assert_allclose(control_classic(g, x), sum_form(g.weights, np.ones(n), x), atol=1e-12 * 100)
        np.testing.assert_allclose(control_cofactor(g, w, x), sum_form(g.weights, w, x), rtol=1e-12,
                                   atol=1e-12 * scale * 100)
        np.testing.assert_allclose(control_mirror(art, x), sum_form(art.mirror_adjacency, np.ones(n), x),
                                   rtol=1e-12, atol=1e-12 * scale * 100)


class TestOddPower:
    def test_negative_base(self):
        assert odd_power(-8.0, 3, 5) == pytest.approx(-abs(-8.0) ** 0.6)
        assert odd_power(-8.0, 3, 5) == pytest.approx(-3.4822, abs=5e-5)

    def test_zero_and_one(self):
        assert odd_power(0.0, 9, 7) == 0.0
        assert odd_power(1.0, 9, 7) == 1.0

    @given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
    def test_odd_and_monotone(self, a, b):
        assert odd_power(-a, 3, 5) == -odd_power(a, 3, 5)
        if a < b:
            assert odd_power(a, 9, 7) <= odd_power(b, 9, 7)


class TestNonlinearControls:
    def test_fixed_time_equilibrium(self, digon):
        art = mirror_graph(digon)
        np.testing.assert_array_equal(control_fixed_time(art, [1.0, -1.0], DEFAULT_PARAMS), 0)

    def test_fixed_time_digon(self, digon):
        u = control_fixed_time(mirror_graph(digon), [1.0, 0.0], DEFAULT_PARAMS)
        np.testing.assert_allclose(u, [-2, -2])

    def test_finite_time_digon(self, digon):
        u = control_finite_time(mirror_graph(digon), [1.0, 0.0], FiniteTimeParams(0.5))
        np.testing.assert_allclose(u, [-1, -1])

    def test_finite_time_zero(self, sixnode):
        art = mirror_graph(sixnode)
        np.testing.assert_array_equal(control_finite_time(art, np.zeros(6), FiniteTimeParams(0.3)), 0)

    def test_finite_time_homogeneity(self, sixnode):
        art = mirror_graph(sixnode)
        x = np.array([1.0, -2.0, 0.5, 3.0, 0.0, 1.0])
        a = 0.4
        np.testing.assert_allclose(control_finite_time(art, 2 * x, FiniteTimeParams(a)),
                                   2 ** a * control_finite_time(art, x, FiniteTimeParams(a)))


class TestParams:
    @pytest.mark.parametrize("kw", [
        dict(m=8), dict(r=9, m=7), dict(p=5, q=3), dict(q=4), dict(k1=0.0), dict(k2=-1.0),
        dict(m=9.0), dict(p=-3),
    ])
    def test_fixed_time_rejected(self, kw):
        with pytest.raises(InvalidParams):
            FixedTimeParams(**kw)

    @pytest.mark.parametrize("a", [0.0, 1.0, -0.5, 1.5])
    def test_finite_time_rejected(self, a):
        with pytest.raises(InvalidParams):
            FiniteTimeParams(a)

    def test_spec_blocks(self):
        with pytest.raises(InvalidParams):
            ProtocolSpec(ProtocolKind.FIXED_TIME)
        with pytest.raises(InvalidParams):
            ProtocolSpec(ProtocolKind.MIRROR, fixed_time=DEFAULT_PARAMS)
        assert ProtocolSpec.of("fixed-time").fixed_time == DEFAULT_PARAMS
        assert ProtocolSpec.of("finite-time", alpha_exp=0.3).finite_time.alpha_exp == 0.3


class TestSettlingBound:
    def test_six_agent_value(self):
        # lambda back-solved from the six-agent balanced example's reported T <= 0.5850
        assert settling_bound(DEFAULT_PARAMS, 12.0017, 6) == pytest.approx(0.5850, abs=5e-5)

    def test_three_nodes(self):
        expected = (3 ** (1 / 7) * 3.5 + 2.5) / 3
        assert expected == pytest.approx(2.1982, abs=1e-4)
        assert settling_bound(DEFAULT_PARAMS, 3.0, 3) == pytest.approx(expected, rel=1e-12)

    def test_large_k1_limit(self):
        p = FixedTimeParams(k1=1e12, k2=2.0, m=9, r=7, p=3, q=5)
        assert settling_bound(p, 4.0, 5) == pytest.approx(5 / (2 * 2.0 * 4.0), rel=1e-9)

    def test_monotone(self):
        base = settling_bound(DEFAULT_PARAMS, 2.0, 4)
        assert settling_bound(DEFAULT_PARAMS, 3.0, 4) < base
        assert settling_bound(FixedTimeParams(k1=2.0), 2.0, 4) < base
        assert settling_bound(FixedTimeParams(k2=2.0), 2.0, 4) < base

    def test_rejects_nonpositive_lambda(self):
        with pytest.raises(InvalidParams):
            settling_bound(DEFAULT_PARAMS, 0.0, 3)


ALL_SPECS = [
    ProtocolSpec.of("classic"),
    ProtocolSpec.of("mirror"),
    ProtocolSpec.of("cofactor"),
    ProtocolSpec.of("fixed-time"),
    ProtocolSpec.of("finite-time", alpha_exp=0.5),
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind.value)
def test_gauge_equivariance(spec, small_battery):
    rng = np.random.default_rng(9)
    for g in small_battery:
        bal = structural_balance(g)
        if not bal.balanced:
            continue
        d = bal.gauge
        pos = validate(np.outer(d, d) * g.weights)
        u, u_pos = make_control(g, spec), make_control(pos, spec)
        for _ in range(5):
            x = rng.normal(size=g.n)
            np.testing.assert_allclose(u_pos(d * x), d * u(x), rtol=1e-9, atol=1e-9 * np.abs(u(x)).max())


@pytest.mark.parametrize("kind", ["mirror", "fixed-time", "finite-time"])
def test_mirror_based_protocols_dissipate_potential(kind, small_battery):
    spec = ProtocolSpec.of(kind, **({"alpha_exp": 0.5} if kind == "finite-time" else {}))
    rng = np.random.default_rng(4)
    for g in small_battery[:20]:
        ctx = PotentialContext.from_graph(g)
        u = make_control(g, spec)
        for _ in range(5):
            x = rng.normal(size=g.n)
            v = u(x)
            if np.abs(v).max() < 1e-6:
                continue
            h = 1e-7 / max(1.0, np.abs(v).max())
            assert phi_e_quadratic(ctx, x + h * v) < phi_e_quadratic(ctx, x)


def test_cofactor_dissipates_squared_norm(small_battery):
    # along x' = -W L x, d/dt |x|^2 = -Phi_e(x)
    rng = np.random.default_rng(8)
    for g in small_battery:
        ctx = PotentialContext.from_graph(g)
        u = make_control(g, ProtocolSpec.of("cofactor"))
        for _ in range(5):
            x = rng.normal(size=g.n)
            assert 2 * x @ u(x) == pytest.approx(-phi_e_quadratic(ctx, x), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("kind, adj, x", [
    ("classic", [[0, -5, 6.8], [-0.7, 0, 0], [0, 0.7, 0]], [-0.17, 1.0, 0.98]),
    ("cofactor", [[0, 0, 6.4, 0, 0], [5.4, 0, -3.1, 0, 0], [0, 0, 0, 0, -9.2],
                  [0, -7.3, 0, 0, 0], [0, 6.3, 0, -1.9, 0]], [-0.28, 0.32, -0.59, -1.0, 0.62]),
])
def test_weighted_potential_can_rise_off_mirror(kind, adj, x):
    """Phi_e is not a Lyapunov function for every protocol: these states make it increase."""
    g = validate(adj)
    ctx = PotentialContext.from_graph(g)
    x = np.array(x)
    grad = 4 * ctx.mirror_laplacian @ x
    assert grad @ make_control(g, ProtocolSpec.of(kind))(x) > 0


def test_power_sum_inequalities():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(1, 12))
        eta = rng.exponential(size=n) * rng.choice([0.01, 1.0, 100.0])
        eta[rng.random(n) < 0.2] = 0.0
        total = eta.sum()
        for eps in (1.5, 2.0, 16 / 14):
            assert np.sum(eta ** eps) >= n ** (1 - eps) * total ** eps * (1 - 1e-12)
        for eps in (0.5, 8 / 10, 1.0):
            assert np.sum(eta ** eps) >= total ** eps * (1 - 1e-12)
