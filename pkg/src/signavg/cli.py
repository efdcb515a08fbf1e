"""Command-line front end: ``signavg analyze | simulate | bound``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .balance import cycle_sign, structural_balance
from .errors import SignedGraphError
from .graph import degree_report, load_graph
from .mirror import cofactor_weights, left_null_residual, mirror_graph
from .protocols import FiniteTimeParams, FixedTimeParams, ProtocolKind, ProtocolSpec, settling_bound
from .simulator import Outcome, SimulationConfig, simulate
from .spectral import SpectrumClass, classify_spectrum


def _fmt_vec(v, fmt="{:.6g}"):
    return "[" + ", ".join(fmt.format(float(x)) for x in v) + "]"


def _fmt_gauge(g):
    return "[" + ", ".join("+1" if s > 0 else "-1" for s in g) + "]"


def analyze_report(g) -> str:
    rep = degree_report(g)
    bal = structural_balance(g)
    lines = [
        f"nodes: {g.n}",
        f"edges: {int(np.count_nonzero(g.weights))}",
        "validation: ok (no self-loops, digon sign-symmetric, finite)",
        f"strongly connected: {'yes' if rep.strongly_connected else 'no'}",
        f"weight balanced: {'yes' if rep.weight_balanced else 'no'}",
        f"in-degrees: {_fmt_vec(rep.in_degrees)}",
        f"out-degrees: {_fmt_vec(rep.out_degrees)}",
    ]
    if bal.balanced:
        lines.append(f"structural balance: balanced, gauge {_fmt_gauge(bal.gauge)}")
    else:
        cyc = "->".join(f"v{k + 1}" for k in bal.witness)
        lines.append(f"structural balance: unbalanced, witness cycle {cyc}->v{bal.witness[0] + 1} "
                     f"(sign {cycle_sign(g, bal.witness):+d})")
    if not rep.strongly_connected:
        lines.append("cofactor weights: undefined (graph is not strongly connected)")
        lines.append("prediction: none (the convergence results need strong connectivity)")
        return "\n".join(lines) + "\n"
    w = cofactor_weights(g)
    art = mirror_graph(g, w)
    spec = classify_spectrum(g, art)
    lines += [
        f"cofactor weights w: {_fmt_vec(w)}",
        f"conditioning max(w)/min(w): {w.max() / w.min():.6g}",
        f"left-null residual |w^T Lbar|: {left_null_residual(g, w):.3g}",
        f"mirror Laplacian eigenvalues: {_fmt_vec(np.where(np.abs(spec.eigenvalues) <= spec.tol, 0.0, spec.eigenvalues))}",
        f"spectrum: {spec.classification.value}",
    ]
    if spec.classification is SpectrumClass.BALANCED:
        lines.append(f"lambda_2: {spec.fiedler_like:.6g}")
        lines.append("prediction: signed-average consensus")
    else:
        lines.append(f"lambda_1: {spec.smallest:.6g}")
        lines.append("prediction: state stability")
    return "\n".join(lines) + "\n"


def _expected_outcomes(balanced: bool, kind: ProtocolKind):
    if not balanced:
        return {Outcome.STATE_STABILITY}
    if kind in (ProtocolKind.MIRROR, ProtocolKind.COFACTOR):
        return {Outcome.SIGNED_AVERAGE_CONSENSUS}
    if kind is ProtocolKind.CLASSIC:
        return {Outcome.SIGNED_AVERAGE_CONSENSUS, Outcome.BIPARTITE_CONSENSUS}
    return {Outcome.BIPARTITE_CONSENSUS}


def _fixed_params(args):
    return FixedTimeParams(k1=args.k1, k2=args.k2, m=args.m, r=args.r, p=args.p, q=args.q)


def _parse_x0(text, n):
    try:
        x0 = np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise SignedGraphError(f"cannot parse --x0 {text!r}") from None
    if x0.size != n or not np.all(np.isfinite(x0)):
        raise SignedGraphError(f"--x0 needs {n} finite values, got {text!r}")
    return x0


def cmd_analyze(args, out):
    out.write(analyze_report(load_graph(args.graph)))
    return 0


def cmd_simulate(args, out):
    g = load_graph(args.graph)
    kind = ProtocolKind(args.protocol)
    if kind is ProtocolKind.FIXED_TIME:
        spec = ProtocolSpec(kind, fixed_time=_fixed_params(args))
    elif kind is ProtocolKind.FINITE_TIME:
        if args.alpha is None:
            raise SignedGraphError("finite-time protocol requires --alpha")
        spec = ProtocolSpec(kind, finite_time=FiniteTimeParams(args.alpha))
    else:
        spec = ProtocolSpec(kind)
    x0 = _parse_x0(args.x0, g.n)
    config = SimulationConfig(protocol=spec, dt=args.dt, t_end=args.t_end, convergence_tol=args.tol)
    traj, summary = simulate(g, spec, x0, config)

    csv_path = Path(args.out) if args.out else Path(f"{Path(args.graph).stem}_{kind.value}.csv")
    csv_path.write_text(traj.to_csv())

    balanced = structural_balance(g).balanced
    expected = _expected_outcomes(balanced, kind)
    ok = summary.outcome in expected
    lines = [
        f"protocol: {kind.value}",
        f"steps: {len(traj.times) - 1} (dt={config.dt:g}, t_end={config.t_end:g})",
        f"outcome: {summary.outcome.value}",
        f"final state: {_fmt_vec(summary.limit_estimate)}",
    ]
    if summary.predicted_limit is not None:
        lines.append(f"predicted signed-average limit: {_fmt_vec(summary.predicted_limit)}")
        lines.append(f"prediction error: {summary.prediction_error:.3g}")
    if summary.consensus_value is not None:
        lines.append(f"consensus value: {summary.consensus_value:.6g}")
    if summary.measured_settling_time is not None:
        lines.append(f"measured settling time (tol {config.convergence_tol:g}): "
                     f"{summary.measured_settling_time:.6g}")
    if summary.settling_bound is not None:
        lines.append(f"fixed-time settling bound: {summary.settling_bound:.6g}")
    lines.append(f"matches analysis: {'yes' if ok else 'no'} "
                 f"(expected {' or '.join(sorted(o.value for o in expected))})")
    lines.append(f"trajectory: {csv_path}")
    lines.append("")
    lines += [f"{k}={v}" for k, v in summary.key_values()]
    lines.append(f"matches_analysis={'true' if ok else 'false'}")
    out.write("\n".join(lines) + "\n")
    if not ok:
        sys.stderr.write(f"signavg: outcome {summary.outcome.value} does not match the prediction\n")
        return 1
    return 0


def cmd_bound(args, out):
    g = load_graph(args.graph)
    params = _fixed_params(args)
    spec = classify_spectrum(g)
    balanced = spec.classification is SpectrumClass.BALANCED
    lam = spec.convergence_rate
    t = settling_bound(params, lam, g.n)
    which = "lambda_2" if balanced else "lambda_1"
    out.write(
        f"structural balance: {'balanced' if balanced else 'unbalanced'}\n"
        f"{which}(Lhat): {lam:.6g}\n"
        f"params: k1={params.k1:g} k2={params.k2:g} m={params.m} r={params.r} p={params.p} q={params.q}\n"
        f"settling bound T <= {t:.4f}\n"
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="signavg", description="Signed-average consensus diagnostics and simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="graph diagnostics and convergence prediction")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    def gains(p):
        p.add_argument("--k1", type=float, default=1.0)
        p.add_argument("--k2", type=float, default=1.0)
        p.add_argument("--m", type=int, default=9)
        p.add_argument("--r", type=int, default=7)
        p.add_argument("--p", type=int, default=3)
        p.add_argument("--q", type=int, default=5)

    p = sub.add_parser("simulate", help="integrate a protocol and write the trajectory CSV")
    p.add_argument("graph")
    p.add_argument("--protocol", required=True, choices=[k.value for k in ProtocolKind])
    p.add_argument("--x0", required=True, help="comma-separated initial state, e.g. --x0=1,-2,3")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-end", type=float, default=30.0)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--alpha", type=float, default=None, help="finite-time exponent in (0, 1)")
    p.add_argument("--out", default=None, help="CSV path (default <graph>_<protocol>.csv)")
    gains(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bound", help="fixed-time settling bound")
    p.add_argument("graph")
    gains(p)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (SignedGraphError, OSError) as exc:
        sys.stderr.write(f"signavg: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
