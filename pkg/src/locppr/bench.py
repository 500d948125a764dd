"""Method dispatch and benchmark sweeps.

Six method names are exposed.  The four baselines are single localized solves
of the unshifted problem (eta = 0) from a zero start with threshold
eps_hat = alpha * epsilon; they differ only in engine and step size:

    appr          per-push, step 1
    appr-opt      per-push, optimal step 2 / (1 + alpha)
    locappr       per-push, optimal step (alias kept for solver-name symmetry)
    locgd         batch, optimal step

aesp-locgd and aesp-locappr run the accelerated outer loop around the
corresponding engine.
"""

import csv
import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .aesp import AespConfig, aesp, aesp_ppr
from .errors import ArgumentError
from .graph import load_edge_list, preprocess
from .local_solver import run_inner_dense, _Scratch
from .oracle import solve_ppr
from .sparsevec import SparseVector
from .trace import OuterTraceRecord, RunTrace, mean_stats_for_t

METHODS = ("appr", "appr-opt", "locgd", "locappr", "aesp-locgd",
           "aesp-locappr")


def _run_baseline(g, method, alpha, eps, source, oracle_pi=None,
                  err_sampling="off", trace_sink=None,
                  verify_gradients=False):
    if method == "appr":
        step, batch = 1.0, False
    elif method == "appr-opt" or method == "locappr":
        step, batch = 2.0 / (1.0 + alpha), False
    elif method == "locgd":
        step, batch = 2.0 / (1.0 + alpha), True
    else:
        raise ArgumentError(f"unknown baseline {method!r}")
    eps_hat = alpha * eps
    n = g.n
    z = np.zeros(n)
    grad = np.zeros(n)
    grad[source] = -alpha * g.inv_sqrt_deg[source]

    pi_over_deg = None
    if oracle_pi is not None:
        pi_ref = oracle_pi.to_dense(n) if isinstance(oracle_pi, SparseVector) \
            else np.asarray(oracle_pi, dtype=np.float64)
        pi_over_deg = pi_ref / g.degrees
    track_sweep = err_sampling == "sweep" and pi_over_deg is not None

    trace = RunTrace(meta={
        "alpha": alpha, "eta": 0.0, "epsilon": eps, "inner": method,
        "init": "zero", "adaptive_eps": False, "n": g.n, "m": g.m,
        "graph": g.name, "T_max": 1, "source": int(source),
    })
    sink = None
    if trace_sink is not None:
        sink = lambda k, vol, gam, g1, ops: trace_sink(1, k, vol, gam, g1, ops)
    stats = run_inner_dense(g, alpha, 0.0, step, z, grad, eps_hat, batch,
                            scratch=_Scratch(n),
                            pi_over_deg=pi_over_deg if track_sweep else None,
                            trace_sink=sink)
    for rec in stats.records:
        trace.add_inner(1, rec.k, rec.vol_S, rec.gamma, rec.grad_l1_scaled,
                        rec.ops_cum, rec.err_inf)
    K, vol_mean, gamma_mean = mean_stats_for_t(stats.records)
    trace.add_outer(OuterTraceRecord(
        t=1, phi_t=float("nan"), eps_t=eps_hat, K_t=K, vol_mean=vol_mean,
        gamma_mean=gamma_mean, c0_t=stats.c0, ops_cum=stats.ops_total,
        grad_f_linf_scaled=float(_kernels._linf_scaled(grad,
                                                       g.inv_sqrt_deg))))
    trace.meta.update({"T_used": 1, "R": 1.0, "ops_total": stats.ops_total,
                       "c0_seq": [stats.c0],
                       "max_contraction_violation":
                           stats.max_contraction_violation,
                       "tau": stats.tau})
    if verify_gradients:
        b_eff = np.zeros(n)
        b_eff[source] = alpha * g.inv_sqrt_deg[source]
        fresh = _kernels._gradient_dense(g.offsets, g.neighbors,
                                         g.inv_sqrt_deg, z, b_eff, alpha, 0.0)
        trace.meta["max_grad_f_deviation"] = float(
            np.max(np.abs(fresh - grad)))
    if pi_over_deg is not None:
        trace.meta["err_inf_final"] = float(_kernels._err_inf_deg_dense(
            z, g.inv_sqrt_deg, pi_over_deg))
    pi_hat = SparseVector()
    for i in np.flatnonzero(z):
        pi_hat[int(i)] = float(z[i] * g.sqrt_deg[i])
    return pi_hat, trace


def run_method(g, method, alpha, eps, source, eta=None, init="momentum_y",
               adaptive_eps=False, t_cap=None, oracle_pi=None,
               err_sampling="off", trace_sink=None, verify_gradients=False):
    """Run one method on one instance; returns (pi_hat, RunTrace).

    eta only applies to the aesp methods and switches them from the
    PageRank-specialized schedule to the general one.
    """
    if method not in METHODS:
        raise ArgumentError(
            f"unknown method {method!r}; expected one of {METHODS}")
    if not (0 <= source < g.n):
        raise ArgumentError(f"source {source} out of range for n={g.n}")
    t0 = time.perf_counter()
    if method.startswith("aesp-"):
        inner = method[len("aesp-"):]
        if eta is None:
            pi_hat, trace = aesp_ppr(
                eps, alpha, source, g, inner=inner, trace_sink=trace_sink,
                init=init, adaptive_eps=adaptive_eps, t_cap=t_cap,
                oracle_pi=oracle_pi, err_sampling=err_sampling,
                verify_gradients=verify_gradients)
        else:
            cfg = AespConfig(epsilon=eps, alpha=alpha, eta=eta,
                             b=SparseVector.basis(source), inner=inner,
                             init=init, adaptive_eps=adaptive_eps,
                             t_cap=t_cap)
            x_hat, trace = aesp(cfg, g, trace_sink=trace_sink,
                                oracle_pi=oracle_pi,
                                err_sampling=err_sampling,
                                verify_gradients=verify_gradients)
            trace.meta["source"] = int(source)
            pi_hat = SparseVector()
            for i, v in x_hat.items():
                pi_hat[i] = v * g.sqrt_deg[i]
    else:
        pi_hat, trace = _run_baseline(g, method, alpha, eps, source,
                                      oracle_pi=oracle_pi,
                                      err_sampling=err_sampling,
                                      trace_sink=trace_sink,
                                      verify_gradients=verify_gradients)
    trace.meta["method"] = method
    trace.meta["wall_ms"] = (time.perf_counter() - t0) * 1e3
    return pi_hat, trace


def parse_epsilon(text, n):
    """Absolute value or 'C/n' resolved against the preprocessed node count."""
    s = str(text).strip()
    m = re.fullmatch(r"([0-9.eE+-]+)\s*/\s*n", s)
    if m:
        return float(m.group(1)) / n
    try:
        return float(s)
    except ValueError:
        raise ArgumentError(f"cannot parse epsilon {text!r}")


@dataclass
class BenchPlan:
    graphs: list
    methods: list
    alphas: list
    epsilons: list
    sources: object = "random:5"
    seed: int = 0
    out_dir: str = "bench-out"
    oracle: bool = False
    traces: bool = False
    err_sampling: str = "off"
    t_cap: int = None
    graph_names: list = field(default=None)

    def __post_init__(self):
        if not self.graphs:
            raise ArgumentError("bench plan needs at least one graph")
        if not self.methods:
            raise ArgumentError("bench plan needs at least one method")
        for m in self.methods:
            if m not in METHODS:
                raise ArgumentError(f"unknown method {m!r}")
        if not self.alphas:
            raise ArgumentError("bench plan needs at least one alpha")
        if not self.epsilons:
            raise ArgumentError("bench plan needs at least one epsilon")


def select_sources(spec, n, seed):
    """Explicit id list, or 'random:K' drawn uniformly without replacement."""
    if isinstance(spec, str) and spec.startswith("random:"):
        k = int(spec.split(":", 1)[1])
        if k < 1:
            raise ArgumentError(f"source count must be >= 1, got {k}")
        if k > n:
            raise ArgumentError(f"cannot draw {k} sources from {n} nodes")
        rng = np.random.default_rng(seed)
        return [int(v) for v in rng.choice(n, size=k, replace=False)]
    sources = [int(v) for v in spec]
    for s in sources:
        if not (0 <= s < n):
            raise ArgumentError(f"source {s} out of range for n={n}")
    return sources


RESULTS_COLUMNS = ["method", "graph", "alpha", "eps", "source", "ops_total",
                   "T_used", "R", "err_inf", "wall_ms"]


def _fmt_float(x):
    return "%.17g" % x


def run_bench(plan, graphs_loaded=None, progress=None):
    """Execute the plan cross-product sequentially and persist results.

    Writes one JSON summary per run, optional trace CSVs, and a combined
    results.csv.  Per-run failures are recorded and do not abort the sweep;
    the call fails only if every run failed.
    """
    from .trace import write_csv, write_summary_json

    out = Path(plan.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    failures = []
    n_runs = 0

    for gi, gpath in enumerate(plan.graphs):
        if graphs_loaded is not None:
            g = graphs_loaded[gi]
        else:
            name = None
            if plan.graph_names:
                name = plan.graph_names[gi]
            g = preprocess(load_edge_list(gpath), name=name or Path(gpath).stem)
        sources = select_sources(plan.sources, g.n, plan.seed)
        oracle_cache = {}
        for alpha in plan.alphas:
            for eps_spec in plan.epsilons:
                eps = parse_epsilon(eps_spec, g.n)
                for method in plan.methods:
                    for s in sources:
                        n_runs += 1
                        tag = f"{method}_{g.name}_a{alpha:g}_e{eps:g}_s{s}"
                        if progress:
                            progress(tag)
                        oracle_pi = None
                        if plan.oracle:
                            key = (alpha, eps, s)
                            if key not in oracle_cache:
                                oracle_cache[key] = solve_ppr(
                                    g, alpha, s, tol_l1=eps / 100.0).pi
                            oracle_pi = oracle_cache[key]
                        try:
                            pi_hat, trace = run_method(
                                g, method, alpha, eps, s,
                                t_cap=plan.t_cap, oracle_pi=oracle_pi,
                                err_sampling=plan.err_sampling)
                        except Exception as exc:
                            failures.append({"run": tag, "error": str(exc)})
                            continue
                        write_summary_json(trace, out / f"{tag}.json")
                        if plan.traces:
                            write_csv(trace, out / f"{tag}.trace.csv")
                        meta = trace.meta
                        err = meta.get("err_inf_final", float("nan"))
                        rows.append([
                            method, g.name, _fmt_float(alpha),
                            _fmt_float(eps), s, meta["ops_total"],
                            meta["T_used"], _fmt_float(meta.get("R", 1.0)),
                            "" if err != err else _fmt_float(err),
                            _fmt_float(meta["wall_ms"]),
                        ])

    with open(out / "results.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULTS_COLUMNS)
        w.writerows(rows)
    if failures:
        with open(out / "failures.json", "w") as fh:
            json.dump(failures, fh, indent=2)
    if n_runs > 0 and len(failures) == n_runs:
        raise ArgumentError("all benchmark runs failed; see failures.json")
    return out / "results.csv", rows, failures
