"""Accelerated outer loop around the localized solvers.

Each outer iteration t approximately minimizes
h_t(z) = f(z) + (eta/2) ||z - y^{(t-1)}||^2 down to suboptimality phi_t
using a localized solver started per the configured initialization, then takes
a momentum step.  The gradient of f is maintained incrementally across
iterations through the identity grad h_t(z) = grad f(z) + eta (z - y^{(t-1)}),
so no from-scratch gradient is ever rebuilt inside the loop.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ArgumentError, NumericalError
from .local_solver import (_Scratch, InnerStats, ShiftedProblem, SweepRecord,
                           epsilon_inner, optimal_step, run_inner_dense,
                           scaled_grad_l1)
from .sparsevec import SparseVector
from .trace import OuterTraceRecord, RunTrace, constant_R, mean_stats_for_t


def momentum_coefficient(mu, eta):
    """(sqrt(mu+eta) - sqrt(mu)) / (sqrt(mu+eta) + sqrt(mu))."""
    if mu <= 0.0:
        raise ArgumentError(f"mu must be > 0, got {mu}")
    if eta < 0.0:
        raise ArgumentError(f"eta must be >= 0, got {eta}")
    a = math.sqrt(mu + eta)
    b = math.sqrt(mu)
    return (a - b) / (a + b)


@dataclass
class OuterSchedule:
    T_max: int
    c: float
    phi0_scale: float
    mu: float
    eta: float
    L: float
    q: float
    beta: float
    epsilon: float

    def phi(self, t):
        """Target suboptimality for outer iteration t >= 1."""
        return self.phi0_scale * self.c ** t

    def phi_floor(self):
        """Lower bound on phi_t over the scheduled iterations."""
        rho = 0.9 * math.sqrt(self.q)
        return (self.mu * self.epsilon ** 2
                * (math.sqrt(self.q) - rho) ** 2 / 72.0)


def outer_schedule(alpha, eta, epsilon, b_l1=1.0, ppr_mode=False):
    """Iteration budget and per-iteration targets for the outer loop.

    ppr_mode uses the specialization to b = e_s and eta = 1 - 2*alpha; the
    general formula reduces to it exactly in that case, up to float rounding
    inside the logarithm.
    """
    if not (0.0 < alpha < 1.0):
        raise ArgumentError(f"alpha must be in (0, 1), got {alpha}")
    if eta < 0.0:
        raise ArgumentError(f"eta must be >= 0, got {eta}")
    if epsilon <= 0.0:
        raise ArgumentError(f"epsilon must be > 0, got {epsilon}")
    if b_l1 <= 0.0:
        raise ArgumentError(f"b_l1 must be > 0, got {b_l1}")
    mu = alpha
    L = 1.0
    q = mu / (mu + eta)
    rho = 0.9 * math.sqrt(q)
    c = 1.0 - rho
    phi0_scale = (L + mu) * b_l1 ** 2 / 18.0
    beta = momentum_coefficient(mu, eta)
    if ppr_mode:
        if abs(eta - (1.0 - 2.0 * alpha)) > 1e-12:
            raise ArgumentError(
                f"ppr schedule requires eta = 1 - 2*alpha, got eta={eta}")
        arg = 400.0 * (1.0 - alpha ** 2) / (alpha ** 2 * epsilon ** 2)
        t_raw = (10.0 / 9.0) * math.sqrt((1.0 - alpha) / alpha) * math.log(arg)
    else:
        arg = (4.0 * (L + mu) * b_l1 ** 2
               / (mu * epsilon ** 2 * (math.sqrt(q) - rho) ** 2))
        t_raw = math.log(arg) / rho
    T_max = max(1, int(math.ceil(t_raw)))
    return OuterSchedule(T_max=T_max, c=c, phi0_scale=phi0_scale, mu=mu,
                         eta=eta, L=L, q=q, beta=beta, epsilon=epsilon)


@dataclass
class AespConfig:
    epsilon: float
    alpha: float
    eta: float = None
    b: SparseVector = None
    inner: str = "locappr"
    init: str = "momentum_y"
    adaptive_eps: bool = False
    t_cap: int = None
    ppr_schedule: bool = False

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ArgumentError(f"epsilon must be > 0, got {self.epsilon}")
        if not (0.0 < self.alpha < 1.0):
            raise ArgumentError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.eta is None:
            if self.alpha >= 0.5:
                raise ArgumentError(
                    "default eta = 1 - 2*alpha requires alpha < 1/2; "
                    f"got alpha={self.alpha}")
            self.eta = 1.0 - 2.0 * self.alpha
        if self.eta < 0.0:
            raise ArgumentError(f"eta must be >= 0, got {self.eta}")
        if self.inner not in ("locgd", "locappr"):
            raise ArgumentError(f"unknown inner solver {self.inner!r}")
        if self.init not in ("momentum_y", "previous_x", "zero"):
            raise ArgumentError(f"unknown init mode {self.init!r}")
        if self.adaptive_eps and abs(self.eta - (1.0 - 2.0 * self.alpha)) > 1e-12:
            raise ArgumentError(
                "adaptive_eps requires eta = 1 - 2*alpha")
        if self.t_cap is not None and self.t_cap < 1:
            raise ArgumentError(f"t_cap must be >= 1, got {self.t_cap}")


def early_stop_check(g, grad_f, epsilon, alpha):
    """True iff no node v has |grad_v f| >= epsilon * alpha * sqrt(d_v)."""
    thresh = epsilon * alpha
    if isinstance(grad_f, SparseVector):
        return all(abs(v) < thresh * g.sqrt_deg[i] for i, v in grad_f.items())
    return not _kernels._active_above(np.asarray(grad_f, dtype=np.float64),
                                      g.sqrt_deg, thresh)


def maintain_f_gradient(g, alpha, b, grad_h_end, z_end, y_prev, eta, beta,
                        x_prev):
    """Recover grad f(x^{(t)}) and grad f(y^{(t)}) from the inner end state.

    grad_f_at_x = grad_h_end - eta * (z_end - y_prev);
    grad_f_at_y_next = grad_f_at_x + beta * Q (x^{(t)} - x^{(t-1)}), applied by
    one sparse row sweep over the support of the difference and its neighbors.
    """
    def dense(v):
        return v.to_dense(g.n) if isinstance(v, SparseVector) else np.asarray(v, dtype=np.float64)

    gh = dense(grad_h_end)
    ze = dense(z_end)
    yp = dense(y_prev)
    xp = dense(x_prev)
    grad_f_x = gh - eta * (ze - yp)
    grad_f_y = grad_f_x.copy()
    dx = ze - xp
    if beta != 0.0:
        _kernels._add_qtilde_product(g.offsets, g.neighbors, g.inv_sqrt_deg,
                                     dx, beta, grad_f_y, alpha, 0.0)
    return SparseVector.from_dense(grad_f_x), SparseVector.from_dense(grad_f_y)


def _adaptive_levels(m):
    dens = []
    d = 2.0
    while True:
        if d >= m:
            dens.append(float(m))
            break
        dens.append(d)
        d *= 2.0
    return dens


def _adaptive_inner_dense(phi, alpha, eta, step, g, z, grad, batch,
                          scratch, ops_start, pi_over_deg, trace_sink):
    """Level-descending inner solve with an l2 certificate.

    Runs the solver at thresholds sqrt((1-alpha) * phi / den) for doubling
    denominators capped at m, warm-starting each level from the previous end
    state, and accepts as soon as ||grad h||_2 <= sqrt(2 (1-alpha) phi), which
    certifies h - h* <= phi by (1-alpha)-strong convexity.  Falls back to the
    standard threshold when no level certifies.
    """
    target_l2 = math.sqrt(2.0 * (1.0 - alpha) * phi)
    c0_start = float(_kernels._scaled_grad_l1(grad, g.sqrt_deg))
    merged = InnerStats(K=0, ops_total=0, c0=c0_start, pushes=0,
                        max_contraction_violation=0.0,
                        tau=step * (alpha + eta), records=[])
    ops = ops_start
    eps_used = None
    certified = False
    fell_back = False

    def run_level(eps_hat):
        nonlocal ops
        stats = run_inner_dense(g, alpha, eta, step, z, grad, eps_hat, batch,
                                scratch=scratch, ops_start=ops,
                                pi_over_deg=pi_over_deg)
        ops += stats.ops_total
        for rec in stats.records:
            k = merged.K
            merged.records.append(SweepRecord(
                k=k, vol_S=rec.vol_S, gamma=rec.gamma,
                grad_l1_scaled=rec.grad_l1_scaled, ops_cum=rec.ops_cum,
                err_inf=rec.err_inf))
            merged.K += 1
            if trace_sink is not None:
                trace_sink(k, rec.vol_S, rec.gamma, rec.grad_l1_scaled,
                           rec.ops_cum)
        merged.ops_total += stats.ops_total
        merged.pushes += stats.pushes
        merged.max_contraction_violation = max(
            merged.max_contraction_violation, stats.max_contraction_violation)

    for den in _adaptive_levels(g.m):
        eps_s = math.sqrt((1.0 - alpha) * phi / den)
        run_level(eps_s)
        eps_used = eps_s
        if float(_kernels._l2_norm(grad)) <= target_l2:
            certified = True
            break
    if not certified:
        fell_back = True
        eps_fb = epsilon_inner(phi, g.m, alpha, eta, alpha, c0_start)
        run_level(eps_fb)
        eps_used = eps_fb
    return merged, eps_used, fell_back


def adaptive_epsilon(phi_t, alpha, g, p, z0, grad0, trace_sink=None):
    """Public wrapper for the adaptive inner mode; returns (z, grad, stats)."""
    if abs(p.eta - (1.0 - 2.0 * alpha)) > 1e-12:
        raise ArgumentError("adaptive epsilon requires eta = 1 - 2*alpha")
    if phi_t <= 0.0:
        raise ArgumentError(f"phi_t must be > 0, got {phi_t}")
    z = z0.to_dense(g.n) if isinstance(z0, SparseVector) else np.array(z0, dtype=np.float64)
    grad = grad0.to_dense(g.n) if isinstance(grad0, SparseVector) else np.array(grad0, dtype=np.float64)
    stats, eps_used, fell_back = _adaptive_inner_dense(
        phi_t, alpha, p.eta, p.step, g, z, grad, batch=False,
        scratch=_Scratch(g.n), ops_start=0, pi_over_deg=None,
        trace_sink=trace_sink)
    stats.eps_used = eps_used
    stats.adaptive_fallback = fell_back
    return SparseVector.from_dense(z), SparseVector.from_dense(grad), stats


def aesp(cfg, g, trace_sink=None, oracle_pi=None, err_sampling="off",
         verify_gradients=False):
    """Accelerated outer loop; returns (x_hat, RunTrace).

    err_sampling: "sweep" records the degree-normalized error after every inner
    sweep (needs oracle_pi), "outer" once per outer iteration, "off" never.
    """
    if cfg.b is None or not cfg.b:
        trace = RunTrace(meta={"T_used": 0, "R": None})
        return SparseVector(), trace

    alpha, eta, epsilon = cfg.alpha, cfg.eta, cfg.epsilon
    b_l1 = cfg.b.l1()
    sched = outer_schedule(alpha, eta, epsilon, b_l1,
                           ppr_mode=cfg.ppr_schedule)
    T_eff = sched.T_max if cfg.t_cap is None else min(sched.T_max, cfg.t_cap)
    step = optimal_step(alpha, eta)
    batch = cfg.inner == "locgd"

    n = g.n
    b_dense = cfg.b.to_dense(n)
    if not np.any(np.abs(b_dense) >= epsilon * g.degrees):
        warnings.warn(
            "no node satisfies |b_i| >= epsilon * d_i; the error guarantee "
            "may be vacuous at this precision", stacklevel=2)
    alpha_b_scaled = alpha * b_dense * g.inv_sqrt_deg

    pi_over_deg = None
    if oracle_pi is not None:
        pi_ref = oracle_pi.to_dense(n) if isinstance(oracle_pi, SparseVector) \
            else np.asarray(oracle_pi, dtype=np.float64)
        pi_over_deg = pi_ref / g.degrees
    track_sweep_err = err_sampling == "sweep" and pi_over_deg is not None
    track_outer_err = err_sampling == "outer" and pi_over_deg is not None

    x_prev = np.zeros(n)
    y_prev = np.zeros(n)
    grad_f_x_prev = -alpha_b_scaled.copy()
    grad_f_y = grad_f_x_prev.copy()

    scratch = _Scratch(n)
    z = np.zeros(n)
    grad = np.zeros(n)
    trace = RunTrace(meta={
        "alpha": alpha, "eta": eta, "epsilon": epsilon, "inner": cfg.inner,
        "init": cfg.init, "adaptive_eps": cfg.adaptive_eps,
        "n": g.n, "m": g.m, "graph": g.name,
        "T_max": sched.T_max, "beta": sched.beta,
    })
    ops_cum = 0
    max_grad_dev = 0.0
    max_viol = 0.0
    adaptive_fallbacks = 0
    T_used = T_eff
    stopped_early = False

    try:
        for t in range(1, T_eff + 1):
            phi_t = sched.phi(t)
            if cfg.init == "momentum_y":
                z[:] = y_prev
                grad[:] = grad_f_y
            elif cfg.init == "previous_x":
                z[:] = x_prev
                grad[:] = grad_f_x_prev + eta * (x_prev - y_prev)
            else:
                z[:] = 0.0
                grad[:] = -(alpha_b_scaled + eta * y_prev)

            c0 = float(_kernels._scaled_grad_l1(grad, g.sqrt_deg))
            eps_t = float("nan")
            stats = None
            if c0 > 0.0:
                sink = None
                if trace_sink is not None:
                    sink = lambda k, vol, gam, g1, ops: trace_sink(
                        t, k, vol, gam, g1, ops)
                if cfg.adaptive_eps:
                    stats, eps_t, fell_back = _adaptive_inner_dense(
                        phi_t, alpha, eta, step, g, z, grad, batch, scratch,
                        ops_cum, pi_over_deg if track_sweep_err else None,
                        sink)
                    if fell_back:
                        adaptive_fallbacks += 1
                else:
                    eps_t = epsilon_inner(phi_t, g.m, alpha, eta, alpha, c0)
                    stats = run_inner_dense(
                        g, alpha, eta, step, z, grad, eps_t, batch,
                        scratch=scratch, ops_start=ops_cum,
                        pi_over_deg=pi_over_deg if track_sweep_err else None,
                        trace_sink=sink)
                ops_cum += stats.ops_total
                max_viol = max(max_viol, stats.max_contraction_violation)

            recs = stats.records if stats is not None else []
            if track_outer_err and recs:
                err_here = float(_kernels._err_inf_deg_dense(
                    z, g.inv_sqrt_deg, pi_over_deg))
                last = recs[-1]
                recs[-1] = SweepRecord(
                    k=last.k, vol_S=last.vol_S, gamma=last.gamma,
                    grad_l1_scaled=last.grad_l1_scaled, ops_cum=last.ops_cum,
                    err_inf=err_here)
            for rec in recs:
                trace.add_inner(t, rec.k, rec.vol_S, rec.gamma,
                                rec.grad_l1_scaled, rec.ops_cum, rec.err_inf)

            grad_f_x = grad - eta * (z - y_prev)
            if verify_gradients:
                fresh = _kernels._gradient_dense(
                    g.offsets, g.neighbors, g.inv_sqrt_deg, z,
                    alpha_b_scaled, alpha, 0.0)
                dev = float(np.max(np.abs(fresh - grad_f_x)))
                max_grad_dev = max(max_grad_dev, dev)

            K_t, vol_mean, gamma_mean = mean_stats_for_t(recs)
            trace.add_outer(OuterTraceRecord(
                t=t, phi_t=phi_t, eps_t=eps_t, K_t=K_t, vol_mean=vol_mean,
                gamma_mean=gamma_mean, c0_t=c0, ops_cum=ops_cum,
                grad_f_linf_scaled=float(_kernels._linf_scaled(
                    grad_f_x, g.inv_sqrt_deg))))

            if early_stop_check(g, grad_f_x, epsilon, alpha):
                T_used = t
                stopped_early = True
                break

            dx = z - x_prev
            grad_f_y = grad_f_x.copy()
            if sched.beta != 0.0:
                _kernels._add_qtilde_product(g.offsets, g.neighbors,
                                             g.inv_sqrt_deg, dx, sched.beta,
                                             grad_f_y, alpha, 0.0)
            y_prev = z + sched.beta * dx
            x_prev = z.copy()
            grad_f_x_prev = grad_f_x
    except NumericalError as exc:
        trace.meta.update({"aborted": True, "error": str(exc)})
        exc.trace = trace
        raise

    trace.meta.update({
        "T_used": T_used,
        "stopped_early": stopped_early,
        "ops_total": ops_cum,
        "c0_seq": [o.c0_t for o in trace.outer_records],
        "max_contraction_violation": max_viol,
        "tau": step * (alpha + eta),
    })
    if trace.outer_records and trace.outer_records[0].c0_t > 0.0:
        trace.meta["R"] = constant_R([o.c0_t for o in trace.outer_records])
    if verify_gradients:
        trace.meta["max_grad_f_deviation"] = max_grad_dev
    if cfg.adaptive_eps:
        trace.meta["adaptive_fallbacks"] = adaptive_fallbacks
    if pi_over_deg is not None:
        trace.meta["err_inf_final"] = float(_kernels._err_inf_deg_dense(
            z, g.inv_sqrt_deg, pi_over_deg))
    return SparseVector.from_dense(z), trace


def aesp_ppr(epsilon, alpha, s, g, inner="locappr", trace_sink=None,
             init="momentum_y", adaptive_eps=False, t_cap=None,
             oracle_pi=None, err_sampling="off", verify_gradients=False):
    """Personalized PageRank driver; returns (pi_hat, RunTrace).

    Runs the outer loop on b = e_s with eta = 1 - 2*alpha and rescales the
    result to pi_hat = D^{1/2} x_hat, which satisfies
    max_v |pi_hat_v - pi_v| / d_v <= epsilon.
    """
    if not (0.0 < alpha < 0.5):
        raise ArgumentError(
            f"aesp_ppr requires alpha in (0, 1/2), got {alpha}")
    if not (0 <= s < g.n):
        raise ArgumentError(f"source {s} out of range for n={g.n}")
    if epsilon >= 1.0 / g.degrees[s]:
        warnings.warn(
            f"epsilon={epsilon} >= 1/d_s={1.0 / g.degrees[s]:.3g}; the "
            "guarantee of the accelerated method is stated below that value",
            stacklevel=2)
    cfg = AespConfig(epsilon=epsilon, alpha=alpha, eta=1.0 - 2.0 * alpha,
                     b=SparseVector.basis(s), inner=inner, init=init,
                     adaptive_eps=adaptive_eps, t_cap=t_cap,
                     ppr_schedule=True)
    # oracle comparisons are against pi in x-scale handled inside aesp; pass
    # pi itself, the kernels compare z / sqrt(d) with pi / d directly
    x_hat, trace = aesp(cfg, g, trace_sink=trace_sink, oracle_pi=oracle_pi,
                        err_sampling=err_sampling,
                        verify_gradients=verify_gradients)
    trace.meta["source"] = int(s)
    pi_hat = SparseVector()
    for i, v in x_hat.items():
        pi_hat[i] = v * g.sqrt_deg[i]
    return pi_hat, trace
