"""Localized solvers for the shifted degree-normalized quadratic.

The problem instance is min_z h(z) = (1/2) z' Qt z - b_eff' z with
Qt = Q + eta*I, Q = ((1+alpha)/2) I - ((1-alpha)/2) D^{-1/2} A D^{-1/2}.
Its gradient is grad h(z) = Qt z - b_eff.  Both solvers repeatedly push
active nodes (|grad_u| >= eps_hat * sqrt(d_u)) until none remain:

- loc_appr: one node at a time, FIFO order with sweep boundaries, a stale
  dequeued node is skipped at zero cost.
- loc_gd: whole-queue batches; every snapshot node is pushed with its
  snapshot gradient, stale or not.

Costs are counted in neighbor touches (deg(u) per executed push).
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ArgumentError, NumericalError
from .sparsevec import SparseVector


def optimal_step(alpha, eta):
    """Step size that zeroes the pushed node's own gradient entry."""
    return 2.0 / (1.0 + alpha + 2.0 * eta)


@dataclass
class ShiftedProblem:
    """Parameters of one inner subproblem; step defaults to the optimal value."""
    alpha: float
    eta: float
    b_eff: SparseVector
    step: float = None

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ArgumentError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.eta < 0.0:
            raise ArgumentError(f"eta must be >= 0, got {self.eta}")
        opt = optimal_step(self.alpha, self.eta)
        if self.step is None:
            self.step = opt
        if not (0.0 < self.step <= opt * (1.0 + 1e-12)):
            raise ArgumentError(
                f"step must be in (0, {opt:.6g}], got {self.step}")

    @property
    def qtilde_diag(self):
        return (1.0 + self.alpha + 2.0 * self.eta) / 2.0

    @property
    def tau(self):
        """Per-push contraction coefficient of ||D^{1/2} grad||_1."""
        return self.step * (self.alpha + self.eta)


@dataclass
class SweepRecord:
    k: int
    vol_S: int
    gamma: float
    grad_l1_scaled: float
    ops_cum: int
    err_inf: float = float("nan")


@dataclass
class InnerStats:
    K: int
    ops_total: int
    c0: float
    pushes: int
    max_contraction_violation: float
    tau: float
    records: list = field(default_factory=list)


class _Scratch:
    """Reusable per-graph work arrays for the kernels."""

    def __init__(self, n):
        self.queue = np.zeros(n + 2, dtype=np.int64)
        self.in_queue = np.zeros(n, dtype=np.uint8)
        self.snap_nodes = np.zeros(n, dtype=np.int64)
        self.snap_vals = np.zeros(n, dtype=np.float64)

    def reset(self):
        self.in_queue[:] = 0


_EMPTY_F64 = np.zeros(0, dtype=np.float64)


def run_inner_dense(g, alpha, eta, step, z, grad, eps_hat, batch,
                    scratch=None, ops_start=0, pi_over_deg=None,
                    trace_sink=None):
    """Kernel driver on dense arrays; mutates z and grad in place."""
    if eps_hat <= 0.0:
        raise ArgumentError(f"eps_hat must be > 0, got {eps_hat}")
    if scratch is None:
        scratch = _Scratch(g.n)
    else:
        scratch.reset()
    track_err = pi_over_deg is not None
    pod = pi_over_deg if track_err else _EMPTY_F64
    (K, ops_end, c0, pushes, max_viol, status,
     vol_rec, gam_rec, g1_rec, ops_rec, err_rec) = _kernels._esp_solve(
        g.offsets, g.neighbors, g.degrees, g.sqrt_deg, g.inv_sqrt_deg,
        z, grad, float(eps_hat), float(alpha), float(eta), float(step),
        bool(batch), scratch.queue, scratch.in_queue,
        scratch.snap_nodes, scratch.snap_vals,
        int(ops_start), pod, track_err)
    if status == _kernels.STATUS_NONFINITE:
        raise NumericalError(
            "non-finite gradient norm encountered during local solve")
    records = []
    for k in range(K):
        rec = SweepRecord(k=k, vol_S=int(vol_rec[k]), gamma=float(gam_rec[k]),
                          grad_l1_scaled=float(g1_rec[k]),
                          ops_cum=int(ops_rec[k]), err_inf=float(err_rec[k]))
        records.append(rec)
        if trace_sink is not None:
            trace_sink(rec.k, rec.vol_S, rec.gamma, rec.grad_l1_scaled,
                       rec.ops_cum)
    stats = InnerStats(K=K, ops_total=int(ops_end - ops_start), c0=float(c0),
                       pushes=int(pushes),
                       max_contraction_violation=float(max_viol),
                       tau=step * (alpha + eta), records=records)
    return stats


def _run_inner(g, problem, z0, grad0, eps_hat, batch, trace_sink=None):
    z = z0.to_dense(g.n) if isinstance(z0, SparseVector) else np.array(z0, dtype=np.float64)
    grad = grad0.to_dense(g.n) if isinstance(grad0, SparseVector) else np.array(grad0, dtype=np.float64)
    stats = run_inner_dense(g, problem.alpha, problem.eta, problem.step,
                            z, grad, eps_hat, batch, trace_sink=trace_sink)
    return SparseVector.from_dense(z), SparseVector.from_dense(grad), stats


def loc_appr(g, problem, z0, grad0, eps_hat, trace_sink=None):
    """Per-push localized solve; returns (z, grad, stats)."""
    return _run_inner(g, problem, z0, grad0, eps_hat, batch=False,
                      trace_sink=trace_sink)


def loc_gd(g, problem, z0, grad0, eps_hat, trace_sink=None):
    """Batch localized solve; returns (z, grad, stats)."""
    return _run_inner(g, problem, z0, grad0, eps_hat, batch=True,
                      trace_sink=trace_sink)


def compute_gradient(g, problem, z):
    """grad h(z) = Qt z - b_eff as a SparseVector, from scratch."""
    zd = z.to_dense(g.n) if isinstance(z, SparseVector) else np.asarray(z, dtype=np.float64)
    bd = problem.b_eff.to_dense(g.n)
    grad = _kernels._gradient_dense(g.offsets, g.neighbors, g.inv_sqrt_deg,
                                    zd, bd, problem.alpha, problem.eta)
    return SparseVector.from_dense(grad)


def scaled_grad_l1(g, grad):
    """||D^{1/2} grad||_1."""
    if isinstance(grad, SparseVector):
        return sum(g.sqrt_deg[i] * abs(v) for i, v in grad.items())
    return float(_kernels._scaled_grad_l1(np.asarray(grad, dtype=np.float64),
                                          g.sqrt_deg))


def epsilon_inner(phi, m, mu, eta, alpha, c0):
    """Inner stopping threshold for target suboptimality phi.

    Takes the larger of the energy-based bound sqrt((mu + eta) * phi / m) and
    the duality-gap bound 2 * (eta + alpha) * phi / c0.  A start already at the
    optimum (c0 = 0) needs no work; callers should skip the solve then.
    """
    if phi <= 0.0:
        raise ArgumentError(f"phi must be > 0, got {phi}")
    if m <= 0:
        raise ArgumentError(f"m must be > 0, got {m}")
    if c0 < 0.0:
        raise ArgumentError(f"c0 must be >= 0, got {c0}")
    term_energy = np.sqrt((mu + eta) * phi / m)
    if c0 == 0.0:
        return term_energy
    term_gap = 2.0 * (eta + alpha) * phi / c0
    return max(term_energy, term_gap)
