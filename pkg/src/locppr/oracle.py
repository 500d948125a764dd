"""Ground-truth personalized PageRank with certified residuals.

Both solvers target (I - (1-alpha) W) pi = alpha e_s with the lazy walk
W = (I + A D^{-1}) / 2, and report certified_residual =
||alpha e_s - (I - (1-alpha) W) pi_hat||_1 / alpha, which upper-bounds
||pi_hat - pi||_1 because the inverse operator has column sums 1/alpha.
"""

import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ArgumentError, ConvergenceError

DEFAULT_DENSE_CAP = 4096


@dataclass
class OracleResult:
    pi: np.ndarray
    method: str
    certified_residual: float
    iterations: int = 0


def _check_args(g, alpha, s):
    if not (0.0 < alpha < 1.0):
        raise ArgumentError(f"alpha must be in (0, 1), got {alpha}")
    if not (0 <= s < g.n):
        raise ArgumentError(f"source {s} out of range for graph with n={g.n}")


def _lazy_walk(g):
    """Column-stochastic W = (I + A D^{-1}) / 2 as a CSR matrix."""
    a = g.adjacency().astype(np.float64)
    inv_deg = 1.0 / g.degrees.astype(np.float64)
    w = a.multiply(inv_deg[np.newaxis, :]).tocsr()
    return (w + sp.identity(g.n, format="csr")) * 0.5


def dense_solve_ppr(g, alpha, s, cap=None):
    """Direct sparse LU solve of (I - (1-alpha) W) pi = alpha e_s.

    Refuses graphs above the size cap (LOCPPR_DENSE_CAP env var or 4096 nodes)
    so it is only used where factorization is cheap.
    """
    _check_args(g, alpha, s)
    if cap is None:
        cap = int(os.environ.get("LOCPPR_DENSE_CAP", DEFAULT_DENSE_CAP))
    if g.n > cap:
        raise ArgumentError(
            f"graph has n={g.n} > cap={cap}; use fixed_point_ppr instead")
    w = _lazy_walk(g)
    m = sp.identity(g.n, format="csr") - (1.0 - alpha) * w
    rhs = np.zeros(g.n)
    rhs[s] = alpha
    pi = spla.spsolve(m.tocsc(), rhs)
    resid = float(np.abs(rhs - m @ pi).sum() / alpha)
    return OracleResult(pi=pi, method="dense_lu", certified_residual=resid)


def fixed_point_ppr(g, alpha, s, tol_l1=1e-10, max_iters=None):
    """Power iteration pi <- alpha e_s + (1-alpha) W pi.

    Stops when the scaled residual ||T(pi) - pi||_1 / alpha falls below tol_l1,
    which certifies ||pi - pi*||_1 <= tol_l1.  The residual contracts by
    (1-alpha) per step from an initial value of (1-alpha).
    """
    _check_args(g, alpha, s)
    if tol_l1 <= 0.0:
        raise ArgumentError(f"tol_l1 must be > 0, got {tol_l1}")
    if max_iters is None:
        max_iters = 4 * int(np.ceil(np.log(max(1.0 / tol_l1, 2.0)) / alpha))
    w = _lazy_walk(g)
    rhs = np.zeros(g.n)
    rhs[s] = alpha
    pi = rhs.copy()
    resid = 1.0 - alpha
    it = 0
    while resid > tol_l1:
        if it >= max_iters:
            raise ConvergenceError(
                f"fixed point did not reach tol_l1={tol_l1} within "
                f"{max_iters} iterations (residual {resid:.3g})")
        nxt = rhs + (1.0 - alpha) * (w @ pi)
        resid = float(np.abs(nxt - pi).sum() / alpha)
        pi = nxt
        it += 1
    return OracleResult(pi=pi, method="fixed_point",
                        certified_residual=resid, iterations=it)


def solve_ppr(g, alpha, s, tol_l1=1e-10, dense_cap=None):
    """Dense solve when the graph fits under the cap, fixed point otherwise."""
    if dense_cap is None:
        dense_cap = int(os.environ.get("LOCPPR_DENSE_CAP", DEFAULT_DENSE_CAP))
    if g.n <= dense_cap:
        return dense_solve_ppr(g, alpha, s, cap=dense_cap)
    return fixed_point_ppr(g, alpha, s, tol_l1=tol_l1)


def error_inf_deg(g, pi_hat, pi_ref):
    """max_v |pi_hat_v - pi_ref_v| / d_v, the degree-normalized error."""
    ph = pi_hat.to_dense(g.n) if hasattr(pi_hat, "to_dense") else np.asarray(pi_hat, dtype=np.float64)
    pr = pi_ref.to_dense(g.n) if hasattr(pi_ref, "to_dense") else np.asarray(pi_ref, dtype=np.float64)
    return float(np.max(np.abs(ph - pr) / g.degrees))
