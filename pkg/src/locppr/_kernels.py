"""Numba kernels for localized evolving-set solvers on the degree-normalized quadratic.

State convention: for a shifted problem with parameters (alpha, eta) the kernels
maintain z and grad = Qt z - b_eff where Qt has diagonal (1 + alpha + 2*eta)/2 and
off-diagonal entries -(1 - alpha) / (2 * sqrt(d_u * d_v)) on edges.  A node is
active while |grad_v| >= eps_hat * sqrt(d_v).  Work is counted in neighbor
touches: every executed push of u costs deg(u).
"""

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_NONFINITE = 1


@njit(cache=True)
def _scaled_grad_l1(grad, sqrt_deg):
    """Exact ||D^{1/2} grad||_1 over the dense array."""
    total = 0.0
    comp = 0.0
    for v in range(grad.shape[0]):
        gv = grad[v]
        if gv != 0.0:
            y = sqrt_deg[v] * abs(gv) - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total


@njit(cache=True)
def _err_inf_deg_dense(z, inv_sqrt_deg, pi_over_deg):
    """max_v |z_v / sqrt(d_v) - pi_v / d_v|, i.e. degree-normalized error of D^{1/2} z."""
    best = 0.0
    for v in range(z.shape[0]):
        e = abs(z[v] * inv_sqrt_deg[v] - pi_over_deg[v])
        if e > best:
            best = e
    return best


@njit(cache=True)
def _add_qtilde_product(offsets, neighbors, inv_sqrt_deg, x, coef, out, alpha, eta):
    """out += coef * Qt x, touching only supp(x) rows and their neighbors."""
    diag = (1.0 + alpha + 2.0 * eta) / 2.0
    off = (1.0 - alpha) / 2.0
    for u in range(x.shape[0]):
        xu = x[u]
        if xu == 0.0:
            continue
        out[u] += coef * diag * xu
        c = coef * off * xu * inv_sqrt_deg[u]
        for idx in range(offsets[u], offsets[u + 1]):
            v = neighbors[idx]
            out[v] -= c * inv_sqrt_deg[v]


@njit(cache=True)
def _gradient_dense(offsets, neighbors, inv_sqrt_deg, z, b_eff, alpha, eta):
    """grad = Qt z - b_eff computed from scratch."""
    out = -b_eff.copy()
    _add_qtilde_product(offsets, neighbors, inv_sqrt_deg, z, 1.0, out, alpha, eta)
    return out


@njit(cache=True)
def _esp_solve(offsets, neighbors, degrees, sqrt_deg, inv_sqrt_deg,
               z, grad, eps_hat, alpha, eta, step, batch,
               queue, in_queue, snap_nodes, snap_vals,
               ops_start, pi_over_deg, track_err):
    """Run one localized solve to completion, mutating z and grad in place.

    batch=False: per-push sweeps (APPR-style).  Dequeued nodes are re-checked
    against the threshold and skipped at zero cost when stale; sweep k+1 holds
    the nodes enqueued during sweep k.
    batch=True: full-queue sweeps (gradient-descent-style).  The entire queue is
    snapshotted and every snapshot node is pushed with its snapshot gradient,
    with no staleness re-check.

    Returns (K, ops_end, c0, pushes, max_viol, status,
             vol_rec, gam_rec, g1_rec, ops_rec, err_rec) with record arrays
    trimmed by the caller to length K.
    """
    n = degrees.shape[0]
    sentinel = n
    cap = n + 2

    tau = step * (alpha + eta)
    rem_coef = 1.0 - step * (1.0 + alpha + 2.0 * eta) / 2.0
    if abs(rem_coef) < 1e-15:
        rem_coef = 0.0
    half_spread = step * (1.0 - alpha) / 2.0

    g1 = _scaled_grad_l1(grad, sqrt_deg)
    g1c = 0.0
    c0 = g1

    rec_cap = 64
    vol_rec = np.zeros(rec_cap, dtype=np.int64)
    gam_rec = np.zeros(rec_cap, dtype=np.float64)
    g1_rec = np.zeros(rec_cap, dtype=np.float64)
    ops_rec = np.zeros(rec_cap, dtype=np.int64)
    err_rec = np.zeros(rec_cap, dtype=np.float64)

    K = 0
    pushes = 0
    ops = ops_start
    max_viol = 0.0
    status = STATUS_OK

    head = 0
    tail = 0
    count = 0
    for v in range(n):
        if abs(grad[v]) >= eps_hat * sqrt_deg[v]:
            queue[tail] = v
            tail = (tail + 1) % cap
            count += 1
            in_queue[v] = 1

    if count == 0:
        return (K, ops, c0, pushes, max_viol, status,
                vol_rec, gam_rec, g1_rec, ops_rec, err_rec)

    if not batch:
        queue[tail] = sentinel
        tail = (tail + 1) % cap
        count += 1
        sweep_vol = 0
        sweep_gamma = 0.0
        sweep_pushes = 0
        while count > 0:
            u = queue[head]
            head = (head + 1) % cap
            count -= 1
            if u == sentinel:
                if sweep_pushes > 0:
                    g1 = _scaled_grad_l1(grad, sqrt_deg)
                    g1c = 0.0
                    if not np.isfinite(g1):
                        status = STATUS_NONFINITE
                        break
                    if K == rec_cap:
                        rec_cap *= 2
                        vol_rec = _grow_i(vol_rec, rec_cap)
                        gam_rec = _grow_f(gam_rec, rec_cap)
                        g1_rec = _grow_f(g1_rec, rec_cap)
                        ops_rec = _grow_i(ops_rec, rec_cap)
                        err_rec = _grow_f(err_rec, rec_cap)
                    vol_rec[K] = sweep_vol
                    gam_rec[K] = sweep_gamma
                    g1_rec[K] = g1
                    ops_rec[K] = ops
                    if track_err:
                        err_rec[K] = _err_inf_deg_dense(z, inv_sqrt_deg, pi_over_deg)
                    else:
                        err_rec[K] = np.nan
                    K += 1
                if count == 0:
                    break
                queue[tail] = sentinel
                tail = (tail + 1) % cap
                count += 1
                sweep_vol = 0
                sweep_gamma = 0.0
                sweep_pushes = 0
                continue
            in_queue[u] = 0
            delta = grad[u]
            a_delta = abs(delta)
            if a_delta < eps_hat * sqrt_deg[u]:
                continue
            g1_before = g1
            gamma_i = sqrt_deg[u] * a_delta / g1 if g1 > 0.0 else 0.0

            z[u] -= step * delta
            new_gu = rem_coef * delta
            y = sqrt_deg[u] * (abs(new_gu) - a_delta) - g1c
            t = g1 + y
            g1c = (t - g1) - y
            g1 = t
            grad[u] = new_gu

            spread = half_spread * delta * inv_sqrt_deg[u]
            for idx in range(offsets[u], offsets[u + 1]):
                v = neighbors[idx]
                old = grad[v]
                new = old + spread * inv_sqrt_deg[v]
                y = sqrt_deg[v] * (abs(new) - abs(old)) - g1c
                t = g1 + y
                g1c = (t - g1) - y
                g1 = t
                grad[v] = new
                if in_queue[v] == 0 and abs(new) >= eps_hat * sqrt_deg[v]:
                    queue[tail] = v
                    tail = (tail + 1) % cap
                    count += 1
                    in_queue[v] = 1
            if in_queue[u] == 0 and abs(grad[u]) >= eps_hat * sqrt_deg[u]:
                queue[tail] = u
                tail = (tail + 1) % cap
                count += 1
                in_queue[u] = 1

            ops += degrees[u]
            sweep_vol += degrees[u]
            sweep_gamma += gamma_i
            sweep_pushes += 1
            pushes += 1

            bound = (1.0 - tau * gamma_i) * g1_before
            if g1_before > 0.0:
                viol = (g1 - bound) / g1_before
                if viol > max_viol:
                    max_viol = viol
            if not np.isfinite(g1):
                status = STATUS_NONFINITE
                break
    else:
        while count > 0:
            g1_start = g1
            sc = 0
            gamma_num = 0.0
            gamma_comp = 0.0
            vol_k = 0
            while count > 0:
                u = queue[head]
                head = (head + 1) % cap
                count -= 1
                in_queue[u] = 0
                snap_nodes[sc] = u
                snap_vals[sc] = grad[u]
                sc += 1
                y = sqrt_deg[u] * abs(grad[u]) - gamma_comp
                t = gamma_num + y
                gamma_comp = (t - gamma_num) - y
                gamma_num = t
                vol_k += degrees[u]
            gamma_k = gamma_num / g1_start if g1_start > 0.0 else 0.0

            for i in range(sc):
                u = snap_nodes[i]
                delta = snap_vals[i]
                z[u] -= step * delta
                new_gu = rem_coef * delta
                grad[u] = new_gu
                if in_queue[u] == 0 and abs(new_gu) >= eps_hat * sqrt_deg[u]:
                    queue[tail] = u
                    tail = (tail + 1) % cap
                    count += 1
                    in_queue[u] = 1

            for i in range(sc):
                u = snap_nodes[i]
                delta = snap_vals[i]
                if delta == 0.0:
                    continue
                spread = half_spread * delta * inv_sqrt_deg[u]
                for idx in range(offsets[u], offsets[u + 1]):
                    v = neighbors[idx]
                    new = grad[v] + spread * inv_sqrt_deg[v]
                    grad[v] = new
                    if in_queue[v] == 0 and abs(new) >= eps_hat * sqrt_deg[v]:
                        queue[tail] = v
                        tail = (tail + 1) % cap
                        count += 1
                        in_queue[v] = 1

            ops += vol_k
            pushes += sc
            g1 = _scaled_grad_l1(grad, sqrt_deg)
            g1c = 0.0
            if not np.isfinite(g1):
                status = STATUS_NONFINITE
                break

            if g1_start > 0.0:
                bound = (1.0 - tau * gamma_k) * g1_start
                viol = (g1 - bound) / g1_start
                if viol > max_viol:
                    max_viol = viol

            if K == rec_cap:
                rec_cap *= 2
                vol_rec = _grow_i(vol_rec, rec_cap)
                gam_rec = _grow_f(gam_rec, rec_cap)
                g1_rec = _grow_f(g1_rec, rec_cap)
                ops_rec = _grow_i(ops_rec, rec_cap)
                err_rec = _grow_f(err_rec, rec_cap)
            vol_rec[K] = vol_k
            gam_rec[K] = gamma_k
            g1_rec[K] = g1
            ops_rec[K] = ops
            if track_err:
                err_rec[K] = _err_inf_deg_dense(z, inv_sqrt_deg, pi_over_deg)
            else:
                err_rec[K] = np.nan
            K += 1

    return (K, ops, c0, pushes, max_viol, status,
            vol_rec, gam_rec, g1_rec, ops_rec, err_rec)


@njit(cache=True)
def _grow_f(arr, new_cap):
    out = np.zeros(new_cap, dtype=np.float64)
    out[:arr.shape[0]] = arr
    return out


@njit(cache=True)
def _grow_i(arr, new_cap):
    out = np.zeros(new_cap, dtype=np.int64)
    out[:arr.shape[0]] = arr
    return out


@njit(cache=True)
def _active_above(grad, sqrt_deg, thresh):
    """True iff some node has |grad_v| >= thresh * sqrt(d_v)."""
    for v in range(grad.shape[0]):
        if abs(grad[v]) >= thresh * sqrt_deg[v]:
            return True
    return False


@njit(cache=True)
def _linf_scaled(grad, inv_sqrt_deg):
    """||D^{-1/2} grad||_inf."""
    best = 0.0
    for v in range(grad.shape[0]):
        e = abs(grad[v]) * inv_sqrt_deg[v]
        if e > best:
            best = e
    return best


@njit(cache=True)
def _l2_norm(x):
    total = 0.0
    for v in range(x.shape[0]):
        total += x[v] * x[v]
    return np.sqrt(total)
