"""Run instrumentation: per-sweep and per-outer records, aggregation, CSV/JSON IO.

The per-sweep CSV schema is fixed:

    t,k,vol_S,gamma,grad_l1_scaled,ops_cum,err_inf

with t the 1-based outer iteration, k the 0-based sweep index within it,
integers written as integers and floats with repr-faithful precision.
"""

import csv
import json
import math
from collections import namedtuple
from dataclasses import dataclass, field

CSV_HEADER = ["t", "k", "vol_S", "gamma", "grad_l1_scaled", "ops_cum", "err_inf"]

InnerRecord = namedtuple(
    "InnerRecord", ["t", "k", "vol_S", "gamma", "grad_l1_scaled", "ops_cum", "err_inf"])


@dataclass
class OuterTraceRecord:
    t: int
    phi_t: float
    eps_t: float
    K_t: int
    vol_mean: float
    gamma_mean: float
    c0_t: float
    ops_cum: int
    grad_f_linf_scaled: float


@dataclass
class RunTrace:
    meta: dict = field(default_factory=dict)
    inner_records: list = field(default_factory=list)
    outer_records: list = field(default_factory=list)

    def add_inner(self, t, k, vol_S, gamma, grad_l1_scaled, ops_cum,
                  err_inf=float("nan")):
        self.inner_records.append(InnerRecord(
            int(t), int(k), int(vol_S), float(gamma), float(grad_l1_scaled),
            int(ops_cum), float(err_inf)))

    def add_outer(self, rec):
        self.outer_records.append(rec)


def mean_stats_for_t(inner_records_t):
    """(K_t, vol_mean, gamma_mean) for one outer iteration's sweep records.

    An iteration with no sweeps contributes vol_mean = 0 and gamma_mean = 1 so
    that vol_mean / gamma_mean = 0 counts it as free.
    """
    K = len(inner_records_t)
    if K == 0:
        return 0, 0.0, 1.0
    vol_mean = sum(r.vol_S for r in inner_records_t) / K
    gamma_mean = sum(r.gamma for r in inner_records_t) / K
    return K, vol_mean, gamma_mean


def constant_R(c0_seq):
    """max_t c0_t / c0_1 over the outer iterations."""
    from .errors import ArgumentError
    seq = list(c0_seq)
    if not seq:
        raise ArgumentError("constant R undefined: empty c0 sequence")
    if seq[0] <= 0.0:
        raise ArgumentError("constant R undefined: c0_1 = 0")
    return max(seq) / seq[0]


def aggregate(trace):
    """Summary statistics of one run.

    Returns ops_total, T_used, R (None when no outer records carry c0),
    per-t (t, K_t, vol_mean, gamma_mean), and
    vol_over_gamma_max = max_t vol_mean / gamma_mean.
    """
    from .errors import LocpprError
    by_t = {}
    for r in trace.inner_records:
        by_t.setdefault(r.t, []).append(r)
    ts = sorted(set(by_t) | {o.t for o in trace.outer_records})
    per_t = []
    vol_over_gamma_max = 0.0
    ops_total = 0
    for t in ts:
        K, vol_mean, gamma_mean = mean_stats_for_t(by_t.get(t, []))
        per_t.append({"t": t, "K_t": K, "vol_mean": vol_mean,
                      "gamma_mean": gamma_mean})
        if gamma_mean > 0.0:
            vol_over_gamma_max = max(vol_over_gamma_max, vol_mean / gamma_mean)
        elif vol_mean > 0.0:
            raise LocpprError(
                f"inconsistent trace at t={t}: gamma_mean=0 with vol_mean>0")
        if by_t.get(t):
            ops_total = max(ops_total, max(r.ops_cum for r in by_t[t]))
    for o in trace.outer_records:
        ops_total = max(ops_total, o.ops_cum)
    T_used = trace.meta.get("T_used")
    if T_used is None:
        T_used = ts[-1] if ts else 0
    R = None
    if trace.outer_records:
        c0_seq = [o.c0_t for o in trace.outer_records]
        if c0_seq and c0_seq[0] > 0.0:
            R = constant_R(c0_seq)
    return {"ops_total": ops_total, "T_used": T_used, "R": R,
            "per_t": per_t, "vol_over_gamma_max": vol_over_gamma_max}


def _fmt(x):
    return "%.17g" % x


def write_csv(trace, path):
    """Write the per-sweep records; header is bit-exact.

    Floats carry 17 significant digits; err_inf is left empty when it was not
    measured.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in trace.inner_records:
            err = "" if math.isnan(r.err_inf) else _fmt(r.err_inf)
            w.writerow([r.t, r.k, r.vol_S, _fmt(r.gamma),
                        _fmt(r.grad_l1_scaled), r.ops_cum, err])


def read_csv(path):
    """Round-trip reader for write_csv output."""
    from .errors import ParseError
    trace = RunTrace()
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd, None)
        if header != CSV_HEADER:
            raise ParseError(f"unexpected trace CSV header: {header}")
        for lineno, row in enumerate(rd, start=2):
            if len(row) != len(CSV_HEADER):
                raise ParseError(f"bad trace CSV row {lineno}: {row}")
            try:
                err = float(row[6]) if row[6] != "" else float("nan")
                trace.add_inner(int(row[0]), int(row[1]), int(row[2]),
                                float(row[3]), float(row[4]), int(row[5]),
                                err)
            except ValueError as exc:
                raise ParseError(f"bad value in trace CSV row {lineno}: {exc}")
    return trace


def check_trace_invariants(trace, m=None, tol=1e-9):
    """Validate structural invariants of a run trace; raises AssertionError.

    Within each outer iteration the scaled gradient norm must be
    non-increasing (up to floating-point slack), ops_cum must be
    non-decreasing across the whole stream and equal the summed sweep
    volumes, and vol_mean / gamma_mean must stay at or below 2m.
    """
    prev_ops = 0
    vol_sum = 0
    by_t = {}
    for r in trace.inner_records:
        assert r.ops_cum >= prev_ops, \
            f"ops_cum decreased at t={r.t} k={r.k}"
        prev_ops = r.ops_cum
        vol_sum += r.vol_S
        by_t.setdefault(r.t, []).append(r)
    if trace.inner_records:
        assert prev_ops == vol_sum, \
            f"ops_total {prev_ops} != sum of vol_S {vol_sum}"
    for t, recs in by_t.items():
        prev = None
        for r in recs:
            if prev is not None:
                assert r.grad_l1_scaled <= prev * (1.0 + tol) + 1e-300, \
                    (f"grad_l1_scaled increased at t={t} k={r.k}: "
                     f"{prev} -> {r.grad_l1_scaled}")
            prev = r.grad_l1_scaled
        if m is not None:
            K, vol_mean, gamma_mean = mean_stats_for_t(recs)
            if gamma_mean > 0.0:
                assert vol_mean / gamma_mean <= 2.0 * m * (1.0 + tol), \
                    (f"vol_mean/gamma_mean = {vol_mean / gamma_mean} "
                     f"exceeds 2m = {2 * m} at t={t}")


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def summary_dict(trace):
    agg = aggregate(trace)
    out = dict(trace.meta)
    out["ops_total"] = agg["ops_total"]
    out["T_used"] = agg["T_used"]
    out["R"] = _jsonable(agg["R"]) if agg["R"] is not None else None
    out["err_inf_final"] = _jsonable(trace.meta.get("err_inf_final",
                                                    float("nan")))
    out["wall_ms"] = trace.meta.get("wall_ms")
    return out


def write_summary_json(trace, path):
    with open(path, "w") as fh:
        json.dump({k: _jsonable(v) for k, v in summary_dict(trace).items()},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
