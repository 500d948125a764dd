"""Command-line interface: graph stats, single solves, benchmark sweeps.

Exit codes: 0 ok, 2 input/IO error, 3 convergence failure, 4 numerical
failure, 5 argument error.
"""

import json
import sys
from pathlib import Path

import click

from .bench import (METHODS, BenchPlan, parse_epsilon, run_bench, run_method)
from .errors import ArgumentError, InputError, LocpprError
from .graph import load_edge_list, load_graph, preprocess, write_cache
from .oracle import solve_ppr
from .trace import write_csv, write_summary_json, summary_dict

_INIT_MAP = {"y": "momentum_y", "x": "previous_x", "zero": "zero"}


@click.group()
def cli():
    """Local personalized PageRank solvers with accelerated outer loops."""


@cli.command()
@click.option("--graph", "graph_path", required=True,
              help="Edge list (or binary cache) path.")
def stats(graph_path):
    """Print graph statistics before and after preprocessing."""
    raw_nodes = raw_edges = None
    p = Path(graph_path)
    if _is_cache(p):
        g = load_graph(graph_path)
    else:
        raw = load_edge_list(graph_path)
        raw_nodes = len({u for u, _ in raw.edges} | {v for _, v in raw.edges})
        raw_edges = len(raw.edges)
        g = preprocess(raw, name=p.stem)
    click.echo(f"graph: {g.name}")
    if raw_nodes is not None:
        click.echo(f"raw nodes: {raw_nodes}")
        click.echo(f"raw edge lines: {raw_edges}")
        click.echo(f"dropped nodes: {raw_nodes - g.n}")
    click.echo(f"n: {g.n}")
    click.echo(f"m: {g.m}")
    click.echo(f"max degree: {int(g.degrees.max())}")
    click.echo(f"min degree: {int(g.degrees.min())}")


def _is_cache(path):
    from .graph import CACHE_MAGIC
    try:
        with open(path, "rb") as fh:
            return fh.read(len(CACHE_MAGIC)) == CACHE_MAGIC
    except OSError:
        return False


@cli.command()
@click.option("--graph", "graph_path", required=True)
@click.option("--out", "out_path", required=True,
              help="Destination for the binary graph cache.")
def cache(graph_path, out_path):
    """Preprocess an edge list and store it as a binary cache."""
    g = load_graph(graph_path)
    write_cache(g, out_path)
    click.echo(f"cached {g.name}: n={g.n} m={g.m} -> {out_path}")


@cli.command()
@click.option("--graph", "graph_path", required=True)
@click.option("--method", required=True, type=click.Choice(METHODS))
@click.option("--alpha", required=True, type=float)
@click.option("--eps", required=True,
              help="Absolute precision or symbolic like 0.1/n.")
@click.option("--source", required=True, type=int)
@click.option("--eta", type=float, default=None,
              help="Override the proximal shift (aesp methods only).")
@click.option("--init", "init_mode", type=click.Choice(sorted(_INIT_MAP)),
              default="y", help="Inner start: y (momentum), x, or zero.")
@click.option("--adaptive-eps", is_flag=True)
@click.option("--oracle", is_flag=True,
              help="Compute the degree-normalized error against ground truth.")
@click.option("--err-sampling",
              type=click.Choice(["auto", "off", "sweep", "outer"]),
              default="auto")
@click.option("--trace-out", type=click.Path(), default=None)
@click.option("--out-dir", type=click.Path(), default=None)
@click.option("--t-cap", type=int, default=None)
def solve(graph_path, method, alpha, eps, source, eta, init_mode,
          adaptive_eps, oracle, err_sampling, trace_out, out_dir, t_cap):
    """Run one method on one instance and print the JSON summary."""
    g = load_graph(graph_path)
    epsilon = parse_epsilon(eps, g.n)
    oracle_pi = None
    if oracle:
        oracle_pi = solve_ppr(g, alpha, source, tol_l1=epsilon / 100.0).pi
    if err_sampling == "auto":
        err_sampling = "sweep" if g.n <= 200000 else "outer"
    pi_hat, trace = run_method(
        g, method, alpha, epsilon, source, eta=eta,
        init=_INIT_MAP[init_mode], adaptive_eps=adaptive_eps, t_cap=t_cap,
        oracle_pi=oracle_pi, err_sampling=err_sampling)
    summary = summary_dict(trace)
    click.echo(json.dumps(summary, indent=2, sort_keys=True,
                          default=lambda x: None))
    if trace_out:
        write_csv(trace, trace_out)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        tag = f"{method}_{g.name}_a{alpha:g}_e{epsilon:g}_s{source}"
        write_summary_json(trace, out / f"{tag}.json")
    return 0


@cli.command()
@click.option("--graph", "graph_paths", required=True, multiple=True)
@click.option("--methods", required=True,
              help="Comma-separated subset of " + ",".join(METHODS))
@click.option("--alphas", required=True, help="Comma-separated list.")
@click.option("--epsilons", required=True,
              help="Comma-separated; entries may be symbolic like 0.1/n.")
@click.option("--sources", default="random:5",
              help="Comma-separated node ids or random:K.")
@click.option("--seed", type=int, default=0)
@click.option("--out-dir", required=True, type=click.Path())
@click.option("--oracle", is_flag=True)
@click.option("--traces", is_flag=True, help="Write per-run trace CSVs.")
@click.option("--err-sampling", type=click.Choice(["off", "sweep", "outer"]),
              default="off")
@click.option("--t-cap", type=int, default=None)
@click.option("--quiet", is_flag=True)
def bench(graph_paths, methods, alphas, epsilons, sources, seed, out_dir,
          oracle, traces, err_sampling, t_cap, quiet):
    """Run a benchmark sweep and write results.csv plus per-run JSON files."""
    method_list = [m for m in (x.strip() for x in methods.split(",")) if m]
    try:
        alpha_list = [float(a) for a in alphas.split(",") if a.strip()]
    except ValueError as exc:
        raise ArgumentError(f"bad --alphas: {exc}")
    eps_list = [e.strip() for e in epsilons.split(",") if e.strip()]
    if sources.startswith("random:"):
        source_spec = sources
    else:
        try:
            source_spec = [int(s) for s in sources.split(",") if s.strip()]
        except ValueError as exc:
            raise ArgumentError(f"bad --sources: {exc}")
    plan = BenchPlan(graphs=list(graph_paths), methods=method_list,
                     alphas=alpha_list, epsilons=eps_list,
                     sources=source_spec, seed=seed, out_dir=out_dir,
                     oracle=oracle, traces=traces,
                     err_sampling=err_sampling, t_cap=t_cap)
    progress = None if quiet else (lambda tag: click.echo(f"run {tag}",
                                                          err=True))
    graphs_loaded = [load_graph(p) for p in graph_paths]
    results_path, rows, failures = run_bench(plan,
                                             graphs_loaded=graphs_loaded,
                                             progress=progress)
    click.echo(f"wrote {results_path} ({len(rows)} runs, "
               f"{len(failures)} failures)")
    return 0


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 5
    except click.ClickException as exc:
        exc.show()
        return 5
    except LocpprError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except FileNotFoundError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
