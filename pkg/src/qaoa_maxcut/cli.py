"""Command-line entry point: qaoa-sim {simulate|compare|sweep-p|optimize|gen}."""

from __future__ import annotations

import json
import sys

import click

from . import bench
from .bench import BENCH_CSV_COLUMNS, COMPARE_CSV_COLUMNS, parse_generator_spec
from .circuit import BACKENDS, validate_backend
from .graph import BRUTE_FORCE_GUARD, Graph, format_edge_list, parse_edge_list
from .optimize import INIT_STRATEGIES, approximation_ratio, optimize
from .state import DEFAULT_MAX_QUBITS


def _load_graph(graph_path: str | None, gen_spec: str | None, qubits: int | None) -> Graph:
    if (graph_path is None) == (gen_spec is None):
        raise click.UsageError("provide exactly one of --graph or --gen")
    if graph_path is not None:
        with open(graph_path, encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    return parse_generator_spec(gen_spec, n_override=qubits)


def _parse_range(text: str) -> list[int]:
    """Accept "12", "10:14" (inclusive), or "1,5,10"."""
    if ":" in text:
        lo, _, hi = text.partition(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _emit(rows: list[dict], fmt: str, columns: tuple[str, ...], out: str | None) -> None:
    if fmt == "json":
        body = "\n".join(json.dumps(row) for row in rows) + "\n"
    else:
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join("" if row[c] is None else str(row[c]) for c in columns))
        body = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _graph_source_options(fn):
    fn = click.option("--graph", "graph_path", type=click.Path(exists=True), help="Edge-list file.")(fn)
    fn = click.option("--gen", "gen_spec", help="Generator spec, e.g. u3r:n=10,seed=3.")(fn)
    return fn


def _common_options(fn):
    fn = click.option("--threads", type=int, default=1, show_default=True)(fn)
    fn = click.option("--batch-width", type=click.Choice(["1", "2", "4", "8"]), default=None,
                      help="Strip width for the batched bitwise kernel.")(fn)
    fn = click.option("--launch-control", type=click.Choice(["on", "off"]), default="on",
                      show_default=True)(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                      show_default=True)(fn)
    fn = click.option("--out", type=click.Path(), default=None, help="Write output to a file.")(fn)
    fn = click.option("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS, show_default=True,
                      help="Memory guard for state allocation.")(fn)
    return fn


@click.group()
def main() -> None:
    """State-vector QAOA simulator for max-cut with compressed cost kernels."""


@main.command()
@_graph_source_options
@click.option("--qubits", type=int, default=None, help="Override n for --gen specs.")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--backend", type=click.Choice(BACKENDS), default="compressed", show_default=True)
@click.option("--reps", type=int, default=1, show_default=True)
@click.option("--ratio/--no-ratio", default=False, help="Also report the approximation ratio.")
@_common_options
def simulate(graph_path, gen_spec, qubits, p, backend, reps, ratio,
             threads, batch_width, launch_control, seed, fmt, out, max_qubits):
    """Run the circuit and emit one timing/expectation record per repetition."""
    g = _load_graph(graph_path, gen_spec, qubits)
    try:
        validate_backend(backend, g)
        records = bench.run_simulate(
            g, p, backend,
            launch_control=launch_control == "on",
            threads=threads,
            batch_width=int(batch_width) if batch_width else None,
            seed=seed, reps=reps, with_ratio=ratio, max_qubits=max_qubits,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit([r.to_dict() for r in records], fmt, BENCH_CSV_COLUMNS, out)


@main.command()
@_graph_source_options
@click.option("--qubits", required=True, help="Qubit count or range, e.g. 12 or 10:14.")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--backends", default="baseline,compressed",
              show_default=True, help="Comma-separated backend list; first is the reference.")
@click.option("--reps", type=int, default=3, show_default=True)
@_common_options
def compare(graph_path, gen_spec, qubits, p, backends, reps,
            threads, batch_width, launch_control, seed, fmt, out, max_qubits):
    """Time several backends on identical inputs and report speedups.

    States must agree within 1e-10 before any speedup is printed.
    """
    backend_list = [b.strip() for b in backends.split(",") if b.strip()]
    qubit_counts = _parse_range(qubits)
    if graph_path is not None:
        fixed = _load_graph(graph_path, None, None)
        qubit_counts = [fixed.n]

        def graph_for_n(_n):
            return fixed
    else:
        if gen_spec is None:
            raise click.UsageError("provide exactly one of --graph or --gen")

        def graph_for_n(n):
            return parse_generator_spec(gen_spec, n_override=n)

    try:
        for b in backend_list:
            validate_backend(b)
        rows = bench.run_compare(
            qubit_counts, backend_list, graph_for_n, p=p,
            launch_control=launch_control == "on", threads=threads,
            batch_width=int(batch_width) if batch_width else None,
            seed=seed, reps=reps, max_qubits=max_qubits,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except bench.EquivalenceError as exc:
        raise click.ClickException(str(exc))
    _emit(rows, fmt, COMPARE_CSV_COLUMNS, out)


@main.command("sweep-p")
@_graph_source_options
@click.option("--qubits", type=int, default=None, help="Override n for --gen specs.")
@click.option("--p", "p_range", required=True, help="Level range, e.g. 1:10 or 1,5,10.")
@click.option("--backends", default="baseline", show_default=True)
@click.option("--reps", type=int, default=3, show_default=True)
@_common_options
def sweep_p(graph_path, gen_spec, qubits, p_range, backends, reps,
            threads, batch_width, launch_control, seed, fmt, out, max_qubits):
    """Sweep the level count and emit normalized per-p timing records."""
    g = _load_graph(graph_path, gen_spec, qubits)
    backend_list = [b.strip() for b in backends.split(",") if b.strip()]
    try:
        for b in backend_list:
            validate_backend(b, g)
        records = bench.run_sweep_p(
            g, _parse_range(p_range), backend_list,
            launch_control=launch_control == "on", threads=threads,
            batch_width=int(batch_width) if batch_width else None,
            seed=seed, reps=reps, max_qubits=max_qubits,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit([r.to_dict() for r in records], fmt, BENCH_CSV_COLUMNS, out)


@main.command("optimize")
@_graph_source_options
@click.option("--qubits", type=int, default=None, help="Override n for --gen specs.")
@click.option("--p", type=int, default=5, show_default=True)
@click.option("--backend", type=click.Choice(BACKENDS), default="compressed", show_default=True)
@click.option("--budget", type=int, default=1000, show_default=True,
              help="Maximum circuit evaluations.")
@click.option("--init", "init_strategy", type=click.Choice(INIT_STRATEGIES),
              default="linear-ramp", show_default=True)
@click.option("--ratio", type=click.Choice(["auto", "on", "off"]), default="auto",
              show_default=True, help="Report the brute-force approximation ratio.")
@_common_options
def optimize_cmd(graph_path, gen_spec, qubits, p, backend, budget, init_strategy, ratio,
                 threads, batch_width, launch_control, seed, fmt, out, max_qubits):
    """Tune the angle schedule and emit the optimization report."""
    g = _load_graph(graph_path, gen_spec, qubits)
    try:
        validate_backend(backend, g)
        if ratio == "on" and g.n > BRUTE_FORCE_GUARD:
            raise ValueError(
                f"approximation ratio needs a brute-force optimum, which is "
                f"guarded at {BRUTE_FORCE_GUARD} nodes (graph has {g.n}); "
                f"use --ratio off to skip ratio reporting"
            )
        report = optimize(
            g, p, backend=backend, budget=budget, seed=seed,
            init_strategy=init_strategy,
            launch_control=launch_control == "on",
            threads=threads, max_qubits=max_qubits,
        )
        if ratio == "on" or (ratio == "auto" and g.n <= 24):
            report.approx_ratio = approximation_ratio(g, report.best_expectation)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    body = json.dumps(report.to_dict(), indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


@main.command()
@click.argument("spec")
@click.option("--out", type=click.Path(), default=None, help="Write the edge list to a file.")
def gen(spec, out):
    """Generate a graph from SPEC (u3r | w3r | complete | cycle) as an edge list."""
    try:
        g = parse_generator_spec(spec)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    text = format_edge_list(g)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
