#!/usr/bin/env python3
"""
Flexi-clique command line
  solve      exact search (branch and bound)
  heuristic  Flexi-Prune peeling
  oracle     brute force for small graphs
  bench      dataset x tau x algorithm grid as CSV/JSON
  gen        synthetic edge lists
  describe   dataset statistics
Reports go to stdout, logs to stderr.
Exit codes: 0 success, 1 usage error, 2 input error, 3 timeout with incumbent.
"""

import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

import click

from analytics.bench import run_bench
from core.eba import run_eba
from core.errors import GraphInputError, OracleSizeError, TauError
from core.flexi_math import Tau, parse_tau, tau_sweep
from core.fpa import run_fpa
from core.oracle import DEFAULT_NODE_CAP, brute_force_max_flexi
from integration.edge_list_feed import describe_graph, load_dataset, write_edge_list
from integration.generators import gen_er, gen_planted
from monitoring.run_logger import RunLogger, record_from_result, records_to_frame
from solver_config import (
    ALGORITHMS,
    AppConfig,
    BenchConfig,
    Environment,
    RuleSet,
    SolverConfig,
    get_config,
    setup_logging,
    validate_config,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3


class TauParamType(click.ParamType):
    name = "tau"

    def convert(self, value, param, ctx):
        try:
            return parse_tau(value)
        except TauError as exc:
            self.fail(str(exc), param, ctx)


TAU = TauParamType()


def _dataset_label(source: str) -> str:
    path = Path(source)
    return path.stem if path.suffix else path.name


def _solver_config(app: AppConfig, disable_rule: Sequence[int], no_sort: bool,
                   no_heuristic_seed: bool, timeout_s: Optional[float]) -> SolverConfig:
    rules = RuleSet()
    for number in disable_rule:
        rules = rules.without(number)
    if no_sort:
        rules = replace(rules, sort_candidates=False)
    return replace(
        app.solver,
        rules=rules,
        heuristic_seed=not no_heuristic_seed,
        timeout_s=timeout_s if timeout_s is not None else app.solver.timeout_s,
    )


def _emit(run_logger: RunLogger, as_json: bool):
    if as_json:
        run_logger.export(sys.stdout, format="json")
    else:
        click.echo(records_to_frame(run_logger.records).to_csv(index=False), nl=False)


def _emit_stats(stats):
    for name, value in stats.as_dict().items():
        click.echo(f"{name}: {value}", err=True)


def input_option(f):
    return click.option("--input", "source", required=True,
                        help="Edge-list path or dataset name (built-in: karate)")(f)


def tau_option(f):
    return click.option("--tau", type=TAU, required=True, help="Exponent as decimal or p/q")(f)


def json_option(f):
    return click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of CSV")(f)


def search_options(f):
    options = [
        click.option("--timeout-s", type=float, default=None, help="Soft time budget in seconds"),
        click.option("--disable-rule", type=click.IntRange(1, 6), multiple=True, help="Disable a pruning rule"),
        click.option("--no-sort", is_flag=True, help="Branch in discovery order instead of degree order"),
        click.option("--no-heuristic-seed", is_flag=True, help="Start with an empty incumbent"),
        click.option("--stats", "show_stats", is_flag=True, help="Print search counters to stderr"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
@click.option("--env", type=click.Choice([e.value for e in Environment]), default=None,
              help="Overrides FLEXI_ENV")
@click.option("--log-level", default=None, help="Overrides FLEXI_LOG_LEVEL")
@click.pass_context
def cli(ctx, env, log_level):
    """Maximum Flexi-clique toolkit"""
    app = get_config(Environment(env) if env else None)
    if log_level:
        resolved = logging.getLevelName(log_level.upper())
        if not isinstance(resolved, int):
            raise click.BadParameter(f"unknown log level {log_level!r}", param_hint="--log-level")
        app.log_level = resolved
    setup_logging(app)
    if validate_config(app):
        raise click.UsageError("invalid configuration, see log")
    ctx.obj = app


@cli.command()
@input_option
@tau_option
@json_option
@search_options
@click.pass_obj
def solve(app, source, tau, as_json, timeout_s, disable_rule, no_sort, no_heuristic_seed, show_stats):
    """Exact maximum Flexi-clique"""
    graph = load_dataset(source, app.data_dir)
    config = _solver_config(app, disable_rule, no_sort, no_heuristic_seed, timeout_s)
    result, stats = run_eba(graph, tau, config)

    run_logger = RunLogger()
    run_logger.log_run(record_from_result(_dataset_label(source), graph, tau, result, stats, config.rules.mask))
    _emit(run_logger, as_json)
    if show_stats:
        _emit_stats(stats)
    return EXIT_TIMEOUT if result.timed_out else EXIT_OK


@cli.command()
@input_option
@tau_option
@json_option
@click.pass_obj
def heuristic(app, source, tau, as_json):
    """Flexi-Prune heuristic"""
    graph = load_dataset(source, app.data_dir)
    result = run_fpa(graph, tau, debug_checks=app.solver.debug_checks)
    run_logger = RunLogger()
    run_logger.log_run(record_from_result(_dataset_label(source), graph, tau, result))
    _emit(run_logger, as_json)
    return EXIT_OK


@cli.command()
@input_option
@tau_option
@json_option
@click.option("--node-cap", type=int, default=DEFAULT_NODE_CAP, show_default=True)
@click.pass_obj
def oracle(app, source, tau, as_json, node_cap):
    """Brute-force maximum Flexi-clique (small graphs only)"""
    graph = load_dataset(source, app.data_dir)
    result = brute_force_max_flexi(graph, tau, node_cap=node_cap)
    run_logger = RunLogger()
    run_logger.log_run(record_from_result(_dataset_label(source), graph, tau, result))
    _emit(run_logger, as_json)
    return EXIT_OK


@cli.command()
@click.option("--input", "sources", multiple=True, help="Dataset name or path (repeatable)")
@click.option("--tau", "taus", type=TAU, multiple=True, help="Exponent (repeatable)")
@click.option("--tau-sweep", "sweep", default=None, help="START:STOP:STEP grid, stop inclusive")
@click.option("--algorithm", "algorithms", type=click.Choice(ALGORITHMS), multiple=True,
              help="Defaults to fpa and eba")
@click.option("--ablation", is_flag=True, help="Also run EBA with each rule disabled and unsorted")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Overrides FLEXI_WORKERS")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the report here instead of stdout")
@click.option("--summary", is_flag=True, help="Print quality/ablation tables to stderr")
@json_option
@search_options
@click.pass_obj
def bench(app, sources, taus, sweep, algorithms, ablation, workers, out, summary, as_json,
          timeout_s, disable_rule, no_sort, no_heuristic_seed, show_stats):
    """Benchmark grid over datasets, exponents, algorithms and rule masks"""
    grid: List[Tau] = list(taus)
    if sweep:
        try:
            grid.extend(tau_sweep(sweep))
        except TauError as exc:
            raise click.BadParameter(str(exc), param_hint="--tau-sweep")
    if sources and not grid:
        raise click.UsageError("bench needs at least one --tau or --tau-sweep")

    config = BenchConfig(
        algorithms=tuple(algorithms) or ("fpa", "eba"),
        ablation=ablation,
        workers=workers or app.workers,
        solver=_solver_config(app, disable_rule, no_sort, no_heuristic_seed, timeout_s),
    )
    run_logger = run_bench(list(sources), grid, config, app.data_dir)

    if out is not None:
        run_logger.export(out, format="json" if as_json else "csv")
    else:
        _emit(run_logger, as_json)
    if summary or show_stats:
        for name, table in run_logger.generate_report().items():
            click.echo(f"# {name}", err=True)
            click.echo(table.to_string(index=False), err=True)
    if any(record.timed_out for record in run_logger.records):
        return EXIT_TIMEOUT
    return EXIT_OK


@cli.command()
@click.option("--model", type=click.Choice(["er", "planted"]), default="er", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--m", "m", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--clique-size", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_obj
def gen(app, model, n, m, clique_size, seed, out):
    """Generate a seeded synthetic edge list"""
    if model == "er":
        graph = gen_er(n, m, seed)
        header = [f"model=er n={n} m={m} seed={seed}"]
    else:
        graph, planted = gen_planted(n, m, clique_size, seed)
        header = [f"model=planted n={n} m={m} clique_size={clique_size} seed={seed}",
                  "planted=" + " ".join(str(v) for v in sorted(planted))]
    write_edge_list(graph, out if out is not None else sys.stdout, header)
    return EXIT_OK


@cli.command()
@input_option
@json_option
@click.pass_obj
def describe(app, source, as_json):
    """Dataset statistics"""
    stats = describe_graph(load_dataset(source, app.data_dir))
    if as_json:
        click.echo(json.dumps({"dataset": _dataset_label(source), **stats}, indent=2))
    else:
        for name, value in stats.items():
            click.echo(f"{name}: {value}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and translate failures into exit codes"""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="flexi",
                      standalone_mode=False)
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except TauError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except (GraphInputError, OracleSizeError, OSError) as exc:
        logger.error(f"Input error: {exc}")
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
