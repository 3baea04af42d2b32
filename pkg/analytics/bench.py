"""
Benchmark harness
Runs every (dataset, tau, algorithm, rule mask) cell and collects RunRecords.
Cells are independent solver runs, so they may go to a process pool; the
report itself is assembled by the calling process only.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from core.eba import run_eba
from core.errors import FlexiError
from core.flexi_math import Tau
from core.fpa import run_fpa
from core.graph_core import Graph
from core.oracle import DEFAULT_NODE_CAP, brute_force_max_flexi
from integration.edge_list_feed import load_dataset
from monitoring.run_logger import NO_MASK, RunLogger, RunRecord, failed_record, record_from_result
from solver_config import BenchConfig, RuleSet, SolverConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchCell:
    dataset: str
    tau: Tau
    algorithm: str
    rulemask: str = NO_MASK


def plan_cells(datasets: Sequence[str], taus: Sequence[Tau], config: BenchConfig) -> List[BenchCell]:
    """Cells in report order: dataset, then tau, then algorithm, then rule mask"""
    cells = []
    for dataset in datasets:
        for tau in taus:
            for algorithm in config.algorithms:
                if algorithm != "eba":
                    cells.append(BenchCell(dataset, tau, algorithm))
                    continue
                rule_sets = config.solver.rules.ablations() if config.ablation else [config.solver.rules]
                for rules in rule_sets:
                    cells.append(BenchCell(dataset, tau, algorithm, rules.mask))
    return cells


def run_cell(cell: BenchCell, graph: Graph, solver: SolverConfig) -> RunRecord:
    """One solver run; failures come back as a record instead of an exception"""
    try:
        if cell.algorithm == "fpa":
            result = run_fpa(graph, cell.tau, debug_checks=solver.debug_checks)
            return record_from_result(cell.dataset, graph, cell.tau, result)
        if cell.algorithm == "oracle":
            result = brute_force_max_flexi(graph, cell.tau)
            return record_from_result(cell.dataset, graph, cell.tau, result)
        config = replace(solver, rules=RuleSet.from_mask(cell.rulemask))
        result, stats = run_eba(graph, cell.tau, config)
        return record_from_result(cell.dataset, graph, cell.tau, result, stats, cell.rulemask)
    except (FlexiError, ValueError, RuntimeError) as exc:
        return failed_record(cell.dataset, cell.tau, cell.algorithm, cell.rulemask,
                             f"{type(exc).__name__}: {exc}", n=graph.n, m=graph.m)


def _load_all(datasets: Sequence[str], data_dir: Optional[Path]) -> Dict[str, Graph]:
    graphs = {}
    for name in datasets:
        try:
            graphs[name] = load_dataset(name, data_dir)
        except FlexiError as exc:
            logger.warning(f"Skipping dataset {name}: {exc}")
    return graphs


def run_bench(datasets: Sequence[str], taus: Sequence[Tau], config: Optional[BenchConfig] = None,
              data_dir: Optional[Path] = None) -> RunLogger:
    """Run the full grid; parsing happens up front and is never part of a cell's timing"""
    config = config or BenchConfig()
    run_logger = RunLogger()
    graphs = _load_all(datasets, data_dir)

    cells = []
    for cell in plan_cells(datasets, taus, config):
        graph = graphs.get(cell.dataset)
        if graph is None:
            run_logger.log_run(failed_record(cell.dataset, cell.tau, cell.algorithm, cell.rulemask,
                                             "dataset could not be loaded"))
            continue
        if cell.algorithm == "oracle" and graph.n > DEFAULT_NODE_CAP:
            logger.warning(f"Skipping oracle on {cell.dataset}: {graph.n} nodes exceed the cap")
            continue
        cells.append(cell)

    logger.info(f"Bench: {len(cells)} cells over {len(graphs)} datasets, {config.workers} worker(s)")
    if config.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(run_cell, cell, graphs[cell.dataset], config.solver) for cell in cells]
            records = [future.result() for future in futures]
    else:
        records = [run_cell(cell, graphs[cell.dataset], config.solver) for cell in cells]

    for record in records:
        run_logger.log_run(record)
    return run_logger
