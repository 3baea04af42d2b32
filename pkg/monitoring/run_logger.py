"""
Run Logger
Collects one RunRecord per solver run and exports them as CSV (fixed column
order) or JSON, plus pandas summaries for heuristic quality and rule ablations.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional, TextIO, Union

import pandas as pd
from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

FULL_MASK = "111111S"
NO_MASK = "-"

CSV_COLUMNS = [
    "dataset", "n", "m", "tau", "algorithm", "rulemask", "size", "runtime_ms", "explored",
    "prunes_r1", "prunes_r2", "prunes_r3", "prunes_r4", "prunes_r5", "prunes_r6",
    "optimal", "error",
]


class RunStats(BaseModel):
    """Search counters of an exact run"""
    explored_nodes: int = 0
    prunes_rule1: int = 0
    prunes_rule2: int = 0
    prunes_rule3: int = 0
    prunes_rule4: int = 0
    prunes_rule5: int = 0
    prunes_rule6: int = 0
    prunes_scope_bound: int = 0
    incumbent_updates: int = 0
    invariant_checks: int = 0


class RunRecord(BaseModel):
    dataset: str
    n: int
    m: int
    tau: str
    algorithm: Literal["fpa", "eba", "oracle"]
    rulemask: str = NO_MASK
    size: int
    members: List[Union[int, str]] = Field(default_factory=list)
    runtime_ms: float = 0.0
    stats: Optional[RunStats] = None
    optimal: bool = False
    timed_out: bool = False
    min_degree: int = 0
    density: float = 0.0
    error: Optional[str] = None

    @model_validator(mode="after")
    def _check_size(self) -> "RunRecord":
        if self.error is None and self.size != len(self.members):
            raise ValueError(f"size {self.size} does not match {len(self.members)} members")
        if self.timed_out and self.optimal:
            raise ValueError("a timed-out run cannot be marked optimal")
        return self

    def csv_row(self) -> Dict[str, Any]:
        stats = self.stats or RunStats()
        row = {
            "dataset": self.dataset,
            "n": self.n,
            "m": self.m,
            "tau": self.tau,
            "algorithm": self.algorithm,
            "rulemask": self.rulemask,
            "size": self.size,
            "runtime_ms": round(self.runtime_ms, 3),
            "explored": stats.explored_nodes if self.stats else 0,
            "optimal": self.optimal,
            "error": self.error or "",
        }
        for rule in range(1, 7):
            row[f"prunes_r{rule}"] = getattr(stats, f"prunes_rule{rule}")
        return row


def record_from_result(dataset: str, graph, tau, result, stats=None, rulemask: str = NO_MASK) -> RunRecord:
    """RunRecord for a FlexiResult; members go out as external ids"""
    return RunRecord(
        dataset=dataset,
        n=graph.n,
        m=graph.m,
        tau=str(tau),
        algorithm=result.algorithm_tag,
        rulemask=rulemask,
        size=result.size,
        members=result.external_members(graph),
        runtime_ms=result.runtime_ms,
        stats=RunStats(**stats.as_dict()) if stats is not None else None,
        optimal=bool(result.optimal),
        timed_out=result.timed_out,
        min_degree=result.min_degree,
        density=round(result.density, 6),
    )


def failed_record(dataset: str, tau, algorithm: str, rulemask: str, error: str,
                  n: int = 0, m: int = 0) -> RunRecord:
    return RunRecord(dataset=dataset, n=n, m=m, tau=str(tau), algorithm=algorithm,
                     rulemask=rulemask, size=-1, optimal=False, error=error)


def records_to_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.csv_row() for r in records], columns=CSV_COLUMNS)


def records_to_json(records: Iterable[RunRecord]) -> str:
    return json.dumps([r.model_dump(mode="json") for r in records], indent=2)


def records_from_json(text: str) -> List[RunRecord]:
    return [RunRecord.model_validate(item) for item in json.loads(text)]


def quality_table(frame: pd.DataFrame) -> pd.DataFrame:
    """FPA size over EBA size per (dataset, tau)"""
    ok = frame[(frame["error"] == "") & (frame["rulemask"].isin([NO_MASK, FULL_MASK]))]
    sizes = ok[ok["algorithm"].isin(["fpa", "eba"])].pivot_table(
        index=["dataset", "tau"], columns="algorithm", values="size", aggfunc="max")
    if sizes.empty or not {"fpa", "eba"} <= set(sizes.columns):
        return pd.DataFrame(columns=["dataset", "tau", "fpa", "eba", "ratio"])
    sizes["ratio"] = (sizes["fpa"] / sizes["eba"].where(sizes["eba"] > 0)).fillna(1.0)
    return sizes.reset_index()[["dataset", "tau", "fpa", "eba", "ratio"]]


def ablation_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Every EBA rule mask against the full rule set on the same (dataset, tau)"""
    eba = frame[(frame["algorithm"] == "eba") & (frame["error"] == "")]
    full = eba[eba["rulemask"] == FULL_MASK].set_index(["dataset", "tau"])
    columns = ["dataset", "tau", "rulemask", "size", "size_matches", "runtime_ratio", "explored_ratio"]
    if full.empty:
        return pd.DataFrame(columns=columns)

    merged = eba.join(full[["size", "runtime_ms", "explored"]], on=["dataset", "tau"], rsuffix="_full")
    merged = merged.dropna(subset=["size_full"])
    merged["size_matches"] = merged["size"] == merged["size_full"]
    merged["runtime_ratio"] = merged["runtime_ms"] / merged["runtime_ms_full"].where(merged["runtime_ms_full"] > 0)
    merged["explored_ratio"] = merged["explored"] / merged["explored_full"].where(merged["explored_full"] > 0)
    return merged[columns].reset_index(drop=True)


def tau_sweep_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Solution size per tau, one column per algorithm"""
    ok = frame[(frame["error"] == "") & (frame["rulemask"].isin([NO_MASK, FULL_MASK]))]
    if ok.empty:
        return pd.DataFrame(columns=["dataset", "tau"])
    return ok.pivot_table(index=["dataset", "tau"], columns="algorithm",
                          values="size", aggfunc="max").reset_index()


class RunLogger:
    """In-memory collector for run records with CSV/JSON export"""

    def __init__(self):
        self.records: List[RunRecord] = []

    def log_run(self, record: RunRecord) -> None:
        self.records.append(record)
        if record.error:
            logger.error(f"{record.dataset} tau={record.tau} {record.algorithm} "
                         f"[{record.rulemask}] failed: {record.error}")
        else:
            logger.info(f"{record.dataset} tau={record.tau} {record.algorithm} [{record.rulemask}]: "
                        f"size={record.size}, {record.runtime_ms:.2f} ms")

    def frame(self) -> pd.DataFrame:
        return records_to_frame(self.records)

    def export(self, target: Union[str, Path, TextIO], format: str = "csv") -> None:
        """Write every record as CSV or JSON to a path or open stream"""
        if format.lower() == "json":
            body = records_to_json(self.records) + "\n"
        elif format.lower() == "csv":
            body = self.frame().to_csv(index=False)
        else:
            raise ValueError(f"unknown export format {format!r}")

        if isinstance(target, (str, Path)):
            Path(target).write_text(body, encoding="utf-8")
        else:
            target.write(body)

    def generate_report(self) -> Dict[str, pd.DataFrame]:
        frame = self.frame()
        return {
            "quality": quality_table(frame),
            "ablation": ablation_table(frame),
            "tau_sweep": tau_sweep_table(frame),
        }
