"""Run records, exports and summary tables"""

import io
import json

import pandas as pd
import pytest
from pydantic import ValidationError

from core.eba import run_eba
from core.fpa import run_fpa
from monitoring.run_logger import (
    CSV_COLUMNS,
    FULL_MASK,
    NO_MASK,
    RunLogger,
    RunRecord,
    ablation_table,
    failed_record,
    quality_table,
    record_from_result,
    records_from_json,
    records_to_frame,
    records_to_json,
)


def make_record(**overrides):
    values = dict(dataset="toy", n=6, m=9, tau="3/4", algorithm="eba", rulemask=FULL_MASK,
                  size=2, members=[0, 3], runtime_ms=1.0, optimal=True)
    values.update(overrides)
    return RunRecord(**values)


class TestRunRecord:
    def test_size_must_match_members(self):
        with pytest.raises(ValidationError):
            make_record(size=3)

    def test_timed_out_cannot_be_optimal(self):
        with pytest.raises(ValidationError):
            make_record(timed_out=True, optimal=True)

    def test_unknown_algorithm(self):
        with pytest.raises(ValidationError):
            make_record(algorithm="greedy")

    def test_failed_record(self):
        record = failed_record("toy", "1/2", "eba", FULL_MASK, "boom")
        assert record.size == -1
        assert record.csv_row()["error"] == "boom"
        assert not record.optimal

    def test_from_eba_result(self, k33, tau):
        result, stats = run_eba(k33, tau("3/4"))
        record = record_from_result("k33", k33, tau("3/4"), result, stats, FULL_MASK)
        assert record.tau == "3/4"
        assert record.size == 6
        assert record.stats.explored_nodes == stats.explored_nodes
        assert record.optimal

    def test_from_fpa_result_uses_external_ids(self, tau):
        from core.graph_core import build_graph
        graph = build_graph([("x", "y"), ("y", "z"), ("x", "z")])
        record = record_from_result("tri", graph, tau("1/2"), run_fpa(graph, tau("1/2")))
        assert sorted(record.members) == ["x", "y", "z"]
        assert record.rulemask == NO_MASK
        assert record.stats is None


class TestExport:
    def test_csv_column_order(self):
        frame = records_to_frame([make_record()])
        assert list(frame.columns) == CSV_COLUMNS
        assert frame.loc[0, "prunes_r6"] == 0

    def test_json_round_trip_keeps_members(self):
        records = [make_record(), make_record(dataset="other", members=["a", "b"])]
        restored = records_from_json(records_to_json(records))
        assert restored == records

    def test_export_to_stream_and_file(self, tmp_path):
        run_logger = RunLogger()
        run_logger.log_run(make_record())
        buffer = io.StringIO()
        run_logger.export(buffer, format="json")
        assert json.loads(buffer.getvalue())[0]["dataset"] == "toy"

        target = tmp_path / "report.csv"
        run_logger.export(target)
        assert pd.read_csv(target).loc[0, "size"] == 2

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            RunLogger().export(io.StringIO(), format="xml")


class TestTables:
    def test_quality_ratio(self):
        records = [
            make_record(algorithm="fpa", rulemask=NO_MASK, size=3, members=[0, 1, 2], optimal=False),
            make_record(size=4, members=[0, 1, 2, 3]),
        ]
        table = quality_table(records_to_frame(records))
        assert table.loc[0, "ratio"] == 0.75

    def test_quality_without_both_algorithms(self):
        table = quality_table(records_to_frame([make_record()]))
        assert table.empty

    def test_ablation_compares_against_full_mask(self):
        records = [
            make_record(runtime_ms=2.0),
            make_record(rulemask="011111S", runtime_ms=6.0),
        ]
        table = ablation_table(records_to_frame(records))
        row = table[table["rulemask"] == "011111S"].iloc[0]
        assert bool(row["size_matches"])
        assert row["runtime_ratio"] == 3.0

    def test_report_has_all_tables(self):
        run_logger = RunLogger()
        run_logger.log_run(make_record())
        assert set(run_logger.generate_report()) == {"quality", "ablation", "tau_sweep"}
