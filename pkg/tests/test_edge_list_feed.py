"""Edge-list parsing, dataset lookup and writing"""

import io

import pytest

from core.errors import GraphInputError
from integration.edge_list_feed import (
    describe_graph,
    load_dataset,
    parse_edge_list,
    read_edge_list,
    resolve_dataset,
    write_edge_list,
)


class TestParse:
    def test_comments_and_extra_columns(self):
        text = "% konect header\n# snap header\n1 2 1 1234\n2 3\n\n3 1\n"
        graph = parse_edge_list(io.StringIO(text))
        assert (graph.n, graph.m) == (3, 3)
        assert graph.labels == (1, 2, 3)

    def test_drops_loops_and_duplicates(self):
        graph = parse_edge_list(["0 0", "0 1", "1 0", "1 2"])
        assert (graph.n, graph.m) == (3, 2)

    def test_string_ids(self):
        graph = parse_edge_list(["alice bob", "bob carol"])
        assert graph.external(graph.nodes()) == ["alice", "bob", "carol"]

    def test_malformed_line_names_the_line(self):
        with pytest.raises(GraphInputError, match="line 2"):
            parse_edge_list(["0 1", "7"], source="bad.txt")

    def test_empty_input(self):
        graph = parse_edge_list([])
        assert (graph.n, graph.m) == (0, 0)


class TestDatasets:
    def test_builtin_karate(self):
        graph = load_dataset("karate")
        assert (graph.n, graph.m) == (34, 78)
        assert resolve_dataset("karate") is None

    def test_named_file_under_data_dir(self, tmp_path):
        (tmp_path / "polbooks").mkdir()
        (tmp_path / "polbooks" / "out.polbooks").write_text("1 2\n2 3\n")
        assert resolve_dataset("polbooks", tmp_path) == tmp_path / "polbooks" / "out.polbooks"
        assert load_dataset("polbooks", tmp_path).m == 2

    def test_txt_suffix(self, tmp_path):
        (tmp_path / "tiny.txt").write_text("0 1\n")
        assert load_dataset("tiny", tmp_path).n == 2

    def test_direct_path(self, tmp_path):
        path = tmp_path / "edges.tsv"
        path.write_text("0\t1\n1\t2\n")
        assert read_edge_list(path).m == 2
        assert load_dataset(str(path)).m == 2

    def test_env_data_dir(self, tmp_path, monkeypatch):
        (tmp_path / "football.edges").write_text("0 1\n")
        monkeypatch.setenv("FLEXI_DATA_DIR", str(tmp_path))
        assert load_dataset("football").m == 1

    def test_unknown_dataset(self, tmp_path):
        with pytest.raises(GraphInputError, match="unknown dataset"):
            load_dataset("does-not-exist", tmp_path)

    def test_unreadable_path(self, tmp_path):
        with pytest.raises(GraphInputError):
            read_edge_list(tmp_path / "missing.txt")

    def test_undecodable_bytes(self, tmp_path):
        path = tmp_path / "latin.txt"
        path.write_bytes(b"0 1\n\xff 2\n")
        with pytest.raises(GraphInputError, match="latin.txt"):
            read_edge_list(path)


class TestWrite:
    def test_header_and_pairs(self, k33):
        buffer = io.StringIO()
        write_edge_list(k33, buffer, ["model=test"])
        lines = buffer.getvalue().splitlines()
        assert lines[0] == "% model=test"
        assert lines[1] == "% n=6 m=9"
        assert lines[2] == "0 3"
        assert len(lines) == 11

    def test_written_file_reads_back(self, tmp_path, karate):
        target = tmp_path / "karate.txt"
        write_edge_list(karate, target)
        assert read_edge_list(target).adjacency == karate.adjacency


def test_describe(k33):
    stats = describe_graph(k33)
    assert stats["n"] == 6
    assert stats["m"] == 9
    assert stats["avg_degree"] == 3.0
    assert stats["transitivity"] == 0.0
    assert stats["components"] == 1
    assert stats["lcc_size"] == 6
    assert stats["max_core"] == 3
