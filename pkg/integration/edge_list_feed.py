"""
Edge List Feed
Reads whitespace-separated edge lists (KONECT/SNAP style), resolves dataset
names to files or built-in graphs, and writes generated graphs back out.
"""

import logging
import os
import re
from pathlib import Path
from typing import Callable, Dict, Hashable, Iterable, List, Optional, TextIO, Tuple, Union

import networkx as nx

from core.errors import GraphInputError
from core.graph_core import (
    Graph,
    build_graph_counted,
    connected_components,
    core_decomposition,
    graph_from_networkx,
)

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")
_INT_RE = re.compile(r"^[+-]?\d+$")


def _node_id(token: str) -> Hashable:
    return int(token) if _INT_RE.match(token) else token


def parse_edge_list(stream: Iterable[str], source: str = "<stream>") -> Graph:
    """One pair per line; '#'/'%' lines are comments and columns past the second are ignored"""
    pairs: List[Tuple[Hashable, Hashable]] = []
    for line_number, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith(COMMENT_PREFIXES):
            continue
        tokens = text.split()
        if len(tokens) < 2:
            raise GraphInputError(f"{source}: line {line_number}: expected two node ids, got {text!r}")
        pairs.append((_node_id(tokens[0]), _node_id(tokens[1])))

    graph, loops, duplicates = build_graph_counted(pairs)
    logger.info(f"Loaded {source}: n={graph.n}, m={graph.m} "
                f"(dropped {loops} self-loops, {duplicates} duplicate edges)")
    return graph


def read_edge_list(path: Union[str, Path]) -> Graph:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            return parse_edge_list(handle, source=str(path))
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise GraphInputError(f"{path} is not UTF-8 text: {exc}") from exc


def _karate() -> Graph:
    return graph_from_networkx(nx.karate_club_graph())


BUILTIN_DATASETS: Dict[str, Callable[[], Graph]] = {
    "karate": _karate,
}


def _candidate_paths(name: str, data_dir: Path) -> List[Path]:
    return [
        data_dir / name,
        data_dir / f"{name}.txt",
        data_dir / f"{name}.edges",
        data_dir / f"out.{name}",
        data_dir / name / f"out.{name}",
    ]


def resolve_dataset(name: str, data_dir: Optional[Path] = None) -> Optional[Path]:
    """File backing a dataset name, or None for built-ins and missing data"""
    if name in BUILTIN_DATASETS:
        return None
    direct = Path(name)
    if direct.is_file():
        return direct
    data_dir = data_dir or Path(os.getenv("FLEXI_DATA_DIR", "data"))
    for candidate in _candidate_paths(name, data_dir):
        if candidate.is_file():
            return candidate
    return None


def load_dataset(name: str, data_dir: Optional[Path] = None) -> Graph:
    """Built-in name, file path, or a name looked up under the data directory"""
    if name in BUILTIN_DATASETS:
        graph = BUILTIN_DATASETS[name]()
        logger.info(f"Loaded built-in dataset {name}: n={graph.n}, m={graph.m}")
        return graph
    path = resolve_dataset(name, data_dir)
    if path is None:
        logger.warning(f"Dataset {name!r} not found (data dir {data_dir or os.getenv('FLEXI_DATA_DIR', 'data')})")
        raise GraphInputError(f"unknown dataset {name!r}")
    return read_edge_list(path)


def write_edge_list(graph: Graph, target: Union[str, Path, TextIO], header: Optional[List[str]] = None):
    """Write a '%' comment header then one 'u v' pair per line using external ids"""
    lines = [f"% {text}" for text in (header or [])]
    lines.append(f"% n={graph.n} m={graph.m}")
    lines.extend(f"{graph.label(u)} {graph.label(v)}" for u, v in graph.edges())
    body = "\n".join(lines) + "\n"

    if isinstance(target, (str, Path)):
        Path(target).write_text(body, encoding="utf-8")
        logger.info(f"Wrote {graph.m} edges to {target}")
    else:
        target.write(body)


def describe_graph(graph: Graph) -> Dict[str, Union[int, float]]:
    """Dataset statistics: size, average degree, transitivity, components, largest core"""
    components = connected_components(graph)
    return {
        "n": graph.n,
        "m": graph.m,
        "avg_degree": round(2 * graph.m / graph.n, 4) if graph.n else 0.0,
        "transitivity": round(nx.transitivity(graph.to_networkx()), 4) if graph.n else 0.0,
        "components": len(components),
        "lcc_size": max((len(c) for c in components), default=0),
        "max_core": core_decomposition(graph).max_core,
    }
