"""Undirected multigraphs with terminals, linear arrangements and their cost."""
from __future__ import annotations

import gc
from collections import defaultdict, deque
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Iterable, List, Mapping, Optional, Sequence, Tuple

Edge = Tuple[str, str]


class GraphError(ValueError):
    pass


class DisconnectedInput(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Multigraph with optional source/sink terminals.

    ``edges`` keeps multiplicity: the same pair may appear several times and
    each occurrence is a distinct edge (addressed by its index).
    """

    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    source: Optional[str] = None
    sink: Optional[str] = None
    _index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        index = {v: i for i, v in enumerate(nodes)}
        if len(index) != len(nodes):
            raise GraphError("duplicate node id")
        object.__setattr__(self, "_index", index)
        for u, v in edges:
            if u not in index or v not in index:
                raise GraphError(f"edge {u}-{v} has an endpoint outside the node set")
            if u == v:
                raise GraphError(f"self-loop at {u}")
        if (self.source is None) != (self.sink is None):
            raise GraphError("source and sink must be given together")
        if self.source is not None:
            if self.source == self.sink:
                raise GraphError("source and sink must differ")
            for t in (self.source, self.sink):
                if t not in index:
                    raise GraphError(f"terminal {t} is not a node")
        if nodes and not self._connected():
            raise DisconnectedInput("graph is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], source: Optional[str] = None,
                   sink: Optional[str] = None) -> "Graph":
        edges = [(str(u), str(v)) for u, v in edges]
        seen: Dict[str, None] = {}
        if source is not None:
            seen[source] = None
            seen[sink] = None
        for u, v in edges:
            seen.setdefault(u)
            seen.setdefault(v)
        return cls(tuple(seen), tuple(edges), source, sink)

    def with_terminals(self, source: str, sink: str) -> "Graph":
        return Graph(self.nodes, self.edges, source, sink)

    def _connected(self) -> bool:
        adj = self.adjacency
        start = self.source if self.source is not None else self.nodes[0]
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.nodes)

    @cached_property
    def adjacency(self) -> Dict[str, List[str]]:
        """Neighbour lists; a neighbour appears once per parallel edge."""
        adj: Dict[str, List[str]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, v: object) -> bool:
        return v in self._index


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Bijection node -> position in 1..n."""

    positions: Mapping[str, int]

    @classmethod
    def from_order(cls, order: Sequence[str]) -> "Arrangement":
        return cls({v: i for i, v in enumerate(order, start=1)})

    def order(self) -> List[str]:
        return sorted(self.positions, key=self.positions.__getitem__)

    def reversed(self) -> "Arrangement":
        n = len(self.positions)
        return Arrangement({v: n + 1 - p for v, p in self.positions.items()})

    def __getitem__(self, v: str) -> int:
        return self.positions[v]

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, v: object) -> bool:
        return v in self.positions

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return dict(self.positions) == dict(other.positions)


def max_degree(g: Graph) -> int:
    if not g.edges:
        return 0
    counts: Dict[str, int] = defaultdict(int)
    for u, v in g.edges:
        counts[u] += 1
        counts[v] += 1
    return max(counts.values())


def edge_length(arr: Arrangement, u: str, v: str) -> int:
    try:
        return abs(arr.positions[u] - arr.positions[v])
    except KeyError as exc:
        raise KeyError(f"unknown node {exc.args[0]!r}") from None


def arrangement_cost(g: Graph, arr: Arrangement) -> int:
    if len(arr) != len(g) or any(v not in arr for v in g.nodes):
        raise GraphError("arrangement domain does not match graph nodes")
    pos = arr.positions
    return sum(abs(pos[u] - pos[v]) for u, v in g.edges)


def validate_arrangement(g: Graph, arr: Arrangement) -> Optional[str]:
    """Return ``None`` if ``arr`` is a valid arrangement of ``g``, else a short reason."""
    n = len(g)
    seen = set()
    for v, p in arr.positions.items():
        if not isinstance(p, int) or not 1 <= p <= n:
            return f"position out of range: {v} -> {p}"
        if p in seen:
            return f"duplicate position {p}"
        seen.add(p)
    if len(arr) != n or any(v not in arr for v in g.nodes):
        return "domain mismatch"
    return None


def parse_edge_list(text: str) -> Graph:
    """Read the line-oriented edge format.

    An optional ``# terminals <source> <sink>`` line designates the terminals;
    every other non-empty, non-comment line is ``<u> <v>``.
    """
    source = sink = None
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "terminals":
                if len(parts) != 3:
                    raise GraphError(f"line {lineno}: expected '# terminals <source> <sink>'")
                source, sink = parts[1], parts[2]
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two node ids, got {line!r}")
        edges.append((parts[0], parts[1]))
    if not edges:
        raise GraphError("edge list is empty")
    return Graph.from_edges(edges, source, sink)


def format_edge_list(g: Graph) -> str:
    lines = []
    if g.source is not None:
        lines.append(f"# terminals {g.source} {g.sink}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


@contextmanager
def gc_paused() -> Iterator[None]:
    """Suspend the cyclic collector while building large acyclic structures.

    Generation-2 passes over millions of live tuples otherwise make linear
    passes look quadratic.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()
