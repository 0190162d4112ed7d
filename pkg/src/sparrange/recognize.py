"""Series-parallel recognition by exhaustive series and parallel reductions.

Each surviving edge of the shrinking graph carries a fragment: the SP-tree of
the subgraph it replaced, oriented from one endpoint to the other. Parallel
bundles are merged as soon as they appear; degree-2 nodes are then reduced in
order of their id.
"""
from __future__ import annotations

import heapq
from typing import Dict, List, Optional, Tuple

from .graph import Graph, GraphError, gc_paused
from .sptree import LEAF, PARALLEL, SERIES, SPNode, minimize


class NotSeriesParallel(ValueError):
    pass


class BadTerminals(GraphError):
    pass


class ReductionTrace(list):
    """Applied reductions in order.

    Entries are ``("parallel", u, v)`` or ``("series", w, u, v)`` where ``w``
    is the removed degree-2 node and ``u``/``v`` its former neighbours.
    """


class _Reducer:
    """Series/parallel reductions over dense node ranks.

    Node ranks follow sorted node ids, so popping the smallest rank from the
    heap breaks ties by smallest node id.
    """

    def __init__(self, g: Graph, terminals: Optional[Tuple[str, str]]) -> None:
        self.names = sorted(g.nodes)
        rank = {v: i for i, v in enumerate(self.names)}
        self.rank = rank
        n = len(self.names)
        self.protected = [False] * n
        for t in terminals or ():
            self.protected[rank[t]] = True
        # fragment payloads: (kind, [(fragment id, flipped), ...]); ends: (a, b) as ranks
        self.parts: List[Tuple[str, list]] = []
        self.ends: List[Tuple[int, int]] = []
        # smallest input edge index inside each fragment; orders P-children
        self.first: List[int] = []
        self.adj: List[Optional[Dict[int, int]]] = [{} for _ in range(n)]
        self.steps: List[tuple] = []
        self.heap: List[int] = []
        for i, (u, v) in enumerate(g.edges):
            self._attach(self._new(LEAF, [], rank[u], rank[v], i))
        self.heap = [v for v in range(n) if len(self.adj[v]) == 2 and not self.protected[v]]
        heapq.heapify(self.heap)

    def _new(self, kind: str, parts: list, a: int, b: int, first: int) -> int:
        self.parts.append((kind, parts))
        self.ends.append((a, b))
        self.first.append(first)
        return len(self.parts) - 1

    def _attach(self, f: int) -> None:
        adj = self.adj
        a, b = self.ends[f]
        old = adj[a].get(b)
        if old is None:
            adj[a][b] = f
            adj[b][a] = f
            return
        # parallel reduction; the bundle keeps the orientation of the older fragment
        oa, ob = self.ends[old]
        kind, parts = self.parts[old]
        flipped = oa != a
        if kind == PARALLEL:
            parts.append((f, flipped))
            if self.first[f] < self.first[old]:
                self.first[old] = self.first[f]
            merged = old
        else:
            merged = self._new(PARALLEL, [(old, False), (f, flipped)], oa, ob,
                               min(self.first[old], self.first[f]))
        adj[a][b] = merged
        adj[b][a] = merged
        self.steps.append(("parallel", a, b))
        for x in (a, b):
            if len(adj[x]) == 2 and not self.protected[x]:
                heapq.heappush(self.heap, x)

    def run(self) -> None:
        adj = self.adj
        ends = self.ends
        first = self.first
        protected = self.protected
        heap = self.heap
        while heap:
            w = heapq.heappop(heap)
            nb = adj[w]
            if nb is None or len(nb) != 2:
                continue
            (x, fx), (y, fy) = nb.items()
            # orient x -> w -> y
            left = (fx, ends[fx][0] != x)
            right = (fy, ends[fy][0] != w)
            f = self._new(SERIES, [left, right], x, y, min(first[fx], first[fy]))
            adj[w] = None
            del adj[x][w]
            del adj[y][w]
            self.steps.append(("series", w, x, y))
            self._attach(f)
            for z in (x, y):
                if len(adj[z]) == 2 and not protected[z]:
                    heapq.heappush(heap, z)

    @property
    def trace(self) -> ReductionTrace:
        names = self.names
        return ReductionTrace((step[0],) + tuple(names[v] for v in step[1:])
                              for step in self.steps)

    def remaining(self) -> List[str]:
        return [self.names[v] for v, nb in enumerate(self.adj) if nb is not None]

    def fragment(self, u: str, v: str) -> Optional[int]:
        nb = self.adj[self.rank[u]]
        return None if nb is None else nb.get(self.rank[v])

    def degree(self, v: str) -> int:
        nb = self.adj[self.rank[v]]
        return 0 if nb is None else len(nb)

    def fragment_ends(self, f: int) -> Tuple[str, str]:
        a, b = self.ends[f]
        return self.names[a], self.names[b]

    def build(self, f: int, flipped: bool = False) -> SPNode:
        """Materialize fragment ``f`` as an SP-tree, pushing flips down to leaves."""
        names = self.names
        # postorder over (fragment, flipped) with explicit stack
        stack: List[tuple] = [(f, flipped, False)]
        out: List[SPNode] = []
        while stack:
            fid, flip, ready = stack.pop()
            kind, parts = self.parts[fid]
            if kind == LEAF:
                a, b = self.ends[fid]
                out.append(SPNode(LEAF, 1, path=(names[b], names[a]) if flip
                                  else (names[a], names[b])))
                continue
            if ready:
                n = len(parts)
                kids = out[-n:]
                del out[-n:]
                out.append(SPNode(kind, 0, kids))
                continue
            stack.append((fid, flip, True))
            if kind == SERIES:
                seq = parts[::-1] if flip else parts
            else:
                seq = sorted(parts, key=lambda p: self.first[p[0]])
                parts[:] = seq
            for child, cflip in reversed(seq):
                stack.append((child, cflip ^ flip, False))
        return out[0]


def _check_terminals(g: Graph, source: str, sink: str) -> None:
    if source == sink:
        raise BadTerminals("source and sink must differ")
    for t in (source, sink):
        if t not in g:
            raise BadTerminals(f"terminal {t} is not a node")
        if g.degree(t) == 0:
            raise BadTerminals(f"terminal {t} has degree 0")


def decompose(g: Graph, source: Optional[str] = None, sink: Optional[str] = None,
              trace: Optional[ReductionTrace] = None) -> SPNode:
    """Minimal SP-tree of ``g`` with the given terminals (default: the graph's own).

    Leaves are labelled with their node paths in ``g``, so ``expand`` of the
    result reproduces ``g`` with its own ids.
    """
    if source is None and sink is None:
        source, sink = g.source, g.sink
    if source is None or sink is None:
        raise BadTerminals("terminals are required; use recognize_terminals to find some")
    _check_terminals(g, source, sink)
    with gc_paused():
        red = _Reducer(g, (source, sink))
        red.run()
        if trace is not None:
            trace.extend(red.trace)
        rest = red.remaining()
        if sorted(rest) != sorted((source, sink)) or red.degree(source) != 1:
            raise NotSeriesParallel(
                f"no reduction applies; {len(rest)} nodes remain between {source} and {sink}")
        f = red.fragment(source, sink)
        return minimize(red.build(f, red.fragment_ends(f)[0] != source))


def recognize_terminals(g: Graph) -> Tuple[str, str]:
    """A terminal pair for which ``g`` is two-terminal series-parallel.

    The pair is the one surviving full reduction; other valid pairs may exist.
    """
    red = _Reducer(g, None)
    red.run()
    rest = red.remaining()
    if len(rest) != 2:
        raise NotSeriesParallel(f"reduction is stuck with {len(rest)} nodes left")
    f = red.fragment(rest[0], rest[1])
    if f is None:
        raise NotSeriesParallel("the two remaining nodes are not adjacent")
    return red.fragment_ends(f)
