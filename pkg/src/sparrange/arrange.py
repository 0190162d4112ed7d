"""Recursive arrangement of a series-parallel graph over its minimal SP-tree.

Every component is laid out source first, sink second, then its remaining
nodes. Leaves use the zigzag order 1, k, 2, k-1, ...; parallel components put
a biggest child last; series components put a biggest child P_a last and flip
the children after it.

The per-component work only decides an order of child blocks (``parallel_plan``
and ``series_plan``). ``arrange_parallel``/``arrange_series`` apply a plan to
plain lists. ``arrange`` applies the same plans to ropes so a whole tree is
laid out in time linear in its size.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

from .graph import Arrangement, gc_paused
from .sptree import LEAF, SERIES, NotMinimal, SPNode, _leaf_label_ends, validate_minimal

LocalOrder = List[str]


class ChainMismatch(ValueError):
    pass


def biggest(sizes: Sequence[int]) -> int:
    """Index of a biggest child; ties go to the largest index."""
    top = max(sizes)
    for i in range(len(sizes) - 1, -1, -1):
        if sizes[i] == top:
            return i
    raise ValueError("no sizes given")


def parallel_plan(sizes: Sequence[int]) -> List[int]:
    """Child order for a parallel component: given order, a biggest child moved last."""
    a = biggest(sizes)
    order = list(range(len(sizes)))
    del order[a]
    order.append(a)
    return order


def series_plan(sizes: Sequence[int]) -> List[Tuple[int, bool]]:
    """Child blocks ``(index, flipped)`` for a series component.

    P_1..P_{a-1} in order, then P_m down to P_{a+1} flipped, then P_a.
    """
    m = len(sizes)
    a = biggest(sizes)
    plan = [(i, False) for i in range(a)]
    plan.extend((i, True) for i in range(m - 1, a, -1))
    plan.append((a, False))
    return plan


def zigzag(n: int) -> List[int]:
    """Indices 0..n-1 in the order 0, n-1, 1, n-2, ..."""
    out = []
    lo, hi = 0, n - 1
    while lo <= hi:
        out.append(lo)
        if lo != hi:
            out.append(hi)
        lo += 1
        hi -= 1
    return out


def arrange_sns(path: Sequence[str]) -> LocalOrder:
    """Zigzag order of a simple node sequence given as its nodes source..sink."""
    if len(path) < 2:
        raise ValueError("a simple node sequence has at least two nodes")
    return [path[i] for i in zigzag(len(path))]


def arrange_parallel(children: Sequence[LocalOrder]) -> LocalOrder:
    if len(children) < 2:
        raise ValueError("a parallel component has at least two children")
    u, v = children[0][0], children[0][1]
    for c in children:
        if c[0] != u or c[1] != v:
            raise ChainMismatch("children of a parallel component must share source and sink")
    out = [u, v]
    for i in parallel_plan([len(c) for c in children]):
        out.extend(children[i][2:])
    return out


def arrange_series(children: Sequence[LocalOrder]) -> LocalOrder:
    """Combine child orders given in chain order (sink of child i is source of child i+1)."""
    m = len(children)
    if m < 2:
        raise ValueError("a series component has at least two children")
    for i in range(m - 1):
        if children[i][1] != children[i + 1][0]:
            raise ChainMismatch(f"sink of child {i} is not the source of child {i + 1}")
    out = [children[0][0], children[-1][1]]
    for i, flipped in series_plan([len(c) for c in children]):
        block = children[i][2:] if i == 0 else [children[i][0]] + children[i][2:]
        out.extend(reversed(block) if flipped else block)
    return out


# -- whole-tree layout -----------------------------------------------------
# A rope is either a list of node indices or a tuple of (rope, reversed) parts.

def _flatten(rope, out: List[int]) -> None:
    stack = [(rope, False)]
    while stack:
        r, rev = stack.pop()
        if isinstance(r, list):
            out.extend(reversed(r) if rev else r)
        elif rev:
            for part, flag in r:
                stack.append((part, not flag))
        else:
            for part, flag in reversed(r):
                stack.append((part, flag))


def _zig(nodes: List[int]) -> List[int]:
    half = (len(nodes) + 1) // 2
    out = nodes[:]
    out[0::2] = nodes[:half]
    out[1::2] = nodes[:half - 1:-1] if half < len(nodes) else []
    return out


def arrange_order(root: SPNode) -> Tuple[List[int], List[str]]:
    """Arrangement of ``root`` as node indices left to right, plus the index -> id table.

    Node indices and ids agree with ``layout``; the pass skips everything the
    arrangement does not need.
    """
    problem = validate_minimal(root)
    if problem is not None:
        raise NotMinimal(problem)
    ends = _leaf_label_ends(root)
    names: List[str] = list(ends[id(root)]) if ends else ["s", "t"]
    pending: List[Tuple[int, int]] = []  # (tree node, created count) for generated ids
    # finished components as (interior rope, node count, source index)
    done: List[tuple] = []
    # entries are (node, source, sink) or (None, kind, child count) once the children are done
    stack: List[tuple] = [(root, 0, 1)]
    idx = -1
    while stack:
        node, s, t = stack.pop()
        if node is None:
            got = done[-t:]
            del done[-t:]
            sizes = [r[1] for r in got]
            if s == SERIES:
                parts = []
                for i, flipped in series_plan(sizes):
                    inner, _, src = got[i]
                    parts.append((inner if i == 0 else (([src], False), (inner, False)), flipped))
                done.append((tuple(parts), sum(sizes) - t + 1, got[0][2]))
            else:
                parts = [(got[i][0], False) for i in parallel_plan(sizes)]
                done.append((tuple(parts), sum(sizes) - 2 * t + 2, got[0][2]))
            continue
        idx += 1
        kind = node.kind
        if kind == LEAF:
            base = len(names)
            k = node.k
            if ends:
                names.extend(node.path[1:k])
            else:
                names.extend([""] * (k - 1))
                pending.append((idx, k - 1))
            created = list(range(base, base + k - 1))
            done.append((created if k <= 3 else _zig(created), k + 1, s))
            continue
        kids = node.children
        m = len(kids)
        stack.append((None, kind, m))
        if kind == SERIES:
            base = len(names)
            if ends:
                names.extend(ends[id(kids[j])][0] for j in range(1, m))
            else:
                names.extend([""] * (m - 1))
                pending.append((idx, m - 1))
            chain = [s] + list(range(base, base + m - 1)) + [t]
            for i in range(m - 1, -1, -1):
                stack.append((kids[i], chain[i], chain[i + 1]))
        else:
            for child in reversed(kids):
                stack.append((child, s, t))
    order = [0, 1]
    _flatten(done[0][0], order)
    if pending:
        names = names[:2]
        for idx, count in pending:
            names.extend([f"n{idx}.{j}" for j in range(1, count + 1)])
    return order, names


def arrange(root: SPNode) -> Arrangement:
    """Arrangement of the graph ``expand(root)``; root source at 1, root sink at 2."""
    with gc_paused():
        order, names = arrange_order(root)
        return Arrangement(dict(zip(map(names.__getitem__, order), range(1, len(order) + 1))))
