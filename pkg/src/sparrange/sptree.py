"""SP-trees: text format, minimization, expansion into graphs and component views.

Every traversal here is iterative; recognized trees of long paths can be as
deep as the number of edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import Graph

LEAF, SERIES, PARALLEL = "L", "S", "P"


class TreeError(ValueError):
    pass


class TreeSyntaxError(TreeError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NotMinimal(TreeError):
    pass


class SPNode:
    """One node of an SP-tree: ``L(k)`` leaf, or an S/P node with ordered children.

    A leaf may carry ``path``, the ids of its k+1 graph nodes from source to
    sink. Trees recognized from a graph are labelled this way so that their
    expansion reuses the graph's ids; labels never affect equality or text.
    """

    __slots__ = ("kind", "k", "children", "path")

    def __init__(self, kind: str, k: int = 0, children: Sequence["SPNode"] = (),
                 path: Optional[Tuple[str, ...]] = None) -> None:
        if kind == LEAF:
            if children:
                raise TreeError("L-node cannot have children")
            if not isinstance(k, int) or k < 1:
                raise TreeError(f"L-node needs k >= 1, got {k!r}")
            if path is not None and len(path) != k + 1:
                raise TreeError(f"L({k}) needs {k + 1} path labels, got {len(path)}")
        elif kind in (SERIES, PARALLEL):
            if len(children) < 2:
                raise TreeError(f"{kind}-node needs at least two children")
            k = 0
            path = None
        else:
            raise TreeError(f"unknown node kind {kind!r}")
        self.kind = kind
        self.k = k
        self.children: Tuple[SPNode, ...] = tuple(children)
        self.path = tuple(path) if path is not None else None

    @classmethod
    def leaf(cls, k: int) -> "SPNode":
        return cls(LEAF, k)

    @classmethod
    def series(cls, *children: "SPNode") -> "SPNode":
        return cls(SERIES, 0, children)

    @classmethod
    def parallel(cls, *children: "SPNode") -> "SPNode":
        return cls(PARALLEL, 0, children)

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SPNode):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a.kind != b.kind or a.k != b.k or len(a.children) != len(b.children):
                return False
            stack.extend(zip(a.children, b.children))
        return True

    def __hash__(self) -> int:
        return hash(serialize_tree(self))

    def __repr__(self) -> str:
        text = serialize_tree(self)
        if len(text) > 80:
            text = text[:77] + "..."
        return f"SPNode({text})"

    def __str__(self) -> str:
        return serialize_tree(self)


# A tree is represented by its root node.
SPTree = SPNode


def iter_preorder(root: SPNode):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def tree_edge_count(root: SPNode) -> int:
    return sum(n.k for n in iter_preorder(root) if n.kind == LEAF)


def tree_node_count(root: SPNode) -> int:
    """Number of graph nodes in the expansion, computed without expanding."""
    sizes: Dict[int, int] = {}
    for node in _postorder(root):
        if node.kind == LEAF:
            sizes[id(node)] = node.k + 1
        elif node.kind == SERIES:
            sizes[id(node)] = sum(sizes[id(c)] - 1 for c in node.children) + 1
        else:
            sizes[id(node)] = sum(sizes[id(c)] - 2 for c in node.children) + 2
    return sizes[id(root)]


def _postorder(root: SPNode) -> List[SPNode]:
    out = list(iter_preorder_rev(root))
    out.reverse()
    return out


def iter_preorder_rev(root: SPNode):
    # root, then children right-to-left; reversed, this is a postorder
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


# -- text format -----------------------------------------------------------

def parse_tree(text: str) -> SPNode:
    """Parse ``L(k)``, ``S(t, t, ...)`` and ``P(t, t, ...)``; whitespace is ignored."""
    data = text.encode() if isinstance(text, str) else bytes(text)
    n = len(data)
    i = 0

    def skip(j: int) -> int:
        while j < n and data[j] in b" \t\r\n":
            j += 1
        return j

    # frames: [kind, children, offset of the kind letter]
    stack: List[list] = []
    result: Optional[SPNode] = None
    i = skip(i)
    while True:
        if i >= n:
            raise TreeSyntaxError("unexpected end of input", i)
        ch = data[i:i + 1]
        if ch not in (b"L", b"S", b"P"):
            raise TreeSyntaxError(f"expected 'L', 'S' or 'P', found {ch.decode(errors='replace')!r}", i)
        start = i
        i = skip(i + 1)
        if i >= n or data[i:i + 1] != b"(":
            raise TreeSyntaxError("expected '('", i)
        i = skip(i + 1)
        if ch == b"L":
            j = i
            while j < n and data[j:j + 1].isdigit():
                j += 1
            if j == i:
                raise TreeSyntaxError("expected integer", i)
            k = int(data[i:j])
            if k < 1:
                raise TreeSyntaxError("L-node needs k >= 1", i)
            i = skip(j)
            if i >= n or data[i:i + 1] != b")":
                raise TreeSyntaxError("expected ')'", i)
            i += 1
            node = SPNode(LEAF, k)
            # close every frame this node completes
            while True:
                if not stack:
                    result = node
                    break
                frame = stack[-1]
                frame[1].append(node)
                i = skip(i)
                if i < n and data[i:i + 1] == b",":
                    i = skip(i + 1)
                    break
                if i < n and data[i:i + 1] == b")":
                    i += 1
                    stack.pop()
                    kind, children, off = frame
                    if len(children) < 2:
                        raise TreeSyntaxError(f"{kind}-node needs at least two children", off)
                    node = SPNode(kind, 0, children)
                    continue
                raise TreeSyntaxError("expected ',' or ')'", i)
            if result is not None:
                break
        else:
            stack.append([ch.decode(), [], start])
    i = skip(i)
    if i != n:
        raise TreeSyntaxError("trailing characters", i)
    return result


def serialize_tree(root: SPNode) -> str:
    out: List[str] = []
    stack: List[object] = [root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if item.kind == LEAF:
            out.append(f"L({item.k})")
            continue
        out.append(item.kind + "(")
        stack.append(")")
        for pos, child in enumerate(reversed(item.children)):
            stack.append(child)
            if pos != len(item.children) - 1:
                stack.append(",")
    return "".join(out)


# -- minimality ------------------------------------------------------------

def minimize(root: SPNode) -> SPNode:
    """Rewrite ``root`` into a minimal SP-tree describing the same graph.

    Nested same-kind nodes are spliced into their parent, runs of L-children
    under an S-node become one L-node with the summed length, and an S-node
    left with a single L-child collapses into it.
    """
    done: Dict[int, SPNode] = {}
    for node in _postorder(root):
        if node.kind == LEAF:
            done[id(node)] = node
            continue
        kids: List[SPNode] = []
        for child in node.children:
            c = done.pop(id(child))
            if c.kind == node.kind:
                kids.extend(c.children)
            else:
                kids.append(c)
        if node.kind == SERIES:
            merged: List[SPNode] = []
            for c in kids:
                if c.kind == LEAF and merged and merged[-1].kind == LEAF:
                    prev = merged[-1]
                    path = None
                    if prev.path is not None and c.path is not None:
                        path = prev.path + c.path[1:]
                    merged[-1] = SPNode(LEAF, prev.k + c.k, path=path)
                else:
                    merged.append(c)
            kids = merged
        if len(kids) == 1:
            done[id(node)] = kids[0]
        elif len(kids) == len(node.children) and all(a is b for a, b in zip(kids, node.children)):
            done[id(node)] = node
        else:
            done[id(node)] = SPNode(node.kind, 0, kids)
    return done[id(root)]


def validate_minimal(root: SPNode) -> Optional[str]:
    """``None`` when ``root`` is minimal, otherwise the first violation found."""
    for node in iter_preorder(root):
        if node.kind == SERIES:
            if any(c.kind == SERIES for c in node.children):
                return f"S-node under S-node: {_short(node)}"
            if not any(c.kind == PARALLEL for c in node.children):
                return f"S-node without a P-child: {_short(node)}"
        elif node.kind == PARALLEL:
            if any(c.kind == PARALLEL for c in node.children):
                return f"P-node under P-node: {_short(node)}"
    return None


def _short(node: SPNode) -> str:
    text = serialize_tree(node)
    return text if len(text) <= 60 else text[:57] + "..."


# -- expansion -------------------------------------------------------------

class ComponentView:
    """A tree node together with the subgraph it induces.

    ``own_nodes`` are the nodes created at this level (interior path nodes of a
    leaf, junction nodes of an S-node); ``nodes`` and ``edge_ids`` are the
    full induced sets and are computed on first access.
    """

    def __init__(self, index: int, tree: SPNode, graph: Graph, source: str, sink: str,
                 children: Tuple["ComponentView", ...], own_nodes: Tuple[str, ...],
                 own_edges: Tuple[int, ...], size: int) -> None:
        self.index = index
        self.tree = tree
        self.graph = graph
        self.source = source
        self.sink = sink
        self.children = children
        self.own_nodes = own_nodes
        self.own_edges = own_edges
        self.size = size

    @property
    def kind(self) -> str:
        return self.tree.kind

    @cached_property
    def nodes(self) -> frozenset:
        out = set(self.own_nodes)
        out.add(self.source)
        out.add(self.sink)
        for c in self.children:
            out |= c.nodes
        return frozenset(out)

    @cached_property
    def edge_ids(self) -> Tuple[int, ...]:
        if not self.children:
            return self.own_edges
        out: List[int] = []
        for c in self.children:
            out.extend(c.edge_ids)
        return tuple(out)

    @property
    def edges(self) -> List[Tuple[str, str]]:
        es = self.graph.edges
        return [es[i] for i in self.edge_ids]

    @property
    def path(self) -> Tuple[str, ...]:
        """Node sequence source..sink of a leaf."""
        if self.kind != LEAF:
            raise TreeError("only L-components are paths")
        return (self.source,) + self.own_nodes + (self.sink,)

    @property
    def size_minus_sink(self) -> int:
        return self.size - 1

    @property
    def size_interior(self) -> int:
        return self.size - 2

    def walk(self):
        """All views of this subtree in preorder."""
        stack = [self]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(v.children))

    def __repr__(self) -> str:
        return f"ComponentView(#{self.index} {self.kind} {self.source}->{self.sink}, |C|={self.size})"


@dataclass
class Layout:
    """Flat, integer-indexed expansion of a tree (preorder numbering of tree nodes).

    Shared by ``expand`` and the arrangement code, which never needs string ids
    until the very end.
    """

    tree_nodes: List[SPNode]
    parent: List[int]
    children: List[List[int]]
    source: List[int]
    sink: List[int]
    own: List[List[int]]
    names: List[str]
    edges: List[Tuple[int, int]]
    leaf_edges: Dict[int, Tuple[int, int]]


def layout(root: SPNode) -> Layout:
    """Expand ``root`` by series/parallel composition into integer-labelled nodes.

    Node ids: root terminals are ``s`` and ``t``; every other node is
    ``n<i>.<j>``, the j-th node created by the tree node with preorder index i.
    If every leaf carries a ``path``, those labels are used instead.
    """
    ends = _leaf_label_ends(root)
    names = list(ends[id(root)]) if ends else ["s", "t"]
    tree_nodes: List[SPNode] = []
    parent: List[int] = []
    children: List[List[int]] = []
    src: List[int] = []
    snk: List[int] = []
    own: List[List[int]] = []
    edges: List[Tuple[int, int]] = []
    leaf_edges: Dict[int, Tuple[int, int]] = {}
    stack = [(root, -1, 0, 1)]
    while stack:
        node, par, s, t = stack.pop()
        idx = len(tree_nodes)
        tree_nodes.append(node)
        parent.append(par)
        children.append([])
        src.append(s)
        snk.append(t)
        if par >= 0:
            children[par].append(idx)
        created: List[int] = []
        if node.kind == LEAF:
            for j in range(1, node.k):
                created.append(len(names))
                names.append(node.path[j] if ends else f"n{idx}.{j}")
            seq = [s] + created + [t]
            first = len(edges)
            edges.extend(zip(seq, seq[1:]))
            leaf_edges[idx] = (first, len(edges))
        elif node.kind == SERIES:
            m = len(node.children)
            for j in range(1, m):
                created.append(len(names))
                names.append(ends[id(node.children[j])][0] if ends else f"n{idx}.{j}")
            chain = [s] + created + [t]
            for i in range(m - 1, -1, -1):
                stack.append((node.children[i], idx, chain[i], chain[i + 1]))
        else:
            for child in reversed(node.children):
                stack.append((child, idx, s, t))
        own.append(created)
    return Layout(tree_nodes, parent, children, src, snk, own, names, edges, leaf_edges)


def _leaf_label_ends(root: SPNode) -> Optional[Dict[int, Tuple[str, str]]]:
    """(source label, sink label) per node if every leaf is labelled, else ``None``."""
    ends: Dict[int, Tuple[str, str]] = {}
    for node in _postorder(root):
        if node.kind == LEAF:
            if node.path is None:
                return None
            ends[id(node)] = (node.path[0], node.path[-1])
        elif node.kind == SERIES:
            ends[id(node)] = (ends[id(node.children[0])][0], ends[id(node.children[-1])][1])
        else:
            first = ends[id(node.children[0])]
            if any(ends[id(c)] != first for c in node.children):
                raise TreeError("P-node children disagree on terminal labels")
            ends[id(node)] = first
    return ends


def expand(root: SPNode) -> Tuple[Graph, ComponentView]:
    """Materialize the graph of ``root`` and its component hierarchy."""
    lay = layout(root)
    names = lay.names
    g = Graph(tuple(names), tuple((names[u], names[v]) for u, v in lay.edges), names[0], names[1])
    views: List[Optional[ComponentView]] = [None] * len(lay.tree_nodes)
    for idx in range(len(lay.tree_nodes) - 1, -1, -1):
        node = lay.tree_nodes[idx]
        kids = tuple(views[c] for c in lay.children[idx])
        if node.kind == LEAF:
            size = node.k + 1
            a, b = lay.leaf_edges[idx]
            own_edges = tuple(range(a, b))
        elif node.kind == SERIES:
            size = sum(c.size - 1 for c in kids) + 1
            own_edges = ()
        else:
            size = sum(c.size - 2 for c in kids) + 2
            own_edges = ()
        views[idx] = ComponentView(
            idx, node, g, names[lay.source[idx]], names[lay.sink[idx]], kids,
            tuple(names[v] for v in lay.own[idx]), own_edges, size,
        )
    return g, views[0]


@dataclass
class Census:
    leaves: List[ComponentView]
    parallels: List[ComponentView]
    series: List[ComponentView]


def component_census(view: ComponentView) -> Census:
    """Split the hierarchy into simple node sequences, parallel and series components.

    Series components here are the S-nodes only; leaves are counted once, as
    simple node sequences.
    """
    problem = validate_minimal(view.tree)
    if problem is not None:
        raise NotMinimal(problem)
    census = Census([], [], [])
    for v in view.walk():
        if v.kind == LEAF:
            census.leaves.append(v)
        elif v.kind == PARALLEL:
            census.parallels.append(v)
        else:
            census.series.append(v)
    return census
