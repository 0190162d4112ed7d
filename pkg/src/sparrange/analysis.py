"""Cost accounting over the component hierarchy, and the bound checks built on it.

All quantities are exact: costs are ints, bounds with a factor 1/2 are
``Fraction``s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .arrange import arrange_parallel, arrange_sns, arrange_series
from .graph import Arrangement, arrangement_cost, max_degree
from .sptree import LEAF, PARALLEL, SERIES, Census, ComponentView, component_census

Number = Union[int, Fraction]


def restrict(arr: Arrangement, view: ComponentView) -> Dict[str, int]:
    """Positions of the component's nodes compacted to 1..|C|, keeping their order."""
    pos = arr.positions
    ordered = sorted(view.nodes, key=pos.__getitem__)
    return {v: i for i, v in enumerate(ordered, start=1)}


def _cost_in(positions: Dict[str, int], view: ComponentView, edge_ids: Iterable[int]) -> int:
    edges = view.graph.edges
    total = 0
    for e in edge_ids:
        u, v = edges[e]
        total += abs(positions[u] - positions[v])
    return total


def restricted_cost(arr: Arrangement, view: ComponentView) -> int:
    return _cost_in(restrict(arr, view), view, view.edge_ids)


def exclusive_cost(arr: Arrangement, view: ComponentView) -> int:
    return restricted_cost(arr, view) - sum(restricted_cost(arr, c) for c in view.children)


def _delta_from(positions: Dict[str, int], view: ComponentView) -> int:
    n = len(positions)
    p, q = positions[view.source], positions[view.sink]
    return min(p - 1, n - p, q - 1, n - q)


def delta(arr: Arrangement, view: ComponentView) -> int:
    """Fewest nodes on either side of either terminal, within the component."""
    return _delta_from(restrict(arr, view), view)


def delta_bound(view: ComponentView) -> int:
    return (view.size - 2) // 2


# -- S-decomposition -------------------------------------------------------

@dataclass
class PathChoice:
    """A-path and S-paths of one parallel component, as edge ids from source to sink."""

    a_path: Tuple[int, ...]
    s_paths: Tuple[Tuple[int, ...], ...]


@dataclass
class SDecomposition:
    paths: Dict[int, PathChoice] = field(default_factory=dict)

    def __getitem__(self, view: ComponentView) -> PathChoice:
        return self.paths[view.index]

    def all_s_paths(self) -> List[Tuple[int, ...]]:
        return [p for choice in self.paths.values() for p in choice.s_paths]


def s_decomposition(root: ComponentView) -> SDecomposition:
    """Select paths bottom-up; the first child of every P-node yields its A-path."""
    sd = SDecomposition()
    through: Dict[int, Tuple[int, ...]] = {}
    for view in reversed(list(root.walk())):
        if view.kind == LEAF:
            through[view.index] = view.own_edges
        elif view.kind == SERIES:
            path: List[int] = []
            for c in view.children:
                path.extend(through[c.index] if c.kind == LEAF else sd.paths[c.index].a_path)
            through[view.index] = tuple(path)
        else:
            qs = [through[c.index] for c in view.children]
            sd.paths[view.index] = PathChoice(qs[0], tuple(qs[1:]))
    return sd


def path_nodes(view: ComponentView, edge_ids: Tuple[int, ...]) -> Optional[List[str]]:
    """Walk ``edge_ids`` from the view's source; ``None`` if they do not chain."""
    edges = view.graph.edges
    at = view.source
    nodes = [at]
    for e in edge_ids:
        u, v = edges[e]
        if u == at:
            at = v
        elif v == at:
            at = u
        else:
            return None
        nodes.append(at)
    return nodes


def check_s_decomposition(root: ComponentView, sd: SDecomposition) -> Optional[str]:
    """``None`` if every P-node has simple source-sink A/S-paths and S-paths are edge-disjoint."""
    used: Dict[int, int] = {}
    for view in root.walk():
        if view.kind != PARALLEL:
            continue
        choice = sd.paths.get(view.index)
        if choice is None:
            return f"{view!r} has no path selection"
        if len(choice.s_paths) != len(view.children) - 1:
            return f"{view!r} has {len(choice.s_paths)} S-paths for {len(view.children)} children"
        for path in (choice.a_path,) + choice.s_paths:
            nodes = path_nodes(view, path)
            if nodes is None or nodes[-1] != view.sink:
                return f"{view!r}: path does not run from source to sink"
            if len(set(nodes)) != len(nodes):
                return f"{view!r}: path is not simple"
            if not set(path) <= set(view.edge_ids):
                return f"{view!r}: path leaves the component"
        for path in choice.s_paths:
            for e in path:
                if e in used:
                    return f"edge {e} lies on S-paths of components #{used[e]} and #{view.index}"
                used[e] = view.index
    return None


# -- ledger ----------------------------------------------------------------

@dataclass
class ComponentCosts:
    restricted: int
    exclusive: int
    amortized: Optional[int]
    delta: int


def cost_ledger(arr: Arrangement, root: ComponentView,
                sd: Optional[SDecomposition] = None) -> Dict[int, ComponentCosts]:
    """Restricted, exclusive and (given ``sd``) amortized cost plus delta per component."""
    views = list(root.walk())
    positions = {v.index: restrict(arr, v) for v in views}
    restricted = {v.index: _cost_in(positions[v.index], v, v.edge_ids) for v in views}
    ledger = {}
    for v in views:
        excl = restricted[v.index] - sum(restricted[c.index] for c in v.children)
        amort = None
        if sd is not None:
            amort = excl
            if v.kind == SERIES:
                amort += _cost_in(positions[v.index], v, _series_extra_edges(v, sd))
        ledger[v.index] = ComponentCosts(restricted[v.index], excl, amort,
                                         _delta_from(positions[v.index], v))
    return ledger


def _series_extra_edges(view: ComponentView, sd: SDecomposition) -> List[int]:
    out: List[int] = []
    for c in view.children:
        if c.kind == LEAF:
            out.extend(c.edge_ids)
        else:
            for p in sd.paths[c.index].s_paths:
                out.extend(p)
    return out


def amortized_cost(arr: Arrangement, view: ComponentView, sd: SDecomposition) -> int:
    """Exclusive cost, plus for S-nodes the restricted lengths of child leaf edges
    and of child S-path edges."""
    excl = exclusive_cost(arr, view)
    if view.kind != SERIES:
        return excl
    return excl + _cost_in(restrict(arr, view), view, _series_extra_edges(view, sd))


def check_cost_decomposition(arr: Arrangement, root: ComponentView) -> Optional[str]:
    """``None`` when the exclusive costs add up to the total cost."""
    ledger = cost_ledger(arr, root)
    total = arrangement_cost(root.graph, arr)
    summed = sum(c.exclusive for c in ledger.values())
    if summed != total:
        return f"sum of exclusive costs {summed} != total cost {total}"
    return None


def local_orders(root: ComponentView) -> Dict[int, List[str]]:
    """Order of every component right after its own recursion step."""
    orders: Dict[int, List[str]] = {}
    for v in reversed(list(root.walk())):
        if v.kind == LEAF:
            orders[v.index] = arrange_sns(v.path)
        elif v.kind == PARALLEL:
            orders[v.index] = arrange_parallel([orders[c.index] for c in v.children])
        else:
            orders[v.index] = arrange_series([orders[c.index] for c in v.children])
    return orders


def step_exclusive_costs(root: ComponentView,
                         orders: Optional[Dict[int, List[str]]] = None) -> Dict[int, int]:
    """Exclusive cost of each component with every component measured in its own
    step order instead of the final arrangement.

    These also add up to the final cost: each child's term enters once with
    each sign and the root's step order is the final arrangement.
    """
    if orders is None:
        orders = local_orders(root)
    views = list(root.walk())
    cost = {}
    for v in views:
        pos = {x: i for i, x in enumerate(orders[v.index])}
        cost[v.index] = _cost_in(pos, v, v.edge_ids)
    return {v.index: cost[v.index] - sum(cost[c.index] for c in v.children) for v in views}


# -- closed-form bounds ----------------------------------------------------

def _spread(values: List[int]) -> int:
    return sum(values) - max(values)


def parallel_spread(view: ComponentView) -> int:
    """Sum of child interior sizes minus the largest."""
    return _spread([c.size_interior for c in view.children])


def series_spread(view: ComponentView) -> int:
    """Sum of child sizes without sink, minus the largest."""
    return _spread([c.size_minus_sink for c in view.children])


def opt_lower_bound_rhs(census: Census) -> int:
    """Right-hand side that seven times the optimal cost is at least."""
    return (sum(2 * (v.size - 1) for v in census.leaves)
            + sum(parallel_spread(v) for v in census.parallels)
            + sum(series_spread(v) for v in census.series))


def alg_upper_bound_rhs(census: Census, d: int) -> int:
    """Upper bound on the cost of the computed arrangement."""
    return (sum(2 * (v.size - 1) for v in census.leaves)
            + sum(2 * d * d * parallel_spread(v) for v in census.parallels)
            + sum(2 * d * series_spread(v) for v in census.series))


# -- report ----------------------------------------------------------------

LE, GE, EQ = "<=", ">=", "=="


@dataclass
class Check:
    family: str
    subject: str
    lhs: Number
    relation: str
    rhs: Number

    @property
    def passed(self) -> bool:
        if self.relation == LE:
            return self.lhs <= self.rhs
        if self.relation == GE:
            return self.lhs >= self.rhs
        return self.lhs == self.rhs

    @property
    def slack(self) -> Number:
        if self.relation == LE:
            return self.rhs - self.lhs
        if self.relation == GE:
            return self.lhs - self.rhs
        return -abs(self.lhs - self.rhs)

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.family} {status} {self.lhs} {self.rhs}"


@dataclass
class BoundReport:
    checks: List[Check] = field(default_factory=list)

    def add(self, family: str, subject: str, lhs: Number, relation: str, rhs: Number) -> None:
        self.checks.append(Check(family, subject, lhs, relation, rhs))

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def families(self) -> Dict[str, Check]:
        """Tightest check (smallest slack) of each family, in first-seen order."""
        out: Dict[str, Check] = {}
        for c in self.checks:
            cur = out.get(c.family)
            if cur is None or c.slack < cur.slack:
                out[c.family] = c
        return out

    def lines(self) -> List[str]:
        return [str(c) for c in self.families().values()]


ALG_FAMILIES = ("observation-alg", "delta-alg", "algsns", "algpc", "algsc", "algtotal",
                "observation-step", "algsns-step", "algpc-step", "algsc-step")
OPT_FAMILIES = ("observation-opt", "delta-opt", "s-decomposition", "optsns", "optsc", "optpc",
                "amortization", "opttotal", "theorem")


def component_bound_report(arr_alg: Arrangement, arr_opt: Optional[Arrangement],
                           root: ComponentView, sd: Optional[SDecomposition] = None,
                           opt_cost: Optional[int] = None) -> BoundReport:
    """Evaluate every per-component and aggregate inequality exactly.

    ``arr_opt`` must be an optimal arrangement; pass ``None`` to check only the
    algorithm-side bounds.
    """
    report = BoundReport()
    g = root.graph
    d = max_degree(g)
    census = component_census(root)
    views = list(root.walk())

    alg_cost = arrangement_cost(g, arr_alg)
    alg = cost_ledger(arr_alg, root)
    report.add("observation-alg", "G", sum(c.exclusive for c in alg.values()), EQ, alg_cost)
    for v in views:
        report.add("delta-alg", _name(v), alg[v.index].delta, LE, delta_bound(v))
    for v in census.leaves:
        report.add("algsns", _name(v), alg[v.index].exclusive, LE, 2 * (v.size - 1))
    for v in census.parallels:
        report.add("algpc", _name(v), alg[v.index].exclusive, LE, 2 * d * d * parallel_spread(v))
    for v in census.series:
        report.add("algsc", _name(v), alg[v.index].exclusive, LE, 2 * d * series_spread(v))
    report.add("algtotal", "G", alg_cost, LE, alg_upper_bound_rhs(census, d))

    step = step_exclusive_costs(root)
    report.add("observation-step", "G", sum(step.values()), EQ, alg_cost)
    for v in census.leaves:
        report.add("algsns-step", _name(v), step[v.index], LE, 2 * (v.size - 1))
    for v in census.parallels:
        report.add("algpc-step", _name(v), step[v.index], LE, 2 * d * d * parallel_spread(v))
    for v in census.series:
        report.add("algsc-step", _name(v), step[v.index], LE, 2 * d * series_spread(v))

    if arr_opt is None:
        return report

    if sd is None:
        sd = s_decomposition(root)
    problem = check_s_decomposition(root, sd)
    report.add("s-decomposition", "G", 0 if problem is None else 1, EQ, 0)
    cost = arrangement_cost(g, arr_opt)
    if opt_cost is not None and opt_cost != cost:
        raise ValueError(f"arrangement cost {cost} differs from the stated optimum {opt_cost}")
    opt = cost_ledger(arr_opt, root, sd)
    report.add("observation-opt", "G", sum(c.exclusive for c in opt.values()), EQ, cost)
    for v in views:
        report.add("delta-opt", _name(v), opt[v.index].delta, LE, delta_bound(v))
    for v in census.leaves:
        c = opt[v.index]
        report.add("optsns", _name(v), c.amortized, GE, v.size - 1 + c.delta)
    for v in census.series:
        c = opt[v.index]
        rhs = (Fraction(series_spread(v), 2) + 1
               + sum(opt[p.index].delta for p in v.children) - c.delta)
        report.add("optsc", _name(v), c.amortized, GE, rhs)
    for v in census.parallels:
        c = opt[v.index]
        rhs = (Fraction(parallel_spread(v), 2)
               + sum(opt[s.index].delta for s in v.children) - c.delta)
        report.add("optpc", _name(v), c.amortized, GE, rhs)
    report.add("amortization", "G", sum(c.amortized for c in opt.values()), LE,
               3 * sum(c.exclusive for c in opt.values()))
    report.add("opttotal", "G", 7 * cost, GE, opt_lower_bound_rhs(census))
    report.add("theorem", "G", alg_cost, LE, 14 * d * d * cost)
    return report


def _name(view: ComponentView) -> str:
    return f"#{view.index}{view.kind}"
