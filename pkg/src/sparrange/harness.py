"""Random SP-trees, verification sweeps and the arrangement benchmark.

Generator (reproducible from the seed alone): a ``random.Random(seed)``
(Mersenne Twister) is consumed in preorder. A node with leaf budget 1 becomes
``L(randint(1, kmax))``. A node with budget b > 1 draws its kind (S with
probability ``series_bias``, via ``random()``), then a fan-out
``randint(2, min(max_fan, b))``, then ``sample(range(1, b), fan - 1)`` as cut
points splitting b into positive child budgets, left to right. The finished
tree is minimized.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .analysis import check_cost_decomposition, component_bound_report
from .arrange import arrange
from .graph import Arrangement, arrangement_cost, max_degree, validate_arrangement
from .oracle import brute_force_minla, exact_minla
from .sptree import (LEAF, PARALLEL, SERIES, SPNode, expand, minimize, serialize_tree,
                     tree_edge_count, tree_node_count)


@dataclass(frozen=True)
class GenParams:
    seed: int
    leaves: int
    max_fan: int = 3
    kmax: int = 3
    series_bias: float = 0.5

    def __post_init__(self) -> None:
        if self.leaves < 1:
            raise ValueError("leaf count must be at least 1")
        if self.max_fan < 2:
            raise ValueError("max fan-out must be at least 2")
        if self.kmax < 1:
            raise ValueError("kmax must be at least 1")
        if not 0 < self.series_bias < 1:
            raise ValueError("series_bias must lie strictly between 0 and 1")


def generate(p: GenParams) -> SPNode:
    rng = random.Random(p.seed)
    # frames: [kind, budgets still to build, built children]
    stack: List[list] = []
    budget = p.leaves
    while True:
        if budget == 1:
            node = SPNode(LEAF, rng.randint(1, p.kmax))
        else:
            kind = SERIES if rng.random() < p.series_bias else PARALLEL
            fan = rng.randint(2, min(p.max_fan, budget))
            cuts = sorted(rng.sample(range(1, budget), fan - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
            parts.reverse()
            stack.append([kind, parts, []])
            budget = stack[-1][1].pop()
            continue
        while stack:
            stack[-1][2].append(node)
            if stack[-1][1]:
                break
            kind, _, kids = stack.pop()
            node = SPNode(kind, 0, kids)
        if not stack:
            return minimize(node)
        budget = stack[-1][1].pop()


def random_instance(rng: random.Random, max_nodes: int, max_fan: int = 3,
                    kmax: int = 3) -> SPNode:
    """A random minimal tree whose graph has at most ``max_nodes`` nodes."""
    if max_nodes < 2:
        raise ValueError("max_nodes must be at least 2")
    while True:
        p = GenParams(rng.getrandbits(64), rng.randint(1, max(1, max_nodes - 1)),
                      max_fan, kmax, 0.5)
        tree = generate(p)
        if tree_node_count(tree) <= max_nodes:
            return tree


@dataclass
class VerifySummary:
    instances: int = 0
    checks: int = 0
    shuffled: int = 0
    brute_checked: int = 0
    max_ratio: Fraction = Fraction(0)
    max_ratio_tree: Optional[str] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> List[str]:
        status = "PASS" if self.ok else "FAIL"
        out = [
            f"# instances {self.instances}",
            f"# checks {self.checks}",
            f"# shuffled-arrangements {self.shuffled}",
            f"# brute-force-crosschecks {self.brute_checked}",
            f"# max-ratio {self.max_ratio} ({float(self.max_ratio):.4f}) {self.max_ratio_tree}",
        ]
        out.extend(f"FAIL {f}" for f in self.failures)
        out.append(f"{status} failures {len(self.failures)}")
        return out


def verify_tree(tree: SPNode, summary: VerifySummary, rng: Optional[random.Random] = None,
                shuffles: int = 0, brute_limit: int = 9) -> None:
    """Run every check on one instance and fold the outcome into ``summary``."""
    label = serialize_tree(tree)
    g, root = expand(tree)
    alg = arrange(tree)
    problem = validate_arrangement(g, alg)
    if problem:
        summary.failures.append(f"{label}: invalid arrangement ({problem})")
        return
    opt_cost, opt = exact_minla(g)
    if len(g) <= brute_limit:
        bf_cost, _ = brute_force_minla(g, brute_limit)
        summary.brute_checked += 1
        if bf_cost != opt_cost:
            summary.failures.append(f"{label}: DP optimum {opt_cost} != enumeration {bf_cost}")
    report = component_bound_report(alg, opt, root, opt_cost=opt_cost)
    summary.checks += len(report.checks)
    summary.failures.extend(f"{label}: {c.family} {c.subject} {c.lhs} {c.relation} {c.rhs}"
                            for c in report.failures)
    for _ in range(shuffles):
        order = list(g.nodes)
        (rng or random).shuffle(order)
        problem = check_cost_decomposition(Arrangement.from_order(order), root)
        summary.shuffled += 1
        summary.checks += 1
        if problem:
            summary.failures.append(f"{label}: shuffled arrangement: {problem}")
    ratio = Fraction(arrangement_cost(g, alg), opt_cost)
    summary.instances += 1
    if ratio > summary.max_ratio:
        summary.max_ratio = ratio
        summary.max_ratio_tree = label


def run_verify(count: int, max_nodes: int, seed: int, shuffles: int = 1,
               brute_limit: int = 9, node_limit: int = 20) -> VerifySummary:
    if max_nodes > node_limit:
        raise ValueError(f"max_nodes {max_nodes} exceeds the oracle limit {node_limit}")
    rng = random.Random(seed)
    summary = VerifySummary()
    for _ in range(count):
        tree = random_instance(rng, max_nodes)
        verify_tree(tree, summary, rng, shuffles, brute_limit)
    return summary


def bench_tree(edges: int, seed: int) -> SPNode:
    """A generated tree with roughly ``edges`` edges (mean leaf length 2)."""
    return generate(GenParams(seed, max(1, edges // 2), max_fan=3, kmax=3))


def run_bench(sizes: List[int], seed: int, repeat: int = 1) -> List[Tuple[int, float]]:
    """(edge count, best wall time of ``arrange``) for each requested size."""
    trees = [bench_tree(n, seed) for n in sizes]
    table = []
    for tree in trees:
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            arrange(tree)
            best = min(best, time.perf_counter() - start)
        table.append((tree_edge_count(tree), best))
    return table


def theorem_ratio(tree: SPNode) -> Tuple[int, int, int]:
    """(ALG cost, OPT cost, D) for one tree."""
    g, _ = expand(tree)
    return arrangement_cost(g, arrange(tree)), exact_minla(g)[0], max_degree(g)
