"""Exact minimum linear arrangement for small graphs.

``exact_minla`` runs a dynamic program over node subsets (prefixes of the
arrangement); ``brute_force_minla`` enumerates every permutation and exists to
cross-check it.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Tuple

import numpy as np

from .graph import Arrangement, Graph


class TooLarge(ValueError):
    pass


def _edge_index(g: Graph):
    index = {v: i for i, v in enumerate(g.nodes)}
    us = np.array([index[u] for u, _ in g.edges], dtype=np.int64)
    vs = np.array([index[v] for _, v in g.edges], dtype=np.int64)
    return us, vs


def cut_values(g: Graph) -> np.ndarray:
    """cut[S] = number of edges (with multiplicity) with exactly one endpoint in S.

    Built incrementally: cut(S + v) = cut(S) + deg(v) - 2 * edges(v, S), adding
    node v to every subset of the nodes below it at once.
    """
    n = len(g)
    us, vs = _edge_index(g)
    deg = np.bincount(np.concatenate([us, vs]), minlength=n)
    mult = np.zeros((n, n), dtype=np.int64)
    np.add.at(mult, (us, vs), 1)
    np.add.at(mult, (vs, us), 1)
    cut = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        lo = 1 << v
        subsets = np.arange(lo, dtype=np.int64)
        to_s = np.zeros(lo, dtype=np.int64)
        for u in range(v):
            if mult[v, u]:
                to_s += mult[v, u] * ((subsets >> u) & 1)
        cut[lo:2 * lo] = cut[:lo] + deg[v] - 2 * to_s
    return cut


def exact_minla(g: Graph, node_limit: int = 20) -> Tuple[int, Arrangement]:
    """Optimal cost and one optimal arrangement.

    f(S) = cut(S) + min over v in S of f(S - v); the minimum over the full set
    is the optimal cost, and the argmin chain read backwards is the order.
    """
    n = len(g)
    if n > node_limit:
        raise TooLarge(f"{n} nodes exceeds the limit of {node_limit}")
    if n == 1:
        return 0, Arrangement({g.nodes[0]: 1})
    cut = cut_values(g)
    full = (1 << n) - 1
    popcount = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        popcount[1 << v: 2 << v] = popcount[: 1 << v] + 1
    layers = np.argsort(popcount, kind="stable")
    bounds = np.searchsorted(popcount[layers], np.arange(n + 2))
    big = np.iinfo(np.int64).max // 4
    f = np.full(1 << n, big, dtype=np.int64)
    last = np.zeros(1 << n, dtype=np.int8)
    f[0] = 0
    for size in range(1, n + 1):
        idx = layers[bounds[size]:bounds[size + 1]]
        best = np.full(idx.shape, big, dtype=np.int64)
        arg = np.zeros(idx.shape, dtype=np.int8)
        for v in range(n):
            bit = 1 << v
            has = (idx & bit) != 0
            cand = np.where(has, f[idx ^ bit], big)
            better = cand < best
            best = np.where(better, cand, best)
            arg = np.where(better, v, arg)
        f[idx] = best + cut[idx]
        last[idx] = arg
    order = []
    s = full
    while s:
        v = int(last[s])
        order.append(g.nodes[v])
        s ^= 1 << v
    order.reverse()
    return int(f[full]), Arrangement.from_order(order)


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int16).reshape(-1, n)


def brute_force_minla(g: Graph, node_limit: int = 9) -> Tuple[int, Arrangement]:
    """Optimum by evaluating every position assignment."""
    n = len(g)
    if n > node_limit:
        raise TooLarge(f"{n} nodes exceeds the limit of {node_limit}")
    perms = _permutations(n)  # row r: position of node i is perms[r, i]
    us, vs = _edge_index(g)
    costs = np.zeros(len(perms), dtype=np.int64)
    for u, v in zip(us, vs):
        costs += np.abs(perms[:, u].astype(np.int64) - perms[:, v])
    r = int(np.argmin(costs))
    return int(costs[r]), Arrangement({g.nodes[i]: int(p) for i, p in enumerate(perms[r])})
