"""Brute-force reference implementations kept independent of the package."""

import itertools
from collections import deque


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def degrees(n, edges):
    return [sum(v in e for e in edges) for v in range(n)]


def clustering(n, edges):
    es = {frozenset(e) for e in edges}
    out = []
    for v in range(n):
        nb = [w for w in range(n) if frozenset((v, w)) in es]
        if len(nb) < 2:
            out.append(None)
            continue
        pairs = list(itertools.combinations(nb, 2))
        out.append(sum(frozenset(p) in es for p in pairs) / len(pairs))
    return out


def all_pairs_bfs(n, edges):
    adj = adjacency(n, edges)
    dist = {}
    for s in range(n):
        d = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in d:
                    d[y] = d[x] + 1
                    q.append(y)
        dist[s] = d
    return dist


def diameter(n, edges):
    dist = all_pairs_bfs(n, edges)
    if any(len(d) < n for d in dist.values()):
        return float("inf")
    return max(max(d.values()) for d in dist.values())


def is_forest_and_connected(n, edges):
    return len(edges) == n - 1 and diameter(n, edges) != float("inf")


def normal_equations(x, y):
    """Slope/intercept by solving the 2x2 normal equations directly."""
    n = len(x)
    sx, sy = sum(x), sum(y)
    sxx = sum(a * a for a in x)
    sxy = sum(a * b for a, b in zip(x, y))
    det = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / det
    intercept = (sxx * sy - sx * sxy) / det
    return slope, intercept
