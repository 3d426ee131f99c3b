"""Independent reference implementations used as test oracles.

Everything here favors obviousness over speed: textbook algorithms,
exhaustive searches, explicit loops.  Production code must match these
on small instances.
"""

from collections import defaultdict, deque


def naive_prufer_decode(t, code):
    """Textbook decoding with explicit degree bookkeeping."""
    degree = [1] * (t + 1)
    for x in code:
        degree[x] += 1
    edges = []
    used = [False] * (t + 1)
    for x in code:
        leaf = min(v for v in range(1, t + 1) if degree[v] == 1 and not used[v])
        edges.append((min(leaf, x), max(leaf, x)))
        used[leaf] = True
        degree[x] -= 1
    rest = [v for v in range(1, t + 1) if not used[v]]
    assert len(rest) == 2
    edges.append((rest[0], rest[1]))
    return sorted(edges)


def naive_prufer_encode(t, edges):
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    code = []
    for _ in range(t - 2):
        leaf = min(v for v in adj if len(adj[v]) == 1)
        nb = next(iter(adj[leaf]))
        code.append(nb)
        adj[nb].discard(leaf)
        del adj[leaf]
    return code


def adjacency(t, edges):
    adj = [[] for _ in range(t + 1)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def bfs_dist(adj, start, allowed=None):
    """Distances from start; allowed restricts the vertex set if given."""
    dist = {start: 0}
    q = deque([start])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def tree_path_masks(t, edges):
    """Every simple path of the tree as (vertex bitmask, vertices, edges).

    Bit i represents vertex i+1.  Single vertices are not paths here.
    """
    adj = adjacency(t, edges)
    out = []
    for s in range(1, t + 1):
        parent = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    q.append(w)
        for v in range(s + 1, t + 1):
            mask = 0
            x = v
            size = 0
            while x:
                mask |= 1 << (x - 1)
                size += 1
                x = parent[x]
            out.append((mask, size, size - 1))
    return out


def brute_cov(t, edges, min_edges):
    """Exact best coverage by vertex-disjoint paths of >= min_edges edges,
    by dynamic programming over vertex subsets."""
    paths = [(m, s) for m, s, e in tree_path_masks(t, edges) if e >= min_edges]
    full = 1 << t
    best = [0] * full
    for mask in range(1, full):
        low = mask & -mask
        acc = best[mask ^ low]  # lowest vertex left uncovered
        for pm, size in paths:
            if pm & low and pm & mask == pm:
                c = size + best[mask ^ pm]
                if c > acc:
                    acc = c
        best[mask] = acc
    return best[full - 1]


def naive_centred_edges(t, edges, m):
    """Edges uv where each side of the split holds a path of >= m-1 edges
    starting at its endpoint (checked by per-side eccentricity)."""
    adj = adjacency(t, edges)
    found = []
    for u, v in edges:
        comp_u = _side(adj, u, v)
        comp_v = _side(adj, v, u)
        du = bfs_dist(adj, u, allowed=comp_u)
        dv = bfs_dist(adj, v, allowed=comp_v)
        if max(du.values()) >= m - 1 and max(dv.values()) >= m - 1:
            found.append((min(u, v), max(u, v)))
    return sorted(found)


def _side(adj, keep, cut):
    seen = {keep}
    q = deque([keep])
    while q:
        x = q.popleft()
        for w in adj[x]:
            if w != cut and w not in seen:
                seen.add(w)
                q.append(w)
    return seen


def naive_two_core(n, edges):
    """Strip degree <= 1 vertices until stable; return surviving sets."""
    alive = set()
    adj = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
        alive.add(u)
        alive.add(v)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(adj[v]) <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                adj[v].clear()
                alive.discard(v)
                changed = True
    core_edges = sorted(
        (min(u, v), max(u, v))
        for u in alive for v in adj[u] if u < v)
    return sorted(alive), core_edges


def canonical_form(t, edges):
    """AHU canonical string of the unlabelled tree (rooted at its center,
    min over both centers when the tree is bicentral)."""
    if t == 1:
        return "()"
    adj = adjacency(t, edges)
    deg = {v: len(adj[v]) for v in range(1, t + 1)}
    layer = [v for v in deg if deg[v] <= 1]
    remaining = t
    while remaining > 2:
        nxt = []
        for v in layer:
            deg[v] = 0
            for w in adj[v]:
                if deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        remaining -= len(layer)
        layer = nxt
    centers = sorted(v for v in range(1, t + 1) if deg[v] >= 1) or [1]

    def code(root):
        def rec(v, parent):
            subs = sorted(rec(w, v) for w in adj[v] if w != parent)
            return "(" + "".join(subs) + ")"
        return rec(root, 0)

    return min(code(c) for c in centers)
