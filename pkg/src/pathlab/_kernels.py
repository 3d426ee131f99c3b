"""Compiled inner loops shared by the public modules.

Everything here operates on plain int64 numpy arrays so numba can compile
it once and release the GIL.  Vertex labels are 1-based throughout; index 0
of any per-vertex array is unused padding.  No randomness lives here: the
callers draw from their streams and pass arrays in, which keeps every
kernel a pure function and keeps replay/determinism concerns out of the
compiled code.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Sentinel for unreachable dynamic-programming states.  Large enough that
# adding legitimate values (bounded by the host size) can never climb back
# above NEG_CUT.
_NEG = -(1 << 60)
_NEG_CUT = -(1 << 59)


# ---------------------------------------------------------------------------
# Prufer codec
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def prufer_decode(code, t):
    """Decode ``code`` (entries in 1..t, length t-2) into a (t-1, 2) edge array.

    Pointer-over-smallest-leaf scheme: the removed leaf is always the
    smallest-labelled leaf, tracked in O(t) total by a forward pointer plus
    the special case of a vertex whose degree drops to 1 behind the pointer.
    """
    deg = np.ones(t + 2, np.int64)
    for i in range(code.shape[0]):
        deg[code[i]] += 1
    edges = np.empty((t - 1, 2), np.int64)
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(code.shape[0]):
        v = code[i]
        edges[i, 0] = leaf
        edges[i, 1] = v
        deg[v] -= 1
        if deg[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges[t - 2, 0] = leaf
    edges[t - 2, 1] = t
    return edges


@njit(cache=True, nogil=True)
def prufer_encode(eu, ev, t):
    """Inverse of prufer_decode: repeatedly strip the smallest leaf.

    The single remaining neighbour of a leaf is recovered from a running
    neighbour-label sum, so no adjacency structure is needed.
    """
    deg = np.zeros(t + 2, np.int64)
    nsum = np.zeros(t + 1, np.int64)
    for i in range(eu.shape[0]):
        u = eu[i]
        v = ev[i]
        deg[u] += 1
        deg[v] += 1
        nsum[u] += v
        nsum[v] += u
    code = np.empty(t - 2, np.int64)
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(t - 2):
        v = nsum[leaf]
        code[i] = v
        deg[leaf] = 0
        nsum[v] -= leaf
        deg[v] -= 1
        if deg[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    return code


# ---------------------------------------------------------------------------
# Adjacency / traversal
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def bfs_tree(eu, ev, t, root):
    """Breadth-first traversal of the tree given by edge arrays.

    Returns (parent, depth, order, visited) where order[i] is the i-th
    vertex in BFS order.  With lexicographically sorted edge input the
    adjacency lists come out in ascending label order, so the traversal
    (and everything derived from it) is deterministic.
    visited < t signals a disconnected input (caller validates).
    """
    m = eu.shape[0]
    deg = np.zeros(t + 2, np.int64)
    for i in range(m):
        deg[eu[i]] += 1
        deg[ev[i]] += 1
    start = np.zeros(t + 2, np.int64)
    for v in range(1, t + 1):
        start[v + 1] = start[v] + deg[v]
    adj = np.empty(2 * m, np.int64)
    fill = start.copy()
    for i in range(m):
        u = eu[i]
        v = ev[i]
        adj[fill[u]] = v
        fill[u] += 1
        adj[fill[v]] = u
        fill[v] += 1
    parent = np.zeros(t + 1, np.int64)
    depth = np.full(t + 1, -1, np.int64)
    order = np.zeros(t, np.int64)
    depth[root] = 0
    order[0] = root
    head = 0
    tail = 1
    while head < tail:
        u = order[head]
        head += 1
        for j in range(start[u], start[u + 1]):
            w = adj[j]
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                order[tail] = w
                tail += 1
    return parent, depth, order, tail


@njit(cache=True, nogil=True)
def children_csr(order, parent, t):
    """Children lists in BFS discovery order, as a CSR pair (cstart, clist)."""
    cnt = np.zeros(t + 2, np.int64)
    for i in range(1, t):
        cnt[parent[order[i]]] += 1
    cstart = np.zeros(t + 2, np.int64)
    for v in range(1, t + 1):
        cstart[v + 1] = cstart[v] + cnt[v]
    clist = np.empty(t - 1 if t > 0 else 0, np.int64)
    fill = cstart.copy()
    for i in range(1, t):
        v = order[i]
        p = parent[v]
        clist[fill[p]] = v
        fill[p] += 1
    return cstart, clist


# ---------------------------------------------------------------------------
# Path-cover dynamic programme
# ---------------------------------------------------------------------------
#
# Per-vertex state vector of length L+3 (L = minimum path length in edges):
#   slot 0        F     vertex free: on no path, all paths below complete
#   slot 1+d      P[d]  vertex ends a pending upward path with d edges,
#                       d capped at L (longer pendants are interchangeable)
#   slot L+2      C     vertex used by a complete path, not extensible
# Values carry the best objective over the processed subtree.  The pending
# path's own contribution is included in P (it only survives if the path is
# eventually completed; abandoning it is dominated by the F/C alternatives).
# Transitions when merging a child c into the accumulator for v:
#   close   any state     + best(F_c, C_c, P_c[L])
#   extend  F  -> P[d+1]  via acc.F + P_c[d] + w_ext
#   join    P[d1] + P_c[d2] -> C  when d1 + d2 + 1 >= L
# The objective is selected by (init_p0, join_w):
#   vertices covered: init_p0 = 1 (the lone vertex counts), join_w = 0
#   edges covered:    init_p0 = 0, join_w = 1 (the joining edge counts)
# and extend always adds 1 (one vertex, or one edge, respectively).

@njit(cache=True, nogil=True)
def _merge_child(acc, D, L, S, join_w, tmp, sufmax):
    """Merge one child vector D into the accumulator acc, in place.

    tmp and sufmax are caller-provided scratch of sizes S and L+1.
    """
    closedc = D[0]
    if D[S - 1] > closedc:
        closedc = D[S - 1]
    if D[L + 1] > closedc:
        closedc = D[L + 1]
    run = _NEG
    for d in range(L, -1, -1):
        if acc[1 + d] > run:
            run = acc[1 + d]
        sufmax[d] = run
    for s in range(S):
        tmp[s] = acc[s] + closedc
    accf = acc[0]
    for d in range(L + 1):
        dp = D[1 + d]
        if dp < _NEG_CUT:
            continue
        nd = d + 1
        if nd > L:
            nd = L
        val = accf + dp + 1
        if val > tmp[1 + nd]:
            tmp[1 + nd] = val
    best = _NEG
    for d2 in range(L + 1):
        dp = D[1 + d2]
        if dp < _NEG_CUT:
            continue
        need = L - 1 - d2
        if need < 0:
            need = 0
        sm = sufmax[need]
        if sm < _NEG_CUT:
            continue
        cand = dp + sm + join_w
        if cand > best:
            best = cand
    if best > tmp[S - 1]:
        tmp[S - 1] = best
    for s in range(S):
        acc[s] = tmp[s]


@njit(cache=True, nogil=True)
def cov_dp(order, parent, cstart, clist, L, init_p0, join_w):
    """Fill the DP table; returns (value, vec) with vec[(t+1) x (L+3)]."""
    t = order.shape[0]
    S = L + 3
    vec = np.full((t + 1, S), _NEG, np.int64)
    tmp = np.empty(S, np.int64)
    sufmax = np.empty(L + 1, np.int64)
    for idx in range(t - 1, -1, -1):
        v = order[idx]
        acc = vec[v]
        acc[0] = 0
        acc[1] = init_p0
        for s in range(2, S):
            acc[s] = _NEG
        for ci in range(cstart[v], cstart[v + 1]):
            _merge_child(acc, vec[clist[ci]], L, S, join_w, tmp, sufmax)
    r = vec[order[0]]
    ans = r[0]
    if r[S - 1] > ans:
        ans = r[S - 1]
    if r[L + 1] > ans:
        ans = r[L + 1]
    return ans, vec


@njit(cache=True, nogil=True)
def cov_witness(order, parent, cstart, clist, L, init_p0, join_w, vec):
    """Reconstruct an optimal path system from a filled cov_dp table.

    Walks each vertex's child merges backwards, re-deriving which
    transition (close / extend / join) produced the required state slot
    at the required value; ties resolve in that fixed order.  Each vertex
    ends up with a pending-chain successor (pend), at most one join
    partner (jright), and a flag marking completed standalone chain tops.

    Returns (ok, flat, offsets): path k occupies flat[offsets[k]:
    offsets[k+1]], vertices in path order (consecutive entries adjacent
    in the tree).  ok = 0 signals an internal inconsistency (the table
    does not certify its own value); callers should treat that as a bug.
    """
    t = order.shape[0]
    S = L + 3
    bad_flat = np.empty(0, np.int64)
    bad_off = np.empty(1, np.int64)
    req = np.full(t + 1, -1, np.int64)   # required slot index per vertex
    rval = np.zeros(t + 1, np.int64)
    pend = np.zeros(t + 1, np.int64)
    jright = np.zeros(t + 1, np.int64)
    top = np.zeros(t + 1, np.uint8)
    root = order[0]
    best = vec[root, 0]
    slot = 0
    if vec[root, L + 1] > best:
        best = vec[root, L + 1]
        slot = L + 1
    if vec[root, S - 1] > best:
        best = vec[root, S - 1]
        slot = S - 1
    req[root] = slot
    rval[root] = best
    if slot == L + 1:
        top[root] = 1
    maxdeg = 0
    for v in range(1, t + 1):
        d = cstart[v + 1] - cstart[v]
        if d > maxdeg:
            maxdeg = d
    accbuf = np.empty((maxdeg + 1, S), np.int64)
    tmp = np.empty(S, np.int64)
    sufmax = np.empty(L + 1, np.int64)
    for idx in range(t):
        v = order[idx]
        nc = cstart[v + 1] - cstart[v]
        s = req[v]
        val = rval[v]
        accbuf[0, 0] = 0
        accbuf[0, 1] = init_p0
        for j in range(2, S):
            accbuf[0, j] = _NEG
        for i in range(nc):
            for j in range(S):
                accbuf[i + 1, j] = accbuf[i, j]
            _merge_child(accbuf[i + 1], vec[clist[cstart[v] + i]],
                         L, S, join_w, tmp, sufmax)
        for i in range(nc - 1, -1, -1):
            c = clist[cstart[v] + i]
            D = vec[c]
            prev = accbuf[i]
            closedc = D[0]
            cslot = 0
            if D[L + 1] > closedc:
                closedc = D[L + 1]
                cslot = L + 1
            if D[S - 1] > closedc:
                closedc = D[S - 1]
                cslot = S - 1
            if prev[s] > _NEG_CUT and closedc > _NEG_CUT \
                    and prev[s] + closedc == val:
                req[c] = cslot
                rval[c] = closedc
                if cslot == L + 1:
                    top[c] = 1
                val = prev[s]
                continue
            matched = False
            if s >= 2 and s <= L + 1:
                nd = s - 1
                ncand = 2 if nd == L else 1
                for k2 in range(ncand):
                    d = nd - 1 if k2 == 0 else L
                    dp = D[1 + d]
                    if dp > _NEG_CUT and prev[0] + dp + 1 == val:
                        req[c] = 1 + d
                        rval[c] = dp
                        pend[v] = c
                        s = 0
                        val = prev[0]
                        matched = True
                        break
                if matched:
                    continue
            if s == S - 1:
                for d2 in range(L + 1):
                    dp2 = D[1 + d2]
                    if dp2 < _NEG_CUT:
                        continue
                    need = L - 1 - d2
                    if need < 0:
                        need = 0
                    for d1 in range(need, L + 1):
                        dp1 = prev[1 + d1]
                        if dp1 < _NEG_CUT:
                            continue
                        if dp1 + dp2 + join_w == val:
                            req[c] = 1 + d2
                            rval[c] = dp2
                            jright[v] = c
                            s = 1 + d1
                            val = dp1
                            matched = True
                            break
                    if matched:
                        break
                if matched:
                    continue
            return 0, bad_flat, bad_off
        if s == 0:
            if val != 0:
                return 0, bad_flat, bad_off
        elif s == 1:
            if val != init_p0:
                return 0, bad_flat, bad_off
        else:
            return 0, bad_flat, bad_off
    npaths = 0
    total = 0
    for v in range(1, t + 1):
        if top[v] != 0:
            w = v
            while w != 0:
                total += 1
                w = pend[w]
            npaths += 1
        if jright[v] != 0:
            w = v
            while w != 0:
                total += 1
                w = pend[w]
            w = jright[v]
            while w != 0:
                total += 1
                w = pend[w]
            npaths += 1
    flat = np.empty(total, np.int64)
    offsets = np.empty(npaths + 1, np.int64)
    offsets[0] = 0
    k = 0
    pos = 0
    for v in range(1, t + 1):
        if top[v] != 0:
            w = v
            while w != 0:
                flat[pos] = w
                pos += 1
                w = pend[w]
            k += 1
            offsets[k] = pos
        if jright[v] != 0:
            lstart = pos
            w = v
            while w != 0:
                flat[pos] = w
                pos += 1
                w = pend[w]
            # left chain was written top-down; the path runs bottom-up
            # through v, so reverse it in place
            lo = lstart
            hi = pos - 1
            while lo < hi:
                x = flat[lo]
                flat[lo] = flat[hi]
                flat[hi] = x
                lo += 1
                hi -= 1
            w = jright[v]
            while w != 0:
                flat[pos] = w
                pos += 1
                w = pend[w]
            k += 1
            offsets[k] = pos
    return 1, flat, offsets


# ---------------------------------------------------------------------------
# Centred edges
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def centred_mask(order, parent, cstart, clist, m):
    """Mark non-root vertices v whose parent edge is m-centred.

    down[v] = height (edges) of the subtree below v.  g[v] = height, rooted
    at v, of the whole tree minus v's subtree (0 for the root).  Deleting
    the parent edge of v leaves the v-side with height down[v] rooted at v
    and the parent side with height g[v] - 1 rooted at parent(v), so the
    edge is m-centred iff down[v] >= m - 1 and g[v] >= m.
    """
    t = order.shape[0]
    down = np.zeros(t + 1, np.int64)
    for idx in range(t - 1, 0, -1):
        v = order[idx]
        p = parent[v]
        h = down[v] + 1
        if h > down[p]:
            down[p] = h
    # top-two of (down[c] + 1) over the children of each vertex
    best1 = np.zeros(t + 1, np.int64)
    best2 = np.zeros(t + 1, np.int64)
    for idx in range(1, t):
        v = order[idx]
        p = parent[v]
        h = down[v] + 1
        if h > best1[p]:
            best2[p] = best1[p]
            best1[p] = h
        elif h > best2[p]:
            best2[p] = h
    g = np.zeros(t + 1, np.int64)
    mask = np.zeros(t + 1, np.uint8)
    for idx in range(1, t):
        v = order[idx]
        p = parent[v]
        sib = best1[p] if best1[p] != down[v] + 1 else best2[p]
        # best1 counts v itself once; when v attains it, fall back to best2.
        # Duplicated heights are fine: best2 then equals best1.
        up = g[p]
        if sib > up:
            up = sib
        g[v] = 1 + up
        if down[v] >= m - 1 and g[v] >= m:
            mask[v] = 1
    return mask


# ---------------------------------------------------------------------------
# Greedy monotone packing
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def greedy_best_chain(order, parent, used, t):
    """One greedy round: longest downward chain of unused vertices.

    uplen[v] = number of unused vertices on the maximal chain ending at v
    from above.  Returns (best_len, best_bottom); ties prefer the
    smallest-labelled bottom vertex.  best_len = 0 means nothing unused.
    """
    uplen = np.zeros(t + 1, np.int64)
    best_len = 0
    best_bottom = 0
    for idx in range(t):
        v = order[idx]
        if used[v] != 0:
            continue
        p = parent[v]
        if p != 0 and used[p] == 0:
            uplen[v] = uplen[p] + 1
        else:
            uplen[v] = 1
        lv = uplen[v]
        if lv > best_len or (lv == best_len and v < best_bottom):
            best_len = lv
            best_bottom = v
    return best_len, best_bottom


# ---------------------------------------------------------------------------
# Census enumeration
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def centred_count_all_codes(t, m, lo, hi):
    """Sum of m-centred edge counts over Prufer codes with odometer index
    in [lo, hi).  Codes are (t-2)-digit base-t numbers, digits 1..t, most
    significant digit first; index 0 is the all-ones code.
    """
    k = t - 2
    code = np.empty(k, np.int64)
    x = lo
    for i in range(k - 1, -1, -1):
        code[i] = x % t + 1
        x //= t
    total = np.int64(0)
    idx = lo
    while idx < hi:
        edges = prufer_decode(code, t)
        eu = edges[:, 0]
        ev = edges[:, 1]
        parent, depth, order, _ = bfs_tree(eu, ev, t, 1)
        cstart, clist = children_csr(order, parent, t)
        mask = centred_mask(order, parent, cstart, clist, m)
        for v in range(1, t + 1):
            total += mask[v]
        # odometer step
        i = k - 1
        while i >= 0:
            if code[i] < t:
                code[i] += 1
                break
            code[i] = 1
            i -= 1
        idx += 1
    return total


@njit(cache=True, nogil=True)
def centred_counts_sampled(codes, t, m):
    """m-centred edge count for each row of ``codes`` (uniform Prufer draws)."""
    nsamp = codes.shape[0]
    out = np.empty(nsamp, np.int64)
    for s in range(nsamp):
        edges = prufer_decode(codes[s], t)
        parent, depth, order, _ = bfs_tree(edges[:, 0], edges[:, 1], t, 1)
        cstart, clist = children_csr(order, parent, t)
        mask = centred_mask(order, parent, cstart, clist, m)
        c = np.int64(0)
        for v in range(1, t + 1):
            c += mask[v]
        out[s] = c
    return out


# ---------------------------------------------------------------------------
# Graph decomposition
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def uf_components(n, eu, ev):
    """Union-find with path halving; roots are the minimum label of each
    component, so representatives are canonical."""
    parent = np.arange(n + 1, dtype=np.int64)
    for i in range(eu.shape[0]):
        a = eu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if a < b:
            parent[b] = a
        else:
            parent[a] = b
    for v in range(1, n + 1):
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            nxt = parent[v]
            parent[v] = r
            v = nxt
    return parent


@njit(cache=True, nogil=True)
def two_core(n, eu, ev, member):
    """Peel degree <= 1 vertices from the subgraph induced by ``member``.

    Returns (vertex_alive, edge_alive) masks over 1..n and the edge array.
    Queue-based: O(n + |E|).
    """
    m = eu.shape[0]
    deg = np.zeros(n + 1, np.int64)
    edge_alive = np.zeros(m, np.uint8)
    for i in range(m):
        if member[eu[i]] != 0 and member[ev[i]] != 0:
            edge_alive[i] = 1
            deg[eu[i]] += 1
            deg[ev[i]] += 1
    # CSR over alive edges, storing edge ids
    start = np.zeros(n + 2, np.int64)
    for v in range(1, n + 1):
        start[v + 1] = start[v] + deg[v]
    eid = np.empty(2 * m, np.int64)
    fill = start.copy()
    for i in range(m):
        if edge_alive[i] != 0:
            u = eu[i]
            v = ev[i]
            eid[fill[u]] = i
            fill[u] += 1
            eid[fill[v]] = i
            fill[v] += 1
    alive = np.zeros(n + 1, np.uint8)
    # a vertex may be enqueued once per degree drop, so size for n + 2m
    queue = np.empty(n + 2 * m + 2, np.int64)
    qt = 0
    for v in range(1, n + 1):
        if member[v] != 0:
            alive[v] = 1
            if deg[v] <= 1:
                queue[qt] = v
                qt += 1
    qh = 0
    dead_edge = np.zeros(m, np.uint8)
    while qh < qt:
        v = queue[qh]
        qh += 1
        if alive[v] == 0:
            continue
        alive[v] = 0
        for j in range(start[v], start[v + 1]):
            i = eid[j]
            if dead_edge[i] != 0:
                continue
            dead_edge[i] = 1
            w = eu[i] if ev[i] == v else ev[i]
            if alive[w] != 0:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue[qt] = w
                    qt += 1
    for i in range(m):
        if edge_alive[i] != 0 and (alive[eu[i]] == 0 or alive[ev[i]] == 0):
            edge_alive[i] = 0
    return alive, edge_alive


# ---------------------------------------------------------------------------
# Rooted stats for Galton-Watson construction
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def depths_from_parents(parent, t):
    """Depths when parent[v] < v for all non-root v (generation order)."""
    depth = np.zeros(t + 1, np.int64)
    for v in range(2, t + 1):
        depth[v] = depth[parent[v]] + 1
    return depth


# ---------------------------------------------------------------------------
# Hidden-graph adaptive DFS
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def mix64(x):
    """splitmix64 finalizer on a uint64."""
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@njit(cache=True, nogil=True)
def hidden_dfs(n, seed_mix, thr, always_true, target_edges):
    """Depth-first path search against the keyed Bernoulli pair oracle.

    The active path lives on a stack of explored (= ever pushed) vertices.
    The top vertex scans never-pushed candidates in ascending label order,
    resuming past its previous scan position; a positive answer pushes the
    candidate, exhausting the labels pops the top.  An empty stack restarts
    at the smallest never-pushed vertex.  Success as soon as the stack
    holds target_edges + 1 vertices.

    Returns (found, stack, sp, us, vs, answers, count, positives).
    """
    # next-free pointers: nxt[x] = smallest never-pushed label >= x
    nxt = np.empty(n + 2, np.int64)
    for i in range(n + 2):
        nxt[i] = i
    ptr = np.ones(n + 1, np.int64)
    stack = np.empty(n + 1, np.int64)
    sp = 0
    cap = 1 << 14
    us = np.empty(cap, np.int32)
    vs = np.empty(cap, np.int32)
    aa = np.empty(cap, np.uint8)
    cnt = np.int64(0)
    npos = np.int64(0)
    while True:
        if sp == 0:
            # root the search at the smallest unexplored vertex
            r = np.int64(1)
            while nxt[r] != r:
                nxt[r] = nxt[nxt[r]]
                r = nxt[r]
            if r > n:
                return 0, stack, sp, us, vs, aa, cnt, npos
            nxt[r] = r + 1
            stack[0] = r
            sp = 1
            if sp == target_edges + 1:
                return 1, stack, sp, us, vs, aa, cnt, npos
        u = stack[sp - 1]
        v = ptr[u]
        while nxt[v] != v:
            nxt[v] = nxt[nxt[v]]
            v = nxt[v]
        advanced = False
        while v <= n:
            a = u if u < v else v
            b = v if u < v else u
            h = mix64((np.uint64(a) << np.uint64(32) | np.uint64(b))
                      ^ seed_mix)
            ans = np.uint8(1) if (always_true != 0 or h < thr) else np.uint8(0)
            if cnt == cap:
                cap2 = cap * 2
                us2 = np.empty(cap2, np.int32)
                vs2 = np.empty(cap2, np.int32)
                aa2 = np.empty(cap2, np.uint8)
                us2[:cap] = us
                vs2[:cap] = vs
                aa2[:cap] = aa
                us, vs, aa, cap = us2, vs2, aa2, cap2
            us[cnt] = a
            vs[cnt] = b
            aa[cnt] = ans
            cnt += 1
            if ans != 0:
                npos += 1
                ptr[u] = v + 1
                nxt[v] = v + 1
                stack[sp] = v
                sp += 1
                advanced = True
                break
            nv = v + 1
            while nxt[nv] != nv:
                nxt[nv] = nxt[nxt[nv]]
                nv = nxt[nv]
            v = nv
        if advanced:
            if sp == target_edges + 1:
                return 1, stack, sp, us, vs, aa, cnt, npos
        else:
            ptr[u] = n + 1
            sp -= 1
