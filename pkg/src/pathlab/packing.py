"""Path packings on trees: exact covers, greedy covers, centred edges.

The central quantity is the largest number of vertices coverable by
vertex-disjoint paths that each contain at least ``min_edges`` edges.  On
forests this is computed exactly by a linear-time dynamic programme
(`cov_exact`), certified by a reconstructed witness; `cov_bruteforce` is
an independent exhaustive oracle for tiny trees, and `greedy_pack` is the
longest-monotone-path heuristic whose output is guaranteed to touch both
endpoints of every sufficiently centred edge.

An edge uv is m-centred when deleting it leaves, on each side, a path of
at least m-1 edges starting at the respective endpoint; equivalently both
sides are tall enough when rooted at u and v.  Centred edges lower-bound
path covers (each contributes a coverable path through itself) and upper
bound them at a third of the threshold, which is what makes them worth
counting; `centred_edges` finds them all in one two-pass sweep.

Path length is measured in EDGES everywhere in this module, with one
exception: `split_path` follows a vertex-count convention (its threshold
is a vertex count), because that is the natural unit for chopping a host
path into surviving segments.

Forests are passed as lists of `Tree` values, each labelled 1..t_i; the
combined host relabels tree i by the running offset (tree 0 keeps its
labels, tree 1 starts at t_0 + 1, and so on), and witnesses use the
combined labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as _k
from .treekit import RootedTree, Tree

__all__ = [
    "PathSystem",
    "CentredEdgeReport",
    "is_centred",
    "centred_edges",
    "cov_exact",
    "cov_bruteforce",
    "greedy_pack",
    "split_path",
    "validate_path_system",
    "path_system_to_text",
    "path_system_from_text",
    "centred_report_to_text",
    "centred_report_from_text",
]


@dataclass(frozen=True)
class PathSystem:
    """Vertex-disjoint paths in a host of ``host_size`` vertices.

    ``paths`` holds vertex sequences; consecutive entries are host edges.
    ``min_edges`` is the per-path threshold the system was built for.
    """

    host_size: int
    min_edges: int
    paths: tuple[tuple[int, ...], ...]

    def covered(self) -> int:
        """Number of distinct vertices on the paths (paths are disjoint)."""
        return sum(len(p) for p in self.paths)

    def covered_edges(self) -> int:
        return sum(len(p) - 1 for p in self.paths)


@dataclass(frozen=True)
class CentredEdgeReport:
    m: int
    edges: tuple[tuple[int, int], ...]
    count: int


def _rooted_arrays(tree: Tree, root: int = 1):
    t = tree.t
    if t == 1:
        return (np.array([1], np.int64), np.zeros(2, np.int64),
                np.zeros(3, np.int64), np.empty(0, np.int64))
    parent, depth, order, visited = _k.bfs_tree(
        tree.edges[:, 0], tree.edges[:, 1], t, root)
    if visited != t:
        raise ValueError("edge set is not connected; not a tree")
    cstart, clist = _k.children_csr(order, parent, t)
    return order, parent, cstart, clist


# ---------------------------------------------------------------------------
# Centred edges
# ---------------------------------------------------------------------------

def is_centred(tree: Tree, edge: tuple[int, int], m: int) -> bool:
    """Definitional check for one edge: delete it and measure both sides.

    True iff the component of u, rooted at u, has height >= m-1, and
    likewise for v.  O(t); `centred_edges` computes all edges at once.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    u, v = int(edge[0]), int(edge[1])
    a, b = (u, v) if u < v else (v, u)
    e = tree.edges
    t = tree.t
    keys = e[:, 0] * (t + 1) + e[:, 1]
    i = int(np.searchsorted(keys, a * (t + 1) + b))
    if i >= keys.shape[0] or keys[i] != a * (t + 1) + b:
        raise ValueError(f"edge ({u}, {v}) not present")
    keep = np.ones(t - 1, bool)
    keep[i] = False
    eu = e[keep, 0]
    ev = e[keep, 1]
    for side in (a, b):
        _, depth, _, _ = _k.bfs_tree(eu, ev, t, side)
        if int(depth.max()) < m - 1:
            return False
    return True


def centred_edges(tree: Tree, m: int) -> CentredEdgeReport:
    """All m-centred edges via one down-heights + up-heights sweep."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if tree.t == 1:
        return CentredEdgeReport(m, (), 0)
    order, parent, cstart, clist = _rooted_arrays(tree)
    mask = _k.centred_mask(order, parent, cstart, clist, m)
    found = []
    for v in np.nonzero(mask[1:])[0] + 1:
        p = int(parent[v])
        v = int(v)
        found.append((p, v) if p < v else (v, p))
    found.sort()
    return CentredEdgeReport(m, tuple(found), len(found))


# ---------------------------------------------------------------------------
# Exact cover
# ---------------------------------------------------------------------------

def _as_forest(forest) -> list[Tree]:
    if isinstance(forest, Tree):
        return [forest]
    trees = list(forest)
    for tr in trees:
        if not isinstance(tr, Tree):
            raise TypeError(f"expected Tree, got {type(tr).__name__}")
    return trees


def _cov_tree(tree: Tree, L: int, init_p0: int, join_w: int,
              want_witness: bool):
    order, parent, cstart, clist = _rooted_arrays(tree)
    value, vec = _k.cov_dp(order, parent, cstart, clist, L, init_p0, join_w)
    value = max(int(value), 0)
    if not want_witness:
        return value, []
    ok, flat, offsets = _k.cov_witness(
        order, parent, cstart, clist, L, init_p0, join_w, vec)
    if not ok:
        raise RuntimeError("path-cover table failed to certify its value")
    paths = [tuple(int(x) for x in flat[offsets[k]:offsets[k + 1]])
             for k in range(offsets.shape[0] - 1)]
    return value, paths


def cov_exact(forest, min_edges: int) -> tuple[int, PathSystem]:
    """Exact maximum vertices covered by vertex-disjoint paths of at least
    ``min_edges`` edges, with an attaining witness.

    ``forest`` is a Tree or a list of Trees (combined-label convention in
    the module docstring).  If no path meets the threshold the value is 0
    and the witness is empty.
    """
    if min_edges < 1:
        raise ValueError("min_edges must be >= 1")
    trees = _as_forest(forest)
    value = 0
    offset = 0
    paths: list[tuple[int, ...]] = []
    for tree in trees:
        v, local = _cov_tree(tree, min_edges, 1, 0, True)
        value += v
        paths.extend(tuple(x + offset for x in p) for p in local)
        offset += tree.t
    return value, PathSystem(offset, min_edges, tuple(paths))


def _cov_edges_value(forest, min_edges: int) -> int:
    # edges-covered objective: a pending chain starts at 0 and the joining
    # edge counts 1; used by the branching-process surrogate
    if min_edges < 1:
        raise ValueError("min_edges must be >= 1")
    total = 0
    for tree in _as_forest(forest):
        v, _ = _cov_tree(tree, min_edges, 0, 1, False)
        total += v
    return total


def cov_bruteforce(tree: Tree, min_edges: int) -> int:
    """Exhaustive maximum over all vertex-disjoint path systems.

    Trees have one path per vertex pair, so candidates are the C(t,2)
    pair paths with enough edges; packing is a memoized search over the
    available-vertex bitmask.  Refused above t = 12.
    """
    if tree.t > 12:
        raise ValueError(f"cov_bruteforce refused: t={tree.t} > 12")
    if min_edges < 1:
        raise ValueError("min_edges must be >= 1")
    t = tree.t
    adj: list[list[int]] = [[] for _ in range(t + 1)]
    for u, v in tree.edge_list():
        adj[u].append(v)
        adj[v].append(u)
    cands: list[tuple[int, int]] = []  # (vertex bitmask, vertex count)
    for s in range(1, t + 1):
        par = [0] * (t + 1)
        seen = [False] * (t + 1)
        seen[s] = True
        queue = [s]
        for u in queue:
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    par[w] = u
                    queue.append(w)
        for e in range(s + 1, t + 1):
            nodes = [e]
            while nodes[-1] != s:
                nodes.append(par[nodes[-1]])
            if len(nodes) - 1 >= min_edges:
                mask = 0
                for x in nodes:
                    mask |= 1 << x
                cands.append((mask, len(nodes)))
    memo: dict[int, int] = {}

    def best(avail: int) -> int:
        got = memo.get(avail)
        if got is not None:
            return got
        out = 0
        for mask, size in cands:
            if mask & ~avail == 0:
                r = size + best(avail & ~mask)
                if r > out:
                    out = r
        memo[avail] = out
        return out

    full = ((1 << (t + 1)) - 1) & ~1
    return best(full)


# ---------------------------------------------------------------------------
# Greedy packing
# ---------------------------------------------------------------------------

def greedy_pack(rooted: RootedTree, min_edges: int) -> PathSystem:
    """Pack vertex-disjoint descending chains, longest first.

    Repeatedly selects the longest monotone (root-to-leaf direction) chain
    of unused vertices, ties going to the smallest-labelled deepest
    endpoint.  Chain length is counted in vertices here: the sweep runs
    while a chain of at least ``min_edges`` vertices remains, so the
    emitted system carries an edge floor of max(1, min_edges - 1).

    For min_edges >= 2 the output covers every endpoint of every
    min_edges-centred edge.  Sketch: the first selected chain that touches
    a subtree must enter at its top, because extending any lower candidate
    up to the top gives a strictly longer free chain; a centred endpoint
    tops a subtree of height >= min_edges - 1 edges, so the sweep cannot
    terminate while that endpoint is uncovered and its subtree untouched.
    Counting the stop threshold in edges instead breaks the guarantee:
    endpoints whose subtree has height exactly min_edges - 1 get stranded.
    """
    if min_edges < 1:
        raise ValueError("min_edges must be >= 1")
    floor_edges = max(1, min_edges - 1)
    t = rooted.t
    order, parent, _, _ = _rooted_arrays(rooted.tree, rooted.root)
    used = np.zeros(t + 1, np.uint8)
    paths = []
    while True:
        size, bottom = _k.greedy_best_chain(order, parent, used, t)
        if size - 1 < floor_edges:
            break
        chain = []
        v = bottom
        for _ in range(size):
            chain.append(int(v))
            used[v] = 1
            v = parent[v]
        paths.append(tuple(reversed(chain)))
    return PathSystem(t, floor_edges, tuple(paths))


# ---------------------------------------------------------------------------
# Host-path splitting
# ---------------------------------------------------------------------------

def split_path(n_vertices: int, removed, alpha: float) -> list[tuple[int, int]]:
    """Surviving segments of the path v_1..v_n after deleting edges.

    ``removed`` holds edge indices (edge i joins v_i and v_{i+1}).  Keeps
    the maximal unbroken segments with at least ceil(1/(3*alpha)) vertices
    (exact rational ceiling), returned as (first, last) vertex pairs.
    Requires |removed| <= alpha*n_vertices and alpha >= 1/n_vertices; the
    kept segments always cover at least (1/3 - alpha)*n_vertices vertices.
    """
    if n_vertices < 1:
        raise ValueError("n_vertices must be >= 1")
    cuts = sorted(set(int(r) for r in removed))
    if cuts and (cuts[0] < 1 or cuts[-1] > n_vertices - 1):
        raise ValueError("removed edge index out of range")
    if len(cuts) > alpha * n_vertices:
        raise ValueError(
            f"too many removals: {len(cuts)} > alpha*n = {alpha * n_vertices}")
    if alpha < 1.0 / n_vertices:
        raise ValueError(f"alpha={alpha} below 1/n_vertices")
    threshold = math.ceil(1 / (3 * Fraction(alpha)))
    segments = []
    start = 1
    for r in cuts + [n_vertices]:
        end = r  # segment v_start .. v_r (edge r is cut, or the path ends)
        if end - start + 1 >= threshold:
            segments.append((start, end))
        start = r + 1
    return segments


# ---------------------------------------------------------------------------
# Validation / serialization
# ---------------------------------------------------------------------------

def validate_path_system(system: PathSystem, forest) -> None:
    """Raise ValueError unless every path exists in the combined host,
    meets the edge threshold, and the paths are pairwise disjoint."""
    edge_keys = set()
    offset = 0
    for tree in _as_forest(forest):
        for u, v in tree.edge_list():
            edge_keys.add((u + offset, v + offset))
        offset += tree.t
    if offset != system.host_size:
        raise ValueError(
            f"host size {system.host_size} != forest total {offset}")
    taken: set[int] = set()
    for path in system.paths:
        if len(path) - 1 < system.min_edges:
            raise ValueError(f"path {path} shorter than {system.min_edges} edges")
        for x in path:
            if not (1 <= x <= system.host_size):
                raise ValueError(f"vertex {x} out of host range")
            if x in taken:
                raise ValueError(f"vertex {x} on two paths")
            taken.add(x)
        for a, b in zip(path, path[1:]):
            if (min(a, b), max(a, b)) not in edge_keys:
                raise ValueError(f"({a}, {b}) is not a host edge")


def path_system_to_text(system: PathSystem) -> str:
    """One path per line, space-separated vertex ids."""
    return "".join(" ".join(str(x) for x in p) + "\n" for p in system.paths)


def path_system_from_text(text: str, host_size: int,
                          min_edges: int) -> PathSystem:
    paths = tuple(tuple(int(x) for x in ln.split())
                  for ln in text.splitlines() if ln.strip())
    return PathSystem(host_size, min_edges, paths)


def centred_report_to_text(report: CentredEdgeReport) -> str:
    lines = [f"{report.m} {report.count}"]
    lines.extend(f"{u} {v}" for u, v in report.edges)
    return "\n".join(lines) + "\n"


def centred_report_from_text(text: str) -> CentredEdgeReport:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty centred-edge report")
    m, count = (int(x) for x in lines[0].split())
    edges = tuple((int(a), int(b))
                  for a, b in (ln.split() for ln in lines[1:]))
    if count != len(edges):
        raise ValueError(f"header count {count} != {len(edges)} edges")
    return CentredEdgeReport(m, edges, count)
