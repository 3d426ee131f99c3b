"""Sparse random graphs and the path-cover bounding pipeline.

Samples G(n, p) at p = (1 + eps)/n, decomposes a sample into components /
giant / 2-core / hanging forest, and turns the decomposition into a
two-sided estimate of how many vertices disjoint paths of a given length
can cover:

  * small tree components admit exact packing (forest DP);
  * small non-tree components are bracketed by [spanning-tree cov, |V|];
  * the giant is bounded through its 2-core: writing Z for the exact
    cover of the hanging forest at threshold floor(min_edges/3), the
    giant's contribution is at most 6|core| + 6Z and at least Z.

Also carries the dual-parameter solver mu(eps) with
mu e^{-mu} = (1+eps) e^{-(1+eps)}, and a branching-process surrogate that
packs Poisson(mu) trees in place of the giant's hanging forest.

Vertices are 1-based; edge arrays are int64 (m, 2) with u < v, lex
sorted, as in the tree modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as _k
from .packing import _cov_edges_value, cov_exact
from .treekit import GWConfig, Oversize, Tree, _frozen, sample_gw_poisson

__all__ = [
    "GnpGraph",
    "EmbeddedTree",
    "GnpDecomposition",
    "CovEstimate",
    "MuSolution",
    "sample_gnp",
    "decompose",
    "cov_gnp_estimate",
    "solve_mu",
    "gw_surrogate_cover",
    "gnp_to_text",
    "gnp_from_text",
]

_MAX_N = 10 ** 6
_MAX_EDGE_BUDGET = 10 ** 8


@dataclass(frozen=True, eq=False)
class GnpGraph:
    """A sampled sparse graph; p = (1 + eps)/n when built from eps."""

    n: int
    p: float
    eps: float
    edges: np.ndarray  # (m, 2) int64, u < v, lex sorted, no duplicates

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must lie in [0, 1]")

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def __eq__(self, other):
        if not isinstance(other, GnpGraph):
            return NotImplemented
        return (self.n == other.n and self.p == other.p
                and np.array_equal(self.edges, other.edges))

    def __hash__(self):
        return hash((self.n, self.p, self.edges.tobytes()))


@dataclass(frozen=True)
class EmbeddedTree:
    """A tree living inside a larger graph.

    ``tree`` uses local labels 1..t; ``vertices[local]`` is the original
    vertex id (index 0 unused).  ``anchor`` is the local label of the
    2-core attachment vertex for hanging-forest components, 0 when the
    component has no core vertex.
    """

    tree: Tree
    vertices: np.ndarray
    anchor: int = 0

    @property
    def t(self) -> int:
        return self.tree.t


@dataclass(frozen=True)
class GnpDecomposition:
    """Components, giant, 2-core of the giant, and the hanging forest.

    ``components`` partitions {1..n}, sorted by size descending with ties
    to the smallest label; ``giant`` is components[0].  ``two_core_*``
    describe the 2-core of the giant (empty for an acyclic giant).  The
    hanging forest holds the components of the giant after deleting core
    EDGES, one tree per core vertex with pendants attached; bare core
    vertices are omitted.  When the giant has no core it is itself a tree
    and is reported in ``giant_tree`` with an empty hanging forest.
    """

    n: int
    components: tuple[np.ndarray, ...]
    giant: np.ndarray
    two_core_vertices: np.ndarray
    two_core_edges: np.ndarray
    hanging_forest: tuple[EmbeddedTree, ...]
    small_trees: tuple[EmbeddedTree, ...]
    small_nontrees: tuple[EmbeddedTree, ...]  # spanning trees of those comps
    giant_tree: EmbeddedTree | None = field(default=None)

    @property
    def giant_size(self) -> int:
        return int(self.giant.shape[0])

    @property
    def second_size(self) -> int:
        if len(self.components) < 2:
            return 0
        return int(self.components[1].shape[0])


@dataclass(frozen=True)
class CovEstimate:
    """Two-sided path-cover estimate assembled from a decomposition.

    X bounds come from the small components, Z from the hanging forest at
    the reduced threshold, and Y_upper = 6*|core| + 6*Z bounds the giant.
    """

    min_edges: int
    X_lower: int
    X_upper: int
    Z: int
    Y_upper: int
    total_lower: int
    total_upper: int

    def __post_init__(self):
        if self.total_lower > self.total_upper:
            raise ValueError("estimate interval is inverted")


@dataclass(frozen=True)
class MuSolution:
    """Root of mu e^{-mu} = (1+eps) e^{-(1+eps)} inside (0, 1)."""

    eps: float
    mu: float
    residual: float

    def __post_init__(self):
        if not (0.0 < self.mu < 1.0):
            raise ValueError("mu must lie in (0, 1)")
        if self.residual > 1e-12:
            raise ValueError("residual above tolerance")


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def _unrank_pairs(n: int, idx: np.ndarray) -> np.ndarray:
    """Map 0-based pair indices to (u, v) rows, row-major over u < v."""
    # S(u) = (u-1)(2n-u)/2 pairs precede row u; invert the quadratic and
    # repair the float rounding locally
    k = idx.astype(np.float64)
    disc = (2 * n + 1) ** 2 - 8.0 * n - 8.0 * k
    u = np.floor(((2 * n + 1) - np.sqrt(disc)) / 2.0).astype(np.int64)
    u = np.clip(u, 1, n - 1)

    def pre(uu):
        return (uu - 1) * (2 * n - uu) // 2

    for _ in range(3):
        u = np.where(np.logical_and(u < n - 1, pre(u + 1) <= idx), u + 1, u)
        u = np.where(pre(u) > idx, u - 1, u)
    if np.any(pre(u) > idx) or np.any(np.logical_and(u < n - 1, pre(u + 1) <= idx)):
        raise RuntimeError("pair unranking failed to converge")
    v = idx - pre(u) + u + 1
    return np.column_stack((u, v))


def sample_gnp(n: int, eps: float, stream: np.random.Generator) -> GnpGraph:
    """G(n, p) at p = (1+eps)/n by geometric skipping over the pair list.

    Each of the C(n, 2) pairs appears independently with probability p.
    Gap lengths between successive present pairs are Geometric(p), so the
    cost is proportional to the number of edges, not to C(n, 2).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > _MAX_N:
        raise ValueError(f"sample_gnp refused: n={n} > {_MAX_N}")
    p = (1.0 + eps) / n
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p=(1+eps)/n = {p} outside [0, 1]")
    total = n * (n - 1) // 2
    expected = total * p
    if expected > _MAX_EDGE_BUDGET:
        raise ValueError(
            f"sample_gnp refused: expected edge count {expected:.3g} "
            f"exceeds {_MAX_EDGE_BUDGET}")
    if p == 0.0 or total == 0:
        return GnpGraph(n=n, p=p, eps=eps,
                        edges=_frozen(np.empty((0, 2), np.int64)))
    chunks = []
    pos = -1  # last accepted 0-based pair index
    batch = int(expected * 1.1) + 128
    while pos < total:
        gaps = stream.geometric(p, size=batch)
        here = pos + np.cumsum(gaps)
        take = here[here < total]
        if take.size:
            chunks.append(take)
        if here.size == 0:
            break
        pos = int(here[-1])
        batch = 1024
    if chunks:
        idx = np.concatenate(chunks)
    else:
        idx = np.empty(0, np.int64)
    return GnpGraph(n=n, p=p, eps=eps, edges=_frozen(_unrank_pairs(n, idx)))


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

# the two shapes that dominate sparse-graph component counts
_TREE_1 = Tree.from_edges(1, [])
_TREE_2 = Tree.from_edges(2, [(1, 2)])


def _embed(verts: np.ndarray, edge_rows: np.ndarray, anchor_orig: int = 0,
           ) -> EmbeddedTree:
    """Relabel a connected tree component to local 1..t (sorted order)."""
    verts = np.sort(verts)
    t = verts.shape[0]
    if t == 1:
        tree = _TREE_1
    elif t == 2:
        tree = _TREE_2
    else:
        # verts sorted and rows u < v, so local pairs stay u < v
        tree = Tree.from_edges(t, np.searchsorted(verts, edge_rows) + 1)
    vmap = _frozen(np.concatenate(([0], verts)))
    anchor = int(np.searchsorted(verts, anchor_orig)) + 1 if anchor_orig else 0
    return EmbeddedTree(tree=tree, vertices=vmap, anchor=anchor)


def _spanning_embed(verts: np.ndarray, edge_rows: np.ndarray) -> EmbeddedTree:
    """BFS spanning tree of a connected (possibly cyclic) component."""
    verts = np.sort(verts)
    t = verts.shape[0]
    local = np.searchsorted(verts, edge_rows) + 1
    eu = np.ascontiguousarray(local[:, 0])
    ev = np.ascontiguousarray(local[:, 1])
    parent, _, _, visited = _k.bfs_tree(eu, ev, t, 1)
    if visited < t:
        raise ValueError("component is not connected")
    pairs = [(int(parent[v]), v) for v in range(2, t + 1)] if t > 1 else []
    # parent can exceed child here (labels are sorted, not BFS order)
    tree = Tree.from_edges(t, [(min(a, b), max(a, b)) for a, b in pairs])
    return EmbeddedTree(tree=tree, vertices=_frozen(np.concatenate(([0], verts))))


def _group_rows(keys: np.ndarray, n_groups: int, rows: np.ndarray,
                ) -> tuple[np.ndarray, np.ndarray]:
    """Stable-sort rows by integer group key; return (sorted_rows, bounds)
    with group g occupying sorted_rows[bounds[g]:bounds[g+1]]."""
    order = np.argsort(keys, kind="stable")
    counts = np.bincount(keys, minlength=n_groups)
    bounds = np.concatenate(([0], np.cumsum(counts)))
    return rows[order], bounds


def decompose(graph: GnpGraph) -> GnpDecomposition:
    """Components, giant, giant's 2-core, hanging forest, small split.

    The 2-core comes from queue-based peeling of degree <= 1 vertices
    inside the giant.  Deleting the surviving core edges from the giant
    leaves a forest; each of its non-trivial components contains exactly
    one core vertex (two would imply a core-to-core path of peeled
    vertices, contradicting peeling) and is reported rooted nowhere, as a
    plain tree plus that anchor.
    """
    n = graph.n
    edges = graph.edges
    eu = np.ascontiguousarray(edges[:, 0]) if edges.size else np.empty(0, np.int64)
    ev = np.ascontiguousarray(edges[:, 1]) if edges.size else np.empty(0, np.int64)
    root = _k.uf_components(n, eu, ev)
    sizes = np.bincount(root[1:], minlength=n + 1)
    reps = np.flatnonzero(sizes)
    order = reps[np.lexsort((reps, -sizes[reps]))]
    rank = np.zeros(n + 1, np.int64)
    rank[order] = np.arange(order.size)

    # group vertices and edges by component rank in two sorts; stable
    # order keeps vertex labels ascending within each component
    verts_sorted, vbounds = _group_rows(
        rank[root[1:]], order.size, np.arange(1, n + 1, dtype=np.int64))
    components = tuple(
        _frozen(verts_sorted[vbounds[i]:vbounds[i + 1]])
        for i in range(order.size))
    giant = components[0]
    if edges.size:
        edges_sorted, ebounds = _group_rows(rank[root[eu]], order.size, edges)
    else:
        edges_sorted, ebounds = edges, np.zeros(order.size + 1, np.int64)

    member = np.zeros(n + 1, np.uint8)
    member[giant] = 1
    core_alive, core_edge = _k.two_core(n, eu, ev, member)
    core_vertices = _frozen(np.flatnonzero(core_alive).astype(np.int64))
    core_edges = _frozen(edges[core_edge.astype(bool)]) if edges.size else \
        _frozen(np.empty((0, 2), np.int64))

    hanging: list[EmbeddedTree] = []
    giant_tree = None
    if core_vertices.size == 0:
        # acyclic giant: peeling consumed everything, the giant is a tree
        ge = edges[rank[root[eu]] == 0] if edges.size else \
            np.empty((0, 2), np.int64)
        giant_tree = _embed(giant, ge)
    else:
        hang_rows = edges[np.logical_and(rank[root[eu]] == 0, core_edge == 0)] \
            if edges.size else np.empty((0, 2), np.int64)
        hu = np.ascontiguousarray(hang_rows[:, 0]) if hang_rows.size else \
            np.empty(0, np.int64)
        hv = np.ascontiguousarray(hang_rows[:, 1]) if hang_rows.size else \
            np.empty(0, np.int64)
        hroot = _k.uf_components(n, hu, hv)
        is_core = np.zeros(n + 1, np.uint8)
        is_core[core_vertices] = 1
        if hang_rows.size:
            hreps = np.unique(hroot[hu])
            hrank = np.zeros(n + 1, np.int64)
            hrank[hreps] = np.arange(hreps.size)
            hang_sorted, hbounds = _group_rows(
                hrank[hroot[hu]], hreps.size, hang_rows)
            for i in range(hreps.size):
                sel = hang_sorted[hbounds[i]:hbounds[i + 1]]
                verts = np.unique(sel)
                anchors = verts[is_core[verts] == 1]
                if anchors.size != 1:
                    raise RuntimeError(
                        f"hanging component carries {anchors.size} core vertices")
                hanging.append(_embed(verts, sel, int(anchors[0])))

    small_trees: list[EmbeddedTree] = []
    small_nontrees: list[EmbeddedTree] = []
    for i, comp in enumerate(components[1:], start=1):
        rows = edges_sorted[ebounds[i]:ebounds[i + 1]]
        if rows.shape[0] == comp.shape[0] - 1:
            small_trees.append(_embed(comp, rows))
        else:
            small_nontrees.append(_spanning_embed(comp, rows))

    return GnpDecomposition(
        n=n, components=components, giant=giant,
        two_core_vertices=core_vertices, two_core_edges=core_edges,
        hanging_forest=tuple(hanging), small_trees=tuple(small_trees),
        small_nontrees=tuple(small_nontrees), giant_tree=giant_tree)


# ---------------------------------------------------------------------------
# Cover estimation pipeline
# ---------------------------------------------------------------------------

def cov_gnp_estimate(dec: GnpDecomposition, min_edges: int) -> CovEstimate:
    """Bracket the min_edges path cover of the decomposed graph.

    Exact on every tree piece; non-tree small components contribute
    [cov(spanning tree), |V|]; the giant contributes through its core:
    at least its hanging forest's exact cover Z at threshold
    floor(min_edges/3), at most 6|core| + 6Z.  An acyclic giant is just
    another tree and is folded into the exact part.
    """
    if min_edges < 3:
        raise ValueError("min_edges must be >= 3 (reduced threshold >= 1)")
    exact_trees = [e.tree for e in dec.small_trees]
    if dec.giant_tree is not None:
        exact_trees.append(dec.giant_tree.tree)
    x_lo = x_hi = 0
    if exact_trees:
        val, _ = cov_exact(exact_trees, min_edges)
        x_lo += val
        x_hi += val
    for emb in dec.small_nontrees:
        val, _ = cov_exact([emb.tree], min_edges)
        x_lo += val
        x_hi += emb.t
    z = 0
    if dec.hanging_forest:
        z, _ = cov_exact([e.tree for e in dec.hanging_forest], min_edges // 3)
    y_up = 6 * int(dec.two_core_vertices.shape[0]) + 6 * z
    return CovEstimate(min_edges=min_edges, X_lower=x_lo, X_upper=x_hi,
                       Z=z, Y_upper=y_up,
                       total_lower=x_lo + z, total_upper=x_hi + y_up)


# ---------------------------------------------------------------------------
# Dual parameter and branching surrogate
# ---------------------------------------------------------------------------

def solve_mu(eps: float) -> MuSolution:
    """The conjugate mu in (0,1) with mu e^{-mu} = (1+eps) e^{-(1+eps)}.

    g(mu) = mu e^{-mu} is strictly increasing on (0,1), so bisection
    converges to the unique root; iterate to residual <= 1e-12.
    """
    if not (eps > 0):
        raise ValueError("eps must be positive")
    target = (1.0 + eps) * math.exp(-(1.0 + eps))

    def f(mu: float) -> float:
        return mu * math.exp(-mu) - target

    lo, hi = 1e-300, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    mu = lo if abs(f(lo)) <= abs(f(hi)) else hi
    mu = min(max(mu, 1e-300), 1.0 - 1e-16)
    return MuSolution(eps=eps, mu=mu, residual=abs(f(mu)))


def gw_surrogate_cover(eps: float, n: int, min_edges: int,
                       stream: np.random.Generator) -> int:
    """Edges covered by packing ceil(2 eps^2 n) Poisson(mu(eps)) trees.

    Samples the trees independently, then returns the exact maximum
    number of EDGES covered by vertex-disjoint paths of at least
    floor(min_edges/3) edges across their disjoint union (for any witness
    this equals covered vertices minus path count; the packing maximizes
    the edge form directly).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > _MAX_N:
        raise ValueError(f"gw_surrogate_cover refused: n={n} > {_MAX_N}")
    if min_edges < 3:
        raise ValueError("min_edges must be >= 3 (reduced threshold >= 1)")
    mu = solve_mu(eps).mu
    k = math.ceil(2.0 * eps * eps * n)
    cfg = GWConfig(mu=mu)
    trees = []
    for _ in range(k):
        got = sample_gw_poisson(cfg, stream)
        if isinstance(got, Oversize):
            raise RuntimeError(
                f"surrogate tree outgrew the size cap {got.size_cap}")
        trees.append(got.tree)
    if not trees:
        return 0
    return _cov_edges_value(trees, min_edges // 3)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def gnp_to_text(graph: GnpGraph) -> str:
    lines = [f"n {graph.n} p {graph.p!r}"]
    lines.extend(f"{int(u)} {int(v)}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def gnp_from_text(text: str) -> GnpGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "n" or head[2] != "p":
        raise ValueError("graph header must be 'n <count> p <value>'")
    n = int(head[1])
    p = float(head[3])
    rows = []
    for ln in lines[1:]:
        a, b = ln.split()
        u, v = int(a), int(b)
        if not (1 <= u < v <= n):
            raise ValueError(f"bad edge ({u}, {v})")
        rows.append((u, v))
    if len(rows) != len(set(rows)):
        raise ValueError("duplicate edges")
    edges = np.asarray(rows, np.int64).reshape(len(rows), 2)
    order = np.lexsort((edges[:, 1], edges[:, 0])) if rows else []
    return GnpGraph(n=n, p=p, eps=p * n - 1.0,
                    edges=_frozen(edges[order] if rows else edges))
