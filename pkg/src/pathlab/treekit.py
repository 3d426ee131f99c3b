"""Labelled trees: Prufer codec, uniform samplers, and Galton-Watson growth.

Overview
--------
This module owns the tree objects used everywhere else in the package.

* ``Tree`` is an immutable labelled tree on vertex set ``{1..t}`` stored as
  a canonical edge array (each row ``u < v``, rows lexicographically
  sorted).
* ``prufer_decode`` / ``prufer_encode`` realize the classical bijection
  between trees on ``{1..t}`` and length ``t-2`` sequences over ``{1..t}``,
  which is what makes exact uniform sampling and exhaustive enumeration
  cheap.
* ``sample_gw_poisson`` grows a Poisson(mu) branching tree breadth-first;
  ``sample_gw_conditioned`` rejection-samples it to an exact size and
  applies a uniformly random relabelling, which makes the critical case
  (mu = 1) literally uniform over rooted labelled trees and therefore
  testable against enumeration.

Conventions
-----------
Vertex labels are 1-based.  Per-vertex arrays (e.g. ``RootedTree.depth``)
have length ``t + 1`` with slot 0 unused.  Heights and depths are counted
in edges.  All samplers are pure functions of their ``stream`` argument
(a ``numpy.random.Generator``); see ``pathlab.streams``.

Reduced-code decoding is intentionally pinned to one concrete scheme (the
linear "pointer over smallest unused leaf" algorithm) because downstream
tests enumerate codes and freeze expected trees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k

__all__ = [
    "Tree",
    "RootedTree",
    "PruferCode",
    "GWConfig",
    "Oversize",
    "RejectionBudgetError",
    "prufer_decode",
    "prufer_encode",
    "sample_uniform_tree",
    "sample_uniform_rooted_tree",
    "tree_stats",
    "sample_gw_poisson",
    "sample_gw_conditioned",
    "validate_tree",
    "tree_to_text",
    "tree_from_text",
    "prufer_to_text",
    "prufer_from_text",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def _canonical_edges(edges: np.ndarray) -> np.ndarray:
    """Sort each row to u < v and the rows lexicographically."""
    if edges.size == 0:
        return _frozen(np.empty((0, 2), np.int64))
    e = np.sort(np.asarray(edges, dtype=np.int64).reshape(-1, 2), axis=1)
    idx = np.lexsort((e[:, 1], e[:, 0]))
    return _frozen(e[idx])


@dataclass(frozen=True, eq=False)
class Tree:
    """Labelled tree on ``{1..t}``.

    Attributes
    ----------
    t : int
        Number of vertices.
    edges : numpy.ndarray
        Shape ``(t-1, 2)`` int64, canonical form: ``u < v`` per row, rows
        lexicographically sorted.  Read-only.
    """

    t: int
    edges: np.ndarray

    @classmethod
    def from_edges(cls, t: int, edges) -> "Tree":
        """Build from any iterable of (u, v) pairs; canonicalizes and
        fully validates (count, range, connectivity)."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        tree = cls(t, _canonical_edges(arr))
        validate_tree(tree)
        return tree

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tree) and self.t == other.t
                and np.array_equal(self.edges, other.edges))

    def __hash__(self) -> int:
        return hash((self.t, self.edges.tobytes()))

    def __repr__(self) -> str:  # keep small trees readable in test output
        if self.t <= 12:
            return f"Tree(t={self.t}, edges={self.edge_list()})"
        return f"Tree(t={self.t}, <{self.t - 1} edges>)"


@dataclass(frozen=True, eq=False)
class RootedTree:
    """A ``Tree`` with a distinguished root and its depth profile.

    Attributes
    ----------
    tree : Tree
    root : int
    depth : numpy.ndarray
        ``depth[v]`` = distance (edges) from the root, for v in 1..t;
        slot 0 unused.  Read-only.
    height : int
        ``max_v depth[v]``.
    width : int
        ``max_{k >= 1} |{v : depth[v] = k}|`` (0 for a single vertex).
    """

    tree: Tree
    root: int
    depth: np.ndarray
    height: int
    width: int

    @property
    def t(self) -> int:
        return self.tree.t


@dataclass(frozen=True, eq=False)
class PruferCode:
    """Length ``t-2`` sequence over ``{1..t}``; requires ``t >= 2``."""

    t: int
    code: np.ndarray

    def __post_init__(self):
        if self.t < 2:
            raise ValueError(f"PruferCode needs t >= 2, got t={self.t}")
        arr = _frozen(np.asarray(self.code, dtype=np.int64).reshape(-1))
        object.__setattr__(self, "code", arr)
        if arr.shape[0] != self.t - 2:
            raise ValueError(
                f"code length {arr.shape[0]} != t-2 = {self.t - 2}")
        if arr.size and (arr.min() < 1 or arr.max() > self.t):
            raise ValueError("code entries must lie in 1..t")

    def __eq__(self, other) -> bool:
        return (isinstance(other, PruferCode) and self.t == other.t
                and np.array_equal(self.code, other.code))

    def __hash__(self) -> int:
        return hash((self.t, self.code.tobytes()))


@dataclass(frozen=True)
class GWConfig:
    """Poisson offspring mean and a memory guard for near-critical growth."""

    mu: float
    size_cap: int = 10_000_000

    def __post_init__(self):
        if not (0.0 < self.mu <= 1.0):
            raise ValueError(f"mu must be in (0, 1], got {self.mu}")
        if self.size_cap < 1:
            raise ValueError("size_cap must be >= 1")


@dataclass(frozen=True)
class Oversize:
    """Marker: a branching process outgrew its configured cap."""

    size_cap: int
    population: int


class RejectionBudgetError(RuntimeError):
    """Conditioned sampling exhausted max_attempts without an acceptance."""

    def __init__(self, attempts: int, target_size: int):
        super().__init__(
            f"no tree of size {target_size} accepted in {attempts} attempts")
        self.attempts = attempts
        self.target_size = target_size


# ---------------------------------------------------------------------------
# Prufer bijection
# ---------------------------------------------------------------------------

def prufer_decode(code: PruferCode) -> Tree:
    """The unique tree associated with ``code`` (standard bijection).

    >>> prufer_decode(PruferCode(4, [1, 1])).edge_list()
    [(1, 2), (1, 3), (1, 4)]
    """
    edges = _k.prufer_decode(code.code, code.t)
    return Tree(code.t, _canonical_edges(edges))


def prufer_encode(tree: Tree) -> PruferCode:
    """Inverse of :func:`prufer_decode`.

    >>> prufer_encode(Tree.from_edges(2, [(1, 2)])).code.tolist()
    []
    """
    if tree.t < 2:
        raise ValueError("prufer_encode needs t >= 2")
    code = _k.prufer_encode(tree.edges[:, 0], tree.edges[:, 1], tree.t)
    return PruferCode(tree.t, code)


# ---------------------------------------------------------------------------
# Uniform samplers
# ---------------------------------------------------------------------------

def sample_uniform_tree(t: int, stream: np.random.Generator) -> Tree:
    """Uniform over the ``t**(t-2)`` trees on ``{1..t}`` (uniform code
    entries for t >= 3; deterministic for t <= 2)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if t == 1:
        return Tree(1, _frozen(np.empty((0, 2), np.int64)))
    if t == 2:
        return Tree(2, _frozen(np.array([[1, 2]], np.int64)))
    code = stream.integers(1, t + 1, size=t - 2)
    return Tree(t, _canonical_edges(_k.prufer_decode(code, t)))


def sample_uniform_rooted_tree(t: int, stream: np.random.Generator) -> RootedTree:
    """Uniform over the ``t**(t-1)`` rooted trees: uniform tree, then an
    independent uniform root (drawn in that order)."""
    tree = sample_uniform_tree(t, stream)
    root = int(stream.integers(1, t + 1))
    return tree_stats(tree, root)


def tree_stats(tree: Tree, root: int) -> RootedTree:
    """Depth profile, height and width of ``tree`` rooted at ``root``."""
    t = tree.t
    if not (1 <= root <= t):
        raise ValueError(f"root {root} out of range 1..{t}")
    if t == 1:
        depth = _frozen(np.zeros(2, np.int64))
        return RootedTree(tree, root, depth, 0, 0)
    parent, depth, order, visited = _k.bfs_tree(
        tree.edges[:, 0], tree.edges[:, 1], t, root)
    if visited != t:
        raise ValueError("edge set is not connected; not a tree")
    return RootedTree(tree, root, _frozen(depth), *_height_width(depth, t))


def _height_width(depth: np.ndarray, t: int) -> tuple[int, int]:
    height = int(depth[1:].max())
    if height == 0:
        return 0, 0
    counts = np.bincount(depth[1:])
    return height, int(counts[1:].max())


def validate_tree(tree: Tree) -> None:
    """Raise ValueError unless ``tree`` satisfies every Tree invariant:
    exactly t-1 canonical edges on {1..t}, no loops or duplicates,
    connected (hence acyclic)."""
    t, e = tree.t, tree.edges
    if t < 1:
        raise ValueError("t must be >= 1")
    if e.shape != (t - 1, 2):
        raise ValueError(f"expected {t - 1} edges, got shape {e.shape}")
    if t == 1:
        return
    if e.min() < 1 or e.max() > t:
        raise ValueError("edge endpoint out of range")
    if not (e[:, 0] < e[:, 1]).all():
        raise ValueError("edges must be stored with u < v")
    keys = e[:, 0] * (t + 1) + e[:, 1]
    if not (np.diff(keys) > 0).all():
        raise ValueError("edges must be lexicographically sorted and distinct")
    _, _, _, visited = _k.bfs_tree(e[:, 0], e[:, 1], t, 1)
    if visited != t:
        raise ValueError("edge set is not connected")


# ---------------------------------------------------------------------------
# Galton-Watson growth
# ---------------------------------------------------------------------------

def _poisson_scalar(mu: float, u: float) -> int:
    # inversion by sequential search: smallest k with u < CDF(k)
    term = math.exp(-mu)
    cdf = term
    k = 0
    while u >= cdf:
        k += 1
        term *= mu / k
        cdf += term
        if k > 400:  # unreachable for mu <= 1; guards float saturation
            break
    return k


def _poisson_from_uniform_array(mu: float, u: np.ndarray) -> np.ndarray:
    """Vectorized inversion by sequential search.

    All still-active entries share the same k at every step, so the term
    update is a scalar recurrence; results match _poisson_scalar entry by
    entry for identical uniforms.
    """
    k = np.zeros(u.shape, np.int64)
    term = math.exp(-mu)
    cdf = np.full(u.shape, term)
    active = u >= cdf
    it = 0
    while active.any():
        it += 1
        if it > 400:
            break
        term *= mu / it
        k[active] += 1
        cdf[active] += term
        active &= u >= cdf
    return k


def sample_gw_poisson(config: GWConfig, stream: np.random.Generator):
    """Grow one Poisson(mu) Galton-Watson tree breadth-first.

    Vertices are labelled 1..|T| in generation order (the root is 1,
    its children 2.., and so on level by level).  Returns an
    :class:`Oversize` marker instead of a tree as soon as the population
    would exceed ``config.size_cap``.
    """
    mu, cap = config.mu, config.size_cap
    parent = [0, 0]  # parent[1] = 0 (root); parent[v] < v by construction
    total = 1
    head = 1
    while head <= total:
        k = _poisson_scalar(mu, stream.random())
        if total + k > cap:
            return Oversize(size_cap=cap, population=total + k)
        for _ in range(k):
            total += 1
            parent.append(head)
        head += 1
    return _rooted_from_generation_parents(np.array(parent, np.int64), total)


def _rooted_from_generation_parents(par: np.ndarray, t: int) -> RootedTree:
    # generation-order parents satisfy parent[v] < v and are nondecreasing
    # in v, so the edge rows (parent[v], v) are already canonical
    if t == 1:
        tree = Tree(1, _frozen(np.empty((0, 2), np.int64)))
        return RootedTree(tree, 1, _frozen(np.zeros(2, np.int64)), 0, 0)
    edges = _frozen(np.column_stack((par[2:], np.arange(2, t + 1, dtype=np.int64))))
    tree = Tree(t, edges)
    depth = _k.depths_from_parents(par, t)
    return RootedTree(tree, 1, _frozen(depth), *_height_width(depth, t))


def sample_gw_conditioned(mu: float, t: int, stream: np.random.Generator,
                          max_attempts: int = 10_000_000) -> RootedTree:
    """Poisson(mu) Galton-Watson tree conditioned on |T| = t, uniformly
    relabelled.

    Plain rejection: grow trees until one has exactly t vertices, then
    apply a uniformly random permutation of the labels (generation-order
    labels are not exchangeable; the relabelling makes the mu = 1 output
    exactly uniform over rooted labelled trees on {1..t}).

    Attempts are vectorized internally: a batch of offspring sequences is
    drawn and each row is tested for being the depth-first offspring
    profile of a size-t tree (partial sums of ``xi_i - 1`` stay >= 0 and
    first hit -1 exactly at step t), which is the same accept/reject event
    as growing the tree directly.

    Raises :class:`RejectionBudgetError` after ``max_attempts`` rejections.
    """
    if not (0.0 < mu <= 1.0):
        raise ValueError(f"mu must be in (0, 1], got {mu}")
    if t < 1:
        raise ValueError("t must be >= 1")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    attempts = 0
    batch = 64
    steps = np.arange(1, t + 1, dtype=np.int64)
    while attempts < max_attempts:
        bs = min(batch, max_attempts - attempts)
        xi = _poisson_from_uniform_array(mu, stream.random((bs, t)))
        walk = np.cumsum(xi, axis=1) - steps
        ok = walk[:, -1] == -1
        if t > 1:
            ok &= (walk[:, :-1] >= 0).all(axis=1)
        hits = np.nonzero(ok)[0]
        if hits.size:
            attempts += int(hits[0]) + 1
            return _relabel_preorder(xi[hits[0]], t, stream)
        attempts += bs
        batch = min(batch * 2, 4096)
    raise RejectionBudgetError(attempts, t)


def _relabel_preorder(xi: np.ndarray, t: int, stream: np.random.Generator) -> RootedTree:
    """Tree from a depth-first offspring profile, then a uniform relabel."""
    parent = np.zeros(t + 1, np.int64)
    stack = [(1, int(xi[0]))]
    nxt = 2
    while stack:
        v, r = stack[-1]
        if r == 0:
            stack.pop()
            continue
        stack[-1] = (v, r - 1)
        parent[nxt] = v
        stack.append((nxt, int(xi[nxt - 1])))
        nxt += 1
    relab = np.empty(t + 1, np.int64)
    relab[1:] = stream.permutation(t) + 1
    if t == 1:
        tree = Tree(1, _frozen(np.empty((0, 2), np.int64)))
        return RootedTree(tree, 1, _frozen(np.zeros(2, np.int64)), 0, 0)
    vs = np.arange(2, t + 1, dtype=np.int64)
    edges = _canonical_edges(np.column_stack((relab[parent[2:]], relab[vs])))
    return tree_stats(Tree(t, edges), int(relab[1]))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def tree_to_text(tree: Tree) -> str:
    """Edge-list format: header ``t <count>``, then one ``u v`` line per
    edge, u < v, lexicographically sorted."""
    lines = [f"t {tree.t}"]
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def tree_from_text(text: str) -> Tree:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("t "):
        raise ValueError("missing 't <count>' header")
    t = int(lines[0].split()[1])
    rows = [tuple(map(int, ln.split())) for ln in lines[1:]]
    for r in rows:
        if len(r) != 2:
            raise ValueError(f"bad edge line: {r!r}")
    return Tree.from_edges(t, rows)


def prufer_to_text(code: PruferCode) -> str:
    return ",".join(str(int(x)) for x in code.code) + "\n"


def prufer_from_text(text: str, t: int | None = None) -> PruferCode:
    """Parse a comma-separated code line.  ``t`` defaults to len + 2."""
    body = text.strip()
    entries = [int(x) for x in body.split(",")] if body else []
    return PruferCode(len(entries) + 2 if t is None else t, entries)
