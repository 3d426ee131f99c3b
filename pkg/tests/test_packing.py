from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_impls as ref
from pathlab import (
    PathSystem,
    PruferCode,
    Tree,
    centred_edges,
    cov_exact,
    greedy_pack,
    prufer_decode,
    sample_uniform_tree,
    split_path,
    stream_from,
    tree_stats,
    validate_path_system,
)


def random_tree(t, seed):
    if t == 2:
        return prufer_decode(PruferCode(2, np.empty(0, np.int64)))
    stream = stream_from(seed)
    return prufer_decode(PruferCode(t, stream.integers(1, t + 1, size=t - 2)))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 8), st.integers(1, 7), st.integers(0, 10 ** 6))
def test_cov_matches_bruteforce(t, min_edges, seed):
    tree = random_tree(t, seed)
    value, system = cov_exact(tree, min_edges)
    assert value == ref.brute_cov(t, tree.edge_list(), min_edges)
    validate_path_system(system, tree)
    assert system.covered() == value


def test_cov_path_and_star():
    path = Tree.from_edges(6, [(i, i + 1) for i in range(1, 6)])
    assert cov_exact(path, 5)[0] == 6
    assert cov_exact(path, 6)[0] == 0
    assert cov_exact(path, 2)[0] == 6
    star = Tree.from_edges(6, [(1, k) for k in range(2, 7)])
    assert cov_exact(star, 2)[0] == 3  # a single path through the hub
    assert cov_exact(star, 3)[0] == 0


def test_cov_forest_input():
    a = Tree.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    b = Tree.from_edges(3, [(1, 2), (2, 3)])
    value, system = cov_exact((a, b), 2)
    assert value == 7
    validate_path_system(system, (a, b))


def test_cov_single_vertex():
    single = Tree.from_edges(1, [])
    assert cov_exact(single, 1)[0] == 0


def test_relabelling_invariance():
    stream = stream_from(77)
    for _ in range(30):
        t = int(stream.integers(3, 60))
        tree = sample_uniform_tree(t, stream)
        perm = np.concatenate(([0], stream.permutation(t) + 1))
        relabelled = Tree.from_edges(t, perm[np.asarray(tree.edges)])
        for ell in (1, 2, 3, 5):
            assert cov_exact(tree, ell)[0] == cov_exact(relabelled, ell)[0]


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_centred_edges_match_naive(t, m, seed):
    tree = random_tree(t, seed)
    rep = centred_edges(tree, m)
    got = sorted((int(u), int(v)) for u, v in rep.edges)
    assert got == ref.naive_centred_edges(t, tree.edge_list(), m)
    assert rep.count == len(got)


def test_centred_middle_edge_of_path():
    path = Tree.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    assert sorted(map(tuple, centred_edges(path, 2).edges)) == [(2, 3)]
    assert centred_edges(path, 3).count == 0


def test_greedy_covers_centred_endpoints():
    stream = stream_from(15)
    for k in range(60):
        t = int(stream.integers(5, 200))
        tree = sample_uniform_tree(t, stream)
        root = int(stream.integers(1, t + 1))
        m = int(stream.integers(2, 7))
        system = greedy_pack(tree_stats(tree, root), m)
        validate_path_system(system, tree)
        covered = set(v for p in system.paths for v in p)
        for u, v in centred_edges(tree, m).edges:
            assert int(u) in covered and int(v) in covered


def test_greedy_paths_are_descending_chains():
    tree = Tree.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 7)])
    system = greedy_pack(tree_stats(tree, 1), 3)
    rt = tree_stats(tree, 1)
    for path in system.paths:
        depths = [int(rt.depth[v]) for v in path]
        assert depths == sorted(depths)
        assert all(b - a == 1 for a, b in zip(depths, depths[1:]))


def test_path_system_validation_rejects():
    tree = Tree.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    with pytest.raises(ValueError):
        validate_path_system(PathSystem(4, 2, ((1, 2, 3), (3, 4))), tree)
    with pytest.raises(ValueError):
        validate_path_system(PathSystem(4, 2, ((1, 2),)), tree)
    with pytest.raises(ValueError):
        validate_path_system(PathSystem(4, 1, ((1, 3),)), tree)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 400), st.data())
def test_split_path_guarantees(n, data):
    alpha = float(data.draw(st.fractions(Fraction(1, n), Fraction(1, 2))))
    # cut budget must match the float the function actually sees: e.g.
    # float(1/49)*49 < 1, so floor of the exact-rational product would
    # overshoot the validation bound
    max_cuts = int(Fraction(alpha) * n)
    k = data.draw(st.integers(0, min(max_cuts, n - 1)))
    removed = data.draw(st.sets(st.integers(1, n - 1), min_size=k, max_size=k))
    segments = split_path(n, removed, alpha)
    threshold = -(-1 // (3 * Fraction(alpha)))  # ceil
    covered = 0
    for first, last in segments:
        size = last - first + 1
        assert size >= threshold
        covered += size
    assert covered >= (Fraction(1, 3) - Fraction(alpha)) * n


def test_split_path_examples():
    assert split_path(10, [], 0.2) == [(1, 10)]
    # cutting edge 5 leaves 1..5 and 6..10; threshold ceil(1/0.6) = 2
    assert split_path(10, [5], 0.2) == [(1, 5), (6, 10)]
    with pytest.raises(ValueError):
        split_path(10, [1, 2, 3], 0.2)  # 3 > alpha*n = 2
    with pytest.raises(ValueError):
        split_path(10, [10], 0.2)  # edge index out of range
