import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_impls as ref
from pathlab import (
    GWConfig,
    Oversize,
    PruferCode,
    RejectionBudgetError,
    Tree,
    prufer_decode,
    prufer_encode,
    sample_gw_conditioned,
    sample_gw_poisson,
    sample_uniform_rooted_tree,
    sample_uniform_tree,
    stream_from,
    tree_from_text,
    tree_stats,
    tree_to_text,
    validate_tree,
)


def codes(t):
    return itertools.product(range(1, t + 1), repeat=t - 2)


def test_decode_matches_naive_exhaustive_small():
    for t in (3, 4, 5):
        for code in codes(t):
            tree = prufer_decode(PruferCode(t, np.array(code, np.int64)))
            assert tree.edge_list() == ref.naive_prufer_decode(t, list(code))


def test_encode_matches_naive_exhaustive_small():
    for t in (4, 5):
        for code in codes(t):
            tree = prufer_decode(PruferCode(t, np.array(code, np.int64)))
            got = prufer_encode(tree)
            assert list(got.code) == ref.naive_prufer_encode(t, tree.edge_list())


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2 ** 31 - 1))
def test_roundtrip_random(t, seed):
    stream = stream_from(seed)
    code = PruferCode(t, stream.integers(1, t + 1, size=t - 2))
    tree = prufer_decode(code)
    validate_tree(tree)
    assert prufer_encode(tree) == code


def test_t2_special_case():
    tree = prufer_decode(PruferCode(2, np.empty(0, np.int64)))
    assert tree.edge_list() == [(1, 2)]
    assert list(prufer_encode(tree).code) == []


def test_validate_rejects_broken_trees():
    with pytest.raises(ValueError):
        Tree.from_edges(3, [(1, 2)])
    with pytest.raises(ValueError):
        Tree.from_edges(3, [(1, 2), (1, 2)])
    with pytest.raises(ValueError):
        Tree.from_edges(4, [(1, 2), (3, 4), (1, 2)])
    with pytest.raises(ValueError):
        Tree.from_edges(3, [(1, 2), (2, 4)])


def test_uniform_sampler_hits_all_trees():
    # 16 labelled trees at t=4; chi-square sanity at 3 sigma
    stream = stream_from(99)
    counts = {}
    trials = 4000
    for _ in range(trials):
        tree = sample_uniform_tree(4, stream)
        counts[tree] = counts.get(tree, 0) + 1
    assert len(counts) == 16
    expected = trials / 16
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 50  # df=15, mean 15, sd ~ 5.5


def test_rooted_sampler_root_uniform():
    stream = stream_from(7)
    roots = np.array([sample_uniform_rooted_tree(5, stream).root
                      for _ in range(2000)])
    for r in range(1, 6):
        frac = np.mean(roots == r)
        assert abs(frac - 0.2) < 0.05


def test_tree_stats_depths():
    tree = Tree.from_edges(6, [(1, 2), (2, 3), (3, 4), (2, 5), (5, 6)])
    rt = tree_stats(tree, 1)
    assert list(rt.depth[1:]) == [0, 1, 2, 3, 2, 3]
    assert rt.height == 3
    assert rt.width == 2
    rt4 = tree_stats(tree, 4)
    assert rt4.height == 4
    assert rt4.depth[6] == 4


def test_levels_account_for_every_vertex():
    stream = stream_from(3)
    for _ in range(50):
        t = int(stream.integers(2, 60))
        rt = sample_uniform_rooted_tree(t, stream)
        counts = np.bincount(rt.depth[1:])
        assert counts.sum() == t
        assert counts[0] == 1
        # (levels) * (max level size) >= t, the pigeonhole form
        assert (rt.height + 1) * max(rt.width, 1) >= t


def test_gw_poisson_oversize_marker():
    out = sample_gw_poisson(GWConfig(mu=1.0, size_cap=3), stream_from(1))
    seen_oversize = False
    for k in range(50):
        out = sample_gw_poisson(GWConfig(mu=1.0, size_cap=3), stream_from(k))
        if isinstance(out, Oversize):
            seen_oversize = True
            assert out.population > 3
        else:
            assert out.t <= 3
    assert seen_oversize


def test_gw_conditioned_size_and_budget():
    stream = stream_from(5)
    for _ in range(50):
        rt = sample_gw_conditioned(0.8, 6, stream)
        assert rt.t == 6
        validate_tree(rt.tree)
    with pytest.raises(RejectionBudgetError):
        # size-50 tree at mu=0.05 is essentially impossible
        sample_gw_conditioned(0.05, 50, stream_from(6), max_attempts=200)


def test_serialization_roundtrip():
    stream = stream_from(11)
    for _ in range(20):
        t = int(stream.integers(1, 40))
        tree = sample_uniform_tree(t, stream)
        assert tree_from_text(tree_to_text(tree)) == tree


def test_text_rejects_garbage():
    with pytest.raises(ValueError):
        tree_from_text("t 3\n1 2\n")
    with pytest.raises(ValueError):
        tree_from_text("t 3\n1 2\n2 5\n")
