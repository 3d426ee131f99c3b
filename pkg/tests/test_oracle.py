import numpy as np
import pytest

from pathlab import (
    DFSStrategy,
    HiddenGraph,
    QueryLedger,
    dfs_find_path,
    query,
    revalidate,
    run_strategy,
    transcript_from_text,
    transcript_to_text,
)
from pathlab.oracle import _mix64_int, _mix64_np


def test_mix64_scalar_matches_vector():
    rng = np.random.default_rng(0)
    xs = rng.integers(0, 1 << 64, size=200, dtype=np.uint64)
    vec = _mix64_np(xs)
    for x, y in zip(xs, vec):
        assert _mix64_int(int(x)) == int(y)


def test_pair_answers_are_pure_and_symmetric():
    h = HiddenGraph(n=50, p=0.4, master_seed=123)
    u = np.arange(1, 50, dtype=np.int64)
    v = np.full(49, 50, dtype=np.int64)
    arr = h.answers_array(u, v)
    for i in range(49):
        a = h.pair_answer(int(u[i]), 50)
        assert a == h.pair_answer(50, int(u[i])) == bool(arr[i])


def test_answer_rate_tracks_p():
    h = HiddenGraph(n=300, p=0.3, master_seed=7)
    uu, vv = np.triu_indices(300, k=1)
    got = h.answers_array((uu + 1).astype(np.int64), (vv + 1).astype(np.int64))
    rate = got.mean()
    assert abs(rate - 0.3) < 0.01


def test_query_memoizes_repeats():
    h = HiddenGraph(n=10, p=0.5, master_seed=99)
    led = QueryLedger()
    first = query(h, led, 3, 7)
    assert led.count == 1
    assert query(h, led, 7, 3) == first
    assert led.count == 1  # repeat answered from memo, no new row
    with pytest.raises(ValueError):
        query(h, led, 4, 4)
    with pytest.raises(ValueError):
        query(h, led, 0, 4)


def test_dfs_empty_graph_asks_every_pair_once():
    n = 40
    out = dfs_find_path(HiddenGraph(n=n, p=0.0, master_seed=1), 3)
    assert not out.success and out.path is None and out.valid
    assert out.queries == n * (n - 1) // 2
    pairs = {(u, v) for u, v, _ in out.ledger.rows()}
    assert len(pairs) == out.queries  # no pair asked twice
    assert out.positive_answers == 0


def test_dfs_complete_graph_is_query_optimal():
    target = 17
    out = dfs_find_path(HiddenGraph(n=100, p=1.0, master_seed=2), target)
    assert out.success
    assert out.queries == target  # every probe hits
    assert out.path == tuple(range(1, target + 2))
    assert revalidate(out, target)


def test_dfs_witnesses_check_out():
    for seed in range(8):
        h = HiddenGraph(n=60, p=0.08, master_seed=seed)
        out = dfs_find_path(h, 10)
        assert out.valid
        assert revalidate(out, 10)
        if out.success:
            assert len(out.path) == 11
            assert len(set(out.path)) == 11
            pos = out.ledger.positive_pairs()
            for a, b in zip(out.path, out.path[1:]):
                assert (min(a, b), max(a, b)) in pos
                assert h.pair_answer(a, b)


def test_strategy_twin_matches_kernel_dfs():
    for n, p, seed in [(30, 0.0, 0), (30, 1.0, 0), (30, 0.05, 3),
                       (30, 0.1, 4), (45, 0.08, 5), (45, 0.3, 6)]:
        target = 6
        fast = dfs_find_path(HiddenGraph(n=n, p=p, master_seed=seed), target)
        slow = run_strategy(HiddenGraph(n=n, p=p, master_seed=seed),
                            DFSStrategy(n, target), target)
        assert fast.success == slow.success
        assert fast.queries == slow.queries
        assert fast.path == slow.path
        assert fast.positive_answers == slow.positive_answers
        assert list(fast.ledger.rows()) == list(slow.ledger.rows())


class _Liar:
    """Declares a path it never queried."""

    def next_query(self, ledger):
        return None

    def declared_path(self):
        return [1, 2, 3]


def test_unwitnessed_declaration_is_invalid():
    out = run_strategy(HiddenGraph(n=10, p=1.0, master_seed=0), _Liar(), 2)
    assert not out.success and not out.valid and out.path is None


def test_revalidate_rejects_tampering():
    out = dfs_find_path(HiddenGraph(n=100, p=1.0, master_seed=5), 4)
    assert revalidate(out, 4)
    from dataclasses import replace

    forged = replace(out, path=(1, 2, 3, 4, 99))
    assert not revalidate(forged, 4)
    too_short = replace(out, path=out.path[:3])
    assert not revalidate(too_short, 4)


def test_transcript_roundtrip():
    out = dfs_find_path(HiddenGraph(n=30, p=0.2, master_seed=11), 5)
    text = transcript_to_text(out.ledger)
    back = transcript_from_text(text)
    assert list(back.rows()) == list(out.ledger.rows())
    assert transcript_to_text(back) == text
    assert transcript_from_text("") .count == 0
    with pytest.raises(ValueError):
        transcript_from_text("1 2 yes\n")


def test_ledger_growth_and_row_access():
    led = QueryLedger()
    for i in range(3000):  # force several array regrowths
        led.append(i + 1, i + 2, i % 3 == 0)
    assert led.count == 3000
    assert led.positives == 1000
    assert led.row(2999) == (3000, 3001, False)


def test_single_edge_target_stops_at_first_positive():
    queries = []
    for seed in range(40):
        out = dfs_find_path(HiddenGraph(n=200, p=0.3, master_seed=seed), 1)
        assert out.success and out.positive_answers == 1
        assert len(out.path) == 2
        queries.append(out.queries)
    mean = sum(queries) / len(queries)
    assert 0.5 / 0.3 < mean < 2.0 / 0.3  # geometric-like with mean ~ 1/p


def test_budget_refusals():
    with pytest.raises(ValueError):
        dfs_find_path(HiddenGraph(n=2 * 10 ** 5, p=0.1, master_seed=0), 3)
    with pytest.raises(ValueError):
        dfs_find_path(HiddenGraph(n=10, p=0.1, master_seed=0), 0)
    with pytest.raises(ValueError):
        HiddenGraph(n=5, p=1.5, master_seed=0)
