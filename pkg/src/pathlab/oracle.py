"""Hidden-graph adaptive query model.

A HiddenGraph is a G(n, p) sample revealed one pair query at a time.  The
answer for {u, v} is a pure function of (master_seed, min(u,v), max(u,v))
via a splitmix64-style hash, so it is identical no matter when, in what
order, or how often the pair is asked: the deferred-decision semantics
that make adaptive strategies comparable on the same sample.

Queries go through a QueryLedger that records (u, v, answer) rows and the
distinct-pair count; repeats are free (memoized, counted once).  The DFS
path finder keeps an active path on a stack, extending the top vertex by
scanning never-visited labels in ascending order, and succeeds as soon as
the stack holds target_edges + 1 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Protocol, Sequence

import numpy as np

from . import _kernels as _k

__all__ = [
    "HiddenGraph",
    "QueryLedger",
    "RunOutcome",
    "AdaptiveStrategy",
    "DFSStrategy",
    "query",
    "dfs_find_path",
    "run_strategy",
    "revalidate",
    "transcript_to_text",
    "transcript_from_text",
]

_MAX_ADAPTIVE_N = 10 ** 5
_W = (1 << 64) - 1


def _mix64_int(x: int) -> int:
    """splitmix64 finalizer, plain-int twin of the kernel's mix64."""
    x &= _W
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _W
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _W
    return x ^ (x >> 31)


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


@dataclass(frozen=True)
class HiddenGraph:
    """Lazily revealed G(n, p) keyed by a 64-bit master seed.

    ``memo`` holds the answers revealed through :func:`query`; it never
    influences them (answers are pure in (seed, pair)), it only backs the
    count-repeats-once rule.
    """

    n: int
    p: float
    master_seed: int
    memo: dict[tuple[int, int], bool] = field(
        default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must lie in [0, 1]")
        if self.n >= 1 << 32:
            raise ValueError("n must fit in 32 bits")
        if not (0 <= self.master_seed <= _W):
            raise ValueError("master_seed must be a 64-bit integer")

    @property
    def threshold(self) -> int:
        """Answers are h < threshold for a uniform 64-bit hash h; the
        full 2^64 at p=1 makes every pair present."""
        return int(self.p * (1 << 64))

    @property
    def _seed_mix(self) -> int:
        return _mix64_int(self.master_seed)

    def pair_answer(self, u: int, v: int) -> bool:
        """The pair's Bernoulli(p) value, no accounting."""
        a, b = (u, v) if u < v else (v, u)
        h = _mix64_int(((a << 32) | b) ^ self._seed_mix)
        return h < self.threshold

    def answers_array(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Vectorized pair_answer; exact same bits as the scalar path."""
        a = np.minimum(u, v).astype(np.uint64)
        b = np.maximum(u, v).astype(np.uint64)
        h = _mix64_np((a << np.uint64(32) | b) ^ np.uint64(self._seed_mix))
        if self.p == 1.0:
            return np.ones(h.shape, bool)
        return h < np.uint64(self.threshold)


class QueryLedger:
    """Append-only query transcript with distinct-pair accounting.

    Rows live in growable int32/uint8 arrays, so million-row transcripts
    stay compact.  ``count`` equals the number of rows; repeated pairs are
    the caller's concern (``query`` consults the graph memo and skips the
    append).
    """

    __slots__ = ("_u", "_v", "_a", "_n", "_pos")

    def __init__(self):
        self._u = np.empty(1 << 10, np.int32)
        self._v = np.empty(1 << 10, np.int32)
        self._a = np.empty(1 << 10, np.uint8)
        self._n = 0
        self._pos = 0

    @property
    def count(self) -> int:
        return self._n

    @property
    def positives(self) -> int:
        return self._pos

    def _grow(self, need: int):
        cap = self._u.shape[0]
        while cap < need:
            cap *= 2
        for name in ("_u", "_v", "_a"):
            old = getattr(self, name)
            new = np.empty(cap, old.dtype)
            new[: self._n] = old[: self._n]
            setattr(self, name, new)

    def append(self, u: int, v: int, answer: bool):
        if self._n == self._u.shape[0]:
            self._grow(self._n + 1)
        a, b = (u, v) if u < v else (v, u)
        self._u[self._n] = a
        self._v[self._n] = b
        self._a[self._n] = 1 if answer else 0
        self._n += 1
        if answer:
            self._pos += 1

    def rows(self) -> Iterator[tuple[int, int, bool]]:
        for i in range(self._n):
            yield int(self._u[i]), int(self._v[i]), bool(self._a[i])

    def row(self, i: int) -> tuple[int, int, bool]:
        if not (0 <= i < self._n):
            raise IndexError(i)
        return int(self._u[i]), int(self._v[i]), bool(self._a[i])

    def positive_pairs(self) -> set[tuple[int, int]]:
        sel = self._a[: self._n] == 1
        return {(int(a), int(b))
                for a, b in zip(self._u[: self._n][sel], self._v[: self._n][sel])}

    @classmethod
    def _from_arrays(cls, u: np.ndarray, v: np.ndarray, a: np.ndarray,
                     n: int, positives: int) -> "QueryLedger":
        led = cls.__new__(cls)
        led._u, led._v, led._a = u, v, a
        led._n = n
        led._pos = positives
        return led


@dataclass(frozen=True)
class RunOutcome:
    """Result of one adaptive run.

    ``valid`` is False only when a strategy declared a witness path that
    the transcript does not support; honest failures stay valid.
    """

    success: bool
    path: tuple[int, ...] | None
    queries: int
    positive_answers: int
    valid: bool
    ledger: QueryLedger = field(compare=False, repr=False)


def query(hidden: HiddenGraph, ledger: QueryLedger, u: int, v: int) -> bool:
    """Reveal one pair.  First ask appends a transcript row; repeats are
    answered from the memo and not re-counted."""
    if u == v:
        raise ValueError("query needs two distinct vertices")
    if not (1 <= u <= hidden.n and 1 <= v <= hidden.n):
        raise ValueError(f"vertices out of range 1..{hidden.n}")
    key = (u, v) if u < v else (v, u)
    hit = hidden.memo.get(key)
    if hit is not None:
        return hit
    ans = hidden.pair_answer(u, v)
    hidden.memo[key] = ans
    ledger.append(key[0], key[1], ans)
    return ans


def dfs_find_path(hidden: HiddenGraph, target_edges: int) -> RunOutcome:
    """Depth-first search for a path with ``target_edges`` edges.

    The stack is the active path.  Its top u queries candidates in
    ascending label order, skipping every vertex that was ever stacked
    and resuming past u's earlier scans, so no pair is queried twice; a
    positive answer pushes, exhaustion pops (popped vertices are done for
    good), an empty stack restarts at the smallest never-stacked vertex.
    Success as soon as the stack reaches target_edges + 1 vertices;
    failure once every vertex has been stacked and popped.  At p=0 this
    asks each of the C(n,2) pairs exactly once.

    Answers come from the same pure pair function as :func:`query`, but
    are recorded straight into the returned outcome's ledger (the memo is
    not populated: no pair repeats, and transcripts can hold millions of
    rows).
    """
    if target_edges < 1:
        raise ValueError("target_edges must be positive")
    if hidden.n > _MAX_ADAPTIVE_N:
        raise ValueError(
            f"dfs_find_path refused: n={hidden.n} > {_MAX_ADAPTIVE_N}")
    always = 1 if hidden.p == 1.0 else 0  # threshold 2^64 overflows uint64
    thr = np.uint64(0 if always else hidden.threshold)
    found, stack, sp, us, vs, aa, cnt, npos = _k.hidden_dfs(
        hidden.n, np.uint64(hidden._seed_mix), thr, always, target_edges)
    ledger = QueryLedger._from_arrays(us, vs, aa, int(cnt), int(npos))
    path = tuple(int(x) for x in stack[:sp]) if found else None
    return RunOutcome(success=bool(found), path=path, queries=int(cnt),
                      positive_answers=int(npos), valid=True, ledger=ledger)


class AdaptiveStrategy(Protocol):
    """What run_strategy drives.

    next_query sees the ledger so far and returns the next pair, or None
    to stop.  declared_path is consulted once after the stop: a vertex
    sequence claims a witness (validated against the transcript), None
    concedes.
    """

    def next_query(self, ledger: QueryLedger) -> tuple[int, int] | None: ...

    def declared_path(self) -> Sequence[int] | None: ...


class DFSStrategy:
    """The DFS explorer restated as a pluggable strategy, one query per
    step.  Mirrors dfs_find_path exactly (same order, same outcome)."""

    def __init__(self, n: int, target_edges: int):
        if target_edges < 1:
            raise ValueError("target_edges must be positive")
        self.n = n
        self.target = target_edges
        self.stack: list[int] = []
        self.explored = np.zeros(n + 1, bool)
        self.ptr = np.ones(n + 1, np.int64)
        self.done = False

    def _next_unexplored(self, lo: int) -> int:
        v = lo
        while v <= self.n and self.explored[v]:
            v += 1
        return v

    def next_query(self, ledger: QueryLedger) -> tuple[int, int] | None:
        if self.done:
            return None
        while True:
            if not self.stack:
                r = self._next_unexplored(1)
                if r > self.n:
                    self.done = True
                    return None
                self.explored[r] = True
                self.stack.append(r)
                if len(self.stack) == self.target + 1:
                    self.done = True
                    return None
            u = self.stack[-1]
            v = self._next_unexplored(int(self.ptr[u]))
            if v > self.n:
                self.ptr[u] = self.n + 1
                self.stack.pop()
                continue
            return (u, v) if u < v else (v, u)

    def absorb(self, u: int, v: int, ans: bool):
        top = self.stack[-1]
        other = v if u == top else u
        self.ptr[top] = other + 1
        if ans:
            self.explored[other] = True
            self.stack.append(other)
            if len(self.stack) == self.target + 1:
                self.done = True

    def declared_path(self) -> Sequence[int] | None:
        if len(self.stack) == self.target + 1:
            return list(self.stack)
        return None


def run_strategy(hidden: HiddenGraph, strategy, target_edges: int,
                 ) -> RunOutcome:
    """Drive a strategy against the oracle until it stops, then vet any
    declared witness path against the transcript.

    An unwitnessed declaration (edge never answered positively, repeated
    vertices, or too short) yields success=False, valid=False.
    """
    if target_edges < 1:
        raise ValueError("target_edges must be positive")
    ledger = QueryLedger()
    while True:
        nxt = strategy.next_query(ledger)
        if nxt is None:
            break
        u, v = nxt
        ans = query(hidden, ledger, u, v)
        absorb = getattr(strategy, "absorb", None)
        if absorb is not None:
            absorb(u, v, ans)
    path = strategy.declared_path()
    if path is None:
        return RunOutcome(success=False, path=None, queries=ledger.count,
                          positive_answers=ledger.positives, valid=True,
                          ledger=ledger)
    path = tuple(int(x) for x in path)
    ok = _witnessed(path, ledger, target_edges)
    return RunOutcome(success=ok, path=path if ok else None,
                      queries=ledger.count,
                      positive_answers=ledger.positives, valid=ok,
                      ledger=ledger)


def _witnessed(path: tuple[int, ...], ledger: QueryLedger,
               target_edges: int) -> bool:
    if len(path) != len(set(path)) or len(path) - 1 < target_edges:
        return False
    pos = ledger.positive_pairs()
    return all((min(a, b), max(a, b)) in pos
               for a, b in zip(path, path[1:]))


def revalidate(outcome: RunOutcome, target_edges: int) -> bool:
    """Re-check an outcome from its transcript alone (no randomness).

    True when the outcome is self-consistent: a success must carry a
    fully witnessed path of the target length, a failure must carry none.
    """
    if outcome.success:
        return (outcome.path is not None
                and _witnessed(outcome.path, outcome.ledger, target_edges))
    return outcome.path is None


# ---------------------------------------------------------------------------
# Transcript serialization
# ---------------------------------------------------------------------------

def transcript_to_text(ledger: QueryLedger) -> str:
    lines = [f"{u} {v} {1 if a else 0}" for u, v, a in ledger.rows()]
    return "\n".join(lines) + ("\n" if lines else "")


def transcript_from_text(text: str) -> QueryLedger:
    led = QueryLedger()
    for ln in text.splitlines():
        if not ln.strip():
            continue
        a, b, c = ln.split()
        if c not in ("0", "1"):
            raise ValueError(f"bad answer field {c!r}")
        led.append(int(a), int(b), c == "1")
    return led
