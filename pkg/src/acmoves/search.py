"""Bounded search for AC-paths between two presentations.

Three strategies share one visited set keyed by the exact presentation:

* ``greedy``: best-first on total relator length, ties first-in first-out;
* ``bfs``: breadth-first, so the path found has the fewest moves;
* ``beam``: breadth-first keeping only the ``beam_width`` shortest states
  of each layer.

The relator length cap makes the reachable space finite; states above it
are pruned.  Stabilisation moves are never proposed.
"""

from __future__ import annotations

import enum
import heapq
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .certificate import Certificate
from .presentation import (
    MoveFamily,
    Presentation,
    StabAdd,
    StabRemove,
    canonical_key,
    get_family,
    neighbors,
)

PROGRESS_EVERY = 100_000


class Strategy(enum.Enum):
    GREEDY = "greedy"
    BFS = "bfs"
    BEAM = "beam"


class Outcome(enum.Enum):
    FOUND = "FOUND"
    EXHAUSTED = "EXHAUSTED"
    LIMIT = "LIMIT"


@dataclass(frozen=True)
class SearchLimits:
    max_relator_len: int = 20
    max_states: int = 1_000_000
    max_seconds: float = 600.0
    beam_width: int = 1000

    def __post_init__(self):
        for name in ("max_relator_len", "max_states", "max_seconds", "beam_width"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SearchResult:
    outcome: Outcome
    certificate: Optional[Certificate]
    states_expanded: int
    frontier_peak: int

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


def _expand(args):
    p, family_name, cap = args
    return neighbors(p, get_family(family_name), cap)


class _Run:
    def __init__(self, source, target, family, limits, progress, workers):
        self.source = source
        self.target_key = canonical_key(target)
        self.target = target
        self.family = family
        self.limits = limits
        self.progress = progress
        self.parents = {canonical_key(source): None}
        self.expanded = 0
        self.peak = 1
        self.deadline = time.monotonic() + limits.max_seconds
        self.pool = ProcessPoolExecutor(workers) if workers > 1 else None

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def out_of_budget(self) -> bool:
        return self.expanded >= self.limits.max_states or time.monotonic() > self.deadline

    def tick(self):
        self.expanded += 1
        if self.progress is not None and self.expanded % PROGRESS_EVERY == 0:
            self.progress(f"expanded {self.expanded} states, {len(self.parents)} seen")

    def children(self, states):
        args = [(p, self.family.name, self.limits.max_relator_len) for p in states]
        if self.pool is None:
            return [_expand(a) for a in args]
        # order-preserving map keeps the merge deterministic
        return list(self.pool.map(_expand, args, chunksize=max(1, len(args) // 64)))

    def record(self, parent_key, move, q) -> Optional[bytes]:
        """Register ``q``; return its key if new."""
        key = canonical_key(q)
        if key in self.parents:
            return None
        self.parents[key] = (parent_key, move)
        return key

    def result(self, outcome, found_key=None):
        cert = None
        if found_key is not None:
            moves = []
            key = found_key
            while self.parents[key] is not None:
                key, m = self.parents[key]
                moves.append(m)
            cert = Certificate(self.source, tuple(reversed(moves)), self.target, self.family.name)
        return SearchResult(outcome, cert, self.expanded, self.peak)


def _greedy(run: _Run) -> SearchResult:
    counter = 0
    heap = [(run.source.total_length, counter, run.source)]
    while heap:
        if run.out_of_budget():
            return run.result(Outcome.LIMIT)
        _, _, p = heapq.heappop(heap)
        run.tick()
        pkey = canonical_key(p)
        for m, q in run.children([p])[0]:
            key = run.record(pkey, m, q)
            if key is None:
                continue
            if key == run.target_key:
                return run.result(Outcome.FOUND, key)
            counter += 1
            heapq.heappush(heap, (q.total_length, counter, q))
        run.peak = max(run.peak, len(heap))
    return run.result(Outcome.EXHAUSTED)


def _layered(run: _Run, width: Optional[int]) -> SearchResult:
    layer = [run.source]
    while layer:
        if width is not None:
            # stable sort: ties keep discovery order
            layer = sorted(layer, key=lambda q: q.total_length)[:width]
        run.peak = max(run.peak, len(layer))
        nxt = []
        # expand in chunks so the budget is checked between them
        step = 256
        for lo in range(0, len(layer), step):
            chunk = layer[lo : lo + step]
            if run.out_of_budget():
                return run.result(Outcome.LIMIT)
            room = run.limits.max_states - run.expanded
            chunk = chunk[:room]
            for p, kids in zip(chunk, run.children(chunk)):
                run.tick()
                pkey = canonical_key(p)
                for m, q in kids:
                    key = run.record(pkey, m, q)
                    if key is None:
                        continue
                    if key == run.target_key:
                        return run.result(Outcome.FOUND, key)
                    nxt.append(q)
        layer = nxt
    return run.result(Outcome.EXHAUSTED)


def search(
    source: Presentation,
    target: Presentation,
    family: MoveFamily,
    strategy="greedy",
    limits: SearchLimits = SearchLimits(),
    progress: Optional[Callable[[str], None]] = None,
    workers: int = 1,
) -> SearchResult:
    """Look for a move sequence from ``source`` to ``target`` within ``limits``.

    ``EXHAUSTED`` means the bounded space (or, for beam, the beam) ran out;
    ``LIMIT`` means the state or time budget did.  ``workers > 1`` expands
    breadth-first and beam layers in worker processes; greedy always runs
    in one process.
    """
    strategy = Strategy(strategy.value if isinstance(strategy, Strategy) else strategy.lower())
    if source.n != target.n or len(source.relators) != len(target.relators):
        raise ValueError("source and target must have the same dimensions")
    if not source.balanced or not target.balanced:
        raise ValueError("search needs balanced presentations")
    if source == target:
        return SearchResult(Outcome.FOUND, Certificate(source, (), target, family.name), 0, 1)
    if any(len(r) > limits.max_relator_len for r in source.relators + target.relators):
        raise ValueError("max_relator_len is below an endpoint's relator length")
    run = _Run(source, target, family, limits, progress, workers if strategy is not Strategy.GREEDY else 1)
    try:
        if strategy is Strategy.GREEDY:
            return _greedy(run)
        return _layered(run, limits.beam_width if strategy is Strategy.BEAM else None)
    finally:
        run.close()


def scramble(p: Presentation, family: MoveFamily, k: int, seed: int,
             max_relator_len: Optional[int] = None) -> tuple:
    """Apply ``k`` seeded random family moves; return ``(endpoint, certificate)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rng = random.Random(seed)
    start = p
    moves = []
    for _ in range(k):
        options = [(m, q) for m, q in neighbors(p, family, max_relator_len)
                   if not isinstance(m, (StabAdd, StabRemove))]
        if not options:
            break
        m, p = options[rng.randrange(len(options))]
        moves.append(m)
    return p, Certificate(start, tuple(moves), p, family.name)
