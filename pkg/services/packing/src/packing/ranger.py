"""
Linear-time ranged complementary matching.

Items are classified into ten decile buckets. Large composites (weight >= 0.5) are then matched,
bucket by bucket, against one candidate drawn from each complementary small bucket; whatever is
left of the small buckets is merged two by two. Every merged pair goes back into the bucket of its
new load as a single item, until every composite has been closed into a bin.

The control flow of the pseudocode listing (with its gotos) is kept as an explicit state machine.
Each state owns one bucket:

    PHASE_A..PHASE_E  bucket 5..9   draw a, probe the complementary buckets, merge or close
    PAIR_4..PAIR_0    bucket 4..0   draw two, merge unconditionally, jump

The candidate drawn from a bucket is chosen by a ProbeStrategy, so runs are reproducible.
"""

import random
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum
from typing import ClassVar

from loguru import logger

from packing.buckets import CompositeItem, RangeBuckets
from packing.core import Bin, Instance, Solution, range_index
from packing.errors import InvariantViolation

Picker = Callable[[int], int]


@dataclass(frozen=True)
class SeededRandom:
    """Draws a uniformly random position, from a generator seeded afresh on every run."""

    seed: int = 0
    name: ClassVar[str] = "random"

    def picker(self) -> Picker:
        return random.Random(self.seed).randrange


@dataclass(frozen=True)
class PopLast:
    """Always draws the most recently inserted composite of a bucket."""

    name: ClassVar[str] = "pop-last"

    def picker(self) -> Picker:
        return _last_position


@dataclass(frozen=True)
class PopFirst:
    """Always draws position 0 (swap-remove then refills it with the last composite)."""

    name: ClassVar[str] = "pop-first"

    def picker(self) -> Picker:
        return _first_position


ProbeStrategy = SeededRandom | PopLast | PopFirst

STRATEGY_NAMES = (SeededRandom.name, PopLast.name, PopFirst.name)


def _last_position(size: int) -> int:
    return size - 1


def _first_position(size: int) -> int:
    return 0


def make_strategy(name: str, seed: int = 0) -> ProbeStrategy:
    """
    Factory function that returns the probe strategy registered under `name`.

    Args:
        name (str): One of "random", "pop-last", "pop-first"
        seed (int): Seed of the random strategy, ignored by the deterministic ones

    Returns:
        ProbeStrategy: the strategy
    """
    if name == SeededRandom.name:
        return SeededRandom(seed=seed)
    if name == PopLast.name:
        return PopLast()
    if name == PopFirst.name:
        return PopFirst()
    raise ValueError(f"Unknown probe strategy {name!r}, expected one of {', '.join(STRATEGY_NAMES)}")


class State(StrEnum):
    PHASE_A = "phase_a"
    PHASE_B = "phase_b"
    PHASE_C = "phase_c"
    PHASE_D = "phase_d"
    PHASE_E = "phase_e"
    PAIR_4 = "pair_4"
    PAIR_3 = "pair_3"
    PAIR_2 = "pair_2"
    PAIR_1 = "pair_1"
    PAIR_0 = "pair_0"
    END = "end"

    @property
    def lines(self) -> tuple[int, int]:
        """First and last line of the pseudocode listing implemented by this state."""
        return _LISTING_LINES[self]


_LISTING_LINES: dict[State, tuple[int, int]] = {
    State.PHASE_A: (3, 10),
    State.PHASE_B: (11, 17),
    State.PHASE_C: (18, 23),
    State.PHASE_D: (24, 28),
    State.PHASE_E: (29, 32),
    State.PAIR_4: (33, 34),
    State.PAIR_3: (35, 36),
    State.PAIR_2: (37, 38),
    State.PAIR_1: (39, 40),
    State.PAIR_0: (41, 42),
    State.END: (43, 43),
}

# large state -> (its bucket, buckets probed in order, state reached once the bucket is empty)
_LARGE_PHASES: dict[State, tuple[int, tuple[int, ...], State]] = {
    State.PHASE_A: (5, (4, 3, 2, 1, 0), State.PHASE_B),
    State.PHASE_B: (6, (3, 2, 1, 0), State.PHASE_C),
    State.PHASE_C: (7, (2, 1, 0), State.PHASE_D),
    State.PHASE_D: (8, (1, 0), State.PHASE_E),
    State.PHASE_E: (9, (0,), State.PAIR_4),
}

# pair state -> (its bucket, state reached once the bucket is empty)
_PAIR_PHASES: dict[State, tuple[int, State]] = {
    State.PAIR_4: (4, State.PAIR_3),
    State.PAIR_3: (3, State.PAIR_2),
    State.PAIR_2: (2, State.PAIR_1),
    State.PAIR_1: (1, State.PAIR_0),
    State.PAIR_0: (0, State.END),
}

_PHASE_OF_BUCKET: dict[int, State] = {bucket: state for state, (bucket, _, _) in _LARGE_PHASES.items()}


@dataclass(frozen=True, slots=True)
class Classified:
    item: int
    bucket: int


@dataclass(frozen=True, slots=True)
class Probe:
    a: int
    bucket: int
    b: int
    fit: bool


@dataclass(frozen=True, slots=True)
class Merge:
    a: int
    b: int
    c: int
    bucket: int


@dataclass(frozen=True, slots=True)
class CloseBin:
    composite: int


@dataclass(frozen=True, slots=True)
class LeftoverMerge:
    a: int
    b: int
    c: int
    bucket: int


@dataclass(frozen=True, slots=True)
class LeftoverClose:
    composite: int


@dataclass(frozen=True, slots=True)
class Transition:
    source: State
    target: State


TraceEvent = Classified | Probe | Merge | CloseBin | LeftoverMerge | LeftoverClose | Transition


@dataclass(slots=True)
class RunCounters:
    """Event tallies of one run, kept even when no trace is recorded."""

    classified: int = 0
    probes: int = 0
    merges: int = 0
    closes: int = 0
    leftover_merges: int = 0
    leftover_closes: int = 0
    flushed: int = 0
    transitions: int = 0

    @property
    def steps(self) -> int:
        """Merge-or-close steps; each removes one composite, so this never exceeds n."""
        return self.merges + self.closes + self.leftover_merges + self.leftover_closes


@dataclass
class RangerResult:
    solution: Solution
    counters: RunCounters
    events: list[TraceEvent] = field(default_factory=list)


class _RangerRun:
    """One run of the state machine over one instance. Never shared between runs."""

    def __init__(self, instance: Instance, strategy: ProbeStrategy, record_trace: bool) -> None:
        self.instance = instance
        self.capacity = instance.capacity
        self.buckets = RangeBuckets(instance.capacity)
        self.pick = strategy.picker()
        self.trace: list[TraceEvent] | None = [] if record_trace else None
        self.counters = RunCounters()
        self.closed: list[CompositeItem] = []
        self._next_uid = instance.n

    def run(self) -> list[CompositeItem]:
        self._classify()

        state = State.PHASE_A
        while state is not State.END:
            target = self._large_phase(state) if state in _LARGE_PHASES else self._pair_phase(state)
            if target is not state:
                self.counters.transitions += 1
                if self.trace is not None:
                    self.trace.append(Transition(source=state, target=target))
            state = target

        # Normally a no-op: every bucket is empty once PAIR_0 finds bucket 0 empty
        for composite in self.buckets.drain():
            self.counters.flushed += 1
            self._close(composite)

        return self.closed

    def _classify(self) -> None:
        for item_id, size in enumerate(self.instance.sizes):
            bucket = self.buckets.insert(CompositeItem.leaf(item_id, size))
            self.counters.classified += 1
            if self.trace is not None:
                self.trace.append(Classified(item=item_id, bucket=bucket))

    def _large_phase(self, state: State) -> State:
        bucket, probe_buckets, next_state = _LARGE_PHASES[state]
        size = self.buckets.size(bucket)
        if size == 0:
            return next_state

        a = self.buckets.take(bucket, self.pick(size))
        for probe_bucket in probe_buckets:
            if self._probe(a, probe_bucket):
                return state

        self._close(a)
        return state

    def _probe(self, a: CompositeItem, bucket: int) -> bool:
        size = self.buckets.size(bucket)
        if size == 0:
            return False

        position = self.pick(size)
        b = self.buckets.peek(bucket, position)
        fit = a.load + b.load <= self.capacity
        self.counters.probes += 1
        if self.trace is not None:
            self.trace.append(Probe(a=a.uid, bucket=bucket, b=b.uid, fit=fit))
        if not fit:
            return False

        self.buckets.take(bucket, position)
        self._merge(a, b)
        return True

    def _pair_phase(self, state: State) -> State:
        bucket, next_state = _PAIR_PHASES[state]
        size = self.buckets.size(bucket)
        if size == 0:
            return next_state
        if size == 1:
            return self._leftover(bucket, next_state)

        a = self.buckets.take(bucket, self.pick(size))
        b = self.buckets.take(bucket, self.pick(size - 1))
        c = self._merge(a, b)

        match state:
            case State.PAIR_4:
                return State.PHASE_D
            case State.PAIR_3:
                return State.PHASE_B
            case State.PAIR_2:
                return State.PHASE_A if 2 * c.load >= self.capacity else State.PAIR_4
            case State.PAIR_1:
                return State.PAIR_4
            case _:
                return State.PAIR_2

    def _leftover(self, bucket: int, next_state: State) -> State:
        """A pair bucket holding a single composite: merge it downwards, or close it."""
        a = self.buckets.take(bucket, 0)
        lower = self.buckets.highest_nonempty_below(bucket)
        if lower is None:
            self._close(a, leftover=True)
            return next_state

        b = self.buckets.take(lower, self.pick(self.buckets.size(lower)))
        c = self._merge(a, b, leftover=True)
        if 2 * c.load >= self.capacity:
            return _PHASE_OF_BUCKET[range_index(c.load, self.capacity)]
        return State.PAIR_4

    def _merge(self, a: CompositeItem, b: CompositeItem, leftover: bool = False) -> CompositeItem:
        if a.load + b.load > self.capacity:
            raise InvariantViolation(f"merging loads {a.load} and {b.load} exceeds capacity {self.capacity}")

        c = CompositeItem.merge(self._next_uid, a, b)
        self._next_uid += 1
        bucket = self.buckets.insert(c)

        if leftover:
            self.counters.leftover_merges += 1
            if self.trace is not None:
                self.trace.append(LeftoverMerge(a=a.uid, b=b.uid, c=c.uid, bucket=bucket))
        else:
            self.counters.merges += 1
            if self.trace is not None:
                self.trace.append(Merge(a=a.uid, b=b.uid, c=c.uid, bucket=bucket))
        return c

    def _close(self, composite: CompositeItem, leftover: bool = False) -> None:
        self.closed.append(composite)
        if leftover:
            self.counters.leftover_closes += 1
            if self.trace is not None:
                self.trace.append(LeftoverClose(composite=composite.uid))
        else:
            self.counters.closes += 1
            if self.trace is not None:
                self.trace.append(CloseBin(composite=composite.uid))


def run(instance: Instance, strategy: ProbeStrategy, record_trace: bool = False) -> RangerResult:
    """
    Runs the ranged matching algorithm and returns the solution with its run counters.

    Args:
        instance (Instance): The instance to pack
        strategy (ProbeStrategy): How a composite is drawn from a bucket
        record_trace (bool): Whether to keep the full list of trace events

    Returns:
        RangerResult: solution, counters and (when recorded) the trace events
    """
    machine = _RangerRun(instance, strategy, record_trace)
    closed = machine.run()

    bins = tuple(Bin(members=composite.members, load=composite.load) for composite in closed)
    packed = sum(len(b.members) for b in bins)
    if packed != instance.n:
        raise InvariantViolation(f"{packed} items ended up in bins, expected {instance.n}")

    solution = Solution(
        capacity=instance.capacity,
        bins=bins,
        algorithm="ranger",
        strategy=strategy.name,
        seed=strategy.seed if isinstance(strategy, SeededRandom) else None,
    )
    logger.debug(
        f"ranger packed {instance.n} items into {solution.bin_count} bins "
        f"({machine.counters.probes} probes, {machine.counters.steps} steps)"
    )
    return RangerResult(solution=solution, counters=machine.counters, events=machine.trace or [])


def pack(instance: Instance, strategy: ProbeStrategy) -> Solution:
    """Packs `instance` with the ranged matching algorithm."""
    return run(instance, strategy).solution


def pack_with_trace(instance: Instance, strategy: ProbeStrategy) -> tuple[Solution, list[TraceEvent]]:
    """Same as `pack`, also returning every event of the run in order."""
    result = run(instance, strategy, record_trace=True)
    return result.solution, result.events


def replay_trace(instance: Instance, events: list[TraceEvent]) -> list[Bin]:
    """
    Rebuilds the bins of a run from its Classified, merge and close events.

    Args:
        instance (Instance): The instance the trace was recorded on
        events (list[TraceEvent]): The events returned by `pack_with_trace`

    Returns:
        list[Bin]: the bins, in the order they were closed
    """
    members: dict[int, tuple[int, ...]] = {}
    bins: list[Bin] = []
    for event in events:
        match event:
            case Classified(item=item):
                members[item] = (item,)
            case Merge(a=a, b=b, c=c) | LeftoverMerge(a=a, b=b, c=c):
                members[c] = members.pop(a) + members.pop(b)
            case CloseBin(composite=uid) | LeftoverClose(composite=uid):
                ids = tuple(sorted(members.pop(uid)))
                bins.append(Bin(members=ids, load=sum(instance.sizes[i] for i in ids)))
    return bins
