"""Budgets, statistics and verdicts shared by every engine."""

from __future__ import annotations

import enum
import functools
import sys
import threading
import time
from dataclasses import dataclass, field


class Outcome(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    TIMEOUT = "Timeout"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Budget:
    max_millis: float | None = None
    max_states: int | None = None

    @property
    def unbounded(self) -> bool:
        return self.max_millis is None and self.max_states is None


UNBOUNDED = Budget()


@dataclass
class Stats:
    states_expanded: int = 0
    recursive_calls: int = 0
    wall_time: float = 0.0  # seconds
    peak_frontier: int = 0


@dataclass
class Verdict:
    outcome: Outcome
    stats: Stats = field(default_factory=Stats)

    @property
    def value(self) -> bool | None:
        """``True``/``False``, or ``None`` for a timeout."""
        if self.outcome is Outcome.TIMEOUT:
            return None
        return self.outcome is Outcome.TRUE


class BudgetExceeded(Exception):
    """Raised inside an engine when its budget runs out."""


class Meter:
    """Tracks one engine run against a budget."""

    __slots__ = ("budget", "stats", "start", "deadline", "_tick")

    def __init__(self, budget: Budget | None):
        self.budget = budget or UNBOUNDED
        self.stats = Stats()
        self.start = time.monotonic()
        ms = self.budget.max_millis
        self.deadline = None if ms is None else self.start + ms / 1000.0
        self._tick = 0

    def expand(self) -> None:
        """Count one expanded state and enforce the budget."""
        self.stats.states_expanded += 1
        limit = self.budget.max_states
        if limit is not None and self.stats.states_expanded > limit:
            raise BudgetExceeded
        self.poll()

    def poll(self, every: int = 1) -> None:
        if self.deadline is None:
            return
        self._tick += 1
        if self._tick >= every:
            self._tick = 0
            if time.monotonic() > self.deadline:
                raise BudgetExceeded

    def finish(self, outcome: Outcome) -> Verdict:
        self.stats.wall_time = time.monotonic() - self.start
        return Verdict(outcome, self.stats)


def bool_outcome(b: bool) -> Outcome:
    return Outcome.TRUE if b else Outcome.FALSE


# ---------------------------------------------------------------------------
# deep recursion

_BIG_STACK = 512 * 1024 * 1024
_DEEP_LIMIT = 1_000_000
_stack_lock = threading.Lock()
_active = 0
_saved_limit = [1000]


def run_with_big_stack(fn, *args, **kwargs):
    """Run ``fn`` in a helper thread with a large C stack and recursion limit.

    Recursive engines call this for deep inputs so that terms with thousands
    of nested levels do not overflow the interpreter stack.
    """
    box: dict = {}

    def target():
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised in the caller's thread
            box["error"] = exc

    global _active
    with _stack_lock:
        if _active == 0:
            _saved_limit[0] = sys.getrecursionlimit()
            sys.setrecursionlimit(max(_saved_limit[0], _DEEP_LIMIT))
        _active += 1
        old_size = threading.stack_size(_BIG_STACK)
        try:
            worker = threading.Thread(target=target, name="deep-recursion")
            worker.start()
        finally:
            threading.stack_size(old_size)
    worker.join()
    with _stack_lock:
        _active -= 1
        if _active == 0:
            sys.setrecursionlimit(_saved_limit[0])
    if "error" in box:
        raise box["error"]
    return box["value"]


def stack_safe(depth_of):
    """Decorator: run the wrapped call on a big stack when ``depth_of(*args)``
    exceeds a few hundred levels."""

    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            if depth_of(*args) > 150 and threading.current_thread().name != "deep-recursion":
                return run_with_big_stack(fn, *args, **kwargs)
            return fn(*args, **kwargs)

        return inner

    return wrap
