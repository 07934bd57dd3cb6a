"""One entry point for the five embedding engines."""

from __future__ import annotations

import time

from .meta import ML, SML, embeds_flat
from .results import Budget, Meter, Outcome, Verdict, bool_outcome
from .search import embeds_naive, embeds_rogd
from .syntactic import OracleTimeout, oracle_embeds
from .terms import EmbedGoal

ENGINES = ("oracle", "naive", "rogd", "ml", "sml")


def embeds_oracle(goal: EmbedGoal, budget: Budget | None = None) -> Verdict:
    meter = Meter(budget)
    try:
        result = oracle_embeds(goal, deadline=meter.deadline)
    except OracleTimeout:
        return meter.finish(Outcome.TIMEOUT)
    return meter.finish(bool_outcome(result))


def check(goal: EmbedGoal, engine: str = SML, budget: Budget | None = None) -> Verdict:
    """Decide ``goal.lhs <| goal.rhs`` modulo the axioms with ``engine``."""
    if engine == "oracle":
        return embeds_oracle(goal, budget)
    if engine == "naive":
        return embeds_naive(goal, budget)
    if engine == "rogd":
        return embeds_rogd(goal, budget)
    if engine in (ML, SML):
        return embeds_flat(goal, engine, budget)
    raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")


def timed(goal: EmbedGoal, engine: str, budget: Budget | None = None) -> tuple[Verdict, float]:
    """Run ``check`` and return the verdict with wall time in milliseconds."""
    start = time.monotonic()
    verdict = check(goal, engine, budget)
    return verdict, (time.monotonic() - start) * 1000.0
