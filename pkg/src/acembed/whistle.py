"""Online supervision of a growing term sequence.

Every new term is compared against the history, oldest first.  If an
earlier term embeds into the new one the whistle blows and reports that
earlier term's position; otherwise the new term joins the history.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engines import ENGINES, check
from .results import Budget, Outcome
from .terms import EmbedGoal, Signature, Term


class WhistleTimeout(RuntimeError):
    """An embedding check ran out of budget; neither pass nor blow."""

    def __init__(self, index: int):
        super().__init__(f"embedding check against history[{index}] timed out")
        self.index = index


@dataclass(frozen=True)
class Pass:
    def __str__(self) -> str:
        return "pass"


@dataclass(frozen=True)
class Blow:
    index: int

    def __str__(self) -> str:
        return f"blow {self.index}"


@dataclass(frozen=True)
class WhistleState:
    sig: Signature
    engine: str = "sml"
    budget: Budget | None = None
    history: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")


def whistle_add(state: WhistleState, t: Term) -> tuple[Pass | Blow, WhistleState]:
    for i, earlier in enumerate(state.history):
        verdict = check(EmbedGoal(earlier, t, state.sig), state.engine, state.budget)
        if verdict.outcome is Outcome.TIMEOUT:
            raise WhistleTimeout(i)
        if verdict.outcome is Outcome.TRUE:
            return Blow(i), state
    return Pass(), WhistleState(state.sig, state.engine, state.budget, state.history + (t,))


def first_blow(state: WhistleState, terms) -> tuple[int, Blow] | None:
    """Feed ``terms`` until the whistle blows; return (position, blow)."""
    for pos, t in enumerate(terms):
        result, state = whistle_add(state, t)
        if isinstance(result, Blow):
            return pos, result
    return None
