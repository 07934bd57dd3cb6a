"""Syntactic homeomorphic embedding and the brute-force modulo-axioms oracle."""

from __future__ import annotations

import time

from .terms import (
    DEFAULT_CLASS_CAP,
    App,
    EmbedGoal,
    Term,
    Var,
    enumerate_class,
    sharp,
    universal_term,
)


def embeds_pure(s: Term, t: Term, memo: dict | None = None) -> bool:
    """Diving/Coupling embedding of ground terms.

    Variables, if present, are treated as constants.  ``memo`` may be shared
    between calls over the same terms (the oracle does this across class
    members).
    """
    if memo is None:
        memo = {}
    return _embeds(s, t, memo)


def _embeds(s: Term, t: Term, memo: dict) -> bool:
    key = (s, t)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if s.size > t.size:
        result = False
    elif isinstance(t, Var):
        result = s == t
    else:
        result = any(_embeds(s, ti, memo) for ti in t.args)
        if not result and isinstance(s, App) and s.op == t.op and len(s.args) == len(t.args):
            result = all(_embeds(si, ti, memo) for si, ti in zip(s.args, t.args))
    memo[key] = result
    return result


def embeds_var(s: Term, t: Term) -> bool:
    """Variable-extended embedding: any variable embeds any variable."""
    return embeds_pure(sharp(universal_term(s)), sharp(universal_term(t)))


class OracleTimeout(Exception):
    pass


def oracle_embeds(
    goal: EmbedGoal,
    cap: int = DEFAULT_CLASS_CAP,
    deadline: float | None = None,
) -> bool:
    """Embedding modulo axioms by brute force over both equivalence classes.

    Raises ``ClassTooLarge`` when either class exceeds ``cap``.
    """
    sig = goal.sig
    lhs = sharp(universal_term(goal.lhs))
    rhs = sharp(universal_term(goal.rhs))
    lefts = sorted(enumerate_class(lhs, sig, cap), key=str)
    rights = sorted(enumerate_class(rhs, sig, cap), key=str)
    memo: dict = {}
    for v in rights:
        if deadline is not None and time.monotonic() > deadline:
            raise OracleTimeout
        for u in lefts:
            if _embeds(u, v, memo):
                return True
    return False
