"""Search-based embedding engines.

``embeds_naive`` explores the terms reachable from the right-hand side by
the projection rules (one rewrite modulo the axioms per step) and reports
whether the left-hand side shows up.

``embeds_rogd`` searches for a proof of ``u <| v`` with the goal-driven
rules: every goal is rewritten either to ``true`` or to a conjunction of
smaller goals, and each way of matching a rule modulo the axioms is a
separate alternative.  Goals are ground, so conjuncts are proved
independently (leftmost first) and the search backtracks over alternatives.
"""

from __future__ import annotations

import itertools
from collections import deque

from .meta import to_meta
from .results import (
    Budget,
    BudgetExceeded,
    Meter,
    Outcome,
    Verdict,
    stack_safe,
)
from .terms import ACOMM, ASSOC, COMM, SHARP, EmbedGoal, Flat, Signature, make_flat
from .theory import RewriteTheory, gen_emb_rules

_PROJECTIONS: dict[str, dict[str, list[int]]] = {}


def projections_for(sig: Signature) -> dict[str, list[int]]:
    key = str(sig)
    proj = _PROJECTIONS.get(key)
    if proj is None:
        proj = gen_emb_rules(sig).projections()
        _PROJECTIONS[key] = proj
    return proj


# ---------------------------------------------------------------------------
# one-step rewriting with the projection rules


def one_step_successors(ft: Flat, th: RewriteTheory | dict, memo: dict | None = None) -> set[Flat]:
    """All canonical terms reachable from ``ft`` by one projection step
    modulo the axioms, at any position."""
    proj = th.projections() if isinstance(th, RewriteTheory) else th
    if memo is None:
        memo = {}
    return _successors(ft, proj, memo)


def _successors(ft: Flat, proj: dict, memo: dict) -> set[Flat]:
    cached = memo.get(ft)
    if cached is not None:
        return cached
    out: set[Flat] = set()
    args = ft.args
    if args:
        kept = proj.get(ft.op, ())
        kind = ft.kind
        if kind in (ASSOC, ACOMM):
            if kept:
                out.update(_root_deletions(ft, kept))
        elif kind == COMM:
            if kept:
                out.update(args)
        else:
            out.update(args[i] for i in kept)
        for i, a in enumerate(args):
            for s in _successors(a, proj, memo):
                out.add(make_flat(ft.op, kind, args[:i] + (s,) + args[i + 1:]))
    memo[ft] = out
    return out


def _root_deletions(ft: Flat, kept: list[int]) -> set[Flat]:
    """Projections at an A/AC root, matched against every sub-list."""
    op, kind, args = ft.op, ft.kind, ft.args
    n = len(args)
    out: set[Flat] = set()
    if kind == ACOMM:
        # matching f(X1,X2) against any sub-multiset of two or more
        # elements and keeping one side deletes any proper nonempty part
        for r in range(1, n):
            for idx in itertools.combinations(range(n), r):
                out.add(make_flat(op, kind, [args[i] for i in idx]))
        return out
    keep_left, keep_right = 0 in kept, 1 in kept
    for i in range(n):
        for j in range(i + 1, n + 1):
            if j - i == n:
                continue
            # deleting args[i:j]: the first rule needs something before
            # the deleted block, the second something after it
            if (keep_left and i > 0) or (keep_right and j < n):
                out.add(make_flat(op, kind, args[:i] + args[j:]))
    return out


# ---------------------------------------------------------------------------
# naive reachability


def embeds_naive(goal: EmbedGoal, budget: Budget | None = None) -> Verdict:
    meter = Meter(budget)
    proj = projections_for(goal.sig)
    target = to_meta(goal.lhs, goal.sig)
    start = to_meta(goal.rhs, goal.sig)
    try:
        found = _bfs(start, target, proj, meter)
    except BudgetExceeded:
        return meter.finish(Outcome.TIMEOUT)
    return meter.finish(Outcome.TRUE if found else Outcome.FALSE)


def _pair_depth(start: Flat, target: Flat, *rest) -> int:
    return max(start.depth, target.depth)


@stack_safe(_pair_depth)
def _bfs(start: Flat, target: Flat, proj: dict, meter: Meter) -> bool:
    if start == target:
        return True
    stats = meter.stats
    goal_size = target.size
    memo: dict = {}
    seen = {start}
    frontier = deque([start])
    stats.peak_frontier = 1
    while frontier:
        state = frontier.popleft()
        meter.expand()
        for nxt in _successors(state, proj, memo):
            if nxt == target:
                return True
            # every step shrinks the term, so smaller states never lead back up
            if nxt.size <= goal_size or nxt in seen:
                continue
            seen.add(nxt)
            frontier.append(nxt)
        if len(frontier) > stats.peak_frontier:
            stats.peak_frontier = len(frontier)
    return False


# ---------------------------------------------------------------------------
# goal-driven proof search


def embeds_rogd(goal: EmbedGoal, budget: Budget | None = None) -> Verdict:
    meter = Meter(budget)
    u = to_meta(goal.lhs, goal.sig)
    v = to_meta(goal.rhs, goal.sig)
    try:
        found = _prove_top(u, v, meter)
    except BudgetExceeded:
        return meter.finish(Outcome.TIMEOUT)
    return meter.finish(Outcome.TRUE if found else Outcome.FALSE)


@stack_safe(_pair_depth)
def _prove_top(u: Flat, v: Flat, meter: Meter) -> bool:
    return _prove(u, v, meter)


def _prove(u: Flat, v: Flat, meter: Meter) -> bool:
    meter.expand()
    meter.stats.recursive_calls += 1
    for conj in rogd_alternatives(u, v):
        if all(_prove(a, b, meter) for a, b in conj):
            return True
    return False


def rogd_alternatives(u: Flat, v: Flat):
    """Distinct rule applications to the goal ``u <| v``, each given as the
    tuple of resulting subgoals (empty for a rewrite to ``true``)."""
    seen: set = set()
    for conj in _raw_alternatives(u, v):
        key = frozenset(conj) if len(conj) > 1 else conj
        if key in seen:
            continue
        seen.add(key)
        yield conj


def _raw_alternatives(u: Flat, v: Flat):
    if u.op == v.op and u.kind == v.kind and not v.args and not u.args:
        yield ()  # constant coupling, including # <| #
        return
    # diving
    kind, op, args = v.kind, v.op, v.args
    if kind in (ASSOC, ACOMM):
        for part in _sides(op, kind, args):
            yield ((u, part),)
    else:
        for a in args:
            yield ((u, a),)
    # coupling
    if u.op != v.op or u.kind != v.kind or not u.args:
        return
    if kind == COMM:
        (a, b), (x, y) = u.args, v.args
        yield ((a, x), (b, y))
        yield ((a, y), (b, x))
    elif kind == ASSOC:
        left, right = _splits(op, kind, u.args), _splits(op, kind, v.args)
        for (s1, s2), (t1, t2) in itertools.product(left, right):
            yield ((s1, t1), (s2, t2))
    elif kind == ACOMM:
        left, right = _bipartitions(op, kind, u.args), _bipartitions(op, kind, v.args)
        for (s1, s2), (t1, t2) in itertools.product(left, right):
            yield ((s1, t1), (s2, t2))
    else:
        if len(u.args) == len(args):
            yield tuple(zip(u.args, args))


def _sides(op, kind, args):
    """Every term an argument variable of ``f(T1,T2)`` can bind to when
    matched against ``f[args]`` (after extension for A/AC)."""
    if kind == ASSOC:
        for i in range(1, len(args)):
            yield make_flat(op, kind, args[:i])
            yield make_flat(op, kind, args[i:])
    else:
        for s1, _ in _bipartitions(op, kind, args):
            yield s1


def _splits(op, kind, args):
    return [(make_flat(op, kind, args[:i]), make_flat(op, kind, args[i:])) for i in range(1, len(args))]


def _bipartitions(op, kind, args):
    n = len(args)
    out = []
    seen = set()
    for r in range(1, n):
        for idx in itertools.combinations(range(n), r):
            chosen = set(idx)
            left = tuple(args[i] for i in idx)
            if left in seen:
                continue
            seen.add(left)
            right = [args[i] for i in range(n) if i not in chosen]
            out.append((make_flat(op, kind, left), make_flat(op, kind, right)))
    return out


__all__ = [
    "SHARP",
    "embeds_naive",
    "embeds_rogd",
    "one_step_successors",
    "projections_for",
    "rogd_alternatives",
]
