"""Random goal generation and the benchmark runner."""

from __future__ import annotations

import csv
import io
import random
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .engines import check
from .results import Budget, Outcome
from .terms import (
    ACOMM,
    ASSOC,
    COMM,
    FREE,
    App,
    EmbedGoal,
    OperatorDecl,
    Signature,
    Term,
    Var,
    flat_depth_of,
    flatten,
)

CSV_COLUMNS = ("engine", "goal_id", "t1_ot", "t1_ft", "t2_ot", "t2_ft", "outcome", "time_ms", "states", "calls")
KINDS = (FREE, COMM, ASSOC, ACOMM)


class GenError(ValueError):
    """The requested term shape cannot be built over the signature."""


@dataclass(frozen=True)
class GenSpec:
    seed: int = 0
    t1_depth: int = 5
    t2_depths: tuple[int, ...] = (5,)
    # how many non-constant operators of each axiom kind to use; None = all
    symbol_mix: Mapping[str, int] | None = None
    var_rate: float = 0.0

    def __post_init__(self):
        if self.t1_depth < 1 or any(d < 1 for d in self.t2_depths):
            raise GenError("term depths must be at least 1")


def select_ops(sig: Signature, mix: Mapping[str, int] | None) -> list[OperatorDecl]:
    """Constants plus the first ``mix[kind]`` operators of each kind, in
    declaration order."""
    decls = [d for d in sig.ops.values() if d.name != "#"]
    if mix is None:
        return decls
    unknown = set(mix) - set(KINDS)
    if unknown:
        raise GenError(f"unknown operator kinds in symbol mix: {sorted(unknown)}")
    out = [d for d in decls if d.arity == 0]
    for kind in KINDS:
        want = mix.get(kind, 0)
        pool = [d for d in decls if d.arity > 0 and d.kind == kind]
        if want > len(pool):
            raise GenError(f"symbol mix asks for {want} {kind} operators, signature has {len(pool)}")
        out.extend(pool[:want])
    return out


class TermGenerator:
    """Random well-sorted terms of an exact (unflattened) depth."""

    def __init__(self, sig: Signature, ops: Sequence[OperatorDecl] | None = None,
                 var_rate: float = 0.0, max_depth: int = 64):
        self.sig = sig
        self.ops = list(ops) if ops is not None else [d for d in sig.ops.values() if d.name != "#"]
        self.var_rate = var_rate
        self.sorts = sorted(sig.poset.sorts)
        self.max_depth = max_depth
        # exact[s][d]: some term of sort <= s has depth exactly d
        self.exact = {s: [False] * (max_depth + 1) for s in self.sorts}
        for d in range(1, max_depth + 1):
            for s in self.sorts:
                self.exact[s][d] = any(self._op_fits(op, s, d) for op in self.ops)

    def _upto(self, s: str, d: int) -> bool:
        return any(self.exact[s][1:d + 1])

    def _op_fits(self, op: OperatorDecl, s: str, d: int) -> bool:
        if not self.sig.poset.leq(op.result_sort, s):
            return False
        if op.arity == 0:
            return d == 1
        if d == 1:
            return False
        args = op.arg_sorts
        if not all(self._upto(a, d - 1) for a in args):
            return False
        return any(self.exact[a][d - 1] for a in args)

    def feasible(self, sort: str, depth: int) -> bool:
        return depth <= self.max_depth and self.exact[sort][depth]

    def term(self, rng: random.Random, depth: int, sort: str | None = None) -> Term:
        if sort is None:
            choices = [s for s in self.sorts if self.feasible(s, depth)]
            if not choices:
                raise GenError(f"no term of depth {depth} over the selected operators")
            sort = rng.choice(choices)
        if not self.feasible(sort, depth):
            raise GenError(f"no term of sort {sort} with depth {depth}")
        return self._gen(rng, sort, depth)

    def _gen(self, rng: random.Random, sort: str, depth: int) -> Term:
        if depth == 1 and self.var_rate and rng.random() < self.var_rate:
            return Var(rng.choice("XYZ"), sort)
        op = rng.choice([o for o in self.ops if self._op_fits(o, sort, depth)])
        if op.arity == 0:
            return App(op.name, ())
        carriers = [i for i, a in enumerate(op.arg_sorts) if self.exact[a][depth - 1]]
        deep = rng.choice(carriers)
        args = []
        for i, a in enumerate(op.arg_sorts):
            if i == deep:
                d = depth - 1
            else:
                d = rng.choice([k for k in range(1, depth) if self.exact[a][k]])
            args.append(self._gen(rng, a, d))
        return App(op.name, tuple(args))


def gen_term(spec: GenSpec, sig: Signature, depth: int | None = None,
             rng: random.Random | None = None) -> Term:
    """Deterministic (per seed) random term of the requested depth."""
    rng = rng or random.Random(spec.seed)
    gen = TermGenerator(sig, select_ops(sig, spec.symbol_mix), spec.var_rate,
                        max_depth=max(64, depth or spec.t1_depth))
    return gen.term(rng, depth if depth is not None else spec.t1_depth)


def gen_sized_term(sig: Signature, size: int, rng: random.Random) -> Term:
    """Random ground term with exactly ``size`` nodes.

    Sorts are ignored, so this is meant for single-sorted signatures.  A
    unary operator is required so that every size is reachable.
    """
    consts = [d for d in sig.ops.values() if d.arity == 0 and d.name != "#"]
    by_arity: dict[int, list[OperatorDecl]] = {}
    for d in sig.ops.values():
        if d.arity > 0:
            by_arity.setdefault(d.arity, []).append(d)
    if not consts or 1 not in by_arity:
        raise GenError("sized generation needs a constant and a unary operator")
    # top-down with an explicit stack so that deep terms are fine
    root: list = [None]
    pending: list[tuple[int, list, int]] = [(size, root, 0)]
    built: list[tuple[list, int, str, list]] = []
    while pending:
        n, parent, slot = pending.pop()
        if n == 1:
            parent[slot] = App(rng.choice(consts).name, ())
            continue
        arity = rng.choice([a for a in by_arity if a <= n - 1])
        op = rng.choice(by_arity[arity])
        cuts = sorted(rng.sample(range(1, n - 1), arity - 1))
        parts = [hi - lo for lo, hi in zip([0] + cuts, cuts + [n - 1])]
        children: list = [None] * arity
        built.append((parent, slot, op.name, children))
        for i, p in enumerate(parts):
            pending.append((p, children, i))
    for parent, slot, name, children in reversed(built):
        parent[slot] = App(name, tuple(children))
    return root[0]


# ---------------------------------------------------------------------------
# goals


def random_goal(gen: TermGenerator, rng: random.Random, lhs_depth: int, rhs_depth: int) -> EmbedGoal:
    return EmbedGoal(gen.term(rng, lhs_depth), gen.term(rng, rhs_depth), gen.sig)


def false_goals(sig: Signature, spec: GenSpec, count: int, rhs_depth: int,
                max_attempts: int = 1000, budget: Budget | None = None) -> list[EmbedGoal]:
    """``count`` non-embedding goals found by rejection sampling against the
    short-circuit flat engine."""
    rng = random.Random(f"{spec.seed}:{rhs_depth}")
    gen = TermGenerator(sig, select_ops(sig, spec.symbol_mix), spec.var_rate,
                        max_depth=max(64, spec.t1_depth, rhs_depth))
    out: list[EmbedGoal] = []
    attempts = 0
    while len(out) < count:
        if attempts >= max_attempts:
            raise GenError(f"found only {len(out)} false goals in {max_attempts} attempts")
        attempts += 1
        goal = random_goal(gen, rng, spec.t1_depth, rhs_depth)
        if check(goal, "sml", budget).outcome is Outcome.FALSE:
            out.append(goal)
    return out


# ---------------------------------------------------------------------------
# runner


@dataclass
class BenchRow:
    engine: str
    goal_id: str
    t1_ot: int
    t1_ft: int
    t2_ot: int
    t2_ft: int
    outcome: Outcome
    time_ms: float
    states: int
    calls: int
    samples: list[float] = field(default_factory=list, repr=False)

    def as_csv(self) -> list[str]:
        return [self.engine, self.goal_id, str(self.t1_ot), str(self.t1_ft), str(self.t2_ot),
                str(self.t2_ft), str(self.outcome), f"{self.time_ms:.3f}", str(self.states), str(self.calls)]


def run_goal(engine: str, goal: EmbedGoal, goal_id: str, budget: Budget | None, reps: int = 10) -> BenchRow:
    """Run one (engine, goal) cell ``reps`` times and keep the median time.

    A timeout ends the repetitions early.
    """
    times = []
    verdict = None
    for _ in range(max(1, reps)):
        verdict = check(goal, engine, budget)
        times.append(verdict.stats.wall_time * 1000.0)
        if verdict.outcome is Outcome.TIMEOUT:
            break
    sig = goal.sig
    return BenchRow(
        engine=engine,
        goal_id=goal_id,
        t1_ot=goal.lhs.depth,
        t1_ft=flat_depth_of(goal.lhs, sig),
        t2_ot=goal.rhs.depth,
        t2_ft=flat_depth_of(goal.rhs, sig),
        outcome=verdict.outcome,
        time_ms=statistics.median(times),
        states=verdict.stats.states_expanded,
        calls=verdict.stats.recursive_calls,
        samples=times,
    )


def run_bench(sig: Signature, engines: Iterable[str], spec: GenSpec, budget: Budget | None,
              goals_per_depth: int = 10, reps: int = 10) -> list[BenchRow]:
    engines = list(engines)
    rows: list[BenchRow] = []
    if not engines:
        return rows
    for depth in spec.t2_depths:
        goals = false_goals(sig, spec, goals_per_depth, depth)
        for k, goal in enumerate(goals):
            gid = f"d{depth}-{k}"
            for engine in engines:
                rows.append(run_goal(engine, goal, gid, budget, reps))
    return rows


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()


def write_csv(rows: Iterable[BenchRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def flat_size(t: Term, sig: Signature) -> int:
    """Node count of the flattened tree (each A/AC list counts once)."""
    total = 0
    stack = [flatten(t, sig)]
    while stack:
        ft = stack.pop()
        total += 1
        stack.extend(ft.args)
    return total
