"""Deterministic embedding over flattened canonical terms.

The decision procedure is a fixed set of 21 equations (see ``EQUATIONS``)
over meta-terms, i.e. canonical flat terms whose variables were replaced by
``#``.  Two evaluation strategies are offered:

* ``strict`` (the ``ml`` engine): both operands of every ``and``/``or`` are
  evaluated before combining;
* short-circuit (the ``sml`` engine): the second operand is skipped when the
  first already decides the result.

``if-then-else`` (used by ``remove``) is lazy in both strategies.

The A and AC list equations also let a list head absorb following list
elements into one block ``F[block]`` that is paired with a single alien of
the other list.  Without this, a goal such as
``+(+(1,2),3) <| +(suc(+(1,2)),3)`` is wrongly refuted, since ``+(1,2)``
only embeds into ``suc(+(1,2))`` as a whole.  Blocks are only tried when
the alien contains ``F`` below its root.

Results of ``<|`` and of the list helpers are cached for the duration of
one top-level evaluation; counters record the equation applications that
were actually evaluated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .results import (
    Budget,
    BudgetExceeded,
    Meter,
    Outcome,
    Verdict,
    bool_outcome,
    stack_safe,
)
from .terms import (
    ACOMM,
    ASSOC,
    COMM,
    SHARP,
    EmbedGoal,
    Flat,
    Signature,
    Term,
    flatten,
    make_flat,
    sharp,
    universal_term,
)

ML, SML = "ml", "sml"


@dataclass(frozen=True)
class Equation:
    ident: str
    lhs: str
    rhs: str

    def __str__(self) -> str:
        return f"{self.ident}: {self.lhs} = {self.rhs}"


EQUATIONS: tuple[Equation, ...] = (
    Equation("E01", "# <| #", "true"),
    Equation("E02", "F[L] <| #", "false"),
    Equation("E03", "T <| F[L]", "any(T, L)  if root(T) =/= F"),
    Equation("E04", "F[L1] <| F[L2]", "any(F[L1], L2) or all(L1, L2)"),
    Equation("E05", "F[U,V] <| F[X,Y]", "any(F[U,V], [X,Y]) or (U <| X and V <| Y) or (U <| Y and V <| X)  if F is C"),
    Equation("E06", "F[L1] <| F[L2]", "any(F[L1], L2) or all_A(L1, L2)  if F is A"),
    Equation("E07", "F[L1] <| F[L2]", "any(F[L1], L2) or all_AC(L1, L2)  if F is AC"),
    Equation("E08", "any(U, nil)", "false"),
    Equation("E09", "any(U, V : L)", "U <| V or any(U, L)"),
    Equation("E10", "all(nil, nil)", "true"),
    Equation("E11", "all(L1, L2)", "false  otherwise (one list empty, the other not)"),
    Equation("E12", "all(U : L1, V : L2)", "U <| V and all(L1, L2)"),
    Equation("E13", "all_A(nil, L)", "true"),
    Equation("E14", "all_A(U : L, nil)", "false"),
    Equation("E15", "all_A(U : L1, V : L2)", "(U <| V and all_A(L1, L2)) or blocks_A or all_A(U : L1, L2)"),
    Equation("E16", "all_AC(nil, L)", "true"),
    Equation("E17", "all_AC(U : L1, L2)", "all_AC_Aux(U : L1, L2, L2)"),
    Equation("E18", "all_AC_Aux(U : L1, nil, L3)", "false"),
    Equation("E19", "all_AC_Aux(U : L1, V : L2, L3)",
             "(U <| V and all_AC(L1, remove(V, L3))) or blocks_AC or all_AC_Aux(U : L1, L2, L3)"),
    Equation("E20", "remove(U, nil)", "nil"),
    Equation("E21", "remove(U, V : L)", "if U = V then L else V : remove(U, L)"),
)

(E01, E02, E03, E04, E05, E06, E07, E08, E09, E10, E11,
 E12, E13, E14, E15, E16, E17, E18, E19, E20, E21) = range(21)


@dataclass
class CallCounter:
    embed_calls: int = 0
    helper_calls: int = 0
    hits: list[int] = field(default_factory=lambda: [0] * len(EQUATIONS))

    @property
    def total(self) -> int:
        return self.embed_calls + self.helper_calls

    def dominated_by(self, other: CallCounter) -> bool:
        return self.embed_calls <= other.embed_calls and self.helper_calls <= other.helper_calls

    def by_equation(self) -> dict[str, int]:
        return {eq.ident: n for eq, n in zip(EQUATIONS, self.hits) if n}


def to_meta(t: Term, sig: Signature) -> Flat:
    """Canonical flat form of the sharped universal version of ``t``."""
    return flatten(sharp(universal_term(t)), sig)


class _Evaluator:
    def __init__(self, strict: bool, meter: Meter | None = None):
        self.strict = strict
        self.meter = meter
        self.counter = CallCounter()
        self._hits = self.counter.hits
        self._embed_memo: dict = {}
        self._list_memo: dict = {}

    # -- helpers --------------------------------------------------------

    def _helper(self, eq: int) -> None:
        self.counter.helper_calls += 1
        self._hits[eq] += 1

    def _or(self, first: bool, rest) -> bool:
        """``first or rest()``; ``rest`` is a list of thunks."""
        if self.strict:
            results = [first] + [thunk() for thunk in rest]
            return any(results)
        if first:
            return True
        for thunk in rest:
            if thunk():
                return True
        return False

    def _and(self, first: bool, second) -> bool:
        if self.strict:
            other = second()
            return first and other
        return first and second()

    # -- <| -------------------------------------------------------------

    def embed(self, u: Flat, v: Flat) -> bool:
        key = (u, v)
        memo = self._embed_memo
        if key in memo:
            return memo[key]
        c = self.counter
        c.embed_calls += 1
        if self.meter is not None and c.embed_calls & 0xFFF == 0:
            self.meter.poll()
        hits = self._hits
        if v.op == SHARP and not v.args:
            if u.op == SHARP and not u.args:
                hits[E01] += 1
                result = True
            else:
                hits[E02] += 1
                result = False
        elif u.op != v.op or u.kind != v.kind:
            hits[E03] += 1
            result = self.any(u, v.args)
        elif v.kind == COMM:
            hits[E05] += 1
            (a, b), (x, y) = u.args, v.args
            result = self._or(self.any(u, v.args), [
                lambda: self._and(self.embed(a, x), lambda: self.embed(b, y)),
                lambda: self._and(self.embed(a, y), lambda: self.embed(b, x)),
            ])
        elif v.kind == ASSOC:
            hits[E06] += 1
            result = self._or(self.any(u, v.args), [lambda: self.all_a(u.op, u.args, v.args)])
        elif v.kind == ACOMM:
            hits[E07] += 1
            result = self._or(self.any(u, v.args), [lambda: self.all_ac(u.op, u.args, v.args)])
        else:
            hits[E04] += 1
            result = self._or(self.any(u, v.args), [lambda: self.all(u.args, v.args)])
        memo[key] = result
        return result

    def any(self, u: Flat, vs: tuple[Flat, ...]) -> bool:
        found = False
        for v in vs:
            self._helper(E09)
            if self.embed(u, v):
                if not self.strict:
                    return True
                found = True
        self._helper(E08)
        return found

    def all(self, us: tuple[Flat, ...], vs: tuple[Flat, ...]) -> bool:
        ok = True
        n = min(len(us), len(vs))
        for i in range(n):
            self._helper(E12)
            if not self.embed(us[i], vs[i]):
                if not self.strict:
                    return False
                ok = False
        if len(us) == len(vs):
            self._helper(E10)
            return ok
        self._helper(E11)
        return False

    # -- associative lists ---------------------------------------------

    def all_a(self, op: str, us: tuple[Flat, ...], vs: tuple[Flat, ...]) -> bool:
        return self._all_a(op, us, 0, vs, 0)

    def _all_a(self, op, us, i, vs, j) -> bool:
        key = ("A", us, i, vs, j)
        memo = self._list_memo
        if key in memo:
            return memo[key]
        if i == len(us):
            self._helper(E13)
            result = True
        elif j == len(vs):
            self._helper(E14)
            result = False
        else:
            self._helper(E15)
            v = vs[j]
            alts = []
            if op in v.ops:
                # the head absorbs the next elements into one block under v
                for end in range(i + 2, len(us) + 1):
                    alts.append(lambda end=end: self._and(
                        self.embed(make_flat(op, ASSOC, us[i:end]), v),
                        lambda: self._all_a(op, us, end, vs, j + 1),
                    ))
            alts.append(lambda: self._all_a(op, us, i, vs, j + 1))
            head = self._and(self.embed(us[i], v), lambda: self._all_a(op, us, i + 1, vs, j + 1))
            result = self._or(head, alts)
        memo[key] = result
        return result

    # -- associative-commutative lists ---------------------------------

    def all_ac(self, op: str, us: tuple[Flat, ...], vs: tuple[Flat, ...]) -> bool:
        key = ("AC", us, vs)
        memo = self._list_memo
        if key in memo:
            return memo[key]
        if not us:
            self._helper(E16)
            result = True
        else:
            self._helper(E17)
            result = self._all_ac_aux(op, us, vs, 0)
        memo[key] = result
        return result

    def _all_ac_aux(self, op, us, l3, k) -> bool:
        key = ("AUX", us, l3, k)
        memo = self._list_memo
        if key in memo:
            return memo[key]
        if k == len(l3):
            self._helper(E18)
            result = False
        else:
            self._helper(E19)
            u, rest, v = us[0], us[1:], l3[k]
            alts = []
            if op in v.ops and rest:
                for group, left in _sub_multisets(rest):
                    alts.append(lambda group=group, left=left: self._and(
                        self.embed(make_flat(op, ACOMM, (u,) + group), v),
                        lambda: self.all_ac(op, left, self.remove(v, l3)),
                    ))
            alts.append(lambda: self._all_ac_aux(op, us, l3, k + 1))
            head = self._and(self.embed(u, v), lambda: self.all_ac(op, rest, self.remove(v, l3)))
            result = self._or(head, alts)
        memo[key] = result
        return result

    def remove(self, v: Flat, vs: tuple[Flat, ...]) -> tuple[Flat, ...]:
        for i, w in enumerate(vs):
            self._helper(E21)
            if w == v:
                return vs[:i] + vs[i + 1:]
        self._helper(E20)
        return vs


def _sub_multisets(items: tuple[Flat, ...]):
    """Distinct nonempty sub-multisets of a sorted tuple, with complements."""
    seen = set()
    n = len(items)
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(n), r):
            group = tuple(items[i] for i in idx)
            if group in seen:
                continue
            seen.add(group)
            chosen = set(idx)
            yield group, tuple(items[i] for i in range(n) if i not in chosen)


def _pair_depth(m1: Flat, m2: Flat, *rest) -> int:
    return max(m1.depth, m2.depth)


@stack_safe(_pair_depth)
def _evaluate(m1: Flat, m2: Flat, strict: bool, meter: Meter | None = None) -> tuple[bool, CallCounter]:
    ev = _Evaluator(strict, meter)
    return ev.embed(m1, m2), ev.counter


def embeds_ml(m1: Flat, m2: Flat) -> tuple[bool, CallCounter]:
    """Strict evaluation of the equations."""
    return _evaluate(m1, m2, True)


def embeds_sml(m1: Flat, m2: Flat) -> tuple[bool, CallCounter]:
    """Short-circuit evaluation of the equations."""
    return _evaluate(m1, m2, False)


def embeds_flat(goal: EmbedGoal, variant: str = SML, budget: Budget | None = None) -> Verdict:
    if variant not in (ML, SML):
        raise ValueError(f"unknown flat engine variant {variant!r}")
    meter = Meter(budget)
    m1 = to_meta(goal.lhs, goal.sig)
    m2 = to_meta(goal.rhs, goal.sig)
    try:
        result, counter = _evaluate(m1, m2, variant == ML, meter)
    except BudgetExceeded:
        return meter.finish(Outcome.TIMEOUT)
    meter.stats.recursive_calls = counter.total
    return meter.finish(bool_outcome(result))


def all_a_greedy(us, vs, op: str, embed) -> bool:
    """Order-preserving list matching that commits to the leftmost partner.

    For every block length the head block is paired with the first element
    of ``vs`` it embeds into, without backtracking over later partners.
    ``embed(a, b)`` decides single embeddings.
    """
    us, vs = tuple(us), tuple(vs)
    if not us:
        return True
    for end in range(1, len(us) + 1):
        block = us[0] if end == 1 else make_flat(op, ASSOC, us[:end])
        for j, v in enumerate(vs):
            if end > 1 and op not in v.ops:
                continue
            if embed(block, v):
                if all_a_greedy(us[end:], vs[j + 1:], op, embed):
                    return True
                break
    return False
