"""Generated rewrite theories: projection rules and goal-driven embedding rules.

Both theories are plain data.  Rules are stored as binary terms over the
universal signature (extended with the goal symbols ``<|``, ``/\\`` and
``true`` for the goal-driven theory) so that they can be printed, compared
modulo the axioms, and executed by the search engines.

A generated rule is dropped when it is an instance, modulo the axioms, of a
rule already kept: some substitution maps the kept rule's left-hand side to
a term equal modulo B to the candidate's left-hand side and, under the same
substitution, its right-hand side to the candidate's right-hand side.  This
is what makes one of the two projections of a commutative ``+`` and the
extra A/C/AC coupling rules disappear.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    ACOMM,
    ASSOC,
    COMM,
    SHARP,
    UNIVERSAL_SORT,
    App,
    AxiomSet,
    OperatorDecl,
    Signature,
    SortPoset,
    Term,
    Var,
    enumerate_class,
    eq_mod_b,
    format_term,
    to_universal,
)

EMB, ROGD = "emb", "rogd"

GOAL_SORT = "Goal"
EMBEDS, AND, TRUE = "<|", "/\\", "true"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Term
    rhs: Term
    label: str

    def format(self, arrow: str = "->") -> str:
        return f"[{self.label}] {format_goal(self.lhs)} {arrow} {format_goal(self.rhs)}"


@dataclass(frozen=True)
class RewriteTheory:
    kind: str
    rules: tuple[RewriteRule, ...]
    sig: Signature = field(repr=False)
    generated: int = 0

    def format(self) -> str:
        arrow = "->" if self.kind == EMB else "=>"
        return "".join(r.format(arrow) + "\n" for r in self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def projections(self) -> dict[str, list[int]]:
        """For a projection theory, the kept argument positions per operator."""
        if self.kind != EMB:
            raise ValueError("projections() applies to projection theories only")
        out: dict[str, list[int]] = {}
        for r in self.rules:
            out.setdefault(r.lhs.op, []).append(r.lhs.args.index(r.rhs))
        return out


def format_goal(t: Term) -> str:
    if isinstance(t, App) and t.op == EMBEDS:
        return f"{format_term(t.args[0])} {EMBEDS} {format_term(t.args[1])}"
    if isinstance(t, App) and t.op == AND:
        parts = []
        stack = [t]
        while stack:
            u = stack.pop()
            if isinstance(u, App) and u.op == AND:
                stack.extend(reversed(u.args))
            else:
                parts.append(format_goal(u))
        return f" {AND} ".join(parts)
    return format_term(t)


def goal_signature(sig_u: Signature) -> Signature:
    ops = dict(sig_u.ops)
    ops[EMBEDS] = OperatorDecl(EMBEDS, (UNIVERSAL_SORT, UNIVERSAL_SORT), GOAL_SORT)
    ops[AND] = OperatorDecl(AND, (GOAL_SORT, GOAL_SORT), GOAL_SORT, AxiomSet(True, True))
    ops[TRUE] = OperatorDecl(TRUE, (), GOAL_SORT)
    return Signature(SortPoset([UNIVERSAL_SORT, GOAL_SORT]), ops, sig_u.name + "-GOALS")


def _universal(sig: Signature) -> Signature:
    return sig if sig.is_universal else to_universal(sig)


# ---------------------------------------------------------------------------
# matching


def match(pattern: Term, term: Term, subst: dict | None = None) -> dict | None:
    """Syntactic matching; variables of ``term`` are treated as constants."""
    subst = {} if subst is None else dict(subst)
    stack = [(pattern, term)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = subst.get(p)
            if bound is None:
                subst[p] = t
            elif bound != t:
                return None
        elif isinstance(t, App) and p.op == t.op and len(p.args) == len(t.args):
            stack.extend(zip(p.args, t.args))
        else:
            return None
    return subst


def substitute(t: Term, subst: dict) -> Term:
    if isinstance(t, Var):
        return subst.get(t, t)
    if not t.args:
        return t
    return App(t.op, tuple(substitute(a, subst) for a in t.args))


def is_instance_mod_b(candidate: RewriteRule, kept: RewriteRule, gsig: Signature) -> bool:
    for variant in enumerate_class(candidate.lhs, gsig):
        subst = match(kept.lhs, variant)
        if subst is not None and eq_mod_b(substitute(kept.rhs, subst), candidate.rhs, gsig):
            return True
    return False


def _eliminate(candidates: list[RewriteRule], gsig: Signature) -> tuple[RewriteRule, ...]:
    kept: list[RewriteRule] = []
    for rule in candidates:
        if not any(is_instance_mod_b(rule, k, gsig) for k in kept):
            kept.append(rule)
    return tuple(kept)


# ---------------------------------------------------------------------------
# generators


def _vars(prefix: str, n: int) -> tuple[Var, ...]:
    return tuple(Var(f"{prefix}{i}", UNIVERSAL_SORT) for i in range(1, n + 1))


def gen_emb_rules(sig: Signature) -> RewriteTheory:
    """One projection ``f(X1..Xn) -> Xi`` per operator and argument."""
    sig_u = _universal(sig)
    candidates = []
    for decl in sig_u.ops.values():
        xs = _vars("X", decl.arity)
        for i, x in enumerate(xs, 1):
            candidates.append(RewriteRule(App(decl.name, xs), x, f"emb-{decl.name}-{i}"))
    rules = _eliminate(candidates, sig_u)
    return RewriteTheory(EMB, rules, sig_u, len(candidates))


def _goal(u: Term, v: Term) -> App:
    return App(EMBEDS, (u, v))


def _conj(goals: list[Term]) -> Term:
    if not goals:
        return App(TRUE, ())
    acc = goals[-1]
    for g in reversed(goals[:-1]):
        acc = App(AND, (g, acc))
    return acc


def rogd_candidates(sig: Signature) -> list[RewriteRule]:
    """The goal-driven rules for every inference-rule instance, before
    redundancy elimination."""
    sig_u = _universal(sig)
    x = Var("X", UNIVERSAL_SORT)
    ops = [sig_u.ops[SHARP]] + [d for d in sig_u.ops.values() if d.name != SHARP]
    out: list[RewriteRule] = []

    for d in ops:
        ts = _vars("T", d.arity)
        for i, t in enumerate(ts, 1):
            out.append(RewriteRule(_goal(x, App(d.name, ts)), _goal(x, t), f"diving-{d.name}-{i}"))

    for d in ops:
        ss, ts = _vars("S", d.arity), _vars("T", d.arity)
        body = _conj([_goal(s, t) for s, t in zip(ss, ts)])
        out.append(RewriteRule(_goal(App(d.name, ss), App(d.name, ts)), body, f"coupling-{d.name}"))

    for d in ops:
        f = d.name
        if d.axioms.comm:
            s1, s2 = _vars("S", 2)
            t1, t2 = _vars("T", 2)
            out.append(RewriteRule(
                _goal(App(f, (s1, s2)), App(f, (t1, t2))),
                _conj([_goal(s1, t2), _goal(s2, t1)]),
                f"coupling-c-{f}",
            ))
        if d.axioms.assoc:
            s0, s1, s2 = (Var(f"S{i}", UNIVERSAL_SORT) for i in range(3))
            t0, t1, t2 = (Var(f"T{i}", UNIVERSAL_SORT) for i in range(3))
            out.append(RewriteRule(
                _goal(App(f, (s0, App(f, (s1, s2)))), App(f, (t0, t1))),
                _conj([_goal(App(f, (s0, s1)), t0), _goal(s2, t1)]),
                f"coupling-a-{f}-1",
            ))
            out.append(RewriteRule(
                _goal(App(f, (s0, s1)), App(f, (t0, App(f, (t1, t2))))),
                _conj([_goal(s0, App(f, (t0, t1))), _goal(s1, t2)]),
                f"coupling-a-{f}-2",
            ))
        if d.axioms.assoc and d.axioms.comm:
            out.append(RewriteRule(
                _goal(App(f, (s0, App(f, (s1, s2)))), App(f, (t0, t1))),
                _conj([_goal(App(f, (s0, s1)), t1), _goal(s2, t0)]),
                f"coupling-ac-{f}-1",
            ))
            out.append(RewriteRule(
                _goal(App(f, (s0, s1)), App(f, (t0, App(f, (t1, t2))))),
                _conj([_goal(s1, App(f, (t0, t1))), _goal(s0, t2)]),
                f"coupling-ac-{f}-2",
            ))

    # the Variable rule; with variables replaced by # it is the # coupling
    sh = App(SHARP, ())
    out.append(RewriteRule(_goal(sh, sh), App(TRUE, ()), "variable"))
    return out


def gen_rogd_rules(sig: Signature) -> RewriteTheory:
    sig_u = _universal(sig)
    candidates = rogd_candidates(sig_u)
    rules = _eliminate(candidates, goal_signature(sig_u))
    return RewriteTheory(ROGD, rules, sig_u, len(candidates))


def kind_summary(theory: RewriteTheory) -> dict[str, int]:
    """Count kept rules by label family (``diving``, ``coupling``, ...)."""
    out: dict[str, int] = {}
    for r in theory.rules:
        fam = r.label.split("-", 1)[0]
        out[fam] = out.get(fam, 0) + 1
    return out


__all__ = [
    "ACOMM",
    "ASSOC",
    "COMM",
    "EMB",
    "ROGD",
    "RewriteRule",
    "RewriteTheory",
    "gen_emb_rules",
    "gen_rogd_rules",
    "rogd_candidates",
    "goal_signature",
    "format_goal",
    "match",
    "substitute",
]
