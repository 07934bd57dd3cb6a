"""Order-sorted signatures, terms and their flattened canonical forms.

Terms come in two shapes.  ``Var``/``App`` are ordinary (binary, nested)
terms as written by the user.  ``Flat`` is the canonical representation in
which nested applications of an associative operator are merged into one
poly-variadic node and the arguments of commutative operators are sorted,
so that two terms are equal modulo the A/C axioms iff their flat forms are
structurally equal.

All values are immutable and carry their hash, size and depth, so deep terms
can be hashed and compared without re-walking them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial
from typing import Iterable, Iterator, Mapping

UNIVERSAL_SORT = "U"
SHARP = "#"

FREE, COMM, ASSOC, ACOMM = "free", "C", "A", "AC"


@dataclass(frozen=True)
class AxiomSet:
    assoc: bool = False
    comm: bool = False

    @property
    def kind(self) -> str:
        if self.assoc and self.comm:
            return ACOMM
        if self.assoc:
            return ASSOC
        if self.comm:
            return COMM
        return FREE

    def __str__(self) -> str:
        attrs = [a for a, on in (("assoc", self.assoc), ("comm", self.comm)) if on]
        return f"[{' '.join(attrs)}]" if attrs else ""


NO_AXIOMS = AxiomSet()


@dataclass(frozen=True)
class OperatorDecl:
    name: str
    arg_sorts: tuple[str, ...]
    result_sort: str
    axioms: AxiomSet = NO_AXIOMS
    mixfix: str | None = None

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    @property
    def kind(self) -> str:
        return self.axioms.kind

    def __str__(self) -> str:
        name = self.mixfix or self.name
        args = " ".join(self.arg_sorts)
        head = f"op {name} : {args} -> {self.result_sort}" if args else f"op {name} : -> {self.result_sort}"
        attrs = str(self.axioms)
        return f"{head} {attrs} ." if attrs else f"{head} ."


class SortPoset:
    """Finite poset of sorts, stored as its reflexive-transitive closure."""

    def __init__(self, sorts: Iterable[str], subsorts: Iterable[tuple[str, str]] = ()):
        self.sorts = frozenset(sorts)
        pairs = set(subsorts)
        for lo, hi in pairs:
            if lo not in self.sorts or hi not in self.sorts:
                raise ValueError(f"subsort {lo} < {hi} mentions an undeclared sort")
        direct: dict[str, set[str]] = {s: set() for s in self.sorts}
        for lo, hi in pairs:
            direct[lo].add(hi)
        above = {}
        for s in self.sorts:
            seen = {s}
            frontier = [s]
            while frontier:
                for t in direct[frontier.pop()]:
                    if t not in seen:
                        seen.add(t)
                        frontier.append(t)
            above[s] = seen
        for s in self.sorts:
            for t in above[s]:
                if t != s and s in above[t]:
                    raise ValueError(f"subsort cycle between {s} and {t}")
        self._above = {s: frozenset(v) for s, v in above.items()}
        self.subsorts = frozenset(pairs)

    def leq(self, a: str, b: str) -> bool:
        return b in self._above.get(a, ())

    def components(self) -> list[frozenset[str]]:
        remaining = set(self.sorts)
        comps = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            frontier = [seed]
            while frontier:
                s = frontier.pop()
                for t in self.sorts:
                    if t not in comp and (self.leq(s, t) or self.leq(t, s)):
                        comp.add(t)
                        frontier.append(t)
            remaining -= comp
            comps.append(frozenset(comp))
        return sorted(comps, key=min)

    def component_of(self, s: str) -> frozenset[str]:
        for comp in self.components():
            if s in comp:
                return comp
        raise KeyError(s)

    def top(self, s: str) -> str:
        comp = self.component_of(s)
        tops = [t for t in comp if all(self.leq(x, t) for x in comp)]
        if len(tops) != 1:
            raise ValueError(f"component of {s} has no unique top sort")
        return tops[0]


@dataclass(frozen=True)
class Signature:
    poset: SortPoset
    ops: Mapping[str, OperatorDecl]
    name: str = "M"

    def op(self, name: str) -> OperatorDecl:
        try:
            return self.ops[name]
        except KeyError:
            raise KeyError(f"unknown operator {name!r}") from None

    def kind_of(self, name: str) -> str:
        decl = self.ops.get(name)
        return decl.kind if decl is not None else FREE

    @property
    def is_universal(self) -> bool:
        return self.poset.sorts == {UNIVERSAL_SORT} and SHARP in self.ops

    def __str__(self) -> str:
        lines = [f"fmod {self.name} is"]
        lines.append(f"  sorts {' '.join(sorted(self.poset.sorts))} .")
        for lo, hi in sorted(self.poset.subsorts):
            lines.append(f"  subsort {lo} < {hi} .")
        for decl in self.ops.values():
            lines.append(f"  {decl}")
        lines.append("endfm")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_term(self)!r})"


class Var(Term):
    __slots__ = ("name", "sort", "_hash")
    size = 1
    depth = 1

    def __init__(self, name: str, sort: str):
        self.name = name
        self.sort = sort
        self._hash = hash(("var", name, sort))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, Var) and self.name == other.name and self.sort == other.sort
        )


class App(Term):
    __slots__ = ("op", "args", "_hash", "size", "depth")

    def __init__(self, op: str, args: tuple[Term, ...] = ()):
        self.op = op
        self.args = tuple(args)
        self._hash = hash((op, self.args))
        self.size = 1 + sum(a.size for a in self.args)
        self.depth = 1 + max((a.depth for a in self.args), default=0)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, App) or self._hash != other._hash:
            return False
        return _same_tree(self, other)


def _same_tree(a, b) -> bool:
    """Structural equality without recursion (terms may be very deep)."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y) or x._hash != y._hash:
            return False
        if isinstance(x, Var):
            if x.name != y.name or x.sort != y.sort:
                return False
            continue
        if x.op != y.op or len(x.args) != len(y.args):
            return False
        stack.extend(zip(x.args, y.args))
    return True


def const(name: str) -> App:
    return App(name, ())


def format_term(t: Term) -> str:
    out: list[str] = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Var):
            out.append(f"{item.name}:{item.sort}")
        elif not item.args:
            out.append(item.op)
        else:
            out.append(item.op + "(")
            stack.append(")")
            for i, a in enumerate(reversed(item.args)):
                stack.append(a)
                if i < len(item.args) - 1:
                    stack.append(",")
    return "".join(out)


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, App):
            stack.extend(u.args)


def variables(t: Term) -> set[Var]:
    return {u for u in subterms(t) if isinstance(u, Var)}


def _rebuild(t: Term, leaf) -> Term:
    """Bottom-up map over ``t`` replacing each ``Var`` by ``leaf(var)``."""
    done: dict[int, Term] = {}
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if isinstance(u, Var):
            done[id(u)] = leaf(u)
        elif ready or not u.args:
            args = tuple(done[id(a)] for a in u.args)
            done[id(u)] = u if all(x is y for x, y in zip(args, u.args)) else App(u.op, args)
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return done[id(t)]


def universal_term(t: Term) -> Term:
    """Regard every variable of ``t`` as having the universal sort."""
    return _rebuild(t, lambda v: v if v.sort == UNIVERSAL_SORT else Var(v.name, UNIVERSAL_SORT))


def sharp(t: Term) -> Term:
    """Replace every variable by the fresh constant ``#``."""
    hash_const = App(SHARP, ())
    return _rebuild(t, lambda v: hash_const)


def to_universal(sig: Signature) -> Signature:
    """Collapse all sorts into ``U`` and add the constant ``#``."""
    ops = {}
    for decl in sig.ops.values():
        ops[decl.name] = OperatorDecl(
            decl.name,
            (UNIVERSAL_SORT,) * decl.arity,
            UNIVERSAL_SORT,
            decl.axioms,
            decl.mixfix,
        )
    ops[SHARP] = OperatorDecl(SHARP, (), UNIVERSAL_SORT)
    name = sig.name if sig.name.endswith("-U") else f"{sig.name}-U"
    return Signature(SortPoset([UNIVERSAL_SORT]), ops, name)


# ---------------------------------------------------------------------------
# Flattened terms


class Flat:
    """Canonical flattened term.

    ``kind`` is the axiom tag of the root operator (``free``, ``C``, ``A``,
    ``AC``) or ``var`` for a variable leaf.  Constants are nodes without
    arguments.  ``size`` counts nodes of the equivalent binary term, so it is
    invariant under the axioms; ``depth`` is the depth of the flat tree.
    """

    __slots__ = ("op", "kind", "args", "_hash", "size", "depth", "key", "ops")

    def __init__(self, op: str, kind: str, args: tuple[Flat, ...] = ()):
        self.op = op
        self.kind = kind
        self.args = args
        self._hash = hash((op, args))
        n = len(args)
        self.size = sum(a.size for a in args) + (n - 1 if kind in (ASSOC, ACOMM) else 1)
        if not args:
            self.size = 1
        self.depth = 1 + max((a.depth for a in args), default=0)
        self.key = (op, n, tuple(a.key for a in args))
        ops = {op} if kind != "var" else set()
        for a in args:
            ops |= a.ops
        self.ops = frozenset(ops)

    @property
    def is_leaf(self) -> bool:
        return not self.args

    def contains_op_below(self, op: str) -> bool:
        """True iff some proper subterm is rooted by ``op``."""
        return any(op in a.ops for a in self.args)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Flat) or self._hash != other._hash:
            return False
        return _same_tree(self, other)

    def __lt__(self, other: Flat) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return format_flat(self)

    def __repr__(self) -> str:
        return f"Flat({format_flat(self)!r})"


def format_flat(ft: Flat) -> str:
    out: list[str] = []
    stack: list = [ft]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif not item.args:
            out.append(item.op)
        else:
            out.append(item.op + "[")
            stack.append("]")
            for i, a in enumerate(reversed(item.args)):
                stack.append(a)
                if i < len(item.args) - 1:
                    stack.append(",")
    return "".join(out)


SHARP_FLAT = Flat(SHARP, FREE)


def make_flat(op: str, kind: str, args: Iterable[Flat]) -> Flat:
    """Build a canonical node, splicing same-operator children of A/AC nodes
    and sorting the arguments of C/AC nodes.  A one-element A/AC list
    collapses to that element."""
    if kind in (ASSOC, ACOMM):
        spliced: list[Flat] = []
        for a in args:
            if a.op == op and a.kind == kind:
                spliced.extend(a.args)
            else:
                spliced.append(a)
        if len(spliced) == 1:
            return spliced[0]
        if kind == ACOMM:
            spliced.sort(key=_key)
        return Flat(op, kind, tuple(spliced))
    args = tuple(args)
    if kind == COMM and len(args) == 2 and args[1].key < args[0].key:
        args = (args[1], args[0])
    return Flat(op, kind, args)


def _key(ft: Flat):
    return ft.key


def flatten(t: Term, sig: Signature) -> Flat:
    """Canonical flat form of ``t`` modulo the A/C axioms of ``sig``."""
    done: dict[int, Flat] = {}
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if isinstance(u, Var):
            done[id(u)] = Flat(f"{u.name}:{u.sort}", "var")
        elif ready or not u.args:
            done[id(u)] = make_flat(u.op, sig.kind_of(u.op), [done[id(a)] for a in u.args])
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return done[id(t)]


def unflatten(ft: Flat) -> Term:
    """Binary term for ``ft``; A/AC lists are associated to the right."""
    done: dict[int, Term] = {}
    stack = [(ft, False)]
    while stack:
        u, ready = stack.pop()
        if u.kind == "var":
            name, _, sort = u.op.partition(":")
            done[id(u)] = Var(name, sort)
        elif ready or not u.args:
            args = [done[id(a)] for a in u.args]
            if u.kind in (ASSOC, ACOMM):
                acc = args[-1]
                for a in reversed(args[:-1]):
                    acc = App(u.op, (a, acc))
                done[id(u)] = acc
            else:
                done[id(u)] = App(u.op, tuple(args))
        else:
            stack.append((u, True))
            stack.extend((a, False) for a in u.args)
    return done[id(ft)]


LT, EQ, GT = -1, 0, 1


def term_order(a: Flat, b: Flat) -> int:
    """Total order: root symbol name, then argument count, then arguments
    left to right."""
    if a.key < b.key:
        return LT
    if a.key == b.key:
        return EQ
    return GT


def eq_mod_b(t1: Term, t2: Term, sig: Signature) -> bool:
    return flatten(t1, sig) == flatten(t2, sig)


def flat_depth_of(t: Term, sig: Signature) -> int:
    return flatten(t, sig).depth


# ---------------------------------------------------------------------------
# B-equivalence classes


class ClassTooLarge(Exception):
    """The equivalence class exceeds the enumeration cap."""


DEFAULT_CLASS_CAP = 10**6

_CATALAN = [1]
for _n in range(1, 40):
    _CATALAN.append(_CATALAN[-1] * 2 * (2 * _n - 1) // (_n + 1))


def _bracketings(op: str, leaves: list[Term]) -> list[Term]:
    n = len(leaves)
    table: dict[tuple[int, int], list[Term]] = {}
    for i in range(n):
        table[i, i + 1] = [leaves[i]]
    for width in range(2, n + 1):
        for i in range(n - width + 1):
            j = i + width
            out = []
            for k in range(i + 1, j):
                for left in table[i, k]:
                    for right in table[k, j]:
                        out.append(App(op, (left, right)))
            table[i, j] = out
    return table[0, n]


def _distinct_perms(items: list[Flat]) -> Iterator[tuple[Flat, ...]]:
    # items arrive sorted; standard next-permutation over keys avoids duplicates
    idx = sorted(range(len(items)), key=lambda i: items[i].key)
    seq = [items[i] for i in idx]
    keys = [x.key for x in seq]
    while True:
        yield tuple(seq)
        i = len(keys) - 2
        while i >= 0 and keys[i] >= keys[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(keys) - 1
        while keys[j] <= keys[i]:
            j -= 1
        keys[i], keys[j] = keys[j], keys[i]
        seq[i], seq[j] = seq[j], seq[i]
        keys[i + 1:] = reversed(keys[i + 1:])
        seq[i + 1:] = reversed(seq[i + 1:])


def class_size(ft: Flat) -> int:
    """Upper bound on the number of binary terms in the class of ``ft``
    (exact when no two AC arguments coincide)."""
    if ft.kind == "var" or not ft.args:
        return 1
    prod = 1
    for a in ft.args:
        prod *= class_size(a)
    n = len(ft.args)
    if ft.kind == COMM:
        return prod * 2
    if ft.kind == ASSOC:
        return prod * _CATALAN[n - 1]
    if ft.kind == ACOMM:
        return prod * factorial(n) * _CATALAN[n - 1]
    return prod


def enumerate_class(t: Term, sig: Signature, cap: int = DEFAULT_CLASS_CAP) -> set[Term]:
    """All syntactically distinct terms equal to ``t`` modulo the axioms."""
    ft = flatten(t, sig)
    estimate = class_size(ft)
    if estimate > cap:
        raise ClassTooLarge(f"class of {t} has {estimate} members (cap {cap})")
    memo: dict[Flat, set[Term]] = {}
    result = _class_of(ft, memo, cap)
    if len(result) > cap:
        raise ClassTooLarge(f"class of {t} exceeds cap {cap}")
    return result


def _class_of(ft: Flat, memo: dict, cap: int) -> set[Term]:
    if ft in memo:
        return memo[ft]
    if ft.kind == "var":
        name, _, sort = ft.op.partition(":")
        out = {Var(name, sort)}
    elif not ft.args:
        out = {App(ft.op, ())}
    else:
        arg_classes = [_class_of(a, memo, cap) for a in ft.args]
        if ft.kind == FREE:
            out = {App(ft.op, combo) for combo in _product(arg_classes)}
        elif ft.kind == COMM:
            out = set()
            for x in arg_classes[0]:
                for y in arg_classes[1]:
                    out.add(App(ft.op, (x, y)))
                    out.add(App(ft.op, (y, x)))
        elif ft.kind == ASSOC:
            out = set()
            for leaves in _product(arg_classes):
                out.update(_bracketings(ft.op, list(leaves)))
                if len(out) > cap:
                    raise ClassTooLarge(f"class exceeds cap {cap}")
        else:
            out = set()
            for perm in _distinct_perms(list(ft.args)):
                for leaves in _product([_class_of(a, memo, cap) for a in perm]):
                    out.update(_bracketings(ft.op, list(leaves)))
                    if len(out) > cap:
                        raise ClassTooLarge(f"class exceeds cap {cap}")
    memo[ft] = out
    return out


def _product(classes: list[set[Term]]) -> Iterator[tuple[Term, ...]]:
    return product(*[sorted(c, key=format_term) for c in classes])


# ---------------------------------------------------------------------------
# Goals


@dataclass(frozen=True)
class EmbedGoal:
    """Embedding problem ``lhs <| rhs`` over ``sig``."""

    lhs: Term
    rhs: Term
    sig: Signature = field(repr=False)

    @property
    def depth(self) -> int:
        return max(self.lhs.depth, self.rhs.depth)

    @property
    def size(self) -> int:
        return self.lhs.size + self.rhs.size
