"""Parsers for Maude-style functional module headers and prefix terms.

Module grammar (``.``-terminated declarations)::

    fmod NAT is
      sort Nat .
      op 0 : -> Nat .
      op suc : Nat -> Nat .
      op _+_ : Nat Nat -> Nat [assoc comm] .
    endfm

``sorts``, ``subsorts`` and ``ops`` (several constants or operators sharing a
profile) are accepted as in Maude.  Mixfix names such as ``_+_`` are referred
to in terms by their stripped name ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    SHARP,
    App,
    AxiomSet,
    OperatorDecl,
    Signature,
    SortPoset,
    Term,
    Var,
)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{msg}")


@dataclass
class _Tok:
    text: str
    line: int
    col: int


_WORD = re.compile(r"[^\s\[\],]+|[\[\],]")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        code = line.split("***", 1)[0].split("---", 1)[0]
        for m in _WORD.finditer(code):
            word, col = m.group(0), m.start() + 1
            # a trailing '.' terminates the declaration: "Nat ." or "Nat."
            if len(word) > 1 and word.endswith("."):
                toks.append(_Tok(word[:-1], lineno, col))
                toks.append(_Tok(".", lineno, col + len(word) - 1))
            else:
                toks.append(_Tok(word, lineno, col))
    return toks


def strip_mixfix(name: str) -> str:
    stripped = name.replace("_", "")
    return stripped if stripped and name != stripped else name


def parse_signature(text: str) -> Signature:
    toks = _tokenize(text)
    pos = 0

    def peek() -> _Tok | None:
        return toks[pos] if pos < len(toks) else None

    def take(expected: str | None = None) -> _Tok:
        nonlocal pos
        tok = peek()
        if tok is None:
            last = toks[-1] if toks else _Tok("", 1, 1)
            raise ParseError(f"unexpected end of input (expected {expected or 'token'})", last.line, last.col)
        if expected is not None and tok.text != expected:
            raise ParseError(f"expected {expected!r}, found {tok.text!r}", tok.line, tok.col)
        pos += 1
        return tok

    def until_dot() -> list[_Tok]:
        out = []
        while True:
            tok = take()
            if tok.text == ".":
                return out
            if tok.text in ("op", "ops", "sort", "sorts", "subsort", "subsorts", "endfm"):
                raise ParseError(f"missing '.' before {tok.text!r}", tok.line, tok.col)
            out.append(tok)

    head = take("fmod")
    name = take().text
    take("is")
    sorts: list[str] = []
    subsorts: list[tuple[str, str]] = []
    decls: list[tuple[_Tok, OperatorDecl]] = []

    while True:
        tok = peek()
        if tok is None:
            raise ParseError("missing 'endfm'", head.line, head.col)
        if tok.text == "endfm":
            take()
            break
        kw = take().text
        body = until_dot()
        if kw in ("sort", "sorts"):
            if not body:
                raise ParseError("empty sort declaration", tok.line, tok.col)
            if kw == "sort" and len(body) != 1:
                raise ParseError("'sort' declares exactly one sort; use 'sorts'", tok.line, tok.col)
            sorts.extend(t.text for t in body)
        elif kw in ("subsort", "subsorts"):
            texts = [t.text for t in body]
            if "<" not in texts:
                raise ParseError("subsort declaration needs '<'", tok.line, tok.col)
            # chains like A B < C < D
            groups: list[list[str]] = [[]]
            for t in texts:
                if t == "<":
                    groups.append([])
                else:
                    groups[-1].append(t)
            if any(not g for g in groups):
                raise ParseError("malformed subsort declaration", tok.line, tok.col)
            for lower, upper in zip(groups, groups[1:]):
                subsorts.extend((lo, hi) for lo in lower for hi in upper)
        elif kw in ("op", "ops"):
            decls.extend((tok, d) for d in _op_decls(kw, body, tok))
        else:
            raise ParseError(f"unknown declaration {kw!r}", tok.line, tok.col)

    if pos != len(toks):
        extra = toks[pos]
        raise ParseError(f"trailing input {extra.text!r}", extra.line, extra.col)

    sort_set = set(sorts)
    if len(sort_set) != len(sorts):
        dup = next(s for s in sorts if sorts.count(s) > 1)
        raise ParseError(f"sort {dup!r} declared twice", head.line, head.col)
    try:
        poset = SortPoset(sort_set, subsorts)
    except ValueError as exc:
        raise ParseError(str(exc), head.line, head.col) from None

    poset = _add_tops(poset, head)

    ops: dict[str, OperatorDecl] = {}
    for tok, decl in decls:
        if decl.name in ops:
            raise ParseError(f"duplicate operator {decl.name!r} (no overloading)", tok.line, tok.col)
        if decl.name == SHARP:
            raise ParseError(f"operator name {SHARP!r} is reserved", tok.line, tok.col)
        for s in (*decl.arg_sorts, decl.result_sort):
            if s not in poset.sorts:
                raise ParseError(f"unknown sort {s!r} in declaration of {decl.name!r}", tok.line, tok.col)
        _check_axioms(decl, poset, tok)
        ops[decl.name] = decl
    return Signature(poset, ops, name)


def _op_decls(kw: str, body: list[_Tok], tok: _Tok) -> list[OperatorDecl]:
    texts = [t.text for t in body]
    if ":" not in texts or "->" not in texts:
        raise ParseError("operator declaration needs ':' and '->'", tok.line, tok.col)
    colon = texts.index(":")
    arrow = texts.index("->")
    names = texts[:colon]
    if not names:
        raise ParseError("operator declaration without a name", tok.line, tok.col)
    if kw == "op" and len(names) != 1:
        raise ParseError("'op' declares one operator; use 'ops'", tok.line, tok.col)
    args = texts[colon + 1:arrow]
    rest = texts[arrow + 1:]
    if not rest:
        raise ParseError("missing result sort", tok.line, tok.col)
    result = rest[0]
    attrs: list[str] = []
    if len(rest) > 1:
        if rest[1] != "[" or rest[-1] != "]":
            raise ParseError(f"malformed attribute list in {' '.join(texts)!r}", tok.line, tok.col)
        attrs = [a for a in rest[2:-1] if a != ","]
    for a in attrs:
        if a not in ("assoc", "comm"):
            raise ParseError(f"unsupported attribute {a!r}", tok.line, tok.col)
    axioms = AxiomSet(assoc="assoc" in attrs, comm="comm" in attrs)
    out = []
    for raw in names:
        stripped = strip_mixfix(raw)
        out.append(OperatorDecl(stripped, tuple(args), result, axioms, raw if raw != stripped else None))
    return out


def _check_axioms(decl: OperatorDecl, poset: SortPoset, tok: _Tok) -> None:
    ax = decl.axioms
    if not (ax.assoc or ax.comm):
        return
    label = "assoc" if ax.assoc else "comm"
    if decl.arity != 2:
        raise ParseError(f"{label} on non-binary operator {decl.name!r}", tok.line, tok.col)
    a, b = decl.arg_sorts
    if a != b:
        raise ParseError(f"{label} operator {decl.name!r} needs equal argument sorts", tok.line, tok.col)
    if ax.assoc and poset.top(a) != poset.top(decl.result_sort):
        raise ParseError(
            f"assoc operator {decl.name!r} mixes sort components {a} and {decl.result_sort}",
            tok.line,
            tok.col,
        )


def _add_tops(poset: SortPoset, where: _Tok) -> SortPoset:
    sorts = set(poset.sorts)
    subsorts = set(poset.subsorts)
    changed = False
    for comp in poset.components():
        tops = [t for t in comp if all(poset.leq(x, t) for x in comp)]
        if len(tops) == 1:
            continue
        maximal = [t for t in comp if not any(poset.leq(t, u) and u != t for u in comp)]
        top = f"Top-{min(comp)}"
        if top in sorts:
            raise ParseError(f"sort name {top!r} collides with a synthesized top sort", where.line, where.col)
        sorts.add(top)
        subsorts.update((m, top) for m in maximal)
        changed = True
    return SortPoset(sorts, subsorts) if changed else poset


# ---------------------------------------------------------------------------
# Terms

_TERM_TOKEN = re.compile(r"\s*(?:(?P<punct>[(),])|(?P<word>[^\s(),]+))")


def parse_term(text: str, sig: Signature) -> Term:
    """Parse a prefix term such as ``+(1,X:Nat)`` and check its sorts."""
    toks: list[tuple[str, int]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = "punct" if m.group("punct") else "word"
        toks.append((m.group(kind), m.start(kind) + 1))
        pos = m.end()
    if not toks:
        raise ParseError("empty term", 1, 1)

    # frames: [op name, column, collected args]
    frames: list[list] = []
    result: Term | None = None
    i = 0
    expect_arg = True
    while i < len(toks):
        tok, col = toks[i]
        if expect_arg:
            if tok in "(),":
                raise ParseError(f"expected a term, found {tok!r}", 1, col)
            nxt = toks[i + 1][0] if i + 1 < len(toks) else None
            if nxt == "(":
                frames.append([tok, col, []])
                i += 2
                continue
            leaf = _leaf(tok, col, sig)
            i += 1
            expect_arg = False
            if not frames:
                result = leaf
                if i != len(toks):
                    raise ParseError(f"trailing input {toks[i][0]!r}", 1, toks[i][1])
                break
            frames[-1][2].append(leaf)
        else:
            if not frames:
                raise ParseError(f"trailing input {tok!r}", 1, col)
            if tok == ",":
                expect_arg = True
                i += 1
            elif tok == ")":
                op, ocol, args = frames.pop()
                node = _app(op, ocol, args, sig)
                i += 1
                if not frames:
                    result = node
                    if i != len(toks):
                        raise ParseError(f"trailing input {toks[i][0]!r}", 1, toks[i][1])
                    break
                frames[-1][2].append(node)
            else:
                raise ParseError(f"expected ',' or ')', found {tok!r}", 1, col)
    if result is None or frames:
        raise ParseError("unbalanced parentheses", 1, len(text))
    return result


def _leaf(tok: str, col: int, sig: Signature) -> Term:
    name, colon, sort = tok.partition(":")
    if colon:
        if not name or not sort:
            raise ParseError(f"malformed variable {tok!r}", 1, col)
        if sort not in sig.poset.sorts:
            raise ParseError(f"unknown sort {sort!r} in variable {tok!r}", 1, col)
        return Var(name, sort)
    decl = sig.ops.get(tok)
    if decl is None:
        raise ParseError(f"unknown operator {tok!r}", 1, col)
    if decl.arity != 0:
        raise ParseError(f"operator {tok!r} expects {decl.arity} arguments, got 0", 1, col)
    return App(tok, ())


def _app(op: str, col: int, args: list[Term], sig: Signature) -> Term:
    decl = sig.ops.get(op)
    if decl is None:
        raise ParseError(f"unknown operator {op!r}", 1, col)
    if decl.arity != len(args):
        raise ParseError(f"operator {op!r} expects {decl.arity} arguments, got {len(args)}", 1, col)
    for arg, want in zip(args, decl.arg_sorts):
        got = sort_of(arg, sig)
        if not sig.poset.leq(got, want):
            raise ParseError(f"argument {arg} of {op!r} has sort {got}, expected {want}", 1, col)
    return App(op, tuple(args))


def sort_of(t: Term, sig: Signature) -> str:
    if isinstance(t, Var):
        return t.sort
    return sig.op(t.op).result_sort


def load_signature(path) -> Signature:
    with open(path, encoding="utf-8") as fh:
        return parse_signature(fh.read())
