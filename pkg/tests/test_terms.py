from __future__ import annotations

import pytest

from acembed.parse import ParseError, parse_signature, parse_term
from acembed.terms import (
    ACOMM,
    COMM,
    FREE,
    App,
    ClassTooLarge,
    Var,
    enumerate_class,
    eq_mod_b,
    flatten,
    format_term,
    sharp,
    term_order,
    to_universal,
    unflatten,
    universal_term,
)

import brute


def test_parse_nat_module(nat):
    assert set(nat.ops) == {"0", "suc", "+"}
    plus = nat.op("+")
    assert plus.kind == ACOMM
    assert plus.mixfix == "_+_"
    assert nat.op("suc").kind == FREE


def test_parse_ops_and_subsorts(natlist):
    assert natlist.poset.leq("Nat", "NatList")
    assert not natlist.poset.leq("NatList", "Nat")
    assert natlist.kind_of("||") == COMM
    t = parse_term(";(1,;(nil,2))", natlist)
    assert format_term(t) == ";(1,;(nil,2))"


def test_universal_signature_adds_sharp(nat):
    u = to_universal(nat)
    assert u.is_universal
    assert "#" in u.ops and u.op("#").arity == 0
    assert all(d.result_sort == "U" for d in u.ops.values())
    assert u.op("+").kind == ACOMM


def test_variables_and_sharp(natnum):
    t = parse_term("+(1,X:Nat)", natnum)
    assert format_term(universal_term(t)) == "+(1,X:U)"
    assert format_term(sharp(t)) == "+(1,#)"


def test_flatten_canonical_order(natnum):
    a = flatten(parse_term("+(+(4,2),+(3,1))", natnum), natnum)
    assert str(a) == "+[1,2,3,4]"
    b = flatten(parse_term("+(1,+(2,3))", natnum), natnum)
    assert str(b) == "+[1,2,3]"
    assert term_order(b, a) == -1


def test_flatten_roundtrip(natnum):
    t = parse_term("+(Y:Nat,+(1,3))", natnum)
    ft = flatten(t, natnum)
    assert str(ft) == "+[1,3,Y:Nat]"
    assert eq_mod_b(unflatten(ft), t, natnum)
    assert format_term(unflatten(ft)) == "+(1,+(3,Y:Nat))"


def test_comm_only_sorted_not_spliced(natlist):
    t = parse_term("||(||(2,1),0)", natlist)
    assert str(flatten(t, natlist)) == "||[0,||[1,2]]"


def test_assoc_only_keeps_order(natlist):
    t1 = parse_term(";(;(1,2),nil)", natlist)
    t2 = parse_term(";(1,;(2,nil))", natlist)
    t3 = parse_term(";(2,;(1,nil))", natlist)
    assert eq_mod_b(t1, t2, natlist)
    assert not eq_mod_b(t1, t3, natlist)


def test_class_of_two_addends(natnum):
    members = enumerate_class(parse_term("+(1,2)", natnum), natnum)
    assert sorted(map(format_term, members)) == ["+(1,2)", "+(2,1)"]


def test_class_of_three_distinct_addends(natnum):
    # binary trees x leaf orders: 2 shapes x 6 orders
    members = enumerate_class(parse_term("+(2,+(3,1))", natnum), natnum)
    assert len(members) == 12


def test_class_matches_axiom_closure(natlist):
    t = parse_term("+(suc(+(1,2)),||(0,*(1,2)))", natlist)
    expected = brute.axiom_closure(brute.to_tuple(t), {"+", "*", "||"}, {"+", "*", ";"})
    got = {brute.to_tuple(m) for m in enumerate_class(t, natlist)}
    assert got == expected


def test_class_cap(natnum):
    big = parse_term("+(0,+(1,+(2,+(3,+(4,+(5,+(6,7)))))))", natnum)
    with pytest.raises(ClassTooLarge):
        enumerate_class(big, natnum, cap=1000)


def test_term_sizes_and_depths():
    t = App("f", (App("a"), App("g", (Var("X", "S"),))))
    assert t.size == 4
    assert t.depth == 3


@pytest.mark.parametrize(
    "text, message",
    [
        ("fmod M is sort S . op a : -> T . endfm", "unknown sort"),
        ("fmod M is sort S . op a : -> S . op a : -> S . endfm", "duplicate operator"),
        ("fmod M is sort S . op f : S -> S [comm] . endfm", "non-binary"),
        ("fmod M is sorts S T . op f : S T -> S [assoc] . endfm", "equal argument sorts"),
        ("fmod M is sort S . op # : -> S . endfm", "reserved"),
        ("fmod M is sort S . op a : -> S endfm", "missing '.'"),
        ("fmod M is sort S . op f : S S -> S [idem] . endfm", "unsupported attribute"),
        ("fmod M is sort S . sort S . endfm", "declared twice"),
        ("fmod M is sort S .", "endfm"),
    ],
)
def test_signature_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_signature(text)


@pytest.mark.parametrize(
    "text, message",
    [
        ("foo", "unknown operator"),
        ("suc(0,0)", "expects 1 arguments"),
        ("+(1", "unbalanced"),
        ("+(1,2))", "trailing"),
        ("X:Foo", "unknown sort"),
        ("", "empty"),
    ],
)
def test_term_errors(natnum, text, message):
    with pytest.raises(ParseError, match=message):
        parse_term(text, natnum)


def test_sort_errors(natlist):
    with pytest.raises(ParseError, match="sort"):
        parse_term("suc(nil)", natlist)
    # Nat < NatList, so a Nat argument is fine where NatList is expected
    parse_term(";(0,nil)", natlist)


def test_missing_top_sort_is_synthesized():
    sig = parse_signature("fmod M is sorts A B C . subsort A < B . subsort A < C . op a : -> A . endfm")
    tops = {sig.poset.top(s) for s in ("A", "B", "C")}
    assert tops == {"Top-A"}


def test_deep_terms_are_handled_iteratively(arith):
    t = App("0", ())
    for _ in range(20000):
        t = App("s", (t,))
    ft = flatten(t, arith)
    assert ft.depth == 20001
    assert eq_mod_b(unflatten(ft), t, arith)
