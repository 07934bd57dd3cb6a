from __future__ import annotations

import pytest

from acembed.meta import (
    EQUATIONS,
    SML,
    _Evaluator,
    all_a_greedy,
    embeds_flat,
    embeds_ml,
    embeds_sml,
    to_meta,
)
from acembed.parse import parse_term
from acembed.results import Budget, Outcome
from acembed.terms import SHARP_FLAT, App, EmbedGoal


def meta(sig, text):
    return to_meta(parse_term(text, sig), sig)


def test_to_meta_examples(natnum):
    assert str(meta(natnum, "+(1,+(2,3))")) == "+[1,2,3]"
    assert str(meta(natnum, "+(+(4,2),+(3,1))")) == "+[1,2,3,4]"
    assert str(meta(natnum, "X:Nat")) == "#"
    assert str(meta(natnum, "+(X:Nat,suc(Y:Nat))")) == "+[#,suc[#]]"


def test_equation_inventory():
    assert len(EQUATIONS) == 21
    assert len({e.ident for e in EQUATIONS}) == 21


@pytest.mark.parametrize("fn", [embeds_ml, embeds_sml])
def test_worked_goal(natnum, fn):
    ok, counter = fn(meta(natnum, "+(1,+(2,3))"), meta(natnum, "+(+(4,2),+(3,1))"))
    assert ok
    assert counter.embed_calls > 0


def test_constants(natnum):
    ok, counter = embeds_ml(meta(natnum, "0"), meta(natnum, "0"))
    assert ok
    assert counter.by_equation() == {"E04": 1, "E08": 1, "E10": 1}


def test_sharp_base_case():
    ok, counter = embeds_sml(SHARP_FLAT, SHARP_FLAT)
    assert ok and counter.embed_calls == 1 and counter.helper_calls == 0


def test_derived_false_goal(natnum):
    # frozen from the brute-force oracle
    assert embeds_ml(meta(natnum, "+(4,4)"), meta(natnum, "+(1,+(2,3))"))[0] is False
    assert embeds_sml(meta(natnum, "+(4,4)"), meta(natnum, "+(1,+(2,3))"))[0] is False


def test_block_pairing(natnum):
    # +(1,2) only fits inside suc(+(1,2)) as a whole
    u, v = meta(natnum, "+(+(1,2),3)"), meta(natnum, "+(suc(+(1,2)),3)")
    assert embeds_ml(u, v)[0] and embeds_sml(u, v)[0]


def test_block_pairing_assoc(natlist):
    u, v = meta(natlist, ";(1,;(2,0))"), meta(natlist, ";(len(;(1,2)),0)")
    assert embeds_ml(u, v)[0] and embeds_sml(u, v)[0]
    # order matters for the block too
    u2 = meta(natlist, ";(2,;(1,0))")
    assert not embeds_sml(u2, v)[0]


def test_commutative_alignments(natlist):
    assert embeds_sml(meta(natlist, "||(2,1)"), meta(natlist, "||(suc(1),+(2,0))"))[0]
    assert not embeds_sml(meta(natlist, "||(2,2)"), meta(natlist, "||(suc(1),+(2,0))"))[0]


def test_short_circuit_never_does_more_work(natnum):
    u, v = meta(natnum, "+(1,suc(2))"), meta(natnum, "+(suc(+(1,2)),+(suc(suc(2)),0))")
    ok_ml, c_ml = embeds_ml(u, v)
    ok_sml, c_sml = embeds_sml(u, v)
    assert ok_ml == ok_sml
    assert c_sml.dominated_by(c_ml)
    assert c_sml.total < c_ml.total


def test_determinism(natnum):
    u, v = meta(natnum, "+(1,suc(+(2,3)))"), meta(natnum, "+(suc(+(1,2)),3)")
    first = embeds_ml(u, v)
    second = embeds_ml(u, v)
    assert first[0] == second[0]
    assert first[1] == second[1]


def test_embeds_flat_wrapper(natnum):
    g = EmbedGoal(parse_term("+(2,1)", natnum), parse_term("+(1,+(0,+(3,2)))", natnum), natnum)
    v = embeds_flat(g, SML)
    assert v.outcome is Outcome.TRUE
    assert v.stats.states_expanded == 0 and v.stats.recursive_calls > 0
    g2 = EmbedGoal(parse_term("suc(0)", natnum), parse_term("0", natnum), natnum)
    assert embeds_flat(g2, "ml").outcome is Outcome.FALSE
    with pytest.raises(ValueError):
        embeds_flat(g, "fast")


def test_flat_timeout(arith):
    chain = parse_term("0", arith)
    for _ in range(20000):
        chain = App("s", (chain,))
    g = EmbedGoal(parse_term("+(0,0)", arith), chain, arith)
    assert embeds_flat(g, "ml", Budget(max_millis=1)).outcome is Outcome.TIMEOUT
    assert embeds_flat(g, "ml").outcome is Outcome.FALSE


def test_greedy_all_a_agrees_on_examples(natlist):
    ev = _Evaluator(strict=False)
    us = meta(natlist, ";(1,;(2,0))").args
    for text in (";(1,;(0,;(2,0)))", ";(2,;(1,0))", ";(len(;(1,2)),0)", ";(0,;(1,;(1,2)))"):
        vs = meta(natlist, text).args
        assert ev.all_a(";", us, vs) == all_a_greedy(us, vs, ";", ev.embed)
