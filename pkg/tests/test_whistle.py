from __future__ import annotations

import pytest

from acembed.engines import ENGINES
from acembed.parse import parse_term
from acembed.results import Budget
from acembed.whistle import Blow, Pass, WhistleState, WhistleTimeout, first_blow, whistle_add


def test_repeat_blows(natnum):
    st = WhistleState(natnum)
    t = parse_term("+(1,suc(2))", natnum)
    r1, st = whistle_add(st, t)
    assert isinstance(r1, Pass)
    r2, st2 = whistle_add(st, t)
    assert r2 == Blow(0)
    assert st2 is st


@pytest.mark.parametrize("engine", ENGINES)
def test_growing_product_blows(arith, engine):
    st = WhistleState(arith, engine)
    _, st = whistle_add(st, parse_term("*(s(X:Nat),s(Y:Nat))", arith))
    result, _ = whistle_add(st, parse_term("*(s(+(0,s(X:Nat))),s(+(X:Nat,Y:Nat)))", arith))
    assert result == Blow(0)


def test_smaller_term_passes(nat):
    st = WhistleState(nat)
    _, st = whistle_add(st, parse_term("suc(0)", nat))
    result, st = whistle_add(st, parse_term("0", nat))
    assert isinstance(result, Pass)
    assert len(st.history) == 2


def test_reports_oldest_match(natnum):
    terms = [parse_term(t, natnum) for t in ("1", "2", "+(2,1)")]
    assert first_blow(WhistleState(natnum), terms) == (2, Blow(0))


def test_timeout_is_distinct(natnum):
    big = parse_term("+(suc(+(1,+(2,+(3,5)))),+(suc(6),+(7,+(8,suc(suc(9))))))", natnum)
    st = WhistleState(natnum, "naive", Budget(max_states=2), (parse_term("+(1,+(2,+(3,4)))", natnum),))
    with pytest.raises(WhistleTimeout):
        whistle_add(st, big)


def test_unknown_engine(natnum):
    with pytest.raises(ValueError):
        WhistleState(natnum, "fastest")
