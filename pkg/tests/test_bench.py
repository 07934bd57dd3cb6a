from __future__ import annotations

import random

import pytest

from acembed.bench import (
    CSV_COLUMNS,
    GenError,
    GenSpec,
    TermGenerator,
    false_goals,
    flat_size,
    gen_sized_term,
    gen_term,
    rows_to_csv,
    run_bench,
)
from acembed.engines import check
from acembed.results import Budget, Outcome
from acembed.terms import flat_depth_of


def test_constants_only_depth_one(natnum):
    t = gen_term(GenSpec(seed=42, t1_depth=1, symbol_mix={}), natnum)
    assert t.depth == 1 and not t.args


def test_same_seed_same_term(natlist):
    spec = GenSpec(seed=7, t1_depth=4)
    assert gen_term(spec, natlist) == gen_term(spec, natlist)


@pytest.mark.parametrize("seed", range(5))
def test_exact_depth_and_flat_size(natnum, seed):
    t = gen_term(GenSpec(seed=seed, t1_depth=5, symbol_mix={"free": 1, "AC": 1}), natnum)
    assert t.depth == 5
    assert flat_size(t, natnum) <= t.size
    assert flat_depth_of(t, natnum) <= t.depth


def test_well_sorted(natlist):
    from acembed.parse import parse_term
    from acembed.terms import format_term

    gen = TermGenerator(natlist, var_rate=0.2)
    rng = random.Random(3)
    for depth in range(1, 6):
        t = gen.term(rng, depth)
        # reparsing checks every argument sort
        assert parse_term(format_term(t), natlist) == t


def test_unsatisfiable_specs(natnum):
    with pytest.raises(GenError):
        gen_term(GenSpec(seed=1, t1_depth=3, symbol_mix={}), natnum)
    with pytest.raises(GenError):
        gen_term(GenSpec(seed=1, t1_depth=3, symbol_mix={"C": 1}), natnum)
    with pytest.raises(GenError):
        GenSpec(t1_depth=0)


def test_sized_terms(arith):
    rng = random.Random(0)
    for n in (1, 2, 3, 10, 500):
        assert gen_sized_term(arith, n, rng).size == n


def test_false_goals_are_false(natnum):
    goals = false_goals(natnum, GenSpec(seed=3, t1_depth=3), 5, 4)
    assert len(goals) == 5
    for g in goals:
        assert check(g, "oracle").outcome is Outcome.FALSE


def test_bench_rows_and_csv(natnum):
    spec = GenSpec(seed=1, t1_depth=3, t2_depths=(3, 4))
    rows = run_bench(natnum, ["ml", "sml"], spec, Budget(max_millis=60_000), goals_per_depth=3, reps=2)
    assert len(rows) == 2 * 2 * 3
    assert {r.outcome for r in rows} == {Outcome.FALSE}
    for r in rows:
        assert r.t1_ft <= r.t1_ot and r.t2_ft <= r.t2_ot
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 13


def test_bench_reproducible_except_time(natnum):
    spec = GenSpec(seed=9, t1_depth=3, t2_depths=(4,))

    def strip_time(text):
        return [line.split(",")[:7] + line.split(",")[8:] for line in text.splitlines()]

    runs = [rows_to_csv(run_bench(natnum, ["sml", "rogd"], spec, None, 3, 1)) for _ in range(2)]
    assert strip_time(runs[0]) == strip_time(runs[1])


def test_empty_engine_list(natnum):
    assert run_bench(natnum, [], GenSpec(), None) == []
