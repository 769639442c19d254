import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lazydist import baseline as lb
from lazydist.core import EvaluationTimeout, Session
from lazydist.pflp import InvalidDistribution

SIDES = ["One", "Two", "Three", "Four", "Five", "Six"]


def die():
    return lb.l_uniform(SIDES)


def coin():
    return lb.l_uniform([True, False])


def test_uniform_coin():
    assert coin().pairs() == [(True, 0.5), (False, 0.5)]


def test_certainly():
    assert lb.l_certainly("a").pairs() == [("a", 1.0)]


def test_enum_validation():
    with pytest.raises(InvalidDistribution):
        lb.l_enum(["a", "b"], [0.3, 0.3])
    with pytest.raises(InvalidDistribution):
        lb.l_uniform([])


def test_bind_pairs_of_coins():
    d = lb.l_bind(coin(), lambda x: lb.l_bind(coin(), lambda y: lb.l_certainly((x, y))))
    assert [p for _, p in d] == [0.25] * 4


def test_bind_certainly_left_identity():
    f = lambda x: lb.l_enum([x, x + 1], [0.25, 0.75])
    assert lb.l_bind(lb.l_certainly(3), f).pairs() == f(3).pairs()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_bind_length_is_sum_of_branch_sizes(sizes):
    d = lb.l_uniform(range(len(sizes)))
    out = lb.l_bind(d, lambda i: lb.l_uniform(range(sizes[i])))
    assert len(out.pairs()) == sum(sizes)


def test_join_with_matches_nested_bind():
    nested = lb.l_bind(die(), lambda x: lb.l_bind(coin(), lambda y: lb.l_certainly((x, y))))
    joined = lb.l_join_with(lambda x, y: (x, y), die(), coin())
    assert joined.pairs() == nested.pairs()


def test_replicate_sizes():
    two = lb.l_replicate(2, die)
    assert two.size() == 36
    assert all(p == 1 / 36 for _, p in two)
    assert lb.l_replicate(0, die).pairs() == [((), 1.0)]
    with pytest.raises(ValueError):
        lb.l_replicate(-1, die)


def test_replicate_events_are_shared_cons_cells():
    d = lb.l_replicate(3, die).pairs()
    assert lb.unlist(d[0][0]) == ("One", "One", "One")
    assert lb.unlist(d[-1][0]) == ("Six", "Six", "Six")


def test_query_all_six_three_dice():
    p = lb.l_query(lambda xs: all(x == "Six" for x in lb.cells(xs)), lb.l_replicate(3, die))
    assert math.isclose(p, (1 / 6) ** 3, rel_tol=1e-12)


def test_query_counts_pairs():
    _, n = lb.l_query_stats(lambda e: True, lb.l_replicate(4, die))
    assert n == 6**4


def test_query_heads():
    p = lb.l_query(lambda xs: sum(lb.cells(xs)) >= 2, lb.l_replicate(4, coin))
    assert p == 0.6875


def test_palindromes_of_length_five():
    s = lb.l_replicate(5, lambda: lb.l_uniform("ab"))
    assert lb.l_query(lambda xs: lb.unlist(xs) == lb.unlist(xs)[::-1], s) == 0.25


def test_valid_sums_to_one():
    assert math.isclose(lb.l_query(lambda e: True, lb.l_replicate(5, die)), 1.0, abs_tol=1e-9)


def test_list_helpers():
    xs = lb.l_list([1, 2])
    assert lb.unlist(lb.l_append(xs, lb.l_list([3]))) == (1, 2, 3)
    assert lb.unlist(lb.l_append(lb.L_NIL, xs)) == (1, 2)


def test_stream_is_reiterable():
    d = lb.l_join_with(lambda x, y: (x, y), coin(), coin())
    assert list(d) == list(d)
    assert not d.materialized
    assert d.size() == 4 and d.materialized


def test_deadline_interrupts_large_products():
    with Session(timeout=0.2):
        with pytest.raises(EvaluationTimeout):
            lb.l_query(lambda e: False, lb.l_replicate(12, die))


def test_pair_limit(monkeypatch):
    monkeypatch.setattr(lb, "MAX_STORED_PAIRS", 1000)
    with pytest.raises(lb.PairLimitExceeded):
        lb.l_replicate(8, die).size()
