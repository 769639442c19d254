import math

import pytest

from lazydist import baseline as lb
from lazydist.core import Session, all_values
from lazydist.models import (
    MODELS,
    ListBackend,
    LazyBackend,
    ZeroEvidence,
    all_five_or_six,
    all_six,
    coin,
    conditional,
    consecutive_bs_q,
    const_true,
    die,
    flip_coin,
    grass_wet_p,
    is_true_p,
    palindrome_efficient,
    palindrome_efficient_q,
    palindrome_q,
    partial_pattern,
    pick_char,
    random_string,
    raining_p,
    sprinkler,
    sprinkler_queries,
    Predicate,
)
from lazydist.models import SIX
from lazydist.pflp import validate_dist
from lazydist.prelude import from_value, l_eq

BACKENDS = [LazyBackend, lambda: LazyBackend(strict=True), ListBackend]
IDS = ["lazy", "strict", "list"]


@pytest.fixture(params=BACKENDS, ids=IDS)
def backend(request):
    with Session():
        yield request.param()


def test_coin_die_char(backend):
    assert backend.query(is_true_p, coin(backend)) == 0.5
    six = Predicate("six", lambda x: l_eq(x, from_value(SIX)), lambda e: e == "Six")
    assert math.isclose(backend.query(six, die(backend)), 1 / 6, rel_tol=1e-12)
    a = Predicate("a", lambda x: l_eq(x, from_value("a")), lambda e: e == "a")
    assert backend.query(a, pick_char(backend)) == 0.5


def test_flip_coin_branches():
    with Session():
        got = [(b.args[0], b.args[1]) for b in all_values(flip_coin(LazyBackend(), 2))]
    assert got == [
        ((True, True), 0.25),
        ((True, False), 0.25),
        ((False, True), 0.25),
        ((False, False), 0.25),
    ]


def test_flip_coin_list_branches():
    got = [(lb.unlist(e), p) for e, p in flip_coin(ListBackend(), 2)]
    assert got == [
        ((True, True), 0.25),
        ((True, False), 0.25),
        ((False, True), 0.25),
        ((False, False), 0.25),
    ]


def test_random_string_normalized(backend):
    assert math.isclose(backend.query(const_true, random_string(backend, 6)), 1.0, abs_tol=1e-9)


def test_dice_examples(backend):
    assert math.isclose(all_six(backend, 2), 1 / 36, rel_tol=1e-12)
    assert math.isclose(all_five_or_six(backend, 3), 1 / 27, rel_tol=1e-12)
    with pytest.raises(ValueError):
        all_six(backend, 0)


def test_all_six_hundred_dice():
    with Session():
        p = all_six(LazyBackend(), 100)
    assert p > 0.0
    assert math.isclose(math.log(p), -100 * math.log(6), rel_tol=1e-12)


def test_string_examples(backend):
    assert palindrome_q(backend, 5) == 0.25
    assert palindrome_q(backend, 0) == 1.0
    assert consecutive_bs_q(backend, 10) == 0.859375


def test_palindrome_efficient(backend):
    assert palindrome_efficient_q(backend, 5) == 0.25
    assert palindrome_efficient_q(backend, 1) == 1.0
    assert palindrome_efficient_q(backend, 2) == 0.5


def test_palindrome_efficient_strings_are_complete():
    with Session():
        branches = all_values(palindrome_efficient(LazyBackend(), 3))
    strings = sorted(b.args[0][1] for b in branches)
    assert len(strings) == 8
    assert strings == sorted(tuple(s) for s in ["aaa", "aab", "aba", "abb", "baa", "bab", "bba", "bbb"])
    for b in branches:
        flag, s = b.args[0]
        assert flag == (s == s[::-1])


def test_consecutive_bs_on_fixed_strings():
    from lazydist.models import _consecutive_bs
    from lazydist.prelude import string

    for s in ["", "b", "ab", "bb", "abab", "abba", "babab", "aabb"]:
        with Session():
            (v,) = all_values(_consecutive_bs(string(s)))
        assert v is ("bb" in s), s


def test_sprinkler(backend):
    qs = sprinkler_queries(backend)
    assert math.isclose(qs["P(raining)"], 0.2, abs_tol=1e-12)
    assert math.isclose(qs["P(grass wet)"], 0.44838, abs_tol=1e-12)
    # 0.2 * (0.01 * 0.99 + 0.99 * 0.8) / 0.2
    assert math.isclose(qs["P(grass wet | raining)"], 0.8019, abs_tol=1e-12)
    assert math.isclose(qs["P(sprinkler on | grass wet)"], 0.28998 / 0.44838, abs_tol=1e-12)


def test_sprinkler_against_exhaustive_table():
    from itertools import product

    from lazydist.models import P_RAIN, P_SPRINKLER, P_WET

    joint = {}
    for rain, spr, wet in product([True, False], repeat=3):
        pr = P_RAIN if rain else 1 - P_RAIN
        ps = P_SPRINKLER[rain] if spr else 1 - P_SPRINKLER[rain]
        pw = P_WET[spr, rain] if wet else 1 - P_WET[spr, rain]
        joint[rain, spr, wet] = pr * ps * pw
    assert math.isclose(sum(joint.values()), 1.0)
    wet = sum(p for (r, s, w), p in joint.items() if w)
    with Session():
        assert math.isclose(LazyBackend().query(grass_wet_p, sprinkler(LazyBackend())), wet, abs_tol=1e-12)


def test_conditioning_on_impossible_evidence(backend):
    never = Predicate("never", lambda x: from_value(False), lambda e: False)
    with pytest.raises(ZeroEvidence):
        conditional(backend, raining_p, never, sprinkler)


def test_partial_pattern(backend):
    assert backend.query(const_true, partial_pattern(backend)) == 0.5
    assert backend.query(is_true_p, partial_pattern(backend)) == 0.5


def test_partial_pattern_is_flagged():
    with Session():
        report = validate_dist(partial_pattern(LazyBackend()))
    assert report.flagged and report.total == 0.5


def test_registry_covers_cli_names():
    assert set(MODELS) == {
        "allsix",
        "allfiveorsix",
        "palindrome",
        "palindrome-efficient",
        "consecutivebs",
        "flipcoin-heads",
        "sprinkler",
        "partialpattern",
    }
    with pytest.raises(ValueError):
        MODELS["allsix"].check_n(0)
    MODELS["sprinkler"].check_n(-5)  # ignores n


@pytest.mark.parametrize("name", sorted(MODELS))
def test_backends_agree_on_small_sizes(name):
    model = MODELS[name]
    n = max(model.min_n, 3)
    results = []
    for make in BACKENDS:
        with Session():
            results.append(model.run(make(), n))
    assert max(results) - min(results) <= 1e-12


def test_lazy_prunes_where_strict_cannot():
    with Session() as s:
        all_six(LazyBackend(), 5)
        lazy = s.last_stats.choice_expansions
        all_six(LazyBackend(strict=True), 5)
        strict = s.last_stats.choice_expansions
    assert lazy == 30
    assert strict >= 6**4
