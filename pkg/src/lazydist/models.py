"""Example models, written once against a backend interface.

Every model is a function of a :class:`Backend`.  The lazy backend builds
a graph for the enumerator, with either the non-strict or the strict
bind; the list backend builds materialized pair lists.  Predicates carry
two independent implementations: a lazy one over graph references and a
plain Python one over list-backend events.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import baseline as lb
from . import pflp
from .core import Ref, Term, ctor, current_session, fail, match, suspend
from .prelude import (
    NIL,
    TRUE,
    boolean,
    cons,
    declare_data,
    from_value,
    is_true,
    l_all,
    l_and,
    l_append,
    l_eq,
    l_filter,
    l_if,
    l_length,
    l_or,
    l_reverse,
    pair,
)

SIDE_TAGS = ("One", "Two", "Three", "Four", "Five", "Six")
declare_data("Side", SIDE_TAGS)
SIDES = tuple(Term(t, ()) for t in SIDE_TAGS)
ONE, TWO, THREE, FOUR, FIVE, SIX = SIDES


# -- backends -------------------------------------------------------------------


class Backend:
    name = "?"

    def stats(self) -> tuple[int, int]:
        """(choice_expansions, suspensions_forced) of the last query."""
        raise NotImplementedError


class LazyBackend(Backend):
    """Distributions as graph values; ``strict`` selects the eager bind."""

    def __init__(self, strict: bool = False):
        self.strict = strict
        self.name = "strict" if strict else "lazy"
        self._bind = pflp.strict_bind if strict else pflp.bind

    # distributions
    def certainly(self, x):
        return pflp.certainly(x)

    def uniform(self, xs):
        return pflp.uniform(xs)

    def enum(self, xs, ps):
        return pflp.enum(xs, ps)

    def bind(self, d, f):
        return self._bind(d, f)

    def join_with(self, f, d1, d2):
        return pflp.join_with(f, d1, d2, self._bind)

    def replicate(self, n, rt):
        return pflp.replicate_dist(n, rt, self._bind)

    def failed(self):
        return fail()

    def query(self, pred: "Predicate", d) -> float:
        return pflp.query(pred.lazy, d)

    def stats(self):
        s = current_session().last_stats
        return s.choice_expansions, s.suspensions_forced

    # values
    def lit(self, v):
        return from_value(v)

    nil = NIL

    def cons(self, x, xs):
        return cons(x, xs)

    def list1(self, x):
        return cons(x, NIL)

    def append(self, xs, ys):
        return l_append(xs, ys)

    def pair(self, a, b):
        return pair(a, b)

    def triple(self, a, b, c):
        return ctor("Triple", a, b, c)

    def eq(self, a, b):
        return l_eq(a, b)

    def and_(self, a, b):
        return l_and(a, b)

    def branch(self, b, then, else_):
        return l_if(b, then, else_)

    def unpair(self, p, k):
        """Strict pair pattern ``\\(a, b) -> k a b``."""
        return suspend(lambda: match(p, lambda n: k(*n.fields)))


class ListBackend(Backend):
    """Strict pair lists; events are plain Python values."""

    name = "list"

    def __init__(self):
        self.last_pairs = 0

    def certainly(self, x):
        return lb.l_certainly(x)

    def uniform(self, xs):
        return lb.l_uniform(self.lit(x) for x in xs)

    def enum(self, xs, ps):
        return lb.l_enum([self.lit(x) for x in xs], ps)

    def bind(self, d, f):
        return lb.l_bind(d, f)

    def join_with(self, f, d1, d2):
        return lb.l_join_with(f, d1, d2)

    def replicate(self, n, rt):
        return lb.l_replicate(n, rt)

    def failed(self):
        return lb.l_fail()

    def query(self, pred: "Predicate", d) -> float:
        p, self.last_pairs = lb.l_query_stats(pred.plain, d)
        return p

    def stats(self):
        return self.last_pairs, 0

    def lit(self, v):
        if isinstance(v, Term) and not v.args:
            return v.tag
        return v

    nil = lb.L_NIL

    def cons(self, x, xs):
        return (x, xs)

    def list1(self, x):
        return (x, lb.L_NIL)

    def append(self, xs, ys):
        return lb.l_append(xs, ys)

    def pair(self, a, b):
        return (a, b)

    def triple(self, a, b, c):
        return (a, b, c)

    def eq(self, a, b):
        return a == b

    def and_(self, a, b):
        return a and b

    def branch(self, b, then, else_):
        return then() if b else else_()

    def unpair(self, p, k):
        return k(*p)


BACKENDS: dict[str, Callable[[], Backend]] = {
    "lazy": LazyBackend,
    "strict": lambda: LazyBackend(strict=True),
    "list": ListBackend,
}


def get_backend(name: str) -> Backend:
    try:
        return BACKENDS[name]()
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from {', '.join(BACKENDS)}") from None


# -- predicates -----------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    """A query predicate for both backends.

    ``lazy`` maps an event reference to a lazy Boolean; ``plain`` maps a
    list-backend event to a Python bool.
    """

    name: str
    lazy: Callable[[Ref], Ref]
    plain: Callable[[object], bool]

    def __and__(self, other: "Predicate") -> "Predicate":
        return Predicate(
            f"{self.name} & {other.name}",
            lambda x: l_and(self.lazy(x), other.lazy(x)),
            lambda e: self.plain(e) and other.plain(e),
        )


def _cells_all(ok):
    def check(xs):
        while xs:
            x, xs = xs
            if not ok(x):
                return False
        return True

    return check


def _field(i):
    return lambda x: suspend(lambda: match(x, lambda n: n.fields[i]))


const_true = Predicate("const True", pflp.const_true, lambda e: True)
is_true_p = Predicate("id", lambda x: x, bool)

_SIX, _FIVE = from_value(SIX), from_value(FIVE)

all_six_p = Predicate(
    "all (== Six)",
    lambda xs: l_all(lambda x: l_eq(x, _SIX), xs),
    _cells_all(lambda x: x == "Six"),
)

all_five_or_six_p = Predicate(
    "all (\\s -> s == Five || s == Six)",
    lambda xs: l_all(lambda x: l_or(l_eq(x, _FIVE), l_eq(x, _SIX)), xs),
    _cells_all(lambda x: x == "Five" or x == "Six"),
)


def _palindrome_plain(xs):
    t = lb.unlist(xs)
    return t == t[::-1]


palindrome_p = Predicate("palindrome", lambda s: l_eq(s, l_reverse(s)), _palindrome_plain)

_B = from_value("b")


def _consecutive_bs(s: Ref) -> Ref:
    """``case s of [] -> False; ('b':'b':_) -> True; (_:rest) -> consecutiveBs rest``."""

    def body():
        def k(n):
            if n.tag == "Nil":
                return boolean(False)
            c, rest = n.fields

            def second(m):
                if m.tag == "Nil":
                    return _consecutive_bs(rest)
                return l_if(l_eq(m.fields[0], _B), lambda: TRUE, lambda: _consecutive_bs(rest))

            return l_if(l_eq(c, _B), lambda: match(rest, second), lambda: _consecutive_bs(rest))

        return match(s, k)

    return suspend(body)


def _consecutive_bs_plain(xs):
    prev = None
    while xs:
        x, xs = xs
        if x == "b" and prev == "b":
            return True
        prev = x
    return False


consecutive_bs_p = Predicate("consecutiveBs", _consecutive_bs, _consecutive_bs_plain)


def _at_least_two(xs: Ref) -> Ref:
    n = l_length(l_filter(lambda x: x, xs))
    return suspend(lambda: match(n, lambda v: boolean(v.value >= 2)))


def _count_true(xs):
    k = 0
    while xs:
        x, xs = xs
        k += bool(x)
    return k


at_least_two_heads_p = Predicate(
    "\\coins -> length (filter id coins) >= 2",
    _at_least_two,
    lambda xs: _count_true(xs) >= 2,
)

first_true_p = Predicate("fst", _field(0), lambda e: bool(e[0]))

raining_p = Predicate("raining", _field(0), lambda w: w[0])
sprinkler_on_p = Predicate("sprinkler on", _field(1), lambda w: w[1])
grass_wet_p = Predicate("grass wet", _field(2), lambda w: w[2])


# -- distributions ------------------------------------------------------------------


def coin(b: Backend):
    return b.uniform([True, False])


def die(b: Backend):
    return b.uniform(SIDES)


def pick_char(b: Backend):
    return b.uniform(["a", "b"])


def flip_coin(b: Backend, n: int):
    """``joinWith (:) coin (flipCoin (n-1))`` with a fresh coin per position."""
    if n < 0:
        raise ValueError(f"flip_coin: negative count {n}")
    if n == 0:
        return b.certainly(b.nil)
    return b.join_with(b.cons, coin(b), _delay(b, lambda: flip_coin(b, n - 1)))


def _delay(b: Backend, thunk):
    # The lazy backend receives an unevaluated operand; the list backend
    # needs the value itself.
    return suspend(thunk) if isinstance(b, LazyBackend) else thunk()


def random_string(b: Backend, n: int):
    return b.replicate(n, lambda: pick_char(b))


def dice(b: Backend, n: int):
    return b.replicate(n, lambda: die(b))


def all_six(b: Backend, n: int) -> float:
    if n < 1:
        raise ValueError("all_six needs at least one die")
    return b.query(all_six_p, dice(b, n))


def all_five_or_six(b: Backend, n: int) -> float:
    if n < 1:
        raise ValueError("all_five_or_six needs at least one die")
    return b.query(all_five_or_six_p, dice(b, n))


def palindrome_q(b: Backend, n: int) -> float:
    return b.query(palindrome_p, random_string(b, n))


def consecutive_bs_q(b: Backend, n: int) -> float:
    return b.query(consecutive_bs_p, random_string(b, n))


def flip_coin_heads(b: Backend, n: int) -> float:
    return b.query(at_least_two_heads_p, flip_coin(b, n))


def palindrome_efficient(b: Backend, n: int):
    """Distribution over ``(is palindrome, string)``, picking both ends first."""
    if n < 0:
        raise ValueError(f"palindrome_efficient: negative length {n}")
    return _palindrome_from(b, 1, n)


def _palindrome_from(b: Backend, n1: int, n2: int):
    if n1 == n2:
        return b.bind(pick_char(b), lambda c: b.certainly(b.pair(b.lit(True), b.list1(c))))
    if n1 > n2:
        return b.certainly(b.pair(b.lit(True), b.nil))
    return b.bind(
        pick_char(b),
        lambda c1: b.bind(
            pick_char(b),
            lambda c2: b.bind(
                _palindrome_from(b, n1 + 1, n2 - 1),
                lambda p: b.unpair(
                    p,
                    lambda ok, cs: b.certainly(
                        b.pair(b.and_(b.eq(c1, c2), ok), b.cons(c1, b.append(cs, b.list1(c2))))
                    ),
                ),
            ),
        ),
    )


def palindrome_efficient_q(b: Backend, n: int) -> float:
    return b.query(first_true_p, palindrome_efficient(b, n))


def bernoulli(b: Backend, p: float):
    """True with probability ``p``; degenerate cases are ``certainly``."""
    if p >= 1.0:
        return b.certainly(b.lit(True))
    if p <= 0.0:
        return b.certainly(b.lit(False))
    return b.enum([True, False], [p, 1.0 - p])


P_RAIN = 0.2
P_SPRINKLER = {False: 0.4, True: 0.01}  # by raining
P_WET = {(False, False): 0.0, (False, True): 0.8, (True, False): 0.9, (True, True): 0.99}  # by (sprinkler, raining)


def sprinkler(b: Backend):
    """Joint distribution of (raining, sprinkler on, grass wet)."""

    def wet(spr, rain):
        return b.branch(
            spr,
            lambda: b.branch(rain, lambda: bernoulli(b, P_WET[True, True]), lambda: bernoulli(b, P_WET[True, False])),
            lambda: b.branch(rain, lambda: bernoulli(b, P_WET[False, True]), lambda: bernoulli(b, P_WET[False, False])),
        )

    return b.bind(
        bernoulli(b, P_RAIN),
        lambda rain: b.bind(
            b.branch(rain, lambda: bernoulli(b, P_SPRINKLER[True]), lambda: bernoulli(b, P_SPRINKLER[False])),
            lambda spr: b.bind(wet(spr, rain), lambda w: b.certainly(b.triple(rain, spr, w))),
        ),
    )


class ZeroEvidence(ValueError):
    pass


def conditional(b: Backend, event: Predicate, evidence: Predicate, model: Callable[[Backend], object]) -> float:
    """``P(event | evidence)`` as a quotient of two queries."""
    pe = b.query(evidence, model(b))
    if pe == 0.0:
        raise ZeroEvidence(f"evidence {evidence.name!r} has probability zero")
    return b.query(event & evidence, model(b)) / pe


def sprinkler_queries(b: Backend) -> dict[str, float]:
    return {
        "P(raining)": b.query(raining_p, sprinkler(b)),
        "P(grass wet)": b.query(grass_wet_p, sprinkler(b)),
        "P(grass wet | raining)": conditional(b, grass_wet_p, raining_p, sprinkler),
        "P(sprinkler on | grass wet)": conditional(b, sprinkler_on_p, grass_wet_p, sprinkler),
    }


def partial_pattern(b: Backend):
    """``coin >>>= \\b -> if b then certainly True else failed``; deliberately invalid."""
    return b.bind(coin(b), lambda x: b.branch(x, lambda: b.certainly(b.lit(True)), b.failed))


# -- registry -------------------------------------------------------------------------


@dataclass(frozen=True)
class Model:
    name: str
    run: Callable[[Backend, int], float]
    min_n: int = 0
    uses_n: bool = True
    description: str = ""

    def check_n(self, n: int):
        if self.uses_n and n < self.min_n:
            raise ValueError(f"model {self.name!r} needs n >= {self.min_n}, got {n}")


MODELS: dict[str, Model] = {
    m.name: m
    for m in [
        Model("allsix", all_six, 1, description="all n dice show Six"),
        Model("allfiveorsix", all_five_or_six, 1, description="all n dice show Five or Six"),
        Model("palindrome", palindrome_q, 0, description="random a/b string of length n is a palindrome"),
        Model("palindrome-efficient", palindrome_efficient_q, 0, description="palindrome, checking both ends first"),
        Model("consecutivebs", consecutive_bs_q, 0, description="random a/b string of length n contains bb"),
        Model("flipcoin-heads", flip_coin_heads, 0, description="at least two heads among n coins"),
        Model(
            "sprinkler",
            lambda b, n: b.query(grass_wet_p, sprinkler(b)),
            uses_n=False,
            description="P(grass wet) in the sprinkler network",
        ),
        Model(
            "partialpattern",
            lambda b, n: b.query(const_true, partial_pattern(b)),
            uses_n=False,
            description="total mass of the partial-pattern distribution",
        ),
    ]
}
