"""Probability distributions as non-deterministic values.

A distribution is a ``Dist event probability`` constructor; several
branches are joined with ``?``.  The constructor is kept private: users
build distributions with the combinators here and observe them only
through :func:`query` and :func:`validate_dist`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Ref, all_values, ctor, fail, fold_values, leaf, match, mk_choice, suspend
from .prelude import FALSE, NIL, TRUE, cons, from_list, from_value, is_true, l_foldr, l_repeat, l_zip_with

Probability = float
RTDist = Callable[[], Ref]

TOLERANCE = 1e-9


class InvalidDistribution(ValueError):
    pass


def _dist(event: Ref, prob: Ref) -> Ref:
    return ctor("Dist", event, prob)


def _event(d: Ref) -> Ref:
    return match(d, lambda n: n.fields[0])


def _prob(d: Ref) -> Ref:
    return match(d, lambda n: n.fields[1])


# Privileged projections, for tests and diagnostics only.  Models never
# take a distribution apart.
def event_of(d: Ref) -> Ref:
    return suspend(lambda: _event(d))


def prob_of(d: Ref) -> Ref:
    return suspend(lambda: _prob(d))


def _mul(a: Ref, b: Ref) -> Ref:
    return match(a, lambda na: match(b, lambda nb: leaf(na.value * nb.value)))


def certainly(x) -> Ref:
    return _dist(from_value(x), leaf(1.0))


def member(xs: Sequence[Ref]) -> Ref:
    """``foldr (?) failed xs``."""
    acc = fail()
    for x in reversed(list(xs)):
        acc = mk_choice(x, acc)
    return acc


def _check_probabilities(ps):
    for p in ps:
        if not (0.0 < p <= 1.0):
            raise InvalidDistribution(f"probability {p!r} outside (0, 1]")
    total = math.fsum(ps)
    if abs(total - 1.0) > TOLERANCE:
        raise InvalidDistribution(f"probabilities sum to {total!r}, not 1.0")


def enum(xs: Sequence, ps: Sequence[float]) -> Ref:
    """Distribution from parallel lists; only the zipped prefix is used and checked."""
    pairs = list(zip(xs, ps))
    _check_probabilities([p for _, p in pairs])
    return member([_dist(from_value(x), leaf(float(p))) for x, p in pairs])


def uniform(xs: Sequence) -> Ref:
    """``enum xs (repeat (1/len))``, built from the lazy prelude."""
    xs = list(xs)
    if not xs:
        raise InvalidDistribution("uniform over an empty list")
    p = leaf(1.0 / len(xs))
    dists = l_zip_with(_dist, from_list(xs), l_repeat(p))
    return l_foldr(mk_choice, fail(), dists)


def bind(d: Ref, f: Callable[[Ref], Ref]) -> Ref:
    """Non-strict bind: returns a ``Dist`` constructor without forcing anything.

    ``f x`` is one shared suspension feeding both fields, so the event
    and the probability always come from the same branch of ``f``'s result.
    """
    x = suspend(lambda: _event(d))
    fx = suspend(lambda: f(x))
    event = suspend(lambda: _event(fx))
    prob = suspend(lambda: _mul(_prob(d), _prob(fx)))
    return _dist(event, prob)


def strict_bind(d: Ref, f: Callable[[Ref], Ref]) -> Ref:
    """Bind that matches ``d`` and ``f x`` before yielding its constructor."""

    def body():
        def kd(nd):
            x, p = nd.fields
            return match(f(x), lambda nf: _dist(nf.fields[0], _mul(p, nf.fields[1])))

        return match(d, kd)

    return suspend(body)


def join_with(f: Callable[[Ref, Ref], Ref], d1: Ref, d2: Ref, bind_op=bind) -> Ref:
    return bind_op(d1, lambda x: bind_op(d2, lambda y: certainly(f(x, y))))


def pick(rt: RTDist) -> Ref:
    """Run a generator, producing a distribution with fresh choices."""
    return rt()


def replicate_dist(n: int, rt: RTDist, bind_op=bind) -> Ref:
    """``n`` independent draws from ``rt`` as a distribution over lists."""
    if n < 0:
        raise ValueError(f"replicate_dist: negative count {n}")
    if n == 0:
        return certainly(NIL)
    return join_with(
        cons,
        suspend(lambda: pick(rt)),
        suspend(lambda: replicate_dist(n - 1, rt, bind_op)),
        bind_op,
    )


def filter_dist(pred: Callable[[Ref], Ref], d: Ref) -> Ref:
    """Keep branches whose event satisfies ``pred``; others fail.

    ``d`` is deconstructed lazily and a kept branch reuses its fields.
    """
    x = suspend(lambda: _event(d))
    kept = _dist(x, suspend(lambda: _prob(d)))
    return suspend(lambda: match(pred(x), lambda b: kept if is_true(b) else fail()))


def query(pred: Callable[[Ref], Ref], d: Ref) -> Probability:
    """Total probability of the events satisfying ``pred`` (the ``??`` operator)."""
    return fold_values(lambda a, b: a + b, 0.0, _prob(filter_dist(pred, d)))


def const_true(_x: Ref) -> Ref:
    return TRUE


def const_false(_x: Ref) -> Ref:
    return FALSE


@dataclass(frozen=True)
class ValidationReport:
    total: float
    branches: int
    probabilities: tuple
    out_of_range: tuple

    @property
    def flagged(self) -> bool:
        return abs(self.total - 1.0) > TOLERANCE

    @property
    def valid(self) -> bool:
        return not self.flagged and not self.out_of_range


def validate_dist(d: Ref) -> ValidationReport:
    probs = tuple(all_values(_prob(d)))
    total = 0.0
    for p in probs:
        total += p
    bad = tuple(p for p in probs if not (0.0 < p <= 1.0))
    return ValidationReport(total, len(probs), probs, bad)
