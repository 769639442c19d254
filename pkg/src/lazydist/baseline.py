"""Strict list-of-pairs distributions, the brute-force oracle.

A distribution is a sequence of ``(event, probability)`` pairs with no
coalescing of duplicate events.  Lists inside events are cons cells
``(head, tail)`` ending in ``()`` so that tails are shared between pairs,
as they would be in a Haskell list of lists.

An :class:`LDist` streams its pairs.  A distribution that is consumed
more than once (the inner operand of :func:`l_join_with`) is materialized
into parallel event and probability arrays, which is the memory a
lazily evaluated, shared Haskell list would retain.
"""

from __future__ import annotations

import math
from array import array
from typing import Callable, Iterable, Iterator

from .core import EvaluationError, current_session, gc_paused
from .pflp import TOLERANCE, InvalidDistribution

_CHECK_EVERY = 1 << 16

# Upper bound on pairs kept in memory by one materialized distribution
# (about 70 bytes each).  Enough for the inner operand of a 10-fold die.
MAX_STORED_PAIRS = 16_000_000


class PairLimitExceeded(EvaluationError):
    """A distribution needed more stored pairs than ``MAX_STORED_PAIRS``."""

L_NIL = ()


def l_cons(x, xs):
    return (x, xs)


def l_list(items) -> tuple:
    acc = L_NIL
    for x in reversed(list(items)):
        acc = (x, acc)
    return acc


def cells(xs) -> Iterator:
    """Iterate a cons-cell list from the front."""
    while xs:
        x, xs = xs
        yield x


def unlist(xs) -> tuple:
    return tuple(cells(xs))


def l_append(xs, ys):
    acc = ys
    for x in reversed(unlist(xs)):
        acc = (x, acc)
    return acc


class LDist:
    """A finite sequence of ``(event, probability)`` pairs."""

    __slots__ = ("_source", "_events", "_probs")

    def __init__(self, source: Callable[[], Iterable] | None = None, pairs=None):
        self._source = source
        self._events = None
        self._probs = None
        if pairs is not None:
            self._store(pairs)

    def _store(self, pairs):
        events, probs = [], array("d")
        session = current_session()
        for i, (e, p) in enumerate(pairs):
            events.append(e)
            probs.append(p)
            if not i & (_CHECK_EVERY - 1):
                session.check_deadline()
                if i > MAX_STORED_PAIRS:
                    raise PairLimitExceeded(f"more than {MAX_STORED_PAIRS} pairs to store")
        self._events, self._probs = events, probs
        self._source = None

    @property
    def materialized(self) -> bool:
        return self._events is not None

    def materialize(self) -> "LDist":
        if self._events is None:
            self._store(self._source())
        return self

    def columns(self):
        """Parallel (events, probabilities) after materializing."""
        self.materialize()
        return self._events, self._probs

    def __iter__(self):
        if self._events is not None:
            return zip(self._events, self._probs)
        return iter(self._source())

    def size(self) -> int:
        """Number of pairs; materializes.  (No ``__len__``: ``list()`` would
        call it as a length hint and store every streamed pair.)"""
        return len(self.materialize()._events)

    def pairs(self) -> list:
        return list(self)

    def __repr__(self):
        if self._events is None:
            return "LDist(<stream>)"
        return f"LDist({len(self._events)} pairs)"


def _check(ps):
    for p in ps:
        if not (0.0 < p <= 1.0):
            raise InvalidDistribution(f"probability {p!r} outside (0, 1]")
    total = math.fsum(ps)
    if abs(total - 1.0) > TOLERANCE:
        raise InvalidDistribution(f"probabilities sum to {total!r}, not 1.0")


def l_certainly(x) -> LDist:
    return LDist(pairs=[(x, 1.0)])


def l_fail() -> LDist:
    """The empty distribution; the strict reading of a failed branch."""
    return LDist(pairs=[])


def l_enum(xs, ps) -> LDist:
    pairs = list(zip(xs, ps))
    _check([p for _, p in pairs])
    return LDist(pairs=[(x, float(p)) for x, p in pairs])


def l_uniform(xs) -> LDist:
    xs = list(xs)
    if not xs:
        raise InvalidDistribution("uniform over an empty list")
    p = 1.0 / len(xs)
    return LDist(pairs=[(x, p) for x in xs])


def l_bind(d: LDist, f: Callable[[object], LDist]) -> LDist:
    """``concatMap`` over the pairs of ``d``, multiplying probabilities."""

    def gen():
        for x, p in d:
            for y, q in f(x):
                yield y, p * q

    return LDist(gen)


def l_join_with(f, d1: LDist, d2: LDist) -> LDist:
    """Same pairs, in the same order, as ``l_bind(d1, x -> l_bind(d2, y -> l_certainly(f(x, y))))``.

    ``d2`` is traversed once per pair of ``d1`` and is therefore kept.
    """

    def gen():
        ys, qs = d2.columns()
        for x, p in d1:
            for y, q in zip(ys, qs):
                yield f(x, y), p * q

    return LDist(gen)


def l_replicate(n: int, rt: Callable[[], LDist]) -> LDist:
    """``n`` independent draws; ``|result| = |rt()| ** n``."""
    if n < 0:
        raise ValueError(f"l_replicate: negative count {n}")
    if n == 0:
        return l_certainly(L_NIL)
    return l_join_with(l_cons, rt(), l_replicate(n - 1, rt))


def l_query_stats(pred: Callable[[object], bool], d: LDist) -> tuple[float, int]:
    """Probability of ``pred`` and the number of pairs visited."""
    session = current_session()
    total = 0.0
    count = 0
    with gc_paused():
        for e, p in d:
            count += 1
            if not count & (_CHECK_EVERY - 1):
                session.check_deadline()
            if pred(e):
                total += p
    return total, count


def l_query(pred: Callable[[object], bool], d: LDist) -> float:
    return l_query_stats(pred, d)[0]
