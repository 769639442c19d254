"""Lazy non-deterministic value graph and its demand-driven enumerator.

A program is a graph of :class:`Ref` cells.  Each cell holds one node:
a constructor, a binary choice, a failure, a primitive leaf, or an
unevaluated suspension.  Suspensions are forced at most once and the
cell is overwritten with the result, so every holder of a ``Ref`` sees
the same value (sharing).

Choices are never resolved while forcing.  Host functions that need to
inspect a value go through :func:`match`, which lifts a choice head into
both branches while keeping its identifier.  The enumerator is the only
place where a branch is picked.  It records each decision in a
fingerprint, so every occurrence of the same choice id inside one result
takes the same direction (call-time choice).
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import gc
import sys
import threading
import time
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Callable, Iterator, Mapping, NamedTuple


class EvaluationError(Exception):
    """Base class for engine errors."""


class CyclicDemandError(EvaluationError):
    """A suspension demanded its own value while being forced."""


class EvaluationTimeout(EvaluationError):
    """The session deadline passed during evaluation."""


class TypeConfusionError(EvaluationError):
    """Two values of different types were compared."""


class Direction(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    def __repr__(self):
        return self.value


class Strategy(enum.Enum):
    DFS = "dfs"
    BFS = "bfs"


# -- nodes -------------------------------------------------------------------


class Ctor:
    __slots__ = ("tag", "fields")

    def __init__(self, tag: str, fields: tuple = ()):
        self.tag = tag
        self.fields = fields

    def __repr__(self):
        return f"Ctor({self.tag}/{len(self.fields)})"


class Choice:
    __slots__ = ("id", "left", "right")

    def __init__(self, id: int, left: "Ref", right: "Ref"):
        self.id = id
        self.left = left
        self.right = right

    def __repr__(self):
        return f"Choice(#{self.id})"


class _Fail:
    __slots__ = ()

    def __repr__(self):
        return "Fail"


FAIL = _Fail()


class Prim:
    """Primitive leaf: a Python int, float or one-character str."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __repr__(self):
        return f"Prim({self.value!r})"


class Suspension:
    __slots__ = ("body", "running")

    def __init__(self, body: Callable[[], "Ref"]):
        self.body = body
        self.running = False

    def __repr__(self):
        return "Suspension(running)" if self.running else "Suspension"


class Ref:
    """Shared handle to a node.  Forcing overwrites ``node`` in place."""

    __slots__ = ("node",)

    def __init__(self, node):
        self.node = node

    @property
    def forced(self) -> bool:
        return not isinstance(self.node, Suspension)

    def __repr__(self):
        return f"Ref({self.node!r})"


# -- sessions ----------------------------------------------------------------


@dataclass(frozen=True)
class EvalStats:
    choice_expansions: int = 0
    suspensions_forced: int = 0
    failures: int = 0


class _Counters:
    __slots__ = ("choice_expansions", "suspensions_forced", "failures")

    def __init__(self):
        self.reset()

    def reset(self):
        self.choice_expansions = 0
        self.suspensions_forced = 0
        self.failures = 0

    def snapshot(self) -> EvalStats:
        return EvalStats(self.choice_expansions, self.suspensions_forced, self.failures)


class Session:
    """Owns the choice-id counter, counters and an optional deadline.

    Sessions are confined to one thread.  Use as a context manager to
    make it the current session for graph construction and evaluation.
    """

    def __init__(self, timeout: float | None = None):
        self._next_id = 0
        self.counters = _Counters()
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.last_stats = EvalStats()
        self._token = None

    def fresh_id(self) -> int:
        i = self._next_id
        self._next_id += 1
        return i

    @property
    def ids_allocated(self) -> int:
        return self._next_id

    @property
    def stats(self) -> EvalStats:
        return self.counters.snapshot()

    def check_deadline(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise EvaluationTimeout("evaluation exceeded its time budget")

    def __enter__(self):
        self._token = _current.set(self)
        return self

    def __exit__(self, *exc):
        _current.reset(self._token)
        self._token = None


_current: contextvars.ContextVar[Session | None] = contextvars.ContextVar(
    "lazydist_session", default=None
)
_default_sessions = threading.local()


def current_session() -> Session:
    s = _current.get()
    if s is None:
        s = getattr(_default_sessions, "session", None)
        if s is None:
            s = _default_sessions.session = Session()
    return s


# -- construction --------------------------------------------------------------


def leaf(value) -> Ref:
    return Ref(Prim(value))


def ctor(tag: str, *fields: Ref) -> Ref:
    return Ref(Ctor(tag, fields))


def fail() -> Ref:
    return Ref(FAIL)


def mk_choice(left: Ref, right: Ref) -> Ref:
    """``left ? right`` with a fresh choice id; branches are not forced."""
    return Ref(Choice(current_session().fresh_id(), left, right))


def suspend(body: Callable[[], Ref]) -> Ref:
    return Ref(Suspension(body))


def choice_id(ref: Ref) -> int:
    node = force(ref)
    if not isinstance(node, Choice):
        raise ValueError(f"not a choice: {node!r}")
    return node.id


# -- forcing -------------------------------------------------------------------

_DEADLINE_EVERY = 1024
_DEADLINE_MASK = _DEADLINE_EVERY - 1


def force(ref: Ref):
    """Reduce ``ref`` to head-normal form and memoize it.

    A choice head is a valid result.  Chains of suspensions that return
    other suspensions are followed iteratively.
    """
    node = ref.node
    if type(node) is not Suspension:
        return node
    session = _current.get() or current_session()
    counters = session.counters
    chain = []
    try:
        while type(node) is Suspension:
            if node.running:
                raise CyclicDemandError("suspension demanded its own value")
            node.running = True
            chain.append(ref)
            counters.suspensions_forced += 1
            if not counters.suspensions_forced & _DEADLINE_MASK:
                session.check_deadline()
            ref = node.body()
            if type(ref) is not Ref:
                raise TypeError(f"suspension body returned {type(ref).__name__}, not Ref")
            node = ref.node
    except BaseException:
        for r in chain:
            if type(r.node) is Suspension:
                r.node.running = False
        raise
    for r in chain:
        r.node = node
    return node


def match(ref: Ref, k: Callable[[Any], Ref]) -> Ref:
    """Apply ``k`` to the head-normal form of ``ref``.

    Failure propagates.  A choice head is lifted: the result is a choice
    with the same id whose branches apply ``k`` on demand.
    """
    node = ref.node
    if type(node) is Suspension:
        node = force(ref)
    t = type(node)
    if t is Choice:
        left, right = node.left, node.right
        return Ref(Choice(
            node.id,
            Ref(Suspension(lambda: match(left, k))),
            Ref(Suspension(lambda: match(right, k))),
        ))
    if node is FAIL:
        return ref
    return k(node)


# -- ground values -------------------------------------------------------------


class Term(NamedTuple):
    """Ground constructor value that has no closer Python equivalent."""

    tag: str
    args: tuple

    def __repr__(self):
        if not self.args:
            return self.tag
        return " ".join([self.tag, *(_show(a) for a in self.args)])


def _show(v):
    if isinstance(v, Term) and v.args:
        return f"({v!r})"
    if isinstance(v, tuple):
        return "[" + ",".join(_show(x) for x in v) + "]"
    return repr(v) if not isinstance(v, bool) else str(v)


_TUPLE_TAGS = {"Pair", "Triple", "Tuple"}


def ground(tag: str, args: tuple):
    if tag == "True":
        return True
    if tag == "False":
        return False
    if tag == "Nil" or tag == "Unit":
        return ()
    if tag == "Cons":
        return (args[0],) + args[1]
    if tag in _TUPLE_TAGS:
        return tuple(args)
    if not args:
        return tag
    return Term(tag, tuple(args))


@dataclass(frozen=True)
class Fingerprint:
    """Decisions taken for one enumerated result: choice id -> direction."""

    decisions: Mapping[int, Direction]

    @classmethod
    def of(cls, d: dict) -> "Fingerprint":
        return cls(MappingProxyType(dict(d)))

    def __getitem__(self, i):
        return self.decisions[i]

    def __contains__(self, i):
        return i in self.decisions

    def __len__(self):
        return len(self.decisions)

    def extends(self, other: "Fingerprint") -> bool:
        """True if every decision of ``other`` also appears here."""
        return all(self.decisions.get(i) == d for i, d in other.decisions.items())

    def __hash__(self):
        return hash(frozenset(self.decisions.items()))

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and dict(self.decisions) == dict(other.decisions)

    def __repr__(self):
        body = " ".join(f"{i}{d.value}" for i, d in sorted(self.decisions.items()))
        return f"Fingerprint({body})"


class Result(NamedTuple):
    value: Any
    fingerprint: Fingerprint


# Work items for the enumerator: a persistent linked list of instructions.
_WALK = 0
_BUILD = 1


def _push_fields(node: Ctor, todo):
    todo = ((_BUILD, node), todo)
    for f in reversed(node.fields):
        todo = ((_WALK, f), todo)
    return todo


def enumerate_values(
    ref: Ref,
    strategy: Strategy = Strategy.DFS,
    deep: bool = True,
    on_failure: Callable[[Fingerprint], None] | None = None,
) -> Iterator[Result]:
    """Yield every consistent non-failing value of ``ref`` with its fingerprint.

    ``deep`` forces constructor fields recursively and returns ground
    Python values.  Shallow mode stops at head-normal form and returns
    the raw node.  DFS explores left before right.  Counters of the
    current session are reset when enumeration starts.
    """
    session = current_session()
    counters = session.counters
    counters.reset()
    if strategy is Strategy.DFS:
        yield from _dfs(ref, deep, session, counters, on_failure)
    else:
        yield from _bfs(ref, deep, session, counters, on_failure)
    session.last_stats = counters.snapshot()


def _dfs(ref, deep, session, counters, on_failure):
    fp: dict[int, Direction] = {}
    trail: list[int] = []
    stack = []  # (right branch, todo, values, trail length, choice id)
    todo = ((_WALK, ref), None)
    values = None
    steps = 0
    while True:
        if todo is None:
            yield Result(values[0], Fingerprint.of(fp))
            failed = False
        else:
            (kind, item), todo = todo
            failed = False
            if kind == _WALK:
                node = force(item)
                steps += 1
                if steps % _DEADLINE_EVERY == 0:
                    session.check_deadline()
                if isinstance(node, Choice):
                    d = fp.get(node.id)
                    if d is Direction.LEFT:
                        todo = ((_WALK, node.left), todo)
                    elif d is Direction.RIGHT:
                        todo = ((_WALK, node.right), todo)
                    else:
                        counters.choice_expansions += 1
                        stack.append((node.right, todo, values, len(trail), node.id))
                        fp[node.id] = Direction.LEFT
                        trail.append(node.id)
                        todo = ((_WALK, node.left), todo)
                    continue
                if node is FAIL:
                    counters.failures += 1
                    if on_failure is not None:
                        on_failure(Fingerprint.of(fp))
                    failed = True
                elif isinstance(node, Prim):
                    values = (node.value, values)
                elif deep:
                    todo = _push_fields(node, todo)
                else:
                    values = (node, values)
            else:
                n = len(item.fields)
                args = []
                for _ in range(n):
                    v, values = values
                    args.append(v)
                args.reverse()
                values = (ground(item.tag, tuple(args)), values)
            if not failed:
                continue
        # backtrack
        if not stack:
            return
        right, todo, values, mark, cid = stack.pop()
        while len(trail) > mark:
            del fp[trail.pop()]
        fp[cid] = Direction.RIGHT
        trail.append(cid)
        todo = ((_WALK, right), todo)


def _bfs(ref, deep, session, counters, on_failure):
    queue = deque([(((_WALK, ref), None), None, {})])
    steps = 0
    while queue:
        todo, values, fp = queue.popleft()
        while True:
            if todo is None:
                yield Result(values[0], Fingerprint.of(fp))
                break
            (kind, item), todo = todo
            if kind == _BUILD:
                args = []
                for _ in range(len(item.fields)):
                    v, values = values
                    args.append(v)
                args.reverse()
                values = (ground(item.tag, tuple(args)), values)
                continue
            node = force(item)
            steps += 1
            if steps % _DEADLINE_EVERY == 0:
                session.check_deadline()
            if isinstance(node, Choice):
                d = fp.get(node.id)
                if d is not None:
                    todo = ((_WALK, node.left if d is Direction.LEFT else node.right), todo)
                    continue
                counters.choice_expansions += 1
                for direction, branch in ((Direction.LEFT, node.left), (Direction.RIGHT, node.right)):
                    fp2 = dict(fp)
                    fp2[node.id] = direction
                    queue.append((((_WALK, branch), todo), values, fp2))
                break
            if node is FAIL:
                counters.failures += 1
                if on_failure is not None:
                    on_failure(Fingerprint.of(fp))
                break
            if isinstance(node, Prim):
                values = (node.value, values)
            elif deep:
                todo = _push_fields(node, todo)
            else:
                values = (node, values)


class NoValue(EvaluationError):
    """Evaluation under a fingerprint reached a failure."""


def evaluate_under(ref: Ref, fingerprint: Fingerprint, deep: bool = True):
    """Replay one result: follow ``fingerprint`` at every choice.

    Raises :class:`NoValue` on failure and ``KeyError`` if a choice
    outside the fingerprint is reached.
    """
    todo = ((_WALK, ref), None)
    values = None
    while todo is not None:
        (kind, item), todo = todo
        if kind == _BUILD:
            args = []
            for _ in range(len(item.fields)):
                v, values = values
                args.append(v)
            args.reverse()
            values = (ground(item.tag, tuple(args)), values)
            continue
        node = force(item)
        if isinstance(node, Choice):
            d = fingerprint[node.id]
            todo = ((_WALK, node.left if d is Direction.LEFT else node.right), todo)
        elif node is FAIL:
            raise NoValue(f"failure under {fingerprint!r}")
        elif isinstance(node, Prim):
            values = (node.value, values)
        elif deep:
            todo = _push_fields(node, todo)
        else:
            values = (node, values)
    return values[0]


@contextlib.contextmanager
def gc_paused():
    """Suspend the cyclic collector for the duration of a full enumeration.

    Evaluation allocates many small, long-lived cells; repeated full
    collections over them cost more than the search itself.
    """
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def all_values(ref: Ref, strategy: Strategy = Strategy.DFS, deep: bool = True) -> list:
    """Multiset (as a list in enumeration order) of the values of ``ref``."""
    with gc_paused():
        return [r.value for r in enumerate_values(ref, strategy, deep)]


def fold_values(op: Callable[[Any, Any], Any], zero, ref: Ref, strategy: Strategy = Strategy.DFS):
    """Left fold of ``op`` over the values of ``ref`` in enumeration order."""
    acc = zero
    with gc_paused():
        for r in enumerate_values(ref, strategy, deep=True):
            acc = op(acc, r.value)
    return acc


# -- deep host recursion --------------------------------------------------------


@contextlib.contextmanager
def recursion_limit(limit: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def run_with_deep_stack(fn: Callable[[], Any], stack_mb: int = 512, limit: int = 200_000):
    """Run ``fn`` in a helper thread with a large C stack and recursion limit.

    Forcing long dependency chains (for example the probability of a
    300-fold product) recurses through the host interpreter.
    """
    box: dict[str, Any] = {}
    ctx = contextvars.copy_context()

    def target():
        try:
            box["value"] = ctx.run(fn)
        except BaseException as e:  # re-raised in the caller
            box["error"] = e

    old_size = threading.stack_size()
    threading.stack_size(stack_mb * 1024 * 1024)
    try:
        with recursion_limit(limit):
            t = threading.Thread(target=target, name="lazydist-eval")
            t.start()
            t.join()
    finally:
        threading.stack_size(old_size)
    if "error" in box:
        raise box["error"]
    return box["value"]
