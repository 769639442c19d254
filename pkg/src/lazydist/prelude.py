"""Lazy Booleans, lists, characters and structural equality over the graph.

Every function takes and returns :class:`~lazydist.core.Ref` handles and
demands no more of its arguments than the corresponding Curry prelude
equation does.  Strings are lazy lists of one-character primitives.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .core import (
    Ctor,
    Prim,
    Ref,
    Term,
    TypeConfusionError,
    ctor,
    leaf,
    match,
    suspend,
)

TRUE = ctor("True")
FALSE = ctor("False")
NIL = ctor("Nil")
UNIT = ctor("Unit")

_families: dict[str, str] = {}


def declare_data(name: str, tags: Iterable[str]) -> None:
    """Register constructor tags as one data type, for equality checks."""
    for t in tags:
        _families[t] = name


declare_data("Bool", ["True", "False"])
declare_data("List", ["Nil", "Cons"])
declare_data("Unit", ["Unit"])
declare_data("Pair", ["Pair"])
declare_data("Triple", ["Triple"])
declare_data("Dist", ["Dist"])


def boolean(b: bool) -> Ref:
    return TRUE if b else FALSE


def is_true(node) -> bool:
    return node.tag == "True"


def cons(x: Ref, xs: Ref) -> Ref:
    return ctor("Cons", x, xs)


def pair(a: Ref, b: Ref) -> Ref:
    return ctor("Pair", a, b)


def from_value(v) -> Ref:
    """Embed a ground Python value (or pass a Ref through)."""
    if isinstance(v, Ref):
        return v
    if isinstance(v, bool):
        return boolean(v)
    if isinstance(v, (int, float)):
        return leaf(v)
    if isinstance(v, str):
        if len(v) == 1:
            return leaf(v)
        return from_list(list(v))
    if isinstance(v, Term):
        return ctor(v.tag, *(from_value(a) for a in v.args))
    if isinstance(v, (tuple, list)):
        return from_list(v)
    raise TypeError(f"cannot embed {type(v).__name__}")


def from_list(items) -> Ref:
    acc = NIL
    for x in reversed(list(items)):
        acc = cons(from_value(x), acc)
    return acc


def string(s: str) -> Ref:
    return from_list(list(s))


# -- Booleans ---------------------------------------------------------------


def l_not(b: Ref) -> Ref:
    return suspend(lambda: match(b, lambda n: FALSE if is_true(n) else TRUE))


def l_and(a: Ref, b: Ref) -> Ref:
    """``False && _ = False``; ``True && x = x``.  ``b`` is demanded only after True."""
    return suspend(lambda: match(a, lambda n: b if is_true(n) else FALSE))


def l_or(a: Ref, b: Ref) -> Ref:
    return suspend(lambda: match(a, lambda n: TRUE if is_true(n) else b))


def l_if(c: Ref, then: Callable[[], Ref], else_: Callable[[], Ref]) -> Ref:
    return suspend(lambda: match(c, lambda n: then() if is_true(n) else else_()))


def l_const(x: Ref, y: Ref) -> Ref:
    return x


# -- lists --------------------------------------------------------------------


def l_foldr(f: Callable[[Ref, Ref], Ref], z: Ref, xs: Ref) -> Ref:
    def body():
        return match(xs, lambda n: z if n.tag == "Nil" else f(n.fields[0], l_foldr(f, z, n.fields[1])))

    return suspend(body)


def l_map(f: Callable[[Ref], Ref], xs: Ref) -> Ref:
    def body():
        def k(n):
            if n.tag == "Nil":
                return NIL
            h, t = n.fields
            return cons(suspend(lambda: f(h)), l_map(f, t))

        return match(xs, k)

    return suspend(body)


def l_all(p: Callable[[Ref], Ref], xs: Ref) -> Ref:
    """``all p xs = foldr (&&) True (map p xs)``."""
    return l_foldr(l_and, TRUE, l_map(p, xs))


def l_zip_with(f: Callable[[Ref, Ref], Ref], xs: Ref, ys: Ref) -> Ref:
    """Stops at the shorter list; ``ys`` is not demanded when ``xs`` is empty."""

    def body():
        def kx(nx):
            if nx.tag == "Nil":
                return NIL
            x, xt = nx.fields

            def ky(ny):
                if ny.tag == "Nil":
                    return NIL
                y, yt = ny.fields
                return cons(suspend(lambda: f(x, y)), l_zip_with(f, xt, yt))

            return match(ys, ky)

        return match(xs, kx)

    return suspend(body)


def l_repeat(x: Ref) -> Ref:
    """Infinite list of ``x``, as a cyclic cell."""
    cell = Ref(None)
    cell.node = Ctor("Cons", (x, cell))
    return cell


def _add(a: Ref, b: Ref) -> Ref:
    return match(a, lambda na: match(b, lambda nb: leaf(na.value + nb.value)))


def l_length(xs: Ref) -> Ref:
    """Demands the spine only."""

    def body():
        return match(xs, lambda n: leaf(0) if n.tag == "Nil" else _add(leaf(1), l_length(n.fields[1])))

    return suspend(body)


def l_filter(p: Callable[[Ref], Ref], xs: Ref) -> Ref:
    def body():
        def k(n):
            if n.tag == "Nil":
                return NIL
            x, t = n.fields
            return match(p(x), lambda b: cons(x, l_filter(p, t)) if is_true(b) else l_filter(p, t))

        return match(xs, k)

    return suspend(body)


def l_take(n: int, xs: Ref) -> Ref:
    if n <= 0:
        return NIL

    def body():
        return match(xs, lambda c: NIL if c.tag == "Nil" else cons(c.fields[0], l_take(n - 1, c.fields[1])))

    return suspend(body)


def l_reverse(xs: Ref) -> Ref:
    """Forces the whole spine of ``xs`` but none of its elements."""

    def rev(ys, acc):
        return suspend(lambda: match(ys, lambda n: acc if n.tag == "Nil" else rev(n.fields[1], cons(n.fields[0], acc))))

    return rev(xs, NIL)


def l_append(xs: Ref, ys: Ref) -> Ref:
    def body():
        return match(xs, lambda n: ys if n.tag == "Nil" else cons(n.fields[0], l_append(n.fields[1], ys)))

    return suspend(body)


# -- equality -----------------------------------------------------------------


def _prim_kind(v):
    if isinstance(v, bool):
        return "Bool"
    if isinstance(v, int):
        return "Int"
    if isinstance(v, float):
        return "Float"
    if isinstance(v, str):
        return "Char"
    return type(v).__name__


def _family(tag):
    return _families.get(tag, "?" + tag)


def l_eq(a: Ref, b: Ref) -> Ref:
    """Structural equality, left to right, stopping at the first mismatch."""

    def body():
        def ka(na):
            def kb(nb):
                if isinstance(na, Prim) and isinstance(nb, Prim):
                    ta, tb = _prim_kind(na.value), _prim_kind(nb.value)
                    if ta != tb:
                        raise TypeConfusionError(f"comparing {ta} with {tb}")
                    return boolean(na.value == nb.value)
                if isinstance(na, Prim) or isinstance(nb, Prim):
                    raise TypeConfusionError(f"comparing {na!r} with {nb!r}")
                fa, fb = _family(na.tag), _family(nb.tag)
                if fa != fb and not (fa.startswith("?") and fb.startswith("?")):
                    raise TypeConfusionError(f"comparing {fa} with {fb}")
                if na.tag != nb.tag or len(na.fields) != len(nb.fields):
                    return FALSE
                acc = TRUE
                for x, y in reversed(list(zip(na.fields, nb.fields))):
                    acc = l_and(l_eq(x, y), acc)
                return acc

            return match(b, kb)

        return match(a, ka)

    return suspend(body)


def l_eq_value(a: Ref, v) -> Ref:
    return l_eq(a, from_value(v))
