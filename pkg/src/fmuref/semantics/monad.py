"""The world-indexed state monad over the delay monad.

A computation is a function ``(world, heap) -> Delay[(world, heap, value)]``.
Reads cost one step (the stored value sits under a later), writes and
allocation cost none, and ``step`` costs exactly one.
"""
from __future__ import annotations

import contextlib
import contextvars
from typing import Any, Callable, Mapping, Tuple

from .. import kernel as K
from ..lang import syntax as S
from ..lang.printer import print_ty
from .store import Heap, World, fresh, world_leq
from .values import UNIT, SemVal, VLoc, value_has_type

Comp = Callable[[World, Heap], K.Delay]
Result = Tuple[World, Heap, Any]


class SemanticsError(RuntimeError):
    pass


class DanglingLocation(SemanticsError):
    pass


class HeapTypingError(SemanticsError):
    pass


class WorldMonotonicityError(SemanticsError):
    pass


_checks = contextvars.ContextVar("fmuref_checks", default=False)


@contextlib.contextmanager
def checked(enabled: bool = True):
    """Enable world-monotonicity and heap-typing assertions while the block runs."""
    token = _checks.set(enabled)
    try:
        yield
    finally:
        _checks.reset(token)


def checks_enabled() -> bool:
    return _checks.get()


def _assert_store(before: World, after: World, heap: Heap) -> None:
    if not world_leq(before, after):
        raise WorldMonotonicityError(f"world shrank: {dict(before)} -> {dict(after)}")
    if set(after) != set(heap):
        raise WorldMonotonicityError(f"heap domain {sorted(heap)} != world domain {sorted(after)}")


def comp_ret(value) -> Comp:
    return lambda w, h: K.Now((w, h, value))


def comp_bind(m: Comp, k: Callable[[Any], Comp]) -> Comp:
    def run(w, h):
        def cont(res):
            w1, h1, a = res
            if _checks.get():
                _assert_store(w, w1, h1)
            return k(a)(w1, h1)

        return K.bind(m(w, h), cont)

    return run


def comp_map(m: Comp, f: Callable[[Any], Any]) -> Comp:
    return comp_bind(m, lambda a: comp_ret(f(a)))


def comp_theta(m: K.Next) -> Comp:
    """The later-algebra: run the suspended computation one step from now."""
    return lambda w, h: K.Later(K.Next(lambda: m.force()(w, h)))


def comp_delta(m: Comp) -> Comp:
    return comp_theta(K.next_(m))


def comp_step() -> Comp:
    return comp_delta(comp_ret(UNIT))


def _cell(loc: VLoc, w: World) -> int:
    i = loc.index
    if i not in w:
        raise DanglingLocation(f"location {i} is not allocated")
    if not S.alpha_eq_ty(w[i], loc.ty):
        raise DanglingLocation(
            f"location {i} holds {print_ty(w[i])}, reference expects {print_ty(loc.ty)}"
        )
    return i


def comp_get(loc: VLoc) -> Comp:
    def run(w, h):
        i = _cell(loc, w)
        return K.Later(K.Next(lambda: K.Now((w, h, h[i]))))

    return run


def comp_set(loc: VLoc, value: SemVal) -> Comp:
    def run(w, h):
        i = _cell(loc, w)
        if _checks.get() and not value_has_type(value, w[i], w):
            raise HeapTypingError(f"value does not inhabit {print_ty(w[i])} at location {i}")
        return K.Now((w, h.set(i, value), UNIT))

    return run


def comp_new(ty: S.Ty, value: SemVal) -> Comp:
    def run(w, h):
        i = fresh(w)
        w2 = w.extend(i, ty)
        if _checks.get() and not value_has_type(value, ty, w2):
            raise HeapTypingError(f"value does not inhabit {print_ty(ty)} at new location {i}")
        return K.Now((w2, h.set(i, value), VLoc(i, ty)))

    return run


def run_comp(m: Comp, w: Mapping | None = None, h: Mapping | None = None) -> K.Delay:
    w = w if isinstance(w, World) else World(w or {})
    h = h if isinstance(h, Heap) else Heap(h or {})
    return m(w, h)
