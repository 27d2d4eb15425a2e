"""Semantic worlds and heaps as immutable finite maps."""
from __future__ import annotations

from typing import Any, Iterator, Mapping

from ..lang import syntax as S


class _FrozenMap(Mapping):
    __slots__ = ("_data",)

    def __init__(self, data: Mapping | None = None):
        self._data = dict(sorted((data or {}).items()))

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def set(self, key, value):
        data = dict(self._data)
        data[key] = value
        return type(self)(data)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._data!r})"


class World(_FrozenMap):
    """Location index to the closed type stored there.

    Equality compares stored types up to alpha-equivalence.
    """

    def __eq__(self, other) -> bool:
        if not isinstance(other, World):
            return NotImplemented
        return self.keys() == other.keys() and all(
            S.alpha_eq_ty(self[i], other[i]) for i in self
        )

    def __hash__(self):
        return hash(tuple((i, S.ty_key(t)) for i, t in self.items()))

    def __le__(self, other: "World") -> bool:
        return world_leq(self, other)

    def extend(self, index: int, ty: S.Ty) -> "World":
        if index in self:
            raise ValueError(f"location {index} already allocated")
        return self.set(index, ty)


class Heap(_FrozenMap):
    """Location index to stored semantic value."""

    def __eq__(self, other) -> bool:
        if not isinstance(other, Heap):
            return NotImplemented
        return self._data == other._data

    __hash__ = None


EMPTY_WORLD = World()
EMPTY_HEAP = Heap()


def fresh(world: Mapping[int, Any]) -> int:
    """Smallest nonnegative index not allocated in ``world``."""
    i = 0
    while i in world:
        i += 1
    return i


def world_leq(w: Mapping, w2: Mapping) -> bool:
    """Graph inclusion: every cell of ``w`` is in ``w2`` at the same type."""
    return all(i in w2 and S.alpha_eq_ty(ty, w2[i]) for i, ty in w.items())
