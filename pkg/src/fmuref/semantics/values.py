"""Runtime values of the evaluator."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from ..lang import syntax as S
from ..lang.printer import print_ty


class SemVal:
    __slots__ = ()


@dataclass(frozen=True)
class VUnit(SemVal):
    pass


@dataclass(frozen=True)
class VInt(SemVal):
    n: int


@dataclass(frozen=True)
class VPair(SemVal):
    left: SemVal
    right: SemVal


@dataclass(frozen=True, eq=False)
class VFun(SemVal):
    """A closure. Python-level primitives set ``prim`` instead of ``body``."""

    param: str
    body: Any
    env: Mapping = field(default_factory=dict, repr=False)
    tyenv: Mapping = field(default_factory=dict, repr=False)
    prim: Callable | None = field(default=None, repr=False)


@dataclass(frozen=True, eq=False)
class VTFun(SemVal):
    var: str
    body: Any
    env: Mapping = field(default_factory=dict, repr=False)
    tyenv: Mapping = field(default_factory=dict, repr=False)


@dataclass(frozen=True)
class VPack(SemVal):
    witness: S.Ty
    value: SemVal

    def __eq__(self, other):
        return (
            isinstance(other, VPack)
            and S.alpha_eq_ty(self.witness, other.witness)
            and self.value == other.value
        )

    __hash__ = None


@dataclass(frozen=True)
class VFold(SemVal):
    value: SemVal


@dataclass(frozen=True)
class VLoc(SemVal):
    index: int
    ty: S.Ty

    def __eq__(self, other):
        return isinstance(other, VLoc) and self.index == other.index and S.alpha_eq_ty(self.ty, other.ty)

    def __hash__(self):
        return hash((self.index, S.ty_key(self.ty)))


@dataclass(frozen=True, eq=False)
class VComp(SemVal):
    """A suspended stateful computation: ``(world, heap) -> Delay[(world, heap, value)]``."""

    run: Callable


UNIT = VUnit()


def show_value(v: SemVal) -> str:
    if isinstance(v, VUnit):
        return "()"
    if isinstance(v, VInt):
        return str(v.n)
    if isinstance(v, VPair):
        return f"({show_value(v.left)}, {show_value(v.right)})"
    if isinstance(v, VLoc):
        return f"loc {v.index}"
    if isinstance(v, VFun):
        return "<fun>"
    if isinstance(v, VTFun):
        return "<tfun>"
    if isinstance(v, VComp):
        return "<comp>"
    if isinstance(v, VPack):
        return f"pack[{print_ty(v.witness)}, {show_value(v.value)}]"
    if isinstance(v, VFold):
        return f"fold {show_value(v.value)}"
    raise TypeError(f"not a semantic value: {v!r}")


def value_has_type(v: SemVal, ty: S.Ty, world: Mapping[int, S.Ty]) -> bool:
    """Structural check that ``v`` inhabits closed type ``ty`` in ``world``.

    Functions and computations are checked by tag only.
    """
    if isinstance(ty, S.TUnit):
        return isinstance(v, VUnit)
    if isinstance(ty, S.TInt):
        return isinstance(v, VInt)
    if isinstance(ty, S.Prod):
        return (
            isinstance(v, VPair)
            and value_has_type(v.left, ty.left, world)
            and value_has_type(v.right, ty.right, world)
        )
    if isinstance(ty, S.Arrow):
        return isinstance(v, VFun)
    if isinstance(ty, S.Forall):
        return isinstance(v, VTFun)
    if isinstance(ty, S.T):
        return isinstance(v, VComp)
    if isinstance(ty, S.Ref):
        return (
            isinstance(v, VLoc)
            and v.index in world
            and S.alpha_eq_ty(world[v.index], v.ty)
            and S.alpha_eq_ty(v.ty, ty.ty)
        )
    if isinstance(ty, S.Mu):
        return isinstance(v, VFold) and value_has_type(v.value, S.unroll(ty), world)
    if isinstance(ty, S.Exists):
        return isinstance(v, VPack) and value_has_type(
            v.value, S.subst_ty(ty.body, {ty.var: v.witness}), world
        )
    return False
