"""Pretty-printer; the inverse of :mod:`fmuref.lang.parser` up to alpha-equivalence."""
from __future__ import annotations

from . import syntax as S

# type precedence
_T_BIND, _T_ARROW, _T_PROD, _T_PREFIX, _T_ATOM = range(5)
# term precedence
_TERM, _SUM, _MUL, _UNARY, _PREFIX, _APP, _ATOM = range(7)


def _paren(text: str, level: int, need: int) -> str:
    return f"({text})" if level < need else text


def _ty(ty: S.Ty, need: int) -> str:
    if isinstance(ty, S.TVar):
        return ty.name
    if isinstance(ty, S.TUnit):
        return "Unit"
    if isinstance(ty, S.TInt):
        return "Int"
    if isinstance(ty, (S.Ref, S.T)):
        kw = "Ref" if isinstance(ty, S.Ref) else "T"
        return _paren(f"{kw} {_ty(ty.ty, _T_PREFIX)}", _T_PREFIX, need)
    if isinstance(ty, S.Prod):
        return _paren(f"{_ty(ty.left, _T_PREFIX)} * {_ty(ty.right, _T_PROD)}", _T_PROD, need)
    if isinstance(ty, S.Arrow):
        return _paren(f"{_ty(ty.dom, _T_PROD)} -> {_ty(ty.cod, _T_ARROW)}", _T_ARROW, need)
    if isinstance(ty, S.BINDER_TYPES):
        kw = {S.Forall: "forall", S.Exists: "exists", S.Mu: "mu"}[type(ty)]
        return _paren(f"{kw} {ty.var}. {_ty(ty.body, _T_BIND)}", _T_BIND, need)
    raise TypeError(f"not a type: {ty!r}")


def print_ty(ty: S.Ty) -> str:
    return _ty(ty, _T_BIND)


def _is_seq(tm: S.Bind) -> bool:
    return tm.var == S.WILDCARD


def _tm(tm: S.Tm, need: int) -> str:
    if isinstance(tm, S.Var):
        return tm.name
    if isinstance(tm, S.UnitVal):
        return "()"
    if isinstance(tm, S.Step):
        return "step"
    if isinstance(tm, S.IntLit):
        if tm.value < 0:
            return _paren(str(tm.value), _UNARY, need)
        return str(tm.value)
    if isinstance(tm, S.Pair):
        return f"({_tm(tm.left, _TERM)}, {_tm(tm.right, _TERM)})"
    if isinstance(tm, S.Arith):
        if tm.op == "neg":
            (arg,) = tm.args
            inner = _tm(arg, _UNARY)
            if isinstance(arg, S.IntLit) or inner.startswith("-"):
                inner = f"({inner})"
            return _paren(f"-{inner}", _UNARY, need)
        left, right = tm.args
        if tm.op == "*":
            return _paren(f"{_tm(left, _MUL)} * {_tm(right, _UNARY)}", _MUL, need)
        return _paren(f"{_tm(left, _SUM)} {tm.op} {_tm(right, _MUL)}", _SUM, need)
    if isinstance(tm, S.App):
        if isinstance(tm.fn, S.Lam):
            lam = tm.fn
            text = f"let {lam.var} : {print_ty(lam.ty)} = {_tm(tm.arg, _TERM)} in {_tm(lam.body, _TERM)}"
            return _paren(text, _TERM, need)
        return _paren(f"{_tm(tm.fn, _APP)} {_tm(tm.arg, _ATOM)}", _APP, need)
    if isinstance(tm, S.TApp):
        return _paren(f"{_tm(tm.tm, _APP)} [{print_ty(tm.ty)}]", _APP, need)
    if isinstance(tm, (S.Ret, S.Unfold, S.Fst, S.Snd)):
        kw = {S.Ret: "ret", S.Unfold: "unfold", S.Fst: "fst", S.Snd: "snd"}[type(tm)]
        return _paren(f"{kw} {_tm(tm.tm, _PREFIX)}", _PREFIX, need)
    if isinstance(tm, (S.New, S.Fold)):
        kw = "new" if isinstance(tm, S.New) else "fold"
        return _paren(f"{kw}[{print_ty(tm.ty)}] {_tm(tm.tm, _PREFIX)}", _PREFIX, need)
    if isinstance(tm, S.Get):
        return _paren(f"get[{print_ty(tm.ty)}] {_tm(tm.ref, _PREFIX)}", _PREFIX, need)
    if isinstance(tm, S.Set):
        return _paren(
            f"set[{print_ty(tm.ty)}] {_tm(tm.ref, _ATOM)} {_tm(tm.tm, _ATOM)}", _PREFIX, need
        )
    if isinstance(tm, S.Lam):
        return _paren(f"fun {tm.var} : {print_ty(tm.ty)}. {_tm(tm.body, _TERM)}", _TERM, need)
    if isinstance(tm, S.TLam):
        return _paren(f"tfun {tm.var}. {_tm(tm.body, _TERM)}", _TERM, need)
    if isinstance(tm, S.Bind):
        rhs = _tm(tm.tm, _SUM)
        body = _tm(tm.body, _TERM)
        text = f"{rhs}; {body}" if _is_seq(tm) else f"bind {tm.var} <- {rhs}; {body}"
        return _paren(text, _TERM, need)
    if isinstance(tm, S.Unpack):
        text = f"unpack {_tm(tm.tm, _SUM)} as [{tm.tyvar}, {tm.var}] in {_tm(tm.body, _TERM)}"
        return _paren(text, _TERM, need)
    if isinstance(tm, S.IfZ):
        text = f"ifz {_tm(tm.cond, _SUM)} then {_tm(tm.then, _TERM)} else {_tm(tm.orelse, _TERM)}"
        return _paren(text, _TERM, need)
    if isinstance(tm, S.Pack):
        text = f"pack[{print_ty(tm.witness)}, {_tm(tm.tm, _TERM)}] as {print_ty(tm.ty)}"
        return _paren(text, _TERM, need)
    raise TypeError(f"not a term: {tm!r}")


def print_tm(tm: S.Tm) -> str:
    return _tm(tm, _TERM)


def show(x) -> str:
    return print_ty(x) if isinstance(x, S.Ty) else print_tm(x)
