"""Syntax, parsing and printing for Monadic System F-mu-ref."""
from .parser import ParseError, parse, parse_ty, tokenize
from .printer import print_tm, print_ty, show
from .syntax import alpha_eq, alpha_eq_ty, free_vars, ftv, subst_ty, unroll

__all__ = [
    "ParseError",
    "alpha_eq",
    "alpha_eq_ty",
    "free_vars",
    "ftv",
    "parse",
    "parse_ty",
    "print_tm",
    "print_ty",
    "show",
    "subst_ty",
    "tokenize",
    "unroll",
]
