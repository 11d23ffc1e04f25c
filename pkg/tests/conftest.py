"""Shared helpers: sympy is used only as an independent oracle."""

from __future__ import annotations

import sympy

L, A, B, G, s, t = sympy.symbols("L A B G s t")
SYMS = {"L": L, "A": A, "B": B, "G": G, "s": s, "t": t}


def to_sympy(value) -> sympy.Expr:
    """Re-read anything the package prints."""
    text = str(value).replace("^", "**")
    return sympy.sympify(text, locals=SYMS)


def same(value, expr) -> bool:
    return sympy.simplify(to_sympy(value) - expr) == 0
