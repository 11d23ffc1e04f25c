"""The affine-Virasoro algebra of type A1 and free enveloping words.

Basis: ``e[i], f[i], h[i], d[i]`` for integer ``i`` and the central ``c``.
The bracket table (with the form normalized by (e, f) = 1)::

    [e_i, f_j] = h_{i+j} + i*delta_{i+j,0} C
    [h_i, e_j] = 2 e_{i+j}          [h_i, f_j] = -2 f_{i+j}
    [d_i, d_j] = (j-i) d_{i+j} + delta_{i+j,0} (i^3-i)/12 C
    [d_i, h_j] = j h_{i+j}          [h_i, h_j] = 2i delta_{i+j,0} C
    [d_i, e_j] = j e_{i+j}          [d_i, f_j] = j f_{i+j}
    [e_i, e_j] = [f_i, f_j] = [C, x] = 0

Pairs not listed are obtained by antisymmetry.  The central term of
[h_i, h_j] comes from the invariant form, (h, h) = 2; with the opposite
sign the Jacobi identity fails on (e_i, f_j, h_k) by 4k*C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby, product

from .report import FAIL, Record, Report
from .scalars import ONE, ZERO, Scalar, as_scalar, format_terms

KINDS = ("e", "f", "h", "d", "c")
_KIND_ORDER = {k: n for n, k in enumerate(KINDS)}


@dataclass(frozen=True, order=False)
class Gen:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "c" and self.index:
            raise ValueError("the central element carries no index")

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.index)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "c" if self.kind == "c" else f"{self.kind}[{self.index}]"


def e(i: int) -> Gen:
    return Gen("e", i)


def f(i: int) -> Gen:
    return Gen("f", i)


def h(i: int) -> Gen:
    return Gen("h", i)


def d(i: int) -> Gen:
    return Gen("d", i)


C = Gen("c")


def basis(window: int) -> list[Gen]:
    """All basis symbols with |index| <= window, plus the central element."""
    out = [Gen(k, i) for k in KINDS[:4] for i in range(-window, window + 1)]
    out.append(C)
    return out


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


class AlgebraElement:
    """Finite Scalar-linear combination of basis symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, Gen):
            terms = {terms: ONE}
        self.terms = _clean({g: as_scalar(c) for g, c in (terms or {}).items()})

    def __add__(self, other):
        other = _as_elem(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, ZERO) + c
        return AlgebraElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_elem(other))

    def __rsub__(self, other):
        return _as_elem(other) - self

    def __mul__(self, c):
        if isinstance(c, (AlgebraElement, Gen, EnvelopingElement)):
            return NotImplemented
        c = as_scalar(c)
        return AlgebraElement({g: c * v for g, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * as_scalar(c).inverse()

    def subs(self, bindings: dict) -> "AlgebraElement":
        return AlgebraElement({g: c.subs(bindings) for g, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (AlgebraElement, Gen)):
            return self.terms == _as_elem(other).terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        return format_terms((str(g), c) for g, c in self.items())

    def __repr__(self):
        return f"AlgebraElement({str(self)!r})"


def _as_elem(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Gen):
        return AlgebraElement(x)
    if x == 0:
        return AlgebraElement()
    raise TypeError(f"cannot use {type(x).__name__} as an algebra element")


def _delta(n: int) -> int:
    return 1 if n == 0 else 0


def _table(x: Gen, y: Gen) -> dict | None:
    """Bracket of basis symbols for the ordered kinds listed in the table."""
    i, j = x.index, y.index
    kx, ky = x.kind, y.kind
    if kx == "c" or ky == "c":
        return {}
    if kx == "e" and ky == "f":
        return {h(i + j): 1, C: i * _delta(i + j)}
    if kx == "h" and ky == "e":
        return {e(i + j): 2}
    if kx == "h" and ky == "f":
        return {f(i + j): -2}
    if kx == "d" and ky == "d":
        return {d(i + j): j - i, C: Fraction(i ** 3 - i, 12) * _delta(i + j)}
    if kx == "d" and ky == "h":
        return {h(i + j): j}
    if kx == "h" and ky == "h":
        return {C: 2 * i * _delta(i + j)}
    if kx == "d" and ky == "e":
        return {e(i + j): j}
    if kx == "d" and ky == "f":
        return {f(i + j): j}
    if kx == ky and kx in "ef":
        return {}
    return None


_BRACKET_CACHE: dict = {}


def bracket_gens(x: Gen, y: Gen) -> AlgebraElement:
    key = (x, y)
    hit = _BRACKET_CACHE.get(key)
    if hit is not None:
        return hit
    t = _table(x, y)
    if t is None:
        t = _table(y, x)
        out = -AlgebraElement(t)
    else:
        out = AlgebraElement(t)
    _BRACKET_CACHE[key] = out
    return out


def bracket(x, y) -> AlgebraElement:
    """Bilinear bracket of algebra elements (or basis symbols)."""
    x, y = _as_elem(x), _as_elem(y)
    out: dict = {}
    for gx, cx in x.terms.items():
        for gy, cy in y.terms.items():
            c = cx * cy
            for g, v in bracket_gens(gx, gy).terms.items():
                out[g] = out.get(g, ZERO) + c * v
    return AlgebraElement(out)


def check_antisymmetry(window: int) -> Report:
    """[x, y] + [y, x] = 0 over all basis pairs with |index| <= window."""
    rep = Report(f"antisymmetry(window={window})")
    for x, y in product(basis(window), repeat=2):
        rep.checked += 1
        s = bracket(x, y) + bracket(y, x)
        if s:
            rep.add(Record("antisymmetry", f"{x}, {y}", "0", str(s)))
    return rep


def check_jacobi(window: int) -> Report:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 over all basis triples."""
    rep = Report(f"jacobi(window={window})")
    gens = basis(window)
    for x, y, z in product(gens, repeat=3):
        rep.checked += 1
        s = jacobiator(x, y, z)
        if s:
            rep.add(Record("jacobi", f"{x}, {y}, {z}", "0", str(s)))
    return rep


def jacobiator(x, y, z) -> AlgebraElement:
    return bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)


# -- enveloping words -----------------------------------------------------------

Word = tuple  # tuple[Gen, ...]; () is the unit


class EnvelopingElement:
    """Scalar-linear combination of free words in the basis symbols.

    No PBW reordering is done.  The word ``(x1, ..., xn)`` acts on a module
    as ``x1 . (x2 . ( ... (xn . g)))``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, Gen):
            terms = {(terms,): ONE}
        elif isinstance(terms, AlgebraElement):
            terms = {(g,): c for g, c in terms.terms.items()}
        self.terms = _clean({tuple(w): as_scalar(c) for w, c in (terms or {}).items()})

    @classmethod
    def unit(cls, c=1) -> "EnvelopingElement":
        return cls({(): c})

    @classmethod
    def word(cls, *gens: Gen, coeff=1) -> "EnvelopingElement":
        return cls({tuple(gens): coeff})

    def subs(self, bindings: dict) -> "EnvelopingElement":
        return EnvelopingElement({w: c.subs(bindings) for w, c in self.terms.items()})

    def __add__(self, other):
        other = as_enveloping(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return EnvelopingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return EnvelopingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_enveloping(other))

    def __rsub__(self, other):
        return as_enveloping(other) - self

    def __mul__(self, other):
        if isinstance(other, (EnvelopingElement, AlgebraElement, Gen)):
            return word_mul(self, other)
        c = as_scalar(other)
        return EnvelopingElement({w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (AlgebraElement, Gen)):
            return word_mul(other, self)
        c = as_scalar(other)
        return EnvelopingElement({w: c * v for w, v in self.terms.items()})

    def __truediv__(self, c):
        return self * as_scalar(c).inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of an enveloping element")
        out = EnvelopingElement.unit()
        for _ in range(k):
            out = word_mul(out, self)
        return out

    def __eq__(self, other):
        try:
            return self.terms == as_enveloping(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        return format_terms((format_word(w), c) for w, c in self.items())

    def __repr__(self):
        return f"EnvelopingElement({str(self)!r})"


def _word_key(w):
    return (len(w), [g.sort_key() for g in w])


def format_word(w) -> str:
    parts = []
    for g, run in groupby(w):
        k = len(list(run))
        parts.append(str(g) if k == 1 else f"{g}^{k}")
    return "*".join(parts)


def as_enveloping(x) -> EnvelopingElement:
    if isinstance(x, EnvelopingElement):
        return x
    if isinstance(x, (Gen, AlgebraElement)):
        return EnvelopingElement(x)
    return EnvelopingElement.unit(as_scalar(x))


def word_mul(u, v) -> EnvelopingElement:
    """Bilinear concatenation of words; the empty word is the unit."""
    u, v = as_enveloping(u), as_enveloping(v)
    out: dict = {}
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            w = wu + wv
            out[w] = out.get(w, ZERO) + cu * cv
    return EnvelopingElement(out)


def poly_in(x: Gen, coeffs) -> EnvelopingElement:
    """``sum_k coeffs[k] * x^k`` as an enveloping element (x^0 is the unit)."""
    return EnvelopingElement({(x,) * k: c for k, c in enumerate(coeffs) if c})

