"""Exact scalars: the rational function field Q(L, A, B, G).

The four parameters of a module are the symbols ``L`` (lambda), ``A``
(alpha), ``B`` (beta) and ``G`` (gamma).  Instantiated computations simply
use constant scalars; there is no separate numeric type.

Normal form of a :class:`Scalar` is ``num / den`` where

* ``num`` is a Laurent polynomial (monomial denominators such as ``1/A`` or
  ``L^-3`` are folded into negative exponents, so the common unit factors
  never trigger a gcd),
* ``den`` is a polynomial with no monomial factor, integer coefficients of
  gcd 1 and positive leading coefficient (graded lex, L > A > B > G),
* ``gcd(num, den) = 1``.

Two scalars are equal iff their normal forms are identical.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import sparse

PARAMS = ("L", "A", "B", "G")
NP = len(PARAMS)
_Z = (0,) * NP
_ONE = {_Z: 1}


class DivisionByZero(ZeroDivisionError):
    pass


class NotCoprime(ArithmeticError):
    pass


def _param_index(name) -> int:
    if isinstance(name, int):
        return name
    try:
        return PARAMS.index(name)
    except ValueError:
        raise KeyError(f"unknown parameter {name!r}") from None


class ParamPoly:
    """Laurent polynomial in L, A, B, G with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def param(cls, name) -> "ParamPoly":
        e = [0] * NP
        e[_param_index(name)] = 1
        return cls({tuple(e): 1})

    def __add__(self, other):
        return ParamPoly(sparse.add(self.terms, _pp(other).terms))

    __radd__ = __add__

    def __sub__(self, other):
        return ParamPoly(sparse.sub(self.terms, _pp(other).terms))

    def __rsub__(self, other):
        return _pp(other) - self

    def __neg__(self):
        return ParamPoly(sparse.neg(self.terms))

    def __mul__(self, other):
        return ParamPoly(sparse.mul(self.terms, _pp(other).terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return ParamPoly({tuple(a * k for a in e): Fraction(c) ** k})
        return ParamPoly(sparse.power(self.terms, k, NP))

    def __eq__(self, other):
        if isinstance(other, (int, Rational, ParamPoly)):
            return self.terms == _pp(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return sparse.fmt_poly(self.terms, PARAMS)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"

    def gcd(self, other: "ParamPoly") -> "ParamPoly":
        """Canonical gcd (nonnegative exponents required)."""
        return ParamPoly(sparse.gcd(self.terms, other.terms))


def _pp(x) -> ParamPoly:
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, (int, Rational)):
        return ParamPoly(sparse.const(x, NP))
    raise TypeError(f"cannot use {type(x).__name__} as a ParamPoly")


def _normalize(n: dict, d: dict) -> tuple[dict, dict]:
    """Bring ``n/d`` (both Laurent) to normal form."""
    if not d:
        raise DivisionByZero("division by the zero scalar")
    if not n:
        return {}, _ONE
    md = sparse.mindeg(d)
    if any(md):
        inv = tuple(-a for a in md)
        d = sparse.shift_exps(d, inv)
        n = sparse.shift_exps(n, inv)
    if len(d) == 1:
        c = d[_Z]
        return (n if c == 1 else sparse.scale(n, Fraction(1) / c)), _ONE
    mn = sparse.mindeg(n)
    if any(mn):
        n = sparse.shift_exps(n, tuple(-a for a in mn))
    g = sparse.gcd(n, d)
    if not sparse.is_const(g):
        n = sparse.divexact(n, g)
        d = sparse.divexact(d, g)
    if any(mn):
        n = sparse.shift_exps(n, mn)
    if len(d) == 1:
        c = d[_Z]
        return (n if c == 1 else sparse.scale(n, Fraction(1) / c)), _ONE
    c = sparse.content(d)
    if c != 1:
        d = {e: sparse._intify(v / c) for e, v in d.items()}
        n = sparse.scale(n, 1 / c)
    return n, d


class Scalar:
    """Element of Q(L, A, B, G) in canonical normal form."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._n, self._d = value._n, value._d
        elif isinstance(value, ParamPoly):
            self._n, self._d = value.terms, _ONE
        elif isinstance(value, int):
            self._n, self._d = sparse.const(value, NP), _ONE
        elif isinstance(value, Rational):
            self._n, self._d = sparse.const(sparse._intify(Fraction(value)), NP), _ONE
        elif isinstance(value, str):
            from .parsing import parse_scalar

            s = parse_scalar(value)
            self._n, self._d = s._n, s._d
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, n: dict, d: dict = _ONE) -> "Scalar":
        s = object.__new__(cls)
        s._n, s._d, s._hash = n, d, None
        return s

    @classmethod
    def fraction(cls, num: ParamPoly, den: ParamPoly) -> "Scalar":
        return cls._raw(*_normalize(_pp(num).terms, _pp(den).terms))

    @classmethod
    def param(cls, name) -> "Scalar":
        return cls(ParamPoly.param(name))

    # -- views ------------------------------------------------------------
    @property
    def numerator(self) -> ParamPoly:
        return ParamPoly(self._n)

    @property
    def denominator(self) -> ParamPoly:
        return ParamPoly(self._d)

    def is_zero(self) -> bool:
        return not self._n

    def __bool__(self):
        return bool(self._n)

    def is_constant(self) -> bool:
        return len(self._d) == 1 and sparse.is_const(self._n)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._n.get(_Z, 0))

    def free_params(self) -> set[str]:
        vs = sparse.variables(self._n) | sparse.variables(self._d)
        return {PARAMS[i] for i in sorted(vs)}

    def is_monomial(self) -> bool:
        """True for units of the Laurent ring: ``c * L^a A^b B^c G^d``."""
        return len(self._n) == 1 and len(self._d) == 1

    def lead_is_negative(self) -> bool:
        return bool(self._n) and self._n[sparse.lead(self._n)] < 0

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o._n:
            return self
        if not self._n:
            return o
        if len(self._d) == 1 and len(o._d) == 1:
            return Scalar._raw(sparse.add(self._n, o._n))
        if self._d == o._d:
            return Scalar._raw(*_normalize(sparse.add(self._n, o._n), self._d))
        g = sparse.gcd(self._d, o._d)
        a = sparse.divexact(o._d, g)
        b = sparse.divexact(self._d, g)
        n = sparse.add(sparse.mul(self._n, a), sparse.mul(o._n, b))
        return Scalar._raw(*_normalize(n, sparse.mul(self._d, a)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(sparse.neg(self._n), self._d)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return Scalar._raw(sparse.scale(self._n, other), self._d)
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o._n or not self._n:
            return ZERO
        if len(self._d) == 1 and len(o._d) == 1:
            return Scalar._raw(sparse.mul(self._n, o._n))
        return Scalar._raw(*_normalize(sparse.mul(self._n, o._n), sparse.mul(self._d, o._d)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._n:
            raise DivisionByZero("inverse of the zero scalar")
        if len(self._n) == 1:
            (e, c), = self._n.items()
            inv = tuple(-a for a in e)
            n = sparse.shift_exps(self._d, inv)
            return Scalar._raw(n if c == 1 else sparse.scale(n, Fraction(1) / c)) if len(self._d) == 1 \
                else Scalar._raw(*_normalize(self._d, self._n))
        return Scalar._raw(*_normalize(self._d, self._n))

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if len(self._d) == 1:
            return Scalar._raw(sparse.power(self._n, k, NP))
        return Scalar._raw(sparse.power(self._n, k, NP), sparse.power(self._d, k, NP))

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._n.items()), frozenset(self._d.items())))
        return self._hash

    # -- other operations ---------------------------------------------------
    def subs(self, bindings: dict) -> "Scalar":
        """Substitute scalars for parameters, e.g. ``{"L": 2, "A": Scalar(3)}``."""
        vals = {}
        for k, v in bindings.items():
            vals[_param_index(k)] = v if isinstance(v, Scalar) else Scalar(v)
        num = _eval(self._n, vals)
        den = _eval(self._d, vals)
        if not den:
            raise DivisionByZero(f"denominator of {self} vanishes under {bindings}")
        return num / den

    def sqrt(self) -> "Scalar | None":
        """Exact square root in the field, or ``None`` if there is none."""
        if not self._n:
            return ZERO
        n = sparse.sqrt(self._n)
        if n is None:
            return None
        d = sparse.sqrt(self._d)
        if d is None:
            return None
        return Scalar._raw(*_normalize(n, d))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _eval(p: dict, vals: dict) -> Scalar:
    total = ZERO
    for e, c in p.items():
        term = Scalar(c)
        rest = [0] * NP
        for i, a in enumerate(e):
            if not a:
                continue
            if i in vals:
                term = term * vals[i] ** a
            else:
                rest[i] = a
        if any(rest):
            term = term * Scalar._raw({tuple(rest): 1})
        total = total + term
    return total


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(sparse.const(x, NP))
    if isinstance(x, Rational):
        return Scalar._raw(sparse.const(sparse._intify(Fraction(x)), NP))
    if isinstance(x, ParamPoly):
        return Scalar._raw(x.terms)
    return NotImplemented


def as_scalar(x) -> Scalar:
    s = _coerce(x)
    if s is NotImplemented:
        if isinstance(x, str):
            return Scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


ZERO = Scalar._raw({})
ONE = Scalar._raw(dict(_ONE))
L = Scalar.param("L")
A = Scalar.param("A")
B = Scalar.param("B")
G = Scalar.param("G")


def format_scalar(x: Scalar) -> str:
    """Text form in the shared expression grammar, e.g. ``-1/(4*A)``."""
    n, d = x._n, x._d
    if not n:
        return "0"
    low = sparse.mindeg(n)
    mden = tuple(max(0, -a) for a in low)
    if any(mden):
        n = sparse.shift_exps(n, mden)
    q = 1
    for c in n.values():
        q = q * Fraction(c).denominator // _igcd(q, Fraction(c).denominator)
    if q != 1:
        n = sparse.scale(n, q)
    num = sparse.fmt_poly(n, PARAMS)
    factors = []
    if q != 1:
        factors.append(str(q))
    mono = sparse.fmt_monomial(mden, PARAMS)
    if mono:
        factors.append(mono)
    if len(d) > 1:
        factors.append(f"({sparse.fmt_poly(d, PARAMS)})")
    if not factors:
        return num
    if len(n) > 1:
        num = f"({num})"
    den = "*".join(factors)
    if len(factors) > 1 or ("*" in den and not den.startswith("(")):
        den = f"({den})"
    return f"{num}/{den}"


def _igcd(a, b):
    from math import gcd

    return gcd(a, b)


def _atomic(c: Scalar) -> bool:
    if len(c._n) != 1 or len(c._d) != 1:
        return False
    (e, v), = c._n.items()
    return min(e) >= 0 and Fraction(v).denominator == 1


def format_terms(pairs) -> str:
    """Join ``(monomial_text, Scalar)`` pairs into a signed sum.

    An empty monomial text denotes a constant term.  Non-atomic
    coefficients are parenthesized: ``(1/L)*d[-2]``, ``(B^2 + B)*s``.
    """
    out = []
    for mono, c in pairs:
        if not c:
            continue
        neg = c.lead_is_negative()
        a = -c if neg else c
        text = str(a)
        multi = len(a._n) > 1 and len(a._d) == 1
        if not mono:
            body = f"({text})" if multi else text
        elif a == 1:
            body = mono
        elif _atomic(a):
            body = f"{text}*{mono}"
        else:
            body = f"({text})*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


# -- univariate polynomials over the scalar field -----------------------------

class UniPoly:
    """Dense univariate polynomial (default variable ``t``) with Scalar coefficients.

    ``coeffs[k]`` is the coefficient of ``t^k``; the leading one is nonzero
    unless the polynomial is zero (empty tuple).
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "t") -> "UniPoly":
        return cls([ZERO] * k + [as_scalar(c)], var)

    @classmethod
    def linear(cls, a, b, var: str = "t") -> "UniPoly":
        """``a*t + b``."""
        return cls([b, a], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, Scalar)):
            return self == UniPoly([other], self.var)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = o.coeffs + (ZERO,) * (n - len(o.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = as_scalar(other)
            return UniPoly([c * x for x in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([ONE], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        if not other:
            raise DivisionByZero("division by the zero polynomial")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        q = [ZERO] * (dq + 1)
        inv = other.lc.inverse()
        m = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            c = r[k + m]
            if not c:
                continue
            c = c * inv
            q[k] = c
            for j, y in enumerate(other.coeffs):
                r[k + j] = r[k + j] - c * y
        return UniPoly(q, self.var), UniPoly(r[:m], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * self.lc.inverse()

    def __call__(self, x):
        x = as_scalar(x) if not isinstance(x, UniPoly) else x
        acc = ZERO if not isinstance(x, UniPoly) else UniPoly((), self.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "UniPoly":
        """``p(t + c)``."""
        return self(UniPoly([as_scalar(c), ONE], self.var))

    def content(self) -> Fraction:
        """Rational content for constant-coefficient polynomials (else 1)."""
        if not all(c.is_constant() for c in self.coeffs) or not self.coeffs:
            return Fraction(1)
        vals = {(k,): c.to_fraction() for k, c in enumerate(self.coeffs)}
        return abs(sparse.content(vals))

    def __str__(self):
        pairs = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            mono = "" if k == 0 else self.var if k == 1 else f"{self.var}^{k}"
            pairs.append((mono, self.coeffs[k]))
        return format_terms(pairs)

    def __repr__(self):
        return f"UniPoly({str(self)!r})"


def unipoly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over the scalar field."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    while q:
        p, q = q, p % q
    return p.monic()


_SPECIALIZATIONS = (
    {"L": Fraction(3, 7), "A": Fraction(5, 11), "B": Fraction(7, 13), "G": Fraction(2, 17)},
    {"L": Fraction(-5, 3), "A": Fraction(11, 7), "B": Fraction(-19, 23), "G": Fraction(3, 5)},
    {"L": Fraction(13, 2), "A": Fraction(-7, 9), "B": Fraction(29, 31), "G": Fraction(-1, 3)},
)


def unipoly_coprime(p: UniPoly, q: UniPoly) -> bool:
    """True only when gcd(p, q) = 1 is proved.

    Constant coefficients are decided exactly.  Otherwise the parameters are
    specialized: if the leading coefficient of p survives and the images are
    coprime, any common factor over the field would have survived as well.
    A False answer with symbolic coefficients means "not certified".
    """
    if all(c.is_constant() for c in p.coeffs + q.coeffs):
        return unipoly_gcd(p, q).degree == 0
    for point in _SPECIALIZATIONS:
        try:
            ip = [c.subs(point).to_fraction() for c in p.coeffs]
            iq = [c.subs(point).to_fraction() for c in q.coeffs]
        except ZeroDivisionError:
            continue
        if not ip or not ip[-1] or not any(iq):
            continue
        while not iq[-1]:
            iq.pop()
        if sparse._uni_gcd_degree(ip, iq) == 0:
            return True
    return False


def unipoly_ext_euclid(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Bezout cofactors ``(a, b)`` with ``a*p + b*q == 1``.

    Raises :class:`NotCoprime` unless gcd(p, q) is a nonzero constant.
    """
    var = p.var
    r0, r1 = p, q
    s0, s1 = UniPoly([ONE], var), UniPoly((), var)
    t0, t1 = UniPoly((), var), UniPoly([ONE], var)
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.degree != 0:
        raise NotCoprime(f"gcd is {r0.monic()}, not 1")
    inv = r0.lc.inverse()
    return s0 * inv, t0 * inv
