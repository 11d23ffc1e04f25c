"""The modules Omega, Delta, Theta on C[s, t].

For a generator of index ``i`` every action has the shape::

    x_i . g(s, t) = lambda^i * F_x(s, t) * g(s - i, t + c_x)

with ``c_e = -2``, ``c_f = +2``, ``c_h = c_d = 0`` and the family-specific
factor ``F_x``:

    ========  ===============================  ===============================
    family    F_e                              F_f
    ========  ===============================  ===============================
    Omega     alpha                            -(t/2 - beta)(t/2 + beta + 1)/alpha
    Delta     -(t/2 + beta)(t/2 - beta - 1)/alpha   alpha
    Theta     alpha (t/2 + beta)               -(t/2 - beta)/alpha
    ========  ===============================  ===============================

and ``F_h = t``, ``F_d = s + i*gamma``; ``c`` acts as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from . import sparse
from .liealg import (AlgebraElement, EnvelopingElement, Gen, as_enveloping, basis,
                     bracket_gens)
from .report import Record, Report
from .scalars import (NP, ONE, PARAMS, ZERO, Scalar, UniPoly, _normalize, as_scalar,
                      format_terms)

_Z4 = (0,) * NP
_ONE4 = {_Z4: 1}


def _lift(p4: dict, j: int = 0, k: int = 0) -> dict:
    return {(j, k) + e: c for e, c in p4.items()}


def _groups(n: dict) -> dict:
    """Split a flat numerator into {(j, k): parameter polynomial}."""
    out: dict = {}
    for e, c in n.items():
        out.setdefault(e[:2], {})[e[2:]] = c
    return out


def _normalize_flat(n: dict, d: dict) -> tuple[dict, dict]:
    if not n:
        return {}, _ONE4
    if len(d) == 1:
        (e, c), = d.items()
        if any(e) or c != 1:
            inv = (0, 0) + tuple(-a for a in e)
            n = {tuple(x + y for x, y in zip(k, inv)): v / Fraction(c) if c != 1 else v
                 for k, v in n.items()}
        return n, _ONE4
    md = sparse.mindeg(d)
    if any(md):
        d = sparse.shift_exps(d, tuple(-a for a in md))
        n = sparse.shift_exps(n, (0, 0) + tuple(-a for a in md))
        if len(d) == 1:
            return _normalize_flat(n, d)
    g = d
    for part in _groups(n).values():
        m = sparse.mindeg(part)
        if any(m):
            part = sparse.shift_exps(part, tuple(-a for a in m))
        g = sparse.gcd(g, part)
        if sparse.is_const(g):
            break
    if not sparse.is_const(g):
        d = sparse.divexact(d, g)
        low = sparse.mindeg(n)
        back = (0, 0) + tuple(low[2:])
        n0 = sparse.shift_exps(n, (0, 0) + tuple(-a for a in low[2:]))
        n = sparse.shift_exps(sparse.divexact(n0, _lift(g)), back)
        if len(d) == 1:
            return _normalize_flat(n, d)
    c = sparse.content(d)
    if c != 1:
        d = {e: sparse._intify(v / c) for e, v in d.items()}
        n = sparse.scale(n, 1 / c)
    return n, d


class SPoly:
    """Polynomial in s, t with Scalar coefficients.

    Stored as one numerator over (s, t, L, A, B, G), Laurent in the
    parameters, and a common parameter denominator in the same normal form
    as :class:`Scalar`.  ``terms`` gives the ``{(deg_s, deg_t): Scalar}`` view.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            n, d = {}, _ONE4
        elif isinstance(terms, SPoly):
            n, d = terms._n, terms._d
        elif isinstance(terms, dict):
            n, d = _from_terms(terms)
        else:
            c = as_scalar(terms)
            n, d = _lift(c._n), c._d
        self._n, self._d, self._hash = n, d, None

    @classmethod
    def _raw(cls, n: dict, d: dict = _ONE4) -> "SPoly":
        p = object.__new__(cls)
        p._n, p._d, p._hash = n, d, None
        return p

    @classmethod
    def _make(cls, n: dict, d: dict) -> "SPoly":
        if len(d) == 1 and d.get(_Z4) == 1:
            return cls._raw(n, _ONE4)
        return cls._raw(*_normalize_flat(n, d))

    @classmethod
    def s(cls) -> "SPoly":
        return cls._raw({(1, 0) + _Z4: 1})

    @classmethod
    def t(cls) -> "SPoly":
        return cls._raw({(0, 1) + _Z4: 1})

    @classmethod
    def monomial(cls, j: int, k: int, c=1) -> "SPoly":
        c = as_scalar(c)
        return cls._raw(_lift(c._n, j, k), c._d)

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "SPoly":
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    # -- views --------------------------------------------------------------
    @property
    def terms(self) -> dict:
        out = {}
        for jk, part in _groups(self._n).items():
            out[jk] = Scalar._raw(*_normalize(part, self._d))
        return out

    def coeff(self, j: int, k: int) -> Scalar:
        part = {e[2:]: c for e, c in self._n.items() if e[0] == j and e[1] == k}
        return Scalar._raw(*_normalize(part, self._d)) if part else ZERO

    def is_zero(self) -> bool:
        return not self._n

    def __bool__(self):
        return bool(self._n)

    @property
    def degree_s(self) -> int:
        return max((e[0] for e in self._n), default=-1)

    @property
    def degree_t(self) -> int:
        return max((e[1] for e in self._n), default=-1)

    def is_t_only(self) -> bool:
        return all(e[0] == 0 for e in self._n)

    def s_coeffs(self) -> dict:
        """{j: UniPoly in t} with ``self = sum_j s^j * coeffs[j]``."""
        by_j: dict = {}
        for (j, k), c in self.terms.items():
            by_j.setdefault(j, {})[k] = c
        return {j: UniPoly([ks.get(k, ZERO) for k in range(max(ks) + 1)])
                for j, ks in sorted(by_j.items())}

    def to_unipoly(self) -> UniPoly:
        if not self.is_t_only():
            raise ValueError(f"{self} depends on s")
        return self.s_coeffs().get(0, UniPoly())

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _as_spoly(other)
        if o is NotImplemented:
            return o
        if not o._n:
            return self
        if not self._n:
            return o
        if self._d == o._d:
            return SPoly._make(sparse.add(self._n, o._n), self._d)
        g = sparse.gcd(self._d, o._d)
        a = sparse.divexact(o._d, g)
        b = sparse.divexact(self._d, g)
        n = sparse.add(sparse.mul(self._n, _lift(a)), sparse.mul(o._n, _lift(b)))
        return SPoly._make(n, sparse.mul(self._d, a))

    __radd__ = __add__

    def __neg__(self):
        return SPoly._raw(sparse.neg(self._n), self._d)

    def __sub__(self, other):
        o = _as_spoly(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _as_spoly(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return SPoly._raw(sparse.scale(self._n, other), self._d) if other else SPoly()
        o = _as_spoly(other)
        if o is NotImplemented:
            return o
        if not o._n or not self._n:
            return SPoly()
        n = sparse.mul(self._n, o._n)
        if len(self._d) == 1 and len(o._d) == 1:
            return SPoly._raw(n)
        return SPoly._make(n, sparse.mul(self._d, o._d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_scalar(other).inverse()
        return self * c

    def __pow__(self, k: int):
        out = SPoly(ONE)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = _as_spoly(other)
        if o is NotImplemented:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._n.items()), frozenset(self._d.items())))
        return self._hash

    def shifted(self, ds: int, dt: int) -> "SPoly":
        """``g(s + ds, t + dt)`` by binomial expansion."""
        if not ds and not dt:
            return self
        out: dict = {}
        get = out.get
        for e, c in self._n.items():
            rest = e[2:]
            for (a, b), m in _shift_table(e[0], e[1], ds, dt):
                key = (a, b) + rest
                v = get(key)
                out[key] = c * m if v is None else v + c * m
        return SPoly._raw({k: v for k, v in out.items() if v}, self._d)

    def subs(self, bindings: dict) -> "SPoly":
        """Substitute values for the parameters L, A, B, G."""
        return sum((SPoly.monomial(j, k, c.subs(bindings)) for (j, k), c in self.terms.items()),
                   SPoly())

    def __call__(self, s, t) -> Scalar:
        s, t = as_scalar(s), as_scalar(t)
        return sum((c * s ** j * t ** k for (j, k), c in self.terms.items()), ZERO)

    def format(self, names=("s", "t")) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]),
                       reverse=True)
        return format_terms((sparse.fmt_monomial(jk, names), c) for jk, c in items)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SPoly({str(self)!r})"


def _from_terms(terms: dict) -> tuple[dict, dict]:
    items = [(jk, as_scalar(c)) for jk, c in terms.items()]
    items = [(jk, c) for jk, c in items if c]
    den = _ONE4
    for _, c in items:
        if len(c._d) > 1 and c._d != den:
            g = sparse.gcd(den, c._d)
            den = sparse.mul(den, sparse.divexact(c._d, g))
    n: dict = {}
    for (j, k), c in items:
        part = c._n if len(den) == 1 else sparse.mul(c._n, sparse.divexact(den, c._d))
        sparse.iadd_scaled(n, _lift(part, j, k), 1)
    return _normalize_flat(n, den) if len(den) > 1 else (n, _ONE4)


def _as_spoly(x):
    if isinstance(x, SPoly):
        return x
    if isinstance(x, UniPoly):
        return SPoly.from_unipoly(x)
    try:
        c = as_scalar(x)
    except TypeError:
        return NotImplemented
    return SPoly._raw(_lift(c._n), c._d)


@lru_cache(maxsize=None)
def _shift_table(j: int, k: int, ds: int, dt: int) -> tuple:
    out = []
    for a in range(j + 1):
        ca = comb(j, a) * ds ** (j - a)
        if not ca:
            continue
        for b in range(k + 1):
            cb = comb(k, b) * dt ** (k - b)
            if cb:
                out.append(((a, b), ca * cb))
    return tuple(out)


# -- module specifications -----------------------------------------------------

class Family(str, Enum):
    OMEGA = "Omega"
    DELTA = "Delta"
    THETA = "Theta"

    def __str__(self):
        return self.value


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSpec:
    """A family tag with parameters (lambda, alpha nonzero).

    For Omega and Delta the action sees beta only through beta*(beta + 1);
    such a module may be given by that product alone (``beta=None,
    beta_product=q``) when beta itself is not in the coefficient field.
    """

    family: Family
    lam: Scalar
    alpha: Scalar
    beta: Scalar | None
    gamma: Scalar
    beta_product: Scalar | None = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        for name in ("lam", "alpha", "gamma"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.lam or not self.alpha:
            raise InvalidParameters("lambda and alpha must be nonzero")
        if self.beta is not None:
            b = as_scalar(self.beta)
            object.__setattr__(self, "beta", b)
            object.__setattr__(self, "beta_product", None)
        elif self.beta_product is None or fam is Family.THETA:
            raise InvalidParameters("beta is required (Theta needs beta itself)")
        else:
            object.__setattr__(self, "beta_product", as_scalar(self.beta_product))

    @classmethod
    def symbolic(cls, family) -> "ModuleSpec":
        return cls(family, Scalar.param("L"), Scalar.param("A"), Scalar.param("B"),
                   Scalar.param("G"))

    @property
    def params(self) -> tuple:
        return (self.lam, self.alpha, self.beta, self.gamma)

    def subs(self, bindings: dict) -> "ModuleSpec":
        sub = lambda x: None if x is None else x.subs(bindings)  # noqa: E731
        return ModuleSpec(self.family, sub(self.lam), sub(self.alpha), sub(self.beta),
                          sub(self.gamma), sub(self.beta_product))

    def with_beta(self, beta) -> "ModuleSpec":
        return ModuleSpec(self.family, self.lam, self.alpha, beta, self.gamma)

    def beta_text(self) -> str:
        if self.beta is not None:
            return str(self.beta)
        return f"root of b^2 + b = {self.beta_product}"

    def __str__(self):
        return f"{self.family}({self.lam}, {self.alpha}, {self.beta_text()}, {self.gamma})"


def _half_t_plus(c: Scalar) -> SPoly:
    """t/2 + c"""
    return SPoly._raw({(0, 1) + _Z4: Fraction(1, 2)}) + c


@lru_cache(maxsize=4096)
def _base_factor(spec: ModuleSpec, kind: str) -> SPoly:
    """Index-independent part of the factor for e and f."""
    a, b = spec.alpha, spec.beta
    ainv = a.inverse()
    fam = spec.family
    if fam is Family.THETA:
        if kind == "e":
            return _half_t_plus(b) * a
        return _half_t_plus(-b) * (-ainv)
    if b is not None:
        quad_pos = _half_t_plus(-b) * _half_t_plus(b + 1)   # (t/2 - b)(t/2 + b + 1)
        quad_neg = _half_t_plus(b) * _half_t_plus(-b - 1)   # (t/2 + b)(t/2 - b - 1)
    else:
        q = spec.beta_product
        t = SPoly.t()
        quad_pos = t * t * Fraction(1, 4) + t * Fraction(1, 2) - q
        quad_neg = t * t * Fraction(1, 4) - t * Fraction(1, 2) - q
    if fam is Family.OMEGA:
        return SPoly(a) if kind == "e" else quad_pos * (-ainv)
    return quad_neg * (-ainv) if kind == "e" else SPoly(a)


_T_SHIFT = {"e": -2, "f": 2, "h": 0, "d": 0}


@lru_cache(maxsize=65536)
def factor(spec: ModuleSpec, x: Gen) -> SPoly:
    """``lambda^i * F_x`` for the generator ``x`` of index ``i``."""
    i = x.index
    li = spec.lam ** i
    if x.kind == "h":
        return SPoly.t() * li
    if x.kind == "d":
        return (SPoly.s() + spec.gamma * i) * li
    return _base_factor(spec, x.kind) * li


def act_gen(spec: ModuleSpec, x: Gen, g: SPoly) -> SPoly:
    """Action of one basis symbol."""
    if x.kind == "c" or not g:
        return SPoly()
    return factor(spec, x) * g.shifted(-x.index, _T_SHIFT[x.kind])


def act_elem(spec: ModuleSpec, x, g: SPoly) -> SPoly:
    """Action of an algebra element (linear extension)."""
    if isinstance(x, Gen):
        return act_gen(spec, x, g)
    out = SPoly()
    for gen, c in x.terms.items():
        if gen.kind != "c":
            out = out + act_gen(spec, gen, g) * c
    return out


def act_word(spec: ModuleSpec, u, g: SPoly) -> SPoly:
    """Action of an enveloping element; words act right to left.

    Words are grouped by common suffix so shared tails are applied once.
    """
    u = as_enveloping(u)
    return _act_suffix(spec, list(u.terms.items()), g)


def _act_suffix(spec, items, g):
    out = SPoly()
    groups: dict = {}
    for w, c in items:
        if w:
            groups.setdefault(w[-1], []).append((w[:-1], c))
        else:
            out = out + g * c
    for x in sorted(groups):
        xg = act_gen(spec, x, g)
        if xg:
            out = out + _act_suffix(spec, groups[x], xg)
    return out


def inverse_act(spec: ModuleSpec, x: Gen, g: SPoly) -> SPoly:
    """Two-sided inverse of ``x`` where it acts bijectively (Omega e_i, Delta f_i)."""
    bij = {Family.OMEGA: "e", Family.DELTA: "f"}.get(spec.family)
    if x.kind != bij:
        raise ValueError(f"{x} does not act bijectively on {spec}")
    unit = spec.lam ** x.index * spec.alpha
    return g.shifted(x.index, -_T_SHIFT[x.kind]) * unit.inverse()


def monomials(degree: int) -> list[SPoly]:
    return [SPoly.monomial(j, k) for j in range(degree + 1) for k in range(degree + 1)]


def check_module_axiom(spec: ModuleSpec, window: int, degree: int,
                       max_failures: int = 10) -> Report:
    """x.(y.g) - y.(x.g) == [x, y].g for basis pairs and monomials s^j t^k."""
    rep = Report(f"module-axiom {spec} window={window} degree={degree}")
    gens = basis(window)
    monos = [(j, k) for j in range(degree + 1) for k in range(degree + 1)]
    single: dict = {}

    def one(x, jk):
        key = (x, jk)
        r = single.get(key)
        if r is None:
            r = single[key] = act_gen(spec, x, SPoly.monomial(*jk))
        return r

    for x, y in product(gens, repeat=2):
        br = bracket_gens(x, y)
        for jk in monos:
            rep.checked += 1
            lhs = act_gen(spec, x, one(y, jk)) - act_gen(spec, y, one(x, jk))
            rhs = SPoly()
            for z, c in br.terms.items():
                if z.kind != "c":
                    rhs = rhs + one(z, jk) * c
            diff = lhs - rhs
            if diff:
                g = SPoly.monomial(*jk)
                rep.add(Record("module-axiom", f"{x}, {y}; g={g}", str(rhs), str(lhs)))
                if len(rep.failures) >= max_failures:
                    return rep
    return rep
