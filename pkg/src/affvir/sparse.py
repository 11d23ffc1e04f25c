"""Sparse multivariate polynomials as plain dicts.

A polynomial is a ``dict`` mapping exponent tuples (all of one length) to
nonzero rational coefficients (``int`` or ``Fraction``).  Exponents may be
negative, so the same routines serve Laurent polynomials; the gcd and
exact-division routines require nonnegative exponents.

Monomial order everywhere is graded lexicographic: total degree first, then
the exponent tuple compared left to right.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import isqrt

Poly = dict


def grlex_key(e):
    return (sum(e), e)


def zero_exp(n: int) -> tuple:
    return (0,) * n


def const(c, n: int) -> dict:
    return {zero_exp(n): c} if c else {}


def lead(p: dict) -> tuple:
    return max(p, key=grlex_key)


def add(p: dict, q: dict) -> dict:
    if len(p) < len(q):
        p, q = q, p
    r = dict(p)
    for e, c in q.items():
        v = r.get(e)
        if v is None:
            r[e] = c
        else:
            v += c
            if v:
                r[e] = v
            else:
                del r[e]
    return r


def sub(p: dict, q: dict) -> dict:
    r = dict(p)
    for e, c in q.items():
        v = r.get(e)
        if v is None:
            r[e] = -c
        else:
            v -= c
            if v:
                r[e] = v
            else:
                del r[e]
    return r


def iadd_scaled(r: dict, q: dict, c) -> None:
    """In place ``r += c*q``."""
    for e, v in q.items():
        w = r.get(e)
        if w is None:
            r[e] = c * v
        else:
            w += c * v
            if w:
                r[e] = w
            else:
                del r[e]


def neg(p: dict) -> dict:
    return {e: -c for e, c in p.items()}


def scale(p: dict, c) -> dict:
    if not c:
        return {}
    if c == 1:
        return p
    return {e: c * v for e, v in p.items()}


def mul(p: dict, q: dict) -> dict:
    if len(p) < len(q):
        p, q = q, p
    if len(q) == 1:
        (f, c), = q.items()
        return monomul(p, f, c)
    r: dict = {}
    get = r.get
    for f, c in q.items():
        for e, v in p.items():
            k = tuple([a + b for a, b in zip(e, f)])
            w = get(k)
            if w is None:
                r[k] = c * v
            else:
                r[k] = w + c * v
    return {e: c for e, c in r.items() if c}


def monomul(p: dict, f: tuple, c=1) -> dict:
    """Multiply by ``c * x^f``."""
    if not any(f):
        return scale(p, c)
    return {tuple([a + b for a, b in zip(e, f)]): c * v for e, v in p.items()}


def power(p: dict, k: int, n: int) -> dict:
    result = const(1, n)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def mindeg(p: dict) -> tuple:
    it = iter(p)
    m = list(next(it))
    for e in it:
        for i, a in enumerate(e):
            if a < m[i]:
                m[i] = a
    return tuple(m)


def is_const(p: dict) -> bool:
    return not p or (len(p) == 1 and not any(next(iter(p))))


def variables(p: dict) -> set:
    vs = set()
    for e in p:
        for i, a in enumerate(e):
            if a:
                vs.add(i)
    return vs


def degree_in(p: dict, v: int) -> int:
    return max(e[v] for e in p)


def coeffs_in(p: dict, v: int) -> dict:
    """Split ``p`` by the exponent of variable ``v``."""
    out: dict = {}
    for e, c in p.items():
        k = e[v]
        if k:
            e = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[e] = c
    return out


def coeff_in(p: dict, v: int, k: int) -> dict:
    return {e[:v] + (0,) + e[v + 1:]: c for e, c in p.items() if e[v] == k}


def content(p: dict) -> Fraction:
    """Rational content, signed so that ``p / content`` has positive lead."""
    num = 0
    den = 1
    for c in p.values():
        c = Fraction(c)
        num = igcd(num, c.numerator)
        den = den * c.denominator // igcd(den, c.denominator)
    cont = Fraction(num, den)
    return -cont if p[lead(p)] < 0 else cont


def primitive(p: dict) -> dict:
    """Integer coefficients, gcd 1, positive leading coefficient."""
    if not p:
        return p
    c = content(p)
    if c == 1:
        return p
    return {e: _intify(v / c) for e, v in p.items()}


def _intify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def divexact(p: dict, d: dict) -> dict:
    """Quotient ``p / d``; raises ``ArithmeticError`` if it is not exact."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(d) == 1:
        (f, c), = d.items()
        out = {}
        for e, v in p.items():
            m = tuple([a - b for a, b in zip(e, f)])
            if min(m, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            out[m] = _div(v, c)
        return out
    r = dict(p)
    q: dict = {}
    ld = lead(d)
    lc = d[ld]
    while r:
        lr = lead(r)
        m = tuple([a - b for a, b in zip(lr, ld)])
        if min(m) < 0:
            raise ArithmeticError("inexact polynomial division")
        c = _div(r[lr], lc)
        q[m] = c
        iadd_scaled(r, monomul(d, m), -c)
    return q


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _intify(Fraction(a) / b)


def shift_exps(p: dict, f: tuple) -> dict:
    return {tuple([a + b for a, b in zip(e, f)]): c for e, c in p.items()}


# -- gcd ------------------------------------------------------------------

def gcd(p: dict, q: dict) -> dict:
    """Canonical gcd of two polynomials with nonnegative exponents.

    The result is primitive with positive leading coefficient (the unit
    ambiguity over Q is fixed that way).  Uses recursive content extraction
    and a primitive polynomial remainder sequence in the first shared
    variable.
    """
    if not p:
        return primitive(q)
    if not q:
        return primitive(p)
    n = len(next(iter(p)))
    mp, mq = mindeg(p), mindeg(q)
    mono = tuple(map(min, mp, mq))
    if len(p) == 1 or len(q) == 1:
        return {mono: 1}
    p = shift_exps(p, tuple(-a for a in mp)) if any(mp) else p
    q = shift_exps(q, tuple(-a for a in mq)) if any(mq) else q
    g = _gcd_nomono(primitive(p), primitive(q), n)
    return monomul(g, mono) if any(mono) else g


def _gcd_nomono(p: dict, q: dict, n: int) -> dict:
    one = {zero_exp(n): 1}
    if len(p) == 1 or len(q) == 1:
        # without monomial content a single term is a constant
        return one
    if p == q:
        return p
    vp, vq = variables(p), variables(q)
    only = vp - vq
    if only:
        return _gcd_fold(q, coeffs_in(p, min(only)).values(), n)
    only = vq - vp
    if only:
        return _gcd_fold(p, coeffs_in(q, min(only)).values(), n)
    if _certified_coprime(p, q, vp & vq):
        return one
    v = min(vp, key=lambda x: (max(degree_in(p, x), degree_in(q, x)), x))
    cp = content_in(p, v, n)
    cq = content_in(q, v, n)
    c = gcd(cp, cq)
    a = divexact(p, cp) if not is_const(cp) else p
    b = divexact(q, cq) if not is_const(cq) else q
    if degree_in(a, v) < degree_in(b, v):
        a, b = b, a
    while True:
        r = prem(a, b, v)
        if not r:
            g = b
            break
        if degree_in(r, v) == 0:
            g = one
            break
        a, b = b, primpart_in(r, v, n)
    return primitive(mul(c, primitive(g)))


_POINTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _image(p: dict, v: int, point) -> list:
    """Dense univariate image of ``p`` in ``v`` after evaluating the others."""
    out: dict = {}
    for e, c in p.items():
        val = Fraction(c)
        for k, (a, x) in enumerate(zip(e, point)):
            if k != v and a:
                val *= x ** a
        out[e[v]] = out.get(e[v], 0) + val
    deg = max((k for k, c in out.items() if c), default=-1)
    return [out.get(k, 0) for k in range(deg + 1)]


_PRIME = 2 ** 61 - 1


def _modp(a: list) -> list | None:
    """Reduce rational coefficients mod a large prime (None if a denominator vanishes)."""
    out = []
    for c in a:
        c = Fraction(c)
        if c.denominator % _PRIME == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, _PRIME) % _PRIME)
    while out and not out[-1]:
        out.pop()
    return out


def _uni_gcd_degree(a: list, b: list) -> int | None:
    """Degree of gcd(a, b) modulo a large prime, an upper bound for the degree over Q.

    The bound holds when the prime keeps the degree of a; otherwise None.
    """
    x, y = _modp(a), _modp(b)
    if x is None or y is None or len(x) != len(a):
        return None
    P = _PRIME

    def rem(x, y):
        x = list(x)
        inv = pow(y[-1], -1, P)
        while len(x) >= len(y) and x:
            c = x[-1] * inv % P
            off = len(x) - len(y)
            for i, yc in enumerate(y):
                x[off + i] = (x[off + i] - c * yc) % P
            while x and not x[-1]:
                x.pop()
        return x
    while y:
        x, y = y, rem(x, y)
    return len(x) - 1


def _certified_coprime(p: dict, q: dict, shared) -> bool:
    """Prove gcd(p, q) = 1 through univariate images.

    If G divides p and q and the leading coefficient of p in ``v`` does not
    vanish at the point, the image of G keeps its degree in ``v`` and divides
    both images.  An image gcd of degree 0 therefore bounds deg_v G by 0.
    Returns False when some variable could not be certified.
    """
    n = len(next(iter(p)))
    for v in sorted(shared):
        done = False
        for attempt in range(3):
            point = [_POINTS[(k * 3 + attempt * 5 + v) % len(_POINTS)] for k in range(n)]
            dp = degree_in(p, v)
            lc = {e: c for e, c in p.items() if e[v] == dp}
            if not _image(lc, v, point):
                continue
            ip, iq = _image(p, v, point), _image(q, v, point)
            if not iq:
                continue
            deg = _uni_gcd_degree(ip, iq)
            if deg is None:
                continue
            done = deg == 0
            break
        if not done:
            return False
    return True


def _gcd_fold(g: dict, polys, n: int) -> dict:
    for c in polys:
        g = gcd(g, c)
        if is_const(g):
            return {zero_exp(n): 1}
    return g


def content_in(p: dict, v: int, n: int) -> dict:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    parts = sorted(coeffs_in(p, v).values(), key=len)
    g = primitive(parts[0])
    return _gcd_fold(g, parts[1:], n)


def primpart_in(p: dict, v: int, n: int) -> dict:
    c = content_in(p, v, n)
    if not is_const(c):
        p = divexact(p, c)
    return primitive(p)


def prem(a: dict, b: dict, v: int) -> dict:
    """Pseudo-remainder of ``a`` by ``b`` in variable ``v``."""
    db = degree_in(b, v)
    lb = coeff_in(b, v, db)
    n = len(next(iter(b)))
    r = a
    while r:
        dr = degree_in(r, v)
        if dr < db:
            break
        lr = coeff_in(r, v, dr)
        step = [0] * n
        step[v] = dr - db
        r = sub(mul(lb, r), mul(monomul(lr, tuple(step)), b))
    return r


# -- square roots -----------------------------------------------------------

def fraction_sqrt(c) -> Fraction | None:
    c = Fraction(c)
    if c < 0:
        return None
    a, b = isqrt(c.numerator), isqrt(c.denominator)
    if a * a == c.numerator and b * b == c.denominator:
        return Fraction(a, b)
    return None


def sqrt(p: dict) -> dict | None:
    """Exact square root of a (Laurent) polynomial, or ``None``.

    The root's positive-lead branch is returned.
    """
    if not p:
        return {}
    lt = lead(p)
    if any(a % 2 for a in lt):
        return None
    rc = fraction_sqrt(p[lt])
    if rc is None:
        return None
    half = tuple(a // 2 for a in lt)
    low = mindeg(p)
    low_total = min(sum(e) for e in p)
    q = {half: rc}
    r = sub(p, mul(q, q))
    two_lead = 2 * rc
    while r:
        lr = lead(r)
        m = tuple([a - b for a, b in zip(lr, half)])
        if 2 * sum(m) < low_total or any(2 * a < b for a, b in zip(m, low)):
            return None
        if grlex_key(m) >= grlex_key(half):
            return None
        c = Fraction(r[lr]) / two_lead
        # r -= 2*c*x^m*q + (c*x^m)^2
        term = {m: c}
        iadd_scaled(r, mul(term, add(scale(q, 2), term)), -1)
        q[m] = c
    return q


# -- printing -------------------------------------------------------------

def fmt_coeff(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def fmt_monomial(e: tuple, names) -> str:
    parts = []
    for a, name in zip(e, names):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def fmt_poly(p: dict, names, key=grlex_key) -> str:
    """Human-readable polynomial, terms in descending order."""
    if not p:
        return "0"
    out = []
    for e in sorted(p, key=key, reverse=True):
        c = Fraction(p[e])
        mono = fmt_monomial(e, names)
        negative = c < 0
        a = -c if negative else c
        if not mono:
            body = fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{fmt_coeff(a)}*{mono}"
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)
