"""Simplicity, generation of 1, the submodule V, the intertwiner tau, isomorphism.

Conventions for the Theta family: ``2*beta in Z+`` means 2*beta is a
nonnegative integer.  A beta that is not a constant Scalar is treated as a
transcendental, so such a Theta module is simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .liealg import EnvelopingElement, Gen, as_enveloping, basis, e, f, h, poly_in
from .polymodule import (Family, ModuleSpec, SPoly, act_gen, act_word, factor,
                         monomials)
from .report import Record, Report
from .scalars import (ONE, NotCoprime, Scalar, UniPoly, as_scalar, unipoly_coprime,
                      unipoly_ext_euclid)


class StructureError(ArithmeticError):
    pass


class ZeroVector(StructureError):
    pass


class NotSimple(StructureError):
    pass


class SearchExhausted(StructureError):
    pass


class NotInvariant(StructureError):
    def __init__(self, message, generator=None, vector=None):
        super().__init__(message)
        self.generator = generator
        self.vector = vector


class ParameterNotHalfInteger(StructureError):
    pass


# -- simplicity ------------------------------------------------------------------

def two_beta(spec_or_beta) -> int | None:
    """2*beta as a nonnegative integer, or None when it is not one."""
    beta = spec_or_beta.beta if isinstance(spec_or_beta, ModuleSpec) else spec_or_beta
    if beta is None:
        return None
    beta = as_scalar(beta)
    if not beta.is_constant():
        return None
    v = 2 * beta.to_fraction()
    if v.denominator == 1 and v >= 0:
        return int(v)
    return None


def is_simple(spec: ModuleSpec) -> bool:
    """Omega and Delta are always simple; Theta iff 2*beta is not in Z+."""
    if spec.family is not Family.THETA:
        return True
    return two_beta(spec) is None


def simplicity_reason(spec: ModuleSpec) -> str:
    if spec.family is not Family.THETA:
        return f"{spec.family} modules are simple for all parameters"
    b = spec.beta
    if not b.is_constant():
        return "beta is symbolic (treated as transcendental), so 2*beta is not in Z+"
    v = 2 * b.to_fraction()
    tb = two_beta(spec)
    if tb is not None:
        return f"2*beta = {tb} in Z+"
    return f"2*beta = {Scalar(v)} not in Z+"


# -- submodule shapes ------------------------------------------------------------

PRINCIPAL = "Principal"
TWO_GEN = "TwoGen"


@dataclass(frozen=True)
class SubmoduleShape:
    """``C[s,t]*g(t)`` (Principal) or ``C[s,t]*s*g(t) + C[s,t]*t*g(t)`` (TwoGen)."""

    kind: str
    g: UniPoly

    def __post_init__(self):
        if self.kind not in (PRINCIPAL, TWO_GEN):
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if not self.g:
            raise ValueError("the shape generator must be nonzero")

    def contains(self, p: SPoly) -> bool:
        """Exact membership test."""
        p = SPoly(p) if not isinstance(p, SPoly) else p
        if not p:
            return True
        for j, cj in p.s_coeffs().items():
            q, r = divmod(cj, self.g)
            if r:
                return False
            if self.kind == TWO_GEN and j == 0 and q(0):
                return False
        return True

    def basis_vectors(self, degree: int) -> list[SPoly]:
        g = SPoly.from_unipoly(self.g)
        mults = [SPoly(1)] if self.kind == PRINCIPAL else [SPoly.s(), SPoly.t()]
        return [m * g * mono for mono in monomials(degree) for m in mults]

    def __str__(self):
        return f"{self.kind}({format_generator(self.g)})"


def format_generator(g: UniPoly) -> str:
    """Print a rational polynomial with its content pulled out, e.g. ``(t^2 - 1)/4``."""
    if not all(c.is_constant() for c in g.coeffs):
        return str(g)
    vals = [c.to_fraction() for c in g.coeffs]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    num = math.gcd(*ints)
    if ints[-1] < 0:
        num = -num
    prim = UniPoly([Scalar(x // num) for x in ints], g.var)
    c = Fraction(num, den)
    body = str(prim)
    if c == 1:
        return body
    single = sum(1 for x in ints if x) == 1
    wrapped = body if single and " " not in body else f"({body})"
    if c.numerator == 1:
        return f"{wrapped}/{c.denominator}"
    return str(g)


def theta_product(beta, var: str = "t") -> UniPoly:
    """prod_{n=0}^{2 beta} (t/2 + beta - n) for 2*beta in Z+."""
    tb = two_beta(beta)
    if tb is None:
        raise ParameterNotHalfInteger(f"2*beta = {2 * as_scalar(beta)} is not in Z+")
    beta = as_scalar(beta)
    out = UniPoly([ONE], var)
    for n in range(tb + 1):
        out = out * UniPoly([beta - n, Scalar(Fraction(1, 2))], var)
    return out


def proper_submodule(spec: ModuleSpec) -> SubmoduleShape | None:
    """The submodule V for Theta with 2*beta in Z+, otherwise None."""
    if is_simple(spec):
        return None
    return SubmoduleShape(PRINCIPAL, theta_product(spec.beta))


def check_invariance(spec: ModuleSpec, shape: SubmoduleShape, window: int, degree: int,
                     strict: bool = False) -> Report:
    """x.v lies in the shape for every basis generator x and shape vector v."""
    rep = Report(f"invariance {spec} {shape} window={window} degree={degree}")
    for x in basis(window):
        for v in shape.basis_vectors(degree):
            rep.checked += 1
            xv = act_gen(spec, x, v)
            if not shape.contains(xv):
                if strict:
                    raise NotInvariant(f"{x} . ({v}) = {xv} is not in {shape}", x, v)
                rep.add(Record("invariance", f"{x}; v={v}", f"in {shape}", str(xv)))
    return rep


def tau_check(lam, alpha, beta, gamma, degree: int, window: int = 2) -> Report:
    """tau(g) = g*prod(t/2 + beta - n) intertwines Theta(-beta-1) with V in Theta(beta)."""
    beta = as_scalar(beta)
    prod = SPoly.from_unipoly(theta_product(beta))
    source = ModuleSpec(Family.THETA, lam, alpha, -beta - 1, gamma)
    target = ModuleSpec(Family.THETA, lam, alpha, beta, gamma)
    rep = Report(f"tau {source} -> {target} window={window} degree={degree}")
    for x in basis(window):
        for g in monomials(degree):
            rep.checked += 1
            lhs = act_gen(source, x, g) * prod
            rhs = act_gen(target, x, g * prod)
            if lhs != rhs:
                rep.add(Record("tau", f"{x}; g={g}", str(rhs), str(lhs)))
    return rep


# -- generation of 1 -------------------------------------------------------------

@dataclass(frozen=True)
class GenWitness:
    """``u`` with ``u . target = 1`` in ``spec``; validated on construction."""

    spec: ModuleSpec
    u: EnvelopingElement
    target: SPoly
    steps: tuple = field(default=(), compare=False)

    def __post_init__(self):
        got = act_word(self.spec, self.u, self.target)
        if got != SPoly(1):
            raise ValueError(f"witness does not reach 1: u . w = {got}")

    def check(self) -> bool:
        return act_word(self.spec, self.u, self.target) == SPoly(1)


def _lowering_operator(spec: ModuleSpec) -> EnvelopingElement:
    """lambda*x_0 - x_1, which acts as a unit times a finite difference in s."""
    kind = "f" if spec.family is Family.DELTA else "e"
    x0, x1 = Gen(kind, 0), Gen(kind, 1)
    return as_enveloping(x0) * spec.lam - as_enveloping(x1)


def _cauchy_bound(p: UniPoly) -> Fraction | None:
    """Bound on |root| for a polynomial with rational coefficients, else None."""
    if not all(c.is_constant() for c in p.coeffs):
        return None
    vals = [c.to_fraction() for c in p.coeffs]
    lc = vals[-1]
    return 1 + max((abs(v / lc) for v in vals[:-1]), default=Fraction(0))


def k_bound(spec: ModuleSpec, seed: UniPoly, cap: int = 64) -> int:
    """Upper end of the shift search.

    Takes the maximum of the documented bound ``2*deg + ceil(|2 beta|) + 2`` and
    a bound that is provably sufficient: for Omega and Delta the bad shifts are
    root differences, at most d(d-1)/2 of them; for Theta with rational data a
    root-size term covers the extra product factors.  Symbolic Theta data falls
    back to a fixed cap.
    """
    d = seed.degree
    b = spec.beta
    if b is not None and b.is_constant():
        two_b = math.ceil(abs(2 * b.to_fraction()))
    else:
        two_b = 0
    documented = 2 * d + two_b + 2
    safe = d * (d - 1) // 2 + 1
    if spec.family is Family.THETA:
        r = _cauchy_bound(seed.monic()) if d > 0 else Fraction(0)
        if r is not None and b is not None and b.is_constant():
            safe = max(safe, d * (d - 1) + 1) + math.ceil(abs(b.to_fraction()) + r / 2) + 1
        else:
            safe = max(safe, cap)
    return max(documented, safe)


def _candidates(spec: ModuleSpec, g: SPoly, k: int):
    """The two vectors compared at shift k, with the words producing them."""
    fam = spec.family
    if fam is Family.OMEGA:
        words = (EnvelopingElement.unit(), EnvelopingElement.word(*[e(0)] * k))
    elif fam is Family.DELTA:
        words = (EnvelopingElement.unit(), EnvelopingElement.word(*[f(0)] * k))
    else:
        words = (EnvelopingElement.word(*[e(0)] * k), EnvelopingElement.word(*[f(0)] * k))
    return [(w, act_word(spec, w, g)) for w in words]


def _bezout(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Cofactors for p, q, computed on the monic forms to keep coefficients small."""
    lp, lq = p.lc, q.lc
    a, b = unipoly_ext_euclid(p.monic(), q.monic())
    return a * lp.inverse(), b * lq.inverse()


def _strip_s(spec: ModuleSpec, w: SPoly):
    """Apply the lowering operator until no s remains."""
    D = _lowering_operator(spec)
    u = EnvelopingElement.unit()
    g = w
    rounds = 0
    while not g.is_t_only():
        g = act_word(spec, D, g)
        u = D * u
        rounds += 1
    return u, g, rounds


def generate_one(spec: ModuleSpec, w) -> GenWitness:
    """An enveloping element u with u . w = 1, built from the simplicity argument.

    s is stripped first (highest power first, one finite difference per round),
    then shifted copies of the t-only seed are searched until two of them are
    coprime, and a Bezout identity is assembled with h_0 acting as t.
    """
    w = w if isinstance(w, SPoly) else SPoly(w)
    if not w:
        raise ZeroVector("cannot generate 1 from the zero vector")
    simple = is_simple(spec)
    if not simple:
        shape = proper_submodule(spec)
        if shape.contains(w):
            raise NotSimple(f"{w} lies in the proper submodule {shape}; "
                            f"{simplicity_reason(spec)}")
    u_strip, seed, rounds = _strip_s(spec, w)
    steps = [f"strip s: {rounds} round(s) of {_lowering_operator(spec)}"]
    g = seed.to_unipoly()
    if g.degree == 0 and spec.family is not Family.THETA:
        u = u_strip * g.lc.inverse()
        steps.append(f"seed {g} is a nonzero constant")
        return GenWitness(spec, u, w, tuple(steps))
    bound = k_bound(spec, g)
    for k in range(1, bound + 1):
        (wp, vp), (wq, vq) = _candidates(spec, seed, k)
        p, q = vp.to_unipoly(), vq.to_unipoly()
        if not unipoly_coprime(p, q):
            continue
        try:
            a, b = _bezout(p, q)
        except NotCoprime:  # pragma: no cover - gcd was just checked
            continue
        u_seed = poly_in(h(0), a.coeffs) * wp + poly_in(h(0), b.coeffs) * wq
        steps.append(f"shift k={k}: coprime pair, cofactors a={a}, b={b}")
        return GenWitness(spec, u_seed * u_strip, w, tuple(steps))
    if not simple:
        raise NotSimple(f"no coprime pair up to k={bound}; {simplicity_reason(spec)}")
    raise SearchExhausted(f"no coprime pair up to k={bound} for seed {g}")


# -- isomorphism -----------------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    reason: str
    extension: bool = False

    def __bool__(self):
        return self.isomorphic


def acts_surjectively(spec: ModuleSpec, x: Gen) -> bool:
    """x acts surjectively iff its factor is a nonzero constant (the shift is invertible)."""
    fx = factor(spec, x)
    return bool(fx) and fx.degree_s == 0 and fx.degree_t == 0


def _beta_product(spec: ModuleSpec) -> Scalar:
    if spec.beta is None:
        return spec.beta_product
    return spec.beta * (spec.beta + 1)


def iso_check(a: ModuleSpec, b: ModuleSpec) -> IsoResult:
    """Decide isomorphism of two modules from their parameters."""
    if a.family is not b.family:
        inv_a = (acts_surjectively(a, e(0)), acts_surjectively(a, f(0)))
        inv_b = (acts_surjectively(b, e(0)), acts_surjectively(b, f(0)))
        fmt = lambda s, v: (f"e[0] {'onto' if v[0] else 'not onto'}, "  # noqa: E731
                            f"f[0] {'onto' if v[1] else 'not onto'} in {s.family}")
        return IsoResult(False, f"distinguishing invariant: {fmt(a, inv_a)}; {fmt(b, inv_b)}",
                         extension=True)
    if (a.lam, a.alpha, a.gamma) != (b.lam, b.alpha, b.gamma):
        return IsoResult(False, "lambda, alpha or gamma differ")
    if a.family is Family.THETA:
        if a.beta == b.beta:
            return IsoResult(True, "equal parameters")
        return IsoResult(False, "Theta modules are isomorphic only for equal parameters")
    if a.beta is not None and a.beta == b.beta:
        return IsoResult(True, "equal parameters")
    if _beta_product(a) == _beta_product(b):
        if a.beta is not None and b.beta is not None:
            return IsoResult(True, "beta' = -beta - 1")
        return IsoResult(True, "equal beta*(beta + 1)")
    return IsoResult(False, "beta*(beta + 1) differs")
