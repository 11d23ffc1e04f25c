"""Classification of modules that are free of rank one over C[d0, h0].

A candidate is ``E0 = e_0 . 1`` and ``F0 = f_0 . 1`` as polynomials in
(d0, h0), together with the h-part data: d_i and h_i act by

    d_i . g = lambda^i (d0 + i*gamma) g(d0 - i, h0),   h_i . g = lambda^i h0 g(d0 - i, h0).

Polynomials in (d0, h0) are stored as :class:`SPoly` with s standing for d0
and t for h0, so a candidate read off a module needs no conversion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .liealg import EnvelopingElement, Gen, d, e, f, h
from .parsing import ParseError, parse_expr
from .polymodule import Family, ModuleSpec, SPoly, act_gen, act_word, check_module_axiom, monomials
from .report import Record, Report
from .scalars import ONE, Scalar, as_scalar

CANDIDATE_NAMES = ("d0", "h0")


class ClassificationError(ValueError):
    """A candidate that fails one of the constraints; ``constraint`` names it."""

    constraint = "constraint"

    def __init__(self, message: str):
        super().__init__(f"{self.constraint}: {message}")
        self.detail = message


class Equ1Violated(ClassificationError):
    constraint = "equ1"


class DegreeConstraintViolated(ClassificationError):
    constraint = "degree"


class NonConstantResidual(ClassificationError):
    constraint = "residual"


class ValidationFailed(ClassificationError):
    constraint = "validation"


class PDataRejected(ClassificationError):
    constraint = "p-data"


class UnsupportedGenerator(ValueError):
    pass


def fmt(p: SPoly) -> str:
    return p.format(CANDIDATE_NAMES)


@dataclass(frozen=True)
class EFCandidate:
    """Candidate data ``(E0, F0)`` over the h-part ``(lambda, gamma)``.

    ``p`` optionally holds general polynomials p_i(h0) for strict mode; the
    default is p_i = i*gamma.
    """

    E0: SPoly
    F0: SPoly
    lam: Scalar
    gamma: Scalar
    p: tuple = ()

    def __post_init__(self):
        for name in ("E0", "F0"):
            v = getattr(self, name)
            object.__setattr__(self, name, v if isinstance(v, SPoly) else SPoly(v))
        object.__setattr__(self, "lam", as_scalar(self.lam))
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        if not self.lam:
            raise ValueError("lambda must be nonzero")
        if not (self.E0 * self.F0):
            raise ValueError("E0*F0 must be nonzero")
        if isinstance(self.p, dict):
            object.__setattr__(self, "p", tuple(sorted(self.p.items())))

    def p_of(self, i: int) -> SPoly:
        for j, pj in self.p:
            if j == i:
                return pj
        return SPoly(self.gamma * i)

    def __str__(self):
        out = f"E0 = {fmt(self.E0)}; F0 = {fmt(self.F0)}; lambda = {self.lam}; gamma = {self.gamma}"
        for j, pj in self.p:
            out += f"; p[{j}] = {fmt(pj)}"
        return out


_KEY = re.compile(r"\s*(E0|F0|lambda|gamma|p\[\s*-?\d+\s*\])\s*=")


def parse_candidate(text: str) -> EFCandidate:
    """``E0 = ...; F0 = ...; lambda = ...; gamma = ...`` (lambda, gamma default to L, G)."""
    fields: dict = {}
    p: dict = {}
    pos = 0
    for part in re.split(r"[;\n]", text):
        start = pos
        pos += len(part) + 1
        if not part.strip():
            continue
        m = _KEY.match(part)
        if not m:
            raise _error(text, start + len(part) - len(part.lstrip()),
                         "expected 'E0 =', 'F0 =', 'lambda =', 'gamma =' or 'p[i] ='")
        key = m.group(1)
        body = part[m.end():]
        ctx = "scalar" if key in ("lambda", "gamma") else "candidate"
        try:
            val = parse_expr(body, ctx)
        except ParseError as exc:
            raise _shift_error(text, start + m.end(), exc) from None
        if key.startswith("p["):
            p[int(key[2:-1])] = val
        else:
            fields[key] = val
    for key in ("E0", "F0"):
        if key not in fields:
            raise ParseError(f"missing {key}", 1, len(text) + 1, {key})
    try:
        return EFCandidate(fields["E0"], fields["F0"], fields.get("lambda", Scalar("L")),
                           fields.get("gamma", Scalar("G")), p)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _error(text, pos, message):
    return ParseError(message, *_linecol(text, pos))


def _shift_error(text, base, exc: ParseError) -> ParseError:
    line0, col0 = _linecol(text, base)
    if exc.line == 1:
        line, col = line0, col0 + exc.column - 1
    else:
        line, col = line0 + exc.line - 1, exc.column
    return ParseError(exc.message, line, col, exc.expected)


# -- actions determined by the candidate ------------------------------------------

def _sub_d(p: SPoly, i: int) -> SPoly:
    """p(d0 - i, h0)"""
    return p.shifted(-i, 0)


def E_i(c: EFCandidate, i: int) -> SPoly:
    """e_i . 1 from [h_i, e_0] = 2 e_i."""
    h0 = SPoly.t()
    return (h0 * _sub_d(c.E0, i) - (h0 - 2) * c.E0) * (c.lam ** i / 2)


def F_i(c: EFCandidate, i: int) -> SPoly:
    """f_i . 1 from [h_i, f_0] = -2 f_i."""
    h0 = SPoly.t()
    return ((h0 + 2) * c.F0 - h0 * _sub_d(c.F0, i)) * (c.lam ** i / 2)


def derive_action(c: EFCandidate, x: Gen, g) -> SPoly:
    """Action of a basis symbol on the candidate module."""
    if not isinstance(x, Gen):
        raise UnsupportedGenerator(f"expected a basis symbol, got {x!r}")
    g = g if isinstance(g, SPoly) else SPoly(g)
    i = x.index
    if x.kind == "c":
        return SPoly()
    if x.kind == "e":
        return g.shifted(-i, -2) * (c.E0 if i == 0 else E_i(c, i))
    if x.kind == "f":
        return g.shifted(-i, 2) * (c.F0 if i == 0 else F_i(c, i))
    if x.kind == "h":
        return SPoly.t() * g.shifted(-i, 0) * c.lam ** i
    return (SPoly.s() + c.p_of(i)) * g.shifted(-i, 0) * c.lam ** i


def equ1_residual(c: EFCandidate) -> SPoly:
    """E0(d0,h0) F0(d0,h0-2) - E0(d0,h0+2) F0(d0,h0) - h0, which must vanish."""
    E0, F0 = c.E0, c.F0
    return E0 * F0.shifted(0, -2) - E0.shifted(0, 2) * F0 - SPoly.t()


def equ2_residual(c: EFCandidate) -> SPoly:
    """E0(d0,h0) E1(d0,h0-2) - E0(d0-1,h0-2) E1(d0,h0)."""
    E1 = E_i(c, 1)
    return c.E0 * E1.shifted(0, -2) - c.E0.shifted(-1, -2) * E1


def equ3_residual(c: EFCandidate) -> SPoly:
    """F0(d0,h0) F1(d0,h0+2) - F0(d0-1,h0+2) F1(d0,h0)."""
    F1 = F_i(c, 1)
    return c.F0 * F1.shifted(0, 2) - c.F0.shifted(-1, 2) * F1


def h_coeffs(p: SPoly) -> dict:
    """{k: polynomial in d0} with p = sum_k h0^k * coeffs[k]."""
    out: dict = {}
    for (j, k), v in p.terms.items():
        out[k] = out.get(k, SPoly()) + SPoly.monomial(j, 0, v)
    return out


def _const(p: SPoly) -> Scalar | None:
    if not p:
        return Scalar(0)
    if p.degree_s == 0 and p.degree_t == 0:
        return p.coeff(0, 0)
    return None


# -- the classifier ---------------------------------------------------------------

@dataclass
class ClassResult:
    family: Family
    spec: ModuleSpec
    betas: tuple
    derivation: list = field(default_factory=list)
    validation: Report | None = None

    @property
    def params(self) -> tuple:
        return self.spec.params

    def beta_text(self) -> str:
        if self.betas:
            return "beta in {" + ", ".join(str(b) for b in self.betas) + "}"
        return f"beta*(beta + 1) = {self.spec.beta_product}"

    def __str__(self):
        s = self.spec
        return f"{self.family}({s.lam}, {s.alpha}, beta, {s.gamma}) with {self.beta_text()}"


def _quadratic_case(c: EFCandidate, const_side: str, steps: list):
    """Cases (0,2) and (2,0): one side a constant alpha, the other quadratic."""
    if const_side == "E":
        alpha = _const(c.E0)
        quad, res_fn, eq = c.F0, equ3_residual, "equ3"
    else:
        alpha = _const(c.F0)
        quad, res_fn, eq = c.E0, equ2_residual, "equ2"
    coeffs = h_coeffs(quad)
    u1 = coeffs.get(1, SPoly())
    v1 = coeffs.get(0, SPoly())
    lin_expected = -ONE / (2 * alpha) if const_side == "E" else ONE / (2 * alpha)
    if u1 != SPoly(lin_expected):
        raise Equ1Violated(f"h0-coefficient {fmt(u1)} should be {lin_expected}")
    steps.append(f"equ1 fixes the h0-coefficient to {lin_expected}")
    res = res_fn(c)
    res0 = h_coeffs(res).get(0, SPoly())
    if res0:
        raise NonConstantResidual(
            f"{eq} has h0-free part {fmt(res0)}, so v = {fmt(v1)} is not constant in d0")
    v = _const(v1)
    if v is None:
        raise NonConstantResidual(f"v = {fmt(v1)} is not constant in d0")
    steps.append(f"{eq} forces v = {v} constant")
    q = alpha * v
    disc = 1 + 4 * q
    root = disc.sqrt()
    steps.append(f"beta^2 + beta = alpha*v = {q}")
    fam = Family.OMEGA if const_side == "E" else Family.DELTA
    if root is None:
        spec = ModuleSpec(fam, c.lam, alpha, None, c.gamma, beta_product=q)
        return spec, ()
    b1 = (root - 1) / 2
    b2 = -b1 - 1
    betas = (b1,) if b1 == b2 else (b1, b2)
    return ModuleSpec(fam, c.lam, alpha, b1, c.gamma), betas


def _linear_case(c: EFCandidate, steps: list):
    """Case (1,1): E0 = (alpha/2) h0 + u2, F0 = -(1/(2 alpha)) h0 + v2."""
    ec, fc = h_coeffs(c.E0), h_coeffs(c.F0)
    alpha = _const(ec[1]) * 2
    u2 = ec.get(0, SPoly())
    v2 = fc.get(0, SPoly())
    if u2 != v2 * alpha ** 2:
        raise Equ1Violated(f"u2 = {fmt(u2)} should equal alpha^2*v2 = {fmt(v2 * alpha ** 2)}")
    steps.append("equ1 forces u2 = alpha^2*v2")
    res0 = h_coeffs(equ2_residual(c)).get(0, SPoly())
    if res0:
        raise NonConstantResidual(
            f"equ2 has h0-free part {fmt(res0)}, so u2 = {fmt(u2)} is not constant in d0")
    u = _const(u2)
    if u is None:
        raise NonConstantResidual(f"u2 = {fmt(u2)} is not constant in d0")
    beta = u / alpha
    steps.append(f"equ2 forces u2 = {u} constant; beta = u2/alpha = {beta}")
    return ModuleSpec(Family.THETA, c.lam, alpha, beta, c.gamma), (beta,)


def check_p_data(c: EFCandidate) -> list[str]:
    """Strict mode: p_i must satisfy [d_i, e_0] . 1 = 0 and be i*gamma."""
    steps = []
    for i, pi in c.p:
        lhs = derive_action(c, d(i), c.E0) - derive_action(c, e(0), derive_action(c, d(i), SPoly(1)))
        if lhs:
            raise PDataRejected(f"[d_{i}, e_0] . 1 = {fmt(lhs)} is not 0")
        if pi != SPoly(c.gamma * i):
            raise PDataRejected(f"p[{i}] = {fmt(pi)} differs from {i}*gamma = {c.gamma * i}")
    if c.p:
        steps.append(f"[d_i, e_0] . 1 = 0 gives p_i = i*gamma for i in {[i for i, _ in c.p]}")
    return steps


def classify_candidate(c: EFCandidate, validate: bool = True, window: int = 2,
                       degree: int = 2) -> ClassResult:
    """Decide which family the candidate generates, replaying the case analysis."""
    steps: list = []
    m, n = c.E0.degree_t, c.F0.degree_t
    if m + n != 2:
        raise DegreeConstraintViolated(f"h0-degrees (m, n) = ({m}, {n}) give m + n = {m + n}, not 2")
    am, bn = h_coeffs(c.E0)[m], h_coeffs(c.F0)[n]
    lead = am * bn
    if lead != SPoly(Scalar("-1/4")):
        raise DegreeConstraintViolated(f"a_m*b_n = {fmt(lead)}, not -1/4")
    steps.append(f"degree: (m, n) = ({m}, {n}), a_m*b_n = -1/4")
    r = equ1_residual(c)
    if r:
        raise Equ1Violated(f"E0(d0,h0)F0(d0,h0-2) - E0(d0,h0+2)F0(d0,h0) - h0 = {fmt(r)}")
    steps.append("equ1 holds")
    steps.extend(check_p_data(c))
    if (m, n) == (0, 2):
        spec, betas = _quadratic_case(c, "E", steps)
    elif (m, n) == (2, 0):
        spec, betas = _quadratic_case(c, "F", steps)
    else:
        spec, betas = _linear_case(c, steps)
    got_e, got_f = act_gen(spec, e(0), SPoly(1)), act_gen(spec, f(0), SPoly(1))
    if (got_e, got_f) != (c.E0, c.F0):
        raise ValidationFailed(f"rebuilt {spec} has e_0 . 1 = {got_e}, f_0 . 1 = {got_f}")
    steps.append(f"result {spec}")
    result = ClassResult(spec.family, spec, betas, steps)
    if validate:
        rep = check_module_axiom(spec, window, degree)
        result.validation = rep
        if not rep.ok:
            raise ValidationFailed(str(rep))
    return result


def roundtrip_extract(spec: ModuleSpec) -> EFCandidate:
    """Read E0 = e_0 . 1 and F0 = f_0 . 1 off a module."""
    one = SPoly(1)
    return EFCandidate(act_gen(spec, e(0), one), act_gen(spec, f(0), one), spec.lam, spec.gamma)


# -- the operator lemma ------------------------------------------------------------

def lemma_identities(i: int, m: int) -> list[tuple[str, EnvelopingElement, EnvelopingElement]]:
    """The four operator identities as (name, lhs, rhs) enveloping elements."""
    one = EnvelopingElement.unit()
    d0, h0 = EnvelopingElement(d(0)), EnvelopingElement(h(0))
    out = []
    for x in (e(i), f(i)):
        xe = EnvelopingElement(x)
        shift = -2 if x.kind == "e" else 2
        hs = f"h[0] {'-' if shift < 0 else '+'} 2"
        ds = f"d[0] {'+' if i < 0 else '-'} {abs(i)}"
        out.append((f"{x}*d[0]^{m} = ({ds})^{m}*{x}", xe * d0 ** m, (d0 - one * i) ** m * xe))
        out.append((f"{x}*h[0]^{m} = ({hs})^{m}*{x}", xe * h0 ** m, (h0 + one * shift) ** m * xe))
    return out


def lemma_identity_check(spec: ModuleSpec, i: int, m: int, degree: int = 3) -> Report:
    """Both sides of each identity applied to s^j t^k, j, k <= degree."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    rep = Report(f"lemma {spec} i={i} m={m} degree={degree}")
    for name, lhs, rhs in lemma_identities(i, m):
        for g in monomials(degree):
            rep.checked += 1
            a, b = act_word(spec, lhs, g), act_word(spec, rhs, g)
            if a != b:
                rep.add(Record("lemma", f"{name}; g={g}", str(b), str(a)))
    return rep
