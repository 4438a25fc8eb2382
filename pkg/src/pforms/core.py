"""Twisted composition and the degree-pair calculus.

The star map sends x_i to x_{i+1} and the last variable to x_0^q; the
composition f of g substitutes the star orbit of g into f.  Both degree
components of a quotient live in Z[q^(1/n)] and obey exact case laws under
composition, which lets several operations run without expanding anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .degrees import (
    NEG_INFINITY,
    POS_INFINITY,
    ext_eq,
    ext_mul,
    ext_sign,
    ext_to_json,
)
from .errors import ConstantRightOperand
from .poly import RatFunc


@dataclass(frozen=True)
class DeltaPair:
    """(d_max, d_min) of a rational function; the zero function takes
    (-inf, +inf)."""

    dmax: object
    dmin: object

    def __eq__(self, other):
        if not isinstance(other, DeltaPair):
            return NotImplemented
        return ext_eq(self.dmax, other.dmax) and ext_eq(self.dmin, other.dmin)

    def to_json(self):
        return {"dmax": ext_to_json(self.dmax), "dmin": ext_to_json(self.dmin)}

    def __repr__(self):
        return f"({self.dmax}, {self.dmin})"


def star(f: RatFunc, k: int = 1) -> RatFunc:
    """k-fold star monomorphism; star(f, n) equals f^q."""
    if k < 0:
        raise ValueError("the star map is not invertible; k must be >= 0")
    ctx = f.ctx
    q, n = ctx.field.q, ctx.n

    def once(e):
        return (q * e[n - 1],) + e[: n - 1]

    num, den = f.num, f.den
    for _ in range(k):
        num = num.remap_exponents(once)
        den = den.remap_exponents(once)
    return RatFunc(num, den)


def _require_nonconstant(g: RatFunc):
    if g.is_constant():
        raise ConstantRightOperand("composition with a constant is undefined")


def star_orbit(g: RatFunc):
    """[g, g*, ..., g^((n-1)*)]."""
    orbit = [g]
    for _ in range(g.ctx.n - 1):
        orbit.append(star(orbit[-1], 1))
    return orbit


def compose(f: RatFunc, g: RatFunc) -> RatFunc:
    """f of g = f(g, g*, ..., g^((n-1)*)), content-reduced."""
    _require_nonconstant(g)
    return f.substitute(star_orbit(g)).content_reduce()


def iterate(f: RatFunc, m: int) -> RatFunc:
    """m-fold self-composition; m = 0 gives the identity x0."""
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    if m == 0:
        return f.ctx.var(0)
    _require_nonconstant(f)
    acc = f
    for _ in range(m - 1):
        acc = compose(acc, f)
    return acc


def delta(f: RatFunc) -> DeltaPair:
    """Term-wise degree extrema of numerator minus denominator; invariant
    under change of quotient representation."""
    den_ext = f.den.degree_extrema()
    (edmax, _), (edmin, _) = den_ext
    num_ext = f.num.degree_extrema()
    if num_ext is None:
        return DeltaPair(NEG_INFINITY, POS_INFINITY)
    (enmax, _), (enmin, _) = num_ext
    deg = f.ctx.deg
    return DeltaPair(
        deg.elem(tuple(a - b for a, b in zip(enmax, edmax))),
        deg.elem(tuple(a - b for a, b in zip(enmin, edmin))),
    )


def d_of(f: RatFunc):
    """The top degree d(f) = dmax(f) alone."""
    return delta(f).dmax


def _boundary_constant(fn: RatFunc, top: bool):
    """Coefficient ratio num/den at the shared extreme term degree.

    Only meaningful when the corresponding delta component is zero, which
    forces the extreme exponent vectors of num and den to coincide.
    """
    num_ext = fn.num.degree_extrema()
    den_ext = fn.den.degree_extrema()
    idx = 0 if top else 1
    (en, cn) = num_ext[idx]
    (ed, cd) = den_ext[idx]
    if en != ed:
        raise ValueError("extreme degrees differ; no boundary constant exists")
    return fn.ctx.field.elem_from_code(fn.ctx.field.div(cn, cd))


def delta_compose_pairs(df: DeltaPair, dg: DeltaPair) -> DeltaPair:
    """The pure composition case law, applicable when both components of
    dg are nonzero."""
    smax, smin = ext_sign(dg.dmax), ext_sign(dg.dmin)
    if smax == 0 or smin == 0:
        raise ValueError("law needs nonzero right-operand degrees; use delta_of_composition")
    out_max = ext_mul(df.dmax if smax > 0 else df.dmin, dg.dmax)
    out_min = ext_mul(df.dmin if smin > 0 else df.dmax, dg.dmin)
    return DeltaPair(out_max, out_min)


def delta_of_composition(f: RatFunc, g: RatFunc) -> DeltaPair:
    """delta(compose(f, g)) predicted without expanding the composition.

    Zero right-operand components are resolved by splitting off the
    boundary constant (g = a + g1 at the top, g = b + g2 at the bottom)
    and shifting f accordingly, one side at a time.
    """
    _require_nonconstant(g)
    df = delta(f)
    dg = delta(g)
    smax, smin = ext_sign(dg.dmax), ext_sign(dg.dmin)

    if smax > 0:
        out_max = ext_mul(df.dmax, dg.dmax)
    elif smax < 0:
        out_max = ext_mul(df.dmin, dg.dmax)
    else:
        a = _boundary_constant(g, top=True)
        tail = g - a  # dmax(tail) < 0
        out_max = ext_mul(delta(f.shift(a)).dmin, delta(tail).dmax)

    if smin > 0:
        out_min = ext_mul(df.dmin, dg.dmin)
    elif smin < 0:
        out_min = ext_mul(df.dmax, dg.dmin)
    else:
        b = _boundary_constant(g, top=False)
        tail = g - b  # dmin(tail) > 0
        out_min = ext_mul(delta(f.shift(b)).dmin, delta(tail).dmin)

    return DeltaPair(out_max, out_min)


def verify_inverse(f: RatFunc, g: RatFunc) -> bool:
    """True iff g of f is the identity x0, which certifies that f and g are
    mutually inverse invertible elements."""
    _require_nonconstant(f)
    _require_nonconstant(g)
    return compose(g, f) == f.ctx.var(0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class MembershipReport:
    """Necessary conditions for invertibility; any failure certifies the
    function is not invertible, but passing everything proves nothing."""

    checks: list
    delta: DeltaPair

    @property
    def is_candidate(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "is_candidate": self.is_candidate,
            "checks": [c.to_json() for c in self.checks],
            "delta": self.delta.to_json(),
        }


def membership_necessary_checks(f: RatFunc) -> MembershipReport:
    _require_nonconstant(f)
    d = delta(f)
    checks = []

    def unit_or_zero(x):
        return x.is_zero() or x.is_unit()

    ok = unit_or_zero(d.dmax) and unit_or_zero(d.dmin)
    checks.append(
        CheckResult(
            "degrees-unit-or-zero",
            ok,
            f"dmax={d.dmax} (norm {d.dmax.norm()}), dmin={d.dmin} (norm {d.dmin.norm()})",
        )
    )

    prod = ext_sign(d.dmax) * ext_sign(d.dmin)
    checks.append(
        CheckResult(
            "degree-signs-agree",
            prod >= 0,
            f"sign(dmax)*sign(dmin) = {prod}",
        )
    )

    if f.ctx.field.q == 2:
        nz = not (d.dmax.is_zero() and d.dmin.is_zero())
        checks.append(CheckResult("nonzero-delta-over-F2", nz, f"delta = {d}"))
    else:
        checks.append(CheckResult("nonzero-delta-over-F2", True, "not applicable (q != 2)"))

    return MembershipReport(checks, d)


@dataclass
class OrderResult:
    kind: str  # "finite" | "infinite" | "unknown"
    m: int | None = None
    certificate: str | None = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.m is not None:
            out["m"] = self.m
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def __repr__(self):
        if self.kind == "finite":
            return f"Finite({self.m})"
        if self.kind == "infinite":
            return f"Infinite({self.certificate})"
        return "Unknown"


def order(f: RatFunc, bound: int = 12) -> OrderResult:
    """Order under composition: the degree-pair certificate first, then
    direct iteration up to the bound."""
    _require_nonconstant(f)
    from .groups import INFINITE, certify_infinite_order

    verdict, reason = certify_infinite_order(f)
    if verdict is INFINITE:
        return OrderResult("infinite", certificate=reason)
    ident = f.ctx.var(0)
    acc = f
    for m in range(1, bound + 1):
        if acc == ident:
            return OrderResult("finite", m=m)
        acc = compose(acc, f)
    return OrderResult("unknown")
