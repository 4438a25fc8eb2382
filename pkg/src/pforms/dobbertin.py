"""Dobbertin's invertible forms over F_2, their explicit inverses, the
closed-form iterate degrees, and the univariate permutation pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import DeltaPair, verify_inverse
from .degrees import deg_ctx
from .errors import (
    BadCongruence,
    BadN,
    DenominatorVanishesModField,
    DivideByZero,
    InjectivityOnDFailed,
    VerificationFailed,
)
from .ffield import FieldCtx, ff_make
from .poly import MPoly, PFormCtx, RatFunc, ratfunc_from_laurent


def sign_sequences(n: int):
    """Sign vectors (e_0, ..., e_{i-1}) of the inverse formula, 1 <= i <= n:
    last entry -1, first entry -1 unless i = n, no adjacent (+1, +1) pair.
    Ordered by length, then lexicographically with -1 < +1."""
    if n < 2:
        raise BadN(f"need n >= 2, got {n}")
    out = []
    for i in range(1, n + 1):
        for seq in product((-1, 1), repeat=i):
            if seq[-1] != -1:
                continue
            if i < n and seq[0] != -1:
                continue
            if any(seq[j] == 1 and seq[j + 1] == 1 for j in range(i - 1)):
                continue
            out.append(seq)
    return out


def pform_ctx2(n: int) -> PFormCtx:
    return PFormCtx(ff_make(2), n)


def dobbertin_form(n: int) -> RatFunc:
    """(x0^2 + x1 + ... + x_{n-1} + n + 1) / (x0 x1) over F_2."""
    if n < 2:
        raise BadN(f"need n >= 2, got {n}")
    ctx = pform_ctx2(n)
    num = ctx.poly_var(0) ** 2
    for i in range(1, n):
        num = num + ctx.poly_var(i)
    num = num + ctx.poly_const(n + 1)
    den = ctx.poly_var(0) * ctx.poly_var(1)
    return RatFunc(num, den)


def dobbertin_form_inverse(n: int) -> RatFunc:
    """The explicit inverse: the sum of the sign-sequence Laurent monomials."""
    ctx = pform_ctx2(n)
    terms = {}
    for seq in sign_sequences(n):
        exps = tuple(seq) + (0,) * (n - len(seq))
        terms[exps] = 1
    return ratfunc_from_laurent(ctx, terms)


def iterate_delta_closed_form(n: int, m: int) -> DeltaPair:
    """Degree pair of the m-th iterate without any expansion."""
    if n < 2:
        raise BadN(f"need n >= 2, got {n}")
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    dc = deg_ctx(n, 2)
    one = dc.one
    flip = m % 2 == 1
    if n % 2 == 1:
        base = dc.root(1) - one  # -1 + 2^(1/n)
        dmax = base ** ((m + 1) // 2)
        dmin = base ** (m // 2)
    else:
        base2 = dc.root(2) - one  # -1 + 2^(2/n)
        up = dc.root(1) - one
        down = dc.root(1) + one
        half, rem = divmod(m, 2)
        dmax = base2**half * up**rem
        dmin = base2**half * down**rem
    if flip:
        dmax, dmin = -dmax, -dmin
    return DeltaPair(dmax, dmin)


# --- univariate specialisation ------------------------------------------------


def _reduce_exponent(e: int, qm: int) -> int:
    # x^qm == x as polynomials mod x^qm - x
    if e < qm:
        return e
    return (e - 1) % (qm - 1) + 1


def _reduce_uni(poly: MPoly, qm: int) -> MPoly:
    field = poly.ctx.field
    out = {}
    for (e,), c in poly.terms.items():
        key = (_reduce_exponent(e, qm),)
        prev = out.get(key)
        if prev is None:
            out[key] = c
        else:
            s = field.add(prev, c)
            if s:
                out[key] = s
            else:
                del out[key]
    return MPoly(poly.ctx, out)


def uniform_representation(f: RatFunc, nprime: int, m: int) -> RatFunc:
    """Substitute x_i -> x^(q^(i n')) and reduce numerator and denominator
    mod x^(q^m) - x.  Requires n n' == 1 (mod m)."""
    ctx = f.ctx
    q, n = ctx.field.q, ctx.n
    if (n * nprime) % m != 1 % m:
        raise BadCongruence(f"n*n' = {n * nprime} is not 1 mod {m}")
    qm = q**m
    uni = PFormCtx(ctx.field, 1)
    powers = [q ** (i * nprime) for i in range(n)]

    def convert(poly: MPoly) -> MPoly:
        field = ctx.field
        out = {}
        for e, c in poly.terms.items():
            key = (_reduce_exponent(sum(v * p for v, p in zip(e, powers)), qm),)
            prev = out.get(key)
            if prev is None:
                out[key] = c
            else:
                s = field.add(prev, c)
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly(uni, out)

    num = convert(f.num)
    den = convert(f.den)
    if den.is_zero():
        raise DenominatorVanishesModField(
            f"denominator vanishes mod x^{qm} - x; retry with n' = {nprime + m}"
        )
    return RatFunc(num, den)


class ExtField:
    """F_(q^m) built as F_q[y]/(h) for a searched monic irreducible h;
    elements are coefficient tuples over the base field's codes."""

    def __init__(self, base: FieldCtx, m: int):
        self.base = base
        self.m = m
        self.size = base.q**m
        self.h = self._find_modulus() if m > 1 else (0, 1)

    def _find_modulus(self):
        base, m = self.base, self.m
        for lower in product(range(base.q), repeat=m):
            h = tuple(lower) + (1,)
            if self._irreducible(h):
                return h
        raise AssertionError("no irreducible modulus found (impossible)")

    def _irreducible(self, h) -> bool:
        base, m = self.base, self.m
        if h[0] == 0:
            return False
        if any(self._eval(h, x) == 0 for x in range(base.q)):
            return False
        if m <= 3:
            return True
        for d in range(2, m // 2 + 1):
            for lower in product(range(base.q), repeat=d):
                div = tuple(lower) + (1,)
                if self._divides(div, h):
                    return False
        return True

    def _eval(self, coeffs, x):
        base = self.base
        acc = 0
        for c in reversed(coeffs):
            acc = base.add(base.mul(acc, x), c)
        return acc

    def _divides(self, d, f) -> bool:
        base = self.base
        rem = list(f)
        dd = len(d) - 1
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                for i in range(dd + 1):
                    rem[k - dd + i] = base.sub(rem[k - dd + i], base.mul(c, d[i]))
        return all(c == 0 for c in rem[:dd])

    # --- element ops (tuples of base codes, length m) ----------------------

    @property
    def zero(self):
        return (0,) * self.m

    @property
    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def embed(self, code: int):
        return (code,) + (0,) * (self.m - 1)

    def elements(self):
        return product(range(self.base.q), repeat=self.m)

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        base, m = self.base, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = base.sub(prod[k - m + i], base.mul(c, self.h[i]))
        return tuple(prod[:m])

    def pow(self, a, k: int):
        out, basepow = self.one, a
        while k:
            if k & 1:
                out = self.mul(out, basepow)
            basepow = self.mul(basepow, basepow)
            k >>= 1
        return out

    def inv(self, a):
        if a == self.zero:
            raise DivideByZero("inverse of zero in the extension field")
        return self.pow(a, self.size - 2)

    def eval_poly(self, poly: MPoly, x):
        """Evaluate a univariate polynomial over the base field at x."""
        acc = self.zero
        for (e,), c in poly.terms.items():
            acc = self.add(acc, self.mul(self.embed(c), self.pow(x, e)))
        return acc


@dataclass
class PermReport:
    field_size: int
    nprime_used: int
    domain_size: int
    injective_on_domain: bool
    permutes_field: bool
    cycle_type: list | None
    polynomial: str

    def to_json(self):
        return {
            "field_size": self.field_size,
            "nprime_used": self.nprime_used,
            "domain_size": self.domain_size,
            "injective_on_domain": self.injective_on_domain,
            "permutes_field": self.permutes_field,
            "cycle_type": self.cycle_type,
            "polynomial": self.polynomial,
        }


def derive_permutation_polynomial(
    f: RatFunc, f_inverse: RatFunc, nprime: int, m: int, retry_limit: int = 8
):
    """Candidate permutation polynomial g = f1 * f2^(q^m - 2) from the
    univariate specialisation, with a brute-force report over F_(q^m).

    The inverse is required: the domain D consists of the points where both
    the specialised function and the specialised inverse composition are
    defined, and injectivity of g on D is a proved property (asserted hard).
    When the denominator of a specialisation vanishes, n' is advanced by m
    (preserving the congruence) up to retry_limit times.
    """
    if not verify_inverse(f, f_inverse):
        raise VerificationFailed("f_inverse is not a compositional inverse of f")
    q = f.ctx.field.q
    qm = q**m
    np_used = nprime
    for _ in range(retry_limit + 1):
        try:
            ft = uniform_representation(f, np_used, m)
            fit = uniform_representation(f_inverse, np_used, m)
            break
        except DenominatorVanishesModField:
            np_used += m
    else:
        raise DenominatorVanishesModField(
            f"denominator still vanishes after {retry_limit} retries from n'={nprime}"
        )

    uni = ft.ctx
    g = _reduce_uni(ft.num * _powmod(ft.den, qm - 2, qm), qm)

    ext = ExtField(f.ctx.field, m)
    domain = []
    g_on_domain = []
    g_everywhere = []
    for x in ext.elements():
        gx = ext.eval_poly(g, x)
        g_everywhere.append(gx)
        if ext.eval_poly(ft.den, x) == ext.zero:
            continue
        value = ext.mul(ext.eval_poly(ft.num, x), ext.inv(ext.eval_poly(ft.den, x)))
        if ext.eval_poly(fit.den, value) == ext.zero:
            continue
        domain.append(x)
        g_on_domain.append(gx)

    injective = len(set(g_on_domain)) == len(domain)
    if not injective:
        raise InjectivityOnDFailed(
            "g is not injective on its domain; this indicates an implementation bug"
        )
    permutes = len(set(g_everywhere)) == ext.size
    cycle_type = _cycle_type(list(ext.elements()), g_everywhere) if permutes else None

    report = PermReport(
        field_size=ext.size,
        nprime_used=np_used,
        domain_size=len(domain),
        injective_on_domain=injective,
        permutes_field=permutes,
        cycle_type=cycle_type,
        polynomial=repr(RatFunc(g, uni.poly_one())),
    )
    return g, report


def _powmod(poly: MPoly, k: int, qm: int) -> MPoly:
    out = _reduce_uni(poly.ctx.poly_one(), qm)
    base = _reduce_uni(poly, qm)
    while k:
        if k & 1:
            out = _reduce_uni(out * base, qm)
        k >>= 1
        if k:
            base = _reduce_uni(base * base, qm)
    return out


def _cycle_type(elements, images):
    index = {x: i for i, x in enumerate(elements)}
    perm = [index[y] for y in images]
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        cycles.append(length)
    cycles.sort(reverse=True)
    return cycles
