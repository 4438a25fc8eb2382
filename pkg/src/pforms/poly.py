"""Sparse multivariate polynomials and rational functions over F_q.

Polynomials map exponent tuples to nonzero coefficient codes; rational
functions are formal quotients with semantic (cross-multiplied) equality.
Nothing here cancels common factors beyond monomial content, because the
degree functions used everywhere are quotient-invariant.
"""

from __future__ import annotations

from math import gcd

from . import kernels
from .degrees import DegElem, deg_ctx
from .errors import (
    DenominatorVanishes,
    DivideByZeroFunction,
    InvalidContext,
    NegativePolyPower,
)
from .ffield import FFElem, FieldCtx


class PFormCtx:
    """Working context: the field F_q and the number of variables n,
    subject to gcd(n, log_p q) = 1 (which keeps x^n - q irreducible)."""

    def __init__(self, field: FieldCtx, n: int):
        if n < 1:
            raise InvalidContext(f"need at least one variable, got n={n}")
        if gcd(n, field.s) != 1:
            raise InvalidContext(
                f"gcd(n, s) = gcd({n}, {field.s}) != 1 for q = {field.q}"
            )
        # deg_ctx independently rejects q that is a perfect r-th power for r | n
        self.deg = deg_ctx(n, field.q)
        self.field = field
        self.n = n
        self._zero_exps = (0,) * n

    # --- constructors ----------------------------------------------------

    def coeff_code(self, c) -> int:
        """FFElem -> its code; int -> the constant c mod p."""
        if isinstance(c, FFElem):
            if c.ctx != self.field:
                raise InvalidContext("coefficient from a different field")
            return c.code
        return self.field.from_int(c)

    def poly(self, terms) -> MPoly:
        """Polynomial from {exponent tuple: coefficient} with purging."""
        clean = {}
        for e, c in terms.items():
            code = self.coeff_code(c)
            if code:
                clean[tuple(e)] = code
        return MPoly(self, clean)

    def poly_const(self, c) -> MPoly:
        code = self.coeff_code(c)
        return MPoly(self, {self._zero_exps: code} if code else {})

    def poly_const_code(self, code: int) -> MPoly:
        """Constant polynomial from an element code (not an integer mod p)."""
        return MPoly(self, {self._zero_exps: code} if code else {})

    def poly_var(self, i: int) -> MPoly:
        exps = [0] * self.n
        exps[i] = 1
        return MPoly(self, {tuple(exps): 1})

    def zero(self) -> RatFunc:
        return RatFunc(MPoly(self, {}), self.poly_one())

    def one(self) -> RatFunc:
        return RatFunc(self.poly_one(), self.poly_one())

    def poly_one(self) -> MPoly:
        return MPoly(self, {self._zero_exps: 1})

    def var(self, i: int) -> RatFunc:
        return RatFunc(self.poly_var(i), self.poly_one())

    def const(self, c) -> RatFunc:
        return RatFunc(self.poly_const(c), self.poly_one())

    def monomial(self, exps) -> RatFunc:
        """Laurent monomial with coefficient 1, negatives cleared into the
        denominator."""
        return ratfunc_from_laurent(self, {tuple(exps): 1})

    def __eq__(self, other):
        return (
            isinstance(other, PFormCtx)
            and self.field == other.field
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"PFormCtx(q={self.field.q}, n={self.n})"


def _check_same_ctx(a, b):
    if a.ctx != b.ctx:
        raise InvalidContext("operands belong to different contexts")


class MPoly:
    """Sparse polynomial: {exponent tuple: nonzero coefficient code}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PFormCtx, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and self.ctx._zero_exps in self.terms

    def constant_code(self):
        """Coefficient code if constant, else None."""
        if not self.terms:
            return 0
        if self.is_constant():
            return self.terms[self.ctx._zero_exps]
        return None

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_same_ctx(self, other)
        field = self.ctx.field
        big, small = (self.terms, other.terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = field.add(prev, c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly(self.ctx, out)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __neg__(self):
        field = self.ctx.field
        if field.p == 2:
            return self
        return MPoly(self.ctx, {e: field.neg(c) for e, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, FFElem)):
            return self.ctx.poly_const(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, FFElem)):
            return self.scale(self.ctx.coeff_code(other))
        if not isinstance(other, MPoly):
            return NotImplemented
        _check_same_ctx(self, other)
        if not self.terms or not other.terms:
            return MPoly(self.ctx, {})
        field = self.ctx.field
        tabs = field.tables()
        if tabs is not None:
            add_t, mul_t = tabs
            out = kernels.mul_dicts(self.terms, other.terms, self.ctx.n, add_t, mul_t, field.q)
        else:
            out = self._mul_generic(other)
        return MPoly(self.ctx, out)

    __rmul__ = __mul__

    def _mul_generic(self, other):
        # big fields have no lookup tables; same loop with ctx arithmetic
        field = self.ctx.field
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                c = field.mul(ca, cb)
                key = tuple(map(int.__add__, ea, eb))
                prev = out.get(key)
                if prev is None:
                    out[key] = c
                else:
                    s = field.add(prev, c)
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return out

    def scale(self, code: int) -> MPoly:
        if code == 0:
            return MPoly(self.ctx, {})
        if code == 1:
            return self
        field = self.ctx.field
        return MPoly(self.ctx, {e: field.mul(c, code) for e, c in self.terms.items()})

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise NegativePolyPower(f"polynomial power {k} < 0")
        out = self.ctx.poly_one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, FFElem)):
            other = self.ctx.poly_const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # --- structure --------------------------------------------------------

    def remap_exponents(self, fn) -> MPoly:
        """Rebuild with exponent tuples fn(e); fn must be injective here."""
        return MPoly(self.ctx, {fn(e): c for e, c in self.terms.items()})

    def u_degree(self, exps) -> DegElem:
        return self.ctx.deg.elem(exps)

    def degree_extrema(self):
        """((max exps, coeff), (min exps, coeff)) under the real-valued term
        degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        sign_of = self.ctx.deg.sign_of
        it = iter(self.terms.items())
        emax, cmax = next(it)
        emin, cmin = emax, cmax
        for e, c in it:
            if sign_of(tuple(a - b for a, b in zip(e, emax))) > 0:
                emax, cmax = e, c
            elif sign_of(tuple(a - b for a, b in zip(e, emin))) < 0:
                emin, cmin = e, c
        return (emax, cmax), (emin, cmin)

    def grlex_leading(self):
        """(exps, coeff) maximal in graded lex with x0 > x1 > ... (printing
        order only)."""
        if not self.terms:
            return None
        e = max(self.terms, key=lambda v: (sum(v), v))
        return e, self.terms[e]

    def __repr__(self):
        from .exprs import poly_string

        return poly_string(self)


class RatFunc:
    """Formal quotient of two polynomials, denominator nonzero.

    Equality is semantic: a/b == c/d iff ad == cb as polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = num.ctx.poly_one()
        if den.is_zero():
            raise DivideByZeroFunction("zero denominator")
        _check_same_ctx(num, den)
        self.num = num
        self.den = den

    @property
    def ctx(self) -> PFormCtx:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        if self.num.is_zero():
            return True
        if self.num.terms.keys() != self.den.terms.keys():
            return False
        field = self.ctx.field
        e0 = next(iter(self.num.terms))
        c = field.div(self.num.terms[e0], self.den.terms[e0])
        return self.num == self.den.scale(c)

    def constant_code(self):
        if self.num.is_zero():
            return 0
        if not self.is_constant():
            return None
        e0 = next(iter(self.num.terms))
        return self.ctx.field.div(self.num.terms[e0], self.den.terms[e0])

    # --- field operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, FFElem)):
            return self.ctx.const(other)
        if isinstance(other, MPoly):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        _check_same_ctx(self, other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        _check_same_ctx(self, other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise DivideByZeroFunction("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_same_ctx(self, other)
        return self.num * other.den == other.num * self.den

    __hash__ = None

    # --- substitution -------------------------------------------------------

    def substitute(self, replacements) -> RatFunc:
        """Exact substitution x_i -> replacements[i] (rational functions),
        built by clearing denominators term-wise."""
        reps = list(replacements)
        ctx = self.ctx
        if len(reps) != ctx.n:
            raise InvalidContext(f"need {ctx.n} replacement functions, got {len(reps)}")
        for r in reps:
            _check_same_ctx(self, r)
        caps = [0] * ctx.n
        for e in self.num.terms:
            for i, v in enumerate(e):
                if v > caps[i]:
                    caps[i] = v
        for e in self.den.terms:
            for i, v in enumerate(e):
                if v > caps[i]:
                    caps[i] = v
        pows = _PowerCache(reps)
        a1 = _substitute_poly(self.num, reps, caps, pows)
        a2 = _substitute_poly(self.den, reps, caps, pows)
        if a2.is_zero():
            raise DenominatorVanishes("substituted denominator is identically zero")
        return RatFunc(a1, a2)

    def shift(self, a) -> RatFunc:
        """Replace every variable x_i by x_i + a."""
        code = a.code if isinstance(a, FFElem) else self.ctx.field.from_int(a)
        if code == 0:
            return self
        cache = {}
        return RatFunc(
            _shift_poly(self.num, code, cache), _shift_poly(self.den, code, cache)
        )

    def content_reduce(self) -> RatFunc:
        """Strip shared monomial content and normalise the denominator's
        printing-order leading coefficient to 1."""
        ctx = self.ctx
        num, den = self.num, self.den
        if num.is_zero():
            return ctx.zero()
        mins = [None] * ctx.n
        for poly in (num, den):
            for e in poly.terms:
                for i, v in enumerate(e):
                    if mins[i] is None or v < mins[i]:
                        mins[i] = v
        if any(mins):
            strip = tuple(mins)
            num = num.remap_exponents(lambda e: tuple(map(int.__sub__, e, strip)))
            den = den.remap_exponents(lambda e: tuple(map(int.__sub__, e, strip)))
        lead = den.grlex_leading()[1]
        if lead != 1:
            inv = ctx.field.inv(lead)
            num = num.scale(inv)
            den = den.scale(inv)
        return RatFunc(num, den)

    def __repr__(self):
        from .exprs import ratfunc_string

        return ratfunc_string(self)


class _PowerCache:
    """Numerator/denominator powers of the replacement functions."""

    def __init__(self, reps):
        self.nums = [[r.ctx.poly_one(), r.num] for r in reps]
        self.dens = [[r.ctx.poly_one(), r.den] for r in reps]

    def num_pow(self, i, k):
        cache = self.nums[i]
        while len(cache) <= k:
            cache.append(cache[-1] * cache[1])
        return cache[k]

    def den_pow(self, i, k):
        cache = self.dens[i]
        while len(cache) <= k:
            cache.append(cache[-1] * cache[1])
        return cache[k]


def _substitute_poly(poly: MPoly, reps, caps, pows: _PowerCache) -> MPoly:
    """sum_e c_e * prod_i num_i^e_i * den_i^(caps_i - e_i); the common
    denominator prod_i den_i^caps_i is supplied by the caller's pairing."""
    ctx = poly.ctx
    acc = MPoly(ctx, {})
    for e, c in poly.terms.items():
        term = ctx.poly_const_code(c)
        for i, ei in enumerate(e):
            if ei:
                term = term * pows.num_pow(i, ei)
            if caps[i] - ei:
                term = term * pows.den_pow(i, caps[i] - ei)
        acc = acc + term
    return acc


def _shift_poly(poly: MPoly, code: int, cache: dict) -> MPoly:
    ctx = poly.ctx
    acc = MPoly(ctx, {})
    for e, c in poly.terms.items():
        term = ctx.poly_const_code(c)
        for i, ei in enumerate(e):
            if ei:
                term = term * _binomial_power(ctx, i, ei, code, cache)
        acc = acc + term
    return acc


def _binomial_power(ctx: PFormCtx, i: int, k: int, code: int, cache: dict) -> MPoly:
    key = (i, k)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if k == 1:
        out = ctx.poly_var(i) + ctx.poly_const_code(code)
    else:
        half = _binomial_power(ctx, i, k // 2, code, cache)
        out = half * half
        if k & 1:
            out = out * _binomial_power(ctx, i, 1, code, cache)
    cache[key] = out
    return out


def ratfunc_from_laurent(ctx: PFormCtx, terms: dict) -> RatFunc:
    """Build num/den from possibly-negative exponent vectors by clearing
    with the minimal monomial."""
    clean = {}
    for e, c in terms.items():
        code = c.code if isinstance(c, FFElem) else c
        if code:
            clean[tuple(e)] = code
    if not clean:
        return ctx.zero()
    mins = [0] * ctx.n
    for e in clean:
        for i, v in enumerate(e):
            if v < mins[i]:
                mins[i] = v
    num = MPoly(ctx, {tuple(v - m for v, m in zip(e, mins)): c for e, c in clean.items()})
    den = MPoly(ctx, {tuple(-m for m in mins): 1})
    return RatFunc(num, den)
