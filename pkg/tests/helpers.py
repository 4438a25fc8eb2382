"""Shared random generators for the property suites.

All randomness is seeded by the callers, so every suite is reproducible.
The sign-class constructors build rational functions whose degree pair
lands in a prescribed sign pattern (+/-/0 per component), which the
composition-law tests need to cover every case of the law.
"""

from pforms.poly import MPoly, RatFunc

# sign of (dmax(g), dmin(g)): p/0/m per component; for quotients the two
# components are independent, so all nine patterns occur
SIGN_CLASSES = ("pp", "p0", "pm", "0p", "00", "0m", "mp", "m0", "mm")


def rand_code(field, rng, nonzero=False):
    return rng.randint(1 if nonzero else 0, field.q - 1)


def rand_poly(ctx, rng, max_terms=3, max_deg=2, nonzero=False, no_constant=False):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(ctx.n))
        if no_constant and not any(e):
            continue
        terms[e] = rand_code(ctx.field, rng, nonzero=True)
    if nonzero and not terms:
        e = [0] * ctx.n
        e[rng.randrange(ctx.n)] = 1
        terms[tuple(e)] = 1
    return MPoly(ctx, terms)


def rand_ratfunc(ctx, rng, max_terms=3, max_deg=2):
    num = rand_poly(ctx, rng, max_terms, max_deg)
    den = rand_poly(ctx, rng, max_terms, max_deg, nonzero=True)
    return RatFunc(num, den)


def rand_nonconstant(ctx, rng, max_terms=3, max_deg=2):
    while True:
        f = rand_ratfunc(ctx, rng, max_terms, max_deg)
        if not f.is_constant():
            return f


def _positive_poly(ctx, rng):
    """Nonzero polynomial with no constant term: both degree components
    strictly positive."""
    return rand_poly(ctx, rng, max_terms=3, max_deg=2, nonzero=True, no_constant=True)


def _nonzero_const(ctx, rng):
    return ctx.poly_const_code(rand_code(ctx.field, rng, nonzero=True))


def sign_pattern(g):
    """'pm' style label of (sign dmax, sign dmin)."""
    from pforms.core import delta

    def label(x):
        v = x.sign()
        return "p" if v > 0 else ("m" if v < 0 else "0")

    d = delta(g)
    return label(d.dmax) + label(d.dmin)


def rand_sign_class(ctx, rng, cls):
    """Rational function g with the requested sign pattern of
    (sign dmax(g), sign dmin(g)); never constant.  The construction is
    verified exactly and retried, so callers always get the asked class."""
    for _ in range(100):
        g = _build_sign_class(ctx, rng, cls)
        if not g.is_constant() and sign_pattern(g) == cls:
            return g
    raise AssertionError(f"could not build sign class {cls} over {ctx}")


def _build_sign_class(ctx, rng, cls):
    one = ctx.poly_one()
    if cls == "pp":
        return RatFunc(_positive_poly(ctx, rng), one)
    if cls == "mm":
        return RatFunc(one, _positive_poly(ctx, rng))
    if cls == "p0":
        return RatFunc(_positive_poly(ctx, rng) + _nonzero_const(ctx, rng), one)
    if cls == "m0":
        return RatFunc(one, _positive_poly(ctx, rng) + _nonzero_const(ctx, rng))
    if cls == "pm":
        # constant + high-degree terms over a low-degree monomial
        num = _nonzero_const(ctx, rng) + ctx.poly_var(0) ** 2 * _positive_poly(ctx, rng)
        den = ctx.poly_var(rng.randrange(ctx.n))
        return RatFunc(num, den)
    if cls == "mp":
        return _build_sign_class(ctx, rng, "pm").inverse()
    if cls == "0m":
        den = _positive_poly(ctx, rng)
        return RatFunc(_nonzero_const(ctx, rng) * den + one, den)
    if cls == "0p":
        num = _positive_poly(ctx, rng)
        return RatFunc(num, _nonzero_const(ctx, rng) + num)
    if cls == "00":
        # num and den share their top monomial and both have a constant term,
        # so both delta components vanish; the x0 middle term (in the
        # numerator only) keeps the quotient nonconstant
        extra = [rng.randint(0, 2) for _ in range(ctx.n)]
        if not any(extra):
            extra[rng.randrange(ctx.n)] = 1
        top_e = tuple(e + (1 if i == 0 else 0) for i, e in enumerate(extra))
        mid_e = (1,) + (0,) * (ctx.n - 1)
        zero_e = (0,) * ctx.n
        cs = [rand_code(ctx.field, rng, nonzero=True) for _ in range(5)]
        num = MPoly(ctx, {zero_e: cs[0], mid_e: cs[1], top_e: cs[2]})
        den = MPoly(ctx, {zero_e: cs[3], top_e: cs[4]})
        return RatFunc(num, den)
    raise ValueError(cls)
