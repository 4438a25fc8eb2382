"""Group-structure machinery around the composition monoid.

Covers the monomial-unit embedding, variable-block embeddings between
contexts, Moebius elements, the twisted unit-pair group with its degree
homomorphism, infinite-order certification, coset classification, the
commutation/centralizer tests, and a word/relation search harness.

The finite-index subgroup used throughout is "both degree components
nonzero".  On invertible elements this coincides with "their product is
strictly positive", because the two components can never take opposite
signs there; the literal nonzero test is what gets applied to arbitrary
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core import (
    DeltaPair,
    _boundary_constant,
    _require_nonconstant,
    compose,
    delta,
    iterate,
    verify_inverse,
)
from .degrees import DegElem, UnitSystem, deg_ctx
from .errors import (
    ContextMismatch,
    InvalidContext,
    MissingInverse,
    NotADivisor,
    NotAUnit,
    PreconditionUnmet,
    VerificationFailed,
    ZeroExponent,
)
from .ffield import FFElem, FieldCtx
from .poly import MPoly, PFormCtx, RatFunc

INFINITE = "infinite"
INCONCLUSIVE = "inconclusive"


# --- rational monomials -----------------------------------------------------


@dataclass(frozen=True)
class RationalMonomial:
    """x_0^(e_0) ... x_{n-1}^(e_{n-1}) with integer exponents, coefficient 1."""

    ctx: PFormCtx
    exps: tuple

    def degree(self) -> DegElem:
        return self.ctx.deg.elem(self.exps)

    def as_ratfunc(self) -> RatFunc:
        return self.ctx.monomial(self.exps)

    @classmethod
    def from_ratfunc(cls, f: RatFunc) -> "RationalMonomial":
        r = f.content_reduce()
        if len(r.num.terms) != 1 or len(r.den.terms) != 1:
            raise ValueError("not a monomial")
        (en, cn), = r.num.terms.items()
        (ed, _), = r.den.terms.items()
        if cn != 1:
            raise ValueError("monomials here have coefficient 1")
        return cls(f.ctx, tuple(a - b for a, b in zip(en, ed)))

    def __repr__(self):
        return repr(self.as_ratfunc())


def unit_to_monomial(ctx: PFormCtx, e: DegElem) -> RationalMonomial:
    """Transcribe a ring unit into the invertible monomial with the same
    coordinates (the embedding of the unit group)."""
    if e.ctx != ctx.deg:
        raise ContextMismatch(f"unit lives in {e.ctx}, context needs {ctx.deg}")
    if not e.is_unit():
        raise NotAUnit(f"{e} has norm {e.norm()}")
    return RationalMonomial(ctx, e.coords)


def monomial_to_degree(m: RationalMonomial) -> DegElem:
    """Inverse transcription: exponent vector as a ring element."""
    return m.degree()


def is_invertible_monomial(m: RationalMonomial) -> bool:
    return m.degree().is_unit()


def random_unit(units, rng, max_word: int = 6) -> DegElem:
    """A unit sampled as a short word in the supplied fundamental units."""
    out = units[0].ctx.one
    for _ in range(rng.randint(1, max_word)):
        u = rng.choice(units)
        out = out * (u if rng.random() < 0.5 else u.unit_inverse())
    if rng.random() < 0.5:
        out = -out
    return out


# --- variable-block embedding ------------------------------------------------


def embed(f: RatFunc, target: PFormCtx) -> RatFunc:
    """Relabel x_i -> x_{i*k}, k = target.n / source.n; a homomorphism of
    the composition monoids."""
    src = f.ctx
    if src.field != target.field:
        raise InvalidContext("embedding requires the same coefficient field")
    if target.n % src.n:
        raise NotADivisor(f"{src.n} does not divide {target.n}")
    k = target.n // src.n

    def remap(terms):
        out = {}
        for e, c in terms.items():
            new = [0] * target.n
            for i, v in enumerate(e):
                new[i * k] = v
            out[tuple(new)] = c
        return out

    return RatFunc(MPoly(target, remap(f.num.terms)), MPoly(target, remap(f.den.terms)))


# --- Moebius elements --------------------------------------------------------


class Moebius:
    """(a x0 + b)/(c x0 + d) with ad - bc != 0, scaled so the first nonzero
    of (a, b, c, d) equals 1."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field: FieldCtx, a, b, c, d):
        coeffs = [
            v.code if isinstance(v, FFElem) else field.from_int(v)
            for v in (a, b, c, d)
        ]
        det = field.sub(field.mul(coeffs[0], coeffs[3]), field.mul(coeffs[1], coeffs[2]))
        if det == 0:
            raise InvalidContext("singular Moebius coefficients")
        lead = next(v for v in coeffs if v)
        if lead != 1:
            inv = field.inv(lead)
            coeffs = [field.mul(v, inv) for v in coeffs]
        self.field = field
        self.a, self.b, self.c, self.d = coeffs

    @classmethod
    def from_codes(cls, field: FieldCtx, a: int, b: int, c: int, d: int) -> "Moebius":
        return cls(field, *(field.elem_from_code(v) for v in (a, b, c, d)))

    def inverse(self) -> "Moebius":
        f = self.field
        return Moebius.from_codes(f, self.d, f.neg(self.b), f.neg(self.c), self.a)

    def matmul(self, other: "Moebius") -> "Moebius":
        f = self.field
        return Moebius.from_codes(
            f,
            f.add(f.mul(self.a, other.a), f.mul(self.b, other.c)),
            f.add(f.mul(self.a, other.b), f.mul(self.b, other.d)),
            f.add(f.mul(self.c, other.a), f.mul(self.d, other.c)),
            f.add(f.mul(self.c, other.b), f.mul(self.d, other.d)),
        )

    def as_ratfunc(self, ctx: PFormCtx) -> RatFunc:
        if ctx.field != self.field:
            raise InvalidContext("Moebius element belongs to a different field")
        x0 = ctx.poly_var(0)
        num = x0.scale(self.a) + ctx.poly_const(self.field.elem_from_code(self.b))
        den = x0.scale(self.c) + ctx.poly_const(self.field.elem_from_code(self.d))
        return RatFunc(num, den)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.field == other.field and (self.a, self.b, self.c, self.d) == (
            other.a,
            other.b,
            other.c,
            other.d,
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b, self.c, self.d))

    def __repr__(self):
        return repr(self.as_ratfunc(PFormCtx(self.field, 1)))


def moebius_identity(field: FieldCtx) -> Moebius:
    return Moebius(field, 1, 0, 0, 1)


# --- the twisted unit-pair group ---------------------------------------------


class UnitPair:
    """A pair of same-sign units; the product swaps the left pair when the
    right-hand pair is negative.  Target of the degree-pair homomorphism."""

    __slots__ = ("a", "b")

    def __init__(self, a: DegElem, b: DegElem):
        if not (a.is_unit() and b.is_unit()):
            raise NotAUnit(f"({a}, {b}) has a non-unit component")
        if a.sign() * b.sign() != 1:
            raise InvalidContext(f"components of ({a}, {b}) differ in sign")
        self.a = a
        self.b = b

    def __mul__(self, other: "UnitPair") -> "UnitPair":
        if other.a.sign() > 0:
            return UnitPair(self.a * other.a, self.b * other.b)
        return UnitPair(self.b * other.a, self.a * other.b)

    def is_identity(self) -> bool:
        return self.a.is_one() and self.b.is_one()

    def __eq__(self, other):
        if not isinstance(other, UnitPair):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"({self.a}, {self.b})"


def unit_pair_identity(deg) -> UnitPair:
    return UnitPair(deg.one, deg.one)


def delta_unit_pair(f: RatFunc) -> UnitPair:
    """delta(f) as a unit pair; raises when f is outside the finite-index
    subgroup where the pair is defined."""
    d = delta(f)
    return UnitPair(d.dmax, d.dmin)


def certify_infinite_order(f: RatFunc):
    """(verdict, reason): 'infinite' when the squared degree pair is not the
    identity, which pushes f onto an element of infinite order."""
    _require_nonconstant(f)
    d = delta(f)
    smax, smin = d.dmax.sign(), d.dmin.sign()
    if smax == 0 or smin == 0:
        return INCONCLUSIVE, "a degree component is zero"
    if smax != smin:
        return INCONCLUSIVE, "degree components differ in sign"
    if not (d.dmax.is_unit() and d.dmin.is_unit()):
        return INCONCLUSIVE, "degree components are not units"
    pair = UnitPair(d.dmax, d.dmin)
    square = pair * pair
    if not square.is_identity():
        return INFINITE, f"delta(f)^2 = {square} != (1, 1)"
    return INCONCLUSIVE, "delta(f)^2 = (1, 1)"


# --- coset system -------------------------------------------------------------


def pair_system(field: FieldCtx):
    """Ordered pairs (a, b), a < b in the fixed element order, covering each
    two-element subset of the nonzero elements exactly once."""
    nz = sorted(range(1, field.q), key=field.sort_key)
    return [(a, b) for i, a in enumerate(nz) for b in nz[i + 1 :]]


def coset_representatives(field: FieldCtx):
    """The q(q+1)/2 Moebius representatives of the left cosets of the
    nonzero-degree subgroup."""
    elems = sorted(range(field.q), key=field.sort_key)
    reps = [Moebius(field, 1, field.elem_from_code(a), 0, 1) for a in elems]
    reps += [Moebius(field, 0, 1, 1, field.elem_from_code(b)) for b in elems if b]
    reps += [
        Moebius(field, field.elem_from_code(a), field.elem_from_code(b), 1, 1)
        for a, b in pair_system(field)
    ]
    return reps


def classify_coset(f: RatFunc):
    """Pick the coset representative from the sign pattern of delta(f) and
    the boundary coefficient ratios, then verify the choice by composition.

    Returns (representative, verified); a failed verification raises, which
    signals either a wrong derivation or a non-invertible input.
    """
    _require_nonconstant(f)
    field = f.ctx.field
    d = delta(f)
    smax, smin = d.dmax.sign(), d.dmin.sign()

    if smax != 0 and smin != 0:
        rep = moebius_identity(field)
    elif smax == 0 and smin < 0:
        rep = Moebius(field, 1, _boundary_constant(f, top=True), 0, 1)
    elif smax == 0 and smin > 0:
        recip = f.inverse()
        rep = Moebius(field, 0, 1, 1, _boundary_constant(recip, top=True))
    elif smin == 0 and smax > 0:
        rep = Moebius(field, 1, _boundary_constant(f, top=False), 0, 1)
    elif smin == 0 and smax < 0:
        recip = f.inverse()
        rep = Moebius(field, 0, 1, 1, _boundary_constant(recip, top=False))
    else:
        top = _boundary_constant(f, top=True)
        bottom = _boundary_constant(f, top=False)
        if top == bottom:
            raise VerificationFailed(
                "boundary constants coincide; the input violates the sign law"
            )
        first, second = sorted((top.code, bottom.code), key=field.sort_key)
        rep = Moebius(field, field.elem_from_code(first), field.elem_from_code(second), 1, 1)

    check = compose(rep.inverse().as_ratfunc(f.ctx), f)
    dc = delta(check)
    verified = dc.dmax.sign() != 0 and dc.dmin.sign() != 0
    if not verified:
        raise VerificationFailed(
            f"representative {rep} does not move the input into the subgroup"
        )
    return rep, verified


# --- commutation and centralizers ---------------------------------------------


def commutes(f: RatFunc, g: RatFunc) -> bool:
    _require_nonconstant(f)
    _require_nonconstant(g)
    return compose(f, g) == compose(g, f)


def centralizer_form_check(f: RatFunc, e: DegElem) -> bool:
    """For f commuting with the invertible monomial of a positive unit
    e != 1: is f a scalar multiple c of a monomial with
    c^(sum of coordinates - 1) = 1?"""
    ctx = f.ctx
    if e.ctx != ctx.deg:
        raise ContextMismatch("unit from a different degree ring")
    if not e.is_unit() or e.sign() <= 0 or e.is_one():
        raise PreconditionUnmet("need a positive unit different from 1")
    mono = RationalMonomial(ctx, e.coords).as_ratfunc()
    if not commutes(f, mono):
        raise PreconditionUnmet("f does not commute with the monomial")
    r = f.content_reduce()
    if len(r.num.terms) != 1 or len(r.den.terms) != 1:
        return False
    c = next(iter(r.num.terms.values()))
    k = sum(e.coords) - 1
    return ctx.field.pow_(c, k) == 1


def central_scalars(units, field: FieldCtx):
    """(d, mu_d): the gcd of the unit coordinate sums minus one together
    with q - 1, and the d-th roots of unity in the field."""
    us = units if isinstance(units, UnitSystem) else UnitSystem(units)
    d = field.q - 1
    for e in us:
        d = gcd(d, abs(sum(e.coords) - 1))
    mu = [
        field.elem_from_code(c)
        for c in sorted(range(1, field.q), key=field.sort_key)
        if field.pow_(c, d) == 1
    ]
    return d, mu


# --- words and relation search --------------------------------------------------


@dataclass(frozen=True)
class Word:
    """Generator word: ((name, exponent), ...) with nonzero exponents and no
    adjacent atoms on the same generator."""

    atoms: tuple

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.atoms)

    def to_json(self):
        return [[name, e] for name, e in self.atoms]

    def __repr__(self):
        if not self.atoms:
            return "<empty word>"
        return " . ".join(f"{name}^{e}" if e != 1 else name for name, e in self.atoms)


class GeneratorTable:
    """Named generators with optionally registered (verified) inverses."""

    def __init__(self, ctx: PFormCtx):
        self.ctx = ctx
        self._fns = {}
        self._invs = {}

    def add(self, name: str, fn: RatFunc, inverse: RatFunc | None = None):
        _require_nonconstant(fn)
        if fn.ctx != self.ctx:
            raise InvalidContext("generator from a different context")
        if inverse is not None:
            if not verify_inverse(fn, inverse):
                raise VerificationFailed(f"claimed inverse of {name!r} fails")
            self._invs[name] = inverse
        self._fns[name] = fn
        return self

    def names(self):
        return list(self._fns)

    def fn(self, name: str) -> RatFunc:
        return self._fns[name]

    def inverse(self, name: str) -> RatFunc:
        if name not in self._invs:
            raise MissingInverse(f"no inverse registered for {name!r}")
        return self._invs[name]

    def has_inverse(self, name: str) -> bool:
        return name in self._invs

    def is_involution(self, name: str) -> bool:
        return name in self._invs and self._invs[name] == self._fns[name]


def expand_word(word: Word, table: GeneratorTable) -> RatFunc:
    """Left-to-right composition of the atom expansions."""
    result = None
    for name, e in word.atoms:
        if e == 0:
            raise ZeroExponent(f"zero exponent on {name!r}")
        base = table.fn(name) if e > 0 else table.inverse(name)
        part = iterate(base, abs(e))
        result = part if result is None else compose(result, part)
    return table.ctx.var(0) if result is None else result


def alternating_word_delta(exponents) -> DeltaPair:
    """Closed-form degree pair of
    (x0 x1)^(e_1) o (x0+1) o ... o (x0 x1)^(e_k) o (x0+1)
    over F_2 in two variables, without expanding the word."""
    exps = list(exponents)
    if not exps or any(e == 0 for e in exps):
        raise ZeroExponent("exponents must be nonzero")
    dc = deg_ctx(2, 2)
    base = dc.elem((1, 1))  # 1 + sqrt(2)
    top = base ** sum(exps)
    if len(exps) % 2 == 0:
        return DeltaPair(top, base ** sum(exps[0::2]))
    return DeltaPair(top, dc.zero)


@dataclass
class SearchResult:
    relations: list
    nodes: int
    budget_exceeded: bool

    def to_json(self, table: GeneratorTable | None = None):
        rels = []
        for w in self.relations:
            entry = {"atoms": w.to_json()}
            if table is not None:
                f = expand_word(w, table)
                ident = table.ctx.var(0)
                # relations are verified identities; print the reduced form
                entry["function"] = repr(ident if f == ident else f)
            rels.append(entry)
        return {
            "relations": rels,
            "nodes": self.nodes,
            "budget_exceeded": self.budget_exceeded,
        }


def _alternating_shape_filter(table: GeneratorTable):
    """Closed-form pruning for the alternating monomial/shift shape over
    F_2 in two variables; None when the generator set does not match."""
    ctx = table.ctx
    if ctx.field.q != 2 or ctx.n != 2:
        return None
    mono = ctx.monomial((1, 1))
    shift = ctx.var(0) + 1
    mono_names = {n for n in table.names() if table.fn(n) == mono}
    shift_names = {n for n in table.names() if table.fn(n) == shift}
    if not mono_names or not shift_names:
        return None

    def keep(word: Word) -> bool:
        atoms = word.atoms
        if len(atoms) % 2:
            return True
        exps = []
        for i in range(0, len(atoms), 2):
            n1, e1 = atoms[i]
            n2, e2 = atoms[i + 1]
            if n1 not in mono_names or n2 not in shift_names or e2 != 1:
                return True  # not the covered shape; no prediction
            exps.append(e1)
        # identity forces an even count >= 6 of monomial blocks with both
        # alternating exponent sums zero
        k = len(exps)
        if k % 2 or k < 6:
            return False
        return sum(exps[0::2]) == 0 and sum(exps[1::2]) == 0

    return keep


def relation_search(
    table: GeneratorTable,
    max_len: int,
    word_filter=None,
    budget: int = 10**6,
) -> SearchResult:
    """Enumerate reduced words up to the length bound and collect those that
    expand to the identity.

    The search stops once the node budget is exhausted; partial results are
    returned with the budget_exceeded flag set.
    """
    ctx = table.ctx
    ident = ctx.var(0)
    names = sorted(table.names())
    # involutions need no negative exponents; uninvertible generators have none
    allowed_signs = {
        name: (1,) if table.is_involution(name) or not table.has_inverse(name) else (1, -1)
        for name in names
    }
    auto = _alternating_shape_filter(table)
    relations = []
    state = {"nodes": 0, "exceeded": False}

    def passes(word: Word) -> bool:
        if auto is not None and not auto(word):
            return False
        if word_filter is not None and not word_filter(word):
            return False
        return True

    def dfs(atoms, expansion, remaining):
        if remaining == 0:
            return
        last_name, last_sign = (atoms[-1][0], 1 if atoms[-1][1] > 0 else -1) if atoms else (None, 0)
        for name in names:
            for sign in allowed_signs[name]:
                if name == last_name and sign != last_sign:
                    continue  # trivial cancellation
                if state["exceeded"]:
                    return
                if state["nodes"] >= budget:
                    state["exceeded"] = True
                    return
                state["nodes"] += 1
                step = table.fn(name) if sign > 0 else table.inverse(name)
                new_exp = compose(expansion, step)
                if name == last_name:
                    new_atoms = atoms[:-1] + [(name, atoms[-1][1] + sign)]
                else:
                    new_atoms = atoms + [(name, sign)]
                word = Word(tuple(new_atoms))
                if passes(word) and new_exp == ident:
                    relations.append(word)
                dfs(new_atoms, new_exp, remaining - 1)

    dfs([], ident, max_len)
    relations.sort(key=lambda w: (w.length, w.atoms))
    return SearchResult(relations, state["nodes"], state["exceeded"])
