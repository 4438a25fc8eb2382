"""Exact arithmetic in F_q, q = p^s, with explicit irreducible moduli.

Elements are encoded as integers in [0, q): the code ``v`` stands for the
coordinate vector (c_0, ..., c_{s-1}) in the power basis of the modulus
root t via v = sum c_i * p^i.  All context methods work on these codes;
:class:`FFElem` is a thin operator-overloading wrapper around them.
"""

from __future__ import annotations

from array import array
from functools import lru_cache

from .errors import DivideByZero, MissingModulus, NonPrime, ReducibleModulus

# q*q lookup tables are built below this bound; the polynomial kernel
# requires them, larger fields fall back to generic per-element arithmetic.
TABLE_LIMIT = 256

# canonical moduli (minimal base-p encoding among monic irreducibles)
_BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),  # t^2+t+1
    (2, 3): (1, 1, 0, 1),  # t^3+t+1
    (3, 2): (1, 0, 1),  # t^2+1
    (2, 4): (1, 1, 0, 0, 1),  # t^4+t+1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _poly_mod_mul(a, b, modulus, p):
    """Product of coefficient tuples reduced by the monic modulus over Z_p."""
    s = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: t^s = -(modulus[0] + ... + modulus[s-1] t^{s-1})
    for k in range(len(prod) - 1, s - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(s):
                prod[k - s + i] = (prod[k - s + i] - c * modulus[i]) % p
    return tuple(prod[:s]) if s > 0 else ()


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _irreducible(modulus, p) -> bool:
    """Root search for degree <= 3, trial division by lower degrees above."""
    deg = len(modulus) - 1
    if deg <= 1:
        return deg == 1
    if modulus[0] == 0:  # t divides
        return False
    if deg <= 3:
        return all(_poly_eval(modulus, x, p) != 0 for x in range(p))
    for d in range(2, deg // 2 + 1):
        for div in _enumerate_monic(p, d):
            if _poly_divides(div, modulus, p):
                return False
    return all(_poly_eval(modulus, x, p) != 0 for x in range(p))


def _enumerate_monic(p, deg):
    """Monic coefficient tuples of exact degree deg, ascending encoding order."""
    for low in range(p**deg):
        coeffs = []
        v = low
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        yield tuple(coeffs) + (1,)


def _poly_divides(d, f, p):
    """True if monic d divides f over Z_p (plain long division)."""
    rem = list(f)
    dd = len(d) - 1
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            for i in range(dd + 1):
                rem[k - dd + i] = (rem[k - dd + i] - c * d[i]) % p
    return all(c == 0 for c in rem[:dd])


class FieldCtx:
    """The finite field F_q, q = p^s, with elements encoded as ints in [0, q).

    For s > 1 a monic irreducible modulus of degree s over Z_p is required
    (built-in defaults exist for F_4, F_8, F_9 and F_16).
    """

    def __init__(self, p: int, s: int = 1, modulus=None):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if s < 1:
            raise NonPrime(f"extension degree must be >= 1, got {s}")
        if s == 1:
            modulus = (0, 1) if modulus is None else tuple(c % p for c in modulus)
        else:
            if modulus is None:
                modulus = _BUILTIN_MODULI.get((p, s))
                if modulus is None:
                    raise MissingModulus(
                        f"no built-in modulus for p={p}, s={s}; pass one explicitly"
                    )
            modulus = tuple(c % p for c in modulus)
        if len(modulus) != s + 1 or modulus[s] != 1:
            raise ReducibleModulus(
                f"modulus must be monic of degree {s}, got coefficients {modulus}"
            )
        if s > 1 and not _irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.s = s
        self.modulus = modulus
        self.q = p**s
        self._add_flat = None
        self._mul_flat = None
        self._inv_cache = None

    # --- encoding -------------------------------------------------------

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(tuple(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, v: int):
        out = []
        for _ in range(self.s):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def from_int(self, c: int) -> int:
        """The constant c mod p, as an element code."""
        return c % self.p

    # --- raw arithmetic on codes ---------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        v, out, mult = 0, 0, 1
        while a or b:
            v = (a % p + b % p) % p
            out += v * mult
            mult *= p
            a //= p
            b //= p
        return out

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((-a) % p) * mult
            mult *= p
            a //= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a * b) % self.p
        return self.encode(_poly_mod_mul(self.decode(a), self.decode(b), self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("inverse of zero")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_cache is None and self.q <= TABLE_LIMIT:
            self._inv_cache = [0] * self.q
            for x in range(1, self.q):
                self._inv_cache[x] = self.pow_(x, self.q - 2)
        if self._inv_cache is not None:
            return self._inv_cache[a]
        return self.pow_(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(q^k); the identity on F_q, computed honestly by powering."""
        out = a
        for _ in range(k):
            out = self.pow_(out, self.q)
        return out

    # --- lookup tables for the polynomial kernel ------------------------

    @property
    def tables_available(self) -> bool:
        return self.q <= TABLE_LIMIT

    def tables(self):
        """Flat q*q add/mul tables (entry [a*q+b]) as int64 arrays."""
        if not self.tables_available:
            return None
        if self._add_flat is None:
            q = self.q
            add = array("q", bytes(8 * q * q))
            mul = array("q", bytes(8 * q * q))
            for a in range(q):
                base = a * q
                for b in range(a, q):
                    v = self.add(a, b)
                    add[base + b] = v
                    add[b * q + a] = v
                    w = self.mul(a, b)
                    mul[base + b] = w
                    mul[b * q + a] = w
            self._add_flat, self._mul_flat = add, mul
        return self._add_flat, self._mul_flat

    # --- misc -----------------------------------------------------------

    def elements(self):
        return range(self.q)

    def elem(self, value) -> FFElem:
        if isinstance(value, FFElem):
            if value.ctx != self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, int):
            return FFElem(self, self.from_int(value))
        return FFElem(self, self.encode(value))

    def elem_from_code(self, code: int) -> FFElem:
        return FFElem(self, code)

    def str_of(self, v: int) -> str:
        """Polynomials in t with ascending powers, e.g. ``1+t``."""
        if self.s == 1:
            return str(v % self.p)
        if v == 0:
            return "0"
        parts = []
        for i, c in enumerate(self.decode(v)):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}t" if i == 1 else f"{head}t^{i}")
        return "+".join(parts)

    def sort_key(self, v: int):
        """Fixed element order: coefficient tuple, constant first."""
        return self.decode(v) if self.s > 1 else (v,)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        if self.s == 1:
            return f"F_{self.p}"
        return f"F_{self.q} (F_{self.p}[t], t^{self.s} via {self.modulus})"


class FFElem:
    """A field element: an element code bound to its FieldCtx."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FFElem):
            if other.ctx != self.ctx:
                raise ValueError("mixed fields")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.ctx, self.ctx.div(b, self.code))

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, k: int):
        return FFElem(self.ctx, self.ctx.pow_(self.code, k))

    def inverse(self) -> FFElem:
        return FFElem(self.ctx, self.ctx.inv(self.code))

    def frobenius(self, k: int = 1) -> FFElem:
        return FFElem(self.ctx, self.ctx.frobenius(self.code, k))

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.code, self.ctx.q))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.ctx.str_of(self.code)


@lru_cache(maxsize=None)
def _ff_make_cached(p, s, modulus):
    return FieldCtx(p, s, modulus)


def ff_make(p: int, s: int = 1, modulus=None) -> FieldCtx:
    """Build (and cache) a validated field context."""
    return _ff_make_cached(p, s, None if modulus is None else tuple(modulus))


def ff_from_q(q: int, modulus=None) -> FieldCtx:
    """Resolve a prime power q = p^s to its field context."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            s = 0
            qq = q
            while qq % p == 0:
                qq //= p
                s += 1
            if qq != 1:
                break
            return ff_make(p, s, modulus)
    raise NonPrime(f"{q} is not a prime power")
