"""The ring Z[u^(1/n)]: exact arithmetic, total order, norms and units.

An element is an integer coordinate vector (e_0, ..., e_{n-1}) standing for
e_0 + e_1 u^(1/n) + ... + e_{n-1} u^((n-1)/n).  Signs are decided exactly by
a shrinking dyadic enclosure of u^(1/n); nothing here ever rounds.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    ContextMismatch,
    InvalidContext,
    InvalidUnitSystem,
    NotAUnit,
)


def _integer_root(x: int, r: int) -> int:
    """Largest t with t^r <= x (x >= 0)."""
    if x < 2:
        return x
    t = int(round(x ** (1.0 / r)))
    while t**r > x:
        t -= 1
    while (t + 1) ** r <= x:
        t += 1
    return t


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class DegCtx:
    """Shared context for Z[u^(1/n)]: validates irreducibility of x^n - u
    and owns the dyadic enclosure used for exact sign decisions."""

    def __init__(self, n: int, u: int):
        if n < 1 or u < 2:
            raise InvalidContext(f"need n >= 1 and u >= 2, got n={n}, u={u}")
        for r in _prime_factors(n):
            if _integer_root(u, r) ** r == u:
                raise InvalidContext(
                    f"x^{n} - {u} is reducible over Q: {u} is a perfect {r}-th power"
                )
        self.n = n
        self.u = u
        # enclosure L/2^k <= u^(1/n) < (L+1)/2^k
        self._k = 0
        self._L = _integer_root(u, n)
        self._bounds_cache = None

    def _refine(self, bits: int = 8):
        k, L, n, u = self._k, self._L, self.n, self.u
        for _ in range(bits):
            k += 1
            L <<= 1
            if (L + 1) ** n <= u << (k * n):
                L += 1
        self._k, self._L = k, L
        self._bounds_cache = None

    def _pow_bounds(self):
        # lo[i], hi[i] bracket u^(i/n) * 2^(k*(n-1)) as integers
        if self._bounds_cache is None:
            k, L, m = self._k, self._L, self.n - 1
            lo = [(L**i) << (k * (m - i)) for i in range(m + 1)]
            hi = [((L + 1) ** i) << (k * (m - i)) for i in range(m + 1)]
            self._bounds_cache = (lo, hi)
        return self._bounds_cache

    def sign_of(self, coords) -> int:
        if not any(coords):
            return 0
        while True:
            lo, hi = self._pow_bounds()
            low = 0
            high = 0
            for i, c in enumerate(coords):
                if c > 0:
                    low += c * lo[i]
                    high += c * hi[i]
                elif c:
                    low += c * hi[i]
                    high += c * lo[i]
            if low > 0:
                return 1
            if high < 0:
                return -1
            # enclosure still straddles zero: nonzero vectors separate eventually
            self._refine()

    def elem(self, coords) -> DegElem:
        return DegElem(self, tuple(int(c) for c in coords))

    def from_int(self, c: int) -> DegElem:
        return DegElem(self, (int(c),) + (0,) * (self.n - 1))

    @property
    def one(self) -> DegElem:
        return self.from_int(1)

    @property
    def zero(self) -> DegElem:
        return self.from_int(0)

    def root(self, i: int = 1) -> DegElem:
        """u^(i/n) as an element."""
        coords = [0] * self.n
        q, r = divmod(i, self.n)
        coords[r] = self.u**q
        return DegElem(self, tuple(coords))

    def __eq__(self, other):
        return isinstance(other, DegCtx) and (self.n, self.u) == (other.n, other.u)

    def __hash__(self):
        return hash((self.n, self.u))

    def __repr__(self):
        return f"Z[{self.u}^(1/{self.n})]"


@lru_cache(maxsize=None)
def deg_ctx(n: int, u: int) -> DegCtx:
    return DegCtx(n, u)


class DegElem:
    """An element of Z[u^(1/n)], totally ordered by its real value."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: DegCtx, coords):
        self.ctx = ctx
        self.coords = tuple(coords)

    def _check(self, other):
        if not isinstance(other, DegElem):
            raise TypeError(f"expected DegElem, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        return DegElem(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return DegElem(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DegElem(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        self._check(other)
        n, u = self.ctx.n, self.ctx.u
        out = [0] * n
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        k = i + j
                        if k < n:
                            out[k] += a * b
                        else:
                            out[k - n] += a * b * u
        return DegElem(self.ctx, tuple(out))

    def __pow__(self, k: int):
        base = self if k >= 0 else self.unit_inverse()
        k = abs(k)
        out = self.ctx.one
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- order -----------------------------------------------------------

    def sign(self) -> int:
        return self.ctx.sign_of(self.coords)

    def __eq__(self, other):
        if not isinstance(other, DegElem):
            return NotImplemented
        return self.ctx == other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash((self.coords, self.ctx.n, self.ctx.u))

    def __lt__(self, other):
        self._check(other)
        return (self - other).sign() < 0

    def __le__(self, other):
        self._check(other)
        return (self - other).sign() <= 0

    def __gt__(self, other):
        self._check(other)
        return (self - other).sign() > 0

    def __ge__(self, other):
        self._check(other)
        return (self - other).sign() >= 0

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self == self.ctx.one

    # --- norm and units ---------------------------------------------------

    def _mult_matrix(self):
        """Row k, column j: coefficient of u^(k/n) in self * u^(j/n)."""
        n, u = self.ctx.n, self.ctx.u
        a = self.coords
        return [[a[k - j] * (1 if k >= j else u) for j in range(n)] for k in range(n)]

    def norm(self) -> int:
        return _det_bareiss(self._mult_matrix())

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def unit_inverse(self) -> DegElem:
        """Inverse computed from the characteristic polynomial of the
        multiplication matrix; only defined for units."""
        cs = _charpoly_coeffs(self._mult_matrix())
        cn = cs[-1]
        if abs(cn) != 1:
            raise NotAUnit(f"{self} has norm {self.norm()}")
        # x^n + c1 x^(n-1) + ... + cn = 0  =>  a^(-1) = -(a^(n-1)+c1 a^(n-2)+...+c_{n-1})/cn
        acc = self.ctx.one
        for c in cs[:-1]:
            acc = acc * self + self.ctx.from_int(c)
        out = DegElem(self.ctx, tuple(-cn * v for v in acc.coords))
        if out * self != self.ctx.one:
            raise NotAUnit(f"inverse verification failed for {self}")
        return out

    # --- io ----------------------------------------------------------------

    def to_json(self):
        return list(self.coords)

    def __repr__(self):
        n, u = self.ctx.n, self.ctx.u
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                root = f"{u}^({i}/{n})" if n > 1 else str(u**i)
                if c == 1:
                    parts.append(root)
                elif c == -1:
                    parts.append(f"-{root}")
                else:
                    parts.append(f"{c}*{root}")
        if not parts:
            return "0"
        out = parts[0]
        for piece in parts[1:]:
            out += piece if piece.startswith("-") else "+" + piece
        return out


def _det_bareiss(mat) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    n = len(mat)
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _charpoly_coeffs(mat):
    """Faddeev-LeVerrier: [c1, ..., cn] of x^n + c1 x^(n-1) + ... + cn.

    All divisions are exact, so everything stays in Z.
    """
    n = len(mat)
    coeffs = []
    m_k = [row[:] for row in mat]
    for k in range(1, n + 1):
        c = -sum(m_k[i][i] for i in range(n)) // k
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            m_k[i][i] += c
        m_k = _mat_mul(mat, m_k)
    return coeffs


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


# --- extended degrees (the zero function gets -inf / +inf) -----------------


class _Infinity:
    __slots__ = ("positive",)

    def __init__(self, positive: bool):
        self.positive = positive

    def sign(self) -> int:
        return 1 if self.positive else -1

    def __neg__(self):
        return POS_INFINITY if not self.positive else NEG_INFINITY

    def to_json(self):
        return "+inf" if self.positive else "-inf"

    def __repr__(self):
        return "+inf" if self.positive else "-inf"


POS_INFINITY = _Infinity(True)
NEG_INFINITY = _Infinity(False)


def is_infinite(x) -> bool:
    return isinstance(x, _Infinity)


def ext_sign(x) -> int:
    return x.sign()


def ext_mul(a, b):
    """Degree product extended to infinities by sign (0 * inf never occurs
    in the composition laws and is rejected)."""
    ia, ib = is_infinite(a), is_infinite(b)
    if not ia and not ib:
        return a * b
    sa, sb = ext_sign(a), ext_sign(b)
    if sa == 0 or sb == 0:
        raise ValueError("0 * infinity is undefined in the degree laws")
    return POS_INFINITY if sa * sb > 0 else NEG_INFINITY


def ext_eq(a, b) -> bool:
    if is_infinite(a) or is_infinite(b):
        return a is b
    return a == b


def ext_to_json(x):
    return x.to_json()


def ext_from_json(ctx: DegCtx, data):
    if data == "+inf":
        return POS_INFINITY
    if data == "-inf":
        return NEG_INFINITY
    return ctx.elem(data)


class UnitSystem:
    """A user-supplied list of claimed fundamental units, validated by norm
    only (fundamentality itself is taken on trust)."""

    def __init__(self, units):
        units = list(units)
        if not units:
            raise InvalidUnitSystem("empty unit system")
        for e in units:
            if not e.is_unit():
                raise InvalidUnitSystem(f"{e} has norm {e.norm()}, not a unit")
        self.units = units
        self.ctx = units[0].ctx

    def __iter__(self):
        return iter(self.units)

    def __len__(self):
        return len(self.units)
