"""Exact arithmetic in GF(p^k) and in the quadratic extension GF(q)[i].

Elements are encoded as integers ``code = sum(c_j * p**j)`` where ``c_j`` are
the little-endian coefficients in the polynomial basis.  The integer order of
codes is the canonical element order used everywhere in the package (it is
lexicographic on the coefficient vector read from the top degree down).

Scalar operations work on codes or on :class:`FieldElement` wrappers; the
``tables()`` helpers give dense numpy lookup tables for the vectorised graph
constructions.
"""
from __future__ import annotations

from functools import cached_property
from math import isqrt

import numpy as np

from .errors import InputError, VerificationError

MAX_FIELD_ORDER = 2**20
MAX_TABLE_ORDER = 2048


class NotPrime(InputError):
    pass


class DegreeZero(InputError):
    pass


class FieldTooLarge(InputError):
    pass


class ZeroInverse(InputError, ZeroDivisionError):
    pass


class EvenCharacteristic(InputError):
    pass


class NotDivisor(InputError):
    pass


class ZeroElement(InputError):
    pass


class NotPrimePower(InputError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
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


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


# -- polynomials over GF(p), little-endian coefficient lists -----------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo b (b nonzero, any leading coefficient)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - f * bj) % p
        _poly_trim(a)
    return a


def _monic_polys(p, deg):
    """All monic polynomials of degree ``deg`` in code order of the lower part."""
    for n in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


class FieldCtx:
    """Descriptor for GF(p^k) with a fixed irreducible modulus.

    Use :func:`gf_build` rather than calling this directly.
    """

    def __init__(self, p: int, k: int, modulus):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p**k
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise InputError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, p):
            raise InputError(f"modulus {self.modulus} is reducible over GF({p})")

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- code <-> coefficients ------------------------------------------------
    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.k == 1:
                return FieldElement(value % self.p, self)
            if not 0 <= value < self.order:
                raise InputError(f"code {value} out of range for GF({self.order})")
            return FieldElement(value, self)
        return FieldElement(self.encode(value), self)

    def elements(self):
        return [FieldElement(c, self) for c in range(self.order)]

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    # -- scalar arithmetic on codes ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, mul = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.encode(-c for c in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        p = self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.encode(_poly_mod(prod, self.modulus, p) + [0] * self.k)

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self.power(a, self.order - 2)

    # -- structure ------------------------------------------------------------------
    @cached_property
    def primitive(self) -> int:
        """Smallest code generating the multiplicative group."""
        n = self.order - 1
        factors = prime_factors(n) if n > 1 else []
        for g in range(1, self.order):
            if all(self.power(g, n // r) != 1 for r in factors):
                return g
        raise VerificationError("no primitive element found")  # pragma: no cover

    @cached_property
    def _exp_log(self):
        n = self.order - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        g, x = self.primitive, 1
        for e in range(n):
            exp[e] = x
            log[x] = e
            x = self.mul(x, g)
        return exp, log

    @cached_property
    def digits(self) -> np.ndarray:
        """(order, k) array of little-endian coefficients of every code."""
        codes = np.arange(self.order, dtype=np.int64)
        out = np.empty((self.order, self.k), dtype=np.int64)
        for j in range(self.k):
            out[:, j] = codes % self.p
            codes //= self.p
        return out

    def tables(self):
        """Dense (add, mul, neg) lookup tables, cached; order capped at MAX_TABLE_ORDER."""
        return self._tables

    @cached_property
    def _tables(self):
        if self.order > MAX_TABLE_ORDER:
            raise FieldTooLarge(f"tables need order <= {MAX_TABLE_ORDER}")
        p = self.p
        weights = p ** np.arange(self.k, dtype=np.int64)
        d = self.digits
        add = (((d[:, None, :] + d[None, :, :]) % p) * weights).sum(axis=2)
        neg = (((-d) % p) * weights).sum(axis=1)
        exp, log = self._exp_log
        n = self.order - 1
        mul = np.zeros((self.order, self.order), dtype=np.int64)
        nz_log = log[1:]
        mul[1:, 1:] = exp[(nz_log[:, None] + nz_log[None, :]) % n]
        for t in (add, neg, mul):
            t.setflags(write=False)
        return add, mul, neg

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.power(a, (self.order - 1) // 2) == 1


class FieldElement:
    """Immutable element of a :class:`FieldCtx`."""

    __slots__ = ("code", "ctx")

    def __init__(self, code: int, ctx: FieldCtx):
        object.__setattr__(self, "code", int(code))
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self):
        return self.ctx.coeffs(self.code)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise InputError("elements of different fields")
            return other.code
        return self.ctx(other).code

    def __add__(self, other):
        return FieldElement(self.ctx.add(self.code, self._other(other)), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx.sub(self.code, self._other(other)), self.ctx)

    def __rsub__(self, other):
        return FieldElement(self.ctx.sub(self._other(other), self.code), self.ctx)

    def __mul__(self, other):
        return FieldElement(self.ctx.mul(self.code, self._other(other)), self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx.neg(self.code), self.ctx)

    def __truediv__(self, other):
        return self * gf_inverse(FieldElement(self._other(other), self.ctx))

    def __pow__(self, e: int):
        return FieldElement(self.ctx.power(self.code, e), self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.code, self.ctx))

    def __lt__(self, other):
        return self.code < self._other(other)

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.code} (GF({self.ctx.p}))"
        return f"{self.coeffs} (GF({self.ctx.order}))"


def gf_build(p: int, k: int = 1) -> FieldCtx:
    """GF(p^k) with the first monic irreducible modulus in code order.

    ``gf_build(3, 2)`` gives GF(9) with modulus ``x^2 + 1`` (stored
    little-endian as ``(1, 0, 1)``).
    """
    if k < 1:
        raise DegreeZero("extension degree must be at least 1")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p**k > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"{p}^{k} exceeds the field-size cap {MAX_FIELD_ORDER}")
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return FieldCtx(p, k, poly)
    raise VerificationError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


def gf_from_order(q: int) -> FieldCtx:
    p, k = prime_power(q)
    return gf_build(p, k)


def gf_inverse(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx.inv(x.code), x.ctx)


def subgroup_member(x: FieldElement, m: int) -> bool:
    """True iff x lies in the multiplicative subgroup of order m (x^m = 1)."""
    n = x.ctx.order - 1
    if m < 1 or n % m:
        raise NotDivisor(f"{m} does not divide {n}")
    if x.code == 0:
        raise ZeroElement("0 is not in the multiplicative group")
    return x.ctx.power(x.code, m) == 1


def subgroup_elements(ctx: FieldCtx, m: int) -> list[int]:
    """Codes of the multiplicative subgroup of order m, ascending."""
    return [c for c in range(1, ctx.order) if subgroup_member(FieldElement(c, ctx), m)]


class QuadExt:
    """GF(q^2) modelled as pairs ``(x, y)`` meaning ``x + i*y`` with ``i^2 = c``.

    Codes of extension elements are ``x + q*y`` with x, y base codes, so the
    base field sits inside as the codes below q.
    """

    def __init__(self, base: FieldCtx, c: int):
        self.base = base
        self.q = base.order
        self.c = c
        self.order = self.q * self.q
        if base.is_square(c):
            raise VerificationError(f"{c} is a square in GF({self.q})")

    def __repr__(self):
        return f"QuadExt(q={self.q}, c={self.c})"

    def pair(self, code: int) -> tuple[int, int]:
        return code % self.q, code // self.q

    def code(self, x: int, y: int = 0) -> int:
        return x + self.q * y

    @property
    def i(self) -> int:
        return self.code(0, 1)

    def add(self, a: int, b: int) -> int:
        (x1, y1), (x2, y2) = self.pair(a), self.pair(b)
        B = self.base
        return self.code(B.add(x1, x2), B.add(y1, y2))

    def neg(self, a: int) -> int:
        x, y = self.pair(a)
        return self.code(self.base.neg(x), self.base.neg(y))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        (x1, y1), (x2, y2) = self.pair(a), self.pair(b)
        B = self.base
        re = B.add(B.mul(x1, x2), B.mul(self.c, B.mul(y1, y2)))
        im = B.add(B.mul(x1, y2), B.mul(x2, y1))
        return self.code(re, im)

    def power(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def in_base(self, a: int) -> bool:
        return a < self.q

    @cached_property
    def _tables(self):
        if self.order > MAX_TABLE_ORDER:
            raise FieldTooLarge(f"tables need order <= {MAX_TABLE_ORDER}")
        badd, bmul, bneg = self.base.tables()
        q = self.q
        codes = np.arange(self.order)
        x, y = codes % q, codes // q
        X1, X2 = x[:, None], x[None, :]
        Y1, Y2 = y[:, None], y[None, :]
        add = badd[X1, X2] + q * badd[Y1, Y2]
        re = badd[bmul[X1, X2], bmul[self.c, bmul[Y1, Y2]]]
        im = badd[bmul[X1, Y2], bmul[X2, Y1]]
        mul = re + q * im
        neg = bneg[x] + q * bneg[y]
        for t in (add, mul, neg):
            t.setflags(write=False)
        return add, mul, neg

    def tables(self):
        """Dense (add, mul, neg) tables over extension codes."""
        return self._tables


def quad_ext_build(q_ctx: FieldCtx) -> QuadExt:
    """Quadratic extension with i^2 = c, c the smallest non-square of GF(q)."""
    if q_ctx.p == 2:
        raise EvenCharacteristic("quadratic extension model needs odd q")
    for c in range(1, q_ctx.order):
        if not q_ctx.is_square(c):
            return QuadExt(q_ctx, c)
    raise VerificationError("no non-square found")  # pragma: no cover


def quad_ext_isomorphism(ext: QuadExt, target: FieldCtx) -> np.ndarray:
    """Field isomorphism from ``ext`` onto ``target`` as a code lookup array.

    The base field is embedded by sending its generator ``x`` to the smallest
    root of the base modulus in ``target``; ``i`` goes to the smallest square
    root of the image of ``c``.  The result is checked to be additive and
    multiplicative on all pairs.
    """
    base = ext.base
    if target.order != ext.order or target.p != base.p:
        raise InputError("target field has the wrong order")
    mod = base.modulus

    def evaluate(poly, z):
        acc = 0
        for coef in reversed(poly):
            acc = target.add(target.mul(acc, z), coef % target.p)
        return acc

    # prime-field codes coincide in both fields (codes 0..p-1)
    if base.k == 1:
        gen = None
    else:
        gen = next(z for z in range(target.order) if evaluate(mod, z) == 0)

    def embed(b: int) -> int:
        if gen is None:
            return b
        return evaluate(base.coeffs(b), gen)

    c_img = embed(ext.c)
    beta = next(z for z in range(target.order) if target.mul(z, z) == c_img)
    phi = np.empty(ext.order, dtype=np.int64)
    for code in range(ext.order):
        x, y = ext.pair(code)
        phi[code] = target.add(embed(x), target.mul(beta, embed(y)))
    if len(set(phi.tolist())) != ext.order:
        raise VerificationError("map is not a bijection")
    eadd, emul, _ = ext.tables()
    tadd, tmul, _ = target.tables()
    if not np.array_equal(phi[emul], tmul[phi[:, None], phi[None, :]]):
        raise VerificationError("map is not multiplicative")
    if not np.array_equal(phi[eadd], tadd[phi[:, None], phi[None, :]]):
        raise VerificationError("map is not additive")
    return phi
