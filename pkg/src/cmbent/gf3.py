"""GF(3^n) in polynomial basis.

Elements are packed as integer *codes*: the coefficient of x^i is the
i-th base-3 digit of the code, so the code of ``2x^2 + 1`` is 19 and its
string form is ``"201"``.  Scalar arithmetic works on coefficient lists
and covers every n up to 38; whole-field scans go through lazily built
numpy exp/log tables (n <= ``TABLE_MAX_N``).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from .exceptions import (
    BadParameters,
    DegreeMismatch,
    NotInPrimeSubfield,
    ReducibleModulus,
    SizeLimit,
    ZeroArgument,
    ZeroInverse,
)
from .trits import MAX_N, digits_to_int, int_to_digits

TABLE_MAX_N = 14


# -- polynomials over GF(3), coefficient lists least significant first ------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmod(a, f):
    a = [c % 3 for c in a]
    df = len(f) - 1
    inv_lead = f[-1]  # 1 and 2 are self-inverse mod 3
    for deg in range(len(a) - 1, df - 1, -1):
        c = a[deg]
        if c:
            c = (c * inv_lead) % 3
            shift = deg - df
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fi) % 3
    return _trim(a[:df]) if len(a) >= df else _trim(a)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return [c % 3 for c in out]


def _psub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _trim([(x - y) % 3 for x, y in zip(a, b)])


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b)
    return a


def _frobenius_iterates(f, count):
    """x^(3^i) mod f for i = 1..count."""
    out = []
    cur = [0, 1]
    for _ in range(count):
        cube = _pmod(_pmul(_pmul(cur, cur), cur), f)
        out.append(cube)
        cur = cube
    return out


def _prime_factors(m):
    return sorted(factorint(m))


def is_irreducible(poly):
    """Rabin's test for a monic polynomial (coefficients LSB first)."""
    f = _trim(poly)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    frob = _frobenius_iterates(f, n)
    x = [0, 1]
    if _psub(frob[n - 1], x):
        return False
    for q in _prime_factors(n):
        g = _pgcd(f, _psub(frob[n // q - 1], x))
        if len(g) > 1:
            return False
    return True


def poly_to_string(poly):
    return "".join(str(c) for c in reversed(poly))


def poly_from_string(text):
    if not text or any(c not in "012" for c in text):
        raise BadParameters(f"not a GF(3) coefficient string: {text!r}")
    return tuple(int(c) for c in reversed(text))


def find_irreducible(n):
    """Lexicographically smallest monic irreducible polynomial of degree n."""
    if not isinstance(n, int) or n < 2 or n > MAX_N:
        raise BadParameters(f"n must satisfy 2 <= n <= {MAX_N}")
    for low in range(3**n):
        poly = int_to_digits(low, n) + (1,)
        if poly[0] == 0:
            continue
        if is_irreducible(poly):
            return poly
    raise AssertionError("no irreducible polynomial found")


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(3^n) = GF(3)[x] / (modulus).

    ``modulus`` holds n + 1 coefficients, least significant first;
    ``generator`` is the code of a primitive element (or None).
    """

    n: int
    modulus: tuple
    generator: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.n, self.modulus))

    @property
    def size(self):
        return 3**self.n

    @property
    def mult_order(self):
        return 3**self.n - 1

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        if self.generator is None:
            raise BadParameters("field context has no generator")
        return FieldElement(self, self.generator)

    def element(self, value):
        """Coerce a code, a coefficient string or ``"g^e"`` into an element."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise BadParameters("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.size:
                raise BadParameters(f"element code out of range: {value}")
            return FieldElement(self, value)
        text = str(value).strip().replace(" ", "")
        m = re.fullmatch(r"g(?:\^(-?\d+))?", text)
        if m:
            return power(self.gen, int(m.group(1) or 1))
        # short coefficient strings are left-padded: "1" is the constant 1
        if not text or len(text) > self.n or any(c not in "012" for c in text):
            raise BadParameters(
                f"element must be 'g^e' or at most {self.n} digits over 0,1,2: {value!r}"
            )
        return FieldElement(self, int(text, 3))

    def elements(self):
        for code in range(self.size):
            yield FieldElement(self, code)

    def to_json(self):
        return {
            "n": self.n,
            "modulus": poly_to_string(self.modulus),
            "generator": None
            if self.generator is None
            else str(FieldElement(self, self.generator)),
        }

    @property
    def trace_vector(self):
        """Tr(x^i) for the basis powers, computed from the Frobenius sum."""
        if "trace_vector" not in self._cache:
            vec = []
            for i in range(self.n):
                basis = FieldElement(self, 3**i)
                vec.append(_frobenius_trace(basis))
            self._cache["trace_vector"] = tuple(vec)
        return self._cache["trace_vector"]

    def tables(self):
        if "tables" not in self._cache:
            self._cache["tables"] = FieldTables(self)
        return self._cache["tables"]


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    code: int

    @property
    def coeffs(self):
        return int_to_digits(self.code, self.ctx.n)

    def __str__(self):
        return "".join(str(c) for c in reversed(self.coeffs))

    def __repr__(self):
        return f"FieldElement({self})"

    def __bool__(self):
        return self.code != 0

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise BadParameters("elements belong to different fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.ctx, other % 3)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        digits = [(a + b) % 3 for a, b in zip(self.coeffs, other.coeffs)]
        return FieldElement(self.ctx, digits_to_int(digits))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, digits_to_int([(-c) % 3 for c in self.coeffs]))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        return power(self, e)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return mul(self, power(other, -1))


def mul(x, y):
    if x.ctx != y.ctx:
        raise BadParameters("elements belong to different fields")
    if not x.code or not y.code:
        return x.ctx.zero
    prod = _pmod(_pmul(x.coeffs, y.coeffs), x.ctx.modulus)
    return FieldElement(x.ctx, digits_to_int(prod))


def power(x, e):
    """x^e by square-and-multiply; the exponent is reduced mod 3^n - 1.

    power(0, 0) is 1 by convention.
    """
    ctx = x.ctx
    if not x.code:
        if e < 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return ctx.one if e == 0 else ctx.zero
    e %= ctx.mult_order
    result = ctx.one
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def _frobenius_trace(x):
    total = x
    cur = x
    for _ in range(x.ctx.n - 1):
        cur = power(cur, 3)
        total = total + cur
    if total.code > 2:
        raise NotInPrimeSubfield(f"trace of {x} left the prime subfield")
    return total.code


def trace(x):
    """Absolute trace GF(3^n) -> GF(3), returned as 0, 1 or 2."""
    vec = x.ctx.trace_vector
    return sum(c * t for c, t in zip(x.coeffs, vec)) % 3


def eta(a):
    """Quadratic character: +1 on nonzero squares, -1 otherwise."""
    if not a.code:
        raise ZeroArgument("eta is undefined at 0")
    return 1 if power(a, a.ctx.mult_order // 2).code == 1 else -1


def _has_full_order(x, order, primes):
    if power(x, order).code != 1:
        return False
    return all(power(x, order // q).code != 1 for q in primes)


def find_generator(ctx):
    """First element (ascending code) of multiplicative order 3^n - 1."""
    order = ctx.mult_order
    primes = _prime_factors(order)
    for code in range(2, ctx.size):
        x = FieldElement(ctx, code)
        if _has_full_order(x, order, primes):
            return code
    raise AssertionError("no generator found")


def build_field(n, modulus=None):
    """Build a :class:`FieldCtx` with a verified modulus and a generator.

    ``modulus`` may be a most-significant-first string (``"101"``) or a
    least-significant-first coefficient sequence; by default the
    lexicographically smallest irreducible is used.
    """
    if not isinstance(n, int) or n < 2 or n > MAX_N:
        raise BadParameters(f"n must satisfy 2 <= n <= {MAX_N}")
    if modulus is None:
        poly = find_irreducible(n)
    else:
        poly = poly_from_string(modulus) if isinstance(modulus, str) else tuple(modulus)
        poly = tuple(_trim(poly))
        if len(poly) - 1 != n:
            raise DegreeMismatch(f"modulus has degree {len(poly) - 1}, expected {n}")
        if poly[-1] != 1:
            raise BadParameters("modulus must be monic")
        if not is_irreducible(poly):
            raise ReducibleModulus(f"{poly_to_string(poly)} is reducible over GF(3)")
    ctx = FieldCtx(n, poly)
    return FieldCtx(n, poly, find_generator(ctx))


# -- vectorized whole-field tables ---------------------------------------------

def powers_of_three(n):
    return 3 ** np.arange(n, dtype=np.int64)


def codes_to_digits(codes, n):
    codes = np.asarray(codes, dtype=np.int64)
    return ((codes[..., None] // powers_of_three(n)) % 3).astype(np.int8)


def digits_to_codes(digits):
    digits = np.asarray(digits, dtype=np.int64)
    return digits @ powers_of_three(digits.shape[-1])


def mul_matrix(c):
    """Matrix of y -> c*y on coefficient vectors (column i is c*x^i)."""
    ctx = c.ctx
    cols = [mul(c, FieldElement(ctx, 3**i)).coeffs for i in range(ctx.n)]
    return np.array(cols, dtype=np.int64).T


def mul_codes(codes, c):
    """Multiply every element of a code array by the constant ``c``."""
    digits = codes_to_digits(codes, c.ctx.n).astype(np.int64)
    return digits_to_codes((digits @ mul_matrix(c).T) % 3)


def neg_codes(codes, n):
    return digits_to_codes((-codes_to_digits(codes, n).astype(np.int64)) % 3)


def add_codes(x, y, n):
    s = codes_to_digits(x, n).astype(np.int64) + codes_to_digits(y, n)
    return digits_to_codes(s % 3)


class FieldTables:
    """exp/log/trace lookup tables over the whole field.

    ``exp[e]`` is the code of g^e for 0 <= e < 3^n - 1, ``log[code]`` the
    inverse map (``log[0] == -1``) and ``trace[code]`` the absolute trace.
    """

    def __init__(self, ctx):
        if ctx.n > TABLE_MAX_N:
            raise SizeLimit(f"lookup tables need n <= {TABLE_MAX_N}")
        g = ctx.gen
        order = ctx.mult_order
        exp = np.array([1], dtype=np.int64)
        while len(exp) < order:
            m = len(exp)
            take = min(m, order - m)
            exp = np.concatenate([exp, mul_codes(exp[:take], power(g, m))])
        log = np.full(ctx.size, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("generator does not cover the multiplicative group")
        all_digits = codes_to_digits(np.arange(ctx.size), ctx.n).astype(np.int64)
        self.ctx = ctx
        self.exp = exp
        self.log = log
        self.trace = ((all_digits @ np.array(ctx.trace_vector)) % 3).astype(np.int8)
        self.neg = digits_to_codes((-all_digits) % 3)

    def power_codes(self, codes, e):
        """x^e for every code in ``codes`` (0^e = 0 for e != 0)."""
        codes = np.asarray(codes, dtype=np.int64)
        logs = self.log[codes]
        out = self.exp[(logs * (e % self.ctx.mult_order)) % self.ctx.mult_order]
        return np.where(codes == 0, 0, out)

    def monomial_trace(self, coeff, exponent, codes):
        """Tr(coeff * x^exponent) for every x in ``codes``; 0 at x = 0."""
        codes = np.asarray(codes, dtype=np.int64)
        if not coeff.code:
            return np.zeros(codes.shape, dtype=np.int64)
        order = self.ctx.mult_order
        logs = self.log[codes]
        idx = (self.log[coeff.code] + logs * (exponent % order)) % order
        values = self.trace[self.exp[idx]].astype(np.int64)
        return np.where(codes == 0, 0, values)


def validate_cm(n, k, max_n=MAX_N):
    """Check the Coulter-Matthews preconditions; raise BadParameters listing failures.

    ``max_n=None`` drops the size cap for callers that never build the field.
    """
    failures = []
    if not isinstance(n, (int, np.integer)) or not isinstance(k, (int, np.integer)):
        raise BadParameters("n and k must be integers")
    if n < 2:
        failures.append("n must be at least 2")
    if max_n is not None and n > max_n:
        failures.append(f"n must be at most {max_n}")
    if k % 2 == 0:
        failures.append("k must be odd")
    if not 1 <= k < n:
        failures.append("k must satisfy 1 <= k < n")
    if n >= 1 and k >= 1 and math.gcd(n, k) != 1:
        failures.append("gcd(n, k) must be 1")
    if failures:
        raise BadParameters(failures)


class CMFunction:
    """x -> Tr(a * x^d) with d = (3^k + 1) / 2."""

    def __init__(self, ctx, a, k):
        validate_cm(ctx.n, k)
        a = ctx.element(a)
        if not a.code:
            raise BadParameters("a must be nonzero")
        self.ctx = ctx
        self.a = a
        self.k = k
        self.d = (3**k + 1) // 2

    def __call__(self, x):
        x = self.ctx.element(x)
        return trace(self.a * power(x, self.d)) if x.code else 0

    def table(self):
        """Values at every code 0 .. 3^n - 1."""
        tables = self.ctx.tables()
        return tables.monomial_trace(self.a, self.d, np.arange(self.ctx.size))


def cm_function(ctx, a, k):
    return CMFunction(ctx, a, k)
