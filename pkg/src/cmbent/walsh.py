"""Exact Walsh spectra over GF(3^n) with values in Z[omega].

Every character sum is carried as an Eisenstein integer a + b*omega
(omega = e^{2 pi i / 3}).  Vectorized spectra are pairs of int64 arrays
``(A, B)``.  The constant i^n 3^{n/2} is represented exactly as
(1 + 2 omega)^n, so weak regularity reduces to integer equality.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import gf3
from .cmdual import _check_size, derive_params, eval_dual_table
from .exceptions import (
    BadParameters,
    LengthMismatch,
    NoMatchingRotation,
    SingularTraceForm,
    SizeLimit,
    ZeroArgument,
)

FAST_MAX_N = 16


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int

    def __add__(self, other):
        other = _eis(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_eis(other))

    def __mul__(self, other):
        return eis_mul(self, _eis(other))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not Eisenstein integers")
        result, base = EisensteinInt(1, 0), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def rotate(self, t):
        """self * omega^t."""
        out = self
        for _ in range(t % 3):
            out = EisensteinInt(-out.b, out.a - out.b)
        return out

    def norm(self):
        return eis_norm(self)

    def to_json(self):
        return {"a": self.a, "b": self.b}

    def __str__(self):
        return f"{self.a}{self.b:+d}w"


def _eis(x):
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, (int, np.integer)):
        return EisensteinInt(int(x), 0)
    raise TypeError(f"cannot coerce {x!r} to an Eisenstein integer")


OMEGA = EisensteinInt(0, 1)


def eis_mul(x, y):
    # omega^2 = -1 - omega
    return EisensteinInt(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b)


def eis_norm(x):
    return x.a * x.a - x.a * x.b + x.b * x.b


def omega_power(t):
    return EisensteinInt(1, 0).rotate(t)


def reference_constant(n, eta_a):
    """(-1)^(n+1) * eta(a) * (1 + 2 omega)^n, i.e. (-1)^(n+1) eta(a) i^n 3^(n/2)."""
    if eta_a not in (1, -1):
        raise BadParameters("eta_a must be +1 or -1")
    sign = eta_a * (-1) ** (n + 1)
    return EisensteinInt(1, 2) ** n * sign


# -- array helpers -------------------------------------------------------------

def _rotate_arrays(A, B, t):
    """Elementwise (A + B omega) * omega^t for an int array ``t``."""
    t = np.asarray(t) % 3
    outA = np.where(t == 0, A, np.where(t == 1, -B, B - A))
    outB = np.where(t == 0, B, np.where(t == 1, A - B, -A))
    return outA, outB


def _counts_to_eis(c0, c1, c2):
    # c0 + c1 omega + c2 omega^2 with omega^2 = -1 - omega
    return c0 - c2, c1 - c2


def _check_table(ctx, table):
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (ctx.size,):
        raise LengthMismatch(f"table must have length 3^{ctx.n} = {ctx.size}")
    return table % 3


# -- brute force -----------------------------------------------------------------

def trace_form(ctx):
    """Matrix of Tr(x^i * x^j) over the polynomial basis."""
    key = "trace_form"
    if key not in ctx._cache:
        n = ctx.n
        x = gf3.FieldElement(ctx, 3)
        traces = [gf3.trace(gf3.power(x, e)) for e in range(2 * n - 1)]
        ctx._cache[key] = np.array(
            [[traces[i + j] for j in range(n)] for i in range(n)], dtype=np.int64
        )
    return ctx._cache[key]


def character_sums(ctx, table, lambdas, sign=1, chunk=None):
    """sum_x omega^(table[x] + sign*Tr(lambda x)) for each lambda, by brute force.

    Tr(lambda x) is the bilinear trace form applied to coefficient
    vectors, so this path shares nothing with the fast transform.
    """
    table = _check_table(ctx, table)
    _check_size(ctx.n)
    lambdas = np.atleast_1d(np.asarray(lambdas, dtype=np.int64))
    T = trace_form(ctx)
    xdig = gf3.codes_to_digits(np.arange(ctx.size), ctx.n).astype(np.int64)
    if chunk is None:
        chunk = max(1, (1 << 22) // ctx.size)
    outA = np.empty(len(lambdas), dtype=np.int64)
    outB = np.empty(len(lambdas), dtype=np.int64)
    for start in range(0, len(lambdas), chunk):
        lam = lambdas[start:start + chunk]
        ldig = gf3.codes_to_digits(lam, ctx.n).astype(np.int64)
        pair = ((ldig @ T) % 3) @ xdig.T
        vals = (table[None, :] + sign * pair) % 3
        c = [(vals == t).sum(axis=1) for t in range(3)]
        outA[start:start + chunk], outB[start:start + chunk] = _counts_to_eis(*c)
    return outA, outB


def walsh_bruteforce(ctx, table, lam):
    """The Walsh value sum_x omega^(f(x) - Tr(lam x)) at one point."""
    lam = ctx.element(lam)
    A, B = character_sums(ctx, table, [lam.code], sign=-1)
    return EisensteinInt(int(A[0]), int(B[0]))


def _cm_table(ctx, a, k):
    a = ctx.element(a)
    if not a.code:
        raise ZeroArgument("a must be nonzero")
    return gf3.cm_function(ctx, a, k).table()


def char_sum(ctx, a, k, lam):
    """sum_x omega^Tr(a x^d + lam x), exactly, by direct summation."""
    lam = ctx.element(lam)
    A, B = character_sums(ctx, _cm_table(ctx, a, k), [lam.code], sign=1)
    return EisensteinInt(int(A[0]), int(B[0]))


def char_sum_all(ctx, a, k):
    """char_sum at every lambda code, by direct summation."""
    return character_sums(ctx, _cm_table(ctx, a, k), np.arange(ctx.size), sign=1)


def additive_sum(ctx, lam):
    """sum_x omega^Tr(lam x): 3^n at lam = 0, otherwise 0."""
    A, B = character_sums(ctx, np.zeros(ctx.size, dtype=np.int64), [ctx.element(lam).code])
    return EisensteinInt(int(A[0]), int(B[0]))


# -- fast transform ----------------------------------------------------------------

def _solve_mod3(M):
    """Inverse of a square matrix over GF(3), or None if singular."""
    n = len(M)
    aug = np.concatenate([np.asarray(M, dtype=np.int64) % 3, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col]), None)
        if pivot is None:
            return None
        aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = (aug[col] * aug[col, col]) % 3  # 1 and 2 are self-inverse
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % 3
    return aug[:, n:]


def dual_basis(ctx):
    """Elements delta_j with Tr(x^i * delta_j) = [i == j]."""
    inv = _solve_mod3(trace_form(ctx))
    if inv is None:
        raise SingularTraceForm("trace form is singular")
    return [gf3.FieldElement(ctx, int(gf3.digits_to_codes(inv[:, j]))) for j in range(ctx.n)]


def _lambda_permutation(ctx):
    """perm[u] = code of sum_i u_i delta_i for every digit vector u."""
    key = "lambda_perm"
    if key not in ctx._cache:
        basis = dual_basis(ctx)
        D = np.array([b.coeffs for b in basis], dtype=np.int64)
        udig = gf3.codes_to_digits(np.arange(ctx.size), ctx.n).astype(np.int64)
        ctx._cache[key] = gf3.digits_to_codes((udig @ D) % 3)
    return ctx._cache[key]


def _butterfly(A, B):
    """In-place radix-3 step along axis 1 of arrays shaped (left, 3, right).

    out_u = sum_x omega^(-u x) in_x, using omega * (a + b w) = -b + (a - b) w
    and omega^2 * (a + b w) = (b - a) - a w.
    """
    a0, a1, a2 = A[:, 0], A[:, 1], A[:, 2]
    b0, b1, b2 = B[:, 0], B[:, 1], B[:, 2]
    o1a = a0 + (b1 - a1) - b2
    o1b = b0 - a1 + (a2 - b2)
    o2a = a0 - b1 + (b2 - a2)
    o2b = b0 + (a1 - b1) - a2
    A[:, 0] += a1 + a2
    B[:, 0] += b1 + b2
    A[:, 1], B[:, 1] = o1a, o1b
    A[:, 2], B[:, 2] = o2a, o2b


def _transform(A, B, n, threads=1):
    """Unnormalized transform F(u) = sum_x omega^(-u.x) v(x) over Z_3^n, in place."""
    size = 3**n
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for i in range(n):
            left, right = 3 ** (n - 1 - i), 3**i
            A3 = A.reshape(left, 3, right)
            B3 = B.reshape(left, 3, right)
            if pool is None:
                _butterfly(A3, B3)
                continue
            # split along whichever outer axis is longer
            if left >= right:
                bounds = np.linspace(0, left, threads + 1, dtype=int)
                jobs = [(A3[s:e], B3[s:e]) for s, e in zip(bounds, bounds[1:]) if e > s]
            else:
                bounds = np.linspace(0, right, threads + 1, dtype=int)
                jobs = [(A3[:, :, s:e], B3[:, :, s:e]) for s, e in zip(bounds, bounds[1:]) if e > s]
            list(pool.map(lambda job: _butterfly(*job), jobs))
    finally:
        if pool is not None:
            pool.shutdown()
    assert A.size == size


def fast_spectrum(ctx, table, threads=1):
    """Walsh transform sum_x omega^(f(x) - Tr(lam x)) at every lambda.

    Returns ``(A, B)`` indexed by lambda code.  O(n 3^n) additions via
    a radix-3 butterfly; the output index u of the group transform is
    relabelled through the dual basis so that u_i = Tr(lam x^i).
    """
    if ctx.n > FAST_MAX_N:
        raise SizeLimit(f"fast transform limited to n <= {FAST_MAX_N}")
    table = _check_table(ctx, table)
    A = np.where(table == 0, 1, np.where(table == 1, 0, -1)).astype(np.int64)
    B = np.where(table == 0, 0, np.where(table == 1, 1, -1)).astype(np.int64)
    _transform(A, B, ctx.n, threads)
    perm = _lambda_permutation(ctx)
    outA = np.empty_like(A)
    outB = np.empty_like(B)
    outA[perm] = A
    outB[perm] = B
    return outA, outB


def inverse_transform(ctx, spectrum):
    """Recover f from its Walsh spectrum: omega^f(x) = 3^-n sum_lam W(lam) omega^Tr(lam x).

    Exact; raises ArithmeticError if some value is not a power of omega.
    """
    _check_size(ctx.n)
    WA, WB = (np.asarray(s, dtype=np.int64) for s in spectrum)
    T = trace_form(ctx)
    dig = gf3.codes_to_digits(np.arange(ctx.size), ctx.n).astype(np.int64)
    pair = ((dig @ T) % 3) @ dig.T  # pair[x, lam] = Tr(lam x)
    outA = np.empty(ctx.size, dtype=np.int64)
    outB = np.empty(ctx.size, dtype=np.int64)
    for x in range(ctx.size):
        rA, rB = _rotate_arrays(WA, WB, pair[x])
        outA[x], outB[x] = rA.sum(), rB.sum()
    size = ctx.size
    if (outA % size).any() or (outB % size).any():
        raise ArithmeticError("inverse transform is not divisible by 3^n")
    outA //= size
    outB //= size
    table = np.full(size, -1, dtype=np.int64)
    for t in range(3):
        w = omega_power(t)
        table[(outA == w.a) & (outB == w.b)] = t
    if (table < 0).any():
        raise ArithmeticError("inverse transform produced a non-root of unity")
    return table


def negate_lambda(ctx, A, B):
    """Re-index a spectrum from lambda to -lambda."""
    neg = gf3.neg_codes(np.arange(ctx.size), ctx.n)
    return A[neg], B[neg]


# -- verification ------------------------------------------------------------------

@dataclass
class SpectrumReport:
    """Per-lambda spectrum with verdicts.

    ``convention`` is ``"walsh"`` when values are sum omega^(f - Tr(lam x))
    and ``"char_sum"`` for the +lam x form.  ``dual`` holds the rotation t
    with W = reference * omega^t, or -1 where none exists.
    """

    n: int
    k: int
    a: str
    reference: EisensteinInt
    convention: str
    A: np.ndarray
    B: np.ndarray
    dual: np.ndarray
    dual_matches: bool | None = None
    mismatches: tuple = ()

    @property
    def norm_ok(self):
        return self.A * self.A - self.A * self.B + self.B * self.B == 3**self.n

    @property
    def bent(self):
        return bool(self.norm_ok.all())

    @property
    def weakly_regular(self):
        return bool((self.dual >= 0).all())

    def records(self, ctx):
        ok = self.norm_ok
        for code in range(len(self.A)):
            yield {
                "lambda": str(gf3.FieldElement(ctx, code)),
                "W": {"a": int(self.A[code]), "b": int(self.B[code])},
                "normOk": bool(ok[code]),
                "dualValue": None if self.dual[code] < 0 else int(self.dual[code]),
            }

    def to_json(self, ctx=None, dump=False):
        out = {
            "n": self.n,
            "k": self.k,
            "a": self.a,
            "convention": self.convention,
            "referenceConstant": self.reference.to_json(),
            "verdicts": {
                "bent": self.bent,
                "weaklyRegular": self.weakly_regular,
                "dualMatches": self.dual_matches,
            },
            "mismatches": [str(gf3.FieldElement(ctx, c)) if ctx else int(c) for c in self.mismatches],
        }
        if dump:
            out["perLambda"] = list(self.records(ctx))
        return out


def match_rotations(A, B, reference):
    """t in {0,1,2} with (A + B omega) == reference * omega^t, else -1."""
    out = np.full(len(A), -1, dtype=np.int64)
    for t in range(3):
        r = reference.rotate(t)
        out[(A == r.a) & (B == r.b)] = t
    return out


def _prepare(ctx, a, k):
    derive_params(ctx.n, k)
    a = ctx.element(a)
    if not a.code:
        raise ZeroArgument("a must be nonzero")
    return a, reference_constant(ctx.n, gf3.eta(a))


def cm_char_sums(ctx, a, k, method="fast", threads=1):
    """char_sum(lam) for every lambda; ``method`` is "fast" or "brute"."""
    if method == "brute":
        return char_sum_all(ctx, a, k)
    if method != "fast":
        raise BadParameters("method must be 'fast' or 'brute'")
    A, B = fast_spectrum(ctx, _cm_table(ctx, a, k), threads)
    return negate_lambda(ctx, A, B)


def verify_bent(ctx, a, k, threads=1):
    a, ref = _prepare(ctx, a, k)
    A, B = fast_spectrum(ctx, _cm_table(ctx, a, k), threads)
    return SpectrumReport(ctx.n, k, str(a), ref, "walsh", A, B, match_rotations(A, B, ref))


def verify_table_bent(ctx, table, threads=1):
    A, B = fast_spectrum(ctx, table, threads)
    norms = A * A - A * B + B * B
    return bool((norms == 3**ctx.n).all())


def verify_weak_regularity(ctx, a, k, rep, method="fast", threads=1):
    """Check char_sum(lam) == reference * omega^g(lam) at every lambda."""
    a, ref = _prepare(ctx, a, k)
    if rep.ctx != ctx or rep.a != a or rep.params.k != k:
        raise BadParameters("representation was built for different (field, a, k)")
    A, B = cm_char_sums(ctx, a, k, method, threads)
    g = eval_dual_table(rep)
    eA, eB = _rotate_arrays(np.full(ctx.size, ref.a), np.full(ctx.size, ref.b), g)
    bad = np.nonzero((A != eA) | (B != eB))[0]
    return SpectrumReport(
        ctx.n, k, str(a), ref, "char_sum", A, B, match_rotations(A, B, ref),
        dual_matches=len(bad) == 0, mismatches=tuple(int(c) for c in bad),
    )


def extract_dual(ctx, a, k, method="fast", threads=1):
    """The dual read off the spectrum: g(lam) = t with char_sum(lam) = ref * omega^t."""
    a, ref = _prepare(ctx, a, k)
    A, B = cm_char_sums(ctx, a, k, method, threads)
    t = match_rotations(A, B, ref)
    missing = np.nonzero(t < 0)[0]
    if len(missing):
        lam = gf3.FieldElement(ctx, int(missing[0]))
        raise NoMatchingRotation(f"char_sum at {lam} is not reference * omega^t")
    return t
