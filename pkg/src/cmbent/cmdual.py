"""Dual functions of the Coulter-Matthews bent functions Tr(a x^d).

The dual is assembled from digit-constrained index sets U and V whose
cyclotomic cosets make up the two halves S0 and S1 of the index set
{j : wt(j) + wt(-jd) = n + 1}.  Brute-force scans of S0/S1 and of that
index set are provided as oracles for the set construction.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import gf3
from .exceptions import (
    BadParameters,
    EmptyRepresentation,
    NotInPrimeSubfield,
    SizeLimit,
    ZeroArgument,
)
from .trits import TernaryIndex, n2, residue, sigma, weight

EVEN = "EVEN"
ODD = "ODD"
DEFAULT_MAX_N = 12


def brute_max_n():
    """Cap for exhaustive scans over all exponents; CMDUAL_MAX_N overrides."""
    value = os.environ.get("CMDUAL_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


def _check_size(n):
    cap = brute_max_n()
    if n > cap:
        raise SizeLimit(f"exhaustive scan limited to n <= {cap} (set CMDUAL_MAX_N to raise)")


@dataclass(frozen=True)
class CmParams:
    n: int
    k: int
    d: int
    w: int
    parity_count: int

    @property
    def branch(self):
        return EVEN if self.parity_count % 2 == 0 else ODD

    @property
    def A(self):
        return frozenset((i * self.k) % self.n for i in range(self.w))

    @property
    def B(self):
        return frozenset((i * self.k) % self.n for i in range(self.w, self.n))

    @property
    def m(self):
        """w on the EVEN branch, n - w on the ODD branch."""
        return self.w if self.branch == EVEN else self.n - self.w

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "w": self.w,
            "parity": self.parity_count,
            "branch": self.branch,
        }


def derive_params(n, k):
    # pure integer arithmetic, so any n is fine here
    gf3.validate_cm(n, k, max_n=None)
    n, k = int(n), int(k)
    w = pow(k, -1, n)
    top = range(n - k, n)
    parity = sum(1 for i in range(w) if (i * k) % n in top)
    return CmParams(n=n, k=k, d=(3**k + 1) // 2, w=w, parity_count=parity)


def fib_count(f):
    """Number of {0,2}-sequences of length f without two consecutive 2's.

    Extended below zero with N(-1) = 1 and N(-2) = 0 so that the
    recurrence N(f) = N(f-1) + N(f-2) holds from f = 0 on.
    """
    if f < -2:
        raise BadParameters("fib_count is defined for f >= -2")
    prev, cur = 0, 1  # N(-2), N(-1)
    for _ in range(f + 1):
        prev, cur = cur, prev + cur
    return cur if f >= -1 else prev


def fibonacci(e):
    """F(e) with F(0) = 0, F(1) = 1, by the recurrence (no floating point)."""
    a, b = 0, 1
    for _ in range(e):
        a, b = b, a + b
    return a


def term_count(m):
    """Trace-term count F(m + 1) of the dual."""
    return fibonacci(m + 1)


def predicted_term_count(params):
    return term_count(params.m)


# -- index sets ----------------------------------------------------------------

@dataclass(frozen=True)
class IndexSets:
    branch: str
    U: tuple
    V: tuple


def _constraints(params, which):
    """Per-orbit-step constraint lists for U or V on the current branch.

    Returns ``(fixed, free)`` with ``fixed`` a list of (steps, digit) and
    ``free`` the inclusive step range carrying {0, 2} digits without two
    consecutive 2's.
    """
    n, w = params.n, params.w
    if params.branch == EVEN:
        if which == "U":
            fixed = [(range(w, n), 1), ((0, w - 1), 0)]
            free = (1, w - 2)
        else:
            fixed = [(range(w, n), 1), ((0,), 2), ((1, w - 1), 0)]
            free = (2, w - 2)
    else:
        if which == "U":
            fixed = [(range(0, w), 1), ((w, n - 1), 0)]
            free = (w + 1, n - 2)
        else:
            fixed = [(range(0, w), 1), ((w, n - 2), 0), ((n - 1,), 2)]
            free = (w + 1, n - 3)
    return fixed, free


def _enumerate(params, which):
    n, k = params.n, params.k
    fixed, (lo, hi) = _constraints(params, which)
    allowed = [None] * n
    for steps, digit in fixed:
        for i in steps:
            if not 0 <= i < n:
                continue
            if allowed[i] is not None and digit not in allowed[i]:
                return []
            allowed[i] = {digit}
    free = [i for i in range(lo, hi + 1) if 0 <= i < n]
    for i in free:
        allowed[i] = {0, 2} if allowed[i] is None else allowed[i] & {0, 2}
        if not allowed[i]:
            return []
    if any(a is None for a in allowed):
        raise AssertionError("digit constraints leave a position uncovered")

    base = 0
    free_set = set(free)
    for i in range(n):
        if i not in free_set:
            base += next(iter(allowed[i])) * 3 ** ((i * k) % n)
    # partial sums split by whether the last free step holds a 2
    end0, end2 = [base], []
    for i in free:
        bump = 2 * 3 ** ((i * k) % n)
        new0 = end0 + end2 if 0 in allowed[i] else []
        new2 = [v + bump for v in end0] if 2 in allowed[i] else []
        end0, end2 = new0, new2
    return sorted(end0 + end2)


def gen_sets(params):
    """U and V of the current branch as sorted tuples of TernaryIndex."""
    n = params.n
    U = tuple(TernaryIndex(n, v) for v in _enumerate(params, "U"))
    V = tuple(TernaryIndex(n, v) for v in _enumerate(params, "V"))
    return IndexSets(branch=params.branch, U=U, V=V)


def count_sets(params):
    """(|U|, |V|) straight from the enumeration, without materializing indices."""
    return len(_enumerate(params, "U")), len(_enumerate(params, "V"))


def coset_union(indices, n):
    modulus = 3**n - 1
    out = set()
    for j in indices:
        x = int(j)
        for _ in range(n):
            out.add(x)
            x = (3 * x) % modulus
    return out


# -- brute-force oracles -------------------------------------------------------

def _weight_table(n):
    values = np.arange(3**n - 1, dtype=np.int64)
    return gf3.codes_to_digits(values, n).sum(axis=1).astype(np.int64)



def brute_S0_S1(params):
    """Scan every 0 < j < 3^n - 1 against the defining weight conditions."""
    n, k, d = params.n, params.k, params.d
    _check_size(n)
    M = 3**n - 1
    wt = _weight_table(n)
    j = np.arange(1, M, dtype=np.int64)
    t = 3**k % M
    w_j = wt[j]
    w_tj = wt[(t * j) % M]
    w_sum = wt[((t + 1) * j) % M]
    w_neg_jd = wt[(-(j * (d % M))) % M]
    w_neg_sum = wt[(-((t + 1) * j)) % M]
    s0 = (w_j + w_tj == w_sum) & (2 * w_neg_jd == w_neg_sum + 2)
    s1 = (w_j + w_tj == w_sum + 2) & (2 * w_neg_jd == w_neg_sum)
    return frozenset(j[s0].tolist()), frozenset(j[s1].tolist())


def universal_index_set(n, k):
    """{j : wt(j) + wt(-jd) = n + 1} by exhaustive scan."""
    _check_size(n)
    M = 3**n - 1
    d = (3**k + 1) // 2
    wt = _weight_table(n)
    j = np.arange(M, dtype=np.int64)
    hit = wt[j] + wt[(-(j * (d % M))) % M] == n + 1
    return frozenset(j[hit].tolist())


# -- the dual function ---------------------------------------------------------

@dataclass(frozen=True)
class TraceTerm:
    j: TernaryIndex
    sign: int
    coefficient: gf3.FieldElement
    exponent: TernaryIndex

    def to_json(self):
        return {
            "j": str(self.j),
            "sign": self.sign,
            "coeff": str(self.coefficient),
            "exp": str(self.exponent),
        }


@dataclass(frozen=True)
class DualRep:
    params: CmParams
    a: gf3.FieldElement
    terms: tuple = field(default_factory=tuple)

    @property
    def ctx(self):
        return self.a.ctx

    def __len__(self):
        return len(self.terms)

    def __call__(self, x):
        return eval_dual(self, x)

    def table(self, codes=None):
        return eval_dual_table(self, codes)

    def to_json(self):
        out = self.params.to_json()
        out["a"] = str(self.a)
        out["terms"] = [t.to_json() for t in self.terms]
        return out

    def render(self):
        if not self.terms:
            return "g(x) = 0"
        parts = [f"Tr({t.coefficient} x^{t.exponent.value})" for t in self.terms]
        return "g(x) = " + " + ".join(parts)


def _field_and_element(ctx, a):
    a = ctx.element(a)
    if not a.code:
        raise ZeroArgument("a must be nonzero")
    return a


def dual_representation(ctx, a, k):
    params = derive_params(ctx.n, k)
    a = _field_and_element(ctx, a)
    eta_a = gf3.eta(a)
    sets = gen_sets(params)
    terms = []
    for members, shift in ((sets.U, 1), (sets.V, 0)):
        for j in members:
            sign = -1 if (n2(j) + shift) % 2 else 1
            coeff = gf3.power(a, j.value) * ((sign * eta_a) % 3)
            exponent = residue(-j.value * params.d, params.n)
            terms.append(TraceTerm(j, sign, coeff, exponent))
    terms.sort(key=lambda t: t.exponent.value)
    return DualRep(params, a, tuple(terms))


def eval_dual(rep, x):
    x = rep.ctx.element(x)
    if not x.code:
        return 0
    total = 0
    for t in rep.terms:
        total += gf3.trace(t.coefficient * gf3.power(x, t.exponent.value))
    return total % 3


def eval_dual_table(rep, codes=None):
    """Vectorized eval_dual over ``codes`` (default: the whole field)."""
    ctx = rep.ctx
    tables = ctx.tables()
    if codes is None:
        codes = np.arange(ctx.size, dtype=np.int64)
    total = np.zeros(np.shape(codes), dtype=np.int64)
    for t in rep.terms:
        total += tables.monomial_trace(t.coefficient, t.exponent.value, codes)
    return total % 3


def algebraic_degree(rep):
    if not rep.terms:
        raise EmptyRepresentation("representation has no trace terms")
    return max(weight(t.exponent) for t in rep.terms)


def predicted_degree(params):
    return params.w + 1 if params.branch == EVEN else params.n + 1 - params.w


# -- the universal formula -----------------------------------------------------

def _universal_terms(ctx, a, k):
    n = ctx.n
    d = (3**k + 1) // 2
    out = []
    for j in sorted(universal_index_set(n, k)):
        scalar = sigma(residue(j, n)) * sigma(residue(-j * d, n)) % 3
        out.append((j, scalar))
    return d, out


def universal_dual(ctx, a, k, lam):
    """eta(a) * sum sigma(j) sigma(-jd) (a / lam^d)^j over the universal index set."""
    gf3.validate_cm(ctx.n, k)
    a = _field_and_element(ctx, a)
    lam = ctx.element(lam)
    if not lam.code:
        return 0
    d, terms = _universal_terms(ctx, a, k)
    base = a / gf3.power(lam, d)
    total = ctx.zero
    for j, scalar in terms:
        total = total + gf3.power(base, j) * scalar
    total = total * (gf3.eta(a) % 3)
    if total.code > 2:
        raise NotInPrimeSubfield(f"universal sum at {lam} is {total}")
    return total.code


def universal_dual_table(ctx, a, k):
    """universal_dual at every code, vectorized over lambda."""
    gf3.validate_cm(ctx.n, k)
    a = _field_and_element(ctx, a)
    d, terms = _universal_terms(ctx, a, k)
    tables = ctx.tables()
    order = ctx.mult_order
    lam = np.arange(1, ctx.size, dtype=np.int64)
    log_lam = tables.log[lam]
    log_a = int(tables.log[a.code])
    acc = np.zeros((len(lam), ctx.n), dtype=np.int64)
    for j, scalar in terms:
        idx = (j * log_a - ((d * j) % order) * log_lam) % order
        acc += scalar * gf3.codes_to_digits(tables.exp[idx], ctx.n)
    acc = (acc * (gf3.eta(a) % 3)) % 3
    if acc[:, 1:].any():
        raise NotInPrimeSubfield("universal sum left the prime subfield")
    return np.concatenate([[0], acc[:, 0]])


# -- explicit three-term duals -------------------------------------------------

ONE = "ONE"
TWO = "TWO"


def three_term_monomials(ctx, a, variant, t):
    """(coefficient, exponent) pairs of the explicit three-term dual."""
    n = ctx.n
    a = _field_and_element(ctx, a)
    if not isinstance(t, int) or t < 1:
        raise BadParameters("t must be a positive integer")
    if variant == ONE:
        if n != 3 * t + 2:
            raise BadParameters(f"variant ONE needs n = 3t + 2 = {3 * t + 2}")
        monomials = [
            (-1, 3 ** (2 * t + 2) + 1, 3 ** (2 * t + 2) - 3 ** (t + 1) + 3),
            (-1, 2 * 3 ** (2 * t + 1) + 3 ** (t + 1) + 1, 3 ** (2 * t + 2) + 3 ** (t + 1) + 1),
            (1, 2, -(3 ** (2 * t + 2)) + 3 ** (t + 1) + 3),
        ]
    elif variant == TWO:
        if n != 3 * t + 1:
            raise BadParameters(f"variant TWO needs n = 3t + 1 = {3 * t + 1}")
        monomials = [
            (-1, 3 ** (2 * t + 1) + 3 ** (t + 1) + 2, 3 ** (2 * t + 1) + 3 ** (t + 1) + 1),
            (-1, 3 ** (2 * t) + 1, -(3 ** (2 * t)) + 3**t + 1),
            (1, 2, -(3 ** (2 * t + 1)) + 3 ** (t + 1) + 1),
        ]
    else:
        raise BadParameters("variant must be ONE or TWO")
    return [(gf3.power(a, -a_exp) * (sign % 3), lam_exp) for sign, lam_exp, a_exp in monomials]


def three_term_k(variant, t):
    return 2 * t + 1


def three_term_dual(ctx, a, variant, t, lam):
    lam = ctx.element(lam)
    total = 0
    for coeff, exponent in three_term_monomials(ctx, a, variant, t):
        if lam.code:
            total += gf3.trace(coeff * gf3.power(lam, exponent))
    return total % 3


def three_term_dual_table(ctx, a, variant, t, codes=None):
    tables = ctx.tables()
    if codes is None:
        codes = np.arange(ctx.size, dtype=np.int64)
    total = np.zeros(np.shape(codes), dtype=np.int64)
    for coeff, exponent in three_term_monomials(ctx, a, variant, t):
        total += tables.monomial_trace(coeff, exponent, codes)
    return total % 3


# -- special families ------------------------------------------------------------

@dataclass(frozen=True)
class FamilyPrediction:
    family: str
    w: int
    parity_count: int
    branch: str
    term_count: int
    m: int | None = None
    t: int | None = None

    def to_json(self):
        out = {
            "family": self.family,
            "w": self.w,
            "parity": self.parity_count,
            "branch": self.branch,
            "terms": self.term_count,
        }
        if self.m is not None:
            out["m"], out["t"] = self.m, self.t
        return out


def _branch_of(parity):
    return EVEN if parity % 2 == 0 else ODD


def classify_special(n, k):
    """Every closed-form family that (n, k) belongs to, with its predictions.

    Predictions come from the family formulas only; compare them against
    :func:`derive_params` / :func:`gen_sets` rather than trusting them.
    """
    gf3.validate_cm(n, k, max_n=None)
    out = []
    if k > 1 and (n + 1) % k == 0:
        w = (n + 1) // k
        out.append(FamilyPrediction("k|n+1", w, 1, ODD, fibonacci((n + 1) * (k - 1) // k)))
    if k > 1 and (n - 1) % k == 0:
        w = n - (n - 1) // k
        out.append(FamilyPrediction("k|n-1", w, k - 1, EVEN, fibonacci(n - (n - 1) // k + 1)))
    if 1 < k < n - 1:
        gap = n - k
        if (n + 1) % gap == 0:
            y = (k + 1) // gap
            w = n - (n + 1) // gap
            if y % 2 == 1:
                count = fibonacci(n - (n + 1) // gap + 1)
            else:
                count = fibonacci((n + 1) // gap + 1)
            out.append(FamilyPrediction("(n-k)|n+1", w, k - y, _branch_of(k - y), count))
            m, t = (n + 1) // gap, gap - 1
            if m >= 3 and t >= 1:
                if m % 2 == 1:
                    out.append(FamilyPrediction("n=mt+m-1", n - m, k - (m - 1), ODD,
                                                fibonacci(m + 1), m, t))
                elif t % 2 == 1:
                    out.append(FamilyPrediction("n=mt+m-1", n - m, k - (m - 1), EVEN,
                                                fibonacci(n - m + 1), m, t))
        if (n - 1) % gap == 0:
            y = k // gap
            w = (n - 1) // gap
            if y % 2 == 0:
                count = fibonacci((n - 1) // gap + 1)
            else:
                count = fibonacci(n - (n - 1) // gap + 1)
            out.append(FamilyPrediction("(n-k)|n-1", w, y, _branch_of(y), count))
            m, t = (n - 1) // gap, gap
            if m >= 3 and t >= 1:
                if m % 2 == 1:
                    out.append(FamilyPrediction("n=mt+1", m, m - 1, EVEN,
                                                fibonacci(m + 1), m, t))
                elif t % 2 == 0:
                    out.append(FamilyPrediction("n=mt+1", m, m - 1, ODD,
                                                fibonacci(n - m + 1), m, t))
    return out


def valid_pairs(n_max, n_min=2):
    """All (n, k) with k odd, gcd(n, k) = 1 and 1 <= k < n."""
    from math import gcd

    return [
        (n, k)
        for n in range(n_min, n_max + 1)
        for k in range(1, n, 2)
        if gcd(n, k) == 1
    ]
