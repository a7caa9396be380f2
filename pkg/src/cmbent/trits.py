"""Ternary representations of exponents modulo 3^n - 1.

Digits are stored least-significant first; every textual form is the
most-significant-first string of length ``n`` (``"00000010"`` is 3 for
n = 8).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exceptions import BadParameters

MAX_N = 38


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise BadParameters("n must be a positive integer")
    if n > MAX_N:
        raise BadParameters(f"n must be at most {MAX_N}")


def int_to_digits(value, n):
    """Base-3 digits of ``value``, least significant first, padded to ``n``."""
    digits = []
    for _ in range(n):
        value, r = divmod(value, 3)
        digits.append(r)
    return tuple(digits)


def digits_to_int(digits):
    value = 0
    for d in reversed(digits):
        value = 3 * value + d
    return value


@dataclass(frozen=True, order=True)
class TernaryIndex:
    """An exponent ``value`` in [0, 3^n - 1) together with its digits."""

    n: int
    value: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.value < 3**self.n - 1:
            raise BadParameters(f"value must lie in [0, 3^{self.n} - 1)")

    @classmethod
    def from_string(cls, text):
        """Parse a most-significant-first digit string such as ``"21"``."""
        if not text or any(c not in "012" for c in text):
            raise BadParameters(f"not a ternary digit string: {text!r}")
        n = len(text)
        value = int(text, 3)
        if value == 3**n - 1:
            value = 0
        return cls(n, value)

    @classmethod
    def from_digits(cls, digits):
        return residue(digits_to_int(digits), len(digits))

    @cached_property
    def digits(self):
        return int_to_digits(self.value, self.n)

    def __str__(self):
        return "".join(str(d) for d in reversed(self.digits))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


@dataclass(frozen=True)
class CarryVector:
    n: int
    bits: tuple

    @property
    def weight(self):
        return sum(self.bits)


@dataclass(frozen=True)
class Coset:
    """A cyclotomic coset modulo 3^n - 1; ``members`` are in orbit order."""

    n: int
    leader: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, j):
        return j in self.members

    def __iter__(self):
        return iter(self.members)


def residue(j, n):
    """Reduce any integer ``j`` modulo 3^n - 1 into a :class:`TernaryIndex`."""
    _check_n(n)
    return TernaryIndex(n, j % (3**n - 1))


def neg(j):
    return residue(-j.value, j.n)


def weight(j):
    return sum(j.digits)


def n2(j):
    return sum(1 for d in j.digits if d == 2)


def sigma(j):
    # 0! = 1! = 1 and 2! = 2
    return 2 ** n2(j)


def _same_n(r, s):
    if r.n != s.n:
        raise BadParameters("operands must share the same digit count n")


def add_with_carry(r, s):
    """Solve t_i + 3 c_i = r_i + s_i + c_{i-1} cyclically.

    Returns ``(t, c)`` with ``t`` the residue of r + s. Both wrap-around
    carries are tried; the one whose propagation closes consistently and
    yields a proper residue wins, all-zero carries on a tie.
    """
    _same_n(r, s)
    n = r.n
    solutions = []
    for c_last in (0, 1):
        carry = c_last
        t_digits, bits = [], []
        for ri, si in zip(r.digits, s.digits):
            total = ri + si + carry
            t_digits.append(total % 3)
            carry = total // 3
            bits.append(carry)
        if carry != c_last:
            continue
        value = digits_to_int(t_digits)
        if value == 3**n - 1:
            continue
        solutions.append((TernaryIndex(n, value), CarryVector(n, tuple(bits))))
    if not solutions:
        raise AssertionError("add-with-carry has no cyclic solution")
    solutions.sort(key=lambda sol: sol[1].weight)
    return solutions[0]


def wt_sum_eq(r, s):
    """Digit criterion for wt(r) + wt(s) == wt(r + s)."""
    _same_n(r, s)
    sums = [a + b for a, b in zip(r.digits, s.digits)]
    return all(x <= 2 for x in sums) and any(x < 2 for x in sums)


def wt_sum_plus2(r, s):
    """Digit criterion for wt(r) + wt(s) == wt(r + s) + 2."""
    _same_n(r, s)
    n = r.n
    sums = [a + b for a, b in zip(r.digits, s.digits)]
    for j in range(n):
        nxt = (j + 1) % n
        if sums[j] >= 3 and sums[nxt] <= 1:
            if all(sums[i] <= 2 for i in range(n) if i not in (j, nxt)):
                return True
    return False


def coset_of(j, n):
    _check_n(n)
    modulus = 3**n - 1
    if not 0 <= j < modulus:
        raise BadParameters(f"j must lie in [0, {modulus})")
    members = [j]
    x = (3 * j) % modulus
    while x != j:
        members.append(x)
        x = (3 * x) % modulus
    return Coset(n, min(members), tuple(members))


def coset_leaders(n):
    """All coset leaders modulo 3^n - 1, ascending."""
    _check_n(n)
    modulus = 3**n - 1
    seen = bytearray(modulus)
    leaders = []
    for j in range(modulus):
        if seen[j]:
            continue
        leaders.append(j)
        x = j
        while not seen[x]:
            seen[x] = 1
            x = (3 * x) % modulus
    return leaders
