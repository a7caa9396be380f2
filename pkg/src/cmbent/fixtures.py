"""Worked examples from the literature, replayed against the implementation.

Expected values are literal data; nothing here is computed at import time.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import cmdual, gf3

_U_8_7 = (
    "00000010", "00002010", "00020010", "00200010", "00202010", "02000010",
    "02002010", "02020010", "20000010", "20002010", "20020010", "20200010",
    "20202010",
)
_V_8_7 = (
    "00000012", "00002012", "00020012", "00200012", "00202012", "02000012",
    "02002012", "02020012",
)
_U_9_7 = ("010101001", "010121001", "012101001", "210101001", "210121001")
_V_9_7 = ("010101201", "012101201", "210101201")
_U_9_5 = (
    "000100001", "000100201", "000102001", "000102201", "002100001",
    "002102001", "020100001", "022100001", "200100001", "200100201",
    "202100001", "220100001", "222100001",
)
_V_9_5 = (
    "000120001", "000120201", "000122001", "000122201", "002120001",
    "002122001", "020120001", "022120001",
)
_U_11_5 = (
    "00001000010", "00001000210", "00001002010", "00001002210", "00001020010",
    "00001020210", "00001022010", "00001022210", "00001200010", "00001200210",
    "00001202010", "00001202210", "00001220010", "00001220210", "00001222010",
    "00001222210", "00201000010", "00201020010", "00201200010", "00201220010",
    "02001000010", "02001000210", "02001200010", "02001200210", "02201000010",
    "02201200010", "20001000010", "20001000210", "20001002010", "20001002210",
    "20201000010", "22001000010", "22001000210", "22201000010",
)
_V_11_5 = (
    "00001000012", "00001000212", "00001002012", "00001002212", "00001020012",
    "00001020212", "00001022012", "00001022212", "00201000012", "00201020012",
    "02001000012", "02001000212", "02201000012", "20001000012", "20001000212",
    "20001002012", "20001002212", "20201000012", "22001000012", "22001000212",
    "22201000012",
)


@dataclass(frozen=True)
class Fixture:
    id: str
    n: int
    k: int
    expected: dict
    a: str = "g"


FIXTURES = (
    Fixture("example1", 8, 7, {"w": 7, "parity": 6, "branch": "EVEN", "S0": 104, "U": _U_8_7}),
    Fixture("example2", 9, 7, {"w": 4, "parity": 3, "branch": "ODD", "S0": 45, "U": _U_9_7}),
    Fixture("example3", 8, 7, {"w": 7, "parity": 6, "branch": "EVEN", "S1": 64, "V": _V_8_7}),
    Fixture("example4", 9, 7, {"w": 4, "parity": 3, "branch": "ODD", "S1": 27, "V": _V_9_7}),
    Fixture("example5", 8, 7, {"d": 1094, "w": 7, "parity": 6, "U": _U_8_7, "V": _V_8_7,
                               "terms": 21}),
    Fixture("example6", 9, 7, {"d": 1094, "w": 4, "parity": 3, "U": _U_9_7, "V": _V_9_7,
                               "terms": 8}),
    Fixture("k=(n+1)/2", 9, 5, {"d": 122, "branch": "ODD", "U": _U_9_5, "V": _V_9_5,
                                "terms": 21}),
    Fixture("k=(n-1)/2", 11, 5, {"d": 122, "branch": "EVEN", "U": _U_11_5, "V": _V_11_5,
                                 "terms": 55}),
)


@dataclass
class FixtureResult:
    id: str
    checked: list = field(default_factory=list)
    diffs: list = field(default_factory=list)  # (field, expected, actual)

    @property
    def ok(self):
        return not self.diffs


def _actual(fx, key, cache):
    params = cache.setdefault("params", cmdual.derive_params(fx.n, fx.k))
    if key in ("w", "d", "branch"):
        return getattr(params, key)
    if key == "parity":
        return params.parity_count
    if key in ("U", "V"):
        sets = cache.setdefault("sets", cmdual.gen_sets(params))
        return tuple(sorted(str(j) for j in getattr(sets, key)))
    if key in ("S0", "S1"):
        s0, s1 = cache.setdefault("brute", cmdual.brute_S0_S1(params))
        return len(s0 if key == "S0" else s1)
    if key == "terms":
        ctx = gf3.build_field(fx.n)
        return len(cmdual.dual_representation(ctx, ctx.element(fx.a), fx.k))
    raise KeyError(key)


def check_fixture(fx):
    result = FixtureResult(fx.id)
    cache = {}
    for key, expected in fx.expected.items():
        actual = _actual(fx, key, cache)
        if isinstance(expected, tuple):
            expected = tuple(sorted(expected))
        result.checked.append(key)
        if actual != expected:
            result.diffs.append((key, expected, actual))
    return result


def run_fixtures(fixtures=FIXTURES):
    return [check_fixture(fx) for fx in fixtures]
