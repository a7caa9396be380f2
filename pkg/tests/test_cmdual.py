import numpy as np
import pytest

from cmbent import cmdual, fixtures, gf3
from cmbent.exceptions import BadParameters, EmptyRepresentation, SizeLimit
from cmbent.trits import TernaryIndex, n2, weight
from conftest import field


def strings(indices):
    return sorted(str(j) for j in indices)


@pytest.mark.parametrize("n,k,w,parity,branch", [
    (8, 7, 7, 6, "EVEN"),
    (9, 7, 4, 3, "ODD"),
    (9, 5, 2, 1, "ODD"),
])
def test_derive_params_examples(n, k, w, parity, branch):
    p = cmdual.derive_params(n, k)
    assert (p.w, p.parity_count, p.branch) == (w, parity, branch)
    assert (p.w * k) % n == 1


def test_derive_params_direct_count():
    # oracle: walk i*k mod n for i < w and count landings in the top k slots
    for n, k in cmdual.valid_pairs(20):
        w = next(x for x in range(1, n + 1) if (x * k) % n == 1 % n)
        landed = [(i * k) % n for i in range(w)]
        p = cmdual.derive_params(n, k)
        assert p.w == w
        assert p.parity_count == sum(1 for v in landed if v >= n - k)


def test_derive_params_rejects():
    for n, k in [(4, 2), (6, 3), (5, 7), (1, 1)]:
        with pytest.raises(BadParameters):
            cmdual.derive_params(n, k)


def test_fib_count_examples():
    assert cmdual.fib_count(0) == 1
    assert cmdual.fib_count(1) == 2
    assert cmdual.fib_count(5) == 13
    assert (cmdual.fib_count(-1), cmdual.fib_count(-2)) == (1, 0)


def test_fib_count_matches_enumeration():
    # oracle: count {0,2}-words with no "22" by listing them
    import itertools

    for f in range(0, 12):
        words = ["".join(w) for w in itertools.product("02", repeat=f)]
        assert cmdual.fib_count(f) == sum("22" not in w for w in words)


def test_gen_sets_example_listings():
    sets = cmdual.gen_sets(cmdual.derive_params(8, 7))
    assert strings(sets.U) == sorted(fixtures._U_8_7)
    assert strings(sets.V) == sorted(fixtures._V_8_7)
    sets = cmdual.gen_sets(cmdual.derive_params(9, 7))
    assert strings(sets.U) == ["010101001", "010121001", "012101001", "210101001", "210121001"]
    assert strings(sets.V) == ["010101201", "012101201", "210101201"]
    sets = cmdual.gen_sets(cmdual.derive_params(9, 5))
    assert (len(sets.U), len(sets.V)) == (13, 8)


@pytest.mark.parametrize("n,k,s0,s1", [(8, 7, 104, 64), (9, 7, 45, 27)])
def test_brute_S0_S1_cardinalities(n, k, s0, s1):
    S0, S1 = cmdual.brute_S0_S1(cmdual.derive_params(n, k))
    assert (len(S0), len(S1)) == (s0, s1)
    assert not S0 & S1


def test_brute_S0_S1_definition_spot_check():
    # oracle: recompute the weight conditions with plain integers for a few j
    p = cmdual.derive_params(7, 3)
    S0, S1 = cmdual.brute_S0_S1(p)
    M = 3**7 - 1
    wt = lambda v: weight(TernaryIndex(7, v % M))
    for j in range(1, M, 37):
        tj = j * 3**p.k
        c0 = wt(j) + wt(tj) == wt(j + tj) and 2 * wt(-j * p.d) == wt(-(j + tj)) + 2
        c1 = wt(j) + wt(tj) == wt(j + tj) + 2 and 2 * wt(-j * p.d) == wt(-(j + tj))
        assert (j in S0) == c0 and (j in S1) == c1


def test_union_of_halves_is_universal_set():
    for n, k in cmdual.valid_pairs(8, 3):
        S0, S1 = cmdual.brute_S0_S1(cmdual.derive_params(n, k))
        assert S0 | S1 == cmdual.universal_index_set(n, k) - {0}


def test_brute_scan_size_cap(monkeypatch):
    monkeypatch.setenv("CMDUAL_MAX_N", "6")
    with pytest.raises(SizeLimit):
        cmdual.brute_S0_S1(cmdual.derive_params(7, 3))


@pytest.mark.parametrize("n,k,terms", [(8, 7, 21), (9, 7, 8), (11, 5, 55), (9, 5, 21)])
def test_term_counts(n, k, terms):
    ctx = field(n)
    for a in ("1", "g"):
        rep = cmdual.dual_representation(ctx, a, k)
        assert len(rep) == terms
    assert cmdual.predicted_term_count(cmdual.derive_params(n, k)) == terms


def test_dual_representation_terms():
    ctx = field(8)
    rep = cmdual.dual_representation(ctx, "g", 7)
    eta = gf3.eta(ctx.gen)
    U = {j.value for j in cmdual.gen_sets(rep.params).U}
    for t in rep.terms:
        shift = 1 if t.j.value in U else 0
        assert t.sign == (-1) ** (n2(t.j) + shift)
        assert t.coefficient == gf3.power(ctx.gen, t.j.value) * ((t.sign * eta) % 3)
        assert (t.exponent.value + t.j.value * 1094) % (3**8 - 1) == 0


def test_eval_dual_zero_and_table(gf):
    ctx = gf(5)
    rep = cmdual.dual_representation(ctx, "g", 3)
    assert cmdual.eval_dual(rep, ctx.zero) == 0
    table = cmdual.eval_dual_table(rep)
    assert table[0] == 0
    for code in range(0, ctx.size, 17):
        assert table[code] == cmdual.eval_dual(rep, code)
    empty = cmdual.DualRep(rep.params, rep.a, ())
    assert cmdual.eval_dual(empty, 5) == 0
    with pytest.raises(EmptyRepresentation):
        cmdual.algebraic_degree(empty)


@pytest.mark.parametrize("n,k,deg", [(8, 7, 8), (9, 7, 6), (5, 1, 2), (2, 1, 2)])
def test_algebraic_degree_examples(n, k, deg):
    rep = cmdual.dual_representation(field(n), "1", k)
    assert cmdual.algebraic_degree(rep) == deg


def test_universal_dual_zero(gf):
    ctx = gf(5)
    assert cmdual.universal_dual(ctx, "g", 3, ctx.zero) == 0


def test_universal_scalar_matches_table(gf):
    ctx = gf(5)
    table = cmdual.universal_dual_table(ctx, "g", 3)
    for code in range(0, ctx.size, 11):
        assert cmdual.universal_dual(ctx, "g", 3, code) == table[code]


@pytest.mark.parametrize("variant,t,n", [("ONE", 1, 5), ("TWO", 2, 7)])
def test_three_term_scalar(variant, t, n):
    ctx = field(n)
    rep = cmdual.dual_representation(ctx, "g", 2 * t + 1)
    assert cmdual.three_term_dual(ctx, "g", variant, t, ctx.zero) == 0
    for code in range(0, ctx.size, 13):
        assert cmdual.three_term_dual(ctx, "g", variant, t, code) == cmdual.eval_dual(rep, code)


def test_three_term_rejects_wrong_n(gf):
    with pytest.raises(BadParameters):
        cmdual.three_term_monomials(gf(6), "1", "ONE", 1)


def test_classify_examples():
    fams = {f.family: f for f in cmdual.classify_special(9, 5)}
    assert fams["k|n+1"].term_count == 21
    fams = {f.family: f for f in cmdual.classify_special(11, 5)}
    assert fams["k|n-1"].term_count == 55


def test_modulus_independence():
    # the dual is defined intrinsically, so counts and verdicts cannot depend on the modulus
    default = gf3.build_field(5)
    other = next(
        gf3.build_field(5, gf3.poly_to_string(gf3.int_to_digits(v, 5) + (1,)))
        for v in range(3**5 - 1, 0, -1)
        if gf3.is_irreducible(gf3.int_to_digits(v, 5) + (1,))
    )
    assert other.modulus != default.modulus
    for ctx in (default, other):
        for a in ("1", "g"):
            rep = cmdual.dual_representation(ctx, a, 3)
            assert len(rep) == 3
            np.testing.assert_array_equal(rep.table(), cmdual.universal_dual_table(ctx, a, 3))
        assert cmdual.algebraic_degree(rep) == cmdual.predicted_degree(rep.params)
