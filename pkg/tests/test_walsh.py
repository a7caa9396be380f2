import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cmbent import cmdual, gf3, walsh
from cmbent.exceptions import BadParameters, LengthMismatch
from cmbent.walsh import OMEGA, EisensteinInt
from conftest import field

W = cmath.exp(2j * cmath.pi / 3)


def as_complex(z):
    return z.a + z.b * W


def complex_sum(ctx, table, lam, sign):
    # oracle: floating point sum with per-element scalar traces
    lam = ctx.element(lam)
    total = 0
    for x in ctx.elements():
        total += W ** ((int(table[x.code]) + sign * gf3.trace(lam * x)) % 3)
    return total


def test_eisenstein_examples():
    z = EisensteinInt(1, 2)
    assert z * z == EisensteinInt(-3, 0)
    assert z.norm() == 3
    assert OMEGA * OMEGA * OMEGA == EisensteinInt(1, 0)
    assert walsh.omega_power(4) == OMEGA


eis = st.builds(EisensteinInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))


@given(eis, eis)
def test_eisenstein_mul_matches_complex(x, y):
    assert abs(as_complex(x * y) - as_complex(x) * as_complex(y)) < 1e-3
    assert walsh.eis_norm(x * y) == walsh.eis_norm(x) * walsh.eis_norm(y)
    assert abs(abs(as_complex(x)) ** 2 - x.norm()) < 1e-3 * max(1, x.norm())


@given(eis, st.integers(-5, 5))
def test_rotate_is_multiplication(x, t):
    assert x.rotate(t) == x * walsh.omega_power(t)


def test_reference_constant_examples():
    assert walsh.reference_constant(2, 1) == EisensteinInt(3, 0)
    assert walsh.reference_constant(1, 1) == EisensteinInt(1, 2)
    with pytest.raises(BadParameters):
        walsh.reference_constant(3, 0)


@pytest.mark.parametrize("n", range(1, 25))
def test_reference_constant_float(n):
    for eta in (1, -1):
        exact = as_complex(walsh.reference_constant(n, eta))
        approx = (-1) ** (n + 1) * eta * (1j**n) * 3 ** (n / 2)
        assert abs(exact - approx) <= 1e-6 * abs(approx)


def test_additive_sum_hook(gf):
    ctx = gf(4)
    assert walsh.additive_sum(ctx, ctx.zero) == EisensteinInt(81, 0)
    for code in (1, 5, 40, 80):
        assert walsh.additive_sum(ctx, code) == EisensteinInt(0, 0)


def test_char_sum_small(gf):
    ctx = gf(2)
    z = walsh.char_sum(ctx, "1", 1, ctx.zero)
    assert z.norm() == 9
    table = gf3.cm_function(ctx, ctx.one, 1).table()
    for lam in range(ctx.size):
        assert abs(as_complex(walsh.char_sum(ctx, "1", 1, lam)) - complex_sum(ctx, table, lam, 1)) < 1e-9


def test_char_sum_is_walsh_at_negated_lambda(gf):
    ctx = gf(3)
    table = gf3.cm_function(ctx, ctx.gen, 1).table()
    for lam in ctx.elements():
        neg = ctx.zero - lam
        assert walsh.char_sum(ctx, "g", 1, lam) == walsh.walsh_bruteforce(ctx, table, neg)


@pytest.mark.parametrize("n", [3, 4])
def test_dual_basis_properties(n, gf):
    ctx = gf(n)
    delta = walsh.dual_basis(ctx)
    beta = [ctx.element(3**i) for i in range(n)]
    gram = [[gf3.trace(b * d) for d in delta] for b in beta]
    assert gram == np.eye(n, dtype=int).tolist()
    for x in ctx.elements():
        rebuilt = ctx.zero
        for b, d in zip(beta, delta):
            rebuilt = rebuilt + b * gf3.trace(x * d)
        assert rebuilt == x


def test_double_dual(gf):
    ctx = gf(3)
    delta = walsh.dual_basis(ctx)
    beta = [ctx.element(3**i) for i in range(3)]
    # the basis dual to delta is beta: solve Tr(delta_i * y_j) = [i == j] by search
    for j in range(3):
        hits = [y for y in ctx.elements()
                if all(gf3.trace(delta[i] * y) == (i == j) for i in range(3))]
        assert hits == [beta[j]]


def test_zero_function_spectrum(gf):
    ctx = gf(4)
    A, B = walsh.fast_spectrum(ctx, np.zeros(ctx.size, dtype=int))
    assert (A[0], B[0]) == (81, 0)
    assert not A[1:].any() and not B.any()


def test_length_mismatch(gf):
    with pytest.raises(LengthMismatch):
        walsh.fast_spectrum(gf(3), np.zeros(10, dtype=int))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_fast_matches_brute_random_tables(n, gf):
    ctx = gf(n)
    rng = np.random.default_rng(1000 + n)
    for _ in range(20):
        table = rng.integers(0, 3, ctx.size)
        A, B = walsh.fast_spectrum(ctx, table)
        bA, bB = walsh.character_sums(ctx, table, np.arange(ctx.size), sign=-1)
        np.testing.assert_array_equal(A, bA)
        np.testing.assert_array_equal(B, bB)


def test_fast_matches_float_oracle(gf):
    ctx = gf(3)
    table = np.random.default_rng(7).integers(0, 3, ctx.size)
    A, B = walsh.fast_spectrum(ctx, table)
    for lam in range(ctx.size):
        assert abs(A[lam] + B[lam] * W - complex_sum(ctx, table, lam, -1)) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_parseval_and_inverse(n, gf):
    ctx = gf(n)
    table = np.random.default_rng(n).integers(0, 3, ctx.size)
    A, B = walsh.fast_spectrum(ctx, table)
    assert int((A * A - A * B + B * B).sum()) == 3 ** (2 * n)
    np.testing.assert_array_equal(walsh.inverse_transform(ctx, (A, B)), table)


def test_threaded_transform_matches(gf):
    ctx = gf(7)
    table = np.random.default_rng(3).integers(0, 3, ctx.size)
    one = walsh.fast_spectrum(ctx, table, threads=1)
    four = walsh.fast_spectrum(ctx, table, threads=4)
    np.testing.assert_array_equal(one[0], four[0])
    np.testing.assert_array_equal(one[1], four[1])


@pytest.mark.parametrize("n,k,a", [(5, 3, "1"), (4, 3, "g")])
def test_verify_bent_examples(n, k, a):
    assert walsh.verify_bent(field(n), a, k).bent


def test_verify_bent_rejects_even_k(gf):
    with pytest.raises(BadParameters):
        walsh.verify_bent(gf(4), "g", 2)


def test_random_table_is_not_bent(gf):
    ctx = gf(4)
    table = np.random.default_rng(0).integers(0, 3, ctx.size)
    assert not walsh.verify_table_bent(ctx, table)


def test_weak_regularity_example():
    ctx = field(8)
    rep = cmdual.dual_representation(ctx, "g", 7)
    report = walsh.verify_weak_regularity(ctx, "g", 7, rep)
    assert report.dual_matches and report.bent and report.weakly_regular
    assert report.convention == "char_sum"


def test_weak_regularity_brute_route(gf):
    ctx = gf(5)
    rep = cmdual.dual_representation(ctx, "g", 3)
    assert walsh.verify_weak_regularity(ctx, "g", 3, rep, method="brute").dual_matches


def test_mutated_dual_is_caught(gf):
    # flip the sign of one trace term; verification must notice
    ctx = gf(5)
    rep = cmdual.dual_representation(ctx, "1", 3)
    t = rep.terms[0]
    bad = cmdual.TraceTerm(t.j, -t.sign, t.coefficient * 2, t.exponent)
    mutated = cmdual.DualRep(rep.params, rep.a, (bad,) + rep.terms[1:])
    report = walsh.verify_weak_regularity(ctx, "1", 3, mutated)
    assert not report.dual_matches and report.mismatches


def test_extract_dual_examples(gf):
    ctx = gf(5)
    g1 = walsh.extract_dual(ctx, "1", 3)
    assert g1[0] == 0
    np.testing.assert_array_equal(g1, cmdual.dual_representation(ctx, "1", 3).table())
    np.testing.assert_array_equal(walsh.extract_dual(ctx, "g", 3),
                                  cmdual.universal_dual_table(ctx, "g", 3))


def test_report_json(gf):
    ctx = gf(3)
    report = walsh.verify_bent(ctx, "g", 1)
    out = report.to_json(ctx, dump=True)
    assert out["verdicts"]["bent"] is True
    assert len(out["perLambda"]) == 27
    assert all(r["normOk"] for r in out["perLambda"])
