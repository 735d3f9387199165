from fractions import Fraction
from math import factorial, gcd

import pytest
from hypothesis import given, strategies as st

from hilbert_kronecker.arithmetic import field_degree, zeta_F_neg
from hilbert_kronecker.kronecker import PolySeries, gamma_power, normalized_layer, product_layer
from hilbert_kronecker.periods import (
    PeriodPolynomial,
    SymbolicConstant,
    UnsupportedCase,
    admissible_rc_pairs,
    coefficient_matrix,
    cusp_rank,
    eisenstein_layer,
    eisenstein_normalizer,
    eisenstein_petersson,
    extract_cusp,
    extract_eigenform,
    omega_minus,
    omega_plus,
    p_minus,
    p_plus,
    rankin_cohen,
    rc_consistency,
)
from hilbert_kronecker.qseries import FourierSeries, eisenstein, mul, scale
from hilbert_kronecker.quadfield import NuIndex
from oracles import bracket_one, classical_g, delta

N = NuIndex


def test_p_plus_examples():
    assert p_plus(2, 1).is_zero()
    assert p_plus(2, 2).coefficients == {0: 2}
    assert p_plus(4, 1).coefficients == {2: 1, 0: -1}
    with pytest.raises(ValueError):
        p_plus(3, 1)


def test_p_minus_examples():
    assert p_minus(2, 1).coefficients == {1: Fraction(1, 12), -1: Fraction(1, 12)}
    assert p_minus(4, 1).coefficients == {3: Fraction(-1, 720), -1: Fraction(-1, 720), 1: Fraction(1, 144)}
    assert p_minus(2, 5).coefficients == {1: Fraction(1, 30), -1: Fraction(1, 30)}


def test_p_minus_interior_formula():
    # zeta_F(-n) zeta_F(n+2-k) / (Gamma(n+1) Gamma(k-n-1))^t at odd n
    pm = p_minus(8, 5)
    for n in (1, 3, 5):
        assert pm[n] == zeta_F_neg(n + 1, 5) * zeta_F_neg(8 - n - 1, 5) / (factorial(n) * factorial(6 - n)) ** 2


@pytest.mark.parametrize("D", [1, 5, 8, 13])
@pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12])
def test_reflection_law(D, k):
    t = field_degree(D)
    pp, pm = p_plus(k, t), p_minus(k, D)
    assert pp.satisfies_reflection()
    assert pm.satisfies_reflection()
    assert (pp + pm).satisfies_reflection()
    assert all(n % 2 == 0 and 0 <= n <= k - 2 for n in pp.coefficients)
    assert all(n % 2 == 1 and -1 <= n <= k - 1 for n in pm.coefficients)


@pytest.mark.parametrize("D", [1, 5, 8, 13])
@pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12])
def test_endpoints_match_the_cusp_at_infinity(D, k):
    # the constant terms of the product layer are exactly those of the Eisenstein layer
    layer = normalized_layer(k, D, 1)
    eis = eisenstein_layer(k, D, 1)
    assert layer.constant_terms() == eis.constant_terms()


def test_symbolic_constant_arithmetic():
    a = SymbolicConstant(Fraction(3), 5, pi_power=2, sqrt_disc_power=1, i_power=1, zetas=((3, 1),))
    b = SymbolicConstant(Fraction(6), 5, pi_power=2, sqrt_disc_power=3, i_power=3, zetas=((3, 1),))
    q = b / a
    assert q.is_rational()
    assert q.value() == Fraction(2) * 5 * -1
    assert (a * 2).rational == 6
    assert not (a * a).is_rational()
    with pytest.raises(ValueError):
        a.value()
    with pytest.raises(ValueError):
        a * SymbolicConstant(Fraction(1), 8)


def test_eisenstein_petersson():
    with pytest.raises(ValueError, match="diverges"):
        eisenstein_petersson(2, 1)
    c = eisenstein_petersson(4, 1)
    # Gamma(3) zeta(-3) / (2 * 4^3)
    assert c.rational == Fraction(2) * Fraction(1, 120) / (2 * 4 ** 3)
    assert c.pi_power == -3
    assert c.zetas == ((3, 1),)


@pytest.mark.parametrize("D", [1, 5, 8, 13])
@pytest.mark.parametrize("k", [4, 6, 8, 12])
def test_normalizer_reduces_to_rational(D, k):
    t = field_degree(D)
    c = eisenstein_normalizer(k, D)
    assert c.is_rational() and c.pi_power == 0 and c.zetas == ()
    assert c.value() == 2 ** t * gamma_power(k, t) / zeta_F_neg(k, D)
    assert omega_minus(k, D).sqrt_disc_power == 1
    assert omega_plus(k, D).zetas == ((k - 1, 1),)


def test_eisenstein_layer_examples():
    assert eisenstein_layer(2, 1, 3).is_zero()
    g2 = eisenstein(2, 5, 3)
    e2 = eisenstein_layer(2, 5, 3)
    assert {k: s for k, s in e2.items()} == {
        k: scale(g2, 8) for k in [((-1, -1), (0, 0)), ((0, 0), (-1, -1)), ((0, 0), (1, 1)), ((1, 1), (0, 0))]
    }
    assert eisenstein_layer(4, 1, 4) == normalized_layer(4, 1, 4)


@pytest.mark.parametrize("k", [4, 6, 8, 10])
def test_no_cusp_part_below_weight_twelve(k):
    assert extract_cusp(k, 1, 5).is_zero()
    assert extract_eigenform(k, 1, 5).rank == 0


def test_extract_cusp_weight_two():
    assert extract_cusp(2, 5, 3).is_zero()
    assert extract_cusp(2, 1, 3).is_zero()


@pytest.fixture(scope="module")
def delta_form():
    return extract_eigenform(12, 1, 8)


def test_delta_coefficients(delta_form):
    assert delta_form.rank == 1
    ref = delta(8)
    assert [delta_form.form[N(0, n)].a for n in range(1, 9)] == ref[1:]


def test_delta_multiplicative_and_hecke(delta_form):
    a = {n: delta_form.coefficient(N(0, n)) for n in range(1, 9)}
    for m in range(1, 9):
        for n in range(1, 9):
            if m * n <= 8 and gcd(m, n) == 1:
                assert a[m * n] == a[m] * a[n]
    for p in (2,):
        assert a[p * p] == a[p] ** 2 - p ** 11
        assert a[p ** 3] == a[p] * a[p * p] - p ** 11 * a[p]


def test_delta_period_ratios(delta_form):
    # odd periods proportional to 4X - 25X^3 + 42X^5 - 25X^7 + 4X^9, even periods to
    # (36/691)(X^10 - 1) - X^2 (X^2 - 1)^3
    assert delta_form.odd_ratios() == {1: 1, 3: Fraction(-25, 4), 5: Fraction(42, 4), 7: Fraction(-25, 4), 9: 1}
    even = {0: Fraction(-36, 691), 2: 1, 4: -3, 6: 3, 8: -1, 10: Fraction(36, 691)}
    assert delta_form.even_ratios() == {n: c / even[0] for n, c in even.items()}
    assert delta_form.factorization_exact
    # R_{k-2-n} = (-1)^{t(n+1)} R_n
    full = PeriodPolynomial(12, 1, {**delta_form.even, **delta_form.odd})
    assert full.satisfies_reflection()


def test_delta_rational_coefficients(delta_form):
    assert delta_form.form.is_rational()
    assert all(isinstance(c, Fraction) for c in delta_form.even.values())


def test_extract_rejects_rank_two():
    f = eisenstein(4, 1, 3)
    g = FourierSeries(1, 3, 0, {N(0, 1): 1})
    fake = PolySeries(4, 1, 3, {((0,), (1,)): f, ((1,), (0,)): g})
    assert cusp_rank(fake) == 2
    with pytest.raises(UnsupportedCase):
        extract_eigenform(4, 1, 3, cusp=fake)


def test_coefficient_matrix_splits_irrational_columns():
    from hilbert_kronecker.quadfield import FieldElement

    s = FourierSeries(5, 1, 0, {N(-1, 1): FieldElement(1, 1, 5), N(1, 1): FieldElement(1, -1, 5)})
    ps = PolySeries(2, 5, 1, {((0, 0), (1, 1)): s})
    rows, cols, mat = coefficient_matrix(ps)
    assert cols == [None, N(-1, 1), N(1, 1)]
    assert mat == [[0, 0, 1, 1, 1, -1]]


def test_rankin_cohen_p_zero_is_product():
    f, g = eisenstein(4, 5, 3), eisenstein(6, 5, 3)
    assert rankin_cohen(f, g, 4, 6, 0) == mul(f, g)


def test_rankin_cohen_equal_forms_odd_p_vanish():
    g2 = eisenstein(2, 1, 6)
    assert rankin_cohen(g2, g2, 2, 2, 1).is_zero()
    g4 = eisenstein(4, 8, 3)
    # the bracket is a product of one-variable brackets, so over a quadratic field it survives
    assert not rankin_cohen(g4, g4, 4, 4, 1).is_zero()


def test_rankin_cohen_against_hand_formula():
    got = rankin_cohen(eisenstein(4, 1, 6), eisenstein(6, 1, 6), 4, 6, 1)
    ref = bracket_one(classical_g(4, 6), classical_g(6, 6), 4, 6)
    assert [got.constant.a] + [got[N(0, n)].a for n in range(1, 7)] == ref


@given(st.integers(0, 3), st.sampled_from([(2, 4), (4, 4), (4, 6), (2, 6)]))
@pytest.mark.parametrize("D", [1, 5])
def test_rankin_cohen_symmetry(D, p, ks):
    k1, k2 = ks
    f, g = eisenstein(k1, D, 2), eisenstein(k2, D, 2)
    fg = rankin_cohen(f, g, k1, k2, p)
    gf = rankin_cohen(g, f, k2, k1, p)
    assert fg == scale(gf, (-1) ** (field_degree(D) * p))
    assert fg.is_rational()


def test_rc_consistency_zero_pairs():
    assert rc_consistency(12, 0, 3, 1, 4).zero
    assert rc_consistency(8, 0, 3, 5, 3).zero
    assert rc_consistency(10, 1, 4, 5, 3).zero


@pytest.mark.parametrize("k,D", [(8, 5), (10, 5), (12, 1)])
def test_rc_diff_is_the_twisted_singular_term(k, D):
    layer = product_layer(k, D, 3)
    for p, q in admissible_rc_pairs(k):
        rep = rc_consistency(k, p, q, D, 3, layer)
        assert rep.diff == rep.twisted_singular
        assert rep.zero == (q != p + 1)


def test_rc_consistency_rejects_bad_pairs():
    with pytest.raises(ValueError):
        rc_consistency(8, 1, 3, 5, 2)
    with pytest.raises(ValueError):
        rc_consistency(8, 2, 1, 5, 2)
    with pytest.raises(ValueError):
        rc_consistency(8, 0, 5, 5, 2)


def test_admissible_pairs():
    assert admissible_rc_pairs(8) == [(0, 1), (1, 2), (0, 3), (2, 3)]


def _rank(series):
    import sympy

    cols = sorted({nu for f in series for nu in f.indices()})
    rows = [[f.constant.a, f.constant.b] + [x for nu in cols for x in (f[nu].a, f[nu].b)] for f in series]
    return sympy.Matrix(rows).rank()


@pytest.mark.parametrize("D,dims", [(1, {4: 1, 6: 1, 8: 1, 10: 1, 12: 2}), (5, {2: 1, 4: 1, 6: 2, 8: 2, 10: 3, 12: 4})])
def test_modular_basis_dimensions(D, dims):
    from hilbert_kronecker.periods import modular_basis

    for k, d in dims.items():
        basis = modular_basis(k, D, 4)
        assert len(basis) == d and _rank(basis) == d


def test_in_modular_span():
    from hilbert_kronecker.periods import in_modular_span
    from hilbert_kronecker.qseries import nu_twist

    g2 = eisenstein(2, 5, 4)
    assert in_modular_span(mul(g2, g2), 4)
    assert in_modular_span(FourierSeries.zero(5, 4), 4)
    # N(nu) sigma_1(nu): multiplicative and unit invariant, but only quasi-modular
    assert in_modular_span(nu_twist(g2, (1, 1)), 4) is False
    assert in_modular_span(extract_eigenform(12, 1, 6).form, 12)
    assert in_modular_span(eisenstein(4, 8, 2), 4) is None


def test_weight_four_residual_is_not_modular():
    from hilbert_kronecker.periods import in_modular_span

    res = extract_cusp(4, 5, 3)
    assert not res.is_zero()
    assert not any(in_modular_span(s, 4) for _, s in res.items())
