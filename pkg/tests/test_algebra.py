"""Bracket relations, the two actions, and the compatibility residuals."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nscheck.algebra import (
    AElement,
    AlgebraError,
    AlgebraMode,
    A_action_on_k,
    C,
    G,
    HalfInt,
    L,
    LieElement,
    bracket,
    compatibility_residual,
    half,
    k_action_on_A,
)
from nscheck.scalars import Scalar

KHAT = AlgebraMode.KHAT
K = AlgebraMode.K
KPLUS = AlgebraMode.KPLUS


def lie(g, mode=KHAT):
    return LieElement.basis(g, mode)


class TestHalfInt:
    def test_arithmetic(self):
        assert half(7).render() == "7/2"
        assert half(4).render() == "2"
        assert (half(1) + half(2)).doubled == 3
        assert HalfInt.of(Fraction(3, 2)).doubled == 3
        with pytest.raises(AlgebraError):
            HalfInt.of(Fraction(1, 3))


class TestBracket:
    def test_ll_without_center(self):
        assert bracket(lie(L(2)), lie(L(3))) == lie(L(5))

    def test_ll_cocycle(self):
        got = bracket(lie(L(2)), lie(L(-2)))
        want = LieElement({L(0): Scalar.of(-4), C: Scalar.of(Fraction(1, 2))}, KHAT)
        assert got == want

    def test_gg_vanishing_center(self):
        got = bracket(lie(G(half(1))), lie(G(half(-1))))
        assert got == lie(L(0)).scale(-2)

    def test_gg_with_center(self):
        got = bracket(lie(G(half(3))), lie(G(half(-3))))
        want = LieElement({L(0): Scalar.of(-2), C: Scalar.of(Fraction(2, 3))}, KHAT)
        assert got == want

    def test_antisymmetry_even(self):
        assert bracket(lie(L(0)), lie(L(0))).is_zero()

    def test_central_terms_dropped_outside_khat(self):
        got = bracket(lie(L(2), K), lie(L(-2), K))
        assert got == lie(L(0), K).scale(-4)

    def test_mode_mismatch(self):
        with pytest.raises(AlgebraError):
            bracket(lie(L(0), KHAT), lie(L(0), K))

    def test_kplus_bounds(self):
        with pytest.raises(AlgebraError):
            lie(L(-2), KPLUS)
        assert bracket(lie(L(-1), KPLUS), lie(G(half(-1)), KPLUS)).is_zero()


def test_super_antisymmetry_on_basis():
    gens = [L(n) for n in range(-2, 3)] + [G(half(d)) for d in (-3, -1, 1, 3)]
    for x, y in product(gens, repeat=2):
        lhs = bracket(lie(x), lie(y))
        rhs = bracket(lie(y), lie(x))
        sign = -1 if (x.parity and y.parity) else 1
        assert lhs == rhs.scale(-sign), (x.render(), y.render())


def test_grading_by_ad_l0():
    for g in [L(-3), L(2), G(half(5)), G(half(-1))]:
        got = bracket(lie(L(0)), lie(g))
        assert got == lie(g).scale(g.degree.as_scalar())


class TestActions:
    def test_l_on_t(self):
        got = k_action_on_A(lie(L(1), K), AElement.monomial(2))
        assert got == AElement.monomial(3, coeff=2)

    def test_g_on_xi(self):
        got = k_action_on_A(lie(G(half(1)), K), AElement.monomial(0, 1))
        assert got == AElement.monomial(1, 0, coeff=-1)

    def test_l0_kills_unit(self):
        assert k_action_on_A(lie(L(0), K), AElement.monomial(0)).is_zero()

    def test_central_element_rejected(self):
        with pytest.raises(AlgebraError):
            k_action_on_A(lie(C, KHAT), AElement.monomial(0))

    def test_a_action_shift(self):
        assert A_action_on_k(AElement.monomial(2), lie(L(3), K)) == lie(L(5), K)

    def test_a_action_xi_on_l(self):
        got = A_action_on_k(AElement.monomial(0, 1), lie(L(3), K))
        assert got == lie(G(half(7)), K).scale(Scalar.of(Fraction(1, 2)))

    def test_a_action_xi_on_g(self):
        assert A_action_on_k(AElement.monomial(0, 1), lie(G(half(1)), K)).is_zero()

    def test_a_action_kplus_bound_violation(self):
        with pytest.raises(AlgebraError) as err:
            A_action_on_k(AElement.monomial(-3), lie(L(0), KPLUS))
        assert "L(-3)" in str(err.value)


def test_action_is_representation():
    rng = 2
    gens = [L(n) for n in range(-rng, rng + 1)] + [
        G(half(d)) for d in range(-2 * rng + 1, 2 * rng, 2)
    ]
    for x, y in product(gens, repeat=2):
        ex, ey = lie(x, K), lie(y, K)
        for i in range(-rng, rng + 1):
            for eps in (0, 1):
                a = AElement.monomial(i, eps)
                got = k_action_on_A(ex, k_action_on_A(ey, a))
                swap = k_action_on_A(ey, k_action_on_A(ex, a))
                got = got + swap if (x.parity and y.parity) else got - swap
                assert got == k_action_on_A(bracket(ex, ey), a)


class TestCompatibility:
    def test_unit_of_a(self):
        r = compatibility_residual(lie(L(2), K), AElement.monomial(0), lie(L(-1), K))
        assert r.is_zero()

    def test_all_eight_families(self):
        rng = 2
        vs = [L(n) for n in range(-rng, rng + 1)] + [
            G(half(d)) for d in range(-2 * rng + 1, 2 * rng, 2)
        ]
        for v in vs:
            for x in vs:
                for i in range(-rng, rng + 1):
                    for eps in (0, 1):
                        r = compatibility_residual(
                            lie(v, K), AElement.monomial(i, eps), lie(x, K)
                        )
                        assert r.is_zero(), (v.render(), i, eps, x.render())

    def test_needs_homogeneous(self):
        mixed = lie(L(0), K) + lie(G(half(1)), K)
        with pytest.raises(AlgebraError):
            compatibility_residual(mixed, AElement.monomial(0), lie(L(0), K))


gen_strategy = st.one_of(
    st.integers(-3, 3).map(L),
    st.integers(-3, 2).map(lambda n: G(half(2 * n + 1))),
    st.just(C),
)


@given(gen_strategy, gen_strategy, gen_strategy)
@settings(max_examples=80, deadline=None)
def test_graded_jacobi_random_triples(x, y, z):
    ex, ey, ez = lie(x), lie(y), lie(z)
    lhs = bracket(ex, bracket(ey, ez))
    rhs = bracket(bracket(ex, ey), ez)
    inner = bracket(ey, bracket(ex, ez))
    rhs = rhs - inner if (x.parity and y.parity) else rhs + inner
    assert lhs == rhs


def test_rendering():
    e = LieElement({L(0): Scalar.of(-4), C: Scalar.of(Fraction(1, 2))}, KHAT)
    assert e.render() == "-4*L(0) + 1/2*C"
    assert lie(G(half(7))).scale(Scalar.of(Fraction(1, 2))).render() == "1/2*G(7/2)"
    a = AElement.monomial(2, 1, coeff=3)
    assert a.render() == "3*t^2*xi"
