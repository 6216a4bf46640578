"""The weight-module family: actions, axiom residuals, parity, weights."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nscheck.algebra import AElement, AlgebraMode, C, G, L, half
from nscheck.enveloping import omega
from nscheck.modules import (
    BasisKey,
    ExclusionRole,
    Family,
    ModuleError,
    ModuleParams,
    ModuleVector,
    SignConvention,
    Window,
    act,
    gamma,
    gamma_minus,
    gamma_plus,
    gamma_prime,
    make_module,
    module_axiom_residual,
    parity_change,
    parse_module_descriptor,
    weight,
)
from nscheck.scalars import B, LAMBDA, Scalar

F = Fraction
CORRECTED = SignConvention.CORRECTED
PRINTED = SignConvention.PAPER_PRINTED


def vec(k, eps=0, coeff=1):
    return ModuleVector.basis(BasisKey(k, eps), coeff)


class TestMakeModule:
    def test_generic_point(self):
        m = gamma(F(1, 3), F(1, 4))
        assert m.descriptor() == "gamma(1/3,1/4)"

    def test_gamma_plus_formal_b(self):
        m = gamma_plus(B)
        assert m.algebra_mode is AlgebraMode.KPLUS
        assert m.descriptor() == "gamma+(0,b)"

    def test_gamma_plus_requires_zero_lambda(self):
        with pytest.raises(ModuleError):
            make_module(ModuleParams(Scalar.of(1), Scalar.of(0), Family.GAMMA_PLUS,
                                     algebra_mode=AlgebraMode.KPLUS))

    def test_gamma_plus_requires_contact_mode(self):
        with pytest.raises(ModuleError):
            make_module(ModuleParams(Scalar.of(0), Scalar.of(0), Family.GAMMA_PLUS,
                                     algebra_mode=AlgebraMode.KHAT))

    def test_gamma_prime_wrong_role_rejected(self):
        # at lambda = b = 0 the key (0,0) spans an invariant line, so the
        # exclusion must be quotient-type
        with pytest.raises(ModuleError) as err:
            make_module(ModuleParams(
                Scalar.of(0), Scalar.of(0), Family.GAMMA_PRIME,
                excluded=(BasisKey(0, 0), ExclusionRole.SUB),
            ))
        assert "quotient" in str(err.value)

    def test_gamma_prime_derivations(self):
        m = gamma_prime(0, 0)
        assert m.excluded == (BasisKey(0, 0), ExclusionRole.QUOTIENT)
        m = gamma_prime(0, F(1, 2))
        assert m.excluded == (BasisKey(-1, 1), ExclusionRole.SUB)
        m = gamma_prime(2, 0)
        assert m.excluded == (BasisKey(-2, 0), ExclusionRole.QUOTIENT)
        assert gamma_prime(F(1, 3), F(1, 4)).excluded is None

    def test_gamma_prime_bogus_exclusion(self):
        with pytest.raises(ModuleError):
            make_module(ModuleParams(
                Scalar.of(F(1, 3)), Scalar.of(F(1, 4)), Family.GAMMA_PRIME,
                excluded=(BasisKey(0, 0), ExclusionRole.QUOTIENT),
            ))


class TestAction:
    def test_l_on_even(self):
        m = gamma(0, 0)
        assert act(L(1), vec(2), m) == vec(3, coeff=2)

    def test_g_on_odd_both_conventions(self):
        for conv in (CORRECTED, PRINTED):
            m = gamma(0, 0, convention=conv)
            assert act(G(half(1)), vec(0, 1), m) == vec(1, coeff=-1)

    def test_l0_weight_on_odd(self):
        m = gamma(LAMBDA, B)
        got = act(L(0), vec(5, 1), m)
        want = ModuleVector({BasisKey(5, 1): LAMBDA + 5 + B + F(1, 2)})
        assert got == want

    def test_a_multiplication(self):
        m = gamma(0, 0)
        got = act(AElement.monomial(2), vec(3, 1), m)
        assert got == vec(5, 1)
        assert act(AElement.monomial(0, 1), vec(3, 1), m).is_zero()

    def test_g_convention_sign(self):
        mc = gamma(LAMBDA, B, convention=CORRECTED)
        mp = gamma(LAMBDA, B, convention=PRINTED)
        got_c = act(G(half(1)), vec(0), mc)
        got_p = act(G(half(1)), vec(0), mp)
        assert got_c == got_p.scale(-1)
        assert got_c == ModuleVector({BasisKey(0, 1): LAMBDA + 2 * B})

    def test_central_element_acts_as_zero(self):
        m = gamma(F(1, 3), F(1, 4))
        assert act(C, vec(0), m).is_zero()

    def test_central_element_rejected_outside_khat(self):
        m = gamma(F(1, 3), F(1, 4), AlgebraMode.KPLUS)
        with pytest.raises(ModuleError):
            act(C, vec(0), m)

    def test_kplus_bounds_enforced(self):
        m = gamma(F(1, 3), F(1, 4), AlgebraMode.KPLUS)
        with pytest.raises(ModuleError):
            act(L(-2), vec(0), m)

    def test_smash_element_acts_right_to_left(self):
        m = gamma(F(1, 3), F(1, 4))
        elem = omega(1, 0, 1)  # = -L_1 in normal form
        got = act(elem, vec(2), m)
        assert got == act(L(1), vec(2), m).scale(-1)

    def test_gamma_minus_projects(self):
        m = gamma_minus(F(1, 4))
        got = act(L(3), vec(-2), m)  # target key 1 >= 0 is projected away
        assert got.is_zero()
        got = act(L(1), vec(-3), m)
        assert got == vec(-2, coeff=Scalar.of(-3 + F(1, 2)))

    def test_gamma_plus_stays_inside(self):
        m = gamma_plus(F(1, 4))
        assert act(L(-1), vec(0), m).is_zero()
        assert act(G(half(-1)), vec(0, 1), m) == vec(0, coeff=-1)

    def test_gamma_prime_quotient_projects(self):
        m = gamma_prime(0, 0)
        assert act(L(-1), vec(1), m).is_zero()  # image would be the excluded t^0

    def test_gamma_prime_sub_untouched(self):
        m = gamma_prime(0, F(1, 2))
        got = act(G(half(-1)), vec(0), m)  # coefficient into (-1,1) vanishes
        assert got.is_zero()
        got = act(L(-1), vec(0, 1), m)  # likewise from the odd side
        assert got.is_zero()

    def test_coefficient_algebra_rejected_on_proper_subquotient(self):
        m = gamma_prime(0, F(1, 2))
        with pytest.raises(ModuleError):
            act(AElement.monomial(1), vec(0), m)


class TestModuleAxiom:
    def test_ll_pair_both_conventions(self):
        for conv in (CORRECTED, PRINTED):
            m = gamma(LAMBDA, B, convention=conv)
            for k in range(-3, 4):
                assert module_axiom_residual(L(1), L(-1), BasisKey(k, 0), m).is_zero()
                assert module_axiom_residual(L(1), L(-1), BasisKey(k, 1), m).is_zero()

    def test_odd_odd_printed_witness(self):
        m = gamma(LAMBDA, B, convention=PRINTED)
        for k in (-2, 0, 3):
            got = module_axiom_residual(G(half(1)), G(half(-1)), BasisKey(k, 0), m)
            want = ModuleVector({BasisKey(k, 0): (LAMBDA + k + B) * 4})
            assert got == want

    def test_odd_odd_corrected_vanishes(self):
        m = gamma(LAMBDA, B, convention=CORRECTED)
        for k in (-2, 0, 3):
            assert module_axiom_residual(G(half(1)), G(half(-1)), BasisKey(k, 0), m).is_zero()
            assert module_axiom_residual(G(half(1)), G(half(-1)), BasisKey(k, 1), m).is_zero()

    def test_corrected_sweep(self):
        m = gamma(LAMBDA, B)
        gens = [L(n) for n in range(-2, 3)] + [G(half(d)) for d in (-3, -1, 1, 3)]
        for x, y in product(gens, repeat=2):
            for key in (BasisKey(-1, 0), BasisKey(2, 1)):
                assert module_axiom_residual(x, y, key, m).is_zero(), (x.render(), y.render())


class TestWeights:
    def test_examples(self):
        m = gamma(LAMBDA, B)
        assert weight(BasisKey(0, 0), m) == LAMBDA + B
        assert weight(BasisKey(0, 1), m) == LAMBDA + B + F(1, 2)

    def test_distinct_keys_distinct_weights(self):
        m = gamma(F(1, 3), F(1, 4))
        seen = set()
        for k in range(-5, 6):
            for eps in (0, 1):
                w = weight(BasisKey(k, eps), m)
                assert w not in seen
                seen.add(w)

    @given(st.integers(-4, 4), st.integers(0, 1),
           st.sampled_from([L(-2), L(0), L(3), G(half(-3)), G(half(1))]))
    @settings(max_examples=60, deadline=None)
    def test_weight_compatibility(self, k, eps, g):
        m = gamma(LAMBDA, B)
        key = BasisKey(k, eps)
        for target, _ in m.gen_action(g, key):
            assert weight(target, m) == weight(key, m) + g.degree.as_scalar()


class TestParityChange:
    def test_involution(self):
        m = gamma(0, 0)
        assert parity_change(parity_change(m)) == m

    def test_flips_vector_parity(self):
        m = gamma(0, 0)
        assert m.vector_parity(BasisKey(0, 0)) == 0
        assert parity_change(m).vector_parity(BasisKey(0, 0)) == 1

    def test_action_unchanged(self):
        m = gamma(F(1, 3), F(1, 4))
        p = parity_change(m)
        for g in (L(2), G(half(-1))):
            assert act(g, vec(1, 1), m) == act(g, vec(1, 1), p)


class TestGammaPlusClosure:
    def test_every_contact_generator_stays_inside(self):
        m = gamma_plus(B)
        gens = [L(n) for n in range(-1, 4)] + [G(half(d)) for d in (-1, 1, 3, 5)]
        for g in gens:
            for k in range(0, 5):
                for eps in (0, 1):
                    for target, _ in m.gen_action(g, BasisKey(k, eps)):
                        assert target.k >= 0


class TestDescriptors:
    def test_round_trip(self):
        for text in ("gamma(1/3,1/4)", "gamma+(0,b)", "gamma-(0,b)",
                     "gamma'(0,1/2)", "pi(gamma'(0,0))", "gamma(l,b)"):
            m = parse_module_descriptor(text)
            assert m.descriptor() == text

    def test_overrides(self):
        m = parse_module_descriptor("gamma(l,b)", lam_value=F(1, 3), b_value=F(1, 4))
        assert m.descriptor() == "gamma(1/3,1/4)"

    def test_errors(self):
        for bad in ("gamma(1/3)", "gamma[1,2]", "gamma(x,y)", "delta(0,0)", "gamma(1/0,0)"):
            with pytest.raises(ModuleError):
                parse_module_descriptor(bad)
        with pytest.raises(ModuleError):
            parse_module_descriptor("gamma+(1,0)")

    def test_window_invariants(self):
        with pytest.raises(ModuleError):
            Window(0, 10, 6)
        w = Window(-10, 10, 3)
        assert list(w.interior()) == list(range(-7, 8))


def test_vector_rendering():
    v = ModuleVector({BasisKey(3, 0): Scalar.of(2), BasisKey(3, 1): LAMBDA + B})
    assert v.render() == "2 * t^3 + (l + b) * t^3 xi"
