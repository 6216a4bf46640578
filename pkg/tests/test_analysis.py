"""Verification suites, reachability verdicts, intertwiners, annihilators."""

from fractions import Fraction

import pytest

from nscheck.algebra import AlgebraMode, G, L, half
from nscheck.analysis import (
    AnnihilatorBoundError,
    CheckReport,
    chain_reports,
    classification_table,
    compat_reports,
    find_intertwiner,
    jacobi_family_reports,
    minimal_annihilator,
    module_edges,
    psi_table_reports,
    reachability_closure,
    reconstruction_reports,
    centralizer_reports,
    simplicity_verdict,
    sort_reports,
    verify_identity_catalogue,
    verify_jacobi,
)
from nscheck.modules import (
    BasisKey,
    ModuleError,
    Window,
    gamma,
    gamma_minus,
    gamma_plus,
    gamma_prime,
    parity_change,
    parse_module_descriptor,
)
from nscheck.scalars import B, LAMBDA

F = Fraction
W = Window(-10, 10, 3)
KPLUS = AlgebraMode.KPLUS


class TestCheckReport:
    def test_fail_needs_witness(self):
        with pytest.raises(ValueError):
            CheckReport("x", "y", "fail", "p")

    def test_bad_status(self):
        with pytest.raises(ValueError):
            CheckReport("x", "y", "maybe")

    def test_sorting(self):
        reports = [CheckReport("b", "", "pass"), CheckReport("a", "", "pass")]
        assert [r.name for r in sort_reports(reports)] == ["a", "b"]

    def test_witness_omitted_on_pass(self):
        assert "witness" not in CheckReport("a", "", "pass").to_dict()


class TestJacobi:
    def test_range_three_passes(self):
        assert verify_jacobi(3).status == "pass"

    def test_families(self):
        reports = jacobi_family_reports(2)
        assert [r.status for r in reports] == ["pass"] * 5

    def test_range_bound(self):
        with pytest.raises(ValueError):
            verify_jacobi(1)


class TestReachability:
    def test_isolated_seed_at_origin(self):
        m = gamma(0, 0)
        got = reachability_closure(m, BasisKey(0, 0), W, 3)
        assert got == frozenset({BasisKey(0, 0)})

    def test_generic_seed_reaches_everything(self):
        m = gamma(0, 0)
        got = reachability_closure(m, BasisKey(1, 0), W, 3)
        interior = {BasisKey(k, e) for k in range(-7, 8) for e in (0, 1)}
        assert got == frozenset(interior)

    def test_excluded_key_unreachable_at_b_half(self):
        m = gamma(0, F(1, 2))
        got = reachability_closure(m, BasisKey(2, 0), W, 3)
        interior = {BasisKey(k, e) for k in range(-7, 8) for e in (0, 1)}
        assert got == frozenset(interior - {BasisKey(-1, 1)})

    def test_seed_outside_interior(self):
        with pytest.raises(ModuleError):
            reachability_closure(gamma(0, 0), BasisKey(9, 0), W, 3)


class TestSimplicity:
    def test_generic_simple(self):
        v = simplicity_verdict(gamma(F(1, 3), F(1, 4)), W, 3)
        assert v.kind == "simple"

    def test_reducible_with_complement_certificate(self):
        v = simplicity_verdict(gamma(0, F(1, 2)), W, 3)
        assert v.kind == "reducible"
        interior = {BasisKey(k, e) for k in range(-7, 8) for e in (0, 1)}
        assert set(v.certificate) == interior - {BasisKey(-1, 1)}

    def test_trivial_line_certificate(self):
        v = simplicity_verdict(gamma(0, 0), W, 3)
        assert v.kind == "reducible"
        assert v.certificate == (BasisKey(0, 0),)

    def test_b_away_from_locus_is_simple(self):
        assert simplicity_verdict(gamma(0, 1), W, 3).kind == "simple"

    def test_formal_generic_simple_with_locus(self):
        v = simplicity_verdict(gamma(F(1, 3), B, AlgebraMode.KPLUS), W, 3)
        assert v.kind == "simple"
        assert v.locus is not None
        assert "out@t^0" in v.locus

    def test_window_too_small(self):
        v = simplicity_verdict(gamma(0, 0), Window(-4, 4, 1), 3)
        assert v.kind == "inconclusive"

    def test_kplus_integral_lambda_reducible(self):
        assert simplicity_verdict(gamma(0, F(1, 4), KPLUS), W, 3).kind == "reducible"
        assert simplicity_verdict(gamma(1, F(1, 4), KPLUS), W, 3).kind == "reducible"

    def test_jet_families_simple(self):
        for b in (0, F(1, 2), 1):
            assert simplicity_verdict(gamma_plus(b), W, 3).kind == "simple"
            assert simplicity_verdict(gamma_minus(b), W, 3).kind == "simple"

    def test_gamma_plus_pure_contact_edges_sees_constants(self):
        # over the contact algebra alone the constants span an invariant
        # line of gamma+(0,0); the jet structure removes it
        v = simplicity_verdict(gamma_plus(0), W, 3, include_a_action=False)
        assert v.kind == "reducible"
        assert v.certificate == (BasisKey(0, 0),)

    def test_window_stability(self):
        for win in (W, Window(-13, 13, 3)):
            assert simplicity_verdict(gamma(0, F(1, 2)), win, 3).kind == "reducible"
            assert simplicity_verdict(gamma(F(1, 3), F(1, 4)), win, 3).kind == "simple"


class TestIntertwiner:
    def test_integer_shift(self):
        got = find_intertwiner(gamma(F(1, 3), F(1, 4)), gamma(F(4, 3), F(1, 4)), W, 3)
        assert got is not None and got.parity == "even"

    def test_exceptional_pair(self):
        got = find_intertwiner(gamma(F(1, 3), F(1, 2)), gamma(F(4, 3), 0), W, 3)
        assert got is not None and got.parity == "odd"

    def test_mismatched_b(self):
        assert find_intertwiner(gamma(F(1, 3), 0), gamma(F(1, 3), F(1, 4)), W, 3) is None

    def test_non_integer_shift(self):
        assert find_intertwiner(gamma(F(1, 3), F(1, 4)), gamma(F(1, 2), F(1, 4)), W, 3) is None

    def test_subquotient_parity_pair(self):
        m1 = gamma_prime(0, 0)
        m2 = parity_change(gamma_prime(0, F(1, 2)))
        got = find_intertwiner(m1, m2, W, 3)
        assert got is not None and got.parity == "even"

    def test_symmetry(self):
        pairs = [
            (gamma(F(1, 3), F(1, 4)), gamma(F(4, 3), F(1, 4))),
            (gamma(F(1, 3), F(1, 2)), gamma(F(4, 3), 0)),
            (gamma(F(1, 3), 0), gamma(F(1, 3), F(1, 4))),
        ]
        for m1, m2 in pairs:
            fwd = find_intertwiner(m1, m2, W, 3)
            bwd = find_intertwiner(m2, m1, W, 3)
            assert (fwd is None) == (bwd is None)

    def test_requires_numeric_parameters(self):
        with pytest.raises(ModuleError):
            find_intertwiner(gamma(LAMBDA, B), gamma(0, 0), W, 3)

    def test_scalings_are_nonzero(self):
        got = find_intertwiner(gamma(F(1, 3), F(1, 2)), gamma(F(4, 3), 0), W, 3)
        assert all(not c.is_zero() for _, _, c in got.mapping)


class TestAnnihilator:
    def test_minimal_order_three(self):
        m, report = minimal_annihilator(gamma(F(1, 3), F(1, 4)), Window(-8, 8, 0), 6)
        assert m == 3
        assert report.status == "pass"
        assert "minimality: Omega^(2)" in report.params

    def test_formal_parameters(self):
        m, report = minimal_annihilator(gamma(LAMBDA, B), Window(-6, 6, 0), 6)
        assert m == 3 and report.status == "pass"

    def test_bound_exceeded(self):
        with pytest.raises(AnnihilatorBoundError):
            minimal_annihilator(gamma(F(1, 3), F(1, 4)), Window(-6, 6, 0), 2)

    def test_kplus_shifted_sweep(self):
        m, report = minimal_annihilator(gamma_plus(F(1, 4)), Window(-6, 6, 0), 6)
        assert report.status == "pass"
        assert m <= 6

    def test_window_stability(self):
        m1, _ = minimal_annihilator(gamma(F(1, 3), F(1, 4)), Window(-6, 6, 0), 6)
        m2, _ = minimal_annihilator(gamma(F(1, 3), F(1, 4)), Window(-9, 9, 0), 6)
        assert m1 == m2


class TestChains:
    def test_module_level_chains_vanish(self):
        mod = gamma(LAMBDA, B)
        reports = chain_reports(mod, 3, Window(-6, 6, 0), 2)
        assert [r.status for r in reports] == ["pass"] * 3

    def test_algebra_level_reported_as_info(self):
        mod = gamma(LAMBDA, B)
        reports = chain_reports(mod, 3, Window(-4, 4, 0), 1, algebra_level=True)
        infos = [r for r in reports if r.status == "info"]
        assert len(infos) == 3
        assert all("False" in r.params for r in infos)

    def test_kplus_chains(self):
        reports = chain_reports(gamma_plus(F(1, 4)), 3, Window(-6, 6, 0), 1)
        assert [r.status for r in reports] == ["pass"] * 3


class TestCatalogue:
    def test_small_catalogue_passes(self):
        reports = verify_identity_catalogue(2, window=Window(-5, 5, 0))
        assert reports, "catalogue must not be empty"
        assert all(r.status in ("pass", "info") for r in reports)
        names = [r.name for r in reports]
        assert names == sorted(names)

    def test_mutated_entry_fails_with_witness(self):
        reports = verify_identity_catalogue(2, window=Window(-5, 5, 0), mutate_lg_entry=True)
        fails = [r for r in reports if r.status == "fail"]
        assert len(fails) == 1
        assert fails[0].name == "psi-table/LG/m=0/n=1"
        assert fails[0].residual_witness


class TestViaSuites:
    def test_reconstruction_suite(self):
        reports = reconstruction_reports(4)
        assert all(r.status == "pass" for r in reports)
        mutated = reconstruction_reports(0, mutate_extension=True)
        assert mutated[0].status == "fail"

    def test_centralizer_suite(self):
        reports = centralizer_reports(3, 3)
        assert all(r.status == "pass" for r in reports)

    def test_psi_suite(self):
        reports = psi_table_reports(2)
        assert all(r.status == "pass" for r in reports)

    def test_compat_suite(self):
        reports = compat_reports(2)
        assert len(reports) == 8
        assert all(r.status == "pass" for r in reports)


def test_classification_table_rows():
    rows = classification_table()
    families = [r["family"] for r in rows]
    assert "highest weight modules" in families
    assert "gamma+(0,b)" in families
    assert "gamma-(0,b)" in families
    out_of_scope = [r for r in rows if r["status"] == "out-of-scope"]
    assert all(r["certificate"] is None for r in out_of_scope)
    certified = [r for r in rows if r["certificate"]]
    assert certified, "in-scope rows must carry certifying check names"


def test_descriptor_integration():
    m = parse_module_descriptor("pi(gamma'(0,1/2))")
    v = simplicity_verdict(m, W, 3)
    assert v.kind == "simple"  # the sub-quotient itself is simple


def test_edge_records():
    edges = module_edges(gamma(F(1, 3), F(1, 4)), W, 2)
    interior = set(edges)
    assert BasisKey(0, 0) in interior
    for src, recs in edges.items():
        for e in recs:
            assert e.source == src
            assert e.target in interior
            assert not e.coefficient.is_zero()
    down = [e for e in edges[BasisKey(0, 0)] if e.generator == "L(-1)"]
    assert len(down) == 1 and down[0].target == BasisKey(-1, 0)
