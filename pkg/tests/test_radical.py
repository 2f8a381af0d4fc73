"""Radical membership certificates against the trace-form oracle."""
import pytest

from limitalg.radical import (ChainCycle, InRadical, LinklessDecomposition,
                              NotInRadical, Unknown, UniformNilpotency,
                              chain_cycle_certificate, donsig_chain,
                              extremal_subordinate_check, finite_level_radical,
                              radical_membership, strictly_upper_units,
                              uniform_nilpotency)
from limitalg.tower import (Element, MatrixUnit, TowerRule, TowerSpec,
                            embed_element, preset)


class TestFiniteOracle:
    def test_triangular_radical_is_strictly_upper(self):
        for shape in ((2,), (3,), (2, 2), (1, 3)):
            rad = finite_level_radical(shape)
            keys = sorted(k for v in rad for k in v)
            assert all(len(v) == 1 for v in rad)
            assert keys == sorted(strictly_upper_units(shape))

    def test_semisimple_algebras_have_zero_radical(self):
        assert finite_level_radical((2,), triangular=False) == []
        assert finite_level_radical((1, 1), triangular=False) == []
        assert finite_level_radical((2, 3), triangular=False) == []


class TestDonsigChains:
    def test_standard_chain_with_exact_verification(self):
        t = preset("standard-2")
        ch = donsig_chain(t, MatrixUnit(0, 0, 1, 2), 3)
        assert ch is not None and ch.verify(t)
        assert [u.col for u in ch.t_units] == [2, 4, 8, 16]
        assert [u.row for u in ch.t_units] == [1, 1, 1, 1]
        assert ch.s_units[0] == MatrixUnit(1, 0, 2, 3)

    def test_refinement_chain_dies_immediately(self):
        t = preset("refinement-2")
        assert donsig_chain(t, MatrixUnit(0, 0, 1, 2), 1, horizon=8) is None

    def test_chain_cycle_for_every_standard_unit(self):
        t = preset("standard-2")
        for level in (0, 1):
            for e in t.units_at(level):
                cc = chain_cycle_certificate(t, e)
                assert isinstance(cc, ChainCycle)
                assert cc.chain.verify(t)

    def test_chain_cycle_requires_stationary_tower(self):
        finite = TowerSpec([(2,), (4,)],
                           [(((0, 1), (0, 2), (0, 1), (0, 2)),)])
        with pytest.raises(ValueError):
            chain_cycle_certificate(finite, MatrixUnit(0, 0, 1, 2))


class TestUniformNilpotency:
    def test_exponent_two_passes_per_unit_but_not_closure(self):
        # single units b all give (e b)^2 = 0, yet mixed elements break
        # exponent 2, and the boolean support closure detects that
        t = preset("paper-example-taf")
        e = MatrixUnit(1, 0, 1, 2)
        rep = uniform_nilpotency(t, e, 2, horizon=3, pattern_closure=True)
        assert rep.ok and rep.certificate is None and not rep.pattern_closed
        x = embed_element(t, Element.from_unit(e), 2)
        mixed = Element(2, {(1, 2, 3): 1, (1, 4, 4): 1})
        assert (x * mixed).power(2)

    def test_counterexample_is_reported(self):
        # a diagonal unit is its own exponent-1 counterexample: e*e = e
        t = preset("standard-2")
        e = MatrixUnit(0, 0, 1, 1)
        rep = uniform_nilpotency(t, e, 1, horizon=2)
        assert not rep.ok and rep.counterexample is not None
        x = embed_element(t, Element.from_unit(e),
                          rep.counterexample.level)
        assert (x * Element.from_unit(rep.counterexample)).power(1)

    def test_pattern_closure_certificate(self):
        t = preset("paper-example-taf")
        rep = uniform_nilpotency(t, MatrixUnit(1, 0, 1, 2), 3, horizon=4,
                                 pattern_closure=True)
        assert rep.ok and rep.certificate == UniformNilpotency(3, 4, True)

    def test_per_unit_check_alone_gets_no_limit_certificate(self):
        # standard-2: (e b)^2 = 0 for single units b, but mixed b break it,
        # and the boolean support closure correctly refuses to certify
        t = preset("standard-2")
        rep = uniform_nilpotency(t, MatrixUnit(0, 0, 1, 2), 2, horizon=3,
                                 pattern_closure=True)
        assert rep.ok and rep.certificate is None
        x = embed_element(t, Element.from_unit(MatrixUnit(0, 0, 1, 2)), 1)
        mixed = Element(1, {(0, 2, 3): 1, (0, 4, 4): 1})
        assert (x * mixed).power(2)


class TestMembership:
    def test_refinement_strict_upper_in_radical(self):
        t = preset("refinement-2")
        for e in t.units_at(1):
            st = radical_membership(t, e)
            if e.diagonal:
                assert isinstance(st, NotInRadical)
            else:
                assert isinstance(st, InRadical)
                assert isinstance(st.certificate, LinklessDecomposition)

    def test_standard_units_not_in_radical(self):
        t = preset("standard-2")
        for e in t.units_at(1):
            st = radical_membership(t, e)
            assert isinstance(st, NotInRadical)
            assert isinstance(st.certificate, ChainCycle)

    def test_growing_taf_unit_in_radical_by_nilpotency(self):
        t = preset("paper-example-taf")
        st = radical_membership(t, MatrixUnit(1, 0, 1, 2), expand_horizon=4)
        assert isinstance(st, InRadical)
        assert isinstance(st.certificate, UniformNilpotency)
        assert st.certificate.exponent == 3

    def test_unknown_when_no_route_applies(self):
        class OpaqueRefinement(TowerRule):
            def shape(self, level):
                return (2 * 2 ** level,)

            def words(self, level):
                k = 2 * 2 ** level
                return (tuple((0, (q + 1) // 2)
                              for q in range(1, 2 * k + 1)),)

        t = TowerSpec(rule=OpaqueRefinement())
        st = radical_membership(t, MatrixUnit(0, 0, 1, 2),
                                expand_horizon=2, link_horizon=3)
        assert isinstance(st, Unknown)


class TestExtremalFactorization:
    def test_growing_taf_lemma_configuration(self):
        t = preset("paper-example-taf")
        rep = extremal_subordinate_check(t, MatrixUnit(1, 0, 1, 2), 2)
        assert rep["ok"]
        by_summand = {s["summand"]: s for s in rep["summands"]}
        assert by_summand[1]["I"] == 3 and by_summand[1]["J"] == 2
        assert by_summand[1]["lemma_configuration"]

    def test_refinement_has_no_lemma_configuration(self):
        t = preset("refinement-2")
        rep = extremal_subordinate_check(t, MatrixUnit(0, 0, 1, 2), 1)
        assert rep["ok"]
        assert rep["summands"][0]["I"] == 2
        assert rep["summands"][0]["J"] == 3
        assert not rep["summands"][0]["lemma_configuration"]
