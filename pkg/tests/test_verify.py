"""The verification harness: green runs on the shipped fixtures, fault
injection turning red, and report determinism."""

import json

import pytest

from finforce.verify import (
    CHECKS,
    run_checks,
    verify_history_invariance,
    verify_main_theorem,
    verify_nice_and_correct,
    verify_well_definedness,
)


class TestGreenRuns:
    def test_i1_all_checks(self, i1, i1_names):
        reports = run_checks(i1.iteration, i1_names)
        for r in reports:
            assert r.passed, r.to_json()

    @pytest.mark.parametrize("which", ["fsi2_cc", "fsi2_cohen_c", "fsi3", "case2"])
    def test_fixture_all_checks(self, which, request):
        it, names = request.getfixturevalue(which)
        for r in run_checks(it, names):
            assert r.passed, r.to_json()

    def test_counts_recorded(self, i1, i1_names):
        rep = verify_main_theorem(i1.iteration, i1_names)
        assert rep.generics == 32
        assert rep.checked == 32 * 256
        assert rep.names == 4


class TestRedRuns:
    def test_bad_subposet_reported(self):
        from finforce.fixtures import i1_bad_subposet

        rep = verify_nice_and_correct(i1_bad_subposet().iteration)
        assert not rep.passed
        assert all(f.kind == "nice-subposet" for f in rep.failures)

    def test_tampered_name_values_reported(self, i1, i1_names):
        """The same antichain with an inconsistent duplicate value table
        still verifies (values are data), but a non-maximal antichain is
        caught by the uniqueness audit."""
        from finforce.names import RealName

        it = i1.iteration
        p0, p1 = i1.branch_antichain
        broken = RealName(antichains=((p0,),), values=((5,),))
        rep = verify_main_theorem(it, {"broken": broken})
        assert any(f.kind == "antichain-uniqueness" for f in rep.failures)


class TestReports:
    def test_json_fields(self, i1, i1_names):
        rep = verify_main_theorem(i1.iteration, i1_names)
        js = rep.to_json()
        assert set(js) == {
            "check", "checked", "generics", "names", "sampled", "failures", "timing",
        }
        assert js["failures"] == []
        assert isinstance(js["timing"]["seconds"], float)

    def test_determinism_modulo_timing(self, i1, i1_names):
        first = [r.to_json() for r in run_checks(i1.iteration, i1_names)]
        second = [r.to_json() for r in run_checks(i1.iteration, i1_names)]
        for a, b in zip(first, second):
            a.pop("timing")
            b.pop("timing")
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_summary_line(self, i1, i1_names):
        rep = verify_history_invariance(i1.iteration, i1_names)
        assert rep.summary().startswith("history_invariance: pass")


class TestCheckRegistry:
    def test_all_registered(self):
        assert set(CHECKS) == {
            "main_theorem",
            "history_invariance",
            "well_definedness",
            "density",
            "embeddings",
            "nice_and_correct",
        }

    def test_subset_selection(self, i1, i1_names):
        reports = run_checks(i1.iteration, i1_names, ["density"])
        assert [r.check for r in reports] == ["density"]


class TestSampling:
    def test_generic_cap_triggers_seeded_sample(self, i1, i1_names):
        rep1 = verify_main_theorem(i1.iteration, i1_names, max_generics=8, seed=11)
        rep2 = verify_main_theorem(i1.iteration, i1_names, max_generics=8, seed=11)
        assert rep1.sampled and rep2.sampled
        assert rep1.generics == rep2.generics == 8
        assert rep1.passed and rep2.passed
        a, b = rep1.to_json(), rep2.to_json()
        a.pop("timing"), b.pop("timing")
        assert a == b

    def test_full_run_not_sampled(self, i1, i1_names):
        rep = verify_main_theorem(i1.iteration, i1_names)
        assert not rep.sampled


class TestMutatedSynthesizer:
    def test_flipped_bit_value_surfaces_in_report(self, i1, i1_names, monkeypatch):
        """A synthesizer that flips bit-atom indices must produce witnessed
        membership-code failures in the report."""
        import finforce.verify as verify_mod
        from finforce.codes import AndNode, BitAtom, NotNode, OrNode, TrueNode
        from finforce.synth import synth_E as real_synth_E

        def flip(code):
            if isinstance(code, BitAtom):
                return NotNode(code)
            if isinstance(code, AndNode):
                return AndNode(tuple(flip(c) for c in code.children))
            if isinstance(code, OrNode):
                return OrNode(tuple(flip(c) for c in code.children))
            if isinstance(code, NotNode):
                return NotNode(flip(code.child))
            return code

        def tampered(it, a, p, chooser=None):
            return flip(real_synth_E(it, a, p, chooser))

        monkeypatch.setattr(verify_mod, "synth_E", tampered)
        rep = verify_mod.verify_main_theorem(i1.iteration, {})
        assert not rep.passed
        kinds = {f.kind for f in rep.failures}
        assert "membership-code" in kinds
        witness = next(f for f in rep.failures if f.kind == "membership-code")
        assert witness.condition and witness.zbar
        assert {witness.expected, witness.actual} == {"True", "False"}
