"""Borel-poset model validation: the built-ins, the documented truncation
pathology, nice subposets and the linked/centered checks."""

import pytest

from finforce.models import (
    AdmissibleFilter,
    check_nice_subposet,
    cohen,
    ed,
    ed_naive,
    element_label,
    parse_element_label,
    validate_borel_model,
)


class TestCohen:
    def test_validates(self, cohen22):
        assert validate_borel_model(cohen22) == []

    def test_shape(self, cohen22):
        assert len(cohen22.poset.elements) == 7
        assert len(cohen22.generic_space) == 4
        assert cohen22.poset.top == ()

    def test_e_is_prefix(self, cohen22):
        assert cohen22.E((0, 1), (0,))
        assert not cohen22.E((0, 1), (1,))
        assert cohen22.E((0, 1), ())

    def test_admissible_are_upsets_of_full_strings(self, cohen22):
        for f in cohen22.admissible:
            assert f.members == cohen22.poset.upset(f.value)

    def test_centered_partition(self, cohen22):
        assert cohen22.centered


class TestEd:
    def test_validates(self, ed22):
        assert validate_borel_model(ed22) == []

    def test_shape(self, ed22):
        # stems up to length two times all sets of length-two functions
        assert len(ed22.poset.elements) == 7 * 16
        assert len(ed22.generic_space) == 4

    def test_order_clause(self, ed22):
        f11 = frozenset({(1, 1)})
        # growing the stem must avoid every function in F on new positions
        assert ed22.poset.leq(((0, 0), f11), ((), f11))
        assert not ed22.poset.leq(((0, 1), f11), ((), f11))
        # F only grows
        assert not ed22.poset.leq(((0, 0), frozenset()), ((), f11))

    def test_e_clause(self, ed22):
        f11 = frozenset({(1, 1)})
        assert ed22.E((0, 0), ((), f11))
        assert not ed22.E((1, 1), ((), f11))
        assert not ed22.E((0, 1), ((), f11))

    def test_admissible_filters_are_e_filters(self, ed22):
        for f in ed22.admissible:
            assert f.members == ed22.filter_of(f.value)

    def test_minimal_elements_include_premature_stems(self, ed22):
        f_all = frozenset((a, b) for a in (0, 1) for b in (0, 1))
        minimals = set(ed22.poset.minimal_elements())
        assert ((), f_all) in minimals
        assert ((0,), f_all) in minimals
        assert len(minimals) == 7

    def test_centered_blocks_by_stem(self, ed22):
        for block in ed22.linked_partition:
            stems = {p[0] for p in block}
            assert len(stems) == 1


class TestEdNaivePathology:
    """The naive genericity recipe (up-sets of all minimal elements) fails
    the E-characterization under truncation; the first witness is pinned."""

    def test_fails_validation(self):
        violations = validate_borel_model(ed_naive(2, 2))
        assert violations
        kinds = {v.check for v in violations}
        assert "E-characterization" in kinds

    def test_pinned_witness(self):
        violations = [
            v for v in validate_borel_model(ed_naive(2, 2))
            if v.check == "E-characterization"
        ]
        first = violations[0]
        eta, p = first.witness
        # the up-set of ((), F_all) with padded eta (0,0) contains ((), {00})
        # even though E((0,0), ((), {00})) is false
        assert eta == (0, 0)
        assert p == ((), frozenset({(0, 0)}))

    def test_good_ed_differs_only_in_admissible(self, ed22):
        naive = ed_naive(2, 2)
        assert len(naive.admissible) == 7
        assert len(ed22.admissible) == 4


class TestNiceSubposet:
    def test_full_poset_is_nice(self, ed22):
        assert check_nice_subposet(ed22, ed22.poset.elements, ed22.generic_space) == []

    def test_top_alone_is_nice(self, ed22):
        assert check_nice_subposet(ed22, [ed22.poset.top], ed22.generic_space) == []

    def test_cohen_halftree_subposet(self, cohen22):
        q = [(), (0,), (0, 0), (0, 1)]
        assert check_nice_subposet(cohen22, q, [(0, 0), (0, 1)]) == []

    def test_cohen_like_subposet_of_ed(self, ed22):
        q = [e for e in ed22.poset.elements if not e[1]]
        assert check_nice_subposet(ed22, q, ed22.generic_space) == []

    def test_missing_branch_reported(self, ed22):
        q = [((), frozenset()), ((0,), frozenset())]
        problems = check_nice_subposet(ed22, q, ed22.generic_space)
        assert any(p.check == "nice-antichain" for p in problems)

    def test_empty_z_rejected(self, ed22):
        with pytest.raises(ValueError):
            check_nice_subposet(ed22, ed22.poset.elements, [])


class TestLinkedValidation:
    def test_bad_block_reported(self, cohen22):
        import finforce.models as m

        bad = m.BorelPosetModel(
            name="bad",
            poset=cohen22.poset,
            generic_space=cohen22.generic_space,
            relation=cohen22.relation,
            admissible=cohen22.admissible,
            linked_partition=(frozenset(cohen22.poset.elements),),
            centered=False,
        )
        violations = validate_borel_model(bad)
        assert any(v.check == "linked" for v in violations)

    def test_partition_must_cover(self, cohen22):
        import finforce.models as m

        bad = m.BorelPosetModel(
            name="bad",
            poset=cohen22.poset,
            generic_space=cohen22.generic_space,
            relation=cohen22.relation,
            admissible=cohen22.admissible,
            linked_partition=(frozenset({()}),),
            centered=True,
        )
        violations = validate_borel_model(bad)
        assert any("cover" in v.message for v in violations)


class TestLabels:
    @pytest.mark.parametrize(
        "element",
        [
            (),
            (0, 1),
            ((), frozenset()),
            ((0, 1), frozenset({(1, 1), (0, 0)})),
        ],
    )
    def test_round_trip(self, element):
        assert parse_element_label(element_label(element)) == element
