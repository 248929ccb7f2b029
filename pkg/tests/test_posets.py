"""Finite poset primitives: compatibility, antichains, generic filters,
complete embeddings and correct systems."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finforce.models import cohen, ed
from finforce.posets import (
    CorrectSystem,
    FinitePoset,
    admissible_filters_upsets,
    check_complete_embedding_posets,
    check_correct_system,
    compatible,
    filter_meets_all_maximal_antichains,
    is_filter,
    is_maximal_antichain,
    is_reduction,
    maximal_antichains,
)


def vee_poset():
    # 0 on top, 1 and 2 incomparable below
    return FinitePoset.from_relation((0, 1, 2), [(1, 0), (2, 0)], top=0)


class TestBasics:
    def test_reflexivity_gives_compat(self):
        p = vee_poset()
        for e in p.elements:
            assert compatible(p, e, e)

    def test_cohen_incompatible_stems(self):
        c = cohen(2, 2).poset
        assert not compatible(c, (0,), (1,))
        assert compatible(c, (0,), (0, 1))

    def test_ed_compatible_example(self):
        # (<>, {11}) and (<0>, {}) share the extension (<00>, {11})
        e = ed(2, 2).poset
        f11 = frozenset({(1, 1)})
        assert compatible(e, ((), f11), ((0,), frozenset()))
        assert e.leq(((0, 0), f11), ((), f11))
        assert e.leq(((0, 0), f11), ((0,), frozenset()))

    def test_invalid_orders_rejected(self):
        bad = np.array([[True, True], [True, True]])
        with pytest.raises(ValueError):
            FinitePoset(("a", "b"), bad, "a")


class TestAntichains:
    def test_cohen_two_stems_maximal(self):
        c = cohen(2, 2).poset
        assert is_maximal_antichain(c, [(0,), (1,)])

    def test_single_stem_not_maximal(self):
        c = cohen(2, 2).poset
        assert not is_maximal_antichain(c, [(0,)])

    def test_top_is_maximal_antichain(self):
        for p in (cohen(2, 2).poset, vee_poset()):
            assert is_maximal_antichain(p, [p.top])

    def test_enumeration_on_cohen(self):
        c = cohen(2, 2).poset
        antichains = maximal_antichains(c)
        # the bars of the binary tree of depth two
        assert len(antichains) == 5
        for a in antichains:
            assert is_maximal_antichain(c, a)


class TestGenericFilters:
    def test_vee_filters(self):
        p = vee_poset()
        filters = admissible_filters_upsets(p)
        assert sorted(map(sorted, filters)) == [[0, 1], [0, 2]]

    def test_singleton_poset(self):
        p = FinitePoset.from_relation(("t",), [], top="t")
        assert admissible_filters_upsets(p) == [frozenset({"t"})]

    def test_cohen_filters_are_prefix_filters(self):
        c = cohen(2, 2).poset
        filters = admissible_filters_upsets(c)
        assert len(filters) == 4
        for g in filters:
            full = [s for s in g if len(s) == 2]
            assert len(full) == 1
            assert g == frozenset(full[0][:k] for k in range(3))

    def test_filters_meet_every_maximal_antichain(self):
        c = cohen(2, 2).poset
        for g in admissible_filters_upsets(c):
            assert filter_meets_all_maximal_antichains(c, g)
            for a in maximal_antichains(c):
                assert len(g & set(a)) == 1

    def test_non_minimal_upset_misses_an_antichain(self):
        c = cohen(2, 2).poset
        g = c.upset((0,))
        assert is_filter(c, g)
        assert not filter_meets_all_maximal_antichains(c, g)


def random_poset_strategy():
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=6))
        leq = np.eye(n, dtype=bool)
        for i in range(1, n):
            for j in range(i):
                if draw(st.booleans()):
                    leq[i, j] = True  # i below j
        for _ in range(n):
            leq = leq | (leq @ leq)
        leq[:, 0] = True  # 0 is the top
        return FinitePoset(tuple(range(n)), leq, 0)

    return build()


@settings(max_examples=40, deadline=None)
@given(random_poset_strategy())
def test_upsets_of_minimals_are_exactly_the_generic_filters(p):
    """A filter meets every maximal antichain iff it is the up-set of a
    minimal element; checked by exhaustive enumeration of all up-sets."""
    minimals = set(p.minimal_elements())
    for e in p.elements:
        g = p.upset(e)
        assert filter_meets_all_maximal_antichains(p, g) == (e in minimals)


class TestEmbeddingsAndSystems:
    def test_identity_embedding(self):
        c = cohen(2, 2).poset
        assert check_complete_embedding_posets(c, c).ok

    def test_degenerate_system(self):
        c = cohen(1, 2).poset
        assert check_correct_system(CorrectSystem(c, c, c, c)).ok

    def test_broken_completeness_detected(self):
        # sub has two incompatible elements; sup adds a common lower bound,
        # so incompatibility is lost and the embedding is not complete
        sub = FinitePoset.from_relation((0, 1, 2), [(1, 0), (2, 0)], top=0)
        sup = FinitePoset.from_relation(
            (0, 1, 2, 3), [(1, 0), (2, 0), (3, 1), (3, 2)], top=0
        )
        rep = check_complete_embedding_posets(sub, sup)
        assert not rep.ok
        assert any(f[0] == "incompatibility-lost" for f in rep.failures)

    def test_broken_system_reports_witness(self):
        sub = FinitePoset.from_relation((0, 1, 2), [(1, 0), (2, 0)], top=0)
        sup = FinitePoset.from_relation(
            (0, 1, 2, 3), [(1, 0), (2, 0), (3, 1), (3, 2)], top=0
        )
        rep = check_correct_system(CorrectSystem(sub, sub, sup, sup))
        assert not rep.ok

    def test_reduction_definition(self):
        sub = vee_poset()
        sup = FinitePoset.from_relation(
            (0, 1, 2, 3), [(1, 0), (2, 0), (3, 2)], top=0
        )
        # 2 reduces 3 (its only sub-extension is itself, compatible with 3);
        # 1 does not (1 is incompatible with 3 in sup)
        assert is_reduction(sub, sup, 2, 3)
        assert not is_reduction(sub, sup, 1, 3)
