"""Membership, order, interpretation, materialization and the structural
checks of simple iterations, on the shipped fixtures."""

import pytest

from finforce.iteration import (
    EMPTY_CONDITION,
    TRIV,
    NonGenericFilterError,
    NotAFilterError,
    ResourceCapExceeded,
    const_name,
    interpret_name,
    realize_filter,
)


def all_subsets(points):
    out = [frozenset()]
    for x in points:
        out += [s | {x} for s in out]
    return out


class TestMembership:
    def test_empty_everywhere(self, i1):
        it = i1.iteration
        for a in all_subsets(it.template.points):
            assert it.member_pstar(a, EMPTY_CONDITION)

    def test_activated_ordinal(self, i1):
        assert i1.iteration.member_pstar(frozenset({"a", "b"}), i1.cond({"b": 2}))

    def test_deactivated_ordinal_needs_zero(self, i1):
        it = i1.iteration
        assert not it.member_pstar(frozenset({"b"}), i1.cond({"b": 1}))
        assert it.member_pstar(frozenset({"b"}), i1.cond({"b": 0}))

    def test_entry_outside_ambient_set(self, i1):
        assert not i1.iteration.member_pstar(frozenset({"b"}), i1.cond({"a": const_name((0,))}))

    def test_membership_monotone(self, i1):
        it = i1.iteration
        subsets = all_subsets(it.template.points)
        for small in subsets:
            for p in it.members(small):
                for big in subsets:
                    if small <= big:
                        assert it.member_pstar(big, p)

    def test_member_counts(self, i1):
        it = i1.iteration
        assert len(it.members(frozenset())) == 1
        assert len(it.members(frozenset({"b"}))) == 2
        n_a = len(it.members(frozenset({"a"})))
        n_ab = len(it.members(frozenset({"a", "b"})))
        assert n_ab > n_a


class TestOrder:
    def test_reflexive_and_transitive(self, i1):
        it = i1.iteration
        a = frozenset({"a", "b"})
        members = it.members(a)
        for p in members:
            assert it.order_leq(a, p, p)
        import itertools

        for p, q, r in itertools.islice(itertools.product(members, repeat=3), 4000):
            if it.order_leq(a, p, q) and it.order_leq(a, q, r):
                assert it.order_leq(a, p, r)

    def test_cohen_extension(self, i1):
        it = i1.iteration
        a = frozenset({"a"})
        q = i1.cond({"a": const_name((0, 1))})
        p = i1.cond({"a": const_name((0,))})
        assert it.order_leq(a, q, p)
        assert not it.order_leq(a, p, q)

    def test_incompatible_ordinals(self, i1):
        it = i1.iteration
        a = frozenset({"a", "b"})
        b1, b2 = i1.cond({"b": 1}), i1.cond({"b": 2})
        assert not it.order_leq(a, b1, b2)
        assert not it.order_leq(a, b2, b1)
        poset = it.build_poset(a)
        from finforce.posets import compatible

        assert not compatible(poset, b1, b2)

    def test_restriction_coincides(self, i1):
        """The order computed in a smaller ambient set agrees with the order
        of any larger one on common members."""
        it = i1.iteration
        subsets = all_subsets(it.template.points)
        for small in subsets:
            members = it.members(small)
            for big in subsets:
                if not small <= big or small == big:
                    continue
                for q in members:
                    for p in members:
                        if p.domain <= q.domain:
                            assert it._order_leq(small, q, p, False) == it._order_leq(
                                big, q, p, False
                            )

    def test_nonmember_raises(self, i1):
        from finforce.iteration import MembershipError

        it = i1.iteration
        with pytest.raises(MembershipError):
            it.order_leq(frozenset({"b"}), i1.cond({"b": 1}), EMPTY_CONDITION)


class TestBuild:
    def test_empty_poset(self, i1):
        poset = i1.iteration.build_poset(frozenset())
        assert poset.elements == (EMPTY_CONDITION,)

    def test_b_only_poset(self, i1):
        poset = i1.iteration.build_poset(frozenset({"b"}))
        assert len(poset) == 2

    def test_top_is_empty_condition(self, i1):
        poset = i1.iteration.build_poset(frozenset({"a", "b"}))
        assert poset.top == EMPTY_CONDITION

    def test_resource_guard(self, i1):
        it = i1.iteration
        old = it.max_conditions
        it.max_conditions = 10
        try:
            with pytest.raises(ResourceCapExceeded):
                it.members(frozenset({"a", "b", "c"}))
        finally:
            it.max_conditions = old


class TestInterpretName:
    def test_constant(self, i1):
        name = const_name((0, 1))
        assert interpret_name(i1.iteration, name, [EMPTY_CONDITION]) == (0, 1)

    def test_branch_selection(self, i1):
        it = i1.iteration
        qc = i1.qc
        p0, p1 = i1.branch_antichain
        full = it.build_poset(frozenset({"a"})).upset(i1.cond({"a": const_name((0, 0))}))
        spec = interpret_name(it, qc, full)
        assert spec.elements == frozenset(i1.ed22.poset.elements)

    def test_empty_filter_errors(self, i1):
        with pytest.raises(NonGenericFilterError):
            interpret_name(i1.iteration, i1.qc, [])

    def test_two_members_errors(self, i1):
        p0, p1 = i1.branch_antichain
        with pytest.raises(NotAFilterError):
            interpret_name(i1.iteration, i1.qc, [p0, p1])


class TestGenerics:
    def test_empty_set(self, i1):
        assert len(i1.iteration.enumerate_generics(frozenset())) == 1

    def test_i1_count(self, i1):
        # |Z_a| x (filters of the V poset) x (per-branch generic count)
        assert len(i1.iteration.enumerate_generics(frozenset(i1.template.points))) == 32

    def test_fsi2_count(self, fsi2_cc):
        it, _ = fsi2_cc
        assert len(it.enumerate_generics(it.template.all_points())) == 16

    def test_c_values_are_characteristic_functions(self, i1):
        it = i1.iteration
        for z in it.enumerate_generics(frozenset(i1.template.points)):
            zb = z.value("b")
            assert len(zb) == 3 and zb[0] == 1 and set(zb) <= {0, 1}


class TestRealizeFilter:
    def test_top_always_in(self, i1):
        it = i1.iteration
        for z in it.enumerate_generics(frozenset(i1.template.points)):
            assert EMPTY_CONDITION in realize_filter(it, z)

    def test_b_coordinate_membership(self, i1):
        it = i1.iteration
        b1, b2 = i1.cond({"b": 1}), i1.cond({"b": 2})
        for z in it.enumerate_generics(frozenset(i1.template.points)):
            g = realize_filter(it, z)
            zb = z.value("b")
            assert (b2 in g) == (zb[2] == 1)
            assert (b1 in g) == (zb[1] == 1)
            # a filter meets a maximal antichain exactly once
            assert len({b1, b2} & g) == 1

    def test_filters_are_audited(self, i1):
        """realize_filter returns only sets that pass the filter audit."""
        it = i1.iteration
        for z in it.enumerate_generics(frozenset(i1.template.points)):
            g = realize_filter(it, z)
            poset = it.build_poset(frozenset(i1.template.points))
            ids = [poset.index[p] for p in g]
            up = poset.leq_matrix[ids].any(axis=0)
            assert frozenset(e for e, o in zip(poset.elements, up) if o) == g


class TestDensity:
    def test_spec_extension_found(self, i1):
        """A widened condition using the ordinal-valued name at b extends to
        a member of P* below it."""
        it = i1.iteration
        a = frozenset({"a", "b"})
        p = i1.cond({"b": i1.w1})
        assert it.member_pstar(a, p, widened=True)
        assert not it.member_pstar(a, p, widened=False)
        q = i1.cond({"a": const_name((0,)), "b": 1})
        assert it._order_leq(a, q, p, widened=True)

    def test_exhaustive_density(self, i1):
        it = i1.iteration
        for a in all_subsets(it.template.points):
            ok, witness = it.check_density_pstar(a)
            assert ok, witness

    def test_trivial_when_no_widened_entries(self, fsi2_cc):
        it, _ = fsi2_cc
        for a in all_subsets(it.template.points):
            ok, _ = it.check_density_pstar(a)
            assert ok


class TestEmbeddings:
    @pytest.mark.parametrize(
        "small,big",
        [
            ({"a"}, {"a", "b"}),
            ({"a"}, {"a", "b", "c"}),
            ({"a", "b"}, {"a", "b", "c"}),
            ({"b"}, {"a", "b", "c"}),
        ],
    )
    def test_i1_pairs(self, i1, small, big):
        rep = i1.iteration.check_complete_embedding(frozenset(small), frozenset(big))
        assert rep.ok, rep.failures[:3]

    def test_identity(self, i1):
        a = frozenset({"a", "b"})
        assert i1.iteration.check_complete_embedding(a, a).ok


class TestStemDecidedNormalization:
    """The optional dense-subcollection refinement: entry names at an
    eventually-different coordinate must decide the stem and the size of the
    finite part."""

    def _fixture(self, stem_decided):
        from finforce.iteration import (
            DecisionTableName, IterandAssignment, SimpleIteration,
            SubposetSpec, make_condition,
        )
        from finforce.models import cohen, ed
        from finforce.templates import full_powerset_template

        template = full_powerset_template(("a", "c"))
        c22, e22 = cohen(2, 2), ed(2, 2)
        rank = template.order.rank
        p0 = make_condition(rank, {"a": const_name((0,))})
        p1 = make_condition(rank, {"a": const_name((1,))})
        full = SubposetSpec(
            elements=frozenset(e22.poset.elements), z_space=e22.generic_space
        )
        f11 = frozenset({(1, 1)})
        f00 = frozenset({(0, 0)})
        decided = DecisionTableName(
            base=frozenset({"a"}), antichain=(p0, p1),
            table=(((0,), f11), ((0,), f00)), label="decided",
        )
        undecided = DecisionTableName(
            base=frozenset({"a"}), antichain=(p0, p1),
            table=(((0,), f11), ((1,), f00)), label="undecided",
        )
        assignments = {
            "a": IterandAssignment(kind="B", model=c22),
            "c": IterandAssignment(
                kind="R", model=e22, support=frozenset({"a"}),
                qname=DecisionTableName(
                    base=frozenset({"a"}), antichain=(p0, p1),
                    table=(full, full), label="Q",
                ),
                extra_entries=(decided, undecided),
                include_constants=False,
                stem_decided=stem_decided,
            ),
        }
        it = SimpleIteration(template, assignments)
        return it, decided, undecided

    def test_flag_off_admits_both(self, i1):
        it, decided, undecided = self._fixture(stem_decided=False)
        full = it.template.all_points()
        for entry in (decided, undecided):
            p = it.members(full)
            from finforce.iteration import Condition
            cond = Condition((("c", entry),))
            assert it.member_pstar(full, cond)

    def test_flag_on_filters_undecided(self, i1):
        from finforce.iteration import Condition

        it, decided, undecided = self._fixture(stem_decided=True)
        full = it.template.all_points()
        assert it.member_pstar(full, Condition((("c", decided),)))
        assert not it.member_pstar(full, Condition((("c", undecided),)))
