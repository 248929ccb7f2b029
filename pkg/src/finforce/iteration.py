"""Simple template iterations built by recursion on depth.

A simple iteration assigns each template point one of three coordinate
kinds: B (a Borel-poset model used outright), R (a decision-table name for
a validated subposet of such a model, activated only when its support set
is available), or C (a decision-table name for a small poset on an ordinal
domain).  Conditions are finite partial maps; C-entries are literal
ordinals, which is what makes the collection P* dense in the widened
iteration.

Membership, the order, generic sequences and induced filters are all
decided semantically: a condition enters the filter of a generic sequence
exactly when each of its interpreted entries enters the coordinate filter
determined by that sequence.  This compositional rule is the independent
oracle against which the synthesized membership codes are verified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

import numpy as np

from .models import BorelPosetModel
from .posets import (
    EmbeddingReport,
    FinitePoset,
    admissible_filters_upsets,
    check_complete_embedding_posets,
)
from .templates import IndexedTemplate, Point, Subset, trace_family


class IterationError(Exception):
    pass


class MembershipError(IterationError):
    pass


class NonGenericFilterError(IterationError):
    """A filter missed the antichain of a decision-table name."""


class NotAFilterError(IterationError):
    """A 'filter' contained two members of one maximal antichain."""


class ResourceCapExceeded(IterationError):
    def __init__(self, what: str, size: int, cap: int):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"{what} would need {size} > cap {cap}")


class _Trivial:
    """The literal trivial entry (top condition / ordinal 0 stand-in)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TRIV"


TRIV = _Trivial()


class _Dummy:
    """Generic value at a deactivated coordinate."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DUMMY"


DUMMY = _Dummy()

Entry = Any  # int | _Trivial | DecisionTableName


@dataclass(frozen=True)
class Condition:
    """A finite partial map from points to entries, kept rank-sorted."""

    entries: tuple[tuple[Point, Entry], ...]

    @property
    def domain(self) -> frozenset:
        return frozenset(x for x, _ in self.entries)

    def get(self, x: Point) -> Entry:
        for y, e in self.entries:
            if y == x:
                return e
        raise KeyError(x)

    def is_empty(self) -> bool:
        return not self.entries

    def before(self, x: Point, rank: Mapping[Point, int]) -> "Condition":
        """The restriction to the strict past of x."""
        r = rank[x]
        return Condition(tuple((y, e) for y, e in self.entries if rank[y] < r))

    def __str__(self):
        if not self.entries:
            return "<>"
        return "{" + ", ".join(f"{x}={entry_label(e)}" for x, e in self.entries) + "}"


EMPTY_CONDITION = Condition(())


def make_condition(rank: Mapping[Point, int], assignments: Mapping[Point, Entry]) -> Condition:
    items = sorted(assignments.items(), key=lambda kv: rank[kv[0]])
    return Condition(tuple(items))


@dataclass(frozen=True)
class DecisionTableName:
    """An antichain-indexed table: the name takes the value paired with
    whichever antichain member the deciding filter contains.

    Constant names have empty base and the empty condition as antichain.
    """

    base: frozenset
    antichain: tuple[Condition, ...]
    table: tuple[Any, ...]
    label: str = field(compare=False, hash=False, default="")

    def __post_init__(self):
        if len(self.antichain) != len(self.table):
            raise ValueError("table must assign a value to every antichain member")

    def is_constant(self) -> bool:
        return self.antichain == (EMPTY_CONDITION,)

    def value_for(self, member: Condition) -> Any:
        return self.table[self.antichain.index(member)]


def _stem_decided(e: DecisionTableName) -> bool:
    """All table values share one stem and one finite-part size (values not
    of stem/finite-part shape must simply be equal)."""
    values = e.table
    if all(
        isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], frozenset)
        for v in values
    ):
        stems = {v[0] for v in values}
        sizes = {len(v[1]) for v in values}
        return len(stems) == 1 and len(sizes) == 1
    return len(set(values)) == 1


def const_name(value: Any, label: str = "") -> DecisionTableName:
    return DecisionTableName(
        base=frozenset(),
        antichain=(EMPTY_CONDITION,),
        table=(value,),
        label=label or f"const:{_value_label(value)}",
    )


def _value_label(v: Any) -> str:
    from .models import element_label

    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return element_label(v)


def entry_label(e: Entry) -> str:
    if e is TRIV:
        return "TRIV"
    if isinstance(e, (int, np.integer)):
        return str(int(e))
    return e.label or "table"


def entry_sort_key(e: Entry):
    if isinstance(e, (int, np.integer)):
        return (0, int(e), "")
    if e is TRIV:
        return (1, 0, "")
    return (2, 0, e.label)


@dataclass(frozen=True)
class SmallPosetSpec:
    """A sigma-linked poset on {0..size-1} with maximum 0, for C coordinates."""

    size: int
    leq_pairs: tuple[tuple[int, int], ...]
    linked_blocks: tuple[frozenset, ...] = ()

    def build(self) -> FinitePoset:
        pairs = list(self.leq_pairs) + [(i, 0) for i in range(self.size)]
        return FinitePoset.from_relation(tuple(range(self.size)), pairs, top=0)


@dataclass(frozen=True)
class SubposetSpec:
    """A nice-subposet candidate: elements of the ambient model plus the
    generic values it retains."""

    elements: frozenset
    z_space: tuple


@dataclass(frozen=True)
class IterandAssignment:
    """Per-coordinate data.  ``stem_decided``, off by default, restricts
    entry names at eventually-different-style coordinates to those whose
    table values all share one stem and one slalom size, the optional
    normalization of the dense subcollection."""

    kind: str  # 'B' | 'R' | 'C'
    model: BorelPosetModel | None = None
    support: frozenset = frozenset()
    gamma: int | None = None
    qname: DecisionTableName | None = None
    extra_entries: tuple[DecisionTableName, ...] = ()
    widened_entries: tuple[DecisionTableName, ...] = ()
    include_constants: bool = True
    stem_decided: bool = False

    def __post_init__(self):
        if self.kind not in ("B", "R", "C"):
            raise ValueError(f"unknown coordinate kind {self.kind!r}")
        if self.kind in ("B", "R") and self.model is None:
            raise ValueError(f"{self.kind} coordinate needs a model")
        if self.kind == "C" and (self.gamma is None or self.qname is None):
            raise ValueError("C coordinate needs gamma and a poset name")
        if self.kind == "R" and self.qname is None:
            raise ValueError("R coordinate needs a subposet name")


@dataclass(frozen=True)
class GenericSequence:
    """One generic value per point: a model value at active B/R coordinates
    (DUMMY at deactivated ones) and a characteristic function of the generic
    filter at C coordinates."""

    entries: tuple[tuple[Point, Any], ...]

    def value(self, x: Point) -> Any:
        for y, v in self.entries:
            if y == x:
                return v
        raise KeyError(x)

    @property
    def points(self) -> frozenset:
        return frozenset(x for x, _ in self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __str__(self):
        return "; ".join(f"{x}={_zvalue_label(v)}" for x, v in self.entries)


def _zvalue_label(v: Any) -> str:
    if v is DUMMY:
        return "DUMMY"
    if isinstance(v, tuple) and all(isinstance(b, (int, np.integer)) for b in v):
        return "".join(str(int(b)) for b in v)
    return str(v)


class SimpleIteration:
    """A validated template plus coordinate assignments, with memoized
    membership, order, generic enumeration and built posets."""

    def __init__(
        self,
        template: IndexedTemplate,
        assignments: Mapping[Point, IterandAssignment],
        max_conditions: int = 100_000,
    ):
        missing = set(template.points) - set(assignments)
        if missing:
            raise ValueError(f"points without assignments: {sorted(missing)}")
        for x, asg in assignments.items():
            if asg.kind in ("R", "C"):
                if asg.support not in template.families[x]:
                    raise ValueError(
                        f"support {sorted(asg.support)} of {x} is not in the family I_{x}"
                    )
        self.template = template
        self.assignments = dict(assignments)
        self.max_conditions = max_conditions
        self.rank = template.order.rank
        self._member_memo: dict = {}
        self._order_memo: dict = {}
        self._generic_memo: dict = {}
        self._filter_memo: dict = {}
        self._interp_memo: dict = {}
        self._built: dict = {}
        self._palette_memo: dict = {}
        self._r_entry_memo: dict = {}
        self._small_posets: dict = {}

    # -- plumbing -----------------------------------------------------------

    def points_of(self, a: Subset) -> tuple[Point, ...]:
        return tuple(x for x in self.template.points if x in a)

    def past_in(self, a: Subset, x: Point) -> Subset:
        return a & self.template.order.past(x)

    def small_poset(self, spec: SmallPosetSpec) -> FinitePoset:
        if spec not in self._small_posets:
            self._small_posets[spec] = spec.build()
        return self._small_posets[spec]

    def entry_palette(self, x: Point, widened: bool = False) -> list[Entry]:
        key = (x, widened)
        if key in self._palette_memo:
            return self._palette_memo[key]
        asg = self.assignments[x]
        palette: list[Entry]
        if asg.kind == "C":
            palette = list(range(asg.gamma))
            if widened:
                palette += sorted(asg.widened_entries, key=lambda n: n.label)
        else:
            palette = [TRIV]
            if asg.include_constants:
                top = asg.model.poset.top
                palette += [
                    const_name(v)
                    for v in asg.model.poset.elements
                    if v != top
                ]
            palette += sorted(asg.extra_entries, key=lambda n: n.label)
        self._palette_memo[key] = palette
        return palette

    # -- membership ---------------------------------------------------------

    def member_pstar(self, a: Subset, p: Condition, widened: bool = False) -> bool:
        key = (a, p, widened)
        memo = self._member_memo
        if key in memo:
            return memo[key]
        if p.is_empty():
            memo[key] = True
            return True
        if not p.domain <= a:
            memo[key] = False
            return False
        ok = bool(self.entry_contexts(a, p, widened))
        memo[key] = ok
        return ok

    def entry_contexts(self, a: Subset, p: Condition, widened: bool = False) -> list[Subset]:
        """All A' from the trace at max(dom p) that admit p: the restriction
        below max(dom p) is a member over A' and the top entry is valid."""
        x = self.template.order.max_of(p.domain)
        rest = p.before(x, self.rank)
        entry = p.get(x)
        out = []
        for a2 in self.template.sorted_subsets(trace_family(self.template, x, a)):
            if not self.member_pstar(a2, rest, widened):
                continue
            if self._entry_ok(x, entry, a2, widened):
                out.append(a2)
        return out

    def canonical_context(self, a: Subset, p: Condition, widened: bool = False) -> Subset:
        """The canonical A'-choice: the inclusion-least valid trace member if
        unique, else the least valid one in the canonical subset order."""
        contexts = self.entry_contexts(a, p, widened)
        if not contexts:
            raise MembershipError(f"{p} is not a member of P*|{sorted(a)}")
        minimal = [c for c in contexts if not any(d < c for d in contexts)]
        if len(minimal) == 1:
            return minimal[0]
        return min(minimal, key=self.template.order.subset_key)

    def _entry_ok(self, x: Point, e: Entry, a2: Subset, widened: bool) -> bool:
        asg = self.assignments[x]
        if asg.kind == "C":
            if isinstance(e, (int, np.integer)):
                if not 0 <= e < asg.gamma:
                    return False
                return e == 0 or asg.support <= a2
            if isinstance(e, DecisionTableName) and widened:
                return asg.support <= a2 and e.base <= asg.support
            return False
        if e is TRIV:
            return True
        if not isinstance(e, DecisionTableName):
            return False
        if asg.stem_decided and not _stem_decided(e):
            return False
        if asg.kind == "B":
            return e.base <= a2 and self._b_entry_valid(x, e)
        # R coordinate: the name must live over the support and its values
        # must land in the interpreted subposet on every generic branch
        return asg.support <= a2 and e.base <= asg.support and self._r_entry_valid(x, e)

    def _b_entry_valid(self, x: Point, e: DecisionTableName) -> bool:
        model = self.assignments[x].model
        return all(v in model.poset.index for v in e.table) and all(
            self.member_pstar(e.base, q) for q in e.antichain
        )

    def _r_entry_valid(self, x: Point, e: DecisionTableName) -> bool:
        key = (x, e)
        if key in self._r_entry_memo:
            return self._r_entry_memo[key]
        asg = self.assignments[x]
        ok = all(v in asg.model.poset.index for v in e.table) and all(
            self.member_pstar(e.base, q) for q in e.antichain
        )
        if ok:
            for zbar in self.enumerate_generics(asg.support):
                v = self.interpret_entry(x, e, zbar)
                if v is TRIV:
                    continue
                sub = self.interpret_subposet(x, zbar)
                if v not in sub.elements:
                    ok = False
                    break
        self._r_entry_memo[key] = ok
        return ok

    # -- generic sequences and induced filters ------------------------------

    def is_active(self, x: Point, a: Subset) -> bool:
        asg = self.assignments[x]
        return asg.kind == "B" or asg.support <= a

    def enumerate_generics(self, a: Subset) -> tuple[GenericSequence, ...]:
        if a in self._generic_memo:
            return self._generic_memo[a]
        seqs: list[tuple[tuple[Point, Any], ...]] = [()]
        for x in self.points_of(a):
            asg = self.assignments[x]
            below = self.past_in(a, x)
            new: list[tuple[tuple[Point, Any], ...]] = []
            for prefix in seqs:
                zprefix = GenericSequence(prefix)
                if asg.kind == "B":
                    values = list(asg.model.generic_space)
                elif asg.kind == "R":
                    if asg.support <= below:
                        sub = self.interpret_subposet_spec(x, zprefix)
                        values = list(sub.z_space)
                    else:
                        values = [DUMMY]
                else:
                    gamma = asg.gamma
                    if asg.support <= below:
                        poset = self.interpret_c_poset(x, zprefix)
                        values = [
                            tuple(1 if v in f else 0 for v in range(gamma))
                            for f in admissible_filters_upsets(poset)
                        ]
                    else:
                        values = [(1,) + (0,) * (gamma - 1)]
                for v in values:
                    new.append(prefix + ((x, v),))
            seqs = new
        out = tuple(GenericSequence(s) for s in seqs)
        self._generic_memo[a] = out
        return out

    def member_of_filter(self, zbar: GenericSequence, r: Condition) -> bool:
        """Whether r belongs to the filter induced by the generic sequence:
        each interpreted entry must enter its coordinate filter."""
        key = (zbar, r)
        if key in self._filter_memo:
            return self._filter_memo[key]
        ok = True
        for y, e in r.entries:
            asg = self.assignments[y]
            if e is TRIV:
                continue
            if asg.kind == "C":
                v = e if isinstance(e, (int, np.integer)) else self.interpret_entry(y, e, zbar)
                if zbar.value(y)[v] != 1:
                    ok = False
                    break
            else:
                v = self.interpret_entry(y, e, zbar)
                if v is TRIV:
                    continue
                zy = zbar.value(y)
                if zy is DUMMY or not asg.model.E(zy, v):
                    ok = False
                    break
        self._filter_memo[key] = ok
        return ok

    def interpret_entry(self, x: Point, e: Entry, zbar: GenericSequence) -> Any:
        """Evaluate a decision-table entry under the filter induced by zbar."""
        if e is TRIV:
            return TRIV
        if isinstance(e, (int, np.integer)):
            return int(e)
        key = (e, tuple((y, v) for y, v in zbar.entries if y in e.base))
        if key in self._interp_memo:
            return self._interp_memo[key]
        hits = [q for q in e.antichain if self.member_of_filter(zbar, q)]
        if not hits:
            raise NonGenericFilterError(
                f"filter misses the antichain of {e.label or 'a table name'}"
            )
        if len(hits) > 1:
            raise NotAFilterError(
                f"two antichain members of {e.label or 'a table name'} in one filter"
            )
        v = e.value_for(hits[0])
        self._interp_memo[key] = v
        return v

    def interpret_subposet_spec(self, x: Point, zbar: GenericSequence) -> SubposetSpec:
        asg = self.assignments[x]
        spec = self.interpret_entry(x, asg.qname, zbar)
        if not isinstance(spec, SubposetSpec):
            raise IterationError(f"subposet name at {x} produced {type(spec).__name__}")
        return spec

    def interpret_subposet(self, x: Point, zbar: GenericSequence) -> FinitePoset:
        spec = self.interpret_subposet_spec(x, zbar)
        return self.assignments[x].model.poset.restrict(spec.elements)

    def interpret_c_poset(self, x: Point, zbar: GenericSequence) -> FinitePoset:
        asg = self.assignments[x]
        spec = self.interpret_entry(x, asg.qname, zbar)
        if not isinstance(spec, SmallPosetSpec):
            raise IterationError(f"poset name at {x} produced {type(spec).__name__}")
        if spec.size != asg.gamma:
            raise IterationError(f"poset at {x} has domain {spec.size}, expected {asg.gamma}")
        return self.small_poset(spec)

    # -- the order -----------------------------------------------------------

    def order_leq(self, a: Subset, q: Condition, p: Condition, widened: bool = False) -> bool:
        """q <= p, decided recursively: below the last coordinate of q the
        restrictions must compare, and at that coordinate every admissible
        generic of the lower stages whose filter contains the restriction of
        q must interpret the two entries to comparable instance values."""
        for c in (q, p):
            if not self.member_pstar(a, c, widened):
                raise MembershipError(f"{c} is not a member of P{'' if widened else '*'}|{sorted(a)}")
        return self._order_leq(a, q, p, widened)

    def _order_leq(self, a: Subset, q: Condition, p: Condition, widened: bool) -> bool:
        if not p.domain <= q.domain:
            return False
        if q.is_empty():
            return True
        key = (a, q, p, widened)
        if key in self._order_memo:
            return self._order_memo[key]
        x = self.template.order.max_of(q.domain)
        below = self.past_in(a, x)
        q1 = q.before(x, self.rank)
        p1 = p.before(x, self.rank)
        ok = self._order_leq(below, q1, p1, widened)
        if ok and x in p.domain:
            eq, ep = q.get(x), p.get(x)
            for zbar in self.enumerate_generics(below):
                if not self.member_of_filter(zbar, q1):
                    continue
                if not self._stage_leq(x, below, zbar, eq, ep):
                    ok = False
                    break
        self._order_memo[key] = ok
        return ok

    def _stage_leq(self, x: Point, below: Subset, zbar: GenericSequence, eq: Entry, ep: Entry) -> bool:
        asg = self.assignments[x]
        vq = self.interpret_entry(x, eq, zbar)
        vp = self.interpret_entry(x, ep, zbar)
        if asg.kind == "C":
            if asg.support <= below:
                return bool(self.interpret_c_poset(x, zbar).leq(vq, vp))
            return vq == 0 and vp == 0
        if vp is TRIV:
            return True
        if vq is TRIV:
            vq = asg.model.poset.top
        return bool(asg.model.poset.leq(vq, vp))

    # -- materialization ------------------------------------------------------

    def members(self, a: Subset, widened: bool = False) -> list[Condition]:
        points = self.points_of(a)
        total = 1
        for x in points:
            total *= len(self.entry_palette(x, widened)) + 1
        if total > self.max_conditions:
            raise ResourceCapExceeded(f"conditions over {sorted(a)}", total, self.max_conditions)
        out = []
        choices = [[None] + self.entry_palette(x, widened) for x in points]
        for combo in itertools.product(*choices):
            entries = tuple(
                (x, e) for x, e in zip(points, combo) if e is not None
            )
            p = Condition(entries)
            if self.member_pstar(a, p, widened):
                out.append(p)
        out.sort(key=self._condition_key)
        return out

    def _condition_key(self, p: Condition):
        return (
            len(p.entries),
            tuple((self.rank[x], entry_sort_key(e)) for x, e in p.entries),
        )

    def build_poset(self, a: Subset, widened: bool = False) -> FinitePoset:
        """Materialize P*|A (or the widened P|A) with its semantic order."""
        key = (a, widened)
        if key in self._built:
            return self._built[key]
        elems = self.members(a, widened)
        n = len(elems)
        leq = np.zeros((n, n), dtype=bool)
        for i, q in enumerate(elems):
            for j, p in enumerate(elems):
                if p.domain <= q.domain:
                    leq[i, j] = self._order_leq(a, q, p, widened)
        poset = FinitePoset(elems, leq, EMPTY_CONDITION)
        self._built[key] = poset
        return poset

    # -- structural checks ----------------------------------------------------

    def check_density_pstar(self, a: Subset) -> tuple[bool, Condition | None]:
        """Every condition of the widened P|A must have a P*|A extension."""
        star = self.members(a, widened=False)
        for p in self.members(a, widened=True):
            if not any(self._order_leq(a, q, p, widened=True) for q in star):
                return False, p
        return True, None

    def check_complete_embedding(self, a_small: Subset, a_big: Subset) -> EmbeddingReport:
        if not a_small <= a_big:
            raise ValueError("first subset must be contained in the second")
        return check_complete_embedding_posets(
            self.build_poset(a_small), self.build_poset(a_big)
        )


def interpret_name(it: SimpleIteration, name: DecisionTableName, filt: Iterable[Condition]) -> Any:
    """Evaluate a decision-table name against an explicit filter."""
    filt = frozenset(filt)
    hits = [q for q in name.antichain if q in filt]
    if not hits:
        raise NonGenericFilterError("filter does not meet the name's antichain")
    if len(hits) > 1:
        raise NotAFilterError("filter contains two members of a maximal antichain")
    return name.value_for(hits[0])


def realize_filter(it: SimpleIteration, zbar: GenericSequence, a: Subset | None = None) -> frozenset:
    """The induced filter G(zbar) on P*|A, audited: it must be the up-set of
    a minimal element of the built poset (equivalently, a filter meeting
    every maximal antichain)."""
    if a is None:
        a = it.template.all_points()
    poset = it.build_poset(a)
    g = frozenset(p for p in poset.elements if it.member_of_filter(zbar, p))
    if not g:
        raise IterationError("induced filter is empty")
    ids = sorted(poset.index[p] for p in g)
    below_all = poset.leq_matrix[:, ids].all(axis=1)
    bottoms = [i for i in np.flatnonzero(below_all) if poset.elements[i] in g]
    if len(bottoms) != 1:
        raise IterationError(
            f"induced filter of [{zbar}] is not directed: no unique bottom"
        )
    bottom = poset.elements[bottoms[0]]
    if poset.upset(bottom) != g:
        raise IterationError(f"induced filter of [{zbar}] is not upward closed")
    if bottom not in set(poset.minimal_elements()):
        raise IterationError(
            f"induced filter of [{zbar}] misses a maximal antichain (bottom {bottom} not minimal)"
        )
    return g
