"""Finite indexed templates: a linear order with per-point set families.

A template is the recursion skeleton for everything else in this package.
Each point ``x`` of a finite linear order ``L`` carries a family ``I_x`` of
subsets of the strict past ``L_x = {y : y < x}``.  Validation enforces the
family axioms T1-T5; ``depth`` assigns the well-founded rank that grounds
every later recursion (membership, histories, code synthesis).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Point = str
Subset = frozenset


@dataclass(frozen=True)
class LinearOrder:
    """A finite strict total order given by an injective rank map."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"duplicate points in order: {self.points}")

    @property
    def rank(self) -> dict[Point, int]:
        return {x: i for i, x in enumerate(self.points)}

    def less(self, x: Point, y: Point) -> bool:
        r = self.rank
        return r[x] < r[y]

    def past(self, x: Point) -> Subset:
        """L_x, the strict past of x."""
        r = self.rank[x]
        return frozenset(self.points[:r])

    def max_of(self, a: Iterable[Point]) -> Point:
        r = self.rank
        return max(a, key=r.__getitem__)

    def sorted(self, a: Iterable[Point]) -> tuple[Point, ...]:
        r = self.rank
        return tuple(sorted(a, key=r.__getitem__))

    def subset_key(self, a: Iterable[Point]) -> tuple:
        """Canonical sort key for subsets: by size, then rank-lexicographic."""
        r = self.rank
        ranks = tuple(sorted(r[x] for x in a))
        return (len(ranks), ranks)


@dataclass(frozen=True)
class Violation:
    axiom: str
    point: Point | None
    witness: tuple
    message: str

    def __str__(self):
        return f"{self.axiom} violated at x={self.point}: {self.message}"


class TemplateError(Exception):
    """Raised when an operation is applied to an invalid template."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass
class IndexedTemplate:
    """A validated indexed template <L, I>.

    ``families[x]`` is the family I_x of subsets of the strict past of x.
    ``depth_cache`` fills monotonically; templates are immutable after
    validation apart from that memo.
    """

    order: LinearOrder
    families: dict[Point, frozenset[Subset]]
    depth_cache: dict[Subset, int] = field(default_factory=dict)

    @property
    def points(self) -> tuple[Point, ...]:
        return self.order.points

    def all_points(self) -> Subset:
        return frozenset(self.order.points)

    def sorted_subsets(self, subsets: Iterable[Subset]) -> list[Subset]:
        return sorted(subsets, key=self.order.subset_key)


def _closed_under_union_intersection(family: frozenset[Subset]) -> tuple | None:
    for b1 in family:
        for b2 in family:
            if b1 | b2 not in family:
                return (b1, b2, "union")
            if b1 & b2 not in family:
                return (b1, b2, "intersection")
    return None


def validate_template(
    order: LinearOrder, families: Mapping[Point, Iterable[Iterable[Point]]]
) -> IndexedTemplate | list[Violation]:
    """Check T1-T5 on a raw family map; return a template or all violations.

    T1: the empty set belongs to every I_x.
    T2: each I_x is closed under pairwise union and intersection.
    T3: x < y implies I_x is a subfamily of I_y.
    T4: B in I_y and x <= y implies B intersected with L_x is in I_x.
    T5: the depth recursion terminates on every subset of L.
    """
    violations: list[Violation] = []
    canon: dict[Point, frozenset[Subset]] = {}

    for x in order.points:
        past = order.past(x)
        fam = frozenset(frozenset(b) for b in families.get(x, ()))
        for b in fam:
            if not b <= past:
                violations.append(
                    Violation(
                        "structure", x, (b,),
                        f"family member {sorted(b)} is not a subset of the past of {x}",
                    )
                )
        canon[x] = fam

    if violations:
        return violations

    for x in order.points:
        fam = canon[x]
        if frozenset() not in fam:
            violations.append(Violation("T1", x, (), "empty set missing from family"))
        bad = _closed_under_union_intersection(fam)
        if bad is not None:
            b1, b2, which = bad
            violations.append(
                Violation(
                    "T2", x, (b1, b2),
                    f"{which} of {sorted(b1)} and {sorted(b2)} missing",
                )
            )

    for i, x in enumerate(order.points):
        for y in order.points[i + 1:]:
            missing = canon[x] - canon[y]
            if missing:
                b = next(iter(missing))
                violations.append(
                    Violation(
                        "T3", x, (y, b),
                        f"member {sorted(b)} of I_{x} missing from I_{y}",
                    )
                )

    for j, y in enumerate(order.points):
        for b in canon[y]:
            for x in order.points[: j + 1]:
                t = b & order.past(x)
                if t not in canon[x]:
                    violations.append(
                        Violation(
                            "T4", x, (y, b),
                            f"trace {sorted(t)} of {sorted(b)} (from I_{y}) missing from I_{x}",
                        )
                    )

    if violations:
        return violations

    template = IndexedTemplate(order=order, families=canon)
    # T5: exercise the depth recursion on every subset of L.  With the
    # predecessor shapes used here every step strictly shrinks the subset,
    # so a cycle would indicate corrupted state rather than a bad family;
    # the on-stack detector in depth() reports it as T5 either way.
    try:
        for a in _all_subsets(template.all_points()):
            depth(template, a)
    except DepthCycleError as exc:
        return [Violation("T5", None, tuple(exc.cycle), str(exc))]
    return template


def _all_subsets(points: Subset) -> list[Subset]:
    items = sorted(points)
    out = [frozenset()]
    for x in items:
        out += [s | {x} for s in out]
    return out


def trace_family(t: IndexedTemplate, x: Point, a: Iterable[Point]) -> frozenset[Subset]:
    """The trace I_x restricted to A: all B & A for B in I_x, deduplicated."""
    a = frozenset(a)
    return frozenset(b & a for b in t.families[x])


class DepthCycleError(Exception):
    def __init__(self, cycle: list[Subset]):
        self.cycle = cycle
        super().__init__(
            "depth recursion revisited " + " -> ".join(str(sorted(c)) for c in cycle)
        )


def depth_predecessors(t: IndexedTemplate, a: Subset) -> list[Subset]:
    """Recursion predecessors of A: the past A & L_x, every trace member,
    and every B | {x} distinct from A (the shapes used by membership,
    histories and code synthesis)."""
    if not a:
        return []
    x = t.order.max_of(a)
    preds = {a & t.order.past(x)}
    for b in trace_family(t, x, a):
        preds.add(b)
        ext = b | {x}
        if ext != a:
            preds.add(ext)
    return t.sorted_subsets(preds)


def depth(t: IndexedTemplate, a: Iterable[Point]) -> int:
    """Well-founded rank of A under the recursion-predecessor relation."""
    a = frozenset(a)
    cache = t.depth_cache
    on_stack: list[Subset] = []

    def rec(s: Subset) -> int:
        if s in cache:
            return cache[s]
        if s in on_stack:
            raise DepthCycleError(on_stack[on_stack.index(s):] + [s])
        if not s:
            cache[s] = 0
            return 0
        on_stack.append(s)
        try:
            d = 1 + max(rec(p) for p in depth_predecessors(t, s))
        finally:
            on_stack.pop()
        cache[s] = d
        return d

    return rec(a)


def restrict_template(t: IndexedTemplate, a: Iterable[Point]) -> IndexedTemplate:
    """The template on A with families given by traces."""
    a = frozenset(a)
    points = tuple(x for x in t.order.points if x in a)
    order = LinearOrder(points)
    families = {x: frozenset(b & a for b in t.families[x]) for x in points}
    return IndexedTemplate(order=order, families=families)


def full_powerset_template(points: Iterable[Point]) -> IndexedTemplate:
    """The finite-support-iteration template: I_x = all subsets of the past."""
    order = LinearOrder(tuple(points))
    families = {x: frozenset(_all_subsets(order.past(x))) for x in order.points}
    return IndexedTemplate(order=order, families=families)
