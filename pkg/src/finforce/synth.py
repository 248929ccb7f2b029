"""Synthesis of membership codes and evaluation functions.

`synth_E` builds, by recursion on the depth of the ambient set, a boolean
code over the condition's tuple space that decides membership in the
induced generic filter.  The recursion follows the case split on the
ambient set: when the past of its maximum lies in the family, membership
factorizes through that coordinate (an E-atom or bit-atom conjunct); when
it does not, the construction delegates to a strictly smaller admissible
set.  A nonempty finite set always has a maximum, so the no-maximum case
degenerates to the empty set.

`synth_F` assembles, per output coordinate of a name, the member codes of
its antichain with their decided values.  `encode_fsi` realizes the
finite-support-iteration pathway: full-powerset template, B stages used
outright, C stages supported on their whole past.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .codes import TRUE, AndNode, BitAtom, EAtom, FCode
from .iteration import (
    TRIV,
    Condition,
    DecisionTableName,
    IterandAssignment,
    MembershipError,
    SimpleIteration,
)
from .models import BorelPosetModel
from .names import RealName
from .templates import Point, Subset, full_powerset_template


class SynthesisError(Exception):
    pass


Chooser = Callable[[Subset, Condition, list[Subset]], Subset]


def _canonical_choice(it: SimpleIteration, candidates: list[Subset]) -> Subset:
    minimal = [c for c in candidates if not any(d < c for d in candidates)]
    if len(minimal) == 1:
        return minimal[0]
    return min(minimal, key=it.template.order.subset_key)


def case2_contexts(it: SimpleIteration, a: Subset, p: Condition) -> list[Subset]:
    """Admissible delegation targets when the past of max(A) is outside the
    family: strictly smaller sets B or B+{max} with B in the trace, still
    carrying p."""
    x = it.template.order.max_of(a)
    from .templates import trace_family

    candidates = set()
    for b in trace_family(it.template, x, a):
        for cand in (b, b | {x}):
            if cand != a and p.domain <= cand and it.member_pstar(cand, p):
                candidates.add(cand)
    return it.template.sorted_subsets(candidates)


def synth_E(
    it: SimpleIteration,
    a: Subset,
    p: Condition,
    chooser: Chooser | None = None,
):
    """A membership code for p over its tuple space, relative to A."""
    if not it.member_pstar(a, p):
        raise MembershipError(f"{p} is not a member of P*|{sorted(a)}")
    if chooser is None:
        key = ("synthE", a, p)
        cache = it.__dict__.setdefault("_synth_memo", {})
        if key in cache:
            return cache[key]
        code = _synth_E(it, a, p, None)
        cache[key] = code
        return code
    return _synth_E(it, a, p, chooser)


def _synth_E(it: SimpleIteration, a: Subset, p: Condition, chooser: Chooser | None):
    if not a:
        # the only subset without a maximum is the empty one; its only
        # member is the empty condition over the one-point tuple space
        return TRUE
    x = it.template.order.max_of(a)
    past = it.past_in(a, x)
    if past in it.template.families[x]:
        return _factorize(it, a, x, p, chooser)
    candidates = case2_contexts(it, a, p)
    if candidates:
        if chooser is not None:
            a2 = chooser(a, p, candidates)
        else:
            a2 = _canonical_choice(it, candidates)
        return _synth_E(it, a2, p, chooser)
    # no strictly smaller admissible set covers the condition's domain; the
    # factorization through the maximum is still semantically exact because
    # membership witnesses are monotone under growing ambient sets
    return _factorize(it, a, x, p, chooser)


def _factorize(it: SimpleIteration, a: Subset, x: Point, p: Condition, chooser):
    past = it.past_in(a, x)
    if x not in p.domain:
        return _synth_E(it, past, p, chooser)
    rest = p.before(x, it.rank)
    sub = _synth_E(it, past, rest, chooser)
    entry = p.get(x)
    asg = it.assignments[x]
    if asg.kind == "C":
        atom = BitAtom(x, int(entry))
    elif entry is TRIV:
        atom = TRUE
    else:
        atom = EAtom(x, asg.model, entry_fcode(it, x, entry))
    return AndNode((sub, atom))


def entry_fcode(it: SimpleIteration, x: Point, entry: DecisionTableName) -> FCode:
    """The condition-valued evaluation table of an entry name, built over the
    name's own base so it is independent of any ambient set."""
    key = ("entryF", x, entry)
    cache = it.__dict__.setdefault("_synth_memo", {})
    if key in cache:
        return cache[key]
    model: BorelPosetModel = it.assignments[x].model
    table = tuple(
        (synth_E(it, entry.base, member), value)
        for member, value in zip(entry.antichain, entry.table)
    )
    f = FCode(target="value", coords=(table,), default=model.poset.top)
    cache[key] = f
    return f


def synth_F(
    it: SimpleIteration,
    a: Subset,
    name: RealName,
    chooser: Chooser | None = None,
) -> FCode:
    """The evaluation function of a name: per coordinate, the antichain's
    member codes paired with the decided values; 0 outside the domain."""
    coords = []
    for antichain, values in zip(name.antichains, name.values):
        table = []
        for member, value in zip(antichain, values):
            table.append((synth_E(it, a, member, chooser), int(value)))
        coords.append(tuple(table))
    return FCode(target="real", coords=tuple(coords), default=0)


# ---------------------------------------------------------------------------
# Finite support iterations


def fsi_stage_b(model: BorelPosetModel, extra_entries: Iterable[DecisionTableName] = ()) -> dict:
    return {"kind": "B", "model": model, "extra_entries": tuple(extra_entries)}


def fsi_stage_c(gamma: int, qname: DecisionTableName,
                widened_entries: Iterable[DecisionTableName] = ()) -> dict:
    return {"kind": "C", "gamma": gamma, "qname": qname,
            "widened_entries": tuple(widened_entries)}


def encode_fsi(stages: Sequence[dict], max_conditions: int = 100_000) -> SimpleIteration:
    """A finite support iteration as a template iteration: full-powerset
    families, stage kinds B or C, C stages supported on their whole past."""
    points = tuple(str(i) for i in range(len(stages)))
    template = full_powerset_template(points)
    assignments = {}
    for i, (x, stage) in enumerate(zip(points, stages)):
        kind = stage["kind"]
        past = frozenset(points[:i])
        if kind == "B":
            assignments[x] = IterandAssignment(
                kind="B",
                model=stage["model"],
                extra_entries=tuple(stage.get("extra_entries", ())),
            )
        elif kind == "C":
            assignments[x] = IterandAssignment(
                kind="C",
                gamma=stage["gamma"],
                support=past,
                qname=stage["qname"],
                widened_entries=tuple(stage.get("widened_entries", ())),
            )
        else:
            raise ValueError(f"finite support stages must be B or C, got {kind!r}")
    return SimpleIteration(template, assignments, max_conditions=max_conditions)
