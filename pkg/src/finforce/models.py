"""Desk-scale Borel-poset models: a finite poset with an executable
membership relation E over a finite space of generic values.

A model *declares* its admissible generic filters together with the value
each one realizes; `validate_borel_model` then proves they behave
generically (each is a filter meeting every maximal antichain, and filter
membership is characterized by E).  Declaring-then-validating matters:
truncation breaks the density arguments that make the characterization
automatic in real forcing, and the eventually-different model below is the
documented example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .posets import (
    FinitePoset,
    common_lower_bound_exists,
    compatible,
    filter_meets_all_maximal_antichains,
    is_filter,
)

GenericValue = Hashable


@dataclass(frozen=True)
class AdmissibleFilter:
    """A declared generic filter together with the value eta it realizes."""

    members: frozenset
    value: GenericValue


@dataclass(eq=False)
class BorelPosetModel:
    """A finite poset S with top, generic space Z, relation E, and the
    declared admissible filters with their eta values.

    Models compare by identity; each fixture constructs its models once."""

    name: str
    poset: FinitePoset
    generic_space: tuple[GenericValue, ...]
    relation: Callable[[GenericValue, Hashable], bool]
    admissible: tuple[AdmissibleFilter, ...]
    linked_partition: tuple[frozenset, ...]
    centered: bool = False

    def E(self, z: GenericValue, p) -> bool:
        return self.relation(z, p)

    def eta(self, members: frozenset) -> GenericValue:
        for f in self.admissible:
            if f.members == members:
                return f.value
        raise KeyError("filter is not declared admissible")

    def filter_of(self, z: GenericValue) -> frozenset:
        """The E-induced filter {p : E(z, p)}."""
        return frozenset(p for p in self.poset.elements if self.E(z, p))

    def label(self, element) -> str:
        return element_label(element)

    def parse_label(self, text: str):
        return parse_element_label(text)


def element_label(element) -> str:
    """Stable textual form of a model element (used by code serialization)."""
    if isinstance(element, tuple) and len(element) == 2 and isinstance(element[1], frozenset):
        stem, fns = element
        stem_s = "".join(str(v) for v in stem)
        fns_s = ",".join(sorted("".join(str(v) for v in f) for f in fns))
        return f"{stem_s}|{fns_s}"
    if isinstance(element, tuple):
        return "".join(str(v) for v in element)
    return str(element)


def parse_element_label(text: str):
    if "|" in text:
        stem_s, fns_s = text.split("|", 1)
        stem = tuple(int(c) for c in stem_s)
        fns = frozenset(
            tuple(int(c) for c in f) for f in fns_s.split(",") if f
        )
        return (stem, fns)
    return tuple(int(c) for c in text)


@dataclass(frozen=True)
class ModelViolation:
    check: str
    witness: tuple
    message: str

    def __str__(self):
        return f"{self.check}: {self.message}"


def validate_borel_model(m: BorelPosetModel) -> list[ModelViolation]:
    """Exhaustively check the four model invariants; empty list means pass."""
    violations: list[ModelViolation] = []
    top = m.poset.top

    for z in m.generic_space:
        if not m.E(z, top):
            violations.append(
                ModelViolation("E-top", (z,), f"E({z}, top) is false")
            )

    for f in m.admissible:
        if not is_filter(m.poset, f.members):
            violations.append(
                ModelViolation("filter", (f.value,), f"declared set for eta={f.value} is not a filter")
            )
            continue
        if not filter_meets_all_maximal_antichains(m.poset, f.members):
            violations.append(
                ModelViolation(
                    "antichain-coverage", (f.value,),
                    f"filter for eta={f.value} misses a maximal antichain",
                )
            )
        for p in m.poset.elements:
            in_g = p in f.members
            holds = m.E(f.value, p)
            if in_g != holds:
                violations.append(
                    ModelViolation(
                        "E-characterization", (f.value, p),
                        f"p={element_label(p)} in G is {in_g} but E(eta, p) is {holds}",
                    )
                )

    covered = set()
    for block in m.linked_partition:
        covered |= block
        members = sorted(block, key=m.poset.index.__getitem__)
        for a, b in itertools.combinations(members, 2):
            if not compatible(m.poset, a, b):
                violations.append(
                    ModelViolation(
                        "linked", (a, b),
                        f"block members {element_label(a)}, {element_label(b)} incompatible",
                    )
                )
        if m.centered and not common_lower_bound_exists(m.poset, members):
            violations.append(
                ModelViolation("centered", tuple(members), "block has no common lower bound")
            )
    if covered != set(m.poset.elements):
        violations.append(
            ModelViolation("linked", (), "partition does not cover the poset")
        )
    return violations


def check_nice_subposet(
    m: BorelPosetModel, subposet: Iterable, z_space: Sequence[GenericValue]
) -> list[ModelViolation]:
    """The checkable consequence of niceness: for every z in the restricted
    generic space, {p in Q : E(z, p)} is a filter on Q meeting every maximal
    antichain of Q."""
    z_space = tuple(z_space)
    if not z_space:
        raise ValueError("Z_Q must be nonempty")
    sub = frozenset(subposet)
    if m.poset.top not in sub:
        raise ValueError("subposet must contain the top element")
    q = m.poset.restrict(sub)
    violations: list[ModelViolation] = []
    for z in z_space:
        g = frozenset(p for p in q.elements if m.E(z, p))
        if not is_filter(q, g):
            violations.append(
                ModelViolation("nice-filter", (z,), f"E-filter for z={z} is not a filter on Q")
            )
        elif not filter_meets_all_maximal_antichains(q, g):
            violations.append(
                ModelViolation(
                    "nice-antichain", (z,),
                    f"E-filter for z={z} misses a maximal antichain of Q",
                )
            )
    return violations


# ---------------------------------------------------------------------------
# Built-in models


def _strings_up_to(k: int, m: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(k):
        frontier = [s + (v,) for s in frontier for v in range(m)]
        out += frontier
    return out


def cohen(k: int = 2, m: int = 2) -> BorelPosetModel:
    """Cohen forcing truncated to stems of length <= k over an m-letter
    alphabet.  E(z, s) holds when s is a prefix of z; the admissible filters
    are the prefix filters of the length-k strings."""
    elements = _strings_up_to(k, m)
    n = len(elements)
    idx = {e: i for i, e in enumerate(elements)}
    leq = np.zeros((n, n), dtype=bool)
    for s in elements:
        for t in elements:
            leq[idx[s], idx[t]] = s[: len(t)] == t
    poset = FinitePoset(elements, leq, ())
    space = tuple(s for s in elements if len(s) == k)

    def relation(z, s):
        return z[: len(s)] == s

    admissible = tuple(
        AdmissibleFilter(frozenset(s for s in elements if z[: len(s)] == s), z)
        for z in space
    )
    blocks = tuple(frozenset([s]) for s in elements)
    return BorelPosetModel(
        name=f"cohen({k},{m})",
        poset=poset,
        generic_space=space,
        relation=relation,
        admissible=admissible,
        linked_partition=blocks,
        centered=True,
    )


def _ed_order(k: int):
    def leq(strong, weak) -> bool:
        (s2, f2), (s1, f1) = strong, weak
        if s2[: len(s1)] != s1 or not (f1 <= f2):
            return False
        return all(
            s2[i] != x[i] for i in range(len(s1), len(s2)) for x in f1
        )

    return leq


def _ed_relation(k: int):
    def relation(z, cond) -> bool:
        s, f = cond
        if z[: len(s)] != s:
            return False
        return all(z[i] != x[i] for i in range(len(s), k) for x in f)

    return relation


def _ed_poset(k: int, m: int) -> tuple[FinitePoset, tuple, tuple]:
    stems = _strings_up_to(k, m)
    funcs = sorted(itertools.product(range(m), repeat=k))
    fsets = []
    for r in range(len(funcs) + 1):
        for combo in itertools.combinations(funcs, r):
            fsets.append(frozenset(combo))
    elements = [(s, f) for s in stems for f in fsets]
    leq_fn = _ed_order(k)
    n = len(elements)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            leq[i, j] = leq_fn(a, b)
    poset = FinitePoset(elements, leq, ((), frozenset()))
    space = tuple(tuple(z) for z in itertools.product(range(m), repeat=k))
    return poset, space, tuple(stems)


def ed(k: int = 2, m: int = 2) -> BorelPosetModel:
    """The eventually-different model truncated at length k: conditions are
    (stem, finite set of length-k functions), with the verbatim order and
    closed relation E.  Admissible filters are the E-induced filters of the
    length-k generic values."""
    poset, space, stems = _ed_poset(k, m)
    relation = _ed_relation(k)
    admissible = tuple(
        AdmissibleFilter(
            frozenset(p for p in poset.elements if relation(z, p)), z
        )
        for z in space
    )
    blocks = tuple(
        frozenset(p for p in poset.elements if p[0] == s) for s in stems
    )
    return BorelPosetModel(
        name=f"ed({k},{m})",
        poset=poset,
        generic_space=space,
        relation=relation,
        admissible=admissible,
        linked_partition=blocks,
        centered=True,
    )


def ed_naive(k: int = 2, m: int = 2) -> BorelPosetModel:
    """The eventually-different model with the naive genericity recipe:
    admissible filters taken as the up-sets of *all* minimal elements.

    Truncation makes every (s, F_all) minimal, including premature stems
    whose up-set filters violate the E-characterization.  This model is
    expected to fail `validate_borel_model`; it documents why admissible
    filters must be declared rather than derived."""
    poset, space, stems = _ed_poset(k, m)
    relation = _ed_relation(k)
    admissible = []
    for q in poset.minimal_elements():
        stem, _ = q
        padded = stem + (0,) * (k - len(stem))
        admissible.append(AdmissibleFilter(poset.upset(q), padded))
    blocks = tuple(
        frozenset(p for p in poset.elements if p[0] == s) for s in stems
    )
    return BorelPosetModel(
        name=f"ed_naive({k},{m})",
        poset=poset,
        generic_space=space,
        relation=relation,
        admissible=tuple(admissible),
        linked_partition=blocks,
        centered=True,
    )


def user_poset_model(
    name: str,
    poset: FinitePoset,
    generic_space: Sequence[GenericValue],
    relation: Callable,
    admissible: Sequence[AdmissibleFilter],
    linked_partition: Sequence[frozenset] | None = None,
    centered: bool = False,
) -> BorelPosetModel:
    blocks = (
        tuple(linked_partition)
        if linked_partition is not None
        else tuple(frozenset([e]) for e in poset.elements)
    )
    return BorelPosetModel(
        name=name,
        poset=poset,
        generic_space=tuple(generic_space),
        relation=relation,
        admissible=tuple(admissible),
        linked_partition=blocks,
        centered=centered,
    )
