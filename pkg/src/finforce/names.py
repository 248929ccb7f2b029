"""Names for reals over a finite poset, and the antichain-compatibility
decision procedures for forcing statements about them.

A name is a finite list of maximal antichains with a value map on each
member.  `decide_forces_value` and `decide_forces_in_tree` decide forcing
by compatibility alone; on finite posets they agree exactly with
quantification over the fully generic filters (the up-sets of minimal
elements), which the test suite verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .posets import FinitePoset, admissible_filters_upsets, is_maximal_antichain

Element = Hashable


@dataclass(frozen=True)
class RealName:
    """<h_n, A_n> presentation of a name for a real, truncated to length N."""

    antichains: tuple[tuple[Element, ...], ...]
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.antichains) != len(self.values):
            raise ValueError("one value row per antichain required")
        for a, h in zip(self.antichains, self.values):
            if len(a) != len(h):
                raise ValueError("value map must be total on the antichain")

    @property
    def length(self) -> int:
        return len(self.antichains)

    def value_of(self, n: int, member: Element) -> int:
        return self.values[n][self.antichains[n].index(member)]

    @classmethod
    def from_table(
        cls, rows: Sequence[Mapping[Element, int] | Sequence[tuple[Element, int]]]
    ) -> "RealName":
        antichains = []
        values = []
        for row in rows:
            items = list(row.items()) if isinstance(row, Mapping) else list(row)
            antichains.append(tuple(q for q, _ in items))
            values.append(tuple(v for _, v in items))
        return cls(tuple(antichains), tuple(values))


def validate_name(p: FinitePoset, name: RealName) -> list[str]:
    problems = []
    for n, a in enumerate(name.antichains):
        if not is_maximal_antichain(p, a):
            problems.append(f"antichain {n} is not a maximal antichain")
    return problems


def decide_forces_value(
    p: FinitePoset, cond: Element, name: RealName, n: int, m: int
) -> str:
    """'forces' iff every antichain member compatible with cond carries value
    m; 'refutes' iff none does; 'undecided' otherwise."""
    if n >= name.length:
        raise IndexError(f"coordinate {n} out of range for a length-{name.length} name")
    ci = p.index[cond]
    compat = p.compat_matrix
    seen = [
        name.values[n][k]
        for k, q in enumerate(name.antichains[n])
        if compat[ci, p.index[q]]
    ]
    if all(v == m for v in seen):
        return "forces"
    if all(v != m for v in seen):
        return "refutes"
    return "undecided"


@lru_cache(maxsize=None)
def _selector_tuples(
    p: FinitePoset, cond: Element, name: RealName, k: int
) -> frozenset[tuple[int, ...]]:
    """All value tuples realizable by selectors through the first k
    antichains that have a common lower bound together with cond."""
    down = p.leq_matrix
    out: set[tuple[int, ...]] = set()

    def rec(i: int, below: np.ndarray, vals: tuple[int, ...]):
        if i == k:
            out.add(vals)
            return
        for j, q in enumerate(name.antichains[i]):
            nb = below & down[:, p.index[q]]
            if nb.any():
                rec(i + 1, nb, vals + (name.values[i][j],))

    rec(0, down[:, p.index[cond]].copy(), ())
    return frozenset(out)


def decide_forces_in_tree(
    p: FinitePoset, cond: Element, name: RealName, tree: Iterable[tuple[int, ...]], k: int
) -> bool:
    """Decide cond forces "name restricted to k is a branch of tree": every
    selector through A_0..A_{k-1} with a common stronger condition alongside
    cond must realize a length-k node of the tree."""
    if k > name.length:
        raise IndexError(f"prefix length {k} exceeds name length {name.length}")
    tree = frozenset(tuple(t) for t in tree)
    return all(t in tree for t in _selector_tuples(p, cond, name, k))


# ---------------------------------------------------------------------------
# Independent semantic oracles (used by tests and the acceptance suite)


def generic_filters(p: FinitePoset) -> list[frozenset]:
    return admissible_filters_upsets(p)


@lru_cache(maxsize=None)
def realized_value_rows(
    p: FinitePoset, cond: Element, name: RealName, k: int
) -> frozenset[tuple[int, ...]]:
    """Value tuples realized by fully generic filters containing cond."""
    rows = set()
    for g in generic_filters(p):
        if cond not in g:
            continue
        vals = []
        for i in range(k):
            hits = [j for j, q in enumerate(name.antichains[i]) if q in g]
            if len(hits) != 1:
                raise AssertionError("generic filter must meet each antichain once")
            vals.append(name.values[i][hits[0]])
        rows.add(tuple(vals))
    return frozenset(rows)


def semantic_forces_in_tree(
    p: FinitePoset, cond: Element, name: RealName, tree: Iterable[tuple[int, ...]], k: int
) -> bool:
    tree = frozenset(tuple(t) for t in tree)
    return all(t in tree for t in realized_value_rows(p, cond, name, k))


def semantic_decide_value(
    p: FinitePoset, cond: Element, name: RealName, n: int, m: int
) -> str:
    rows = realized_value_rows(p, cond, name, n + 1)
    seen = {r[n] for r in rows}
    if seen == {m}:
        return "forces"
    if m not in seen:
        return "refutes"
    return "undecided"
