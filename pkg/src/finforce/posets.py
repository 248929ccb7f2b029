"""Finite posets with a top element, backed by boolean order matrices.

Compatibility, antichains, reductions, complete embeddings and correct
systems are all decided by exhaustive matrix computations.  In a finite
poset a filter meets every maximal antichain exactly when it is the up-set
of a minimal element, which is what makes the brute-force genericity
oracle (`admissible_filters_upsets`) sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

Element = Hashable


class FinitePoset:
    """An immutable finite poset with a designated top element.

    ``leq[i, j]`` holds when ``elements[i] <= elements[j]``.  The matrix is
    checked to be reflexive, transitive and antisymmetric, and the top must
    be the maximum.
    """

    def __init__(self, elements: Sequence[Element], leq: np.ndarray, top: Element):
        elements = tuple(elements)
        leq = np.asarray(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise ValueError(f"order matrix shape {leq.shape} does not match {n} elements")
        if not leq[np.diag_indices(n)].all():
            raise ValueError("order is not reflexive")
        if ((leq @ leq) & ~leq).any():
            raise ValueError("order is not transitive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("order is not antisymmetric")
        ti = elements.index(top)
        if not leq[:, ti].all():
            raise ValueError("top is not the maximum")
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.leq_matrix = leq
        self.leq_matrix.setflags(write=False)
        self.top = top
        self._compat: np.ndarray | None = None

    @classmethod
    def from_relation(cls, elements: Sequence[Element], pairs: Iterable[tuple[Element, Element]],
                      top: Element) -> "FinitePoset":
        """Build from covering/less-equal pairs; reflexive-transitive closure is taken."""
        elements = tuple(elements)
        n = len(elements)
        idx = {e: i for i, e in enumerate(elements)}
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            leq[idx[a], idx[b]] = True
        for _ in range(n):
            new = leq | (leq @ leq)
            if (new == leq).all():
                break
            leq = new
        return cls(elements, leq, top)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.index

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self.leq_matrix[self.index[a], self.index[b]])

    @property
    def compat_matrix(self) -> np.ndarray:
        """compat[i, j] iff some r lies below both i and j."""
        if self._compat is None:
            d = self.leq_matrix
            self._compat = (d.T.astype(np.int32) @ d.astype(np.int32)) > 0
            self._compat.setflags(write=False)
        return self._compat

    def minimal_elements(self) -> list[Element]:
        below = self.leq_matrix.sum(axis=0)
        return [e for e, n in zip(self.elements, below) if n == 1]

    def upset(self, e: Element) -> frozenset:
        i = self.index[e]
        return frozenset(b for b, ok in zip(self.elements, self.leq_matrix[i]) if ok)

    def downset(self, e: Element) -> frozenset:
        i = self.index[e]
        return frozenset(a for a, ok in zip(self.elements, self.leq_matrix[:, i]) if ok)

    def restrict(self, subset: Iterable[Element], top: Element | None = None) -> "FinitePoset":
        sub = [e for e in self.elements if e in set(subset)]
        ids = [self.index[e] for e in sub]
        leq = self.leq_matrix[np.ix_(ids, ids)]
        return FinitePoset(sub, leq, self.top if top is None else top)


def compatible(p: FinitePoset, a: Element, b: Element) -> bool:
    """True iff a and b have a common lower bound."""
    return bool(p.compat_matrix[p.index[a], p.index[b]])


def common_lower_bound_exists(p: FinitePoset, items: Iterable[Element]) -> bool:
    ids = [p.index[e] for e in items]
    if not ids:
        return True
    below = p.leq_matrix[:, ids].all(axis=1)
    return bool(below.any())


def is_antichain(p: FinitePoset, a: Iterable[Element]) -> bool:
    a = list(a)
    return all(
        not compatible(p, a[i], a[j]) for i in range(len(a)) for j in range(i + 1, len(a))
    )


def is_maximal_antichain(p: FinitePoset, a: Iterable[Element]) -> bool:
    """Pairwise incompatible, and every element is compatible with a member."""
    a = list(a)
    if not is_antichain(p, a):
        return False
    ids = [p.index[e] for e in a]
    covered = p.compat_matrix[:, ids].any(axis=1)
    return bool(covered.all())


def maximal_antichains(p: FinitePoset) -> list[tuple[Element, ...]]:
    """All maximal antichains, by exhaustive search.  Small posets only."""
    n = len(p.elements)
    if n > 20:
        raise ValueError(f"refusing antichain enumeration on {n} elements")
    compat = p.compat_matrix
    result: list[tuple[Element, ...]] = []

    def rec(chosen: list[int], start: int):
        if chosen and compat[:, chosen].any(axis=1).all():
            result.append(tuple(p.elements[i] for i in chosen))
            return
        for i in range(start, n):
            if all(not compat[i, j] for j in chosen):
                rec(chosen + [i], i + 1)

    rec([], 0)
    return sorted(set(result), key=lambda t: (len(t), [p.index[e] for e in t]))


def is_filter(p: FinitePoset, g: Iterable[Element]) -> bool:
    """Upward closed and downward directed."""
    g = frozenset(g)
    if not g:
        return False
    ids = [p.index[e] for e in g]
    up = p.leq_matrix[ids].any(axis=0)
    if frozenset(e for e, ok in zip(p.elements, up) if ok) != g:
        return False
    for a in g:
        for b in g:
            lower = p.leq_matrix[:, p.index[a]] & p.leq_matrix[:, p.index[b]]
            if not any(p.elements[i] in g for i in np.flatnonzero(lower)):
                return False
    return True


def filter_meets_all_maximal_antichains(p: FinitePoset, g: Iterable[Element]) -> bool:
    """Equivalent, for finite posets, to g being the up-set of a minimal element."""
    g = frozenset(g)
    if not is_filter(p, g):
        return False
    bottom = [e for e in g if all(not (p.leq(o, e) and o != e) for o in g)]
    if len(bottom) != 1:
        return False
    m = bottom[0]
    return p.upset(m) == g and m in set(p.minimal_elements())


def admissible_filters_upsets(p: FinitePoset) -> list[frozenset]:
    """The fully generic filters of a finite poset: up-sets of minimal elements."""
    return [p.upset(m) for m in p.minimal_elements()]


def is_reduction(sub: FinitePoset, sup: FinitePoset, p: Element, q: Element) -> bool:
    """p (in sub) is a reduction of q (in sup): every extension of p inside
    sub is compatible with q in sup."""
    for p2 in sub.downset(p):
        if not compatible(sup, p2, q):
            return False
    return True


@dataclass
class EmbeddingReport:
    ok: bool
    failures: list[tuple]

    def __bool__(self):
        return self.ok


def _reduction_matrix(
    sub_order: np.ndarray, compat_in_sup: np.ndarray
) -> np.ndarray:
    """red[r, q]: every extension of r inside sub is compatible with q in sup.

    ``sub_order`` is the sub poset's order; ``compat_in_sup`` maps (sub
    element, sup element) pairs to compatibility in the super poset."""
    bad = sub_order.T.astype(np.int32) @ (~compat_in_sup).astype(np.int32)
    return bad == 0


def check_complete_embedding_posets(sub: FinitePoset, sup: FinitePoset) -> EmbeddingReport:
    """sub must embed completely in sup (elements identified by equality).

    Checks order agreement, incompatibility preservation and existence of
    reductions; together these imply that every maximal antichain of sub
    stays maximal in sup.
    """
    failures: list[tuple] = []
    for a in sub.elements:
        if a not in sup:
            failures.append(("missing-element", a))
    if failures:
        return EmbeddingReport(False, failures)
    ids = np.array([sup.index[e] for e in sub.elements])
    sup_leq = sup.leq_matrix[np.ix_(ids, ids)]
    mism = np.argwhere(sub.leq_matrix != sup_leq)
    for i, j in mism[:8]:
        failures.append(
            ("order-mismatch", sub.elements[i], sub.elements[j],
             bool(sub.leq_matrix[i, j]), bool(sup_leq[i, j]))
        )
    sup_compat = sup.compat_matrix[np.ix_(ids, ids)]
    lost = np.argwhere(~sub.compat_matrix & sup_compat)
    for i, j in lost[:8]:
        failures.append(("incompatibility-lost", sub.elements[i], sub.elements[j]))
    if failures:
        return EmbeddingReport(False, failures)
    red = _reduction_matrix(sub.leq_matrix, sup.compat_matrix[ids])
    unreduced = np.flatnonzero(~red.any(axis=0))
    for q in unreduced[:8]:
        failures.append(("no-reduction", sup.elements[q]))
    return EmbeddingReport(not failures, failures)


@dataclass
class CorrectSystem:
    """Four nested posets <P0, P1, Q0, Q1>: P0 below P1 and Q0, both below Q1."""

    p0: FinitePoset
    p1: FinitePoset
    q0: FinitePoset
    q1: FinitePoset


def check_correct_system(s: CorrectSystem) -> EmbeddingReport:
    """Brute-force the correctness property: the four inclusions are complete
    embeddings, and each reduction within <P0, Q0> persists for <P1, Q1>."""
    failures: list[tuple] = []
    for tag, sub, sup in (
        ("P0<P1", s.p0, s.p1),
        ("P0<Q0", s.p0, s.q0),
        ("P1<Q1", s.p1, s.q1),
        ("Q0<Q1", s.q0, s.q1),
    ):
        rep = check_complete_embedding_posets(sub, sup)
        if not rep.ok:
            failures.extend((tag,) + f for f in rep.failures)
    if failures:
        return EmbeddingReport(False, failures)
    p0_in_q0 = np.array([s.q0.index[e] for e in s.p0.elements])
    red0 = _reduction_matrix(s.p0.leq_matrix, s.q0.compat_matrix[p0_in_q0])
    p0_in_p1 = np.array([s.p1.index[e] for e in s.p0.elements])
    p1_in_q1 = np.array([s.q1.index[e] for e in s.p1.elements])
    q0_in_q1 = np.array([s.q1.index[e] for e in s.q0.elements])
    compat1 = s.q1.compat_matrix[np.ix_(p1_in_q1, q0_in_q1)]
    bad1 = s.p1.leq_matrix[:, p0_in_p1].T.astype(np.int32) @ (~compat1).astype(np.int32)
    red1 = bad1 == 0
    broken = np.argwhere(red0 & ~red1)
    for i, j in broken[:8]:
        failures.append(("reduction-not-persistent", s.p0.elements[i], s.q0.elements[j]))
    return EmbeddingReport(not failures, failures)
