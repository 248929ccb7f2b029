"""Brute-force generic semantics and the theorem checks.

Every check enumerates admissible generic sequences, realizes induced
filters directly from the coordinate-wise rule, and compares against the
synthesized codes (or recomputed histories), recording failures with full
witnesses in a machine-readable report.  Checks over distinct sequences
are independent; reports canonicalize witness order so repeated runs are
byte-identical apart from timing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .codes import (
    IllFormedComposition,
    eval_code,
    eval_fcode_detailed,
    free_components,
    free_components_fcode,
)
from .history import (
    enumerate_points,
    history_of_condition,
    history_of_name,
    restrict_tuple,
    tuple_space,
)
from .iteration import (
    Condition,
    GenericSequence,
    SimpleIteration,
    realize_filter,
)
from .models import check_nice_subposet
from .names import RealName
from .posets import CorrectSystem, check_correct_system
from .synth import case2_contexts, synth_E, synth_F
from .templates import Subset


@dataclass
class Failure:
    kind: str
    condition: str = ""
    name: str = ""
    zbar: str = ""
    expected: str = ""
    actual: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "condition": self.condition,
            "name": self.name,
            "zbar": self.zbar,
            "expected": self.expected,
            "actual": self.actual,
        }

    def sort_key(self):
        return (self.kind, self.condition, self.name, self.zbar, self.expected, self.actual)


@dataclass
class Report:
    check: str
    checked: int = 0
    generics: int = 0
    names: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0
    sampled: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "checked": self.checked,
            "generics": self.generics,
            "names": self.names,
            "sampled": self.sampled,
            "failures": [f.to_json() for f in sorted(self.failures, key=Failure.sort_key)],
            "timing": {"seconds": self.seconds},
        }

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return (
            f"{self.check}: {state} "
            f"[checked={self.checked} generics={self.generics} names={self.names}]"
        )


def _all_subsets(it: SimpleIteration) -> list[Subset]:
    pts = it.template.points
    subs = [frozenset()]
    for x in pts:
        subs += [s | {x} for s in subs]
    return it.template.sorted_subsets(subs)


def verify_main_theorem(
    it: SimpleIteration,
    names: dict[str, RealName] | None = None,
    max_generics: int = 4096,
    seed: int = 0,
) -> Report:
    """Membership codes must decide induced-filter membership, and name
    evaluation functions must reproduce direct antichain evaluation, for
    every condition and every admissible generic sequence.

    Beyond ``max_generics`` sequences the sweep runs on a seeded sample and
    the report is labeled sampled."""
    t0 = time.time()
    names = names or {}
    rep = Report(check="main_theorem", names=len(names))
    full = it.template.all_points()
    poset = it.build_poset(full)
    gens = it.enumerate_generics(full)
    if len(gens) > max_generics:
        import random

        rng = random.Random(seed)
        gens = tuple(rng.sample(gens, max_generics))
        rep.sampled = True
    rep.generics = len(gens)

    spaces = {}
    codes = {}
    for p in poset.elements:
        codes[p] = synth_E(it, full, p)
        spaces[p] = tuple_space(it, history_of_condition(it, full, p))

    for zbar in gens:
        g = realize_filter(it, zbar)
        for p in poset.elements:
            rep.checked += 1
            direct = p in g
            point = restrict_tuple(zbar, spaces[p])
            try:
                via_code = eval_code(codes[p], point, strict=True)
            except IllFormedComposition as exc:
                rep.failures.append(
                    Failure("ill-formed-composition", str(p), "", str(zbar), "", str(exc))
                )
                continue
            if direct != via_code:
                rep.failures.append(
                    Failure(
                        "membership-code", str(p), "", str(zbar),
                        str(direct), str(via_code),
                    )
                )
        for label, name in names.items():
            fcode = synth_F(it, full, name)
            tspace = tuple_space(it, history_of_name(it, full, name))
            direct_vals = []
            trouble = None
            for i, (antichain, values) in enumerate(zip(name.antichains, name.values)):
                hits = [k for k, q in enumerate(antichain) if q in g]
                if len(hits) != 1:
                    trouble = f"antichain {i} met {len(hits)} times"
                    break
                direct_vals.append(values[hits[0]])
            if trouble:
                rep.failures.append(Failure("antichain-uniqueness", "", label, str(zbar), "1", trouble))
                continue
            point = restrict_tuple(zbar, tspace)
            got, in_d = eval_fcode_detailed(fcode, point, strict=True)
            if not in_d:
                rep.failures.append(
                    Failure("outside-domain", "", label, str(zbar), "inside D", "outside D")
                )
            if tuple(direct_vals) != got:
                rep.failures.append(
                    Failure("name-evaluation", "", label, str(zbar), str(tuple(direct_vals)), str(got))
                )
    rep.seconds = time.time() - t0
    return rep


def verify_history_invariance(
    it: SimpleIteration, names: dict[str, RealName] | None = None
) -> Report:
    """Histories computed relative to nested ambient sets must coincide, and
    the A'-choice inside the recursion must be immaterial."""
    t0 = time.time()
    names = names or {}
    rep = Report(check="history_invariance", names=len(names))
    subsets = _all_subsets(it)
    for a_small in subsets:
        members = it.members(a_small)
        bigger = [a for a in subsets if a_small <= a]
        for p in members:
            h_small = history_of_condition(it, a_small, p)
            for a in bigger:
                rep.checked += 1
                h_big = history_of_condition(it, a, p)
                if h_small != h_big:
                    rep.failures.append(
                        Failure(
                            "history-ambient", str(p), "",
                            f"A'={sorted(a_small)} A={sorted(a)}",
                            str(h_small), str(h_big),
                        )
                    )
            if not p.is_empty():
                base = history_of_condition(it, a_small, p)
                for ctx in it.entry_contexts(a_small, p):
                    rep.checked += 1
                    forced = history_of_condition(it, a_small, p, context_override=ctx)
                    if forced != base:
                        rep.failures.append(
                            Failure(
                                "history-choice", str(p), "", f"A'={sorted(ctx)}",
                                str(base), str(forced),
                            )
                        )
    full = it.template.all_points()
    for label, name in names.items():
        h_full = history_of_name(it, full, name)
        for a in subsets:
            if all(it.member_pstar(a, q) for ac in name.antichains for q in ac):
                rep.checked += 1
                h_a = history_of_name(it, a, name)
                if h_a != h_full:
                    rep.failures.append(
                        Failure("history-name", "", label, f"A={sorted(a)}", str(h_full), str(h_a))
                    )
    rep.seconds = time.time() - t0
    return rep


def verify_well_definedness(
    it: SimpleIteration, names: dict[str, RealName] | None = None
) -> Report:
    """Codes synthesized relative to nested ambient sets, and under every
    admissible delegation choice, must be semantically equal on the
    condition's whole tuple space."""
    t0 = time.time()
    names = names or {}
    rep = Report(check="well_definedness", names=len(names))
    subsets = _all_subsets(it)
    for small in subsets:
        members = it.members(small)
        bigger = [a for a in subsets if small <= a]
        for q in members:
            tspace = tuple_space(it, history_of_condition(it, small, q))
            points = list(enumerate_points(tspace))
            code_small = synth_E(it, small, q)
            for a in bigger:
                rep.checked += 1
                code_a = synth_E(it, a, q)
                for pt in points:
                    v1 = eval_code(code_small, pt, strict=False)
                    v2 = eval_code(code_a, pt, strict=False)
                    if v1 != v2:
                        rep.failures.append(
                            Failure(
                                "code-ambient", str(q), "",
                                f"K={sorted(small)} A={sorted(a)} at {pt}",
                                str(v1), str(v2),
                            )
                        )
                        break
            # delegation-choice independence where the case split offers one
            x = it.template.order.max_of(small) if small else None
            if x is not None and it.past_in(small, x) not in it.template.families[x]:
                for choice in case2_contexts(it, small, q):
                    rep.checked += 1
                    forced = synth_E(
                        it, small, q,
                        chooser=lambda a, p, cands, _c=choice: _c if _c in cands else cands[0],
                    )
                    for pt in points:
                        v1 = eval_code(code_small, pt, strict=False)
                        v2 = eval_code(forced, pt, strict=False)
                        if v1 != v2:
                            rep.failures.append(
                                Failure(
                                    "code-choice", str(q), "", f"A'={sorted(choice)} at {pt}",
                                    str(v1), str(v2),
                                )
                            )
                            break
    full = it.template.all_points()
    for label, name in names.items():
        tspace = tuple_space(it, history_of_name(it, full, name))
        points = list(enumerate_points(tspace))
        f_full = synth_F(it, full, name)
        for a in subsets:
            if a != full and all(
                it.member_pstar(a, q) for ac in name.antichains for q in ac
            ):
                rep.checked += 1
                f_a = synth_F(it, a, name)
                for pt in points:
                    v1 = eval_fcode_detailed(f_full, pt, strict=False)
                    v2 = eval_fcode_detailed(f_a, pt, strict=False)
                    if v1 != v2:
                        rep.failures.append(
                            Failure("fcode-ambient", "", label, f"A={sorted(a)} at {pt}", str(v1), str(v2))
                        )
                        break
    rep.seconds = time.time() - t0
    return rep


def verify_density(it: SimpleIteration) -> Report:
    """P* must be dense in the widened iteration over every subset."""
    t0 = time.time()
    rep = Report(check="density")
    for a in _all_subsets(it):
        rep.checked += 1
        ok, witness = it.check_density_pstar(a)
        if not ok:
            rep.failures.append(
                Failure("density", str(witness), "", f"A={sorted(a)}", "extension in P*", "none")
            )
    rep.seconds = time.time() - t0
    return rep


def verify_embeddings(it: SimpleIteration) -> Report:
    """Complete embeddings along every nested pair of the subset lattice."""
    t0 = time.time()
    rep = Report(check="embeddings")
    subsets = _all_subsets(it)
    for small in subsets:
        for big in subsets:
            if small <= big:
                rep.checked += 1
                emb = it.check_complete_embedding(small, big)
                if not emb.ok:
                    rep.failures.append(
                        Failure(
                            "embedding", "", "",
                            f"{sorted(small)} into {sorted(big)}",
                            "complete", str(emb.failures[:3]),
                        )
                    )
    rep.seconds = time.time() - t0
    return rep


def verify_nice_and_correct(it: SimpleIteration) -> Report:
    """Every subposet value of every R-coordinate table must satisfy the
    E-characterization on its restricted generic space, and every four-poset
    system generated from the subset lattice must be correct."""
    t0 = time.time()
    rep = Report(check="nice_and_correct")
    for x in it.template.points:
        asg = it.assignments[x]
        if asg.kind != "R":
            continue
        for member, spec in zip(asg.qname.antichain, asg.qname.table):
            rep.checked += 1
            problems = check_nice_subposet(asg.model, spec.elements, spec.z_space)
            for pr in problems:
                rep.failures.append(
                    Failure("nice-subposet", str(member), f"table at {x}", "", "", str(pr))
                )
    subsets = _all_subsets(it)
    built = {a: it.build_poset(a) for a in subsets}
    for a0 in subsets:
        for a1 in subsets:
            if not a0 <= a1:
                continue
            for b0 in subsets:
                if not (a0 <= b0 and a1 & b0 == a0):
                    continue
                for b1 in subsets:
                    if not (b0 <= b1 and a1 <= b1):
                        continue
                    rep.checked += 1
                    system = CorrectSystem(built[a0], built[a1], built[b0], built[b1])
                    res = check_correct_system(system)
                    if not res.ok:
                        rep.failures.append(
                            Failure(
                                "correct-system", "", "",
                                f"A0={sorted(a0)} A1={sorted(a1)} B0={sorted(b0)} B1={sorted(b1)}",
                                "correct", str(res.failures[:3]),
                            )
                        )
    rep.seconds = time.time() - t0
    return rep


CHECKS = {
    "main_theorem": verify_main_theorem,
    "history_invariance": verify_history_invariance,
    "well_definedness": verify_well_definedness,
    "density": verify_density,
    "embeddings": verify_embeddings,
    "nice_and_correct": verify_nice_and_correct,
}

NAME_AWARE = {"main_theorem", "history_invariance", "well_definedness"}


def run_checks(
    it: SimpleIteration,
    names: dict[str, RealName] | None = None,
    which: list[str] | None = None,
    max_generics: int = 4096,
    seed: int = 0,
) -> list[Report]:
    which = which or list(CHECKS)
    reports = []
    for check in which:
        fn = CHECKS[check]
        if check == "main_theorem":
            reports.append(fn(it, names, max_generics=max_generics, seed=seed))
        elif check in NAME_AWARE:
            reports.append(fn(it, names))
        else:
            reports.append(fn(it))
    return reports
