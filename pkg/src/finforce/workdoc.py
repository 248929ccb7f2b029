"""The declarative workbench document: one JSON file describing a template,
its models, the iteration, registered names and the checks to run.

Parsing is deterministic and validating: every label must be declared
before use, and structural problems are reported with a JSON path.  The
parsed document can rebuild its JSON form exactly (round-trip identity on
the normalized structure).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .iteration import (
    TRIV,
    Condition,
    DecisionTableName,
    IterandAssignment,
    SimpleIteration,
    SmallPosetSpec,
    SubposetSpec,
    const_name,
    make_condition,
)
from .models import BorelPosetModel, cohen, ed, ed_naive, validate_borel_model
from .names import RealName
from .templates import LinearOrder, Violation, validate_template


class DocError(Exception):
    """A structural problem in a workbench document, with its JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class WorkbenchDoc:
    """A parsed document: the normalized JSON plus the constructed objects."""

    raw: dict
    iteration: SimpleIteration
    models: dict[str, BorelPosetModel]
    point_models: dict[str, BorelPosetModel]
    names: dict[str, RealName]
    checks: list[str]
    max_conditions: int
    seed: int
    template_violations: list[Violation] = field(default_factory=list)
    model_violations: dict[str, list] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, indent=2) + "\n"


_BUILTINS = {"cohen": cohen, "ed": ed, "ed_naive": ed_naive}


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise DocError(path, message)


def _parse_model(label: str, spec: dict) -> BorelPosetModel:
    path = f"models.{label}"
    _expect(isinstance(spec, dict), path, "model spec must be an object")
    builtin = spec.get("builtin")
    _expect(builtin in _BUILTINS, path, f"unknown builtin {builtin!r}")
    length = spec.get("length", 2)
    alphabet = spec.get("alphabet", 2)
    _expect(isinstance(length, int) and length >= 1, path, "length must be a positive integer")
    _expect(isinstance(alphabet, int) and alphabet >= 2, path, "alphabet must be at least 2")
    return _BUILTINS[builtin](length, alphabet)


def _parse_entry_literal(lit: Any, point: str, point_models: dict,
                         entry_names: dict, path: str):
    if isinstance(lit, int):
        return lit
    if lit == "trivial":
        return TRIV
    if isinstance(lit, dict) and "const" in lit:
        model = point_models.get(point)
        _expect(model is not None, path, f"point {point} has no model for a constant")
        try:
            value = model.parse_label(lit["const"])
        except Exception:
            raise DocError(path, f"bad element label {lit['const']!r}") from None
        _expect(value in model.poset.index, path, f"element {lit['const']!r} not in the model")
        return const_name(value)
    if isinstance(lit, dict) and "entry" in lit:
        ref = lit["entry"]
        _expect(ref in entry_names, path, f"unknown entry name {ref!r}")
        return entry_names[ref]
    raise DocError(path, f"cannot read entry literal {lit!r}")


def _parse_condition(lit: Any, rank: dict, point_models: dict,
                     entry_names: dict, path: str) -> Condition:
    _expect(isinstance(lit, dict), path, "condition literal must be an object")
    assignments = {}
    for point, entry_lit in lit.items():
        _expect(point in rank, f"{path}.{point}", f"unknown point {point!r}")
        assignments[point] = _parse_entry_literal(
            entry_lit, point, point_models, entry_names, f"{path}.{point}"
        )
    return make_condition(rank, assignments)


def _parse_table_name(label: str, spec: dict, rank, point_models, entry_names,
                      value_parser, path: str) -> DecisionTableName:
    _expect(isinstance(spec, dict), path, "table name must be an object")
    base = frozenset(spec.get("base", []))
    for x in base:
        _expect(x in rank, path, f"unknown base point {x!r}")
    rows = spec.get("table")
    _expect(isinstance(rows, list) and rows, path, "table must be a nonempty list")
    antichain = []
    values = []
    for i, row in enumerate(rows):
        rpath = f"{path}.table[{i}]"
        _expect(isinstance(row, dict) and "when" in row and "value" in row,
                rpath, "rows need 'when' and 'value'")
        antichain.append(_parse_condition(row["when"], rank, point_models, entry_names, rpath))
        values.append(value_parser(row["value"], rpath))
    return DecisionTableName(
        base=base, antichain=tuple(antichain), table=tuple(values), label=label
    )


def _parse_small_poset(value: Any, path: str) -> SmallPosetSpec:
    _expect(isinstance(value, dict) and "size" in value, path, "poset value needs a size")
    size = value["size"]
    _expect(isinstance(size, int) and size >= 1, path, "size must be a positive integer")
    pairs = tuple((int(a), int(b)) for a, b in value.get("leq", []))
    for a, b in pairs:
        _expect(0 <= a < size and 0 <= b < size, path, f"leq pair ({a},{b}) out of range")
    blocks = tuple(frozenset(b) for b in value.get("blocks", [[i] for i in range(size)]))
    return SmallPosetSpec(size=size, leq_pairs=pairs, linked_blocks=blocks)


def _parse_subposet(value: Any, model: BorelPosetModel, path: str) -> SubposetSpec:
    if value == "full":
        return SubposetSpec(
            elements=frozenset(model.poset.elements), z_space=model.generic_space
        )
    _expect(isinstance(value, dict) and "elements" in value, path,
            "subposet value must be 'full' or list its elements")
    elements = []
    for lbl in value["elements"]:
        el = model.parse_label(lbl)
        _expect(el in model.poset.index, path, f"element {lbl!r} not in the model")
        elements.append(el)
    zs = value.get("z")
    if zs is None:
        z_space = model.generic_space
    else:
        z_space = tuple(model.parse_label(z) for z in zs)
        for z in z_space:
            _expect(z in model.generic_space, path, "restricted generic value not in Z")
    return SubposetSpec(elements=frozenset(elements), z_space=z_space)


def parse_doc(text: str) -> WorkbenchDoc:
    """Parse and construct a workbench document.  Raises DocError (with a
    JSON path) or json.JSONDecodeError (with line/column) on bad input."""
    raw = json.loads(text)
    _expect(isinstance(raw, dict), "$", "document must be a JSON object")

    tspec = raw.get("template")
    _expect(isinstance(tspec, dict), "template", "missing template block")
    points = tspec.get("points")
    _expect(isinstance(points, list) and points, "template.points", "points must be a nonempty list")
    _expect(all(isinstance(p, str) for p in points), "template.points", "points must be strings")
    order = LinearOrder(tuple(points))
    rank = order.rank
    families_raw = tspec.get("families", {})
    _expect(set(families_raw) <= set(points), "template.families", "family for unknown point")
    families = {p: [frozenset(b) for b in families_raw.get(p, [[]])] for p in points}
    result = validate_template(order, families)
    template_violations: list[Violation] = []
    if isinstance(result, list):
        template_violations = result
        template = None
    else:
        template = result

    models: dict[str, BorelPosetModel] = {}
    model_violations: dict[str, list] = {}
    for label, spec in raw.get("models", {}).items():
        models[label] = _parse_model(label, spec)
        problems = validate_borel_model(models[label])
        if problems:
            model_violations[label] = problems

    iteration = None
    point_models: dict[str, BorelPosetModel] = {}
    names: dict[str, RealName] = {}
    if template is not None:
        ispec = raw.get("iteration", {})
        _expect(set(ispec) == set(points), "iteration",
                f"iteration must assign every point exactly once, got {sorted(ispec)}")
        for x, cfg in ispec.items():
            kind = cfg.get("kind")
            _expect(kind in ("B", "R", "C"), f"iteration.{x}", f"bad kind {kind!r}")
            if kind in ("B", "R"):
                mlabel = cfg.get("model")
                _expect(mlabel in models, f"iteration.{x}", f"unknown model {mlabel!r}")
                point_models[x] = models[mlabel]

        entry_names: dict[str, DecisionTableName] = {}
        for label, espec in raw.get("entries", {}).items():
            point = espec.get("point")
            _expect(point in point_models, f"entries.{label}",
                    f"entry names need a B/R point, got {point!r}")
            model = point_models[point]

            def value_parser(v, path, _m=model):
                el = _m.parse_label(v)
                _expect(el in _m.poset.index, path, f"element {v!r} not in the model")
                return el

            entry_names[label] = _parse_table_name(
                label, espec, rank, point_models, entry_names,
                value_parser, f"entries.{label}",
            )

        widened_names: dict[str, DecisionTableName] = {}
        for label, wspec in raw.get("widened_entries", {}).items():
            point = wspec.get("point")
            _expect(point in set(points), f"widened_entries.{label}", f"unknown point {point!r}")

            def ordinal_parser(v, path):
                _expect(isinstance(v, int) and v >= 0, path, "widened values must be ordinals")
                return v

            widened_names[label] = _parse_table_name(
                label, wspec, rank, point_models, entry_names,
                ordinal_parser, f"widened_entries.{label}",
            )

        assignments = {}
        for x, cfg in ispec.items():
            path = f"iteration.{x}"
            kind = cfg["kind"]
            support = frozenset(cfg.get("support", []))
            extra = tuple(entry_names[ref] for ref in cfg.get("entries", []))
            widened = tuple(widened_names[ref] for ref in cfg.get("widened", []))
            include_constants = bool(cfg.get("constants", True))
            if kind == "B":
                assignments[x] = IterandAssignment(
                    kind="B", model=point_models[x], extra_entries=extra,
                    include_constants=include_constants,
                )
            elif kind == "C":
                gamma = cfg.get("gamma")
                _expect(isinstance(gamma, int) and gamma >= 1, path, "C needs a gamma")
                pspec = cfg.get("poset")
                _expect(isinstance(pspec, dict), path, "C needs a poset name")
                qname = _parse_table_name(
                    f"Q_{x}", pspec, rank, point_models, entry_names,
                    _parse_small_poset, f"{path}.poset",
                )
                for v in qname.table:
                    _expect(v.size == gamma, f"{path}.poset", "poset size must equal gamma")
                assignments[x] = IterandAssignment(
                    kind="C", gamma=gamma, support=support, qname=qname,
                    widened_entries=widened,
                )
            else:
                sspec = cfg.get("subposet")
                _expect(isinstance(sspec, dict), path, "R needs a subposet name")
                model = point_models[x]
                qname = _parse_table_name(
                    f"Q_{x}", sspec, rank, point_models, entry_names,
                    lambda v, p, _m=model: _parse_subposet(v, _m, p), f"{path}.subposet",
                )
                assignments[x] = IterandAssignment(
                    kind="R", model=model, support=support, qname=qname,
                    extra_entries=extra, include_constants=include_constants,
                )

        run = raw.get("run", {})
        max_conditions = run.get("max_conditions", 100_000)
        iteration = SimpleIteration(template, assignments, max_conditions=max_conditions)

        for label, rows in raw.get("names", {}).items():
            path = f"names.{label}"
            _expect(isinstance(rows, list) and rows, path, "a name is a list of coordinates")
            antichains = []
            values = []
            for i, row in enumerate(rows):
                _expect(isinstance(row, list) and row, f"{path}[{i}]",
                        "each coordinate is a list of cases")
                ac, vs = [], []
                for j, case in enumerate(row):
                    cpath = f"{path}[{i}][{j}]"
                    _expect(isinstance(case, dict) and "when" in case and "value" in case,
                            cpath, "cases need 'when' and 'value'")
                    ac.append(_parse_condition(case["when"], rank, point_models, entry_names, cpath))
                    _expect(isinstance(case["value"], int), cpath, "name values are naturals")
                    vs.append(case["value"])
                antichains.append(tuple(ac))
                values.append(tuple(vs))
            names[label] = RealName(tuple(antichains), tuple(values))

    run = raw.get("run", {})
    from .verify import CHECKS

    checks = run.get("checks", list(CHECKS))
    for c in checks:
        _expect(c in CHECKS, "run.checks", f"unknown check {c!r}")
    return WorkbenchDoc(
        raw=raw,
        iteration=iteration,
        models=models,
        point_models=point_models,
        names=names,
        checks=checks,
        max_conditions=run.get("max_conditions", 100_000),
        seed=run.get("seed", 0),
        template_violations=template_violations,
        model_violations=model_violations,
    )


def load_doc(path: str) -> WorkbenchDoc:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_doc(fh.read())
