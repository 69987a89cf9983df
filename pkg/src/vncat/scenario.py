"""Scenario files: JSON descriptions of a context, generators, and commands.

A scenario is a single JSON object.  Complex numbers are encoded as
``[re, im]`` pairs (bare reals are accepted on input and normalized), and
matrices as row-major nested lists.  ``parse_scenario`` validates the whole
document and raises ScenarioError with a path like ``generators[2].matrix``
pointing at the offending field; ``normalize`` re-emits the canonical dict
echoed into reports, chosen so that parse(normalize(s)) == normalize(s).

Top-level keys:
  schema (must be 1), hdim, tol?, dagger_close?, objects, universe?,
  generators?, group?, rep?, net?, commands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .category import Arrow, Context, Obj
from .causal import CausalNet, DoubleCone, Event, LatticeBounds
from .commutant import ObjectUniverse
from .crossed import FiniteGroup, UnitaryRep

__all__ = ["ScenarioError", "Scenario", "parse_scenario", "load_scenario", "COMMANDS"]

COMMANDS = (
    "centre",
    "commutant",
    "double-commutant",
    "vn-check",
    "endo-algebra",
    "cstar-check",
    "crossed-product",
    "covariance",
    "causality",
)

_NEEDS_GENERATORS = {"cstar-check", "covariance"}
_NEEDS_REP = {"crossed-product", "covariance"}
_NEEDS_NET = {"causality"}


class ScenarioError(ValueError):
    """Validation failure; ``path`` anchors the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class Scenario:
    ctx: Context
    tol: float | None
    dagger_close: bool
    objects: list[Obj]
    universe: ObjectUniverse
    generators: list[Arrow]
    generator_names: list[str]
    group: FiniteGroup | None
    rep: UnitaryRep | None
    net: CausalNet | None
    commands: list[str]
    normalized: dict

    def generator(self, name: str) -> Arrow:
        return self.generators[self.generator_names.index(name)]


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ScenarioError("$", f"cannot read scenario file: {e}") from None
    except json.JSONDecodeError as e:
        raise ScenarioError("$", f"not valid JSON: {e}") from None
    return parse_scenario(doc)


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise ScenarioError(path, message)


def _get_int(doc, key, path, minimum=None):
    v = doc.get(key)
    _expect(isinstance(v, int) and not isinstance(v, bool), f"{path}.{key}", "must be an integer")
    if minimum is not None:
        _expect(v >= minimum, f"{path}.{key}", f"must be >= {minimum}")
    return v


def _parse_entry(v, path) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(float(v), 0.0)
    if (
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(u, (int, float)) and not isinstance(u, bool) for u in v)
    ):
        return complex(float(v[0]), float(v[1]))
    raise ScenarioError(path, "matrix entries must be numbers or [re, im] pairs")


def _parse_matrix(v, rows, cols, path) -> np.ndarray:
    _expect(isinstance(v, list) and len(v) == rows, path, f"must be a list of {rows} rows")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for i, row in enumerate(v):
        _expect(
            isinstance(row, list) and len(row) == cols,
            f"{path}[{i}]",
            f"must be a list of {cols} entries",
        )
        for j, entry in enumerate(row):
            out[i, j] = _parse_entry(entry, f"{path}[{i}][{j}]")
    _expect(bool(np.isfinite(out).all()), path, "matrix entries must be finite")
    return out


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]


def parse_scenario(doc) -> Scenario:
    _expect(isinstance(doc, dict), "$", "scenario must be a JSON object")
    _expect(doc.get("schema") == 1, "$.schema", "must be the integer 1")
    hdim = _get_int(doc, "hdim", "$", minimum=1)
    ctx = Context(hdim)

    tol = doc.get("tol")
    if tol is not None:
        _expect(
            isinstance(tol, (int, float)) and not isinstance(tol, bool) and 0 < float(tol) < 1,
            "$.tol",
            "must be a number strictly between 0 and 1",
        )
        tol = float(tol)

    dagger_close = doc.get("dagger_close", False)
    _expect(isinstance(dagger_close, bool), "$.dagger_close", "must be a boolean")

    # objects
    raw_objects = doc.get("objects")
    _expect(
        isinstance(raw_objects, list) and raw_objects, "$.objects", "must be a non-empty list"
    )
    objects: list[Obj] = []
    names: set[str] = set()
    for i, o in enumerate(raw_objects):
        p = f"$.objects[{i}]"
        _expect(isinstance(o, dict), p, "must be an object with name and dim")
        name = o.get("name")
        _expect(isinstance(name, str) and name, f"{p}.name", "must be a non-empty string")
        _expect(name not in names, f"{p}.name", f"duplicate object name {name!r}")
        dim = _get_int(o, "dim", p, minimum=1)
        objects.append(Obj(name, dim))
        names.add(name)
    by_name = {o.name: o for o in objects}

    # universe (defaults to all objects, in order); a unit is appended if absent
    raw_universe = doc.get("universe", [o.name for o in objects])
    _expect(isinstance(raw_universe, list) and raw_universe, "$.universe", "must be a non-empty list")
    uni_objs: list[Obj] = []
    seen: set[str] = set()
    for i, name in enumerate(raw_universe):
        p = f"$.universe[{i}]"
        _expect(isinstance(name, str), p, "must be an object name")
        _expect(name in by_name, p, f"unknown object name {name!r}")
        _expect(name not in seen, p, f"duplicate universe entry {name!r}")
        uni_objs.append(by_name[name])
        seen.add(name)
    if not any(o.dim == 1 for o in uni_objs):
        unit = next((o for o in objects if o.dim == 1), None)
        if unit is None:
            _expect("I" not in by_name, "$.objects", "object 'I' must have dim 1 to serve as the unit")
            unit = Obj("I", 1)
            objects.append(unit)
            by_name["I"] = unit
        uni_objs.append(unit)
    universe = ObjectUniverse(tuple(uni_objs), ctx)

    # generators
    raw_gens = doc.get("generators", [])
    _expect(isinstance(raw_gens, list), "$.generators", "must be a list")
    generators: list[Arrow] = []
    generator_names: list[str] = []
    for i, g in enumerate(raw_gens):
        p = f"$.generators[{i}]"
        _expect(isinstance(g, dict), p, "must be an object")
        gname = g.get("name", f"g{i}")
        _expect(isinstance(gname, str) and gname, f"{p}.name", "must be a non-empty string")
        _expect(gname not in generator_names, f"{p}.name", f"duplicate generator name {gname!r}")
        for key in ("dom", "cod"):
            _expect(isinstance(g.get(key), str), f"{p}.{key}", "must be an object name")
            _expect(g[key] in by_name, f"{p}.{key}", f"unknown object name {g[key]!r}")
        dom, cod = by_name[g["dom"]], by_name[g["cod"]]
        mat = _parse_matrix(g.get("matrix"), cod.dim * hdim, dom.dim * hdim, f"{p}.matrix")
        generators.append(Arrow(dom, cod, ctx, mat))
        generator_names.append(gname)

    # group and representation
    group = None
    raw_group = doc.get("group")
    if raw_group is not None:
        _expect(isinstance(raw_group, dict), "$.group", "must be an object")
        elements = raw_group.get("elements")
        _expect(
            isinstance(elements, list)
            and elements
            and all(isinstance(e, str) and e for e in elements),
            "$.group.elements",
            "must be a non-empty list of non-empty strings",
        )
        table = raw_group.get("table")
        n = len(elements)
        _expect(
            isinstance(table, list)
            and len(table) == n
            and all(
                isinstance(r, list)
                and len(r) == n
                and all(isinstance(v, int) and not isinstance(v, bool) for v in r)
                for r in table
            ),
            "$.group.table",
            f"must be a {n} x {n} table of element indices",
        )
        try:
            group = FiniteGroup(tuple(elements), tuple(tuple(r) for r in table))
        except ValueError as e:
            raise ScenarioError("$.group", str(e)) from None

    rep = None
    raw_rep = doc.get("rep")
    if raw_rep is not None:
        _expect(group is not None, "$.rep", "requires a group section")
        _expect(
            isinstance(raw_rep, list) and len(raw_rep) == group.order,
            "$.rep",
            "must list one matrix per group element, in element order",
        )
        mats = [
            _parse_matrix(m, hdim, hdim, f"$.rep[{i}]") for i, m in enumerate(raw_rep)
        ]
        try:
            rep = UnitaryRep(group, tuple(mats))
        except ValueError as e:
            raise ScenarioError("$.rep", str(e)) from None

    # causal net
    net = None
    raw_net = doc.get("net")
    if raw_net is not None:
        _expect(isinstance(raw_net, dict), "$.net", "must be an object")
        rb = raw_net.get("bounds")
        _expect(isinstance(rb, dict), "$.net.bounds", "must be an object with t and x ranges")
        spans = {}
        for axis in ("t", "x"):
            rng = rb.get(axis)
            _expect(
                isinstance(rng, list)
                and len(rng) == 2
                and all(isinstance(v, int) and not isinstance(v, bool) for v in rng),
                f"$.net.bounds.{axis}",
                "must be [lo, hi] integers",
            )
            _expect(rng[0] <= rng[1], f"$.net.bounds.{axis}", "lo must not exceed hi")
            spans[axis] = rng
        bounds = LatticeBounds(spans["t"][0], spans["t"][1], spans["x"][0], spans["x"][1])
        raw_cones = raw_net.get("cones")
        _expect(isinstance(raw_cones, list), "$.net.cones", "must be a list")
        assignments = {}
        for i, c in enumerate(raw_cones):
            p = f"$.net.cones[{i}]"
            _expect(isinstance(c, dict), p, "must be an object")
            ends = {}
            for key in ("lo", "hi"):
                v = c.get(key)
                _expect(
                    isinstance(v, list)
                    and len(v) == 2
                    and all(isinstance(u, int) and not isinstance(u, bool) for u in v),
                    f"{p}.{key}",
                    "must be [t, x] integers",
                )
                ends[key] = Event(v[0], v[1])
            try:
                cone = DoubleCone(ends["lo"], ends["hi"])
            except ValueError as e:
                raise ScenarioError(p, str(e)) from None
            _expect(cone not in assignments, p, "duplicate cone")
            cone_gens = c.get("generators", [])
            _expect(isinstance(cone_gens, list), f"{p}.generators", "must be a list of generator names")
            arrows = []
            for j, gname in enumerate(cone_gens):
                _expect(
                    isinstance(gname, str) and gname in generator_names,
                    f"{p}.generators[{j}]",
                    f"unknown generator name {gname!r}",
                )
                arrows.append(generators[generator_names.index(gname)])
            assignments[cone] = tuple(arrows)
        try:
            net = CausalNet(bounds, ctx, assignments)
        except ValueError as e:
            raise ScenarioError("$.net", str(e)) from None

    # commands
    raw_commands = doc.get("commands")
    _expect(
        isinstance(raw_commands, list) and raw_commands,
        "$.commands",
        "must be a non-empty list",
    )
    for i, cmd in enumerate(raw_commands):
        p = f"$.commands[{i}]"
        _expect(isinstance(cmd, str), p, "must be a command name")
        _expect(cmd in COMMANDS, p, f"unknown command {cmd!r}; known: {', '.join(COMMANDS)}")
        if cmd in _NEEDS_GENERATORS:
            _expect(bool(generators), p, f"command {cmd!r} needs a non-empty generators section")
        if cmd in _NEEDS_REP:
            _expect(rep is not None, p, f"command {cmd!r} needs group and rep sections")
        if cmd in _NEEDS_NET:
            _expect(net is not None, p, f"command {cmd!r} needs a net section")

    normalized = {
        "schema": 1,
        "hdim": hdim,
    }
    if tol is not None:
        normalized["tol"] = tol
    if dagger_close:
        normalized["dagger_close"] = True
    normalized["objects"] = [{"name": o.name, "dim": o.dim} for o in objects]
    normalized["universe"] = [o.name for o in uni_objs]
    normalized["generators"] = [
        {
            "name": generator_names[i],
            "dom": g.dom.name,
            "cod": g.cod.name,
            "matrix": _matrix_json(g.mat),
        }
        for i, g in enumerate(generators)
    ]
    if group is not None:
        normalized["group"] = {
            "elements": list(group.elements),
            "table": [list(r) for r in group.table],
        }
    if rep is not None:
        normalized["rep"] = [_matrix_json(m) for m in rep.mats]
    if net is not None:
        normalized["net"] = {
            "bounds": {
                "t": [bounds.tmin, bounds.tmax],
                "x": [bounds.xmin, bounds.xmax],
            },
            "cones": [
                {
                    "lo": [cone.lo.t, cone.lo.x],
                    "hi": [cone.hi.t, cone.hi.x],
                    "generators": [
                        generator_names[generators.index(a)]
                        for a in net.assignments[cone]
                    ],
                }
                for cone in net.cones()
            ],
        }
    normalized["commands"] = list(raw_commands)

    return Scenario(
        ctx=ctx,
        tol=tol,
        dagger_close=dagger_close,
        objects=objects,
        universe=universe,
        generators=generators,
        generator_names=generator_names,
        group=group,
        rep=rep,
        net=net,
        commands=list(raw_commands),
        normalized=normalized,
    )
