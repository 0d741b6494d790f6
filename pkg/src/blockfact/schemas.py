"""Parsing and serialization of the JSON config shapes.

Instance documents look like::

    {"group": [2],
     "components": [{"units": [2], "k": 1, "levels": [["0"]],
                     "iota_p": [1], "iota_units": [[1]]}]}

Element literals are flexible on input: a residue list ``[1, 0]``, a bare int
for rank-one groups, or a comma string ``"1,0"``.  ``levels`` lists the level
sets ``U_0..U_{k-1}``; trailing entries beyond index ``k - 1`` are tolerated
when they spell out the implicit full-unit levels.  Block-monoid elements are
``{"free": [...], "parts": [[n, unit], ...]}``; the free part also accepts a
``{element: multiplicity}`` mapping.  Every parse error names the offending
field path.
"""

from __future__ import annotations

import json
from pathlib import Path

from .abelian import Element, FiniteAbelianGroup
from .errors import InstanceError
from .primary import PrimaryMonoidSpec
from .tblock import BElement, Component, InstanceSpec


def parse_group(obj, path: str = "group") -> FiniteAbelianGroup:
    if not isinstance(obj, list) or not all(isinstance(n, int) for n in obj):
        raise InstanceError(path, "expected a list of cyclic orders, e.g. [3, 3]")
    try:
        return FiniteAbelianGroup(tuple(obj))
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from exc


def parse_element(obj, group: FiniteAbelianGroup, path: str) -> Element:
    rank = len(group.moduli)
    if isinstance(obj, bool):
        raise InstanceError(path, "expected an element literal")
    if isinstance(obj, int):
        residues = [obj]
    elif isinstance(obj, str):
        try:
            residues = [int(part) for part in obj.split(",")] if obj.strip() else []
        except ValueError as exc:
            raise InstanceError(path, f"cannot read element literal {obj!r}") from exc
    elif isinstance(obj, list):
        if not all(isinstance(r, int) and not isinstance(r, bool) for r in obj):
            raise InstanceError(path, "element residues must be integers")
        residues = list(obj)
    else:
        raise InstanceError(path, f"cannot read element literal of type {type(obj).__name__}")
    if len(residues) != rank:
        raise InstanceError(
            path, f"element has {len(residues)} coordinates, group has {rank}"
        )
    return group.element(residues)


def parse_primary(obj, path: str) -> PrimaryMonoidSpec:
    if not isinstance(obj, dict):
        raise InstanceError(path, "expected an object")
    known = {"units", "k", "levels"}
    for key in obj:
        if key not in known:
            raise InstanceError(f"{path}.{key}", "unknown field")
    units = parse_group(obj.get("units", []), f"{path}.units")
    k = obj.get("k", 1)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InstanceError(f"{path}.k", "exponent must be a positive integer")
    raw_levels = obj.get("levels")
    if raw_levels is None:
        if k == 1:
            raw_levels = [[list(units.identity)]]
        else:
            raise InstanceError(f"{path}.levels", f"levels U_0..U_{k - 1} are required")
    if not isinstance(raw_levels, list):
        raise InstanceError(f"{path}.levels", "expected a list of level sets")
    if len(raw_levels) < k:
        raise InstanceError(
            f"{path}.levels", f"need {k} level sets U_0..U_{k - 1}, got {len(raw_levels)}"
        )
    levels = []
    full = frozenset(units.elements())
    for n, raw in enumerate(raw_levels):
        if not isinstance(raw, list):
            raise InstanceError(f"{path}.levels[{n}]", "expected a list of elements")
        level = frozenset(
            parse_element(e, units, f"{path}.levels[{n}][{i}]") for i, e in enumerate(raw)
        )
        if n >= k:
            # tolerated tail: must spell out the implicit full levels
            if level != full:
                raise InstanceError(
                    f"{path}.levels[{n}]",
                    f"level U_{n} beyond the exponent must be the whole unit group",
                )
            continue
        levels.append(level)
    try:
        return PrimaryMonoidSpec(units, k, tuple(levels))
    except ValueError as exc:
        raise InstanceError(f"{path}.levels", str(exc)) from exc


def parse_component(obj, group: FiniteAbelianGroup, path: str) -> Component:
    if not isinstance(obj, dict):
        raise InstanceError(path, "expected an object")
    known = {"units", "k", "levels", "iota_p", "iota_units"}
    for key in obj:
        if key not in known:
            raise InstanceError(f"{path}.{key}", "unknown field")
    primary = parse_primary({k: v for k, v in obj.items() if k in {"units", "k", "levels"}}, path)
    if "iota_p" not in obj:
        raise InstanceError(f"{path}.iota_p", "required field is missing")
    iota_p = parse_element(obj["iota_p"], group, f"{path}.iota_p")
    raw_units = obj.get("iota_units")
    rank = len(primary.units.moduli)
    if raw_units is None:
        raw_units = [list(group.identity)] * rank
    if not isinstance(raw_units, list) or len(raw_units) != rank:
        raise InstanceError(
            f"{path}.iota_units",
            f"expected one image per unit generator ({rank} entries)",
        )
    iota_units = tuple(
        parse_element(u, group, f"{path}.iota_units[{j}]") for j, u in enumerate(raw_units)
    )
    for j, (image, n) in enumerate(zip(iota_units, primary.units.moduli)):
        if group.scale(n, image) != group.identity:
            raise InstanceError(
                f"{path}.iota_units[{j}]",
                f"image order must divide the generator order {n}",
            )
    return Component(primary, iota_p, iota_units)


def parse_instance(obj) -> InstanceSpec:
    if not isinstance(obj, dict):
        raise InstanceError("$", "expected a JSON object")
    known = {"group", "components"}
    for key in obj:
        if key not in known:
            raise InstanceError(key, "unknown field")
    if "group" not in obj:
        raise InstanceError("group", "required field is missing")
    group = parse_group(obj["group"])
    raw_components = obj.get("components", [])
    if not isinstance(raw_components, list):
        raise InstanceError("components", "expected a list")
    components = tuple(
        parse_component(c, group, f"components[{i}]") for i, c in enumerate(raw_components)
    )
    try:
        return InstanceSpec(group, components)
    except ValueError as exc:
        raise InstanceError("components", str(exc)) from exc


def load_instance(path) -> InstanceSpec:
    path = Path(path)
    try:
        with path.open() as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InstanceError(str(path), f"cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(str(path), f"not valid JSON: {exc}") from exc
    return parse_instance(doc)


def parse_block_element(obj, inst: InstanceSpec, path: str = "element") -> BElement:
    if not isinstance(obj, dict):
        raise InstanceError(path, "expected an object with 'free' and 'parts'")
    known = {"free", "parts"}
    for key in obj:
        if key not in known:
            raise InstanceError(f"{path}.{key}", "unknown field")
    raw_free = obj.get("free", [])
    free: list[Element] = []
    if isinstance(raw_free, dict):
        for i, (key, mult) in enumerate(raw_free.items()):
            try:
                literal = json.loads(key)
            except json.JSONDecodeError:
                literal = key
            e = parse_element(literal, inst.group, f"{path}.free[{key!r}]")
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise InstanceError(
                    f"{path}.free[{key!r}]", "multiplicity must be a positive integer"
                )
            free.extend([e] * mult)
    elif isinstance(raw_free, list):
        free = [
            parse_element(e, inst.group, f"{path}.free[{i}]") for i, e in enumerate(raw_free)
        ]
    else:
        raise InstanceError(f"{path}.free", "expected a list or a mapping")
    raw_parts = obj.get("parts", [])
    if not isinstance(raw_parts, list) or len(raw_parts) != len(inst.components):
        raise InstanceError(
            f"{path}.parts",
            f"expected one (valuation, unit) pair per component "
            f"({len(inst.components)} entries)",
        )
    parts = []
    for i, raw in enumerate(raw_parts):
        if not isinstance(raw, list) or len(raw) != 2:
            raise InstanceError(f"{path}.parts[{i}]", "expected [valuation, unit]")
        n, u = raw
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InstanceError(f"{path}.parts[{i}][0]", "valuation must be an integer >= 0")
        unit = parse_element(u, inst.components[i].primary.units, f"{path}.parts[{i}][1]")
        if not inst.components[i].primary.is_member(n, unit):
            raise InstanceError(
                f"{path}.parts[{i}]",
                f"p^{n} with unit {list(unit)} is not a member of component {i}",
            )
        parts.append((n, unit))
    element = (tuple(sorted(free)), tuple(parts))
    if not inst.is_block(element):
        raise InstanceError(path, "the element classes do not sum to zero (not a block)")
    return element


def block_element_config(element: BElement) -> dict:
    free, parts = element
    return {"free": [list(e) for e in free], "parts": [[n, list(u)] for n, u in parts]}


def instance_config(inst: InstanceSpec) -> dict:
    return inst.to_config()
