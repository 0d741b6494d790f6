"""Command-line surface: a thin client over the core package.

Exit codes: 0 success, 1 verification violation, 2 malformed instance or
element (diagnostic names the field path), 3 resource cap exceeded.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from . import __version__, schemas
from .abelian import davenport_constant
from .errors import InstanceError, ResourceCapError, UnsupportedInstanceError
from .factorization import (
    catenary_of_element,
    delta_of_element,
    elasticity_of_element,
    length_set,
    monotone_catenary_of_element,
)
from .predict import frac_str, predict
from .tblock import DEFAULT_DEGREE_CAP
from .verify import SuiteConfig, brute_invariants, run_suite


def _emit(rows: list[dict], fmt: str, out: str):
    """Write rows in the requested format; ``-`` streams to stdout."""
    if fmt == "json":
        text = json.dumps(rows if len(rows) != 1 else rows[0], indent=2, sort_keys=True)
    elif fmt == "jsonl":
        text = "\n".join(json.dumps(r, sort_keys=True) for r in rows)
    elif fmt == "csv":
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for r in rows:
            writer.writerow(
                {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()}
            )
        text = buf.getvalue().rstrip("\n")
    else:  # pretty
        lines = []
        for r in rows:
            for k, v in r.items():
                lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
            lines.append("")
        text = "\n".join(lines).rstrip("\n")
    if out == "-":
        click.echo(text)
    else:
        with open(out, "w") as handle:
            handle.write(text + "\n")


def _fail(exc: Exception, code: int):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _load(instance_path: str):
    try:
        return schemas.load_instance(instance_path)
    except InstanceError as exc:
        _fail(exc, 2)


_common = [
    click.option("--cap", default=DEFAULT_DEGREE_CAP, show_default=True,
                 help="degree cap for searches"),
    click.option("--include-zero", is_flag=True, help="keep elements divisible by the prime zero letter"),
    click.option("--format", "fmt", default="pretty", show_default=True,
                 type=click.Choice(["json", "jsonl", "csv", "pretty"])),
    click.option("--out", default="-", show_default=True, help="output path ('-' = stdout)"),
]


def _with_common(fn):
    for option in reversed(_common):
        fn = option(fn)
    return fn


@click.group()
@click.version_option(version=__version__)
def main():
    """Factorization invariants of block monoids: atoms, factorizations,
    exhaustive invariants, closed-form predictions, and the verification
    suite."""


@main.command()
@click.argument("group")
def davenport(group):
    """Davenport constant of a group literal, e.g. '[3,3]'."""
    try:
        moduli = json.loads(group)
        g = schemas.parse_group(moduli if isinstance(moduli, list) else [moduli])
        click.echo(str(davenport_constant(g)))
    except (InstanceError, json.JSONDecodeError) as exc:
        _fail(exc, 2)
    except ResourceCapError as exc:
        _fail(exc, 3)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_with_common
def atoms(instance, cap, include_zero, fmt, out):
    """Print the atom table, flagging closed-form vs generic agreement."""
    inst = _load(instance)
    try:
        generic = inst.atoms_generic()
        try:
            closed = inst.atoms_closed_form()
            agreement = set(generic) == set(closed)
        except UnsupportedInstanceError:
            agreement = None
        rows = [
            {
                "digest": inst.digest(),
                "count": len(generic),
                "closed_form_agrees": agreement,
                "atoms": [schemas.block_element_config(a) for a in generic],
            }
        ]
        _emit(rows, fmt, out)
    except ResourceCapError as exc:
        _fail(exc, 3)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.argument("element")
@_with_common
def factorize(instance, element, cap, include_zero, fmt, out):
    """Factor one element literal: Z(a), L(a), distances, elasticity,
    catenary and monotone catenary degrees."""
    inst = _load(instance)
    try:
        literal = json.loads(element)
    except json.JSONDecodeError as exc:
        _fail(InstanceError("element", f"not valid JSON: {exc}"), 2)
    try:
        a = schemas.parse_block_element(literal, inst)
    except InstanceError as exc:
        _fail(exc, 2)
    try:
        engine = inst.engine()
        zs = engine.factorizations(a)
        atom_docs = [schemas.block_element_config(atom) for atom in engine.atoms]
        rows = [
            {
                "digest": inst.digest(),
                "element": schemas.block_element_config(a),
                "factorizations": [list(z) for z in zs],
                "atom_table": atom_docs,
                "L": list(length_set(zs)),
                "delta": sorted(delta_of_element(zs)),
                "rho": frac_str(elasticity_of_element(zs)),
                "c": catenary_of_element(zs),
                "cmon": monotone_catenary_of_element(zs),
            }
        ]
        _emit(rows, fmt, out)
    except ResourceCapError as exc:
        _fail(exc, 3)


@main.command()
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_with_common
def invariants(instance, cap, include_zero, fmt, out):
    """Monoid-level invariants by exhaustive search up to the degree cap.

    The jsonl format streams one row per element; other formats emit the
    aggregated report, labeled with the cap."""
    inst = _load(instance)
    try:
        keep_rows = fmt == "jsonl"
        brute = brute_invariants(inst, cap=cap, include_zero=include_zero, keep_rows=keep_rows)
        summary = {"digest": inst.digest(), **brute.as_dict()}
        rows = list(brute.rows) if keep_rows else [summary]
        _emit(rows, fmt, out)
    except ResourceCapError as exc:
        _fail(exc, 3)
    except ValueError as exc:
        _fail(exc, 2)


@main.command(name="predict")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@_with_common
def predict_cmd(instance, cap, include_zero, fmt, out):
    """Closed-form prediction with provenance strings."""
    inst = _load(instance)
    pred = predict(inst)
    rows = [
        {
            "digest": inst.digest(),
            "half_factorial": pred.half_factorial,
            "c": str(pred.c) if pred.c else None,
            "cmon": str(pred.cmon) if pred.cmon else None,
            "rho": str(pred.rho) if pred.rho else None,
            "delta": str(pred.delta) if pred.delta else None,
            "t": str(pred.tame) if pred.tame else None,
            "t_is_2_iff_hf": pred.t_is_2_iff_hf,
            "provenance": pred.provenance_map(),
        }
    ]
    _emit(rows, fmt, out)


@main.command()
@click.option("--suite", default="default", show_default=True)
@click.option("--scenario", "scenarios", multiple=True,
              help="restrict to named scenarios (repeatable)")
@_with_common
def verify(suite, scenarios, cap, include_zero, fmt, out):
    """Run the verification suite; exit status 1 if any verdict is a
    violation."""
    config = SuiteConfig(name=suite, cap=cap)
    if scenarios:
        config = SuiteConfig(name=suite, cap=cap, scenarios=tuple(scenarios))
    try:
        reports = run_suite(config)
    except ValueError as exc:
        _fail(exc, 2)
    rows = [r.as_dict() for r in reports]
    if fmt == "pretty":
        for r in reports:
            status = "ok" if not r.violations else "VIOLATION"
            click.echo(f"[{status}] {r.scenario} (cap {r.cap}, {r.seconds:.2f}s)")
            for v in r.verdicts:
                click.echo(f"    {v.invariant}: predicted {v.predicted}, "
                           f"brute {v.brute} -> {v.verdict}")
    else:
        _emit(rows, fmt, out)
    if any(r.violations for r in reports):
        sys.exit(1)


if __name__ == "__main__":
    main()
