"""Brute-force invariants, bound checks, and the canned verification suite.

``brute_invariants`` walks every element of the block monoid up to a degree
cap (skipping multiples of the prime zero letter by default, which carry no
arithmetic), materializes each factorization set, and aggregates the
per-element invariants.  The results are certified lower bounds: raising the
cap can only grow them.  ``run_suite`` pits those against the closed-form
predictions on canned scenarios and reports per-invariant verdicts.

Verdict semantics: ``match`` means the brute value equals an exact prediction
(or conclusively witnesses a claim such as "minimum distance one");
``within-interval`` means consistent with the predicted range but not pinned,
including exact predictions the cap has not reached yet; ``violation`` means
the brute value contradicts the prediction; since caps only under-approximate
suprema, any over-shoot is a genuine discrepancy and the report carries a
witness element with its factorization set.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import factorization as fz
from .abelian import FiniteAbelianGroup
from .predict import (
    DeltaPrediction,
    Interval,
    Prediction,
    frac_str,
    predict,
)
from .primary import PrimaryMonoidSpec, primary_spec
from .tblock import DEFAULT_DEGREE_CAP, Component, InstanceSpec


# ---------------------------------------------------------------------------
# brute force


@dataclass
class BruteResult:
    cap: int
    include_zero: bool
    element_count: int
    atom_count: int
    half_factorial: bool
    c: int
    cmon: int
    tame: int
    rho: Fraction
    delta: frozenset[int]
    min_delta: Optional[int]
    rho_hd: Fraction
    witnesses: dict = field(default_factory=dict)
    rows: Optional[tuple] = None

    def as_dict(self) -> dict:
        return {
            "cap": self.cap,
            "hf": self.half_factorial,
            "c": self.c,
            "cmon": self.cmon,
            "t": self.tame,
            "rho": frac_str(self.rho),
            "delta": sorted(self.delta),
            "min_delta": self.min_delta,
            "rho_hd": frac_str(self.rho_hd),
            "elements": self.element_count,
            "atoms": self.atom_count,
        }


def _local_min_length_maps(inst: InstanceSpec, cap: int):
    """Per component, minimum local factorization length of each member; for a
    half-factorial component that is just the valuation."""
    maps = []
    for comp in inst.components:
        spec = comp.primary
        if spec.is_half_factorial():
            maps.append(None)  # min length == valuation
            continue
        engine = spec.engine()
        table = {}
        for member in spec.members(cap):
            zs = engine.factorizations(member)
            table[member] = min(len(z) for z in zs)
        maps.append(table)
    return maps


def brute_invariants(
    inst: InstanceSpec,
    cap: int = DEFAULT_DEGREE_CAP,
    include_zero: bool = False,
    keep_rows: bool = False,
    atoms=None,
) -> BruteResult:
    """Exhaustive invariants over all elements of degree <= ``cap``."""
    if cap < 4:
        raise ValueError("cap must be >= 4 (smallest cap where the two-class "
                         "relation families can appear)")
    if atoms is None:
        atoms = inst.atom_table()
    engine = inst.engine(atoms)
    minlen_maps = _local_min_length_maps(inst, cap)
    elements = inst.enumerate_elements(cap, include_zero=include_zero)

    hf = True
    c_max = cmon_max = tame_max = 0
    rho_max = Fraction(1)
    rho_hd = Fraction(0)
    delta: set[int] = set()
    witnesses: dict = {}
    rows = [] if keep_rows else None

    for a in elements:
        zs = engine.factorizations(a)
        lengths = fz.length_set(zs)
        if a != inst.identity:
            if len(lengths) > 1:
                if hf:
                    witnesses["hf"] = _witness(inst, a, zs)
                hf = False
            ambient_len = len(a[0]) + sum(
                part[0] if table is None else table[part]
                for part, table in zip(a[1], minlen_maps)
            )
            ratio = Fraction(lengths[0], ambient_len)
            if ratio > rho_hd:
                rho_hd = ratio

        d_el = fz.delta_of_element(zs)
        new_gaps = d_el - delta
        if new_gaps:
            witnesses.setdefault("delta", _witness(inst, a, zs))
            delta |= new_gaps

        rho_el = fz.elasticity_of_element(zs)
        if rho_el > rho_max:
            rho_max = rho_el
            witnesses["rho"] = _witness(inst, a, zs)

        c_el = fz.catenary_of_element(zs)
        if c_el > c_max:
            c_max = c_el
            witnesses["c"] = _witness(inst, a, zs)

        if len(lengths) == 1:
            cmon_el = c_el
        else:
            cmon_el = fz.monotone_catenary_of_element(zs)
        if cmon_el > cmon_max:
            cmon_max = cmon_el
            witnesses["cmon"] = _witness(inst, a, zs)

        present = {j for z in zs for j in z}
        for j in present:
            t_el = fz.tame_of_element(zs, j)
            if t_el > tame_max:
                tame_max = t_el
                witnesses["tame"] = _witness(inst, a, zs)

        if rows is not None:
            rows.append(
                {
                    "element": _element_doc(a),
                    "L": list(lengths),
                    "delta": sorted(d_el),
                    "rho": frac_str(rho_el),
                    "c": c_el,
                    "cmon": cmon_el,
                }
            )

    return BruteResult(
        cap=cap,
        include_zero=include_zero,
        element_count=len(elements),
        atom_count=len(atoms),
        half_factorial=hf,
        c=c_max,
        cmon=cmon_max,
        tame=tame_max,
        rho=rho_max,
        delta=frozenset(delta),
        min_delta=min(delta) if delta else None,
        rho_hd=rho_hd,
        witnesses=witnesses,
        rows=tuple(rows) if rows is not None else None,
    )


def _element_doc(b) -> dict:
    return {"free": [list(e) for e in b[0]], "parts": [[n, list(u)] for n, u in b[1]]}


def _witness(inst: InstanceSpec, a, zs) -> dict:
    return {"element": _element_doc(a), "factorizations": [list(z) for z in zs]}


def naive_factorizations(engine: fz.FactorizationEngine, element) -> frozenset:
    """Independent oracle: plain depth-first search trying every atom at every
    step, no memoization, no canonical ordering; duplicates collapse at the
    end."""
    out: set[tuple[int, ...]] = set()
    atoms = engine.atoms

    def dfs(rest, acc):
        if rest == engine.identity:
            out.add(tuple(sorted(acc)))
            return
        for j in range(len(atoms)):
            q = engine._quotient(rest, atoms[j])
            if q is not None:
                acc.append(j)
                dfs(q, acc)
                acc.pop()

    dfs(element, [])
    return frozenset(out)


# ---------------------------------------------------------------------------
# bound checks


@dataclass
class BoundCheck:
    name: str
    lhs: str
    rhs: str
    holds: bool
    applicable: bool = True

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "applicable": self.applicable,
        }


def check_bounds(inst: InstanceSpec, brute: BruteResult) -> list[BoundCheck]:
    """Instantiate the transfer bounds with the computed quantities."""
    out: list[BoundCheck] = []
    comps_hf = all(c.primary.is_half_factorial() for c in inst.components)
    locs = [c.primary.local_invariants() for c in inst.components]
    d_const = inst.davenport

    if comps_hf:
        rho_t = Fraction(1)
        out.append(
            BoundCheck(
                "rho <= D(G) * rho(T)",
                frac_str(brute.rho),
                frac_str(d_const * rho_t),
                brute.rho <= d_const * rho_t,
            )
        )
        out.append(
            BoundCheck(
                "rho(H, D) <= 1",
                frac_str(brute.rho_hd),
                "1",
                brute.rho_hd <= 1,
            )
        )
        c_ambient = max([0] + [loc["catenary"] for loc in locs])
        mixed = max((d_const + 1) * c_ambient // 2, d_const * d_const)
        out.append(
            BoundCheck(
                "c <= max{floor((D+1)/2 * c(D)), D^2}",
                str(brute.c),
                str(mixed),
                brute.c <= mixed,
            )
        )
    else:
        out.append(BoundCheck("rho <= D(G) * rho(T)", "-", "-", True, applicable=False))
        out.append(BoundCheck("rho(H, D) <= 1", "-", "-", True, applicable=False))
        out.append(
            BoundCheck(
                "c <= max{floor((D+1)/2 * c(D)), D^2}", "-", "-", True, applicable=False
            )
        )

    for i, (comp, loc) in enumerate(zip(inst.components, locs)):
        k = comp.primary.exponent
        if comp.primary.is_half_factorial():
            holds = loc["catenary"] <= loc["tame"] <= k + 1
            out.append(
                BoundCheck(
                    f"component[{i}]: c <= t <= k+1",
                    f"c={loc['catenary']}, t={loc['tame']}",
                    str(k + 1),
                    holds,
                )
            )
        else:
            out.append(
                BoundCheck(
                    f"component[{i}]: c <= t <= k+1", "-", "-", True, applicable=False
                )
            )

    if inst.group.order == 2:
        out.append(BoundCheck("c <= 4 (two classes)", str(brute.c), "4", brute.c <= 4))
        out.append(
            BoundCheck("rho <= 2 (two classes)", frac_str(brute.rho), "2", brute.rho <= 2)
        )
    if inst.group.order >= 3 and comps_hf:
        out.append(
            BoundCheck(
                "c <= D(G)^2 (three or more classes)",
                str(brute.c),
                str(d_const * d_const),
                brute.c <= d_const * d_const,
            )
        )
    return out


# ---------------------------------------------------------------------------
# monotone chains for long relation pairs


@dataclass
class LongRelationChainResult:
    pairs_checked: int
    counterexamples: list

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "counterexamples": self.counterexamples,
        }


def check_long_relation_chains(
    inst: InstanceSpec, cap: int = 8, samples: Optional[int] = None
) -> LongRelationChainResult:
    """Every relation pair with the longer side of length five or six must be
    joined by a monotone overlapping chain.  A failure is reported as a
    discrepancy finding, never raised."""
    if inst.group.order != 2:
        raise ValueError("the long-relation chain check needs a two-element class group")
    if any(c.primary.exponent != 1 for c in inst.components):
        raise ValueError("the long-relation chain check needs exponent-one components")
    engine = inst.engine()
    checked = 0
    bad = []
    for a in inst.enumerate_elements(cap, include_zero=False):
        zs = engine.factorizations(a)
        longs = [z for z in zs if 5 <= len(z) <= 6]
        if not longs:
            continue
        for y in longs:
            for x in zs:
                if len(x) > len(y):
                    continue
                checked += 1
                if not fz.monotone_r_chain_exists(zs, x, y):
                    bad.append(
                        {"element": _element_doc(a), "x": list(x), "y": list(y)}
                    )
                if samples is not None and checked >= samples:
                    return LongRelationChainResult(checked, bad)
    return LongRelationChainResult(checked, bad)


# ---------------------------------------------------------------------------
# prediction-vs-brute comparison


@dataclass
class InvariantVerdict:
    invariant: str
    predicted: str
    brute: str
    verdict: str  # "match" | "within-interval" | "violation" | "not-applicable"
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        return {
            "invariant": self.invariant,
            "predicted": self.predicted,
            "brute": self.brute,
            "verdict": self.verdict,
        }


def _compare_interval(name, interval: Optional[Interval], value, witness) -> InvariantVerdict:
    value = Fraction(value)
    if interval is None:
        return InvariantVerdict(name, "-", frac_str(value), "not-applicable")
    if interval.hi is not None and value > interval.hi:
        return InvariantVerdict(name, str(interval), frac_str(value), "violation", witness)
    if interval.lo_strict and value <= interval.lo:
        # sup-type invariants only grow with the cap: not yet witnessed
        return InvariantVerdict(name, str(interval), frac_str(value), "within-interval")
    if interval.exact is not None and value == interval.exact:
        return InvariantVerdict(name, str(interval), frac_str(value), "match")
    return InvariantVerdict(name, str(interval), frac_str(value), "within-interval")


def _compare_delta(pred: Optional[DeltaPrediction], delta: frozenset, witness) -> InvariantVerdict:
    brute = "{" + ", ".join(map(str, sorted(delta))) + "}"
    if pred is None:
        return InvariantVerdict("delta", "-", brute, "not-applicable")
    if pred.kind == "exact":
        if delta == pred.values:
            return InvariantVerdict("delta", str(pred), brute, "match")
        if delta <= pred.values:
            return InvariantVerdict("delta", str(pred), brute, "within-interval")
        return InvariantVerdict("delta", str(pred), brute, "violation", witness)
    if pred.kind == "subset":
        if delta <= pred.values:
            return InvariantVerdict("delta", str(pred), brute, "match")
        return InvariantVerdict("delta", str(pred), brute, "violation", witness)
    # min-is: caps under-approximate, so a missing or larger minimum is only
    # "not yet witnessed"; the claim can never be contradicted from below
    if delta and min(delta) == min(pred.values):
        return InvariantVerdict("delta", str(pred), brute, "match")
    return InvariantVerdict("delta", str(pred), brute, "within-interval")


def compare_prediction(pred: Prediction, brute: BruteResult) -> list[InvariantVerdict]:
    out = []
    if pred.half_factorial is None:
        out.append(InvariantVerdict("hf", "-", str(brute.half_factorial), "not-applicable"))
    elif pred.half_factorial == brute.half_factorial:
        out.append(InvariantVerdict("hf", str(pred.half_factorial), str(brute.half_factorial), "match"))
    elif pred.half_factorial is False and brute.half_factorial:
        # a multi-length element may live beyond the cap
        out.append(InvariantVerdict("hf", "False", "True", "within-interval"))
    else:
        out.append(
            InvariantVerdict("hf", "True", "False", "violation", brute.witnesses.get("hf"))
        )
    out.append(_compare_interval("c", pred.c, brute.c, brute.witnesses.get("c")))
    out.append(_compare_interval("cmon", pred.cmon, brute.cmon, brute.witnesses.get("cmon")))
    out.append(_compare_interval("rho", pred.rho, brute.rho, brute.witnesses.get("rho")))
    out.append(_compare_delta(pred.delta, brute.delta, brute.witnesses.get("delta")))
    out.append(_compare_interval("t", pred.tame, brute.tame, brute.witnesses.get("tame")))
    return out


# ---------------------------------------------------------------------------
# canned instances


def component(
    units_moduli,
    iota_p,
    iota_units,
    exponent: int = 1,
    levels=None,
) -> Component:
    spec = primary_spec(units_moduli, exponent=exponent, levels=levels)
    return Component(spec, tuple(iota_p), tuple(tuple(u) for u in iota_units))


def two_class_instance(*components: Component) -> InstanceSpec:
    return InstanceSpec(FiniteAbelianGroup((2,)), tuple(components))


def block_instance(moduli) -> InstanceSpec:
    return InstanceSpec(FiniteAbelianGroup(tuple(moduli)), ())


def full_image_component(iota_p=(1,)) -> Component:
    """Two-element units mapping onto the class group."""
    return component((2,), iota_p, [(1,)])


def trivial_image_component(units=(2,), iota_p=(0,)) -> Component:
    return component(units, iota_p, [(0,)] * len(units))


def canned_k1() -> InstanceSpec:
    """One full-image component with its prime in the nonzero class; the
    abstract shape of the inert-conductor quadratic example with elasticity
    exactly 3/2."""
    return two_class_instance(full_image_component(iota_p=(1,)))


def canned_k(k: int) -> InstanceSpec:
    comps = [full_image_component(iota_p=((1,) if i == 0 else (0,))) for i in range(k)]
    if not comps:
        comps = [trivial_image_component()]
    return two_class_instance(*comps)


def sharp_local_spec(k: int) -> PrimaryMonoidSpec:
    """Units C_k + C_k with level one holding the identity and the two
    generators; exponent k - 1.  Local catenary degree comes out to k."""
    if k < 2:
        raise ValueError("the sharp example needs k >= 2")
    units = (k, k)
    if k == 2:
        return primary_spec(units, exponent=1)
    levels = [[(0, 0), (1, 0), (0, 1)]] * (k - 2)
    return primary_spec(units, exponent=k - 1, levels=levels)


def exponent_two_component_c3(iota_p=(0,)) -> Component:
    """Exponent-two component (units C3, level one {1, w}) with local catenary
    degree three."""
    return component((3,), iota_p, [(0,)], exponent=2, levels=[[(0,), (1,)]])


def exponent_two_component_c2(iota_p=(0,)) -> Component:
    """Exponent-two component (units C4, level one {1, i, i^2}) with local
    catenary degree two."""
    return component((4,), iota_p, [(0,)], exponent=2, levels=[[(0,), (1,), (2,)]])


def two_class_family() -> list[tuple[str, InstanceSpec, int]]:
    """Two-class, exponent-one instances over assorted unit groups covering
    full-image counts k = 0..3."""
    c2_full_g = component((2,), (1,), [(1,)])
    c2_full_0 = component((2,), (0,), [(1,)])
    c2_triv_0 = component((2,), (0,), [(0,)])
    c2_triv_g = component((2,), (1,), [(0,)])
    c4_full_0 = component((4,), (0,), [(1,)])
    c4_full_g = component((4,), (1,), [(1,)])
    c4_triv_g = component((4,), (1,), [(0,)])
    c22_full_0 = component((2, 2), (0,), [(1,), (0,)])
    c22_full_g = component((2, 2), (1,), [(1,), (1,)])
    c22_triv_0 = component((2, 2), (0,), [(0,), (0,)])
    c1_g = component((), (1,), [])

    fam = [
        ("k0-c2-zero-prime", two_class_instance(c2_triv_0), 0),
        ("k0-c2-nonzero-prime", two_class_instance(c2_triv_g), 0),
        ("k0-c4-nonzero-prime", two_class_instance(c4_triv_g), 0),
        ("k0-c22-pair", two_class_instance(c22_triv_0, c2_triv_g), 0),
        ("k1-c2-nonzero-prime", canned_k1(), 1),
        ("k1-c2-zero-prime", two_class_instance(c2_full_0), 1),
        ("k1-c4", two_class_instance(c4_full_0), 1),
        ("k1-c22-padded", two_class_instance(c22_full_0, c2_triv_g), 1),
        ("k2-c2-c2", two_class_instance(c2_full_g, c2_full_g), 2),
        ("k2-c2-c4", two_class_instance(c2_full_0, c4_full_g), 2),
        ("k2-c22-c2-padded", two_class_instance(c22_full_g, c2_full_0, c1_g), 2),
        ("k3-c2-c2-c2", two_class_instance(c2_full_g, c2_full_0, c2_full_0), 3),
        ("k3-c2-c4-c22", two_class_instance(c2_full_0, c4_full_0, c22_full_g), 3),
    ]
    return fam


def tame_scenario_instance(r: int = 2) -> InstanceSpec:
    """Half-factorial two-class instance with every prime and every unit in
    the zero class; its tame degree is exactly two."""
    comps = [trivial_image_component((2,), (0,)) for _ in range(r)]
    return two_class_instance(*comps)


def equivalence_sweep() -> list[tuple[str, InstanceSpec]]:
    """Exponent-one instances with primes in the zero class, half-factorial
    and not, for the catenary/monotone/tame equivalences."""
    out = [
        ("hf-single", two_class_instance(trivial_image_component((2,), (0,)))),
        ("hf-pair", tame_scenario_instance(2)),
        ("hf-c22", two_class_instance(trivial_image_component((2, 2), (0,)))),
        ("nonhf-k1", two_class_instance(component((2,), (0,), [(1,)]))),
        (
            "nonhf-k2",
            two_class_instance(
                component((2,), (0,), [(1,)]), component((4,), (0,), [(1,)])
            ),
        ),
    ]
    return out


def closed_form_sweep() -> list[tuple[str, InstanceSpec]]:
    """Two-class instances for the closed-form-vs-generic atom comparison."""
    singles = []
    unit_menu = [
        ((), []),
        ((2,), [[(0,)], [(1,)]]),
        ((3,), [[(0,)]]),
        ((4,), [[(0,)], [(1,)]]),
        ((2, 2), [[(0,), (0,)], [(1,), (0,)], [(1,), (1,)]]),
    ]
    for units, image_menu in unit_menu:
        images = image_menu or [[]]
        for images_choice in images:
            for iota_p in [(0,), (1,)]:
                singles.append(component(units, iota_p, images_choice))
    out = [
        ("block-only", two_class_instance()),
    ]
    for idx, comp in enumerate(singles):
        out.append((f"single-{idx}", two_class_instance(comp)))
    for idx2, (a, b) in enumerate(
        [
            (singles[1], singles[2]),
            (singles[2], singles[3]),
            (singles[1], singles[8]),
            (singles[3], singles[10]),
        ]
    ):
        out.append((f"pair-{idx2}", two_class_instance(a, b)))
    out.append(
        ("exp2-c3", two_class_instance(exponent_two_component_c3()))
    )
    out.append(
        ("exp2-c4", two_class_instance(exponent_two_component_c2((1,))))
    )
    out.append(
        (
            "mixed-exp",
            two_class_instance(full_image_component((0,)), exponent_two_component_c3()),
        )
    )
    return out


# ---------------------------------------------------------------------------
# the suite


@dataclass
class SuiteConfig:
    name: str = "default"
    cap: int = DEFAULT_DEGREE_CAP
    scenarios: tuple[str, ...] = (
        "sharp-local",
        "two-class-family",
        "small-class-groups",
        "closed-form-atoms",
        "tame-degree",
        "equivalence-sweep",
        "long-relation-chains",
        "oracle-equivalence",
    )
    parallel: bool = True


@dataclass
class VerificationReport:
    scenario: str
    digest: str
    cap: int
    verdicts: list[InvariantVerdict] = field(default_factory=list)
    bounds: list[BoundCheck] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def violations(self) -> list[InvariantVerdict]:
        out = [v for v in self.verdicts if v.verdict == "violation"]
        out.extend(
            InvariantVerdict(b.name, b.rhs, b.lhs, "violation")
            for b in self.bounds
            if b.applicable and not b.holds
        )
        return out

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "digest": self.digest,
            "cap": self.cap,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "bounds": [b.as_dict() for b in self.bounds],
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
            "ok": not self.violations,
        }


def _timed(fn: Callable[[], VerificationReport]) -> VerificationReport:
    start = time.perf_counter()
    report = fn()
    report.seconds = time.perf_counter() - start
    return report


def _report_instance(name: str, inst: InstanceSpec, cap: int) -> VerificationReport:
    pred = predict(inst)
    brute = brute_invariants(inst, cap=cap)
    verdicts = compare_prediction(pred, brute)
    bounds = check_bounds(inst, brute)
    return VerificationReport(
        scenario=name,
        digest=inst.digest(),
        cap=cap,
        verdicts=verdicts,
        bounds=bounds,
        notes={"brute": brute.as_dict()},
    )


def _scenario_sharp_local(config: SuiteConfig) -> list[VerificationReport]:
    reports = []
    for k in (2, 3):
        spec = sharp_local_spec(k)
        loc = spec.local_invariants()
        verdict = "match" if loc["catenary"] == k else "violation"
        reports.append(
            VerificationReport(
                scenario=f"sharp-local-k{k}",
                digest=f"local-units-{spec.units.moduli}",
                cap=2 * spec.exponent + 2,
                verdicts=[
                    InvariantVerdict("local-c", str(k), str(loc["catenary"]), verdict)
                ],
                notes={"local": loc},
            )
        )
    return reports


def _scenario_two_class_family(config: SuiteConfig) -> list[VerificationReport]:
    reports = []
    for name, inst, k in two_class_family():
        report = _report_instance(f"two-class-family/{name}", inst, config.cap)
        expected_c = 2 + min(2, k)
        brute = report.notes["brute"]
        formula_ok = (
            brute["c"] == expected_c
            and brute["cmon"] == expected_c
            and Fraction(*_parsefrac_str(brute["rho"])) == Fraction(expected_c, 2)
            and brute["delta"] == list(range(1, expected_c - 1))
        )
        report.verdicts.append(
            InvariantVerdict(
                "two-class-formula",
                f"c=cmon={expected_c}, rho={frac_str(Fraction(expected_c, 2))}, "
                f"delta=[1,{expected_c - 2}]",
                f"c={brute['c']}, cmon={brute['cmon']}, rho={brute['rho']}, "
                f"delta={brute['delta']}",
                "match" if formula_ok else "violation",
            )
        )
        reports.append(report)
    return reports


def _parsefrac_str(text: str) -> tuple[int, int]:
    if "/" in text:
        a, b = text.split("/")
        return int(a), int(b)
    return int(text), 1


def _scenario_small_class_groups(config: SuiteConfig) -> list[VerificationReport]:
    reports = []
    one = InstanceSpec(
        FiniteAbelianGroup((1,)), (component((2,), (0,), [(0,)]),)
    )
    reports.append(_report_instance("class-group-1", one, config.cap))
    for moduli in [(3,), (4,), (2, 2)]:
        inst = block_instance(moduli)
        reports.append(
            _report_instance(f"class-group-{'x'.join(map(str, moduli))}", inst, config.cap)
        )
    return reports


def _scenario_closed_form_atoms(config: SuiteConfig) -> list[VerificationReport]:
    mismatches = []
    total = 0
    for name, inst in closed_form_sweep():
        total += 1
        if set(inst.atoms_generic()) != set(inst.atoms_closed_form()):
            mismatches.append(name)
    verdict = "match" if not mismatches else "violation"
    return [
        VerificationReport(
            scenario="closed-form-atoms",
            digest=f"sweep-{total}-instances",
            cap=0,
            verdicts=[
                InvariantVerdict(
                    "atom-set-equality", "generic == closed form", str(mismatches or "ok"), verdict
                )
            ],
            notes={"instances": total, "mismatches": mismatches},
        )
    ]


def _scenario_tame_degree(config: SuiteConfig) -> list[VerificationReport]:
    inst = tame_scenario_instance(2)
    brute = brute_invariants(inst, cap=config.cap)
    verdict = "match" if brute.tame == 2 else "violation"
    return [
        VerificationReport(
            scenario="tame-degree",
            digest=inst.digest(),
            cap=config.cap,
            verdicts=[InvariantVerdict("t", "2", str(brute.tame), verdict)],
            notes={"brute": brute.as_dict()},
        )
    ]


def _scenario_equivalence_sweep(config: SuiteConfig) -> list[VerificationReport]:
    bad = []
    rows = {}
    for name, inst in equivalence_sweep():
        brute = brute_invariants(inst, cap=min(config.cap, 6))
        flags = {
            "cmon<=2": brute.cmon <= 2,
            "c<=2": brute.c <= 2,
            "hf": brute.half_factorial,
            "t<=2": brute.tame <= 2,
        }
        rows[name] = flags
        if len(set(flags.values())) != 1:
            bad.append(name)
    verdict = "match" if not bad else "violation"
    return [
        VerificationReport(
            scenario="equivalence-sweep",
            digest=f"sweep-{len(rows)}-instances",
            cap=min(config.cap, 6),
            verdicts=[
                InvariantVerdict(
                    "cmon<=2 iff c<=2 iff hf iff t<=2",
                    "all equivalent",
                    str(bad or "ok"),
                    verdict,
                )
            ],
            notes={"rows": rows},
        )
    ]


def _scenario_long_relation_chains(config: SuiteConfig) -> list[VerificationReport]:
    reports = []
    for name, inst in [("k1", canned_k(1)), ("k2", canned_k(2))]:
        result = check_long_relation_chains(inst, cap=config.cap)
        verdict = "match" if result.ok else "violation"
        reports.append(
            VerificationReport(
                scenario=f"long-relation-chains/{name}",
                digest=inst.digest(),
                cap=config.cap,
                verdicts=[
                    InvariantVerdict(
                        "monotone chain for long pairs",
                        "no counterexamples",
                        f"{result.pairs_checked} pairs, "
                        f"{len(result.counterexamples)} failures",
                        verdict,
                    )
                ],
                notes=result.as_dict() if not result.ok else {"pairs": result.pairs_checked},
            )
        )
    return reports


def _scenario_oracle_equivalence(config: SuiteConfig) -> list[VerificationReport]:
    reports = []
    pinned = [
        ("k1", canned_k1()),
        (
            "mixed",
            two_class_instance(
                component((2,), (0,), [(1,)]), component((2,), (1,), [(0,)])
            ),
        ),
    ]
    for name, inst in pinned:
        engine = inst.engine()
        bad = 0
        total = 0
        for a in inst.enumerate_elements(6, include_zero=False):
            total += 1
            if frozenset(engine.factorizations(a)) != naive_factorizations(engine, a):
                bad += 1
        verdict = "match" if bad == 0 else "violation"
        reports.append(
            VerificationReport(
                scenario=f"oracle-equivalence/{name}",
                digest=inst.digest(),
                cap=6,
                verdicts=[
                    InvariantVerdict(
                        "memoized == naive depth-first",
                        "equal factorization sets",
                        f"{total} elements, {bad} mismatches",
                        verdict,
                    )
                ],
            )
        )
    return reports


_SCENARIOS: dict[str, Callable[[SuiteConfig], list[VerificationReport]]] = {
    "sharp-local": _scenario_sharp_local,
    "two-class-family": _scenario_two_class_family,
    "small-class-groups": _scenario_small_class_groups,
    "closed-form-atoms": _scenario_closed_form_atoms,
    "tame-degree": _scenario_tame_degree,
    "equivalence-sweep": _scenario_equivalence_sweep,
    "long-relation-chains": _scenario_long_relation_chains,
    "oracle-equivalence": _scenario_oracle_equivalence,
}


def run_suite(config: SuiteConfig | None = None) -> list[VerificationReport]:
    """Run the canned scenarios; failures are collected per report, not
    raised.  Scenarios are independent and run on a small thread pool; the
    output order is the configured order regardless."""
    config = config or SuiteConfig()
    unknown = [s for s in config.scenarios if s not in _SCENARIOS]
    if unknown:
        raise ValueError(f"unknown scenarios: {unknown}")

    def run_one(name: str) -> list[VerificationReport]:
        start = time.perf_counter()
        reports = _SCENARIOS[name](config)
        elapsed = time.perf_counter() - start
        for r in reports:
            if not r.seconds:
                r.seconds = elapsed / len(reports)
        return reports

    if config.parallel and len(config.scenarios) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(config.scenarios))) as pool:
            chunks = list(pool.map(run_one, config.scenarios))
    else:
        chunks = [run_one(name) for name in config.scenarios]
    return [report for chunk in chunks for report in chunk]
