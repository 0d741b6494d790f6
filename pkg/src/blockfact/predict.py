"""Closed-form predictions of the monoid invariants from instance data alone.

For a two-element class group with half-factorial components the shape of the
answer is governed by two index sets: ``I`` collects components whose level-one
units admit the same product from both class fibers (squares of the two fibers
intersect), and ``J`` collects exponent-two components with local catenary
degree three.  Everything else is a case table:

* trivial class group: invariants transfer from the ambient product;
* two classes, ``I`` and ``J`` empty: half-factorial, catenary two (zero in the
  fully factorial corner);
* two classes, one ``I`` component: catenary three, distance set {1};
* two classes, more: catenary four, elasticity two, distance set {1, 2};
* three or more classes: catenary between three and the squared Davenport
  constant, minimum distance one, elasticity above one.

When every component has exponent one the count ``k`` of components whose unit
image fills the class group equals ``#I``; the prediction computes both and
insists they agree.  Interval fields are never sharpened beyond what the case
table licenses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import UnsupportedInstanceError
from .tblock import InstanceSpec


@dataclass(frozen=True)
class Interval:
    """Closed interval; ``hi=None`` means unbounded above, ``lo_strict`` makes
    the lower endpoint exclusive.  Exact values have ``lo == hi``."""

    lo: Fraction
    hi: Optional[Fraction]
    lo_strict: bool = False

    @classmethod
    def point(cls, value) -> "Interval":
        v = Fraction(value)
        return cls(v, v)

    @property
    def exact(self) -> Optional[Fraction]:
        if self.hi is not None and self.lo == self.hi and not self.lo_strict:
            return self.lo
        return None

    def __str__(self) -> str:
        if self.exact is not None:
            return frac_str(self.lo)
        left = "(" if self.lo_strict else "["
        hi = "inf" if self.hi is None else frac_str(self.hi)
        return f"{left}{frac_str(self.lo)}, {hi}]"


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DeltaPrediction:
    """Distance-set prediction: an exact set, a superset constraint, or a
    claim about the minimum."""

    kind: str  # "exact" | "subset" | "min-is"
    values: frozenset[int] = frozenset()

    def __str__(self) -> str:
        vals = sorted(self.values)
        if self.kind == "exact":
            return "{" + ", ".join(map(str, vals)) + "}"
        if self.kind == "subset":
            return "subset of {" + ", ".join(map(str, vals)) + "}"
        return f"min = {vals[0]}"


@dataclass(frozen=True)
class Prediction:
    half_factorial: Optional[bool]
    c: Optional[Interval]
    cmon: Optional[Interval]
    rho: Optional[Interval]
    delta: Optional[DeltaPrediction]
    tame: Optional[Interval]
    t_is_2_iff_hf: bool = False
    provenance: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def provenance_map(self) -> dict:
        return dict(self.provenance)


def _require_two_class(inst: InstanceSpec, op: str):
    if inst.group.order != 2:
        raise UnsupportedInstanceError(f"{op} needs a two-element class group")


def _require_half_factorial(inst: InstanceSpec, op: str):
    for i, comp in enumerate(inst.components):
        if not comp.primary.is_half_factorial():
            raise UnsupportedInstanceError(
                f"{op}: component {i} is not half-factorial"
            )


def compute_I(inst: InstanceSpec) -> frozenset[int]:
    """Components whose squared class fibers of the level-one units intersect."""
    _require_two_class(inst, "compute_I")
    _require_half_factorial(inst, "compute_I")
    g = inst._nonzero_class
    zero = inst.group.identity
    out = set()
    for i, comp in enumerate(inst.components):
        units = comp.primary.units
        fiber0 = inst.atom_class_fiber(i, zero)
        fiberg = inst.atom_class_fiber(i, g)
        sq0 = {units.add(a, b) for a in fiber0 for b in fiber0}
        sqg = {units.add(a, b) for a in fiberg for b in fiberg}
        if sq0 & sqg:
            out.add(i)
    return frozenset(out)


def compute_J(inst: InstanceSpec) -> frozenset[int]:
    """Exponent-two components with local catenary degree three."""
    _require_two_class(inst, "compute_J")
    return inst.exponent_two_catenary_three


def compute_k(inst: InstanceSpec) -> int:
    """Number of components whose unit image fills the class group."""
    _require_two_class(inst, "compute_k")
    for i, comp in enumerate(inst.components):
        if comp.primary.exponent != 1:
            raise UnsupportedInstanceError(
                f"compute_k: component {i} has exponent {comp.primary.exponent}, needs 1"
            )
    count = 0
    for i, comp in enumerate(inst.components):
        image = inst.group.subgroup_generated(
            inst.iota_unit(i, gen) for gen in comp.primary.units.generators()
        )
        if len(image) == inst.group.order:
            count += 1
    return count


def _has_relation_witness(inst: InstanceSpec) -> bool:
    """True unless the block monoid is factorial.  A component with at least
    two units is never factorial; a trivial-unit component whose prime maps to
    the nonzero class feeds the doubled-letter relation."""
    zero = inst.group.identity
    for comp in inst.components:
        if comp.primary.units.order >= 2:
            return True
        if comp.iota_p != zero:
            return True
    return False


def predict(inst: InstanceSpec) -> Prediction:
    """Prediction for the instance, by the tightest applicable clause; pure in
    the instance (calling twice gives identical results)."""
    order = inst.group.order
    if order == 1:
        return _predict_trivial_class_group(inst)
    if order == 2:
        if all(c.primary.is_half_factorial() for c in inst.components):
            return _predict_two_classes(inst)
        return Prediction(
            half_factorial=None, c=None, cmon=None, rho=None, delta=None,
            tame=None, t_is_2_iff_hf=False,
            provenance=(("note", "two classes with a non-half-factorial component: "
                                 "outside the prediction tables"),),
        )
    return _predict_large_class_group(inst)


def _predict_trivial_class_group(inst: InstanceSpec) -> Prediction:
    locs = [c.primary.local_invariants() for c in inst.components]
    c_val = max([0] + [loc["catenary"] for loc in locs])
    t_val = max([0] + [loc["tame"] for loc in locs])
    all_hf = all(loc["half_factorial"] for loc in locs)
    why = "trivial class group: block monoid equals the ambient product"
    if all_hf:
        return Prediction(
            half_factorial=True,
            c=Interval.point(c_val),
            cmon=Interval.point(c_val),
            rho=Interval.point(1),
            delta=DeltaPrediction("exact", frozenset()),
            tame=Interval.point(t_val),
            provenance=(
                ("half_factorial", why),
                ("c", why + "; catenary is the max of the local ones"),
                ("cmon", "half-factorial: monotone catenary equals catenary"),
                ("rho", why),
                ("delta", why),
                ("tame", why + "; tame is the max of the local ones"),
            ),
        )
    return Prediction(
        half_factorial=False,
        c=Interval.point(c_val),
        cmon=None,
        rho=None,
        delta=None,
        tame=Interval.point(t_val),
        provenance=(
            ("half_factorial", why),
            ("c", why + " (local values certified over the default range)"),
            ("tame", why),
        ),
    )


def _predict_two_classes(inst: InstanceSpec) -> Prediction:
    zero = inst.group.identity
    I = compute_I(inst)
    J = compute_J(inst)
    s = sum(1 for c in inst.components if c.primary.exponent == 2)
    all_exponent_one = s == 0
    primes_trivial = all(c.iota_p == zero for c in inst.components)
    t_flag = all_exponent_one and primes_trivial
    prov: list[tuple[str, str]] = []

    if all_exponent_one:
        k = compute_k(inst)
        if k != len(I):
            raise RuntimeError(
                f"internal inconsistency: full-image count {k} != #I {len(I)}"
            )
        prov.append(("k", f"exponent-one components with full unit image: {k}; "
                          f"agrees with #I"))

    if not I and not J:
        witness = _has_relation_witness(inst)
        c_val = 2 if witness else 0
        why = "both fiber sets empty: half-factorial two-class case"
        if not witness:
            why += " (fully factorial: no relations at all)"
        tame = None
        if not witness:
            tame = Interval.point(0)
        elif t_flag:
            tame = Interval.point(2)
        prov.extend([
            ("half_factorial", why),
            ("c", why),
            ("cmon", "half-factorial: monotone catenary equals catenary"),
            ("rho", why),
            ("delta", why),
        ])
        if tame is not None:
            prov.append(("tame", "half-factorial with all primes in the zero class: "
                                 "tame degree two" if witness else why))
        return Prediction(
            half_factorial=True,
            c=Interval.point(c_val),
            cmon=Interval.point(c_val),
            rho=Interval.point(1),
            delta=DeltaPrediction("exact", frozenset()),
            tame=tame,
            t_is_2_iff_hf=t_flag,
            provenance=tuple(prov),
        )

    if not I:  # J nonempty: the undecided two-or-three corner
        prov.extend([
            ("c", "no fiber overlap but a catenary-three component: "
                  "catenary two or three, not decided by the table"),
            ("delta", "distance set within {1}"),
            ("rho", "two classes: elasticity at most two"),
        ])
        return Prediction(
            half_factorial=None,
            c=Interval(Fraction(2), Fraction(3)),
            cmon=None,
            rho=Interval(Fraction(1), Fraction(2)),
            delta=DeltaPrediction("subset", frozenset({1})),
            tame=None,
            t_is_2_iff_hf=t_flag,
            provenance=tuple(prov),
        )

    if len(I) == 1:
        rho = Interval.point(Fraction(3, 2)) if all_exponent_one else Interval(
            Fraction(3, 2), Fraction(2)
        )
        cmon = Interval.point(3) if all_exponent_one else None
        why = "exactly one fiber-overlap component"
        prov.extend([
            ("half_factorial", why),
            ("c", why + ": catenary three"),
            ("rho", why + (": elasticity exactly 3/2 (all exponents one)"
                           if all_exponent_one else ": elasticity in [3/2, 2]")),
            ("delta", why + ": distance set {1}"),
        ])
        if cmon is not None:
            prov.append(("cmon", "all exponents one: monotone catenary equals catenary"))
        tame = Interval(Fraction(3), None) if t_flag else None
        if tame is not None:
            prov.append(("tame", "not half-factorial with primes in the zero class: "
                                 "tame degree at least three"))
        return Prediction(
            half_factorial=False,
            c=Interval.point(3),
            cmon=cmon,
            rho=rho,
            delta=DeltaPrediction("exact", frozenset({1})),
            tame=tame,
            t_is_2_iff_hf=t_flag,
            provenance=tuple(prov),
        )

    # two or more fiber-overlap components
    cmon = Interval.point(4) if all_exponent_one else None
    why = "two or more fiber-overlap components"
    prov.extend([
        ("half_factorial", why),
        ("c", why + ": catenary four"),
        ("rho", why + ": elasticity exactly two"),
        ("delta", why + ": distance set {1, 2}"),
    ])
    if cmon is not None:
        prov.append(("cmon", "all exponents one: monotone catenary equals catenary"))
    tame = Interval(Fraction(3), None) if t_flag else None
    if tame is not None:
        prov.append(("tame", "not half-factorial with primes in the zero class: "
                             "tame degree at least three"))
    return Prediction(
        half_factorial=False,
        c=Interval.point(4),
        cmon=cmon,
        rho=Interval.point(2),
        delta=DeltaPrediction("exact", frozenset({1, 2})),
        tame=tame,
        t_is_2_iff_hf=t_flag,
        provenance=tuple(prov),
    )


def _predict_large_class_group(inst: InstanceSpec) -> Prediction:
    d = inst.davenport
    comps_hf = all(c.primary.is_half_factorial() for c in inst.components)
    c_hi = Fraction(d * d) if comps_hf else None
    rho_hi = Fraction(d) if comps_hf else None
    why = "class group of order three or more"
    prov = [
        ("half_factorial", why + ": never half-factorial"),
        ("c", why + ": catenary at least three"
         + (", at most the squared Davenport constant" if comps_hf else "")),
        ("rho", why + ": elasticity exceeds one"
         + (", at most the Davenport constant" if comps_hf else "")),
        ("delta", why + ": minimum distance one"),
    ]
    return Prediction(
        half_factorial=False,
        c=Interval(Fraction(3), c_hi),
        cmon=None,
        rho=Interval(Fraction(1), rho_hi, lo_strict=True),
        delta=DeltaPrediction("min-is", frozenset({1})),
        tame=None,
        provenance=tuple(prov),
    )


def check_hf_criterion_quadratic(inst: InstanceSpec) -> bool:
    """Half-factoriality criterion for the quadratic-order shape: class group
    of order at most two, half-factorial exponent-one components, and every
    unit image trivial."""
    for i, comp in enumerate(inst.components):
        if comp.primary.exponent != 1:
            raise UnsupportedInstanceError(
                f"quadratic criterion: component {i} has exponent != 1"
            )
    if inst.group.order > 2:
        return False
    if not all(c.primary.is_half_factorial() for c in inst.components):
        return False
    identity = inst.group.identity
    for i, comp in enumerate(inst.components):
        for gen in comp.primary.units.generators():
            if inst.iota_unit(i, gen) != identity:
                return False
    return True
