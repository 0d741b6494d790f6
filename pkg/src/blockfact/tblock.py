"""Block monoids over a finite abelian group with finitely primary components.

The ambient monoid is ``F(G) x D_1 x ... x D_r``: a free part over the whole
class group (one letter per class) times one reduced finitely primary
component per index.  An element carries a sorted free multiset plus a
``(valuation, unit)`` pair per component; its class is ``sigma(free) + sum of
iota_i(part_i)`` where ``iota_i(p^n u) = n*iota(p_i) + iota_i(u)`` and the
unit homomorphism is given on each cyclic generator of the component's unit
group.  The block monoid collects the elements of class zero.  It is a
saturated submonoid of the ambient product, so divisibility inside it is
ambient componentwise divisibility (with component membership of the
quotient); the block condition on the quotient comes for free.

Atom enumeration is exhaustive: an atom is a product of at most D(G) ambient
atoms, which bounds its degree by ``D(G) * max atom valuation``, and a
degree-bounded element is an atom exactly when no smaller non-identity element
of the block monoid divides it.  For a two-element class group there is also
the closed-form atom list (five families), kept strictly independent of the
generic search so the two can be compared.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement

from .abelian import Element, FiniteAbelianGroup, davenport_constant, sigma
from .errors import ResourceCapError, UnsupportedInstanceError
from .primary import PrimaryElement, PrimaryMonoidSpec
from . import factorization as fz

BElement = tuple[tuple[Element, ...], tuple[PrimaryElement, ...]]

DEFAULT_DEGREE_CAP = 8
HARD_DEGREE_CAP = 32


@dataclass(frozen=True)
class Component:
    primary: PrimaryMonoidSpec
    iota_p: Element
    iota_units: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "iota_p", tuple(self.iota_p))
        object.__setattr__(
            self, "iota_units", tuple(tuple(u) for u in self.iota_units)
        )


@dataclass(frozen=True)
class InstanceSpec:
    group: FiniteAbelianGroup
    components: tuple[Component, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        G = self.group
        exponents = []
        for idx, comp in enumerate(self.components):
            if not G.contains(comp.iota_p):
                raise ValueError(f"component {idx}: iota_p {comp.iota_p} is not in the group")
            units = comp.primary.units
            if len(comp.iota_units) != len(units.moduli):
                raise ValueError(
                    f"component {idx}: iota_units needs one image per unit generator"
                )
            for j, (image, n) in enumerate(zip(comp.iota_units, units.moduli)):
                if not G.contains(image):
                    raise ValueError(
                        f"component {idx}: iota_units[{j}] {image} is not in the group"
                    )
                if G.scale(n, image) != G.identity:
                    raise ValueError(
                        f"component {idx}: iota_units[{j}] has order not dividing {n}, "
                        f"so it does not define a homomorphism"
                    )
            if comp.primary.exponent > 2:
                raise ValueError(
                    f"component {idx}: exponent {comp.primary.exponent} is out of range; "
                    f"components must have exponent 1 or 2"
                )
            exponents.append(comp.primary.exponent)
        if exponents != sorted(exponents):
            raise ValueError("components must be listed exponent-1 first, exponent-2 after")

    # -- basic element algebra ------------------------------------------------

    @cached_property
    def identity(self) -> BElement:
        return ((), tuple((0, c.primary.units.identity) for c in self.components))

    def degree(self, b: BElement) -> int:
        free, parts = b
        return len(free) + sum(n for n, _ in parts)

    def iota_unit(self, i: int, u: Element) -> Element:
        comp = self.components[i]
        total = self.group.identity
        for coeff, image in zip(u, comp.iota_units):
            total = self.group.add(total, self.group.scale(coeff, image))
        return total

    def iota_value(self, i: int, part: PrimaryElement) -> Element:
        n, u = part
        comp = self.components[i]
        return self.group.add(self.group.scale(n, comp.iota_p), self.iota_unit(i, u))

    def element_class(self, b: BElement) -> Element:
        free, parts = b
        total = sigma(self.group, free)
        for i, part in enumerate(parts):
            total = self.group.add(total, self.iota_value(i, part))
        return total

    def is_block(self, b: BElement) -> bool:
        return self.element_class(b) == self.group.identity

    def is_member(self, b: BElement) -> bool:
        """Structural membership in the block monoid: free letters in G, parts
        in their components, and total class zero."""
        free, parts = b
        if len(parts) != len(self.components):
            return False
        if any(not self.group.contains(e) for e in free):
            return False
        if tuple(sorted(free)) != free:
            return False
        for comp, (n, u) in zip(self.components, parts):
            if not comp.primary.is_member(n, u):
                return False
        return self.is_block(b)

    def make_element(self, free, parts) -> BElement:
        b = (tuple(sorted(free)), tuple((int(n), tuple(u)) for n, u in parts))
        if not self.is_member(b):
            raise ValueError("not an element of the block monoid")
        return b

    def multiply(self, a: BElement, b: BElement) -> BElement:
        free = tuple(sorted(a[0] + b[0]))
        parts = tuple(
            comp.primary.multiply(x, y)
            for comp, x, y in zip(self.components, a[1], b[1])
        )
        return (free, parts)

    def quotient(self, b: BElement, a: BElement) -> BElement | None:
        """b / a when it exists in the block monoid.  Saturation makes this the
        ambient componentwise quotient plus component membership; the block
        condition on the quotient is then automatic."""
        remaining = list(b[0])
        for e in a[0]:
            try:
                remaining.remove(e)
            except ValueError:
                return None
        parts = []
        for comp, big, small in zip(self.components, b[1], a[1]):
            q = comp.primary.quotient(big, small)
            if q is None:
                return None
            parts.append(q)
        return (tuple(remaining), tuple(parts))

    def divides(self, a: BElement, b: BElement) -> bool:
        return self.quotient(b, a) is not None

    def sort_key(self, b: BElement):
        return (self.degree(b), b)

    # -- enumeration ----------------------------------------------------------

    @cached_property
    def zero_letter(self) -> Element:
        return self.group.identity

    def enumerate_elements(
        self, max_degree: int, include_zero: bool = True
    ) -> tuple[BElement, ...]:
        """Every element of degree <= ``max_degree``, each exactly once, sorted
        by (degree, free part, parts).  ``include_zero=False`` drops elements
        divisible by the prime zero-letter, which carry no arithmetic."""
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if max_degree > HARD_DEGREE_CAP:
            raise ResourceCapError(f"degree cap {max_degree} exceeds {HARD_DEGREE_CAP}")
        letters = [
            e
            for e in self.group.elements()
            if include_zero or e != self.zero_letter
        ]
        choices = []
        for comp in self.components:
            per = [(0, comp.primary.units.identity)]
            for n in range(1, max_degree + 1):
                per.extend((n, u) for u in sorted(comp.primary.level(n)))
            choices.append(per)

        out = []
        zero = self.group.identity

        def fill_parts(i, acc, used, cls):
            if i == len(choices):
                budget = max_degree - used
                for size in range(budget + 1):
                    for free in combinations_with_replacement(letters, size):
                        if self.group.add(sigma(self.group, free), cls) == zero:
                            out.append((free, tuple(acc)))
                return
            for part in choices[i]:
                n = part[0]
                if used + n > max_degree:
                    continue
                acc.append(part)
                fill_parts(i + 1, acc, used + n, self.group.add(cls, self.iota_value(i, part)))
                acc.pop()

        fill_parts(0, [], 0, zero)
        return tuple(sorted(out, key=self.sort_key))

    # -- atoms ----------------------------------------------------------------

    @cached_property
    def davenport(self) -> int:
        return davenport_constant(self.group)

    def atoms_generic(self) -> tuple[BElement, ...]:
        """Atoms by exhaustive divisor search over the provably sufficient
        degree range ``D(G) * max atom valuation``."""
        max_val = max(
            [1] + [c.primary.max_atom_valuation() for c in self.components]
        )
        bound = self.davenport * max_val
        candidates = [
            b
            for b in self.enumerate_elements(bound, include_zero=True)
            if b != self.identity
        ]
        atoms = []
        for b in candidates:
            deg = self.degree(b)
            if any(
                self.degree(c) < deg and self.divides(c, b)
                for c in candidates
            ):
                continue
            atoms.append(b)
        return tuple(atoms)

    @cached_property
    def _nonzero_class(self) -> Element:
        if self.group.order != 2:
            raise UnsupportedInstanceError("this operation needs a two-element class group")
        return next(e for e in self.group.elements() if e != self.group.identity)

    def unit_level_one(self, i: int) -> frozenset[Element]:
        return self.components[i].primary.level(1)

    def atom_class_fiber(self, i: int, cls: Element) -> frozenset[Element]:
        """Units eps of U_1 whose valuation-one member has class ``cls``."""
        return frozenset(
            eps
            for eps in self.unit_level_one(i)
            if self.iota_value(i, (1, eps)) == cls
        )

    def _single_part(self, i: int, part: PrimaryElement, free=()) -> BElement:
        parts = [(0, c.primary.units.identity) for c in self.components]
        parts[i] = part
        return (tuple(sorted(free)), tuple(parts))

    def atoms_closed_form(self) -> tuple[BElement, ...]:
        """The five atom families of the two-class case, materialized:
        the zero letter and the doubled nonzero letter; class-zero
        valuation-one members; class-g valuation-one members paired with a
        free g; valuation-two members whose unit avoids products of two
        class-zero level-one units; and cross-component pairs of class-g
        valuation-one members."""
        g = self._nonzero_class
        zero = self.group.identity
        for idx, comp in enumerate(self.components):
            if not comp.primary.is_half_factorial():
                raise UnsupportedInstanceError(
                    f"component {idx} is not half-factorial; the closed-form atom "
                    f"list does not apply"
                )
        out = {
            ((zero,), self.identity[1]),
            ((g, g), self.identity[1]),
        }
        for i, comp in enumerate(self.components):
            for eps in self.unit_level_one(i):
                if self.iota_value(i, (1, eps)) == zero:
                    out.add(self._single_part(i, (1, eps)))
                else:
                    out.add(self._single_part(i, (1, eps), free=(g,)))
            kernel_fiber = self.atom_class_fiber(i, zero)
            excluded = {
                comp.primary.units.add(u, v)
                for u in kernel_fiber
                for v in kernel_fiber
            }
            for eps in comp.primary.units.elements():
                if self.iota_value(i, (2, eps)) != zero:
                    continue
                if eps in excluded:
                    continue
                if not comp.primary.is_member(2, eps):
                    continue
                out.add(self._single_part(i, (2, eps)))
        for i in range(len(self.components)):
            fiber_i = self.atom_class_fiber(i, g)
            for j in range(i + 1, len(self.components)):
                fiber_j = self.atom_class_fiber(j, g)
                for eps_i in fiber_i:
                    for eps_j in fiber_j:
                        b = self._single_part(i, (1, eps_i))
                        parts = list(b[1])
                        parts[j] = (1, eps_j)
                        out.add(((), tuple(parts)))
        return tuple(sorted(out, key=self.sort_key))

    def atom_table(self) -> tuple[BElement, ...]:
        return self.atoms_generic()

    def engine(self, atoms=None) -> fz.FactorizationEngine:
        if atoms is None:
            atoms = self.atom_table()
        return fz.FactorizationEngine(self.identity, atoms, self.quotient, self.multiply)

    # -- relation machinery ---------------------------------------------------

    def atom_kind(self, b: BElement):
        """Structural kind of an atom in the two-class case: zero letter,
        doubled letter, single valuation-one part of class zero or g (with the
        free g), single valuation-two part, or a cross-component pair."""
        g = self._nonzero_class
        free, parts = b
        nz = [(i, part) for i, part in enumerate(parts) if part[0] > 0]
        if not nz:
            if free == (self.zero_letter,):
                return ("Z0",)
            if free == (g, g):
                return ("GG",)
            return None
        if len(nz) == 1:
            i, (n, _) = nz[0]
            if n == 1 and free == ():
                return ("P0", i)
            if n == 1 and free == (g,):
                return ("PG", i)
            if n == 2 and free == ():
                return ("P2", i)
            return None
        if len(nz) == 2 and free == () and all(p[0] == 1 for _, p in nz):
            return ("MX", nz[0][0], nz[1][0])
        return None

    @cached_property
    def exponent_two_catenary_three(self) -> frozenset[int]:
        """Indices of exponent-two components whose local catenary degree is 3."""
        out = set()
        for i, comp in enumerate(self.components):
            if comp.primary.exponent == 2:
                if comp.primary.local_invariants()["catenary"] == 3:
                    out.add(i)
        return frozenset(out)

    def relation_atoms(
        self, atoms=None, max_right_len: int = 4
    ) -> tuple[fz.RelationPair, ...]:
        return fz.relation_atoms(self.engine(atoms), max_right_len=max_right_len)

    def tame_of_pair(self, a: BElement, atom_id: int, atoms=None) -> int:
        """Worst rewriting distance from a factorization of ``a`` to one
        containing the given atom; zero when none contains it."""
        return fz.tame_of_element(self.engine(atoms).factorizations(a), atom_id)

    def classify_character(self, rel: fz.RelationPair, atoms=None) -> int | None:
        if fz.shares_atom(rel.left, rel.right):
            return None  # a common atom splits off, so the pair is not an atom
        if atoms is None:
            atoms = self.atom_table()
        kinds_left = [self.atom_kind(atoms[j]) for j in rel.left]
        kinds_right = [self.atom_kind(atoms[j]) for j in rel.right]
        return fz.classify_character(
            kinds_left, kinds_right, self.exponent_two_catenary_three
        )

    # -- serialization --------------------------------------------------------

    def to_config(self) -> dict:
        return {
            "group": list(self.group.moduli),
            "components": [
                {
                    "units": list(c.primary.units.moduli),
                    "k": c.primary.exponent,
                    "levels": [
                        [list(u) for u in sorted(level)] for level in c.primary.levels
                    ],
                    "iota_p": list(c.iota_p),
                    "iota_units": [list(u) for u in c.iota_units],
                }
                for c in self.components
            ],
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_config(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]
