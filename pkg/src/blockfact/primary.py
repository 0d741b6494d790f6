"""Reduced rank-one finitely primary monoids given by unit-level tables.

Such a monoid sits inside ``[p] x U`` for a finite abelian unit group U:
members are pairs ``p^n u`` and the data is the list of level sets
``U_0, ..., U_{k-1}`` (``U_n = {u : p^n u in the monoid}``), with ``U_n = U``
for ``n >= k``.  The exponent ``k`` is minimal: no level below it may be all
of U (the trivial-unit, ``k = 1`` case is exempt, which is the factorial
corner).  Level tables must be coherent, ``U_i * U_j`` inside ``U_{i+j}``.

Half-factoriality is decidable two ways: every atom has valuation one, or
equivalently the powers of ``U_1`` fill the level tower.  Both are provided;
they must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .abelian import Element, FiniteAbelianGroup
from . import factorization as fz

PrimaryElement = tuple[int, Element]

LOCAL_VALUATION_MARGIN = 2


@dataclass(frozen=True)
class PrimaryMonoidSpec:
    units: FiniteAbelianGroup
    exponent: int
    levels: tuple[frozenset[Element], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "levels", tuple(frozenset(level) for level in self.levels)
        )
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        if len(self.levels) != self.exponent:
            raise ValueError(
                f"expected {self.exponent} level sets U_0..U_{self.exponent - 1}, "
                f"got {len(self.levels)}"
            )
        for n, level in enumerate(self.levels):
            for u in level:
                if not self.units.contains(u):
                    raise ValueError(f"U_{n} contains {u}, not a reduced unit vector")
        if self.levels[0] != frozenset({self.units.identity}):
            raise ValueError("U_0 must be exactly the identity (reduced monoid)")
        full = frozenset(self.units.elements())
        for n in range(1, self.exponent):
            if self.levels[n] == full:
                raise ValueError(
                    f"U_{n} is the whole unit group, so the exponent is {n}, not "
                    f"{self.exponent}"
                )
        for i in range(self.exponent):
            for j in range(self.exponent):
                if i + j >= self.exponent:
                    continue
                for u in self.levels[i]:
                    for v in self.levels[j]:
                        if self.units.add(u, v) not in self.levels[i + j]:
                            raise ValueError(
                                f"level tables are incoherent: U_{i} * U_{j} is not "
                                f"inside U_{i + j}"
                            )

    @cached_property
    def _full_units(self) -> frozenset[Element]:
        return frozenset(self.units.elements())

    def level(self, n: int) -> frozenset[Element]:
        if n < 0:
            return frozenset()
        if n >= self.exponent:
            return self._full_units
        return self.levels[n]

    def is_member(self, n: int, u: Element) -> bool:
        return n >= 0 and u in self.level(n)

    @property
    def identity(self) -> PrimaryElement:
        return (0, self.units.identity)

    def multiply(self, a: PrimaryElement, b: PrimaryElement) -> PrimaryElement:
        return (a[0] + b[0], self.units.add(a[1], b[1]))

    def quotient(self, a: PrimaryElement, b: PrimaryElement) -> PrimaryElement | None:
        n = a[0] - b[0]
        if n < 0:
            return None
        u = self.units.sub(a[1], b[1])
        if u not in self.level(n):
            return None
        return (n, u)

    def members(self, max_valuation: int) -> tuple[PrimaryElement, ...]:
        out = []
        for n in range(max_valuation + 1):
            for u in sorted(self.level(n)):
                out.append((n, u))
        return tuple(out)

    def atoms(self) -> tuple[PrimaryElement, ...]:
        """Members with no decomposition into two members of positive valuation.

        The search range ``n <= 2k - 1`` is exhaustive: any member with
        ``n >= 2k`` splits as ``(p^k u)(p^{n-k} 1)``.
        """
        found = []
        for n in range(1, 2 * self.exponent):
            for u in sorted(self.level(n)):
                if not self._splits(n, u):
                    found.append((n, u))
        return tuple(found)

    def _splits(self, n: int, u: Element) -> bool:
        for a in range(1, n):
            for v in self.level(a):
                if self.units.sub(u, v) in self.level(n - a):
                    return True
        return False

    def max_atom_valuation(self) -> int:
        return max((n for n, _ in self.atoms()), default=0)

    def is_half_factorial(self) -> bool:
        return all(n == 1 for n, _ in self.atoms())

    def half_factorial_by_levels(self) -> bool:
        """Independent criterion: the powers of U_1 fill the level tower
        (checked for l in [1, k], which forces all larger l)."""
        power = frozenset({self.units.identity})
        for l in range(1, self.exponent + 1):
            power = frozenset(
                self.units.add(u, v) for u in power for v in self.level(1)
            )
            if power != self.level(l):
                return False
        return True

    def is_factorial(self) -> bool:
        return self.units.order == 1 and self.exponent == 1

    def engine(self) -> fz.FactorizationEngine:
        return fz.FactorizationEngine(
            self.identity, self.atoms(), self.quotient, self.multiply
        )

    def local_invariants(self, max_valuation: int | None = None) -> dict:
        """Catenary and tame degree by exhaustive factorization of every member
        with valuation up to ``max_valuation``; values are certified over that
        range only."""
        if max_valuation is None:
            max_valuation = 2 * self.exponent + LOCAL_VALUATION_MARGIN
        if max_valuation < 2 * self.exponent:
            raise ValueError("max_valuation must be at least twice the exponent")
        engine = self.engine()
        catenary = 0
        tame = 0
        for a in self.members(max_valuation):
            zs = engine.factorizations(a)
            catenary = max(catenary, fz.catenary_of_element(zs))
            present = {j for z in zs for j in z}
            for j in present:
                tame = max(tame, fz.tame_of_element(zs, j))
        return {
            "catenary": catenary,
            "tame": tame,
            "half_factorial": self.is_half_factorial(),
        }


def primary_spec(units_moduli, exponent: int = 1, levels=None) -> PrimaryMonoidSpec:
    """Convenience constructor; ``levels`` lists U_1.. (U_0 is implied)."""
    units = FiniteAbelianGroup(tuple(units_moduli))
    table: list[frozenset[Element]] = [frozenset({units.identity})]
    if levels is not None:
        for level in levels:
            table.append(frozenset(units.element(u) for u in level))
    if len(table) != exponent:
        raise ValueError(f"need {exponent - 1} explicit levels beyond U_0")
    return PrimaryMonoidSpec(units, exponent, tuple(table))
