"""Finite abelian groups as direct sums of cyclic groups, plus zero-sum machinery.

A group is an ordered tuple of cyclic orders ``(n_1, ..., n_m)``; no normal
form is imposed, so ``C2 + C4`` and ``C4 + C2`` are distinct objects (equality
is structural, not up to isomorphism).  Elements are residue tuples, always
stored reduced mod the orders.  Sequences over a subset of a group are finite
multisets of elements, represented as sorted tuples so enumeration order is
deterministic.

The zero-sum material lives here as well: minimal zero-sum sequences (the
atoms of the block monoid over a subset) and the Davenport constant, both by
exhaustive search over zero-sum-free prefixes.  A multiset is zero-sum-free
exactly when its set of nonempty subset sums avoids zero, and every minimal
zero-sum sequence arises uniquely as a sorted zero-sum-free prefix followed by
the one letter that completes it; the searches below exploit both facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import prod

from .errors import ResourceCapError

Element = tuple[int, ...]
GSequence = tuple[Element, ...]

MAX_GROUP_ORDER = 10**6
ENUMERATION_CAP = 1 << 16
DAVENPORT_ORDER_CAP = 64


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/n_1 + ... + Z/n_m, written additively."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))
        for n in self.moduli:
            if n < 1:
                raise ValueError(f"cyclic order must be >= 1, got {n}")
        if prod(self.moduli) > MAX_GROUP_ORDER:
            raise ValueError(f"group order exceeds {MAX_GROUP_ORDER}")

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.moduli)

    def element(self, residues) -> Element:
        """Reduce ``residues`` mod the moduli; rejects wrong-length vectors."""
        residues = tuple(int(r) for r in residues)
        if len(residues) != len(self.moduli):
            raise ValueError(
                f"element has {len(residues)} coordinates, group has {len(self.moduli)}"
            )
        return tuple(r % n for r, n in zip(residues, self.moduli))

    def contains(self, a: Element) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.moduli)
            and all(0 <= r < n for r, n in zip(a, self.moduli))
        )

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli, strict=True))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.moduli, strict=True))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.moduli, strict=True))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.moduli, strict=True))

    def generators(self) -> tuple[Element, ...]:
        """Standard generators, one per cyclic factor."""
        m = len(self.moduli)
        return tuple(tuple(1 if j == i else 0 for j in range(m)) for i in range(m))

    def element_order(self, a: Element) -> int:
        k = 1
        cur = a
        while cur != self.identity:
            cur = self.add(cur, a)
            k += 1
        return k

    def elements(self, cap: int = ENUMERATION_CAP) -> tuple[Element, ...]:
        """All elements exactly once, lexicographic on residues."""
        if self.order > cap:
            raise ResourceCapError(f"group order {self.order} exceeds enumeration cap {cap}")
        out = [()]
        for n in self.moduli:
            out = [e + (r,) for e in out for r in range(n)]
        return tuple(out)

    def subgroup_generated(self, gens) -> frozenset[Element]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = tuple(gens)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)


def sequence(group: FiniteAbelianGroup, items) -> GSequence:
    """Canonical (sorted) sequence over ``group`` from any iterable of elements."""
    elems = tuple(sorted(items))
    for e in elems:
        if not group.contains(e):
            raise ValueError(f"element {e} does not belong to the group {group.moduli}")
    return elems


def sigma(group: FiniteAbelianGroup, seq: GSequence) -> Element:
    """Sum of all letters of the sequence, with multiplicity."""
    total = group.identity
    for e in seq:
        total = group.add(total, e)
    return total


def minimal_zero_sum_sequences(
    group: FiniteAbelianGroup, letters, max_len: int
) -> frozenset[GSequence]:
    """All zero-sum sequences over ``letters`` of length <= ``max_len`` with no
    proper nonempty zero-sum subsequence.

    Every such sequence, sorted, is a zero-sum-free prefix plus one completing
    letter, so the search walks canonical zero-sum-free multisets and attempts
    the completion at each node.  The completion preserves minimality
    automatically: a zero-sum subsequence through the last letter would leave a
    zero-sum complement inside the prefix.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    alphabet = sorted({group.element(e) if not group.contains(e) else e for e in letters})
    letterset = set(alphabet)
    zero = group.identity
    found: set[GSequence] = set()

    def walk(prefix: list[Element], running: Element, sums: frozenset[Element], start: int):
        completion = group.neg(running)
        if completion in letterset and (not prefix or completion >= prefix[-1]):
            found.add(tuple(prefix) + (completion,))
        if len(prefix) + 1 > max_len - 1:
            return
        for j in range(start, len(alphabet)):
            e = alphabet[j]
            if e == zero:
                continue
            if group.neg(e) in sums:
                continue  # adding e would create a zero subset sum
            new_sums = frozenset({group.add(s, e) for s in sums} | sums | {e})
            prefix.append(e)
            walk(prefix, group.add(running, e), new_sums, j)
            prefix.pop()

    walk([], zero, frozenset(), 0)
    return frozenset(found)


def davenport_constant(group: FiniteAbelianGroup, order_cap: int = DAVENPORT_ORDER_CAP) -> int:
    """D(G) = 1 + the maximum length of a zero-sum-free sequence over G.

    Breadth of the search is tamed by memoizing on (next letter index, set of
    subset sums): two prefixes with the same canonical frontier and the same
    sums admit exactly the same extensions.  Sums are bitmasks over the group,
    hence the hard order cap.
    """
    if group.order > order_cap:
        raise ResourceCapError(
            f"group order {group.order} exceeds Davenport search cap {order_cap}"
        )
    elems = group.elements()
    index = {e: i for i, e in enumerate(elems)}
    nonzero = [index[e] for e in elems if e != group.identity]
    neg_of = [index[group.neg(e)] for e in elems]
    add_row = [[index[group.add(a, b)] for b in elems] for a in elems]
    memo: dict[tuple[int, int], int] = {}

    def best(start: int, mask: int) -> int:
        key = (start, mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        res = 0
        for pos in range(start, len(nonzero)):
            li = nonzero[pos]
            if (mask >> neg_of[li]) & 1:
                continue  # 0 would appear among the subset sums
            row = add_row[li]
            new_mask = mask | (1 << li)
            m = mask
            while m:
                low = m & -m
                new_mask |= 1 << row[low.bit_length() - 1]
                m ^= low
            res = max(res, 1 + best(pos, new_mask))
        memo[key] = res
        return res

    return 1 + best(0, 0)


def bounded_sequences(group: FiniteAbelianGroup, letters, max_len: int):
    """All sorted sequences over ``letters`` of length <= ``max_len``."""
    alphabet = sorted(letters)
    for size in range(max_len + 1):
        yield from combinations_with_replacement(alphabet, size)
