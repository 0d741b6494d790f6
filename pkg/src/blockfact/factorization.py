"""Factorizations as multisets of atoms, and the chain invariants on them.

A factorization is a sorted tuple of integer atom ids over a fixed atom
table; the table itself belongs to whichever monoid produced it.  Everything
here is a pure function of those tuples plus, for the engine, two callables
describing the monoid: ``quotient(element, atom)`` returning the cofactor (or
``None`` when the atom does not divide), and ``multiply``.

Distance between factorizations removes the multiset gcd and takes the larger
leftover size.  The catenary degree of one element is the bottleneck of a
minimum spanning structure on its factorization set; the monotone variant is
decided by a reachability check in the digraph whose edges are bounded-distance
steps with non-decreasing length (equal-length steps are bidirectional,
strictly increasing steps directed).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

Fact = tuple[int, ...]

_INF = float("inf")


def distance(z: Fact, w: Fact) -> int:
    """d(z, w): strip the common part, take the larger leftover length."""
    if z == w:
        return 0
    common = sum((Counter(z) & Counter(w)).values())
    return max(len(z), len(w)) - common


def shares_atom(z: Fact, w: Fact) -> bool:
    return bool(set(z).intersection(w))


def length_set(factorizations: Iterable[Fact]) -> tuple[int, ...]:
    return tuple(sorted({len(z) for z in factorizations}))


def delta_of_element(factorizations: Iterable[Fact]) -> frozenset[int]:
    """Gaps between successive factorization lengths."""
    lengths = length_set(factorizations)
    return frozenset(b - a for a, b in zip(lengths, lengths[1:]))


def elasticity_of_element(factorizations: Iterable[Fact]) -> Fraction:
    lengths = length_set(factorizations)
    if not lengths:
        raise ValueError("elasticity needs a nonempty factorization set")
    if lengths[0] == 0:
        return Fraction(1)  # identity: L = {0}, 0/0 = 1 by convention
    return Fraction(lengths[-1], lengths[0])


def _distance_matrix(zs: Sequence[Fact]) -> list[list[int]]:
    n = len(zs)
    counters = [Counter(z) for z in zs]
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        ci, li = counters[i], len(zs[i])
        for j in range(i + 1, n):
            common = sum((ci & counters[j]).values())
            d = max(li, len(zs[j])) - common
            mat[i][j] = mat[j][i] = d
    return mat


def _bottleneck(mat: list[list[int]]) -> int:
    # largest edge of a minimum spanning tree = least N making the <=N graph connected
    n = len(mat)
    in_tree = [False] * n
    best = [_INF] * n
    best[0] = 0
    answer = 0
    for _ in range(n):
        u = min((i for i in range(n) if not in_tree[i]), key=best.__getitem__)
        in_tree[u] = True
        answer = max(answer, best[u])
        row = mat[u]
        for v in range(n):
            if not in_tree[v] and row[v] < best[v]:
                best[v] = row[v]
    return int(answer)


def catenary_of_element(factorizations: Iterable[Fact]) -> int:
    """Least N such that any two factorizations are joined by an N-chain."""
    zs = list(factorizations)
    if len(zs) <= 1:
        return 0
    return _bottleneck(_distance_matrix(zs))


def monotone_catenary_of_element(factorizations: Iterable[Fact]) -> int:
    """Least N such that every ordered pair (z, z') with ``|z| <= |z'|`` is
    joined by an N-chain whose lengths never decrease."""
    zs = list(factorizations)
    n = len(zs)
    if n <= 1:
        return 0
    lengths = [len(z) for z in zs]
    mat = _distance_matrix(zs)
    plain = _bottleneck(mat)
    if len(set(lengths)) == 1:
        return plain

    required = [0] * n
    for i in range(n):
        req = 0
        for j in range(n):
            if lengths[i] <= lengths[j]:
                req |= 1 << j
        required[i] = req

    def connected(bound: int) -> bool:
        adj = [0] * n
        for i in range(n):
            row = mat[i]
            mask = 0
            for j in range(n):
                if lengths[i] <= lengths[j] and row[j] <= bound:
                    mask |= 1 << j
            adj[i] = mask
        for i in range(n):
            reach = 1 << i
            frontier = reach
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= adj[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~reach
                reach |= nxt
            if reach & required[i] != required[i]:
                return False
        return True

    candidates = sorted({d for row in mat for d in row if d >= plain})
    for bound in candidates:
        if connected(bound):
            return bound
    return candidates[-1]  # the max distance always works


def tame_of_element(factorizations: Iterable[Fact], atom_id: int) -> int:
    """t(a, u): worst distance from a factorization of a to one containing u;
    zero when no factorization contains u."""
    zs = list(factorizations)
    holders = [z for z in zs if atom_id in z]
    if not holders:
        return 0
    return max(min(distance(z, h) for h in holders) for z in zs)


def r_chain_classes(
    factorizations: Iterable[Fact], equal_length: bool = False
) -> tuple[frozenset[Fact], ...]:
    """Partition of the factorization set under chains of overlapping
    factorizations; ``equal_length`` restricts steps to equal lengths."""
    zs = sorted(set(factorizations))
    parent = list(range(len(zs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if equal_length and len(zs[i]) != len(zs[j]):
                continue
            if shares_atom(zs[i], zs[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    classes: dict[int, set[Fact]] = {}
    for i, z in enumerate(zs):
        classes.setdefault(find(i), set()).add(z)
    return tuple(sorted(frozenset(c) for c in classes.values()))


def monotone_r_chain_exists(factorizations: Iterable[Fact], x: Fact, y: Fact) -> bool:
    """Reachability x -> y through factorizations that share an atom with the
    previous one, lengths never decreasing.  Requires ``|x| <= |y|``."""
    if len(x) > len(y):
        raise ValueError("monotone chains run from the shorter factorization")
    if x == y:
        return True
    zs = sorted(set(factorizations))
    seen = {x}
    frontier = [x]
    while frontier:
        cur = frontier.pop()
        for nxt in zs:
            if nxt in seen or len(nxt) < len(cur):
                continue
            if shares_atom(cur, nxt):
                if nxt == y:
                    return True
                seen.add(nxt)
                frontier.append(nxt)
    return False


class FactorizationEngine:
    """Enumerates Z(a) over a fixed atom table.

    Recursion divides off atoms with non-decreasing table index so each
    multiset appears once; results are memoized on (element, minimum index),
    which shares work across quotients of different top-level elements.
    """

    def __init__(
        self,
        identity: Hashable,
        atoms: Sequence[Hashable],
        quotient: Callable,
        multiply: Callable | None = None,
    ):
        self.identity = identity
        self.atoms = tuple(atoms)
        self._quotient = quotient
        self._multiply = multiply
        self._memo: dict[tuple[Hashable, int], tuple[Fact, ...]] = {}

    def factorizations(self, element) -> tuple[Fact, ...]:
        return self._solve(element, 0)

    def _solve(self, element, min_id: int) -> tuple[Fact, ...]:
        if element == self.identity:
            return ((),)
        key = (element, min_id)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = []
        for j in range(min_id, len(self.atoms)):
            q = self._quotient(element, self.atoms[j])
            if q is None:
                continue
            for tail in self._solve(q, j):
                out.append((j,) + tail)
        res = tuple(out)
        self._memo[key] = res
        return res

    def product(self, fact: Fact):
        if self._multiply is None:
            raise ValueError("engine was built without a multiply callable")
        cur = self.identity
        for j in fact:
            cur = self._multiply(cur, self.atoms[j])
        return cur


@dataclass(frozen=True, order=True)
class RelationPair:
    """Two factorizations of one element, normalized so ``|left| <= |right|``."""

    left: Fact
    right: Fact


def _submultiset_products(fact: Fact, engine: FactorizationEngine) -> set:
    """Products of all submultisets (the identity stands for the empty one)."""
    prods = {engine.identity}
    for j in fact:
        atom = engine.atoms[j]
        prods |= {engine._multiply(p, atom) for p in prods}
    return prods


def _is_relation_atom(x: Fact, y: Fact, engine: FactorizationEngine) -> bool:
    # decomposable iff a proper nonempty sub-multiset of x matches a product
    # of a nonempty sub-multiset of y
    px = engine.product(x)
    x_products = _submultiset_products(x, engine) - {engine.identity, px}
    y_products = _submultiset_products(y, engine) - {engine.identity}
    return not (x_products & y_products)


def relation_atoms(
    engine: FactorizationEngine, max_right_len: int = 4
) -> tuple[RelationPair, ...]:
    """Atoms of the monoid of relations with both lengths <= ``max_right_len``,
    excluding diagonal pairs: the two sides factor the same element, share no
    atom, and admit no proper componentwise sub-relation."""
    buckets: dict[Hashable, set[Fact]] = {}

    def build(start: int, fact: list[int], prod, budget: int):
        for j in range(start, len(engine.atoms)):
            p = engine._multiply(prod, engine.atoms[j])
            fact.append(j)
            buckets.setdefault(p, set()).add(tuple(fact))
            if budget > 1:
                build(j, fact, p, budget - 1)
            fact.pop()

    build(0, [], engine.identity, max_right_len)

    out = []
    for facts in buckets.values():
        if len(facts) < 2:
            continue
        ordered = sorted(facts, key=lambda f: (len(f), f))
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                x, y = ordered[i], ordered[j]
                if shares_atom(x, y):
                    continue
                if _is_relation_atom(x, y, engine):
                    out.append(RelationPair(x, y))
    return tuple(sorted(out))


def classify_character(
    kinds_left: Sequence[tuple],
    kinds_right: Sequence[tuple],
    catenary_three: frozenset[int] = frozenset(),
) -> int | None:
    """Match a relation atom against the fifteen two-class relation shapes.

    ``kinds_*`` are the structural kinds of the atoms on each side (see
    ``InstanceSpec.atom_kind``); ``catenary_three`` holds the indices of
    exponent-two components whose local catenary degree is three, required by
    shapes 10-15.  Returns the shape number or ``None``.
    """
    sides = [(tuple(sorted(kinds_left)), tuple(sorted(kinds_right)))]
    if len(kinds_left) == len(kinds_right):
        sides.append((tuple(sorted(kinds_right)), tuple(sorted(kinds_left))))
    for x, y in sides:
        got = _match_character(x, y, catenary_three)
        if got is not None:
            return got
    return None


def _match_character(x, y, catenary_three):
    if any(k is None for k in x + y):
        return None
    tags_x = [k[0] for k in x]
    tags_y = [k[0] for k in y]

    if len(x) == 2 and len(y) == 2:
        if tags_x == ["GG", "MX"] and tags_y == ["PG", "PG"]:
            _, i, j = x[1]
            if {y[0][1], y[1][1]} == {i, j}:
                return 1
        if tags_x == ["MX", "MX"] and x[0] == x[1] and tags_y == ["P2", "P2"]:
            _, i, j = x[0]
            if {y[0][1], y[1][1]} == {i, j}:
                return 2
        if tags_x == ["GG", "P2"] and tags_y == ["PG", "PG"]:
            i = x[1][1]
            if y[0][1] == y[1][1] == i:
                return 3
        if tags_x == ["P0", "P0"] and tags_y == ["P0", "P0"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1:
                return 4
        if tags_x == ["PG", "PG"] and tags_y == ["PG", "PG"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1:
                return 5
        if tags_x == ["P0", "PG"] and tags_y == ["P0", "PG"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1:
                return 6
        if tags_x == ["P0", "P2"] and tags_y == ["P0", "P2"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[1][1] in catenary_three:
                return 14
        if tags_x == ["P2", "PG"] and tags_y == ["P2", "PG"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[0][1] in catenary_three:
                return 15

    if len(x) == 2 and len(y) == 3:
        if tags_x == ["PG", "PG"] and tags_y == ["GG", "P0", "P0"]:
            comps = {x[0][1], x[1][1], y[1][1], y[2][1]}
            if len(comps) == 1:
                return 7
        if tags_x == ["MX", "MX"] and x[0] == x[1] and tags_y == ["P0", "P0", "P2"]:
            _, i, j = x[0]
            a, b = y[0][1], y[2][1]
            if y[0][1] == y[1][1] and {a, b} == {i, j} and a != b:
                return 8
        if tags_x == ["P0", "P2"] and tags_y == ["P0", "P0", "P0"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[1][1] in catenary_three:
                return 12
        if tags_x == ["P2", "PG"] and tags_y == ["P0", "P0", "PG"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[0][1] in catenary_three:
                return 13

    if len(x) == 2 and len(y) == 4:
        if tags_x == ["MX", "MX"] and x[0] == x[1] and tags_y == ["P0"] * 4:
            _, i, j = x[0]
            comps = sorted(k[1] for k in y)
            if comps == sorted([i, i, j, j]) and i != j:
                return 9

    if len(x) == 3 and len(y) == 3:
        if tags_x == ["P0"] * 3 and tags_y == ["P0"] * 3:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[0][1] in catenary_three:
                return 10
        if tags_x == ["P0", "P0", "PG"] and tags_y == ["P0", "P0", "PG"]:
            comps = {k[1] for k in x + y}
            if len(comps) == 1 and x[0][1] in catenary_three:
                return 11

    return None
