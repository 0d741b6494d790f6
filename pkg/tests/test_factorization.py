from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from blockfact import factorization as fz
from blockfact.verify import (
    canned_k,
    canned_k1,
    component,
    full_image_component,
    trivial_image_component,
    two_class_instance,
)

facts = st.lists(st.integers(0, 5), max_size=6).map(lambda xs: tuple(sorted(xs)))


def test_distance_examples():
    assert fz.distance((0, 1), (0, 1)) == 0
    assert fz.distance((0, 1), (2, 3)) == 2
    assert fz.distance((0, 0, 1), (0, 2)) == 2  # gcd is one copy of atom 0


@given(facts, facts)
def test_distance_symmetric_and_separating(z, w):
    assert fz.distance(z, w) == fz.distance(w, z)
    assert (fz.distance(z, w) == 0) == (z == w)


@given(facts, facts, facts)
def test_distance_triangle_inequality(x, y, z):
    assert fz.distance(x, z) <= fz.distance(x, y) + fz.distance(y, z)


@given(facts, facts)
def test_length_difference_bounded_by_distance(z, w):
    assert abs(len(z) - len(w)) <= fz.distance(z, w)


def test_length_delta_elasticity_examples():
    z3 = [(0, 1, 2)]
    assert fz.length_set(z3) == (3,)
    assert fz.delta_of_element(z3) == frozenset()
    assert fz.elasticity_of_element(z3) == 1

    z23 = [(0, 1), (2, 3, 4)]
    assert fz.delta_of_element(z23) == frozenset({1})
    assert fz.elasticity_of_element(z23) == Fraction(3, 2)

    z24 = [(0, 1), (2, 3, 4, 5)]
    assert fz.delta_of_element(z24) == frozenset({2})
    assert fz.elasticity_of_element(z24) == 2


def test_identity_conventions():
    identity_zs = [()]
    assert fz.elasticity_of_element(identity_zs) == 1
    assert fz.catenary_of_element(identity_zs) == 0
    assert fz.monotone_catenary_of_element(identity_zs) == 0


def test_catenary_examples():
    assert fz.catenary_of_element([(0, 1)]) == 0
    assert fz.catenary_of_element([(0, 1), (2, 3)]) == 2
    # three factorizations, pairwise far apart except through the middle
    zs = [(0, 0, 0), (0, 1, 1), (1, 1, 1)]
    assert fz.catenary_of_element(zs) == 2


def test_monotone_catenary_equal_lengths_matches_plain():
    zs = [(0, 1), (2, 3), (0, 3)]
    assert fz.monotone_catenary_of_element(zs) == fz.catenary_of_element(zs)


def test_monotone_catenary_on_real_element():
    # the elasticity-3/2 witness: two factorizations of lengths 2 and 3
    inst = canned_k1()
    engine = inst.engine()
    a = inst.make_element([(1,), (1,)], [(2, (0,))])
    zs = engine.factorizations(a)
    assert fz.length_set(zs) == (2, 3)
    assert fz.catenary_of_element(zs) == 3
    assert fz.monotone_catenary_of_element(zs) == 3


def test_positive_catenary_is_at_least_two():
    inst = canned_k(2)
    engine = inst.engine()
    for a in inst.enumerate_elements(6, include_zero=False):
        c = fz.catenary_of_element(engine.factorizations(a))
        assert c == 0 or c >= 2


def test_tame_examples():
    # atom in every factorization -> 0
    assert fz.tame_of_element([(0, 1), (0, 2)], 0) == 0
    # atom in no factorization -> 0 (empty intersection)
    assert fz.tame_of_element([(1, 2)], 0) == 0
    # swap two atoms to reach the one containing atom 0
    assert fz.tame_of_element([(1, 2), (0, 3)], 0) == 2


def test_r_chain_classes():
    assert fz.r_chain_classes([(0, 1)]) == (frozenset({(0, 1)}),)
    assert fz.r_chain_classes([(0, 1), (1, 2)]) == (frozenset({(0, 1), (1, 2)}),)
    parts = fz.r_chain_classes([(0, 1), (2, 3)])
    assert len(parts) == 2
    # equal-length restriction splits a mixed-length overlap
    mixed = [(0, 1), (0, 2, 3)]
    assert len(fz.r_chain_classes(mixed)) == 1
    assert len(fz.r_chain_classes(mixed, equal_length=True)) == 2


def test_monotone_r_chain_trivial_cases():
    zs = [(0, 1), (1, 2, 3)]
    assert fz.monotone_r_chain_exists(zs, (0, 1), (0, 1))
    assert fz.monotone_r_chain_exists(zs, (0, 1), (1, 2, 3))
    with pytest.raises(ValueError):
        fz.monotone_r_chain_exists(zs, (1, 2, 3), (0, 1))


def test_relation_atoms_half_factorial_have_equal_lengths():
    inst = two_class_instance(trivial_image_component((2, 2), (0,)))
    for rel in inst.relation_atoms():
        assert len(rel.left) == len(rel.right)


def test_relation_atoms_character7_on_k1():
    # one full-image component: the fiber-overlap relation of type (2, 3)
    inst = canned_k1()
    atoms = inst.atom_table()
    rels = inst.relation_atoms(atoms)
    chars = {inst.classify_character(r, atoms) for r in rels}
    assert 7 in chars
    assert any(
        (len(r.left), len(r.right)) == (2, 3)
        and inst.classify_character(r, atoms) == 7
        for r in rels
    )


def test_relation_atoms_character1_on_two_components():
    inst = two_class_instance(full_image_component((1,)), full_image_component((1,)))
    atoms = inst.atom_table()
    rels = inst.relation_atoms(atoms)
    by_char = {}
    for r in rels:
        ch = inst.classify_character(r, atoms)
        by_char.setdefault(ch, []).append(r)
    assert 1 in by_char
    for r in by_char[1]:
        assert (len(r.left), len(r.right)) == (2, 2)


def test_relation_atoms_character9_needs_two_overlap_components():
    inst = canned_k(2)
    atoms = inst.atom_table()
    rels = inst.relation_atoms(atoms)
    nines = [r for r in rels if inst.classify_character(r, atoms) == 9]
    assert nines
    for r in nines:
        assert (len(r.left), len(r.right)) == (2, 4)


def test_classify_diagonal_pair_is_none():
    inst = canned_k1()
    atoms = inst.atom_table()
    engine = inst.engine(atoms)
    a = inst.make_element([], [(2, (0,))])
    z = engine.factorizations(a)[0]
    assert inst.classify_character(fz.RelationPair(z, z), atoms) is None


def test_relation_atoms_are_minimal():
    # no side shares an atom, and no proper sub-pair multiplies out to a relation
    inst = canned_k(2)
    engine = inst.engine()
    for rel in fz.relation_atoms(engine):
        assert not fz.shares_atom(rel.left, rel.right)
        assert engine.product(rel.left) == engine.product(rel.right)


def test_engine_factorizations_examples():
    inst = two_class_instance()
    engine = inst.engine()
    assert engine.factorizations(inst.identity) == ((),)
    a = inst.make_element([(0,), (1,), (1,)], [])
    zs = engine.factorizations(a)
    assert len(zs) == 1
    assert len(zs[0]) == 2  # the zero letter and the doubled letter


def _catenary_reference(zs):
    # smallest N whose distance-at-most-N graph is connected, by scanning N
    zs = list(zs)
    n = len(zs)
    if n <= 1:
        return 0
    dists = sorted({fz.distance(a, b) for a in zs for b in zs})
    for bound in dists:
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n):
            for j in range(i + 1, n):
                if fz.distance(zs[i], zs[j]) <= bound:
                    parent[find(i)] = find(j)
        if len({find(i) for i in range(n)}) == 1:
            return bound
    raise AssertionError("unreachable")


def _monotone_catenary_reference(zs):
    # scan N ascending; for each ordered pair check reachability by DFS over
    # non-length-decreasing steps of distance at most N
    zs = list(zs)
    if len(zs) <= 1:
        return 0

    def reachable(bound, x, y):
        seen = {x}
        stack = [x]
        while stack:
            cur = stack.pop()
            if cur == y:
                return True
            for nxt in zs:
                if nxt in seen or len(nxt) < len(cur):
                    continue
                if fz.distance(cur, nxt) <= bound:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    for bound in sorted({fz.distance(a, b) for a in zs for b in zs}):
        if all(
            reachable(bound, x, y)
            for x in zs
            for y in zs
            if len(x) <= len(y)
        ):
            return bound
    raise AssertionError("unreachable")


def test_chain_invariants_against_reference_implementations():
    # every factorization set of a non-half-factorial instance up to degree 6
    inst = canned_k(2)
    engine = inst.engine()
    for a in inst.enumerate_elements(6, include_zero=False):
        zs = engine.factorizations(a)
        assert fz.catenary_of_element(zs) == _catenary_reference(zs)
        assert fz.monotone_catenary_of_element(zs) == _monotone_catenary_reference(zs)


@given(st.sets(facts, min_size=1, max_size=7))
def test_chain_invariants_on_synthetic_sets(zset):
    zs = sorted(zset)
    assert fz.catenary_of_element(zs) == _catenary_reference(zs)
    assert fz.monotone_catenary_of_element(zs) == _monotone_catenary_reference(zs)
