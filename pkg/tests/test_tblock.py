import pytest

from blockfact.abelian import FiniteAbelianGroup, minimal_zero_sum_sequences
from blockfact.errors import ResourceCapError, UnsupportedInstanceError
from blockfact.schemas import parse_instance
from blockfact.tblock import InstanceSpec
from blockfact.verify import (
    block_instance,
    canned_k1,
    component,
    full_image_component,
    trivial_image_component,
    two_class_instance,
)


def test_instance_validation_rejects_bad_hom():
    # C3 units cannot map a generator onto the order-two class
    with pytest.raises(ValueError):
        two_class_instance(component((3,), (0,), [(1,)]))


def test_instance_validation_rejects_unordered_exponents():
    exp2 = component((3,), (0,), [(0,)], exponent=2, levels=[[(0,), (1,)]])
    exp1 = trivial_image_component()
    with pytest.raises(ValueError):
        two_class_instance(exp2, exp1)
    two_class_instance(exp1, exp2)  # the sorted order is fine


def test_instance_validation_rejects_large_exponent():
    spec3 = component((2,), (0,), [(0,)], exponent=3, levels=[[(0,)], [(0,)]])
    with pytest.raises(ValueError):
        two_class_instance(spec3)


def test_iota_value_examples():
    inst = canned_k1()  # iota(p) = g, iota(u) = g
    assert inst.iota_value(0, (0, (0,))) == (0,)
    assert inst.iota_value(0, (2, (0,))) == (0,)  # 2g = 0
    inst2 = two_class_instance(component((2,), (0,), [(1,)]))
    assert inst2.iota_value(0, (1, (1,))) == (1,)


def test_is_block():
    inst = block_instance((2,))
    identity = inst.identity
    assert inst.is_block(identity)
    assert inst.is_block((((1,), (1,)), ()))
    assert not inst.is_block((((1,),), ()))


def test_divides_trivial_cases():
    inst = canned_k1()
    elements = inst.enumerate_elements(4)
    for b in elements:
        assert inst.divides(inst.identity, b)
        assert inst.divides(b, b)


def test_divides_matches_multiplication_table():
    # a | b exactly when some bounded c satisfies a * c = b
    inst = two_class_instance(full_image_component((0,)))
    elements = inst.enumerate_elements(4)
    for a in elements:
        for b in elements:
            expected = any(inst.multiply(a, c) == b for c in elements)
            assert inst.divides(a, b) == expected


def test_quotient_of_blocks_is_a_block():
    inst = canned_k1()
    elements = inst.enumerate_elements(5)
    for a in elements:
        for b in elements:
            q = inst.quotient(b, a)
            if q is not None:
                assert inst.is_member(q)
                assert inst.multiply(a, q) == b


def test_enumerate_degree_zero():
    inst = block_instance((2,))
    assert inst.enumerate_elements(0) == (inst.identity,)


def test_enumerate_block_monoid_c2():
    inst = block_instance((2,))
    got = inst.enumerate_elements(2, include_zero=True)
    expected = {
        ((), ()),
        (((0,),), ()),
        (((0,), (0,)), ()),
        (((1,), (1,)), ()),
    }
    assert set(got) == expected
    no_zero = inst.enumerate_elements(2, include_zero=False)
    assert set(no_zero) == {((), ()), (((1,), (1,)), ())}


def test_enumerate_counts_against_direct_counting():
    # component-free instances: count bounded zero-sum sequences directly
    from itertools import combinations_with_replacement

    from blockfact.abelian import sigma

    for moduli, cap in [((2,), 6), ((3,), 5), ((2, 2), 4)]:
        group = FiniteAbelianGroup(moduli)
        inst = block_instance(moduli)
        direct = sum(
            1
            for size in range(cap + 1)
            for seq in combinations_with_replacement(group.elements(), size)
            if sigma(group, seq) == group.identity
        )
        assert len(inst.enumerate_elements(cap, include_zero=True)) == direct


def test_enumerate_is_deterministic():
    inst = canned_k1()
    assert inst.enumerate_elements(6) == inst.enumerate_elements(6)


def test_enumerate_hard_cap():
    with pytest.raises(ResourceCapError):
        block_instance((2,)).enumerate_elements(100)


def test_atoms_trivial_class_group():
    group = FiniteAbelianGroup((1,))
    inst = InstanceSpec(group, (trivial_image_component((), (0,)),))
    zero_atom = (((0,),), ((0, ()),))
    p_atom = ((), ((1, ()),))
    assert set(inst.atoms_generic()) == {zero_atom, p_atom}


def test_atoms_block_monoid_c2():
    inst = block_instance((2,))
    assert set(inst.atoms_generic()) == {
        (((0,),), ()),
        (((1,), (1,)), ()),
    }
    assert set(inst.atoms_closed_form()) == set(inst.atoms_generic())


def test_atoms_block_monoid_c3_equal_minimal_zero_sums():
    inst = block_instance((3,))
    group = inst.group
    oracle = minimal_zero_sum_sequences(group, group.elements(), inst.davenport)
    expected = {(seq, ()) for seq in oracle}
    assert set(inst.atoms_generic()) == expected
    # and explicitly: the four families over {0, g, 2g}
    assert expected == {
        (((0,),), ()),
        (((1,), (1,), (1,)), ()),
        (((2,), (2,), (2,)), ()),
        (((1,), (2,)), ()),
    }


def test_atoms_closed_form_spec_example():
    # one component, units C2, iota(p) = g, iota(u) = g: the doubled-unit
    # valuation-two member is NOT an atom (its unit is a square of the
    # class-zero fiber), so the table is exactly these four
    inst = canned_k1()
    parts0 = inst.identity[1]
    expected = {
        (((0,),), parts0),
        (((1,), (1,)), parts0),
        ((), ((1, (1,)),)),
        (((1,),), ((1, (0,)),)),
    }
    assert set(inst.atoms_closed_form()) == expected
    assert set(inst.atoms_generic()) == expected


def test_atoms_closed_form_mixed_family():
    inst = two_class_instance(full_image_component((1,)), full_image_component((1,)))
    mixed = [
        a
        for a in inst.atoms_closed_form()
        if sum(1 for n, _ in a[1] if n > 0) == 2
    ]
    assert mixed, "cross-component atoms expected when both g-fibers are nonempty"
    assert set(inst.atoms_closed_form()) == set(inst.atoms_generic())


def test_atoms_closed_form_needs_two_classes():
    with pytest.raises(UnsupportedInstanceError):
        block_instance((3,)).atoms_closed_form()


def test_atoms_closed_form_needs_half_factorial_components():
    bad = component((2,), (0,), [(0,)], exponent=2, levels=[[(0,)]])
    inst = two_class_instance(bad)
    assert not bad.primary.is_half_factorial()
    with pytest.raises(UnsupportedInstanceError):
        inst.atoms_closed_form()


def test_no_atom_divides_another():
    for inst in [canned_k1(), block_instance((4,)), block_instance((2, 2))]:
        atoms = inst.atoms_generic()
        for a in atoms:
            for b in atoms:
                if a != b:
                    assert not inst.divides(a, b)


def test_every_element_reduces_greedily_to_identity():
    inst = canned_k1()
    atoms = inst.atoms_generic()
    for b in inst.enumerate_elements(6, include_zero=True):
        steps = 0
        cur = b
        while cur != inst.identity:
            for a in atoms:
                q = inst.quotient(cur, a)
                if q is not None:
                    cur = q
                    break
            else:
                pytest.fail(f"non-identity element {b} with no atom divisor")
            steps += 1
            assert steps <= inst.degree(b)


def test_zero_letter_is_prime():
    inst = two_class_instance(full_image_component((0,)))
    zero = inst.zero_letter
    elements = inst.enumerate_elements(3, include_zero=True)
    zero_el = ((zero,), inst.identity[1])
    for a in elements:
        for b in elements:
            ab = inst.multiply(a, b)
            if inst.degree(ab) > 4:
                continue
            if inst.divides(zero_el, ab):
                assert inst.divides(zero_el, a) or inst.divides(zero_el, b)


def test_instance_roundtrip_and_digest():
    inst = canned_k1()
    again = parse_instance(inst.to_config())
    assert again == inst
    assert again.digest() == inst.digest()
    assert len(inst.digest()) == 12
