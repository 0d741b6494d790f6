"""Acceptance criteria, one test per criterion, exact equality throughout.

Each test prints a single PASS line on success (visible with ``pytest -s``;
under plain ``pytest -v`` the test names carry the same information).
"""

from fractions import Fraction
from functools import lru_cache

from blockfact.abelian import FiniteAbelianGroup, davenport_constant
from blockfact.verify import (
    block_instance,
    brute_invariants,
    canned_k,
    canned_k1,
    check_bounds,
    check_long_relation_chains,
    closed_form_sweep,
    component,
    equivalence_sweep,
    naive_factorizations,
    sharp_local_spec,
    tame_scenario_instance,
    two_class_family,
    two_class_instance,
)


@lru_cache(maxsize=None)
def _family_brutes():
    return tuple(
        (name, inst, k, brute_invariants(inst, cap=8)) for name, inst, k in two_class_family()
    )


def _ok(line: str):
    print(f"ACCEPTANCE PASS: {line}")


def test_criterion_01_two_class_exponent_one_formulas():
    """c = cmon = 2 + min(2, k), rho = c/2, delta = [1, c-2] at cap 8."""
    seen_k = set()
    seen_units = set()
    for name, inst, k, brute in _family_brutes():
        seen_k.add(k)
        for comp in inst.components:
            seen_units.add(comp.primary.units.moduli)
        c = 2 + min(2, k)
        assert brute.c == c, (name, brute.c, c)
        assert brute.cmon == c, (name, brute.cmon, c)
        assert brute.rho == Fraction(c, 2), (name, brute.rho)
        assert brute.delta == frozenset(range(1, c - 1)), (name, brute.delta)
        assert brute.half_factorial == (k == 0), name
    assert seen_k == {0, 1, 2, 3}
    assert {(), (2,), (4,), (2, 2)} <= seen_units
    _ok(
        "criterion 1: two-class exponent-one family (13 instances, unit groups "
        "C1/C2/C4/C2+C2, k = 0..3) matches c = cmon = 2 + min(2, k), rho = c/2, "
        "delta = [1, c-2] at cap 8"
    )


def test_criterion_02_sharp_local_catenary():
    """Units C_k + C_k with level one {1, e1, e2}: local catenary equals k."""
    for k in (2, 3):
        spec = sharp_local_spec(k)
        loc = spec.local_invariants()
        assert loc["catenary"] == k, (k, loc)
    _ok("criterion 2: sharp local example reaches catenary degree k for k in {2, 3}")


def test_criterion_03_closed_form_atoms_match_generic():
    """Exact atom-set equality on at least 20 two-class instances."""
    sweep = closed_form_sweep()
    assert len(sweep) >= 20
    for name, inst in sweep:
        assert set(inst.atoms_generic()) == set(inst.atoms_closed_form()), name
    _ok(
        f"criterion 3: closed-form atom families equal the generic search on "
        f"{len(sweep)} two-class instances"
    )


def test_criterion_04_block_monoids_of_small_class_groups():
    """|G| in {3, 4}: min delta = 1, rho > 1, c >= 3 at cap 8."""
    for moduli in [(3,), (4,), (2, 2)]:
        brute = brute_invariants(block_instance(moduli), cap=8)
        assert brute.min_delta == 1, moduli
        assert brute.rho > 1, moduli
        assert brute.c >= 3, moduli
    _ok(
        "criterion 4: block monoids over C3, C4, C2+C2 show min delta 1, "
        "rho > 1, c >= 3 at cap 8"
    )


def test_criterion_05_tame_degree_and_equivalences():
    """All-zero classes and half-factorial: t = 2; and the four-way
    equivalence cmon<=2 iff c<=2 iff hf iff t<=2 over the sweep."""
    brute = brute_invariants(tame_scenario_instance(2), cap=8)
    assert brute.half_factorial
    assert brute.tame == 2
    for name, inst in equivalence_sweep():
        b = brute_invariants(inst, cap=6)
        flags = {b.cmon <= 2, b.c <= 2, b.half_factorial, b.tame <= 2}
        assert len(flags) == 1, (name, b.as_dict())
    _ok(
        "criterion 5: tame degree is exactly 2 on the all-zero-class "
        "half-factorial instance; the four-way equivalence holds on the sweep"
    )


def test_criterion_06_monotone_chains_for_long_relations():
    """k in {1, 2}: every relation pair with 5 <= |y| <= 6 within cap 8 admits
    a monotone overlapping chain; exhaustive, zero counterexamples."""
    total = 0
    for k in (1, 2):
        result = check_long_relation_chains(canned_k(k), cap=8, samples=None)
        assert result.ok, result.counterexamples
        assert result.pairs_checked > 0
        total += result.pairs_checked
    _ok(
        f"criterion 6: monotone overlapping chains found for all {total} "
        f"relation pairs with |y| in {{5, 6}} at cap 8 on the k=1 and k=2 instances"
    )


def test_criterion_07_bound_suite_holds_everywhere():
    """rho <= D(G) rho(T); rho(H, D) <= 1; the mixed catenary bound; and
    per-component c <= t <= k + 1, on every generated instance."""
    instances = [(name, inst, brute) for name, inst, _, brute in _family_brutes()]
    for moduli in [(3,), (4,), (2, 2)]:
        inst = block_instance(moduli)
        instances.append((f"block-{moduli}", inst, brute_invariants(inst, cap=8)))
    for name, inst in equivalence_sweep():
        instances.append((name, inst, brute_invariants(inst, cap=6)))
    checked = 0
    for name, inst, brute in instances:
        for bound in check_bounds(inst, brute):
            if bound.applicable:
                assert bound.holds, (name, bound.name, bound.lhs, bound.rhs)
                checked += 1
    _ok(
        f"criterion 7: all {checked} applicable bound instantiations hold on "
        f"{len(instances)} instances"
    )


def test_criterion_08_davenport_oracle():
    """D(C_n) = n for n <= 8; D(C_m + C_n) = m + n - 1 for m | n, mn <= 36."""
    for n in range(1, 9):
        assert davenport_constant(FiniteAbelianGroup((n,))) == n
    pairs = [
        (m, n)
        for m in range(1, 7)
        for n in range(m, 37)
        if n % m == 0 and m * n <= 36
    ]
    for m, n in pairs:
        assert davenport_constant(FiniteAbelianGroup((m, n))) == m + n - 1, (m, n)
    _ok(
        f"criterion 8: exhaustive zero-sum-free search matches the closed forms "
        f"for cyclic groups up to C8 and {len(pairs)} rank-two groups up to order 36"
    )


def test_criterion_09_oracle_equivalence():
    """Memoized engine and naive depth-first oracle agree on every element of
    degree <= 6 on two pinned instances."""
    pinned = [
        ("k1", canned_k1()),
        (
            "mixed",
            two_class_instance(
                component((2,), (0,), [(1,)]), component((2,), (1,), [(0,)])
            ),
        ),
    ]
    count = 0
    for name, inst in pinned:
        engine = inst.engine()
        for a in inst.enumerate_elements(6, include_zero=False):
            assert frozenset(engine.factorizations(a)) == naive_factorizations(
                engine, a
            ), (name, a)
            count += 1
    _ok(
        f"criterion 9: engine and naive oracle return identical factorization "
        f"sets on {count} elements of degree <= 6 across two pinned instances"
    )


def test_criterion_10_inert_conductor_elasticity():
    """The canned k = 1 instance has elasticity exactly 3/2."""
    brute = brute_invariants(canned_k1(), cap=8)
    assert brute.rho == Fraction(3, 2)
    witness = brute.witnesses["rho"]
    assert witness["element"] == {"free": [[1], [1]], "parts": [[2, [0]]]}
    _ok(
        "criterion 10: the k=1 instance reproduces elasticity exactly 3/2, "
        "witnessed by the degree-four element with lengths {2, 3}"
    )
