import random
from collections import Counter

import pytest

from difam.carrier import ProductCarrier
from difam.diffs import GMultiset, coverage, delta_block, delta_family
from difam.gf import FiniteField
from difam.groups import AbelianGroup, GroupError, Subgroup


Z5 = AbelianGroup((5,))


def test_multiset_basics():
    m = GMultiset(Z5, [(1,), (1,), (4,), (0,)])
    assert m.size == 4
    assert m.multiplicity((1,)) == 2
    assert m.multiplicity((3,)) == 0
    assert not m.is_set()
    assert m.expand() == [(0,), (1,), (1,), (4,)]
    assert GMultiset(Z5, [(0,), (2,)]).is_set()


def test_multiset_from_counter():
    m = GMultiset(Z5, Counter({(2,): 3, (1,): 0}))
    assert m.entries == {(2,): 3}


def test_multiset_checks_elements():
    with pytest.raises(GroupError):
        GMultiset(Z5, [(5,)])


def test_union_and_translate():
    a = GMultiset(Z5, [(0,), (1,)])
    b = GMultiset(Z5, [(1,), (2,)])
    assert a.union(b).expand() == [(0,), (1,), (1,), (2,)]
    assert a.translate((3,)).expand() == [(3,), (4,)]
    with pytest.raises(GroupError):
        a.union(GMultiset(AbelianGroup((7,)), [(0,)]))


def test_delta_block_example():
    # {0,1,1,4,4}: every nonzero element covered 4 times, zero 4 times too
    block = GMultiset(Z5, [(0,), (1,), (1,), (4,), (4,)])
    d = delta_block(block)
    assert d.size == 20
    assert all(d.multiplicity((g,)) == 4 for g in range(5))


def test_delta_block_needs_two_elements():
    with pytest.raises(GroupError):
        delta_block(GMultiset(Z5, [(0,)]))


def test_delta_family_union():
    b1 = GMultiset(Z5, [(0,), (1,)])
    b2 = GMultiset(Z5, [(0,), (2,)])
    d = delta_family([b1, b2])
    assert d.size == 4
    assert d.multiplicity((1,)) == 1
    assert d.multiplicity((4,)) == 1
    with pytest.raises(GroupError):
        delta_family([])


def test_delta_translation_invariance():
    rng = random.Random(7)
    group = AbelianGroup((4, 9))
    elems = list(group.elements())
    for _ in range(20):
        block = GMultiset(group, [rng.choice(elems) for _ in range(5)])
        g = rng.choice(elems)
        assert delta_block(block.translate(g)) == delta_block(block)


def test_delta_involution_parity():
    """The multiplicity of any element and its negative agree, so elements
    equal to their own negative get even counts from the paired positions."""
    rng = random.Random(11)
    group = AbelianGroup((2, 8))
    elems = list(group.elements())
    for _ in range(20):
        block = GMultiset(group, [rng.choice(elems) for _ in range(6)])
        d = delta_block(block)
        for e in elems:
            assert d.multiplicity(e) == d.multiplicity(group.neg(e))


def test_coverage_constant():
    block = GMultiset(Z5, [(0,), (1,), (1,), (4,), (4,)])
    verdict = coverage(delta_block(block), Z5)
    assert verdict.ok
    assert verdict.constant_lambda == 4
    assert verdict.coverage[(3,)] == 4
    assert verdict.coverage.total == 20


def test_coverage_nonconstant():
    block = GMultiset(Z5, [(0,), (1,), (3,)])
    verdict = coverage(delta_block(block), Z5)
    assert verdict.constant_lambda is None
    assert not verdict.ok
    assert verdict.failures


def test_coverage_with_excluded_subgroup():
    group = AbelianGroup((2, 3))
    sub = Subgroup(group, [(0, 0), (1, 0)])
    # differences of {(0,1),(0,2)} land on (0,1),(0,2): not constant outside
    block = GMultiset(group, [(0, 1), (0, 2)])
    verdict = coverage(delta_block(block), group, sub)
    assert verdict.excluded_clean
    assert verdict.constant_lambda is None


def test_coverage_excluded_dirty():
    group = AbelianGroup((6,))
    sub = Subgroup(group, [(0,), (3,)])
    block = GMultiset(group, [(0,), (3,)])
    verdict = coverage(delta_block(block), group, sub)
    assert not verdict.excluded_clean
    assert ((3,), 2) in verdict.failures


def test_coverage_vacuous_when_all_excluded():
    group = AbelianGroup((3,))
    sub = Subgroup(group, list(group.elements()))
    verdict = coverage(GMultiset(group, []), group, sub)
    assert verdict.constant_lambda == 0
    assert verdict.ok


def test_coverage_carrier_mismatch():
    with pytest.raises(GroupError):
        coverage(GMultiset(Z5, []), AbelianGroup((7,)))


def test_product_carrier_split_join():
    field = FiniteField(5, 2, (2, 1, 1))
    carrier = ProductCarrier(AbelianGroup((5,)), field)
    e = carrier.join((3,), (1, 4))
    assert e == (3, 1, 4)
    assert carrier.group_part(e) == (3,)
    assert carrier.field_part(e) == (1, 4)
    assert carrier.split(e) == ((3,), (1, 4))
    scaled = carrier.scale_field(e, field.from_int(2))
    assert carrier.group_part(scaled) == (3,)
    assert carrier.field_part(scaled) == field.mul((1, 4), field.from_int(2))


def test_forbidden_subgroup():
    field = FiniteField(5, 2, (2, 1, 1))
    carrier = ProductCarrier(AbelianGroup((5,)), field)
    sub = carrier.forbidden_subgroup()
    assert sub.order == 5
    assert all(carrier.field_part(e) == field.zero for e in sub.elements)
