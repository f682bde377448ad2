from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrigid.group import (
    CYCLIC_NONTRIVIAL,
    DIHEDRAL_SUBGROUP,
    TRIVIAL,
    GroupMismatchError,
    GroupSpec,
    subgroup_generated,
)

SMALL_GROUPS = [
    GroupSpec.reflection(),
    GroupSpec.cyclic(1),
    GroupSpec.cyclic(2),
    GroupSpec.cyclic(3),
    GroupSpec.cyclic(6),
    GroupSpec.dihedral(1),
    GroupSpec.dihedral(3),
    GroupSpec.dihedral(4),
]


def test_identity_and_dihedral_relation():
    c3v = GroupSpec.dihedral(3)
    s, r = c3v.mirror(), c3v.rotation()
    for g in c3v.elements():
        assert c3v.identity() * g == g
        assert g * c3v.identity() == g
    assert s * r * s == r.inverse()
    assert s * r * s == c3v.element(2)


def test_cyclic_addition():
    z6 = GroupSpec.cyclic(6)
    assert z6.rotation(2) * z6.rotation(2) == z6.rotation(4)
    assert z6.rotation(5) * z6.rotation(3) == z6.rotation(2)


def test_mixed_groups_rejected():
    with pytest.raises(GroupMismatchError):
        GroupSpec.cyclic(3).rotation() * GroupSpec.cyclic(6).rotation()


@pytest.mark.parametrize("group", SMALL_GROUPS, ids=lambda g: g.name)
def test_group_axioms_exhaustive(group):
    elements = group.elements()
    assert len(elements) == group.order
    for a, b, c in itertools.product(elements, repeat=3):
        assert (a * b) * c == a * (b * c)
    for a in elements:
        assert a * a.inverse() == group.identity()
        assert a.inverse() * a == group.identity()


@pytest.mark.parametrize("group", SMALL_GROUPS, ids=lambda g: g.name)
def test_element_order_divides_group_order(group):
    for g in group.elements():
        m = g.order()
        assert group.order % m == 0
        assert g**m == group.identity()
        for j in range(1, m):
            assert g**j != group.identity()


def test_order_examples():
    z6 = GroupSpec.cyclic(6)
    assert z6.identity().order() == 1
    assert z6.rotation(2).order() == 3
    assert GroupSpec.dihedral(5).mirror(3).order() == 2


def test_subgroup_generated_examples():
    c3v = GroupSpec.dihedral(3)
    assert subgroup_generated(c3v, []).elements == frozenset({c3v.identity()})
    whole = subgroup_generated(c3v, [c3v.rotation(), c3v.mirror()])
    assert whole.order == 6
    z6 = GroupSpec.cyclic(6)
    half = subgroup_generated(z6, [z6.rotation(3)])
    assert half.order == 2
    assert half.elements == frozenset({z6.identity(), z6.rotation(3)})


def test_classification():
    c3v = GroupSpec.dihedral(3)
    assert subgroup_generated(c3v, []).classify() == TRIVIAL
    assert subgroup_generated(c3v, [c3v.rotation()]).classify() == CYCLIC_NONTRIVIAL
    assert subgroup_generated(c3v, [c3v.mirror(1)]).classify() == CYCLIC_NONTRIVIAL
    assert (
        subgroup_generated(c3v, [c3v.mirror(), c3v.rotation()]).classify()
        == DIHEDRAL_SUBGROUP
    )
    assert (
        subgroup_generated(c3v, [c3v.mirror(), c3v.mirror(1)]).classify()
        == DIHEDRAL_SUBGROUP
    )


@pytest.mark.parametrize("group", SMALL_GROUPS, ids=lambda g: g.name)
def test_dihedral_classification_criterion(group):
    # Dihedral iff the closure holds two distinct reflections, or a
    # reflection together with a nontrivial rotation.
    for size in (1, 2):
        for gens in itertools.combinations(group.elements(), size):
            sub = subgroup_generated(group, gens)
            refs = [g for g in sub.elements if g.ref]
            rots = [g for g in sub.elements if not g.ref and not g.is_identity]
            expect_dihedral = len(refs) >= 2 or (refs and rots)
            assert (sub.classify() == DIHEDRAL_SUBGROUP) == bool(expect_dihedral)


def test_orthogonal_matrices():
    z2 = GroupSpec.cyclic(2)
    assert np.allclose(z2.identity().matrix(), np.eye(2))
    assert np.allclose(z2.rotation().matrix(), -np.eye(2))
    cs = GroupSpec.reflection()
    assert np.allclose(cs.mirror().matrix(), np.diag([1.0, -1.0]))


@pytest.mark.parametrize(
    "group",
    [GroupSpec.cyclic(24), GroupSpec.dihedral(12), GroupSpec.dihedral(3)],
    ids=lambda g: g.name,
)
def test_matrix_homomorphism(group):
    elements = group.elements()
    for a, b in itertools.product(elements, repeat=2):
        assert np.linalg.norm(a.matrix() @ b.matrix() - (a * b).matrix()) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=500),
    data=st.data(),
)
def test_axioms_random_large_groups(k, data):
    group = GroupSpec.dihedral(k)
    pick = lambda: group.element(
        data.draw(st.integers(0, k - 1)), data.draw(st.booleans())
    )
    a, b, c = pick(), pick(), pick()
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == group.identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert group.order % a.order() == 0


def test_parse_and_format_round_trip():
    for group in SMALL_GROUPS:
        for g in group.elements():
            assert group.parse(str(g)) == g
    c3v = GroupSpec.dihedral(3)
    assert c3v.parse("s*r^2") == c3v.element(2, ref=True)
    assert c3v.parse("r^-1") == c3v.element(2)
    assert str(c3v.identity()) == "id"
    assert str(c3v.mirror()) == "s"
    with pytest.raises(ValueError):
        c3v.parse("q^2")
    with pytest.raises(ValueError):
        GroupSpec.cyclic(5).parse("s")


def test_group_spec_validation_and_json():
    with pytest.raises(ValueError):
        GroupSpec("frieze")
    with pytest.raises(ValueError):
        GroupSpec.cyclic(0)
    for group in SMALL_GROUPS:
        assert GroupSpec.from_json(group.to_json()) == group
