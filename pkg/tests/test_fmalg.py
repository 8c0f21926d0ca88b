import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amalgam.fmalg import (
    FMElement, FiniteBase, FiniteRelation, PartialBijection,
    all_equivalence_relations, coefficient_gap, is_ergodic, join,
    modular_scale, normalizing_groupoid,
)
from amalgam.scalars import QC

B3 = FiniteBase.uniform(("x", "y", "z"))
FULL3 = FiniteRelation.full(B3)
B2 = FiniteBase.uniform(("x", "y"))


def unit(r, x, y):
    return FMElement.unit(r, x, y)


def test_matrix_unit_convolution():
    assert unit(FULL3, "x", "y") * unit(FULL3, "y", "z") == unit(FULL3, "x", "z")
    assert (unit(FULL3, "x", "y") * unit(FULL3, "x", "z")).is_zero()


def test_star_algebra_axioms_exhaustive_on_basis():
    pairs = sorted(FULL3.pairs)
    for p, q in itertools.product(pairs, repeat=2):
        u, v = FMElement(FULL3, {p: QC(1)}), FMElement(FULL3, {q: QC(1)})
        assert (u * v).adjoint() == v.adjoint() * u.adjoint()
    for p, q, r in itertools.product(pairs, repeat=3):
        u, v, t = (FMElement(FULL3, {p: QC(1)}) for p in (p, q, r))
        assert (u * v) * t == u * (v * t)


def test_involution_is_conjugate_linear():
    i = QC(0, 1)
    u = unit(FULL3, "x", "y")
    assert u.scale(i).adjoint() == u.adjoint().scale(-i)
    assert u.scale(QC(Fraction(2, 3), Fraction(-1, 5))).adjoint() == \
        u.adjoint().scale(QC(Fraction(2, 3), Fraction(1, 5)))


def test_relation_mismatch_rejected():
    r_small = FiniteRelation.from_classes(B3, [("x", "y")])
    with pytest.raises(ValueError):
        unit(FULL3, "x", "y") * unit(r_small, "x", "y")
    with pytest.raises(AssertionError):
        unit(r_small, "x", "z")


scalars_st = st.builds(QC, st.integers(-3, 3).map(Fraction), st.integers(-3, 3).map(Fraction))


def elements_st(relation):
    pairs = sorted(relation.pairs)
    return st.dictionaries(st.sampled_from(pairs), scalars_st, max_size=6).map(
        lambda c: FMElement(relation, c))


@given(elements_st(FULL3), elements_st(FULL3))
def test_expectation_is_linear_and_idempotent(u, v):
    assert (u + v).expectation() == u.expectation() + v.expectation()
    assert u.expectation().expectation() == u.expectation()
    assert u.expectation().is_diagonal()


@given(elements_st(FULL3))
def test_expectation_bimodule_property(u):
    d = FMElement.diagonal(FULL3, {"x": QC(2), "y": QC(Fraction(1, 3))})
    assert (d * u * d).expectation() == d * u.expectation() * d


@given(elements_st(FULL3))
def test_expectation_positive(u):
    diag = (u.adjoint() * u).expectation()
    for (x, _), v in diag.coeffs.items():
        assert isinstance(v, QC) and v.im == 0 and v.re >= 0


@given(elements_st(FULL3))
def test_adjoint_commutes_with_expectation(u):
    assert u.expectation().adjoint() == u.adjoint().expectation()


def closure_oracle(r1, r2):
    """Brute-force transitive closure of the union, by repeated composition."""
    pairs = set(r1.pairs) | set(r2.pairs)
    changed = True
    while changed:
        changed = False
        for (x, y), (y2, z) in itertools.product(list(pairs), repeat=2):
            if y == y2 and (x, z) not in pairs:
                pairs.add((x, z))
                changed = True
    return pairs


def test_join_matches_closure_oracle_small():
    for base in (B2, B3):
        relations = list(all_equivalence_relations(base))
        for r1, r2 in itertools.product(relations, repeat=2):
            j = join(r1, r2)
            assert j.pairs == closure_oracle(r1, r2)
            # least upper bound among all equivalence relations
            for r in relations:
                if r.pairs >= r1.pairs | r2.pairs:
                    assert r.pairs >= j.pairs


def test_relation_counts():
    assert len(list(all_equivalence_relations(B3))) == 5  # Bell number
    assert len(list(all_equivalence_relations(FiniteBase.uniform(tuple("wxyz"))))) == 15


def test_ergodicity():
    assert is_ergodic(FULL3)
    assert not is_ergodic(FiniteRelation.diagonal(B3))
    r1 = FiniteRelation.from_classes(B3, [("x", "y")])
    r2 = FiniteRelation.from_classes(B3, [("y", "z")])
    assert not is_ergodic(r1) and not is_ergodic(r2)
    assert is_ergodic(join(r1, r2))


def groupoid_oracle(relation):
    """Independent count: all total choice maps point -> (skip | target)."""
    points = relation.base.points
    count = 0
    for choice in itertools.product((None,) + points, repeat=len(points)):
        targets = [y for y in choice if y is not None]
        if len(set(targets)) != len(targets):
            continue
        if any(y is not None and (x, y) not in relation.pairs
               for x, y in zip(points, choice)):
            continue
        count += 1
    return count


def test_normalizing_groupoid_frozen_counts():
    assert len(normalizing_groupoid(FiniteRelation.full(B2))) == 7
    assert len(normalizing_groupoid(FiniteRelation.diagonal(B2))) == 4


def test_normalizing_groupoid_matches_oracle():
    for base in (B2, B3):
        for relation in all_equivalence_relations(base):
            found = normalizing_groupoid(relation)
            assert len(found) == groupoid_oracle(relation)
            assert len({pb.graph for pb in found}) == len(found)


def test_groupoid_bound_enforced():
    big = FiniteBase.uniform(tuple(f"p{i}" for i in range(9)))
    with pytest.raises(AssertionError):
        normalizing_groupoid(FiniteRelation.diagonal(big))


def test_partial_bijection_is_partial_isometry():
    for relation in all_equivalence_relations(B3):
        for pb in normalizing_groupoid(relation):
            v = pb.to_element(relation)
            assert v.adjoint() * v == pb.domain_projection(relation)
            assert v * v.adjoint() == pb.image_projection(relation)


def test_groupoid_conjugation_intertwines_expectation():
    for relation in all_equivalence_relations(B3):
        for pb in normalizing_groupoid(relation):
            v = pb.to_element(relation)
            dom = set(pb.domain())
            support = [p for p in relation.pairs if p[0] in dom and p[1] in dom]
            for p in support:
                u = FMElement(relation, {p: QC(Fraction(3, 7), Fraction(1, 2))})
                lhs = (v * u * v.adjoint()).expectation()
                rhs = v * u.expectation() * v.adjoint()
                assert lhs == rhs


WEIGHTED = FiniteBase.weighted([("x", Fraction(1, 2)), ("y", Fraction(1, 3)),
                                ("z", Fraction(1, 6))])
WFULL = FiniteRelation.full(WEIGHTED)


def test_modular_scale_uniform_state_is_identity():
    u = FMElement(FULL3, {("x", "y"): QC(2), ("y", "y"): QC(5)})
    for t in (0.0, 1.0, -2.7, 31.4):
        assert modular_scale(u, t) == u


def test_modular_scale_fixes_diagonal_exactly():
    d = FMElement.diagonal(WFULL, {"x": QC(3), "z": QC(Fraction(1, 7))})
    assert modular_scale(d, 1.73) == d


def test_modular_scale_frozen_phase():
    u = unit(WFULL, "y", "x")  # weight ratio (1/3)/(1/2) = 2/3
    got = modular_scale(u, 1.0).coeffs[("y", "x")]
    assert abs(got - complex(Fraction(2, 3)) ** 1j) < 1e-12


def test_modular_scale_group_law_and_multiplicativity():
    u = FMElement(WFULL, {("x", "y"): QC(1), ("y", "z"): QC(2)})
    v = FMElement(WFULL, {("y", "x"): QC(1, 1), ("z", "x"): QC(-2)})
    for t in (0.31, 1.0, 2.5):
        lhs = modular_scale(u * v, t)
        rhs = modular_scale(u, t) * modular_scale(v, t)
        assert coefficient_gap(lhs, rhs) < 1e-12
        twice = modular_scale(modular_scale(u, t), t)
        assert coefficient_gap(twice, modular_scale(u, 2 * t)) < 1e-12


def test_modular_scale_commutes_with_expectation():
    u = FMElement(WFULL, {("x", "y"): QC(1), ("x", "x"): QC(4), ("z", "y"): QC(0, 2)})
    for t in (0.5, -1.25):
        assert coefficient_gap(modular_scale(u, t).expectation(),
                               u.expectation()) < 1e-12


def test_state_validation():
    with pytest.raises(AssertionError):
        FiniteBase.weighted([("x", Fraction(1, 2)), ("y", Fraction(1, 3))])
    with pytest.raises(AssertionError):
        FiniteBase.weighted([("x", Fraction(3, 2)), ("y", Fraction(-1, 2))])
