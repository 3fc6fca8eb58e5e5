"""Tests for algebras, bimodules, tensor over the base, and the cyclic
quotient with its rotation."""

from fractions import Fraction

import pytest

from cychom.algebra_cat import (
    AlgebraMorphism,
    Bimodule,
    Coring,
    DimensionGuardError,
    FinAlgebra,
    base_as_bimodule,
    pi_and_flip,
    regular_bimodule,
    tensor_over_R,
    validate_structures,
)
from cychom.qlinalg import RationalMatrix, invert

ONE = Fraction(1)


def rationals() -> FinAlgebra:
    return FinAlgebra(["1"], {(0, 0): {0: ONE}}, {0: ONE}, name="Q")


def c2_algebra() -> FinAlgebra:
    # basis e, s with s*s = e
    mul = {
        (0, 0): {0: ONE}, (0, 1): {1: ONE},
        (1, 0): {1: ONE}, (1, 1): {0: ONE},
    }
    return FinAlgebra(["e", "s"], mul, {0: ONE}, name="QC2")


def i2_objects() -> FinAlgebra:
    # two orthogonal idempotents a, b
    mul = {(0, 0): {0: ONE}, (1, 1): {1: ONE}}
    return FinAlgebra(["a", "b"], mul, {0: ONE, 1: ONE}, name="R_I2")


def i2_algebra() -> FinAlgebra:
    """Arrow algebra of the two-object contractible groupoid: identity loops
    ia, ib and mutually inverse arrows f: a->b, g: b->a; products compose
    where endpoints match and vanish otherwise."""
    ia, ib, f, g = 0, 1, 2, 3
    mul = {
        (ia, ia): {ia: ONE}, (ib, ib): {ib: ONE},
        (ia, g): {g: ONE}, (g, ib): {g: ONE},
        (ib, f): {f: ONE}, (f, ia): {f: ONE},
        (f, g): {ib: ONE}, (g, f): {ia: ONE},
    }
    return FinAlgebra(["ia", "ib", "f", "g"], mul, {ia: ONE, ib: ONE},
                      name="B_I2")


def i2_inclusion() -> AlgebraMorphism:
    r = i2_objects()
    b = i2_algebra()
    m = RationalMatrix(4, 2, {(0, 0): ONE, (1, 1): ONE})
    return AlgebraMorphism(r, b, m)


def i2_bimodule() -> Bimodule:
    """B_I2 over the idempotent base, acting by multiplication on each side."""
    return regular_bimodule(i2_inclusion())


def i2_onesided_bimodule() -> Bimodule:
    """B_I2 with base acting by right multiplication on both sides."""
    b = i2_algebra()
    r = i2_objects()
    acts = [b.right_mult_matrix({0: ONE}), b.right_mult_matrix({1: ONE})]
    return Bimodule(r, 4, acts, list(acts))


def c2_bimodule() -> Bimodule:
    q = rationals()
    phi = AlgebraMorphism(q, c2_algebra(), RationalMatrix(2, 1, {(0, 0): ONE}))
    return regular_bimodule(phi)


# -- validation of the fixtures themselves --------------------------------------


def test_fixture_algebras_are_valid():
    for a in (rationals(), c2_algebra(), i2_objects(), i2_algebra()):
        assert validate_structures(a) == []


def test_fixture_bimodules_are_valid():
    for m in (i2_bimodule(), i2_onesided_bimodule(), c2_bimodule(),
              base_as_bimodule(i2_objects())):
        assert validate_structures(m) == []


def test_inclusion_morphism_is_valid():
    assert validate_structures(i2_inclusion()) == []


def test_broken_morphism_is_flagged():
    r = i2_objects()
    b = i2_algebra()
    # send both idempotents to ia: unit not preserved
    m = RationalMatrix(4, 2, {(0, 0): ONE, (0, 1): ONE})
    report = validate_structures(AlgebraMorphism(r, b, m))
    assert any(v["axiom"] == "unit preserved" for v in report)


def test_associativity_perturbation_has_witness():
    a = i2_algebra()
    mul = dict(a.mul)
    mul[(2, 3)] = {0: ONE}  # redirect f*g to the wrong identity loop
    broken = FinAlgebra(a.labels, mul, a.unit)
    report = validate_structures(broken)
    hits = [v for v in report if v["axiom"] == "associativity"]
    assert hits
    assert [2, 3, 2] in [v["witness"] for v in hits]


def test_bimodule_unit_violation():
    m = i2_bimodule()
    broken = Bimodule(m.base, m.dim,
                      [RationalMatrix.zeros(4, 4), m.left_action[1]],
                      m.right_action)
    report = validate_structures(broken)
    assert any(v["axiom"] == "left unit acts as identity" for v in report)


# -- tensor over R ----------------------------------------------------------------


def test_i2_tensor_square_dim_8():
    m = i2_bimodule()
    t = tensor_over_R([m, m])
    assert t.dim == 8
    # every representative pair is endpoint-composable: source of the first
    # factor matches target of the second
    source = {0: 0, 1: 1, 2: 0, 3: 1}
    target = {0: 0, 1: 1, 2: 1, 3: 0}
    for x, y in t.basis:
        assert source[x] == target[y]


def test_fast_path_matches_generic_cokernel():
    m = i2_bimodule()
    fast = tensor_over_R([m, m])
    slow = tensor_over_R([m, m], force_generic=True)
    assert fast.dim == slow.dim
    assert fast.projection == slow.projection
    assert fast.section == slow.section
    assert fast.basis == slow.basis
    for a, b in zip(fast.module.left_action, slow.module.left_action):
        assert a == b
    for a, b in zip(fast.module.right_action, slow.module.right_action):
        assert a == b


def test_c2_tensor_over_field_dim_4():
    m = c2_bimodule()
    t = tensor_over_R([m, m])
    assert t.dim == 4
    assert t.ambient_dim == 4
    assert t.projection == RationalMatrix.identity(4)


def test_tensor_with_base_is_identity_on_dims():
    for m in (i2_bimodule(), c2_bimodule(), i2_onesided_bimodule()):
        r = base_as_bimodule(m.base)
        t = tensor_over_R([m, r])
        assert t.dim == m.dim
        # canonical evaluation m (x) r -> m.r is bijective on the quotient
        entries = {}
        for j in range(m.dim):
            for rr in range(m.base.dim):
                for i, v in m.right_action[rr].column(j).items():
                    key = (i, j * m.base.dim + rr)
                    entries[key] = entries.get(key, Fraction(0)) + v
        can_full = RationalMatrix(m.dim, m.dim * m.base.dim, entries)
        can = can_full @ t.section
        invert(can)  # raises if singular


def test_mismatched_bases_rejected():
    with pytest.raises(ValueError):
        tensor_over_R([i2_bimodule(), c2_bimodule()])
    with pytest.raises(ValueError):
        tensor_over_R([])


def test_dimension_guard():
    m = i2_bimodule()
    with pytest.raises(DimensionGuardError):
        tensor_over_R([m, m, m], guard=10)


def test_induced_actions_make_valid_bimodule():
    t = tensor_over_R([i2_bimodule(), i2_bimodule()])
    assert validate_structures(t.module) == []


# -- Pi and the rotation ---------------------------------------------------------


def test_pi_of_i2_algebra_is_identity_loop_classes():
    p = pi_and_flip([i2_bimodule()])
    assert p.dim == 2
    # the two arrow basis vectors die in the quotient, the loops survive
    assert p.projection.column(2) == {}
    assert p.projection.column(3) == {}
    assert p.projection.column(0) != {}
    assert p.projection.column(1) != {}


def test_pi_of_base_counts_objects():
    p = pi_and_flip([base_as_bimodule(i2_objects())])
    assert p.dim == 2
    q = pi_and_flip([base_as_bimodule(rationals())])
    assert q.dim == 1


def test_flip_on_c2_square_is_permutation_with_order_two():
    m = c2_bimodule()
    p = pi_and_flip([m, m])
    assert p.dim == 4
    assert p.flip @ p.flip == RationalMatrix.identity(4)
    # permutation-like: a single unit entry per row
    seen_rows = set()
    for (i, _j), v in p.flip.entries().items():
        assert v == ONE
        assert i not in seen_rows
        seen_rows.add(i)
    assert len(seen_rows) == 4


def test_flip_cubed_is_identity_on_triple():
    m = i2_bimodule()
    p = pi_and_flip([m, m, m])
    assert p.dim == 8  # closed endpoint-compatible triples
    assert p.flip @ p.flip @ p.flip == RationalMatrix.identity(8)


def test_flip_swaps_mixed_factors_bijectively():
    m = i2_bimodule()
    n = i2_onesided_bimodule()
    p_mn = pi_and_flip([m, n])
    p_nm = pi_and_flip([n, m])
    assert p_nm.flip @ p_mn.flip == RationalMatrix.identity(p_mn.dim)
    assert p_mn.flip @ p_nm.flip == RationalMatrix.identity(p_nm.dim)


# -- corings ----------------------------------------------------------------------


def diagonal_coring() -> Coring:
    """The arrow coring of the two-object groupoid: comultiplication doubles a
    basis arrow, counit sends it to the idempotent at its source."""
    carrier = i2_onesided_bimodule()
    t2 = tensor_over_R([carrier, carrier])
    diag_full = RationalMatrix(16, 4, {(5 * j, j): ONE for j in range(4)})
    delta = t2.projection @ diag_full
    # sources: ia -> a, ib -> b, f -> a, g -> b
    eps = RationalMatrix(2, 4, {(0, 0): ONE, (1, 1): ONE, (0, 2): ONE,
                                (1, 3): ONE})
    return Coring(carrier, delta, eps, t2)


def test_diagonal_coring_is_valid():
    assert validate_structures(diagonal_coring()) == []


def test_counit_of_unit_is_base_unit():
    c = diagonal_coring()
    unit_b = RationalMatrix(4, 1, {(0, 0): ONE, (1, 0): ONE})
    unit_r = RationalMatrix(2, 1, {(0, 0): ONE, (1, 0): ONE})
    assert c.eps @ unit_b == unit_r


def test_coring_with_wrong_counit_is_flagged():
    c = diagonal_coring()
    # send the arrow f to the idempotent at its target instead of its source
    bad_eps = RationalMatrix(2, 4, {(0, 0): ONE, (1, 1): ONE, (1, 2): ONE,
                                    (1, 3): ONE})
    report = validate_structures(Coring(c.carrier, c.delta, bad_eps, c.tensor))
    assert report != []
    axioms = {v["axiom"] for v in report}
    assert "left counit law" in axioms or "right counit law" in axioms


# -- serialization ----------------------------------------------------------------


def test_algebra_json_roundtrip():
    a = i2_algebra()
    b = FinAlgebra.from_json(a.to_json())
    assert b.labels == a.labels
    assert b.unit == a.unit
    for i in range(4):
        for j in range(4):
            assert b.product(i, j) == a.product(i, j)


def test_bimodule_json_roundtrip():
    m = i2_bimodule()
    n = Bimodule.from_json(m.base, m.to_json())
    assert n.dim == m.dim
    assert n.left_action == m.left_action
    assert n.right_action == m.right_action
