"""Strongly graded algebras: Galois validation, T_S, and the comparison maps."""

import json
from fractions import Fraction

import pytest

from cychom.ayd import adjoint_module, validate_ayd
from cychom.algebra_cat import FinAlgebra
from cychom.galois import (
    StronglyGradedAlgebra,
    canonical_map,
    omega_iso,
    regular_graded,
    relative_compare,
    ts_module,
    validate_galois,
)
from cychom.groupoid_alg import FinGroupoid, build_bialgebroid
from cychom.qlinalg import RationalMatrix

ONE = Fraction(1)


def c2_group():
    return FinGroupoid(["*"], ["e", "s"], {"e": "*", "s": "*"},
                       {"e": "*", "s": "*"}, {"*": "e"},
                       {("e", "e"): "e", ("e", "s"): "s",
                        ("s", "e"): "s", ("s", "s"): "e"})


def i2_groupoid():
    return FinGroupoid(
        ["a", "b"], ["ia", "ib", "f", "g"],
        {"ia": "a", "ib": "b", "f": "a", "g": "b"},
        {"ia": "a", "ib": "b", "f": "b", "g": "a"},
        {"a": "ia", "b": "ib"},
        {("ia", "ia"): "ia", ("ib", "ib"): "ib",
         ("f", "ia"): "f", ("ib", "f"): "f",
         ("g", "ib"): "g", ("ia", "g"): "g",
         ("g", "f"): "ia", ("f", "g"): "ib"})


def s3_group():
    perms = {"e": (0, 1, 2), "a": (1, 0, 2), "b": (0, 2, 1),
             "c": (2, 1, 0), "r": (1, 2, 0), "rr": (2, 0, 1)}
    names = ["e", "a", "b", "c", "r", "rr"]
    by_perm = {p: n for n, p in perms.items()}
    compose = {}
    for x in names:
        for y in names:
            px, py = perms[x], perms[y]
            compose[(x, y)] = by_perm[tuple(px[py[i]] for i in range(3))]
    return FinGroupoid(["*"], names, {n: "*" for n in names},
                       {n: "*" for n in names}, {"*": "e"}, compose)


def c2_algebra():
    return FinAlgebra(["e", "s"], {(0, 0): {0: ONE}, (0, 1): {1: ONE},
                                   (1, 0): {1: ONE}, (1, 1): {0: ONE}},
                      {0: ONE})


# -- validation ------------------------------------------------------------------


def test_regular_graded_is_valid():
    for g in (c2_group(), i2_groupoid(), s3_group()):
        assert validate_galois(regular_graded(g)) == []


def test_regular_graded_rejects_broken_tables():
    broken = FinGroupoid(["*"], ["e", "s"], {"e": "*", "s": "*"},
                         {"e": "*", "s": "*"}, {"*": "e"},
                         {("e", "e"): "e", ("e", "s"): "s",
                          ("s", "e"): "s"})
    with pytest.raises(ValueError, match="not a groupoid"):
        regular_graded(broken)


def test_perturbed_multiplication_is_reported():
    # s.s lands in the s block although s o s = e
    alg = FinAlgebra(["e", "s"], {(0, 0): {0: ONE}, (0, 1): {1: ONE},
                                  (1, 0): {1: ONE}, (1, 1): {1: ONE}},
                     {0: ONE})
    bad = StronglyGradedAlgebra(
        c2_group(), {"e": 1, "s": 1}, alg, ["e", "s"],
        {"e": [({0: ONE}, {0: ONE})], "s": [({1: ONE}, {1: ONE})]})
    report = validate_galois(bad)
    assert {"axiom": "grading multiplicative", "witness": ["s", "s"]} in report


def test_bad_witnesses_are_reported():
    good = regular_graded(c2_group())
    bad = StronglyGradedAlgebra(
        good.groupoid, dict(good.components), good.algebra,
        list(good.grading),
        {"e": [({0: ONE}, {0: ONE})], "s": [({1: Fraction(2)}, {1: ONE})]})
    assert validate_galois(bad) == [
        {"axiom": "strong grading", "witness": ["s"]}]


def test_witness_in_wrong_block_is_reported():
    good = regular_graded(c2_group())
    bad = StronglyGradedAlgebra(
        good.groupoid, dict(good.components), good.algebra,
        list(good.grading),
        {"e": [({0: ONE}, {0: ONE})], "s": [({0: ONE}, {1: ONE})]})
    axioms = [p["axiom"] for p in validate_galois(bad)]
    assert "witness graded" in axioms


def test_unit_outside_identity_blocks_is_reported():
    alg = FinAlgebra(["e", "s"], {(0, 0): {0: ONE}, (0, 1): {1: ONE},
                                  (1, 0): {1: ONE}, (1, 1): {0: ONE}},
                     {0: ONE, 1: ONE})
    bad = StronglyGradedAlgebra(
        c2_group(), {"e": 1, "s": 1}, alg, ["e", "s"],
        {"e": [({0: ONE}, {0: ONE})], "s": [({1: ONE}, {1: ONE})]})
    assert {"axiom": "unit decomposition",
            "witness": ["s"]} in validate_galois(bad)


def test_unknown_component_morphism_is_reported():
    alg = c2_algebra()
    bad = StronglyGradedAlgebra(
        c2_group(), {"e": 1, "zz": 1}, alg, ["e", "zz"], {})
    axioms = [p["axiom"] for p in validate_galois(bad)]
    assert "components on morphisms" in axioms


# -- the canonical map -----------------------------------------------------------


def test_canonical_map_exact_identities():
    # two objects connected by an arrow: can and its inverse compose to the
    # identity on both sides, exactly
    can, can_inv, pairs = canonical_map(regular_graded(i2_groupoid()))
    assert len(pairs) == 8
    eye = RationalMatrix.identity(8)
    assert can @ can_inv == eye
    assert can_inv @ can == eye


def test_canonical_map_sizes():
    can, _, pairs = canonical_map(regular_graded(c2_group()))
    assert (can.rows, can.cols) == (4, 4)
    can3, _, pairs3 = canonical_map(regular_graded(s3_group()))
    assert (can3.rows, can3.cols) == (36, 36)
    assert len(pairs3) == 36


def test_canonical_map_rejects_flat_grading():
    # everything concentrated in the identity component: the pair basis is
    # strictly bigger than the balanced square
    alg = FinAlgebra(["u", "w"], {(0, 0): {0: ONE}, (0, 1): {1: ONE},
                                  (1, 0): {1: ONE}, (1, 1): {0: ONE}},
                     {0: ONE})
    flat = StronglyGradedAlgebra(c2_group(), {"e": 2}, alg, ["e", "e"],
                                 {"e": [({0: ONE}, {0: ONE})], "s": []})
    with pytest.raises(ValueError, match="not square"):
        canonical_map(flat)
    assert validate_galois(flat) == [
        {"axiom": "strong grading", "witness": ["s"]}]


# -- the coefficient module ------------------------------------------------------


def test_ts_module_equals_adjoint_module():
    for g in (c2_group(), i2_groupoid(), s3_group()):
        ts = ts_module(regular_graded(g))
        adj = adjoint_module(build_bialgebroid(g))
        assert ts.components == adj.components
        assert ts.action == adj.action


def test_ts_module_i2_swaps_the_point_classes():
    ts = ts_module(regular_graded(i2_groupoid()))
    assert list(ts.components.items()) == [("ia", 1), ("ib", 1)]
    assert ts.total_dim == 2  # the non-loop blocks f, g contribute nothing
    assert ts.action["f"] == RationalMatrix(2, 2, {(1, 0): ONE})
    assert ts.action["g"] == RationalMatrix(2, 2, {(0, 1): ONE})


def test_ts_module_is_admissible_and_stable():
    for g in (c2_group(), i2_groupoid(), s3_group()):
        ts = ts_module(regular_graded(g))
        assert validate_ayd(ts) == []
        assert validate_ayd(ts, check_stable=True) == []


def test_ts_module_gates_on_validation():
    good = regular_graded(c2_group())
    bad = StronglyGradedAlgebra(
        good.groupoid, dict(good.components), good.algebra,
        list(good.grading),
        {"e": [({0: ONE}, {0: ONE})], "s": []})
    with pytest.raises(ValueError,
                       match="not a strongly graded Galois extension"):
        ts_module(bad)


# -- the comparison isomorphism --------------------------------------------------


def test_omega_c2_shapes_and_report():
    omegas, report = omega_iso(regular_graded(c2_group()), 3)
    assert report == []
    assert [(o.rows, o.cols) for o in omegas] == [
        (2, 2), (4, 4), (8, 8), (16, 16)]


def test_omega_degree_zero_is_the_class_map():
    omegas, _ = omega_iso(regular_graded(c2_group()), 1)
    assert omegas[0] == RationalMatrix.identity(2)
    omegas3, _ = omega_iso(regular_graded(s3_group()), 1)
    assert omegas3[0] == RationalMatrix.identity(6)


def test_omega_degree_one_frozen_matrix():
    # columns are (t_0, t_1) pairs in basis order (e,e), (e,s), (s,e), (s,s);
    # rows are the tuples (e,e), (s,e) on the loop e, then the same on s
    omegas, _ = omega_iso(regular_graded(c2_group()), 1)
    assert omegas[1] == RationalMatrix(4, 4, {(0, 0): ONE, (3, 1): ONE,
                                              (2, 2): ONE, (1, 3): ONE})


def test_omega_i2_and_s3_reports_are_clean():
    _, report = omega_iso(regular_graded(i2_groupoid()), 3)
    assert report == []
    _, report3 = omega_iso(regular_graded(s3_group()), 2)
    assert report3 == []


def test_omega_gates_on_validation():
    good = regular_graded(c2_group())
    bad = StronglyGradedAlgebra(
        good.groupoid, dict(good.components), good.algebra,
        list(good.grading), {})
    with pytest.raises(ValueError,
                       match="not a strongly graded Galois extension"):
        omega_iso(bad, 1)


# -- homology both ways ----------------------------------------------------------


def test_relative_compare_c2():
    res = relative_compare(regular_graded(c2_group()), 3)
    assert res["direct"] == {"hh": [2, 0, 0], "hc": [2, 0, 2]}
    assert res["reduced"]["hh"] == [2, 0, 0]
    assert res["reduced"]["hc"] == [2, 0, 2]
    assert res["agree"] and res["findings"] == []


def test_relative_compare_i2():
    res = relative_compare(regular_graded(i2_groupoid()), 3)
    assert res["direct"] == {"hh": [1, 0, 0], "hc": [1, 0, 1]}
    assert res["agree"]


def test_relative_compare_s3():
    res = relative_compare(regular_graded(s3_group()), 3)
    assert res["direct"] == {"hh": [3, 0, 0], "hc": [3, 0, 3]}
    assert res["reduced"]["hc"] == [3, 0, 3]
    assert res["agree"]
    assert [(o["transversal"], o["hh"], o["hc"])
            for o in res["reduced"]["orbits"]] == [
        ("e", [1, 0, 0], [1, 0, 1]),
        ("a", [1, 0, 0], [1, 0, 1]),
        ("r", [1, 0, 0], [1, 0, 1])]


# -- serialization ---------------------------------------------------------------


def test_json_roundtrip():
    t = regular_graded(i2_groupoid())
    data = json.loads(json.dumps(t.to_json(), sort_keys=True))
    back = StronglyGradedAlgebra.from_json(data)
    assert validate_galois(back) == []
    assert back.components == t.components
    assert back.grading == t.grading
    assert back.witnesses == t.witnesses
    assert back.algebra.labels == t.algebra.labels
    assert back.algebra.mul == t.algebra.mul


def test_json_restores_component_order():
    t = regular_graded(c2_group())
    data = t.to_json()
    data["components"] = {"s": 1, "e": 1}  # scrambled on the wire
    back = StronglyGradedAlgebra.from_json(data)
    assert list(back.components) == ["e", "s"]
    assert validate_galois(back) == []
