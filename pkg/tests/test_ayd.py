import json
from fractions import Fraction

import pytest

from cychom.ayd import (
    GradedBModule,
    adjoint_module,
    ayd_on_base,
    decompose_and_induce,
    validate_ayd,
)
from cychom.groupoid_alg import FinGroupoid, build_bialgebroid
from cychom.qlinalg import RationalMatrix

ONE = Fraction(1)


def c2_bialgebroid():
    g = FinGroupoid(
        ["*"], ["e", "s"], {"e": "*", "s": "*"}, {"e": "*", "s": "*"}, {"*": "e"},
        {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})
    return build_bialgebroid(g)


def i2_bialgebroid():
    g = FinGroupoid(
        ["a", "b"], ["ia", "ib", "f", "g"],
        {"ia": "a", "ib": "b", "f": "a", "g": "b"},
        {"ia": "a", "ib": "b", "f": "b", "g": "a"},
        {"a": "ia", "b": "ib"},
        {("ia", "ia"): "ia", ("ib", "ib"): "ib",
         ("ia", "g"): "g", ("g", "ib"): "g",
         ("ib", "f"): "f", ("f", "ia"): "f",
         ("f", "g"): "ib", ("g", "f"): "ia"})
    return build_bialgebroid(g)


def s3_bialgebroid():
    perms = {"e": (0, 1, 2), "a": (1, 0, 2), "b": (0, 2, 1), "c": (2, 1, 0),
             "r": (1, 2, 0), "rr": (2, 0, 1)}
    names = list(perms)
    compose = {}
    for x in names:
        for y in names:
            prod = tuple(perms[x][perms[y][i]] for i in range(3))
            compose[(x, y)] = next(k for k, v in perms.items() if v == prod)
    g = FinGroupoid(["*"], names, {m: "*" for m in names},
                    {m: "*" for m in names}, {"*": "e"}, compose)
    return build_bialgebroid(g)


# -- adjoint modules and the validator ----------------------------------------


def test_c2_adjoint_is_valid_and_stable():
    adj = adjoint_module(c2_bialgebroid())
    assert adj.components == {"e": 1, "s": 1}
    # abelian conjugation: s fixes both components
    assert adj.action["s"] == RationalMatrix.identity(2)
    assert validate_ayd(adj, check_stable=True) == []


def test_unit_acting_as_zero_is_a_unit_law_violation():
    bgd = c2_bialgebroid()
    bad = GradedBModule(bgd, {"s": 1},
                        {"e": RationalMatrix(1, 1, {}),
                         "s": RationalMatrix(1, 1, {})})
    report = validate_ayd(bad)
    assert report[0] == {"axiom": "unit acts as identity", "witness": [0]}


def test_i2_adjoint_swaps_the_identity_components():
    adj = adjoint_module(i2_bialgebroid())
    assert adj.components == {"ia": 1, "ib": 1}
    assert sorted(adj.action["f"].entries()) == [(1, 0)]
    assert sorted(adj.action["g"].entries()) == [(0, 1)]
    assert validate_ayd(adj, check_stable=True) == []


def test_s3_adjoint_is_valid_and_stable():
    adj = adjoint_module(s3_bialgebroid())
    assert adj.total_dim == 6
    assert validate_ayd(adj, check_stable=True) == []


def test_sign_module_is_valid_but_not_stable():
    bgd = c2_bialgebroid()
    sign = GradedBModule(
        bgd, {"e": 1, "s": 1},
        {"e": RationalMatrix.identity(2),
         "s": RationalMatrix(2, 2, {(0, 0): ONE, (1, 1): -ONE})})
    assert validate_ayd(sign) == []
    assert validate_ayd(sign, check_stable=True) == [
        {"axiom": "stability", "witness": ["s", 0]}]


def test_grading_violation_is_caught_by_both_routes():
    bgd = i2_bialgebroid()
    adj = adjoint_module(bgd)
    pert = GradedBModule(bgd, dict(adj.components),
                         {**adj.action, "f": RationalMatrix(2, 2, {(0, 0): ONE})})
    axioms = {v["axiom"] for v in validate_ayd(pert)}
    # the component-wise condition and the matrix form of the exchange law agree
    assert "conjugation grading" in axioms
    assert "action-coaction exchange" in axioms
    assert "action multiplicative" in axioms


def test_missing_action_matrix_is_reported():
    bgd = i2_bialgebroid()
    adj = adjoint_module(bgd)
    broken = GradedBModule(bgd, dict(adj.components),
                           {k: v for k, v in adj.action.items() if k != "g"})
    assert validate_ayd(broken) == [{"axiom": "action defined", "witness": ["g"]}]


def test_component_on_a_non_loop_is_reported():
    bgd = i2_bialgebroid()
    nl = GradedBModule(bgd, {"f": 1},
                       {m: RationalMatrix(1, 1, {})
                        for m in bgd.groupoid.morphisms})
    assert validate_ayd(nl)[0] == {"axiom": "components on loops",
                                   "witness": ["f"]}


# -- orbit decomposition and induction -----------------------------------------


def test_s3_adjoint_decomposes_by_conjugacy_class():
    adj = adjoint_module(s3_bialgebroid())
    parts = decompose_and_induce(adj)
    assert [part.orbit for part in parts] == [["e"], ["a", "b", "c"], ["r", "rr"]]
    assert [sum(part.submodule.components.values()) for part in parts] == [1, 3, 2]
    assert sum(sum(p.submodule.components.values()) for p in parts) == adj.total_dim
    for part in parts:
        dim = sum(part.submodule.components.values())
        assert part.phi @ part.psi == RationalMatrix.identity(dim)
        assert part.psi @ part.phi == RationalMatrix.identity(dim)
        assert validate_ayd(part.submodule, check_stable=True) == []


def test_s3_transversal_sections_and_centralizer_actions():
    parts = decompose_and_induce(adjoint_module(s3_bialgebroid()))
    swap_part = parts[1]
    assert swap_part.transversal == "a"
    assert swap_part.section["a"] == "e"
    # the section arrow conjugates the transversal onto the listed loop
    g = s3_bialgebroid().groupoid
    for loop, arrow in swap_part.section.items():
        assert g.conjugate(arrow, "a") == loop
    assert set(swap_part.centralizer_action) == {"e", "a"}
    assert swap_part.centralizer_action["a"] == RationalMatrix.identity(1)


def test_module_concentrated_on_one_orbit():
    adj = adjoint_module(i2_bialgebroid())
    parts = decompose_and_induce(adj)
    assert len(parts) == 1
    assert parts[0].orbit == ["ia", "ib"]
    assert parts[0].section == {"ia": "ia", "ib": "f"}
    assert parts[0].phi @ parts[0].psi == RationalMatrix.identity(2)


def test_zero_module_decomposes_to_nothing():
    bgd = s3_bialgebroid()
    zero = GradedBModule(bgd, {}, {h: RationalMatrix(0, 0, {})
                                   for h in bgd.groupoid.morphisms})
    assert validate_ayd(zero, check_stable=True) == []
    assert decompose_and_induce(zero) == []


def test_decomposition_rejects_invalid_modules():
    bgd = i2_bialgebroid()
    adj = adjoint_module(bgd)
    pert = GradedBModule(bgd, dict(adj.components),
                         {**adj.action, "f": RationalMatrix(2, 2, {(0, 0): ONE})})
    with pytest.raises(ValueError, match="not an admissible module"):
        decompose_and_induce(pert)


# -- modular pairs on the base ---------------------------------------------------


def test_trivial_pair_on_c2():
    bgd = c2_bialgebroid()
    report, module = ayd_on_base(bgd, bgd.eps, bgd.b.unit_column())
    assert report == []
    assert module is not None
    assert module.components == {"e": 1}
    assert module.action["s"] == RationalMatrix.identity(1)


def test_sigma_grouplike_on_c2_is_stable():
    bgd = c2_bialgebroid()
    sigma = RationalMatrix(2, 1, {(1, 0): ONE})
    report, module = ayd_on_base(bgd, bgd.eps, sigma)
    assert report == []
    assert module is not None and module.components == {"s": 1}


def test_non_grouplike_vector_is_rejected():
    bgd = c2_bialgebroid()
    both = RationalMatrix(2, 1, {(0, 0): ONE, (1, 0): ONE})
    report, module = ayd_on_base(bgd, bgd.eps, both)
    assert module is None
    assert "grouplike coproduct" in {v["axiom"] for v in report}
    assert "grouplike counit" in {v["axiom"] for v in report}


def test_source_counit_is_not_a_valid_functional_on_i2():
    bgd = i2_bialgebroid()
    report, module = ayd_on_base(bgd, bgd.eps, bgd.b.unit_column())
    assert module is None
    assert "functional respects base action" in {v["axiom"] for v in report}


def test_target_functional_on_i2_induces_the_swap_module():
    bgd = i2_bialgebroid()
    g = bgd.groupoid
    chi = RationalMatrix(
        2, 4, {(g.object_index(g.tgt[m]), g.morphism_index(m)): ONE
               for m in g.morphisms})
    report, module = ayd_on_base(bgd, chi, bgd.b.unit_column())
    assert report == []
    assert module is not None
    assert module.components == {"ia": 1, "ib": 1}
    assert sorted(module.action["f"].entries()) == [(1, 0)]
    assert validate_ayd(module, check_stable=True) == []


def test_grouplike_of_non_loops_fails_the_exchange_laws():
    bgd = i2_bialgebroid()
    g = bgd.groupoid
    chi = RationalMatrix(
        2, 4, {(g.object_index(g.tgt[m]), g.morphism_index(m)): ONE
               for m in g.morphisms})
    non_loops = RationalMatrix(4, 1, {(2, 0): ONE, (3, 0): ONE})  # f + g
    report, module = ayd_on_base(bgd, chi, non_loops)
    assert module is None
    assert "counit exchange" in {v["axiom"] for v in report}


# -- serialization ----------------------------------------------------------------


def test_graded_module_json_roundtrip():
    bgd = i2_bialgebroid()
    adj = adjoint_module(bgd)
    data = json.loads(json.dumps(adj.to_json()))
    back = GradedBModule.from_json(bgd, data)
    assert back.components == adj.components
    assert back.action == adj.action
