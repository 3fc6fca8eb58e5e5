import dataclasses
from fractions import Fraction

import pytest

from cychom.groupoid_alg import (
    FinGroupoid,
    GSet,
    action_groupoid,
    build_bialgebroid,
    loops_orbits,
    validate_hopf_axioms,
)
from cychom.qlinalg import RationalMatrix, invert, kron


def c2_group():
    return FinGroupoid(
        ["*"], ["e", "s"], {"e": "*", "s": "*"}, {"e": "*", "s": "*"}, {"*": "e"},
        {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})


def i2_groupoid():
    return FinGroupoid(
        ["a", "b"], ["ia", "ib", "f", "g"],
        {"ia": "a", "ib": "b", "f": "a", "g": "b"},
        {"ia": "a", "ib": "b", "f": "b", "g": "a"},
        {"a": "ia", "b": "ib"},
        {("ia", "ia"): "ia", ("ib", "ib"): "ib",
         ("ia", "g"): "g", ("g", "ib"): "g",
         ("ib", "f"): "f", ("f", "ia"): "f",
         ("f", "g"): "ib", ("g", "f"): "ia"})


def s3_group():
    perms = {"e": (0, 1, 2), "a": (1, 0, 2), "b": (0, 2, 1), "c": (2, 1, 0),
             "r": (1, 2, 0), "rr": (2, 0, 1)}
    names = list(perms)
    compose = {}
    for x in names:
        for y in names:
            prod = tuple(perms[x][perms[y][i]] for i in range(3))
            compose[(x, y)] = next(k for k, v in perms.items() if v == prod)
    return FinGroupoid(["*"], names, {m: "*" for m in names},
                       {m: "*" for m in names}, {"*": "e"}, compose)


def swap_gset():
    return GSet(c2_group(), ["a", "b"],
                {("e", "a"): "a", ("e", "b"): "b",
                 ("s", "a"): "b", ("s", "b"): "a"})


def trivial_gset():
    return GSet(c2_group(), ["a", "b"],
                {("e", "a"): "a", ("e", "b"): "b",
                 ("s", "a"): "a", ("s", "b"): "b"})


def basis_column(dim, k):
    return RationalMatrix(dim, 1, {(k, 0): Fraction(1)})


# -- groupoid validation ------------------------------------------------------


def test_fixture_groupoids_are_valid():
    assert c2_group().validate() == []
    assert i2_groupoid().validate() == []
    assert s3_group().validate() == []


def test_missing_composition_entry_is_reported():
    g = i2_groupoid()
    bad = dataclasses.replace(
        g, compose={k: v for k, v in g.compose.items() if k != ("f", "g")})
    assert bad.validate()[0] == {"axiom": "composition defined",
                                 "witness": ["f", "g"]}


def test_spurious_composition_entry_is_reported():
    g = i2_groupoid()
    table = dict(g.compose)
    table[("f", "f")] = "ia"
    bad = dataclasses.replace(g, compose=table)
    assert bad.validate()[0] == {"axiom": "composition composable",
                                 "witness": ["f", "f"]}


def test_broken_associativity_is_reported_with_witness_triple():
    g = s3_group()
    table = dict(g.compose)
    assert table[("a", "b")] == "r"
    table[("a", "b")] = "rr"
    bad = dataclasses.replace(g, compose=table)
    report = bad.validate()
    assert report[0] == {"axiom": "associativity", "witness": ["a", "a", "b"]}
    assert {v["axiom"] for v in report} == {"associativity"}


def test_broken_identity_law_is_reported():
    g = s3_group()
    table = dict(g.compose)
    table[("e", "a")] = "b"
    bad = dataclasses.replace(g, compose=table)
    report = bad.validate()
    assert report[0] == {"axiom": "identity law", "witness": ["a"]}


def test_inverse_and_conjugation_helpers():
    g = i2_groupoid()
    assert g.inverse_of("f") == "g"
    assert g.inverse_of("ia") == "ia"
    assert g.conjugate("f", "ia") == "ib"
    assert g.conjugate("f", "ib") is None  # base point mismatch
    s3 = s3_group()
    # r a r^{-1}: i -> r[a[rr[i]]] gives the transposition fixing 0
    assert s3.conjugate("r", "a") == "b"


# -- bialgebroid construction -------------------------------------------------


def test_c2_bialgebroid_shapes_and_twist():
    bgd = build_bialgebroid(c2_group())
    assert bgd.b.dim == 2 and bgd.r.dim == 1
    assert bgd.square.dim == 4 and bgd.square_op.dim == 4
    # the twist sends the pair (s, s) to (e, s): column 3 hits row 1
    assert bgd.theta @ basis_column(4, 3) == basis_column(4, 1)
    assert bgd.theta_inv @ basis_column(4, 3) == basis_column(4, 1)


def test_i2_bialgebroid_unit_and_dims():
    bgd = build_bialgebroid(i2_groupoid())
    assert bgd.b.dim == 4
    assert bgd.b.unit == {0: Fraction(1), 1: Fraction(1)}  # id_a + id_b
    assert bgd.square.dim == 8 and bgd.square_op.dim == 8


def test_empty_groupoid_is_rejected():
    with pytest.raises(ValueError, match="objects present"):
        build_bialgebroid(FinGroupoid([], [], {}, {}, {}, {}))


def test_invalid_groupoid_is_rejected_with_witness():
    g = i2_groupoid()
    bad = dataclasses.replace(
        g, compose={k: v for k, v in g.compose.items() if k != ("f", "g")})
    with pytest.raises(ValueError, match="composition defined"):
        build_bialgebroid(bad)


def test_hopf_axioms_hold_for_group_and_groupoid_fixtures():
    for g in (c2_group(), i2_groupoid(), s3_group()):
        bgd = build_bialgebroid(g)
        assert validate_hopf_axioms(bgd, side="right") == []
        assert validate_hopf_axioms(bgd, side="left") == []


def test_hopf_axioms_hold_for_action_groupoids():
    for gs in (swap_gset(), trivial_gset()):
        groupoid, _report = action_groupoid(gs)
        bgd = build_bialgebroid(groupoid)
        assert validate_hopf_axioms(bgd, side="right") == []
        assert validate_hopf_axioms(bgd, side="left") == []


def test_unknown_side_is_rejected():
    bgd = build_bialgebroid(c2_group())
    with pytest.raises(ValueError, match="side"):
        validate_hopf_axioms(bgd, side="middle")


def test_inverse_image_times_direct_image_is_counit_unit():
    # on the order-two group: the two legs produced from s multiply to e
    bgd = build_bialgebroid(c2_group())
    mp = bgd.theta_inv @ bgd.square.projection \
        @ kron(bgd.b.unit_column(), RationalMatrix.identity(2))
    mp_full = bgd.square_op.section @ mp
    sigma = basis_column(2, 1)
    product = bgd.b.multiplication_matrix() @ mp_full @ sigma
    assert product == basis_column(2, 0)
    assert product == bgd.xi_zeta.matrix @ bgd.eps @ sigma


def test_zeroed_twist_entry_only_breaks_bijectivity():
    bgd = build_bialgebroid(i2_groupoid())
    entries = dict(bgd.theta.entries())
    del entries[sorted(entries)[0]]
    broken = dataclasses.replace(
        bgd, theta=RationalMatrix(bgd.theta.rows, bgd.theta.cols, entries))
    report = validate_hopf_axioms(broken, side="right")
    assert report != []
    assert {v["axiom"] for v in report} == {"twist bijective"}


def test_target_counit_on_the_source_side_is_detected():
    bgd = build_bialgebroid(i2_groupoid())
    g = bgd.groupoid
    wrong = RationalMatrix(
        bgd.r.dim, bgd.b.dim,
        {(g.object_index(g.tgt[m]), g.morphism_index(m)): Fraction(1)
         for m in g.morphisms})
    report = validate_hopf_axioms(dataclasses.replace(bgd, eps=wrong), "right")
    assert {v["axiom"] for v in report} == {
        "counit multiplicativity", "inverse twist (vii)", "inverse twist (viii)"}


# -- loops, orbits, centralizers ----------------------------------------------


def test_i2_loop_data():
    lo = loops_orbits(i2_groupoid())
    assert lo.loops == ["ia", "ib"]
    assert lo.orbits == [["ia", "ib"]]
    assert lo.transversals == ["ia"]
    assert lo.centralizers == {"ia": ["ia"]}
    assert lo.arrows_from == {"a": ["ia", "f"], "b": ["ib", "g"]}


def test_c2_loop_data_is_abelian():
    lo = loops_orbits(c2_group())
    assert lo.orbits == [["e"], ["s"]]
    assert lo.centralizers == {"e": ["e", "s"], "s": ["e", "s"]}


def test_s3_conjugacy_classes():
    lo = loops_orbits(s3_group())
    assert [len(o) for o in lo.orbits] == [1, 3, 2]
    assert lo.transversals == ["e", "a", "r"]
    assert [len(lo.centralizers[t]) for t in lo.transversals] == [6, 2, 3]
    assert lo.centralizers["r"] == ["e", "r", "rr"]


def test_orbit_partition_is_conjugation_invariant():
    g = s3_group()
    lo = loops_orbits(g)
    orbit_of = {m: i for i, orbit in enumerate(lo.orbits) for m in orbit}
    for h in g.morphisms:
        for l in lo.loops:
            conj = g.conjugate(h, l)
            if conj is not None:
                assert orbit_of[conj] == orbit_of[l]


def _freeness_rank(g, l):
    """Orbit-section basis of the arrows out of s(l) over the centralizer."""
    lo = loops_orbits(g)
    cent = lo.centralizers[l]
    arrows = lo.arrows_from[g.src[l]]
    reps, covered = [], set()
    for m in arrows:
        if m not in covered:
            reps.append(m)
            covered.update(g.compose[(m, k)] for k in cent)
    index = {m: i for i, m in enumerate(arrows)}
    mat = RationalMatrix(
        len(arrows), len(reps) * len(cent),
        {(index[g.compose[(rep, k)]], i * len(cent) + j): Fraction(1)
         for i, rep in enumerate(reps) for j, k in enumerate(cent)})
    invert(mat)  # must be square and nonsingular
    return len(reps), len(cent), len(arrows)


def test_arrow_spaces_are_free_over_centralizers():
    assert _freeness_rank(i2_groupoid(), "ia") == (2, 1, 2)
    s3 = s3_group()
    assert _freeness_rank(s3, "a") == (3, 2, 6)
    assert _freeness_rank(s3, "r") == (2, 3, 6)


# -- action groupoids -----------------------------------------------------------


def test_swap_action_gives_the_pair_groupoid():
    groupoid, report = action_groupoid(swap_gset())
    assert report == []
    assert groupoid.validate() == []
    assert groupoid.objects == ["a", "b"]
    relabel = {"(a,e)": "ia", "(b,e)": "ib", "(a,s)": "f", "(b,s)": "g"}
    recomposed = {(relabel[x], relabel[y]): relabel[z]
                  for (x, y), z in groupoid.compose.items()}
    assert recomposed == i2_groupoid().compose
    assert {relabel[m]: groupoid.src[m] for m in groupoid.morphisms} == \
        {"ia": "a", "ib": "b", "f": "a", "g": "b"}
    lo = loops_orbits(groupoid)
    assert len(lo.orbits) == 1 and lo.centralizers[lo.transversals[0]] == \
        [lo.transversals[0]]


def test_trivial_action_gives_two_components():
    groupoid, report = action_groupoid(trivial_gset())
    assert report == []
    assert groupoid.validate() == []
    lo = loops_orbits(groupoid)
    assert lo.loops == ["(a,e)", "(a,s)", "(b,e)", "(b,s)"]
    assert lo.orbits == [["(a,e)"], ["(a,s)"], ["(b,e)"], ["(b,s)"]]
    assert all(len(c) == 2 for c in lo.centralizers.values())


def test_one_point_trivial_action():
    one = GSet(FinGroupoid(["*"], ["e"], {"e": "*"}, {"e": "*"}, {"*": "e"},
                           {("e", "e"): "e"}),
               ["p"], {("e", "p"): "p"})
    groupoid, report = action_groupoid(one)
    assert report == []
    assert groupoid.objects == ["p"] and groupoid.morphisms == ["(p,e)"]
    assert groupoid.validate() == []


def test_action_axiom_failures_raise():
    bad_unit = GSet(c2_group(), ["a", "b"],
                    {("e", "a"): "b", ("e", "b"): "a",
                     ("s", "a"): "b", ("s", "b"): "a"})
    with pytest.raises(ValueError, match="unit moves the point a"):
        action_groupoid(bad_unit)
    bad_assoc = GSet(c2_group(), ["a", "b"],
                     {("e", "a"): "a", ("e", "b"): "b",
                      ("s", "a"): "a", ("s", "b"): "a"})
    with pytest.raises(ValueError, match="not associative"):
        action_groupoid(bad_assoc)
    missing = GSet(c2_group(), ["a", "b"],
                   {("e", "a"): "a", ("e", "b"): "b", ("s", "a"): "b"})
    with pytest.raises(ValueError, match="undefined"):
        action_groupoid(missing)


def test_acting_groupoid_must_be_a_one_object_group():
    gs = GSet(i2_groupoid(), ["p"], {})
    with pytest.raises(ValueError, match="one object"):
        action_groupoid(gs)


# -- serialization ---------------------------------------------------------------


def test_groupoid_json_roundtrip():
    g = s3_group()
    assert FinGroupoid.from_json(g.to_json()) == g


def test_partial_table_from_json_is_rejected_by_validation():
    data = s3_group().to_json()
    data["compose"] = data["compose"][:-1]
    loaded = FinGroupoid.from_json(data)
    assert loaded.validate()[0] == {"axiom": "composition defined",
                                    "witness": ["rr", "rr"]}


def test_gset_json_roundtrip():
    gs = swap_gset()
    loaded = GSet.from_json(gs.to_json())
    assert loaded.points == gs.points
    assert loaded.action == gs.action
    assert loaded.group.compose == gs.group.compose
    assert loaded.group.identities == {"*": "e"}


def test_gset_json_without_a_unit_is_rejected():
    data = {"group": {"elements": ["x", "y"],
                      "mul": [["x", "x", "x"], ["x", "y", "x"],
                              ["y", "x", "y"], ["y", "y", "y"]]},
            "set": ["p"], "action": [["x", "p", "p"], ["y", "p", "p"]]}
    with pytest.raises(ValueError, match="unit"):
        GSet.from_json(data)
