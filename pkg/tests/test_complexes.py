import random
from fractions import Fraction
from itertools import product

import pytest

from cychom.complexes import (
    ChainComplex,
    ParaCocyclicModule,
    ParaCyclicModule,
    homology_dims,
    to_complex,
    validate_paracyclic,
)
from cychom.qlinalg import RationalMatrix, invert, rank_kernel


def test_homology_single_generator():
    c = ChainComplex(1, (1, 0), {1: RationalMatrix.zeros(1, 0)})
    assert homology_dims(c) == [1]


def test_homology_exact_complex():
    c = ChainComplex(2, (1, 1, 0), {
        1: RationalMatrix.identity(1),
        2: RationalMatrix.zeros(1, 0),
    })
    assert homology_dims(c) == [0, 0]


def test_homology_rejects_non_complex():
    c = ChainComplex(2, (1, 1, 1), {
        1: RationalMatrix.identity(1),
        2: RationalMatrix.identity(1),
    })
    with pytest.raises(ValueError, match="degree 2"):
        homology_dims(c)


def point_object(N):
    one = RationalMatrix.identity(1)
    faces = {(n, k): one for n in range(1, N + 1) for k in range(n + 1)}
    degens = {(n, k): one for n in range(N) for k in range(n + 1)}
    cyclic = {n: one for n in range(N + 1)}
    return ParaCyclicModule(N, [1] * (N + 1), faces, degens, cyclic)


def test_point_object_valid_and_lambda_dims():
    m = point_object(4)
    assert validate_paracyclic(m, "para").ok
    assert validate_paracyclic(m, "cyclic").ok
    lam = to_complex(m, "connes_lambda")
    assert list(lam.dims) == [1, 0, 1, 0, 1]


def test_degree_zero_only_object():
    m = ParaCyclicModule(0, [3], {}, {}, {0: RationalMatrix.identity(3)})
    assert validate_paracyclic(m, "para").ok
    assert validate_paracyclic(m, "cyclic").ok


def test_cyclic_mode_checks_torsion_of_t():
    m = point_object(3)
    m.cyclic[2] = RationalMatrix.from_rows([[-1]])
    para = validate_paracyclic(m, "para")
    cyc = validate_paracyclic(m, "cyclic")
    assert not cyc.ok
    names = {v.identity for v in cyc.violations}
    assert "t^(n+1) = id" in names
    # the perturbation also breaks compatibility with the faces
    assert any(v.identity.startswith("d0 t") or "t" in v.identity
               for v in para.violations)


# -- a concrete cyclic module: tuples over C2 with product-one wraparound ----


def c2_nerve(N):
    """Chains Q[G^n] for G = Z/2, faces drop/merge, degeneracies insert the
    unit, cyclic operator prepends the inverse of the product."""
    els = [0, 1]

    def mul(a, b):
        return a ^ b

    def tuples(n):
        return list(product(els, repeat=n))

    def index(tup):
        out = 0
        for x in tup:
            out = out * 2 + x
        return out

    dims = [2 ** n for n in range(N + 1)]
    faces = {}
    degens = {}
    cyclic = {}
    for n in range(1, N + 1):
        for k in range(n + 1):
            entries = {}
            for tup in tuples(n):
                if k == 0:
                    out = tup[1:]
                elif k == n:
                    out = tup[:-1]
                else:
                    out = tup[:k - 1] + (mul(tup[k - 1], tup[k]),) + tup[k + 1:]
                entries[(index(out), index(tup))] = Fraction(1)
            faces[(n, k)] = RationalMatrix(dims[n - 1], dims[n], entries)
    for n in range(N):
        for k in range(n + 1):
            entries = {}
            for tup in tuples(n):
                out = tup[:k] + (0,) + tup[k:]
                entries[(index(out), index(tup))] = Fraction(1)
            degens[(n, k)] = RationalMatrix(dims[n + 1], dims[n], entries)
    for n in range(N + 1):
        entries = {}
        for tup in tuples(n):
            prod = 0
            for x in tup:
                prod = mul(prod, x)
            out = (prod,) + tup[:-1] if n else ()
            entries[(index(out), index(tup))] = Fraction(1)
        cyclic[n] = RationalMatrix(dims[n], dims[n], entries)
    return ParaCyclicModule(N, dims, faces, degens, cyclic)


def test_c2_nerve_is_cyclic():
    m = c2_nerve(3)
    report = validate_paracyclic(m, "cyclic")
    assert report.ok, [v.as_tuple() for v in report.violations]


def test_c2_nerve_hochschild_and_lambda():
    m = c2_nerve(3)
    hh = homology_dims(to_complex(m, "hochschild"))
    assert hh == [1, 0, 0]
    lam = to_complex(m, "connes_lambda")
    assert list(lam.dims) == [1, 0, 2, 2]
    assert homology_dims(lam) == [1, 0, 1]


def test_perturbed_cyclic_operator_is_reported():
    m = c2_nerve(3)
    # t_1 is genuinely the identity here (every element of Z/2 is its own
    # inverse), so perturb degree 2, where the rotation acts nontrivially
    m.cyclic[2] = RationalMatrix.identity(4)
    report = validate_paracyclic(m, "cyclic")
    assert not report.ok
    assert any(v.identity == "d0 t = dn" for v in report.violations)


def test_to_complex_rejects_dd_violation():
    one = RationalMatrix.identity(1)
    zero = RationalMatrix.zeros(1, 1)
    m = ParaCyclicModule(2, [1, 1, 1],
                         {(1, 0): one, (1, 1): zero,
                          (2, 0): one, (2, 1): zero, (2, 2): zero})
    with pytest.raises(ValueError, match="degree 2"):
        to_complex(m, "hochschild")


def test_lambda_quotient_well_definedness_error():
    one = RationalMatrix.identity(1)
    zero = RationalMatrix.zeros(1, 1)
    m = ParaCyclicModule(1, [1, 1], {(1, 0): one, (1, 1): zero},
                         cyclic={0: one, 1: RationalMatrix.from_rows([[2]])})
    with pytest.raises(ValueError, match="degree 1"):
        to_complex(m, "connes_lambda")


def test_module_json_round_trip():
    m = c2_nerve(2)
    data = m.to_json()
    again = ParaCyclicModule.from_json(data)
    assert again.dims == m.dims
    assert again.faces == m.faces
    assert again.degeneracies == m.degeneracies
    assert again.cyclic == m.cyclic


def test_cocyclic_container_round_trip_and_validation():
    # a "point" cocyclic object: all spaces Q, all maps the identity
    one = RationalMatrix.identity(1)
    N = 3
    cofaces = {(n, k): one for n in range(1, N + 1) for k in range(n + 1)}
    codegens = {(n, k): one for n in range(N) for k in range(n + 1)}
    w = {n: one for n in range(N + 1)}
    m = ParaCocyclicModule(N, [1] * (N + 1), cofaces, codegens, w)
    assert validate_paracyclic(m, "cyclic").ok
    again = ParaCocyclicModule.from_json(m.to_json())
    assert again.faces == m.faces and again.kind == "cocyclic"


def _random_invertible(rng, n):
    while True:
        entries = {}
        for i in range(n):
            for j in range(n):
                if rng.random() < 0.7:
                    entries[(i, j)] = Fraction(rng.randint(-3, 3))
        m = RationalMatrix(n, n, entries)
        rank, _ = rank_kernel(m)
        if rank == n:
            return m


def test_lambda_homology_invariant_under_basis_change():
    rng = random.Random(424242)
    m = c2_nerve(3)
    base = homology_dims(to_complex(m, "connes_lambda"))
    for _ in range(3):
        ps = [_random_invertible(rng, d) for d in m.dims]
        inv = [invert(p) for p in ps]
        faces = {(n, k): ps[n - 1] @ mat @ inv[n] for (n, k), mat in m.faces.items()}
        degens = {(n, k): ps[n + 1] @ mat @ inv[n]
                  for (n, k), mat in m.degeneracies.items()}
        cyclic = {n: ps[n] @ mat @ inv[n] for n, mat in m.cyclic.items()}
        conj = ParaCyclicModule(m.max_degree, m.dims, faces, degens, cyclic)
        assert validate_paracyclic(conj, "cyclic").ok
        assert homology_dims(to_complex(conj, "connes_lambda")) == base
        assert homology_dims(to_complex(conj, "hochschild")) == [1, 0, 0]
