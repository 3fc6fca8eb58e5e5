"""Transposition maps and the para-(co)cyclic towers they generate.

An algebra-side pair couples an algebra map phi: R -> T with an R-bimodule X
of coefficients; a coring-side pair couples an R-coring C with X.  A
transposition is a bimodule map X (x)_R T -> T (x)_R X (respectively
C (x)_R X -> X (x)_R C) compatible with the unit and multiplication of T
(the counit and comultiplication of C).  Every valid transposition generates
a tower of cyclic quotients Pi(T^{(x) n+1} (x)_R X) carrying cofaces,
codegeneracies and a para-cocyclic rotation (faces, degeneracies and a
para-cyclic rotation on the coring side).  The (n+1)-st power of the
degree-n rotation measures the failure of cyclicity; coequalizing it against
the identity, or restricting to its fixed subspace, restores a genuine
(co)cyclic object.

Everything is computed by lift-and-compress: a quotient-level map is lifted
to the full K-linear tensor ambient through the quotient section, composed
there slot by slot, and compressed back through the projection.  For
bimodule maps the result is independent of the lift because the structure
maps preserve the relation spans defining the quotients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra_cat import (
    AlgebraMorphism,
    Bimodule,
    Coring,
    FinAlgebra,
    TensorResult,
    action_contraction,
    apply_at_slot,
    base_as_bimodule,
    pi_space,
    regular_bimodule,
    slot_permutation,
    tensor_over_R,
)
from .complexes import ParaCocyclicModule, ParaCyclicModule
from .qlinalg import (
    RationalMatrix,
    invert,
    quotient_space_from_rows,
    rank_kernel,
)

_ONE = Fraction(1)

DEFAULT_GUARD = 100_000


def _prod(dims: Sequence[int]) -> int:
    out = 1
    for d in dims:
        out *= d
    return out


_apply_at = apply_at_slot

_permutation = slot_permutation


def _rotate_left(dims: Sequence[int]) -> RationalMatrix:
    n = len(dims)
    return _permutation(dims, list(range(1, n)) + [0])


def _rotate_right(dims: Sequence[int]) -> RationalMatrix:
    n = len(dims)
    return _permutation(dims, [n - 1] + list(range(n - 1)))


def _mul_matrix(alg: FinAlgebra) -> RationalMatrix:
    """Multiplication as a matrix on the full tensor square, T (x) T -> T."""
    entries: Dict[Tuple[int, int], Fraction] = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k, v in alg.product(i, j).items():
                entries[(k, i * alg.dim + j)] = v
    return RationalMatrix(alg.dim, alg.dim * alg.dim, entries)


def _unit_column(alg: FinAlgebra) -> RationalMatrix:
    return RationalMatrix(alg.dim, 1,
                          {(i, 0): v for i, v in alg.unit.items()})


def _diff_columns(a: RationalMatrix, b: RationalMatrix) -> List[int]:
    d = a - b
    return sorted({j for (_i, j) in d.entries()})


# -- domain types ---------------------------------------------------------------


@dataclass
class SeptupleAlg:
    """Algebra-side coefficient data: phi: R -> T plus an R-bimodule X.

    T carries the R-bimodule structure pulled back along phi (multiplication
    by phi(r) on either side)."""

    phi: AlgebraMorphism
    x: Bimodule
    t_module: Bimodule = field(init=False, repr=False)

    def __post_init__(self):
        if self.x.base.dim != self.phi.source.dim:
            raise ValueError(
                "coefficient bimodule base does not match the morphism source")
        self.t_module = regular_bimodule(self.phi)

    def to_json(self) -> dict:
        return {
            "side": "algebra",
            "base": self.phi.source.to_json(),
            "algebra": self.phi.target.to_json(),
            "morphism": self.phi.matrix.to_json(),
            "x": self.x.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> "SeptupleAlg":
        base = FinAlgebra.from_json(data["base"])
        alg = FinAlgebra.from_json(data["algebra"])
        phi = AlgebraMorphism(base, alg,
                              RationalMatrix.from_json(data["morphism"]))
        return SeptupleAlg(phi, Bimodule.from_json(base, data["x"]))


@dataclass
class SeptupleCoring:
    """Coring-side coefficient data: an R-coring C plus an R-bimodule X."""

    coring: Coring
    x: Bimodule

    def __post_init__(self):
        if self.x.base.dim != self.coring.carrier.base.dim:
            raise ValueError(
                "coefficient bimodule base does not match the coring base")

    def to_json(self) -> dict:
        carrier = self.coring.carrier
        return {
            "side": "coring",
            "base": carrier.base.to_json(),
            "carrier": carrier.to_json(),
            "delta": self.coring.delta.to_json(),
            "eps": self.coring.eps.to_json(),
            "x": self.x.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> "SeptupleCoring":
        base = FinAlgebra.from_json(data["base"])
        carrier = Bimodule.from_json(base, data["carrier"])
        tensor = tensor_over_R([carrier, carrier])
        coring = Coring(carrier, RationalMatrix.from_json(data["delta"]),
                        RationalMatrix.from_json(data["eps"]), tensor)
        return SeptupleCoring(coring, Bimodule.from_json(base, data["x"]))


@dataclass
class Transposition:
    """A candidate transposition in flattened quotient coordinates.

    side "algebra": w maps X (x)_R T to T (x)_R X; side "coring": w maps
    C (x)_R X to X (x)_R C.  Coordinates are the deterministic ones produced
    by tensor_over_R on the corresponding factor lists."""

    side: str
    w: RationalMatrix

    def to_json(self) -> dict:
        return {"side": self.side, "w": self.w.to_json()}

    @staticmethod
    def from_json(data: dict) -> "Transposition":
        return Transposition(str(data["side"]),
                             RationalMatrix.from_json(data["w"]))


# -- space bundles --------------------------------------------------------------


def _alg_spaces(s: SeptupleAlg):
    tb = s.t_module
    xt = tensor_over_R([s.x, tb])
    tx = tensor_over_R([tb, s.x])
    return tb, xt, tx


def _coring_spaces(s: SeptupleCoring):
    carrier = s.coring.carrier
    cx = tensor_over_R([carrier, s.x])
    xc = tensor_over_R([s.x, carrier])
    return carrier, cx, xc


def _delta_full(coring: Coring) -> RationalMatrix:
    return coring.tensor.section @ coring.delta


# -- validation -----------------------------------------------------------------


def validate_transposition(s: Union[SeptupleAlg, SeptupleCoring],
                           t: Transposition) -> List[dict]:
    """Check the two defining equations of a transposition.

    Returns one entry per failing equation: {"equation": name, "witness":
    [...]} where the witness lists the domain basis columns on which the two
    sides differ.  Algebra side: "unit" is compatibility with 1_T, and
    "multiplication" is the exchange law against m_T.  Coring side: "counit"
    and "comultiplication" are the dual conditions.
    """
    if t.side == "algebra":
        if not isinstance(s, SeptupleAlg):
            raise ValueError("algebra-side transposition needs SeptupleAlg data")
        return _validate_algebra_side(s, t)
    if t.side == "coring":
        if not isinstance(s, SeptupleCoring):
            raise ValueError("coring-side transposition needs SeptupleCoring data")
        return _validate_coring_side(s, t)
    raise ValueError(f"unknown transposition side {t.side!r}")


def _validate_algebra_side(s: SeptupleAlg, t: Transposition) -> List[dict]:
    tb, xt, tx = _alg_spaces(s)
    alg = s.phi.target
    if t.w.rows != tx.dim or t.w.cols != xt.dim:
        raise ValueError(
            f"transposition shape {t.w.rows}x{t.w.cols} does not match "
            f"{tx.dim}x{xt.dim}")
    report: List[dict] = []
    unit = _unit_column(alg)
    xdim, tdim = s.x.dim, alg.dim

    lhs = t.w @ xt.projection @ _apply_at([xdim], 1, 0, unit)
    rhs = tx.projection @ _apply_at([xdim], 0, 0, unit)
    bad = _diff_columns(lhs, rhs)
    if bad:
        report.append({"equation": "unit", "witness": bad})

    w_full = tx.section @ t.w @ xt.projection
    mul = _mul_matrix(alg)
    xtt = tensor_over_R([s.x, tb, tb])
    lhs_full = w_full @ _apply_at([xdim, tdim, tdim], 1, 2, mul)
    rhs_full = (_apply_at([tdim, tdim, xdim], 0, 2, mul)
                @ _apply_at([tdim, xdim, tdim], 1, 2, w_full)
                @ _apply_at([xdim, tdim, tdim], 0, 2, w_full))
    lhs_q = tx.projection @ lhs_full @ xtt.section
    rhs_q = tx.projection @ rhs_full @ xtt.section
    bad = _diff_columns(lhs_q, rhs_q)
    if bad:
        report.append({"equation": "multiplication", "witness": bad})
    return report


def _validate_coring_side(s: SeptupleCoring, t: Transposition) -> List[dict]:
    carrier, cx, xc = _coring_spaces(s)
    if t.w.rows != xc.dim or t.w.cols != cx.dim:
        raise ValueError(
            f"transposition shape {t.w.rows}x{t.w.cols} does not match "
            f"{xc.dim}x{cx.dim}")
    report: List[dict] = []
    cdim, xdim = carrier.dim, s.x.dim
    eps, coring = s.coring.eps, s.coring

    w_full = xc.section @ t.w @ cx.projection
    lhs = (action_contraction(s.x, left_side=False)
           @ _apply_at([xdim, cdim], 1, 1, eps)
           @ w_full @ cx.section)
    rhs = (action_contraction(s.x, left_side=True)
           @ _apply_at([cdim, xdim], 0, 1, eps)
           @ cx.section)
    bad = _diff_columns(lhs, rhs)
    if bad:
        report.append({"equation": "counit", "witness": bad})

    delta_full = _delta_full(coring)
    xcc = tensor_over_R([s.x, carrier, carrier])
    lhs_full = _apply_at([xdim, cdim], 1, 1, delta_full) @ w_full
    rhs_full = (_apply_at([cdim, xdim, cdim], 0, 2, w_full)
                @ _apply_at([cdim, cdim, xdim], 1, 2, w_full)
                @ _apply_at([cdim, xdim], 0, 1, delta_full))
    lhs_q = xcc.projection @ lhs_full @ cx.section
    rhs_q = xcc.projection @ rhs_full @ cx.section
    bad = _diff_columns(lhs_q, rhs_q)
    if bad:
        report.append({"equation": "comultiplication", "witness": bad})
    return report


def validate_pair_morphism(s: Union[SeptupleAlg, SeptupleCoring],
                           t: Transposition,
                           s2: Union[SeptupleAlg, SeptupleCoring],
                           t2: Transposition,
                           f: RationalMatrix) -> List[int]:
    """Witness columns on which f: X -> X' fails to intertwine w and w'.

    A coefficient map is compatible when moving it past the algebra (coring)
    factor commutes with the two transpositions; an empty list means f is a
    morphism of pairs."""
    if t.side != t2.side:
        raise ValueError("pair morphisms must stay on one side")
    if t.side == "algebra":
        tb, xt, tx = _alg_spaces(s)
        _tb2, xt2, tx2 = _alg_spaces(s2)
        tdim = s.phi.target.dim
        lhs = (tx2.projection @ _apply_at([tdim, s.x.dim], 1, 1, f)
               @ tx.section @ t.w)
        rhs = (t2.w @ xt2.projection
               @ _apply_at([s.x.dim, tdim], 0, 1, f) @ xt.section)
    else:
        carrier, cx, xc = _coring_spaces(s)
        _c2, cx2, xc2 = _coring_spaces(s2)
        cdim = carrier.dim
        lhs = (xc2.projection @ _apply_at([s.x.dim, cdim], 0, 1, f)
               @ xc.section @ t.w)
        rhs = (t2.w @ cx2.projection
               @ _apply_at([cdim, s.x.dim], 1, 1, f) @ cx.section)
    return _diff_columns(lhs, rhs)


# -- canonical constructions ----------------------------------------------------


def base_transposition(s: Union[SeptupleAlg, SeptupleCoring]) -> Transposition:
    """The canonical transposition when X is the base ring itself.

    Algebra side it sends r (x) t to (r.t) (x) 1_R; coring side it sends
    c (x) r to 1_R (x) (c.r).  Both are the evident unitor isomorphisms."""
    if isinstance(s, SeptupleAlg):
        tb, xt, tx = _alg_spaces(s)
        rdim, tdim = s.x.dim, s.phi.target.dim
        w_full = (_apply_at([tdim], 1, 0, _unit_column(s.x.base))
                  @ action_contraction(tb, left_side=True))
        return Transposition("algebra", tx.projection @ w_full @ xt.section)
    carrier, cx, xc = _coring_spaces(s)
    w_full = (_apply_at([carrier.dim], 0, 0, _unit_column(s.x.base))
              @ action_contraction(carrier, left_side=False))
    return Transposition("coring", xc.projection @ w_full @ cx.section)


def right_action_transposition(s: SeptupleAlg,
                               act: RationalMatrix) -> Transposition:
    """The degenerate transposition y (x) t -> 1_T (x) y.t attached to a
    right T-action on X (given in full coordinates, X (x) T -> X)."""
    tb, xt, tx = _alg_spaces(s)
    w_full = _apply_at([s.x.dim], 0, 0, _unit_column(s.phi.target)) @ act
    return Transposition("algebra", tx.projection @ w_full @ xt.section)


def canonical_relative_v(incl: AlgebraMorphism, x: Bimodule) -> RationalMatrix:
    """The canonical relative transposition for X = S: t (x) s -> 1_S (x) t.s,
    in the quotient coordinates used by relative_cyclic_object."""
    tb = regular_bimodule(incl)
    tx = tensor_over_R([tb, x])
    xt = tensor_over_R([x, tb])
    v_full = (_apply_at([tb.dim], 0, 0, _unit_column(x.base))
              @ action_contraction(tb, left_side=False))
    return xt.projection @ v_full @ tx.section


@dataclass
class CanonicalData:
    """Inputs for canonical_transposition.

    b is the underlying algebra of the acting/coacting structure.  action and
    coaction are full-coordinate matrices whose shapes depend on the kind:

    - mod_alg:       action  B (x) T -> T,  coaction  X -> B (x) X
    - comod_alg:     action  X (x) B -> X,  coaction  T -> T (x) B
    - comod_coring:  action  B (x) X -> X,  coaction  C -> B (x) C
    - mod_coring:    action  C (x) B -> C,  coaction  X -> X (x) B
    """

    septuple: Union[SeptupleAlg, SeptupleCoring]
    b: FinAlgebra
    action: RationalMatrix
    coaction: RationalMatrix


def canonical_transposition(kind: str, data: CanonicalData) -> Transposition:
    """Assemble the transposition induced by an action/coaction pair.

    kind selects the shape: "mod_alg" (T acted on, X coacted),
    "comod_alg" (T coacted, X acted), "comod_coring" (C coacted, X acted),
    "mod_coring" (C acted, X coacted).  The assembled map is validated and a
    ValueError raised when the supplied data is not compatible."""
    if kind not in ("mod_alg", "comod_alg", "comod_coring", "mod_coring"):
        raise ValueError(f"unknown transposition kind {kind!r}")
    s = data.septuple
    bdim = data.b.dim
    b_unit = _unit_column(data.b)
    if kind == "mod_alg":
        if not isinstance(s, SeptupleAlg):
            raise ValueError("mod_alg needs algebra-side data")
        tb, xt, tx = _alg_spaces(s)
        tdim, xdim = s.phi.target.dim, s.x.dim
        _check_unital(data.action @ _apply_at([tdim], 0, 0, b_unit),
                      tdim, "action")
        w_full = (_apply_at([bdim, tdim, xdim], 0, 2, data.action)
                  @ _permutation([bdim, xdim, tdim], [0, 2, 1])
                  @ _apply_at([xdim, tdim], 0, 1, data.coaction))
        t = Transposition("algebra", tx.projection @ w_full @ xt.section)
    elif kind == "comod_alg":
        if not isinstance(s, SeptupleAlg):
            raise ValueError("comod_alg needs algebra-side data")
        tb, xt, tx = _alg_spaces(s)
        tdim, xdim = s.phi.target.dim, s.x.dim
        _check_unital(data.action @ _apply_at([xdim], 1, 0, b_unit),
                      xdim, "action")
        w_full = (_apply_at([tdim, xdim, bdim], 1, 2, data.action)
                  @ _permutation([xdim, tdim, bdim], [1, 0, 2])
                  @ _apply_at([xdim, tdim], 1, 1, data.coaction))
        t = Transposition("algebra", tx.projection @ w_full @ xt.section)
    elif kind == "comod_coring":
        if not isinstance(s, SeptupleCoring):
            raise ValueError("comod_coring needs coring-side data")
        carrier, cx, xc = _coring_spaces(s)
        cdim, xdim = carrier.dim, s.x.dim
        _check_unital(data.action @ _apply_at([xdim], 0, 0, b_unit),
                      xdim, "action")
        w_full = (_apply_at([bdim, xdim, cdim], 0, 2, data.action)
                  @ _permutation([bdim, cdim, xdim], [0, 2, 1])
                  @ _apply_at([cdim, xdim], 0, 1, data.coaction))
        t = Transposition("coring", xc.projection @ w_full @ cx.section)
    elif kind == "mod_coring":
        if not isinstance(s, SeptupleCoring):
            raise ValueError("mod_coring needs coring-side data")
        carrier, cx, xc = _coring_spaces(s)
        cdim, xdim = carrier.dim, s.x.dim
        _check_unital(data.action @ _apply_at([cdim], 1, 0, b_unit),
                      cdim, "action")
        w_full = (_apply_at([xdim, cdim, bdim], 1, 2, data.action)
                  @ _permutation([cdim, xdim, bdim], [1, 0, 2])
                  @ _apply_at([cdim, xdim], 1, 1, data.coaction))
        t = Transposition("coring", xc.projection @ w_full @ cx.section)
    else:
        raise ValueError(f"unknown canonical kind {kind!r}")
    report = validate_transposition(s, t)
    if report:
        failed = ", ".join(e["equation"] for e in report)
        raise ValueError(
            f"canonical data for {kind} does not yield a transposition "
            f"(failing: {failed})")
    return t


def _check_unital(m: RationalMatrix, dim: int, what: str) -> None:
    if m != RationalMatrix.identity(dim):
        raise ValueError(f"{what} is not unital")


# -- the para-(co)cyclic tower --------------------------------------------------


def build_para(s: Union[SeptupleAlg, SeptupleCoring], t: Transposition,
               max_degree: int = 4, extract: str = "none",
               guard: Optional[int] = DEFAULT_GUARD
               ) -> Union[ParaCocyclicModule, ParaCyclicModule]:
    """Degrees 0..max_degree of the tower generated by a transposition.

    Algebra side the result is para-cocyclic on the spaces
    Pi(T^{(x) n+1} (x)_R X): cofaces insert 1_T, codegeneracies multiply
    adjacent algebra slots, and the rotation applies w at the wrapped-around
    seam.  Coring side the result is para-cyclic on Pi(C^{(x) n+1} (x)_R X):
    faces apply the counit and absorb, degeneracies apply the coproduct.

    extract="quotient" coequalizes the (n+1)-st power of the degree-n
    rotation against the identity; extract="subobject" restricts to its
    fixed subspace.  Both yield honestly (co)cyclic objects for a valid
    transposition.
    """
    if extract not in ("none", "quotient", "subobject"):
        raise ValueError(f"unknown extract mode {extract!r}")
    if isinstance(s, SeptupleAlg):
        m = _build_algebra_tower(s, t, max_degree, guard)
    else:
        m = _build_coring_tower(s, t, max_degree, guard)
    if extract == "none":
        return m
    return _extract_cyclic(m, extract)


def _build_algebra_tower(s: SeptupleAlg, t: Transposition, max_degree: int,
                         guard: Optional[int]) -> ParaCocyclicModule:
    tb, xt, tx = _alg_spaces(s)
    alg = s.phi.target
    tdim, xdim = alg.dim, s.x.dim
    w_full = tx.section @ t.w @ xt.projection
    mul = _mul_matrix(alg)
    unit = _unit_column(alg)

    spaces = []
    for n in range(max_degree + 1):
        _t, proj, sect = pi_space([tb] * (n + 1) + [s.x], guard)
        spaces.append((proj, sect))

    dims = tuple(proj.rows for proj, _ in spaces)
    cofaces: Dict[Tuple[int, int], RationalMatrix] = {}
    codegens: Dict[Tuple[int, int], RationalMatrix] = {}
    cocyclic: Dict[int, RationalMatrix] = {}

    for n in range(1, max_degree + 1):
        src_dims = [tdim] * n + [xdim]
        for k in range(n + 1):
            full = _apply_at(src_dims, k, 0, unit)
            cofaces[(n, k)] = spaces[n][0] @ full @ spaces[n - 1][1]
    for n in range(max_degree):
        src_dims = [tdim] * (n + 2) + [xdim]
        for k in range(n + 1):
            full = _apply_at(src_dims, k, 2, mul)
            codegens[(n, k)] = spaces[n][0] @ full @ spaces[n + 1][1]
    for n in range(max_degree + 1):
        dims_n = [tdim] * (n + 1) + [xdim]
        rotated = [tdim] * n + [xdim, tdim]
        full = _apply_at(rotated, n, 2, w_full) @ _rotate_left(dims_n)
        cocyclic[n] = spaces[n][0] @ full @ spaces[n][1]

    return ParaCocyclicModule(max_degree, dims, cofaces, codegens, cocyclic)


def _build_coring_tower(s: SeptupleCoring, t: Transposition, max_degree: int,
                        guard: Optional[int]) -> ParaCyclicModule:
    carrier, cx, xc = _coring_spaces(s)
    cdim, xdim = carrier.dim, s.x.dim
    eps = s.coring.eps
    rdim = carrier.base.dim
    delta_full = _delta_full(s.coring)
    w_full = xc.section @ t.w @ cx.projection

    spaces = []
    for n in range(max_degree + 1):
        _t, proj, sect = pi_space([carrier] * (n + 1) + [s.x], guard)
        spaces.append((proj, sect))

    dims = tuple(proj.rows for proj, _ in spaces)
    faces: Dict[Tuple[int, int], RationalMatrix] = {}
    degens: Dict[Tuple[int, int], RationalMatrix] = {}
    cyclic: Dict[int, RationalMatrix] = {}

    for n in range(1, max_degree + 1):
        dims_n = [cdim] * (n + 1) + [xdim]
        for k in range(n + 1):
            nxt = carrier if k < n else s.x
            step1 = _apply_at(dims_n, k, 1, eps)
            dims_mid = list(dims_n)
            dims_mid[k] = rdim
            step2 = _apply_at(dims_mid, k, 2,
                              action_contraction(nxt, left_side=True))
            faces[(n, k)] = spaces[n - 1][0] @ step2 @ step1 @ spaces[n][1]
    for n in range(max_degree):
        dims_n = [cdim] * (n + 1) + [xdim]
        for k in range(n + 1):
            full = _apply_at(dims_n, k, 1, delta_full)
            degens[(n, k)] = spaces[n + 1][0] @ full @ spaces[n][1]
    for n in range(max_degree + 1):
        dims_n = [cdim] * (n + 1) + [xdim]
        after_w = [cdim] * n + [xdim, cdim]
        full = _rotate_right(after_w) @ _apply_at(dims_n, n, 2, w_full)
        cyclic[n] = spaces[n][0] @ full @ spaces[n][1]

    return ParaCyclicModule(max_degree, dims, faces, degens, cyclic)


def _power(m: RationalMatrix, e: int) -> RationalMatrix:
    out = RationalMatrix.identity(m.rows)
    for _ in range(e):
        out = out @ m
    return out


def _extract_cyclic(m, extract: str):
    """Coequalize the rotation monodromy against the identity (quotient) or
    restrict to its fixed subspace (subobject), degreewise, carrying every
    structure map along and checking it survives."""
    downs: List[RationalMatrix] = []
    ups: List[RationalMatrix] = []
    monodromy: List[RationalMatrix] = []
    for n in range(m.max_degree + 1):
        p = _power(m.cyclic[n], n + 1) - RationalMatrix.identity(m.dims[n])
        monodromy.append(p)
        if extract == "quotient":
            q = quotient_space_from_rows(m.dims[n], p.transpose().sparse_rows())
            downs.append(q.projection)
            ups.append(q.section)
        else:
            _rank, ker = rank_kernel(p)
            incl = ker.transpose()
            if ker.rows:
                retract = invert(ker @ incl) @ ker
            else:
                retract = RationalMatrix.zeros(0, m.dims[n])
            downs.append(retract)
            ups.append(incl)

    def carry(f: RationalMatrix, src: int, dst: int, what: str) -> RationalMatrix:
        new = downs[dst] @ f @ ups[src]
        if extract == "quotient":
            ok = (downs[dst] @ f @ monodromy[src]).is_zero()
        else:
            ok = ups[dst] @ new == f @ ups[src]
        if not ok:
            raise ValueError(
                f"{what} does not restrict to the cyclic part at degree {src}")
        return new

    dims = tuple(d.rows for d in downs)
    cocyclic_kind = isinstance(m, ParaCocyclicModule)
    new_faces = {}
    for (n, k), f in m.faces.items():
        src, dst = (n - 1, n) if cocyclic_kind else (n, n - 1)
        new_faces[(n, k)] = carry(f, src, dst, "face map")
    new_degens = {}
    for (n, k), f in m.degeneracies.items():
        src, dst = (n + 1, n) if cocyclic_kind else (n, n + 1)
        new_degens[(n, k)] = carry(f, src, dst, "degeneracy map")
    new_cyclic = {n: carry(f, n, n, "rotation")
                  for n, f in m.cyclic.items()}
    if cocyclic_kind:
        return ParaCocyclicModule(m.max_degree, dims, new_faces, new_degens,
                                  new_cyclic)
    return ParaCyclicModule(m.max_degree, dims, new_faces, new_degens,
                            new_cyclic)


# -- the action round trip ------------------------------------------------------


def w_action_roundtrip(s: SeptupleAlg, t: Transposition) -> dict:
    """Pass w through its associated right T-action on T (x)_R X and back.

    rho(t (x) x (x) t') applies w to the trailing pair and multiplies into
    the leading slot; recovering w evaluates rho on 1_T (x) x (x) t.  The
    report states whether the round trip reproduces w exactly and whether
    rho is unital, associative, and commutes with left multiplication.  All
    four checks treat rho as what it is — a map between tensors over the
    base — so whenever a slot-wise application of rho is needed it is
    re-lifted through the canonical section, which is where a rho induced
    by a non-bimodule w betrays itself."""
    tb, xt, tx = _alg_spaces(s)
    alg = s.phi.target
    tdim, xdim = alg.dim, s.x.dim
    w_full = tx.section @ t.w @ xt.projection
    mul = _mul_matrix(alg)
    unit = _unit_column(alg)

    txt = tensor_over_R([tb, s.x, tb])
    rho_full = (_apply_at([tdim, tdim, xdim], 0, 2, mul)
                @ _apply_at([tdim, xdim, tdim], 1, 2, w_full))
    rho_q = tx.projection @ rho_full @ txt.section
    rho_lift = tx.section @ rho_q @ txt.projection

    w_back = (tx.projection @ rho_lift
              @ _apply_at([xdim, tdim], 0, 0, unit) @ xt.section)
    roundtrip_exact = w_back == t.w

    unital = (tx.projection @ rho_lift
              @ _apply_at([tdim, xdim], 2, 0, unit)
              @ tx.section) == RationalMatrix.identity(tx.dim)

    q4 = tensor_over_R([tb, s.x, tb, tb])
    four = [tdim, xdim, tdim, tdim]
    lhs = rho_lift @ _apply_at(four, 0, 3, rho_lift)
    rhs = rho_lift @ _apply_at(four, 2, 2, mul)
    associative = (tx.projection @ lhs @ q4.section
                   == tx.projection @ rhs @ q4.section)

    q5 = tensor_over_R([tb, tb, s.x, tb])
    five = [tdim, tdim, xdim, tdim]
    lhs = (_apply_at([tdim, tdim, xdim], 0, 2, mul)
           @ _apply_at(five, 1, 3, rho_lift))
    rhs = rho_lift @ _apply_at(five, 0, 2, mul)
    left_module_map = (tx.projection @ lhs @ q5.section
                       == tx.projection @ rhs @ q5.section)

    return {
        "roundtrip_exact": roundtrip_exact,
        "unital": unital,
        "associative": associative,
        "left_module_map": left_module_map,
    }


# -- the relative cyclic object -------------------------------------------------


def relative_cyclic_object(incl: AlgebraMorphism, v: RationalMatrix,
                           x: Bimodule, max_degree: int = 4,
                           guard: Optional[int] = DEFAULT_GUARD
                           ) -> ParaCyclicModule:
    """The cyclic-shaped tower of T relative to S with coefficients twisted
    by v: T (x)_S X -> X (x)_S T.

    Degree n lives on Pi(T^{(x)_S n+1} (x)_S X).  Inner faces multiply
    adjacent algebra slots; the last face moves the trailing pair through v,
    rotates it to the front, and multiplies.  Degeneracies insert 1_T after
    a slot; the rotation is v at the seam followed by the wrap-around.

    v must satisfy the relative exchange laws (unit compatibility and the
    multiplicative braid); violations raise ValueError with witnesses.
    """
    tb = regular_bimodule(incl)
    alg = incl.target
    tdim, xdim = alg.dim, x.dim
    if x.base.dim != incl.source.dim:
        raise ValueError("coefficients must be a bimodule over the subalgebra")
    tx = tensor_over_R([tb, x])
    xt = tensor_over_R([x, tb])
    if v.rows != xt.dim or v.cols != tx.dim:
        raise ValueError(
            f"relative transposition shape {v.rows}x{v.cols} does not match "
            f"{xt.dim}x{tx.dim}")
    mul = _mul_matrix(alg)
    unit = _unit_column(alg)
    v_full = xt.section @ v @ tx.projection

    bad = _diff_columns(
        v @ tx.projection @ _apply_at([xdim], 0, 0, unit),
        xt.projection @ _apply_at([xdim], 1, 0, unit))
    if bad:
        raise ValueError(
            f"relative transposition is not unit-compatible on columns {bad}")
    ttx = tensor_over_R([tb, tb, x])
    lhs = v_full @ _apply_at([tdim, tdim, xdim], 0, 2, mul)
    rhs = (_apply_at([xdim, tdim, tdim], 1, 2, mul)
           @ _apply_at([tdim, xdim, tdim], 0, 2, v_full)
           @ _apply_at([tdim, tdim, xdim], 1, 2, v_full))
    bad = _diff_columns(xt.projection @ lhs @ ttx.section,
                        xt.projection @ rhs @ ttx.section)
    if bad:
        raise ValueError(
            f"relative transposition fails the multiplicative exchange law "
            f"on columns {bad}")

    spaces = []
    for n in range(max_degree + 1):
        _t, proj, sect = pi_space([tb] * (n + 1) + [x], guard)
        spaces.append((proj, sect))
    dims = tuple(proj.rows for proj, _ in spaces)

    faces: Dict[Tuple[int, int], RationalMatrix] = {}
    degens: Dict[Tuple[int, int], RationalMatrix] = {}
    cyclic: Dict[int, RationalMatrix] = {}
    for n in range(max_degree + 1):
        dims_n = [tdim] * (n + 1) + [xdim]
        after_v = [tdim] * n + [xdim, tdim]
        rotate_full = _rotate_right(after_v) @ _apply_at(dims_n, n, 2, v_full)
        cyclic[n] = spaces[n][0] @ rotate_full @ spaces[n][1]
        if n >= 1:
            for k in range(n):
                full = _apply_at(dims_n, k, 2, mul)
                faces[(n, k)] = spaces[n - 1][0] @ full @ spaces[n][1]
            last = _apply_at([tdim] * (n + 1) + [xdim], 0, 2, mul) @ rotate_full
            faces[(n, n)] = spaces[n - 1][0] @ last @ spaces[n][1]
        if n < max_degree:
            for k in range(n + 1):
                full = _apply_at(dims_n, k + 1, 0, unit)
                degens[(n, k)] = spaces[n + 1][0] @ full @ spaces[n][1]

    return ParaCyclicModule(max_degree, dims, faces, degens, cyclic)
