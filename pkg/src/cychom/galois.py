"""Strongly graded algebras over a finite groupoid and their Galois data.

A grading of a unital algebra T by groupoid morphisms assigns every basis
vector a morphism so that multiplication follows composition: the product of
the g-block and the g'-block lands in the (g o g')-block when the two
compose and vanishes otherwise.  The grading is *strong* when each product
T_g . T_{g^{-1}} recovers the whole local unit, certified here by explicit
witness pairs a_i in T_{g^{-1}}, b_i in T_g with sum a_i b_i = 1_{T_{s(g)}}.
Strongness is exactly what makes T a Galois extension of its coinvariant
subalgebra S = (+)_x T_x: the canonical map

    can : T (x)_S T -> T (x)_R B,   u (x) v |-> u.v (x) grade(v)

is then bijective (B is the arrow algebra of the groupoid, R its object
base).  validate_galois checks all of this, inverts can as a matrix, and
verifies the pentagonal coherence between can^{-1} and the grading coaction.

On top of the validation sit the homology-sized constructions: ts_module
builds the coefficient module T_S, one component T_l / [S, T_l] per loop l,
with arrows acting through the witness pairs (g acts by v |-> sum b_i v a_i);
omega_iso assembles the degreewise comparison isomorphism between the
relative cyclic tower of S < T and the arrow-tuple simplex with coefficients
in T_S, reporting bijectivity and commutation with every face, degeneracy,
and cyclic operator; relative_compare checks that both routes compute the
same relative Hochschild and cyclic homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra_cat import (AlgebraMorphism, FinAlgebra, base_as_bimodule,
                          pi_space, regular_bimodule)
from .ayd import GradedBModule
from .complexes import homology_dims, to_complex
from .groupoid_alg import FinGroupoid, build_bialgebroid
from .groupoid_homology import cyclic_simplex, homology
from .qlinalg import (QuotientSpace, RationalMatrix, SparseRow, invert,
                      quotient_space_from_rows, rank_kernel,
                      rational_from_str, rational_to_str)
from .transposition import canonical_relative_v, relative_cyclic_object

_ONE = Fraction(1)

DEFAULT_GUARD = 100_000


def _acc(row: SparseRow, key: int, val: Fraction) -> None:
    nv = row.get(key, Fraction(0)) + val
    if nv:
        row[key] = nv
    else:
        row.pop(key, None)


@dataclass
class StronglyGradedAlgebra:
    """A unital algebra graded by the morphisms of a groupoid.

    components gives each morphism's block dimension (zero-dimensional
    blocks may be omitted); the total-space basis is ordered block by block
    following the groupoid's morphism order, and grading records the
    morphism of each basis vector.  witnesses[g] lists the strong-grading
    pairs (a_i, b_i) as sparse vectors on the total space."""

    groupoid: FinGroupoid
    components: Dict[str, int]
    algebra: FinAlgebra
    grading: List[str]
    witnesses: Dict[str, List[Tuple[SparseRow, SparseRow]]]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def to_json(self) -> dict:
        alg = self.algebra.to_json()

        def vec(v: SparseRow) -> Dict[str, str]:
            return {self.algebra.labels[i]: rational_to_str(c)
                    for i, c in sorted(v.items())}

        return {
            "groupoid": self.groupoid.to_json(),
            "components": {m: d for m, d in self.components.items() if d},
            "labels": alg["labels"],
            "unit": alg["unit"],
            "mul": alg["mul"],
            "witnesses": {m: [[vec(a), vec(b)] for a, b in pairs]
                          for m, pairs in self.witnesses.items()},
        }

    @staticmethod
    def from_json(data: dict) -> "StronglyGradedAlgebra":
        g = FinGroupoid.from_json(data["groupoid"])
        algebra = FinAlgebra.from_json(
            {"labels": data["labels"], "unit": data["unit"],
             "mul": data["mul"]}, name="graded total space")
        raw = {str(m): int(d) for m, d in data["components"].items()}
        components = {m: raw[m] for m in g.morphisms if raw.get(m)}

        def vec(v: Dict[str, str]) -> SparseRow:
            return {algebra.index(k): rational_from_str(c)
                    for k, c in v.items()}

        witnesses = {str(m): [(vec(a), vec(b)) for a, b in pairs]
                     for m, pairs in data["witnesses"].items()}
        return StronglyGradedAlgebra(g, components, algebra,
                                     _canonical_grading(g, components),
                                     witnesses)


def _canonical_grading(g: FinGroupoid, components: Dict[str, int]) -> List[str]:
    out: List[str] = []
    for m in g.morphisms:
        out.extend([m] * components.get(m, 0))
    return out


def _blocks(t: StronglyGradedAlgebra) -> Dict[str, Tuple[int, int]]:
    out: Dict[str, Tuple[int, int]] = {}
    start = 0
    for m in t.groupoid.morphisms:
        d = t.components.get(m, 0)
        if d:
            out[m] = (start, start + d)
            start += d
    return out


def _coinvariant_indices(t: StronglyGradedAlgebra) -> List[int]:
    idl = set(t.groupoid.identities.values())
    return [i for i, m in enumerate(t.grading) if m in idl]


def _local_unit(t: StronglyGradedAlgebra, x: str) -> SparseRow:
    """The unit's piece in the identity block of the object x."""
    idx = t.groupoid.identities[x]
    return {i: v for i, v in t.algebra.unit.items() if t.grading[i] == idx}


def regular_graded(g: FinGroupoid) -> StronglyGradedAlgebra:
    """The arrow algebra graded by itself: each morphism spans its own
    one-dimensional component, with the witness pair (g^{-1}, g)."""
    problems = g.validate()
    if problems:
        first = problems[0]
        raise ValueError(f"not a groupoid: {first['axiom']} fails "
                         f"(witness {first['witness']})")
    idx = {m: i for i, m in enumerate(g.morphisms)}
    mul = {(idx[f], idx[h]): {idx[fh]: _ONE} for (f, h), fh in g.compose.items()}
    unit = {idx[g.identities[x]]: _ONE for x in g.objects}
    algebra = FinAlgebra(list(g.morphisms), mul, unit, name="arrows")
    witnesses = {m: [({idx[g.inverse_of(m)]: _ONE}, {idx[m]: _ONE})]
                 for m in g.morphisms}
    return StronglyGradedAlgebra(g, {m: 1 for m in g.morphisms}, algebra,
                                 list(g.morphisms), witnesses)


# -- the canonical map and its coherence ----------------------------------------


def _grading_pairs(t: StronglyGradedAlgebra) -> List[Tuple[int, str]]:
    """Basis of T (x)_R B: pairs (basis vector, morphism) sharing a source.

    The object base acts on T through the source of the grade and on the
    arrow algebra by right multiplication with identities, so the balanced
    tensor product keeps exactly the matching pairs."""
    g = t.groupoid
    return [(u, h) for u in range(t.dim) for h in g.morphisms
            if g.src[t.grading[u]] == g.src[h]]


def _tensor_square_over_s(t: StronglyGradedAlgebra) -> QuotientSpace:
    """T (x)_S T as a quotient of the plain tensor square."""
    alg = t.algebra
    tdim = alg.dim
    rows: List[SparseRow] = []
    for q in _coinvariant_indices(t):
        for u in range(tdim):
            uq = alg.product(u, q)
            for v in range(tdim):
                row: SparseRow = {}
                for k, c in uq.items():
                    _acc(row, k * tdim + v, c)
                for k, c in alg.product(q, v).items():
                    _acc(row, u * tdim + k, -c)
                if row:
                    rows.append(row)
    return quotient_space_from_rows(tdim * tdim, rows)


def _can_parts(t: StronglyGradedAlgebra) -> Tuple[QuotientSpace,
                                                  List[Tuple[int, str]],
                                                  Dict[Tuple[int, str], int],
                                                  RationalMatrix]:
    alg = t.algebra
    tdim = alg.dim
    tt = _tensor_square_over_s(t)
    pairs = _grading_pairs(t)
    pindex = {p: i for i, p in enumerate(pairs)}
    entries: Dict[Tuple[int, int], Fraction] = {}
    for u in range(tdim):
        for v in range(tdim):
            target = pindex.get  # pairs (k, grade of v)
            gv = t.grading[v]
            for k, c in alg.product(u, v).items():
                row = target((k, gv))
                if row is not None:
                    key = (row, u * tdim + v)
                    entries[key] = entries.get(key, Fraction(0)) + c
    ambient = RationalMatrix(len(pairs), tdim * tdim, entries)
    return tt, pairs, pindex, ambient @ tt.section


def canonical_map(t: StronglyGradedAlgebra
                  ) -> Tuple[RationalMatrix, RationalMatrix,
                             List[Tuple[int, str]]]:
    """The matrix of can: T (x)_S T -> T (x)_R B, its inverse, and the
    codomain basis of (basis vector, morphism) pairs.

    Raises ValueError when the map is not bijective."""
    _tt, pairs, _pindex, can = _can_parts(t)
    if can.rows != can.cols:
        raise ValueError(f"canonical map is not square: {can.rows} pair "
                         f"classes vs {can.cols} balanced tensors")
    try:
        can_inv = invert(can)
    except ValueError as exc:
        raise ValueError("canonical map is not bijective") from exc
    return can, can_inv, pairs


def _pentagon_failures(t: StronglyGradedAlgebra, tt: QuotientSpace,
                       pairs: List[Tuple[int, str]],
                       pindex: Dict[Tuple[int, str], int],
                       can_inv: RationalMatrix) -> List[dict]:
    """Coherence of can^{-1} with the grading coaction, morphism by morphism.

    Writing u (x) v for the (lifted) preimage can^{-1}(1_T (x) g), the class
    of u (x) grade(u) (x) v must agree with that of u (x) g^{-1} (x) v in
    (T (x)_R B) (x)_S T."""
    g, alg = t.groupoid, t.algebra
    tdim, np = alg.dim, len(pairs)
    rows: List[SparseRow] = []
    s_idx = _coinvariant_indices(t)
    for p, (u, h) in enumerate(pairs):
        for q in s_idx:
            uq = alg.product(u, q)
            for v in range(tdim):
                row: SparseRow = {}
                for k, c in uq.items():
                    k2 = pindex.get((k, h))
                    if k2 is not None:
                        _acc(row, k2 * tdim + v, c)
                for k, c in alg.product(q, v).items():
                    _acc(row, p * tdim + k, -c)
                if row:
                    rows.append(row)
    triple = quotient_space_from_rows(np * tdim, rows)

    out: List[dict] = []
    for m in g.morphisms:
        start = {pindex[(k, m)]: c for k, c in _local_unit(t, g.src[m]).items()}
        lifted = tt.section.apply_to_sparse(can_inv.apply_to_sparse(start))
        minus = g.inverse_of(m)
        diff: SparseRow = {}
        for uv, c in lifted.items():
            u, v = divmod(uv, tdim)
            _acc(diff, pindex[(u, t.grading[u])] * tdim + v, c)
            p2 = pindex.get((u, minus))
            if p2 is not None:
                _acc(diff, p2 * tdim + v, -c)
        if triple.projection.apply_to_sparse(diff):
            out.append({"axiom": "pentagon", "witness": [m]})
    return out


def validate_galois(t: StronglyGradedAlgebra) -> List[dict]:
    """Report every violated Galois-extension axiom; empty means valid.

    Checked in order: the underlying groupoid; block bookkeeping (component
    morphisms exist, the grading is the block-ordered one and covers the
    algebra); the unit decomposes over identity blocks; the coinvariant
    part is closed under products; products of graded vectors follow
    composition; the witness pairs are graded and certify strongness; the
    canonical map is bijective; and the pentagonal coherence of its inverse
    holds on every morphism.  Later groups are skipped once an earlier one
    fails, since they build on its bookkeeping."""
    report: List[dict] = list(t.groupoid.validate())
    if report:
        return report
    g, alg = t.groupoid, t.algebra

    for m, d in t.components.items():
        if d and m not in g.morphisms:
            report.append({"axiom": "components on morphisms", "witness": [m]})
        if d < 0:
            report.append({"axiom": "components on morphisms", "witness": [m]})
    if t.grading != _canonical_grading(g, t.components) \
            or len(t.grading) != alg.dim:
        report.append({"axiom": "grading matches components", "witness": []})
    if report:
        return report

    blocks = _blocks(t)
    idl = set(g.identities.values())
    for i in alg.unit:
        if t.grading[i] not in idl:
            report.append({"axiom": "unit decomposition",
                           "witness": [alg.labels[i]]})

    s_idx = _coinvariant_indices(t)
    for qi in s_idx:
        for qj in s_idx:
            bad = [alg.labels[k] for k in alg.product(qi, qj)
                   if t.grading[k] not in idl]
            if bad:
                report.append({"axiom": "coinvariants closed",
                               "witness": [alg.labels[qi], alg.labels[qj]]
                               + bad})

    for u in range(alg.dim):
        for v in range(alg.dim):
            prod = alg.product(u, v)
            if not prod:
                continue
            comp = g.composite(t.grading[u], t.grading[v])
            if comp is None:
                report.append({"axiom": "grading multiplicative",
                               "witness": [alg.labels[u], alg.labels[v]]})
                continue
            lo, hi = blocks.get(comp, (0, 0))
            if any(not lo <= k < hi for k in prod):
                report.append({"axiom": "grading multiplicative",
                               "witness": [alg.labels[u], alg.labels[v]]})

    for m in g.morphisms:
        minus = g.inverse_of(m)
        alo, ahi = blocks.get(minus, (0, 0))
        blo, bhi = blocks.get(m, (0, 0))
        total: SparseRow = {}
        for i, (a_vec, b_vec) in enumerate(t.witnesses.get(m, [])):
            if any(not alo <= k < ahi for k in a_vec) \
                    or any(not blo <= k < bhi for k in b_vec):
                report.append({"axiom": "witness graded", "witness": [m, i]})
            for k, c in alg.multiply(a_vec, b_vec).items():
                _acc(total, k, c)
        if total != _local_unit(t, g.src[m]):
            report.append({"axiom": "strong grading", "witness": [m]})

    if report:
        return report

    tt, pairs, pindex, can = _can_parts(t)
    if can.rows != can.cols:
        report.append({"axiom": "canonical map bijective",
                       "witness": [can.rows, can.cols]})
        return report
    try:
        can_inv = invert(can)
    except ValueError:
        report.append({"axiom": "canonical map bijective", "witness": []})
        return report
    if can @ can_inv != RationalMatrix.identity(can.rows) \
            or can_inv @ can != RationalMatrix.identity(can.rows):
        report.append({"axiom": "canonical map inverse", "witness": []})
        return report

    report.extend(_pentagon_failures(t, tt, pairs, pindex, can_inv))
    return report


def _require_galois(t: StronglyGradedAlgebra) -> None:
    problems = validate_galois(t)
    if problems:
        first = problems[0]
        raise ValueError(
            f"not a strongly graded Galois extension: {first['axiom']} "
            f"fails (witness {first['witness']})")


# -- the coinvariant-quotient coefficient module --------------------------------


def _loop_quotients(t: StronglyGradedAlgebra) -> Dict[str, QuotientSpace]:
    """T_l modulo the span of q.v - v.q over coinvariant q, per loop l."""
    g, alg = t.groupoid, t.algebra
    blocks = _blocks(t)
    s_idx = _coinvariant_indices(t)
    out: Dict[str, QuotientSpace] = {}
    for l in g.loops():
        lo, hi = blocks.get(l, (0, 0))
        if hi == lo:
            continue
        rows: List[SparseRow] = []
        for q in s_idx:
            for bv in range(lo, hi):
                row: SparseRow = {}
                for k, c in alg.product(q, bv).items():
                    _acc(row, k - lo, c)
                for k, c in alg.product(bv, q).items():
                    _acc(row, k - lo, -c)
                if row:
                    rows.append(row)
        out[l] = quotient_space_from_rows(hi - lo, rows)
    return out


def _ts_from_quotients(t: StronglyGradedAlgebra, bgd,
                       quots: Dict[str, QuotientSpace]) -> GradedBModule:
    g, alg = t.groupoid, t.algebra
    blocks = _blocks(t)
    components = {l: q.dim for l, q in quots.items() if q.dim > 0}
    starts: Dict[str, int] = {}
    pos = 0
    for l, d in components.items():
        starts[l] = pos
        pos += d
    total = pos

    action: Dict[str, RationalMatrix] = {}
    for h in g.morphisms:
        entries: Dict[Tuple[int, int], Fraction] = {}
        for l in components:
            if g.src[h] != g.src[l]:
                continue
            l2 = g.conjugate(h, l)
            if l2 is None or l2 not in components:
                continue
            q_l, q_l2 = quots[l], quots[l2]
            lo_l, lo_2 = blocks[l][0], blocks[l2][0]
            for c in range(q_l.dim):
                rep = {lo_l + r: val
                       for r, val in q_l.section.column(c).items()}
                moved: SparseRow = {}
                for a_vec, b_vec in t.witnesses.get(h, []):
                    term = alg.multiply(alg.multiply(b_vec, rep), a_vec)
                    for k, val in term.items():
                        _acc(moved, k, val)
                local = {k - lo_2: val for k, val in moved.items()}
                for r, val in q_l2.projection.apply_to_sparse(local).items():
                    entries[(starts[l2] + r, starts[l] + c)] = val
        action[h] = RationalMatrix(total, total, entries)
    return GradedBModule(bgd, components, action)


def ts_module(t: StronglyGradedAlgebra) -> GradedBModule:
    """The loop components of T modulo commutators with the coinvariants,
    carrying the witness-pair action g: p(v) |-> sum_i p(b_i v a_i).

    Non-loop components contribute nothing: for s(g) != t(g) the whole
    block T_g lies in the commutator span [S, T_g].  For the arrow algebra
    graded by its own groupoid this recovers the adjoint module."""
    _require_galois(t)
    return _ts_from_quotients(t, build_bialgebroid(t.groupoid),
                              _loop_quotients(t))


# -- the comparison isomorphism --------------------------------------------------


def _coinvariant_inclusion(t: StronglyGradedAlgebra) -> AlgebraMorphism:
    """S = (+)_x T_x as an algebra of its own, included into T."""
    alg = t.algebra
    s_idx = _coinvariant_indices(t)
    pos = {gi: si for si, gi in enumerate(s_idx)}
    mul: Dict[Tuple[int, int], SparseRow] = {}
    for si, gi in enumerate(s_idx):
        for sj, gj in enumerate(s_idx):
            row = alg.product(gi, gj)
            if row:
                mul[(si, sj)] = {pos[k]: v for k, v in row.items()}
    unit = {pos[k]: v for k, v in alg.unit.items()}
    s_alg = FinAlgebra([alg.labels[gi] for gi in s_idx], mul, unit,
                       name="coinvariants")
    matrix = RationalMatrix(alg.dim, len(s_idx),
                            {(gi, si): _ONE for si, gi in enumerate(s_idx)})
    return AlgebraMorphism(s_alg, alg, matrix)


def _omega_ambient(t: StronglyGradedAlgebra, n: int, s_idx: List[int],
                   quots: Dict[str, QuotientSpace],
                   blocks: Dict[str, Tuple[int, int]],
                   index: Dict[Tuple[Tuple[str, ...], str, int], int],
                   zdim: int) -> RationalMatrix:
    """Degree-n comparison map on the plain tensor space T^(n+1) (x) S.

    A column t_0 (x) ... (x) t_n (x) q of grades g_0..g_n goes to the
    normalized arrow tuple of suffix composites (g_1..g_n, g_2..g_n, ...,
    g_n, id) holding the commutator class of the product t_0 t_1 ... t_n q
    on its loop component."""
    g, alg = t.groupoid, t.algebra
    tdim, sdim = alg.dim, len(s_idx)
    cols = tdim ** (n + 1) * sdim
    entries: Dict[Tuple[int, int], Fraction] = {}
    for col in range(cols):
        rest, iq = divmod(col, sdim)
        idxs: List[int] = []
        for _ in range(n + 1):
            rest, r = divmod(rest, tdim)
            idxs.append(r)
        idxs.reverse()
        folded = alg.product(idxs[n], s_idx[iq])
        if not folded:
            continue
        if n:
            p: SparseRow = {idxs[0]: _ONE}
            for i in idxs[1:n]:
                p = alg.multiply(p, {i: _ONE})
                if not p:
                    break
            if p:
                p = alg.multiply(p, folded)
        else:
            p = folded
        if not p:
            continue
        l = t.grading[next(iter(p))]
        if g.src[l] != g.tgt[l]:
            continue
        ql = quots.get(l)
        if ql is None or ql.dim == 0:
            continue
        grades = [t.grading[i] for i in idxs]
        slots: List[str] = [g.identities[g.src[grades[n]]]]
        cur: Optional[str] = None
        for j in range(n, 0, -1):
            cur = grades[j] if cur is None else g.composite(grades[j], cur)
            if cur is None:
                break
            slots.insert(0, cur)
        if cur is None and n:
            continue
        lo = blocks[l][0]
        local = {k - lo: cv for k, cv in p.items()}
        tup = tuple(slots)
        for c, cv in ql.projection.apply_to_sparse(local).items():
            entries[(index[(tup, l, c)], col)] = cv
    return RationalMatrix(zdim, cols, entries)


def omega_iso(t: StronglyGradedAlgebra, max_degree: int,
              guard: int = DEFAULT_GUARD
              ) -> Tuple[List[RationalMatrix], List[dict]]:
    """The degreewise isomorphism from the relative cyclic tower of
    S < T onto the arrow-tuple simplex with coefficients in T_S.

    Returns one matrix per degree 0..max_degree, in the deterministic
    coordinates of both sides, together with a report asserting that each
    matrix descends from the plain tensor space, is bijective, and
    commutes with every face, degeneracy, and cyclic operator; an empty
    report certifies the comparison."""
    _require_galois(t)
    g = t.groupoid
    bgd = build_bialgebroid(g)
    quots = _loop_quotients(t)
    ts = _ts_from_quotients(t, bgd, quots)
    simplex = cyclic_simplex(bgd, ts, max_degree, guard=guard)

    incl = _coinvariant_inclusion(t)
    x = base_as_bimodule(incl.source)
    v = canonical_relative_v(incl, x)
    rel = relative_cyclic_object(incl, v, x, max_degree=max_degree,
                                 guard=guard)

    tb = regular_bimodule(incl)
    s_idx = _coinvariant_indices(t)
    blocks = _blocks(t)
    report: List[dict] = []
    omegas: List[RationalMatrix] = []
    for n in range(max_degree + 1):
        _t, proj, sect = pi_space([tb] * (n + 1) + [x], guard)
        index = {entry: i for i, entry in enumerate(simplex.basis[n])}
        amb = _omega_ambient(t, n, s_idx, quots, blocks, index,
                             simplex.module.dims[n])
        if amb != amb @ sect @ proj:
            report.append({"axiom": "well defined", "witness": [n]})
        omega = amb @ sect
        omegas.append(omega)
        rank, _ = rank_kernel(omega)
        if omega.rows != omega.cols or rank != omega.rows:
            report.append({"axiom": "matching bijective", "witness": [n]})

    def check(axiom: str, lhs: RationalMatrix, rhs: RationalMatrix,
              prefix: List) -> None:
        if lhs != rhs:
            bad = sorted({j for (_i, j) in (lhs - rhs).entries()})
            report.append({"axiom": axiom, "witness": prefix + bad})

    zm = simplex.module
    for n in range(1, max_degree + 1):
        for k in range(n + 1):
            check("face commutes", omegas[n - 1] @ rel.faces[(n, k)],
                  zm.faces[(n, k)] @ omegas[n], [n, k])
    for n in range(max_degree):
        for k in range(n + 1):
            check("degeneracy commutes",
                  omegas[n + 1] @ rel.degeneracies[(n, k)],
                  zm.degeneracies[(n, k)] @ omegas[n], [n, k])
    for n in range(max_degree + 1):
        check("cyclic commutes", omegas[n] @ rel.cyclic[n],
              zm.cyclic[n] @ omegas[n], [n])
    return omegas, report


def relative_compare(t: StronglyGradedAlgebra, max_degree: int,
                     guard: int = DEFAULT_GUARD) -> dict:
    """Relative Hochschild and cyclic homology of S < T, two ways.

    The direct route takes the complexes of the relative cyclic tower; the
    reduced route sums the arrow-algebra homology of the coefficient
    module T_S over its loop orbits.  Disagreements are surfaced as
    findings, never reconciled."""
    _require_galois(t)
    incl = _coinvariant_inclusion(t)
    x = base_as_bimodule(incl.source)
    v = canonical_relative_v(incl, x)
    rel = relative_cyclic_object(incl, v, x, max_degree=max_degree,
                                 guard=guard)
    direct = {"hh": homology_dims(to_complex(rel, "hochschild")),
              "hc": homology_dims(to_complex(rel, "connes_lambda"))}
    reduced = homology(build_bialgebroid(t.groupoid), ts_module(t),
                       max_degree, guard=guard)
    findings = []
    for kind in ("hh", "hc"):
        for n in range(max_degree):
            if direct[kind][n] != reduced[kind][n]:
                findings.append({"kind": kind, "degree": n,
                                 "direct": direct[kind][n],
                                 "reduced": reduced[kind][n]})
    return {
        "direct": direct,
        "reduced": {"hh": reduced["hh"], "hc": reduced["hc"],
                    "orbits": reduced["orbits"]},
        "agree": not findings,
        "findings": findings,
    }
