"""Hochschild and cyclic homology of arrow algebras with graded coefficients.

The degree-n space of the cyclic object is the (n+1)-fold balanced tensor
power of the arrow algebra, tensored over the algebra itself (acting
diagonally) with a loop-graded coefficient module.  Two constructions are
kept side by side: a normal form — tuples of arrows out of a common base
point whose last slot is normalized to the identity, paired with a component
vector — and a generic cokernel of the diagonal-action relations, asserted
to have the same dimension wherever its size is tractable.

Homology is computed two independent ways.  The direct route runs the
Hochschild and cyclic-quotient complexes of the simplex.  The closed-formula
route reduces each conjugation orbit of loops to the centralizer of a
transversal loop, computes bar-complex group homology there, and sums shifted
copies over the quotient by the cyclic subgroup the loop generates.  compare
surfaces any disagreement instead of reconciling it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra_cat import DimensionGuardError
from .ayd import GradedBModule, decompose_and_induce, validate_ayd
from .complexes import ChainComplex, ParaCyclicModule, homology_dims, to_complex
from .groupoid_alg import FinGroupoid, GroupoidBialgebroid, build_bialgebroid, \
    loops_orbits
from .qlinalg import RationalMatrix, quotient_space_from_rows, rank_kernel

_ONE = Fraction(1)

DEFAULT_GUARD = 100_000
# the cokernel cross-check runs only while the relation count stays below this
QUOTIENT_CHECK_LIMIT = 50_000

BasisEntry = Tuple[Tuple[str, ...], str, int]


@dataclass
class CyclicSimplex:
    """A cyclic object built from arrow tuples and a graded module.

    basis[n] lists, in order, the (arrow tuple, loop, component index)
    triples spanning degree n; the tuple always ends in the identity of the
    loop's base point.  quotient_dims holds the independently computed
    cokernel dimension per degree (None where the relation system exceeded
    the size limit), and stable records whether every loop fixes its own
    component, which is what makes the cyclic operator an honest one."""

    module: ParaCyclicModule
    basis: List[List[BasisEntry]]
    stable: bool
    quotient_dims: List[Optional[int]]
    method: str = "normal-form"


def _component_blocks(m: GradedBModule) -> Dict[str, Tuple[int, int]]:
    out: Dict[str, Tuple[int, int]] = {}
    start = 0
    for loop, dim in m.components.items():
        out[loop] = (start, start + dim)
        start += dim
    return out


def _action_block(m: GradedBModule, arrow: str, src_loop: str,
                  dst_loop: str) -> Dict[Tuple[int, int], Fraction]:
    """Entries of the arrow action from one component into another,
    indexed within the blocks."""
    blocks = _component_blocks(m)
    (rlo, rhi), (clo, chi) = blocks[dst_loop], blocks[src_loop]
    return {(i - rlo, j - clo): v
            for (i, j), v in m.action[arrow].entries().items()
            if rlo <= i < rhi and clo <= j < chi}


def cyclic_simplex(bgd: GroupoidBialgebroid, m: GradedBModule, max_degree: int,
                   guard: int = DEFAULT_GUARD) -> CyclicSimplex:
    """Build the degreewise tensor simplex of the arrow algebra with
    coefficients in m, in normalized tuple form.

    Faces delete a tuple slot (renormalizing when the identity slot is the
    one deleted), degeneracies duplicate a slot, and the cyclic operator
    moves the last slot, multiplied by the component's loop, to the front.
    Raises on module validation failure or when a degree exceeds guard; the
    cokernel route is recomputed per degree while its relation system stays
    small, and a dimension mismatch between the routes raises."""
    problems = validate_ayd(m)
    if problems:
        first = problems[0]
        raise ValueError(
            f"coefficients are not an admissible module: {first['axiom']} "
            f"fails (witness {first['witness']})")
    stable = validate_ayd(m, check_stable=True) == []
    g = bgd.groupoid
    lo = loops_orbits(g)
    arrows_from = lo.arrows_from
    loops = [l for l, dim in m.components.items() if dim > 0]

    basis: List[List[BasisEntry]] = []
    index: List[Dict[BasisEntry, int]] = []
    dims: List[int] = []
    for n in range(max_degree + 1):
        level: List[BasisEntry] = []
        for l in loops:
            x = g.src[l]
            idx = g.identities[x]
            for prefix in product(arrows_from[x], repeat=n):
                for c in range(m.components[l]):
                    level.append((prefix + (idx,), l, c))
        if len(level) > guard:
            raise DimensionGuardError(len(level), guard)
        basis.append(level)
        index.append({entry: i for i, entry in enumerate(level)})
        dims.append(len(level))

    def normalized_entries(prefix: Tuple[str, ...], last: str, l: str, c: int
                           ) -> Dict[BasisEntry, Fraction]:
        """Class of (prefix..., last) (x) component vector as basis combos."""
        if last == g.identities[g.src[l]]:
            return {(prefix + (last,), l, c): _ONE}
        back = g.inverse_of(last)
        moved = tuple(g.compose[(a, back)] for a in prefix)
        new_loop = g.conjugate(last, l)
        idx = g.identities[g.tgt[last]]
        block = _action_block(m, last, l, new_loop)
        return {(moved + (idx,), new_loop, cc): v
                for (cc, col), v in block.items() if col == c}

    faces: Dict[Tuple[int, int], RationalMatrix] = {}
    degeneracies: Dict[Tuple[int, int], RationalMatrix] = {}
    cyclic: Dict[int, RationalMatrix] = {}
    for n in range(max_degree + 1):
        if n >= 1:
            for k in range(n + 1):
                entries: Dict[Tuple[int, int], Fraction] = {}
                for j, (tup, l, c) in enumerate(basis[n]):
                    if k < n:
                        dropped = tup[:k] + tup[k + 1:]
                        target = (dropped, l, c)
                        entries[(index[n - 1][target], j)] = _ONE
                    else:
                        for entry, v in normalized_entries(
                                tup[:n - 1], tup[n - 1], l, c).items():
                            entries[(index[n - 1][entry], j)] = v
                faces[(n, k)] = RationalMatrix(dims[n - 1], dims[n], entries)
        if n < max_degree:
            for k in range(n + 1):
                entries = {}
                for j, (tup, l, c) in enumerate(basis[n]):
                    dup = tup[:k + 1] + tup[k:]
                    entries[(index[n + 1][(dup, l, c)], j)] = _ONE
                degeneracies[(n, k)] = RationalMatrix(dims[n + 1], dims[n],
                                                      entries)
        entries = {}
        for j, (tup, l, c) in enumerate(basis[n]):
            front = g.compose[(tup[n], l)]
            if n == 0:
                combo = normalized_entries((), front, l, c)
            else:
                combo = normalized_entries((front,) + tup[:n - 1],
                                           tup[n - 1], l, c)
            for entry, v in combo.items():
                entries[(index[n][entry], j)] = v
        cyclic[n] = RationalMatrix(dims[n], dims[n], entries)

    module = ParaCyclicModule(max_degree, dims, faces, degeneracies, cyclic)
    quotient_dims = [_quotient_dim(bgd, m, n) for n in range(max_degree + 1)]
    for n, q in enumerate(quotient_dims):
        if q is not None and q != dims[n]:
            raise ValueError(
                f"normal form and relation cokernel disagree at degree {n}: "
                f"{dims[n]} vs {q}")
    return CyclicSimplex(module, basis, stable, quotient_dims)


def _quotient_dim(bgd: GroupoidBialgebroid, m: GradedBModule,
                  n: int) -> Optional[int]:
    """Dimension of the diagonal-action cokernel at degree n, or None when
    the relation system is too large to reduce."""
    g = bgd.groupoid
    lo = loops_orbits(g)
    d = m.total_dim
    if d == 0:
        return 0
    tuples: List[Tuple[str, Tuple[str, ...]]] = []
    for x in g.objects:
        for tup in product(lo.arrows_from[x], repeat=n + 1):
            tuples.append((x, tup))
    by_target: Dict[str, List[str]] = {x: [] for x in g.objects}
    for h in g.morphisms:
        by_target[g.tgt[h]].append(h)
    relations = sum(len(by_target[x]) for x, _tup in tuples) * d
    ambient = len(tuples) * d
    if relations > QUOTIENT_CHECK_LIMIT or ambient > QUOTIENT_CHECK_LIMIT:
        return None
    tuple_index = {tup: i for i, (_x, tup) in enumerate(tuples)}
    rows: List[Dict[int, Fraction]] = []
    for x, tup in tuples:
        base = tuple_index[tup] * d
        for h in by_target[x]:
            shifted = tuple(g.compose[(a, h)] for a in tup)
            moved = tuple_index[shifted] * d
            act = m.action[h]
            for j in range(d):
                row: Dict[int, Fraction] = {moved + j: _ONE}
                for (i, jj), v in act.entries().items():
                    if jj == j:
                        row[base + i] = row.get(base + i, Fraction(0)) - v
                rows.append({k: v for k, v in row.items() if v != 0})
    return quotient_space_from_rows(ambient, rows).dim


# -- direct homology -----------------------------------------------------------


def _empty_report(max_degree: int) -> dict:
    return {"hh": [0] * max_degree, "hc": [0] * max_degree, "orbits": [],
            "method": "direct"}


def homology(bgd: GroupoidBialgebroid, m: GradedBModule, max_degree: int,
             guard: int = DEFAULT_GUARD) -> dict:
    """Hochschild and cyclic homology dimensions for degrees below
    max_degree, with the per-orbit breakdown.

    The totals come from the full simplex; each orbit summand is recomputed
    on its own and the sums are required to match.  The module must be
    stable."""
    _require_stable(m)
    if m.total_dim == 0:
        return _empty_report(max_degree)
    simplex = cyclic_simplex(bgd, m, max_degree, guard)
    hh = homology_dims(to_complex(simplex.module, "hochschild"))
    hc = homology_dims(to_complex(simplex.module, "connes_lambda"))
    parts = decompose_and_induce(m)
    lo = loops_orbits(bgd.groupoid)
    orbits = []
    for part in parts:
        sub_simplex = cyclic_simplex(bgd, part.submodule, max_degree, guard)
        sub_hh = homology_dims(to_complex(sub_simplex.module, "hochschild"))
        sub_hc = homology_dims(to_complex(sub_simplex.module, "connes_lambda"))
        orbits.append({
            "transversal": part.transversal,
            "centralizer_order": len(lo.centralizers[part.transversal]),
            "hh": sub_hh,
            "hc": sub_hc,
        })
    for n in range(max_degree):
        if sum(o["hh"][n] for o in orbits) != hh[n] or \
                sum(o["hc"][n] for o in orbits) != hc[n]:
            raise ValueError(
                f"orbit homology does not sum to the total at degree {n}")
    return {"hh": hh, "hc": hc, "orbits": orbits, "method": "direct"}


def _require_stable(m: GradedBModule) -> None:
    problems = validate_ayd(m, check_stable=True)
    if problems:
        first = problems[0]
        raise ValueError(
            f"coefficients must be stable: {first['axiom']} fails "
            f"(witness {first['witness']})")


# -- reduction to the centralizer -------------------------------------------------


@dataclass
class ReducedSimplex:
    """The two reduction stages of one orbit summand.

    arrow_simplex is built from tuples of arrows out of the transversal's
    base point with the last slot normalized to a fixed coset section over
    the centralizer; arrow_iso matches it degreewise with the orbit summand
    of the full simplex, and report lists any structure map the matching
    fails to intertwine (empty when the two cyclic objects agree).
    group_simplex is the same construction run over the centralizer group
    itself, whose homology the totals reduce to."""

    orbit: List[str]
    transversal: str
    centralizer: FinGroupoid
    centralizer_module: GradedBModule
    groupoid_simplex: CyclicSimplex
    arrow_simplex: ParaCyclicModule
    arrow_basis: List[List[Tuple[Tuple[str, ...], int]]]
    arrow_iso: List[RationalMatrix]
    group_simplex: CyclicSimplex
    report: List[dict]


def _centralizer_group(g: FinGroupoid, transversal: str,
                       cent: List[str]) -> FinGroupoid:
    x = g.src[transversal]
    unit = g.identities[x]
    compose = {(a, b): g.compose[(a, b)] for a in cent for b in cent}
    return FinGroupoid([x], list(cent), {k: x for k in cent},
                       {k: x for k in cent}, {x: unit}, compose)


def reduce_to_group(bgd: GroupoidBialgebroid, m: GradedBModule, loop: str,
                    max_degree: int, guard: int = DEFAULT_GUARD
                    ) -> ReducedSimplex:
    """Reduce the orbit summand of a loop to its centralizer group.

    Stage one re-spans the summand by tuples of arrows out of the loop's
    base point over the centralizer, with explicit degreewise matrices to
    and from the summand simplex, checked to intertwine every face,
    degeneracy, and cyclic operator.  Stage two is the same cyclic object
    over the centralizer group alone; its homology equals the summand's."""
    _require_stable(m)
    g = bgd.groupoid
    lo = loops_orbits(g)
    parts = decompose_and_induce(m)
    orbit_index = next((i for i, o in enumerate(lo.orbits) if loop in o), None)
    if orbit_index is None:
        raise ValueError(f"{loop!r} is not a loop of the groupoid")
    transversal = lo.transversals[orbit_index]
    part = next((p for p in parts if p.transversal == transversal), None)
    if part is None:
        raise ValueError(f"the module has no component on the orbit of {loop!r}")

    sub = part.submodule
    groupoid_simplex = cyclic_simplex(bgd, sub, max_degree, guard)
    x = g.src[transversal]
    arrows = lo.arrows_from[x]
    cent = lo.centralizers[transversal]
    cent_set = set(cent)
    reps: List[str] = []
    covered: set = set()
    for a in arrows:
        if a not in covered:
            reps.append(a)
            covered.update(g.compose[(a, k)] for k in cent)
    coset: Dict[str, Tuple[str, str]] = {}
    for rep in reps:
        for k in cent:
            coset[g.compose[(rep, k)]] = (rep, k)

    t_dim = sub.components[transversal]
    blocks = _component_blocks(sub)
    t_lo = blocks[transversal][0]

    def cent_block(k: str) -> Dict[Tuple[int, int], Fraction]:
        return _action_block(sub, k, transversal, transversal)

    arrow_basis: List[List[Tuple[Tuple[str, ...], int]]] = []
    arrow_index: List[Dict[Tuple[Tuple[str, ...], int], int]] = []
    for n in range(max_degree + 1):
        level = [(prefix + (rep,), c)
                 for rep in reps
                 for prefix in product(arrows, repeat=n)
                 for c in range(t_dim)]
        if len(level) > guard:
            raise DimensionGuardError(len(level), guard)
        arrow_basis.append(level)
        arrow_index.append({e: i for i, e in enumerate(level)})

    def arrow_normalize(slots: Tuple[str, ...], c: int
                        ) -> Dict[Tuple[Tuple[str, ...], int], Fraction]:
        """Class of an un-normalized tuple as combinations of section-form
        basis elements, moving the centralizer part onto the component."""
        last = slots[-1]
        rep, k = coset[last]
        if k == g.identities[x]:
            return {(slots, c): _ONE}
        back = g.inverse_of(k)
        moved = tuple(g.compose[(a, back)] for a in slots[:-1]) + (rep,)
        return {(moved, cc): v for (cc, col), v in cent_block(k).items()
                if col == c}

    a_dims = [len(level) for level in arrow_basis]
    a_faces: Dict[Tuple[int, int], RationalMatrix] = {}
    a_degens: Dict[Tuple[int, int], RationalMatrix] = {}
    a_cyclic: Dict[int, RationalMatrix] = {}
    for n in range(max_degree + 1):
        if n >= 1:
            for k in range(n + 1):
                entries: Dict[Tuple[int, int], Fraction] = {}
                for j, (tup, c) in enumerate(arrow_basis[n]):
                    dropped = tup[:k] + tup[k + 1:]
                    for e, v in arrow_normalize(dropped, c).items():
                        entries[(arrow_index[n - 1][e], j)] = v
                a_faces[(n, k)] = RationalMatrix(a_dims[n - 1], a_dims[n],
                                                 entries)
        if n < max_degree:
            for k in range(n + 1):
                entries = {}
                for j, (tup, c) in enumerate(arrow_basis[n]):
                    dup = tup[:k + 1] + tup[k:]
                    for e, v in arrow_normalize(dup, c).items():
                        entries[(arrow_index[n + 1][e], j)] = v
                a_degens[(n, k)] = RationalMatrix(a_dims[n + 1], a_dims[n],
                                                  entries)
        entries = {}
        for j, (tup, c) in enumerate(arrow_basis[n]):
            rotated = (g.compose[(tup[n], transversal)],) + tup[:n]
            for e, v in arrow_normalize(rotated, c).items():
                entries[(arrow_index[n][e], j)] = v
        a_cyclic[n] = RationalMatrix(a_dims[n], a_dims[n], entries)
    arrow_simplex = ParaCyclicModule(max_degree, a_dims, a_faces, a_degens,
                                     a_cyclic)

    # degreewise matching with the orbit summand: renormalize the section
    # slot to the identity and push the component through the section arrow
    iso: List[RationalMatrix] = []
    groupoid_index = [{e: i for i, e in enumerate(level)}
                      for level in groupoid_simplex.basis]
    for n in range(max_degree + 1):
        entries = {}
        for j, (tup, c) in enumerate(arrow_basis[n]):
            rep = tup[n]
            back = g.inverse_of(rep)
            moved = tuple(g.compose[(a, back)] for a in tup[:n]) \
                + (g.identities[g.tgt[rep]],)
            new_loop = g.conjugate(rep, transversal)
            for (cc, col), v in _action_block(
                    sub, rep, transversal, new_loop).items():
                if col == c:
                    entries[(groupoid_index[n][(moved, new_loop, cc)], j)] = v
        iso.append(RationalMatrix(
            groupoid_simplex.module.dims[n], a_dims[n], entries))

    report: List[dict] = []

    def check(axiom: str, lhs: RationalMatrix, rhs: RationalMatrix,
              prefix: List) -> None:
        if lhs != rhs:
            bad = sorted({j for (_i, j) in (lhs - rhs).entries()})
            report.append({"axiom": axiom, "witness": prefix + bad})

    gm = groupoid_simplex.module
    for n in range(max_degree + 1):
        rank, _ = rank_kernel(iso[n])
        if iso[n].rows != iso[n].cols or rank != iso[n].rows:
            report.append({"axiom": "matching bijective", "witness": [n]})
    for (n, k), f in a_faces.items():
        check("face commutes", iso[n - 1] @ f, gm.faces[(n, k)] @ iso[n], [n, k])
    for (n, k), s in a_degens.items():
        check("degeneracy commutes", iso[n + 1] @ s,
              gm.degeneracies[(n, k)] @ iso[n], [n, k])
    for n, t in a_cyclic.items():
        check("cyclic commutes", iso[n] @ t, gm.cyclic[n] @ iso[n], [n])

    cent_groupoid = _centralizer_group(g, transversal, cent)
    cent_bgd = build_bialgebroid(cent_groupoid)
    cent_module = GradedBModule(
        cent_bgd, {transversal: t_dim},
        {k: RationalMatrix(t_dim, t_dim, cent_block(k)) for k in cent})
    group_simplex = cyclic_simplex(cent_bgd, cent_module, max_degree, guard)

    return ReducedSimplex(list(lo.orbits[orbit_index]), transversal,
                          cent_groupoid, cent_module, groupoid_simplex,
                          arrow_simplex, arrow_basis, iso, group_simplex,
                          report)


# -- group homology via the bar complex -------------------------------------------


def group_homology_bar(group: FinGroupoid, dim: int,
                       action: Dict[str, RationalMatrix],
                       max_degree: int) -> List[int]:
    """Homology of a one-object groupoid (a finite group) with matrix
    coefficients, for degrees 0..max_degree-1.

    The chain group in degree n is spanned by n-tuples of group elements
    paired with module vectors; the differential acts the inverse of the
    leading element on the module (the right-module convention), merges
    adjacent elements with alternating signs, and drops the trailing one."""
    if len(group.objects) != 1:
        raise ValueError("group homology needs a one-object groupoid")
    problems = group.validate()
    if problems:
        first = problems[0]
        raise ValueError(
            f"invalid group: {first['axiom']} fails (witness {first['witness']})")
    elements = group.morphisms
    unit = group.identities[group.objects[0]]
    d = dim
    for e in elements:
        a = action.get(e)
        if a is None or a.rows != d or a.cols != d:
            raise ValueError(f"module action undefined for {e!r}")
    for a in elements:
        for b in elements:
            if action[a] @ action[b] != action[group.compose[(a, b)]]:
                raise ValueError(f"module action not multiplicative on "
                                 f"({a!r}, {b!r})")
    if action[unit] != RationalMatrix.identity(d):
        raise ValueError("module unit does not act as the identity")

    order = len(elements)
    el_index = {e: i for i, e in enumerate(elements)}

    def chain_dim(n: int) -> int:
        return (order ** n) * d

    def tuple_index(tup: Sequence[str]) -> int:
        idx = 0
        for e in tup:
            idx = idx * order + el_index[e]
        return idx

    boundaries: Dict[int, RationalMatrix] = {}
    for n in range(1, max_degree + 1):
        entries: Dict[Tuple[int, int], Fraction] = {}
        for tup in product(elements, repeat=n):
            col_base = tuple_index(tup) * d
            lead = group.inverse_of(tup[0])
            act = action[lead]
            row_base = tuple_index(tup[1:]) * d
            for (i, j), v in act.entries().items():
                key = (row_base + i, col_base + j)
                entries[key] = entries.get(key, Fraction(0)) + v
            for i in range(1, n):
                merged = tup[:i - 1] + (group.compose[(tup[i - 1], tup[i])],) \
                    + tup[i + 1:]
                row_base = tuple_index(merged) * d
                sign = _ONE if i % 2 == 0 else -_ONE
                for j in range(d):
                    key = (row_base + j, col_base + j)
                    entries[key] = entries.get(key, Fraction(0)) + sign
            row_base = tuple_index(tup[:-1]) * d
            sign = _ONE if n % 2 == 0 else -_ONE
            for j in range(d):
                key = (row_base + j, col_base + j)
                entries[key] = entries.get(key, Fraction(0)) + sign
        boundaries[n] = RationalMatrix(
            chain_dim(n - 1), chain_dim(n),
            {k: v for k, v in entries.items() if v != 0})
    complex_ = ChainComplex(max_degree,
                            tuple(chain_dim(n) for n in range(max_degree + 1)),
                            boundaries)
    return homology_dims(complex_)


# -- the closed formula ------------------------------------------------------------


def _cyclic_subgroup(group: FinGroupoid, loop: str) -> List[str]:
    unit = group.identities[group.objects[0]]
    out = [unit]
    cur = loop
    while cur != unit:
        out.append(cur)
        cur = group.compose[(cur, loop)]
    return out


def _quotient_group(group: FinGroupoid, normal: List[str]
                    ) -> Tuple[FinGroupoid, Dict[str, str]]:
    """Quotient of a one-object groupoid by a central subgroup, with the
    projection on labels."""
    assigned: Dict[str, str] = {}
    labels: List[str] = []
    rep_of: Dict[str, str] = {}
    for e in group.morphisms:
        if e in assigned:
            continue
        coset = sorted(group.compose[(e, k)] for k in normal)
        label = "|".join(coset)
        for member in coset:
            assigned[member] = label
        labels.append(label)
        rep_of[label] = e
    unit_label = assigned[group.identities[group.objects[0]]]
    compose = {(a, b): assigned[group.compose[(rep_of[a], rep_of[b])]]
               for a in labels for b in labels}
    quotient = FinGroupoid(group.objects[:1], labels,
                           {l: group.objects[0] for l in labels},
                           {l: group.objects[0] for l in labels},
                           {group.objects[0]: unit_label}, compose)
    return quotient, assigned


def cyclic_dims_from_group_homology(h: Sequence[int],
                                    finite_order: bool) -> List[int]:
    """Cyclic dimensions from group-homology dimensions of the quotient:
    a sum of even shifts for a finite-order loop, the plain table otherwise."""
    if not finite_order:
        return list(h)
    return [sum(h[n - 2 * i] for i in range(n // 2 + 1)) for n in range(len(h))]


def burghelea_dims(bgd: GroupoidBialgebroid, m: GradedBModule,
                   max_degree: int) -> dict:
    """Evaluate the closed formula: Hochschild homology as centralizer group
    homology per orbit, cyclic homology as even-shifted sums over the
    quotient by the loop's cyclic subgroup.  Requires a stable module."""
    _require_stable(m)
    g = bgd.groupoid
    lo = loops_orbits(g)
    parts = decompose_and_induce(m)
    hh_total = [0] * max_degree
    hc_total = [0] * max_degree
    orbits = []
    for part in parts:
        l = part.transversal
        cent = lo.centralizers[l]
        cent_group = _centralizer_group(g, l, cent)
        t_dim = part.submodule.components[l]
        action = {k: RationalMatrix(
            t_dim, t_dim, _action_block(part.submodule, k, l, l))
            for k in cent}
        hh = group_homology_bar(cent_group, t_dim, action, max_degree)
        subgroup = _cyclic_subgroup(cent_group, l)
        quotient, projection = _quotient_group(cent_group, subgroup)
        q_action: Dict[str, RationalMatrix] = {}
        for e in cent_group.morphisms:
            q_action.setdefault(projection[e], action[e])
        q_hh = group_homology_bar(quotient, t_dim, q_action, max_degree)
        hc = cyclic_dims_from_group_homology(q_hh, finite_order=True)
        orbits.append({
            "transversal": l,
            "centralizer_order": len(cent),
            "hh": hh,
            "hc": hc,
        })
        for n in range(max_degree):
            hh_total[n] += hh[n]
            hc_total[n] += hc[n]
    return {"hh": hh_total, "hc": hc_total, "orbits": orbits,
            "method": "burghelea"}


def compare(bgd: GroupoidBialgebroid, m: GradedBModule, max_degree: int,
            guard: int = DEFAULT_GUARD) -> dict:
    """Run both homology routes and surface any disagreement as findings."""
    direct = homology(bgd, m, max_degree, guard)
    closed = burghelea_dims(bgd, m, max_degree)
    findings = []
    for kind in ("hh", "hc"):
        for n in range(max_degree):
            if direct[kind][n] != closed[kind][n]:
                findings.append({
                    "kind": kind,
                    "degree": n,
                    "direct": direct[kind][n],
                    "burghelea": closed[kind][n],
                })
    return {"direct": direct, "burghelea": closed,
            "agree": not findings, "findings": findings}


# -- the resolution check -----------------------------------------------------------


def free_resolution_check(bgd: GroupoidBialgebroid, base_point: str,
                          max_degree: int) -> List[int]:
    """Homology dimensions of the arrow-span coalgebra simplex at a base
    point, degrees 0..max_degree-1; acyclicity means (1, 0, 0, ...).

    The coalgebra is the span of arrows out of the point, with the diagonal
    coproduct and the counit sending every arrow to one; faces drop a tensor
    slot and the complex takes alternating sums."""
    g = bgd.groupoid
    if base_point not in g.objects:
        raise ValueError(f"unknown base point {base_point!r}")
    arrows = [a for a in g.morphisms if g.src[a] == base_point]
    size = len(arrows)
    dims = tuple(size ** (n + 1) for n in range(max_degree + 1))
    boundaries: Dict[int, RationalMatrix] = {}
    for n in range(1, max_degree + 1):
        entries: Dict[Tuple[int, int], Fraction] = {}
        for col, tup in enumerate(product(range(size), repeat=n + 1)):
            for k in range(n + 1):
                dropped = tup[:k] + tup[k + 1:]
                row = 0
                for i in dropped:
                    row = row * size + i
                sign = _ONE if k % 2 == 0 else -_ONE
                key = (row, col)
                entries[key] = entries.get(key, Fraction(0)) + sign
        boundaries[n] = RationalMatrix(
            dims[n - 1], dims[n], {k: v for k, v in entries.items() if v != 0})
    return homology_dims(ChainComplex(max_degree, dims, boundaries))
