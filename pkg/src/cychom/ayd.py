"""Loop-graded modules over groupoid arrow algebras.

A graded module here is a direct sum of components indexed by loops of the
groupoid, together with a matrix action of every arrow on the total space.
Such data is exactly a module-comodule pair whose coaction sends a component
vector m in the l-component to m (x) l, so no separate coaction matrix is
stored; the validator reconstructs it when cross-checking the general
compatibility equation between action and coaction.

validate_ayd checks the axioms that make the pair an anti Yetter-Drinfel'd
module: identity arrows act as the support projections of the grading, every
arrow h maps the l-component into the h l h^{-1}-component (or kills it when
the conjugate is undefined), and optionally each loop acts as the identity
on its own component (stability).  decompose_and_induce splits a validated
module along conjugation orbits of loops and realizes each summand as
induced from the centralizer of a transversal loop, with explicit mutually
inverse matrices.  adjoint_module builds the conjugation action on the loop
span itself, and ayd_on_base examines when a functional and a grouplike
element make the base algebra itself such a module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra_cat import Bimodule, apply_at_slot, slot_permutation, tensor_over_R
from .groupoid_alg import GroupoidBialgebroid, loops_orbits
from .qlinalg import RationalMatrix, kron

_ONE = Fraction(1)


@dataclass
class GradedBModule:
    """Loop-indexed components with an arrow action on their direct sum.

    The total space basis is ordered component by component, in the order
    the components dict lists the loops; action maps each morphism label to
    a matrix on the total space."""

    bialgebroid: GroupoidBialgebroid
    components: Dict[str, int]
    action: Dict[str, RationalMatrix]

    @property
    def total_dim(self) -> int:
        return sum(self.components.values())

    def block_start(self, loop: str) -> int:
        start = 0
        for l, dim in self.components.items():
            if l == loop:
                return start
            start += dim
        raise KeyError(loop)

    def block_range(self, loop: str) -> Tuple[int, int]:
        start = self.block_start(loop)
        return start, start + self.components[loop]

    def to_json(self) -> dict:
        return {
            "components": dict(self.components),
            "action": {m: a.to_json() for m, a in self.action.items()},
        }

    @staticmethod
    def from_json(bialgebroid: GroupoidBialgebroid, data: dict) -> "GradedBModule":
        return GradedBModule(
            bialgebroid,
            {str(l): int(d) for l, d in data["components"].items()},
            {str(m): RationalMatrix.from_json(a)
             for m, a in data["action"].items()})


def _blocks(m: GradedBModule) -> Dict[str, Tuple[int, int]]:
    out: Dict[str, Tuple[int, int]] = {}
    start = 0
    for loop, dim in m.components.items():
        out[loop] = (start, start + dim)
        start += dim
    return out


def _block_of(mat: RationalMatrix, rows: Tuple[int, int],
              cols: Tuple[int, int]) -> RationalMatrix:
    return RationalMatrix(
        rows[1] - rows[0], cols[1] - cols[0],
        {(i - rows[0], j - cols[0]): v for (i, j), v in mat.entries().items()
         if rows[0] <= i < rows[1] and cols[0] <= j < cols[1]})


def validate_ayd(m: GradedBModule, check_stable: bool = False) -> List[dict]:
    """Report every violated module axiom; empty means valid.

    Checked: components sit on loops; an action matrix of the right shape
    exists for every arrow; the action is multiplicative (composable arrows
    compose, non-composable products act as zero) and the algebra unit acts
    as the identity; identity arrows act as the support projections of the
    grading; each arrow maps a component into the component of the
    conjugated loop.  The same compatibility is re-derived from the coaction
    m -> m (x) l as one matrix equation per arrow, balanced over the base.
    With check_stable, each loop must fix its own component pointwise."""
    g = m.bialgebroid.groupoid
    d = m.total_dim
    report: List[dict] = []
    for loop in m.components:
        if loop not in g.morphisms or g.src[loop] != g.tgt[loop]:
            report.append({"axiom": "components on loops", "witness": [loop]})
    for h in g.morphisms:
        a = m.action.get(h)
        if a is None or a.rows != d or a.cols != d:
            report.append({"axiom": "action defined", "witness": [h]})
    if report:
        return report

    zero = RationalMatrix(d, d, {})
    for f in g.morphisms:
        for h in g.morphisms:
            fh = g.composite(f, h)
            expected = m.action[fh] if fh is not None else zero
            diff = (m.action[f] @ m.action[h]) - expected
            if diff.entries():
                cols = sorted({j for (_i, j) in diff.entries()})
                report.append({"axiom": "action multiplicative",
                               "witness": [f, h] + cols})
    unit_action = zero
    for x in g.objects:
        unit_action = unit_action + m.action[g.identities[x]]
    if unit_action != RationalMatrix.identity(d):
        bad = sorted({j for (_i, j) in
                      (unit_action - RationalMatrix.identity(d)).entries()})
        report.append({"axiom": "unit acts as identity", "witness": bad})

    blocks = _blocks(m)
    for x in g.objects:
        act = m.action[g.identities[x]]
        for loop, (lo, hi) in blocks.items():
            want = RationalMatrix(
                d, hi - lo,
                {(lo + i, i): _ONE for i in range(hi - lo)}
            ) if g.src[loop] == x else RationalMatrix(d, hi - lo, {})
            got = RationalMatrix(
                d, hi - lo,
                {(i, j - lo): v for (i, j), v in act.entries().items()
                 if lo <= j < hi})
            if got != want:
                bad = sorted({j for (_i, j) in (got - want).entries()})
                report.append({"axiom": "base action by support",
                               "witness": [x, loop] + bad})
    for h in g.morphisms:
        act = m.action[h]
        for loop, (lo, hi) in blocks.items():
            conj = g.conjugate(h, loop)
            target = blocks.get(conj) if conj is not None else None
            for (i, j), v in act.entries().items():
                if lo <= j < hi and v != 0:
                    if target is None or not (target[0] <= i < target[1]):
                        report.append({"axiom": "conjugation grading",
                                       "witness": [h, loop, j - lo]})
                        break

    _cross_check_coaction(m, report)

    if check_stable:
        for loop, (lo, hi) in blocks.items():
            block = _block_of(m.action[loop], (lo, hi), (lo, hi))
            if block != RationalMatrix.identity(hi - lo):
                bad = sorted({j for (_i, j) in
                              (block - RationalMatrix.identity(hi - lo)).entries()})
                report.append({"axiom": "stability", "witness": [loop] + bad})
    return report


def _cross_check_coaction(m: GradedBModule, report: List[dict]) -> None:
    """Check the action-coaction exchange law as matrices, one per arrow.

    The coaction is rebuilt from the grading; both sides are compared after
    balancing the module leg against the base action on the algebra leg."""
    bgd = m.bialgebroid
    g = bgd.groupoid
    n, d = bgd.b.dim, m.total_dim
    if d == 0:
        return
    rho = RationalMatrix(
        d * n, d,
        {(i * n + g.morphism_index(loop), i): _ONE
         for loop, (lo, hi) in _blocks(m).items() for i in range(lo, hi)})
    base_acts = [m.action[g.identities[x]] for x in g.objects]
    xi = bgd.xi_zeta.matrix
    left_by_base = [bgd.b.left_mult_matrix(
        {i: v for (i, j), v in xi.entries().items() if j == x})
        for x in range(bgd.r.dim)]
    right_by_base = [bgd.b.right_mult_matrix(
        {i: v for (i, j), v in xi.entries().items() if j == x})
        for x in range(bgd.r.dim)]
    module_leg = Bimodule(bgd.r, d, base_acts, base_acts)
    algebra_leg = Bimodule(bgd.r, n, left_by_base, right_by_base)
    proj = tensor_over_R([module_leg, algebra_leg]).projection
    for h in g.morphisms:
        idx = g.morphism_index(h)
        conj_on_b = bgd.b.left_mult_matrix({idx: _ONE}) \
            @ bgd.b.right_mult_matrix({g.morphism_index(g.inverse_of(h)): _ONE})
        lhs = proj @ rho @ m.action[h]
        rhs = proj @ kron(m.action[h], conj_on_b) @ rho
        if lhs != rhs:
            bad = sorted({j for (_i, j) in (lhs - rhs).entries()})
            report.append({"axiom": "action-coaction exchange",
                           "witness": [h] + bad})


def adjoint_module(bgd: GroupoidBialgebroid) -> GradedBModule:
    """The loop span with arrows acting by conjugation.

    One-dimensional component per loop, in groupoid input order; an arrow h
    sends the basis vector of l to that of h l h^{-1}, or to zero when the
    base points differ."""
    g = bgd.groupoid
    loops = g.loops()
    index = {l: i for i, l in enumerate(loops)}
    action = {}
    for h in g.morphisms:
        entries = {}
        for l in loops:
            conj = g.conjugate(h, l)
            if conj is not None:
                entries[(index[conj], index[l])] = _ONE
        action[h] = RationalMatrix(len(loops), len(loops), entries)
    return GradedBModule(bgd, {l: 1 for l in loops}, action)


@dataclass
class OrbitComponent:
    """One orbit summand of a graded module, with its induced realization.

    section maps each loop in the orbit to the first arrow (in input order)
    conjugating the transversal onto it; phi maps the induced space, ordered
    section arrow by section arrow with the transversal component inside,
    onto the summand by acting, and psi is its two-sided inverse."""

    orbit: List[str]
    transversal: str
    section: Dict[str, str]
    submodule: GradedBModule
    centralizer_action: Dict[str, RationalMatrix]
    phi: RationalMatrix
    psi: RationalMatrix


def decompose_and_induce(m: GradedBModule) -> List[OrbitComponent]:
    """Split a valid module along loop orbits and induce from centralizers.

    Only orbits carrying a nonzero component are returned, in first-loop
    order; the dimensions of the summands add up to the total dimension.
    Raises ValueError when the module fails validation."""
    problems = validate_ayd(m)
    if problems:
        first = problems[0]
        raise ValueError(
            f"not an admissible module: {first['axiom']} fails "
            f"(witness {first['witness']})")
    g = m.bialgebroid.groupoid
    lo = loops_orbits(g)
    blocks = _blocks(m)
    out: List[OrbitComponent] = []
    for orbit, transversal in zip(lo.orbits, lo.transversals):
        present = [l for l in orbit if m.components.get(l, 0) > 0]
        if not present:
            continue
        dims = {l: m.components.get(l, 0) for l in orbit}
        total = sum(dims.values())
        offsets: Dict[str, int] = {}
        pos = 0
        for l in orbit:
            offsets[l] = pos
            pos += dims[l]
        cols_of = {l: blocks[l] for l in orbit if l in blocks}

        def restrict(mat: RationalMatrix) -> RationalMatrix:
            entries = {}
            for li, (alo, ahi) in cols_of.items():
                for lj, (blo, bhi) in cols_of.items():
                    for (i, j), v in mat.entries().items():
                        if alo <= i < ahi and blo <= j < bhi:
                            entries[(offsets[li] + i - alo,
                                     offsets[lj] + j - blo)] = v
            return RationalMatrix(total, total, entries)

        sub = GradedBModule(m.bialgebroid,
                            {l: dims[l] for l in orbit},
                            {h: restrict(m.action[h]) for h in g.morphisms})
        section = {}
        for l in orbit:
            section[l] = next(h for h in g.morphisms
                              if g.src[h] == g.src[transversal]
                              and g.conjugate(h, transversal) == l)
        cent = lo.centralizers[transversal]
        t_dim = dims[transversal]
        t_off = offsets[transversal]
        centralizer_action = {
            k: _block_of(sub.action[k], (t_off, t_off + t_dim),
                         (t_off, t_off + t_dim))
            for k in cent}
        phi_entries = {}
        psi_entries = {}
        for pos_l, l in enumerate(orbit):
            arrow = section[l]
            act = sub.action[arrow]
            back = sub.action[g.inverse_of(arrow)]
            for (i, j), v in act.entries().items():
                if t_off <= j < t_off + t_dim:
                    phi_entries[(i, pos_l * t_dim + j - t_off)] = v
            for (i, j), v in back.entries().items():
                if t_off <= i < t_off + t_dim and \
                        offsets[l] <= j < offsets[l] + dims[l]:
                    psi_entries[(pos_l * t_dim + i - t_off, j)] = v
        phi = RationalMatrix(total, len(orbit) * t_dim, phi_entries)
        psi = RationalMatrix(len(orbit) * t_dim, total, psi_entries)
        out.append(OrbitComponent(list(orbit), transversal, section, sub,
                                  centralizer_action, phi, psi))
    return out


def ayd_on_base(bgd: GroupoidBialgebroid, chi: RationalMatrix,
                grouplike: RationalMatrix
                ) -> Tuple[List[dict], Optional[GradedBModule]]:
    """Test whether a functional and a grouplike vector make the base a
    graded module, and build that module when they do.

    chi (base-valued, one column per algebra basis arrow) must respect the
    base action, be multiplicative against its own base lift, and send the
    unit to the unit; grouplike must be a coproduct-diagonal vector with
    counit one.  Two exchange equations tie the pair together and one more
    makes the result stable.  The report lists every failure; the module is
    returned only when the report is empty and then also passes the graded
    validator (any violations are appended)."""
    b, r, xi = bgd.b, bgd.r, bgd.xi_zeta.matrix
    g = bgd.groupoid
    n = b.dim
    report: List[dict] = []
    if chi.rows != r.dim or chi.cols != n:
        report.append({"axiom": "functional shape", "witness": []})
        return report, None
    if grouplike.rows != n or grouplike.cols != 1:
        report.append({"axiom": "grouplike shape", "witness": []})
        return report, None

    mul = b.multiplication_matrix()
    unit = b.unit_column()
    lmult = [b.left_mult_matrix({i: v for (i, j), v in xi.entries().items()
                                 if j == x}) for x in range(r.dim)]

    def note(axiom: str, lhs: RationalMatrix, rhs: RationalMatrix,
             prefix: Optional[List] = None) -> None:
        if lhs != rhs:
            bad = sorted({j for (_i, j) in (lhs - rhs).entries()})
            report.append({"axiom": axiom, "witness": (prefix or []) + bad})

    for x in range(r.dim):
        scale = RationalMatrix(r.dim, r.dim, {(x, x): _ONE})
        note("functional respects base action",
             chi @ lmult[x], scale @ chi, [x])
    note("functional multiplicativity", chi @ mul,
         chi @ mul @ apply_at_slot([n, n], 1, 1, xi @ chi))
    note("functional of unit", chi @ unit, r.unit_column())
    note("grouplike coproduct", bgd.delta @ grouplike,
         bgd.square.projection @ kron(grouplike, grouplike))
    note("grouplike counit", bgd.eps @ grouplike, r.unit_column())
    note("counit exchange", bgd.eps @ mul @ kron(xi, grouplike), chi @ xi)
    mp_full = bgd.square_op.section @ bgd.theta_inv @ bgd.square.projection \
        @ kron(unit, RationalMatrix.identity(n))
    lhs = mul @ kron(grouplike, xi @ chi)
    collapse = mul @ apply_at_slot([n, n, n], 0, 2, mul) \
        @ apply_at_slot([n, n, n, n], 0, 2, mul)
    rhs = collapse \
        @ apply_at_slot([n, n, n], 1, 0, grouplike) \
        @ slot_permutation([n, n, n], [2, 0, 1]) \
        @ apply_at_slot([n, n, n], 1, 1, xi @ chi) \
        @ apply_at_slot([n, n], 0, 1, mp_full) \
        @ _diag(n)
    note("action exchange", lhs, rhs)
    note("stability equation",
         chi @ mul @ kron(grouplike, xi), RationalMatrix.identity(r.dim))
    if report:
        return report, None

    arrow_of = {}
    for i, v in sorted(grouplike.entries().items()):
        arrow = g.morphisms[i[0]]
        arrow_of[g.src[arrow]] = arrow
    for x, arrow in arrow_of.items():
        if g.tgt[arrow] != x:
            report.append({"axiom": "grading on loops", "witness": [arrow]})
    if report:
        return report, None
    components = {arrow_of[x]: 1 for x in g.objects}
    order = {x: i for i, x in enumerate(g.objects)}
    action = {}
    for h in g.morphisms:
        col = g.morphism_index(h)
        coeff = dict(chi.entries()).get((g.object_index(g.tgt[h]), col), 0)
        entries = {}
        if coeff:
            entries[(order[g.tgt[h]], order[g.src[h]])] = coeff
        action[h] = RationalMatrix(len(g.objects), len(g.objects), entries)
    module = GradedBModule(bgd, components, action)
    report.extend(validate_ayd(module, check_stable=True))
    return report, (module if not report else None)


def _diag(n: int) -> RationalMatrix:
    return RationalMatrix(n * n, n, {(i * n + i, i): _ONE for i in range(n)})
