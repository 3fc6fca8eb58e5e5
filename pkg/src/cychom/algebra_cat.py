"""Finite-dimensional algebras and bimodules over a base algebra R, with the
two constructions everything downstream leans on: the tensor product over R
(as an explicit cokernel, or by grade bookkeeping when R is spanned by
orthogonal idempotents) and the cyclic quotient of an n-fold tensor together
with its rotation operator.

n-fold tensors are always built in a single flattened pass, so the associator
is the identity in the chosen coordinates and no re-bracketing bookkeeping
exists anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .qlinalg import (
    RationalMatrix,
    SparseRow,
    kron,
    quotient_space_from_rows,
    rational_from_str,
    rational_to_str,
)

_ONE = Fraction(1)
_ZERO = Fraction(0)


class DimensionGuardError(RuntimeError):
    """Raised when a constructed basis would exceed the configured cap."""

    def __init__(self, size: int, guard: int):
        super().__init__(f"constructed basis of size {size} exceeds guard {guard}")
        self.size = size
        self.guard = guard


def _check_guard(size: int, guard: Optional[int]) -> None:
    if guard is not None and size > guard:
        raise DimensionGuardError(size, guard)


def _add_into(acc: SparseRow, key: int, val: Fraction) -> None:
    nv = acc.get(key, _ZERO) + val
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


class FinAlgebra:
    """A unital associative algebra given by structure constants.

    mul[(i, j)] is the sparse expansion of basis_i * basis_j; unit is a sparse
    vector.  Labels name basis elements in serialized form.
    """

    def __init__(self, labels: Sequence[str], mul: Mapping[Tuple[int, int], SparseRow],
                 unit: SparseRow, name: str = ""):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mul = {k: {i: Fraction(v) for i, v in row.items() if v}
                    for k, row in mul.items()}
        self.unit = {i: Fraction(v) for i, v in unit.items() if v}
        self.name = name
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def product(self, i: int, j: int) -> SparseRow:
        return self.mul.get((i, j), {})

    def multiply(self, u: SparseRow, v: SparseRow) -> SparseRow:
        out: SparseRow = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.product(i, j).items():
                    _add_into(out, k, a * b * c)
        return out

    def left_mult_matrix(self, vec: SparseRow) -> RationalMatrix:
        entries: Dict[Tuple[int, int], Fraction] = {}
        for i, a in vec.items():
            for j in range(self.dim):
                for k, c in self.product(i, j).items():
                    key = (k, j)
                    entries[key] = entries.get(key, _ZERO) + a * c
        return RationalMatrix(self.dim, self.dim, entries)

    def right_mult_matrix(self, vec: SparseRow) -> RationalMatrix:
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j, a in vec.items():
            for i in range(self.dim):
                for k, c in self.product(i, j).items():
                    key = (k, i)
                    entries[key] = entries.get(key, _ZERO) + a * c
        return RationalMatrix(self.dim, self.dim, entries)

    def multiplication_matrix(self) -> RationalMatrix:
        """Multiplication as a matrix on the full tensor square, A (x) A -> A."""
        entries: Dict[Tuple[int, int], Fraction] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self.product(i, j).items():
                    entries[(k, i * self.dim + j)] = v
        return RationalMatrix(self.dim, self.dim * self.dim, entries)

    def unit_column(self) -> RationalMatrix:
        return RationalMatrix(self.dim, 1,
                              {(i, 0): v for i, v in self.unit.items()})

    def is_idempotent_span(self) -> bool:
        """True when the basis consists of orthogonal idempotents summing to 1."""
        for i in range(self.dim):
            for j in range(self.dim):
                expect = {i: _ONE} if i == j else {}
                if self.product(i, j) != expect:
                    return False
        return self.unit == {i: _ONE for i in range(self.dim)}

    def to_json(self) -> dict:
        out_mul = []
        for i in range(self.dim):
            for j in range(self.dim):
                row = self.product(i, j)
                if row:
                    out_mul.append([self.labels[i], self.labels[j],
                                    {self.labels[k]: rational_to_str(v)
                                     for k, v in sorted(row.items())}])
        return {
            "labels": list(self.labels),
            "unit": {self.labels[i]: rational_to_str(v)
                     for i, v in sorted(self.unit.items())},
            "mul": out_mul,
        }

    @staticmethod
    def from_json(data: dict, name: str = "") -> "FinAlgebra":
        labels = [str(x) for x in data["labels"]]
        index = {lab: i for i, lab in enumerate(labels)}
        mul: Dict[Tuple[int, int], SparseRow] = {}
        for a, b, row in data.get("mul", []):
            mul[(index[a], index[b])] = {index[k]: rational_from_str(v)
                                         for k, v in row.items()}
        unit = {index[k]: rational_from_str(v) for k, v in data["unit"].items()}
        return FinAlgebra(labels, mul, unit, name=name)


@dataclass
class AlgebraMorphism:
    source: FinAlgebra
    target: FinAlgebra
    matrix: RationalMatrix  # target.dim x source.dim

    def apply(self, vec: SparseRow) -> SparseRow:
        return self.matrix.apply_to_sparse(vec)


class Bimodule:
    """An R-bimodule: a coordinate space with commuting left and right actions
    of the base, one matrix per base basis element."""

    def __init__(self, base: FinAlgebra, dim: int,
                 left_action: Sequence[RationalMatrix],
                 right_action: Sequence[RationalMatrix]):
        self.base = base
        self.dim = dim
        self.left_action = list(left_action)
        self.right_action = list(right_action)

    def left_of(self, vec: SparseRow) -> RationalMatrix:
        out = RationalMatrix.zeros(self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.left_action[i].scale(c)
        return out

    def right_of(self, vec: SparseRow) -> RationalMatrix:
        out = RationalMatrix.zeros(self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.right_action[i].scale(c)
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "left_action": {self.base.labels[i]: m.to_json()
                            for i, m in enumerate(self.left_action)},
            "right_action": {self.base.labels[i]: m.to_json()
                             for i, m in enumerate(self.right_action)},
        }

    @staticmethod
    def from_json(base: FinAlgebra, data: dict) -> "Bimodule":
        dim = int(data["dim"])

        def parse(table):
            out = []
            for lab in base.labels:
                mat = table[lab]
                out.append(RationalMatrix.from_json(mat) if mat
                           else RationalMatrix.zeros(dim, dim))
            return out

        return Bimodule(base, dim, parse(data["left_action"]),
                        parse(data["right_action"]))


def regular_bimodule(phi: AlgebraMorphism) -> Bimodule:
    """The target algebra as a bimodule over the source, acting through phi
    and multiplication on the appropriate side."""
    t = phi.target
    left, right = [], []
    for i in range(phi.source.dim):
        img = phi.apply({i: _ONE})
        left.append(t.left_mult_matrix(img))
        right.append(t.right_mult_matrix(img))
    return Bimodule(phi.source, t.dim, left, right)


def base_as_bimodule(r: FinAlgebra) -> Bimodule:
    return regular_bimodule(AlgebraMorphism(r, r, RationalMatrix.identity(r.dim)))


@dataclass
class Coring:
    """A coalgebra in R-bimodules: carrier C, coproduct into the constructed
    C (x)_R C (quotient coordinates of `tensor`), and counit into R."""

    carrier: Bimodule
    delta: RationalMatrix  # tensor.dim x carrier.dim
    eps: RationalMatrix    # base.dim x carrier.dim
    tensor: "TensorResult"


# -- tensor over R -------------------------------------------------------------


@dataclass
class TensorResult:
    """The tensor product over R of a list of bimodules, in flattened
    coordinates: a choice of basis for the quotient of the full K-tensor space
    by the balancing relations, with the surjection and its section, plus the
    induced outer bimodule structure."""

    module: Bimodule
    factors: List[Bimodule]
    ambient_dim: int
    projection: RationalMatrix  # module.dim x ambient_dim
    section: RationalMatrix     # ambient_dim x module.dim
    basis: List[Tuple[int, ...]]  # representative pure tensors, one per basis

    @property
    def dim(self) -> int:
        return self.module.dim


def _strides(dims: Sequence[int]) -> List[int]:
    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def _decode(idx: int, dims: Sequence[int]) -> Tuple[int, ...]:
    out = []
    for stride in _strides(dims):
        out.append(idx // stride)
        idx %= stride
    return tuple(out)


def _homogeneous_grades(m: Bimodule) -> Optional[Tuple[List[int], List[int]]]:
    """Per-basis (left, right) idempotent grades, or None when some basis
    vector is not homogeneous."""
    lg: List[int] = []
    rg: List[int] = []
    for k in range(m.dim):
        lhits = [x for x in range(m.base.dim)
                 if m.left_action[x].column(k) == {k: _ONE}]
        rhits = [x for x in range(m.base.dim)
                 if m.right_action[x].column(k) == {k: _ONE}]
        if len(lhits) != 1 or len(rhits) != 1:
            return None
        lg.append(lhits[0])
        rg.append(rhits[0])
    return lg, rg


def tensor_over_R(ms: Sequence[Bimodule], guard: Optional[int] = None,
                  force_generic: bool = False) -> TensorResult:
    """Tensor product over the common base, as an explicit quotient of the
    full K-tensor space by rows (m.r (x) n) - (m (x) r.n) at every adjacent
    slot.  When the base is spanned by orthogonal idempotents and every basis
    vector of every factor is homogeneous, the quotient basis is read off as
    the grade-compatible tuples instead of eliminating relation rows; both
    paths produce identical matrices (force_generic skips the shortcut, for
    cross-checking).
    """
    if not ms:
        raise ValueError("tensor of an empty list")
    base = ms[0].base
    for m in ms[1:]:
        if m.base is not base and m.base.labels != base.labels:
            raise ValueError("tensor factors over mismatched bases")
    dims = [m.dim for m in ms]
    ambient = 1
    for d in dims:
        ambient *= d
    _check_guard(ambient, guard)
    strides = _strides(dims)

    fast = None
    if not force_generic and base.is_idempotent_span():
        grades = [_homogeneous_grades(m) for m in ms]
        if all(g is not None for g in grades):
            fast = grades

    if len(ms) == 1:
        q = quotient_space_from_rows(ambient, [])
    elif fast is not None:
        q = quotient_space_from_rows(ambient, _fast_dead_rows(dims, fast))
    else:
        q = quotient_space_from_rows(ambient, _balancing_rows(ms, dims, strides))

    basis = [_decode(c, dims) for c in _free_columns(q)]
    module = _induced_bimodule(base, ms, dims, q)
    return TensorResult(module, list(ms), ambient, q.projection, q.section, basis)


def _free_columns(q) -> List[int]:
    # the section's nonzero rows are exactly the representative coordinates
    cols = sorted(i for (i, _j) in q.section.entries())
    return cols


def _fast_dead_rows(dims, grades) -> Iterable[SparseRow]:
    """Single-entry relation rows killing grade-incompatible tuples."""
    strides = _strides(dims)
    n = len(dims)

    def walk(i, idx, prev_rgrade, ok):
        if i == n:
            if not ok:
                yield {idx: _ONE}
            return
        lg, rg = grades[i]
        for a in range(dims[i]):
            good = ok and (i == 0 or prev_rgrade == lg[a])
            yield from walk(i + 1, idx + a * strides[i], rg[a], good)

    return walk(0, 0, -1, True)


def _balancing_rows(ms, dims, strides) -> Iterable[SparseRow]:
    base = ms[0].base
    n = len(ms)
    for slot in range(n - 1):
        left_m = ms[slot]
        right_m = ms[slot + 1]
        rest_dims = [d for k, d in enumerate(dims) if k not in (slot, slot + 1)]
        rest_total = 1
        for d in rest_dims:
            rest_total *= d
        for r in range(base.dim):
            ra = left_m.right_action[r]
            la = right_m.left_action[r]
            for a in range(dims[slot]):
                move_a = ra.column(a)
                for b in range(dims[slot + 1]):
                    move_b = la.column(b)
                    for rest_idx in range(rest_total):
                        offset = _rest_offset(rest_idx, rest_dims, strides,
                                              (slot, slot + 1), dims)
                        row: SparseRow = {}
                        for a2, c in move_a.items():
                            _add_into(row, offset + a2 * strides[slot]
                                      + b * strides[slot + 1], c)
                        for b2, c in move_b.items():
                            _add_into(row, offset + a * strides[slot]
                                      + b2 * strides[slot + 1], -c)
                        if row:
                            yield row


def _rest_offset(rest_idx, rest_dims, strides, skip, dims) -> int:
    offset = 0
    pos = len(rest_dims) - 1
    for k in range(len(dims) - 1, -1, -1):
        if k in skip:
            continue
        d = rest_dims[pos]
        offset += (rest_idx % d) * strides[k]
        rest_idx //= d
        pos -= 1
    return offset


def _induced_bimodule(base, ms, dims, q) -> Bimodule:
    qdim = q.projection.rows
    rest_after = 1
    for d in dims[1:]:
        rest_after *= d
    rest_before = 1
    for d in dims[:-1]:
        rest_before *= d
    left, right = [], []
    for r in range(base.dim):
        lfull = kron(ms[0].left_action[r], RationalMatrix.identity(rest_after))
        rfull = kron(RationalMatrix.identity(rest_before), ms[-1].right_action[r])
        left.append(q.projection @ lfull @ q.section)
        right.append(q.projection @ rfull @ q.section)
    return Bimodule(base, qdim, left, right)


# -- cyclic quotient and rotation ----------------------------------------------


@dataclass
class PiResult:
    """The cyclic quotient of an n-fold tensor over R: coordinates for
    Pi = (m_1 (x)_R ... (x)_R m_n) / [ -, R ], with projection/section against
    the full K-tensor space and the rotation operator.

    The rotation lands in the Pi space of the rotated factor list
    (m_2, ..., m_n, m_1); when all factors coincide that is this same space
    and flip is an endomorphism whose n-th power is the identity.
    """

    tensor: TensorResult
    dim: int
    projection: RationalMatrix  # dim x ambient (full K-tensor coordinates)
    section: RationalMatrix
    flip: RationalMatrix        # rotated-Pi dim x dim

    @property
    def ambient_dim(self) -> int:
        return self.tensor.ambient_dim


def _same_bimodule(a: Bimodule, b: Bimodule) -> bool:
    return a is b or (a.dim == b.dim
                      and a.left_action == b.left_action
                      and a.right_action == b.right_action)


def pi_space(ms: Sequence[Bimodule], guard: Optional[int] = None):
    """The cyclic quotient Pi(m_1 (x)_R ... (x)_R m_n) without the rotation:
    returns (tensor result, projection, section), the latter two against the
    full K-tensor ambient space."""
    t = tensor_over_R(ms, guard=guard)
    mod = t.module
    rows = []
    for r in range(mod.base.dim):
        com = mod.left_action[r] - mod.right_action[r]
        rows.extend(com.transpose().sparse_rows())
    q = quotient_space_from_rows(mod.dim, rows)
    return t, q.projection @ t.projection, t.section @ q.section


def pi_and_flip(ms: Sequence[Bimodule], guard: Optional[int] = None) -> PiResult:
    """The quotient of the tensor over R by span{r.z - z.r}, plus the rotation
    sending the class of x_1 (x) ... (x) x_n to the class of
    x_2 (x) ... (x) x_n (x) x_1, expressed against the deterministic
    coordinates that pi_and_flip itself assigns to the rotated factor list.
    The rotation is always invertible."""
    t, projection, section = pi_space(ms, guard)
    rotated = list(ms[1:]) + [ms[0]]
    if all(_same_bimodule(a, b) for a, b in zip(rotated, ms)):
        rot_projection = projection
    else:
        _t2, rot_projection, _s2 = pi_space(rotated, guard)
    rot = rotate_left_matrix([m.dim for m in ms])
    flip = rot_projection @ rot @ section
    return PiResult(t, projection.rows, projection, section, flip)


def rotate_left_matrix(dims: Sequence[int]) -> RationalMatrix:
    """Permutation matrix on a full K-tensor moving the first factor to the
    end: e_{(a_0, a_1, ..., a_k)} -> e_{(a_1, ..., a_k, a_0)}."""
    ambient = 1
    for d in dims:
        ambient *= d
    strides = _strides(dims)
    rstrides = _strides(list(dims[1:]) + [dims[0]])
    entries: Dict[Tuple[int, int], Fraction] = {}
    for idx in range(ambient):
        tup = _decode(idx, dims)
        rtup = tup[1:] + (tup[0],)
        ridx = 0
        for a, s in zip(rtup, rstrides):
            ridx += a * s
        entries[(ridx, idx)] = _ONE
    return RationalMatrix(ambient, ambient, entries)


def slot_permutation(dims: Sequence[int], perm: Sequence[int]) -> RationalMatrix:
    """Slot permutation of a full K-tensor; output slot i carries input slot
    perm[i]."""
    out_dims = [dims[p] for p in perm]
    ambient = 1
    for d in dims:
        ambient *= d
    entries: Dict[Tuple[int, int], Fraction] = {}
    for idx in range(ambient):
        tup = _decode(idx, dims)
        out = 0
        for i, p in enumerate(perm):
            out = out * out_dims[i] + tup[p]
        entries[(out, idx)] = _ONE
    return RationalMatrix(ambient, ambient, entries)


def apply_at_slot(dims: Sequence[int], k: int, span: int,
                  f: RationalMatrix) -> RationalMatrix:
    """Apply f to slots [k, k+span) of a full K-tensor, identity elsewhere.

    span 0 splices a new factor in at position k; f must then be a column.
    """
    before = 1
    for d in dims[:k]:
        before *= d
    after = 1
    for d in dims[k + span:]:
        after *= d
    m = f
    if before > 1:
        m = kron(RationalMatrix.identity(before), m)
    if after > 1:
        m = kron(m, RationalMatrix.identity(after))
    return m


# -- validation -----------------------------------------------------------------


def validate_structures(obj) -> List[dict]:
    """Axiom check with witnesses; empty list means no violations."""
    if isinstance(obj, FinAlgebra):
        return _validate_algebra(obj)
    if isinstance(obj, AlgebraMorphism):
        return _validate_morphism(obj)
    if isinstance(obj, Bimodule):
        return _validate_bimodule(obj)
    if isinstance(obj, Coring):
        return _validate_coring(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


def _validate_algebra(a: FinAlgebra) -> List[dict]:
    out = []
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                lhs = a.multiply(a.product(i, j), {k: _ONE})
                rhs = a.multiply({i: _ONE}, a.product(j, k))
                if lhs != rhs:
                    out.append({"axiom": "associativity", "witness": [i, j, k]})
    for i in range(a.dim):
        if a.multiply(a.unit, {i: _ONE}) != {i: _ONE}:
            out.append({"axiom": "left unit", "witness": [i]})
        if a.multiply({i: _ONE}, a.unit) != {i: _ONE}:
            out.append({"axiom": "right unit", "witness": [i]})
    return out


def _validate_morphism(f: AlgebraMorphism) -> List[dict]:
    out = []
    if f.apply(f.source.unit) != f.target.unit:
        out.append({"axiom": "unit preserved", "witness": []})
    for i in range(f.source.dim):
        for j in range(f.source.dim):
            lhs = f.apply(f.source.product(i, j))
            rhs = f.target.multiply(f.apply({i: _ONE}), f.apply({j: _ONE}))
            if lhs != rhs:
                out.append({"axiom": "multiplicative", "witness": [i, j]})
    return out


def _validate_bimodule(m: Bimodule) -> List[dict]:
    out = []
    eye = RationalMatrix.identity(m.dim)
    if m.left_of(m.base.unit) != eye:
        out.append({"axiom": "left unit acts as identity", "witness": []})
    if m.right_of(m.base.unit) != eye:
        out.append({"axiom": "right unit acts as identity", "witness": []})
    for i in range(m.base.dim):
        for j in range(m.base.dim):
            prod = m.base.product(i, j)
            if m.left_of(prod) != m.left_action[i] @ m.left_action[j]:
                out.append({"axiom": "left associativity", "witness": [i, j]})
            if m.right_of(prod) != m.right_action[j] @ m.right_action[i]:
                out.append({"axiom": "right associativity", "witness": [i, j]})
            if (m.left_action[i] @ m.right_action[j]
                    != m.right_action[j] @ m.left_action[i]):
                out.append({"axiom": "actions commute", "witness": [i, j]})
    return out


def _validate_coring(c: Coring) -> List[dict]:
    out = []
    mod = c.carrier
    base = mod.base
    t2 = c.tensor
    # bimodule map conditions for delta and eps
    for r in range(base.dim):
        if (c.delta @ mod.left_action[r]
                != t2.module.left_action[r] @ c.delta):
            out.append({"axiom": "coproduct left-linear", "witness": [r]})
        if (c.delta @ mod.right_action[r]
                != t2.module.right_action[r] @ c.delta):
            out.append({"axiom": "coproduct right-linear", "witness": [r]})
        if (c.eps @ mod.left_action[r]
                != base.left_mult_matrix({r: _ONE}) @ c.eps):
            out.append({"axiom": "counit left-linear", "witness": [r]})
        if (c.eps @ mod.right_action[r]
                != base.right_mult_matrix({r: _ONE}) @ c.eps):
            out.append({"axiom": "counit right-linear", "witness": [r]})
    # coassociativity in flattened triple coordinates
    t3 = tensor_over_R([mod, mod, mod])
    delta_full = t2.section @ c.delta  # carrier -> full CxC
    eye = RationalMatrix.identity(mod.dim)
    left_expand = t3.projection @ kron(delta_full, eye) @ delta_full
    right_expand = t3.projection @ kron(eye, delta_full) @ delta_full
    if left_expand != right_expand:
        out.append({"axiom": "coassociativity", "witness": []})
    # counit laws: contract eps against either slot and land back in carrier
    contract_left = action_contraction(mod, left_side=True)
    contract_right = action_contraction(mod, left_side=False)
    lhs = contract_left @ kron(c.eps, eye) @ delta_full
    rhs = contract_right @ kron(eye, c.eps) @ delta_full
    if lhs != eye:
        out.append({"axiom": "left counit law", "witness": []})
    if rhs != eye:
        out.append({"axiom": "right counit law", "witness": []})
    return out


def action_contraction(mod: Bimodule, left_side: bool) -> RationalMatrix:
    """Full K-tensor matrix absorbing a base factor into a module factor:
    R (x) M -> M via the left action (or M (x) R -> M via the right)."""
    base = mod.base
    if left_side:
        entries: Dict[Tuple[int, int], Fraction] = {}
        for r in range(base.dim):
            act = mod.left_action[r]
            for (i, j), v in act.entries().items():
                entries[(i, r * mod.dim + j)] = v
        return RationalMatrix(mod.dim, base.dim * mod.dim, entries)
    entries = {}
    for r in range(base.dim):
        act = mod.right_action[r]
        for (i, j), v in act.entries().items():
            entries[(i, j * base.dim + r)] = v
    return RationalMatrix(mod.dim, mod.dim * base.dim, entries)
