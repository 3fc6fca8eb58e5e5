"""Exact rational linear algebra.

Every other module reduces its work to the three primitives here: sparse
rational matrices, rank/kernel computation, and quotient spaces with chosen
representatives.  All arithmetic is exact (`fractions.Fraction`); elimination
is fraction-free in the Bareiss style (integer rows, cross-multiplication,
content removal) with a single normalization pass at the end, and pivots are
chosen deterministically as the first nonzero column while rows are processed
in their given order.  Repeated runs therefore agree bit for bit.

All objects are immutable after construction and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

SparseRow = Dict[int, Fraction]


def rational_to_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    """Parse the "p/q" / "p" serialization format."""
    return Fraction(s)


class RationalMatrix:
    """An immutable sparse matrix over the rationals.

    Entries are stored in a dict keyed by (row, col); zeros are never stored.
    Vectors are columns: a matrix representing a linear map from an
    a-dimensional space to a b-dimensional space has shape b x a.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[Tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    cleaned[(i, j)] = v
        self._entries = cleaned

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(data: Sequence[Sequence[Fraction | int | str]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries: Dict[Tuple[int, int], Fraction] = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                f = Fraction(v)
                if f:
                    entries[(i, j)] = f
        return RationalMatrix(rows, cols, entries)

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix(rows, cols, {})

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(n, n, {(i, i): _ONE for i in range(n)})

    @staticmethod
    def from_sparse_columns(rows: int, columns: Sequence[SparseRow]) -> "RationalMatrix":
        """Build a matrix from sparse columns (dicts row-index -> value)."""
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[(i, j)] = Fraction(v)
        return RationalMatrix(rows, len(columns), entries)

    # -- access --------------------------------------------------------------

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries.get((i, j), _ZERO)

    def entries(self) -> Mapping[Tuple[int, int], Fraction]:
        return dict(self._entries)

    def sparse_rows(self) -> List[SparseRow]:
        out: List[SparseRow] = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def sparse_columns(self) -> List[SparseRow]:
        out: List[SparseRow] = [dict() for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            out[j][i] = v
        return out

    def column(self, j: int) -> SparseRow:
        return {i: v for (i, jj), v in self._entries.items() if jj == j}

    def to_rows(self) -> List[List[Fraction]]:
        out = [[_ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    # -- algebra -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self._entries == other._entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        entries = dict(self._entries)
        for k, v in other._entries.items():
            nv = entries.get(k, _ZERO) + v
            if nv:
                entries[k] = nv
            else:
                entries.pop(k, None)
        return RationalMatrix(self.rows, self.cols, entries)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-_ONE)

    def scale(self, c: Fraction | int) -> "RationalMatrix":
        c = Fraction(c)
        if not c:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix(self.rows, self.cols,
                              {k: c * v for k, v in self._entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in product: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}")
        other_rows: List[SparseRow] = other.sparse_rows()
        entries: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            row = other_rows[k]
            if not row:
                continue
            for j, b in row.items():
                key = (i, j)
                nv = entries.get(key, _ZERO) + a * b
                if nv:
                    entries[key] = nv
                else:
                    entries.pop(key, None)
        return RationalMatrix(self.rows, other.cols, entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              {(j, i): v for (i, j), v in self._entries.items()})

    def apply_to_sparse(self, vec: SparseRow) -> SparseRow:
        """Matrix-vector product with a sparse column vector."""
        cols = self.sparse_columns()
        out: SparseRow = {}
        for j, c in vec.items():
            if not c:
                continue
            for i, a in cols[j].items():
                nv = out.get(i, _ZERO) + a * c
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> List[List[str]]:
        """Row-major nested lists of rational strings."""
        return [[rational_to_str(v) for v in row] for row in self.to_rows()]

    @staticmethod
    def from_json(data: Sequence[Sequence[str]], rows: int | None = None,
                  cols: int | None = None) -> "RationalMatrix":
        if not data:
            return RationalMatrix.zeros(rows or 0, cols or 0)
        return RationalMatrix.from_rows(
            [[rational_from_str(str(v)) for v in row] for row in data])

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# -- elimination engine ------------------------------------------------------
#
# Rows are kept with integer entries (content-reduced); elimination uses
# cross-multiplication, so no fractions appear before the final normalization.

IntRow = Dict[int, int]


def _integerize(row: Mapping[int, Fraction]) -> IntRow:
    denom = 1
    for v in row.values():
        if v:
            denom = denom * v.denominator // gcd(denom, v.denominator)
    out: IntRow = {}
    content = 0
    for c, v in row.items():
        if v:
            n = int(v * denom)
            out[c] = n
            content = gcd(content, abs(n))
    if content > 1:
        out = {c: n // content for c, n in out.items()}
    return out


def _eliminate(row: IntRow, lead: int, pivot_row: IntRow) -> IntRow:
    """Cross-multiplied elimination of `lead` from `row` using `pivot_row`."""
    a = pivot_row[lead]
    b = row[lead]
    out: IntRow = {}
    content = 0
    for c in set(row) | set(pivot_row):
        n = a * row.get(c, 0) - b * pivot_row.get(c, 0)
        if n:
            out[c] = n
            content = gcd(content, abs(n))
    if content > 1:
        out = {c: n // content for c, n in out.items()}
    return out


def sparse_rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    """Rank of a collection of sparse rational rows.

    Forward elimination only — no back-substitution — so this is the cheap
    path for rank-only questions on very large relation sets.
    """
    pivots: Dict[int, IntRow] = {}
    rank = 0
    for raw in rows:
        row = _integerize(raw)
        while row:
            lead = min(row)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = row
                rank += 1
                break
            row = _eliminate(row, lead, hit)
    return rank


def sparse_rref(rows: Iterable[Mapping[int, Fraction]]) -> Dict[int, SparseRow]:
    """Fully reduced row echelon form of sparse rational rows.

    Returns {pivot_col: row} with each row normalized to leading entry 1 and
    reduced against all other pivots.
    """
    pivots: Dict[int, IntRow] = {}
    for raw in rows:
        row = _integerize(raw)
        # clear every existing pivot column from the incoming row (stored rows
        # touch only their own pivot and free columns, so this terminates)
        while row:
            hits = row.keys() & pivots.keys()
            if not hits:
                break
            c = min(hits)
            row = _eliminate(row, c, pivots[c])
        if not row:
            continue
        lead = min(row)
        for p, prow in pivots.items():
            if lead in prow:
                pivots[p] = _eliminate(prow, lead, row)
        pivots[lead] = row
    out: Dict[int, SparseRow] = {}
    for p, prow in pivots.items():
        inv = Fraction(1, prow[p])
        out[p] = {c: n * inv for c, n in prow.items()}
    return out


# -- public operations --------------------------------------------------------


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product, compatible with row-major composite indexing
    ((i, k) -> i * rows(b) + k)."""
    entries: Dict[Tuple[int, int], Fraction] = {}
    for (i, j), v in a.entries().items():
        for (k, l), w in b.entries().items():
            entries[(i * b.rows + k, j * b.cols + l)] = v * w
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, entries)


def invert(m: RationalMatrix) -> RationalMatrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    augmented = []
    for i, row in enumerate(m.sparse_rows()):
        aug = dict(row)
        aug[n + i] = _ONE
        augmented.append(aug)
    red = sparse_rref(augmented)
    if sorted(c for c in red if c < n) != list(range(n)):
        raise ValueError("matrix is not invertible")
    entries: Dict[Tuple[int, int], Fraction] = {}
    for p in range(n):
        for c, v in red[p].items():
            if c >= n:
                entries[(p, c - n)] = v
    return RationalMatrix(n, n, entries)


def rank_kernel(m: RationalMatrix) -> Tuple[int, RationalMatrix]:
    """Rank of m and a basis of its kernel {v : m v = 0}.

    The kernel basis is returned as a matrix whose ROWS are the basis
    vectors, one per non-pivot column of m, in ascending column order; the
    free coordinate of each row is 1.  rank + kernel rows = cols(m).
    """
    red = sparse_rref(m.sparse_rows())
    pivot_cols = sorted(red)
    rank = len(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in red]
    entries: Dict[Tuple[int, int], Fraction] = {}
    for i, f in enumerate(free_cols):
        entries[(i, f)] = _ONE
        for p in pivot_cols:
            v = red[p].get(f)
            if v:
                entries[(i, p)] = -v
    return rank, RationalMatrix(len(free_cols), m.cols, entries)


@dataclass(frozen=True)
class QuotientSpace:
    """A quotient of an ambient coordinate space by a relation span.

    projection maps ambient coordinates onto quotient coordinates; section
    picks the canonical ambient representative of each quotient basis vector
    (the representative with all pivot coordinates zero).  Always
    projection @ section = identity and projection annihilates relations.
    """

    ambient_dim: int
    relation_basis: RationalMatrix
    projection: RationalMatrix
    section: RationalMatrix

    @property
    def dim(self) -> int:
        return self.projection.rows


def quotient_space(ambient_dim: int, relations: RationalMatrix) -> QuotientSpace:
    """Quotient of the ambient space by the row span of `relations`."""
    if relations.cols != ambient_dim and relations.rows != 0:
        raise ValueError(
            f"relations have {relations.cols} columns, ambient is {ambient_dim}")
    red = sparse_rref(relations.sparse_rows())
    return _quotient_from_rref(ambient_dim, red)


def quotient_space_from_rows(ambient_dim: int,
                             rows: Iterable[Mapping[int, Fraction]]) -> QuotientSpace:
    """Like quotient_space, but consumes sparse rows without materializing a
    relation matrix first (the tensor-power callers use this)."""
    red = sparse_rref(rows)
    return _quotient_from_rref(ambient_dim, red)


def _quotient_from_rref(ambient_dim: int, red: Dict[int, SparseRow]) -> QuotientSpace:
    pivot_cols = sorted(red)
    free_cols = [c for c in range(ambient_dim) if c not in red]
    free_index = {c: q for q, c in enumerate(free_cols)}
    qdim = len(free_cols)

    rel_entries: Dict[Tuple[int, int], Fraction] = {}
    for i, p in enumerate(pivot_cols):
        for c, v in red[p].items():
            rel_entries[(i, c)] = v
    relation_basis = RationalMatrix(len(pivot_cols), ambient_dim, rel_entries)

    proj_entries: Dict[Tuple[int, int], Fraction] = {}
    for c in free_cols:
        proj_entries[(free_index[c], c)] = _ONE
    for p in pivot_cols:
        for c, v in red[p].items():
            if c != p:
                proj_entries[(free_index[c], p)] = -v
    projection = RationalMatrix(qdim, ambient_dim, proj_entries)

    sect_entries = {(c, free_index[c]): _ONE for c in free_cols}
    section = RationalMatrix(ambient_dim, qdim, sect_entries)

    return QuotientSpace(ambient_dim, relation_basis, projection, section)
