"""Chain complexes, para-(co)cyclic modules, and the two homology-bearing
constructions: the alternating-sum (Hochschild) boundary and the cyclic
quotient complex with its induced boundary.

Conventions.  A ParaCyclicModule stores faces d_k keyed by source degree
((n, k): degree n -> n-1), degeneracies s_k keyed by source degree
((n, k): degree n -> n+1), and cyclic operators t_n.  A ParaCocyclicModule
mirrors this with the arrows reversed: cofaces (n, k) map degree n-1 -> n,
codegeneracies (n, k) map degree n+1 -> n, and the operator w_n sits at
degree n.  The compatibility identities checked by the validator are listed
in _COCYCLIC_CHECKS / _CYCLIC_CHECKS below; the cyclic-side forms are the
top-bottom mirror of the cocyclic ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .qlinalg import (
    QuotientSpace,
    RationalMatrix,
    quotient_space,
    rank_kernel,
    rational_from_str,
    rational_to_str,
)

_ONE = Fraction(1)


@dataclass(frozen=True)
class ChainComplex:
    """dims[n] for 0 <= n <= max_degree; boundaries[n]: degree n -> n-1."""

    max_degree: int
    dims: Tuple[int, ...]
    boundaries: Mapping[int, RationalMatrix]

    def check_shapes(self) -> None:
        assert len(self.dims) == self.max_degree + 1
        for n in range(1, self.max_degree + 1):
            b = self.boundaries[n]
            if (b.rows, b.cols) != (self.dims[n - 1], self.dims[n]):
                raise ValueError(f"boundary {n} has shape {b.rows}x{b.cols}, "
                                 f"expected {self.dims[n-1]}x{self.dims[n]}")

    def check_chain(self) -> None:
        """Raise with the offending degree when d_{n} o d_{n+1} != 0."""
        self.check_shapes()
        for n in range(1, self.max_degree):
            if not (self.boundaries[n] @ self.boundaries[n + 1]).is_zero():
                raise ValueError(f"d o d != 0 at degree {n + 1}")

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "boundaries": {str(n): self.boundaries[n].to_json()
                           for n in range(1, self.max_degree + 1)},
        }


def homology_dims(c: ChainComplex) -> List[int]:
    """Homology dimensions for degrees 0..max_degree-1.

    dim H_n = dim ker(d_n) - rank(d_{n+1}), with d_0 the zero map.
    """
    c.check_chain()
    ranks = {0: 0}
    for n in range(1, c.max_degree + 1):
        ranks[n], _ = rank_kernel(c.boundaries[n])
    return [c.dims[n] - ranks[n] - ranks[n + 1] for n in range(c.max_degree)]


class ParaCyclicModule:
    """Faces, optional degeneracies, and cyclic operators up to max_degree."""

    def __init__(self, max_degree: int, dims, faces, degeneracies=None, cyclic=None):
        self.max_degree = max_degree
        self.dims = tuple(dims)
        self.faces: Dict[Tuple[int, int], RationalMatrix] = dict(faces)
        self.degeneracies: Dict[Tuple[int, int], RationalMatrix] = dict(degeneracies or {})
        self.cyclic: Dict[int, RationalMatrix] = dict(cyclic or {})
        self.kind = "cyclic"

    @property
    def has_degeneracies(self) -> bool:
        return bool(self.degeneracies)

    def face(self, n: int, k: int) -> RationalMatrix:
        return self.faces[(n, k)]

    def to_json(self) -> dict:
        return _module_to_json(self)

    @staticmethod
    def from_json(data: dict) -> "ParaCyclicModule":
        dims, faces, degens, cyc = _module_from_json(data)
        return ParaCyclicModule(len(dims) - 1, dims, faces, degens, cyc)


class ParaCocyclicModule:
    """Cofaces, codegeneracies, and cocyclic operators up to max_degree."""

    def __init__(self, max_degree: int, dims, cofaces, codegeneracies=None, cocyclic=None):
        self.max_degree = max_degree
        self.dims = tuple(dims)
        self.faces: Dict[Tuple[int, int], RationalMatrix] = dict(cofaces)
        self.degeneracies: Dict[Tuple[int, int], RationalMatrix] = dict(codegeneracies or {})
        self.cyclic: Dict[int, RationalMatrix] = dict(cocyclic or {})
        self.kind = "cocyclic"

    @property
    def has_degeneracies(self) -> bool:
        return bool(self.degeneracies)

    def to_json(self) -> dict:
        return _module_to_json(self)

    @staticmethod
    def from_json(data: dict) -> "ParaCocyclicModule":
        dims, faces, degens, cyc = _module_from_json(data)
        return ParaCocyclicModule(len(dims) - 1, dims, faces, degens, cyc)


def _module_to_json(m) -> dict:
    return {
        "dims": list(m.dims),
        "faces": {f"{n},{k}": mat.to_json() for (n, k), mat in sorted(m.faces.items())},
        "degeneracies": {f"{n},{k}": mat.to_json()
                         for (n, k), mat in sorted(m.degeneracies.items())},
        "cyclic": {str(n): mat.to_json() for n, mat in sorted(m.cyclic.items())},
    }


def _module_from_json(data: dict):
    dims = tuple(int(d) for d in data["dims"])

    def parse(table):
        out = {}
        for key, mat in table.items():
            parts = [int(x) for x in str(key).split(",")]
            out[tuple(parts) if len(parts) > 1 else parts[0]] = (
                RationalMatrix.from_json(mat))
        return out

    return dims, parse(data.get("faces", {})), parse(data.get("degeneracies", {})), \
        parse(data.get("cyclic", {}))


# -- validator ----------------------------------------------------------------


@dataclass
class Violation:
    degree: int
    identity: str
    residual: int  # max |numerator| over the residual matrix

    def as_tuple(self):
        return (self.degree, self.identity, self.residual)


@dataclass
class ParaCyclicReport:
    mode: str
    kind: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "kind": self.kind,
            "ok": self.ok,
            "violations": [list(v.as_tuple()) for v in self.violations],
        }


def _max_abs_numerator(m: RationalMatrix) -> int:
    return max((abs(v.numerator) for v in m.entries().values()), default=0)


def _record(report: ParaCyclicReport, degree: int, name: str,
            lhs: RationalMatrix, rhs: RationalMatrix) -> None:
    diff = lhs - rhs
    if not diff.is_zero():
        report.violations.append(Violation(degree, name, _max_abs_numerator(diff)))


def validate_paracyclic(m, mode: str = "para") -> ParaCyclicReport:
    """Check the (co)simplicial and para-(co)cyclic identities of m.

    mode="cyclic" additionally requires the operators to be invertible with
    t_n^{n+1} = id (w_n^{n+1} = id on the cocyclic side) at every degree;
    mode="para" accepts degenerate operators.  Violations are reported as
    (degree, identity-name, max |numerator| of the residual), never raised.
    """
    if mode not in ("para", "cyclic"):
        raise ValueError(f"unknown mode {mode!r}")
    report = ParaCyclicReport(mode=mode, kind=m.kind)
    if m.kind == "cyclic":
        _check_cyclic(m, report)
    else:
        _check_cocyclic(m, report)
    if mode == "cyclic":
        letter = "t" if m.kind == "cyclic" else "w"
        for n in range(m.max_degree + 1):
            t = m.cyclic.get(n)
            if t is None:
                continue
            rank, _ = rank_kernel(t)
            if rank != m.dims[n]:
                report.violations.append(Violation(n, f"{letter} invertible", 0))
            power = RationalMatrix.identity(m.dims[n])
            for _ in range(n + 1):
                power = t @ power
            _record(report, n, f"{letter}^(n+1) = id",
                    power, RationalMatrix.identity(m.dims[n]))
    return report


def _check_cyclic(m: ParaCyclicModule, report: ParaCyclicReport) -> None:
    N = m.max_degree
    d = m.faces
    s = m.degeneracies
    t = m.cyclic

    # simplicial: d_i o d_j = d_{j-1} o d_i  (i < j), maps Z_n -> Z_{n-2}
    for n in range(2, N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                _record(report, n, f"d{i} d{j} = d{j-1} d{i}",
                        d[(n - 1, i)] @ d[(n, j)],
                        d[(n - 1, j - 1)] @ d[(n, i)])
    if m.has_degeneracies:
        # s_i o s_j = s_{j+1} o s_i  (i <= j), maps Z_n -> Z_{n+2}
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    _record(report, n, f"s{i} s{j} = s{j+1} s{i}",
                            s[(n + 1, i)] @ s[(n, j)],
                            s[(n + 1, j + 1)] @ s[(n, i)])
        # mixed relations, maps Z_n -> Z_n
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = d[(n + 1, i)] @ s[(n, j)]
                    if i < j:
                        rhs = s[(n - 1, j - 1)] @ d[(n, i)]
                        name = f"d{i} s{j} = s{j-1} d{i}"
                    elif i in (j, j + 1):
                        rhs = RationalMatrix.identity(m.dims[n])
                        name = f"d{i} s{j} = id"
                    else:
                        rhs = s[(n - 1, j)] @ d[(n, i - 1)]
                        name = f"d{i} s{j} = s{j} d{i-1}"
                    _record(report, n, name, lhs, rhs)
    # cyclic compatibilities
    for n in range(1, N + 1):
        if n not in t:
            continue
        _record(report, n, "d0 t = dn", d[(n, 0)] @ t[n], d[(n, n)])
        if n - 1 in t:
            for k in range(1, n + 1):
                _record(report, n, f"d{k} t = t d{k-1}",
                        d[(n, k)] @ t[n], t[n - 1] @ d[(n, k - 1)])
    if m.has_degeneracies:
        for n in range(N):
            if n not in t or n + 1 not in t:
                continue
            _record(report, n, "s0 t = t^2 sn",
                    s[(n, 0)] @ t[n], t[n + 1] @ t[n + 1] @ s[(n, n)])
            for k in range(1, n + 1):
                _record(report, n, f"s{k} t = t s{k-1}",
                        s[(n, k)] @ t[n], t[n + 1] @ s[(n, k - 1)])


def _check_cocyclic(m: ParaCocyclicModule, report: ParaCyclicReport) -> None:
    N = m.max_degree
    d = m.faces          # (n, k): Z^{n-1} -> Z^n
    s = m.degeneracies   # (n, k): Z^{n+1} -> Z^n
    w = m.cyclic

    # cosimplicial: d_j o d_i = d_i o d_{j-1}  (i < j), maps Z^{n-2} -> Z^n
    for n in range(2, N + 1):
        for j in range(1, n + 1):
            for i in range(j):
                _record(report, n, f"d{j} d{i} = d{i} d{j-1}",
                        d[(n, j)] @ d[(n - 1, i)],
                        d[(n, i)] @ d[(n - 1, j - 1)])
    if m.has_degeneracies:
        # s_j o s_i = s_i o s_{j+1}  (i <= j), maps Z^{n+2} -> Z^n
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    _record(report, n, f"s{j} s{i} = s{i} s{j+1}",
                            s[(n, j)] @ s[(n + 1, i)],
                            s[(n, i)] @ s[(n + 1, j + 1)])
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s[(n, j)] @ d[(n + 1, i)]
                    if i < j:
                        rhs = d[(n, i)] @ s[(n - 1, j - 1)]
                        name = f"s{j} d{i} = d{i} s{j-1}"
                    elif i in (j, j + 1):
                        rhs = RationalMatrix.identity(m.dims[n])
                        name = f"s{j} d{i} = id"
                    else:
                        rhs = d[(n, i - 1)] @ s[(n - 1, j)]
                        name = f"s{j} d{i} = d{i-1} s{j}"
                    _record(report, n, name, lhs, rhs)
    # cocyclic compatibilities: w_n d_0 = d_n; w_n d_k = d_{k-1} w_{n-1}
    for n in range(1, N + 1):
        if n not in w:
            continue
        _record(report, n, "w d0 = dn", w[n] @ d[(n, 0)], d[(n, n)])
        if n - 1 in w:
            for k in range(1, n + 1):
                _record(report, n, f"w d{k} = d{k-1} w",
                        w[n] @ d[(n, k)], d[(n, k - 1)] @ w[n - 1])
    # w_n s_0 = s_n w_{n+1}^2; w_n s_k = s_{k-1} w_{n+1}
    if m.has_degeneracies:
        for n in range(N):
            if n not in w or n + 1 not in w:
                continue
            _record(report, n, "w s0 = sn w^2",
                    w[n] @ s[(n, 0)], s[(n, n)] @ w[n + 1] @ w[n + 1])
            for k in range(1, n + 1):
                _record(report, n, f"w s{k} = s{k-1} w",
                        w[n] @ s[(n, k)], s[(n, k - 1)] @ w[n + 1])


# -- chain-complex constructions ----------------------------------------------


def to_complex(m: ParaCyclicModule, variant: str = "hochschild") -> ChainComplex:
    """Build the Hochschild complex or the cyclic quotient complex of m.

    hochschild: boundary b_n = sum_k (-1)^k d_k on the given spaces.
    connes_lambda: degree n is the quotient by im(id - (-1)^n t_n) and the
    boundary is the induced one; raises when the boundary fails to descend
    (which signals a non-para-cyclic input), naming the degree.
    """
    if variant not in ("hochschild", "connes_lambda"):
        raise ValueError(f"unknown variant {variant!r}")
    N = m.max_degree
    boundary: Dict[int, RationalMatrix] = {}
    for n in range(1, N + 1):
        b = RationalMatrix.zeros(m.dims[n - 1], m.dims[n])
        for k in range(n + 1):
            term = m.faces[(n, k)]
            b = b + (term if k % 2 == 0 else term.scale(-1))
        boundary[n] = b

    if variant == "hochschild":
        out = ChainComplex(N, m.dims, boundary)
        out.check_chain()
        return out

    quotients: List[QuotientSpace] = []
    for n in range(N + 1):
        t = m.cyclic[n]
        sign = _ONE if n % 2 == 0 else -_ONE
        op = RationalMatrix.identity(m.dims[n]) - t.scale(sign)
        quotients.append(quotient_space(m.dims[n], op.transpose()))
    induced: Dict[int, RationalMatrix] = {}
    for n in range(1, N + 1):
        t = m.cyclic[n]
        sign = _ONE if n % 2 == 0 else -_ONE
        op = RationalMatrix.identity(m.dims[n]) - t.scale(sign)
        descends = quotients[n - 1].projection @ boundary[n] @ op
        if not descends.is_zero():
            raise ValueError(
                f"cyclic quotient boundary not well defined at degree {n}")
        induced[n] = quotients[n - 1].projection @ boundary[n] @ quotients[n].section
    out = ChainComplex(N, tuple(q.dim for q in quotients), induced)
    out.check_chain()
    return out
