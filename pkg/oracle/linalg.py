"""Small exact linear-algebra helpers shared by the oracle scripts.

Everything here is deliberately boring: dict-based sparse rows over Fraction,
textbook Gaussian elimination, no pivoting cleverness.  These scripts exist to
produce expected values for the test suite by an independent route, so they
avoid sharing any code with the package under src/.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def clean(row):
    return {c: v for c, v in row.items() if v}


def rank_of_rows(rows):
    """Rank of an iterable of sparse rows (dict col -> Fraction)."""
    pivots = {}
    rank = 0
    for row in rows:
        row = clean(row)
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = ONE / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            coef = row[lead]
            for c, v in pivots[lead].items():
                nv = row.get(c, ZERO) - coef * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank


def rref(rows):
    """Fully reduced row echelon form of sparse rows.

    Returns (pivot_cols_sorted, {pivot_col: row}) with each row normalized,
    reduced against every other pivot, and carrying its own pivot entry 1.
    """
    pivots = {}
    for row in rows:
        row = clean(row)
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = ONE / row[lead]
                row = {c: v * inv for c, v in row.items()}
                # back-substitute into existing rows
                for p, prow in pivots.items():
                    coef = prow.get(lead)
                    if coef:
                        for c, v in row.items():
                            nv = prow.get(c, ZERO) - coef * v
                            if nv:
                                prow[c] = nv
                            else:
                                prow.pop(c, None)
                pivots[lead] = row
                break
            coef = row[lead]
            for c, v in pivots[lead].items():
                nv = row.get(c, ZERO) - coef * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return sorted(pivots), pivots


def quotient_maps(dim, relation_rows):
    """Quotient of Q^dim by the span of relation_rows.

    Returns (qdim, project, section_cols) where project maps an ambient sparse
    vector (dict) to quotient coordinates (dict over 0..qdim-1) and
    section_cols[j] is the ambient representative of quotient basis vector j.
    """
    pivot_cols, rows = rref(relation_rows)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(dim) if c not in pivot_set]
    free_index = {c: i for i, c in enumerate(free_cols)}

    # class of ambient e_j, as a sparse vector over free columns
    expand = {}
    for p in pivot_cols:
        row = rows[p]
        expand[p] = {free_index[c]: -v for c, v in row.items() if c != p}

    def project(vec):
        out = {}
        for c, v in vec.items():
            if c in pivot_set:
                for f, w in expand[c].items():
                    nv = out.get(f, ZERO) + v * w
                    if nv:
                        out[f] = nv
                    else:
                        out.pop(f, None)
            else:
                f = free_index[c]
                nv = out.get(f, ZERO) + v
                if nv:
                    out[f] = nv
                else:
                    out.pop(f, None)
        return out

    return len(free_cols), project, free_cols


def complex_homology(dims, boundary_cols, upto):
    """Homology dims (degrees 0..upto) of a chain complex.

    dims: list of dims for degrees 0..N; boundary_cols[n] for 1 <= n <= N is a
    list of sparse columns (length dims[n]) with entries indexed by degree n-1
    basis positions.  Requires N >= upto + 1.
    """
    ranks = {0: 0}
    for n in range(1, upto + 2):
        ranks[n] = rank_of_rows(boundary_cols[n])
    out = []
    for n in range(upto + 1):
        out.append(dims[n] - ranks[n] - ranks[n + 1])
    return out
