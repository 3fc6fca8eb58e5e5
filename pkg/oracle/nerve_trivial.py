"""Cyclic/Hochschild homology of the identity component with trivial
coefficients, for a finite group G.

Model: C_n = Q[G^n] (C_0 = Q), faces drop the first slot / merge adjacent
slots / drop the last slot, cyclic operator
    t(g_1, ..., g_n) = ((g_1 ... g_n)^{-1}, g_1, ..., g_{n-1}).
This is the product-equal-to-identity component of the classical cyclic
module in reduced coordinates.

Run:  python oracle/nerve_trivial.py
"""

from fractions import Fraction

from cyclic_algebra import cyclic_group, s3_elements
from linalg import ZERO, complex_homology, quotient_maps

ONE = Fraction(1)


class Group:
    def __init__(self, name, elements, table):
        self.name = name
        self.elements = list(elements)
        self.idx = {g: i for i, g in enumerate(self.elements)}
        self.mul = {(self.idx[a], self.idx[b]): self.idx[table[(a, b)]]
                    for a in elements for b in elements}
        self.e = 0  # first element is the unit by construction
        self.inv = {}
        for i in range(len(self.elements)):
            for j in range(len(self.elements)):
                if self.mul[(i, j)] == self.e:
                    self.inv[i] = j


def tuples(dim, count):
    if count == 0:
        yield ()
        return
    for rest in tuples(dim, count - 1):
        for x in range(dim):
            yield rest + (x,)


def tuple_index(tup, dim):
    out = 0
    for x in tup:
        out = out * dim + x
    return out


def face(g, tup, k):
    n = len(tup)
    if k == 0:
        return tup[1:]
    if k == n:
        return tup[:-1]
    return tup[:k - 1] + (g.mul[(tup[k - 1], tup[k])],) + tup[k + 1:]


def cyc(g, tup):
    prod = g.e
    for x in tup:
        prod = g.mul[(prod, x)]
    return (g.inv[prod],) + tup[:-1]


def report(g, upto=3):
    top = upto + 1
    d = len(g.elements)
    dims = [d ** n for n in range(top + 1)]
    bcols = {}
    for n in range(1, top + 1):
        cols = []
        for tup in tuples(d, n):
            col = {}
            for k in range(n + 1):
                sgn = ONE if k % 2 == 0 else -ONE
                j = tuple_index(face(g, tup, k), d)
                nv = col.get(j, ZERO) + sgn
                if nv:
                    col[j] = nv
                else:
                    col.pop(j, None)
            cols.append(col)
        bcols[n] = cols
    hh = complex_homology(dims, bcols, upto)

    lam_dim, lam_proj, lam_sect = {}, {}, {}
    for n in range(top + 1):
        sgn = ONE if n % 2 == 0 else -ONE
        rows = []
        for tup in tuples(d, n):
            row = {tuple_index(tup, d): ONE}
            rj = tuple_index(cyc(g, tup), d)
            row[rj] = row.get(rj, ZERO) - sgn
            rows.append(row)
        lam_dim[n], lam_proj[n], lam_sect[n] = quotient_maps(dims[n], rows)
    lam_bcols = {}
    for n in range(1, top + 1):
        all_tups = list(tuples(d, n))
        cols = []
        for amb in lam_sect[n]:
            tup = all_tups[amb]
            col = {}
            for k in range(n + 1):
                sgn = ONE if k % 2 == 0 else -ONE
                j = tuple_index(face(g, tup, k), d)
                nv = col.get(j, ZERO) + sgn
                if nv:
                    col[j] = nv
                else:
                    col.pop(j, None)
            cols.append(lam_proj[n - 1](col))
        lam_bcols[n] = cols
    hc = complex_homology([lam_dim[n] for n in range(top + 1)], lam_bcols, upto)

    print(f"{g.name} (trivial coefficients): |G| = {d}")
    print(f"  chain dims      {dims}")
    print(f"  lambda dims     {[lam_dim[n] for n in range(top + 1)]}")
    print(f"  HH_0..{upto}        {hh}")
    print(f"  HC_0..{upto}        {hc}")


def main():
    els, table = cyclic_group(2)
    report(Group("C2", els, table))
    els, table = s3_elements()
    report(Group("S3", els, table))


if __name__ == "__main__":
    main()
