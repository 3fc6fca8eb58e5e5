"""Group homology with coefficients, via the inhomogeneous bar complex.

Model: right G-module M; C_n = M (x) Q[G^n];
d(m, (g_1..g_n)) = (m.g_1, (g_2..g_n))
                 + sum_{i=1..n-1} (-1)^i (m, (.., g_i g_{i+1}, ..))
                 + (-1)^n (m, (g_1..g_{n-1})).

Run:  python oracle/group_bar.py
"""

from fractions import Fraction

from cyclic_algebra import cyclic_group, s3_elements
from linalg import ZERO, complex_homology
from nerve_trivial import Group, tuple_index, tuples

ONE = Fraction(1)


def bar_homology(g, mod_dim, act, upto=4):
    """act[gi] = dense matrix (list of rows) for the right action m.g."""
    top = upto + 1
    d = len(g.elements)
    dims = [mod_dim * d ** n for n in range(top + 1)]
    bcols = {}
    for n in range(1, top + 1):
        cols = []
        for tup in tuples(d, n):
            for mi in range(mod_dim):
                col = {}

                def add(row_mi, row_tup, coeff):
                    j = tuple_index(row_tup, d) * mod_dim + row_mi
                    nv = col.get(j, ZERO) + coeff
                    if nv:
                        col[j] = nv
                    else:
                        col.pop(j, None)

                mat = act[tup[0]]
                for out_mi in range(mod_dim):
                    c = mat[mi][out_mi]
                    if c:
                        add(out_mi, tup[1:], c)
                for i in range(1, n):
                    sgn = ONE if i % 2 == 0 else -ONE
                    merged = tup[:i - 1] + (g.mul[(tup[i - 1], tup[i])],) + tup[i + 1:]
                    add(mi, merged, sgn)
                sgn = ONE if n % 2 == 0 else -ONE
                add(mi, tup[:-1], sgn)
                cols.append(col)
        bcols[n] = cols
    return complex_homology(dims, bcols, upto)


def trivial_action(g, mod_dim=1):
    eye = [[ONE if i == j else ZERO for j in range(mod_dim)] for i in range(mod_dim)]
    return {i: eye for i in range(len(g.elements))}


def main():
    els, table = cyclic_group(1)
    triv = Group("1", els, table)
    print("H_*(1, Q)      ", bar_homology(triv, 1, trivial_action(triv)))

    els, table = cyclic_group(2)
    c2 = Group("C2", els, table)
    print("H_*(C2, Q)     ", bar_homology(c2, 1, trivial_action(c2)))
    sign = {0: [[ONE]], 1: [[-ONE]]}
    print("H_*(C2, Qsign) ", bar_homology(c2, 1, sign))

    els, table = cyclic_group(3)
    c3 = Group("C3", els, table)
    print("H_*(C3, Q)     ", bar_homology(c3, 1, trivial_action(c3)))

    els, table = s3_elements()
    s3 = Group("S3", els, table)
    print("H_*(S3, Q)     ", bar_homology(s3, 1, trivial_action(s3), upto=3))


if __name__ == "__main__":
    main()
