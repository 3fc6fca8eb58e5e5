"""Hochschild and cyclic homology of small algebras, from first principles.

Model: the classical cyclic module of a unital algebra A over Q, with
C_n = A^{(n+1)-fold tensor}, faces merging adjacent tensor slots (the last
face wrapping around), and the cyclic rotation.  HH is the homology of the
alternating-sum boundary; HC (char 0) is the homology of the quotient complex
by im(id - (-1)^n t_n).

Run:  python oracle/cyclic_algebra.py
"""

from fractions import Fraction

from linalg import ZERO, complex_homology, quotient_maps, rank_of_rows

ONE = Fraction(1)


class Algebra:
    def __init__(self, name, labels, mul, unit):
        # mul[(i, j)] = sparse vector {k: coeff} for basis_i * basis_j
        self.name = name
        self.dim = len(labels)
        self.labels = labels
        self.mul = mul
        self.unit = unit  # sparse vector


def group_algebra(name, elements, mul_table):
    idx = {g: i for i, g in enumerate(elements)}
    mul = {}
    for a in elements:
        for b in elements:
            mul[(idx[a], idx[b])] = {idx[mul_table[(a, b)]]: ONE}
    unit = {idx[elements[0]]: ONE}  # convention: first element is the unit
    return Algebra(name, list(elements), mul, unit)


def cyclic_group(n):
    els = [f"g{k}" for k in range(n)]
    table = {(f"g{a}", f"g{b}"): f"g{(a + b) % n}" for a in range(n) for b in range(n)}
    return els, table


def perm_mul(p, q):
    # p, q: tuples mapping position i -> p[i]; (p*q)(i) = p(q(i)) = "q then p"
    return tuple(p[q[i]] for i in range(len(p)))


def s3_elements():
    base = [0, 1, 2]
    perms = []
    for a in base:
        for b in base:
            for c in base:
                if {a, b, c} == {0, 1, 2}:
                    perms.append((a, b, c))
    # stable naming, identity first
    perms.sort(key=lambda p: (p != (0, 1, 2), p))
    names = {p: f"p{i}" for i, p in enumerate(perms)}
    table = {(names[p], names[q]): names[perm_mul(p, q)] for p in perms for q in perms}
    return [names[p] for p in perms], table


def matrix_algebra_2():
    # basis e11, e12, e21, e22 with e_ab * e_cd = delta_bc e_ad
    labels = ["e11", "e12", "e21", "e22"]
    pos = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    mul = {}
    for (a, b), i in pos.items():
        for (c, d), j in pos.items():
            mul[(i, j)] = {pos[(a, d)]: ONE} if b == c else {}
    unit = {0: ONE, 3: ONE}
    return Algebra("M2(Q)", labels, mul, unit)


def direct_sum_algebra(name, a, b):
    labels = [f"L.{x}" for x in a.labels] + [f"R.{x}" for x in b.labels]
    mul = {}
    for (i, j), v in a.mul.items():
        mul[(i, j)] = dict(v)
    for (i, j), v in b.mul.items():
        mul[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in v.items()}
    for i in range(a.dim):
        for j in range(b.dim):
            mul[(i, j + a.dim)] = {}
            mul[(j + a.dim, i)] = {}
    unit = dict(a.unit)
    unit.update({k + a.dim: c for k, c in b.unit.items()})
    return Algebra(name, labels, mul, unit)


def tuple_index(tup, dim):
    out = 0
    for x in tup:
        out = out * dim + x
    return out


def tuples(dim, count):
    if count == 0:
        yield ()
        return
    for rest in tuples(dim, count - 1):
        for x in range(dim):
            yield rest + (x,)


def face_col(alg, tup, k):
    """Sparse column of d_k applied to the basis tensor `tup` (degree n)."""
    n = len(tup) - 1
    d = alg.dim
    if k < n:
        prod = alg.mul[(tup[k], tup[k + 1])]
        out = {}
        for m, c in prod.items():
            merged = tup[:k] + (m,) + tup[k + 2:]
            out[tuple_index(merged, d)] = out.get(tuple_index(merged, d), ZERO) + c
        return out
    prod = alg.mul[(tup[n], tup[0])]
    out = {}
    for m, c in prod.items():
        merged = (m,) + tup[1:n]
        out[tuple_index(merged, d)] = out.get(tuple_index(merged, d), ZERO) + c
    return out


def boundary_cols(alg, n):
    """Columns of the Hochschild boundary b_n : C_n -> C_{n-1}."""
    cols = []
    for tup in tuples(alg.dim, n + 1):
        col = {}
        for k in range(n + 1):
            sgn = ONE if k % 2 == 0 else -ONE
            for r, c in face_col(alg, tup, k).items():
                nv = col.get(r, ZERO) + sgn * c
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        cols.append(col)
    return cols


def rotate_index(alg, tup):
    return tuple_index((tup[-1],) + tup[:-1], alg.dim)


def report(alg, upto=3):
    top = upto + 1
    dims = [alg.dim ** (n + 1) for n in range(top + 1)]
    bcols = {n: boundary_cols(alg, n) for n in range(1, top + 1)}
    hh = complex_homology(dims, bcols, upto)

    # lambda-complex: quotient by im(id - (-1)^n t_n) with induced boundary
    lam_dim = {}
    lam_proj = {}
    lam_sect = {}
    for n in range(top + 1):
        sgn = ONE if n % 2 == 0 else -ONE
        rows = []
        for tup in tuples(alg.dim, n + 1):
            j = tuple_index(tup, alg.dim)
            row = {j: ONE}
            rj = rotate_index(alg, tup)
            row[rj] = row.get(rj, ZERO) - sgn
            rows.append(row)
        qdim, project, free_cols = quotient_maps(dims[n], rows)
        lam_dim[n] = qdim
        lam_proj[n] = project
        lam_sect[n] = free_cols
    lam_bcols = {}
    for n in range(1, top + 1):
        all_tups = list(tuples(alg.dim, n + 1))
        cols = []
        for amb in lam_sect[n]:
            tup = all_tups[amb]
            col = {}
            for k in range(n + 1):
                sgn = ONE if k % 2 == 0 else -ONE
                for r, c in face_col(alg, tup, k).items():
                    nv = col.get(r, ZERO) + sgn * c
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
            cols.append(lam_proj[n - 1](col))
        lam_bcols[n] = cols
    hc = complex_homology([lam_dim[n] for n in range(top + 1)], lam_bcols, upto)

    print(f"{alg.name}: dim {alg.dim}")
    print(f"  chain dims      {dims}")
    print(f"  lambda dims     {[lam_dim[n] for n in range(top + 1)]}")
    print(f"  HH_0..{upto}        {hh}")
    print(f"  HC_0..{upto}        {hc}")
    return hh, hc


def main():
    els, table = cyclic_group(2)
    report(group_algebra("Q[C2]", els, table))
    els, table = cyclic_group(3)
    report(group_algebra("Q[C3]", els, table))
    report(matrix_algebra_2())
    els, table = cyclic_group(2)
    c2a = group_algebra("Q[C2]", els, table)
    c2b = group_algebra("Q[C2]", els, table)
    report(direct_sum_algebra("Q[C2] x Q[C2]", c2a, c2b))
    els, table = s3_elements()
    report(group_algebra("Q[S3]", els, table))


if __name__ == "__main__":
    main()
