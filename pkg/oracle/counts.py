"""Dimension counts for the groupoid fixtures, by brute enumeration.

Defines the five fixture groupoids from scratch (one-object C2 and S3, the
two-object contractible groupoid I2, and the action groupoids of the swap and
trivial Z/2-actions on a two-element set), then counts:

  - loops, conjugation orbits, centralizer orders, morphisms-from-x sets;
  - chain dims sum_l |B(s(l))|^n * dim M_l for the adjoint and
    identity-supported modules, n = 0..5;
  - group-reduction dims |B(s(l))|^{n+1} * dim M_l / |centralizer| (with the
    freeness of the diagonal centralizer action verified by orbit counting)
    and centralizer-side dims |centralizer|^n * dim M_l;
  - composable pairs (the dim of B tensored with itself over the base) and
    closed composable chains of each length (relative chain dims);
  - loop counts (the dim of the cyclic quotient of B).

Run:  python oracle/counts.py
"""

from itertools import product


class Groupoid:
    def __init__(self, name, objects, morphisms, compose):
        # morphisms: list of (name, src, tgt); compose: dict (f, g) -> f-after-g
        self.name = name
        self.objects = objects
        self.morphisms = [m[0] for m in morphisms]
        self.src = {m[0]: m[1] for m in morphisms}
        self.tgt = {m[0]: m[2] for m in morphisms}
        self.compose = compose
        self.identity = {}
        for m in self.morphisms:
            if all(compose.get((m, g)) == g for g in self.morphisms
                   if self.tgt[g] == self.src[m]) and self.src[m] == self.tgt[m]:
                self.identity[self.src[m]] = m
        self.inv = {}
        for f in self.morphisms:
            for g in self.morphisms:
                if (compose.get((f, g)) == self.identity.get(self.src[g])
                        and compose.get((g, f)) == self.identity.get(self.src[f])):
                    self.inv[f] = g

    def loops(self):
        return [m for m in self.morphisms if self.src[m] == self.tgt[m]]

    def conj(self, h, l):
        # h l h^{-1}, defined when src(h) = src(l) (= tgt(l))
        if self.src[h] != self.src[l]:
            return None
        return self.compose[(self.compose[(h, l)], self.inv[h])]

    def orbits(self):
        loops = self.loops()
        seen, out = set(), []
        for l in loops:
            if l in seen:
                continue
            orb = {l}
            frontier = [l]
            while frontier:
                cur = frontier.pop()
                for h in self.morphisms:
                    c = self.conj(h, cur)
                    if c is not None and c not in orb:
                        orb.add(c)
                        frontier.append(c)
            ordered = [x for x in loops if x in orb]
            out.append(ordered)
            seen |= orb
        return out

    def centralizer(self, l):
        x = self.src[l]
        return [h for h in self.loops()
                if self.src[h] == x and self.compose[(h, l)] == self.compose[(l, h)]]

    def from_x(self, x):
        return [m for m in self.morphisms if self.src[m] == x]


def one_object_group(name, elements, table):
    morphisms = [(g, "*", "*") for g in elements]
    compose = {(f, g): table[(f, g)] for f in elements for g in elements}
    return Groupoid(name, ["*"], morphisms, compose)


def c2():
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return one_object_group("C2", ["e", "s"], table)


def s3():
    # order: identity, the three transpositions, the two rotations
    def pm(p, q):
        return tuple(p[q[i]] for i in range(3))
    perms = {"e": (0, 1, 2), "a": (1, 0, 2), "b": (2, 1, 0), "c": (0, 2, 1),
             "r": (1, 2, 0), "rr": (2, 0, 1)}
    names = {v: k for k, v in perms.items()}
    table = {(f, g): names[pm(perms[f], perms[g])] for f in perms for g in perms}
    return one_object_group("S3", ["e", "a", "b", "c", "r", "rr"], table)


def i2():
    morphisms = [("ia", "a", "a"), ("ib", "b", "b"), ("f", "a", "b"), ("g", "b", "a")]
    compose = {("ia", "ia"): "ia", ("ia", "g"): "g", ("f", "ia"): "f",
               ("f", "g"): "ib", ("g", "f"): "ia", ("g", "ib"): "g",
               ("ib", "ib"): "ib", ("ib", "f"): "f"}
    return Groupoid("I2", ["a", "b"], morphisms, compose)


def action_groupoid(name, group_els, group_table, xs, act):
    # morphism (x, g): x -> act[g][x]; (x,g) o (x',g') = (x', g g') when x = act[g'][x']
    morphisms = []
    for x in xs:
        for g in group_els:
            morphisms.append((f"{x}|{g}", x, act[g][x]))
    compose = {}
    for (x, g), (x2, g2) in product(product(xs, group_els), repeat=2):
        if x == act[g2][x2]:
            compose[(f"{x}|{g}", f"{x2}|{g2}")] = f"{x2}|{group_table[(g, g2)]}"
    return Groupoid(name, list(xs), morphisms, compose)


def gset_swap():
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    act = {"e": {"x": "x", "y": "y"}, "s": {"x": "y", "y": "x"}}
    return action_groupoid("GSwap", ["e", "s"], table, ["x", "y"], act)


def gset_trivial():
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    act = {"e": {"x": "x", "y": "y"}, "s": {"x": "x", "y": "y"}}
    return action_groupoid("GTriv", ["e", "s"], table, ["x", "y"], act)


def module_dims(g, kind):
    """dim M_l per loop: adjoint = 1 everywhere, base = 1 on identities."""
    if kind == "adjoint":
        return {l: 1 for l in g.loops()}
    return {l: (1 if l in g.identity.values() else 0) for l in g.loops()}


def chain_dims(g, mdims, upto=5):
    return [sum((len(g.from_x(g.src[l])) ** n) * mdims[l] for l in g.loops())
            for n in range(upto + 1)]


def reduction_dims(g, l, mdim, upto=3):
    """Orbit count of the diagonal centralizer action on tuples from B(s(l)),
    with freeness verified; plus centralizer-side dims."""
    bx = g.from_x(g.src[l])
    cent = g.centralizer(l)
    group_side = []
    for n in range(upto + 1):
        tups = set(product(bx, repeat=n + 1))
        orbit_count = 0
        while tups:
            t = next(iter(tups))
            orb = {tuple(g.compose[(ti, h)] for ti in t) for h in cent}
            assert len(orb) == len(cent), "diagonal action not free"
            tups -= orb
            orbit_count += 1
        group_side.append(orbit_count * mdim)
    cent_side = [(len(cent) ** n) * mdim for n in range(upto + 1)]
    return group_side, cent_side


def composable_pairs(g):
    return sum(1 for f in g.morphisms for h in g.morphisms if g.src[f] == g.tgt[h])


def closed_chains(g, upto=4):
    out = []
    for n in range(upto + 1):
        count = 0
        for tup in product(g.morphisms, repeat=n + 1):
            ok = all(g.src[tup[i]] == g.tgt[tup[i + 1]] for i in range(n))
            if ok and g.src[tup[n]] == g.tgt[tup[0]]:
                count += 1
        out.append(count)
    return out


def main():
    for g in [c2(), s3(), i2(), gset_swap(), gset_trivial()]:
        print(f"== {g.name} ==")
        print(f"  objects {g.objects}")
        print(f"  morphisms {g.morphisms}")
        print(f"  identities {g.identity}")
        print(f"  loops {g.loops()}")
        orbs = g.orbits()
        print(f"  orbits {orbs}")
        for orb in orbs:
            l = orb[0]
            cent = g.centralizer(l)
            print(f"    orbit of {l}: size {len(orb)}, centralizer {cent} "
                  f"(order {len(cent)}), |B({g.src[l]})| = {len(g.from_x(g.src[l]))}")
        adj = module_dims(g, "adjoint")
        base = module_dims(g, "base")
        print(f"  chain dims, adjoint     {chain_dims(g, adj)}")
        print(f"  chain dims, base-ident  {chain_dims(g, base)}")
        for orb in orbs:
            l = orb[0]
            gs, cs = reduction_dims(g, l, 1)
            print(f"  reduction at {l}: group side {gs}, centralizer side {cs}")
        print(f"  composable pairs {composable_pairs(g)}")
        print(f"  closed chains (len 1..5) {closed_chains(g)}")
        print(f"  loop count (cyclic quotient of B) {len(g.loops())}")
        print()


if __name__ == "__main__":
    main()
