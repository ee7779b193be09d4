"""Energy vectors and the finite distributive lattice calculus.

Vectors live in (N u {inf})^6; the infinite component is float('inf'), which
absorbs max exactly.  The lattice class is generic over hashable elements
with explicit meet/join functions, so it also serves the Lindenbaum algebras
(frozensets of models) and downset lattices.
"""

import itertools
from functools import reduce

INF = float("inf")

# 13 named equivalence budgets, coarse to fine
NAMED_VECTORS = {
    "E": (1, 1, 0, 0, 0, 0),
    "T": (INF, 1, 0, 0, 0, 0),
    "F": (INF, 2, 0, 0, 1, 1),
    "RV": (INF, 2, 1, 0, 1, 1),
    "R": (INF, 2, 1, 1, 1, 1),
    "FT": (INF, INF, INF, 0, 1, 1),
    "RT": (INF, INF, INF, 1, 1, 1),
    "IF": (INF, 2, 0, 0, INF, 1),
    "PF": (INF, 2, INF, INF, INF, 1),
    "S": (INF, INF, INF, INF, 0, 0),
    "RS": (INF, INF, INF, INF, 1, 1),
    "2S": (INF, INF, INF, INF, INF, 1),
    "B": (INF, INF, INF, INF, INF, INF),
}

NAME_OF_VECTOR = {v: k for k, v in NAMED_VECTORS.items()}


def vec_meet(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def vec_join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def vec_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def format_vector(v):
    return "(" + ",".join("inf" if x == INF else str(int(x)) for x in v) + ")"


# ---------------------------------------------------------------------------


class FiniteDistributiveLattice:
    """Explicit finite lattice over hashable elements.

    Immutable after construction; distributivity is a checkable property, not
    an assumed one.
    """

    def __init__(self, elements, meet, join, sort_key=repr):
        self.elements = sorted(set(elements), key=sort_key)
        self._key = sort_key
        self._meet = {}
        self._join = {}
        elems = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                m, j = meet(a, b), join(a, b)
                if m not in elems or j not in elems:
                    raise ValueError("element set not closed under meet/join")
                self._meet[(a, b)] = m
                self._join[(a, b)] = j
        self.bottom = reduce(self.meet, self.elements)
        self.top = reduce(self.join, self.elements)

    def meet(self, a, b):
        return self._meet[(a, b)]

    def join(self, a, b):
        return self._join[(a, b)]

    def leq(self, a, b):
        return self._meet[(a, b)] == a

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def covers(self):
        """Hasse diagram edges (a covered-by b)."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(
                        self.lt(a, c) and self.lt(c, b) for c in self.elements):
                    out.append((a, b))
        return out

    def join_irreducibles(self):
        if not hasattr(self, "_ji"):
            self._ji = self._join_irreducibles()
        return self._ji

    def _join_irreducibles(self):
        out = []
        for x in self.elements:
            if x == self.bottom:
                continue
            if any(self.lt(a, x) and self.lt(b, x) and self.join(a, b) == x
                   for a in self.elements for b in self.elements):
                continue
            out.append(x)
        return out

    def meet_irreducibles(self):
        if not hasattr(self, "_mi"):
            self._mi = self._meet_irreducibles()
        return self._mi

    def _meet_irreducibles(self):
        out = []
        for x in self.elements:
            if x == self.top:
                continue
            if any(self.lt(x, a) and self.lt(x, b) and self.meet(a, b) == x
                   for a in self.elements for b in self.elements):
                continue
            out.append(x)
        return out

    def downset_of_irreducibles(self, x):
        return frozenset(j for j in self.join_irreducibles() if self.leq(j, x))

    def is_distributive(self):
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.meet(a, self.join(b, c)) != \
                    self.join(self.meet(a, b), self.meet(a, c)):
                return False
        return True

    def heyting(self, a, b):
        """Largest z with z & a <= b (join of all candidates)."""
        candidates = [z for z in self.elements if self.leq(self.meet(z, a), b)]
        return reduce(self.join, candidates, self.bottom)

    def coheyting(self, x, y):
        """Birkhoff subtraction: join of irreducibles under x but not y."""
        parts = [j for j in self.join_irreducibles()
                 if self.leq(j, x) and not self.leq(j, y)]
        return reduce(self.join, parts, self.bottom)

    def pseudocomplement(self, x):
        return self.heyting(x, self.bottom)

    def conegation(self, x):
        return self.coheyting(self.top, x)

    def boundary(self, x):
        return self.meet(x, self.pseudocomplement(x))

    def boolean_core(self):
        return [x for x in self.elements
                if self.pseudocomplement(self.pseudocomplement(x)) == x]

    def automorphisms(self):
        """Order-preserving self-bijections, by backtracking on a structural
        signature (in/out cover degrees)."""
        covers = self.covers()
        up = {x: sorted((b for (a, b) in covers if a == x), key=self._key)
              for x in self.elements}
        down = {x: sorted((a for (a, b) in covers if b == x), key=self._key)
                for x in self.elements}
        sig = {x: (len(up[x]), len(down[x])) for x in self.elements}
        order = sorted(self.elements, key=self._key)
        results = []
        assign = {}
        used = set()

        def rec(k):
            if k == len(order):
                results.append(dict(assign))
                return
            x = order[k]
            for y in self.elements:
                if y in used or sig[x] != sig[y]:
                    continue
                ok = all(self.leq(x, z) == self.leq(y, assign[z])
                         and self.leq(z, x) == self.leq(assign[z], y)
                         for z in assign)
                if ok:
                    assign[x] = y
                    used.add(y)
                    rec(k + 1)
                    del assign[x]
                    used.discard(y)

        rec(0)
        return results


# ---------------------------------------------------------------------------
# closure of the named vectors


def close_sublattice(seed):
    """Smallest superset of seed closed under pairwise componentwise min/max.

    Returns (lattice, provenance, rounds).  A round is one pass over all
    current pairs; the count includes the final pass that adds nothing.
    Provenance maps each vector to its name or first deriving expression.
    """
    current = sorted(set(seed))
    provenance = {}
    for v in current:
        provenance[v] = NAME_OF_VECTOR.get(v, format_vector(v))
    rounds = 0
    while True:
        rounds += 1
        added = []
        for a, b in itertools.combinations(sorted(current), 2):
            for (op, sym) in ((vec_meet, "∧"), (vec_join, "∨")):
                v = op(a, b)
                if v not in provenance:
                    provenance[v] = "%s%s%s" % (provenance[a], sym, provenance[b])
                    added.append(v)
        if not added:
            break
        current.extend(added)
    lattice = FiniteDistributiveLattice(current, vec_meet, vec_join)
    return lattice, provenance, rounds


def spectrum_lattice():
    return close_sublattice(NAMED_VECTORS.values())


def naive_subtraction(x, y):
    """Componentwise product-frame subtraction; may leave the lattice."""
    return tuple(a if a > b else 0 for a, b in zip(x, y))


def negations_and_core(L):
    rows = {
        "pseudocomplements": {x: L.pseudocomplement(x) for x in L.elements},
        "conegations": {x: L.conegation(x) for x in L.elements},
        "boundaries": {x: L.boundary(x) for x in L.elements},
        "boolean_core": L.boolean_core(),
    }
    return rows


def comparability_components(L, nodes):
    """Connected components of the comparability graph on the given nodes."""
    nodes = list(nodes)
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for a, b in itertools.combinations(nodes, 2):
        if L.leq(a, b) or L.leq(b, a):
            edges.append((a, b))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for x in nodes:
        comps.setdefault(find(x), []).append(x)
    return list(comps.values()), edges


def indecomposability_check(L):
    """Connectivity of the comparability graph on the join-irreducibles,
    with a spanning edge list as witness."""
    J = L.join_irreducibles()
    comps, edges = comparability_components(L, J)
    # covering relations inside the J subposet
    jcovers = [(a, b) for a in J for b in J
               if L.lt(a, b) and not any(L.lt(a, c) and L.lt(c, b) for c in J)]
    return {"connected": len(comps) == 1, "components": len(comps),
            "comparability_edges": edges, "j_covers": jcovers}


def incomparable_named_pairs():
    """Ordered pairs of distinct named vectors incomparable componentwise."""
    out = []
    for (na, a), (nb, b) in itertools.permutations(NAMED_VECTORS.items(), 2):
        if not vec_leq(a, b) and not vec_leq(b, a):
            out.append((na, nb))
    return out


def downset_lattice(poset_elements, leq):
    """O(P): all downward-closed subsets ordered by inclusion."""
    elems = list(poset_elements)
    downsets = []
    for mask in range(1 << len(elems)):
        sub = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
        if all(b in sub for a in sub for b in elems if leq(b, a)):
            downsets.append(sub)
    return FiniteDistributiveLattice(
        downsets, lambda a, b: a & b, lambda a, b: a | b,
        sort_key=lambda s: (len(s), sorted(map(repr, s))))
