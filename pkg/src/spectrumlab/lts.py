"""Finite rooted labeled transition systems.

States are positional (0..n-1); display names are metadata and never affect
equality or hashing.  Unlabeled systems use the single label "*".
"""

import itertools
import json
import os
import re
from dataclasses import dataclass, field

STAR = "*"

DEFAULT_BUDGET = 10 ** 6


def enumeration_budget():
    """Candidate-assignment budget for exhaustive searches (env-overridable)."""
    raw = os.environ.get("SPECTRUM_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


class ParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search hits its budget (distinct from a
    negative answer)."""


@dataclass(frozen=True)
class FinLTS:
    n: int
    alphabet: tuple
    root: int
    transitions: frozenset  # of (src, label, dst)
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not (0 <= self.root < self.n):
            raise ValueError("root out of range")
        labels = set(self.alphabet)
        for (s, a, t) in self.transitions:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError("transition endpoint out of range")
            if a not in labels:
                raise ValueError("transition label %r not in alphabet" % (a,))
        if self.names and len(self.names) != self.n:
            raise ValueError("name count mismatch")

    # -- display names -------------------------------------------------

    def name_of(self, i):
        if self.names:
            return self.names[i]
        return "s%d" % i

    def state(self, name):
        """Index of the state with the given display name."""
        for i in range(self.n):
            if self.name_of(i) == name:
                return i
        raise KeyError(name)

    # -- structure queries ---------------------------------------------

    def successors(self, s, label=None):
        if label is None:
            return sorted({t for (u, a, t) in self.transitions if u == s})
        return sorted({t for (u, a, t) in self.transitions if u == s and a == label})

    def predecessors(self, s, label=None):
        if label is None:
            return sorted({u for (u, a, t) in self.transitions if t == s})
        return sorted({u for (u, a, t) in self.transitions if t == s and a == label})

    def enabled(self, s):
        return frozenset(a for (u, a, t) in self.transitions if u == s)

    def has_edge(self, s, t, label=None):
        if label is None:
            return any(u == s and v == t for (u, a, v) in self.transitions)
        return (s, label, t) in self.transitions

    def is_deterministic_state(self, s):
        seen = set()
        for (u, a, t) in self.transitions:
            if u == s:
                if (a in seen):
                    return False
                seen.add(a)
        return True

    def nondeterministic_states(self):
        return [s for s in range(self.n) if not self.is_deterministic_state(s)]

    def has_cycle(self):
        color = [0] * self.n
        def visit(u):
            color[u] = 1
            for v in self.successors(u):
                if color[v] == 1:
                    return True
                if color[v] == 0 and visit(v):
                    return True
            color[u] = 2
            return False
        return any(color[u] == 0 and visit(u) for u in range(self.n))

    def rename(self, names):
        return FinLTS(self.n, self.alphabet, self.root, self.transitions, tuple(names))


def make_lts(names, alphabet, root_name, edges):
    """Build a FinLTS from display names and (src, label, dst) name triples."""
    names = tuple(names)
    idx = {nm: i for i, nm in enumerate(names)}
    trans = frozenset((idx[s], a, idx[t]) for (s, a, t) in edges)
    return FinLTS(len(names), tuple(alphabet), idx[root_name], trans, names)


def unlabeled(names, root_name, pairs):
    return make_lts(names, (STAR,), root_name, [(s, STAR, t) for (s, t) in pairs])


# ---------------------------------------------------------------------------
# reachability / path equivalence / quotient


def reachable_from(G, s):
    """Reflexive-transitive closure image of s under the unlabeled step."""
    seen = {s}
    frontier = [s]
    while frontier:
        u = frontier.pop()
        for v in G.successors(u):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


def coreachable_to(G, s):
    seen = {s}
    frontier = [s]
    while frontier:
        u = frontier.pop()
        for v in G.predecessors(u):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


def reachable_states(G):
    return reachable_from(G, G.root)


def path_equivalence_classes(G):
    """Partition by (forward reach set, backward reach set)."""
    key = {}
    for s in range(G.n):
        key[s] = (frozenset(reachable_from(G, s)), frozenset(coreachable_to(G, s)))
    classes = {}
    for s in range(G.n):
        classes.setdefault(key[s], []).append(s)
    return sorted(classes.values())


def path_equivalent(G, s, t):
    return (reachable_from(G, s) == reachable_from(G, t)
            and coreachable_to(G, s) == coreachable_to(G, t))


def quotient(G):
    classes = path_equivalence_classes(G)
    cls_of = {}
    for i, c in enumerate(classes):
        for s in c:
            cls_of[s] = i
    names = tuple("+".join(G.name_of(s) for s in c) for c in classes)
    trans = frozenset((cls_of[s], a, cls_of[t]) for (s, a, t) in G.transitions)
    return FinLTS(len(classes), G.alphabet, cls_of[G.root], trans, names)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    source: FinLTS
    target: FinLTS
    mapping: tuple  # mapping[i] = image of source state i

    def __call__(self, s):
        return self.mapping[s]

    def is_valid(self):
        if self.mapping[self.source.root] != self.target.root:
            return False
        return all((self.mapping[s], a, self.mapping[t]) in self.target.transitions
                   for (s, a, t) in self.source.transitions)

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return Homomorphism(other.source, self.target,
                            tuple(self.mapping[x] for x in other.mapping))


def identity_hom(G):
    return Homomorphism(G, G, tuple(range(G.n)))


def enumerate_homs(T, G, budget=None):
    """All root- and label-preserving homomorphisms T -> G, by backtracking.

    The budget counts candidate partial assignments; exceeding it raises
    BudgetExceeded rather than returning a wrong answer.
    """
    if budget is None:
        budget = enumeration_budget()
    # order: BFS from the root, then any leftover states
    order = []
    seen = set()
    queue = [T.root]
    seen.add(T.root)
    while queue:
        u = queue.pop(0)
        order.append(u)
        for v in T.successors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    for s in range(T.n):
        if s not in seen:
            order.append(s)

    out_edges = {}
    for (s, a, t) in T.transitions:
        out_edges.setdefault(s, []).append((a, t))

    pos = {s: i for i, s in enumerate(order)}
    results = []
    assignment = {}
    counter = [0]

    def consistent(s, g):
        for (a, t) in out_edges.get(s, ()):
            img = g if t == s else assignment.get(t)
            if img is not None and (g, a, img) not in G.transitions:
                return False
        for (u, a, v) in T.transitions:
            if v == s and u != s:
                img = assignment.get(u)
                if img is not None and (img, a, g) not in G.transitions:
                    return False
        return True

    def rec(k):
        if k == len(order):
            results.append(Homomorphism(T, G, tuple(assignment[s] for s in range(T.n))))
            return
        s = order[k]
        candidates = [G.root] if s == T.root else range(G.n)
        for g in candidates:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("hom enumeration budget exceeded")
            if consistent(s, g):
                assignment[s] = g
                rec(k + 1)
                del assignment[s]

    rec(0)
    results.sort(key=lambda h: h.mapping)
    return results


def iso_check(G, H):
    """A root/label-preserving bijective homomorphism with homomorphic
    inverse, or None."""
    if G.n != H.n or len(G.transitions) != len(H.transitions):
        return None
    if sorted(G.alphabet) != sorted(H.alphabet):
        return None
    for h in enumerate_homs(G, H):
        if len(set(h.mapping)) != G.n:
            continue
        inv = [0] * H.n
        for s, g in enumerate(h.mapping):
            inv[g] = s
        back = Homomorphism(H, G, tuple(inv))
        if back.is_valid():
            return h
    return None


def is_rooted_tree(G):
    """Every state reachable from the root via a unique parent, no cycles."""
    if G.n == 0:
        return False
    parents = {G.root: None}
    queue = [G.root]
    edges = 0
    while queue:
        u = queue.pop(0)
        for (s, a, t) in sorted(G.transitions):
            if s == u:
                edges += 1
                if t in parents:
                    return False
                parents[t] = u
                queue.append(t)
    return len(parents) == G.n and edges == len(G.transitions)


def tree_depth(G):
    if not is_rooted_tree(G):
        raise ValueError("not a rooted tree")
    def d(u):
        succ = G.successors(u)
        return 0 if not succ else 1 + max(d(v) for v in succ)
    return d(G.root)


def max_branching(G):
    counts = {}
    for (s, a, t) in G.transitions:
        counts[s] = counts.get(s, 0) + 1
    return max(counts.values()) if counts else 0


# ---------------------------------------------------------------------------
# Aldebaran .aut + JSON formats


_AUT_HEADER = re.compile(r'^\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$')
_AUT_LINE = re.compile(r'^\s*\(\s*(\d+)\s*,\s*"([^"]*)"\s*,\s*(\d+)\s*\)\s*$')


def parse_aut(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    m = _AUT_HEADER.match(lines[0])
    if not m:
        raise ParseError("malformed des header")
    first, ntrans, nstates = (int(x) for x in m.groups())
    if first >= nstates:
        raise ParseError("root state index out of range")
    body = lines[1:]
    if len(body) != ntrans:
        raise ParseError("transition count mismatch: header says %d, found %d"
                         % (ntrans, len(body)))
    trans = set()
    labels = set()
    for ln in body:
        m = _AUT_LINE.match(ln)
        if not m:
            raise ParseError("malformed transition line: %r" % ln)
        s, a, t = int(m.group(1)), m.group(2), int(m.group(3))
        if s >= nstates or t >= nstates:
            raise ParseError("state index >= nstates")
        trans.add((s, a, t))
        labels.add(a)
    return FinLTS(nstates, tuple(sorted(labels)) or (STAR,), first, frozenset(trans),
                  tuple(str(i) for i in range(nstates)))


def to_aut(G):
    lines = ["des (%d,%d,%d)" % (G.root, len(G.transitions), G.n)]
    for (s, a, t) in sorted(G.transitions):
        lines.append('(%d,"%s",%d)' % (s, a, t))
    return "\n".join(lines) + "\n"


def from_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(e))
    try:
        names = list(obj["states"])
        alphabet = list(obj["alphabet"])
        root = obj["root"]
        edges = [tuple(e) for e in obj["transitions"]]
    except (KeyError, TypeError) as e:
        raise ParseError("missing field: %s" % e)
    return make_lts(names, alphabet, root, edges)


def to_json(G):
    return json.dumps({
        "states": [G.name_of(i) for i in range(G.n)],
        "alphabet": list(G.alphabet),
        "root": G.name_of(G.root),
        "transitions": [[G.name_of(s), a, G.name_of(t)]
                        for (s, a, t) in sorted(G.transitions)],
    }, indent=2)


# ---------------------------------------------------------------------------
# witness catalog


def path_digraph(n):
    names = [str(i) for i in range(n + 1)]
    return unlabeled(names, "0", [(str(i), str(i + 1)) for i in range(n)])


def fan(k):
    names = ["r"] + ["l%d" % i for i in range(1, k + 1)]
    return unlabeled(names, "r", [("r", "l%d" % i) for i in range(1, k + 1)])


def trace_lts(word, alphabet=None):
    names = ["0"] + [str(i + 1) for i in range(len(word))]
    if alphabet is None:
        alphabet = tuple(sorted(set(word))) or (STAR,)
    edges = [(str(i), word[i], str(i + 1)) for i in range(len(word))]
    return make_lts(names, alphabet, "0", edges)


def fan_lts(w1, w2, alphabet=None):
    names = ["0"]
    edges = []
    prev = "0"
    for i, a in enumerate(w1):
        nm = str(i + 1)
        names.append(nm)
        edges.append((prev, a, nm))
        prev = nm
    prev = "0"
    for i, a in enumerate(w2):
        nm = str(len(w1) + i + 1)
        names.append(nm)
        edges.append((prev, a, nm))
        prev = nm
    if alphabet is None:
        alphabet = tuple(sorted(set(w1 + w2))) or (STAR,)
    return make_lts(names, alphabet, "0", edges)


def _fixed_catalog():
    cat = {}
    cat["selfLoop"] = unlabeled(["a"], "a", [("a", "a")])
    cat["twoCycle"] = unlabeled(["x", "y"], "x", [("x", "y"), ("y", "x")])
    cat["fork"] = unlabeled(["a", "b", "c"], "a",
                            [("a", "b"), ("a", "c"), ("b", "b")])
    cat["path"] = unlabeled(["x", "y"], "x", [("x", "y"), ("y", "y")])
    cat["hubSpokes"] = unlabeled(["a", "b", "c"], "a",
                                 [("a", "b"), ("a", "c"), ("b", "a"), ("c", "a")])
    cat["diamond"] = unlabeled(["a", "b", "c", "d"], "a",
                               [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"),
                                ("d", "d")])
    cat["confluenceTree"] = unlabeled(
        ["a", "b", "c", "d1", "d2"], "a",
        [("a", "b"), ("a", "c"), ("b", "d1"), ("c", "d2"),
         ("d1", "d1"), ("d2", "d2")])
    cat["backEdge"] = unlabeled(["rt", "lp"], "rt",
                                [("rt", "lp"), ("lp", "lp"), ("lp", "rt")])
    cat["cycleEntry"] = unlabeled(["a", "b", "c"], "a",
                                  [("a", "b"), ("b", "c"), ("c", "b")])
    cat["stretchedEntry"] = unlabeled(["a", "b", "c", "d"], "a",
                                      [("a", "b"), ("b", "c"), ("c", "d"),
                                       ("d", "c")])
    abc = ("a", "b", "c")
    cat["P_abc"] = make_lts(["p0", "p1", "p2", "p3", "p4"], abc, "p0",
                            [("p0", "a", "p1"), ("p0", "a", "p2"),
                             ("p1", "b", "p3"), ("p2", "c", "p4")])
    cat["Q"] = make_lts(["q0", "q1", "q2", "q3"], abc, "q0",
                        [("q0", "a", "q1"), ("q1", "b", "q2"), ("q1", "c", "q3")])
    cat["R6"] = make_lts(["r0", "r1", "r2", "r3", "r4", "r5"], abc, "r0",
                         [("r0", "a", "r1"), ("r0", "a", "r2"),
                          ("r1", "b", "r3"), ("r2", "b", "r4"),
                          ("r2", "c", "r5")])
    cat["U"] = make_lts(["u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7"], abc,
                        "u0",
                        [("u0", "a", "u1"), ("u0", "a", "u2"), ("u0", "a", "u3"),
                         ("u1", "b", "u4"), ("u2", "c", "u5"),
                         ("u3", "b", "u6"), ("u3", "c", "u7")])
    return cat


_CATALOG = _fixed_catalog()

PARAMETRIC = {
    "pathDigraph": lambda n: path_digraph(int(n)),
    "fan": lambda k: fan(int(k)),
    "traceLTS": lambda w: trace_lts(w),
    "fanLTS": lambda w1, w2: fan_lts(w1, w2),
}


def catalog(name, *params):
    if name in _CATALOG:
        if params:
            raise ValueError("%s takes no parameters" % name)
        return _CATALOG[name]
    if name in PARAMETRIC:
        return PARAMETRIC[name](*params)
    raise KeyError("unknown catalog name: %s" % name)


def catalog_names():
    return sorted(_CATALOG)


def catalog_systems():
    """The fixed (non-parametric) witness systems, name -> FinLTS."""
    return dict(_CATALOG)


def unlabeled_catalog_systems():
    return {k: v for k, v in _CATALOG.items() if v.alphabet == (STAR,)}
