"""Decision procedures for behavioral equivalences between finite systems."""

from dataclasses import dataclass

from .lts import (BudgetExceeded, Homomorphism, enumerate_homs,
                  enumeration_budget, iso_check, path_equivalent, quotient,
                  reachable_from)

LEVELS = ("enabledness", "trace", "failures", "simulation",
          "readySimulation", "bisimulation")


# ---------------------------------------------------------------------------
# relational fixpoints


def simulation_preorder(M, N, seed=None):
    """Greatest simulation relation: (s,t) kept iff every move of s is
    matched from t inside the relation."""
    if seed is None:
        rel = {(s, t) for s in range(M.n) for t in range(N.n)}
    else:
        rel = set(seed)
    changed = True
    while changed:
        changed = False
        for (s, t) in sorted(rel):
            ok = all(any((s2, t2) in rel for t2 in N.successors(t, a))
                     for a in M.alphabet for s2 in M.successors(s, a))
            if not ok:
                rel.discard((s, t))
                changed = True
    return frozenset(rel)


def similar(M, N):
    return (M.root, N.root) in simulation_preorder(M, N)


def mutually_similar(M, N):
    return similar(M, N) and similar(N, M)


def greatest_bisimulation(M, N):
    rel = {(s, t) for s in range(M.n) for t in range(N.n)}
    changed = True
    while changed:
        changed = False
        for (s, t) in sorted(rel):
            forth = all(any((s2, t2) in rel for t2 in N.successors(t, a))
                        for a in M.alphabet for s2 in M.successors(s, a))
            back = all(any((s2, t2) in rel for s2 in M.successors(s, a))
                       for a in N.alphabet for t2 in N.successors(t, a))
            if not (forth and back):
                rel.discard((s, t))
                changed = True
    return frozenset(rel)


def bisimilar(M, N):
    """Witness bisimulation containing the root pair (restricted to pairs
    reachable from it through synchronized moves), or None."""
    gb = greatest_bisimulation(M, N)
    if (M.root, N.root) not in gb:
        return None
    seen = {(M.root, N.root)}
    frontier = [(M.root, N.root)]
    while frontier:
        (s, t) = frontier.pop()
        for a in M.alphabet:
            for s2 in M.successors(s, a):
                for t2 in N.successors(t, a):
                    if (s2, t2) in gb and (s2, t2) not in seen:
                        seen.add((s2, t2))
                        frontier.append((s2, t2))
    return frozenset(seen)


def ready_sim_equivalent(M, N):
    """Mutual greatest simulation seeded with equal enabled-label sets."""
    def ready_sim(A, B):
        seed = {(s, t) for s in range(A.n) for t in range(B.n)
                if A.enabled(s) == B.enabled(t)}
        return (A.root, B.root) in simulation_preorder(A, B, seed)
    return ready_sim(M, N) and ready_sim(N, M)


# ---------------------------------------------------------------------------
# trace-style equivalences via subset construction


def determinize(G):
    """Subset-construction automaton: dict subset -> {label: subset}."""
    start = frozenset([G.root])
    table = {}
    queue = [start]
    while queue:
        cur = queue.pop()
        if cur in table:
            continue
        row = {}
        for a in G.alphabet:
            nxt = frozenset(t for s in cur for t in G.successors(s, a))
            if nxt:
                row[a] = nxt
                queue.append(nxt)
        table[cur] = row
    return start, table


def trace_equivalent(M, N):
    """Exact prefix-closed trace language equality (product reachability on
    the determinized systems: enabled label sets must agree everywhere)."""
    sM, dM = determinize(M)
    sN, dN = determinize(N)
    seen = {(sM, sN)}
    queue = [(sM, sN)]
    while queue:
        (u, v) = queue.pop()
        ru, rv = dM[u], dN[v]
        if set(ru) != set(rv):
            return False
        for a in ru:
            nxt = (ru[a], rv[a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def bounded_traces(G, bound):
    """All trace words of length <= bound (exact BFS over subsets)."""
    start, table = determinize(G)
    words = {""}
    frontier = {("", start)}
    for _ in range(bound):
        nxt = set()
        for (w, cur) in frontier:
            for a, sub in table[cur].items():
                nw = w + a
                if nw not in words:
                    words.add(nw)
                    nxt.add((nw, sub))
        frontier = nxt
    return words


def enabledness_equivalent(M, N):
    return M.enabled(M.root) == N.enabled(N.root)


def _refusal_annotated(G, alphabet):
    """Extend G with refusal self-loop markers: from each state, one edge
    labeled ref{X} for each label set X disjoint from the enabled set."""
    subsets = []
    alphabet = tuple(sorted(alphabet))
    for mask in range(1 << len(alphabet)):
        subsets.append(frozenset(a for i, a in enumerate(alphabet)
                                 if mask >> i & 1))
    ref_labels = {X: "ref{%s}" % ",".join(sorted(X)) for X in subsets}
    from .lts import FinLTS
    sink = G.n
    trans = set(G.transitions)
    for s in range(G.n):
        en = G.enabled(s)
        for X in subsets:
            if not (X & en):
                trans.add((s, ref_labels[X], sink))
    new_alpha = tuple(sorted(set(alphabet) | set(ref_labels.values())))
    return FinLTS(G.n + 1, new_alpha, G.root, frozenset(trans))


def failures_equivalent(M, N):
    """Failure-pair equality via refusal-extended determinization."""
    alpha = sorted(set(M.alphabet) | set(N.alphabet))
    return trace_equivalent(_refusal_annotated(M, alpha),
                            _refusal_annotated(N, alpha))


# ---------------------------------------------------------------------------
# bounded (depth-d) equivalence


def d_simulates(M, N, d):
    """d-round bounded simulation from (root_M) by (root_N)."""
    memo = {}
    def sim(s, t, k):
        if k == 0:
            return True
        key = (s, t, k)
        if key not in memo:
            memo[key] = True  # guard; no cycles since k strictly decreases
            memo[key] = all(any(sim(s2, t2, k - 1) for t2 in N.successors(t, a))
                            for a in M.alphabet for s2 in M.successors(s, a))
        return memo[key]
    return sim(M.root, N.root, d)


def d_equivalent(M, N, d):
    """Roots satisfy the same diamond-only modal formulas of depth <= d,
    computed as mutual d-round bounded simulation."""
    return d_simulates(M, N, d) and d_simulates(N, M, d)


# ---------------------------------------------------------------------------
# function-pair searches


@dataclass(frozen=True)
class SimPair:
    forward: Homomorphism
    backward: Homomorphism
    coherence: str  # "functional" or "biInterpretation"


def _pair_search(M, N, coherent, tag, budget=None):
    if budget is None:
        budget = enumeration_budget()
    if N.n ** M.n > budget or M.n ** N.n > budget:
        raise BudgetExceeded("function-pair search budget exceeded")
    fwd = enumerate_homs(M, N, budget)
    bwd = enumerate_homs(N, M, budget)
    if len(fwd) * len(bwd) > budget:
        raise BudgetExceeded("function-pair search budget exceeded")
    for f in fwd:
        for g in bwd:
            if coherent(M, N, f, g):
                return SimPair(f, g, tag)
    return None


def functional_bisim_search(M, N, budget=None):
    """Simulations f: M->N, g: N->M with both round trips path-equivalent to
    the identity, or exhaustively-verified absence."""
    def coherent(M, N, f, g):
        return (all(path_equivalent(M, g(f(s)), s) for s in range(M.n))
                and all(path_equivalent(N, f(g(t)), t) for t in range(N.n)))
    return _pair_search(M, N, coherent, "functional", budget)


def bi_interpretation_search(M, N, budget=None):
    """Like functional_bisim_search but with round trips only required to be
    mutually reachable with the identity."""
    def mutual(G, u, v):
        return v in reachable_from(G, u) and u in reachable_from(G, v)
    def coherent(M, N, f, g):
        return (all(mutual(M, g(f(s)), s) for s in range(M.n))
                and all(mutual(N, f(g(t)), t) for t in range(N.n)))
    return _pair_search(M, N, coherent, "biInterpretation", budget)


def quotient_bridge_check(M, N):
    """Given a functional bisimulation, the path-equivalence quotients must be
    isomorphic; returns the verdict."""
    if functional_bisim_search(M, N) is None:
        raise ValueError("precondition: no functional bisimulation M <-> N")
    return iso_check(quotient(M), quotient(N)) is not None


# ---------------------------------------------------------------------------
# dispatch


def decide(M, N, level):
    if level == "enabledness":
        return enabledness_equivalent(M, N)
    if level == "trace":
        return trace_equivalent(M, N)
    if level == "failures":
        return failures_equivalent(M, N)
    if level == "simulation":
        return mutually_similar(M, N)
    if level == "readySimulation":
        return ready_sim_equivalent(M, N)
    if level == "bisimulation":
        return bisimilar(M, N) is not None
    raise ValueError("unknown level: %s" % level)
