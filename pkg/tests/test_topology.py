import itertools

import pytest

from spectrumlab import topology as tp
from spectrumlab.equivalences import bounded_traces
from spectrumlab.lts import catalog, fan_lts, identity_hom, trace_lts


BOUNDS = tp.SiteBounds(max_test_depth=2, max_test_size=4)


def test_bounds_validation():
    with pytest.raises(ValueError):
        tp.SiteBounds(max_test_depth=0)


def test_observation_classes():
    assert tp.PATHS.accepts(trace_lts("ab"))
    assert not tp.PATHS.accepts(fan_lts("a", "b"))
    assert tp.TREES.accepts(fan_lts("a", "b"))
    assert not tp.TREES.accepts(catalog("selfLoop"))
    E = tp.energy_class((1, 1, 0, 0, 0, 0))
    assert E.accepts(trace_lts("a"))
    assert not E.accepts(trace_lts("ab"))


def test_test_objects_are_canonical_trees():
    trees = tp.test_objects(("a",), BOUNDS)
    for T in trees:
        assert tp.is_rooted_tree(T)
        assert tp.tree_depth(T) <= 2 and T.n <= 4
    # over one letter: empty, a, aa, a+a, a+aa, aa+a duplicates collapse...
    sigs = {(T.n, tuple(sorted(T.transitions))) for T in trees}
    assert len(sigs) == len(trees)


def test_sieve_validation_and_generation():
    F = fan_lts("a", "a")
    U = tp.MorphismUniverse(F, BOUNDS)
    P1 = trace_lts("a")
    f_r = tp.Homomorphism(P1, F, (0, 2))
    S = tp.generate_sieve(U, [f_r])
    # precomposition-closed: every arrow precomposed with any hom stays inside
    for g in S.arrows:
        for A in U.objects:
            for k in U.homs(A, g.source):
                assert g.compose(k) in S.arrows
    with pytest.raises(ValueError):
        tp.Sieve(P1, frozenset([f_r]))


def test_maximal_sieve_covers():
    G = fan_lts("ab", "ac")
    U = tp.MorphismUniverse(G, BOUNDS)
    S = tp.maximal_sieve(U)
    v = tp.is_covering(S, tp.TREES, U)
    assert v.covering and not v.truncated
    assert bool(v)


def test_truncation_flag_on_cycles():
    G = catalog("selfLoop")
    U = tp.MorphismUniverse(G, BOUNDS)
    v = tp.is_covering(tp.maximal_sieve(U), tp.PATHS, U)
    assert v.truncated


def test_pullback_of_maximal_is_maximal():
    F = fan_lts("a", "a")
    U = tp.MorphismUniverse(F, BOUNDS)
    P1 = trace_lts("a")
    UP = tp.MorphismUniverse(P1, BOUNDS)
    f = tp.Homomorphism(P1, F, (0, 1))
    pulled = tp.sieve_pullback(f, tp.maximal_sieve(U), UP)
    assert pulled.arrows == tp.maximal_sieve(UP).arrows
    with pytest.raises(ValueError):
        tp.sieve_pullback(f, tp.Sieve(P1, frozenset()), UP)


def test_class_predicate_satisfies_axioms():
    sample = [fan_lts("a", "a"), trace_lts("a"), fan_lts("ab", "ac")]
    for C in (tp.PATHS, tp.TREES):
        out = tp.grothendieck_axiom_check(C, sample, BOUNDS)
        assert out["maximality"] and out["stability"] and out["transitivity"], C.name


def test_naive_predicate_fails_only_stability():
    sample = [fan_lts("a", "a"), trace_lts("a")]
    out = tp.grothendieck_axiom_check(tp.TREES, sample, BOUNDS, naive=True)
    assert out["maximality"] and out["transitivity"]
    assert not out["stability"]


def test_naive_instability_witness():
    w = tp.naive_instability_witness(BOUNDS)
    assert w["base_covering"] is True
    assert w["pullback_covering"] is False
    assert w["identity_in_pullback"] is False


def test_trace_support_equals_bounded_traces():
    for name in ("P_abc", "Q", "R6", "selfLoop", "diamond"):
        G = catalog(name)
        assert tp.trace_support(G, 3) == bounded_traces(G, 3), name


def test_prefix_hom_law():
    words = [""]
    for k in range(1, 4):
        words += ["".join(w) for w in itertools.product("ab", repeat=k)]
    for w1, w2 in itertools.product(words, repeat=2):
        out = tp.prefix_hom_check(w1, w2)
        assert out["ok"], (w1, w2)
        assert out["exists"] == w2.startswith(w1)


def test_density():
    for base in (trace_lts("ab"), fan_lts("a", "a"), fan_lts("ab", "ac")):
        assert tp.density_check(base, BOUNDS)
