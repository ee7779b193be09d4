import pytest

from spectrumlab.lts import (FinLTS, Homomorphism, ParseError, catalog,
                             catalog_names, catalog_systems, enumerate_homs,
                             fan, fan_lts, from_json, identity_hom, iso_check,
                             is_rooted_tree, make_lts, max_branching,
                             parse_aut, path_digraph, path_equivalent,
                             quotient, reachable_from, to_aut, to_json,
                             trace_lts, tree_depth, unlabeled)


def test_validation():
    with pytest.raises(ValueError):
        FinLTS(2, ("a",), 5, frozenset())
    with pytest.raises(ValueError):
        FinLTS(2, ("a",), 0, frozenset({(0, "b", 1)}))
    with pytest.raises(ValueError):
        FinLTS(2, ("a",), 0, frozenset({(0, "a", 7)}))


def test_names_are_metadata():
    a = unlabeled(["x", "y"], "x", [("x", "y")])
    b = unlabeled(["u", "v"], "u", [("u", "v")])
    assert a == b
    assert hash(a) == hash(b)
    assert a.name_of(1) == "y" and b.name_of(1) == "v"


def test_structure_queries():
    G = catalog("hubSpokes")
    assert G.successors(G.state("a")) == [G.state("b"), G.state("c")]
    assert G.enabled(G.state("a")) == frozenset({"*"})
    assert G.nondeterministic_states() == [G.state("a")]
    assert G.has_cycle()
    assert not catalog("P_abc").has_cycle()


def test_path_equivalence_and_quotient():
    G = catalog("hubSpokes")
    b, c = G.state("b"), G.state("c")
    assert path_equivalent(G, b, c)
    # every state of the hub keeps a successor inside the class, so the whole
    # system collapses to the one-state loop
    q = quotient(G)
    assert q.n == 1
    assert iso_check(q, catalog("selfLoop")) is not None
    F = catalog("fork")
    assert not path_equivalent(F, F.state("b"), F.state("c"))


def test_reachability():
    G = catalog("fork")
    assert reachable_from(G, G.state("b")) == {G.state("b")}
    assert reachable_from(G, G.root) == {0, 1, 2}


def test_enumerate_homs_paths():
    # chain into chain: one hom per prefix relation
    assert len(enumerate_homs(trace_lts("ab"), trace_lts("abc"))) == 1
    assert enumerate_homs(trace_lts("ab"), trace_lts("ac")) == []
    # self-loops constrain the image
    loop = catalog("selfLoop")
    two = catalog("twoCycle")
    assert enumerate_homs(loop, two) == []
    assert len(enumerate_homs(two, loop)) == 1


def test_hom_validity_and_composition():
    P1 = trace_lts("a")
    F = fan_lts("a", "a")
    f = Homomorphism(P1, F, (0, 2))
    assert f.is_valid()
    assert not Homomorphism(P1, F, (0, 0)).is_valid()
    i = identity_hom(P1)
    assert f.compose(i).mapping == f.mapping


def test_iso_check():
    assert iso_check(fan(2), fan_lts("a", "a")) is None  # different labels
    G = unlabeled(["p", "q"], "p", [("p", "q"), ("q", "p")])
    assert iso_check(G, catalog("twoCycle")) is not None


def test_tree_predicates():
    assert is_rooted_tree(trace_lts("abc"))
    assert tree_depth(trace_lts("abc")) == 3
    assert max_branching(fan(3)) == 3
    assert not is_rooted_tree(catalog("selfLoop"))


def test_aut_roundtrip():
    G = catalog("Q")
    H = parse_aut(to_aut(G))
    assert H.n == G.n and H.root == G.root
    assert len(H.transitions) == len(G.transitions)
    with pytest.raises(ParseError):
        parse_aut("des (0,2,2)\n(0,\"a\",1)\n")  # count mismatch
    with pytest.raises(ParseError):
        parse_aut("nonsense")


def test_json_roundtrip():
    G = catalog("P_abc")
    H = from_json(to_json(G))
    assert H == G
    with pytest.raises(ParseError):
        from_json("{\"states\": []}")


def test_catalog():
    assert len(catalog_names()) == 14
    assert set(catalog_systems()) == set(catalog_names())
    assert catalog("pathDigraph", "3").n == 4
    assert catalog("fanLTS", "ab", "ac").n == 5
    with pytest.raises(KeyError):
        catalog("noSuchSystem")
    with pytest.raises(ValueError):
        catalog("selfLoop", "1")


def test_parametric_shapes():
    assert tree_depth(path_digraph(4)) == 4
    w = trace_lts("abba")
    assert [w.name_of(i) for i in range(w.n)] == ["0", "1", "2", "3", "4"]
    f = fan_lts("ab", "ac")
    assert f.successors(0, "a") == [1, 3]


def test_make_lts_names():
    G = make_lts(["s", "t"], ("a",), "s", [("s", "a", "t")])
    assert G.state("t") == 1
    with pytest.raises(KeyError):
        G.state("zz")
