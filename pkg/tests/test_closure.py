import pytest

from spectrumlab import closure as cl
from spectrumlab.hml import parse_formula, satisfies
from spectrumlab.lts import BudgetExceeded, catalog, trace_lts


def P(text):
    return parse_formula(text)


def test_fragment_guard():
    with pytest.raises(ValueError):
        cl.free_extension(catalog("Q"), 0, P("<a>T | <b>T"))
    with pytest.raises(ValueError):
        cl.free_extension(catalog("Q"), 0, P("[a]T"))
    with pytest.raises(ValueError):
        cl.free_extension(catalog("Q"), 0, P("<z>T"))


def test_diamond_count():
    assert cl.diamond_count(P("T")) == 0
    assert cl.diamond_count(P("<a>(<b>T & <c>T)")) == 3


def test_free_extension_realizes_formula():
    G = catalog("P_abc")
    phi = P("<a>(<b>T & <c>T)")
    fe = cl.free_extension(G, G.root, phi)
    assert fe.inclusion.is_valid()
    assert len(fe.witnesses) == cl.diamond_count(phi)
    assert satisfies(fe.extended, fe.inclusion(G.root), phi)
    # the original system embeds unchanged
    assert fe.extended.n == G.n + 3
    for (s, a, t) in G.transitions:
        assert (s, a, t) in fe.extended.transitions


def test_implication_basic_values():
    G = catalog("Q")
    # antecedent entails itself
    assert cl.heyting_implication_presheaf(G, 0, P("<a>T"), P("<a>T"))
    # adding an a-witness does not create a b-step at the same point
    assert not cl.heyting_implication_presheaf(G, 0, P("<a>T"), P("<b>T"))
    # nested: the witness chain makes deeper consequents true
    assert cl.heyting_implication_presheaf(G, 0, P("<a><b>T"), P("<a>T"))


def test_oracle_agrees_on_catalog():
    cases = [("<a>T", "<a>T"), ("<a>T", "<b>T"), ("<a><b>T", "<a>T"),
             ("<a>T", "<a><b>T"), ("T", "<a>T"),
             ("<a>(<b>T & <c>T)", "<a><b>T")]
    for name in ("Q", "P_abc"):
        G = catalog(name)
        for f1, f2 in cases:
            phi, psi = P(f1), P(f2)
            for v in range(G.n):
                imp = cl.heyting_implication_presheaf(G, v, phi, psi)
                oracle = cl.brute_force_implication(G, v, phi, psi, G.n + 2)
                assert imp == oracle, (name, v, f1, f2)


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        cl.brute_force_implication(trace_lts("a" * 9), 0, P("T"), P("T"), 3)


def test_negation_collapse():
    for name in ("Q", "P_abc", "R6"):
        G = catalog(name)
        for text in ("<a>T", "<a><b>T", "<a>(<b>T & <c>T)"):
            out = cl.negation_collapse_check(G, G.root, P(text))
            assert out["negation"] is False
            assert out["double_negation"] is True


def test_monotonicity():
    assert cl.monotonicity_check(P("<a><b>T"))
    assert cl.monotonicity_check(P("<*>T"))
    with pytest.raises(ValueError):
        cl.monotonicity_check(P("!<a>T"))


def test_subfunctor_transfer_along_hom():
    # direct spot check of the forward-transfer property the oracle relies on
    from spectrumlab.lts import enumerate_homs
    S = cl.Subfunctor(P("<*><*>T"))
    M, N = catalog("twoCycle"), catalog("selfLoop")
    for h in enumerate_homs(M, N):
        assert cl.monotone_along(S, h)


def test_regime_classification():
    assert cl.regime_classify(P("<a>T"), P("<a>T"))["regime"] == "entailment"
    assert cl.regime_classify(P("<a><b>T"), P("<a>T"))["regime"] == "entailment"
    out = cl.regime_classify(P("<a>T"), P("<a><b>T"))
    assert out["regime"] == "depthIncreasing"
    out2 = cl.regime_classify(P("<b>T"), P("<c>T"))
    assert out2["regime"] == "independent" and out2["residual"] == P("<c>T")


def test_adjunction():
    assert cl.adjunction_check(P("<a>T"), P("<a>T"), P("T"))
    assert cl.adjunction_check(P("<a>T"), P("<b>T"), P("<b>T"))
