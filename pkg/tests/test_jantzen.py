import pytest

from weylcalc.cartan import E6, Weight, euclidean_embed, pairing
from weylcalc.jantzen import (
    CharCombo, Contribution, NonContributor, RegimeError, analyze, jantzen_sum, relevant_multiples, report,
)
from weylcalc.scalars import P, Concrete, Generic, PrimeScalar, UnsupportedMode

G = Generic()


def w(*xs):
    return Weight.of(*xs)


def test_charcombo_algebra():
    a, b = w(1, 0, 0, 0, 0, 0), w(0, 0, 0, 0, 0, 1)
    x = CharCombo.chi(a) - CharCombo.chi(b)
    assert x + CharCombo.chi(b) == CharCombo.chi(a)
    assert not (x - x)
    assert (x * 2)[a] == 2 and len(x) == 2
    assert CharCombo.from_json(x.to_json()) == x
    assert hash(x) == hash(CharCombo({a: 1, b: -1}))  # order independent
    assert x.format() == "-χ(ω6) + χ(ω1)"


def test_generic_example_from_longest_chain():
    J = jantzen_sum(w(P - 8, 0, 0, 0, 0, 1), G)
    assert J == CharCombo.chi(w(P - 9, 0, 0, 0, 0, 0))


def test_telescoping_example():
    J = jantzen_sum(w(P - 8, 1, 0, 0, 0, 0), G)
    assert J == CharCombo.chi(w(P - 8, 0, 0, 0, 0, 1)) - CharCombo.chi(w(P - 9, 0, 0, 0, 0, 0))


def test_small_primes():
    assert not jantzen_sum(w(1, 0, 0, 0, 0, 0), Concrete(7))
    assert jantzen_sum(w(2, 0, 0, 0, 0, 0), Concrete(5)) == CharCombo.chi(w(0, 0, 0, 0, 0, 1))
    assert not jantzen_sum(Weight.zero(6), Concrete(5))


def test_multiples_at_p2_reach_m5():
    rms = relevant_multiples(w(1, 0, 0, 0, 0, 0), Concrete(2))
    highest = [r for r in rms if r.root.coeffs == (1, 2, 3, 2, 2, 1)]
    assert [r.m for r in highest] == [1, 2, 3, 4, 5]
    assert [r.vp_weight for r in highest] == [1, 2, 1, 3, 1]


def test_generic_multiples_are_roots():
    for r in relevant_multiples(w(P - 1, 0, 0, 0, 0, 0), G):
        assert r.m == 1 and r.vp_weight == 1


def test_generic_regime_bound():
    with pytest.raises(RegimeError):
        relevant_multiples(w(P, 0, 0, 0, 0, 0) + w(P, 0, 0, 0, 0, 0), G)


def test_vp_needs_concrete():
    with pytest.raises(UnsupportedMode):
        from weylcalc.scalars import vp
        vp(4, G)


def test_nondominant_rejected():
    with pytest.raises(ValueError):
        jantzen_sum(w(-1, 0, 0, 0, 0, 0), Concrete(5))


@pytest.mark.parametrize("mode", [Concrete(2), Concrete(3), Concrete(5), Concrete(7), G])
def test_witnesses_are_orthogonal_both_ways(mode):
    emb = euclidean_embed()
    lams = [w(1, 0, 0, 0, 0, 0), w(2, 0, 0, 0, 0, 1), w(3, 0, 0, 0, 0, 0)]
    if mode == G:
        lams = [w(P - k, 0, 0, 0, 0, 0) for k in (1, 2, 3)]
    for lam in lams:
        for row in analyze(lam, mode):
            if isinstance(row, NonContributor):
                assert pairing(row.mu, row.witness, E6) == PrimeScalar(0, 0)
                for q in ([mode.p] if isinstance(mode, Concrete) else [11, 13, 17]):
                    mu = row.mu.at(q).ints()
                    beta = emb.embed_root(row.witness.coeffs)
                    assert emb.coroot_pairing(emb.embed_weight(mu), beta) == 0
            else:
                assert isinstance(row, Contribution)
                assert row.mu_prime.is_dominant(mode)


def test_report_shape():
    rep = report(w(P - 8, 0, 0, 0, 0, 1), G)
    assert rep["mode"] == {"generic": 11}
    kinds = [r["kind"] for r in rep["rows"]]
    assert kinds.count("contributor") == 1 and kinds.count("noncontributor") == 4
    assert CharCombo.from_json(rep["jantzen_sum"]) == CharCombo.chi(w(P - 9, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("q", [11, 13, 17])
def test_generic_substitution_matches_concrete(q):
    for k in range(1, 11):
        lam = w(P - k, 0, 0, 0, 0, 0)
        assert jantzen_sum(lam, G).at(q) == jantzen_sum(lam.at(q), Concrete(q))
