from concurrent.futures import ThreadPoolExecutor

import pytest

from weylcalc.cartan import Weight, format_weight
from weylcalc.jantzen import CharCombo, jantzen_sum
from weylcalc.scalars import P, Concrete, Generic
from weylcalc.structure import (
    THEOREM, DeductionCache, RadicalSimple, Simple, Undetermined, deduce, shape_ok,
    simple_dimension, theorem_suite,
)


def w1(r):
    return Weight.of(r, 0, 0, 0, 0, 0)


def test_simple():
    rep = deduce(w1(2), Concrete(11))
    assert isinstance(rep.verdict, Simple)
    assert rep.render() == "V(2ω1) is simple"


def test_two_term_sequence():
    rep = deduce(w1(6), Concrete(7))
    assert isinstance(rep.verdict, RadicalSimple)
    assert rep.exact_sequence() == ["0", "V(3ω6)", "V(6ω1)", "L(6ω1)", "0"]
    assert rep.render() == "0 → V(3ω6) → V(6ω1) → L(6ω1) → 0"


def test_three_term_sequence():
    rep = deduce(w1(4), Concrete(7))
    # J(4ω1) is already the character of L(2ω1+ω6), so the radical is simple
    assert rep.verdict == RadicalSimple(Weight.of(2, 0, 0, 0, 0, 1))
    assert rep.exact_sequence() == ["0", "V(ω1+ω4)", "V(2ω1+ω6)", "V(4ω1)", "L(4ω1)", "0"]


def test_generic_six_term():
    rep = deduce(w1(P - 1), Generic())
    assert rep.complete
    assert rep.render("latex").startswith("0\\to V((p-11)\\omega_1+2\\omega_2)\\to ")
    assert len(rep.chain) == 6


def test_depth_one_is_not_enough_for_long_chain():
    rep = deduce(w1(P - 3), Generic(), depth_limit=1)
    assert not rep.complete
    assert isinstance(rep.verdict, Undetermined)


def test_bad_arguments():
    with pytest.raises(ValueError):
        deduce(w1(2), Concrete(5), depth_limit=0)
    with pytest.raises(ValueError):
        deduce(w1(-1), Concrete(5))


def test_simple_dimension_of_quotient():
    rep = deduce(w1(2), Concrete(5))
    # L(2ω1) = V(2ω1) minus V(ω6)
    assert simple_dimension(rep.simple_char) == 351 - 27
    assert rep.simple_char == CharCombo.chi(w1(2)) - CharCombo.chi(Weight.of(0, 0, 0, 0, 0, 1))


def _telescopes(rep, mode) -> bool:
    chain = rep.chain
    for lower, upper in zip(chain, chain[1:]):
        if upper.rule != "R1":
            continue
        if jantzen_sum(upper.weight, mode) != CharCombo.chi(lower.weight) - jantzen_sum(lower.weight, mode):
            return False
    return True


@pytest.mark.parametrize("label,_r,primes,expected", THEOREM)
def test_chains_telescope(label, _r, primes, expected):
    if expected == "simple":
        return
    a, b = _r
    for q in primes:
        mode = Generic() if q == "generic" else Concrete(q)
        rep = deduce(w1(P * a + b).normalize(mode), mode)
        assert shape_ok(rep)
        assert _telescopes(rep, mode)


def test_theorem_suite_passes():
    results = theorem_suite()
    bad = [r.line() for r in results if not r.passed]
    assert not bad, bad
    labels = {r.label for r in results}
    assert {"a", "a:vacuous", "b(iv)", "c(iv)", "d(iii)", "e"} <= labels


def test_cache_is_shared_and_thread_safe():
    cache = DeductionCache()
    lams = [w1(P - k) for k in (1, 2, 3)] * 4
    with ThreadPoolExecutor(4) as ex:
        reps = list(ex.map(lambda lam: deduce(lam, Generic(), cache=cache), lams))
    assert all(r.complete for r in reps)
    assert [format_weight(r.lam) for r in reps[:3]] == ["(p-1)ω1", "(p-2)ω1", "(p-3)ω1"]


def test_json_is_serialisable():
    import json
    rep = deduce(w1(P - 2), Generic())
    doc = json.loads(json.dumps(rep.to_json()))
    assert doc["complete"] and len(doc["exact_sequence"]) == 9


def test_weyl_radical_rule_on_synthetic_links():
    from weylcalc.cartan import E6
    from weylcalc.structure import Link, RadicalIsWeyl, _settle

    bottom, nu, mu = Weight.of(0, 0, 0, 0, 0, 1), Weight.of(2, 0, 0, 0, 0, 0), Weight.of(4, 0, 0, 0, 0, 0)
    settled = {
        bottom: Link(bottom, 2, CharCombo(), Simple(), "R0", CharCombo.chi(bottom), 1),
        nu: Link(nu, 1, CharCombo.chi(bottom), RadicalSimple(bottom), "R1",
                 CharCombo.chi(nu) - CharCombo.chi(bottom), 2),
    }
    link = _settle(mu, 0, CharCombo.chi(nu), settled, Concrete(5), E6, DeductionCache())
    assert link.verdict == RadicalIsWeyl(nu) and link.rule == "R2" and link.factors == 3
