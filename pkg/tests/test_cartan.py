from fractions import Fraction

import pytest

from weylcalc.cartan import (
    E6, E6_DIAGRAM_AUTOMORPHISM, CartanError, RootVector, Weight, cartan_type, dot, euclidean_e6_roots,
    euclidean_embed, format_weight, from_edges, from_json, highest_root, pairing, positive_roots, preset,
    root_as_weight,
)
from weylcalc.scalars import P, UnsupportedMode


def test_e6_matrix_follows_figure_labelling():
    c = E6.cartan
    # chain 1-2-3-5-6 with 4 attached to 3
    assert c[0][1] == c[1][2] == c[2][4] == c[4][5] == c[2][3] == -1
    assert c[0][2] == 0 and c[3][4] == 0
    assert all(c[i][i] == 2 for i in range(6))


def test_root_counts():
    expected = {"A3": 6, "B3": 9, "C3": 9, "D5": 20, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}
    assert {k: len(positive_roots(preset(k))) for k in expected} == expected


def test_highest_root_and_rho():
    assert highest_root(E6).coeffs == (1, 2, 3, 2, 2, 1)
    assert root_as_weight(highest_root(E6), E6) == Weight.fundamental(4, 6)
    assert E6.rho == Weight.of(1, 1, 1, 1, 1, 1)
    assert sum(a.height for a in E6.positive_roots) == sum(pairing(E6.rho, a, E6).b for a in E6.positive_roots)


def test_pairing_is_affine_in_p():
    lam = Weight.of(P - 9, 0, 0, 0, 0, 0) + E6.rho
    assert pairing(lam, E6.simple_root(1), E6) == P - 8
    assert pairing(lam, RootVector((1, 2, 3, 2, 2, 1)), E6) == P + 2


def test_diagram_automorphism_preserves_roots():
    roots = {a.coeffs for a in E6.positive_roots}
    for a in roots:
        img = [0] * 6
        for i, c in enumerate(a, start=1):
            img[E6_DIAGRAM_AUTOMORPHISM[i] - 1] = c
        assert tuple(img) in roots


def test_nonsimply_laced_coroots():
    b2 = cartan_type("B", 2)
    norms = sorted(b2.norm(a.coeffs) for a in b2.positive_roots)
    assert norms[0] < norms[-1] and norms.count(norms[0]) == 2
    for a in b2.positive_roots:
        assert pairing(root_as_weight(a, b2), a, b2).b == 2


def test_from_json_forms():
    d = from_json({"rank": 3, "edges": [[1, 2], [2, 3]]})
    assert len(d.positive_roots) == 6
    m = from_json('{"matrix": [[2, -1], [-3, 2]]}')
    assert len(m.positive_roots) == 6
    with pytest.raises(CartanError):
        from_json({"matrix": [[2, -1], [0, 2]]})
    with pytest.raises(CartanError):
        from_json({"matrix": [[2, -2], [-2, 2]]})  # affine, not finite type


def test_format_weight():
    assert format_weight(Weight.of(P - 8, 0, 0, 0, 0, 1)) == "(p-8)ω1+ω6"
    assert format_weight(Weight.of(P - 8, 0, 0, 0, 0, 1), "latex") == "(p-8)\\omega_1+\\omega_6"
    assert format_weight(Weight.zero(6)) == "0"
    assert format_weight(Weight.of(0, 0, 0, 0, 0, 3)) == "3ω6"


def test_weight_json_roundtrip():
    w = Weight.of(P - 8, 1, 0, -P + 1, 0, 2)
    assert Weight.from_json(w.to_json()) == w


def test_euclidean_model():
    emb = euclidean_embed()
    emb.validate()
    roots = euclidean_e6_roots()
    assert len(roots) == 72
    assert all(dot(r, r) == 2 for r in roots)
    assert emb.embed_weight((1, 0, 0, 0, 0, 0)) == tuple(Fraction(x, 3) for x in (1, -1, -1, 3, 0, 0, 0, 0))
    assert emb.embed_weight((0, 0, 0, 0, 0, 1)) == tuple(Fraction(x, 3) for x in (2, -2, -2, 0, 0, 0, 0, 0))
    with pytest.raises(UnsupportedMode):
        euclidean_embed(preset("A3"))


def test_euclidean_roots_match_cartan_roots():
    emb = euclidean_embed()
    embedded = {emb.embed_root(a.coeffs) for a in E6.positive_roots}
    embedded |= {tuple(-x for x in v) for v in embedded}
    assert embedded == set(euclidean_e6_roots())


def test_full_pairing_crosscheck():
    emb = euclidean_embed()
    for a in E6.positive_roots:
        ea = emb.embed_root(a.coeffs)
        for b in E6.positive_roots:
            eb = emb.embed_root(b.coeffs)
            assert pairing(root_as_weight(a, E6), b, E6).b == 2 * dot(ea, eb) / dot(eb, eb)


def test_bad_edges_rejected():
    with pytest.raises(CartanError):
        from_edges(3, [(1, 2), (2, 3), (3, 1)])  # a cycle is affine A2
