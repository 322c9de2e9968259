"""The Weyl-factor decomposition: fixtures, invariants, the nilpotent
wrapper, the center/Weyl equivalence, and determinism."""

import json
from fractions import Fraction

import pytest

from liepoisson.decompose import (
    check_84,
    decompose,
    decompose_nilpotent,
    verify_decomposition,
)
from liepoisson.errors import HypothesisFailed, NotNilpotent
from liepoisson.lie import Subspace, verify_lie
from liepoisson.poisson import ideal_from_pairs

from conftest import abelian, aff2, eng4, family_n, heisenberg

F = Fraction


def _ideal(g, pairs):
    return ideal_from_pairs(g.basis, pairs) if pairs else None


def test_abelian_everything_central():
    res = decompose(abelian(2), None, 4)
    assert res.n == 0 and res.e.is_constant()
    assert len(res.center_basis) == 15  # all monomials of degree <= 4
    assert verify_decomposition(res, 3)["ok"]


def test_heisenberg_quotient_is_one_pair():
    g = heisenberg()
    res = decompose(g, _ideal(g, [("z", "1")]), 6)
    assert res.e.is_constant() and res.n == 1
    assert [str(c.num) for c in res.center_basis] == ["1"]
    assert verify_decomposition(res, 4)["ok"]


def test_heisenberg_unreduced_localizes_at_z():
    g = heisenberg()
    res = decompose(g, None, 6)
    assert str(res.e) == "z" and res.n == 1
    # {x_1, y_1} = 1 with y_1 carrying the z-denominator
    alg = res.algebra
    x1, y1 = res.pairs[0]
    assert alg.sub(alg.bracket(x1, y1), alg.one()).is_zero()
    assert not y1.is_polynomial()
    formatted = [alg.format(c) for c in res.center_basis]
    assert "z" in formatted and "1/z" in formatted
    assert verify_decomposition(res, 4)["ok"]


def test_eng4_center_and_pair():
    res = decompose(eng4(), None, 6)
    assert str(res.e) == "e4" and res.n == 1
    report = verify_decomposition(res, 4)
    assert report["ok"], report
    # the degree-2 Casimir generates the nontrivial center part
    alg = res.algebra
    casimir = alg.element("e3^2 - 2*e2*e4")
    from liepoisson.spaces import covers

    assert covers(alg, list(res.center_basis), [casimir])


def test_family_n2_both_ideals():
    g = family_n(2)
    res1 = decompose(g, _ideal(g, [("z", "1")]), 6)
    assert res1.n == 2 and res1.e.is_constant()
    assert verify_decomposition(res1, 4)["ok"]
    res0 = decompose(g, None, 6)
    assert res0.n == 2 and str(res0.e) == "z"
    assert verify_decomposition(res0, 4)["ok"]


def test_hypothesis_failure_detected():
    with pytest.raises(HypothesisFailed):
        decompose(aff2(), None, 4)


def test_nilpotent_wrapper():
    g = heisenberg()
    res = decompose_nilpotent(g, _ideal(g, [("z", "1")]), 6)
    assert res.n == 1
    with pytest.raises(NotNilpotent):
        decompose_nilpotent(aff2(), None, 4)


def test_semisimple_action_weights():
    # [x,y] = z, [t,x] = x, [t,y] = -y; s = <t> acts semisimply
    g = verify_lie(
        "x y z t", {(0, 1): {2: 1}, (0, 3): {0: -1}, (1, 3): {1: 1}}
    )
    ideal = ideal_from_pairs(g.basis, [("z", "1")])
    s = Subspace(4, [(0, 0, 0, 1)])
    res = decompose(g, ideal, 6, s=s)
    assert res.n == 1 and verify_decomposition(res, 4)["ok"]
    alg = res.algebra
    t_el = alg.gen("t")
    for x_el, y_el in res.pairs:
        for el in (x_el, y_el):
            img = alg.bracket(t_el, el)
            # eigenvector: the image is a rational multiple of the element
            if img.is_zero():
                continue
            ratios = set()
            for mono, c in img.num.terms.items():
                base = el.num.terms.get(mono)
                assert base is not None
                ratios.add(c / base)
            assert len(ratios) == 1


def test_check_84_reports():
    g = heisenberg()
    rep = check_84(g, _ideal(g, [("z", "1")]), 6)
    assert rep["center_trivial"] and rep["weyl_presentation"] and rep["agree"]
    rep0 = check_84(g, None, 6)
    assert not rep0["center_trivial"] and not rep0["weyl_presentation"]
    assert rep0["agree"] and rep0["central_witness"] == "z"
    rep1 = check_84(abelian(1), None, 6)
    assert not rep1["center_trivial"] and rep1["agree"]


def test_trace_deterministic():
    g = eng4()
    t1 = decompose(g, None, 5).trace
    t2 = decompose(g, None, 5).trace
    assert json.dumps(t1, sort_keys=True) == json.dumps(t2, sort_keys=True)


def test_random_nilpotent_conjugates(rng):
    # basis-changed copies of the nilpotent fixtures still decompose and
    # verify; this exercises the flag re-presentation and the independence
    # filtering of the center basis
    from conftest import random_basis_change
    from liepoisson.lie import is_nilpotent

    bases = [heisenberg(), abelian(3), eng4()]
    for trial in range(6):
        g = random_basis_change(rng, bases[trial % len(bases)])
        assert is_nilpotent(g)
        res = decompose_nilpotent(g, None, 5)
        assert verify_decomposition(res, 3)["ok"]


def test_non_aligned_flag_rebased():
    # Heisenberg in the basis (x, y, x + z): the center is spanned by the
    # non-coordinate vector b3 - b1, so the flag forces a re-presentation
    g = verify_lie(
        "b1 b2 b3", {(0, 1): {0: -1, 2: 1}, (1, 2): {0: 1, 2: -1}}
    )
    from liepoisson.lie import is_nilpotent

    assert is_nilpotent(g)
    res = decompose(g, None, 5)
    assert res.n == 1
    assert "basis_change" in res.trace
    assert verify_decomposition(res, 3)["ok"]
