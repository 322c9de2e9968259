"""Degree-bounded searches: centers, semi-invariants, weight kernels, and
the presentation over the kernel subalgebra."""

from fractions import Fraction

from liepoisson.invariants import (
    center_up_to_degree,
    ghat,
    present_over_ghat,
    reduced_algebra,
    semi_invariants,
)
from liepoisson.lie import verify_lie
from liepoisson.poisson import canonical_from_lie, ideal_from_pairs
from liepoisson.polys import parse_poly
from liepoisson.weyl import WeylPresentation

from conftest import abelian, aff2, eng4, heisenberg

F = Fraction


def test_center_of_weyl_is_constants():
    for n in (1, 2):
        A = WeylPresentation(n).algebra()
        basis = center_up_to_degree(A, 3)
        assert [str(b.num) for b in basis] == ["1"]


def test_center_of_heisenberg():
    A = canonical_from_lie(heisenberg())
    basis = center_up_to_degree(A, 3)
    assert [str(b.num) for b in basis] == ["1", "z", "z^2", "z^3"]


def test_center_of_eng4():
    # oracle: {e1, e3^2 - 2 e2 e4} = 2 e3 e4 - 2 e3 e4 = 0, and the e2
    # bracket vanishes likewise; the degree-2 center is spanned by
    # 1, e4, e4^2, e3^2 - 2 e2 e4
    A = canonical_from_lie(eng4())
    c = parse_poly("e3^2 - 2*e2*e4", A.vars)
    assert A.bracket("e1", c).is_zero() and A.bracket("e2", c).is_zero()
    basis = center_up_to_degree(A, 2)
    assert len(basis) == 4
    from liepoisson.spaces import covers

    assert covers(A, basis, [A.element(c)])


def test_semi_invariants_aff2():
    rep = semi_invariants(aff2(), None, 3)
    got = {
        tuple(w.values): [str(b.num) for b in basis] for w, basis in rep.entries
    }
    assert got == {
        (F(0), F(0)): ["1"],
        (F(1), F(0)): ["y"],
        (F(2), F(0)): ["y^2"],
        (F(3), F(0)): ["y^3"],
    }


def test_semi_invariants_abelian():
    rep = semi_invariants(abelian(2), None, 2)
    assert len(rep.entries) == 1
    w, basis = rep.entries[0]
    assert w.is_zero() and len(basis) == 6  # all monomials of degree <= 2


def test_semi_invariants_heisenberg():
    rep = semi_invariants(heisenberg(), None, 2)
    assert len(rep.entries) == 1
    w, basis = rep.entries[0]
    assert w.is_zero()
    assert [str(b.num) for b in basis] == ["1", "z", "z^2"]


def test_semi_invariants_verbatim_eigen_property():
    # every reported element satisfies {x, a} = weight(x) a exactly
    for g, ideal_pairs in ((aff2(), None), (heisenberg(), [("z", "1")])):
        alg = reduced_algebra(
            g, ideal_from_pairs(g.basis, ideal_pairs) if ideal_pairs else None
        )
        rep = semi_invariants(
            g, ideal_from_pairs(g.basis, ideal_pairs) if ideal_pairs else None, 3
        )
        for w, basis in rep.entries:
            for a in basis:
                for k, v in enumerate(g.basis):
                    lhs = alg.bracket(v.name, a)
                    rhs = alg.scale(w.values[k], a)
                    assert alg.sub(lhs, rhs).is_zero()


def test_semi_invariant_weights_direct_and_multiplicative():
    rep = semi_invariants(aff2(), None, 4)
    alg = reduced_algebra(aff2(), None)
    from liepoisson.spaces import common_denominator_rows
    from liepoisson import linalg

    # distinct weights have independent spaces: ranks add
    all_elements = [b for _, basis in rep.entries for b in basis]
    rows, _, _ = common_denominator_rows(alg, all_elements)
    assert linalg.rank(rows) == len(all_elements)
    # products multiply weights additively
    by_weight = {tuple(w.values): basis for w, basis in rep.entries}
    a = by_weight[(F(1), F(0))][0]
    b = by_weight[(F(2), F(0))][0]
    prod = alg.mul(a, b)
    target = by_weight[(F(3), F(0))]
    from liepoisson.spaces import covers

    assert covers(alg, list(target), [prod])


def test_semi_invariants_monotone_in_degree():
    rep3 = semi_invariants(aff2(), None, 3)
    rep4 = semi_invariants(aff2(), None, 4)
    weights3 = {tuple(w.values) for w, _ in rep3.entries}
    weights4 = {tuple(w.values) for w, _ in rep4.entries}
    assert weights3 <= weights4


def test_ghat_examples():
    gd = ghat(aff2(), None, 3)
    assert gd.subalgebra.basis == ((F(0), F(1)),)
    assert [aff2().basis[i].name for i in gd.complement] == ["x"]
    # nilpotent algebra: everything has weight zero
    gh = ghat(heisenberg(), None, 3)
    assert gh.subalgebra.dim == 3 and gh.complement == ()
    # extra abelian factor joins the kernel
    g3 = verify_lie("x y t", {(0, 1): {1: 1}})
    gd3 = ghat(g3, None, 3)
    assert gd3.subalgebra.dim == 2
    assert gd3.subalgebra.contains((0, 1, 0)) and gd3.subalgebra.contains((0, 0, 1))


def test_present_over_ghat_matches():
    assert present_over_ghat(aff2(), None, 3).matches
    pres = present_over_ghat(heisenberg(), None, 3)
    assert pres.matches and pres.derivation_names == ()
    two = verify_lie("x1 y1 x2 y2", {(0, 1): {1: 1}, (2, 3): {3: 1}})
    res = present_over_ghat(two, None, 3)
    assert res.matches and len(res.derivation_names) == 2


def test_present_over_ghat_rebuild_table():
    res = present_over_ghat(aff2(), None, 3)
    rebuilt = res.rebuilt
    assert rebuilt.format(rebuilt.bracket("x", "y")) == "y"
    assert len(res.derivations) == 1
    base = res.base
    assert base.sub(
        res.derivations[0].apply(base, "y"), base.gen("y")
    ).is_zero()


def test_ghat_partial_sums_are_ideals():
    # the kernel plus any prefix of the complement is an ideal
    from liepoisson.lie import Subspace, basis_vec

    two = verify_lie("x1 y1 x2 y2", {(0, 1): {1: 1}, (2, 3): {3: 1}})
    gd = ghat(two, None, 3)
    cur = gd.subalgebra
    for i in gd.complement:
        cur = cur.sum_with(Subspace(two.dim, [basis_vec(i, two.dim)]))
        for k in range(two.dim):
            for v in cur.basis:
                assert cur.contains(two.bracket_vec(basis_vec(k, two.dim), v))
