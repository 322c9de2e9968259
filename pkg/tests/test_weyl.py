"""Weyl layer: derivative formulas, extraction, integration, splitting,
and the exponential straightening transforms."""

from fractions import Fraction

import pytest

from liepoisson.errors import (
    AlphaNotAVariable,
    LocalNilpotencyCapExceeded,
    NotClosed,
    NotCommuting,
    NotGenerating,
)
from liepoisson.poisson import (
    Derivation,
    canonical_from_lie,
    ideal_from_pairs,
    inner_derivation,
    poisson_algebra,
    quotient,
    tensor,
)
from liepoisson.polys import Poly, make_vars, parse_poly
from liepoisson.weyl import (
    WeylPresentation,
    chi_context,
    chi_forward,
    chi_inverse,
    chi_tensor,
    extract_core,
    integrate_potential,
    split_derivation,
    tensor_presentation_check,
    weyl_bracket_via_partials,
)

from conftest import heisenberg, random_poly

F = Fraction


def test_partial_formula_examples():
    pres = WeylPresentation(2, center_vars=make_vars("t"))
    ctx = pres.context
    bx, by = weyl_bracket_via_partials(pres, parse_poly("X1*Y1^2", ctx), 1)
    assert str(bx) == "2*X1*Y1" and str(by) == "-Y1^2"
    # central elements and disjoint pairs bracket to zero
    assert weyl_bracket_via_partials(pres, parse_poly("t^3", ctx), 1) == (
        Poly.zero(ctx),
        Poly.zero(ctx),
    )
    assert weyl_bracket_via_partials(pres, parse_poly("Y2", ctx), 1) == (
        Poly.zero(ctx),
        Poly.zero(ctx),
    )


def test_primed_presentation_inverts_x():
    pres = WeylPresentation(1, primed=True)
    alg = pres.algebra()
    x_inv = alg.element(Poly.var(pres.context, "X1") ** -1)
    # {X1^-1, Y1} = -X1^-2 by the quotient rule
    got = alg.bracket(x_inv, "Y1")
    want = alg.scale(-1, alg.element(Poly.var(pres.context, "X1") ** -2))
    assert alg.sub(got, want).is_zero()
    # X1 Y1 pairs multiplicatively against X1: {X1, X1 Y1} = X1
    t = alg.element(parse_poly("X1*Y1", pres.context))
    assert alg.sub(alg.bracket("X1", t), alg.gen("X1")).is_zero()


def test_partials_match_leibniz_bracket(rng):
    pres = WeylPresentation(2, center_vars=make_vars("t"))
    alg = pres.algebra()
    for _ in range(60):
        a = random_poly(rng, pres.context, max_degree=5)
        for i in (1, 2):
            bx, by = weyl_bracket_via_partials(pres, a, i)
            assert alg.element(bx) == alg.bracket(f"X{i}", a)
            assert alg.element(by) == alg.bracket(f"Y{i}", a)


def test_extract_core_examples():
    pres = WeylPresentation(1, center_vars=make_vars("z zp"))
    ctx = pres.context
    assert [str(p) for p in extract_core(pres, [parse_poly("z*X1 + zp", ctx)])] == [
        "z",
        "zp",
    ]
    assert [str(p) for p in extract_core(pres, [Poly.const(ctx, 1)])] == ["1"]
    assert [str(p) for p in extract_core(pres, [parse_poly("X1*Y1*z", ctx)])] == ["z"]


def test_integrate_potential_examples():
    pres = WeylPresentation(1)
    ctx = pres.context
    b = integrate_potential(pres, [parse_poly("Y1", ctx)], [parse_poly("X1", ctx)])
    assert str(b) == "X1*Y1"
    assert integrate_potential(pres, [Poly.zero(ctx)], [Poly.zero(ctx)]).is_zero()
    assert str(integrate_potential(pres, [Poly.const(ctx, 1)], [Poly.zero(ctx)])) == "X1"


def test_integrate_potential_not_closed():
    pres = WeylPresentation(2)
    ctx = pres.context
    with pytest.raises(NotClosed):
        # dp_1/dX_2 != dp_2/dX_1
        integrate_potential(
            pres,
            [parse_poly("X2", ctx), Poly.zero(ctx)],
            [Poly.zero(ctx), Poly.zero(ctx)],
        )


def test_split_derivation_inner():
    pres = WeylPresentation(1)
    alg = pres.algebra()
    delta = inner_derivation(alg, parse_poly("X1*Y1", pres.context))
    b, rest = split_derivation(pres, delta)
    assert str(b) == "X1*Y1" and not rest.images
    b0, rest0 = split_derivation(pres, Derivation({}))
    assert b0.is_zero() and not rest0.images


def test_split_derivation_mixed():
    pres = WeylPresentation(1, center_vars=make_vars("t"))
    alg = pres.algebra()
    delta = Derivation(
        {"t": alg.one(), "X1": alg.gen("X1"), "Y1": alg.scale(-1, alg.gen("Y1"))}
    )
    b, rest = split_derivation(pres, delta)
    # the inner part must reproduce delta on the pair and vanish on t
    db = inner_derivation(alg, b)
    for name in ("X1", "Y1"):
        assert alg.sub(delta.image_of(alg, name), db.image_of(alg, name)).is_zero()
    assert list(rest.images) == ["t"] and alg.element(rest.images["t"]) == alg.one()


def test_split_derivation_random_roundtrip(rng):
    pres = WeylPresentation(2, center_vars=make_vars("t"))
    alg = pres.algebra()
    tpoly = Poly.var(pres.context, "t")
    for _ in range(15):
        secret = random_poly(rng, pres.context, max_degree=4)
        z_image = random_poly(rng, make_vars("t"), max_degree=3).extend(pres.context)
        delta_imgs = {}
        for v in pres.context:
            img = alg.bracket(secret, Poly.var(pres.context, v.name))
            if v.name == "t":
                img = alg.add(img, alg.element(z_image))
            if not img.is_zero():
                delta_imgs[v.name] = img
        b, rest = split_derivation(pres, Derivation(delta_imgs))
        # d_b equals d_secret on the generators
        for v in pres.context:
            lhs = alg.bracket(b, Poly.var(pres.context, v.name))
            rhs = alg.bracket(secret, Poly.var(pres.context, v.name))
            assert alg.sub(lhs, rhs).is_zero()
        rest_t = rest.images.get("t")
        if z_image.is_zero():
            assert rest_t is None
        else:
            assert alg.sub(alg.element(rest_t), alg.element(z_image)).is_zero()


def _chi_ctx():
    pres = WeylPresentation(1, center_vars=make_vars("alpha"))
    alg = pres.algebra()
    return alg, chi_context(alg, Derivation({"alpha": alg.one()}), "alpha")


def test_chi_examples():
    alg, ctx = _chi_ctx()
    # delta-constants map to their degree-0 image
    img = chi_forward(ctx, parse_poly("X1^2", alg.vars))
    assert ctx.target.format(img) == "X1^2"
    # chi(alpha) = Y
    assert ctx.target.format(chi_forward(ctx, parse_poly("alpha", alg.vars))) == "Y"
    # alpha^2 X1 -> X1 Y^2 and back
    p = parse_poly("alpha^2*X1", alg.vars)
    fwd = chi_forward(ctx, p)
    assert ctx.target.format(fwd) == "X1*Y^2"
    assert chi_inverse(ctx, fwd) == alg.element(p)


def test_chi_roundtrips_random(rng):
    alg, ctx = _chi_ctx()
    for _ in range(50):
        p = alg.element(random_poly(rng, alg.vars, max_degree=5))
        assert chi_inverse(ctx, chi_forward(ctx, p)) == p
        q = ctx.target.element(random_poly(rng, ctx.target.vars, max_degree=5))
        assert ctx.target.sub(chi_forward(ctx, chi_inverse(ctx, q)), q).is_zero()


def test_chi_is_bracket_homomorphism(rng):
    alg, ctx = _chi_ctx()
    for _ in range(40):
        p = alg.element(random_poly(rng, alg.vars, max_degree=4))
        q = alg.element(random_poly(rng, alg.vars, max_degree=4))
        lhs = chi_forward(ctx, alg.bracket(p, q))
        rhs = ctx.target.bracket(chi_forward(ctx, p), chi_forward(ctx, q))
        assert ctx.target.sub(lhs, rhs).is_zero()


def test_chi_context_validation():
    pres = WeylPresentation(1, center_vars=make_vars("alpha"))
    alg = pres.algebra()
    with pytest.raises(AlphaNotAVariable):
        chi_context(alg, Derivation({"alpha": alg.one()}), "X1")  # not central
    with pytest.raises(AlphaNotAVariable):
        # delta(alpha) = 2, not 1
        chi_context(alg, Derivation({"alpha": alg.scale(2, alg.one())}), "alpha")
    with pytest.raises(LocalNilpotencyCapExceeded):
        ctx2 = make_vars("u")
        A2 = poisson_algebra(ctx2, {})
        chi_context(A2, Derivation({"u": A2.gen("u")}), "u", cap=8)


def test_chi_tensor_cases():
    # A = Q[alpha]: the extension is exactly one Weyl pair
    ctx_a = make_vars("alpha")
    A0 = poisson_algebra(ctx_a, {})
    c0 = chi_context(A0, Derivation({"alpha": A0.one()}), "alpha")
    r0 = chi_tensor(c0)
    assert r0.table_matches
    assert r0.target.format(r0.x_image) == "X1"
    # A = Q[alpha] tensor B1: the extension becomes two pairs
    alg, ctx = _chi_ctx()
    res = chi_tensor(ctx)
    assert res.table_matches
    # chi(X) is exactly the fresh pair variable
    assert res.target.format(res.x_image) == "X2"


def test_tensor_presentation_check_cases():
    p2 = WeylPresentation(2)
    B2 = p2.algebra()
    assert tensor_presentation_check(
        B2, [], [(B2.gen("X1"), B2.gen("Y1")), (B2.gen("X2"), B2.gen("Y2"))], d=3
    )
    with pytest.raises(NotCommuting):
        p1 = WeylPresentation(1)
        B1 = p1.algebra()
        tensor_presentation_check(
            B1, [B1.gen("X1"), B1.gen("Y1")], [(B1.gen("X1"), B1.gen("Y1"))], d=2
        )
    # quotient of Heisenberg tensor Q[t] splits as Q[t] tensor B1 at z = 1
    t_alg = poisson_algebra(make_vars("t"), {})
    T = tensor(canonical_from_lie(heisenberg()), t_alg)
    Tq = quotient(T, ideal_from_pairs(T.vars, [("z", "1")]))
    assert tensor_presentation_check(Tq, [Tq.gen("t")], [(Tq.gen("x"), Tq.gen("y"))], d=4)
    # and a non-generating pair of subalgebras is reported
    with pytest.raises(NotGenerating):
        tensor_presentation_check(Tq, [], [(Tq.gen("x"), Tq.gen("y"))], d=2)
