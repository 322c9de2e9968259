"""Constructive decomposition of a solvable quotient into center tensor Weyl.

Given solvable g and a stable substitution ideal Q with every degree-bounded
semi-invariant central (the required hypothesis), the recursion walks a full
flag of ideals and produces

  * a central element e (the product of the denominators it had to invert),
  * canonical pairs (x_i, y_i) with {x_i, y_j} = delta_ij inside the
    localization at e, commuting with the degree-bounded center,

exhibiting the localized quotient as (center) tensor (n Weyl pairs) on the
inspected degree slice.  Each flag step adjoins one generator z and either

  (a) z kills the previous center: its action is inner, and z - b (with the
      potential b integrated in pair coordinates) is a new central element;

  (b) some central v = delta(u) lies in the image of the previous center:
      then y = u v^{-1} has delta(y) = 1, the same potential correction
      x = z - b commutes with the previous pairs, {x, y} = 1 gives a new
      canonical pair, and v joins the denominators (e picks up the factor).

All searches are degree-bounded and use ordered enumeration, so identical
inputs yield identical traces.  ``SearchExhausted`` is a legitimate outcome:
the theory guarantees the objects exist, not that they appear below any
particular degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    EigenvalueNotRational,
    HypothesisFailed,
    NotNilpotent,
    SearchExhausted,
    UnsupportedChain,
)
from .invariants import center_up_to_degree, reduced_algebra, semi_invariants
from .lie import (
    LieAlgebra,
    Subspace,
    is_nilpotent,
    jordan_holder,
    module_eigenspaces,
)
from .poisson import (
    LocalElement,
    PoissonAlgebra,
    SubstitutionIdeal,
    localize,
    poisson_algebra,
    quotient,
)
from .polys import Poly
from .spaces import (
    basis_monomials,
    common_denominator_rows,
    covers,
    independent,
    kernel_of_operators,
    monomials_up_to,
    solve_in_span,
)

DEFAULT_DEGREE_BOUND = 6


@dataclass(frozen=True)
class DecompositionResult:
    e: Poly
    n: int
    pairs: tuple[tuple[LocalElement, LocalElement], ...]
    center_basis: tuple[LocalElement, ...]
    algebra: PoissonAlgebra  # the localized quotient the pairs live in
    trace: dict


# ---------------------------------------------------------------------------
# plumbing


def _lift(alg: PoissonAlgebra, el: LocalElement) -> LocalElement:
    den = tuple(el.den) + (0,) * (len(alg.inverted) - len(el.den))
    return alg.element(LocalElement(el.num.extend(alg.vars), den))


def _chain_order(g: LieAlgebra, ideal: SubstitutionIdeal | None):
    """Flag generators as a variable ordering.  Only coordinate-aligned
    flags can thread a nonempty substitution ideal through the levels."""
    flag = jordan_holder(g)
    order = []
    for gen in flag.generators:
        nz = [j for j, c in enumerate(gen) if c != 0]
        order.append(nz[0] if len(nz) == 1 and gen[nz[0]] == 1 else None)
    if all(k is not None for k in order):
        return flag, list(order)
    if ideal is not None and not ideal.is_empty():
        raise UnsupportedChain(
            "flag is not aligned with the coordinate variables; "
            "re-present the algebra on a flag basis or drop the ideal"
        )
    return flag, None


def _rebase_to_flag(g: LieAlgebra, flag) -> LieAlgebra:
    """Re-present g on the flag generators (fresh names c1..cm)."""
    from .lie import verify_lie
    from .polys import make_vars

    m = g.dim
    vecs = list(flag.generators)
    mat = [[vecs[j][i] for j in range(m)] for i in range(m)]
    inv = linalg.mat_inverse(mat)
    assert inv is not None
    structure = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = g.bracket_vec(vecs[a], vecs[b])
            coords = linalg.mat_vec(inv, w)
            entry = {k: c for k, c in enumerate(coords) if c != 0}
            if entry:
                structure[(a, b)] = entry
    return verify_lie(make_vars([f"c{i+1}" for i in range(m)]), structure)


def _level_algebras(g, ideal, order, level, inverted):
    """Quotient-only and localized algebras on the first ``level`` flag
    variables."""
    idx = order[:level]
    ctx = tuple(g.basis[k] for k in idx)
    entries = {}
    for a in range(level):
        for b in range(a + 1, level):
            vec = g.bracket_basis(idx[a], idx[b])
            if not vec:
                continue
            p = Poly.zero(ctx)
            for k, c in vec.items():
                if k not in idx:
                    raise UnsupportedChain("flag members are not ideals")
                pos = idx.index(k)
                p = p + Poly.monomial(
                    ctx, tuple(1 if t == pos else 0 for t in range(level)), c
                )
            if not p.is_zero():
                entries[(a, b)] = p
    alg = poisson_algebra(ctx, entries)
    rules = []
    if ideal is not None:
        names = {v.name for v in ctx}
        for v, img in ideal.rules:
            if v.name in names and img.variables_used() <= names:
                rules.append((v, img.restrict(ctx)))
    if rules:
        alg = quotient(alg, SubstitutionIdeal(tuple(rules)))
    quotient_only = alg
    if inverted:
        alg = localize(alg, [s.extend(ctx) for s in inverted])
    return quotient_only, alg


def _center_with_denominators(quotient_alg, localized, d, den_cap):
    """Degree-bounded center basis of the localized algebra: the plain
    center times powers of the (central) inverted elements, canonicalized
    and reduced to a linearly independent family."""
    plain = center_up_to_degree(quotient_alg, d)
    nden = len(localized.inverted)
    cands = []
    seen = set()
    for caps in (monomials_up_to(nden, den_cap) if nden else [()]):
        for c in plain:
            el = localized.element(LocalElement(c.num.extend(localized.vars), caps))
            key = (tuple(sorted(el.num.terms.items())), el.den)
            if not el.is_zero() and key not in seen:
                seen.add(key)
                cands.append(el)
    cands.sort(
        key=lambda el: (
            el.num.degree() + sum(el.den),
            sorted(el.num.terms),
            el.den,
        )
    )
    return _independent_subset(localized, cands, den_cap)


def _independent_subset(alg, elements, den_cap):
    """Greedy echelon filter; elements are compared over the fixed common
    denominator (multiplying by denominators is injective in a domain)."""
    from . import linalg
    from .spaces import SliceIndex

    index = SliceIndex()
    ech = linalg.Echelon()
    out = []
    for el in elements:
        num = el.num
        for i, s in enumerate(alg.inverted):
            k = den_cap - el.den[i]
            if k > 0:
                num = num * s**k
        if ech.add(index.row_of(num)):
            out.append(el)
    return out


def _pair_monomials(alg, pairs, d):
    flat = [el for pr in pairs for el in pr]
    out = []
    for expo in monomials_up_to(len(flat), d):
        prod = alg.one()
        for e, el in zip(expo, flat):
            for _ in range(e):
                prod = alg.mul(prod, el)
        out.append(prod)
    return out


def _expand_in_pairs(alg, center_list, pairs, target, dmax):
    """Write target as sum c_{ab} x^a y^b with coefficients spanned by the
    center list; escalates the pair degree until the solve succeeds."""
    flat = [el for pr in pairs for el in pr]
    for deg in range(dmax + 1):
        expos = monomials_up_to(len(flat), deg)
        spanners = []
        for expo in expos:
            mono = alg.one()
            for e, el in zip(expo, flat):
                for _ in range(e):
                    mono = alg.mul(mono, el)
            for c in center_list:
                spanners.append(alg.mul(c, mono))
        sol = solve_in_span(alg, spanners, target)
        if sol is None:
            continue
        coeffs = {}
        k = 0
        for expo in expos:
            acc = alg.zero()
            for c in center_list:
                a = sol[k]
                k += 1
                if a != 0:
                    acc = alg.add(acc, alg.scale(a, c))
            if not acc.is_zero():
                coeffs[expo] = acc
        return coeffs
    return None


def _formal_partial(alg, coeffs, j):
    out = {}
    for expo, c in coeffs.items():
        if expo[j]:
            e2 = list(expo)
            e2[j] -= 1
            out[tuple(e2)] = alg.scale(expo[j], c)
    return out


def _integrate_pair_potential(alg, n, dx_targets, dy_targets):
    """Formal potential b (exponent dict over the flat pair layout
    x_1, y_1, x_2, y_2, ...) with db/dx_j and db/dy_j prescribed; None when
    the data does not close."""
    width = 2 * n

    def norm(coeffs):
        return {
            tuple(expo) + (0,) * (width - len(expo)): v for expo, v in coeffs.items()
        }

    def combine(a, c, sign):
        out = dict(a)
        for expo, el in c.items():
            nxt = alg.add(out.get(expo, alg.zero()), alg.scale(sign, el))
            if nxt.is_zero():
                out.pop(expo, None)
            else:
                out[expo] = nxt
        return out

    def antiderive(coeffs, j):
        out = {}
        for expo, el in coeffs.items():
            e2 = list(expo)
            e2[j] += 1
            out[tuple(e2)] = alg.scale(Fraction(1, e2[j]), el)
        return out

    b: dict[tuple, LocalElement] = {}
    targets = []
    for j in range(n):
        targets.append((2 * j, norm(dx_targets[j])))
        targets.append((2 * j + 1, norm(dy_targets[j])))
    for j, tgt in targets:
        rem = combine(tgt, _formal_partial(alg, b, j), -1)
        b = combine(b, antiderive(rem, j), 1)
    for j, tgt in targets:
        if combine(tgt, _formal_partial(alg, b, j), -1):
            return None
    return b


def _eval_pair_poly(alg, coeffs, pairs):
    flat = [el for pr in pairs for el in pr]
    acc = alg.zero()
    for expo, c in sorted(coeffs.items()):
        term = c
        for e, el in zip(expo, flat):
            for _ in range(e):
                term = alg.mul(term, el)
        acc = alg.add(acc, term)
    return acc


def _split_against_pairs(alg, center_list, pairs, z_el, d):
    """Potential b (pair-coordinate dict) with d_b = {z, .} on every pair
    element; pair coordinates obey db/dy_j = -delta(x_j), db/dx_j =
    delta(y_j)."""
    if not pairs:
        return {}
    dx_targets = []
    dy_targets = []
    for x_el, y_el in pairs:
        ex = _expand_in_pairs(alg, center_list, pairs, alg.bracket(z_el, x_el), d)
        ey = _expand_in_pairs(alg, center_list, pairs, alg.bracket(z_el, y_el), d)
        if ex is None or ey is None:
            return None
        dy_targets.append({k: alg.scale(-1, v) for k, v in ex.items()})
        dx_targets.append(ey)
    return _integrate_pair_potential(alg, len(pairs), dx_targets, dy_targets)


def _central_choice(full_alg, candidates, d):
    """Deterministic nonzero g-central element in the span of the
    candidates; HypothesisFailed with a weight certificate when only a
    nonzero-weight eigenvector exists, EigenvalueNotRational otherwise."""
    ops = []
    for v in full_alg.vars:
        gen = full_alg.gen(v.name)
        ops.append(lambda el, gen=gen: full_alg.bracket(gen, el))
    central = [
        c for c in kernel_of_operators(full_alg, candidates, ops) if not c.is_zero()
    ]
    if central:
        central.sort(key=lambda el: (el.num.degree(), sorted(el.num.terms)))
        v = central[0]
        lead = max(v.num.terms, key=lambda m: (sum(m), m))
        return full_alg.scale(Fraction(1) / v.num.terms[lead], v)
    rows, _, _ = common_denominator_rows(full_alg, candidates)
    ech = linalg.Echelon()
    basis = [c for c, row in zip(candidates, rows) if ech.add(row)]
    mats = []
    for v in full_alg.vars:
        gen = full_alg.gen(v.name)
        cols = []
        for b in basis:
            sol = solve_in_span(full_alg, basis, full_alg.bracket(gen, b))
            if sol is None:
                raise SearchExhausted(d, "(module not closed under the action)")
            cols.append(sol)
        mats.append(
            [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
        )
    for vals, space in module_eigenspaces(mats, len(basis)):
        if any(c != 0 for c in vals):
            vec = space.basis[0]
            el = full_alg.zero()
            for c, b in zip(vec, basis):
                if c != 0:
                    el = full_alg.add(el, full_alg.scale(c, b))
            raise HypothesisFailed(tuple(map(str, vals)), full_alg.format(el))
    raise EigenvalueNotRational("(no rational eigenvector in the derivation image)")


def _krylov_projection(alg, op, el, theta):
    """Spectral projection onto the theta-eigencomponent of a locally finite
    semisimple operator, via the minimal polynomial on the Krylov span."""
    if el.is_zero():
        return el
    seq = [el]
    while True:
        nxt = op(seq[-1])
        dep = solve_in_span(alg, seq, nxt)
        if dep is not None:
            break
        seq.append(nxt)
    coeffs = [-c for c in dep] + [Fraction(1)]  # minimal polynomial, monic
    roots = linalg.rational_roots(coeffs)
    if theta not in roots:
        return alg.zero()
    out = el
    for mu in roots:
        if mu != theta:
            out = alg.scale(
                Fraction(1) / (theta - mu), alg.sub(op(out), alg.scale(mu, out))
            )
    res = alg.sub(op(out), alg.scale(theta, out))
    if not res.is_zero():
        raise EigenvalueNotRational("(action does not split rationally)")
    return out


def _assert_commutes(alg, el, pairs, center, d):
    for x_el, y_el in pairs:
        if not alg.bracket(el, x_el).is_zero() or not alg.bracket(el, y_el).is_zero():
            raise SearchExhausted(d, "(adjoined element fails to commute with pairs)")
    for c in center:
        if not alg.bracket(el, c).is_zero():
            raise SearchExhausted(d, "(adjoined element fails to centralize)")


# ---------------------------------------------------------------------------
# semisimple-action helpers (only active when s is supplied)


def _s_op(full_l, g, t_vec):
    """Action of an s-element, computed in the full localized algebra (the
    s-generators usually live outside the current flag prefix)."""
    p = Poly.zero(full_l.vars)
    for c, v in zip(t_vec, g.basis):
        if c != 0:
            p = p + Poly.var(full_l.vars, v.name).scale(c)
    gen = full_l.element(p)
    return lambda el: full_l.bracket(gen, el)


def _project_s_weight(cur_l, full_l, g, s: Subspace, el, theta_values):
    """Spectral projection inside the full algebra, pushed back to the
    level algebra (flag prefixes are ideals, so the action stays inside)."""
    lifted = _lift(full_l, el)
    for t_vec, th in zip(s.basis, theta_values):
        lifted = _krylov_projection(full_l, _s_op(full_l, g, t_vec), lifted, th)
    return cur_l.element(
        LocalElement(lifted.num.restrict(cur_l.vars), lifted.den)
    )


# ---------------------------------------------------------------------------
# the recursion


def decompose(
    g: LieAlgebra,
    ideal: SubstitutionIdeal | None = None,
    d: int = DEFAULT_DEGREE_BOUND,
    s: Subspace | None = None,
    _skip_hypothesis: bool = False,
) -> DecompositionResult:
    trace: dict = {"degree_bound": d, "levels": []}
    if _skip_hypothesis:
        trace["hypothesis"] = "nilpotent action (central semi-invariants automatic)"
    else:
        report = semi_invariants(g, ideal, d)
        for w, basis in report.entries:
            if not w.is_zero():
                raise HypothesisFailed(tuple(map(str, w.values)), str(basis[0].num))
        trace["hypothesis"] = f"all semi-invariants central up to degree {d}"

    flag, order = _chain_order(g, ideal)
    if order is None:
        g = _rebase_to_flag(g, flag)
        ideal = None
        flag, order = _chain_order(g, ideal)
        if order is None:  # pragma: no cover
            raise UnsupportedChain("flag re-presentation failed")
        trace["basis_change"] = "re-presented on the flag basis"
    trace["chain"] = [g.basis[k].name for k in order]
    theta_by_level = (
        [tuple(flag.weights[i](t) for t in s.basis) for i in range(g.dim)]
        if s is not None
        else None
    )

    full_alg = reduced_algebra(g, ideal)
    pairs: list[tuple[LocalElement, LocalElement]] = []
    inverted: list[Poly] = []
    prev_q = None
    cur_q = cur_l = None

    for level in range(1, g.dim + 1):
        z_idx = order[level - 1]
        step = {"level": level, "generator": g.basis[z_idx].name}
        cur_q, cur_l = _level_algebras(g, ideal, order, level, inverted)
        pairs = [(_lift(cur_l, x), _lift(cur_l, y)) for x, y in pairs]
        full_l = (
            localize(full_alg, [w.extend(full_alg.vars) for w in inverted])
            if (s is not None and inverted)
            else full_alg
        )

        # plain previous center: the domain where v and u are searched
        if prev_q is None:
            plain_center = [cur_l.one()]
        else:
            plain_center = [_lift(cur_l, c) for c in center_up_to_degree(prev_q, d)]
        z_el = cur_l.gen(g.basis[z_idx].name)
        if s is not None:
            z_el = _project_s_weight(
                cur_l, full_l, g, s, z_el, list(theta_by_level[level - 1])
            )
            if z_el.is_zero():
                raise SearchExhausted(d, "(flag generator lost its weight component)")

        delta_imgs = [cur_l.bracket(z_el, c) for c in plain_center]
        nonzero = [
            (c, im) for c, im in zip(plain_center, delta_imgs) if not im.is_zero()
        ]

        if not nonzero:
            step["case"] = "a"
            if pairs:
                exp_center = _center_with_denominators(prev_q, cur_l, d, d)
                bexp = _split_against_pairs(cur_l, exp_center, pairs, z_el, d)
                if bexp is None:
                    raise SearchExhausted(d, "(pair splitting failed)")
                b_el = _eval_pair_poly(cur_l, bexp, pairs)
                x_new = cur_l.sub(z_el, b_el)
                step["potential"] = cur_l.format(b_el)
            else:
                x_new = z_el
            _assert_commutes(cur_l, x_new, pairs, plain_center, d)
            step["adjoined_central"] = cur_l.format(x_new)
        else:
            step["case"] = "b"
            images = [im for _, im in nonzero]
            v_full = _central_choice(full_alg, [_lift(full_alg, im) for im in images], d)
            v_poly = v_full.num  # plain central polynomial
            v_cur = cur_l.element(v_poly.restrict(cur_l.vars))
            combo = solve_in_span(cur_l, images, v_cur)
            if combo is None:
                raise SearchExhausted(d, "(no preimage for the central image)")
            u = cur_l.zero()
            for a, (c, _) in zip(combo, nonzero):
                if a != 0:
                    u = cur_l.add(u, cur_l.scale(a, c))
            if s is not None:
                theta = theta_by_level[level - 1]
                u = _project_s_weight(cur_l, full_l, g, s, u, [-t for t in theta])
                if not cur_l.sub(cur_l.bracket(z_el, u), v_cur).is_zero():
                    raise SearchExhausted(d, "(weight projection broke the preimage)")
            step["v"] = str(v_poly)
            step["u"] = cur_l.format(u)
            if v_poly.is_constant():
                y_new = cur_l.scale(Fraction(1) / v_poly.constant_value(), u)
            else:
                v_level = v_poly.restrict(cur_l.vars) if v_poly.ctx != cur_l.vars else v_poly
                if not any(str(v_level) == str(w) for w in inverted):
                    inverted.append(v_level)
                    cur_q, cur_l = _level_algebras(g, ideal, order, level, inverted)
                    pairs = [(_lift(cur_l, x), _lift(cur_l, y)) for x, y in pairs]
                    u = _lift(cur_l, u)
                    z_el = _lift(cur_l, z_el)
                if s is not None:
                    full_l = localize(
                        full_alg, [w.extend(full_alg.vars) for w in inverted]
                    )
                v_inv = cur_l.invert(cur_l.element(v_level.extend(cur_l.vars)))
                y_new = cur_l.mul(u, v_inv)
            exp_center = (
                _center_with_denominators(prev_q, cur_l, d, d)
                if prev_q is not None
                else [cur_l.one()]
            )
            bexp = _split_against_pairs(cur_l, exp_center, pairs, z_el, d)
            if bexp is None:
                raise SearchExhausted(d, "(pair splitting failed)")
            b_el = _eval_pair_poly(cur_l, bexp, pairs)
            if s is not None:
                b_el = _project_s_weight(
                    cur_l, full_l, g, s, b_el, list(theta_by_level[level - 1])
                )
            x_new = cur_l.sub(z_el, b_el)
            if not cur_l.sub(cur_l.bracket(x_new, y_new), cur_l.one()).is_zero():
                raise SearchExhausted(d, "(canonical pair relation failed)")
            _assert_commutes(cur_l, x_new, pairs, [], d)
            pairs.append((x_new, y_new))
            if not b_el.is_zero():
                step["potential"] = cur_l.format(b_el)
            step["pair"] = [cur_l.format(x_new), cur_l.format(y_new)]
        trace["levels"].append(step)
        prev_q = cur_q

    center = _center_with_denominators(cur_q, cur_l, d, d)
    e = Poly.const(cur_l.vars, 1)
    for v in inverted:
        e = e * v.extend(cur_l.vars)
    trace["e"] = str(e)
    trace["n"] = len(pairs)
    return DecompositionResult(
        e=e,
        n=len(pairs),
        pairs=tuple(pairs),
        center_basis=tuple(center),
        algebra=cur_l,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# wrappers, verification, and the center/Weyl equivalence report


def decompose_nilpotent(
    g: LieAlgebra, ideal: SubstitutionIdeal | None = None, d: int = DEFAULT_DEGREE_BOUND
) -> DecompositionResult:
    if not is_nilpotent(g):
        raise NotNilpotent()
    return decompose(g, ideal, d, s=None, _skip_hypothesis=True)


def verify_decomposition(res: DecompositionResult, check_degree: int = 4) -> dict:
    """All result invariants, exactly: pair relations, centrality, and the
    degree-slice bookkeeping for the multiplication map
    (center tensor Weyl -> localized quotient)."""
    alg = res.algebra
    report = {"pair_relations": True, "centrality": True}
    for i, (xi, yi) in enumerate(res.pairs):
        for j, (xj, yj) in enumerate(res.pairs):
            want = alg.one() if i == j else alg.zero()
            if not alg.sub(alg.bracket(xi, yj), want).is_zero():
                report["pair_relations"] = False
            if not alg.bracket(xi, xj).is_zero() or not alg.bracket(yi, yj).is_zero():
                report["pair_relations"] = False
    for c in res.center_basis:
        for v in alg.vars:
            if not alg.bracket(alg.gen(v.name), c).is_zero():
                report["centrality"] = False
        for xi, yi in res.pairs:
            if not alg.bracket(c, xi).is_zero() or not alg.bracket(c, yi).is_zero():
                report["centrality"] = False
    nden = len(alg.inverted)
    targets = [
        alg.element(LocalElement(m, caps))
        for m in basis_monomials(alg, check_degree)
        for caps in (monomials_up_to(nden, check_degree) if nden else [()])
    ]
    # generators can carry pair-degree and center-degree above their
    # polynomial degree (a generator may expand as center * pair^2), so the
    # bookkeeping uses its own window, escalating the pair bound as needed
    window = 2 * check_degree
    plain_center = center_up_to_degree(alg, window)
    cands = []
    seen = set()
    for caps in (monomials_up_to(nden, window) if nden else [()]):
        for c in plain_center:
            el = alg.element(LocalElement(c.num, caps))
            key = (tuple(sorted(el.num.terms.items())), el.den)
            if not el.is_zero() and key not in seen:
                seen.add(key)
                cands.append(el)
    cands.sort(
        key=lambda el: (el.num.degree() + sum(el.den), sorted(el.num.terms), el.den)
    )
    center_list = _independent_subset(alg, cands, window)
    report["mult_map_injective"] = False
    report["mult_map_surjective"] = False
    for pair_bound in range(check_degree, window + 1):
        products = []
        for c in center_list:
            for w in _pair_monomials(alg, res.pairs, pair_bound):
                prod = alg.mul(c, w)
                if prod.num.degree() <= 3 * check_degree and all(
                    e <= window for e in prod.den
                ):
                    products.append(prod)
        report["mult_map_injective"] = independent(alg, products)
        if not report["mult_map_injective"]:
            break
        if covers(alg, products, targets):
            report["mult_map_surjective"] = True
            report["pair_degree_used"] = pair_bound
            break
    report["ok"] = all(
        report[k]
        for k in (
            "pair_relations",
            "centrality",
            "mult_map_injective",
            "mult_map_surjective",
        )
    )
    return report


def check_84(
    g: LieAlgebra, ideal: SubstitutionIdeal | None = None, d: int = DEFAULT_DEGREE_BOUND
) -> dict:
    """For nilpotent g: the center is trivial iff the quotient is already a
    Weyl algebra; evaluates both sides and reports agreement with a
    certificate when the center is nontrivial."""
    if not is_nilpotent(g):
        raise NotNilpotent()
    alg = reduced_algebra(g, ideal)
    center = center_up_to_degree(alg, d)
    nonconstant = [c for c in center if not c.num.is_constant()]
    cond_i = not nonconstant
    res = decompose_nilpotent(g, ideal, d)
    no_localization = res.e.is_constant()
    nontrivial_center = [
        c
        for c in res.center_basis
        if not (c.is_polynomial() and c.num.is_constant())
    ]
    cond_ii = no_localization and not nontrivial_center
    report = {
        "degree_bound": d,
        "center_trivial": cond_i,
        "weyl_presentation": cond_ii,
        "agree": cond_i == cond_ii,
        "weyl_rank": res.n,
    }
    if nonconstant:
        report["central_witness"] = str(nonconstant[0].num)
    return report
