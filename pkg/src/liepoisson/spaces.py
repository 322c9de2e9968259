"""Degree-bounded linear algebra over a Poisson algebra.

Everything here reduces questions about finite slices of an algebra to exact
sparse linear algebra: enumerate the monomials of the slice, expand elements
over a common denominator, and hand rows to ``linalg``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .poisson import LocalElement, PoissonAlgebra
from .polys import Mono, Poly


def monomials_up_to(nvars: int, d: int) -> list[Mono]:
    """Exponent tuples with nonnegative entries and total degree <= d, in
    ascending graded-lex order."""
    out: list[Mono] = []
    for total in range(d + 1):
        level: list[Mono] = []

        def rec(prefix, left, slots):
            if slots == 1:
                level.append(tuple(prefix + [left]))
                return
            for e in range(left + 1):
                rec(prefix + [e], left - e, slots - 1)

        if nvars == 0:
            if total == 0:
                level.append(())
        else:
            rec([], total, nvars)
        out.extend(sorted(level))
    return out


def basis_monomials(alg: PoissonAlgebra, d: int) -> list[Poly]:
    """Monomials of degree <= d in the effective (non-eliminated) variables;
    requires the effective variables to be ordinary (not Laurent)."""
    eff = alg.effective_vars()
    if any(v.invertible for v in eff):
        raise ValueError("degree slices need ordinary (non-Laurent) generators")
    pos = [i for i, v in enumerate(alg.vars) if v in eff]
    out = []
    for expo in monomials_up_to(len(eff), d):
        mono = [0] * len(alg.vars)
        for e, i in zip(expo, pos):
            mono[i] = e
        out.append(Poly.monomial(alg.vars, tuple(mono)))
    return out


class SliceIndex:
    """Assigns stable column indices to monomials as they appear."""

    def __init__(self):
        self.index: dict[Mono, int] = {}

    def col(self, mono: Mono) -> int:
        if mono not in self.index:
            self.index[mono] = len(self.index)
        return self.index[mono]

    def row_of(self, p: Poly) -> dict[int, Fraction]:
        return {self.col(m): c for m, c in sorted(p.terms.items())}


def common_denominator_rows(
    alg: PoissonAlgebra, elements: Sequence[LocalElement], index: SliceIndex | None = None
) -> tuple[list[dict[int, Fraction]], SliceIndex, tuple[int, ...]]:
    """Rewrite elements over the maximal denominator appearing among them and
    return their numerator rows (same order)."""
    nden = len(alg.inverted)
    caps = tuple(
        max((el.den[i] for el in elements), default=0) for i in range(nden)
    )
    index = index if index is not None else SliceIndex()
    rows = []
    for el in elements:
        num = el.num
        for i, s in enumerate(alg.inverted):
            k = caps[i] - el.den[i]
            if k:
                num = num * s**k
        rows.append(index.row_of(num))
    return rows, index, caps


def span_dimension(alg: PoissonAlgebra, elements: Sequence[LocalElement]) -> int:
    rows, _, _ = common_denominator_rows(alg, elements)
    return linalg.rank(rows)


def independent(alg: PoissonAlgebra, elements: Sequence[LocalElement]) -> bool:
    return span_dimension(alg, elements) == len(elements)


def covers(
    alg: PoissonAlgebra,
    spanners: Sequence[LocalElement],
    targets: Sequence[LocalElement],
) -> bool:
    """True iff every target lies in the span of the spanners."""
    rows, index, caps = common_denominator_rows(alg, list(spanners) + list(targets))
    ech = linalg.Echelon()
    for r in rows[: len(spanners)]:
        ech.add(r)
    return all(ech.contains(r) for r in rows[len(spanners) :])


def solve_in_span(
    alg: PoissonAlgebra,
    spanners: Sequence[LocalElement],
    target: LocalElement,
) -> list[Fraction] | None:
    """Coefficients expressing target as a combination of spanners, or None."""
    rows, index, caps = common_denominator_rows(alg, list(spanners) + [target])
    ncols = len(index.index)
    # unknowns: coefficients a_i; equations: per monomial column
    eq_rows = []
    rhs = []
    target_row = rows[-1]
    for col in range(ncols):
        row = {
            i: rows[i][col]
            for i in range(len(spanners))
            if col in rows[i]
        }
        b = target_row.get(col, Fraction(0))
        if row or b:
            eq_rows.append(row)
            rhs.append(b)
    sol = linalg.solve(eq_rows, rhs, len(spanners))
    return list(sol) if sol is not None else None


def kernel_of_operators(
    alg: PoissonAlgebra,
    basis: Sequence[LocalElement],
    operators: Sequence,
) -> list[LocalElement]:
    """Elements sum(a_i basis_i) killed by every operator (each operator maps
    a LocalElement to a LocalElement); exact sparse nullspace.

    The operator images must stay inside a finite monomial space, which they
    do for bracket actions on degree slices.
    """
    index = SliceIndex()
    images: list[list[dict[int, Fraction]]] = []
    for op in operators:
        outs = [op(b) for b in basis]
        rows, index, _ = common_denominator_rows(alg, outs, index)
        images.append(rows)
    ncols = len(index.index)
    eq_rows: list[dict[int, Fraction]] = []
    for rows in images:
        for col in range(ncols):
            row = {i: rows[i][col] for i in range(len(basis)) if col in rows[i]}
            if row:
                eq_rows.append(row)
    combos = linalg.nullspace(eq_rows, len(basis))
    out = []
    for combo in combos:
        acc = alg.zero()
        for a, b in zip(combo, basis):
            if a != 0:
                acc = alg.add(acc, alg.scale(a, b))
        out.append(acc)
    return out
