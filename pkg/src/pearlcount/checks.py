"""Cross-check suites shared by the CLI and the acceptance tests.

Each suite returns a :class:`CheckReport`; the first counterexample is kept so
a failure can be reported without rerunning anything.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .diagrams import Kind, enumerate_diagrams
from .invariants import (
    CheckReport,
    InvariantQuery,
    closed_series,
    codegree,
    codegree0_formula,
    codegree1_formula,
    codegree2_corrected,
    codegree2_displayed,
    codegree_valid,
    invariant_by_cover,
    invariant_by_diagrams,
    multiple_cover,
    primitive_closed,
    primitive_N_fls_alternate,
    quasimodularity_check,
    series_F,
)
from .mult import curve_count, curve_count_oracle, loop_data, loop_gcd
from .qpoly import bracket_minus

KINDS = (Kind.POINT, Kind.FLS)


def _report(name: str, items: Iterable[tuple[bool, tuple]]) -> CheckReport:
    n = 0
    for ok, witness in items:
        n += 1
        if not ok:
            return CheckReport(name, False, n, witness)
    return CheckReport(name, True, n)


def small_bidegrees(max_product: int, d1_min: int = 1) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d1_min, max_product + 1) for b in range(1, max_product + 1) if a * b <= max_product]


def oracle_suite(genera: Sequence[int] = (2, 3), max_product: int = 4, kinds=KINDS) -> CheckReport:
    """Curve counts against the lattice-index oracle, both edge-flag choices."""

    def items():
        for kind in kinds:
            for g in genera:
                for d1, d2 in small_bidegrees(max_product):
                    for d in enumerate_diagrams(g, d1, d2, kind):
                        for ld in loop_data(d):
                            G = loop_gcd(d, ld)
                            c = curve_count(d, ld, G)
                            o = curve_count_oracle(d, ld)
                            ok = c == o
                            if ok and kind is Kind.FLS:
                                ok = o == curve_count_oracle(d, ld, head_choice=False)
                            yield ok, (str(d), dict(ld), c, o)

    return _report("oracle", items())


def cover_suite(
    genera: Sequence[int] = (2, 3),
    bidegrees: Sequence[tuple[int, int]] = ((2, 2), (2, 4), (3, 3)),
    names: Sequence[str] = ("M", "N", "BG", "R"),
    kinds=(Kind.POINT,),
) -> CheckReport:
    """Diagram pipeline against the multiple-cover formulas."""

    def items():
        for kind in kinds:
            for g in genera:
                for d1, d2 in bidegrees:
                    for name in names:
                        q = InvariantQuery(g, d1, d2, 0, kind, name)
                        a = invariant_by_diagrams(q).value
                        b = invariant_by_cover(q).value
                        yield a == b, (kind.value, g, d1, d2, name, str(a), str(b))

    return _report("cover-" + "+".join(k.value for k in kinds), items())


def primitive_suite(
    genera: Sequence[int] = (2, 3, 4), max_n: int = 8, kind: Kind = Kind.POINT
) -> CheckReport:
    """Diagram sums on (1, n) against the closed composition formulas."""
    formula = "N" if kind is Kind.POINT else "N_FLS"

    def items():
        for g in genera:
            for n in range(1, max_n + 1):
                a = invariant_by_diagrams(InvariantQuery(g, 1, n, 0, kind, "N")).value
                b = primitive_closed(g, n, formula)
                ok = a == b
                if ok and kind is Kind.FLS:
                    ok = b == primitive_N_fls_alternate(g, n)
                yield ok, (kind.value, g, n, a, b)

    return _report(f"primitive-{kind.value}", items())


def specialize_suite(genera: Sequence[int] = (2, 3, 4), max_n: int = 8) -> CheckReport:
    """R_{g,(1,n)} / [1]_-^{2g-2} evaluated at q = 1 against N_{g,(1,n)}."""

    def items():
        for g in genera:
            den = bracket_minus(1) ** (2 * g - 2)
            for n in range(1, max_n + 1):
                r = primitive_closed(g, n, "R")
                lhs = r.exact_divide(den).eval_at_one()
                rhs = primitive_closed(g, n, "N")
                yield lhs == rhs, (g, n, lhs, rhs)

    return _report("specialize", items())


def series_suite(genera: Sequence[int] = (2, 3, 4), N: int = 12) -> CheckReport:
    def items():
        for kind in KINDS:
            for g in genera:
                F = series_F(g, 1, N, kind)
                C = closed_series(g, N, kind)
                for n in range(1, N + 1):
                    yield F[n] == C[n], (kind.value, g, n, F[n], C[n])

    return _report("series", items())


def quasimod_suite(cases: Sequence[tuple[int, int]] = ((2, 2), (2, 3), (3, 2)), N: int = 8) -> CheckReport:
    total = 0
    for g, d in cases:
        rep = quasimodularity_check(g, d, N)
        total += rep.checked
        if not rep.passed:
            return CheckReport("quasimod", False, total, (g, d) + rep.first_failure)
    return CheckReport("quasimod", True, total)


def regularity_suite(genera: Sequence[int] = (2, 3, 4, 5), max_n: int = 10) -> CheckReport:
    """Degree, leading coefficient, symmetry and codegree 1 of R_{g,(1,n)}."""

    def items():
        for g in genera:
            for n in range(1, max_n + 1):
                r = primitive_closed(g, n, "R")
                if r:
                    yield r.top == 2 * n, (g, n, "degree", r.degree)
                yield r == r.reflect(), (g, n, "symmetry", str(r))
                yield codegree(g, n, 0) == codegree0_formula(g, n), (
                    g, n, "leading", codegree(g, n, 0), codegree0_formula(g, n))
                if codegree_valid(g, n, 1):
                    yield codegree(g, n, 1) == codegree1_formula(g, n), (
                        g, n, "codegree1", codegree(g, n, 1), codegree1_formula(g, n))

    return _report("regularity", items())


def codegree2_suite(genera: Sequence[int] = (4, 5, 6), max_n: int = 10, displayed: bool = True) -> CheckReport:
    """Codegree-2 coefficients against the displayed or the rederived closed form."""
    form = codegree2_displayed if displayed else codegree2_corrected

    def items():
        for g in genera:
            for n in range(1, max_n + 1):
                if codegree_valid(g, n, 2):
                    yield codegree(g, n, 2) == form(g, n), (g, n, codegree(g, n, 2), form(g, n))

    return _report("codegree2-displayed" if displayed else "codegree2-corrected", items())


def fls_cover_suite(cases: Sequence[tuple[int, int, int]] = ((2, 2, 2), (2, 2, 4)), names=("M", "N", "BG", "R")) -> CheckReport:
    """FLS diagram pipeline against the linear-system cover formulas."""
    return cover_suite(
        genera=sorted({g for g, _, _ in cases}),
        bidegrees=[(d1, d2) for _, d1, d2 in cases],
        names=names,
        kinds=(Kind.FLS,),
    )


__all__ = [
    "codegree2_suite",
    "cover_suite",
    "fls_cover_suite",
    "multiple_cover",
    "oracle_suite",
    "primitive_suite",
    "quasimod_suite",
    "regularity_suite",
    "series_suite",
    "small_bidegrees",
    "specialize_suite",
]
