"""Diagram multiplicities, per-loop-data curve counts and the lattice-index oracle.

Loop data assign to each pearl a divisor k of its degree. Flat vertices carry
k = 1 implicitly. Throughout, ``G`` denotes the gcd of all edge weights and of
the pearl values k (flat vertices do not take part).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Mapping

from .arith import convolve_action, divisors, euler_phi, pointwise, power, sigma1
from .diagrams import Diagram, Kind, cycle_class, diagram_gcd, divide
from .kernels import bareiss_det, echelon_diagonal, gcd_of
from .qpoly import HalfLaurent, bracket_minus

LoopData = Mapping[int, int]  # pearl label -> k


class InvalidLoopData(ValueError):
    pass


def loop_data(d: Diagram) -> Iterator[dict[int, int]]:
    """All loop data of ``d`` in a fixed order."""
    labels = [p.label for p in d.pearls]
    for ks in itertools.product(*(divisors(p.degree) for p in d.pearls)):
        yield dict(zip(labels, ks))


def check_loop_data(d: Diagram, ld: LoopData) -> None:
    labels = {p.label for p in d.pearls}
    if set(ld) != labels:
        raise InvalidLoopData("loop data must give a value to every pearl and nothing else")
    for p in d.pearls:
        k = ld[p.label]
        if not isinstance(k, int) or k < 1 or p.degree % k:
            raise InvalidLoopData(f"k={k} does not divide the degree {p.degree} of pearl {p.label}")


def loop_gcd(d: Diagram, ld: LoopData) -> int:
    return gcd_of([e.weight for e in d.edges] + [ld[p.label] for p in d.pearls])


def _fls_factor(d: Diagram) -> int:
    if d.kind is not Kind.FLS:
        return 1
    lam = cycle_class(d)
    return lam * lam * d.vertex(d.inf_label).degree


def _weight_part(d: Diagram) -> int:
    """prod_e w_e^{#pearl ends + [both ends pearls]}."""
    out = 1
    for e in d.edges:
        np_ = d.pearl_ends(e)
        out *= e.weight ** (np_ + (np_ == 2))
    return out


def _pearl_edge_weights(d: Diagram) -> int:
    return prod(e.weight for e in d.pearl_edges())


def _flag_weights(d: Diagram, label: int) -> list[int]:
    """Weights of the flags at a vertex (a self-loop gives two)."""
    out = []
    for e in d.edges:
        if e.src == label:
            out.append(e.weight)
        if e.dst == label:
            out.append(e.weight)
    return out


# -- per loop data --------------------------------------------------------


def xi(d: Diagram, ld: LoopData) -> int:
    check_loop_data(d, ld)
    out = _fls_factor(d)
    if not out:
        return 0
    for p in d.pearls:
        out *= p.degree ** (d.valence(p.label) - 1) * (p.degree // ld[p.label])
    return out * _weight_part(d)


def Xi(d: Diagram, ld: LoopData) -> HalfLaurent:
    check_loop_data(d, ld)
    c = _fls_factor(d) * _pearl_edge_weights(d)
    if not c:
        return HalfLaurent.zero()
    poly = HalfLaurent.constant(1)
    for p in d.pearls:
        k = ld[p.label]
        c *= k ** (d.valence(p.label) - 1)
        for w in _flag_weights(d, p.label):
            poly = poly * bracket_minus((p.degree // k) * w)
    return poly.scalar_mul(c)


def curve_count(d: Diagram, ld: LoopData, a: int) -> int:
    """Number of curves encoded by ``d`` with loop data ``ld`` in the class with entry a."""
    check_loop_data(d, ld)
    if a < 0:
        raise ValueError("a must be nonnegative")
    G = loop_gcd(d, ld)
    if a >= 1 and a % G:
        return 0
    out = G * _pearl_edge_weights(d)
    for p in d.pearls:
        out *= ld[p.label] ** (d.valence(p.label) - 1)
    if d.kind is Kind.FLS:
        inf = d.inf_label
        out *= cycle_class(d) * (d.vertex(inf).degree // ld[inf])
    return out


# -- lattice-index oracle -------------------------------------------------


def lattice_matrix(d: Diagram, ld: LoopData, head_choice: bool = True) -> list[list[int]]:
    """Integer matrix of the tori map, rows = conditions, columns = flags.

    Column 2i is the tail flag of edge i and column 2i + 1 its head flag
    (edges in canonical order). Row order: linear-system row (FLS only), edge
    gluing rows, flat-vertex evaluation rows, pearl Menelaus rows.
    """
    check_loop_data(d, ld)

    def k_of(label: int) -> int:
        return ld[label] if d.is_pearl(label) else 1

    edges = d.edges
    ncol = 2 * len(edges)
    rows: list[list[int]] = []
    if d.kind is Kind.FLS:
        row = [0] * ncol
        for i, e in enumerate(edges):
            if head_choice:
                row[2 * i + 1] += e.length * e.weight * k_of(e.dst)
            else:
                row[2 * i] += e.length * e.weight * k_of(e.src)
        rows.append(row)
    for i, e in enumerate(edges):
        row = [0] * ncol
        row[2 * i + 1] = k_of(e.dst)
        row[2 * i] -= k_of(e.src)
        rows.append(row)
    for v in d.flats:
        for i, e in enumerate(edges):
            if e.dst == v.label:
                row = [0] * ncol
                row[2 * i + 1] = 1
                rows.append(row)
            if e.src == v.label:
                row = [0] * ncol
                row[2 * i] = 1
                rows.append(row)
    for p in d.pearls:
        row = [0] * ncol
        for i, e in enumerate(edges):
            if e.dst == p.label:
                row[2 * i + 1] += e.weight
            if e.src == p.label:
                row[2 * i] -= e.weight
        rows.append(row)
    return rows


def minor_gcd(mat: list[list[int]]) -> int:
    """gcd of the maximal minors of a (c + 1) x c matrix, by row reduction."""
    return abs(prod(echelon_diagonal(mat)))


def minor_gcd_bruteforce(mat: list[list[int]]) -> int:
    """Same quantity by expanding every maximal minor (small matrices only)."""
    ncol = len(mat[0])
    if len(mat) != ncol + 1:
        raise ValueError("expected one more row than columns")
    return gcd_of(abs(bareiss_det(mat[:i] + mat[i + 1 :])) for i in range(len(mat)))


def curve_count_oracle(d: Diagram, ld: LoopData, head_choice: bool = True, brute: bool = False) -> int:
    mat = lattice_matrix(d, ld, head_choice)
    idx = minor_gcd_bruteforce(mat) if brute else minor_gcd(mat)
    if d.kind is Kind.POINT:
        return idx
    inf = d.inf_label
    num = idx * d.vertex(inf).degree
    if num % ld[inf]:
        raise ArithmeticError("lattice index not divisible by the loop datum at infinity")
    return num // ld[inf]


# -- sums over loop data --------------------------------------------------


def _admissible(G: int, a: int) -> bool:
    # a = 0: every loop datum contributes (no divisibility condition)
    return a == 0 or a % G == 0


def m_a(d: Diagram, a: int) -> int:
    if a < 0:
        raise ValueError("a must be nonnegative")
    return sum(
        G * xi(d, ld) for ld in loop_data(d) if _admissible(G := loop_gcd(d, ld), a)
    )


def M_a(d: Diagram, a: int) -> HalfLaurent:
    if a < 0:
        raise ValueError("a must be nonnegative")
    total = HalfLaurent.zero()
    for ld in loop_data(d):
        G = loop_gcd(d, ld)
        if _admissible(G, a):
            total = total + Xi(d, ld).scalar_mul(G)
    return total


def m0(d: Diagram) -> int:
    return m_a(d, 0)


def M0(d: Diagram) -> HalfLaurent:
    return M_a(d, 0)


def omega_sum(d: Diagram) -> int:
    return sum(xi(d, ld) for ld in loop_data(d))


def Omega_sum(d: Diagram) -> HalfLaurent:
    total = HalfLaurent.zero()
    for ld in loop_data(d):
        total = total + Xi(d, ld)
    return total


def omega(d: Diagram) -> int:
    """Closed product form of the sum of xi over all loop data."""
    out = _fls_factor(d) * _weight_part(d)
    for p in d.pearls:
        out *= p.degree ** (d.valence(p.label) - 1) * sigma1(p.degree)
    return out


def Omega(d: Diagram) -> HalfLaurent:
    c = _fls_factor(d) * _pearl_edge_weights(d)
    if not c:
        return HalfLaurent.zero()
    poly = HalfLaurent.constant(c)
    for p in d.pearls:
        val = d.valence(p.label)
        flags = _flag_weights(d, p.label)
        local = HalfLaurent.zero()
        for k in divisors(p.degree):
            term = HalfLaurent.constant(k ** (val - 1))
            for w in flags:
                term = term * bracket_minus((p.degree // k) * w)
            local = local + term
        poly = poly * local
    return poly


def _check_k(d: Diagram, k: int) -> None:
    if k < 1 or diagram_gcd(d) % k:
        raise ValueError(f"{k} does not divide the diagram gcd {diagram_gcd(d)}")


def omega_k_sum(d: Diagram, k: int) -> int:
    _check_k(d, k)
    return sum(xi(d, ld) for ld in loop_data(d) if loop_gcd(d, ld) == k)


def Omega_k_sum(d: Diagram, k: int) -> HalfLaurent:
    _check_k(d, k)
    total = HalfLaurent.zero()
    for ld in loop_data(d):
        if loop_gcd(d, ld) == k:
            total = total + Xi(d, ld)
    return total


def omega_exponent(d: Diagram) -> int:
    return 4 * d.genus - 5 if d.kind is Kind.POINT else 4 * d.genus - 3


def Omega_exponent(d: Diagram) -> int:
    return 2 * d.genus - 3 if d.kind is Kind.POINT else 2 * d.genus - 1


def omega_k(d: Diagram, k: int) -> int:
    """Homogeneity route: k^e * omega_1(d / k)."""
    _check_k(d, k)
    return k ** omega_exponent(d) * omega_k_sum(divide(d, k), 1)


def Omega_k(d: Diagram, k: int) -> HalfLaurent:
    _check_k(d, k)
    return Omega_k_sum(divide(d, k), 1).substitute_power(k).scalar_mul(k ** Omega_exponent(d))


def mu1(d: Diagram) -> int:
    return m_a(d, 1)


class DiagramAction:
    """N* acting on diagrams by scaling weights and degrees."""

    def divisors_of(self, d: Diagram) -> list[int]:
        return divisors(diagram_gcd(d))

    def divide(self, d: Diagram, k: int) -> Diagram:
        return divide(d, k)


DIAGRAM_ACTION = DiagramAction()


def mu(d: Diagram) -> int:
    e = 4 * d.genus - 3 if d.kind is Kind.POINT else 4 * d.genus - 1
    return convolve_action(power(e), mu1, d, DIAGRAM_ACTION)


def Upsilon(d: Diagram) -> HalfLaurent:
    e = 2 * d.genus - 2 if d.kind is Kind.POINT else 2 * d.genus
    return convolve_action(pointwise(power(e), euler_phi), M0, d, DIAGRAM_ACTION)


@lru_cache(maxsize=None)
def Upsilon1(d: Diagram) -> HalfLaurent:
    """Primitive-curve refined count, by inverting M0 = sum_k c_k Upsilon1(d/k)(q^{k^2})."""
    total = M0(d)
    for k in divisors(diagram_gcd(d))[1:]:
        c = 1 if d.kind is Kind.POINT else k * k
        total = total - Upsilon1(divide(d, k)).substitute_power(k * k).scalar_mul(c)
    return total


MULTIPLICITIES = {
    "m0": m0,
    "M0": M0,
    "mu": mu,
    "mu1": mu1,
    "Upsilon": Upsilon,
    "Upsilon1": Upsilon1,
    "omega": omega,
    "Omega": Omega,
}


def multiplicity(d: Diagram, name: str):
    """Look up a multiplicity by name; ``m_a:3``, ``M_a:2``, ``omega_k:2``, ``Omega_k:2`` take a parameter."""
    if ":" in name:
        base, arg = name.split(":", 1)
        n = int(arg)
        table = {"m_a": m_a, "M_a": M_a, "omega_k": omega_k, "Omega_k": Omega_k}
        if base not in table:
            raise KeyError(name)
        return table[base](d, n)
    return MULTIPLICITIES[name](d)
