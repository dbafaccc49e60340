import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pearlcount import mult
from pearlcount.arith import divisors, sigma1
from pearlcount.diagrams import Diagram, Edge, Kind, Vertex, diagram_gcd, divide, enumerate_diagrams, multiply
from pearlcount.qpoly import HalfLaurent, bracket_minus, eval_at_one, exact_divide


def prim(n):
    """Genus-2 primitive diagram: pearl 1 of degree n, flat vertex 2."""
    return Diagram(Kind.POINT, 2, (Vertex(1, True, n), Vertex(2, False)), (Edge(1, 2, 1, 0), Edge(2, 1, 1, 1)))


def small_diagrams(kinds=(Kind.POINT, Kind.FLS), genera=(2, 3), max_product=4):
    out = []
    for kind in kinds:
        for g in genera:
            for d1 in range(1, max_product + 1):
                for d2 in range(1, max_product // d1 + 1):
                    out.extend(enumerate_diagrams(g, d1, d2, kind))
    return out


SMALL = small_diagrams()
NONPRIM = [d for d in SMALL + small_diagrams(genera=(2, 3), max_product=6) if diagram_gcd(d) > 1]
sq = lambda k: bracket_minus(k) ** 2  # noqa: E731


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_xi_examples(n):
    d = prim(n)
    assert mult.xi(d, {1: 1}) == n * n
    assert mult.xi(d, {1: n}) == n
    assert mult.Xi(d, {1: 1}) == sq(n)
    assert mult.Xi(d, {1: n}) == sq(1).scalar_mul(n)


def test_unit_diagram():
    d = prim(1)
    assert mult.xi(d, {1: 1}) == 1
    assert mult.curve_count(d, {1: 1}, 0) == 1
    assert mult.curve_count(d, {1: 1}, 5) == 1
    assert mult.curve_count_oracle(d, {1: 1}) == 1


def test_curve_count_examples():
    n = 6
    assert mult.curve_count(prim(n), {1: n}, 1) == n
    assert mult.curve_count_oracle(prim(n), {1: n}) == n
    doubled = multiply(prim(1), 2)
    assert mult.curve_count(doubled, {1: 2}, 1) == 0
    assert mult.curve_count(doubled, {1: 2}, 2) == mult.curve_count(doubled, {1: 2}, 0) > 0


def test_bad_loop_data():
    with pytest.raises(mult.InvalidLoopData):
        mult.xi(prim(4), {1: 3})
    with pytest.raises(mult.InvalidLoopData):
        mult.Xi(prim(4), {2: 1})


@pytest.mark.parametrize("n", range(1, 9))
def test_primitive_genus_two_sums(n):
    d = prim(n)
    assert mult.m0(d) == mult.m_a(d, 1) == n * sigma1(n)
    assert mult.omega(d) == mult.omega_sum(d) == n * sigma1(n)
    expected = HalfLaurent.zero()
    for k in divisors(n):
        expected = expected + sq(n // k).scalar_mul(k)
    assert mult.M_a(d, 1) == mult.Omega(d) == expected
    assert mult.mu(d) == mult.mu1(d) == mult.m0(d)
    assert mult.Upsilon(d) == mult.M0(d)
    assert mult.omega_k(d, 1) == mult.omega(d)


def test_oracle_equivalence_small():
    count = 0
    for d in SMALL:
        for ld in mult.loop_data(d):
            c = mult.curve_count(d, ld, 0)
            assert c == mult.curve_count_oracle(d, ld), (str(d), ld)
            if d.kind is Kind.FLS:
                assert c == mult.curve_count_oracle(d, ld, head_choice=False)
            count += 1
    assert count > 200


def test_fast_minor_gcd_matches_enumeration():
    for d in SMALL[::3]:
        for ld in mult.loop_data(d):
            m = mult.lattice_matrix(d, ld)
            if len(m[0]) <= 9:
                assert mult.minor_gcd(m) == mult.minor_gcd_bruteforce(m)


@pytest.mark.parametrize("d", NONPRIM, ids=str)
def test_homogeneity(d):
    for k in divisors(diagram_gcd(d)):
        assert mult.omega_k(d, k) == mult.omega_k_sum(d, k)
        assert mult.Omega_k(d, k) == mult.Omega_k_sum(d, k)


def test_homogeneity_rejects_non_divisor():
    with pytest.raises(ValueError):
        mult.omega_k(prim(3), 2)


@pytest.mark.parametrize("d", SMALL + NONPRIM, ids=str)
def test_closed_forms_and_unwinding(d):
    assert mult.omega(d) == mult.omega_sum(d)
    assert mult.Omega(d) == mult.Omega_sum(d)
    ks = divisors(diagram_gcd(d))
    assert mult.m0(d) == sum(k * mult.omega_k_sum(d, k) for k in ks)
    M0 = HalfLaurent.zero()
    for k in ks:
        M0 = M0 + mult.Omega_k_sum(d, k).scalar_mul(k)
    assert mult.M0(d) == M0
    # primitive curve count two ways
    assert mult.mu1(d) == mult.m0(d) - sum(k * mult.omega_k(d, k) for k in ks[1:])


@pytest.mark.parametrize("d", SMALL + NONPRIM, ids=str)
def test_specialization(d):
    den = bracket_minus(1) ** (2 * d.genus - 2)
    for a in (0, 1, 2):
        assert eval_at_one(exact_divide(mult.M_a(d, a), den)) == mult.m_a(d, a)


def test_mu_divisor_expansion_genus_two():
    for n in (1, 2, 3):
        d = multiply(prim(n), 2)
        assert diagram_gcd(d) % 2 == 0
        expected = sum(k**5 * mult.mu1(divide(d, k)) for k in divisors(diagram_gcd(d)))
        assert mult.mu(d) == expected
    d = multiply(prim(1), 2)
    assert mult.mu(d) == mult.mu1(d) + 2**5 * mult.mu1(divide(d, 2))


def test_upsilon_one_inverts_m0():
    for d in NONPRIM:
        total = HalfLaurent.zero()
        for k in divisors(diagram_gcd(d)):
            c = 1 if d.kind is Kind.POINT else k * k
            total = total + mult.Upsilon1(divide(d, k)).substitute_power(k * k).scalar_mul(c)
        assert total == mult.M0(d)


def test_convolve_action_counts_divisors():
    from pearlcount.arith import convolve_action, power

    d = multiply(prim(1), 2)
    assert convolve_action(power(0), lambda _: 1, d, mult.DIAGRAM_ACTION) == 2


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(["m0", "M0", "mu", "Upsilon", "omega", "Omega", "m_a:1", "M_a:2"]))
def test_multiplicity_lookup(d, name):
    v = mult.multiplicity(d, name)
    assert isinstance(v, (int, HalfLaurent))


def test_multiplicity_lookup_unknown():
    with pytest.raises(KeyError):
        mult.multiplicity(prim(1), "nope")
    with pytest.raises(KeyError):
        mult.multiplicity(prim(1), "zeta:2")
