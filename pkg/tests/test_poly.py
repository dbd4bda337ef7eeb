import itertools

import pytest
from hypothesis import given, strategies as st

from resgirth.errors import (
    ConstantPolynomial,
    DivisionByZeroPoly,
    EntrySyntaxError,
    FieldMismatch,
    NoVariables,
    VariableIndexOutOfRange,
    ZeroDenominator,
)
from resgirth.galois import FieldElement, extend_field, make_prime_field
from resgirth.poly import (
    ZZ,
    MultiPoly,
    UniPoly,
    count_irreducibles,
    decompose_last_variable,
    enumerate_monic_irreducibles,
    enumerate_monic_polys,
    is_irreducible,
    parse_entry,
    parse_poly,
    reduce_coefficients_mod_p,
    specialize,
)

F2 = make_prime_field(2)
F3 = make_prime_field(3)
F5 = make_prime_field(5)
F4 = extend_field(F2, [1, 1, 1])


def U(F, *ints):
    return UniPoly.from_ints(F, ints)


def brute_irreducible_count(p, n):
    """Monic degree-n polynomials over F_p minus products of two monic factors."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    def monic(m):
        for low in itertools.product(range(p), repeat=m):
            yield low + (1,)

    reducible = set()
    for a in range(1, n // 2 + 1):
        for f in monic(a):
            for g in monic(n - a):
                reducible.add(mul(f, g))
    return p**n - len(reducible)


# ---------------------------------------------------------------- univariate


def test_uni_examples():
    q, r = U(F2, 1, 1, 1).divrem(U(F2, 1, 1))
    assert (q, r) == (U(F2, 0, 1), U(F2, 1))
    assert U(F2, 0, 1, 1).gcd(U(F2, 1, 1)) == U(F2, 1, 1)
    assert F2.is_zero(U(F2, 1, 0, 1).evaluate(1))


def test_uni_errors():
    with pytest.raises(DivisionByZeroPoly):
        U(F2, 1, 1).divrem(UniPoly(F2))
    with pytest.raises(FieldMismatch):
        U(F2, 1, 1) + U(F3, 1, 1)
    with pytest.raises(ConstantPolynomial):
        is_irreducible(U(F2, 1))


def test_irreducible_examples():
    assert is_irreducible(U(F2, 1, 1, 1))
    assert not is_irreducible(U(F2, 1, 0, 1))
    for F in (F2, F3, F4):
        assert is_irreducible(UniPoly.x(F))


def test_enumerate_irreducibles_examples():
    assert [P.render() for P in enumerate_monic_irreducibles(F2, 1)] == ["t", "t+1"]
    assert [P.render() for P in enumerate_monic_irreducibles(F2, 2)] == ["t^2+t+1"]
    assert [P.render() for P in enumerate_monic_irreducibles(F2, 3)] == ["t^3+t+1", "t^3+t^2+1"]


def test_irreducibility_matches_root_and_factor_search():
    # degree <= 3 over F_3: irreducible iff no root
    for P in enumerate_monic_polys(F3, 3):
        has_root = any(F3.is_zero(P.evaluate(a)) for a in range(3))
        assert is_irreducible(P) == (not has_root)
    # degree 4 over F_2: irreducible iff not divisible by any irreducible of degree 1 or 2
    small = list(enumerate_monic_irreducibles(F2, 1)) + list(enumerate_monic_irreducibles(F2, 2))
    for P in enumerate_monic_polys(F2, 4):
        assert is_irreducible(P) == (not any(g.divides(P) for g in small))


@pytest.mark.parametrize("q, n, N", [(2, 2, 1), (2, 3, 2), (3, 2, 3), (2, 1, 2), (4, 2, 6)])
def test_count_examples(q, n, N):
    assert count_irreducibles(q, n) == N


@pytest.mark.parametrize("q", [2, 3, 5])
def test_count_matches_brute_force(q):
    for n in range(1, 6 if q == 5 else 7):
        N = count_irreducibles(q, n)
        assert N == brute_irreducible_count(q, n)
        assert N * n <= q**n
        assert N * n >= q**n - q ** (n - 1)


@pytest.mark.parametrize("q", [2, 3])
def test_gauss_inversion(q):
    for n in range(1, 9):
        assert sum(d * count_irreducibles(q, d) for d in range(1, n + 1) if n % d == 0) == q**n


def test_count_over_f4_matches_enumeration():
    for n in (1, 2, 3):
        assert count_irreducibles(4, n) == len(list(enumerate_monic_irreducibles(F4, n)))


def test_count_rejects_non_prime_power():
    with pytest.raises(ValueError):
        count_irreducibles(6, 2)


uni_coeffs = st.lists(st.integers(0, 4), min_size=0, max_size=8)


@given(st.sampled_from([F2, F3, F5]), uni_coeffs, uni_coeffs)
def test_divrem_reconstructs(F, a, b):
    f, g = U(F, *a), U(F, *b)
    if g.is_zero():
        return
    q, r = f.divrem(g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(st.sampled_from([F2, F3, F5]), uni_coeffs, uni_coeffs)
def test_gcd_divides_both_and_is_monic(F, a, b):
    f, g = U(F, *a), U(F, *b)
    if f.is_zero() and g.is_zero():
        return
    d = f.gcd(g)
    assert d.leading == F.one
    assert d.divides(f) and d.divides(g)


# -------------------------------------------------------------- multivariate


def test_decompose_examples():
    P = parse_poly("t1*t2+1", 2, 2)
    parts = decompose_last_variable(P)
    assert [x.render() for x in parts] == ["1", "t1"]
    parts = decompose_last_variable(parse_poly("t2^2", 2, 2))
    assert [x.render() for x in parts] == ["0", "0", "1"]
    parts = decompose_last_variable(parse_poly("t1+t1*t2+t2", 2, 2))
    assert [x.render() for x in parts] == ["t1", "t1+1"]
    with pytest.raises(NoVariables):
        decompose_last_variable(MultiPoly.constant(F2, 0, 1))


def test_specialize_examples():
    P = parse_poly("t1*t2+1", 2, 2)
    one, zero = FieldElement(F2, 1), FieldElement(F2, 0)
    assert specialize(P, [one, zero]) == one
    assert specialize(P, [one, None]).render() == "t2+1"
    a = FieldElement(F4, F4.gen)
    Q = parse_poly("t1^2+t2", 2, 2)
    assert specialize(Q, [a, a * a]).is_zero()


def test_specialize_rejects_foreign_field():
    P = parse_poly("t1+1", 1, 2)
    with pytest.raises(FieldMismatch):
        specialize(P, [FieldElement(F3, 1)])


def test_reduce_mod_p_examples():
    assert reduce_coefficients_mod_p(parse_poly("3*t1+5", 1), 3).render() == "2"
    assert reduce_coefficients_mod_p(parse_poly("3*t1+6", 1), 3).is_zero()
    assert reduce_coefficients_mod_p(parse_poly("t1-1", 1), 2).render() == "t1+1"


def test_exact_div():
    A = parse_poly("t1^2-1", 1)
    B = parse_poly("t1+1", 1)
    assert A.exact_div(B) == parse_poly("t1-1", 1)
    assert B.exact_div(A) is None
    assert parse_poly("6", 0).exact_div(parse_poly("4", 0)) is None


@st.composite
def multipolys(draw, F, k=2, deg=3, terms=5):
    d = {}
    for _ in range(draw(st.integers(0, terms))):
        e = tuple(draw(st.integers(0, deg)) for _ in range(k))
        d[e] = draw(st.integers(0, F.order - 1))
    return MultiPoly(F, k, {e: F.from_index(c) for e, c in d.items()})


@given(st.data())
def test_decompose_recombine_roundtrip(data):
    F = data.draw(st.sampled_from([F2, F3, F4]))
    P = data.draw(multipolys(F, k=3))
    if P.degree(2) < 0:
        return
    assert MultiPoly.recombine(P.decompose_last_variable()) == P


@given(st.data())
def test_specialize_is_ring_homomorphism(data):
    F = data.draw(st.sampled_from([F2, F3, F4]))
    P = data.draw(multipolys(F))
    Q = data.draw(multipolys(F))
    pt = [FieldElement(F, F.from_index(data.draw(st.integers(0, F.order - 1)))) for _ in range(2)]
    assert specialize(P * Q, pt) == specialize(P, pt) * specialize(Q, pt)
    assert specialize(P + Q, pt) == specialize(P, pt) + specialize(Q, pt)


@given(st.data())
def test_render_parse_roundtrip(data):
    P = data.draw(multipolys(F3, k=2))
    assert parse_poly(P.render(), 2, 3) == P


int_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-20, 20), max_size=5
).map(lambda d: MultiPoly(ZZ, 2, d))


@given(int_polys)
def test_render_parse_roundtrip_integers(P):
    assert parse_poly(P.render(), 2) == P


@given(int_polys, int_polys)
def test_integer_ring_laws(P, Q):
    assert P * Q == Q * P
    assert (P + Q) - Q == P
    if not Q.is_zero():
        assert (P * Q).exact_div(Q) == P


# --------------------------------------------------------------------- parser


def test_parse_examples():
    e = parse_entry("(t1^2+1)/(2*t2)", 2, 0)
    assert e.num == parse_poly("t1^2+1", 2) and e.den == parse_poly("2*t2", 2)
    e = parse_entry("-3", 0)
    assert e.num.constant_value() == -3 and e.den == 1
    with pytest.raises(ZeroDenominator):
        parse_entry("t1/0", 1)


def test_parse_reduces_mod_p():
    assert parse_poly("5*t1+7", 1, 3).render() == "2*t1+1"


def test_parse_leading_minus_variable():
    assert parse_poly("-t1+2", 1) == parse_poly("-1*t1+2", 1)


@pytest.mark.parametrize("text, pos", [("t1+", 3), ("2*", 2), ("t1 t2", 3), ("(t1", 3), ("t", 1)])
def test_parse_syntax_errors_report_position(text, pos):
    with pytest.raises(EntrySyntaxError) as exc:
        parse_entry(text, 2)
    assert exc.value.pos == pos


def test_parse_variable_out_of_range():
    with pytest.raises(VariableIndexOutOfRange):
        parse_entry("t3", 2)
    with pytest.raises(VariableIndexOutOfRange):
        parse_entry("t0", 2)


def test_rational_entry_arithmetic():
    a = parse_entry("1/t1", 1)
    b = parse_entry("t1", 1)
    assert a * b == 1
    assert (a + a) == parse_entry("2/t1", 1)
    assert (b / b) == 1
    assert parse_entry("(t1^2-1)/(t1+1)", 1).normalized().render() == "t1-1"
