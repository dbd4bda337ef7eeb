import json
import random
from collections import Counter

import pytest

from resgirth.errors import (
    BadCharacteristic,
    BallBudgetExceeded,
    DenominatorVanishes,
    NonSquareMatrix,
    SchemaError,
    SingularGenerator,
)
from resgirth.galois import FieldElement, extend_field, make_prime_field
from resgirth.girth import fit_growth_exponent
from resgirth.matgroup import (
    LinearGroup,
    Reduction,
    entry_bounds,
    entry_product,
    group_spec_from_dict,
    growth_table,
    load_group_spec,
    normalize_generating_set,
    reduce_matrix,
    rmat_inverse,
    rmat_mul,
)
from resgirth.poly import ZZ, MultiPoly, parse_poly
from resgirth.survival import Specialization

SPECS = ["heisenberg", "unipotent_z", "lamplighter_f2", "z_wr_z"]
F2 = make_prime_field(2)
F4 = extend_field(F2, [1, 1, 1])


def spec(gens, d=2, char=0, k=0, **kw):
    return group_spec_from_dict({"d": d, "characteristic": char, "k": k, "generators": gens, **kw})


def group(gens, **kw):
    return LinearGroup(spec(gens, **kw))


@pytest.fixture(scope="module")
def groups():
    return {name: LinearGroup.load(name) for name in SPECS}


# ------------------------------------------------------------ brute-force oracles


def heisenberg_words(n):
    """Triples (a, b, c) of [[1,a,c],[0,1,b],[0,0,1]] reached by words of length <= n."""

    def mul(u, v):
        return (u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[0] * v[1])

    gens = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]
    level = {(0, 0, 0)}
    seen = set(level)
    for _ in range(n):
        level = {mul(x, g) for x in level for g in gens}
        seen |= level
    return seen


def affine_words(n, char):
    """Elements [[t^a, f],[0,1]] of the lamplighter (char 2) or Z wr Z (char 0).

    ``f`` is a Laurent polynomial stored as a sorted tuple of (exponent, coefficient).
    """

    def mul(u, v):
        a1, f1 = u
        a2, f2 = v
        acc = Counter(dict(f1))
        for e, c in f2:
            acc[e + a1] += c
        if char:
            items = tuple(sorted((e, c % char) for e, c in acc.items() if c % char))
        else:
            items = tuple(sorted((e, c) for e, c in acc.items() if c))
        return (a1 + a2, items)

    gens = [(1, ()), (-1, ()), (0, ((0, 1),)), (0, ((0, -1 % char if char else -1),))]
    level = {(0, ())}
    seen = set(level)
    sizes = [1]
    for _ in range(n):
        level = {mul(x, g) for x in level for g in gens}
        seen |= level
        sizes.append(len(seen))
    return sizes


# ---------------------------------------------------------------- loading


def test_bundled_specs_load(groups):
    H = groups["heisenberg"]
    assert (H.d, H.k, H.characteristic, H.s) == (3, 0, 0, 5)
    L = groups["lamplighter_f2"]
    assert (L.d, L.k, L.characteristic, L.spec.q) == (2, 1, 2, 2)


def test_load_from_path_and_file(tmp_path):
    data = {"d": 2, "characteristic": 0, "generators": [[["1", "1"], ["0", "1"]]]}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(data))
    assert load_group_spec(p).d == 2
    with open(p) as fh:
        assert load_group_spec(fh).d == 2


@pytest.mark.parametrize("data, exc", [
    ({"d": 2, "characteristic": 0, "generators": [[["1", "1", "0"], ["0", "1", "0"]]]}, NonSquareMatrix),
    ({"d": 2, "characteristic": 0, "generators": [[["1", "1"], ["1", "1"]]]}, SingularGenerator),
    ({"d": 2, "characteristic": 4, "generators": [[["1", "1"], ["0", "1"]]]}, BadCharacteristic),
    ({"d": 2, "characteristic": 2, "q": 9, "generators": [[["1", "1"], ["0", "1"]]]}, BadCharacteristic),
    ({"d": 2, "characteristic": 0, "generators": []}, SchemaError),
    ({"characteristic": 0, "generators": [[["1"]]]}, SchemaError),
    ({"d": 3, "characteristic": 0, "generators": [[["1", "1"], ["0", "1"]]]}, SchemaError),
    ({"d": 1, "characteristic": 0, "generators": [[[True]]]}, SchemaError),
])
def test_schema_errors(data, exc):
    with pytest.raises(exc):
        group_spec_from_dict(data)


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_group_spec(p)


# ------------------------------------------------------- generating sets


def test_normalize_unipotent():
    S = normalize_generating_set(spec([[["1", "1"], ["0", "1"]]]).generators)
    assert len(S) == 3


def test_normalize_already_symmetric_unchanged():
    gens = spec([[["1", "0"], ["0", "1"]], [["1", "1"], ["0", "1"]], [["1", "-1"], ["0", "1"]]]).generators
    S = normalize_generating_set(gens, symmetrize=False)
    assert len(S) == 3


def test_normalize_rejects_asymmetric_without_auto():
    gens = spec([[["1", "1"], ["0", "1"]]]).generators
    with pytest.raises(SchemaError):
        normalize_generating_set(gens, symmetrize=False)


def test_inverse_by_adjugate():
    M = spec([[["t1", "1"], ["0", "1"]]], k=1).generators[0]
    P = rmat_mul(M, rmat_inverse(M))
    assert all(P[i][j] == (1 if i == j else 0) for i in range(2) for j in range(2))


# ---------------------------------------------------- clearing and bounds


def test_clear_integer_matrices(groups):
    c = groups["heisenberg"].cleared
    assert (c.lam, c.r) == (0, 1) and c.Q == 1


def test_clear_lamplighter(groups):
    c = groups["lamplighter_f2"].cleared
    t = parse_poly("t1", 1, 2)
    assert c.Q == t and c.lam == 1
    # S = Q^-lam T entrywise
    for M, T in zip(c.S, c.T):
        for i, row in enumerate(M):
            for j, e in enumerate(row):
                assert e.num * (c.Q ** c.lam) == T[i * 2 + j] * e.den


def test_clear_z_wr_z(groups):
    c = groups["z_wr_z"].cleared
    assert c.Q == parse_poly("t1", 1) and c.r == 1 and c.lam == 1


def test_clear_splits_integer_content():
    G = group([[["1/6", "0"], ["0", "6"]]])
    assert G.cleared.r == 6 and G.cleared.Q == 1 and G.cleared.lam == 1
    G = group([[["1/(2*t1+4)", "0"], ["0", "2*t1+4"]]], k=1)
    c = G.cleared
    assert c.r == 2 and c.Q == parse_poly("t1+2", 1)
    assert c.Q.content() == 1


def test_entry_bounds(groups):
    b = entry_bounds(groups["heisenberg"].cleared)
    assert (b.m, b.delta, b.s, b.R, b.M) == (0, 0, 5, 1, 1)
    b = entry_bounds(groups["unipotent_z"].cleared)
    assert (b.s, b.R, b.M) == (3, 1, 1)
    # t1*diag(t1, 1) has degree 2; b = b^-1 in characteristic 2 so |S| = 4
    b = entry_bounds(groups["lamplighter_f2"].cleared)
    assert (b.m, b.delta, b.s) == (2, 1, 4)


def test_entry_product():
    zero = [[MultiPoly.zero(ZZ, 1)] * 2] * 2
    assert entry_product(zero) == 1
    assert entry_product([[1, 0], [0, 1]]) == 1
    assert entry_product([[1, 2], [0, 3]]) == 6
    P = parse_poly("t1+1", 1)
    assert entry_product([[P, MultiPoly.zero(ZZ, 1)], [P, P]]) == P ** 3


# --------------------------------------------------------------------- balls


def test_unipotent_ball(groups):
    G = groups["unipotent_z"]
    assert len(G.ball(3)) == 7
    assert growth_table(G, 10) == {n: 2 * n + 1 for n in range(11)}


def test_heisenberg_ball_matches_word_oracle(groups):
    G = groups["heisenberg"]
    assert len(G.ball(1)) == 5
    for n in range(0, 7):
        assert len(G.ball(n)) == len(heisenberg_words(n))


@pytest.mark.parametrize("name, char", [("lamplighter_f2", 2), ("z_wr_z", 0)])
def test_affine_balls_match_oracle(groups, name, char):
    table = growth_table(groups[name], 7)
    assert list(table.values()) == affine_words(7, char)


def test_lamplighter_grows_exponentially(groups):
    table = growth_table(groups["lamplighter_f2"], 12)
    assert all(table[n + 1] / table[n] >= 1.5 for n in range(6, 12))


def test_heisenberg_growth_exponent(groups):
    table = growth_table(groups["heisenberg"], 20)
    slope = fit_growth_exponent({n: table[n] for n in range(8, 21)})
    assert 3.4 <= slope <= 4.6


@pytest.mark.parametrize("name", SPECS)
def test_ball_nesting_and_inverse_closure(groups, name):
    G = groups[name]
    for n in range(0, 4):
        small, big = G.ball(n), G.ball(n + 1)
        assert set(small.elements) <= set(big.elements)
        elems = set(small.elements)
        for y in small.elements:
            assert any(G.domain.is_identity(G.domain.mul(y, z)) for z in elems)


def test_word_lengths_are_distances(groups):
    G = groups["heisenberg"]
    ball = G.ball(4)
    for n in range(5):
        assert all(L <= n for L in ball.lengths[: ball.size(n)])
        assert all(L > n for L in ball.lengths[ball.size(n):])


def test_ball_budget_env(monkeypatch):
    monkeypatch.setenv("GIRTH_BALL_BUDGET", "10")
    G = LinearGroup.load("heisenberg")
    with pytest.raises(BallBudgetExceeded):
        G.ball(3)
    monkeypatch.setenv("GIRTH_BALL_BUDGET", "zero")
    with pytest.raises(SchemaError):
        LinearGroup.load("heisenberg")


def test_ball_budget_argument():
    G = LinearGroup.load("heisenberg", ball_budget=20)
    assert len(G.ball(2)) == 17
    with pytest.raises(BallBudgetExceeded):
        G.ball(3)


# ---------------------------------------------------------------- reduction


def test_reduce_integer_matrix():
    G = group([[["1", "1"], ["0", "1"]]])
    red = Reduction(G, prime=5)
    M = reduce_matrix(G.S[1], red)
    assert [[x.value for x in row] for row in M] == [[1, 1], [0, 1]]


def test_reduce_with_specialization():
    G = group([[["1", "t1"], ["0", "1"]]], char=2, k=1)
    a = F4.gen
    sp = Specialization(k=1, base=F2, field=F4, assignment=(a,))
    M = reduce_matrix(G.S[1], Reduction(G, specialization=sp))
    assert M == [[FieldElement(F4, F4.one), FieldElement(F4, a)],
                 [FieldElement(F4, F4.zero), FieldElement(F4, F4.one)]]


def test_reduce_denominator_vanishes(groups):
    G = groups["lamplighter_f2"]
    sp = Specialization(k=1, base=F2, field=F2, assignment=(0,))
    with pytest.raises(DenominatorVanishes):
        Reduction(G, specialization=sp)
    with pytest.raises(DenominatorVanishes):
        Reduction(group([[["1/3", "0"], ["0", "3"]]]), prime=3)


@pytest.mark.parametrize("name, prime, point", [
    ("heisenberg", 7, None), ("z_wr_z", 5, (2,)), ("lamplighter_f2", 2, "gen"),
])
def test_reduction_is_homomorphism(groups, name, prime, point):
    G = groups[name]
    sp = None
    if point is not None:
        F = F4 if point == "gen" else make_prime_field(prime)
        assign = (F4.gen,) if point == "gen" else point
        sp = Specialization(k=1, base=F, field=F, assignment=assign)
    red = Reduction(G, prime=prime, specialization=sp)
    F = red.field
    d = G.d
    elems = G.ball(4).elements
    rng = random.Random(7)

    def matmul(a, b):
        out = []
        for i in range(d):
            for j in range(d):
                acc = F.zero
                for l in range(d):
                    acc = F.add(acc, F.mul(a[i * d + l], b[l * d + j]))
                out.append(acc)
        return tuple(out)

    for _ in range(1000):
        u, v = rng.choice(elems), rng.choice(elems)
        assert red.element(G.domain.mul(u, v)) == matmul(red.element(u), red.element(v))


@pytest.mark.parametrize("name", ["heisenberg", "unipotent_z", "z_wr_z"])
def test_coefficient_bound_on_t_balls(groups, name):
    G = groups[name]
    c = G.cleared
    b = G.bounds
    for n in range(1, 4):
        bound = G.d ** (2 * n - 1) * (b.R * b.M) ** (2 * n)
        top = 2 * n * c.lam
        for g in G.ball(2 * n).elements:
            if G.k == 0:
                scale = c.r ** top
                vals = [x * scale for x in g]
                assert all(abs(v) <= bound for v in vals)
            else:
                e, A = g
                factor = c.D ** (top - e)
                for P in A:
                    Y = P * factor
                    assert Y.max_abs_coeff() <= bound if not Y.is_zero() else True
                    assert all(x <= 2 * n * b.m for x in Y.degrees())
