import math
import random
from fractions import Fraction
from itertools import product

import pytest

from diaglandau.laurent import LaurentPolynomial, parse
from diaglandau.series import (
    SeriesError,
    VertexExpansion,
    diagonal_coefficients,
    expansion_at,
    radius_estimate,
    smallest_positive_root,
    univariate_diagonal,
    vertex_expansion_coefficients,
)

Z2 = ["z1", "z2"]
Z3 = ["z1", "z2", "z3"]


def recurrence_oracle(f, g, hi):
    """Taylor coefficients of g/f from f*F = g, solved in graded order."""
    n = f.arity
    zero = (0,) * n
    a0 = f.coefficient(zero)
    out = {}
    for beta in sorted(product(*(range(h + 1) for h in hi)), key=sum):
        acc = g.coefficient(beta)
        for alpha, c in f.items():
            if alpha == zero:
                continue
            prev = tuple(b - a for a, b in zip(alpha, beta))
            if all(x >= 0 for x in prev):
                acc -= c * out[prev]
        out[beta] = acc / a0
    return out


def multinomial_hyper_family(level, k):
    # coefficient of (z1 z2 z3)^k in 1/(1 - z1 - (z2 z3)^level - z3)
    if k % level:
        return 0
    b = k // level
    return math.comb(k + b, b)


def test_central_binomials():
    exp = VertexExpansion.at(parse("1 - z1 - z2", Z2))
    assert univariate_diagonal(exp, [[1, 1]], 20) == [math.comb(2 * k, k) for k in range(21)]


@pytest.mark.parametrize("level", [1, 2, 3])
def test_hyper_family_multinomial_oracle(level):
    f = parse(f"1 - z1 - (z2*z3)^{level} - z3", Z3)
    coeffs = univariate_diagonal(VertexExpansion.at(f), [[1, 1, 1]], 24)
    assert coeffs == [multinomial_hyper_family(level, k) for k in range(25)]


def test_appell_diagonal_values():
    f = parse("1 - z1 - z2 - z3 - z4", ["z1", "z2", "z3", "z4"])
    d = diagonal_coefficients(VertexExpansion.at(f), [[1, 1, 0, 0], [0, 0, 1, 1]], 3)
    # c_(k1,k1,k2,k2) = (2k1 + 2k2)! / (k1!^2 k2!^2)
    for (k1, k2), v in d.items():
        if k1 < 0 or k2 < 0:
            assert v == 0
        else:
            fact = math.factorial
            assert v == fact(2 * k1 + 2 * k2) // (fact(k1) ** 2 * fact(k2) ** 2)
    assert d[(1, 0)] == 2 and d[(1, 1)] == 24


def test_taylor_matches_recurrence_with_numerator():
    f = parse("2 - z1 + 3*z1*z2 - z2^2", Z2)
    g = parse("1 + z1 - 4*z2", Z2)
    table = vertex_expansion_coefficients(VertexExpansion.at(f, g=g), (0, 0), (6, 6))
    assert dict(table.values) == recurrence_oracle(f, g, (6, 6))


def test_negative_box_entries_vanish_in_taylor_case():
    exp = VertexExpansion.at(parse("1 - z1 - z2", Z2))
    table = vertex_expansion_coefficients(exp, (-2, -2), (2, 2))
    assert table[(-1, 0)] == 0 and table[(2, 2)] == 6
    with pytest.raises(KeyError):
        table[(3, 0)]


def test_expansion_at_other_vertex():
    # 1/(z1 - 1) expanded at the vertex z1: sum_k z1^(-1-k)
    f = parse("z1 - 1", ["z1"])
    exp = VertexExpansion.at(f, vertex=(1,))
    got = expansion_at(exp, [(-1,), (-3,), (0,), (2,)])
    assert got == {(-1,): 1, (-3,): 1, (0,): 0, (2,): 0}


def test_expansion_at_laurent_vertex_is_inverse():
    # the truncated product f * F equals g on a region not affected by truncation
    f = parse("z1^-1 + 3 + z2 - z1*z2", Z2)
    exp = VertexExpansion.at(f, vertex=(0, 0))
    pts = [(a, b) for a in range(-6, 7) for b in range(-6, 7)]
    c = expansion_at(exp, pts)
    for beta in [(0, 0), (1, 0), (0, 1), (-1, 2), (2, 1)]:
        acc = sum(
            coef * c.get(tuple(b - a for a, b in zip(alpha, beta)), 0) for alpha, coef in f.items()
        )
        assert acc == (1 if beta == (0, 0) else 0)


def test_not_a_vertex():
    with pytest.raises(SeriesError):
        VertexExpansion.at(parse("1 - z1 - z2 + z1*z2", Z2), vertex=(1, 2))


def test_radius_estimates():
    cbc = [math.comb(2 * k, k) for k in range(40)]
    est = radius_estimate(cbc)
    assert est.relative_error(0.25) < 0.05
    assert est.low <= est.radius <= est.high
    with pytest.raises(SeriesError):
        radius_estimate([1, 2, 3])


def test_smallest_positive_root():
    assert smallest_positive_root(parse("4*t - 1", ["t"])) == pytest.approx(0.25)
    assert smallest_positive_root(parse("27*t^2 - 4", ["t"])) == pytest.approx(2 / math.sqrt(27))
    assert smallest_positive_root(parse("t + 1", ["t"])) is None


def random_taylor_denominator(rng, n, size):
    terms = {(0,) * n: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))}
    while len(terms) < size:
        e = tuple(rng.randint(0, 3) for _ in range(n))
        if any(e):
            terms[e] = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3))
    return LaurentPolynomial(n, terms)


def test_random_taylor_against_recurrence():
    rng = random.Random(2024)
    for _ in range(4):
        n = rng.randint(1, 3)
        f = random_taylor_denominator(rng, n, rng.randint(2, 5))
        g = random_taylor_denominator(rng, n, 2)
        hi = (5,) * n
        table = vertex_expansion_coefficients(VertexExpansion.at(f, g=g), (0,) * n, hi)
        assert dict(table.values) == recurrence_oracle(f, g, hi)
