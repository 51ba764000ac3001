from fractions import Fraction

import pytest

from diaglandau.elimination import PolynomialIdeal, contains, same_zero_set
from diaglandau.lattice import IntegerMatrix, extend_to_unimodular
from diaglandau.landau import (
    EMPTY,
    EVERYTHING,
    NONEMPTY,
    DegenerateError,
    DiagonalProblem,
    LandauError,
    check_nondegenerate,
    crosscheck,
    discriminant,
    landau_component,
    landau_direct,
    landau_variety,
    matching_sigma,
    same_union,
    sigma_faces,
    transform,
    u_faces,
)
from diaglandau.laurent import parse
from diaglandau.polytope import newton_polytope

Z3 = ["z1", "z2", "z3"]
Z4 = ["z1", "z2", "z3", "z4"]
TU = ["t", "u1", "u2"]
TTUU = ["t1", "t2", "u1", "u2"]


def hyper_family(level):
    return DiagonalProblem(parse(f"1 - z1 - (z2*z3)^{level} - z3", Z3), [[1, 1, 1]])


def appell():
    return DiagonalProblem(parse("1 - z1 - z2 - z3 - z4", Z4), [[1, 1, 0, 0], [0, 0, 1, 1]])


def test_transform_hyper_family():
    for level in (1, 2, 3):
        expected = parse(f"1 - t*u1^-1*u2^-1 - u1^{level}*u2^{level} - u2", TU)
        assert transform(hyper_family(level)) == expected


def test_transform_appell():
    assert transform(appell()) == parse("1 - t1*u1^-1 - u1 - t2*u2^-1 - u2", TTUU)


def test_problem_shape_and_names():
    p = appell()
    assert (p.n, p.r, p.s) == (4, 2, 2)
    assert p.w_names == TTUU
    assert hyper_family(1).w_names == TU


def test_problem_validation():
    f = parse("1 - z1 - z2", ["z1", "z2"])
    with pytest.raises(LandauError, match="saturated"):
        DiagonalProblem(f, [[2, 0]])
    with pytest.raises(LandauError, match="length"):
        DiagonalProblem(f, [[1, 1, 1]])
    with pytest.raises(LandauError, match="basis"):
        DiagonalProblem(f, [[1, 1]], basis=[[1, 0], [0, 1]])


def test_sigma_faces_hyper_family():
    ft = transform(hyper_family(1))
    sig = sigma_faces(ft, 1)
    truncs = {s.truncation.to_str(TU) for s in sig}
    # every t-dependent face contains the u-exponent (-1, -1) of t/(u1 u2)
    assert all((-1, -1) in s.face.support_points for s in sig)
    assert "-u1*u2 + 1 - t*u1^-1*u2^-1" in truncs
    assert len(sig) == 4
    assert len(u_faces(ft, 1)) == 7


def test_hyper_family_components():
    ft = transform(hyper_family(1))
    results = {s.truncation: landau_component(ft, 1, s) for s in sigma_faces(ft, 1)}
    nonempty = [(t, e) for t, e in results.items() if e.status != EMPTY]
    assert len(nonempty) == 1
    trunc, elim = nonempty[0]
    assert trunc == parse("1 - t*u1^-1*u2^-1 - u1*u2", TU)
    assert elim.to_strs(["t"]) == ["4*t - 1"]


@pytest.mark.parametrize("level, expected", [(2, "27*t^2 - 4"), (3, "256*t^3 - 27")])
def test_hyper_family_higher_levels(level, expected):
    report = landau_variety(hyper_family(level))
    assert [e.result.to_strs(["t"]) for e in report.nonempty] == [[expected]]


def test_appell_union():
    report = landau_variety(appell())
    assert [e.result.to_strs(["t1", "t2"]) for e in report.nonempty] == [
        ["16*t1^2 - 32*t1*t2 + 16*t2^2 - 8*t1 - 8*t2 + 1"]
    ]
    assert report.nonempty[0].face.is_improper


def test_discriminant_statuses():
    assert discriminant(parse("t*u1", TU), 1).status == EMPTY
    assert discriminant(parse("1 - t", TU), 1).status == NONEMPTY
    # the zero polynomial imposes nothing
    assert discriminant(parse("0", TU), 1).status == EVERYTHING


def test_discriminant_of_univariate_quadratic():
    e = discriminant(parse("u^2 - u + t", ["t", "u"]), 1)
    assert e.to_strs(["t"]) == ["4*t - 1"]


def test_landau_direct_hyper_family():
    p = hyper_family(1)
    by_points = {f.support_points: f for f in newton_polytope(p.f.support).faces()}
    tri = frozenset({(0, 0, 0), (1, 0, 0), (0, 1, 1)})
    assert landau_direct(p, by_points[tri]).to_strs(["t"]) == ["4*t - 1"]
    improper = [f for f in by_points.values() if f.is_improper][0]
    assert landau_direct(p, improper).status == EMPTY


def test_matching_sigma_for_improper_face():
    p = appell()
    improper = [f for f in newton_polytope(p.f.support).faces() if f.is_improper][0]
    sig = matching_sigma(p, improper)
    assert sig is not None and sig.face.is_improper


@pytest.mark.parametrize("make", [lambda: hyper_family(1), lambda: hyper_family(2), appell])
def test_crosscheck_agrees_on_every_face(make):
    p = make()
    checks = crosscheck(p)
    assert len(checks) == len(newton_polytope(p.f.support).faces())
    assert all(c.agree for c in checks)
    ft = transform(p)
    for c in checks:
        if c.sigma is not None:
            assert c.dual == landau_component(ft, p.r, c.sigma)


def test_nondegeneracy():
    assert check_nondegenerate(parse("1 - z1 - z2 - z3 - z4", Z4))
    assert check_nondegenerate(hyper_family(2).f)
    bad = check_nondegenerate(parse("1 - 2*z1*z2 + z1^2*z2^2", ["z1", "z2"]))
    assert not bad and bad.witness is not None
    assert contains(bad.witness, parse("z1*z2 - 1", ["z1", "z2"]))


def test_degenerate_problem_raises():
    p = DiagonalProblem(parse("(1 - z1)^2", ["z1"]), [[1]])
    with pytest.raises(DegenerateError) as info:
        landau_variety(p)
    assert not info.value.verdict
    # skipping the check still runs
    assert landau_variety(p, check=False).problem is p


@pytest.mark.parametrize("make", [lambda: hyper_family(1), appell])
def test_basis_choice_independence(make):
    p = make()
    other = DiagonalProblem(p.f, p.Q, basis=extend_to_unimodular(p.Q, "smith"))
    assert other.basis != p.basis
    assert same_union(landau_variety(p), landau_variety(other))
    # shearing the completion by the diagonal directions changes nothing either
    cols = p.basis.columns()
    sheared = cols[: p.r] + [tuple(a + b for a, b in zip(c, cols[0])) for c in cols[p.r:]]
    third = DiagonalProblem(p.f, p.Q, basis=IntegerMatrix.from_columns(sheared))
    assert same_union(landau_variety(p), landau_variety(third))


def test_eliminant_root_matches_critical_value():
    # 1 - z1 - z2: diagonal coefficients C(2k, k), singularity t = 1/4
    p = DiagonalProblem(parse("1 - z1 - z2", ["z1", "z2"]), [[1, 1]])
    (entry,) = landau_variety(p).nonempty
    (g,) = entry.result.generators
    assert g.evaluate([Fraction(1, 4)]) == 0
    assert same_zero_set(entry.result.ideal(), PolynomialIdeal(1, (parse("4*t - 1", ["t"]),)))
