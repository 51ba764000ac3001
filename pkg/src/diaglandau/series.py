"""Laurent coefficients of g/f at a vertex order and its complete diagonals.

For a vertex nu of the Newton polytope write ``f = a_nu z^nu (1 - h)``.  The
support of h lies in the pointed cone of the polytope at nu, so
``g / f = g a_nu^-1 z^-nu sum_k h^k`` is a well-defined Laurent series; it
is the expansion converging on the amoeba complement component of order nu.
All coefficient arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .lattice import IntegerMatrix, as_matrix
from .laurent import Exponent, LaurentPolynomial
from .polytope import newton_polytope


class SeriesError(ValueError):
    pass


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class VertexExpansion:
    """Expansion data of g/f at the vertex ``vertex`` of the Newton polytope of f."""

    f: LaurentPolynomial
    g: LaurentPolynomial
    vertex: Exponent
    grading: Exponent
    prune: tuple[Exponent, ...]
    h: Mapping[Exponent, Fraction]

    @classmethod
    def at(cls, f: LaurentPolynomial, vertex: Sequence[int] | None = None,
           g: LaurentPolynomial | None = None) -> VertexExpansion:
        """Set up the expansion; ``vertex`` defaults to the origin."""
        n = f.arity
        nu = tuple(vertex) if vertex is not None else (0,) * n
        g = g if g is not None else LaurentPolynomial.constant(n)
        poly = newton_polytope(f.support)
        if nu not in poly.vertices:
            raise SeriesError(f"{nu} is not a vertex of the Newton polytope")
        a_nu = f.coefficient(nu)
        h = {
            tuple(a - b for a, b in zip(e, nu)): -c / a_nu
            for e, c in f.items()
            if e != nu
        }
        tight = tuple(nrm for nrm, off in poly.facets if _dot(nrm, nu) == off)
        grading = tuple(sum(col) for col in zip((0,) * n, *tight))
        if h and not all(_dot(grading, e) > 0 for e in h):
            grading = _search_grading(list(h), n)
        # functionals nonnegative on supp h: pruning is safe for each
        prune = (grading,) + tight + tuple(poly.equations) + tuple(
            tuple(-x for x in e) for e in poly.equations
        )
        return cls(f, g, nu, grading, prune, h)


def _search_grading(points: list[Exponent], n: int, radius: int = 4) -> Exponent:
    cands = sorted(product(range(-radius, radius + 1), repeat=n), key=lambda v: (sum(map(abs, v)), v))
    for v in cands:
        if all(_dot(v, p) > 0 for p in points):
            return v
    raise SeriesError("no grading functional found; cone at the vertex is not pointed")


def _geometric_sum(exp: VertexExpansion, targets: Iterable[Exponent]) -> dict[Exponent, Fraction]:
    """Coefficients of ``sum_k h^k`` at every exponent in ``targets``."""
    targets = set(targets)
    n = exp.f.arity
    zero = (0,) * n
    if not targets:
        return {}
    bounds = [(phi, max(_dot(phi, x) for x in targets)) for phi in exp.prune]

    def alive(e: Exponent) -> bool:
        return all(_dot(phi, e) <= b for phi, b in bounds)

    h = list(exp.h.items())
    layer = {zero: Fraction(1)} if alive(zero) else {}
    total: dict[Exponent, Fraction] = dict(layer)
    if not h:
        return {t: total.get(t, Fraction(0)) for t in targets}
    while layer:
        nxt: dict[Exponent, Fraction] = {}
        for e, c in layer.items():
            for d, ch in h:
                m = tuple(a + b for a, b in zip(e, d))
                if alive(m):
                    nxt[m] = nxt.get(m, 0) + c * ch
        layer = {e: c for e, c in nxt.items() if c}
        for e, c in layer.items():
            total[e] = total.get(e, 0) + c
    return {t: total.get(t, Fraction(0)) for t in targets}


def expansion_at(exp: VertexExpansion, points: Iterable[Sequence[int]]) -> dict[Exponent, Fraction]:
    """Laurent coefficients ``c_alpha`` of g/f at the requested exponents."""
    points = [tuple(p) for p in points]
    nu = exp.vertex
    a_nu = exp.f.coefficient(nu)
    g_terms = list(exp.g.items())
    shifted = {
        tuple(b - c + v for b, c, v in zip(beta, gam, nu))
        for beta in points
        for gam, _ in g_terms
    }
    geo = _geometric_sum(exp, shifted)
    out = {}
    for beta in points:
        acc = Fraction(0)
        for gam, gc in g_terms:
            acc += gc * geo[tuple(b - c + v for b, c, v in zip(beta, gam, nu))]
        out[beta] = acc / a_nu
    return out


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients on the box ``lo <= alpha <= hi``; every box point is present."""

    lo: Exponent
    hi: Exponent
    values: Mapping[Exponent, Fraction]

    def __getitem__(self, alpha: Sequence[int]) -> Fraction:
        alpha = tuple(alpha)
        if not all(a <= x <= b for a, x, b in zip(self.lo, alpha, self.hi)):
            raise KeyError(f"{alpha} outside the table")
        return self.values[alpha]

    def nonzero(self) -> dict[Exponent, Fraction]:
        return {k: v for k, v in self.values.items() if v}


def vertex_expansion_coefficients(
    exp: VertexExpansion, lo: Sequence[int], hi: Sequence[int]
) -> CoefficientTable:
    lo, hi = tuple(lo), tuple(hi)
    n = exp.f.arity
    if len(lo) != n or len(hi) != n:
        raise SeriesError("box bounds have wrong dimension")
    if any(a > b for a, b in zip(lo, hi)):
        raise SeriesError("empty box")
    box = list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))
    return CoefficientTable(lo, hi, expansion_at(exp, box))


def diagonal_coefficients(
    exp: VertexExpansion, q: IntegerMatrix | Sequence[Sequence[int]], max_order: int
) -> dict[tuple[int, ...], Fraction]:
    """``c_{Q k}`` for every k with ``|k_i| <= max_order``."""
    q = as_matrix(q)
    if q.cols != exp.f.arity:
        raise SeriesError("Q rows have wrong length")
    ks = list(product(range(-max_order, max_order + 1), repeat=q.rows))
    image = {k: q.transpose().apply(k) for k in ks}
    coeffs = expansion_at(exp, set(image.values()))
    return {k: coeffs[image[k]] for k in ks}


def univariate_diagonal(exp: VertexExpansion, q, max_order: int) -> list[Fraction]:
    """``[c_0, ..., c_max]`` for a rank-one diagonal."""
    d = diagonal_coefficients(exp, q, max_order)
    return [d[(k,)] for k in range(max_order + 1)]


@dataclass(frozen=True)
class RadiusEstimate:
    radius: float
    low: float
    high: float
    residual: float
    points: int

    def relative_error(self, exact: float) -> float:
        return abs(self.radius - exact) / exact


def _log_abs(c) -> float:
    c = Fraction(c)
    return math.log(abs(c.numerator)) - math.log(c.denominator)


def radius_estimate(coeffs: Sequence, count: int | None = None) -> RadiusEstimate:
    """Root-test radius from a least-squares line through ``log|c_k|`` on the tail half.

    Only nonzero coefficients among the first ``count`` enter the fit; the
    interval is the slope estimate +- two standard errors.
    """
    seq = list(coeffs)[: count if count is not None else len(coeffs)]
    tail = [(k, c) for k, c in enumerate(seq) if k >= len(seq) // 2 and c]
    if sum(1 for c in seq if c) < 10 or len(tail) < 3:
        raise SeriesError("too few nonzero coefficients for a radius estimate")
    x = np.array([k for k, _ in tail], dtype=float)
    y = np.array([_log_abs(c) for _, c in tail])
    design = np.column_stack([x, np.ones_like(x)])
    (slope, icept), *_ = np.linalg.lstsq(design, y, rcond=None)
    fit = design @ np.array([slope, icept])
    resid = y - fit
    dof = max(len(x) - 2, 1)
    sigma2 = float(resid @ resid) / dof
    se = math.sqrt(sigma2 / float(((x - x.mean()) ** 2).sum()))
    radius = math.exp(-slope)
    return RadiusEstimate(
        radius=radius,
        low=math.exp(-slope - 2 * se),
        high=math.exp(-slope + 2 * se),
        residual=math.sqrt(float(resid @ resid) / len(x)),
        points=len(x),
    )


def smallest_positive_root(poly: LaurentPolynomial) -> float | None:
    """Smallest positive real root of a univariate polynomial, numerically."""
    if poly.arity != 1:
        raise SeriesError("expected a univariate polynomial")
    p = poly.clear_denominators()
    deg = p.degree()
    coeffs = [float(p.coefficient((deg - i,))) for i in range(deg + 1)]
    if deg == 0:
        return None
    roots = np.roots(coeffs)
    pos = [z.real for z in roots if abs(z.imag) <= 1e-9 * max(1.0, abs(z)) and z.real > 0]
    return min(pos) if pos else None
