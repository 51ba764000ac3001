"""Landau variety of the complete Q-diagonal of g/f.

The construction passes to coordinates ``z = w^A`` in which the diagonal
directions become the first r coordinates ``t`` and the remaining ones are
``u``.  For every face sigma of the u-Newton polytope whose truncation
involves t, the discriminant set ``L_sigma`` is the projection to t of the
torus solutions of ``f_sigma = u_j d f_sigma / d u_j = 0``.  The union of
these sets contains all singularities of the diagonal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .elimination import (
    DEFAULT_SPAIR_CAP,
    MonomialOrder,
    PolynomialIdeal,
    _eliminate_with_saturation,
    groebner,
    is_trivial,
    same_zero_set,
    torus_eliminant,
)
from .lattice import IntegerMatrix, as_matrix, extend_to_unimodular, inverse_unimodular, is_saturated
from .laurent import LaurentPolynomial, monomial_substitute, truncate_to_face
from .polytope import Face, newton_polytope

log = logging.getLogger(__name__)

EMPTY = "empty"
NONEMPTY = "nonempty"
EVERYTHING = "everything"


class LandauError(ValueError):
    pass


def indexed_names(prefix: str, count: int) -> list[str]:
    if count == 1:
        return [prefix]
    return [f"{prefix}{i + 1}" for i in range(count)]


@dataclass(frozen=True)
class DiagonalProblem:
    """Rational function g/f with diagonal directions given by the rows of Q."""

    f: LaurentPolynomial
    Q: IntegerMatrix
    g: LaurentPolynomial | None = None
    names: tuple[str, ...] | None = None
    basis: IntegerMatrix | None = None

    def __post_init__(self):
        q = as_matrix(self.Q)
        object.__setattr__(self, "Q", q)
        n = self.f.arity
        if q.rows and q.cols != n:
            raise LandauError(f"Q rows have length {q.cols}, expected {n}")
        if self.g is None:
            object.__setattr__(self, "g", LaurentPolynomial.constant(n))
        elif self.g.arity != n:
            raise LandauError("numerator and denominator have different arity")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"z{i + 1}" for i in range(n)))
        if q.rows and not is_saturated(q):
            raise LandauError("the rows of Q do not generate a saturated sublattice")
        if self.basis is None:
            b = extend_to_unimodular(q) if q.rows else IntegerMatrix.identity(n)
            object.__setattr__(self, "basis", b)
        else:
            b = as_matrix(self.basis)
            if not b.is_unimodular() or any(
                b.column(j) != q.row(j) for j in range(q.rows)
            ):
                raise LandauError("basis must be unimodular with Q as its first columns")
            object.__setattr__(self, "basis", b)

    @property
    def n(self) -> int:
        return self.f.arity

    @property
    def r(self) -> int:
        return self.Q.rows

    @property
    def s(self) -> int:
        return self.n - self.r

    @property
    def A(self) -> IntegerMatrix:
        return inverse_unimodular(self.basis)

    @property
    def t_names(self) -> list[str]:
        return indexed_names("t", self.r)

    @property
    def u_names(self) -> list[str]:
        return indexed_names("u", self.s)

    @property
    def w_names(self) -> list[str]:
        return self.t_names + self.u_names


def transform(problem: DiagonalProblem) -> LaurentPolynomial:
    """``f`` rewritten in the coordinates ``(t, u) = w`` with ``z = w^A``."""
    return monomial_substitute(problem.f, problem.A)


# ----------------------------------------------------------------- faces


@dataclass(frozen=True)
class SigmaFace:
    face_id: int
    face: Face
    truncation: LaurentPolynomial
    depends_on_t: bool


def u_truncation(ftilde: LaurentPolynomial, r: int, face: Face) -> LaurentPolynomial:
    """Terms of ``ftilde`` whose u-exponent lies on ``face``."""
    keep = face.support_points
    return LaurentPolynomial(ftilde.arity, {e: c for e, c in ftilde.items() if e[r:] in keep})


def u_faces(ftilde: LaurentPolynomial, r: int) -> list[SigmaFace]:
    """All faces of the u-Newton polytope with their truncations."""
    poly = newton_polytope({e[r:] for e in ftilde.support})
    out = []
    for k, face in enumerate(poly.faces()):
        trunc = u_truncation(ftilde, r, face)
        out.append(SigmaFace(k, face, trunc, trunc.depends_on(range(r))))
    return out


def sigma_faces(ftilde: LaurentPolynomial, r: int) -> list[SigmaFace]:
    """Faces of the u-Newton polytope whose truncation depends on t."""
    if r == 0:
        return []
    return [sf for sf in u_faces(ftilde, r) if sf.depends_on_t]


# --------------------------------------------------------- discriminants


@dataclass(frozen=True)
class Eliminant:
    """Torus part of a discriminant set, as an ideal in the t variables."""

    status: str
    generators: tuple[LaurentPolynomial, ...]

    def to_strs(self, names: Sequence[str]) -> list[str]:
        return [g.to_str(names) for g in self.generators]

    def ideal(self) -> PolynomialIdeal:
        r = self.generators[0].arity if self.generators else 0
        return PolynomialIdeal(r, self.generators, MonomialOrder(), True)


def _eliminant_from(ideal: PolynomialIdeal, keep: Sequence[int], spair_cap: int) -> Eliminant:
    result = torus_eliminant(ideal, keep, spair_cap)
    gens = tuple(g.restrict(keep) for g in result.generators)
    if not gens:
        return Eliminant(EVERYTHING, ())
    if any(g.degree() == 0 for g in gens):
        return Eliminant(EMPTY, ())
    return Eliminant(NONEMPTY, gens)


def critical_system(truncation: LaurentPolynomial, variables: Sequence[int]) -> list[LaurentPolynomial]:
    """``[f, x_j df/dx_j for j in variables]`` (logarithmic form)."""
    return [truncation] + [truncation.log_derivative(j) for j in variables]


def discriminant(truncation: LaurentPolynomial, r: int, spair_cap: int = DEFAULT_SPAIR_CAP) -> Eliminant:
    """t-values admitting a torus point u with ``f = u_j df/du_j = 0`` for all j."""
    n = truncation.arity
    if truncation.is_monomial() or truncation.is_zero():
        return Eliminant(EMPTY, ()) if not truncation.is_zero() else Eliminant(EVERYTHING, ())
    system = critical_system(truncation, range(r, n))
    ideal = PolynomialIdeal.from_laurent(system, n)
    return _eliminant_from(ideal, range(r), spair_cap)


def landau_component(
    ftilde: LaurentPolynomial, r: int, sigma: SigmaFace, spair_cap: int = DEFAULT_SPAIR_CAP
) -> Eliminant:
    return discriminant(sigma.truncation, r, spair_cap)


def landau_direct(
    problem: DiagonalProblem, face: Face, spair_cap: int = DEFAULT_SPAIR_CAP
) -> Eliminant:
    """``L_delta`` straight from the rank drop of ``M_delta`` in z-coordinates.

    The ring is ``Q[z_1..z_n, t_1..t_r]``.  Besides ``f_delta`` and the
    maximal minors of ``M_delta``, the generators tie t to the image of the
    monomial map: ``t_j z^(q_j^-) - z^(q_j^+)``.
    """
    n, r = problem.n, problem.r
    m = n + r
    trunc = truncate_to_face(problem.f, face)
    if trunc.is_monomial():
        return Eliminant(EMPTY, ())
    lifted = trunc.extend(m, range(n))
    logs = [lifted.log_derivative(i) for i in range(n)]
    q = problem.Q
    gens = [lifted]
    for cols in combinations(range(n), r + 1):
        minor = LaurentPolynomial(m)
        for k, c in enumerate(cols):
            rest = [x for x in cols if x != c]
            cof = IntegerMatrix([[q[i, x] for x in rest] for i in range(r)]).det()
            if cof:
                minor = minor + logs[c].scale((-1) ** k * cof)
        if not minor.is_zero():
            gens.append(minor)
    for j in range(r):
        row = q.row(j)
        plus = tuple(max(x, 0) for x in row) + (0,) * r
        minus = tuple(max(-x, 0) for x in row) + tuple(int(i == j) for i in range(r))
        gens.append(LaurentPolynomial(m, {minus: 1, plus: -1}))
    ideal = PolynomialIdeal.from_laurent(gens, m)
    return _eliminant_from(ideal, range(n, m), spair_cap)


def transformed_face_truncation(problem: DiagonalProblem, face: Face) -> LaurentPolynomial:
    """Image of ``f_delta`` under ``z = w^A``; the truncation of f~ to the image face."""
    return monomial_substitute(truncate_to_face(problem.f, face), problem.A)


def matching_sigma(problem: DiagonalProblem, face: Face) -> SigmaFace | None:
    """The u-face whose truncation is the image of ``f_delta``, when one exists."""
    image = transformed_face_truncation(problem, face)
    for sf in u_faces(transform(problem), problem.r):
        if sf.truncation == image:
            return sf
    return None


# ---------------------------------------------------------- nondegeneracy


@dataclass(frozen=True)
class NondegeneracyVerdict:
    nondegenerate: bool
    face: Face | None = None
    witness: PolynomialIdeal | None = None

    def __bool__(self) -> bool:
        return self.nondegenerate


def singular_torus_locus(truncation: LaurentPolynomial, spair_cap: int = DEFAULT_SPAIR_CAP) -> PolynomialIdeal:
    """Torus-saturated ideal of points where the truncation and its gradient vanish."""
    n = truncation.arity
    ideal = PolynomialIdeal.from_laurent(critical_system(truncation, range(n)), n)
    sat = _eliminate_with_saturation(ideal, (), (1,) * n, spair_cap)
    return groebner(sat.with_order(MonomialOrder()), spair_cap)


def check_nondegenerate(f: LaurentPolynomial, spair_cap: int = DEFAULT_SPAIR_CAP) -> NondegeneracyVerdict:
    """Check every face truncation (proper and improper) for torus singular points."""
    poly = newton_polytope(f.support)
    for face in poly.faces():
        trunc = truncate_to_face(f, face)
        if trunc.is_monomial():
            continue
        locus = singular_torus_locus(trunc, spair_cap)
        if not is_trivial(locus):
            return NondegeneracyVerdict(False, face, locus)
    return NondegeneracyVerdict(True)


# ----------------------------------------------------------------- report


@dataclass(frozen=True)
class LandauEntry:
    face_id: int
    face: Face
    truncation: LaurentPolynomial
    result: Eliminant

    @property
    def status(self) -> str:
        return self.result.status


@dataclass(frozen=True)
class LandauReport:
    problem: DiagonalProblem
    ftilde: LaurentPolynomial
    entries: tuple[LandauEntry, ...]
    nondegeneracy: NondegeneracyVerdict | None = None
    faces_total: int = 0

    @property
    def union(self) -> list[tuple[LaurentPolynomial, ...]]:
        return [e.result.generators for e in self.entries if e.status == NONEMPTY]

    @property
    def nonempty(self) -> list[LandauEntry]:
        return [e for e in self.entries if e.status != EMPTY]


def landau_variety(
    problem: DiagonalProblem,
    check: bool = True,
    spair_cap: int = DEFAULT_SPAIR_CAP,
) -> LandauReport:
    """Per-face discriminants over the t-dependent faces and their union.

    Raises :class:`LandauError` if ``check`` is set and f is degenerate.
    """
    verdict = None
    if check:
        verdict = check_nondegenerate(problem.f, spair_cap)
        if not verdict:
            raise DegenerateError(verdict)
    else:
        log.warning("nondegeneracy check skipped; singularities outside the reported set are possible")
    ftilde = transform(problem)
    faces = u_faces(ftilde, problem.r) if problem.r else []
    entries = tuple(
        LandauEntry(sf.face_id, sf.face, sf.truncation, landau_component(ftilde, problem.r, sf, spair_cap))
        for sf in faces
        if sf.depends_on_t
    )
    return LandauReport(problem, ftilde, entries, verdict, len(faces))


class DegenerateError(LandauError):
    def __init__(self, verdict: NondegeneracyVerdict):
        super().__init__("denominator is degenerate for its Newton polytope")
        self.verdict = verdict


# -------------------------------------------------------------- crosscheck


@dataclass(frozen=True)
class CrossCheck:
    face: Face
    sigma: SigmaFace | None
    direct: Eliminant
    dual: Eliminant
    agree: bool


def same_locus(a: Eliminant, b: Eliminant, spair_cap: int = DEFAULT_SPAIR_CAP) -> bool:
    if a.status != NONEMPTY or b.status != NONEMPTY:
        return a.status == b.status
    return same_zero_set(a.ideal(), b.ideal(), spair_cap)


def crosscheck(problem: DiagonalProblem, spair_cap: int = DEFAULT_SPAIR_CAP) -> list[CrossCheck]:
    """Compare the z-space rank description with the (t, u) discriminant, face by face."""
    out = []
    for face in newton_polytope(problem.f.support).faces():
        direct = landau_direct(problem, face, spair_cap)
        sigma = matching_sigma(problem, face)
        image = transformed_face_truncation(problem, face)
        dual = discriminant(image, problem.r, spair_cap)
        out.append(CrossCheck(face, sigma, direct, dual, same_locus(direct, dual, spair_cap)))
    return out


def same_union(a: LandauReport, b: LandauReport, spair_cap: int = DEFAULT_SPAIR_CAP) -> bool:
    """Do two reports describe the same subset of the t-torus?

    A union of varieties is cut out by all products of one generator from
    each component; compare those ideals' radicals.
    """
    def product_ideal(report: LandauReport) -> PolynomialIdeal | None:
        comps = report.union
        if not comps:
            return None
        prods = [LaurentPolynomial.constant(report.problem.r)]
        for gens in comps:
            prods = [p * g for p in prods for g in gens]
        return PolynomialIdeal(report.problem.r, tuple(prods))

    ia, ib = product_ideal(a), product_ideal(b)
    if ia is None or ib is None:
        return ia is None and ib is None
    return same_zero_set(ia, ib, spair_cap)
