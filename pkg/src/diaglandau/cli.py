"""Command line front end.

Usage: ``diaglandau <command> <problem-file> [options]`` with commands
nondeg, transform, faces, landau, diagonal, radius and crosscheck.

Exit codes: 0 success, 1 mathematical failure (degenerate denominator,
failed cross-check), 2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence, TextIO

from . import landau as ld
from .elimination import DEFAULT_SPAIR_CAP, ResourceLimitError
from .lattice import LatticeError
from .laurent import LaurentPolynomial
from .polytope import Face, PolytopeError, newton_polytope
from .problem import ProblemFile, ProblemFileError, load
from .series import SeriesError, VertexExpansion, diagonal_coefficients, radius_estimate, smallest_positive_root

OK, MATH_FAILURE, INPUT_ERROR, RESOURCE_CAP = 0, 1, 2, 3

log = logging.getLogger("diaglandau")


class Output:
    """Collects report lines in human or machine form."""

    def __init__(self, machine: bool, stream: TextIO):
        self.machine = machine
        self.stream = stream

    def line(self, text: str = "") -> None:
        if not self.machine:
            print(text, file=self.stream)

    def record(self, kind: str, **fields) -> None:
        if self.machine:
            body = "\t".join(f"{k}={_flat(v)}" for k, v in fields.items())
            print(f"record={kind}\t{body}" if body else f"record={kind}", file=self.stream)


def _flat(value) -> str:
    if isinstance(value, (list, tuple)):
        return ";".join(_flat(v) for v in value)
    return str(value).replace("\t", " ").replace("\n", " ")


def fmt_point(p: Sequence[int]) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def fmt_points(face: Face) -> str:
    return " ".join(fmt_point(p) for p in face.sorted_points())


def fmt_generators(gens: Sequence[LaurentPolynomial], names: Sequence[str]) -> list[str]:
    return [g.to_str(names) for g in gens]


# ---------------------------------------------------------------- commands


def cmd_nondeg(pf: ProblemFile, args, out: Output) -> int:
    verdict = ld.check_nondegenerate(pf.f, args.spair_cap)
    names = list(pf.vars)
    poly = newton_polytope(pf.f.support)
    out.line(f"f = {pf.f.to_str(names)}")
    out.line(f"Newton polytope: dim {poly.dim}, {len(poly.vertices)} vertices, {len(poly.faces())} faces")
    if verdict:
        out.line("verdict: nondegenerate")
        out.record("nondeg", verdict="nondegenerate")
        return OK
    face = verdict.face
    trunc = ld.truncate_to_face(pf.f, face)
    locus = fmt_generators(verdict.witness.generators, names)
    out.line("verdict: degenerate")
    out.line(f"witness face: dim {face.dim}, points {fmt_points(face)}")
    out.line(f"truncation: {trunc.to_str(names)}")
    out.line("singular torus points: " + ", ".join(f"{g} = 0" for g in locus))
    out.record(
        "nondeg", verdict="degenerate", dim=face.dim, support_points=fmt_points(face),
        truncation=trunc.to_str(names), locus=locus,
    )
    return MATH_FAILURE


def cmd_transform(pf: ProblemFile, args, out: Output) -> int:
    problem = pf.problem()
    w = problem.w_names
    ftilde = ld.transform(problem)
    a = problem.A
    subs = [
        f"{z} = {LaurentPolynomial.monomial(a.column(i)).to_str(w)}"
        for i, z in enumerate(pf.vars)
    ]
    out.line(f"B = {problem.basis}")
    out.line(f"A = {a}")
    out.line("substitution: " + ", ".join(subs))
    out.line(f"f~ = {ftilde.to_str(w)}")
    out.record("transform", B=str(problem.basis), A=str(a), substitution=subs, ftilde=ftilde.to_str(w))
    return OK


def cmd_faces(pf: ProblemFile, args, out: Output) -> int:
    problem = pf.problem()
    w = problem.w_names
    ftilde = ld.transform(problem)
    faces = ld.u_faces(ftilde, problem.r)
    out.line(f"f~ = {ftilde.to_str(w)}")
    out.line(f"faces of the u-polytope: {len(faces)}; in Sigma: {sum(sf.depends_on_t for sf in faces)}")
    for sf in faces:
        mark = "*" if sf.depends_on_t else " "
        out.line(
            f"{mark} F{sf.face_id} dim {sf.face.dim} [{fmt_points(sf.face)}]: {sf.truncation.to_str(w)}"
        )
        out.record(
            "face", face_id=f"F{sf.face_id}", dim=sf.face.dim, support_points=fmt_points(sf.face),
            truncation=sf.truncation.to_str(w), sigma=int(sf.depends_on_t),
        )
    return OK


def cmd_landau(pf: ProblemFile, args, out: Output) -> int:
    problem = pf.problem()
    skip = args.skip_nondeg or pf.skip_nondeg
    try:
        report = ld.landau_variety(problem, check=not skip, spair_cap=args.spair_cap)
    except ld.DegenerateError as exc:
        face = exc.verdict.face
        print(f"error: f is degenerate on the face {fmt_points(face)}", file=sys.stderr)
        out.line("verdict: degenerate")
        out.record("nondeg", verdict="degenerate", support_points=fmt_points(face))
        return MATH_FAILURE
    w, t = problem.w_names, problem.t_names
    nondeg = "skipped" if report.nondegeneracy is None else "nondegenerate"
    out.line(f"f = {pf.f.to_str(pf.vars)}")
    out.line(f"Q = {problem.Q}")
    out.line(f"f~ = {report.ftilde.to_str(w)}")
    out.line(f"nondegeneracy: {nondeg}")
    out.line(f"faces of the u-polytope: {report.faces_total}; in Sigma: {len(report.entries)}")
    for e in report.entries:
        gens = e.result.to_strs(t)
        detail = "; ".join(gens) if gens else ("whole torus" if e.status == ld.EVERYTHING else "-")
        out.line(f"F{e.face_id} dim {e.face.dim} [{fmt_points(e.face)}]")
        out.line(f"    truncation: {e.truncation.to_str(w)}")
        out.line(f"    L_sigma: {e.status}  {detail}")
        out.record(
            "face", face_id=f"F{e.face_id}", dim=e.face.dim, support_points=fmt_points(e.face),
            truncation=e.truncation.to_str(w), status=e.status, generators=gens,
        )
    out.line("union:")
    for gens in report.union:
        out.line("  " + "; ".join(fmt_generators(gens, t)))
    if not report.union:
        out.line("  (empty)")
    out.record("union", components=len(report.union),
               generators=["|".join(fmt_generators(g, t)) for g in report.union])
    return OK


def _expansion(pf: ProblemFile) -> VertexExpansion:
    return VertexExpansion.at(pf.f, pf.order, pf.g)


def cmd_diagonal(pf: ProblemFile, args, out: Output) -> int:
    k = args.max if args.max is not None else 10
    coeffs = diagonal_coefficients(_expansion(pf), pf.Q, k)
    r = pf.Q.rows
    if r == 1 and not any(coeffs[(j,)] for j in range(-k, 0)):
        seq = [coeffs[(j,)] for j in range(k + 1)]
        out.line(", ".join(map(str, seq)))
        for j, c in enumerate(seq):
            out.record("coefficient", k=j, value=c)
        return OK
    for key in sorted(coeffs):
        c = coeffs[key]
        if c:
            out.line(f"{fmt_point(key)}: {c}")
            out.record("coefficient", k=fmt_point(key), value=c)
    return OK


def cmd_radius(pf: ProblemFile, args, out: Output) -> int:
    if pf.Q.rows != 1:
        print("error: radius needs a rank-one diagonal", file=sys.stderr)
        return INPUT_ERROR
    k = args.max if args.max is not None else 39
    coeffs = diagonal_coefficients(_expansion(pf), pf.Q, k)
    seq = [coeffs[(j,)] for j in range(k + 1)]
    est = radius_estimate(seq)
    out.line(f"coefficients: {len(seq)}")
    out.line(f"radius estimate: {est.radius:.6f}  [{est.low:.6f}, {est.high:.6f}]  residual {est.residual:.3g}")
    fields = dict(radius=f"{est.radius:.6f}", low=f"{est.low:.6f}", high=f"{est.high:.6f}")
    if not args.no_landau:
        problem = pf.problem()
        report = ld.landau_variety(problem, check=not (args.skip_nondeg or pf.skip_nondeg),
                                   spair_cap=args.spair_cap)
        roots = [smallest_positive_root(g) for gens in report.union for g in gens]
        roots = [x for x in roots if x is not None]
        if roots:
            nearest = min(roots)
            out.line(f"smallest positive Landau point: {nearest:.6f}  "
                     f"(relative difference {abs(est.radius - nearest) / nearest:.2%})")
            fields["landau"] = f"{nearest:.6f}"
        else:
            out.line("smallest positive Landau point: none")
    out.record("radius", **fields)
    return OK


def cmd_crosscheck(pf: ProblemFile, args, out: Output) -> int:
    problem = pf.problem()
    t = problem.t_names
    checks = ld.crosscheck(problem, args.spair_cap)
    failures = 0
    for k, c in enumerate(checks):
        failures += not c.agree
        sigma = f"F{c.sigma.face_id}" if c.sigma is not None else "-"
        verdict = "agree" if c.agree else "DISAGREE"
        out.line(
            f"delta{k} dim {c.face.dim} [{fmt_points(c.face)}] sigma {sigma}: "
            f"direct {c.direct.status} {'; '.join(c.direct.to_strs(t))} | "
            f"transformed {c.dual.status} {'; '.join(c.dual.to_strs(t))} -> {verdict}"
        )
        out.record(
            "crosscheck", face_id=f"delta{k}", dim=c.face.dim, support_points=fmt_points(c.face),
            sigma=sigma, direct=c.direct.to_strs(t), transformed=c.dual.to_strs(t), agree=int(c.agree),
        )
    out.line(f"{len(checks) - failures}/{len(checks)} faces agree")
    return OK if not failures else MATH_FAILURE


COMMANDS: dict[str, Callable[[ProblemFile, argparse.Namespace, Output], int]] = {
    "nondeg": cmd_nondeg,
    "transform": cmd_transform,
    "faces": cmd_faces,
    "landau": cmd_landau,
    "diagonal": cmd_diagonal,
    "radius": cmd_radius,
    "crosscheck": cmd_crosscheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diaglandau",
        description="Landau varieties of complete diagonals of rational functions.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("file", help="problem file (bundled examples resolve by name)")
    parser.add_argument("--max", type=int, default=None, help="maximal diagonal order K")
    parser.add_argument("--skip-nondeg", action="store_true", help="skip the nondegeneracy check")
    parser.add_argument("--format", choices=("human", "machine"), default="human")
    parser.add_argument("--spair-cap", type=int, default=DEFAULT_SPAIR_CAP,
                        help="maximal number of S-pairs per Groebner computation")
    parser.add_argument("--no-landau", action="store_true",
                        help="radius: do not compare with the Landau variety")
    return parser


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def run(argv: Sequence[str] | None = None, stream: TextIO | None = None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    parser.__class__ = _Parser
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    out = Output(args.format == "machine", stream)
    try:
        pf = load(args.file)
        if pf.spair_cap is not None and args.spair_cap == DEFAULT_SPAIR_CAP:
            args.spair_cap = pf.spair_cap
        return COMMANDS[args.command](pf, args, out)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_CAP
    except (ProblemFileError, ld.LandauError, LatticeError, PolytopeError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())
