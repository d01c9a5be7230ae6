"""Truncated equations on polygon faces and their solutions y = c*x^r.

A face of the Newton polygon selects the sub-sum of the equation whose
exponent points lie on that face.  Substituting y = c*x^r into the
sub-sum factors it:

  vertex (q1, q2):  chi(w) * c^q2 * x^(q1 + r*q2)     with w = q^r,
  edge with slope r: (det poly in c)  * x^(common power),

so a vertex contributes solutions through the rational roots w of chi
(then r = log_q w, filtered by the normal cone, with c free), and an edge
fixes r and determines c through the roots of its determining polynomial.
Every constructed solution is verified against the truncated sum at
construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ParamPoly,
    Rat,
    TPoly,
    check_q,
    q_log,
    q_pow,
    rat_str,
    rational_roots,
)
from .errors import (
    EmptySupportError,
    IndeterminateEquationError,
    InconsistentEdgeError,
    IrrationalQPowerError,
    NotAVertexError,
    TruncatedSolutionError,
)
from .polygon import Face, NewtonPolygon, cone_contains
from .qexpr import QPolynomial, QTerm


@dataclass(frozen=True)
class TruncatedSolution:
    """A verified leading-order solution y = c * x^r on a face."""

    c: ParamPoly
    r: Fraction
    face: Face
    provenance: str  # "vertex-root" | "edge-root" | "user-supplied"

    def __post_init__(self):
        if self.c.is_zero():
            raise TruncatedSolutionError("leading coefficient c must be nonzero")

    @classmethod
    def create(
        cls,
        f: QPolynomial,
        face: Face,
        c: ParamPoly,
        r,
        q,
        provenance: str,
    ) -> "TruncatedSolution":
        ts = cls(ParamPoly.coerce(c), Fraction(r), face, provenance)
        if not verify_truncated(ts, f, q):
            raise TruncatedSolutionError(
                f"y = ({c})*x^{rat_str(Fraction(r))} does not solve the "
                f"truncated equation of face {face.label()}"
            )
        return ts


def truncated_sum(f: QPolynomial, face: Face) -> QPolynomial:
    """Terms of f whose exponent point lies in the face's boundary subset."""
    wanted = set(face.points)
    return QPolynomial(
        [t for t in f.terms if t.q_point in wanted], f.var
    )


def _power_substitution(g: QPolynomial, c: ParamPoly, r: Fraction, q: Fraction):
    """Exponent -> coefficient map of g(x, c*x^r); needs q^{r*weight} in Q."""
    out: dict[Fraction, ParamPoly] = {}
    for term in g.terms:
        exponent = term.x_exp + r * term.y_degree
        value = term.coeff * c**term.y_degree * q_pow(q, r * term.shift_weight)
        out[exponent] = out.get(exponent, ParamPoly.zero()) + value
    return {e: v for e, v in out.items() if not v.is_zero()}


def verify_truncated(ts: TruncatedSolution, f: QPolynomial, q) -> bool:
    """True iff the face's truncated sum vanishes identically at y = c*x^r."""
    g = truncated_sum(f, ts.face)
    if g.is_zero():
        return True
    return not _power_substitution(g, ts.c, ts.r, check_q(q))


def vertex_char_poly(g: QPolynomial) -> TPoly:
    """Characteristic polynomial chi(w) of a single-vertex truncation.

    Substituting y = c*x^r sends each term to coeff * w^weight modulo the
    common factor c^q2 * x^(q1 + r*q2), so chi collects coefficients by
    shift weight.  chi does not depend on q; only the back-conversion
    r = log_q w does.
    """
    terms = g.terms
    if not terms:
        raise EmptySupportError("empty truncation has no characteristic polynomial")
    points = {t.q_point for t in terms}
    if len(points) != 1:
        raise NotAVertexError(
            f"terms span {len(points)} exponent points; a vertex has one"
        )
    top = max(t.shift_weight for t in terms)
    coeffs = [ParamPoly.zero()] * (top + 1)
    for t in terms:
        coeffs[t.shift_weight] = coeffs[t.shift_weight] + t.coeff
    return TPoly(coeffs)


def determining_poly(g: QPolynomial, r, q) -> TPoly:
    """Determining polynomial in c of an edge truncation at its slope r."""
    terms = g.terms
    if not terms:
        raise EmptySupportError("empty truncation has no determining polynomial")
    r = Fraction(r)
    q = check_q(q)
    powers = {t.x_exp + r * t.y_degree for t in terms}
    if len(powers) != 1:
        raise InconsistentEdgeError(
            f"substitution leaves {len(powers)} distinct x-powers; "
            f"r={rat_str(r)} is not this edge's slope"
        )
    top = max(t.y_degree for t in terms)
    coeffs = [ParamPoly.zero()] * (top + 1)
    for t in terms:
        value = t.coeff * q_pow(q, r * t.shift_weight)
        coeffs[t.y_degree] = coeffs[t.y_degree] + value
    return TPoly(coeffs)


@dataclass(frozen=True)
class FaceAnalysis:
    """Everything the pipeline learns from one face."""

    face: Face
    truncated: QPolynomial
    variable: str  # "w" for a vertex, "c" for an edge
    poly: TPoly | None
    roots: tuple  # ((value, multiplicity), ...) rational roots of poly
    candidates: tuple  # TruncatedSolution, ...
    diagnostics: tuple  # str, ...


def _fresh_symbol(f: QPolynomial, base: str = "c") -> str:
    taken = set()
    for term in f.terms:
        taken |= term.coeff.symbols()
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def _try_candidate(f, face, c, r, q, provenance, candidates, diagnostics):
    for existing in candidates:
        if existing.c == c and existing.r == r:
            return
    try:
        candidates.append(
            TruncatedSolution.create(f, face, c, r, q, provenance)
        )
    except TruncatedSolutionError as err:
        diagnostics.append(str(err))


def _analyze_vertex(f, polygon, face, q, c_override, r_override):
    g = truncated_sum(f, face)
    diagnostics: list[str] = []
    candidates: list[TruncatedSolution] = []
    roots: tuple = ()
    chi = vertex_char_poly(g)
    free_c = c_override if c_override is not None else ParamPoly.symbol(
        _fresh_symbol(f)
    )

    candidate_rs: list[tuple[Fraction, str]] = []
    if all(c.is_constant() for c in chi.coeffs):
        try:
            roots = tuple(rational_roots(chi.rational_coeffs()))
        except IndeterminateEquationError:
            diagnostics.append(
                "truncated sum vanishes for every c and r (zero characteristic "
                "polynomial)"
            )
            if r_override is not None:
                candidate_rs.append((Fraction(r_override), "user-supplied"))
        else:
            for w, _mult in roots:
                if w == 0:
                    diagnostics.append("root w=0 excluded (q^r is never 0)")
                    continue
                k = q_log(q, w)
                if k is None:
                    diagnostics.append(
                        f"root w={rat_str(w)}: non-rational exponent, skipped"
                    )
                    continue
                candidate_rs.append((k, "vertex-root"))
            if r_override is not None and not any(
                r == Fraction(r_override) for r, _ in candidate_rs
            ):
                candidate_rs.append((Fraction(r_override), "user-supplied"))
    else:
        diagnostics.append(
            "characteristic polynomial has parameter coefficients; "
            "supply --r (and --c) to choose a solution"
        )
        if r_override is not None:
            candidate_rs.append((Fraction(r_override), "user-supplied"))

    for r, provenance in candidate_rs:
        if not cone_contains(face, polygon.support, r):
            diagnostics.append(
                f"r={rat_str(r)} lies outside this vertex's normal cone; skipped"
            )
            continue
        if c_override is not None:
            provenance = "user-supplied"
        _try_candidate(
            f, face, ParamPoly.coerce(free_c), r, q, provenance,
            candidates, diagnostics,
        )
    return FaceAnalysis(
        face=face,
        truncated=g,
        variable="w",
        poly=chi,
        roots=roots,
        candidates=tuple(candidates),
        diagnostics=tuple(diagnostics),
    )


def _analyze_edge(f, polygon, face, q, c_override, r_override):
    g = truncated_sum(f, face)
    diagnostics: list[str] = []
    candidates: list[TruncatedSolution] = []
    roots: tuple = ()
    poly = None
    r = face.r
    if r is None:
        return FaceAnalysis(
            face, g, "c", None, (),
            (), ("edge does not face x -> 0; no admissible r",),
        )
    if r_override is not None and Fraction(r_override) != r:
        diagnostics.append(
            f"--r {rat_str(Fraction(r_override))} ignored: this edge fixes "
            f"r={rat_str(r)}"
        )
    try:
        poly = determining_poly(g, r, q)
    except IrrationalQPowerError as err:
        return FaceAnalysis(
            face, g, "c", None, (), (), (str(err),),
        )
    if all(c.is_constant() for c in poly.coeffs):
        try:
            roots = tuple(rational_roots(poly.rational_coeffs()))
        except IndeterminateEquationError:
            diagnostics.append(
                "truncated sum vanishes for every c (zero determining "
                "polynomial)"
            )
            free_c = c_override if c_override is not None else ParamPoly.symbol(
                _fresh_symbol(f)
            )
            _try_candidate(
                f, face, ParamPoly.coerce(free_c), r, q,
                "user-supplied" if c_override is not None else "edge-root",
                candidates, diagnostics,
            )
        else:
            for value, _mult in roots:
                if value == 0:
                    diagnostics.append("root c=0 discarded (c must be nonzero)")
                    continue
                _try_candidate(
                    f, face, ParamPoly.const(value), r, q, "edge-root",
                    candidates, diagnostics,
                )
            if c_override is not None:
                _try_candidate(
                    f, face, c_override, r, q, "user-supplied",
                    candidates, diagnostics,
                )
    else:
        diagnostics.append(
            "parameter-dependent determining equation; needs --c"
        )
        if c_override is not None:
            _try_candidate(
                f, face, c_override, r, q, "user-supplied",
                candidates, diagnostics,
            )
    return FaceAnalysis(
        face=face,
        truncated=g,
        variable="c",
        poly=poly,
        roots=roots,
        candidates=tuple(candidates),
        diagnostics=tuple(diagnostics),
    )


def analyze_face(
    f: QPolynomial,
    polygon: NewtonPolygon,
    face: Face,
    q,
    c_override: ParamPoly | None = None,
    r_override=None,
) -> FaceAnalysis:
    """Truncated sum, its vertex/edge polynomial, roots, and candidates.

    `c_override` and `r_override` inject user-supplied values where root
    finding cannot decide (parameter coefficients, free vertex c); every
    candidate, supplied or found, is verified before it is returned.
    """
    q = check_q(q)
    if c_override is not None:
        c_override = ParamPoly.coerce(c_override)
        if c_override.is_zero():
            raise TruncatedSolutionError("leading coefficient c must be nonzero")
    if face.dim == 0:
        return _analyze_vertex(f, polygon, face, q, c_override, r_override)
    return _analyze_edge(f, polygon, face, q, c_override, r_override)
