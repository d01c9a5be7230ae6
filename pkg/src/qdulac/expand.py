"""Term-by-term power-logarithmic expansion around a truncated solution.

After the shift y = c*x^r + z the equation takes the form

    L(S) z + h(x, z) = 0,

where L(S) = a_m S^m + ... + a_0 is the constant-coefficient linear part
collected at support point (0,1) and h holds everything else.  Writing
z = sum_{k in K} beta_k(t) x^k with t = log_q x turns each exponent level
into a polynomial difference equation

    L(q^k T) beta_k(t) + theta_k(t) = 0,      (T f)(t) = f(t+1),

whose inhomogeneity theta_k is the x^k residual of the lower-order partial
sum.  The admissible exponent set K is generated additively from the
critical numbers (rational k > r with nu(k) = sum_j a_j q^{jk} = 0) and the
z-free support of h.  The solver works degree by degree using the moment
values m_i = sum_j a_j j^i q^{jk}; when q^k is a root of L(s) of
multiplicity mu, the operator kills degrees below mu and each expansion
step introduces mu fresh arbitrary constants.

Everything is exact: the engine refuses (with a named error) any input
that would force irrational q-powers or a non-well-founded exponent
recursion, instead of silently approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Callable, Iterable, Mapping

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
    DegreeBoundError,
    EmptySupportError,
    ExponentOrderError,
    LinearCoefficientError,
    LinearVertexError,
)
from .polygon import build_polygon
from .qexpr import (
    PowerLogSeries,
    QPolynomial,
    QTerm,
    evaluate_on_series,
    substitute_shift,
    support,
)
from .truncate import TruncatedSolution


@dataclass(frozen=True)
class LinearPart:
    """Constant coefficients a_0 ... a_m of the linear operator L(S)."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            raise ValueError("linear part must have a nonzero coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def root_multiplicity(self, w: Fraction) -> int:
        """Multiplicity of w as a root of L(s)."""
        return dict(rational_roots(self.coeffs)).get(w, 0)


@dataclass(frozen=True)
class CriticalData:
    """Rational eigenvalues of the linear part relative to a base exponent.

    eigen_rational lists (k, mu) with nu(k) = 0 exactly, mu the
    multiplicity of q^k in L(s); those with k > r are the critical numbers.
    skipped_irrational lists roots s of L(s) admitting no rational log;
    unresolved counts roots of L(s) that are not rational at all.
    """

    eigen_rational: tuple
    skipped_irrational: tuple
    unresolved: int
    r: Fraction

    def criticals(self) -> tuple:
        return tuple((k, mu) for k, mu in self.eigen_rational if k > self.r)


@dataclass(frozen=True)
class ExpansionResult:
    """A computed expansion y = c*x^r + sum beta_k(t) x^k up to k_max."""

    series: PowerLogSeries
    constants_introduced: tuple  # ((name, k), ...)
    k_set: tuple  # realized exponent set K within (r, k_max]
    log_free: bool
    critical_report: tuple  # ((k, mu, theta_k vanished), ...)
    skipped_irrational: tuple
    unresolved: int
    linear_part: LinearPart

    @property
    def base_c(self) -> ParamPoly:
        return self.series.base_shift[0]

    @property
    def base_r(self) -> Fraction:
        return self.series.base_shift[1]


def extract_linear_part(ft: QPolynomial):
    """Split the shifted equation into (LinearPart, h).

    Requires the two structural hypotheses: the point (0,1) carries terms
    and is a vertex of the Newton polygon, and every coefficient there is a
    plain constant.
    """
    if ft.is_zero():
        raise LinearVertexError(
            "the substituted equation is identically zero; nothing to expand"
        )
    linear_terms = [
        t for t in ft.terms if t.x_exp == 0 and t.y_degree == 1
    ]
    if not linear_terms:
        raise LinearVertexError(
            "no terms at support point (0,1): the linear part is missing"
        )
    polygon = build_polygon(support(ft))
    if (Fraction(0), Fraction(1)) not in polygon.hull_vertices:
        raise LinearVertexError(
            "support point (0,1) is not a vertex of the Newton polygon"
        )
    coeffs = [Fraction(0)] * (max(t.order for t in linear_terms) + 1)
    for t in linear_terms:
        if not t.coeff.is_constant():
            raise LinearCoefficientError(
                f"coefficient at (0,1) is not constant: {t.coeff}"
            )
        coeffs[t.order] = t.coeff.constant_value()
    h = QPolynomial(
        [t for t in ft.terms if not (t.x_exp == 0 and t.y_degree == 1)],
        ft.var,
    )
    return LinearPart(tuple(coeffs)), h


def nu(L: LinearPart, q, k) -> Fraction:
    """nu(k) = sum_j a_j q^{jk}, the symbol of L on x^k."""
    q = check_q(q)
    k = Fraction(k)
    return sum(
        (a * q_pow(q, j * k) for j, a in enumerate(L.coeffs)), Fraction(0)
    )


def critical_numbers(L: LinearPart, q, r) -> CriticalData:
    """Rational eigenvalues k (nu(k)=0) and the critical ones (k > r)."""
    q = check_q(q)
    r = Fraction(r)
    eigen = []
    skipped = []
    resolved = 0
    for s, mult in rational_roots(L.coeffs):
        resolved += mult
        if s <= 0:
            skipped.append(s)
            continue
        k = q_log(q, s)
        if k is None:
            skipped.append(s)
            continue
        eigen.append((k, mult))
    eigen.sort()
    return CriticalData(
        eigen_rational=tuple(eigen),
        skipped_irrational=tuple(skipped),
        unresolved=L.order - resolved,
        r=r,
    )


def k_lattice(h_support, criticals, r, k_max) -> list:
    """The exponent set K within (r, k_max], as a least fixed point.

    Seeds: the critical numbers and the abscissas of z-free support points
    (q1, 0).  Closure: k = q1 + l_1 + ... + l_{q2} for every support point
    (q1, q2) with q2 >= 1 and l_i already generated.
    """
    r = Fraction(r)
    k_max = Fraction(k_max)
    seeds = {Fraction(k) for k in criticals}
    generators = []
    for point in h_support:
        q1, q2 = Fraction(point[0]), Fraction(point[1])
        if q2 == 0:
            seeds.add(q1)
        else:
            if q2.denominator != 1:
                raise ValueError(f"non-integer y-degree in support: {point}")
            generators.append((q1, int(q2)))
    pool = sorted(k for k in seeds if r <= k <= k_max)
    known = set(pool)

    def sums(q1: Fraction, d: int, elems: list) -> set:
        if not elems:
            return set()
        low = elems[0]
        found = set()

        def rec(start: int, remaining: int, acc: Fraction):
            if acc + remaining * low > k_max:
                return
            if remaining == 0:
                found.add(acc)
                return
            for j in range(start, len(elems)):
                rec(j, remaining - 1, acc + elems[j])

        rec(0, d, q1)
        return found

    changed = True
    while changed:
        changed = False
        elems = sorted(known)
        for q1, d in generators:
            for k in sums(q1, d, elems):
                if r <= k <= k_max and k not in known:
                    known.add(k)
                    changed = True
    return sorted(k for k in known if k > r)


def apply_difference_operator(L: LinearPart, q, k, beta: TPoly) -> TPoly:
    """L(q^k T) applied to beta: sum_j a_j q^{jk} beta(t + j)."""
    w = q_pow(check_q(q), Fraction(k))
    out = TPoly.zero()
    for j, a in enumerate(L.coeffs):
        if a == 0:
            continue
        out = out + beta.shift(j).scale(a * w**j)
    return out


def constant_namer(taken: Iterable[str]) -> Callable[[], str]:
    """Yields C1, C2, ... skipping names already in use."""
    used = set(taken)

    def namer() -> str:
        for i in count(1):
            name = f"C{i}"
            if name not in used:
                used.add(name)
                return name
        raise AssertionError("unreachable")

    return namer


def solve_poly_difference(
    L: LinearPart, q, k, theta: TPoly, const_namer: Callable[[], str]
):
    """Solve L(q^k T) beta + theta = 0 for a polynomial beta in t.

    With mu the multiplicity of q^k as a root of L(s), the operator lowers
    polynomial degree by exactly mu, so a particular solution of degree
    deg(theta) + mu exists and is found by descending back-substitution on
    the moments m_i = sum_j a_j j^i q^{jk} (m_i = 0 for i < mu, m_mu != 0).
    The kernel is span(1, t, ..., t^{mu-1}); its coordinates are fresh
    named constants.  Returns (beta, new_constant_names).
    """
    q = check_q(q)
    k = Fraction(k)
    w = q_pow(q, k)
    mu = L.root_multiplicity(w)
    target = tuple(-c for c in theta.coeffs)
    if target:
        deg = len(target) - 1
        size = deg + mu + 1
        moments = [
            sum(
                (a * Fraction(j) ** i * w**j for j, a in enumerate(L.coeffs)),
                Fraction(0),
            )
            for i in range(size)
        ]
        assert all(moments[i] == 0 for i in range(mu)), "moment criterion broken"
        assert moments[mu] != 0, "moment criterion broken"
        b = [ParamPoly.zero()] * size
        for i in range(deg, -1, -1):
            acc = target[i]
            for d in range(i + mu + 1, size):
                acc = acc - b[d] * (math.comb(d, i) * moments[d - i])
            b[i + mu] = acc / (math.comb(i + mu, i) * moments[mu])
    else:
        b = [ParamPoly.zero()] * mu
    names = []
    for i in range(mu):
        name = const_namer()
        names.append(name)
        b[i] = b[i] + ParamPoly.symbol(name)
    beta = TPoly(b)
    check = apply_difference_operator(L, q, k, beta) + theta
    assert check.is_zero(), "difference solve failed to verify"
    return beta, names


def check_exponent_order(h: QPolynomial, r) -> None:
    """Well-foundedness of the exponent recursion over S(h).

    Every support point (q1, q2) of h must satisfy q1 + r*(q2 - 1) >= 0,
    strictly when q2 <= 1; otherwise a term could feed the residual at an
    exponent at or below the one being solved and the term-by-term
    recursion would not terminate.
    """
    if h.is_zero():
        return
    r = Fraction(r)
    for q1, q2 in sorted(support(h)):
        value = q1 + r * (q2 - 1)
        if value < 0 or (value == 0 and q2 <= 1):
            raise ExponentOrderError(
                f"support point ({rat_str(q1)},{rat_str(q2)}) breaks the "
                f"exponent ordering for r={rat_str(r)}: "
                f"q1 + r*(q2-1) = {rat_str(value)}"
            )


def expand_solution(
    f: QPolynomial, ts: TruncatedSolution, q, k_max
) -> ExpansionResult:
    """Drive the expansion of f around y = c*x^r up to exponent k_max."""
    q = check_q(q)
    k_max = Fraction(k_max)
    r = ts.r
    if k_max <= r:
        raise ValueError("k_max must exceed the base exponent r")
    ft = substitute_shift(f, ts.c, r, q, "z")
    if not ft.is_zero():
        delta = ft.min_x_exponent()
        if delta > 0:
            ft = ft.shift_x(-delta)
    L, h = extract_linear_part(ft)
    check_exponent_order(h, r)
    crit = critical_numbers(L, q, r)
    criticals = crit.criticals()
    h_support = set() if h.is_zero() else support(h)
    k_set = k_lattice(h_support, [k for k, _ in criticals], r, k_max)
    denom = math.lcm(r.denominator, *(k.denominator for k in k_set)) if k_set else r.denominator
    q_pow(q, Fraction(1, denom))  # exactness gate; raises when irrational

    taken = ts.c.symbols()
    for term in f.terms:
        taken |= term.coeff.symbols()
    namer = constant_namer(taken)
    critical_ks = {k for k, _ in criticals}
    collected: list = []
    constants: list = []
    compat: dict[Fraction, bool] = {}
    for k in k_set:
        partial = PowerLogSeries(q, collected)
        residual = evaluate_on_series(ft, partial, k)
        theta = residual.coefficient(k)
        if k in critical_ks:
            compat[k] = theta.is_zero()
        beta, names = solve_poly_difference(L, q, k, theta, namer)
        constants.extend((name, k) for name in names)
        if not beta.is_zero():
            collected.append((k, beta))
    series = PowerLogSeries(q, collected, base_shift=(ts.c, r))
    log_free = all(beta.degree() == 0 for _, beta in series.terms)
    result = ExpansionResult(
        series=series,
        constants_introduced=tuple(constants),
        k_set=tuple(k_set),
        log_free=log_free,
        critical_report=tuple(
            (k, mu, compat.get(k, True)) for k, mu in criticals if k <= k_max
        ),
        skipped_irrational=crit.skipped_irrational,
        unresolved=crit.unresolved,
        linear_part=L,
    )
    if not degree_bound(result, L, q, r):
        raise DegreeBoundError(
            "computed term exceeds the logarithmic degree bound; "
            "this indicates an internal error"
        )
    return result


def verify_residual(
    f: QPolynomial,
    result: ExpansionResult,
    q,
    assignment: Mapping,
    k_max,
):
    """Smallest exponent with nonzero residual up to k_max, or None.

    Binds every parameter and introduced constant with `assignment` (both
    in the equation's coefficients and in the series), substitutes the
    full truncated solution into f, and inspects what is left.  None means
    the residual vanishes identically through k_max.
    """
    q = check_q(q)
    k_max = Fraction(k_max)
    bound_f = QPolynomial(
        [
            QTerm(
                ParamPoly.const(t.coeff.evaluate(assignment)),
                t.x_exp,
                t.sigma_powers,
            )
            for t in f.terms
        ],
        f.var,
    )
    bound = result.series.bind_parameters(assignment)
    residual = evaluate_on_series(bound_f, bound, k_max)
    flat = residual.flattened()
    return flat[0][0] if flat else None


def degree_bound(result: ExpansionResult, L: LinearPart, q, r) -> bool:
    """deg beta_k <= C*(k - r)*sum of mu(j) over critical j <= k."""
    k_set = result.k_set
    if not k_set:
        return True
    r = Fraction(r)
    c_factor = 1 + 1 / (min(k_set) - r)
    mus = [(k, mu) for k, mu, _ in result.critical_report]
    for k, beta in result.series.terms:
        mu_sum = sum(mu for j, mu in mus if r < j <= k)
        if beta.degree() > c_factor * (k - r) * mu_sum:
            return False
    return True
