"""q-difference sums and their actions on power-logarithmic series.

A q-difference sum is a finite sum of monomials

    coeff * x^e * (S^0 y)^d0 * (S^1 y)^d1 * ... ,

where S is the dilation operator (S y)(x) = y(q x) and S^l its l-fold
composition (level 0 is y itself).  Each monomial carries an exponent point
Q(term) = (e, d0 + d1 + ...) in Q^2; the set of these points is the support
of the sum, the input to the Newton polygon.

The module implements the three transformations the expansion pipeline
needs: the support map, the shift substitution y = c*x^r + z, and exact
evaluation of a sum on a finite power-logarithmic series
y = c*x^r + sum_k beta_k(t) x^k with t = log_q x.  The operator S acts on a
series term as S(x^k beta(t)) = q^k x^k beta(t+1), so every result stays in
the same exact-rational world as long as the needed q-powers are rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import (
    ParamPoly,
    Rat,
    Scalar,
    TPoly,
    check_q,
    monomial_factor_strings,
    q_pow,
    rat_str,
)
from .errors import EmptySupportError

# ((level, power), ...): levels ascending and distinct, powers >= 1
SigmaPowers = tuple

Point = tuple  # (Fraction, Fraction)


def _as_exp(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exponents must be exact rationals, got {type(value).__name__}")


def _normalize_sigma(powers) -> SigmaPowers:
    merged: dict[int, int] = {}
    for level, power in powers:
        if not isinstance(level, int) or level < 0:
            raise ValueError("shift levels must be nonnegative integers")
        if not isinstance(power, int) or power < 1:
            raise ValueError("shift powers must be positive integers")
        merged[level] = merged.get(level, 0) + power
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class QTerm:
    """One monomial of a q-difference sum."""

    coeff: ParamPoly
    x_exp: Fraction
    sigma_powers: SigmaPowers

    @property
    def y_degree(self) -> int:
        return sum(d for _, d in self.sigma_powers)

    @property
    def shift_weight(self) -> int:
        """Sum of level*power; the w-exponent under y = c*x^r (w = q^r)."""
        return sum(l * d for l, d in self.sigma_powers)

    @property
    def q_point(self) -> Point:
        return (self.x_exp, Fraction(self.y_degree))

    @property
    def order(self) -> int:
        return max((l for l, _ in self.sigma_powers), default=0)


class QPolynomial:
    """Canonical finite sum of QTerms (like terms merged, zeros dropped).

    `var` is a display name for the unknown; it is carried through
    arithmetic but takes no part in equality or hashing (a sum and its
    renamed copy are the same object mathematically).
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Iterable[QTerm] = (), var: str = "y"):
        merged: dict[tuple[Fraction, SigmaPowers], ParamPoly] = {}
        for term in terms:
            key = (_as_exp(term.x_exp), _normalize_sigma(term.sigma_powers))
            coeff = merged.get(key)
            coeff = term.coeff if coeff is None else coeff + term.coeff
            merged[key] = coeff
        self._terms = {
            key: coeff for key, coeff in merged.items() if not coeff.is_zero()
        }
        self.var = var

    # -- constructors

    @classmethod
    def zero(cls, var: str = "y") -> "QPolynomial":
        return cls((), var)

    @classmethod
    def constant(cls, value: ParamPoly | Scalar, var: str = "y") -> "QPolynomial":
        return cls([QTerm(ParamPoly.coerce(value), Fraction(0), ())], var)

    @classmethod
    def x_power(cls, e: Scalar, var: str = "y") -> "QPolynomial":
        return cls([QTerm(ParamPoly.const(1), _as_exp(e), ())], var)

    @classmethod
    def unknown(cls, level: int = 0, var: str = "y") -> "QPolynomial":
        return cls([QTerm(ParamPoly.const(1), Fraction(0), ((level, 1),))], var)

    # -- structure

    @property
    def terms(self) -> tuple[QTerm, ...]:
        return tuple(
            QTerm(self._terms[key], key[0], key[1])
            for key in sorted(
                self._terms,
                key=lambda k: (k[0], sum(d for _, d in k[1]), k[1]),
            )
        )

    @property
    def order(self) -> int:
        return max(
            (l for _, sig in self._terms for l, _ in sig),
            default=0,
        )

    def is_zero(self) -> bool:
        return not self._terms

    def min_x_exponent(self) -> Fraction:
        if not self._terms:
            raise EmptySupportError("zero polynomial has no support")
        return min(key[0] for key in self._terms)

    def shift_x(self, delta: Scalar) -> "QPolynomial":
        """Multiply by x^delta (delta may be negative)."""
        delta = _as_exp(delta)
        return QPolynomial(
            [QTerm(c, key[0] + delta, key[1]) for key, c in self._terms.items()],
            self.var,
        )

    def renamed(self, var: str) -> "QPolynomial":
        out = QPolynomial.zero(var)
        out._terms = dict(self._terms)
        return out

    def coeff_at(self, x_exp: Scalar, sigma_powers) -> ParamPoly:
        key = (_as_exp(x_exp), _normalize_sigma(sigma_powers))
        return self._terms.get(key, ParamPoly.zero())

    def terms_at_point(self, point: Point) -> "QPolynomial":
        q1, q2 = _as_exp(point[0]), _as_exp(point[1])
        return QPolynomial(
            [t for t in self.terms if t.x_exp == q1 and Fraction(t.y_degree) == q2],
            self.var,
        )

    # -- ring operations

    def _coerce(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return QPolynomial.constant(other, self.var)
        raise TypeError(f"cannot combine QPolynomial with {type(other).__name__}")

    def __add__(self, other) -> "QPolynomial":
        other = self._coerce(other)
        return QPolynomial(list(self.terms) + list(other.terms), self.var)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(
            [QTerm(-t.coeff, t.x_exp, t.sigma_powers) for t in self.terms], self.var
        )

    def __sub__(self, other) -> "QPolynomial":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "QPolynomial":
        other = self._coerce(other)
        out = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.append(
                    QTerm(
                        t1.coeff * t2.coeff,
                        t1.x_exp + t2.x_exp,
                        t1.sigma_powers + t2.sigma_powers,
                    )
                )
        return QPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("QPolynomial powers must be nonnegative integers")
        result = QPolynomial.constant(1, self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- display

    def to_dsl(self, var: str | None = None) -> str:
        return format_qpolynomial(self, var or self.var)

    def __str__(self) -> str:
        return self.to_dsl()

    def __repr__(self) -> str:
        return f"QPolynomial({self})"


def _exp_str(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({rat_str(e)})"


def _term_factors(term: QTerm, var: str) -> tuple[str, list[str]]:
    """Sign and DSL factor strings for a term (sign handled by the caller)."""
    coeff = term.coeff
    monos = coeff.sorted_terms()
    factors: list[str] = []
    if len(monos) == 1:
        mono, c = monos[0]
        sign = "-" if c < 0 else "+"
        lead = monomial_factor_strings(mono, abs(c))
        has_tail = term.x_exp != 0 or term.sigma_powers
        if lead == ["1"] and has_tail:
            lead = []
        factors.extend(lead)
    else:
        sign = "+"
        factors.append(f"({coeff})")
    if term.x_exp != 0:
        factors.append("x" if term.x_exp == 1 else f"x^{_exp_str(term.x_exp)}")
    for level, power in term.sigma_powers:
        if level == 0:
            base = var
        elif level == 1:
            base = f"S({var})"
        else:
            base = f"S^{level}({var})"
        factors.append(base if power == 1 else f"{base}^{power}")
    return sign, factors


def format_qpolynomial(f: QPolynomial, var: str) -> str:
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for term in f.terms:
        sign, factors = _term_factors(term, var)
        body = "*".join(factors)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def support(f: QPolynomial) -> set[Point]:
    """Exponent points of all terms; duplicates collapse to one point."""
    if f.is_zero():
        raise EmptySupportError("zero polynomial has no support")
    return {t.q_point for t in f.terms}


class PowerLogSeries:
    """Finite power-logarithmic series sum_k beta_k(t) x^k, t = log_q x.

    `base_shift`, when present, is a leading pair (c, r) so a full solution
    y = c*x^r + sum beta_k x^k is one value.  Exponents are strictly
    ascending and stored betas are nonzero.
    """

    __slots__ = ("q", "_terms", "base_shift")

    def __init__(
        self,
        q: Scalar,
        terms: Iterable[tuple] = (),
        base_shift: tuple | None = None,
    ):
        self.q = check_q(q)
        merged: dict[Fraction, TPoly] = {}
        for k, beta in terms:
            k = _as_exp(k)
            if not isinstance(beta, TPoly):
                beta = TPoly.const(ParamPoly.coerce(beta))
            merged[k] = merged.get(k, TPoly.zero()) + beta
        self._terms = tuple(
            (k, merged[k]) for k in sorted(merged) if not merged[k].is_zero()
        )
        if base_shift is not None:
            c, r = base_shift
            base_shift = (ParamPoly.coerce(c), _as_exp(r))
        self.base_shift = base_shift

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms and self.base_shift is None

    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(k for k, _ in self._terms)

    def coefficient(self, k: Scalar) -> TPoly:
        k = _as_exp(k)
        for kk, beta in self._terms:
            if kk == k:
                return beta
        return TPoly.zero()

    def min_exponent(self) -> Fraction | None:
        flat = self.flattened()
        return flat[0][0] if flat else None

    def with_term(self, k: Scalar, beta: TPoly) -> "PowerLogSeries":
        return PowerLogSeries(
            self.q, list(self._terms) + [(k, beta)], self.base_shift
        )

    def truncated(self, k_max: Scalar) -> "PowerLogSeries":
        k_max = _as_exp(k_max)
        return PowerLogSeries(
            self.q,
            [(k, b) for k, b in self._terms if k <= k_max],
            self.base_shift,
        )

    def flattened(self) -> list[tuple]:
        """Terms with the base pair folded in as a constant log-polynomial."""
        if self.base_shift is None:
            return list(self._terms)
        c, r = self.base_shift
        merged: dict[Fraction, TPoly] = {r: TPoly.const(c)}
        for k, beta in self._terms:
            merged[k] = merged.get(k, TPoly.zero()) + beta
        return [
            (k, merged[k]) for k in sorted(merged) if not merged[k].is_zero()
        ]

    def bind_parameters(self, assignment: Mapping[str, Scalar]) -> "PowerLogSeries":
        """Evaluate all parameter symbols, keeping t symbolic."""
        base = self.base_shift
        if base is not None:
            base = (ParamPoly.const(base[0].evaluate(assignment)), base[1])
        return PowerLogSeries(
            self.q,
            [(k, b.evaluate_coeffs(assignment)) for k, b in self._terms],
            base,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerLogSeries):
            return NotImplemented
        return (
            self.q == other.q
            and self._terms == other._terms
            and self.base_shift == other.base_shift
        )

    def __hash__(self):
        return hash((self.q, self._terms, self.base_shift))

    def to_string(self, var: str = "t") -> str:
        parts = []
        for k, beta in self.flattened():
            beta_s = beta.to_string(var)
            if not beta.is_constant() or len(beta.coeff(0).sorted_terms()) > 1:
                beta_s = f"({beta_s})"
            if k == 0:
                parts.append(beta_s)
            else:
                x_s = "x" if k == 1 else f"x^{_exp_str(k)}"
                if beta_s == "1":
                    parts.append(x_s)
                elif beta_s == "-1":
                    parts.append(f"-{x_s}")
                else:
                    parts.append(f"{beta_s}*{x_s}")
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += f" - {part[1:]}"
            else:
                out += f" + {part}"
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"PowerLogSeries({self})"


def substitute_shift(
    f: QPolynomial,
    c: ParamPoly | Scalar,
    r: Scalar,
    q: Scalar,
    new_var_name: str = "z",
) -> QPolynomial:
    """The substitution y = c*x^r + z, fully expanded and merged.

    Each factor S^l y becomes c*q^{l r}*x^r + S^l z; the result is a
    q-difference sum in the new unknown.  Needs q^{l r} rational for every
    level l that occurs (always true for integer r).
    """
    q = check_q(q)
    c = ParamPoly.coerce(c)
    r = _as_exp(r)
    if c.is_zero():
        return f.renamed(new_var_name)
    shifted_level: dict[int, QPolynomial] = {}

    def level_poly(level: int) -> QPolynomial:
        if level not in shifted_level:
            lead = QTerm(c * q_pow(q, level * r), r, ())
            shifted_level[level] = QPolynomial(
                [lead, QTerm(ParamPoly.const(1), Fraction(0), ((level, 1),))],
                new_var_name,
            )
        return shifted_level[level]

    out = QPolynomial.zero(new_var_name)
    for term in f.terms:
        prod = QPolynomial(
            [QTerm(term.coeff, term.x_exp, ())], new_var_name
        )
        for level, power in term.sigma_powers:
            prod = prod * level_poly(level) ** power
        out = out + prod
    return out


FlatSeries = list  # list[(Fraction, TPoly)] ascending


def _sigma_flat(flat: FlatSeries, q: Fraction, level: int) -> FlatSeries:
    if level == 0:
        return flat
    return [(k, beta.shift(level).scale(q_pow(q, level * k))) for k, beta in flat]


def _mul_flat(a: FlatSeries, b: FlatSeries, cap: Fraction) -> FlatSeries:
    out: dict[Fraction, TPoly] = {}
    for k1, b1 in a:
        for k2, b2 in b:
            k = k1 + k2
            if k > cap:
                continue
            prod = b1 * b2
            out[k] = out.get(k, TPoly.zero()) + prod
    return [(k, out[k]) for k in sorted(out) if not out[k].is_zero()]


def evaluate_on_series(
    f: QPolynomial, s: PowerLogSeries, k_max: Scalar
) -> PowerLogSeries:
    """f evaluated at y = s, exact for all exponents <= k_max.

    Intermediate products are pruned only when the discarded exponent
    cannot reach k_max after the remaining factors (each contributes at
    least its minimal exponent), so negative exponents are handled exactly.
    """
    q = check_q(s.q)
    k_max = _as_exp(k_max)
    base_flat = s.flattened()
    sigma_cache: dict[int, FlatSeries] = {}

    def sigma_of(level: int) -> FlatSeries:
        if level not in sigma_cache:
            sigma_cache[level] = _sigma_flat(base_flat, q, level)
        return sigma_cache[level]

    total: dict[Fraction, TPoly] = {}
    for term in f.terms:
        factors: list[FlatSeries] = []
        for level, power in term.sigma_powers:
            factors.extend([sigma_of(level)] * power)
        if any(not fl for fl in factors):
            continue
        mins = [fl[0][0] for fl in factors]
        # suffix_min[i] = minimal exponent the factors from i on can add
        suffix_min = [Fraction(0)] * (len(factors) + 1)
        for i in range(len(factors) - 1, -1, -1):
            suffix_min[i] = suffix_min[i + 1] + mins[i]
        acc: FlatSeries = [(term.x_exp, TPoly.const(term.coeff))]
        if term.x_exp > k_max - suffix_min[0]:
            continue
        for i, fl in enumerate(factors):
            acc = _mul_flat(acc, fl, k_max - suffix_min[i + 1])
            if not acc:
                break
        for k, beta in acc:
            total[k] = total.get(k, TPoly.zero()) + beta
    return PowerLogSeries(
        q, [(k, b) for k, b in total.items() if k <= k_max]
    )
