"""Independent oracles used by the test suite.

Each function here recomputes a result by a different method than the
library uses, so agreement is meaningful: an all-pairs halfplane hull, a
dense Gaussian-elimination solve of the polynomial difference operator,
and a generator of random equations with a planted edge solution.
"""

import random
from fractions import Fraction

from qdulac.algebra import ParamPoly, q_pow
from qdulac.qexpr import QPolynomial, QTerm

F = Fraction


def _cross(a, b, s):
    return (b[0] - a[0]) * (s[1] - a[1]) - (b[1] - a[1]) * (s[0] - a[0])


def _between(a, b, s):
    d = (b[0] - a[0], b[1] - a[1])
    t = (s[0] - a[0]) * d[0] + (s[1] - a[1]) * d[1]
    return 0 <= t <= d[0] * d[0] + d[1] * d[1]


def brute_force_hull(points):
    """Counterclockwise hull by testing every directed pair as an edge.

    (a, b) is a hull edge iff every other point is strictly left of the
    line a->b or lies on the segment between them.  Starting at the
    smallest vertex and following edges yields the hull in ccw order.
    """
    pts = sorted({(F(p[0]), F(p[1])) for p in points})
    if len(pts) == 1:
        return list(pts)
    nxt = {}
    for a in pts:
        for b in pts:
            if a == b:
                continue
            ok = True
            for s in pts:
                if s == a or s == b:
                    continue
                cr = _cross(a, b, s)
                if cr > 0:
                    continue
                if cr == 0 and _between(a, b, s):
                    continue
                ok = False
                break
            if ok:
                assert a not in nxt, "non-unique hull successor"
                nxt[a] = b
    start = min(nxt)
    hull = [start]
    cur = nxt[start]
    while cur != start:
        hull.append(cur)
        cur = nxt[cur]
    return hull


def random_point_set(rng: random.Random, max_size: int = 12):
    """Random rational points; half the draws use a small integer grid so
    duplicates and collinear runs are common."""
    n = rng.randint(1, max_size)
    pts = []
    gridded = rng.random() < 0.5
    for _ in range(n):
        if gridded:
            pts.append((F(rng.randint(0, 4)), F(rng.randint(0, 4))))
        else:
            pts.append(
                (
                    F(rng.randint(-8, 8), rng.randint(1, 4)),
                    F(rng.randint(-8, 8), rng.randint(1, 4)),
                )
            )
    return pts


def dense_difference_solve(coeffs, q, k, theta_coeffs, mu):
    """Solve sum_j a_j q^{jk} beta(t+j) = -theta by dense row reduction.

    Builds the matrix of the operator on the basis 1, t, ..., t^{D+mu}
    (entries C(d,i) * m_{d-i} with moments m_e = sum_j a_j j^e q^{jk}),
    fixes the mu kernel coordinates (degrees < mu) to zero, and solves the
    remaining square system exactly.  Returns the coefficient list of the
    particular solution, length D + mu + 1 (or [0] for theta = 0).
    """
    import math

    w = q_pow(q, k)
    target = [-c for c in theta_coeffs]
    while target and target[-1] == 0:
        target.pop()
    if not target:
        return [F(0)]
    deg_theta = len(target) - 1
    n = deg_theta + mu + 1
    moments = [
        sum((a * F(j) ** e * w**j for j, a in enumerate(coeffs)), F(0))
        for e in range(n)
    ]
    rows = []
    for i in range(deg_theta + 1):
        row = [F(0)] * n
        for d in range(i, n):
            row[d] = math.comb(d, i) * moments[d - i]
        rows.append(row + [target[i]])
    # kernel coordinates (columns < mu) pinned to zero: drop the columns
    reduced = [row[mu:] for row in rows]
    m = len(reduced)
    for col in range(m):
        pivot = next(r for r in range(col, m) if reduced[r][col] != 0)
        reduced[col], reduced[pivot] = reduced[pivot], reduced[col]
        pv = reduced[col][col]
        reduced[col] = [v / pv for v in reduced[col]]
        for r in range(m):
            if r != col and reduced[r][col] != 0:
                factor = reduced[r][col]
                reduced[r] = [
                    v - factor * pvv for v, pvv in zip(reduced[r], reduced[col])
                ]
    solution = [F(0)] * mu + [reduced[i][-1] for i in range(m)]
    return solution


def random_linear_part(rng: random.Random, q, k):
    """Coefficients of L(s) with q^k planted as a root of multiplicity mu.

    Returns (coeffs low-first, mu).  Degree stays <= 4.
    """
    mu = rng.choice([0, 0, 1, 1, 2])
    w = q_pow(q, k)
    poly = [F(1)]
    for _ in range(mu):
        # multiply by (s - w)
        poly = [F(0)] + poly
        for i in range(len(poly) - 1):
            poly[i] -= w * poly[i + 1]
    extra = rng.randint(0, 4 - mu)
    for _ in range(extra):
        while True:
            root = F(rng.randint(-4, 4), rng.randint(1, 3))
            if root != w:
                break
        poly = [F(0)] + poly
        for i in range(len(poly) - 1):
            poly[i] -= root * poly[i + 1]
    scale = F(rng.randint(1, 5), rng.randint(1, 3))
    return [scale * c for c in poly], mu


def random_edge_equation(rng: random.Random):
    """A random equation with a planted truncated solution y = c x^r.

    Two terms are placed on the line q1 + r*q2 = const with coefficients
    chosen to cancel exactly at y = c x^r; every other term lies strictly
    above the line, so the pair is an edge face of the Newton polygon and
    the planted (c, r) solves its truncated equation.  Returns
    (equation, q, c, r, edge endpoints).
    """
    q = rng.choice([F(1, 2), F(1, 4), F(2, 3)])
    r = F(rng.randint(-2, 2))
    if q == F(1, 4) and rng.random() < 0.5:
        r += F(1, 2)
    c = F(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2]))

    def rand_sigma(degree):
        if degree == 0:
            return ()
        levels = sorted(rng.sample(range(3), rng.randint(1, min(2, degree))))
        powers = [1] * len(levels)
        for _ in range(degree - len(levels)):
            powers[rng.randrange(len(levels))] += 1
        return tuple(zip(levels, powers))

    d_a = rng.randint(1, 3)
    while True:
        d_b = rng.randint(0, 3)
        if d_b != d_a:
            break
    sig_a = rand_sigma(d_a)
    sig_b = rand_sigma(d_b)
    e_a = F(rng.randint(0, 3))
    e_b = e_a + r * (d_a - d_b)
    if e_b < 0:
        shift = -e_b
        e_a += shift
        e_b += shift
    w_a = sum(l * d for l, d in sig_a)
    w_b = sum(l * d for l, d in sig_b)
    alpha = F(rng.choice([1, -1, 2, 3]), rng.choice([1, 2]))
    beta = -alpha * q_pow(q, r * (w_a - w_b)) * c ** (d_a - d_b)
    terms = [
        QTerm(ParamPoly.const(alpha), e_a, sig_a),
        QTerm(ParamPoly.const(beta), e_b, sig_b),
    ]
    line_val = e_a + r * d_a
    for _ in range(rng.randint(0, 3)):
        d = rng.randint(0, 3)
        min_e = line_val - r * d
        e = min_e + F(rng.randint(1, 3))
        if e < 0:
            continue
        terms.append(
            QTerm(
                ParamPoly.const(F(rng.randint(1, 4), rng.choice([1, 2]))),
                e,
                rand_sigma(d),
            )
        )
    eq = QPolynomial(terms)
    a_pt = (e_a, F(d_a))
    b_pt = (e_b, F(d_b))
    return eq, q, c, r, (a_pt, b_pt)
