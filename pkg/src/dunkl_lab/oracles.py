"""Independent reference implementations used only by the tests.

Nothing here imports the solvers it checks.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial, prod


def partitions(n, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def z_lambda(lam):
    out = 1
    for v in set(lam):
        c = lam.count(v)
        out *= v ** c * factorial(c)
    return out


def power_to_monomial(lam, mu):
    """Coefficient of m_mu in p_lam: ways to distribute the parts of lam into
    len(mu) bins with bin sums equal to mu."""
    k = len(mu)
    count = 0
    for assign in product(range(k), repeat=len(lam)):
        sums = [0] * k
        for part, b in zip(lam, assign):
            sums[b] += part
        if tuple(sums) == tuple(mu):
            count += 1
    return count


def _solve_exact(A, b):
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def jack_gram_schmidt(n, alpha):
    """J-normalized Jack polynomials of degree n in the monomial basis.

    Gram-Schmidt of monomials, ordered from the least dominant, under
    <p_lam, p_mu> = delta z_lam alpha^len(lam).  Returns {tau: {mu: coeff}}.
    """
    alpha = Fraction(alpha)
    parts = sorted(partitions(n))  # ascending lex, a linear extension of dominance
    L = [[power_to_monomial(lam, mu) for mu in parts] for lam in parts]
    # m_mu expressed in the power-sum basis: column mu of L^{-1}
    Lt = [list(col) for col in zip(*L)]
    m_in_p = {}
    for j, mu in enumerate(parts):
        e = [Fraction(int(i == j)) for i in range(len(parts))]
        m_in_p[mu] = _solve_exact(Lt, e)

    def inner(u, v):
        return sum(a * b * z_lambda(lam) * alpha ** len(lam) for a, b, lam in zip(u, v, parts))

    P_in_p, P_in_m = {}, {}
    for mu in parts:
        vec_p = list(m_in_p[mu])
        vec_m = {mu: Fraction(1)}
        for nu in parts:
            if nu == mu:
                break
            c = inner(m_in_p[mu], P_in_p[nu]) / inner(P_in_p[nu], P_in_p[nu])
            vec_p = [a - c * b for a, b in zip(vec_p, P_in_p[nu])]
            for key, val in P_in_m[nu].items():
                vec_m[key] = vec_m.get(key, 0) - c * val
        P_in_p[mu], P_in_m[mu] = vec_p, vec_m

    out = {}
    ones = tuple([1] * n)
    for tau, poly in P_in_m.items():
        scale = Fraction(factorial(n)) / poly[ones]
        out[tau] = {k: v * scale for k, v in poly.items() if v != 0}
    return out


def jack_at_ones_bruteforce(coeffs, m):
    """Sum of coefficients times the number of distinct monomials of m_mu in m variables."""
    total = 0
    for mu, c in coeffs.items():
        if len(mu) > m:
            continue
        padded = mu + (0,) * (m - len(mu))
        mult = factorial(m) // prod(factorial(padded.count(v)) for v in set(padded))
        total += c * mult
    return total
