"""Exact integer and rational linear algebra on small dense matrices.

Everything here runs on Python ints and ``fractions.Fraction``; no floats
ever enter a decision. Matrices are tuples of row tuples, vectors are flat
tuples. These are the workhorses behind tile validation, neighbor pruning
and the evaluation of eventually periodic radix addresses.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import EmptyPeriod, SingularMatrix

IntVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]
RationalVector = tuple[Fraction, ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


def identity(d: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_vec(m, v):
    """Matrix times vector; works for int or Fraction entries."""
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def mat_mul(a, b):
    n, k, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p))
        for i in range(n)
    )


def mat_sub(a, b):
    return tuple(
        tuple(a[i][j] - b[i][j] for j in range(len(a[0]))) for i in range(len(a))
    )


def mat_pow(m, k: int):
    d = len(m)
    out = identity(d)
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    return tuple(c * a for a in u)


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    d = len(m)
    if d == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(d - 1):
        if a[k][k] == 0:
            for i in range(k + 1, d):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[d - 1][d - 1]


def solve_rational(m, b) -> RationalVector:
    """Exact solution x of m x = b via Gaussian elimination over Q.

    Raises SingularMatrix when the matrix has no inverse. Entries of m and b
    may be ints or Fractions; the result is always a tuple of Fractions in
    lowest terms (Fraction normalizes itself).
    """
    d = len(m)
    aug = [[Fraction(m[i][j]) for j in range(d)] + [Fraction(b[i])] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular at column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][d] for i in range(d))


def inverse(m) -> RationalMatrix:
    """Exact inverse as a Fraction matrix."""
    d = len(m)
    cols = []
    for j in range(d):
        e = tuple(1 if i == j else 0 for i in range(d))
        cols.append(solve_rational(m, e))
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def in_lattice_image(m: IntMatrix, b: IntVector) -> bool:
    """True iff b lies in m·Z^d, by exact solve plus integrality check."""
    x = solve_rational(m, b)
    return all(c.denominator == 1 for c in x)


def norm_inf(m) -> Fraction:
    """Max absolute row sum, exact."""
    return max(
        (sum((abs(Fraction(x)) for x in row), Fraction(0)) for row in m),
        default=Fraction(0),
    )


def expansion_certificate(m: IntMatrix, k_max: int = 64) -> int | None:
    """Smallest k <= k_max with ||m^-k||_inf < 1, or None.

    Such a k certifies rho(m^-1) <= ||m^-k||^(1/k) < 1, i.e. that m is
    expanding, without any eigenvalue computation.
    """
    if det(m) == 0:
        raise SingularMatrix("matrix with zero determinant cannot be expanding")
    inv = inverse(m)
    power = inv
    for k in range(1, k_max + 1):
        if norm_inf(power) < 1:
            return k
        power = mat_mul(power, inv)
    return None


def word_value(a: IntMatrix, digits: Sequence[IntVector]) -> IntVector:
    """Lattice value of a digit word, most significant digit first.

    value(d_{n-1} ... d_0) = sum_k a^k d_k; appending a digit on the right
    maps v to a·v + d.
    """
    d = len(a)
    v: IntVector = (0,) * d
    for dig in digits:
        v = vec_add(mat_vec(a, v), dig)
    return v


def periodic_point(
    a: IntMatrix,
    preperiod: Sequence[IntVector],
    period: Sequence[IntVector],
) -> RationalVector:
    """Exact value of the radix address 0.e_1 e_2 ... = sum_{k>=1} a^-k e_k
    whose digit stream is `preperiod` followed by `period` repeated forever.

    The periodic tail y solves (a^p - I) y = value(period); the preperiod is
    then absorbed by one more linear solve. Requires a nonsingular a; the
    chain of solves is exact throughout.
    """
    if len(period) == 0:
        raise EmptyPeriod("periodic part must contain at least one digit")
    d = len(a)
    p = len(period)
    tail = solve_rational(mat_sub(mat_pow(a, p), identity(d)), word_value(a, period))
    m = len(preperiod)
    if m == 0:
        return tail
    head = vec_add(word_value(a, preperiod), tail)
    return solve_rational(mat_pow(a, m), head)


def format_rational_vector(v: Sequence[Fraction]) -> str:
    """Render as `num/den` coordinates in lowest terms, e.g. (-3/2, -3/14)."""
    parts = []
    for c in v:
        c = Fraction(c)
        parts.append(str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
    return "(" + ", ".join(parts) + ")"
