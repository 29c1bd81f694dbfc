import itertools
import random
from fractions import Fraction

import pytest

from tilecut import exact
from tilecut.errors import EmptyPeriod, SingularMatrix

BG = ((0, 3), (1, 1))
A6B7 = ((0, -7), (1, -6))
A4B5 = ((0, -5), (1, -4))


def det_cofactor(m):
    """Independent oracle: Laplace expansion along the first row."""
    d = len(m)
    if d == 0:
        return 1
    if d == 1:
        return m[0][0]
    total = 0
    for j in range(d):
        minor = tuple(tuple(row[k] for k in range(d) if k != j) for row in m[1:])
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def test_det_frozen_examples():
    assert exact.det(BG) == -3
    assert exact.det(A6B7) == 7
    assert exact.det(exact.identity(4)) == 1


def test_det_matches_cofactor_oracle():
    rng = random.Random(7)
    for d in (1, 2, 3):
        for _ in range(200):
            m = tuple(tuple(rng.randint(-9, 9) for _ in range(d)) for _ in range(d))
            assert exact.det(m) == det_cofactor(m)


def test_det_singular():
    assert exact.det(((1, 2), (2, 4))) == 0


def test_solve_identity_and_scalar():
    assert exact.solve_rational(exact.identity(2), (5, 7)) == (5, 7)
    assert exact.solve_rational(((2,),), (1,)) == (Fraction(1, 2),)


def test_solve_paper_value():
    # (A - I) x = (3, 0) for the x^2+6x+7 tile matrix
    m = exact.mat_sub(A6B7, exact.identity(2))
    assert exact.solve_rational(m, (3, 0)) == (Fraction(-3, 2), Fraction(-3, 14))


def test_solve_resubstitution():
    rng = random.Random(11)
    for _ in range(100):
        d = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-6, 6) for _ in range(d)) for _ in range(d))
        if exact.det(m) == 0:
            continue
        b = tuple(rng.randint(-9, 9) for _ in range(d))
        x = exact.solve_rational(m, b)
        assert exact.mat_vec(m, x) == tuple(map(Fraction, b))


def test_solve_singular_raises():
    with pytest.raises(SingularMatrix):
        exact.solve_rational(((1, 2), (2, 4)), (1, 1))


def brute_force_in_image(m, b, bound=25):
    d = len(m)
    for x in itertools.product(range(-bound, bound + 1), repeat=d):
        if exact.mat_vec(m, x) == tuple(b):
            return True
    return False


def test_in_lattice_image_examples():
    assert exact.in_lattice_image(BG, (0, 0))
    assert not exact.in_lattice_image(BG, (2, 0))
    assert exact.in_lattice_image(BG, (3, 1))


def test_in_lattice_image_matches_brute_force():
    rng = random.Random(3)
    for _ in range(80):
        m = tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2))
        if exact.det(m) == 0:
            continue
        b = tuple(rng.randint(-5, 5) for _ in range(2))
        assert exact.in_lattice_image(m, b) == brute_force_in_image(m, b)


def smallest_contracting_power(m, k_max):
    """Oracle: direct norm evaluation of m^-k for each k."""
    inv = exact.inverse(m)
    p = inv
    for k in range(1, k_max + 1):
        if exact.norm_inf(p) < 1:
            return k
        p = exact.mat_mul(p, inv)
    return None


@pytest.mark.parametrize(
    "matrix,expected",
    [
        (((2,),), 1),
        (((0, 3), (1, 1)), 2),
        (A6B7, 3),
        (A4B5, 3),
        (((3, 0), (0, 3)), 1),
    ],
)
def test_expansion_certificate(matrix, expected):
    assert exact.expansion_certificate(matrix) == expected
    assert smallest_contracting_power(matrix, 64) == expected


def test_expansion_certificate_absent_for_isometry():
    assert exact.expansion_certificate(exact.identity(2), 16) is None
    assert exact.expansion_certificate(((1, 0), (0, 2)), 16) is None


def test_expansion_certificate_singular_raises():
    with pytest.raises(SingularMatrix):
        exact.expansion_certificate(((0, 0), (0, 0)))


def test_periodic_point_paper_values():
    assert exact.periodic_point(A6B7, [], [(3, 0)]) == (Fraction(-3, 2), Fraction(-3, 14))
    assert exact.periodic_point(BG, [], [(0, 0)]) == (Fraction(0), Fraction(0))
    assert exact.periodic_point(((2,),), [], [(1,)]) == (Fraction(1),)


def test_periodic_point_requires_period():
    with pytest.raises(EmptyPeriod):
        exact.periodic_point(BG, [(0, 0)], [])


@pytest.mark.parametrize("matrix,digits", [
    (BG, ((0, 0), (1, 0), (-1, 0))),
    (A6B7, tuple((i, 0) for i in range(7))),
    (A4B5, tuple((i, 0) for i in range(5))),
])
def test_periodic_point_fixed_point_identity(matrix, digits):
    # A^p z = z + value(period) must hold exactly for pure periods
    rng = random.Random(5)
    for _ in range(50):
        p = rng.randint(1, 4)
        period = [digits[rng.randrange(len(digits))] for _ in range(p)]
        z = exact.periodic_point(matrix, [], period)
        lhs = exact.mat_vec(exact.mat_pow(matrix, p), z)
        rhs = exact.vec_add(z, exact.word_value(matrix, period))
        assert lhs == tuple(map(Fraction, rhs))


def test_periodic_point_preperiod_shift():
    # prepending digits e then evaluating equals A^-1 (value + e)
    rng = random.Random(9)
    digits = tuple((i, 0) for i in range(7))
    for _ in range(40):
        pre = [digits[rng.randrange(7)] for _ in range(rng.randint(0, 3))]
        per = [digits[rng.randrange(7)] for _ in range(rng.randint(1, 3))]
        z = exact.periodic_point(A6B7, pre, per)
        e = digits[rng.randrange(7)]
        z2 = exact.periodic_point(A6B7, [e] + pre, per)
        assert exact.mat_vec(A6B7, z2) == exact.vec_add(z, tuple(map(Fraction, e)))


def test_word_value_right_append():
    w = [(1, 0), (0, 0), (-1, 0)]
    v = exact.word_value(BG, w[:-1])
    assert exact.word_value(BG, w) == exact.vec_add(exact.mat_vec(BG, v), (-1, 0))


def test_format_rational_vector():
    assert exact.format_rational_vector((Fraction(-3, 2), Fraction(-3, 14))) == "(-3/2, -3/14)"
    assert exact.format_rational_vector((Fraction(5), Fraction(0))) == "(5, 0)"
