from fractions import Fraction

import pytest

from tilecut import exact
from tilecut.errors import (
    DuplicateDigits,
    NotExpanding,
    SpecSyntaxError,
)
from tilecut.system import (
    RationalBox,
    TileSystem,
    bounding_box,
    format_spec,
    parse_spec,
    validate,
    verify_box,
)


def test_parse_bg(bg):
    assert bg.dim == 2
    assert bg.matrix == ((0, 3), (1, 1))
    assert bg.digits == ((0, 0), (1, 0), (-1, 0))
    assert bg.det == -3


def test_parse_a6b7(a6b7):
    assert a6b7.matrix == ((0, -7), (1, -6))
    assert a6b7.digits == tuple((i, 0) for i in range(7))
    assert validate(a6b7).standard


def test_parse_rejects_bad_row_count():
    with pytest.raises(SpecSyntaxError):
        parse_spec("dim 2\nmatrix 0 3\ndigits (0,0)\n")


def test_parse_rejects_bad_digit_arity():
    with pytest.raises(SpecSyntaxError) as e:
        parse_spec("dim 2\nmatrix 0 3 / 1 1\ndigits (0,0) (1)\n")
    assert e.value.line == 3


def test_parse_rejects_garbage_token():
    with pytest.raises(SpecSyntaxError):
        parse_spec("dim 2\nmatrix 0 x / 1 1\ndigits (0,0)\n")


def test_parse_roundtrip(bg):
    assert parse_spec(format_spec(bg)) == bg


def test_parse_accepts_comments_and_bytes():
    ts = parse_spec(b"# c\n dim 1 \nmatrix 2 # inline\ndigits (0) (1)\n")
    assert ts.dim == 1 and ts.digits == ((0,), (1,))


def test_validate_reports(bg, a6b7, triangles):
    r = validate(bg)
    assert (r.det, r.digit_count, r.standard) == (-3, 3, True)
    assert r.expansion_k == 2 and not r.warnings
    r = validate(a6b7)
    assert (r.det, r.digit_count, r.standard) == (7, 7, True)
    r = validate(triangles)
    assert r.det == 9 and r.digit_count == 7
    assert not r.standard
    assert r.warnings  # general lattice IFS mode


def test_validate_not_expanding():
    ts = TileSystem(dim=2, matrix=((1, 0), (0, 2)), digits=((0, 0), (1, 0)))
    with pytest.raises(NotExpanding):
        validate(ts)


def test_validate_duplicate_digits():
    ts = TileSystem(dim=1, matrix=((2,),), digits=((0,), (0,)))
    with pytest.raises(DuplicateDigits):
        validate(ts)


def test_validate_permutation_invariant(a6b7):
    perm = TileSystem(dim=2, matrix=a6b7.matrix, digits=tuple(reversed(a6b7.digits)))
    r1, r2 = validate(a6b7), validate(perm)
    assert (r1.det, r1.standard, r1.expansion_k) == (r2.det, r2.standard, r2.expansion_k)


def congruent_mod_image(m, v, w, bound=10):
    """Oracle: search integer preimages directly instead of solving."""
    target = exact.vec_sub(v, w)
    import itertools

    for k in itertools.product(range(-bound, bound + 1), repeat=len(m)):
        if exact.mat_vec(m, k) == target:
            return True
    return False


def test_standard_residues_brute_force(bg, a6b7, a4b5):
    # |det A| pairwise incongruent digits = complete residue system
    import itertools

    for ts in (bg, a6b7, a4b5):
        assert len(ts.digits) == abs(ts.det)
        for d1, d2 in itertools.combinations(ts.digits, 2):
            assert not congruent_mod_image(ts.matrix, d1, d2)


def test_bounding_box_interval(interval):
    box = bounding_box(interval)
    assert box.fold == 1
    assert box.lo == (Fraction(0),) and box.hi == (Fraction(1),)
    assert verify_box(interval, box)


def test_bounding_box_diagonal():
    ts = parse_spec("dim 2\nmatrix 3 0 / 0 3\ndigits (0,0) (2,2)\n")
    box = bounding_box(ts)
    assert box.lo == (Fraction(0), Fraction(0))
    assert box.hi == (Fraction(1), Fraction(1))


@pytest.mark.parametrize("name", ["bg", "a6b7", "a4b5", "triangles"])
def test_bounding_box_verified_on_examples(name, request):
    ts = request.getfixturevalue(name)
    box = bounding_box(ts)
    assert verify_box(ts, box)
    assert all(h > l for l, h in zip(box.lo, box.hi))


def test_bounding_box_fold_one_when_possible(bg, triangles):
    # these systems admit a 1-step invariant box; the CNS examples do not
    assert bounding_box(bg).fold == 1
    assert bounding_box(triangles).fold == 1


def test_box_corners():
    box = RationalBox(lo=(Fraction(0), Fraction(0)), hi=(Fraction(1), Fraction(2)))
    assert len(box.corners()) == 4
    assert box.widths() == (Fraction(1), Fraction(2))
