"""Tile system model: an expanding integer matrix together with a finite
integer digit set, plus parsing, validation and a certified rational
bounding box for the attractor."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact
from .errors import (
    DuplicateDigits,
    NonConvergence,
    NotExpanding,
    SingularMatrix,
    SpecSyntaxError,
    ValidationError,
)

EXPANSION_KMAX = 64
BOX_ITERATION_CAP = 256
BOX_GRID = 2**20  # outward rounding grid for box iterates
BOX_DIGIT_ENUM_CAP = 20000  # max digit words enumerated exactly per fold


@dataclass(frozen=True)
class TileSystem:
    """The pair (A, D): expanding integer matrix and ordered digit list.

    Digit order is taken verbatim from the input and is the canonical order
    for word enumeration and tie-breaking everywhere downstream.
    """

    dim: int
    matrix: exact.IntMatrix
    digits: tuple[exact.IntVector, ...]

    @property
    def det(self) -> int:
        return exact.det(self.matrix)

    @property
    def ndigits(self) -> int:
        return len(self.digits)

    def digit_index(self, digit: exact.IntVector) -> int:
        return self.digits.index(digit)


@dataclass(frozen=True)
class RationalBox:
    """Axis-aligned box with exact rational bounds enclosing the attractor.

    `fold` records the smallest c for which the c-fold refinement identity
    A^-c (B + D_c) subset-of B was verified; c = 1 is the plain set-equation
    identity, which does not exist as a box for every expanding system.
    """

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    fold: int = 1

    def widths(self) -> tuple[Fraction, ...]:
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    def corners(self):
        return [
            tuple(pick)
            for pick in itertools.product(*[(l, h) for l, h in zip(self.lo, self.hi)])
        ]


@dataclass
class ValidationReport:
    det: int
    digit_count: int
    standard: bool
    expansion_k: int
    warnings: list[str] = field(default_factory=list)


_INT = re.compile(r"-?\d+")


def _parse_int(tok: str, lineno: int, col: int) -> int:
    if not _INT.fullmatch(tok):
        raise SpecSyntaxError(f"expected integer, got {tok!r}", lineno, col)
    return int(tok)


def parse_spec(text: str | bytes) -> TileSystem:
    """Parse the line-oriented tile-spec format and validate the result.

    Format::

        dim 2
        matrix 0 3 / 1 1
        digits (0,0) (1,0) (-1,0)

    with `#` comments and blank lines allowed anywhere.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    dim = None
    matrix = None
    digits = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "dim":
            dim = _parse_int(rest, lineno, line.index(rest) + 1 if rest else 1)
            if dim <= 0:
                raise SpecSyntaxError("dim must be positive", lineno)
        elif key == "matrix":
            if dim is None:
                raise SpecSyntaxError("matrix before dim", lineno)
            rows = [r.strip() for r in rest.split("/")]
            if len(rows) != dim:
                raise SpecSyntaxError(
                    f"expected {dim} matrix rows separated by '/', got {len(rows)}", lineno
                )
            out = []
            for r in rows:
                toks = r.split()
                if len(toks) != dim:
                    raise SpecSyntaxError(
                        f"expected {dim} entries per row, got {len(toks)}", lineno
                    )
                out.append(tuple(_parse_int(t, lineno, 1) for t in toks))
            matrix = tuple(out)
        elif key == "digits":
            if dim is None:
                raise SpecSyntaxError("digits before dim", lineno)
            toks = re.findall(r"\(([^)]*)\)", rest)
            leftovers = re.sub(r"\([^)]*\)", "", rest).strip()
            if leftovers:
                raise SpecSyntaxError(f"unexpected text {leftovers!r} in digits", lineno)
            if not toks:
                raise SpecSyntaxError("no digits given", lineno)
            ds = []
            for t in toks:
                parts = [p.strip() for p in t.split(",")]
                if len(parts) != dim:
                    raise SpecSyntaxError(
                        f"digit {('(' + t + ')')!r} has {len(parts)} coordinates, expected {dim}",
                        lineno,
                    )
                ds.append(tuple(_parse_int(p, lineno, 1) for p in parts))
            digits = tuple(ds)
        else:
            raise SpecSyntaxError(f"unknown directive {key!r}", lineno)
    if dim is None:
        raise SpecSyntaxError("missing dim line", 1)
    if matrix is None:
        raise SpecSyntaxError("missing matrix line", 1)
    if digits is None:
        raise SpecSyntaxError("missing digits line", 1)
    ts = TileSystem(dim=dim, matrix=matrix, digits=digits)
    validate(ts)
    return ts


def format_spec(ts: TileSystem) -> str:
    rows = " / ".join(" ".join(str(x) for x in row) for row in ts.matrix)
    digs = " ".join("(" + ",".join(str(x) for x in d) + ")" for d in ts.digits)
    return f"dim {ts.dim}\nmatrix {rows}\ndigits {digs}\n"


def validate(ts: TileSystem) -> ValidationReport:
    """Check the defining data and classify the digit set.

    Hard failures: zero determinant, no expansion certificate, repeated
    digits. A digit count differing from |det A| is only a warning so that
    general lattice IFS (non-tiling digit sets) run through the same
    pipeline.
    """
    d = exact.det(ts.matrix)
    if d == 0:
        raise SingularMatrix("tile matrix must be nonsingular")
    for v in ts.digits:
        if len(v) != ts.dim:
            raise ValidationError(f"digit {v} has wrong dimension")
    if len(ts.matrix) != ts.dim or any(len(r) != ts.dim for r in ts.matrix):
        raise ValidationError("matrix shape does not match dim")
    if len(set(ts.digits)) != len(ts.digits):
        raise DuplicateDigits("digit set contains repeats")
    k = exact.expansion_certificate(ts.matrix, EXPANSION_KMAX)
    if k is None:
        raise NotExpanding(
            f"no k <= {EXPANSION_KMAX} certifies ||A^-k|| < 1; matrix is not expanding"
        )
    warnings = []
    standard = False
    if len(ts.digits) == abs(d):
        standard = all(
            not exact.in_lattice_image(ts.matrix, exact.vec_sub(a, b))
            for a, b in itertools.combinations(ts.digits, 2)
        )
        if not standard:
            warnings.append(
                "digit count matches |det A| but digits do not form a complete "
                "residue system; treating as general lattice IFS"
            )
    else:
        warnings.append(
            f"digit count {len(ts.digits)} != |det A| = {abs(d)}: general lattice "
            "IFS mode, tiling-dependent conclusions do not apply"
        )
    return ValidationReport(
        det=d,
        digit_count=len(ts.digits),
        standard=standard,
        expansion_k=k,
        warnings=warnings,
    )


def is_standard(ts: TileSystem) -> bool:
    return validate(ts).standard


def _round_out(lo, hi):
    grid = BOX_GRID
    lo2 = tuple(Fraction((x * grid).__floor__(), grid) for x in lo)
    hi2 = tuple(Fraction(-((-x * grid).__floor__()), grid) for x in hi)
    return lo2, hi2


def _fold_digit_images(ts: TileSystem, fold: int, cinv):
    """Per-coordinate min/max of C^fold·v over all level-`fold` digit values v.

    Falls back to interval composition when |D|^fold exceeds the enumeration
    cap; that only loosens the box, never unsounds it.
    """
    d = ts.dim
    if ts.ndigits**fold <= BOX_DIGIT_ENUM_CAP:
        values = [(0,) * d]
        for _ in range(fold):
            values = [
                exact.vec_add(exact.mat_vec(ts.matrix, v), dig)
                for v in values
                for dig in ts.digits
            ]
        imgs = [exact.mat_vec(cinv, v) for v in values]
        lo = tuple(min(img[i] for img in imgs) for i in range(d))
        hi = tuple(max(img[i] for img in imgs) for i in range(d))
        return lo, hi
    # interval arithmetic on v built digit by digit, then one exact image
    vlo = [Fraction(0)] * d
    vhi = [Fraction(0)] * d
    dlo = [min(dig[i] for dig in ts.digits) for i in range(d)]
    dhi = [max(dig[i] for dig in ts.digits) for i in range(d)]
    for _ in range(fold):
        nlo, nhi = [], []
        for i in range(d):
            terms = [
                sorted((ts.matrix[i][j] * vlo[j], ts.matrix[i][j] * vhi[j]))
                for j in range(d)
            ]
            nlo.append(sum(t[0] for t in terms) + dlo[i])
            nhi.append(sum(t[1] for t in terms) + dhi[i])
        vlo, vhi = nlo, nhi
    lo, hi = [], []
    for i in range(d):
        terms = [sorted((cinv[i][j] * vlo[j], cinv[i][j] * vhi[j])) for j in range(d)]
        lo.append(sum(t[0] for t in terms))
        hi.append(sum(t[1] for t in terms))
    return tuple(lo), tuple(hi)


def _box_step(lo, hi, cinv, dlo, dhi):
    """Exact bounding box of C(B) + [dlo, dhi] for the box B = [lo, hi]."""
    d = len(lo)
    nlo, nhi = [], []
    for i in range(d):
        terms = [sorted((cinv[i][j] * lo[j], cinv[i][j] * hi[j])) for j in range(d)]
        nlo.append(sum(t[0] for t in terms) + dlo[i])
        nhi.append(sum(t[1] for t in terms) + dhi[i])
    return tuple(nlo), tuple(nhi)


def verify_box(ts: TileSystem, box: RationalBox) -> bool:
    """Exact recheck of the refinement identity at the box's fold."""
    cinv = exact.mat_pow(exact.inverse(ts.matrix), box.fold)
    dlo, dhi = _fold_digit_images(ts, box.fold, cinv)
    nlo, nhi = _box_step(box.lo, box.hi, cinv, dlo, dhi)
    return all(nl >= l for nl, l in zip(nlo, box.lo)) and all(
        nh <= h for nh, h in zip(nhi, box.hi)
    )


def bounding_box(ts: TileSystem, max_fold: int | None = None) -> RationalBox:
    """Smallest-fold rational box B with A^-c (B + D_c) inside B, exactly.

    The box map is iterated on an outward-rounded grid until it stabilizes;
    when the 1-step map admits no invariant box (the iteration drifts), the
    fold c is raised, which always succeeds by c = expansion k since then
    the map is an exact contraction. The resulting box encloses the
    attractor whatever the fold.
    """
    k = exact.expansion_certificate(ts.matrix, EXPANSION_KMAX)
    if k is None:
        raise NotExpanding("cannot bound a non-expanding system")
    if max_fold is None:
        max_fold = max(k, 1)
    inv = exact.inverse(ts.matrix)
    for fold in range(1, max_fold + 1):
        cinv = exact.mat_pow(inv, fold)
        dlo, dhi = _fold_digit_images(ts, fold, cinv)
        lo = tuple(Fraction(0) for _ in range(ts.dim))
        hi = tuple(Fraction(0) for _ in range(ts.dim))
        seen = {(lo, hi)}
        for _ in range(BOX_ITERATION_CAP):
            nlo, nhi = _box_step(lo, hi, cinv, dlo, dhi)
            nlo, nhi = _round_out(nlo, nhi)
            if (nlo, nhi) == (lo, hi):
                box = RationalBox(lo=lo, hi=hi, fold=fold)
                if not verify_box(ts, box):
                    raise NonConvergence("stable box failed exact verification")
                return box
            if (nlo, nhi) in seen:
                # join the cycle and keep going
                nlo = tuple(min(a, b) for a, b in zip(nlo, lo))
                nhi = tuple(max(a, b) for a, b in zip(nhi, hi))
            seen.add((nlo, nhi))
            lo, hi = nlo, nhi
    raise NonConvergence(
        f"box map did not stabilize for any fold <= {max_fold}"
    )
