"""Exact piecewise-linear realization of a bouquet self-map.

The lift is a map of [0, n] with all integers identified to the branching
point.  Each circle [j-1, j] starts and ends at height 1/2, covers the
second half of circle 1, then one full circle per remaining letter of the
image word, then the first half of circle 1 (mirrored when orientation
reverses).  All arithmetic is exact rational: crossing counts must be
exact, so no floating point appears anywhere in this module.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetError, DegenerateMapError, LiftConstructionError
from .words import MapAction, Word

HALF = Fraction(1, 2)

#: composed lifts may not exceed this many linear pieces
PIECE_BUDGET = 10**7


@dataclass(frozen=True)
class Piece:
    """One linear piece x -> slope*x + intercept on [lo, hi)."""

    lo: Fraction
    hi: Fraction
    slope: Fraction
    intercept: Fraction

    def value(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def image(self) -> tuple[Fraction, Fraction]:
        """Image as a half-open interval: [v(lo), v(hi)) ascending, or
        (v(hi), v(lo)] descending."""
        return self.value(self.lo), self.value(self.hi)


@dataclass(frozen=True)
class PLLift:
    """A piecewise-linear self-map of [0, n], pieces half-open with the
    final piece closed at n."""

    n: int
    pieces: tuple[Piece, ...]

    def piece_at(self, x: Fraction) -> Piece:
        if not 0 <= x <= self.n:
            raise ValueError(f"{x} outside [0, {self.n}]")
        lo, hi = 0, len(self.pieces)
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if x < self.pieces[mid].lo:
                hi = mid
            else:
                lo = mid
        return self.pieces[lo]

    def value(self, x: Fraction) -> Fraction:
        return self.piece_at(x).value(x)

    def breakpoints(self) -> list[Fraction]:
        return [p.lo for p in self.pieces] + [self.pieces[-1].hi]

    def dump(self) -> str:
        """One line per piece: `lo hi slope intercept` in p/q notation."""
        return "\n".join(
            f"{p.lo} {p.hi} {p.slope} {p.intercept}" for p in self.pieces
        )


def _rotate_to_base(w: Word) -> Word:
    """Cyclic rotation bringing a generator-1 letter to the front.

    Rotation is a free homotopy of the underlying loop, so the realized
    map stays in the same homotopy class; the construction needs the
    traversal of every circle to start and end at the midpoint of
    circle 1.
    """
    for p, letter in enumerate(w.letters):
        if letter.index == 1:
            return Word(w.letters[p:] + w.letters[:p])
    raise LiftConstructionError(
        f"image word '{w.text()}' never visits circle 1; the canonical "
        "lift construction cannot anchor it at the branch image"
    )


def build_lift(f: MapAction) -> PLLift:
    """The canonical piecewise-linear lift of the action.

    Every integer maps to 1/2 (the branch image), and the restriction to
    [j-1, j] has constant slope of modulus len(A_j), traversing the
    circles in the order of A_j's letters.
    """
    d11 = sum(l.sign for l in f.image(1) if l.index == 1)
    visits_others = any(l.index != 1 for l in f.image(1))
    if not visits_others and d11 == -1:
        raise LiftConstructionError(
            "circle 1 maps to itself with degree -1 and visits no other "
            "circle; the construction would force slope-1 contact with "
            "the diagonal"
        )
    rotated = [_rotate_to_base(f.image(j)) for j in range(1, f.n + 1)]
    if len(rotated[0]) == 1:
        raise DegenerateMapError(
            "the image of circle 1 is a single letter, so circle 1 maps to "
            "itself with slope of modulus 1; some iterate would be the "
            "identity on it"
        )
    sign = f.global_sign
    pieces: list[Piece] = []
    for j, w in enumerate(rotated, start=1):
        r = len(w)
        slope = Fraction(sign * r)
        x = Fraction(j - 1)
        half = Fraction(1, 2 * r)
        full = Fraction(1, r)
        # (start x, width, start value) per sub-arc of the traversal
        if sign > 0:
            stops: list[tuple[Fraction, Fraction]] = [(half, HALF)]
            for letter in w.letters[1:]:
                stops.append((full, Fraction(letter.index - 1)))
            stops.append((half, Fraction(0)))
        else:
            stops = [(half, HALF)]
            for letter in w.letters[1:]:
                stops.append((full, Fraction(letter.index)))
            stops.append((half, Fraction(1)))
        for width, start_value in stops:
            pieces.append(
                Piece(x, x + width, slope, start_value - slope * x)
            )
            x += width
        assert x == j, "circle traversal does not tile the interval"
    return PLLift(f.n, tuple(pieces))


@dataclass(frozen=True)
class _ScaledLift:
    """The same map with every coordinate multiplied by `scale`.

    Slopes of the canonical lift and its composites are integers, so with
    a common denominator factored out each piece is four plain integers
    (lo, hi, slope, intercept).  Composition and counting then run on
    machine integers instead of normalizing a Fraction per operation.
    """

    n: int
    scale: int
    pieces: tuple[tuple[int, int, int, int], ...]


def _to_scaled(lift: PLLift) -> _ScaledLift:
    scale = 1
    for p in lift.pieces:
        assert p.slope.denominator == 1, "lift slopes must be integers"
        scale = math.lcm(
            scale, p.lo.denominator, p.hi.denominator, p.intercept.denominator
        )
    pieces = tuple(
        (
            int(p.lo * scale),
            int(p.hi * scale),
            int(p.slope),
            int(p.intercept * scale),
        )
        for p in lift.pieces
    )
    return _ScaledLift(lift.n, scale, pieces)


def _from_scaled(sl: _ScaledLift) -> PLLift:
    s = sl.scale
    return PLLift(
        sl.n,
        tuple(
            Piece(Fraction(lo, s), Fraction(hi, s), Fraction(k), Fraction(b, s))
            for lo, hi, k, b in sl.pieces
        ),
    )


def _compose_scaled(
    outer: _ScaledLift, inner: _ScaledLift, budget: int
) -> _ScaledLift:
    """Exact composition outer(inner(x)) in scaled-integer arithmetic.

    Each inner piece is cut at the preimages of outer breakpoints; on the
    resulting open subintervals the composite is linear, and the half-open
    convention fixes the values at the cuts.  The common scale gains a
    factor of lcm of the inner slopes so that every cut stays integral.
    """
    slope_lcm = math.lcm(*(abs(s) for _, _, s, _ in inner.pieces))
    scale = math.lcm(outer.scale, inner.scale) * slope_lcm
    fo = scale // outer.scale
    fi = scale // inner.scale
    outer_pieces = [(lo * fo, s, b * fo) for lo, _, s, b in outer.pieces]
    cuts = sorted({lo for lo, _, _ in outer_pieces}
                  | {outer.pieces[-1][1] * fo})
    outer_los2 = [2 * lo for lo, _, _ in outer_pieces]
    pieces: list[tuple[int, int, int, int]] = []
    for lo, hi, s, b in inner.pieces:
        lo, hi, b = lo * fi, hi * fi, b * fi
        xs = {lo, hi}
        for t in cuts:
            x = (t - b) // s  # exact: slope_lcm divides both t and b
            if lo < x < hi:
                xs.add(x)
        ordered = sorted(xs)
        for a, c in zip(ordered, ordered[1:]):
            y2 = s * (a + c) + 2 * b  # image of the midpoint, doubled
            q_slope, q_b = _piece_after(outer_los2, outer_pieces, y2)
            pieces.append((a, c, q_slope * s, q_slope * b + q_b))
        if len(pieces) > budget:
            raise BudgetError(
                f"composed lift exceeds {budget} pieces", smallest_m=None
            )
    return _ScaledLift(inner.n, *_reduce_scale(scale, pieces))


def _piece_after(los2: list[int], pieces: list[tuple[int, int, int]],
                 y2: int) -> tuple[int, int]:
    """Slope and intercept of the outer piece containing the point y2/2."""
    k = bisect_right(los2, y2) - 1
    _, s, b = pieces[k]
    return s, b


def _reduce_scale(
    scale: int, pieces: list[tuple[int, int, int, int]]
) -> tuple[int, tuple[tuple[int, int, int, int], ...]]:
    """Divide out the common factor so scales stay small across iterates."""
    g = scale
    for lo, hi, _, b in pieces:
        g = math.gcd(g, lo, hi, b)
        if g == 1:
            return scale, tuple(pieces)
    return scale // g, tuple(
        (lo // g, hi // g, s, b // g) for lo, hi, s, b in pieces
    )


@lru_cache(maxsize=256)
def _scaled_iterate(lift: PLLift, m: int, budget: int) -> _ScaledLift:
    if m == 1:
        return _to_scaled(lift)
    prev = _scaled_iterate(lift, m - 1, budget)
    try:
        return _compose_scaled(_scaled_iterate(lift, 1, budget), prev, budget)
    except BudgetError as e:
        raise BudgetError(str(e), smallest_m=m) from None


def iterate_lift(lift: PLLift, m: int, budget: int = PIECE_BUDGET) -> PLLift:
    """Exact m-fold composition of the lift with itself.

    Iterates are cached, so scanning m = 1..M composes each step once.
    """
    if m < 1:
        raise ValueError(f"iterate must be >= 1, got {m}")
    if m == 1:
        return lift
    return _from_scaled(_scaled_iterate(lift, m, budget))


def branch_orbit(lift: PLLift, depth: int) -> list[Fraction]:
    """Successive images of the branching point (coordinate 0) under the
    lift, evaluated pointwise and exactly."""
    out = []
    x = Fraction(0)
    for _ in range(depth):
        x = lift.value(x)
        out.append(x)
    return out


def lift_branch_period(lift: PLLift, depth: int) -> int | None:
    """Least t <= depth with the branch orbit back at an integer, or None."""
    for t, x in enumerate(branch_orbit(lift, depth), start=1):
        if x.denominator == 1:
            return t
    return None


def count_fixed(lift: PLLift, m: int, budget: int = PIECE_BUDGET) -> int:
    """Fixed points of the m-th iterate of the projected circle map.

    Counts exact diagonal crossings of the composed lift at non-integer
    points, plus 1 when the branching point itself is m-periodic.  A
    piece lying on the diagonal means the map is not expanding and is
    rejected.
    """
    composed = _scaled_iterate(lift, m, budget)
    scale = composed.scale
    top = lift.n * scale
    count = 0
    for lo, hi, s, b in composed.pieces:
        if s == 1:
            if b == 0:
                raise DegenerateMapError(
                    f"iterate {m} of the lift is the identity on "
                    f"[{Fraction(lo, scale)}, {Fraction(hi, scale)}); "
                    "the map is not expanding"
                )
            continue
        # fixed point x = b / (scale * (1 - s)); compare by cross-multiplying
        d = 1 - s
        lod, hid = lo * d, hi * d
        in_piece = (lod <= b < hid) if d > 0 else (hid < b <= lod)
        if not in_piece and hi == top and b == hid:
            in_piece = True
        if in_piece and b % (scale * d) != 0:
            count += 1
    t = lift_branch_period(lift, m)
    if t is not None and m % t == 0:
        count += 1
    return count


def _cover_count(sl: _ScaledLift) -> int:
    """Integers in the half-open image of each piece, summed.

    Ascending pieces cover [v_lo, v_hi) so contribute ceil(v_hi) -
    ceil(v_lo); descending pieces cover (v_hi, v_lo] so contribute
    floor(v_lo) - floor(v_hi).
    """
    scale = sl.scale
    total = 0
    for lo, hi, s, b in sl.pieces:
        v_lo = s * lo + b
        v_hi = s * hi + b
        if s > 0:
            total += -(-v_hi // scale) - -(-v_lo // scale)
        else:
            total += v_lo // scale - v_hi // scale
    return total


def mono_cover_size(lift: PLLift) -> int:
    """Number of preimages of the branching point, piece by piece.

    Equals the entry-sum norm of the homology matrix: each monotone arc
    between consecutive preimages covers one full circle.
    """
    return _cover_count(_to_scaled(lift))


def cover_growth(lift: PLLift, m: int, budget: int = PIECE_BUDGET) -> int:
    """Branch-preimage count of the m-th iterate (the refined cover size)."""
    return _cover_count(_scaled_iterate(lift, m, budget))
