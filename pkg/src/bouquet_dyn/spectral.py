"""Spectral data of the homology matrix: eigenvalues, entropy, growth bounds.

The characteristic polynomial is computed exactly over the integers, zero
roots are stripped exactly, and the remaining roots come from a
deterministic simultaneous-iteration solver.  Entropy is the natural log
of the spectral radius, clamped at zero for degenerate inputs.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import InputError
from .homology import IntMatrix, identity, mat_mul, norm1, trace

#: modulus gap below which two leading eigenvalues count as tied
DOMINANCE_EPS = 1e-8

#: scan cap for the sufficiently-large-period bound
M0_SCAN_CAP = 10_000


def char_poly(a: IntMatrix) -> list[int]:
    """Coefficients [c_0, ..., c_n] of det(xI - A), c_n = 1, exact integers.

    Trace-based coefficient recursion; every division is exact, which is
    asserted.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = identity(n)
    for i in range(1, n + 1):
        am = mat_mul(a, m)
        t = trace(am)
        assert t % i == 0, "inexact division in characteristic polynomial"
        c = -t // i
        coeffs[n - i] = c
        m = tuple(
            tuple(am[r][s] + (c if r == s else 0) for s in range(n))
            for r in range(n)
        )
    return coeffs


def _eval_poly(coeffs: list[float], z: complex) -> complex:
    out = complex(0)
    for c in reversed(coeffs):
        out = out * z + c
    return out


def _durand_kerner(coeffs: list[float], iterations: int = 200) -> list[complex]:
    """All roots of a monic polynomial [c_0, ..., c_d], c_d = 1.

    Deterministic start: points on a circle of radius 1 + max |c_i|,
    rotated off the real axis so real-coefficient symmetry cannot stall
    the iteration.
    """
    d = len(coeffs) - 1
    if d == 0:
        return []
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    roots = [
        radius * cmath.exp(2j * math.pi * (i + 0.25) / d) for i in range(d)
    ]
    for _ in range(iterations):
        moved = 0.0
        new = list(roots)
        for i in range(d):
            denom = complex(1)
            for j in range(d):
                if j != i:
                    denom *= roots[i] - roots[j]
            if denom == 0:
                continue
            step = _eval_poly(coeffs, roots[i]) / denom
            new[i] = roots[i] - step
            moved = max(moved, abs(step))
        roots = new
        if moved < 1e-14:
            break
    return roots


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues sorted by nonincreasing modulus, with derived data."""

    char_coeffs: tuple[int, ...]
    values: tuple[complex, ...]
    residual: float

    @property
    def spectral_radius(self) -> float:
        return abs(self.values[0]) if self.values else 0.0

    @property
    def second_modulus(self) -> float:
        return abs(self.values[1]) if len(self.values) > 1 else 0.0

    @property
    def entropy(self) -> float:
        s = self.spectral_radius
        # radii within root-finder noise of 1 are genuinely 1 (the exact
        # characteristic polynomial has integer coefficients)
        return math.log(s) if s > 1.0 + 1e-12 else 0.0


def eigenvalues(a: IntMatrix) -> SpectrumReport:
    """All eigenvalues of A with multiplicity, zero roots split off exactly.

    Sorted by modulus descending, ties broken by real part then imaginary
    part, both descending.  The residual is the largest |p(lambda)| over
    the scaled characteristic polynomial.
    """
    exact = char_poly(a)
    coeffs = list(exact)
    zeros = 0
    while coeffs[0] == 0 and len(coeffs) > 1:
        zeros += 1
        coeffs = coeffs[1:]
    monic = [float(c) for c in coeffs]
    found = _durand_kerner(monic)
    scale = 1.0 + max(abs(c) for c in monic)
    residual = max(
        (abs(_eval_poly(monic, z)) / scale for z in found), default=0.0
    )
    roots = found + [complex(0)] * zeros
    roots.sort(key=lambda z: (-abs(z), -z.real, -z.imag))
    return SpectrumReport(tuple(exact), tuple(roots), residual)


def entropy_spectral(a: IntMatrix) -> float:
    """Natural log of the spectral radius; 0 when the radius is at most 1.

    Topological entropy is nonnegative, so a radius below 1 (possible for
    degenerate toy inputs) is clamped with a warning.
    """
    s = eigenvalues(a).spectral_radius
    if s <= 1.0 + 1e-12:
        if s < 1.0 - 1e-12:
            warnings.warn(
                "spectral radius below 1; entropy clamped to 0",
                stacklevel=2,
            )
        return 0.0
    return math.log(s)


def _log_int(v: int) -> float:
    """log of a positive integer without overflowing float conversion."""
    if v < 10**300:
        return math.log(v)
    bits = v.bit_length() - 60
    return math.log(v >> bits) + bits * math.log(2)


def entropy_limit(a: IntMatrix, horizon: int) -> list[float]:
    """The sequence s_m = log ||M^m|| / m for m = 1..horizon.

    Norms are exact big integers; one float log per term.
    """
    if horizon < 1:
        raise InputError(f"horizon must be >= 1, got {horizon}")
    out = []
    power = identity(len(a))
    for m in range(1, horizon + 1):
        power = mat_mul(power, a)
        nrm = norm1(power)
        out.append(_log_int(nrm) / m if nrm > 0 else 0.0)
    return out


def dominant_test(s: SpectrumReport, eps: float = DOMINANCE_EPS) -> bool:
    """True when the leading modulus exceeds both 1 and the runner-up by eps."""
    if not s.values:
        return False
    return (
        s.spectral_radius > 1.0 + eps
        and s.spectral_radius > s.second_modulus + eps
    )


def _logsumexp(vals: list[float]) -> float:
    top = max(vals)
    if top == -math.inf:
        return top
    return top + math.log(sum(math.exp(v - top) for v in vals))


def m0_bound(s: SpectrumReport, dim: int) -> int | None:
    """Threshold m0 past which every period is guaranteed to occur.

    Returns the least m0 such that s1^m > d (s1^(m/2) + 1 + s2^m) + 1 for
    every m >= m0, where s1 >= s2 are the two largest eigenvalue moduli
    and d the matrix dimension.  Under the dominance hypothesis the
    inequality is eventually permanent, so a linear scan to a cap
    suffices; computed in log space so huge powers never overflow.
    Returns None when no m up to the cap works.
    """
    if not dominant_test(s):
        raise InputError("m0 bound needs a dominant leading eigenvalue")
    s1 = s.spectral_radius
    s2 = s.second_modulus
    log_s1 = math.log(s1)
    log_s2 = math.log(s2) if s2 > 0 else -math.inf
    log_d = math.log(dim)
    first = None
    for m in range(1, M0_SCAN_CAP + 1):
        lhs = m * log_s1
        rhs = _logsumexp([
            log_d + (m / 2) * log_s1,
            log_d,
            log_d + m * log_s2,
            0.0,
        ])
        if lhs > rhs:
            if first is None:
                first = m
        else:
            first = None
    return first
