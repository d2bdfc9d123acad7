"""The pair correlation functional M and the closed-form bound tables.

M(R) integrates R against the pair correlation density 1 - sinc^2.  For
the dilated interval sandwiches the value collapses to an elementary
expression plus the lattice series V; the series is summed over a wide
window with its two tails rolled up exactly (trigamma for the constant
part, iterated Abel summation for the oscillatory part).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import polygamma

from . import beurling
from .numerics import (DomainError, NonConvergence, QuadratureSpec,
                       bracket_from, find_root, integrate_adaptive,
                       integrate_real_line)

TWO_PI_SQ = 2.0 * math.pi ** 2


def pc_density(x):
    """The pair correlation density 1 - sinc(x)^2."""
    return 1.0 - np.sinc(np.asarray(x, dtype=float)) ** 2


def _common_period(delta):
    """Smallest integer period shared by the density and a type-2*pi*delta
    component, when one exists; falls back to 1."""
    for ell in range(1, 17):
        if abs(delta * ell - round(delta * ell)) < 1e-9:
            return float(ell)
    return 1.0


def _abel_osc_sum(theta, c, m_last, q, levels=6):
    """Sum of exp(i*theta*n)/(n - c)**q over n > m_last.

    Iterated summation by parts; each level trades a factor ~1/(m|1-z|).
    Exact trigamma/tetragamma branch when exp(i*theta) is numerically 1.
    """
    z = cmath.exp(1j * theta)
    if abs(z - 1.0) < 1e-9:
        if q == 2:
            return complex(polygamma(1, m_last + 1 - c))
        return complex(-0.5 * polygamma(2, m_last + 1 - c))
    n = m_last + 1 + np.arange(levels + 1, dtype=float)
    a = 1.0 / (n - c) ** q
    total = 0.0 + 0.0j
    zpow = cmath.exp(1j * (theta * (m_last + 1) % (2.0 * math.pi)))
    factor = zpow / (1.0 - z)
    for _ in range(levels):
        total += factor * a[0]
        a = np.diff(a)
        factor *= z / (1.0 - z)
    return total


def _series_tails(delta, beta, m_right, k_left, s_right, s_left):
    """Exact tails of the lattice series beyond the summation window.

    m_right: largest n included; k_left: largest -n included.  s_right and
    s_left are the signs attached to the two ends of the bilateral sum.
    """
    a = 2.0 * math.pi / delta
    c = delta * beta
    inv4pi2 = 1.0 / (4.0 * math.pi ** 2)
    phase_r = cmath.exp(1j * ((a * c) % (2.0 * math.pi)))

    s2 = _abel_osc_sum(-a, c, m_right, 2)
    s3 = _abel_osc_sum(-a, c, m_right, 3)
    right = inv4pi2 * (
        (delta + 1.0) * polygamma(1, m_right + 1 - c)
        - (delta - 1.0) * (phase_r * s2).real
        + (delta / math.pi) * (phase_r * s3).imag
    )

    s2l = _abel_osc_sum(a, -c, k_left, 2)
    s3l = _abel_osc_sum(a, -c, k_left, 3)
    left = inv4pi2 * (
        (delta + 1.0) * polygamma(1, k_left + 1 + c)
        - (delta - 1.0) * (phase_r * s2l).real
        - (delta / math.pi) * (phase_r * s3l).imag
    )
    return s_right * right + s_left * left


def _lattice_sum(delta, beta):
    """Window terms of the bilateral series, near-resonant entries expanded.

    Returns (n, terms, n_lo, n_hi); callers attach the sign pattern and
    the exact tails.
    """
    if delta < 1:
        raise DomainError("delta must be at least 1")
    if beta <= 0:
        raise DomainError("beta must be positive")
    c = delta * beta
    half = max(10_000, int(math.ceil(c)) * 100)
    n_lo = int(math.floor(c)) - half
    n_hi = int(math.floor(c)) + half
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    u = c - n
    a = 2.0 * math.pi / delta
    inv4pi2 = 1.0 / (4.0 * math.pi ** 2)

    phi = a * u
    near = np.abs(u) < 1e-4
    safe = np.where(near, 1.0, u)
    bracket = (
        -(delta - 1.0) * np.cos(phi)
        + (delta + 1.0)
        - np.sin(phi) * delta / (math.pi * safe)
    ) / safe ** 2
    # analytic continuation across the resonance u -> 0
    u2 = u ** 2
    series = (
        a ** 2 * ((delta - 1.0) / 2.0 + 1.0 / 3.0)
        - a ** 4 * u2 * ((delta - 1.0) / 24.0 + 1.0 / 60.0)
        + a ** 6 * u2 ** 2 * ((delta - 1.0) / 720.0 + 1.0 / 2520.0)
    )
    terms = inv4pi2 * np.where(near, series, bracket)
    return n, terms, n_lo, n_hi


def v_series(delta, beta, sign):
    """The signed lattice series; sign picks the weight of the n=0 term."""
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")
    n, terms, n_lo, n_hi = _lattice_sum(delta, beta)
    sgn = np.sign(n)
    sgn[n == 0] = float(sign)
    window = float(np.sum(sgn * terms))
    return window + _series_tails(delta, beta, n_hi, -n_lo, +1.0, -1.0)


def g_of(delta, beta):
    """The unsigned recombination of the lattice series; constant 1/2."""
    n, terms, n_lo, n_hi = _lattice_sum(delta, beta)
    window = float(np.sum(terms))
    return window + _series_tails(delta, beta, n_hi, -n_lo, +1.0, +1.0)


@dataclass(frozen=True)
class MEvaluation:
    beta: float
    delta: float
    sign: int
    closed_form: float
    asymptotic: float
    quadrature_check: Optional[float] = None


@dataclass(frozen=True)
class BoundRow:
    beta: float
    lower: float
    upper: float
    nstar_ratio: float
    lower_adjusted: float
    upper_adjusted: float
    conjecture: float


def m_of(R, spec=None, inner=24.0):
    """M(R) for a band-limited R integrable against the density.

    Time-domain quadrature always; for band [-1,1] functions with a
    transform evaluator the Plancherel form is computed as well and the
    two must agree to 1e-7.
    """
    period = _common_period(R.delta)
    spec = spec or QuadratureSpec(oscillation_period=period)
    if spec.oscillation_period is None:
        spec = QuadratureSpec(spec.abs_tol, spec.rel_tol, spec.max_depth, period)

    def integrand(x):
        return np.asarray(R.time_eval(x), dtype=float) * pc_density(x)

    time_value = integrate_real_line(integrand, spec, inner=inner)

    if R.freq_eval is not None and R.delta <= 1.0 + 1e-12:
        rhat0 = float(np.asarray(R.freq_eval(np.array([0.0])))[0])
        tri = integrate_adaptive(
            lambda t: np.asarray(R.freq_eval(t)) * (1.0 - np.abs(t)),
            -1.0, 1.0, QuadratureSpec())
        freq_value = rhat0 - tri
        if abs(freq_value - time_value) > 1e-7:
            raise NonConvergence(
                f"time/frequency evaluations of M disagree: "
                f"{time_value!r} vs {freq_value!r}")
        return freq_value
    return time_value


def m_selberg(beta, delta=1.0, sign=+1, with_quadrature=False):
    """Half of M for the dilated interval sandwich, in closed form."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    if delta < 1:
        raise DomainError("delta must be at least 1")
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")
    closed = (
        beta + sign / (2.0 * delta)
        - (1.0 / delta) * (1.0 / (TWO_PI_SQ * beta)
                           - math.sin(2.0 * math.pi * beta)
                           / (4.0 * math.pi ** 3 * beta ** 2))
        - v_series(delta, beta, sign)
    )
    asym = beta - 0.5 + sign / (2.0 * delta) + 1.0 / (TWO_PI_SQ * beta)
    check = None
    if with_quadrature:
        pair = beurling.make_selberg_pair(beta, delta)
        fn = pair.majorant if sign > 0 else pair.minorant
        # the oscillatory tail extrapolation saturates near 1e-10 for
        # large beta; a 1e-9 budget keeps the check far below its 1e-7 use
        spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9,
                              oscillation_period=_common_period(delta))
        check = 0.5 * m_of(fn, spec=spec, inner=max(24.0, 4.0 * beta))
    return MEvaluation(beta=beta, delta=delta, sign=sign, closed_form=closed,
                       asymptotic=asym, quadrature_check=check)


def conjecture_integral(beta):
    """Mass of the pair correlation density on [0, beta]."""
    if beta < 0:
        raise DomainError("beta must be nonnegative")
    if beta == 0:
        return 0.0
    return integrate_adaptive(pc_density, 0.0, beta,
                              QuadratureSpec(oscillation_period=1.0))


def _one_row(beta, nstar_ratio):
    lower = m_selberg(beta, 1.0, -1).closed_form
    upper = m_selberg(beta, 1.0, +1).closed_form
    adj = 0.5 * (1.0 - nstar_ratio)
    return BoundRow(beta=beta, lower=lower, upper=upper,
                    nstar_ratio=nstar_ratio,
                    lower_adjusted=lower + adj, upper_adjusted=upper + adj,
                    conjecture=conjecture_integral(beta))


def bound_table(betas, nstar_ratio=1.0, max_workers=None):
    """Upper/lower bound rows on a beta grid.

    The multiplicity knob shifts both bounds by (1 - nstar_ratio)/2; with
    ratio 4/3 the lower bound drops by exactly 1/6.
    """
    betas = list(betas)
    if any(b <= 0 for b in betas):
        raise DomainError("beta grid must be positive")
    if sorted(betas) != betas:
        raise DomainError("beta grid must be ascending")
    if not 1.0 <= nstar_ratio <= 4.0 / 3.0 + 1e-12:
        raise DomainError("nstar_ratio must lie in [1, 4/3]")
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda b: _one_row(b, nstar_ratio), betas))
    return [_one_row(b, nstar_ratio) for b in betas]


def q_aspect_bounds(beta, epsilon=1e-3):
    """Lower/upper pair at dilation 2 - epsilon (the widest usable band)."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError("epsilon must lie in (0, 1)")
    delta = 2.0 - epsilon
    return (m_selberg(beta, delta, -1).closed_form,
            m_selberg(beta, delta, +1).closed_form)


def positivity_threshold(tol=1e-6):
    """Smallest beta where the minorant bound turns positive."""

    def f(b):
        return m_selberg(b, 1.0, -1).closed_form

    grid = np.arange(0.5, 1.2, 0.01)
    vals = [f(b) for b in grid]
    for i in range(len(grid) - 1):
        if vals[i] < 0 <= vals[i + 1]:
            return find_root(f, bracket_from(f, grid[i], grid[i + 1]), tol)
    raise NonConvergence("no positivity crossing located in [0.5, 1.2]")
