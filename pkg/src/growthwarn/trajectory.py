"""Growth trajectories generated by linear rate laws.

A rate law ``(1/S) dS/dt = a + b*S`` has the closed-form solution

    S(t) = 1 / (C * exp(-a t) - b/a)

which is logistic for ``b < 0`` (limit ``a/|b|``) and pseudo-hyperbolic for
``b > 0`` (diverges at a finite time). Everything here works in shifted time
``t' = t - t_ref``: with ``a ~ 0.15`` and ``t ~ 2000`` the absolute-time
constant ``C`` would overflow a double.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DivergenceError, GrowthError, SingularityError
from .regime import _ols
from .series import TimeSeries

OVERFLOW_GUARD = 1e12
DEFAULT_STEP = 0.01
_A_ZERO = 1e-12

RateLaw = namedtuple("RateLaw", "a b")
RateLaw.__doc__ = "Bare (a, b) pair; any object with ``a`` and ``b`` attributes works."


def _phi(x):
    """expm1(x)/x with the removable singularity at 0 filled in."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = np.expm1(x[nz]) / x[nz]
    return out


@dataclass(frozen=True)
class TrajectoryModel:
    """A rate law pinned to an anchor point ``(t_ref, s_ref)``."""

    a: float
    b: float
    t_ref: float
    s_ref: float
    name: str = "trajectory"
    unit: str = ""

    @property
    def c_shifted(self) -> float:
        """Integration constant in the shifted frame (infinite when a == 0)."""
        if abs(self.a) < _A_ZERO:
            return math.copysign(math.inf, self.b) if self.b else 1.0 / self.s_ref
        return 1.0 / self.s_ref + self.b / self.a

    def reciprocal(self, years) -> np.ndarray:
        """1/S(t), written so that a -> 0 and b -> 0 are plain limits:
        ``1/S0 * exp(-a t') - b t' * expm1(-a t')/(-a t')``."""
        tp = np.asarray(years, dtype=float) - self.t_ref
        a = 0.0 if abs(self.a) < _A_ZERO else self.a
        near = np.abs(a * tp) <= 1.0
        out = np.exp(-a * tp) / self.s_ref - self.b * tp * _phi(-a * tp)
        if a != 0.0 and not np.all(near):
            # far from the anchor the c*exp(-a t') - b/a form rounds better
            far = ~near
            out = np.where(far, self.c_shifted * np.exp(-a * tp) - self.b / a, out)
        return out

    def __call__(self, years) -> np.ndarray:
        return 1.0 / self.reciprocal(years)


def anchor_trajectory(model, anchor, name: str = "trajectory", unit: str = "") -> TrajectoryModel:
    """Pin the rate law of ``model`` so that ``S(anchor year) = anchor size``.

    ``a == 0`` is accepted and handled through its analytic limit.
    """
    year, size = anchor
    if not size > 0:
        raise GrowthError(f"anchor size must be positive, got {size!r}")
    return TrajectoryModel(float(model.a), float(model.b), float(year), float(size), name, unit)


def singularity_time(traj: TrajectoryModel) -> float | None:
    """Calendar year at which S escapes to infinity ahead of the anchor, or None."""
    a, b = traj.a, traj.b
    if b <= 0:
        # 1/S stays positive going forward unless S0 sits above a/|b| with
        # a < 0, which is a past singularity, not a forward one.
        return None
    if abs(a) < _A_ZERO:
        return traj.t_ref + 1.0 / (traj.s_ref * b)
    # t' = -ln(b / (a c))/a rewritten as log1p(a/(S0 b))/a, which stays
    # accurate as a -> 0 where c = 1/S0 + b/a blows up.
    x = a / (traj.s_ref * b)
    if not x > -1.0:
        return None
    tp = math.log1p(x) / a
    if tp <= 0:
        return None
    return traj.t_ref + tp


def eval_trajectory(traj: TrajectoryModel, years) -> TimeSeries:
    years = np.asarray(years, dtype=float)
    u = traj.reciprocal(years)
    bad = ~(u > 0)
    if np.any(bad):
        ts = singularity_time(traj)
        where = f"{ts:.6g}" if ts is not None else "before the anchor"
        raise SingularityError(
            f"year {years[bad][0]:g} is at or beyond the singularity ({where})", year=ts
        )
    return TimeSeries(traj.name, traj.unit, years, 1.0 / u)


def logistic_asymptote(model) -> float:
    """Limit ``a/|b|`` of a logistic law."""
    if model.b >= 0:
        raise GrowthError(f"no asymptote: b = {model.b!r} is not negative")
    if model.a <= 0:
        raise GrowthError(f"no asymptote: a = {model.a!r} is not positive")
    return model.a / abs(model.b)


def integrate_rate_ode(model, anchor, years, step: float = DEFAULT_STEP, name="rk4", unit="") -> TimeSeries:
    """Classical RK4 for ``dS/dt = S (a + b S)`` from ``anchor``.

    Grid years may lie on either side of the anchor; each is reached with
    whole steps of ``step`` plus one partial step. Raises
    :class:`DivergenceError` once S reaches the overflow guard.
    """
    if not step > 0:
        raise GrowthError("step must be positive")
    a, b = float(model.a), float(model.b)
    t0, s0 = float(anchor[0]), float(anchor[1])

    def f(s):
        return s * (a + b * s)

    def rk4(s, h):
        k1 = f(s)
        k2 = f(s + 0.5 * h * k1)
        k3 = f(s + 0.5 * h * k2)
        k4 = f(s + h * k3)
        return s + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0

    years = np.asarray(years, dtype=float)
    out = np.empty_like(years)
    # Integrate outward from the anchor in each direction separately.
    for direction in (1.0, -1.0):
        idx = [i for i in np.argsort(years, kind="stable") if (years[i] - t0) * direction >= 0]
        if direction < 0:
            idx = idx[::-1]
        s, t_cur = s0, t0
        for i in idx:
            target = years[i]
            span = abs(target - t_cur)
            n_full = int(math.floor(span / step + 1e-9))
            h = direction * step
            for k in range(n_full):
                s = rk4(s, h)
                if not (abs(s) < OVERFLOW_GUARD) or not np.isfinite(s):
                    reached = t_cur + (k + 1) * h
                    raise DivergenceError(f"S diverged near year {reached:.4f}", year=reached)
            rest = target - (t_cur + n_full * h)
            if rest != 0.0:
                s = rk4(s, rest)
            if not (abs(s) < OVERFLOW_GUARD) or not np.isfinite(s):
                raise DivergenceError(f"S diverged near year {target:.4f}", year=target)
            out[i] = s
            t_cur = target
    return TimeSeries(name, unit, years, out)


@dataclass(frozen=True)
class RatePolynomial:
    """Time-dependent rate f(t) = sum c_k (t - t_ref)**k, lowest order first."""

    coefficients: tuple[float, ...]
    t_ref: float = 0.0

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("need at least one coefficient")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    def __call__(self, years):
        return Polynomial(self.coefficients)(np.asarray(years, dtype=float) - self.t_ref)


def trajectory_from_time_rate(rate: RatePolynomial, anchor, years, name="trajectory", unit="") -> TimeSeries:
    """S(t) = S0 * exp(F(t') - F(t0')) with F the exact antiderivative of f."""
    t0, s0 = float(anchor[0]), float(anchor[1])
    if not s0 > 0:
        raise GrowthError("anchor size must be positive")
    antideriv = Polynomial(rate.coefficients).integ()
    years = np.asarray(years, dtype=float)
    expo = antideriv(years - rate.t_ref) - antideriv(t0 - rate.t_ref)
    limit = math.log(OVERFLOW_GUARD / s0)
    over = expo >= limit
    if np.any(over):
        y = float(years[over][0])
        raise DivergenceError(f"S exceeds {OVERFLOW_GUARD:g} by year {y:g}", year=y)
    return TimeSeries(name, unit, years, s0 * np.exp(expo))


@dataclass(frozen=True, eq=False)
class ReciprocalSeries:
    """Pointwise 1/S with a straight-line fit of (year, 1/S).

    Hyperbolic growth has reciprocals on a falling straight line
    (``r_squared == 1``); pseudo-hyperbolic growth bends.
    """

    years: np.ndarray
    reciprocals: np.ndarray
    slope: float
    intercept: float
    r_squared: float

    @property
    def points(self):
        return list(zip(self.years.tolist(), self.reciprocals.tolist()))

    def second_differences(self) -> np.ndarray:
        return np.diff(self.reciprocals, n=2)


def reciprocal_series(series: TimeSeries) -> ReciprocalSeries:
    rec = 1.0 / series.values
    a, b, _, _, r2, _ = _ols(series.years, rec)
    return ReciprocalSeries(series.years, rec, slope=b, intercept=a, r_squared=r2)
