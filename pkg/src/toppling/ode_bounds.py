"""Asymptotic constants of the strategy processes on K_n.

Three planar systems in the scaled time ``x = t / n^2`` (rounds) describe
the first incomplete row ``y`` and the gap ``z`` between row and layer (or
square side):

* triangle vs row:  ``y' = 1/(1-z)``, ``z' = 1/z - 1/(1-z)``, stop at
  ``y + z = 1`` -> ``x_plus``;
* square vs row, growth phase:  ``y' = 1/(1-z)``,
  ``z' = 1/(2z) - 1/(2(1-z))``, stop at ``y + 2z = 1`` -> ``x_bar``;
* square vs row, in-chip phase from the growth state at ``x_bar``:
  ``y' = 1/(1-z)``, ``z' = 1/(2(1-y-z)) - 1/(2(1-z))``, stop at
  ``y + z = 1`` -> ``x_minus``.

The game lasts ``2 x n^2`` turns, giving ``2 * x_minus`` and ``2 * x_plus``
as lower and upper coefficients of ``n^2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable

__all__ = [
    "OdeSystem2D",
    "StopEvent",
    "BoundResult",
    "IntegrationError",
    "DomainExitError",
    "StepSizeError",
    "integrate_to_event",
    "compute_constants",
    "TRIANGLE_ROW",
    "SQUARE_GROWTH",
    "SQUARE_INCHIP",
    "MIN_STEP",
]

MIN_STEP = 1e-14
DEFAULT_TOL = 1e-9

Rhs = Callable[[float, float, float], tuple[float, float]]


class IntegrationError(RuntimeError):
    pass


class DomainExitError(IntegrationError):
    """The trajectory left the system's domain before the stop event."""


class StepSizeError(IntegrationError):
    """Error control demanded a step below the step-size floor."""


@dataclass(frozen=True)
class OdeSystem2D:
    name: str
    rhs: Rhs
    domain: Callable[[float, float], bool]
    description: str = ""


@dataclass(frozen=True)
class StopEvent:
    """Stop where ``alpha*y + beta*z - gamma`` reaches zero from below."""

    alpha: float
    beta: float
    gamma: float

    def __call__(self, y: float, z: float) -> float:
        return self.alpha * y + self.beta * z - self.gamma


@dataclass(frozen=True)
class BoundResult:
    x_plus: float
    x_bar: float
    x_minus: float
    lower_coeff: float
    upper_coeff: float
    tol: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def rounded(self, digits: int = 6) -> dict[str, float]:
        return {k: round(v, digits) for k, v in asdict(self).items() if k != "tol"}


def _triangle_rhs(x: float, y: float, z: float) -> tuple[float, float]:
    return 1.0 / (1.0 - z), 1.0 / z - 1.0 / (1.0 - z)


def _growth_rhs(x: float, y: float, z: float) -> tuple[float, float]:
    return 1.0 / (1.0 - z), 1.0 / (2.0 * z) - 1.0 / (2.0 * (1.0 - z))


def _inchip_rhs(x: float, y: float, z: float) -> tuple[float, float]:
    return 1.0 / (1.0 - z), 1.0 / (2.0 * (1.0 - y - z)) - 1.0 / (2.0 * (1.0 - z))


def _open_unit(y: float, z: float) -> bool:
    return 0.0 < z < 1.0 and math.isfinite(y)


TRIANGLE_ROW = OdeSystem2D("triangle-row", _triangle_rhs, _open_unit, "0 < z < 1")
SQUARE_GROWTH = OdeSystem2D("square-growth", _growth_rhs, _open_unit, "0 < z < 1")
# 1 - y - z > 0 is left to the stop event y + z = 1, where the RHS blows up
SQUARE_INCHIP = OdeSystem2D("square-inchip", _inchip_rhs, _open_unit, "0 < z < 1, y + z < 1")

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))

_OK, _CROSSED, _OUTSIDE = 0, 1, 2


def _dp_step(sys: OdeSystem2D, ev: StopEvent, x: float, y: float, z: float, h: float):
    """One DP5 step; returns ``(status, y5, z5, err_y, err_z)``.

    Every stage state is screened before the RHS is evaluated there, so a
    step that reaches the stop event or leaves the domain is reported
    instead of evaluated.
    """
    ky: list[float] = []
    kz: list[float] = []
    for s in range(7):
        ys, zs = y, z
        for coef, dy, dz in zip(_A[s], ky, kz):
            ys += h * coef * dy
            zs += h * coef * dz
        if ev(ys, zs) >= 0.0:
            return _CROSSED, ys, zs, 0.0, 0.0
        if not sys.domain(ys, zs):
            return _OUTSIDE, ys, zs, 0.0, 0.0
        dy, dz = sys.rhs(x + _C[s] * h, ys, zs)
        if not (math.isfinite(dy) and math.isfinite(dz)):
            return _OUTSIDE, ys, zs, 0.0, 0.0
        ky.append(dy)
        kz.append(dz)
    y5 = y + h * sum(b * k for b, k in zip(_B5, ky))
    z5 = z + h * sum(b * k for b, k in zip(_B5, kz))
    ey = h * sum(e * k for e, k in zip(_E, ky))
    ez = h * sum(e * k for e, k in zip(_E, kz))
    return _OK, y5, z5, ey, ez


def integrate_to_event(
    sys: OdeSystem2D,
    x0: float,
    y0: float,
    z0: float,
    ev: StopEvent,
    tol: float = DEFAULT_TOL,
    *,
    h0: float | None = None,
    max_steps: int = 1_000_000,
    monitor: Callable[[float, float, float], None] | None = None,
) -> tuple[float, float, float]:
    """Integrate from ``(x0, y0, z0)`` to the first zero of ``ev``.

    Steps are error-controlled to ``tol`` (mixed absolute/relative).  A
    step that would reach the event is halved and retried, so the last
    accepted point lies within ``tol`` of the crossing; a closing Newton step
    on the event functional then lands on it.  ``monitor`` is called after
    every accepted step.
    """
    if not sys.domain(y0, z0):
        raise DomainExitError(f"start ({y0}, {z0}) outside the domain of {sys.name}")
    if ev(y0, z0) >= 0.0:
        raise ValueError("event functional must be negative at the start")
    x, y, z = x0, y0, z0
    # first step proportional to the local scale
    h = h0 if h0 is not None else max(abs(x0), tol) * 1e-3
    for _ in range(max_steps):
        status, yn, zn, ey, ez = _dp_step(sys, ev, x, y, z, h)
        floor = MIN_STEP * max(abs(x), 1e-300)
        if status != _OK:
            if h <= tol:
                if status == _OUTSIDE:
                    raise DomainExitError(f"{sys.name} left its domain near x={x:.12g} before the event")
                return _land(sys, ev, x, y, z, h)
            h *= 0.5
            continue
        err = max(abs(ey) / (tol * (1.0 + abs(y))), abs(ez) / (tol * (1.0 + abs(z))))
        if err <= 1.0:
            x, y, z = x + h, yn, zn
            if monitor is not None:
                monitor(x, y, z)
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h *= factor
        else:
            h *= max(0.2, 0.9 * err ** -0.2)
            if h < floor:
                raise StepSizeError(f"step size {h:.3g} below floor at x={x:.12g}")
    raise IntegrationError(f"no event after {max_steps} steps")


def _land(sys: OdeSystem2D, ev: StopEvent, x: float, y: float, z: float, h: float):
    """Close the last sub-``tol`` gap to the event with one Newton step."""
    g = ev(y, z)
    dy, dz = sys.rhs(x, y, z)
    rate = ev.alpha * dy + ev.beta * dz
    if rate > 0.0:
        dx = -g / rate
        if 0.0 < dx <= h:
            status, yn, zn, _, _ = _dp_step(sys, ev, x, y, z, dx)
            if status != _OUTSIDE:
                return x + dx, yn, zn
    return x + 0.5 * h, y, z


def seed_triangle(eps: float) -> tuple[float, float, float]:
    # z z' ~ 1 near the origin, so z ~ sqrt(2x)
    return eps, eps, math.sqrt(2.0 * eps)


def seed_growth(eps: float) -> tuple[float, float, float]:
    # 2 z z' ~ 1 near the origin, so z ~ sqrt(x)
    return eps, eps, math.sqrt(eps)


def compute_constants(tol: float = DEFAULT_TOL) -> BoundResult:
    """Integrate the three systems and return the crossing abscissas."""
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tol must lie in [1e-12, 1e-4], got {tol}")
    eps = tol * tol
    x, y, z = seed_triangle(eps)
    x_plus, _, _ = integrate_to_event(TRIANGLE_ROW, x, y, z, StopEvent(1.0, 1.0, 1.0), tol, h0=eps)
    x, y, z = seed_growth(eps)
    x_bar, y_bar, z_bar = integrate_to_event(SQUARE_GROWTH, x, y, z, StopEvent(1.0, 2.0, 1.0), tol, h0=eps)
    x_minus, _, _ = integrate_to_event(SQUARE_INCHIP, x_bar, y_bar, z_bar, StopEvent(1.0, 1.0, 1.0), tol)
    return BoundResult(
        x_plus=x_plus,
        x_bar=x_bar,
        x_minus=x_minus,
        lower_coeff=2.0 * x_minus,
        upper_coeff=2.0 * x_plus,
        tol=tol,
    )


def growth_state_at_switch(tol: float = DEFAULT_TOL) -> tuple[float, float, float]:
    """``(x_bar, y, z)`` where the square first meets the critical triangle."""
    x, y, z = seed_growth(tol * tol)
    return integrate_to_event(SQUARE_GROWTH, x, y, z, StopEvent(1.0, 2.0, 1.0), tol, h0=tol * tol)
