"""Periodic quadrature on circles and supremum search over circle families.

Averages use the uniform-angle trapezoid rule with a half-node offset
theta_j = 2 pi (j + 1/2) / N. On periodic integrands this rule is exact for
trigonometric polynomials of degree < N and converges spectrally for smooth
data; the offset keeps nodes off the rays where z / conj(z) fields may
carry tabulated branch data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._threads import ordered_map
from .errors import ConfigError, NumericalError
from .plane import CircleSpec, DomainSpec


@dataclass(frozen=True)
class QuadratureConfig:
    """Angular node count (power of two, >= 16), doubling budget, tolerance."""

    nodes: int = 256
    max_doublings: int = 6
    rel_tol: float = 1e-9

    def __post_init__(self):
        n = int(self.nodes)
        if n < 16 or (n & (n - 1)) != 0:
            raise ValueError(f"nodes must be a power of two >= 16, got {n}")
        if self.max_doublings < 0:
            raise ValueError("max_doublings must be >= 0")
        if not (self.rel_tol > 0):
            raise ValueError("rel_tol must be positive")
        object.__setattr__(self, "nodes", n)

    def describe(self) -> dict:
        return {
            "nodes": self.nodes,
            "max_doublings": self.max_doublings,
            "rel_tol": self.rel_tol,
        }


def angle_nodes(n: int) -> np.ndarray:
    """Half-offset uniform angles 2 pi (j + 1/2) / n."""
    return 2.0 * np.pi * (np.arange(n) + 0.5) / n


def circular_average(
    integrand: Callable[[np.ndarray], np.ndarray],
    circle: CircleSpec,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Average of a real integrand over a circle w.r.t. normalized arclength.

    Parameters
    ----------
    integrand : callable
        Vectorized map from an angle array to real values; the circle is
        already baked into the closure.
    circle : CircleSpec
        Used only for error reporting; the average is taken in the angle
        variable, which equals the normalized-arclength average.
    cfg : QuadratureConfig
        Node count is doubled until two successive estimates agree to
        rel_tol (relative, with an absolute floor of rel_tol for values
        below 1) or the doubling budget is exhausted.

    Raises
    ------
    NumericalError
        If the integrand produces a non-finite value; the message names the
        first offending node.
    """
    n = cfg.nodes
    prev = None
    for _ in range(cfg.max_doublings + 1):
        theta = angle_nodes(n)
        vals = np.asarray(integrand(theta), dtype=float)
        finite = np.isfinite(vals)
        if not np.all(finite):
            j = int(np.flatnonzero(~finite)[0])
            raise NumericalError(
                f"non-finite integrand value at theta = {theta[j]:.12g} "
                f"on circle(center={circle.center}, radius={circle.radius})"
            )
        est = float(vals.mean())
        if prev is not None and abs(est - prev) <= cfg.rel_tol * max(1.0, abs(est)):
            return est
        prev = est
        n *= 2
    return est


@dataclass(frozen=True)
class SupResult:
    """Maximum of a per-circle quantity over an admissible circle family."""

    value: float
    argmax: CircleSpec
    per_circle: tuple[tuple[CircleSpec, float], ...]

    def describe(self) -> dict:
        return {
            "value": self.value,
            "argmax": {
                "center": [self.argmax.center.real, self.argmax.center.imag],
                "radius": self.argmax.radius,
            },
            "circles_evaluated": len(self.per_circle),
        }


def _argmax_stable(circles, values):
    # deterministic under grid permutation: break exact ties by geometry
    best = max(values)
    tied = [i for i, v in enumerate(values) if v == best]
    key = lambda i: (circles[i].radius, circles[i].center.real, circles[i].center.imag)
    return min(tied, key=key)


def sup_over_circles(
    per_circle: Callable[[CircleSpec], float],
    domain: DomainSpec,
    cfg: QuadratureConfig = QuadratureConfig(),
    *,
    refine: bool = False,
) -> SupResult:
    """Evaluate a per-circle functional on every admissible circle, take the max.

    This is a finite-grid approximation of an essential supremum over a
    continuum of circles; the returned argmax lets callers refine their
    grids. With ``refine=True`` one extra level of radii (geometric means
    with the grid neighbors of the argmax) is evaluated at the argmax
    center and merged into the result.
    """
    circles = domain.admissible_circles()
    if not circles:
        raise ConfigError("no admissible circle fits inside the outer domain")
    values = ordered_map(per_circle, circles)
    values = [float(v) for v in values]
    if not all(np.isfinite(values)):
        i = next(i for i, v in enumerate(values) if not np.isfinite(v))
        raise NumericalError(f"per-circle value not finite on {circles[i]}")

    if refine:
        i = _argmax_stable(circles, values)
        best = circles[i]
        radii = sorted({c.radius for c in circles if c.center == best.center})
        j = radii.index(best.radius)
        extra = []
        if j > 0:
            extra.append(np.sqrt(radii[j - 1] * best.radius))
        if j + 1 < len(radii):
            extra.append(np.sqrt(radii[j + 1] * best.radius))
        for r in extra:
            c = CircleSpec(best.center, float(r))
            if domain.fits(c.center, c.radius):
                circles.append(c)
                values.append(float(per_circle(c)))

    i = _argmax_stable(circles, values)
    return SupResult(
        value=values[i],
        argmax=circles[i],
        per_circle=tuple(zip(circles, values)),
    )
