"""Extremality diagnostics: perturbation averages, defect integrals, densities.

A field that realizes the worst-case exponent 1/K must look like the pure
radial stretch near the origin. Writing mu(z) = e^{2 i arg z} (-k + eps(z))
with k = (K-1)/(K+1), the diagnostics below quantify how fast the circular
averages of Re(eps) and the isoperimetric defect delta(r) decay:

* W(t) = integral_t^1 <Re eps>_{S_r} dr/r, compared against log(1/t);
* I(t) = integral_t^1 delta(r) dr/r, compared against log(1/t);
* the lower density at 0 of super-level sets {r : delta(r) > delta_0}.

For a worst-case field the infimum of both ratios over scales is 0 and the
super-level sets have zero lower density; ratios bounded away from 0 rule
extremality out. Radial integrals are computed in s = log(1/r), where the
dr/r measure is uniform, with the trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularPointError
from .geometry import GeometryProfile
from .plane import BeltramiField, CircleSpec, MapModel
from .quadrature import QuadratureConfig, angle_nodes, circular_average


def stretch_factor(K: float) -> float:
    """k = (K - 1) / (K + 1), the coefficient magnitude of the radial stretch."""
    if not K >= 1.0:
        raise ValueError(f"need K >= 1, got {K}")
    return (K - 1.0) / (K + 1.0)


def epsilon_decompose(field: BeltramiField, K: float, z) -> np.ndarray:
    """Perturbation eps(z) = mu(z) e^{-2 i arg z} + k of the radial stretch.

    For a field with |mu| <= k the value lies in the disk of radius k about
    k, so Re(eps) >= 0. Raises SingularPointError at z = 0 where the
    argument is undefined.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise SingularPointError("eps decomposition undefined at z = 0")
    k = stretch_factor(K)
    return field(z) * (np.conj(z) / z) + k


def _log_integral_from_anchor(radii: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Cumulative integral_t^{r_max} values dr/r by trapezoid in log r."""
    s = np.log(radii)
    inc = 0.5 * (values[1:] + values[:-1]) * np.diff(s)
    out = np.zeros_like(values)
    out[:-1] = np.cumsum(inc[::-1])[::-1]
    return out


def _ratio_to_log(radii: np.ndarray, integral: np.ndarray) -> np.ndarray:
    """integral(t) / log(r_max / t); 0 at the anchor where both vanish."""
    span = np.log(radii[-1] / radii)
    out = np.zeros_like(integral)
    pos = span > 0
    out[pos] = integral[pos] / span[pos]
    return out


@dataclass(frozen=True)
class EpsilonProfile:
    """Circular averages of Re(eps) with their weighted log-integral.

    `ratio_w[i] = W(t_i) / log(r_max / t_i)`; at the anchor radius both
    numerator and denominator vanish and the ratio is reported as 0.
    """

    radii: np.ndarray
    distortion_bound: float  # K used for the decomposition
    eps_re_avg: np.ndarray
    W: np.ndarray
    ratio_w: np.ndarray

    CSV_HEADER = "t,eps_re_avg,W,ratio_W"

    def to_csv(self, path) -> None:
        rows = np.column_stack([self.radii, self.eps_re_avg, self.W, self.ratio_w])
        np.savetxt(path, rows, delimiter=",", header=self.CSV_HEADER, comments="")

    def describe(self) -> dict:
        return {
            "K": self.distortion_bound,
            "t": [float(x) for x in self.radii],
            "eps_re_avg": [float(x) for x in self.eps_re_avg],
            "W": [float(x) for x in self.W],
            "ratio_W": [float(x) for x in self.ratio_w],
        }


def epsilon_weight_integral(
    field: BeltramiField,
    K: float,
    radii,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> EpsilonProfile:
    """Per-circle averages of Re(eps) and their dr/r accumulation W(t).

    Radii must be positive and strictly increasing; the integral is
    anchored at the largest radius (typically 1).
    """
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or radii.size < 2:
        raise ValueError("need at least two radii")
    if np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be positive and strictly increasing")

    def avg(r):
        circle = CircleSpec(0j, float(r))
        return circular_average(
            lambda theta: epsilon_decompose(field, K, circle.at(theta)).real,
            circle,
            cfg,
        )

    eps_avg = np.array([avg(r) for r in radii])
    W = _log_integral_from_anchor(radii, eps_avg)
    return EpsilonProfile(
        radii=radii,
        distortion_bound=float(K),
        eps_re_avg=eps_avg,
        W=W,
        ratio_w=_ratio_to_log(radii, W),
    )


@dataclass(frozen=True)
class DefectProfile:
    """Isoperimetric defects with their weighted log-integral and densities."""

    radii: np.ndarray
    delta: np.ndarray
    I: np.ndarray
    ratio_i: np.ndarray
    density_estimates: tuple[tuple[float, float], ...] = ()

    CSV_HEADER = "t,delta,I,ratio_I"

    def to_csv(self, path) -> None:
        rows = np.column_stack([self.radii, self.delta, self.I, self.ratio_i])
        np.savetxt(path, rows, delimiter=",", header=self.CSV_HEADER, comments="")

    def describe(self) -> dict:
        return {
            "t": [float(x) for x in self.radii],
            "delta": [float(x) for x in self.delta],
            "I": [float(x) for x in self.I],
            "ratio_I": [float(x) for x in self.ratio_i],
            "density_estimates": [[d0, est] for d0, est in self.density_estimates],
        }


def defect_weight_integral(
    profile: GeometryProfile,
    delta0_grid=(),
) -> DefectProfile:
    """I(t) = integral_t^{r_max} delta(r) dr/r from a geometry profile.

    Optionally estimates the lower density of {r : delta(r) > delta_0} for
    each threshold in `delta0_grid`, using the profile radii as the
    gamma-grid.
    """
    radii = np.asarray(profile.radii, dtype=float)
    delta = np.asarray(profile.delta, dtype=float)
    integral = _log_integral_from_anchor(radii, delta)
    densities = tuple(
        (float(d0), superlevel_lower_density(zip(radii, delta), d0, radii))
        for d0 in delta0_grid
    )
    return DefectProfile(
        radii=radii,
        delta=delta,
        I=integral,
        ratio_i=_ratio_to_log(radii, integral),
        density_estimates=densities,
    )


def superlevel_lower_density(delta_samples, delta0: float, gamma_grid) -> float:
    """Estimated lower density at 0 of the set {r : delta(r) > delta0}.

    Parameters
    ----------
    delta_samples : iterable of (r, delta)
        Sample radii with defect values; interpreted piecewise-constant
        (each sample owns the interval up to the midpoints with its
        neighbors, the smallest down to 0).
    delta0 : float
        Positive super-level threshold.
    gamma_grid : sequence of float
        Scales over which |{delta > delta0} cap [0, gamma]| / gamma is
        minimized; the minimum approximates the liminf at 0.
    """
    if delta0 <= 0:
        raise ValueError("delta0 must be positive")
    gammas = np.asarray(list(gamma_grid), dtype=float)
    if gammas.size == 0:
        raise ValueError("gamma grid must be nonempty")
    pairs = sorted((float(r), float(d)) for r, d in delta_samples)
    r = np.array([p[0] for p in pairs])
    d = np.array([p[1] for p in pairs])
    mids = np.concatenate(([0.0], (r[:-1] + r[1:]) / 2.0, [r[-1]]))
    lo, hi = mids[:-1], mids[1:]
    mask = d > delta0
    best = np.inf
    for g in gammas:
        covered = np.clip(np.minimum(hi, g) - lo, 0.0, None)
        best = min(best, float(covered[mask].sum()) / g)
    return best


def empirical_holder(
    map_model: MapModel,
    radii,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> list[tuple[float, float, float]]:
    """Exponent estimates (t, from_area, from_sup) at each scale t in (0, 1).

    `from_area` is log(area(f(D_t))) / (2 log t): the squared worst-case
    displacement is comparable to the image area, so this converges to the
    pointwise exponent with an O(1/log t) correction. `from_sup` is
    log(max_theta |f(t e^{i theta}) - f(0)|) / log t.
    """
    from .geometry import image_area_green

    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or np.any(radii >= 1):
        raise ValueError("empirical exponents need radii in (0, 1)")
    f0 = complex(np.asarray(map_model.value(np.zeros(1, dtype=complex)))[0])
    theta = angle_nodes(cfg.nodes)
    out = []
    for t in radii:
        area = image_area_green(map_model, CircleSpec(0j, float(t)), cfg)
        if area <= 0:
            raise ValueError(f"image area vanished at t = {t}")
        displacement = np.abs(map_model.value(CircleSpec(0j, float(t)).at(theta)) - f0)
        from_area = float(np.log(area) / (2.0 * np.log(t)))
        from_sup = float(np.log(displacement.max()) / np.log(t))
        out.append((float(t), from_area, from_sup))
    return out


@dataclass(frozen=True)
class ExtremalityVerdict:
    """Joint verdict over the perturbation and defect diagnostics.

    The field is `consistent-with-extremal` when the running minima of both
    ratios fall below the threshold: the worst-case exponent forces both
    integrals to be o(log 1/t) along a sequence of scales, and the infimum
    of the ratios being (numerically) 0 is exactly that statement.
    """

    verdict: str  # "consistent-with-extremal" | "inconsistent"
    min_ratio_w: float
    min_ratio_i: float
    alpha_gap: float  # |alpha_est - 1/K| at the smallest sampled scale
    threshold: float

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent-with-extremal"

    def describe(self) -> dict:
        return {
            "verdict": self.verdict,
            "min_ratio_W": self.min_ratio_w,
            "min_ratio_I": self.min_ratio_i,
            "alpha_gap": self.alpha_gap,
            "threshold": self.threshold,
        }


def extremality_report(
    eps: EpsilonProfile,
    defect: DefectProfile,
    alpha_estimates,
    threshold: float = 0.01,
) -> ExtremalityVerdict:
    """Combine the diagnostics into a necessary-condition verdict.

    Profiles must share their radius grid. The anchor radius (where both
    ratios are 0/0 by construction) is excluded from the running minima.
    """
    if eps.radii.shape != defect.radii.shape or not np.allclose(
        eps.radii, defect.radii, rtol=1e-12, atol=0
    ):
        raise ValueError("profiles must be sampled on the same radii")
    interior = eps.radii < eps.radii[-1] * (1.0 - 1e-12)
    if not np.any(interior):
        raise ValueError("need at least one radius below the anchor")
    min_w = float(eps.ratio_w[interior].min())
    min_i = float(defect.ratio_i[interior].min())
    t_min = min(alpha_estimates, key=lambda rec: rec[0])
    alpha_gap = abs(t_min[1] - 1.0 / eps.distortion_bound)
    consistent = min_w < threshold and min_i < threshold
    return ExtremalityVerdict(
        verdict="consistent-with-extremal" if consistent else "inconsistent",
        min_ratio_w=min_w,
        min_ratio_i=min_i,
        alpha_gap=float(alpha_gap),
        threshold=threshold,
    )


def epsilon_distortion_margin(
    field: BeltramiField,
    K: float,
    circles,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Worst margin of g(r) <= K - c1 <Re eps> over the given circles.

    Here g(r) is the per-circle distortion average computed with the
    real-part substitution w = -k + Re(eps) (the imaginary part of eps is
    dropped, matching the pointwise identity that produces the constant
    c1 = 2 / ((1+k)(1-k))). Both averages share the same nodes so the
    pointwise inequality survives discretization exactly; the returned
    margin is max over circles of (g - bound) and should be <= 0 up to
    roundoff for any field with |mu| <= k.
    """
    k = stretch_factor(K)
    c1 = 2.0 / ((1.0 + k) * (1.0 - k))
    worst = -np.inf
    for circle in circles:

        def pair(theta):
            eps_re = epsilon_decompose(field, K, circle.at(theta)).real
            w = -k + eps_re
            g = (1.0 - w) / (1.0 + w)
            return g, K - c1 * eps_re

        theta = angle_nodes(cfg.nodes)
        g_vals, bound_vals = pair(theta)
        worst = max(worst, float(g_vals.mean() - bound_vals.mean()))
    return worst
