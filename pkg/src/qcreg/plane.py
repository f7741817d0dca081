"""Complex-plane primitives: circles, domains, coefficient fields, map models.

Evaluators throughout the package are vectorized: they accept a numpy array
of complex points and return an array of the same shape. All containers are
frozen dataclasses and all operations are pure, so everything here is safe
to evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .errors import FieldValidationError, SingularPointError

# z-array -> complex array of the same shape
ComplexFunc = Callable[[np.ndarray], np.ndarray]

#: below this |f_z| a point is treated as singular when forming mu = f_zbar/f_z
FZ_SINGULAR_TOL = 1e-14

#: validation slack for |mu| <= k_max and the hard ceiling |mu| < 1
KMAX_SLACK = 1e-12


@dataclass(frozen=True)
class CircleSpec:
    """Circle with the given center and radius > 0."""

    center: complex
    radius: float

    def __post_init__(self):
        c, r = complex(self.center), float(self.radius)
        if not (np.isfinite(c.real) and np.isfinite(c.imag)):
            raise ValueError("circle center must be finite")
        if not (np.isfinite(r) and r > 0):
            raise ValueError(f"circle radius must be positive and finite, got {r}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    def at(self, theta: np.ndarray) -> np.ndarray:
        """Points center + radius * e^{i theta}."""
        return self.center + self.radius * np.exp(1j * np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class DomainSpec:
    """Search grids of circle centers and radii inside an outer disk/annulus.

    A pair (center, radius) is admissible when the circle fits inside the
    outer region with the requested margin. `admissible_circles` performs
    the filtering; the grids themselves may contain non-fitting pairs.
    """

    centers: tuple[complex, ...]
    radii: tuple[float, ...]
    outer_center: complex = 0j
    outer_radius: float = 1.0
    inner_radius: float = 0.0
    margin: float = 0.0

    def __post_init__(self):
        centers = tuple(complex(c) for c in self.centers)
        radii = tuple(float(r) for r in self.radii)
        if not centers or not radii:
            raise ValueError("center grid and radius grid must be nonempty")
        if any(r <= 0 or not np.isfinite(r) for r in radii):
            raise ValueError("all grid radii must be positive and finite")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radius grid must be strictly increasing")
        if not (0 <= self.inner_radius < self.outer_radius):
            raise ValueError("need 0 <= inner_radius < outer_radius")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "outer_center", complex(self.outer_center))

    def fits(self, center: complex, radius: float) -> bool:
        d = abs(complex(center) - self.outer_center)
        if d + radius > self.outer_radius - self.margin + 1e-12:
            return False
        if self.inner_radius > 0 and d - radius < self.inner_radius + self.margin - 1e-12:
            return False
        return True

    def admissible_circles(self) -> list[CircleSpec]:
        return [
            CircleSpec(c, r)
            for c in self.centers
            for r in self.radii
            if self.fits(c, r)
        ]

    @classmethod
    def origin_disk(
        cls,
        n_radii: int = 16,
        r_min: float = 0.05,
        r_max: float = 1.0,
        centers: Sequence[complex] = (0j,),
        outer_radius: float = 1.0,
    ) -> "DomainSpec":
        """Default search domain: log-spaced radii around the given centers.

        The default center grid contains only the origin; the per-circle
        distortion averages of the cataloged worst-case fields are constant
        on origin-centered circles, which keeps the reported suprema exact.
        """
        radii = tuple(np.geomspace(r_min, r_max, n_radii))
        return cls(centers=tuple(centers), radii=radii, outer_radius=outer_radius)

    def describe(self) -> dict:
        return {
            "centers": [[c.real, c.imag] for c in self.centers],
            "radii": list(self.radii),
            "outer_center": [self.outer_center.real, self.outer_center.imag],
            "outer_radius": self.outer_radius,
            "inner_radius": self.inner_radius,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class BeltramiField:
    """Evaluable complex-distortion coefficient with a certified bound.

    `mu` must satisfy |mu(z)| <= k_max < 1 wherever it is evaluated;
    `validate_field` certifies the bound on a low-discrepancy sample and
    wraps the evaluator so every later evaluation keeps checking it.
    """

    mu: ComplexFunc
    k_max: float
    provenance: str = "closed-form"
    singular_points: tuple[complex, ...] = ()
    verified_k_max: float | None = None

    def __post_init__(self):
        if not (0.0 <= self.k_max < 1.0):
            raise ValueError(f"k_max must lie in [0, 1), got {self.k_max}")
        if self.provenance not in ("closed-form", "sampled-grid"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __call__(self, z) -> np.ndarray:
        return np.asarray(self.mu(np.asarray(z, dtype=complex)), dtype=complex)

    @property
    def distortion_ratio(self) -> float:
        """K = (1 + k_max) / (1 - k_max)."""
        return (1.0 + self.k_max) / (1.0 - self.k_max)


@dataclass(frozen=True)
class MapModel:
    """Evaluable planar map with first partials and Jacobian.

    `partials(z)` returns the pair (f_x, f_y); `jacobian(z)` must equal
    Im(conj(f_x) * f_y) at evaluated points and stay positive away from the
    declared singular points.
    """

    value: ComplexFunc
    partials: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    jacobian: Callable[[np.ndarray], np.ndarray]
    beltrami: BeltramiField | None = None
    singular_points: tuple[complex, ...] = ()


def wirtinger_from_cartesian(f_x, f_y):
    """Convert x/y partials to the (f_z, f_zbar) pair.

    f_z = (f_x - i f_y) / 2 and f_zbar = (f_x + i f_y) / 2; works on
    scalars and arrays alike.
    """
    f_x = np.asarray(f_x, dtype=complex)
    f_y = np.asarray(f_y, dtype=complex)
    return (f_x - 1j * f_y) / 2.0, (f_x + 1j * f_y) / 2.0


def beltrami_of(map_model: MapModel, z) -> np.ndarray:
    """Complex distortion mu = f_zbar / f_z of a map at the given points.

    Raises SingularPointError when |f_z| falls below FZ_SINGULAR_TOL at any
    requested point.
    """
    z = np.asarray(z, dtype=complex)
    f_x, f_y = map_model.partials(z)
    f_z, f_zbar = wirtinger_from_cartesian(f_x, f_y)
    bad = np.abs(f_z) < FZ_SINGULAR_TOL
    if np.any(bad):
        where = np.asarray(z)[bad].ravel()[0]
        raise SingularPointError(f"f_z vanishes near z = {where}")
    return f_zbar / f_z


def disk_samples(n: int, center: complex = 0j, radius: float = 1.0) -> np.ndarray:
    """Deterministic low-discrepancy points in a disk (area-uniform Halton)."""
    sampler = qmc.Halton(d=2, scramble=False)
    sampler.fast_forward(1)  # index 0 is (0, 0), which would land on the center
    uv = sampler.random(n)
    r = radius * np.sqrt(uv[:, 0])
    theta = 2.0 * np.pi * uv[:, 1]
    return center + r * np.exp(1j * theta)


def validate_field(
    beltrami: BeltramiField,
    k_max: float | None = None,
    *,
    region: CircleSpec | None = None,
    samples: int = 4096,
) -> BeltramiField:
    """Certify |mu| <= k_max on a deterministic sample and wrap the evaluator.

    Parameters
    ----------
    beltrami : BeltramiField
        Field to certify. Declared singular points are excluded from the
        sample set.
    k_max : float, optional
        Bound to certify against; defaults to the field's declared bound.
    region : CircleSpec, optional
        Disk over which to sample; defaults to the unit disk.
    samples : int
        Size of the low-discrepancy validation sample.

    Returns
    -------
    BeltramiField
        Same field with `verified_k_max` set to the sampled maximum of |mu|
        and an evaluator that re-checks the bound at every later call (so
        quadrature nodes encountered downstream stay certified).

    Raises
    ------
    FieldValidationError
        If any sample has |mu| >= 1 - 1e-12 or |mu| > k_max + 1e-12.
    """
    if k_max is None:
        k_max = beltrami.k_max
    if not (0.0 <= k_max < 1.0):
        raise FieldValidationError(f"k_max must lie in [0, 1), got {k_max}")
    region = region or CircleSpec(0j, 1.0)
    pts = disk_samples(samples, region.center, region.radius)
    if beltrami.singular_points:
        for s in beltrami.singular_points:
            pts = pts[np.abs(pts - s) > 1e-9]
    sampled = beltrami(pts)
    _check_mu_bound(sampled, k_max, context="validation sample")
    observed = float(np.abs(sampled).max()) if pts.size else 0.0

    inner = beltrami.mu

    def checked(z):
        out = np.asarray(inner(np.asarray(z, dtype=complex)), dtype=complex)
        _check_mu_bound(out, k_max, context="evaluation")
        return out

    return replace(
        beltrami, mu=checked, k_max=float(k_max), verified_k_max=observed
    )


def _check_mu_bound(values: np.ndarray, k_max: float, context: str) -> None:
    mags = np.abs(np.asarray(values))
    if not np.all(np.isfinite(mags)):
        raise FieldValidationError(f"non-finite mu value in {context}")
    worst = float(mags.max()) if mags.size else 0.0
    if worst >= 1.0 - KMAX_SLACK:
        raise FieldValidationError(
            f"|mu| = {worst} reaches 1 in {context}; field is degenerate"
        )
    if worst > k_max + KMAX_SLACK:
        raise FieldValidationError(
            f"|mu| = {worst} exceeds declared bound k_max = {k_max} in {context}"
        )


def derive_beltrami(
    map_model: MapModel,
    *,
    region: CircleSpec | None = None,
    samples: int = 4096,
) -> BeltramiField:
    """Build a certified BeltramiField from a map's own partials.

    The bound is taken as the sampled maximum of |f_zbar / f_z| plus a tiny
    slack; useful when a MapModel arrives without an attached field.
    """
    region = region or CircleSpec(0j, 1.0)
    pts = disk_samples(samples, region.center, region.radius)
    for s in map_model.singular_points:
        pts = pts[np.abs(pts - s) > 1e-9]
    observed = float(np.abs(beltrami_of(map_model, pts)).max())
    if observed >= 1.0 - KMAX_SLACK:
        raise FieldValidationError(
            f"sampled |mu| = {observed} reaches 1; map is not quasiconformal"
        )
    k = min(observed * (1 + 1e-9) + 1e-15, 1.0 - 2 * KMAX_SLACK)
    raw = BeltramiField(
        mu=lambda z: beltrami_of(map_model, z),
        k_max=k,
        singular_points=map_model.singular_points,
    )
    return validate_field(raw, k, region=region, samples=samples)


def grid_interpolate(origin: complex, spacing: float, values: np.ndarray, z, method: str):
    """Nearest / bilinear interpolation of a row-major grid at complex points.

    ``values[iy, ix]`` sits at origin + (ix + iy * 1j) * spacing; queries
    are clamped to the grid hull so boundary-touching nodes stay defined.
    """
    z = np.asarray(z, dtype=complex)
    values = np.asarray(values)
    ny, nx = values.shape
    gx = np.clip((z.real - origin.real) / spacing, 0.0, nx - 1.0)
    gy = np.clip((z.imag - origin.imag) / spacing, 0.0, ny - 1.0)
    if method == "nearest":
        return values[np.rint(gy).astype(int), np.rint(gx).astype(int)]
    if method != "bilinear":
        raise ValueError(f"unknown interpolation {method!r}")
    ix = np.clip(np.floor(gx).astype(int), 0, max(nx - 2, 0))
    iy = np.clip(np.floor(gy).astype(int), 0, max(ny - 2, 0))
    tx, ty = gx - ix, gy - iy
    ix1 = np.minimum(ix + 1, nx - 1)
    iy1 = np.minimum(iy + 1, ny - 1)
    return (
        values[iy, ix] * (1 - tx) * (1 - ty)
        + values[iy, ix1] * tx * (1 - ty)
        + values[iy1, ix] * (1 - tx) * ty
        + values[iy1, ix1] * tx * ty
    )


@dataclass(frozen=True)
class SampledField:
    """Grid-sampled complex coefficient with nearest / bilinear interpolation.

    `values[iy, ix]` sits at origin + (ix + iy * 1j) * spacing. Queries are
    clamped to the grid hull, so boundary-touching quadrature nodes stay
    well-defined.
    """

    origin: complex
    spacing: float
    values: np.ndarray
    k_max: float
    interpolation: str = "bilinear"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 2 or vals.size == 0:
            raise ValueError("values must be a nonempty 2-D array")
        if not (self.spacing > 0 and np.isfinite(self.spacing)):
            raise ValueError("spacing must be positive and finite")
        if self.interpolation not in ("nearest", "bilinear"):
            raise ValueError(f"unknown interpolation {self.interpolation!r}")
        worst = float(np.abs(vals).max())
        if worst > self.k_max + KMAX_SLACK:
            raise FieldValidationError(
                f"grid contains |mu| = {worst} > k_max = {self.k_max}"
            )
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "origin", complex(self.origin))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape  # (ny, nx)

    def evaluate(self, z) -> np.ndarray:
        return grid_interpolate(
            self.origin, self.spacing, self.values, z, self.interpolation
        )

    def as_beltrami(self) -> BeltramiField:
        return BeltramiField(
            mu=self.evaluate, k_max=self.k_max, provenance="sampled-grid"
        )

    def hull(self) -> tuple[complex, complex]:
        """Lower-left and upper-right corners of the grid."""
        ny, nx = self.values.shape
        return self.origin, self.origin + self.spacing * ((nx - 1) + 1j * (ny - 1))
