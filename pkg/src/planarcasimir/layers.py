"""Planar geometry types and reflection coefficients on the imaginary axis.

A structure is a stack of homogeneous regions normal to z. Interspaces (the
regions where stress is evaluated) see their bounding half-spaces only through
reflection coefficients, so walls of arbitrary layering collapse to a single
function of the transverse mode.

Conventions, fixed once for the whole package:

* imaginary frequency omega = i*xi with xi >= 0, where the normal wavenumber
  becomes beta = i*kappa with kappa = sqrt(q^2 + xi^2 n^2/c^2) real;
* s (TE) interface coefficient r_s = (mu_b kappa_a - mu_a kappa_b)
  / (mu_b kappa_a + mu_a kappa_b);
* p (TM) coefficient in the magnetic-field amplitude convention
  r_p = (eps_b kappa_a - eps_a kappa_b) / (eps_b kappa_a + eps_a kappa_b),
  so a perfect conductor gives r_p = +1 and r_s = -1.

Multilayer walls are folded by the two-media recursion
r = (r_front + e^{-2 kappa d} r_back) / (1 + r_front e^{-2 kappa d} r_back);
an independent transfer-matrix product in the test suite cross-checks every
code path of that recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import c

from .materials import (
    DispersionModel,
    MaterialKind,
    eps_imag_axis,
    is_drude_like,
    mu_imag_axis,
)

# Perfect-reflector limits of the interface coefficients per polarization.
DELTA = {"s": -1.0, "p": +1.0}
POLARIZATIONS = ("s", "p")


@dataclass(frozen=True)
class Layer:
    """A finite slab: material plus thickness in meters."""

    material: DispersionModel
    thickness: float

    def __post_init__(self) -> None:
        if self.thickness <= 0.0:
            raise ValueError(f"layer thickness must be > 0, got {self.thickness}")
        if self.material.kind is MaterialKind.PERFECT_MIRROR:
            raise ValueError("finite layers need a finite response; use a wall"
                             " terminator or PerfectMirrorPlate for mirrors")


@dataclass(frozen=True)
class Wall:
    """One side of an interspace: finite slabs backed by a terminator.

    ``layers`` are ordered nearest-to-the-interspace first. The terminator is
    either a semi-infinite material or the perfect-mirror tag.
    """

    layers: tuple[Layer, ...] = ()
    terminator: DispersionModel = DispersionModel(MaterialKind.PERFECT_MIRROR)

    @staticmethod
    def perfect_mirror() -> "Wall":
        return Wall()

    @staticmethod
    def semi_infinite(material: DispersionModel) -> "Wall":
        return Wall(layers=(), terminator=material)

    @staticmethod
    def stack(layers, terminator: DispersionModel) -> "Wall":
        return Wall(layers=tuple(layers), terminator=terminator)

    @property
    def is_mirror_terminated(self) -> bool:
        return self.terminator.kind is MaterialKind.PERFECT_MIRROR


@dataclass(frozen=True)
class PerfectMirrorPlate:
    """Opaque idealized plate: r = Delta_sigma exactly, t = 0."""


@dataclass(frozen=True)
class TransverseMode:
    """One (xi, q, polarization) point of the mode continuum.

    ``pol`` is "s", "p", or None meaning both polarizations summed (only
    meaningful to consumers that sum over sigma). ``q`` may be an ndarray;
    all downstream arithmetic is elementwise.
    """

    xi: float
    q: float | np.ndarray
    pol: str | None

    def __post_init__(self) -> None:
        if self.xi < 0.0:
            raise ValueError("imaginary frequency xi must be >= 0")
        if np.any(np.asarray(self.q) < 0.0):
            raise ValueError("transverse momentum q must be >= 0")
        if self.pol not in ("s", "p", None):
            raise ValueError(f"polarization must be 's', 'p' or None, got {self.pol!r}")


@dataclass(frozen=True)
class ReflectionPair:
    """Reflections seen from inside an interspace toward +z and -z."""

    r_plus: float | np.ndarray
    r_minus: float | np.ndarray


@dataclass(frozen=True)
class CavityConfig:
    """Wall | gap d1 | plate | gap d3 | wall, with one common gap medium.

    The two interspaces share a single ``medium`` field by construction, which
    is the geometry every plate-force formula here assumes.
    """

    left_wall: Wall
    medium: DispersionModel
    d1: float
    plate: Layer | PerfectMirrorPlate
    d3: float
    right_wall: Wall

    def __post_init__(self) -> None:
        if self.medium.kind is MaterialKind.PERFECT_MIRROR:
            raise ValueError("the interspace medium must have a finite response")
        if self.d1 <= 0.0 or self.d3 <= 0.0:
            raise ValueError("gap widths must be positive")
        if not isinstance(self.plate, (Layer, PerfectMirrorPlate)):
            raise ValueError("plate must be a Layer or PerfectMirrorPlate")

    @property
    def has_drude_like(self) -> bool:
        models = [self.medium, self.left_wall.terminator, self.right_wall.terminator]
        models += [ly.material for ly in self.left_wall.layers]
        models += [ly.material for ly in self.right_wall.layers]
        if isinstance(self.plate, Layer):
            models.append(self.plate.material)
        return any(
            m.kind is not MaterialKind.PERFECT_MIRROR and is_drude_like(m)
            for m in models
        )


def beta_imag(n_sq: float, xi: float, q: float | np.ndarray):
    """Normal decay constant kappa = sqrt(q^2 + xi^2 n^2 / c^2).

    This is beta evaluated at omega = i*xi, written as beta = i*kappa. The
    mode (xi, q) = (0, 0) has no propagation direction and is rejected.
    """
    kappa = np.sqrt(np.asarray(q, dtype=float) ** 2 + xi * xi * n_sq / c**2)
    if np.any(kappa == 0.0):
        raise ValueError("kappa vanishes: xi = 0 and q = 0 is a degenerate mode")
    return kappa if np.ndim(q) else float(kappa)


def fresnel(pol: str, eps_a, mu_a, kappa_a, eps_b, mu_b, kappa_b):
    """Single-interface reflection from medium a into medium b.

    s uses the permeability-weighted kappa contrast, p the permittivity-
    weighted one (magnetic-field amplitude convention, conductor limit +1).
    """
    if pol == "s":
        num = mu_b * kappa_a - mu_a * kappa_b
        den = mu_b * kappa_a + mu_a * kappa_b
    elif pol == "p":
        num = eps_b * kappa_a - eps_a * kappa_b
        den = eps_b * kappa_a + eps_a * kappa_b
    else:
        raise ValueError(f"polarization must be 's' or 'p', got {pol!r}")
    return num / den


def _medium_imag(model: DispersionModel, xi: float):
    """(eps, mu, n^2) of a material at omega = i*xi."""
    eps = eps_imag_axis(model, xi)
    mu = mu_imag_axis(model, xi)
    return eps, mu, eps * mu


def _wall_refl(wall: Wall, eps_amb, mu_amb, xi: float, q, pol: str):
    """Reflection of ``wall`` seen from the ambient medium, vectorized in q."""
    kappa_amb = beta_imag(eps_amb * mu_amb, xi, q)
    media = [(eps_amb, mu_amb, kappa_amb)]
    for layer in wall.layers:
        eps, mu, n_sq = _medium_imag(layer.material, xi)
        media.append((eps, mu, beta_imag(n_sq, xi, q)))

    # Innermost reflection: from the deepest finite medium into the terminator.
    eps_n, mu_n, kappa_n = media[-1]
    if wall.is_mirror_terminated:
        r = DELTA[pol] * np.ones_like(np.asarray(q, dtype=float))
    else:
        eps_t, mu_t, n_sq_t = _medium_imag(wall.terminator, xi)
        kappa_t = beta_imag(n_sq_t, xi, q)
        r = fresnel(pol, eps_n, mu_n, kappa_n, eps_t, mu_t, kappa_t)

    # Fold outward: each finite layer adds one interface and one round trip.
    for i in range(len(wall.layers) - 1, -1, -1):
        eps_a, mu_a, kappa_a = media[i]
        eps_b, mu_b, kappa_b = media[i + 1]
        rf = fresnel(pol, eps_a, mu_a, kappa_a, eps_b, mu_b, kappa_b)
        phase = np.exp(-2.0 * kappa_b * wall.layers[i].thickness)
        r = (rf + phase * r) / (1.0 + rf * phase * r)
    return r if np.ndim(q) else float(r)


def wall_reflection(wall: Wall, ambient: DispersionModel, mode: TransverseMode):
    """Reflection coefficient of a wall as seen from the ambient interspace.

    Parameters
    ----------
    wall : Wall
    ambient : DispersionModel
        The interspace medium the wave lives in.
    mode : TransverseMode
        Must carry a definite polarization ("s" or "p"). ``mode.q`` may be an
        ndarray for batch evaluation.

    Returns
    -------
    float or ndarray
        Real reflection coefficient(s) at omega = i*xi, |r| <= 1 for passive
        structures.
    """
    if mode.pol is None:
        raise ValueError("wall_reflection needs a definite polarization")
    eps_amb, mu_amb, _ = _medium_imag(ambient, mode.xi)
    return _wall_refl(wall, eps_amb, mu_amb, mode.xi, mode.q, mode.pol)


def _plate_rt(plate, eps_amb, mu_amb, xi: float, q, pol: str):
    """(r, t) of the plate between identical ambient media, vectorized in q."""
    if isinstance(plate, PerfectMirrorPlate):
        shaped = np.ones_like(np.asarray(q, dtype=float))
        r = DELTA[pol] * shaped
        t = 0.0 * shaped
        return (r, t) if np.ndim(q) else (float(r), float(t))
    kappa_amb = beta_imag(eps_amb * mu_amb, xi, q)
    eps_p, mu_p, n_sq_p = _medium_imag(plate.material, xi)
    kappa_p = beta_imag(n_sq_p, xi, q)
    r12 = fresnel(pol, eps_amb, mu_amb, kappa_amb, eps_p, mu_p, kappa_p)
    decay = np.exp(-kappa_p * plate.thickness)
    den = 1.0 - r12 * r12 * decay * decay
    r = r12 * (1.0 - decay * decay) / den
    t = (1.0 - r12 * r12) * decay / den
    return (r, t) if np.ndim(q) else (float(r), float(t))


def single_plate_rt(plate, ambient: DispersionModel, mode: TransverseMode):
    """Reflection and transmission of a symmetric single plate.

    The plate is immersed in ``ambient`` on both sides, so r and t are the
    same from either face. t is the face-to-face amplitude: for a plate made
    of the ambient medium itself, r = 0 and t = e^{-kappa d}.

    Returns
    -------
    (r, t) : tuple of float or ndarray
        Real amplitudes at omega = i*xi with r^2 + t^2 <= 1 (dissipationless
        on the imaginary axis means the bound, not equality).
    """
    if mode.pol is None:
        raise ValueError("single_plate_rt needs a definite polarization")
    eps_amb, mu_amb, _ = _medium_imag(ambient, mode.xi)
    return _plate_rt(plate, eps_amb, mu_amb, mode.xi, mode.q, mode.pol)
