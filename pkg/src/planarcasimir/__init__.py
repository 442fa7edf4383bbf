"""Casimir stress and force in planar magnetodielectric multilayers.

The stress inside filled interspaces is computed from the field-only
(Lorentz-force) form of the electromagnetic stress tensor, evaluated on the
imaginary frequency axis, with finite temperature available through the
standard bosonic frequency sum. The Minkowski-tensor prediction is kept
side by side so the two can be compared configuration by configuration.
"""

from .materials import (
    MIRROR,
    VACUUM,
    DispersionModel,
    MaterialKind,
    constant,
    drude_lorentz,
    eval_eps,
    eval_mu,
    is_drude_like,
    is_nonmagnetic,
    perfect_mirror,
    plasma,
    refractive_index_sq,
)
from .layers import (
    CavityConfig,
    Layer,
    PerfectMirrorPlate,
    ReflectionPair,
    TransverseMode,
    Wall,
    beta_imag,
    fresnel,
    single_plate_rt,
    wall_reflection,
)
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    ScaledVariables,
    integrate_semi_infinite,
    matsubara_frequency,
    matsubara_sum,
    nondimensionalize,
)
from .engine import (
    DEFAULT_SPEC,
    ForceResult,
    InterspaceView,
    StressProfile,
    cavity_interspaces,
    g_fn,
    interspace,
    minkowski_plate_force,
    minkowski_stress_zz,
    plate_force,
    stress_profile,
    stress_zz,
)
from .limits import (
    StaticMedium,
    approx_plate_force,
    casimir_generalized,
    force_ratio,
    minkowski_generalized,
    mirror_reflections,
)
from .config import ConfigError, RunConfig, build_config, load_config, load_sections

__version__ = "0.1.0"

__all__ = [
    "MIRROR", "VACUUM", "DispersionModel", "MaterialKind", "constant",
    "drude_lorentz", "eval_eps", "eval_mu", "is_drude_like", "is_nonmagnetic",
    "perfect_mirror", "plasma", "refractive_index_sq",
    "CavityConfig", "Layer", "PerfectMirrorPlate", "ReflectionPair",
    "TransverseMode", "Wall", "beta_imag", "fresnel", "single_plate_rt",
    "wall_reflection",
    "IntegralResult", "QuadratureSpec", "ScaledVariables",
    "integrate_semi_infinite", "matsubara_frequency", "matsubara_sum",
    "nondimensionalize",
    "DEFAULT_SPEC", "ForceResult", "InterspaceView", "StressProfile",
    "cavity_interspaces", "g_fn", "interspace", "minkowski_plate_force",
    "minkowski_stress_zz", "plate_force", "stress_profile", "stress_zz",
    "StaticMedium", "approx_plate_force", "casimir_generalized",
    "force_ratio", "minkowski_generalized", "mirror_reflections",
    "ConfigError", "RunConfig", "build_config", "load_config",
    "load_sections",
]
