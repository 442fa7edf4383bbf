"""Independent reference implementations used to cross-check the library.

Everything here is deliberately built from first principles with no imports
from the package under test: a brute-force 2x2 characteristic-matrix solver
for layered reflection/transmission, and a table of semi-infinite integrals
with known closed forms.
"""

import numpy as np
from scipy.constants import c
from scipy.special import erf

DELTA = {"s": -1.0, "p": 1.0}


def kappa_of(eps, mu, xi, q):
    """Imaginary-axis normal decay constant sqrt(q^2 + eps*mu*xi^2/c^2)."""
    return np.sqrt(q * q + eps * mu * xi * xi / c ** 2)


def interface_r(pol, eps_a, mu_a, kappa_a, eps_b, mu_b, kappa_b):
    """Single-interface reflection from medium a onto medium b."""
    if pol == "s":
        num = mu_b * kappa_a - mu_a * kappa_b
        den = mu_b * kappa_a + mu_a * kappa_b
    else:
        num = eps_b * kappa_a - eps_a * kappa_b
        den = eps_b * kappa_a + eps_a * kappa_b
    return num / den


def _interface_matrix(r):
    t = 1.0 + r
    return np.array([[1.0, r], [r, 1.0]]) / t


def _propagation_matrix(kappa, d):
    return np.array([[np.exp(kappa * d), 0.0], [0.0, np.exp(-kappa * d)]])


def stack_reflection(ambient, layers, terminator, xi, q, pol):
    """Reflection of a layered wall via the characteristic-matrix product.

    ambient: (eps, mu) of the half-space the wave arrives from.
    layers: [(eps, mu, thickness)] ordered nearest to the ambient first.
    terminator: ("mirror",) or ("medium", eps, mu).

    Amplitude pairs (forward, backward) on the left of each element are the
    matrix times the pair on its right; a mirror forces backward = Delta *
    forward at its face, a semi-infinite medium forces backward = 0.
    """
    media = [ambient] + [(eps, mu) for eps, mu, _ in layers]
    kappas = [kappa_of(eps, mu, xi, q) for eps, mu in media]
    matrix = np.eye(2)
    for i, (eps, mu, d) in enumerate(layers):
        r = interface_r(pol, *media[i], kappas[i], eps, mu, kappas[i + 1])
        matrix = matrix @ _interface_matrix(r) @ _propagation_matrix(kappas[i + 1], d)
    if terminator[0] == "mirror":
        vec = matrix @ np.array([1.0, DELTA[pol]])
        return vec[1] / vec[0]
    eps_t, mu_t = terminator[1], terminator[2]
    kappa_t = kappa_of(eps_t, mu_t, xi, q)
    r = interface_r(pol, *media[-1], kappas[-1], eps_t, mu_t, kappa_t)
    matrix = matrix @ _interface_matrix(r)
    return matrix[1, 0] / matrix[0, 0]


def slab_rt(ambient, slab, d, xi, q, pol):
    """(reflection, transmission) of one slab with identical surroundings."""
    eps_a, mu_a = ambient
    eps_b, mu_b = slab
    kappa_a = kappa_of(eps_a, mu_a, xi, q)
    kappa_b = kappa_of(eps_b, mu_b, xi, q)
    r1 = interface_r(pol, eps_a, mu_a, kappa_a, eps_b, mu_b, kappa_b)
    matrix = (_interface_matrix(r1)
              @ _propagation_matrix(kappa_b, d)
              @ _interface_matrix(-r1))
    return matrix[1, 0] / matrix[0, 0], 1.0 / matrix[0, 0]


# ---------------------------------------------------------------------------
# Semi-infinite integrals with hand-checked closed forms. Each entry is
# (name, integrand, exact value). Integrands are vectorized and finite for
# x > 0; values at huge x underflow cleanly to zero.

def _calm(f):
    def wrapped(x):
        with np.errstate(over="ignore"):
            return f(x)
    return wrapped


_EULER_GAMMA = float(np.euler_gamma)

INTEGRAND_SUITE = [
    ("unit_exponential", _calm(lambda x: np.exp(-x)), 1.0),
    ("scaled_exponential", _calm(lambda x: np.exp(-2.0 * x)), 0.5),
    ("linear_exponential", _calm(lambda x: x * np.exp(-3.0 * x)), 1.0 / 9.0),
    ("quadratic_exponential", _calm(lambda x: x ** 2 * np.exp(-x)), 2.0),
    ("cubic_exponential", _calm(lambda x: x ** 3 * np.exp(-x)), 6.0),
    ("planck_cubic", _calm(lambda x: x ** 3 / np.expm1(x)), np.pi ** 4 / 15.0),
    ("planck_linear", _calm(lambda x: x / np.expm1(x)), np.pi ** 2 / 6.0),
    ("gaussian", _calm(lambda x: np.exp(-x ** 2)), np.sqrt(np.pi) / 2.0),
    ("gaussian_moment", _calm(lambda x: x ** 2 * np.exp(-x ** 2)),
     np.sqrt(np.pi) / 4.0),
    ("displaced_gaussian", _calm(lambda x: np.exp(-((x - 5.0) ** 2))),
     np.sqrt(np.pi) / 2.0 * (1.0 + erf(5.0))),
    ("damped_cosine", _calm(lambda x: np.exp(-x) * np.cos(x)), 0.5),
    ("damped_sine", _calm(lambda x: np.exp(-x) * np.sin(x)), 0.5),
    ("slow_oscillation", _calm(lambda x: np.exp(-x / 10.0) * np.cos(3.0 * x)),
     0.1 / 9.01),
    ("algebraic_decay", _calm(lambda x: 1.0 / (1.0 + x) ** 2), 1.0),
    ("lorentzian", _calm(lambda x: 1.0 / (1.0 + x ** 2)), np.pi / 2.0),
    ("log_exponential", _calm(lambda x: np.log(x) * np.exp(-x)), -_EULER_GAMMA),
    ("sqrt_exponential", _calm(lambda x: np.exp(-np.sqrt(x))), 2.0),
    ("softplus_tail", _calm(lambda x: np.log1p(np.exp(-x))), np.pi ** 2 / 12.0),
    ("sech_squared", _calm(lambda x: 1.0 / np.cosh(np.minimum(x, 350.0)) ** 2),
     1.0),
    ("mode_envelope", _calm(lambda x: x * np.exp(-2.0 * np.sqrt(x ** 2 + 1.0))),
     0.75 * np.exp(-2.0)),
]
