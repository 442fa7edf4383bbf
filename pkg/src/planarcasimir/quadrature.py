"""Deterministic adaptive quadrature on [0, inf) and bosonic frequency sums.

The integrator is a globally adaptive Gauss-Kronrod 7/15 scheme applied after
the compactifying substitution x = t/(1 - t), which maps [0, inf) onto [0, 1)
with Jacobian 1/(1 - t)^2. All Kronrod nodes are interior, so integrands are
never evaluated at x = 0 or at infinity. Subdivision order, and therefore the
floating-point result, is a pure function of the integrand and the spec: no
randomized nodes, no thread-order dependence.

Integrands are vectorized callables: they receive an ndarray of abscissas and
return an ndarray of the same length (or of shape (n, 2) when an auxiliary
error channel rides along, see ``integrate_semi_infinite``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.constants import Boltzmann, hbar, c


@dataclass(frozen=True)
class QuadratureSpec:
    """Shared tolerance and budget knobs for all integrals and sums.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance target, 0 < rel_tol < 1.
    abs_floor : float
        Absolute error floor; convergence means
        ``error <= max(rel_tol*|value|, abs_floor)``.
    max_subdivisions : int
        Interval-split budget per one-dimensional integral (>= 8).
    q_cutoff : float or None
        Sharp upper truncation of transverse-momentum integrals (rad/m).
        ``None`` integrates to infinity.
    matsubara_max_terms : int
        Hard cap on the number of nonzero thermal terms.
    matsubara_tail : str
        ``"none"`` truncates and books the tail bound as error;
        ``"integral-tail-estimate"`` adds a geometric tail continuation to the
        value and books half of it as error.
    """

    rel_tol: float = 1e-8
    abs_floor: float = 0.0
    max_subdivisions: int = 512
    q_cutoff: float | None = None
    matsubara_max_terms: int = 20000
    matsubara_tail: str = "none"

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.abs_floor < 0.0:
            raise ValueError("abs_floor must be >= 0")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be >= 8")
        if self.q_cutoff is not None and self.q_cutoff <= 0.0:
            raise ValueError("q_cutoff must be positive when given")
        if self.matsubara_max_terms < 1:
            raise ValueError("matsubara_max_terms must be >= 1")
        if self.matsubara_tail not in ("none", "integral-tail-estimate"):
            raise ValueError(f"unknown matsubara_tail policy {self.matsubara_tail!r}")


@dataclass(frozen=True)
class IntegralResult:
    """Value, error bookkeeping, and effort of one integral or sum.

    ``converged`` is true iff
    ``error_estimate <= max(rel_tol*|value|, abs_floor)`` for the spec the
    result was produced with.
    """

    value: float
    error_estimate: float
    evaluations: int
    converged: bool


# 15-point Kronrod extension of 7-point Gauss on [-1, 1]; the Gauss points are
# every second Kronrod node. Standard public-domain table.
_XGK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_GAUSS_IDX = np.arange(1, 15, 2)
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])

_N_INITIAL = 8  # initial uniform panels on the transformed interval


def _panel(f: Callable, a: float, b: float, error_channel: bool):
    """One GK15 panel: returns (value, gk_error, channel_integral)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _XGK
    y = np.asarray(f(x), dtype=float)
    if error_channel:
        if y.ndim != 2 or y.shape != (15, 2):
            raise ValueError("error-channel integrand must return shape (n, 2)")
        vals, errs = y[:, 0], y[:, 1]
    else:
        if y.shape != (15,):
            raise ValueError("integrand must return one value per abscissa")
        vals, errs = y, None
    if not np.all(np.isfinite(vals)):
        bad = x[~np.isfinite(vals)][0]
        raise ValueError(f"integrand returned a non-finite value at x = {bad}")
    kron = float(half * (_WGK @ vals))
    gauss = float(half * (_WG @ vals[_GAUSS_IDX]))
    channel = 0.0
    if errs is not None:
        if not np.all(np.isfinite(errs)):
            bad = x[~np.isfinite(errs)][0]
            raise ValueError(f"error channel non-finite at x = {bad}")
        channel = float(half * (_WGK @ np.abs(errs)))
    return kron, abs(kron - gauss), channel


def _adaptive(f: Callable, a: float, b: float, spec: QuadratureSpec,
              error_channel: bool) -> IntegralResult:
    """Globally adaptive GK15 on the finite interval [a, b]."""
    edges = np.linspace(a, b, _N_INITIAL + 1)
    panels = []  # heap of (-gk_error, left, right, value, gk_error, channel)
    evaluations = 0
    for i in range(_N_INITIAL):
        v, e, ch = _panel(f, edges[i], edges[i + 1], error_channel)
        evaluations += 15
        heapq.heappush(panels, (-e, edges[i], edges[i + 1], v, e, ch))

    splits = 0
    while True:
        # Deterministic totals: sum panels ordered by left edge.
        ordered = sorted(panels, key=lambda p: p[1])
        value = sum(p[3] for p in ordered)
        gk_error = sum(p[4] for p in ordered)
        channel = sum(p[5] for p in ordered)
        tol = max(spec.rel_tol * abs(value), spec.abs_floor)
        if gk_error <= tol or splits >= spec.max_subdivisions:
            # converged tracks this integral's own subdivision target; the
            # channel is a pass-through contribution from inner integrals and
            # is booked in error_estimate but not judged here.
            converged = gk_error <= tol
            return IntegralResult(
                value=value,
                error_estimate=gk_error + channel,
                evaluations=evaluations,
                converged=converged,
            )
        _, left, right, _, _, _ = heapq.heappop(panels)
        mid_ = 0.5 * (left + right)
        for lo, hi in ((left, mid_), (mid_, right)):
            v, e, ch = _panel(f, lo, hi, error_channel)
            evaluations += 15
            heapq.heappush(panels, (-e, lo, hi, v, e, ch))
        splits += 1


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    spec: QuadratureSpec,
    upper: float | None = None,
    error_channel: bool = False,
) -> IntegralResult:
    """Integrate a decaying function over [0, upper) with upper = inf default.

    Parameters
    ----------
    f : callable
        Vectorized integrand: ndarray of abscissas -> ndarray of values. With
        ``error_channel=True`` it must return shape (n, 2); column 0 is the
        integrand proper, column 1 a non-negative auxiliary error density that
        is integrated alongside and added to ``error_estimate`` (used to pass
        inner-integral errors through an outer integral).
    spec : QuadratureSpec
    upper : float, optional
        Finite sharp truncation point (used for momentum cutoffs). ``None``
        means the full half line.
    error_channel : bool
        See ``f``.

    Returns
    -------
    IntegralResult
        Non-convergence within the subdivision budget is reported through the
        ``converged`` flag, never silently.
    """
    if upper is not None and upper <= 0.0:
        raise ValueError("upper truncation must be positive")
    t_max = 1.0 if upper is None else upper / (1.0 + upper)

    def transformed(t: np.ndarray):
        with np.errstate(divide="ignore"):
            x = t / (1.0 - t)
            jac = 1.0 / (1.0 - t) ** 2
        if not np.all(np.isfinite(x)):
            # Subdivision walked into the last representable sliver before
            # t = 1, which only happens when the integrand varies on a scale
            # wildly different from order one.
            raise ValueError(
                "upper-limit transform collapsed; rescale the integrand so "
                "its decay scale is of order one before integrating")
        y = np.asarray(f(x), dtype=float)
        if y.shape[0] == x.size:
            finite = np.isfinite(y).reshape(y.shape[0], -1).all(axis=1)
            if not finite.all():
                bad = x[~finite][0]
                raise ValueError(
                    f"integrand returned a non-finite value at x = {bad}")
        if error_channel:
            return y * jac[:, None]
        return y * jac

    return _adaptive(transformed, 0.0, t_max, spec, error_channel)


def double_semi_infinite(
    integrand_si: Callable,
    spec: QuadratureSpec,
    d_ref: float,
    prefactor: float = 1.0,
) -> IntegralResult:
    """prefactor * Int_0^inf dxi Int_0^inf dq integrand_si(xi, q).

    The integrand is evaluated in SI variables but integrated in the
    dimensionless pair (u, v) = (xi*d_ref/c, q*d_ref), so exponential decay
    scales of order d_ref become O(1). The inner q integral runs at a tenfold
    tighter relative tolerance so the outer Kronrod estimate dominates; inner
    error estimates ride through the outer integral on the error channel and
    land in ``error_estimate``. ``spec.q_cutoff`` truncates the inner
    integral sharply. ``converged`` requires the outer target and every inner
    integral's own target.

    Inner integrals additionally receive an absolute floor that tracks the
    largest inner value seen so far. Without it, inner integrals deep in the
    exponential tail (value many orders below the outer integral's scale,
    or pure rounding noise) could never meet a purely relative target and
    would burn the subdivision budget on contributions the outer integral
    cannot see.
    """
    if d_ref <= 0.0:
        raise ValueError("reference length must be positive")
    from dataclasses import replace

    inner_rel = 0.1 * spec.rel_tol
    v_upper = None if spec.q_cutoff is None else spec.q_cutoff * d_ref
    state = {"evals": 0, "inner_ok": True, "scale": 0.0}
    jac = c / d_ref

    def outer_f(us):
        out = np.empty((us.size, 2))
        for i, u in enumerate(us):
            xi = u * jac

            def f(vs):
                return integrand_si(xi, vs / d_ref) / d_ref

            inner_spec = replace(
                spec, rel_tol=inner_rel,
                abs_floor=0.01 * spec.rel_tol * state["scale"],
            )
            res = integrate_semi_infinite(f, inner_spec, upper=v_upper)
            state["evals"] += res.evaluations
            state["inner_ok"] = state["inner_ok"] and res.converged
            state["scale"] = max(state["scale"], abs(res.value))
            out[i, 0] = res.value * jac
            out[i, 1] = res.error_estimate * jac
        return out

    outer_spec = spec if spec.abs_floor == 0.0 else replace(
        spec, abs_floor=spec.abs_floor / abs(prefactor)
    )
    outer = integrate_semi_infinite(outer_f, outer_spec, error_channel=True)
    return IntegralResult(
        value=prefactor * outer.value,
        error_estimate=abs(prefactor) * outer.error_estimate,
        evaluations=state["evals"],
        converged=outer.converged and state["inner_ok"],
    )


@dataclass(frozen=True)
class ScaledVariables:
    """Dimensionless substitution u = xi*d_ref/c, v = q*d_ref.

    The Jacobian factors ``dxi_du`` and ``dq_dv`` convert integrals over
    (u, v) back to SI integrals over (xi, q); using them keeps engine
    integrands O(1) over O(1) ranges of u and v.
    """

    d_ref: float
    dxi_du: float = field(init=False)
    dq_dv: float = field(init=False)

    def __post_init__(self) -> None:
        if self.d_ref <= 0.0:
            raise ValueError("reference length must be positive")
        object.__setattr__(self, "dxi_du", c / self.d_ref)
        object.__setattr__(self, "dq_dv", 1.0 / self.d_ref)

    def xi_from_u(self, u):
        return u * c / self.d_ref

    def u_from_xi(self, xi):
        return xi * self.d_ref / c

    def q_from_v(self, v):
        return v / self.d_ref

    def v_from_q(self, q):
        return q * self.d_ref


def nondimensionalize(d_ref: float) -> ScaledVariables:
    """Variable map and Jacobians for a reference length (see ScaledVariables)."""
    return ScaledVariables(d_ref)


def matsubara_frequency(m: int | np.ndarray, temperature: float):
    """m-th bosonic imaginary frequency xi_m = 2 pi m k_B T / hbar (rad/s)."""
    return 2.0 * np.pi * Boltzmann * temperature * np.asarray(m) / hbar


def _geometric_tail(last: float, prev: float) -> float:
    """Upper bound on the remaining sum, from the last two terms.

    Models the tail as a geometric series with the observed term ratio
    (clipped to 0.999 so a ratio near 1 gives a large but finite bound).
    """
    if last == 0.0:
        return 0.0
    ratio = abs(last / prev) if prev != 0.0 else 0.5
    ratio = min(ratio, 0.999)
    return abs(last) * ratio / (1.0 - ratio)


def matsubara_sum(
    g: Callable[[float], float],
    temperature: float,
    spec: QuadratureSpec,
    zero_term_policy: str = "half-weight",
    zero_term_value: float | None = None,
) -> IntegralResult:
    """Weighted thermal sum (2 pi k_B T/hbar) * [w0*g(0) + sum_m g(xi_m)].

    The weighted sum is a trapezoid rule with node spacing 2 pi k_B T/hbar,
    so it converges to ``integral_0^inf g(xi) dxi`` as T -> 0.

    Parameters
    ----------
    g : callable
        Real-valued function of the imaginary frequency xi (rad/s). Must
        decay; summation stops once the geometric tail bound falls below the
        tolerance for three consecutive m.
    temperature : float
        Temperature in kelvin, > 0.
    spec : QuadratureSpec
        Uses rel_tol, abs_floor, matsubara_max_terms and matsubara_tail.
    zero_term_policy : str
        ``"half-weight"`` uses g(0)/2 (the trapezoid endpoint weight);
        ``"drop"`` omits the m = 0 term without evaluating g(0);
        ``"custom-value"`` uses ``zero_term_value/2`` in place of g(0)/2, for
        integrands whose xi -> 0 limit exists but cannot be evaluated at 0.
    zero_term_value : float, optional
        Stand-in for g(0) under ``"custom-value"``.

    Returns
    -------
    IntegralResult
        ``value`` includes the 2 pi k_B T/hbar prefactor; ``error_estimate``
        covers truncation of the tail (and the discarded/added tail per the
        tail policy), not errors internal to g itself.
    """
    if temperature <= 0.0:
        raise ValueError("matsubara_sum needs temperature > 0; use the"
                         " zero-temperature integral instead")
    if zero_term_policy not in ("half-weight", "drop", "custom-value"):
        raise ValueError(f"unknown zero_term_policy {zero_term_policy!r}")
    if zero_term_policy == "custom-value" and zero_term_value is None:
        raise ValueError("custom-value policy requires zero_term_value")

    prefactor = 2.0 * np.pi * Boltzmann * temperature / hbar
    evaluations = 0

    if zero_term_policy == "drop":
        total = 0.0
    elif zero_term_policy == "custom-value":
        total = 0.5 * float(zero_term_value)
    else:
        g0 = float(g(0.0))
        evaluations += 1
        if not np.isfinite(g0):
            raise ValueError(
                "g(0) is not finite; choose zero_term_policy 'drop' or"
                " 'custom-value' for zero-frequency-divergent media"
            )
        total = 0.5 * g0

    below = 0
    last = prev = 0.0
    truncated = True
    for m in range(1, spec.matsubara_max_terms + 1):
        term = float(g(float(matsubara_frequency(m, temperature))))
        evaluations += 1
        if not np.isfinite(term):
            raise ValueError(f"thermal term m = {m} is not finite")
        prev, last = last, term
        total += term
        tol = max(spec.rel_tol * abs(total), spec.abs_floor / prefactor)
        # Judge the geometric tail, not the term: at low temperature the
        # term ratio approaches 1 and the tail dwarfs the last term.
        below = below + 1 if _geometric_tail(last, prev) <= tol else 0
        if below >= 3:
            truncated = False
            break

    tail = _geometric_tail(last, prev)
    if spec.matsubara_tail == "integral-tail-estimate" and last != 0.0:
        sign = 1.0 if last > 0.0 else -1.0
        total += sign * tail
        error = prefactor * 0.5 * tail
    else:
        error = prefactor * tail

    value = prefactor * total
    converged = (not truncated) and (
        error <= max(spec.rel_tol * abs(value), spec.abs_floor)
    )
    return IntegralResult(value=value, error_estimate=error,
                          evaluations=evaluations, converged=converged)
