"""Dimensionless decoherence functions of a common bosonic dephasing bath.

All quantities are evaluated by composite Gauss-Legendre quadrature of the
continuum integrands over [0, omega_max] with a Gaussian frequency cutoff
(cutoff frequency = 1 sets the units).  Panel widths lock to the fastest
oscillation present (time t or qubit separation s) and estimates are
refined until successive panel doublings agree to ``abs_tol``.

Functions
---------
gamma_s   two-qubit dephasing exponent (thermal)
zeta      two-qubit bath-induced phase
zeta0     single-qubit phase (separation factor dropped, weight halved)
gamma1    single-qubit dephasing exponent
kappa     complex coherence factor: correlation bracket x exp(-gamma_s)
gamma_ic  extra decay exponent attributable to the initial correlations
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._core import kernels

_GL_ORDER = 12
_MAX_REFINE = 12
_PANEL_CAP = math.pi / 4.0


class QuadratureError(ArithmeticError):
    """Panel refinement exhausted without meeting the tolerance."""


@dataclass(frozen=True)
class BathParams:
    """Dimensionless physical configuration of the qubit pair and bath.

    coupling_a : aggregate coupling prefactor A (>= 0); the phase integrand
        carries A/2, preserving the 2:1 ratio of the underlying prefactors
    beta       : inverse temperature in cutoff units (> 0)
    omega0     : qubit energy splitting in cutoff units (> 0)
    s          : separation time between the qubits (>= 0)
    alpha      : channel weight in [0, 1]
    """

    coupling_a: float = 1.0
    beta: float = 1.0
    omega0: float = 1.0
    s: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        if self.coupling_a < 0:
            raise ValueError(f"coupling_a must be >= 0, got {self.coupling_a}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.s < 0:
            raise ValueError(f"s must be >= 0, got {self.s}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature controls: truncation point, panel density, tolerance."""

    omega_max: float = 6.5
    panels_per_period: int = 8
    abs_tol: float = 1e-12

    def __post_init__(self):
        if self.omega_max < 6.0:
            raise ValueError(f"omega_max must be >= 6, got {self.omega_max}")
        if self.panels_per_period < 1:
            raise ValueError("panels_per_period must be a positive integer")
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be > 0")


@dataclass(frozen=True)
class DecoherenceState:
    """All scalar decoherence functions evaluated at one time."""

    t: float
    gamma_s: float
    zeta: float
    zeta0: float
    gamma1: float
    gamma_ic: float
    kappa: complex


def coth_half(beta: float, omega: float) -> float:
    """coth(beta*omega/2), series below x = 1e-4, +inf sentinel at omega = 0.

    Integrands never use this unguarded: they evaluate the combined form
    omega*coth(beta*omega/2), which is 2/beta at omega = 0.
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    if omega == 0.0:
        return math.inf
    x = 0.5 * beta * omega
    if x < 1e-4:
        return 1.0 / x + x / 3.0 - x ** 3 / 45.0
    if x > 19.0:
        return 1.0
    # (e^{2x}+1)/(e^{2x}-1), evaluated via expm1 to dodge the cancellation
    return 1.0 + 2.0 / math.expm1(2.0 * x)


@lru_cache(maxsize=64)
def _gl_rule(order: int):
    return np.polynomial.legendre.leggauss(order)


@lru_cache(maxsize=128)
def _panel_nodes(npanels: int, omega_max: float):
    """Composite Gauss-Legendre nodes/weights on [0, omega_max]."""
    x, w = _gl_rule(_GL_ORDER)
    edges = np.linspace(0.0, omega_max, npanels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return np.ascontiguousarray(nodes), np.ascontiguousarray(weights)


def _refined_quadrature(kind: int, p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Panel-doubling refinement of the composite Gauss-Legendre estimate.

    Converged when successive estimates differ by less than
    abs_tol * max(1, |value|): absolute for unit-scale integrals, relative
    beyond (a hot bath scales the thermal integrands by 2/beta, putting a
    plain absolute 1e-12 below the double-precision summation floor).
    """
    width = min(_PANEL_CAP, 2.0 * math.pi / (q.panels_per_period * max(t, p.s, 1.0)))
    npanels = max(1, math.ceil(q.omega_max / width))
    nodes, weights = _panel_nodes(npanels, q.omega_max)
    prev = kernels.integrand_sum(kind, nodes, weights, p.beta, p.s, t)
    for _ in range(_MAX_REFINE):
        npanels *= 2
        nodes, weights = _panel_nodes(npanels, q.omega_max)
        cur = kernels.integrand_sum(kind, nodes, weights, p.beta, p.s, t)
        if abs(cur - prev) < q.abs_tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureError(
        f"quadrature did not converge to {q.abs_tol} for kind={kind}, t={t}"
    )


@lru_cache(maxsize=200_000)
def _core_integral(kind: int, p: BathParams, q: QuadratureSpec, t: float) -> float:
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0.0 or p.coupling_a == 0.0:
        return 0.0
    return _refined_quadrature(kind, p, q, t)


def gamma_s(p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Two-qubit dephasing exponent.

    A * int_0^inf dw w e^{-w^2} (1 + sin(ws)/(ws)) sin^2(wt/2) coth(bw/2)
    """
    return p.coupling_a * _core_integral(0, p, q, float(t))


def zeta(p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Two-qubit bath phase.

    (A/2) * int_0^inf dw w e^{-w^2} (1 + sin(ws)/(ws)) sin(wt)
    """
    return 0.5 * p.coupling_a * _core_integral(1, p, q, float(t))


def zeta0(p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Single-qubit bath phase: (A/4) * int_0^inf dw w e^{-w^2} sin(wt)."""
    return 0.25 * p.coupling_a * _core_integral(2, p, q, float(t))


def gamma1(p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Single-qubit dephasing exponent.

    (A/2) * int_0^inf dw w e^{-w^2} sin^2(wt/2) coth(bw/2)
    """
    return 0.5 * p.coupling_a * _core_integral(3, p, q, float(t))


def correlation_bracket(alpha: float, beta_omega0: float, phase: float) -> complex:
    """Weighted average of e^{+i phase} and e^{-i phase}.

    Weights alpha*e^{-beta*omega0} and (1-alpha)*e^{+beta*omega0}, evaluated
    in log space so beta*omega0 up to ~700 cannot overflow.
    """
    lw_plus = (math.log(alpha) if alpha > 0 else -math.inf) - beta_omega0
    lw_minus = (math.log1p(-alpha) if alpha < 1 else -math.inf) + beta_omega0
    m = max(lw_plus, lw_minus)
    r_plus = math.exp(lw_plus - m)
    r_minus = math.exp(lw_minus - m)
    z = complex(math.cos(phase), math.sin(phase))
    return (r_plus * z + r_minus * z.conjugate()) / (r_plus + r_minus)


def kappa(p: BathParams, q: QuadratureSpec, t: float) -> complex:
    """Complex coherence factor of the correlated channel.

    The bracket averages e^{+/- 2i zeta(t)} over the thermal weights of the
    two populated channel levels; the modulus is damped by exp(-gamma_s(t)).
    kappa(0) = 1 and |kappa| <= 1 for all t.
    """
    z = zeta(p, q, t)
    g = gamma_s(p, q, t)
    return correlation_bracket(p.alpha, p.beta * p.omega0, 2.0 * z) * math.exp(-g)


def gamma_ic(p: BathParams, q: QuadratureSpec, t: float) -> float:
    """Decay exponent attributable to the initial system-bath correlations.

    -(1/2) log[cos^2(2 zeta) + sin^2(2 zeta) tanh^2(beta omega0)]; for the
    symmetric channel exp(-gamma_ic - gamma_s) equals |kappa|.
    """
    z2 = 2.0 * zeta(p, q, t)
    th = math.tanh(p.beta * p.omega0)
    # rounding can push the bracket a few ulp above 1; clamp at exactly 0
    return max(0.0, -0.5 * math.log(math.cos(z2) ** 2 + math.sin(z2) ** 2 * th * th))


def decoherence_state(p: BathParams, q: QuadratureSpec, t: float) -> DecoherenceState:
    """Evaluate every decoherence function at one time."""
    return DecoherenceState(
        t=float(t),
        gamma_s=gamma_s(p, q, t),
        zeta=zeta(p, q, t),
        zeta0=zeta0(p, q, t),
        gamma1=gamma1(p, q, t),
        gamma_ic=gamma_ic(p, q, t),
        kappa=kappa(p, q, t),
    )


def vanishing_dephasing_bracket_modulus(p: BathParams) -> float:
    """Diagnostic: sqrt(cosh(2 b w0)) / (sqrt(2) cosh(b w0)).

    Quoted closed-form coherence modulus for the corner case where both
    decoherence functions vanish; it conflicts with kappa -> 1 there, so
    it is exposed for inspection only and feeds nothing downstream.
    """
    x = p.beta * p.omega0
    # log-space: cosh(2x)/cosh(x)^2 with overflow-free large-x limit 2
    if x > 19.0:
        ratio = 2.0 * (1.0 + math.exp(-4.0 * x)) / (1.0 + math.exp(-2.0 * x)) ** 2
    else:
        ratio = math.cosh(2.0 * x) / math.cosh(x) ** 2
    return math.sqrt(ratio / 2.0)
