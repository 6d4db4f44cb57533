"""Finite-power Gaussian entropies, mutual information and d.o.f. slopes.

This is the floating-point counterpart of the exact rank checks: for a
linear map A and symbols of variance alpha*P in unit additive noise,
h(AX + N) = (1/2) ln det(2*pi*e*(alpha*P*A*A^T + I)) grows like
rank(A) * (1/2) ln P, so fitted slopes of entropy/MI sweeps against
(1/2) ln P must reproduce the exact rank and leakage counts.  Rational
precoders are converted to floats once, on entry to this module; every
exactness claim lives outside it.

All entropies and mutual informations are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel import StackedChannel
from .errors import NumericalFailure
from .ratmat import hconcat
from .schemes import LinearScheme

POWER_GRID_DEFAULT: tuple[float, ...] = (1e2, 1e4, 1e6, 1e8, 1e10)

_LN_2PI_E = float(np.log(2.0 * np.pi) + 1.0)


def default_symbol_scale(s: LinearScheme) -> float:
    """Per-symbol variance scale alpha = 1 / max combined column count.

    Each transmitter sends m_i + n_i unit-scale columns; with precoder
    entries bounded by 1 this keeps every transmitter's per-slot input
    covariance trace at or below N*P.
    """
    widest = max(s.m1 + s.n1, s.m2 + s.n2, 1)
    return 1.0 / widest


def transmit_power_per_slot(
    s: LinearScheme, transmitter: int, power: float, alpha: float | None = None
) -> float:
    """Average per-slot trace of one transmitter's input covariance."""
    if alpha is None:
        alpha = default_symbol_scale(s)
    mats = (s.barP1, s.barQ1) if transmitter == 1 else (s.barP2, s.barQ2)
    sq = sum(float(np.sum(m.to_float_array() ** 2)) for m in mats)
    return alpha * power * sq / s.dims.n_slots


def gaussian_entropy(a: np.ndarray, power: float, alpha: float = 1.0) -> float:
    """h(AX + N) for X ~ N(0, alpha*power*I), N ~ N(0, I), in nats.

    Computed as (1/2) ln det(2*pi*e*(alpha*power*A*A^T + I)) through a
    Cholesky factorization of the (always positive definite) covariance.
    """
    if power <= 0:
        raise ValueError("power must be positive")
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    if m == 0:
        return 0.0
    cov = alpha * power * (a @ a.T) + np.eye(m)
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"covariance lost positive definiteness: {exc}") from exc
    return 0.5 * m * _LN_2PI_E + float(np.sum(np.log(np.diag(chol))))


@dataclass(frozen=True)
class GaussianLinearSystem:
    """Float maps from (information, noise) symbols to one receiver's output."""

    info_map: np.ndarray
    noise_map: np.ndarray
    alpha: float

    @classmethod
    def from_scheme(
        cls,
        s: LinearScheme,
        c: StackedChannel,
        side: str = "legitimate",
        alpha: float | None = None,
    ) -> "GaussianLinearSystem":
        if side == "legitimate":
            left, right = c.barH1, c.barH2
        elif side == "eavesdropper":
            left, right = c.barG1, c.barG2
        else:
            raise ValueError(f"unknown side {side!r}")
        info = hconcat([left @ s.barP1, right @ s.barP2]).to_float_array()
        noise = hconcat([left @ s.barQ1, right @ s.barQ2]).to_float_array()
        if alpha is None:
            alpha = default_symbol_scale(s)
        return cls(info_map=info, noise_map=noise, alpha=alpha)

    def mutual_information(self, power: float) -> float:
        """I(v; output) = h(output) - h(output | v), in nats."""
        full = np.concatenate([self.info_map, self.noise_map], axis=1)
        return gaussian_entropy(full, power, self.alpha) - gaussian_entropy(
            self.noise_map, power, self.alpha
        )


def legitimate_mi(
    s: LinearScheme, c: StackedChannel, power: float, alpha: float | None = None
) -> float:
    """I(v1, v2; Y-stack) at transmit power ``power``, in nats."""
    return GaussianLinearSystem.from_scheme(s, c, "legitimate", alpha).mutual_information(power)


def leakage_mi(
    s: LinearScheme, c: StackedChannel, power: float, alpha: float | None = None
) -> float:
    """I(v1, v2; Z-stack) at transmit power ``power``, in nats."""
    return GaussianLinearSystem.from_scheme(s, c, "eavesdropper", alpha).mutual_information(power)


def secrecy_rate_proxy(
    s: LinearScheme,
    c: StackedChannel,
    power: float,
    alpha: float | None = None,
    window: float = 1e2,
) -> float:
    """Per-slot secure-rate growth in d.o.f. units at high power.

    Local difference quotient of the secure-rate gap at ``power``:

        [gap(P) - gap(P / window)] / (n * (1/2) ln(window)),

    with gap(P) = legitimate MI - leakage MI.  The quotient strips the
    P-independent log-det constants whose contribution to the plain
    ratio gap / (n * (1/2) ln P) decays only like 1/ln P (several 0.1
    d.o.f. even at P = 1e10); what remains converges to (2N-K)/2 for
    the helper construction at the rate the saturating terms die off.
    """
    if alpha is None:
        alpha = default_symbol_scale(s)

    def gap(p: float) -> float:
        return legitimate_mi(s, c, p, alpha) - leakage_mi(s, c, p, alpha)

    rise = gap(power) - gap(power / window)
    return rise / (s.dims.n_slots * 0.5 * float(np.log(window)))


@dataclass(frozen=True)
class MISweep:
    """A function of P sampled over a power grid, with its fitted slope
    against (1/2) ln P over the top half of the grid."""

    powers: tuple[float, ...]
    values: tuple[float, ...]
    fitted_slope: float
    residual: float


def dof_slope(sweep: Callable[[float], float], powers: Sequence[float] = POWER_GRID_DEFAULT) -> MISweep:
    """Evaluate ``sweep`` on the grid and fit a d.o.f. slope.

    The fit regresses the values against (1/2) ln P using only the top
    half of the grid, discarding the low-SNR transient; the reported
    residual is the RMS misfit over the fitted points.

    Requires at least 4 grid points spanning at least 6 decades, all
    >= 100, strictly increasing.
    """
    powers = tuple(float(p) for p in powers)
    if len(powers) < 4:
        raise ValueError("need at least 4 power points")
    if any(b <= a for a, b in zip(powers, powers[1:])):
        raise ValueError("powers must be strictly increasing")
    if powers[0] < 1e2:
        raise ValueError("powers must be >= 1e2")
    if powers[-1] < 1e6 * powers[0]:
        raise ValueError("powers must span at least 6 decades")
    values = tuple(float(sweep(p)) for p in powers)
    top = len(powers) // 2
    x = 0.5 * np.log(np.asarray(powers[top:]))
    y = np.asarray(values[top:])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return MISweep(powers=powers, values=values, fitted_slope=float(slope), residual=resid)
