"""Degrees-of-freedom accounting for band limited fields on a disk.

Each circular-harmonic order behaves as a one dimensional channel whose
usable band shrinks with the order: the order-n signal rides on
J_n(omega R / c), which is evanescent below a critical frequency that
grows linearly in n.  Summing usable bandwidth times effective
observation time across orders, plus one residual dimension per order,
gives the total spatial-temporal degree-of-freedom count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from .channel import ChannelConfig

__all__ = [
    "SnrBound",
    "OrderBudget",
    "DofReport",
    "effective_time",
    "snr_max",
    "critical_frequency",
    "snr_upper_bound",
    "truncation_order",
    "effective_bandwidth",
    "total_dof",
]

_E_PI = math.e * math.pi

_MAX_SCAN_ORDER = 10_000_000


class SnrBound(NamedTuple):
    """Per-order SNR ceiling; ``value`` may overflow to inf, ``log_value`` never does."""

    log_value: float
    value: float


class OrderBudget(NamedTuple):
    """One order's row of the degree-of-freedom budget."""

    n: int
    f_crit: float
    w_eff: float
    dof: float


def effective_time(cfg: ChannelConfig) -> float:
    """Observation window plus the disk's aperture fill time, T + 2R/c.

    A wavefront takes 2R/c to sweep the disk, so the region keeps
    accumulating independent temporal samples for that long after the
    window closes.
    """
    return cfg.obs_time + 2.0 * cfg.radius / cfg.wave_speed


def snr_max(cfg: ChannelConfig) -> float:
    """Best-case per-order SNR, p_max / noise_var."""
    if cfg.noise_var == 0.0:
        raise ValueError("snr_max is undefined for noise_var == 0")
    return cfg.p_max / cfg.noise_var


def critical_frequency(cfg: ChannelConfig, n: int) -> float:
    """Frequency below which order n stays under the detection threshold.

    max(0, n c / (e pi R) + c ln(gamma / snr_max) / (2 e pi R)); the
    threshold crossing of the order-n SNR ceiling.  Degenerate limits:
    inf when the channel is silent (p_max == 0) or the region is a point
    (R == 0, except order 0 at gamma <= snr_max, which stays usable).
    """
    n = abs(int(n))
    s = snr_max(cfg)
    if s == 0.0:
        return math.inf
    log_ratio = math.log(cfg.gamma) - math.log(s)
    if cfg.radius == 0.0:
        if n == 0 and log_ratio <= 0.0:
            return 0.0
        return math.inf
    scale = cfg.wave_speed / (_E_PI * cfg.radius)
    return max(0.0, scale * (n + 0.5 * log_ratio))


def snr_upper_bound(cfg: ChannelConfig, n: int, freq: float, tight: bool = False) -> SnrBound:
    """Ceiling on the order-n SNR at a given frequency.

    snr_max * exp(-(2n - 2 pi e f R / c)), from the small-argument
    Bessel envelope; meaningful in the evanescent regime
    2 pi f R / c < n.  ``tight`` divides out the slack factor
    2 pi n (2n + 1) kept by the loose exponential form (n >= 1 only).
    """
    n = abs(int(n))
    if freq < 0.0:
        raise ValueError(f"freq must be >= 0, got {freq}")
    s = snr_max(cfg)
    if s == 0.0:
        return SnrBound(-math.inf, 0.0)
    log_val = math.log(s) - 2.0 * n + 2.0 * math.pi * math.e * freq * cfg.radius / cfg.wave_speed
    if tight:
        if n < 1:
            raise ValueError("tight bound requires n >= 1")
        log_val -= math.log(2.0 * math.pi * n * (2.0 * n + 1.0))
    value = math.exp(log_val) if log_val < 709.0 else math.inf
    return SnrBound(log_val, value)


def truncation_order(cfg: ChannelConfig) -> int:
    """Smallest order whose critical frequency clears the whole band.

    Orders at or above this contribute no usable bandwidth; the budget
    enumerates strictly smaller orders.
    """
    n = 1
    while critical_frequency(cfg, n) <= cfg.band_high:
        n += 1
        if n > _MAX_SCAN_ORDER:
            raise RuntimeError(f"truncation order exceeds {_MAX_SCAN_ORDER}; config out of supported range")
    return n


def effective_bandwidth(cfg: ChannelConfig, n: int) -> float:
    """Usable bandwidth of order n inside the physical band.

    Order 0 keeps the full 2*half_bw.  Other orders keep the part of the
    band above their critical frequency, and nothing once the critical
    frequency clears the band edge.  Even in |n|.
    """
    n = abs(int(n))
    if n == 0:
        return 2.0 * cfg.half_bw
    f_crit = critical_frequency(cfg, n)
    if f_crit > cfg.band_high:
        return 0.0
    return cfg.band_high - max(cfg.band_low, f_crit)


def total_dof(cfg: ChannelConfig) -> "DofReport":
    """Degree-of-freedom budget across all usable orders.

    Each order |n| < truncation_order contributes w_eff * t_eff + 1; the
    +1 is the residual dimension an order keeps even with vanishing
    usable band.
    """
    n_up = truncation_order(cfg)
    t_eff = effective_time(cfg)
    rows = []
    for n in range(-(n_up - 1), n_up):
        f_crit = critical_frequency(cfg, n)
        w_eff = effective_bandwidth(cfg, n)
        rows.append(OrderBudget(n=n, f_crit=f_crit, w_eff=w_eff, dof=w_eff * t_eff + 1.0))
    return DofReport(
        config=cfg,
        t_eff=t_eff,
        n_upper=n_up,
        per_order=tuple(rows),
        total=float(sum(r.dof for r in rows)),
    )


@dataclass(frozen=True)
class DofReport:
    """Evaluated budget: per-order rows plus the totals they sum to."""

    config: ChannelConfig
    t_eff: float
    n_upper: int
    per_order: tuple
    total: float

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "t_eff": self.t_eff,
            "n_upper": self.n_upper,
            "per_order": [r._asdict() for r in self.per_order],
            "total": self.total,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DofReport":
        return cls(
            config=ChannelConfig.from_dict(d["config"]),
            t_eff=float(d["t_eff"]),
            n_upper=int(d["n_upper"]),
            per_order=tuple(
                OrderBudget(int(r["n"]), float(r["f_crit"]), float(r["w_eff"]), float(r["dof"]))
                for r in d["per_order"]
            ),
            total=float(d["total"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "DofReport":
        return cls.from_dict(json.loads(s))

    def to_csv(self) -> str:
        """Per-order table; column order n, f_crit_hz, w_eff_hz, dof."""
        lines = ["n,f_crit_hz,w_eff_hz,dof"]
        for r in self.per_order:
            lines.append(f"{r.n:d},{r.f_crit:.9g},{r.w_eff:.9g},{r.dof:.9g}")
        return "\n".join(lines) + "\n"
