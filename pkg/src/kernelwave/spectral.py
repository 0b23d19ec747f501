"""Periodic pseudospectral machinery: grids, fields, mode-wise operators.

The domain is [-half_length, half_length) sampled at n equispaced points, with
frequencies pi*m/half_length.  Convolution against a kernel and the spatial
derivative act as multipliers on the real FFT of a field; Sobolev norms carry
the 2L Parseval factor so that order zero reproduces the L2 quadrature norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import KernelSpec

__all__ = [
    "Grid",
    "Field",
    "NormOrder",
    "apply_convolution",
    "spectral_derivative",
    "sobolev_norm",
    "dealias",
    "dealias_cutoff",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid: n points on [-half_length, half_length)."""

    n: int
    half_length: float

    def __post_init__(self):
        if self.n < 16 or self.n % 2:
            raise ValueError(f"grid size must be even and >= 16, got {self.n}")
        if self.half_length <= 0:
            raise ValueError(f"half_length must be positive, got {self.half_length}")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n

    @property
    def x(self) -> np.ndarray:
        return -self.half_length + self.dx * np.arange(self.n)

    @property
    def xi(self) -> np.ndarray:
        """Non-negative frequencies pi*m/half_length, m = 0..n/2 (rfft layout)."""
        return 2.0 * np.pi * np.fft.rfftfreq(self.n, self.dx)

    @property
    def max_frequency(self) -> float:
        return np.pi / self.dx


@dataclass(eq=False)
class Field:
    """Real grid function with lazily cached transforms.

    Treated as immutable: the value array is copied in and write-protected,
    and all operators return fresh fields.
    """

    grid: Grid
    values: np.ndarray
    _hat: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        values.setflags(write=False)
        self.values = values

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Field":
        return cls(grid, np.asarray(fn(grid.x), dtype=float))

    @classmethod
    def zero(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros(grid.n))

    @property
    def hat(self) -> np.ndarray:
        """Real FFT of the values (cached)."""
        if self._hat is None:
            hat = np.fft.rfft(self.values)
            hat.setflags(write=False)
            self._hat = hat
        return self._hat

    @property
    def spectrum(self) -> np.ndarray:
        """Fourier-series coefficients c_m with u(x_j) = sum_m c_m exp(i*xi_m*x_j),
        in fft frequency order (m = 0..n/2-1, -n/2..-1)."""
        n = self.grid.n
        m = np.rint(np.fft.fftfreq(n) * n).astype(int)
        phase = np.where(m % 2 == 0, 1.0, -1.0)   # grid starts at -half_length
        return phase * np.fft.fft(self.values) / n


@dataclass(frozen=True)
class NormOrder:
    """Sobolev order; any s >= 0 defines a norm, solver diagnostics need s > 3/2."""

    s: float

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"Sobolev order must be >= 0, got {self.s}")

    @property
    def solver_grade(self) -> bool:
        return self.s > 1.5


def _from_hat(grid: Grid, hat: np.ndarray) -> Field:
    out = Field(grid, np.fft.irfft(hat, grid.n))
    hat = np.asarray(hat)
    hat.setflags(write=False)
    out._hat = hat
    return out


def apply_convolution(kernel: KernelSpec, delta: float, f: Field) -> Field:
    """Convolve with the delta-scaled kernel: multiply mode m by symbol(delta*xi_m)."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    multiplier = np.asarray(kernel.symbol(delta * f.grid.xi), dtype=float)
    return _from_hat(f.grid, multiplier * f.hat)


def derivative_multiplier(grid: Grid) -> np.ndarray:
    """i*xi_m with the Nyquist entry zeroed (odd-derivative convention)."""
    mult = 1j * grid.xi
    mult[-1] = 0.0
    return mult


def spectral_derivative(f: Field) -> Field:
    return _from_hat(f.grid, derivative_multiplier(f.grid) * f.hat)


def norm_from_hat(grid: Grid, hat: np.ndarray, s: float) -> float:
    """H^s norm from rfft coefficients: sqrt(2L * sum (1+xi^2)^s |c_m|^2)."""
    weights = (1.0 + grid.xi**2) ** s
    power = np.abs(hat / grid.n) ** 2
    # interior rfft modes stand for conjugate pairs; mode 0 and Nyquist are single
    total = weights[0] * power[0] + 2.0 * np.dot(weights[1:-1], power[1:-1]) + weights[-1] * power[-1]
    return float(np.sqrt(2.0 * grid.half_length * total))


def sobolev_norm(f: Field, s: NormOrder | float) -> float:
    """Discrete H^s norm; s = 0 reproduces sqrt(dx * sum u^2) by Parseval."""
    order = s.s if isinstance(s, NormOrder) else float(s)
    if order < 0:
        raise ValueError(f"Sobolev order must be >= 0, got {order}")
    return norm_from_hat(f.grid, f.hat, order)


def dealias_cutoff(n: int, p: int) -> int:
    """Highest mode kept for a (p+1)-fold product: strict |m| < n/(p+2), the
    generalized two-thirds rule (aliases of in-band products land outside)."""
    if p < 1:
        raise ValueError(f"nonlinearity exponent p must be >= 1, got {p}")
    return (n - 1) // (p + 2)


def dealias(f: Field, p: int) -> Field:
    """Zero all modes above the retained band for the nonlinearity u^(p+1)."""
    keep = dealias_cutoff(f.grid.n, p)
    hat = f.hat.copy()
    hat[keep + 1:] = 0.0
    return _from_hat(f.grid, hat)
