"""Catalog of even, unit-mass convolution kernels defined by their Fourier symbols.

Every kernel is stored unscaled (dispersion parameter 1); the scaled family
acts through the symbol evaluated at ``delta * xi``.  Moments are computed
either by adaptive quadrature of a closed-form density or by numerical
differentiation of the symbol at the origin, and the leading order at which
two symbols separate near zero frequency ("matching order") is measured by a
log-log fit of the symbol difference.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

__all__ = [
    "KernelSpec",
    "MomentTable",
    "ProbeDepthExceeded",
    "catalog",
    "lookup",
    "symbol_eval",
    "moment",
    "moment_table",
    "matching_order",
]

IDENTICAL = math.inf

_SQRT2 = math.sqrt(2.0)

# |density| integrates to 1 + sqrt(2)*exp(-3*pi/4)/(1 - exp(-pi)): the kernel
# oscillates, and the lobe integrals past the first sign change form a
# geometric series.
_ROSENAU_L1 = 1.0 + _SQRT2 * math.exp(-0.75 * math.pi) / (1.0 - math.exp(-math.pi))


class ProbeDepthExceeded(ValueError):
    """Two symbols differ, but not at any order resolvable within the probe depth."""


@dataclass(frozen=True)
class KernelSpec:
    """An even kernel of unit mass, identified by its real Fourier symbol.

    ``symbol`` maps frequency to the transform of the unscaled kernel and must
    equal 1 at zero.  ``density`` is the closed-form spatial profile where one
    exists (used only as a quadrature oracle); ``support``/``breakpoints``
    guide that quadrature.  ``mass_bound`` is the L1 norm of the density, or
    the total variation for measure-type kernels.  ``smooth_symbol_order`` is
    the highest derivative of the symbol that exists at the origin (None when
    all probed orders exist).
    """

    name: str
    symbol: Callable[[np.ndarray | float], np.ndarray | float]
    density: Callable[[np.ndarray | float], np.ndarray | float] | None = None
    mass_bound: float = 1.0
    smooth_symbol_order: int | None = None
    support: tuple[float, float] | None = None
    breakpoints: tuple[float, ...] = ()
    formula: str = ""

    def __post_init__(self):
        at_zero = float(np.asarray(self.symbol(0.0)))
        if abs(at_zero - 1.0) > 1e-12:
            raise ValueError(f"kernel '{self.name}': symbol(0) = {at_zero!r}, must be 1")
        if self.mass_bound < 1.0 - 1e-12:
            raise ValueError(f"kernel '{self.name}': mass bound {self.mass_bound} < 1")


@dataclass(frozen=True)
class MomentTable:
    """Moments of one kernel with the method used for each entry."""

    kernel: str
    moments: tuple[float, ...]
    methods: tuple[str, ...]


# --- symbols and densities (module level so specs pickle for worker pools) ---

def _dirac_symbol(xi):
    return np.ones_like(np.asarray(xi, dtype=float))


def _inverse_power_symbol(xi, exponent):
    return 1.0 / (1.0 + np.abs(np.asarray(xi, dtype=float)) ** exponent)


def _rectangular_symbol(xi):
    # 2*sin(xi/2)/xi, continued by 1 at the origin
    return np.sinc(np.asarray(xi, dtype=float) / (2.0 * np.pi))


def _five_point_symbol(xi):
    # (8*sin(xi/2) - sin(xi))/(3*xi), continued by 1 at the origin
    xi = np.asarray(xi, dtype=float)
    return (4.0 / 3.0) * np.sinc(xi / (2.0 * np.pi)) - (1.0 / 3.0) * np.sinc(xi / np.pi)


def _exponential_density(x):
    return 0.5 * np.exp(-np.abs(np.asarray(x, dtype=float)))


def _rosenau_density(x):
    t = np.abs(np.asarray(x, dtype=float)) / _SQRT2
    return np.exp(-t) * (np.cos(t) + np.sin(t)) / (2.0 * _SQRT2)


def _rectangular_density(x):
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= 0.5, 1.0, 0.0)


def _five_point_density(x):
    ax = np.abs(np.asarray(x, dtype=float))
    return np.where(ax < 0.5, 7.0 / 6.0, np.where(ax < 1.0, -1.0 / 6.0, 0.0))


@lru_cache(maxsize=32)
def _l1_norm_from_symbol(name: str, exponent: float, span: float = 400.0, n: int = 1 << 20) -> float:
    """L1 norm of the density recovered from an inverse-power symbol by FFT inversion."""
    dx = span / n
    xi = 2.0 * np.pi * np.fft.rfftfreq(n, dx)
    density = np.fft.irfft(_inverse_power_symbol(xi, exponent)) / dx
    return float(np.sum(np.abs(density)) * dx)


def _bbm_spec(k: int) -> KernelSpec:
    if k < 1:
        raise ValueError(f"bbm_family requires k >= 1, got {k}")
    density = None
    support = None
    if k == 1:
        density, mass = _exponential_density, 1.0
    elif k == 2:
        density, mass = _rosenau_density, _ROSENAU_L1
    else:
        mass = _l1_norm_from_symbol("bbm_family", 2.0 * k)
    return KernelSpec(
        name=f"bbm_family:k={k}",
        symbol=partial(_inverse_power_symbol, exponent=2.0 * k),
        density=density,
        mass_bound=mass,
        support=support,
        formula=f"1/(1 + xi^{2 * k})",
    )


def _fractional_spec(gamma: float) -> KernelSpec:
    if gamma <= 0:
        raise ValueError(f"fractional kernel requires gamma > 0, got {gamma}")
    two_gamma = 2.0 * gamma
    if two_gamma == int(two_gamma) and int(two_gamma) % 2 == 0:
        smooth = None
    else:
        smooth = math.ceil(two_gamma) - 1
    # for gamma <= 1 the kernel is a positive measure of mass 1; beyond that it
    # oscillates and the L1 norm is estimated numerically
    mass = 1.0 if gamma <= 1.0 else _l1_norm_from_symbol("fractional", two_gamma)
    return KernelSpec(
        name=f"fractional:gamma={gamma:g}",
        symbol=partial(_inverse_power_symbol, exponent=two_gamma),
        mass_bound=mass,
        smooth_symbol_order=smooth,
        formula=f"1/(1 + |xi|^{two_gamma:g})",
    )


@lru_cache(maxsize=1)
def catalog() -> tuple[KernelSpec, ...]:
    """All built-in kernels (fractional at the representative gamma = 0.75)."""
    return (
        KernelSpec(name="dirac", symbol=_dirac_symbol, formula="1"),
        KernelSpec(
            name="exponential",
            symbol=partial(_inverse_power_symbol, exponent=2.0),
            density=_exponential_density,
            formula="1/(1 + xi^2)",
        ),
        KernelSpec(
            name="rosenau",
            symbol=partial(_inverse_power_symbol, exponent=4.0),
            density=_rosenau_density,
            mass_bound=_ROSENAU_L1,
            formula="1/(1 + xi^4)",
        ),
        _bbm_spec(1),
        _bbm_spec(2),
        _bbm_spec(3),
        _bbm_spec(4),
        KernelSpec(
            name="rectangular",
            symbol=_rectangular_symbol,
            density=_rectangular_density,
            support=(-0.5, 0.5),
            formula="2*sin(xi/2)/xi",
        ),
        KernelSpec(
            name="five_point",
            symbol=_five_point_symbol,
            density=_five_point_density,
            mass_bound=4.0 / 3.0,
            support=(-1.0, 1.0),
            breakpoints=(-0.5, 0.5),
            formula="(8*sin(xi/2) - sin(xi))/(3*xi)",
        ),
        _fractional_spec(0.75),
    )


_ALIASES = {"bbm": "exponential"}


def _available() -> str:
    fixed = sorted(k.name for k in catalog() if ":" not in k.name)
    return ", ".join(fixed + ["bbm_family:k=K", "fractional:gamma=G", "bbm (alias)"])


@lru_cache(maxsize=256)
def lookup(name: str) -> KernelSpec:
    """Resolve a kernel by CLI-style name, e.g. ``bbm_family:k=2`` or ``fractional:gamma=0.75``."""
    name = name.strip()
    name = _ALIASES.get(name, name)
    base, _, rest = name.partition(":")
    params: dict[str, str] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"malformed kernel parameter {item!r} in {name!r}")
            params[key.strip()] = value.strip()
    try:
        if base == "bbm_family":
            return _bbm_spec(int(params.pop("k")))
        if base == "fractional":
            return _fractional_spec(float(params.pop("gamma")))
    except KeyError as exc:
        raise ValueError(f"kernel {base!r} needs parameter {exc.args[0]!r}") from None
    if params:
        raise ValueError(f"kernel {base!r} takes no parameter {sorted(params)!r}")
    for spec in catalog():
        if spec.name == base:
            return spec
    raise ValueError(f"unknown kernel {name!r}; available: {_available()}")


def symbol_eval(kernel: KernelSpec, delta: float, xi):
    """Symbol of the delta-scaled kernel: the transform evaluated at delta*xi."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    out = kernel.symbol(delta * np.asarray(xi, dtype=float))
    if np.ndim(xi) == 0:
        return float(out)
    return np.asarray(out)


# --- moments ---------------------------------------------------------------

def _derivative_at_zero(f, j: int, h0: float = 1e-2, levels: int = 4) -> float:
    """j-th derivative of f at 0: central differences, Richardson ladder from
    step h0 halved `levels` times, best-converged table entry kept (the deepest
    extrapolants at the smallest steps are round-off dominated for j >= 4)."""
    if j == 0:
        return float(np.asarray(f(0.0)))
    offsets = np.array([j / 2.0 - i for i in range(j + 1)])
    coeffs = np.array([(-1) ** i * math.comb(j, i) for i in range(j + 1)], dtype=float)
    table = [[float(np.dot(coeffs, np.asarray(f(offsets * h)))) / h**j
              for h in (h0 / 2**level for level in range(levels + 1))]]
    best = table[0][0]
    best_err = math.inf
    for k in range(1, levels + 1):
        factor = 4.0**k
        prev = table[k - 1]
        row = [(factor * prev[i + 1] - prev[i]) / (factor - 1.0) for i in range(len(prev) - 1)]
        table.append(row)
        for i, value in enumerate(row):
            err = abs(value - prev[i + 1]) + abs(value - prev[i])
            if err < best_err:
                best_err, best = err, value
    return best


def _moment_from_symbol(kernel: KernelSpec, j: int) -> float:
    d = _derivative_at_zero(kernel.symbol, j)
    # m_j = i^j * symbol^(j)(0); real symbols of even kernels leave odd j at 0
    return float((1j**j).real * d)


def _moment_by_quadrature(kernel: KernelSpec, j: int) -> float:
    def integrand(x):
        return x**j * float(np.asarray(kernel.density(x)))

    opts = dict(epsabs=1e-12, epsrel=1e-12, limit=400)
    with warnings.catch_warnings():
        # oscillatory tails trip scipy's round-off heuristic; the results are
        # cross-checked against symbol derivatives in the test suite
        warnings.simplefilter("ignore", IntegrationWarning)
        if kernel.support is None:
            lower, _ = quad(integrand, -np.inf, 0.0, **opts)
            upper, _ = quad(integrand, 0.0, np.inf, **opts)
            return lower + upper
        lo, hi = kernel.support
        pts = [b for b in kernel.breakpoints if lo < b < hi]
        value, _ = quad(integrand, lo, hi, points=pts or None, **opts)
        return value


def moment(kernel: KernelSpec, j: int, method: str = "auto") -> float:
    """j-th moment of the kernel: integral of x^j against the density.

    ``method`` is "auto" (quadrature when a density exists, else symbol
    derivative), "quadrature", or "symbol".  Symbol-derivative moments are
    rejected past ``smooth_symbol_order``.
    """
    if j < 0:
        raise ValueError("moment order must be non-negative")
    if method == "auto":
        method = "quadrature" if kernel.density is not None else "symbol"
    if method == "quadrature":
        if kernel.density is None:
            raise ValueError(f"kernel '{kernel.name}' has no closed-form density")
        return _moment_by_quadrature(kernel, j)
    if method == "symbol":
        order = kernel.smooth_symbol_order
        if order is not None and j > order:
            raise ValueError(
                f"moment {j} of kernel '{kernel.name}' is undefined: "
                f"the symbol is only {order}-times differentiable at 0"
            )
        return _moment_from_symbol(kernel, j)
    raise ValueError(f"unknown moment method {method!r}")


def moment_table(kernel: KernelSpec, j_max: int = 6) -> MomentTable:
    """Moments m_0..m_{j_max}, with undefined entries recorded as NaN."""
    values: list[float] = []
    methods: list[str] = []
    for j in range(j_max + 1):
        order = kernel.smooth_symbol_order
        if kernel.density is None and order is not None and j > order:
            values.append(math.nan)
            methods.append("undefined")
        elif kernel.density is not None:
            values.append(_moment_by_quadrature(kernel, j))
            methods.append("closed-form quadrature")
        else:
            values.append(_moment_from_symbol(kernel, j))
            methods.append("symbol-derivative")
    return MomentTable(kernel=kernel.name, moments=tuple(values), methods=tuple(methods))


# --- matching order --------------------------------------------------------

_PROBE_GRID = np.logspace(-9.0, math.log10(0.75), 600)
_FAR_PROBES = np.array([1.0, 2.0, 5.0, 10.0, 20.0, 50.0])
_IDENTITY_TOL = 1e-13
# fit only where the symbol difference is above evaluation round-off and still
# in its leading-order regime
_FIT_FLOOR = 1e-12
_FIT_CEIL = 1e-2
_SNAP_TOL = 0.05


def matching_order(k1: KernelSpec, k2: KernelSpec, probe_depth: int = 8):
    """Leading power of the symbol difference near zero frequency.

    Returns the even integer 2k at which the two symbols first disagree, a
    non-integer float for fractional leading orders, or ``IDENTICAL``
    (infinity) when the symbols agree everywhere probed.  Raises
    :class:`ProbeDepthExceeded` when the symbols differ but only at orders
    beyond ``probe_depth``.
    """
    diff_near = np.abs(
        np.asarray(k2.symbol(_PROBE_GRID), dtype=float)
        - np.asarray(k1.symbol(_PROBE_GRID), dtype=float)
    )
    diff_far = np.abs(
        np.asarray(k2.symbol(_FAR_PROBES), dtype=float)
        - np.asarray(k1.symbol(_FAR_PROBES), dtype=float)
    )
    if max(diff_near.max(), diff_far.max()) < _IDENTITY_TOL:
        return IDENTICAL
    window = (diff_near >= _FIT_FLOOR) & (diff_near <= _FIT_CEIL)
    if np.count_nonzero(window) < 12:
        raise ProbeDepthExceeded(
            f"symbols of '{k1.name}' and '{k2.name}' differ, but not resolvably "
            f"within probe depth {probe_depth}"
        )
    lx = np.log(_PROBE_GRID[window])
    ly = np.log(diff_near[window])
    if lx.max() - lx.min() < 0.5 * math.log(10.0):
        raise ProbeDepthExceeded(
            f"symbol difference of '{k1.name}' and '{k2.name}' spans too narrow "
            f"a band for a leading-order fit"
        )
    lx = lx - lx.mean()
    slope = float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))
    if slope > probe_depth + 0.5:
        raise ProbeDepthExceeded(
            f"symbols of '{k1.name}' and '{k2.name}' agree past probe depth "
            f"{probe_depth} (fitted leading order {slope:.2f})"
        )
    nearest = round(slope)
    if abs(slope - nearest) <= _SNAP_TOL:
        return int(nearest)
    return slope
