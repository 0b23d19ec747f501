"""Fixed-step RK4 integration of u_t = -K_delta D_x(u + u^(p+1)).

The state advances in transform space; the nonlinear product is formed on the
grid and its transform truncated to the dealiased band.  Every snapshot
carries conservation and resolution diagnostics, and the run aborts (keeping
the partial trajectory) on non-finite values or when energy piles up in the
aliasing band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .kernels import KernelSpec
from .spectral import (
    Field,
    Grid,
    NormOrder,
    _from_hat,
    dealias_cutoff,
    derivative_multiplier,
    norm_from_hat,
)

__all__ = [
    "SimConfig",
    "Trajectory",
    "EnergyTrace",
    "gaussian_field",
    "sine_field",
    "rhs",
    "integrate",
    "energy_report",
]

DEFAULT_CFL = 0.5
DEFAULT_SAFETY = 1e-8
ABORT_RESOLUTION = "resolution exhausted"
ABORT_BLOWUP = "blowup"

# outermost stretch of the domain watched for wrap-around contamination
_BOUNDARY_FRACTION = 0.05


def gaussian_field(grid: Grid, amplitude: float, width: float = 1.0, center: float = 0.0) -> Field:
    return Field(grid, amplitude * np.exp(-(((grid.x - center) / width) ** 2)))


def sine_field(grid: Grid, amplitude: float, mode: int) -> Field:
    if not 1 <= mode < grid.n // 2:
        raise ValueError(f"mode must lie in [1, {grid.n // 2 - 1}], got {mode}")
    xi1 = np.pi * mode / grid.half_length
    return Field(grid, amplitude * np.sin(xi1 * grid.x))


@dataclass(frozen=True)
class SimConfig:
    """One simulation: kernel, scaling, nonlinearity, grid, data, and controls."""

    kernel: KernelSpec
    delta: float
    p: int
    grid: Grid
    u0: Field
    s: NormOrder = NormOrder(2.0)
    t_end: float = 1.0
    dt: float | str = "auto"
    snapshot_stride: int = 1
    linearize: bool = False
    safety: float = DEFAULT_SAFETY

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.p < 1 or self.p != int(self.p):
            raise ValueError(f"p must be a positive integer, got {self.p}")
        if self.u0.grid != self.grid:
            raise ValueError("initial data is not defined on the configured grid")
        if not self.s.solver_grade:
            raise ValueError(f"solver diagnostics require s > 3/2, got s = {self.s.s}")
        if self.t_end <= 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.dt != "auto":
            dt = float(self.dt)
            if not 0 < dt <= self.t_end:
                raise ValueError(f"dt must satisfy 0 < dt <= t_end, got {dt}")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")
        if self.safety <= 0:
            raise ValueError("safety threshold must be positive")

    def resolve_dt(self) -> float:
        """Explicit dt, or the advection-CFL heuristic when set to \"auto\"."""
        if self.dt != "auto":
            return float(self.dt)
        speed = 1.0 + (self.p + 1) * float(np.max(np.abs(self.u0.values))) ** self.p
        dt = DEFAULT_CFL * self.grid.dx / (self.kernel.mass_bound * speed)
        return min(dt, self.t_end)


@dataclass
class Trajectory:
    """Snapshots of one run with per-snapshot diagnostics."""

    config: SimConfig
    dt: float
    times: np.ndarray
    states: list[Field]
    mass: np.ndarray
    h_s_norm: np.ndarray
    max_abs: np.ndarray
    alias_frac: np.ndarray
    boundary_mag: np.ndarray
    completed: bool
    abort_reason: str | None = None


@dataclass
class EnergyTrace:
    """Weighted H^s energy along a trajectory and its hyperbolicity window."""

    times: np.ndarray
    e_s: np.ndarray
    h_s_norm: np.ndarray
    c1: float
    c2: float
    lambda_emp: float
    hyperbolic: bool


def _rhs_hat(uh, lin_mult, keep, q, n, linearize):
    if linearize:
        return lin_mult * uh
    u = np.fft.irfft(uh, n)
    wh = np.fft.rfft(u**q)
    wh[keep + 1:] = 0.0
    return lin_mult * (uh + wh)


def rhs(cfg: SimConfig, u: Field) -> Field:
    """Right-hand side -K_delta D_x(u + dealias(u^(p+1))) as a field."""
    if u.grid != cfg.grid:
        raise ValueError("field is not defined on the configured grid")
    grid = cfg.grid
    lin_mult = -np.asarray(cfg.kernel.symbol(cfg.delta * grid.xi), dtype=float) * derivative_multiplier(grid)
    keep = dealias_cutoff(grid.n, cfg.p)
    out_hat = _rhs_hat(u.hat, lin_mult, keep, cfg.p + 1, grid.n, cfg.linearize)
    return _from_hat(grid, out_hat)


def _alias_fraction(hat: np.ndarray, keep: int) -> float:
    """Energy fraction in the aliasing band: the top half of the retained modes
    (and anything above them).  Dealiasing cuts all nonlinear production above
    the cutoff, so underresolution shows up as energy piling into the highest
    retained modes, not past them."""
    weights = np.full(hat.shape, 2.0)
    weights[0] = weights[-1] = 1.0   # mode 0 and Nyquist have no conjugate pair
    power = weights * np.abs(hat) ** 2
    total = float(np.sum(power[1:]))
    if total == 0.0:
        return 0.0
    return float(np.sum(power[keep // 2 + 1:]) / total)


def integrate(cfg: SimConfig) -> Trajectory:
    """Classical RK4 from t = 0 to t_end with snapshots every stride steps."""
    grid = cfg.grid
    n = grid.n
    dt0 = cfg.resolve_dt()
    n_steps = max(1, math.ceil(cfg.t_end / dt0 - 1e-12))
    dt = cfg.t_end / n_steps

    lin_mult = -np.asarray(cfg.kernel.symbol(cfg.delta * grid.xi), dtype=float) * derivative_multiplier(grid)
    keep = dealias_cutoff(n, cfg.p)
    q = cfg.p + 1
    boundary = np.abs(grid.x) >= (1.0 - _BOUNDARY_FRACTION) * grid.half_length

    times: list[float] = []
    states: list[Field] = []
    diags: list[tuple[float, float, float, float]] = []
    completed = True
    abort_reason: str | None = None

    def snapshot(step: int, uh: np.ndarray) -> bool:
        """Record state at this step; return False when the safety gate trips."""
        if step == 0:
            fld = cfg.u0
            values = fld.values
        else:
            values = np.fft.irfft(uh, n)
            fld = Field(grid, values)
            fld._hat = uh.copy()
            fld._hat.setflags(write=False)
        times.append(step * dt)
        states.append(fld)
        frac = _alias_fraction(uh, keep)
        diags.append(
            (
                grid.dx * float(np.sum(values)),
                norm_from_hat(grid, uh, cfg.s.s),
                float(np.max(np.abs(values))),
                frac,
            )
        )
        return frac <= cfg.safety

    uh = np.asarray(cfg.u0.hat, dtype=complex)
    ok = snapshot(0, uh)
    if not ok:
        completed, abort_reason = False, ABORT_RESOLUTION
    else:
        # blow-up is detected after the fact, so let intermediate stages overflow
        with np.errstate(over="ignore", invalid="ignore"):
            for step in range(1, n_steps + 1):
                k1 = _rhs_hat(uh, lin_mult, keep, q, n, cfg.linearize)
                k2 = _rhs_hat(uh + 0.5 * dt * k1, lin_mult, keep, q, n, cfg.linearize)
                k3 = _rhs_hat(uh + 0.5 * dt * k2, lin_mult, keep, q, n, cfg.linearize)
                k4 = _rhs_hat(uh + dt * k3, lin_mult, keep, q, n, cfg.linearize)
                uh = uh + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                if not np.all(np.isfinite(uh.view(float))):
                    completed, abort_reason = False, ABORT_BLOWUP
                    break
                if step % cfg.snapshot_stride == 0 or step == n_steps:
                    if not snapshot(step, uh):
                        completed, abort_reason = False, ABORT_RESOLUTION
                        break

    mass, h_s, mx, alias = (np.array(col) for col in zip(*diags))
    boundary_mag = np.array([float(np.max(np.abs(f.values[boundary]))) for f in states])
    return Trajectory(
        config=cfg,
        dt=dt,
        times=np.array(times),
        states=states,
        mass=mass,
        h_s_norm=h_s,
        max_abs=mx,
        alias_frac=alias,
        boundary_mag=boundary_mag,
        completed=completed,
        abort_reason=abort_reason,
    )


def energy_report(traj: Trajectory, cfg: SimConfig | None = None) -> EnergyTrace:
    """Weighted energy (1/2) * integral (1+w) (Lambda^s u)^2 with w = (p+1)u^p.

    Reports the hyperbolicity window [c1, c2] of 1+w over the whole trajectory
    and the largest snapshot-to-snapshot exponential growth rate of the energy.
    """
    cfg = cfg or traj.config
    if not traj.states:
        raise ValueError("trajectory has no snapshots")
    grid = cfg.grid
    lam = (1.0 + grid.xi**2) ** (cfg.s.s / 2.0)
    c1, c2 = math.inf, -math.inf
    e_values = []
    for state in traj.states:
        w = np.zeros(grid.n) if cfg.linearize else (cfg.p + 1) * state.values**cfg.p
        one_plus_w = 1.0 + w
        c1 = min(c1, float(one_plus_w.min()))
        c2 = max(c2, float(one_plus_w.max()))
        v = np.fft.irfft(lam * state.hat, grid.n)
        e_values.append(math.sqrt(max(0.0, 0.5 * grid.dx * float(np.dot(one_plus_w, v * v)))))
    e_s = np.array(e_values)
    lambda_emp = 0.0
    for i in range(1, len(e_s)):
        if e_s[i - 1] > 0.0 and e_s[i] > 0.0:
            rate = (math.log(e_s[i]) - math.log(e_s[i - 1])) / (traj.times[i] - traj.times[i - 1])
            lambda_emp = max(lambda_emp, rate)
    return EnergyTrace(
        times=traj.times,
        e_s=e_s,
        h_s_norm=traj.h_s_norm,
        c1=c1,
        c2=c2,
        lambda_emp=lambda_emp,
        hyperbolic=c1 > 0.0,
    )
