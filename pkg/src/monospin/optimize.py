"""Design-space search for minimum specific power.

Three entry points: exhaustive grid search, projected quasi-Newton local
search with numerical gradients, and 1-D/2-D sweeps that export the data
behind the published design-study figures.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import hover
from .errors import (DomainError, InfeasibleDesignError, InfeasibleStartError,
                     SolverError)
from .model import (DESIGN_FIELDS, BaseConstants, DesignVector, MassModel,
                    expand_design)

GRID_CAP = 10 ** 7


@dataclass(frozen=True)
class DesignSpace:
    """Per-variable bounds and grid resolution over the six design fields.

    A variable is frozen when its bounds coincide (resolution 1).
    """

    lower: np.ndarray
    upper: np.ndarray
    resolution: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        res = np.asarray(self.resolution, dtype=int)
        if lo.shape != (6,) or hi.shape != (6,) or res.shape != (6,):
            raise DomainError("DesignSpace needs six entries per array")
        if np.any(lo > hi):
            raise DomainError("lower bound exceeds upper bound")
        if np.any(res < 1):
            raise DomainError("resolution must be >= 1")
        if np.any((lo == hi) != (res == 1)):
            raise DomainError("frozen variables must have resolution 1 and "
                              "equal bounds")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "resolution", res)

    @classmethod
    def from_dict(cls, spec: dict, frozen: DesignVector) -> "DesignSpace":
        """Free the variables named in `spec` as {name: (lo, hi, n)};
        everything else is frozen at `frozen`'s value."""
        lo, hi, res = [], [], []
        for k, name in enumerate(DESIGN_FIELDS):
            if name in spec:
                a, b, n = spec[name]
                lo.append(a)
                hi.append(b)
                res.append(n)
            else:
                val = getattr(frozen, name)
                lo.append(val)
                hi.append(val)
                res.append(1)
        return cls(np.array(lo), np.array(hi), np.array(res))

    @property
    def free_indices(self) -> list:
        return [k for k in range(6) if self.lower[k] != self.upper[k]]

    def axis_values(self, k: int) -> np.ndarray:
        return np.linspace(self.lower[k], self.upper[k],
                           int(self.resolution[k]))

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.minimum(np.maximum(x, self.lower), self.upper)

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower - 1e-12)
                    and np.all(x <= self.upper + 1e-12))

    @property
    def grid_size(self) -> int:
        return int(np.prod(self.resolution))


@dataclass(frozen=True)
class EvalResult:
    feasible: bool
    P_s: float | None
    hover: hover.HoverState | None
    reason: str | None = None


def evaluate_design(base: BaseConstants, masses: MassModel, x: DesignVector,
                    variant: str = "quadratic") -> EvalResult:
    """Solve hover for a design and report its specific power.

    All deterministic candidate guesses are tried; the converged solution
    with the lowest specific power wins.  Solver failure on every guess
    makes the design infeasible (with the last failure as the reason).

    Feasible solutions must have the motor driving the rotor
    (i * omega_p > 0).  Tilted offset designs also admit windmilling
    equilibria where the body spin back-drives the rotor and the motor
    generates; the drivetrain has no regenerative path, so those branches
    are rejected as non-physical.
    """
    v = expand_design(base, masses, x, variant=variant)
    best = None
    reason = "no candidate guesses"
    for guess in hover.candidate_guesses(v):
        try:
            sol = hover.solve_hover(v, guess)
        except (SolverError, DomainError) as exc:
            reason = f"{type(exc).__name__}: {exc}"
            continue
        if sol.P_s <= 0.0:
            reason = "converged to a non-physical (non-positive) power branch"
            continue
        if sol.i_bar * sol.omega_p_bar <= 0.0:
            reason = ("converged to a windmilling branch "
                      "(motor not driving the rotor)")
            continue
        if best is None or sol.P_s < best.P_s:
            best = sol
    if best is None:
        return EvalResult(feasible=False, P_s=None, hover=None, reason=reason)
    return EvalResult(feasible=True, P_s=best.P_s, hover=best)


@dataclass(frozen=True)
class SweepGrid:
    """Dense evaluation of specific power over one or two free variables."""

    axis_names: tuple
    axis_values: tuple            # tuple of 1-D arrays
    P_s: np.ndarray               # NaN where infeasible
    feasible: np.ndarray          # bool, same shape

    def __post_init__(self):
        shape = tuple(len(a) for a in self.axis_values)
        if self.P_s.shape != shape or self.feasible.shape != shape:
            raise DomainError("grid shape does not match axis lengths")

    def min_feasible(self):
        """(index tuple, P_s) of the feasible minimum, lexicographic ties."""
        if not np.any(self.feasible):
            raise InfeasibleDesignError("no feasible point in grid")
        masked = np.where(self.feasible, self.P_s, np.inf)
        flat = int(np.argmin(masked))   # argmin is first-hit: lexicographic
        idx = np.unravel_index(flat, masked.shape)
        return idx, float(masked[idx])

    def to_csv(self) -> str:
        ndim = len(self.axis_names)
        if ndim == 1:
            lines = ["var1,P_s,feasible"]
            for k, a in enumerate(self.axis_values[0]):
                ok = bool(self.feasible[k])
                ps = f"{self.P_s[k]:.11e}" if ok else ""
                lines.append(f"{a:.11e},{ps},{int(ok)}")
        elif ndim == 2:
            lines = ["var1,var2,P_s,feasible"]
            for k1, a in enumerate(self.axis_values[0]):
                for k2, b in enumerate(self.axis_values[1]):
                    ok = bool(self.feasible[k1, k2])
                    ps = f"{self.P_s[k1, k2]:.11e}" if ok else ""
                    lines.append(f"{a:.11e},{b:.11e},{ps},{int(ok)}")
        else:
            raise DomainError("CSV export is defined for 1 or 2 axes only")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GridSearchResult:
    best_x: DesignVector
    best_P_s: float
    grid: SweepGrid


def _design_at(space: DesignSpace, values: np.ndarray) -> DesignVector:
    return DesignVector.from_tuple(values)


def grid_search(space: DesignSpace, base: BaseConstants, masses: MassModel,
                variant: str = "quadratic",
                cap: int = GRID_CAP) -> GridSearchResult:
    """Evaluate every lattice point; return the feasible minimizer.

    Points are visited in lexicographic order of the design vector, so
    ties resolve to the lexicographically smallest design.
    """
    if space.grid_size > cap:
        raise DomainError(f"grid size {space.grid_size} exceeds cap {cap}")
    free = space.free_indices
    axes = [space.axis_values(k) for k in free]
    shape = tuple(len(a) for a in axes)
    P = np.full(shape, np.nan)
    ok = np.zeros(shape, dtype=bool)

    template = np.array([space.lower[k] for k in range(6)])
    best_x, best_ps = None, math.inf
    for idx in itertools.product(*(range(n) for n in shape)):
        x_arr = template.copy()
        for j, k in enumerate(free):
            x_arr[k] = axes[j][idx[j]]
        res = evaluate_design(base, masses, _design_at(space, x_arr),
                              variant=variant)
        if res.feasible:
            P[idx] = res.P_s
            ok[idx] = True
            if res.P_s < best_ps:
                best_ps = res.P_s
                best_x = _design_at(space, x_arr)
    if best_x is None:
        raise InfeasibleDesignError("every grid point is infeasible")
    grid = SweepGrid(axis_names=tuple(DESIGN_FIELDS[k] for k in free),
                     axis_values=tuple(axes), P_s=P, feasible=ok)
    return GridSearchResult(best_x=best_x, best_P_s=best_ps, grid=grid)


def sweep(space: DesignSpace, base: BaseConstants, masses: MassModel,
          variant: str = "quadratic") -> SweepGrid:
    """Dense evaluation over exactly 1 or 2 free variables."""
    if len(space.free_indices) not in (1, 2):
        raise DomainError("sweep needs exactly 1 or 2 free variables")
    return grid_search(space, base, masses, variant=variant).grid


# ---------------------------------------------------------------------------
# local search

GRAD_TOL = 1e-6
STEP_TOL = 1e-9
FD_STEP = 1e-6
POLL_RADII = (0.02, 0.05, 0.1, 0.2, 0.4)


@dataclass
class LocalSearchResult:
    x: DesignVector
    P_s: float
    n_evals: int
    path: list = field(default_factory=list)


class _Objective:
    """Caches specific-power evaluations over scaled coordinates."""

    def __init__(self, space, base, masses, variant):
        self.space = space
        self.base = base
        self.masses = masses
        self.variant = variant
        self.free = space.free_indices
        self.scale = np.array([space.upper[k] - space.lower[k]
                               for k in self.free])
        self.cache = {}
        self.n_evals = 0

    def to_x(self, z: np.ndarray) -> np.ndarray:
        x = self.space.lower.copy()
        for j, k in enumerate(self.free):
            x[k] = self.space.lower[k] + z[j] * self.scale[j]
        return x

    def from_x(self, x: np.ndarray) -> np.ndarray:
        return np.array([(x[k] - self.space.lower[k]) / self.scale[j]
                         for j, k in enumerate(self.free)])

    def __call__(self, z: np.ndarray) -> float:
        key = tuple(np.round(z, 12))
        if key in self.cache:
            return self.cache[key]
        x = self.to_x(np.clip(z, 0.0, 1.0))
        try:
            design = DesignVector.from_tuple(x)
            res = evaluate_design(self.base, self.masses, design,
                                  variant=self.variant)
            val = res.P_s if res.feasible else math.inf
        except DomainError:
            val = math.inf
        self.n_evals += 1
        self.cache[key] = val
        return val


def _fd_gradient(f: _Objective, z: np.ndarray, fz: float) -> np.ndarray:
    g = np.zeros(len(z))
    for j in range(len(z)):
        h = FD_STEP
        zp = z.copy()
        if z[j] + h <= 1.0:
            zp[j] = z[j] + h
            fp = f(zp)
            if math.isfinite(fp):
                g[j] = (fp - fz) / h
                continue
        zp = z.copy()
        zp[j] = z[j] - h
        fm = f(zp)
        g[j] = (fz - fm) / h if math.isfinite(fm) else 0.0
    return g


def _poll_directions(n: int) -> list:
    """Unit coordinate and pairwise diagonal probe directions."""
    dirs = []
    for j in range(n):
        for s in (1.0, -1.0):
            d = np.zeros(n)
            d[j] = s
            dirs.append(d)
    for j in range(n):
        for k in range(j + 1, n):
            for sj in (1.0, -1.0):
                for sk in (1.0, -1.0):
                    d = np.zeros(n)
                    d[j], d[k] = sj, sk
                    dirs.append(d / math.sqrt(2.0))
    return dirs


def local_search(x0: DesignVector, space: DesignSpace, base: BaseConstants,
                 masses: MassModel, variant: str = "quadratic",
                 grad_tol: float = GRAD_TOL, step_tol: float = STEP_TOL,
                 max_iter: int = 200) -> LocalSearchResult:
    """Bound-constrained quasi-Newton descent with numerical gradients.

    Infeasible trial points are rejected by the line search rather than
    penalized.  When the iteration stalls at a stationary point, a
    deterministic poll over coordinate and diagonal directions probes for
    a descent escape (the symmetric tilt/offset axes make the origin of
    those variables a stationary point of the restricted problem).
    """
    f = _Objective(space, base, masses, variant)
    x0_arr = np.array(x0.as_tuple())
    if not space.contains(x0_arr):
        raise DomainError("x0 outside the design space")
    z = np.clip(f.from_x(x0_arr), 0.0, 1.0)
    fz = f(z)
    if not math.isfinite(fz):
        # look for a feasible neighbor inside a small trust region
        found = False
        for rad in (0.02, 0.05, 0.1):
            for d in _poll_directions(len(z)):
                zt = np.clip(z + rad * d, 0.0, 1.0)
                if math.isfinite(f(zt)):
                    z, fz = zt, f(zt)
                    found = True
                    break
            if found:
                break
        if not found:
            raise InfeasibleStartError(
                "x0 is infeasible and no feasible neighbor was found "
                "within the initial trust region")

    n = len(z)
    H = np.eye(n)
    path = [(f.to_x(z).copy(), fz)]
    polled = False
    it = 0
    while it < max_iter:
        it += 1
        g = _fd_gradient(f, z, fz)
        # projected gradient: zero out components pushing past a bound
        pg = g.copy()
        for j in range(n):
            if z[j] <= 0.0 and pg[j] > 0.0:
                pg[j] = 0.0
            if z[j] >= 1.0 and pg[j] < 0.0:
                pg[j] = 0.0
        stalled = np.linalg.norm(pg) < grad_tol

        moved = False
        if not stalled:
            d = -H @ g
            if float(d @ g) >= 0.0:
                d = -g
                H = np.eye(n)
            alpha = 1.0
            for _ in range(40):
                zt = np.clip(z + alpha * d, 0.0, 1.0)
                ft = f(zt)
                if math.isfinite(ft) and ft < fz - 1e-14:
                    step = zt - z
                    if np.linalg.norm(step) < step_tol:
                        break
                    y = _fd_gradient(f, zt, ft) - g
                    sy = float(step @ y)
                    if sy > 1e-12:
                        rho = 1.0 / sy
                        I = np.eye(n)
                        V = I - rho * np.outer(step, y)
                        H = V @ H @ V.T + rho * np.outer(step, step)
                    z, fz = zt, ft
                    moved = True
                    break
                alpha *= 0.5
        if moved:
            path.append((f.to_x(z).copy(), fz))
            continue

        # stationary (or line search failed): deterministic saddle poll
        improved = False
        for rad in POLL_RADII:
            for d in _poll_directions(n):
                zt = np.clip(z + rad * d, 0.0, 1.0)
                ft = f(zt)
                if math.isfinite(ft) and ft < fz - 1e-14:
                    z, fz = zt, ft
                    improved = True
                    break
            if improved:
                break
        if improved:
            H = np.eye(n)
            polled = True
            path.append((f.to_x(z).copy(), fz))
            continue
        break

    x_arr = f.to_x(z)
    return LocalSearchResult(x=DesignVector.from_tuple(x_arr), P_s=fz,
                             n_evals=f.n_evals, path=path)


# ---------------------------------------------------------------------------
# figure reproduction presets

FIGURE_DESIGNS = {
    4: DesignVector(10.0, 10.0, 1.05, 1.75, 0.0, 0.0),
    5: DesignVector(10.0, 10.0, 1.05, 1.75, 0.0, 0.0),
    6: DesignVector(10.0, 10.0, 1.05, 1.75, 0.0, 0.0),
    7: DesignVector(10.0, 10.0, 1.0, 5.0, 0.0, 0.0),
}

FIGURE_SPACES = {
    4: {"alpha_p": (0.0, 10.0, 11), "alpha_B": (0.0, 10.0, 11)},
    5: {"chord_ratio": (0.5, 1.5, 41), "radius_ratio": (1.0, 3.0, 41)},
    6: {"radius_ratio": (0.5, 2.5, 81)},
    7: {"offset_ratio": (-1.0, 1.0, 81)},
}


def figure_space(figure: int) -> DesignSpace:
    """The declared sweep lattice behind one of the published figures."""
    if figure not in FIGURE_SPACES:
        raise DomainError(f"no sweep preset for figure {figure}")
    return DesignSpace.from_dict(FIGURE_SPACES[figure],
                                 FIGURE_DESIGNS[figure])


def sweep_metadata(space: DesignSpace, base: BaseConstants,
                   masses: MassModel, variant: str) -> dict:
    """Sidecar metadata recording everything a sweep was run with."""
    frozen = {DESIGN_FIELDS[k]: float(space.lower[k])
              for k in range(6) if k not in space.free_indices}
    return {
        "free_variables": [DESIGN_FIELDS[k] for k in space.free_indices],
        "frozen_variables": frozen,
        "axes": {DESIGN_FIELDS[k]: {
            "lower": float(space.lower[k]),
            "upper": float(space.upper[k]),
            "resolution": int(space.resolution[k]),
        } for k in space.free_indices},
        "constants": {k: getattr(base, k) for k in
                      ("c_p", "R_p", "g", "rho", "K_tau_m", "K_v", "gamma",
                       "R_m", "L_m")},
        "masses": {k: getattr(masses, k) for k in
                   ("m_e", "m_p", "m_B", "electronics_radius",
                    "electronics_height")},
        "total_weight_N": masses.total_mass * base.g,
        "mass_held_fixed_across_sweep": True,
        "variant": variant,
    }
