"""Hover trim: the square nonlinear system and its damped Newton solver.

The nine equilibrium unknowns are reduced to six by eliminating the spin
axis analytically, n = s * omega_B/|omega_B| with s = +-1 picked so that
n_z > 0 (the published solutions all sit on that branch).  The remaining
unknowns are u = (i, V_m, omega_p, p, q, r).

Residual rows, scaled to comparable magnitude:
  0: steady motor torque balance           / K_tau_m
  1: steady motor voltage balance          / 1 V
  2-4: steady rotational equation          / K_tau_m
  5: weight balance |(f_p+f_B).n| = m*g    / m*g
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import aero, dynamics
from .errors import (DomainError, NonConvergenceError, SingularJacobianError)
from .model import VehicleModel

JSON_KEYS = ("i", "V_m", "omega_p", "p", "q", "r",
             "n_x", "n_y", "n_z", "P_s", "residual_norm")

FD_REL_STEP = 1e-6
FD_ABS_FLOOR = 1e-8
DEFAULT_TOL = 1e-10
MAX_ITER = 100
MIN_DAMPING = 2.0 ** -20


@dataclass(frozen=True)
class HoverState:
    """A converged hover equilibrium."""

    i_bar: float
    V_m_bar: float
    omega_p_bar: float
    omega_B_bar: np.ndarray
    n_bar: np.ndarray
    P_s: float
    residual_norm: float

    @property
    def P_m(self) -> float:
        return self.V_m_bar * self.i_bar

    def unknowns(self) -> np.ndarray:
        return np.concatenate([[self.i_bar, self.V_m_bar, self.omega_p_bar],
                               self.omega_B_bar])

    def to_json(self) -> str:
        obj = {
            "i": self.i_bar,
            "V_m": self.V_m_bar,
            "omega_p": self.omega_p_bar,
            "p": float(self.omega_B_bar[0]),
            "q": float(self.omega_B_bar[1]),
            "r": float(self.omega_B_bar[2]),
            "n_x": float(self.n_bar[0]),
            "n_y": float(self.n_bar[1]),
            "n_z": float(self.n_bar[2]),
            "P_s": self.P_s,
            "residual_norm": self.residual_norm,
        }
        return json.dumps(obj, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "HoverState":
        obj = json.loads(text)
        missing = [k for k in JSON_KEYS if k not in obj]
        if missing:
            raise DomainError(f"hover JSON missing keys: {missing}")
        return cls(i_bar=obj["i"], V_m_bar=obj["V_m"],
                   omega_p_bar=obj["omega_p"],
                   omega_B_bar=np.array([obj["p"], obj["q"], obj["r"]]),
                   n_bar=np.array([obj["n_x"], obj["n_y"], obj["n_z"]]),
                   P_s=obj["P_s"], residual_norm=obj["residual_norm"])


def spin_axis_from_rates(omega_B: np.ndarray) -> np.ndarray:
    """n = +-omega/|omega|, sign chosen so that n_z > 0."""
    norm = np.linalg.norm(omega_B)
    if norm == 0.0:
        raise DomainError("spin axis undefined: |omega_B| = 0")
    n = omega_B / norm
    return -n if n[2] < 0.0 else n


def hover_residual(v: VehicleModel, unknowns: np.ndarray) -> np.ndarray:
    """Scaled residual of the six steady equations at u = (i, V_m,
    omega_p, p, q, r)."""
    u = np.asarray(unknowns, dtype=float)
    if not np.all(np.isfinite(u)):
        raise DomainError("non-finite unknowns")
    i, V_m, omega_p = u[0], u[1], u[2]
    omega = u[3:6]
    b = v.base
    r = float(omega[2])

    load = aero.propeller_drag_load(v, omega_p, r)
    res = np.empty(6)
    res[0] = (b.K_tau_m * i - load) / b.K_tau_m
    res[1] = V_m - b.R_m * i - b.K_v * omega_p

    H = (v.I_T @ omega + v.I_p_spin @ (omega_p * v.rotor_axis)
         + v.I_p @ omega)
    gyro = np.cross(omega, H)
    tau_ext = aero.total_external_moment(v, omega_p, omega)
    res[2:5] = (gyro - tau_ext) / b.K_tau_m

    n = spin_axis_from_rates(omega)
    f = (aero.propeller_thrust(v, omega_p, r) + aero.fuselage_lift(v, r))
    mg = v.weight
    res[5] = (abs(float(f @ n)) - mg) / mg
    return res


def default_guess(v: VehicleModel) -> np.ndarray:
    """Closed-form hover of the co-axial restriction (l = delta = 0).

    Thrust balances weight, the rotor reaction torque balances fuselage
    plus hub drag; solved in the effective rate omega_a = omega_p + r.
    """
    b = v.base
    C_Lp = aero.lift_coeff(v.design.alpha_p)
    C_Dp = aero.drag_coeff(v.design.alpha_p)
    C_LB = aero.lift_coeff(v.design.alpha_B)
    C_DB = aero.drag_coeff(v.design.alpha_B)
    A = b.rho * b.c_p * C_Lp * b.R_p ** 3 / 3.0
    C = b.rho * b.c_p * C_Dp * b.R_p ** 4 / 4.0
    bb = b.rho * v.c_B * C_LB * v.R_B ** 3 / 3.0
    dd = b.rho * v.c_B * C_DB * v.R_B ** 4 / 4.0
    W = v.weight

    ratio = A / C
    quad = ratio * dd + bb
    lin = ratio * b.gamma
    if quad > 0.0:
        disc = lin * lin + 4.0 * quad * W
        r_mag = (-lin + math.sqrt(disc)) / (2.0 * quad)
    elif b.gamma > 0.0:
        # bare propeller: hub drag alone absorbs the reaction torque
        r_mag = C * (W / A) / b.gamma
    else:
        r_mag = 1.0
    torque = dd * r_mag * r_mag + b.gamma * r_mag
    omega_a = math.sqrt(max(torque / C, W / A if quad == 0.0 else torque / C))
    omega_p = omega_a + r_mag
    i = torque / b.K_tau_m if quad > 0.0 else C * omega_a * omega_a / b.K_tau_m
    V = b.R_m * i + b.K_v * omega_p
    return np.array([i, V, omega_p, 0.0, 0.0, -r_mag])


def _geared_guesses(v: VehicleModel) -> list:
    """Starting points for tilted, offset designs where the propeller
    torques the body and the fuselage carries the weight."""
    b = v.base
    C_LB = aero.lift_coeff(v.design.alpha_B)
    C_DB = aero.drag_coeff(v.design.alpha_B)
    C_Lp = aero.lift_coeff(v.design.alpha_p)
    bb = b.rho * v.c_B * C_LB * v.R_B ** 3 / 3.0
    if bb <= 0.0:
        return []
    sd = math.sin(v.design.delta)
    cd = math.cos(v.design.delta)
    if v.l * sd == 0.0:
        return []
    r = -math.sqrt(v.weight / bb)
    drag_b = (0.25 * b.rho * v.c_B * C_DB * v.R_B ** 4 * r * r
              + b.gamma * abs(r))
    f_p = drag_b / abs(v.l * sd)
    U = r * v.l * cd
    val = (f_p / (b.rho * b.c_p * C_Lp) - b.R_p * U * U / 2.0) \
        / (b.R_p ** 3 / 3.0)
    omega_a_mag = math.sqrt(max(val, 1.0))
    guesses = []
    for sign in (-1.0, 1.0):
        omega_a = sign * omega_a_mag
        omega_p = omega_a - r * cd
        load = aero.propeller_drag_load(v, omega_p, r)
        i = load / b.K_tau_m
        V = b.R_m * i + b.K_v * omega_p
        guesses.append(np.array([i, V, omega_p, 0.0, 0.0, r]))
    return guesses


def candidate_guesses(v: VehicleModel) -> list:
    """Deterministic starting points tried in order by evaluate_design."""
    out = [default_guess(v)]
    out.extend(_geared_guesses(v))
    return out


def solve_hover(v: VehicleModel, guess=None, tol: float = DEFAULT_TOL,
                max_iter: int = MAX_ITER) -> HoverState:
    """Damped Newton with a forward-difference Jacobian.

    Converges when the scaled residual norm drops below `tol`; raises
    NonConvergenceError / SingularJacobianError otherwise.
    """
    u = np.array(default_guess(v) if guess is None else guess, dtype=float)
    if not np.all(np.isfinite(u)):
        raise DomainError("guess must be finite")
    if np.linalg.norm(u[3:6]) == 0.0:
        raise DomainError("guess needs |omega_B| > 0")

    res = hover_residual(v, u)
    norm = np.linalg.norm(res)
    for _ in range(max_iter):
        if norm < tol:
            break
        J = np.empty((6, 6))
        for j in range(6):
            h = max(FD_REL_STEP * abs(u[j]), FD_ABS_FLOOR)
            up = u.copy()
            up[j] += h
            J[:, j] = (hover_residual(v, up) - res) / h
        try:
            step = np.linalg.solve(J, -res)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobianError(
                f"singular Jacobian at residual norm {norm:.3e}") from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobianError("non-finite Newton step")

        lam = 1.0
        while lam >= MIN_DAMPING:
            try:
                trial = u + lam * step
                if np.linalg.norm(trial[3:6]) == 0.0:
                    raise DomainError("zero body rate")
                new_res = hover_residual(v, trial)
                new_norm = np.linalg.norm(new_res)
            except DomainError:
                new_norm = np.inf
            if new_norm < norm:
                u, res, norm = trial, new_res, new_norm
                break
            lam *= 0.5
        else:
            raise NonConvergenceError(
                f"line search stalled at residual norm {norm:.3e}",
                residual_norm=norm, last_iterate=u)
    else:
        raise NonConvergenceError(
            f"no convergence in {max_iter} iterations "
            f"(residual norm {norm:.3e})",
            residual_norm=norm, last_iterate=u)

    omega = u[3:6]
    n = spin_axis_from_rates(omega)
    P_s = (u[1] * u[0]) / v.weight
    return HoverState(i_bar=float(u[0]), V_m_bar=float(u[1]),
                      omega_p_bar=float(u[2]), omega_B_bar=omega.copy(),
                      n_bar=n, P_s=float(P_s), residual_norm=float(norm))


def specific_power(hover: HoverState, total_weight: float) -> float:
    """Electrical power per unit weight, W/N."""
    if total_weight <= 0.0:
        raise DomainError("total weight must be positive")
    return hover.P_m / total_weight


def to_full_state(v: VehicleModel, hover: HoverState) -> dynamics.FullState:
    """Initial condition for the simulator, with the spin axis mapped to
    the inertial vertical."""
    n = hover.n_bar
    z = np.array([0.0, 0.0, 1.0])
    c = float(n @ z)
    axis = np.cross(n, z)
    s = np.linalg.norm(axis)
    if s < 1e-14:
        R = np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    else:
        k = axis / s
        K = dynamics.skew(k)
        R = np.eye(3) + s * K + (1.0 - c) * (K @ K)
    return dynamics.FullState(omega_B=hover.omega_B_bar.copy(),
                              omega_p=hover.omega_p_bar, i=hover.i_bar,
                              n=n.copy(), d=np.zeros(3), v=np.zeros(3),
                              attitude=R)
