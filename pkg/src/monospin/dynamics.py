"""Full equations of motion and a fixed-step RK4 integrator.

Used mainly to validate that hover solutions persist in time.  The state
carries the body rates, rotor speed, motor current, the spin-axis unit
vector n expressed in the body frame, and the inertial position/velocity
plus the body-to-inertial rotation matrix.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import aero
from .errors import DivergenceError, DomainError
from .model import VehicleModel

TRAJECTORY_COLUMNS = ("t", "p", "q", "r", "omega_p", "i",
                      "n_x", "n_y", "n_z", "d_x", "d_y", "d_z")


@dataclass(frozen=True)
class FullState:
    omega_B: np.ndarray    # body rates (p, q, r), rad/s
    omega_p: float         # rotor speed relative to body, rad/s
    i: float               # motor current, A
    n: np.ndarray          # spin axis, body frame, unit
    d: np.ndarray          # position, inertial, m
    v: np.ndarray          # velocity, inertial, m/s
    attitude: np.ndarray   # body-to-inertial rotation, 3x3


def skew(w: np.ndarray) -> np.ndarray:
    return np.array([[0.0, -w[2], w[1]],
                     [w[2], 0.0, -w[0]],
                     [-w[1], w[0], 0.0]])


def motor_rates(v: VehicleModel, state: FullState, V_m: float):
    """(domega_p/dt, di/dt) from the DC motor equations."""
    b = v.base
    load = aero.propeller_drag_load(v, state.omega_p, float(state.omega_B[2]))
    i_p_axial = v.I_p_spin[2, 2]
    if i_p_axial == 0.0:
        raise DomainError("rotor has zero axial inertia")
    domega_p = (b.K_tau_m * state.i - load) / i_p_axial
    di = (V_m - b.R_m * state.i - b.K_v * state.omega_p) / b.L_m
    return domega_p, di


def motor_power(V_m: float, i: float) -> float:
    return V_m * i


def rotational_accel(v: VehicleModel, state: FullState,
                     domega_p: float) -> np.ndarray:
    """Body angular acceleration from the rotational equation of motion."""
    w = state.omega_B
    H = (v.I_T @ w + v.I_p_spin @ (state.omega_p * v.rotor_axis)
         + v.I_p @ w)
    tau_ext = aero.total_external_moment(v, state.omega_p, w)
    rhs = tau_ext - v.I_p_spin @ (domega_p * v.rotor_axis) - np.cross(w, H)
    try:
        return np.linalg.solve(v.I_T, rhs)
    except np.linalg.LinAlgError as exc:
        raise DomainError("total inertia tensor is singular") from exc


def translational_accel(v: VehicleModel, state: FullState) -> np.ndarray:
    """Inertial acceleration: gravity plus rotated thrust and fuselage lift."""
    m = v.total_mass
    if m <= 0.0:
        raise DomainError("total mass must be positive")
    r = float(state.omega_B[2])
    f = aero.propeller_thrust(v, state.omega_p, r) + aero.fuselage_lift(v, r)
    g_vec = np.array([0.0, 0.0, -v.base.g])
    return g_vec + state.attitude @ f / m


def spin_axis_rate(omega_B: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Evolution of the fixed spatial axis as seen from the body."""
    return -np.cross(omega_B, n)


def _pack(s: FullState) -> np.ndarray:
    return np.concatenate([s.omega_B, [s.omega_p, s.i], s.n, s.d, s.v,
                           s.attitude.ravel()])


def _unpack(y: np.ndarray) -> FullState:
    return FullState(omega_B=y[0:3], omega_p=float(y[3]), i=float(y[4]),
                     n=y[5:8], d=y[8:11], v=y[11:14],
                     attitude=y[14:23].reshape(3, 3))


def _derivative(v: VehicleModel, y: np.ndarray, V_m: float,
                with_aero: bool, with_motor: bool) -> np.ndarray:
    w = y[0:3]
    omega_p = float(y[3])
    i = float(y[4])
    n = y[5:8]
    vel = y[11:14]
    R = y[14:23].reshape(3, 3)
    b = v.base

    r = float(w[2])
    load = aero.propeller_drag_load(v, omega_p, r) if with_aero else 0.0
    i_p_axial = v.I_p_spin[2, 2]
    if with_motor:
        domega_p = (b.K_tau_m * i - load) / i_p_axial if i_p_axial else 0.0
        di = (V_m - b.R_m * i - b.K_v * omega_p) / b.L_m
    else:
        domega_p = -load / i_p_axial if i_p_axial else 0.0
        di = 0.0

    H = (v.I_T @ w + v.I_p_spin @ (omega_p * v.rotor_axis) + v.I_p @ w)
    tau = aero.total_external_moment(v, omega_p, w) if with_aero \
        else np.zeros(3)
    dw = np.linalg.solve(v.I_T,
                         tau - v.I_p_spin @ (domega_p * v.rotor_axis)
                         - np.cross(w, H))

    dn = -np.cross(w, n)
    dR = R @ skew(w)
    if with_aero:
        f = (aero.propeller_thrust(v, omega_p, r)
             + aero.fuselage_lift(v, r))
    else:
        f = np.zeros(3)
    dv = np.array([0.0, 0.0, -b.g]) + R @ f / v.total_mass

    out = np.empty(23)
    out[0:3] = dw
    out[3] = domega_p
    out[4] = di
    out[5:8] = dn
    out[8:11] = vel
    out[11:14] = dv
    out[14:23] = dR.ravel()
    return out


def _orthonormalize(R: np.ndarray) -> np.ndarray:
    # nearest rotation matrix (polar decomposition)
    u, _, vt = np.linalg.svd(R)
    return u @ vt


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    states: np.ndarray   # rows: packed state vectors

    def state_at(self, k: int) -> FullState:
        return _unpack(self.states[k])

    @property
    def r(self) -> np.ndarray:
        return self.states[:, 2]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(TRAJECTORY_COLUMNS) + "\n")
        for tk, row in zip(self.t, self.states):
            vals = [tk, row[0], row[1], row[2], row[3], row[4],
                    row[5], row[6], row[7], row[8], row[9], row[10]]
            buf.write(",".join(f"{x:.12g}" for x in vals) + "\n")
        return buf.getvalue()


def integrate(v: VehicleModel, state0: FullState, V_m, dt: float,
              t_end: float, sample_every: int = 10,
              with_aero: bool = True, with_motor: bool = True,
              renorm_every: int = 1) -> Trajectory:
    """Classical fixed-step RK4 integration of the full state.

    `V_m` is either a number or a callable of time (piecewise-constant
    schedules should be supplied as callables).  The attitude matrix is
    re-orthonormalized and n re-normalized every `renorm_every` steps.
    """
    if dt <= 0.0 or t_end < dt:
        raise DomainError("need dt > 0 and t_end >= dt")
    volts = V_m if callable(V_m) else (lambda _t, _V=float(V_m): _V)

    y = _pack(state0)
    n_steps = int(round(t_end / dt))
    ts = [0.0]
    rows = [y.copy()]
    t = 0.0
    for k in range(1, n_steps + 1):
        V1 = volts(t)
        V2 = volts(t + 0.5 * dt)
        V3 = volts(t + dt)
        k1 = _derivative(v, y, V1, with_aero, with_motor)
        k2 = _derivative(v, y + 0.5 * dt * k1, V2, with_aero, with_motor)
        k3 = _derivative(v, y + 0.5 * dt * k2, V2, with_aero, with_motor)
        k4 = _derivative(v, y + dt * k3, V3, with_aero, with_motor)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = k * dt
        if not np.all(np.isfinite(y)):
            raise DivergenceError(f"non-finite state at t={t:.6g} s", t=t)
        if k % renorm_every == 0:
            nn = np.linalg.norm(y[5:8])
            if nn > 0.0:
                y[5:8] /= nn
            y[14:23] = _orthonormalize(y[14:23].reshape(3, 3)).ravel()
        if k % sample_every == 0 or k == n_steps:
            ts.append(t)
            rows.append(y.copy())
    return Trajectory(t=np.array(ts), states=np.array(rows))
