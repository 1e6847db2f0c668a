"""Aerodynamic forces and moments in the body frame.

Conventions (all fixed here, since the source formulas only give
magnitudes):

* rotor_axis = (sin delta, 0, cos delta); the rotor sits at +l on body y
* omega_p is the rotor speed relative to the body; the rate seen by the
  air along the rotor axis is omega_a = omega_p + r*cos(delta)
* the in-plane freestream over the offset rotor is U = r*l*cos(delta)
* the propeller and fuselage blades are pitched for their design spin
  direction, so thrust and fuselage lift act along +rotor_axis and +z
  for either spin sign
* drag torques oppose the rotation that generates them

The default "quadratic" variant uses the two-blade blade-element forms
(force ~ rho*c*C_L*R^3*w^2/3, torque ~ rho*c*C_D*R^4*w^2/4), which
reproduce the published co-axial hover point.  The "printed" variant
keeps the dimensionally inconsistent cubic leading terms for audit only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import ALPHA_MAX_DEG, VehicleModel

_YHAT = np.array([0.0, 1.0, 0.0])
_ZHAT = np.array([0.0, 0.0, 1.0])


def lift_coeff(alpha: float) -> float:
    """Linear NACA-4415 lift fit, valid for alpha in [0, 10] degrees."""
    if not 0.0 <= alpha <= ALPHA_MAX_DEG:
        raise DomainError(f"alpha={alpha!r} outside the fit window "
                          f"[0, {ALPHA_MAX_DEG}] deg")
    return 0.1 * alpha + 0.5


def drag_coeff(alpha: float) -> float:
    """Linear NACA-4415 drag fit, valid for alpha in [0, 10] degrees."""
    if not 0.0 <= alpha <= ALPHA_MAX_DEG:
        raise DomainError(f"alpha={alpha!r} outside the fit window "
                          f"[0, {ALPHA_MAX_DEG}] deg")
    return 0.006 * alpha + 0.04


@dataclass(frozen=True)
class AeroCoefficients:
    C_L_p: float
    C_L_B: float
    C_D_p: float
    C_D_B: float


def coefficients(v: VehicleModel) -> AeroCoefficients:
    d = v.design
    return AeroCoefficients(C_L_p=lift_coeff(d.alpha_p),
                            C_L_B=lift_coeff(d.alpha_B),
                            C_D_p=drag_coeff(d.alpha_p),
                            C_D_B=drag_coeff(d.alpha_B))


@dataclass(frozen=True)
class BodyWrench:
    """Force/moment decomposition by source, all in the body frame."""

    f_p: np.ndarray      # propeller thrust
    f_B: np.ndarray      # fuselage lift
    tau_f: np.ndarray    # moment of the thrust about the COM
    tau_p: np.ndarray    # asymmetric-lift rolling moment
    tau_dp: np.ndarray   # propeller drag torque (acts against the rotor spin)
    tau_dB: np.ndarray   # fuselage + hub drag torque


def _rates(v: VehicleModel, omega_p: float, r: float):
    cd = math.cos(v.design.delta)
    omega_a = omega_p + r * cd
    U = r * v.l * cd
    return cd, omega_a, U


def thrust_magnitude(v: VehicleModel, omega_p: float, r: float) -> float:
    """Scalar propeller thrust along +rotor_axis (non-negative for the
    quadratic variant)."""
    b = v.base
    cd, omega_a, U = _rates(v, omega_p, r)
    C_L = lift_coeff(v.design.alpha_p)
    if v.variant == "printed":
        bracket = (b.R_p ** 3 * omega_p ** 3 / 3.0
                   + b.R_p ** 3 * r * r * cd * cd / 3.0
                   + b.R_p * r * r * v.l * v.l * cd * cd / 2.0
                   + 2.0 * b.R_p ** 3 * r * omega_p * cd / 3.0)
        return b.rho * b.c_p * C_L * abs(bracket)
    bracket = b.R_p ** 3 * omega_a * omega_a / 3.0 + b.R_p * U * U / 2.0
    return b.rho * b.c_p * C_L * bracket


def propeller_thrust(v: VehicleModel, omega_p: float, r: float) -> np.ndarray:
    """Propeller thrust force vector along the rotor axis."""
    return thrust_magnitude(v, omega_p, r) * v.rotor_axis


def thrust_moment(v: VehicleModel, f_p: np.ndarray) -> np.ndarray:
    """Moment of the (offset) thrust about the COM: (l*yhat) x f_p."""
    return np.cross(v.l * _YHAT, f_p)


def asymmetric_lift_moment(v: VehicleModel, omega_p: float,
                           r: float) -> np.ndarray:
    """Rolling moment from the uneven advancing/retreating blade lift.

    Signed scalar along body x; the sign falls out of the blade-element
    decomposition (advancing-blade excess at +y for positive spin and
    positive freestream).
    """
    b = v.base
    cd = math.cos(v.design.delta)
    C_L = lift_coeff(v.design.alpha_p)
    s = (b.rho * b.c_p * C_L * b.R_p ** 3
         * (omega_p + r) * r * v.l * cd / 3.0)
    return np.array([s, 0.0, 0.0])


def propeller_drag_load(v: VehicleModel, omega_p: float, r: float) -> float:
    """Signed drag torque loading the motor (positive for omega_a > 0).

    This is the scalar that appears in the steady motor torque balance
    K_tau_m * i = load.
    """
    b = v.base
    cd, omega_a, U = _rates(v, omega_p, r)
    C_D = drag_coeff(v.design.alpha_p)
    if v.variant == "printed":
        bracket = (b.R_p ** 4 * omega_p ** 3 / 4.0
                   + b.R_p ** 4 * r * r * cd * cd / 4.0
                   + b.R_p ** 2 * r * r * v.l * v.l * cd * cd / 2.0
                   + b.R_p ** 4 * r * omega_p * cd / 2.0)
        return math.copysign(b.rho * b.c_p * C_D * abs(bracket), omega_a)
    mag = (b.rho * b.c_p * C_D
           * (b.R_p ** 4 * omega_a * omega_a / 4.0
              + b.R_p ** 2 * U * U / 2.0))
    return math.copysign(mag, omega_a) if omega_a != 0.0 else 0.0


def propeller_drag_moment(v: VehicleModel, omega_p: float,
                          r: float) -> np.ndarray:
    """Drag torque of the air on the rotor, along the rotor axis.

    Opposes the rotor's rotation relative to the air.  The same vector is
    what the body feels: the motor torque is internal to body+rotor, so in
    the combined rotational equation only the aerodynamic load survives.
    """
    return -propeller_drag_load(v, omega_p, r) * v.rotor_axis


def fuselage_drag_moment(v: VehicleModel, r: float) -> np.ndarray:
    """Fuselage blade drag plus central-hub drag, opposing the body spin."""
    b = v.base
    C_D = drag_coeff(v.design.alpha_B)
    aero = 0.25 * b.rho * v.c_B * C_D * v.R_B ** 4 * r * abs(r)
    # both terms are dissipative; the hub term is linear in r
    return -(aero + b.gamma * r) * _ZHAT


def fuselage_lift(v: VehicleModel, r: float) -> np.ndarray:
    """Lift of the spinning streamlined fuselage, along +body z."""
    b = v.base
    C_L = lift_coeff(v.design.alpha_B)
    return (b.rho * v.c_B * C_L * v.R_B ** 3 * r * r / 3.0) * _ZHAT


def body_wrench(v: VehicleModel, omega_p: float,
                omega_B: np.ndarray) -> BodyWrench:
    """All aerodynamic forces and moments at the given rates."""
    r = float(omega_B[2])
    f_p = propeller_thrust(v, omega_p, r)
    return BodyWrench(
        f_p=f_p,
        f_B=fuselage_lift(v, r),
        tau_f=thrust_moment(v, f_p),
        tau_p=asymmetric_lift_moment(v, omega_p, r),
        tau_dp=propeller_drag_moment(v, omega_p, r),
        tau_dB=fuselage_drag_moment(v, r),
    )


def total_external_moment(v: VehicleModel, omega_p: float,
                          omega_B: np.ndarray) -> np.ndarray:
    """Sum of all external moments on the body+rotor system."""
    w = body_wrench(v, omega_p, omega_B)
    return w.tau_f + w.tau_p + w.tau_dp + w.tau_dB
