"""Vehicle description: physical constants, design variables, masses, inertia.

All types are immutable after construction and safe to share between
threads/processes.  Angles of attack are in degrees (the airfoil fits are
written against degrees); the rotor tilt angle is in radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import CalibrationError, DomainError

ALPHA_MAX_DEG = 10.0

DESIGN_FIELDS = ("alpha_p", "alpha_B", "chord_ratio", "radius_ratio",
                 "delta", "offset_ratio")


@dataclass(frozen=True)
class DesignVector:
    """The six free design variables of the vehicle."""

    alpha_p: float        # propeller angle of attack, deg
    alpha_B: float        # fuselage angle of attack, deg
    chord_ratio: float    # c_B / c_p
    radius_ratio: float   # R_B / R_p
    delta: float          # rotor tilt about body y, rad
    offset_ratio: float   # l / R_B, signed

    def __post_init__(self):
        for name in ("alpha_p", "alpha_B"):
            a = getattr(self, name)
            if not 0.0 <= a <= ALPHA_MAX_DEG:
                raise DomainError(
                    f"{name}={a!r} outside the fit window [0, {ALPHA_MAX_DEG}] deg")
        for name in ("chord_ratio", "radius_ratio"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be non-negative, got "
                                  f"{getattr(self, name)!r}")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f) for f in DESIGN_FIELDS)

    @classmethod
    def from_tuple(cls, values) -> "DesignVector":
        return cls(*(float(v) for v in values))


@dataclass(frozen=True)
class BaseConstants:
    """Fixed physical constants of the vehicle and environment.

    Defaults are the published study vehicle.  R_m and L_m were never
    published; R_m defaults to the value back-derived from the published
    co-axial hover point (see calibrate_from_published), L_m only matters
    for the time-domain simulator (steady state has di/dt = 0).
    """

    c_p: float = 0.03          # propeller chord, m
    R_p: float = 0.08          # propeller radius, m
    g: float = 9.81            # m/s^2
    rho: float = 1.225         # air density, kg/m^3
    K_tau_m: float = 0.02      # motor torque constant, N*m/A
    K_v: float = 0.02          # back-EMF constant, V/(rad/s)
    gamma: float = 9.75e-6     # central-hub rotational drag, N*m*s/rad
    R_m: float = 1.0016        # motor resistance, Ohm (back-derived)
    L_m: float = 1.0e-3        # motor inductance, H

    def __post_init__(self):
        for name in ("c_p", "R_p", "g", "rho", "K_tau_m", "K_v", "R_m", "L_m"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be strictly positive")
        if self.gamma < 0.0:
            raise DomainError("gamma must be non-negative")


@dataclass(frozen=True)
class MassModel:
    """Component masses and the electronics cylinder dimensions.

    The paper never states the masses; the shipped configs back-derive the
    total from the published specific-power numbers and split it by a
    declared (not inferred) component breakdown.
    """

    m_e: float                       # electronics + battery, kg
    m_p: float                       # propeller, kg
    m_B: float                       # fuselage, kg
    electronics_radius: float = 0.02   # m
    electronics_height: float = 0.04   # m

    def __post_init__(self):
        for name in ("m_e", "m_p", "m_B",
                     "electronics_radius", "electronics_height"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be non-negative")
        if self.total_mass <= 0.0:
            raise DomainError("total mass must be strictly positive")

    @property
    def total_mass(self) -> float:
        return self.m_e + self.m_p + self.m_B

    def scaled_to_weight(self, weight: float, g: float) -> "MassModel":
        """Rescale all masses uniformly so that total weight equals `weight`."""
        if weight <= 0.0:
            raise DomainError("weight must be strictly positive")
        k = weight / (g * self.total_mass)
        return replace(self, m_e=self.m_e * k, m_p=self.m_p * k,
                       m_B=self.m_B * k)


def assemble_inertia(masses: MassModel, R_p: float, R_B: float, l: float):
    """Assemble the four diagonal inertia tensors in body axes.

    Thin disks for propeller and fuselage, solid cylinder for the
    electronics.  The propeller disk is offset by l along body y, which
    adds a parallel-axis term m_p*l^2 to its x and z entries.  Returns
    (I_e, I_p, I_B, I_T) as 3x3 arrays with I_T = I_e + I_p + I_B.
    """
    a, h = masses.electronics_radius, masses.electronics_height
    i_e_diam = masses.m_e * (3.0 * a * a + h * h) / 12.0
    I_e = np.diag([i_e_diam, i_e_diam, masses.m_e * a * a / 2.0])

    i_p_diam = masses.m_p * R_p * R_p / 4.0
    i_p_ax = masses.m_p * R_p * R_p / 2.0
    shift = masses.m_p * l * l
    I_p = np.diag([i_p_diam + shift, i_p_diam, i_p_ax + shift])

    i_b_diam = masses.m_B * R_B * R_B / 4.0
    I_B = np.diag([i_b_diam, i_b_diam, masses.m_B * R_B * R_B / 2.0])

    return I_e, I_p, I_B, I_e + I_p + I_B


@dataclass(frozen=True)
class VehicleModel:
    """A fully resolved vehicle: constants + masses + expanded geometry."""

    base: BaseConstants
    masses: MassModel
    design: DesignVector
    c_B: float
    R_B: float
    l: float
    I_e: np.ndarray
    I_p: np.ndarray
    I_B: np.ndarray
    I_T: np.ndarray
    I_p_spin: np.ndarray
    rotor_axis: np.ndarray
    variant: str = "quadratic"   # "quadratic" (default) or "printed"

    @property
    def total_mass(self) -> float:
        return self.masses.total_mass

    @property
    def weight(self) -> float:
        return self.total_mass * self.base.g


def expand_design(base: BaseConstants, masses: MassModel, x: DesignVector,
                  variant: str = "quadratic") -> VehicleModel:
    """Expand a design vector into a fully resolved VehicleModel."""
    if variant not in ("quadratic", "printed"):
        raise DomainError(f"unknown model variant {variant!r}")
    c_B = x.chord_ratio * base.c_p
    R_B = x.radius_ratio * base.R_p
    l = x.offset_ratio * R_B
    I_e, I_p, I_B, I_T = assemble_inertia(masses, base.R_p, R_B, l)
    # spin terms (omega_p) use the disk tensor about the propeller's own
    # COM: the parallel-axis shift belongs to the carrier motion only
    i_p_diam = masses.m_p * base.R_p ** 2 / 4.0
    I_p_spin = np.diag([i_p_diam, i_p_diam, 2.0 * i_p_diam])
    axis = np.array([math.sin(x.delta), 0.0, math.cos(x.delta)])
    return VehicleModel(base=base, masses=masses, design=x,
                        c_B=c_B, R_B=R_B, l=l,
                        I_e=I_e, I_p=I_p, I_B=I_B, I_T=I_T,
                        I_p_spin=I_p_spin, rotor_axis=axis, variant=variant)


@dataclass(frozen=True)
class Calibration:
    """Constants recovered from a published hover point."""

    weight: float          # total vehicle weight, N
    R_m: float | None      # motor resistance, Ohm (None if not recoverable)


def calibrate_from_published(published: dict,
                             base: BaseConstants) -> Calibration:
    """Recover unpublished constants from a published hover solution.

    `published` may contain P_s plus either P_m or both V_m and i, and
    optionally omega_p.  Total weight follows from weight = P_m / P_s;
    R_m from the steady motor equation R_m = (V_m - K_v*omega_p) / i.
    Published magnitudes are accepted: signs are dropped.
    """
    P_s = published.get("P_s")
    if P_s is None or P_s <= 0.0:
        raise CalibrationError("published block needs a positive P_s")
    V_m = published.get("V_m")
    i = published.get("i")
    P_m = published.get("P_m")
    omega_p = published.get("omega_p")

    if V_m is not None and i is not None:
        if i == 0.0:
            raise CalibrationError("calibration impossible: published i = 0")
        p_vi = abs(V_m * i)
        if P_m is not None and not math.isclose(P_m, p_vi, rel_tol=1e-6):
            raise CalibrationError(
                f"published block inconsistent: P_m={P_m} but V_m*i={p_vi}")
        P_m = p_vi
    if P_m is None:
        raise CalibrationError("published block needs P_m or (V_m, i)")

    weight = P_m / P_s

    R_m = None
    if V_m is not None and i is not None and omega_p is not None:
        R_m = (abs(V_m) - base.K_v * abs(omega_p)) / abs(i)
        if R_m <= 0.0:
            raise CalibrationError(
                f"back-derived R_m = {R_m} is not positive; published block "
                "violates the steady motor equation")
    return Calibration(weight=weight, R_m=R_m)
