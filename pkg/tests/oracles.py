"""Independent numerical oracles used by the test suite.

Closed-form blade forces are re-derived here by brute-force quadrature:
Gauss-Legendre along the span, periodic trapezoid over azimuth, averaged
over the two blades.  A bisection solver re-derives the co-axial hover
point without Newton.  Nothing in this module imports the closed forms
it checks.
"""
import math

import numpy as np

N_SPAN = 48
N_AZIMUTH = 64


def _span_nodes(R):
    x, w = np.polynomial.legendre.leggauss(N_SPAN)
    return 0.5 * R * (x + 1.0), 0.5 * R * w


def lift_force_quadrature(rho, c, C_L, R, omega_a, U):
    """Two-blade lift force: 1/2 rho c C_L integral of the tangential
    speed squared, azimuth-averaged."""
    x, w = _span_nodes(R)
    psi = np.linspace(0.0, 2.0 * np.pi, N_AZIMUTH, endpoint=False)
    total = 0.0
    for dpsi in (0.0, np.pi):
        tang = omega_a * x[None, :] + U * np.sin(psi + dpsi)[:, None]
        total += 0.5 * rho * c * C_L * float(np.mean((tang ** 2) @ w))
    return total


def drag_torque_quadrature(rho, c, C_D, R, omega_a, U):
    """Two-blade drag torque magnitude: 1/2 rho c C_D integral of the
    full in-plane speed squared weighted by the span coordinate."""
    x, w = _span_nodes(R)
    psi = np.linspace(0.0, 2.0 * np.pi, N_AZIMUTH, endpoint=False)
    total = 0.0
    for dpsi in (0.0, np.pi):
        s = np.sin(psi + dpsi)[:, None]
        cpsi = np.cos(psi + dpsi)[:, None]
        v2 = (omega_a * x[None, :] + U * s) ** 2 \
            + (U * cpsi * np.ones_like(x)[None, :]) ** 2
        total += 0.5 * rho * c * C_D * float(np.mean((v2 * x[None, :]) @ w))
    return total


def rolling_moment_quadrature(rho, c, C_L, R, omega_p, r, l, delta):
    """Advancing/retreating lift asymmetry about body x.

    The lift differential is weighted by the lateral blade coordinate
    x*sin(psi); only the cross term between the rotational and freestream
    speeds survives the azimuth average.
    """
    x, w = _span_nodes(R)
    psi = np.linspace(0.0, 2.0 * np.pi, N_AZIMUTH, endpoint=False)
    total = 0.0
    for dpsi in (0.0, np.pi):
        s = np.sin(psi + dpsi)[:, None]
        tang = (omega_p + r) * x[None, :] + (r * l) * s
        total += 0.5 * rho * c * C_L * float(
            np.mean(((tang ** 2) * x[None, :] * s) @ w))
    return total * math.cos(delta)


def coaxial_hover_bisection(base, weight, alpha_p, alpha_B, c_B, R_B,
                            tol=1e-13):
    """Co-axial (l = delta = 0) hover by bisection on the body rate.

    For a trial |r| the rotor rate follows from the torque balance
    (rotor reaction = fuselage + hub drag), leaving the thrust-weight
    residual as a monotone function of |r|.  Returns (i, V_m, omega_p, r).
    """
    C_Lp = 0.1 * alpha_p + 0.5
    C_Dp = 0.006 * alpha_p + 0.04
    C_LB = 0.1 * alpha_B + 0.5
    C_DB = 0.006 * alpha_B + 0.04
    A = base.rho * base.c_p * C_Lp * base.R_p ** 3 / 3.0
    C = base.rho * base.c_p * C_Dp * base.R_p ** 4 / 4.0
    bb = base.rho * c_B * C_LB * R_B ** 3 / 3.0
    dd = base.rho * c_B * C_DB * R_B ** 4 / 4.0

    def excess(r_mag):
        torque = dd * r_mag * r_mag + base.gamma * r_mag
        omega_a = math.sqrt(torque / C)
        return A * omega_a ** 2 + bb * r_mag ** 2 - weight

    lo, hi = 1e-9, 1.0
    while excess(hi) < 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise RuntimeError("bisection bracket failed")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    r_mag = 0.5 * (lo + hi)
    torque = dd * r_mag * r_mag + base.gamma * r_mag
    omega_a = math.sqrt(torque / C)
    omega_p = omega_a + r_mag
    i = torque / base.K_tau_m
    V = base.R_m * i + base.K_v * omega_p
    return i, V, omega_p, -r_mag


def richardson_order(coarse, mid, fine):
    """Observed convergence order from three solutions at dt, dt/2, dt/4."""
    num = np.linalg.norm(np.asarray(coarse) - np.asarray(mid))
    den = np.linalg.norm(np.asarray(mid) - np.asarray(fine))
    return math.log2(num / den)
