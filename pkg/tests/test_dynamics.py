import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from monospin import dynamics, hover
from monospin.errors import DomainError
from monospin.model import BaseConstants, DesignVector, MassModel, expand_design


def _free_state(omega=(0.3, -0.2, -50.0), omega_p=300.0):
    return dynamics.FullState(omega_B=np.array(omega, dtype=float),
                              omega_p=float(omega_p), i=0.2,
                              n=np.array([0.0, 0.0, 1.0]),
                              d=np.zeros(3), v=np.zeros(3),
                              attitude=np.eye(3))


def _vehicle(m_p=0.005, delta=0.0, offset=0.0):
    base = BaseConstants()
    masses = MassModel(m_e=0.15, m_p=m_p, m_B=0.03)
    x = DesignVector(10.0, 10.0, 1.0, 2.0, delta, offset)
    return expand_design(base, masses, x)


def test_skew_matches_cross_product():
    a = np.array([1.0, -2.0, 3.0])
    b = np.array([0.5, 4.0, -1.0])
    np.testing.assert_allclose(dynamics.skew(a) @ b, np.cross(a, b))


def test_motor_rates_steady_at_hover(vehicle1, hover1):
    s = hover.to_full_state(vehicle1, hover1)
    domega_p, di = dynamics.motor_rates(vehicle1, s, hover1.V_m_bar)
    assert abs(domega_p) < 1e-6
    assert abs(di) < 1e-6


def test_rotational_accel_zero_at_hover(vehicle1, hover1):
    s = hover.to_full_state(vehicle1, hover1)
    dw = dynamics.rotational_accel(vehicle1, s, 0.0)
    assert np.linalg.norm(dw) < 1e-9


def test_translational_accel_zero_at_hover(vehicle1, hover1):
    s = hover.to_full_state(vehicle1, hover1)
    dv = dynamics.translational_accel(vehicle1, s)
    assert np.linalg.norm(dv) < 1e-8


@given(st.floats(-50.0, 50.0), st.floats(-50.0, 50.0),
       st.floats(-100.0, 100.0))
@settings(max_examples=50, deadline=None)
def test_spin_axis_rate_preserves_norm(p, q, r):
    w = np.array([p, q, r])
    n = np.array([0.3, -0.4, np.sqrt(1 - 0.25)])
    dn = dynamics.spin_axis_rate(w, n)
    assert abs(float(dn @ n)) < 1e-9 * max(1.0, np.linalg.norm(w))


def test_pack_unpack_round_trip():
    s = _free_state()
    back = dynamics._unpack(dynamics._pack(s))
    np.testing.assert_allclose(back.omega_B, s.omega_B)
    assert back.omega_p == s.omega_p
    assert back.i == s.i
    np.testing.assert_allclose(back.attitude, s.attitude)


def test_integrate_validates_steps(vehicle1):
    s = _free_state()
    with pytest.raises(DomainError):
        dynamics.integrate(vehicle1, s, 5.0, dt=0.0, t_end=1.0)
    with pytest.raises(DomainError):
        dynamics.integrate(vehicle1, s, 5.0, dt=1.0, t_end=0.5)


def test_trajectory_csv_header(vehicle1):
    s = _free_state()
    traj = dynamics.integrate(vehicle1, s, 5.0, dt=1e-3, t_end=5e-3,
                              sample_every=1)
    lines = traj.to_csv().splitlines()
    assert lines[0] == "t,p,q,r,omega_p,i,n_x,n_y,n_z,d_x,d_y,d_z"
    assert len(lines) == len(traj.t) + 1


def test_voltage_schedule_callable(vehicle1, hover1):
    s = hover.to_full_state(vehicle1, hover1)
    const = dynamics.integrate(vehicle1, s, hover1.V_m_bar,
                               dt=1e-3, t_end=0.05)
    sched = dynamics.integrate(vehicle1, s, lambda t: hover1.V_m_bar,
                               dt=1e-3, t_end=0.05)
    np.testing.assert_allclose(const.states[-1], sched.states[-1])


def test_free_rotation_conserves_momentum_and_energy():
    # no aero, no motor, massless rotor: the body is a plain rigid body
    # and the inertial angular momentum and kinetic energy are constants
    v = _vehicle(m_p=0.0)
    s = _free_state(omega=(5.0, -3.0, 20.0), omega_p=0.0)
    traj = dynamics.integrate(v, s, 0.0, dt=1e-4, t_end=1.0,
                              with_aero=False, with_motor=False,
                              sample_every=100)
    H0 = None
    E0 = None
    for k in range(len(traj.t)):
        st_k = traj.state_at(k)
        H_inertial = st_k.attitude @ (v.I_T @ st_k.omega_B)
        E = 0.5 * float(st_k.omega_B @ (v.I_T @ st_k.omega_B))
        if H0 is None:
            H0, E0 = H_inertial, E
        else:
            assert np.linalg.norm(H_inertial - H0) < 1e-8 * np.linalg.norm(H0)
            assert abs(E - E0) < 1e-8 * E0
    # n tracks a fixed spatial direction: R @ n is constant
    n_sp0 = traj.state_at(0).attitude @ traj.state_at(0).n
    n_sp1 = traj.state_at(len(traj.t) - 1).attitude \
        @ traj.state_at(len(traj.t) - 1).n
    np.testing.assert_allclose(n_sp0, n_sp1, atol=1e-7)


def test_integrator_order_is_four(vehicle1):
    s = _free_state()

    def end(dt):
        tr = dynamics.integrate(vehicle1, s, 8.0, dt=dt, t_end=0.1,
                                sample_every=10 ** 9, renorm_every=10 ** 9)
        return tr.states[-1]

    order = oracles.richardson_order(end(8e-4), end(4e-4), end(2e-4))
    assert order > 3.7


def test_hover_persists_in_time(vehicle1, hover1):
    s0 = hover.to_full_state(vehicle1, hover1)
    traj = dynamics.integrate(vehicle1, s0, hover1.V_m_bar, dt=1e-3,
                              t_end=1.0, sample_every=20, renorm_every=10)
    r0 = traj.r[0]
    assert np.max(np.abs(traj.r - r0)) / abs(r0) < 1e-6
    # altitude holds too
    assert np.max(np.abs(traj.states[:, 10])) < 1e-4
