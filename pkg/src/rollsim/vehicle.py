"""Six degree-of-freedom roll dynamics of a sprung body on four suspension corners.

The model couples the sprung-mass roll angle and heave with the four unsprung
vertical displacements of a quarter-car suspension at each corner.  All
displacements are measured from static equilibrium, so no gravity offset terms
appear.  Left/right corners enter through the lateral lever sign ``sigma``
(-1 on the left, +1 on the right), chosen so that the spring/damper coupling
between roll and the unsprung masses is variationally consistent (symmetric
stiffness and damping matrices); with that choice total mechanical energy is
non-increasing under zero actuation.

Everything here is a pure function over value-semantic inputs: no interior
mutation, safe to call from many threads without synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BlowupError, ConfigError

CORNERS = ("fl", "fr", "rl", "rr")

# Lateral lever sign per corner: left corners drop when the roll angle
# increases, right corners rise.
CORNER_SIGN = {"fl": -1.0, "fr": 1.0, "rl": -1.0, "rr": 1.0}

# Suspension travel bound monitored during simulation (not enforced), m.
TRAVEL_LIMIT = 0.1


@dataclass(frozen=True)
class VehicleParams:
    """Physical constants of the sprung/unsprung/suspension/tire system.

    All quantities in SI units.  Defaults describe the reference test
    vehicle used throughout the bundled scenarios.

    m_s:   sprung mass, kg
    m_u:   unsprung mass per corner (uniform across corners), kg
    I_xx:  sprung roll inertia, kg m^2
    h_phi: roll-center height above ground, m
    l_s:   left-right suspension spacing (track width), m
    l_w:   wheelbase, m
    a:     distance from front axle to center of gravity, m
    l:     full vehicle length used in the pitch allocation row, m
    k_f, k_r: front/rear suspension stiffness, N/m
    b_f, b_r: front/rear suspension damping, N s/m
    k_t:   tire vertical stiffness, N/m
    K_u:   understeer gradient, rad s^2/(kg m).  The default is equivalent
           to a conventional (mass-inclusive) gradient of 0.002 rad s^2/m
           at the reference 820 kg sprung mass.
    g:     gravitational acceleration, m/s^2
    """

    m_s: float = 820.0
    m_u: float = 60.0
    I_xx: float = 120.0
    h_phi: float = 0.48
    l_s: float = 1.3
    l_w: float = 2.3
    a: float = 1.15
    l: float = 2.3
    k_f: float = 12000.0
    k_r: float = 35000.0
    b_f: float = 530.0
    b_r: float = 850.0
    k_t: float = 200000.0
    K_u: float = 2.44e-6
    g: float = 9.81

    def __post_init__(self):
        positive = ("m_s", "m_u", "I_xx", "h_phi", "l_s", "l_w", "a", "l",
                    "k_f", "k_r", "b_f", "b_r", "k_t", "g")
        for name in positive:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0.0):
                raise ConfigError(f"vehicle parameter '{name}' must be strictly positive, got {value!r}")
        if not (math.isfinite(self.K_u) and self.K_u >= 0.0):
            raise ConfigError(f"vehicle parameter 'K_u' must be non-negative, got {self.K_u!r}")
        if not self.a < self.l:
            raise ConfigError(f"vehicle geometry requires a < l, got a={self.a} l={self.l}")
        if not self.h_phi < self.l_s:
            raise ConfigError(f"vehicle geometry requires h_phi < l_s, got h_phi={self.h_phi} l_s={self.l_s}")

    @property
    def i_xx_eff(self) -> float:
        """Effective roll inertia about the roll center, kg m^2 (derived)."""
        return self.I_xx + self.m_s * self.h_phi ** 2


@dataclass
class RollState:
    """Dynamic state: roll, heave, four unsprung displacements, and rates.

    phi / phi_dot:      roll angle (rad) and roll rate (rad/s)
    z_s / z_s_dot:      sprung heave displacement (m) and rate (m/s)
    z_u / z_u_dot:      unsprung vertical displacements (m) and rates (m/s),
                        indexed (fl, fr, rl, rr)
    """

    phi: float = 0.0
    phi_dot: float = 0.0
    z_s: float = 0.0
    z_s_dot: float = 0.0
    z_u: np.ndarray = field(default_factory=lambda: np.zeros(4))
    z_u_dot: np.ndarray = field(default_factory=lambda: np.zeros(4))

    def __post_init__(self):
        self.z_u = np.asarray(self.z_u, dtype=float)
        self.z_u_dot = np.asarray(self.z_u_dot, dtype=float)
        if self.z_u.shape != (4,) or self.z_u_dot.shape != (4,):
            raise ValueError("z_u and z_u_dot must hold one value per corner (fl, fr, rl, rr)")

    def to_array(self) -> np.ndarray:
        out = np.empty(12)
        out[0] = self.phi
        out[1] = self.phi_dot
        out[2] = self.z_s
        out[3] = self.z_s_dot
        out[4:8] = self.z_u
        out[8:12] = self.z_u_dot
        return out

    @classmethod
    def from_array(cls, y) -> "RollState":
        y = np.asarray(y, dtype=float)
        return cls(phi=float(y[0]), phi_dot=float(y[1]), z_s=float(y[2]),
                   z_s_dot=float(y[3]), z_u=y[4:8].copy(), z_u_dot=y[8:12].copy())

    def is_finite(self) -> bool:
        return (math.isfinite(self.phi) and math.isfinite(self.phi_dot)
                and math.isfinite(self.z_s) and math.isfinite(self.z_s_dot)
                and bool(np.isfinite(self.z_u).all()) and bool(np.isfinite(self.z_u_dot).all()))

    def suspension_deflections(self, params: VehicleParams) -> np.ndarray:
        """Per-corner suspension travel z_s + sigma*(l_s/2)*sin(phi) - z_u, m."""
        lever = 0.5 * params.l_s * math.sin(self.phi)
        signs = np.array([CORNER_SIGN[c] for c in CORNERS])
        return self.z_s + signs * lever - self.z_u


@dataclass
class RoadInput:
    """Road excitation and scenario lateral acceleration.

    z_road:       road height under each corner (fl, fr, rl, rr), m
    phi_road:     road bank angle, rad
    phi_road_dot: bank angle rate, rad/s
    a_y_true:     plant lateral acceleration, m/s^2
    """

    z_road: np.ndarray = field(default_factory=lambda: np.zeros(4))
    phi_road: float = 0.0
    phi_road_dot: float = 0.0
    a_y_true: float = 0.0

    def __post_init__(self):
        self.z_road = np.asarray(self.z_road, dtype=float)
        if self.z_road.shape != (4,):
            raise ValueError("z_road must hold one value per corner (fl, fr, rl, rr)")


def _axle_constants(params: VehicleParams, corner: str):
    if corner not in CORNERS:
        raise ValueError(f"unknown corner id {corner!r}, expected one of {CORNERS}")
    if corner in ("fl", "fr"):
        return params.k_f, params.b_f
    return params.k_r, params.b_r


def roll_acceleration(params: VehicleParams, state: RollState, road: RoadInput,
                      u_phi: float = 0.0) -> float:
    """Roll angular acceleration, rad/s^2.

    The applied roll moment u_phi (N m) enters linearly with gain
    1/i_xx_eff.  Raises BlowupError if the result is non-finite.
    """
    p = params
    sin_phi = math.sin(state.phi)
    cos_phi = math.cos(state.phi)
    zu = state.z_u
    zv = state.z_u_dot
    torque = (p.m_s * road.a_y_true * p.h_phi * cos_phi
              + p.m_s * p.g * p.h_phi * sin_phi
              - 0.5 * p.k_f * p.l_s ** 2 * sin_phi
              - 0.5 * p.b_f * p.l_s ** 2 * state.phi_dot * cos_phi
              - 0.5 * p.k_r * p.l_s ** 2 * sin_phi
              - 0.5 * p.b_r * p.l_s ** 2 * state.phi_dot * cos_phi
              - 0.5 * p.k_f * p.l_s * (zu[0] - zu[1])
              - 0.5 * p.b_f * p.l_s * (zv[0] - zv[1])
              - 0.5 * p.k_r * p.l_s * (zu[2] - zu[3])
              - 0.5 * p.b_r * p.l_s * (zv[2] - zv[3])
              + u_phi)
    result = torque / p.i_xx_eff
    if not math.isfinite(result):
        raise BlowupError("roll acceleration is non-finite", state=state)
    return result


def unsprung_acceleration(params: VehicleParams, state: RollState, road: RoadInput,
                          corner: str, f_corner: float = 0.0) -> float:
    """Vertical acceleration of one unsprung mass, m/s^2.

    f_corner is the actuator force reacting on the unsprung mass (the
    equal-and-opposite partner of the force applied to the sprung body).
    """
    k_i, b_i = _axle_constants(params, corner)
    idx = CORNERS.index(corner)
    sigma = CORNER_SIGN[corner]
    lever = sigma * 0.5 * params.l_s * math.sin(state.phi)
    lever_dot = sigma * 0.5 * params.l_s * state.phi_dot * math.cos(state.phi)
    force = (k_i * (state.z_s - state.z_u[idx] + lever)
             + b_i * (state.z_s_dot - state.z_u_dot[idx] + lever_dot)
             - params.k_t * (state.z_u[idx] - road.z_road[idx])
             - f_corner)
    result = force / params.m_u
    if not math.isfinite(result):
        raise BlowupError(f"unsprung acceleration ({corner}) is non-finite", state=state)
    return result


def heave_acceleration(params: VehicleParams, state: RollState,
                       f_total: float = 0.0) -> float:
    """Sprung heave acceleration, m/s^2, for a net vertical actuator force f_total."""
    p = params
    lever = 0.5 * p.l_s * math.sin(state.phi)
    lever_dot = 0.5 * p.l_s * state.phi_dot * math.cos(state.phi)
    total = 0.0
    for idx, corner in enumerate(CORNERS):
        k_i, b_i = _axle_constants(p, corner)
        sigma = CORNER_SIGN[corner]
        total += (k_i * (state.z_s - state.z_u[idx] + sigma * lever)
                  + b_i * (state.z_s_dot - state.z_u_dot[idx] + sigma * lever_dot))
    result = (-total - f_total) / p.m_s
    if not math.isfinite(result):
        raise BlowupError("heave acceleration is non-finite", state=state)
    return result


def state_derivative(params: VehicleParams, state: RollState, road: RoadInput,
                     corner_forces=(0.0, 0.0, 0.0, 0.0)) -> RollState:
    """Full 12-dimensional state derivative.

    corner_forces are the vertical actuator forces (fl, fr, rl, rr), N.
    The roll moment applied to the sprung body is the allocation-row
    combination (l_s/2)*(F_fl - F_fr + F_rl - F_rr); each force also
    reacts on its unsprung mass and their sum loads the heave equation.
    """
    f = tuple(float(v) for v in corner_forces)
    if len(f) != 4:
        raise ValueError("corner_forces must hold one value per corner (fl, fr, rl, rr)")
    dydt = _rhs(_constants(params), state.to_array(), road.a_y_true,
                tuple(road.z_road), f)
    out = RollState.from_array(np.array(dydt))
    if not out.is_finite():
        raise BlowupError("state derivative is non-finite", state=state)
    return out


def _constants(p: VehicleParams) -> tuple:
    """Flatten parameters into the tuple consumed by the scalar hot path."""
    return (p.m_s, p.m_u, p.i_xx_eff, p.h_phi, 0.5 * p.l_s,
            p.k_f, p.k_r, p.b_f, p.b_r, p.k_t, p.g,
            0.5 * p.k_f * p.l_s, 0.5 * p.k_r * p.l_s,
            0.5 * p.b_f * p.l_s, 0.5 * p.b_r * p.l_s,
            0.5 * p.k_f * p.l_s ** 2, 0.5 * p.k_r * p.l_s ** 2,
            0.5 * p.b_f * p.l_s ** 2, 0.5 * p.b_r * p.l_s ** 2)


def _rhs(c: tuple, y, a_y: float, z_road, f) -> tuple:
    """Scalar right-hand side used by the fixed-step integrator.

    y is the 12-vector (phi, phi_dot, z_s, z_s_dot, z_u[4], z_u_dot[4]);
    returns the time derivative as a plain tuple.  Pure float arithmetic:
    this runs four times per integration step, so it avoids array overhead.
    """
    (m_s, m_u, i_eff, h_phi, half_ls,
     k_f, k_r, b_f, b_r, k_t, g,
     kf_ls, kr_ls, bf_ls, br_ls,
     kf_ls2, kr_ls2, bf_ls2, br_ls2) = c
    (phi, phi_dot, z_s, z_s_dot,
     zu_fl, zu_fr, zu_rl, zu_rr,
     zv_fl, zv_fr, zv_rl, zv_rr) = y

    sin_phi = math.sin(phi)
    cos_phi = math.cos(phi)
    lever = half_ls * sin_phi
    lever_dot = half_ls * phi_dot * cos_phi

    # Suspension forces on the unsprung masses (sigma = -1 left, +1 right).
    s_fl = k_f * (z_s - zu_fl - lever) + b_f * (z_s_dot - zv_fl - lever_dot)
    s_fr = k_f * (z_s - zu_fr + lever) + b_f * (z_s_dot - zv_fr + lever_dot)
    s_rl = k_r * (z_s - zu_rl - lever) + b_r * (z_s_dot - zv_rl - lever_dot)
    s_rr = k_r * (z_s - zu_rr + lever) + b_r * (z_s_dot - zv_rr + lever_dot)

    u_phi = half_ls * (f[0] - f[1] + f[2] - f[3])
    f_total = f[0] + f[1] + f[2] + f[3]

    phi_dd = (m_s * a_y * h_phi * cos_phi
              + m_s * g * h_phi * sin_phi
              - kf_ls2 * sin_phi - bf_ls2 * phi_dot * cos_phi
              - kr_ls2 * sin_phi - br_ls2 * phi_dot * cos_phi
              - kf_ls * (zu_fl - zu_fr) - bf_ls * (zv_fl - zv_fr)
              - kr_ls * (zu_rl - zu_rr) - br_ls * (zv_rl - zv_rr)
              + u_phi) / i_eff
    z_dd = -(s_fl + s_fr + s_rl + s_rr + f_total) / m_s
    zdd_fl = (s_fl - k_t * (zu_fl - z_road[0]) - f[0]) / m_u
    zdd_fr = (s_fr - k_t * (zu_fr - z_road[1]) - f[1]) / m_u
    zdd_rl = (s_rl - k_t * (zu_rl - z_road[2]) - f[2]) / m_u
    zdd_rr = (s_rr - k_t * (zu_rr - z_road[3]) - f[3]) / m_u

    return (phi_dot, phi_dd, z_s_dot, z_dd,
            zv_fl, zv_fr, zv_rl, zv_rr,
            zdd_fl, zdd_fr, zdd_rl, zdd_rr)


def mechanical_energy(params: VehicleParams, state: RollState) -> float:
    """Total mechanical energy in the small-angle (quadratic) approximation, J.

    Kinetic terms plus spring potentials, minus the destabilizing gravity
    lever term.  Used for the damping sanity check, not by the dynamics.
    """
    p = params
    kinetic = (0.5 * p.i_xx_eff * state.phi_dot ** 2
               + 0.5 * p.m_s * state.z_s_dot ** 2
               + 0.5 * p.m_u * float(np.dot(state.z_u_dot, state.z_u_dot)))
    lever = 0.5 * p.l_s * state.phi
    potential = -0.5 * p.m_s * p.g * p.h_phi * state.phi ** 2
    for idx, corner in enumerate(CORNERS):
        k_i, _ = _axle_constants(p, corner)
        d = state.z_s + CORNER_SIGN[corner] * lever - state.z_u[idx]
        potential += 0.5 * k_i * d ** 2 + 0.5 * p.k_t * state.z_u[idx] ** 2
    return kinetic + potential
