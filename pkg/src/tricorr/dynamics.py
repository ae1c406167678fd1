"""State preparation and evolution for two qubits driven by a random field.

Qubit A is isolated; qubit B is driven resonantly by a classical field
whose phase is random (two equiprobable values) and whose Rabi frequency
may carry a Gaussian spread.  The environment E enters as a two-level
phase register, so the full system lives on an 8-dimensional A (x) B (x) E
space.  The continuous Rabi-frequency register is never materialized: it
is integrated out by Gauss-Hermite quadrature inside the channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .densemat import ComplexMatrix, DensityMatrix, SubsystemLayout, kron

LAYOUT_AB = SubsystemLayout((("A", 2), ("B", 2)))
LAYOUT_E = SubsystemLayout((("E", 2),))
LAYOUT_ABE = SubsystemLayout((("A", 2), ("B", 2), ("E", 2)))

#: Default quadrature order; spectrally exact for the trig integrands here.
DEFAULT_QUADRATURE_ORDER = 64
DEFAULT_GRID = (30.0, 2000)
DEFAULT_TOLERANCES = {"dark": 1e-9, "freeze": 1e-6}

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PhaseConvention:
    """Two equiprobable field phases (radians)."""

    phases: tuple[float, float] = (np.pi / 2, -np.pi / 2)

    def __post_init__(self):
        if len(self.phases) != 2:
            raise ValueError("exactly two field phases are required")

    @staticmethod
    def from_name(name: str) -> "PhaseConvention":
        if name == "pm-half-pi":
            return PhaseConvention((np.pi / 2, -np.pi / 2))
        if name == "zero-pi":
            return PhaseConvention((0.0, np.pi))
        raise ValueError(f"unknown phase convention {name!r}")

    @property
    def name(self) -> str:
        if self.phases == (np.pi / 2, -np.pi / 2):
            return "pm-half-pi"
        if self.phases == (0.0, np.pi):
            return "zero-pi"
        return f"custom({self.phases[0]:g},{self.phases[1]:g})"


@dataclass(frozen=True)
class GaussianRabi:
    """Central Rabi frequency and Gaussian spread (zero spread = periodic)."""

    omega: float = 1.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("central Rabi frequency must be positive")
        if self.sigma < 0:
            raise ValueError("Rabi frequency width must be non-negative")


@dataclass(frozen=True)
class InitialStateParams:
    """Parameters (x, y, z) of the coherent Bell-mixture initial family."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name, value in (("x", self.x), ("y", self.y), ("z", self.z)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} = {value} outside [0, 1]")


@dataclass(frozen=True)
class SimConfig:
    """All physical and numerical parameters of one run."""

    initial: InitialStateParams = InitialStateParams(1.0, 0.9, 1.0)
    rabi: GaussianRabi = GaussianRabi()
    phase: PhaseConvention = PhaseConvention()
    quadrature_order: int = DEFAULT_QUADRATURE_ORDER
    grid: tuple[float, int] = DEFAULT_GRID
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        t_max, samples = self.grid
        if t_max <= 0:
            raise ValueError("t_max must be positive")
        if samples < 2:
            raise ValueError("sample count must be at least 2")
        if self.rabi.sigma > 0 and self.quadrature_order < 2:
            raise ValueError("quadrature order must be at least 2 when sigma > 0")

    def tolerance(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def qubit_unitary(phase: float, omega: float, t: float) -> ComplexMatrix:
    """Single-qubit drive unitary for field phase ``phase`` at time ``t``.

    The rotation angle is omega*t/2; the field phase fixes the rotation
    axis in the equatorial plane.
    """
    half = 0.5 * omega * t
    c, s = math.cos(half), math.sin(half)
    return np.array(
        [[c, np.exp(-1j * phase) * s],
         [-np.exp(1j * phase) * s, c]],
        dtype=complex,
    )


def _bell_vector(kind: str) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    if kind == "2+":
        v[0] = v[3] = 1.0
    elif kind == "2-":
        v[0], v[3] = 1.0, -1.0
    elif kind == "1+":
        v[1] = v[2] = 1.0
    elif kind == "1-":
        v[1], v[2] = 1.0, -1.0
    else:
        raise ValueError(f"unknown Bell state {kind!r}")
    return v / np.sqrt(2.0)


def initial_two_qubit_state(params: InitialStateParams) -> DensityMatrix:
    """Rank <= 2 mixture of two Bell-superposition vectors.

    The first vector superposes the even-parity Bell pair with weight x,
    the second the odd-parity pair with weight z; y mixes the two
    projectors statistically.
    """
    x, y, z = params.x, params.y, params.z
    v_plus = x * _bell_vector("2+") + math.sqrt(1.0 - x * x) * _bell_vector("1+")
    v_minus = z * _bell_vector("2-") + math.sqrt(1.0 - z * z) * _bell_vector("1-")
    rho = y * np.outer(v_plus, v_plus.conj()) + (1.0 - y) * np.outer(v_minus, v_minus.conj())
    return DensityMatrix(rho, LAYOUT_AB)


@lru_cache(maxsize=8)
def _hermgauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _conjugate_on_b(rho4: np.ndarray, unitaries: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Weighted sum over k of (1 (x) U_k) rho (1 (x) U_k)^dagger.

    ``unitaries`` has shape (k, 2, 2); ``rho4`` is the 4x4 two-qubit matrix.
    """
    r = rho4.reshape(2, 2, 2, 2)
    tmp = np.einsum("kbp,apcq->kabcq", unitaries, r)
    out = np.einsum("k,kabcq,kdq->abcd", weights, tmp, unitaries.conj())
    return out.reshape(4, 4)


def _single_phase_matrix(rho4: np.ndarray, phase: float, omega: float, sigma: float,
                         t: float, order: int) -> np.ndarray:
    """Evolved two-qubit matrix for one fixed field phase.

    For zero spread this is a plain unitary conjugation; otherwise the
    Rabi frequency is integrated out with Gauss-Hermite quadrature using
    the substitution omega_g = omega + 2*sigma*s, whose weight matches
    the Gaussian exactly.
    """
    if sigma == 0.0:
        u = qubit_unitary(phase, omega, t)
        return _conjugate_on_b(rho4, u[np.newaxis], np.ones(1))
    nodes, weights = _hermgauss(order)
    omegas = omega + 2.0 * sigma * nodes
    half = 0.5 * omegas * t
    c, s = np.cos(half), np.sin(half)
    unitaries = np.empty((order, 2, 2), dtype=complex)
    unitaries[:, 0, 0] = c
    unitaries[:, 0, 1] = np.exp(-1j * phase) * s
    unitaries[:, 1, 0] = -np.exp(1j * phase) * s
    unitaries[:, 1, 1] = c
    return _conjugate_on_b(rho4, unitaries, weights / math.sqrt(math.pi))


def evolve_two_qubit_fixed_omega(rho0: DensityMatrix, omega_g: float,
                                 phase_conv: PhaseConvention, t: float) -> DensityMatrix:
    """Random-phase channel at a sharp Rabi frequency ``omega_g``."""
    if rho0.dim != 4:
        raise ValueError("expected a 4x4 two-qubit state")
    out = sum(_single_phase_matrix(rho0.matrix, ph, omega_g, 0.0, t, 1)
              for ph in phase_conv.phases)
    return DensityMatrix(0.5 * out, rho0.layout)


def evolve_two_qubit_gaussian(rho0: DensityMatrix, rabi: GaussianRabi,
                              phase_conv: PhaseConvention, t: float,
                              order: int = DEFAULT_QUADRATURE_ORDER) -> DensityMatrix:
    """Random-phase channel averaged over the Gaussian Rabi distribution."""
    if rho0.dim != 4:
        raise ValueError("expected a 4x4 two-qubit state")
    if rabi.sigma == 0.0:
        return evolve_two_qubit_fixed_omega(rho0, rabi.omega, phase_conv, t)
    if order < 2:
        raise ValueError("quadrature order must be at least 2 when sigma > 0")
    out = sum(_single_phase_matrix(rho0.matrix, ph, rabi.omega, rabi.sigma, t, order)
              for ph in phase_conv.phases)
    return DensityMatrix(0.5 * out, rho0.layout)


def build_environment_state(phase_conv: PhaseConvention) -> DensityMatrix:
    """Equal mixture of the two orthonormal phase states: I/2 on E."""
    del phase_conv  # the mixture is maximally mixed for any two phases
    return DensityMatrix(0.5 * _I2, LAYOUT_E)


def build_tripartite_state(rho0: DensityMatrix, cfg: SimConfig, t: float) -> DensityMatrix:
    """Evolved A (x) B (x) E state, block diagonal in the phase register.

    Each diagonal E block carries the two-qubit evolution conditioned on
    one field phase (Gaussian averaged when sigma > 0) with weight 1/2.
    """
    if rho0.dim != 4:
        raise ValueError("expected a 4x4 two-qubit state on A (x) B")
    out = np.zeros((8, 8), dtype=complex)
    for k, phase in enumerate(cfg.phase.phases):
        block = _single_phase_matrix(rho0.matrix, phase, cfg.rabi.omega, cfg.rabi.sigma,
                                     t, cfg.quadrature_order)
        projector = np.zeros((2, 2), dtype=complex)
        projector[k, k] = 1.0
        out += 0.5 * kron(block, projector)
    return DensityMatrix(out, LAYOUT_ABE)


def damped_trig_moment(kind: str, omega: float, sigma: float, t: float) -> float:
    """Exact Gaussian average of a trig function of the spread frequency.

    ``cos`` and ``sin`` take the full argument omega_g*t; the quadratic
    kinds take the half argument omega_g*t/2 as they appear in evolved
    matrix elements.  The oscillatory parts damp as exp(-(sigma*t)^2).
    """
    damping = math.exp(-((sigma * t) ** 2))
    c = math.cos(omega * t) * damping
    s = math.sin(omega * t) * damping
    if kind == "cos":
        return c
    if kind == "sin":
        return s
    if kind == "cos2":
        return 0.5 * (1.0 + c)
    if kind == "sin2":
        return 0.5 * (1.0 - c)
    if kind == "sincos":
        return 0.5 * s
    raise ValueError(f"unknown moment kind {kind!r}")
