"""Shared fixtures and straight-line oracle implementations.

The oracle functions below deliberately avoid the package internals: they
are independently coded from the definitions, so tests can cross-check
the library against them.
"""

from __future__ import annotations

import numpy as np
import pytest

from tricorr import DensityMatrix, InitialStateParams, SubsystemLayout

RHO1_PARAMS = InitialStateParams(1.0, 0.9, 1.0)
RHO2_PARAMS = InitialStateParams(0.6, 0.8, 0.3)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

BELL = {
    "2+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "2-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "1+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "1-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}


def projector(vector: np.ndarray) -> np.ndarray:
    return np.outer(vector, vector.conj())


def oracle_unitary(phase: float, omega: float, t: float) -> np.ndarray:
    theta = omega * t / 2
    return np.array(
        [[np.cos(theta), np.exp(-1j * phase) * np.sin(theta)],
         [-np.exp(1j * phase) * np.sin(theta), np.cos(theta)]])


def oracle_phase_average(rho4: np.ndarray, phases, omega: float, t: float) -> np.ndarray:
    """Equal-weight average of (1 (x) U) rho (1 (x) U)^dagger over the phases."""
    out = np.zeros((4, 4), dtype=complex)
    for phase in phases:
        u4 = np.kron(I2, oracle_unitary(phase, omega, t))
        out += u4 @ rho4 @ u4.conj().T
    return out / len(phases)


def oracle_ptrace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Partial trace via explicit einsum index bookkeeping."""
    n = len(dims)
    tensor = rho.reshape(tuple(dims) * 2)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out_axes = [i for i in keep] + [i + n for i in keep]
    result = np.einsum(tensor, row + col, out_axes)
    d = int(np.prod([dims[i] for i in keep]))
    return result.reshape(d, d)


def oracle_entropy(matrix: np.ndarray) -> float:
    values = np.linalg.eigvalsh(matrix)
    values = values[values > 1e-14]
    return float(-(values * np.log(values)).sum())


def oracle_concurrence(rho4: np.ndarray) -> float:
    """Spin-flip spectrum route using the non-Hermitian product directly."""
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    product = rho4 @ yy @ rho4.conj() @ yy
    roots = np.sqrt(np.clip(np.linalg.eigvals(product).real, 0.0, None))
    roots = np.sort(roots)[::-1]
    return max(0.0, roots[0] - roots[1] - roots[2] - roots[3])


def closed_form_gaussian_channel(rho4, phases, omega, sigma, t):
    """Analytic Gaussian average of the random-phase channel.

    Decomposes U = cos(wt/2) I + sin(wt/2) M with a phase-dependent,
    frequency-independent M, so the average needs only the exact damped
    moments of cos^2, sin*cos and sin^2 at half argument.
    """
    from tricorr import damped_trig_moment

    m_cc = damped_trig_moment("cos2", omega, sigma, t)
    m_sc = damped_trig_moment("sincos", omega, sigma, t)
    m_ss = damped_trig_moment("sin2", omega, sigma, t)
    out = np.zeros((4, 4), dtype=complex)
    for phase in phases:
        m = np.array([[0.0, np.exp(-1j * phase)], [-np.exp(1j * phase), 0.0]])
        m4 = np.kron(I2, m)
        out += (m_cc * rho4
                + m_sc * (m4 @ rho4 + rho4 @ m4.conj().T)
                + m_ss * (m4 @ rho4 @ m4.conj().T))
    return out / len(phases)


def plateau_extrema(values, kind) -> list[int]:
    """Representative indices of interior local extrema, plateau-aware."""
    sign = 1 if kind == "max" else -1
    v = sign * np.asarray(values)
    hits = []
    i = 1
    while i < len(v) - 1:
        j = i
        while j + 1 < len(v) and v[j + 1] == v[j]:
            j += 1
        if j < len(v) - 1 and v[i - 1] < v[i] and v[j + 1] < v[j]:
            hits.append((i + j) // 2)
        i = j + 1
    return hits


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / rho.trace()


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def as_state(matrix: np.ndarray, labels: str) -> DensityMatrix:
    layout = SubsystemLayout(tuple((label, 2) for label in labels))
    return DensityMatrix(matrix, layout)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
