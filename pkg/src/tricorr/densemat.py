"""Dense complex linear algebra for small multipartite density matrices.

Everything here operates on plain ``numpy`` arrays of complex entries
(``ComplexMatrix`` is just an alias).  States carry a
:class:`SubsystemLayout` so that composition and reduction know which
tensor factor is which.  Dimensions are tiny (at most 8), so all
algorithms are direct and dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

ComplexMatrix = np.ndarray

#: Absolute tolerance separating round-off from genuine contract violations.
CONTRACT_TOL = 1e-10


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered list of (label, dimension) pairs defining tensor-index order."""

    parts: tuple[tuple[str, int], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.parts]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate subsystem labels in {labels}")
        for label, dim in self.parts:
            if dim < 2:
                raise ValueError(f"subsystem {label!r} has dimension {dim} < 2")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.parts)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.parts)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def restrict(self, keep: Iterable[str]) -> "SubsystemLayout":
        """Sub-layout with only the kept labels, in original order."""
        keep = frozenset(keep)
        unknown = keep - set(self.labels)
        if unknown:
            raise ValueError(f"unknown subsystem labels: {sorted(unknown)}")
        return SubsystemLayout(tuple(p for p in self.parts if p[0] in keep))


@dataclass(frozen=True)
class DensityMatrix:
    """A valid quantum state: unit trace, Hermitian, positive semidefinite.

    The contract is enforced at construction time; violations beyond
    ``CONTRACT_TOL`` raise ``ValueError``.  The wrapped array is frozen so
    instances can be shared freely across workers.
    """

    matrix: ComplexMatrix
    layout: SubsystemLayout

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        n = self.layout.total_dim
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match layout dimension {n}")
        if abs(m.trace() - 1.0) > CONTRACT_TOL:
            raise ValueError(f"trace {m.trace():.6g} is not 1 within {CONTRACT_TOL}")
        if np.abs(m - m.conj().T).max() > CONTRACT_TOL:
            raise ValueError("matrix is not Hermitian within tolerance")
        if np.linalg.eigvalsh(m).min() < -CONTRACT_TOL:
            raise ValueError("matrix has an eigenvalue below the PSD tolerance")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.layout.total_dim


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product, first factor owning the slow (outer) indices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def compose(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Product state a (x) b with the concatenated layout."""
    return DensityMatrix(kron(a.matrix, b.matrix),
                         SubsystemLayout(a.layout.parts + b.layout.parts))


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on the kept subsystems, preserving their original order.

    Parameters
    ----------
    rho : DensityMatrix
    keep : iterable of labels
        Non-empty subset of the layout labels.  Keeping all labels
        returns the state unchanged.
    """
    keep = frozenset(keep)
    labels = rho.layout.labels
    unknown = keep - set(labels)
    if unknown:
        raise ValueError(f"unknown subsystem labels: {sorted(unknown)}")
    if not keep:
        raise ValueError("must keep at least one subsystem")
    if keep == set(labels):
        return rho

    dims = list(rho.layout.dims)
    traced = [i for i, label in enumerate(labels) if label not in keep]
    tensor = rho.matrix.reshape(dims + dims)
    for axis in sorted(traced, reverse=True):
        tensor = np.trace(tensor, axis1=axis, axis2=axis + len(dims))
        dims.pop(axis)
    reduced_dim = int(np.prod(dims))
    return DensityMatrix(tensor.reshape(reduced_dim, reduced_dim),
                         rho.layout.restrict(keep))


def _require_hermitian(m: ComplexMatrix) -> ComplexMatrix:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > CONTRACT_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    return m


def hermitian_eigenvalues(m: ComplexMatrix) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    return np.linalg.eigvalsh(_require_hermitian(m))[::-1]


def hermitian_eigensystem(m: ComplexMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Descending eigenvalues and matching eigenvector columns."""
    values, vectors = np.linalg.eigh(_require_hermitian(m))
    return values[::-1], vectors[:, ::-1]


def clamp_spectrum(values: np.ndarray, tol: float = CONTRACT_TOL) -> np.ndarray:
    """Clamp round-off negatives to zero; genuine negatives are an error."""
    values = np.asarray(values, dtype=float)
    if values.min() < -tol:
        raise ValueError(f"eigenvalue {values.min():.6g} below -{tol}")
    return np.clip(values, 0.0, None)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """(1/2) * trace norm of (a - b); lies in [0, 1] for states."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    eigenvalues = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.abs(eigenvalues).sum())
